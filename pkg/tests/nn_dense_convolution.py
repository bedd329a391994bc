import unittest
import numpy as np
from scipy import ndimage
from ..nn.Conv_Params import Conv_Params
from ..nn.Dense_Convolution import Dense_Convolution, dense_conv_oracle
from ..nn.Depthwise_Convolution import depthwise_conv
from ..nn.Strided_Convolution import strided_conv
from ..nn.Submanifold_Convolution import subm_conv
from ..nn.Transposed_Convolution import transposed_conv
from ..sparse.Coordinate_Pyramid import PyramidLevelError
from ..sparse.Sparse_Tensor import Sparse_Tensor

class TestNNDenseConvolution(unittest.TestCase):
    """
    Sparse convolutions must equal dense convolutions of the zero-filled
    volume on the active voxels.
    """

    def setUp(self):
        self.rng = np.random.RandomState(42)
        self.dims = (5, 6, 7)
        self.channels = 3
        self.mask = self.rng.uniform(size=self.dims) < 0.35
        self.mask[0, 0, 0] = True
        self.volume = self.rng.normal(size=self.dims + (self.channels,))
        self.volume[~self.mask] = 0.0

        self.st = self._sparsify(self.volume, self.mask)

    def _sparsify(self, volume, mask):
        st = Sparse_Tensor.sparsify_dense(mask.astype(np.float64), mask)
        return st.with_feats(self._gather(volume[np.newaxis], st.coords))

    def _gather(self, dense, coords, stride=1):
        indices = coords[:, 1:] // stride
        return dense[coords[:, 0], indices[:, 0], indices[:, 1], indices[:, 2]]

    def _params(self, in_channels, out_channels, kernel, bias=True,
                depthwise=False):
        params = Conv_Params.initialize(in_channels, out_channels, kernel, bias,
                                        self.rng, std=0.5, depthwise=depthwise,
                                        dtype=np.float64)
        if bias:
            params.bias.data[:] = self.rng.normal(size=out_channels)

        return params

    def test_same_against_scipy(self):
        values = self.volume[..., 0]
        params = self._params(1, 1, 3, bias=False)
        dense = dense_conv_oracle(values[np.newaxis, ..., np.newaxis], params)

        kernel = params.weights.data[:, 0, 0].reshape(3, 3, 3)
        expected = ndimage.convolve(values, kernel, mode='constant', cval=0.0)
        np.testing.assert_allclose(dense[0, ..., 0], expected, atol=1e-12)

    def test_single_voxel(self):
        values = np.zeros((1, 3, 3, 3, 1))
        values[0, 1, 1, 1, 0] = 1.0
        weights = np.arange(27, dtype=np.float64).reshape(27, 1, 1)

        # Output p receives the weight of offset p minus the active voxel.
        output = Dense_Convolution.same(values, weights, (3, 3, 3))
        np.testing.assert_array_equal(output.reshape(27), np.arange(27))

        mask = values[0, ..., 0] > 0
        st = Sparse_Tensor.sparsify_dense(values[0, ..., 0], mask)
        result = subm_conv(st, Conv_Params(weights, kernel=(3, 3, 3)))
        np.testing.assert_array_equal(result.values, [[13.0]])

    def test_submanifold(self):
        for kernel in (1, 3, 7):
            params = self._params(self.channels, 4, kernel)
            sparse = subm_conv(self.st, params)
            dense = dense_conv_oracle(self.volume[np.newaxis], params)

            self.assertEqual(sparse.values.shape, (self.st.num_rows, 4))
            np.testing.assert_allclose(sparse.values, self._gather(dense, self.st.coords),
                                       rtol=1e-10, atol=1e-10)

    def test_submanifold_anisotropic(self):
        params = self._params(self.channels, 2, (3, 1, 5))
        sparse = subm_conv(self.st, params)
        dense = dense_conv_oracle(self.volume[np.newaxis], params)
        np.testing.assert_allclose(sparse.values, self._gather(dense, self.st.coords),
                                   rtol=1e-10, atol=1e-10)

    def test_depthwise(self):
        params = self._params(self.channels, self.channels, 7, depthwise=True)
        sparse = depthwise_conv(self.st, params)
        dense = dense_conv_oracle(self.volume[np.newaxis], params)
        np.testing.assert_allclose(sparse.values, self._gather(dense, self.st.coords),
                                   rtol=1e-10, atol=1e-10)

        with self.assertRaises(ValueError):
            subm_conv(self.st, params)
        with self.assertRaises(ValueError):
            depthwise_conv(self.st, self._params(self.channels, 2, 3))

    def test_strided(self):
        params = self._params(self.channels, 5, 2)
        sparse = strided_conv(self.st, params)
        self.assertEqual(sparse.stride, (2, 2, 2))

        dense = dense_conv_oracle(self.volume[np.newaxis], params, stride=2)
        self.assertEqual(dense.shape, (1, 3, 3, 4, 5))
        np.testing.assert_allclose(sparse.values, self._gather(dense, sparse.coords, 2),
                                   rtol=1e-10, atol=1e-10)

        # Only cells with an active voxel are active at the coarser stride.
        cells = np.zeros(dense.shape[1:4], dtype=bool)
        cells[tuple(np.array(np.nonzero(self.mask)) // 2)] = True
        np.testing.assert_array_equal(sparse.get_mask(dense.shape[1:4])[0], cells)

    def test_transposed(self):
        coarse = strided_conv(self.st, self._params(self.channels, 4, 2))
        params = self._params(4, 2, 2)
        sparse = transposed_conv(coarse, params)
        self.assertEqual(sparse.stride, (1, 1, 1))
        np.testing.assert_array_equal(sparse.coords, self.st.coords)

        coarse_dense = coarse.densify((3, 3, 4))
        dense = dense_conv_oracle(coarse_dense, params, stride=2,
                                  transposed=True, out_dims=self.dims)
        self.assertEqual(dense.shape, (1,) + self.dims + (2,))
        np.testing.assert_allclose(sparse.values, self._gather(dense, self.st.coords),
                                   rtol=1e-10, atol=1e-10)

        # The target level can also be given directly.
        targeted = transposed_conv(coarse, params, target=1)
        np.testing.assert_array_equal(targeted.values, sparse.values)

    def test_transposed_missing_level(self):
        params = self._params(self.channels, 2, 2)
        coarse = Sparse_Tensor([[0, 2, 0, 0]], np.ones((1, self.channels)), stride=2)
        with self.assertRaises(PyramidLevelError):
            transposed_conv(coarse, params)
        with self.assertRaisesRegex(ValueError, "divisible"):
            transposed_conv(self.st, params)

    def test_batched(self):
        other_mask = self.rng.uniform(size=self.dims) < 0.35
        other_volume = self.rng.normal(size=self.dims + (self.channels,))
        other_volume[~other_mask] = 0.0

        batched = Sparse_Tensor.batch([self.st, self._sparsify(other_volume, other_mask)])
        volumes = np.stack([self.volume, other_volume])

        params = self._params(self.channels, 2, 3)
        sparse = subm_conv(batched, params)
        dense = dense_conv_oracle(volumes, params)
        np.testing.assert_allclose(sparse.values, self._gather(dense, batched.coords),
                                   rtol=1e-10, atol=1e-10)

        down = self._params(self.channels, 2, 2)
        sparse = strided_conv(batched, down)
        dense = dense_conv_oracle(volumes, down, stride=2)
        np.testing.assert_allclose(sparse.values, self._gather(dense, sparse.coords, 2),
                                   rtol=1e-10, atol=1e-10)

    def _check_random_cases(self, dtype, tolerance, seed):
        rng = np.random.RandomState(seed)
        for case in range(100):
            dims = tuple(rng.randint(1, 25, size=3))
            channels = rng.randint(1, 9)
            out_channels = rng.randint(1, 9)
            mask = rng.uniform(size=dims) < rng.uniform(0.05, 1.0)
            mask[tuple(rng.randint(0, size) for size in dims)] = True
            volume = rng.normal(size=dims + (channels,)).astype(dtype)
            volume[~mask] = 0.0
            st = self._sparsify(volume, mask)
            batch = volume[np.newaxis].astype(np.float64)

            def initialize(in_channels, out_channels, kernel, depthwise=False):
                params = Conv_Params.initialize(in_channels, out_channels, kernel,
                                                True, rng, std=0.3,
                                                depthwise=depthwise, dtype=dtype)
                params.bias.data[:] = rng.normal(size=out_channels).astype(dtype)
                return params

            msg = "case {} with dimensions {} and {} channels".format(case, dims, channels)

            params = initialize(channels, out_channels, rng.choice([1, 3, 5]))
            dense = dense_conv_oracle(batch, params)
            np.testing.assert_allclose(subm_conv(st, params).values,
                                       self._gather(dense, st.coords),
                                       rtol=tolerance, atol=tolerance, err_msg=msg)

            params = initialize(channels, channels, rng.choice([3, 5, 7]), depthwise=True)
            dense = dense_conv_oracle(batch, params)
            np.testing.assert_allclose(depthwise_conv(st, params).values,
                                       self._gather(dense, st.coords),
                                       rtol=tolerance, atol=tolerance, err_msg=msg)

            params = initialize(channels, out_channels, 2)
            coarse = strided_conv(st, params)
            dense = dense_conv_oracle(batch, params, stride=2)
            np.testing.assert_allclose(coarse.values,
                                       self._gather(dense, coarse.coords, 2),
                                       rtol=tolerance, atol=tolerance, err_msg=msg)

            params = initialize(out_channels, channels, 2)
            fine = transposed_conv(coarse, params)
            coarse_dense = coarse.densify(dense.shape[1:4]).astype(np.float64)
            dense = dense_conv_oracle(coarse_dense, params, stride=2,
                                      transposed=True, out_dims=dims)
            np.testing.assert_array_equal(fine.coords, st.coords)
            np.testing.assert_allclose(fine.values, self._gather(dense, st.coords),
                                       rtol=tolerance, atol=tolerance, err_msg=msg)

    def test_random_cases_float64(self):
        self._check_random_cases(np.float64, 1e-10, 1234)

    def test_random_cases_float32(self):
        self._check_random_cases(np.float32, 1e-4, 4321)
