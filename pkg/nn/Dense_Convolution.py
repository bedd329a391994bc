import numpy as np
from ..sparse.Kernel_Map import Kernel_Map

class Dense_Convolution(object):
    """
    Dense 3D convolutions on `(B, X, Y, Z, C)` volumes with zero padding.

    The offsets and weight layouts are the same as those of the sparse
    convolutions, so identical parameters give identical results on the
    active voxels.
    """

    @staticmethod
    def _apply_weights(patch, weights, k):
        if weights.ndim == 2:
            return patch * weights[k]

        return np.tensordot(patch, weights[k], axes=([4], [0]))

    @classmethod
    def same(cls, volume, weights, kernel, bias=None):
        """
        Convolution with an odd `kernel` and stride one, in which the output
        at `p` sums the inputs at `p - o` times the weights of offset `o`.
        A two-dimensional `weights` array is a depthwise kernel.
        """

        offsets = Kernel_Map.get_submanifold_offsets(kernel)
        radius = np.array(kernel) // 2
        dims = np.array(volume.shape[1:4])
        padded = np.pad(volume, [(0, 0)] + [(r, r) for r in radius] + [(0, 0)])

        out_channels = weights.shape[-1]
        output = np.zeros(volume.shape[:4] + (out_channels,),
                          dtype=np.result_type(volume, weights))
        for k, offset in enumerate(offsets):
            start = radius - offset
            patch = padded[:, start[0]:start[0] + dims[0],
                           start[1]:start[1] + dims[1],
                           start[2]:start[2] + dims[2], :]
            output += cls._apply_weights(patch, weights, k)

        if bias is not None:
            output += bias

        return output

    @classmethod
    def strided(cls, volume, weights, kernel, stride, bias=None):
        """
        Convolution in which output voxel `q` sums the inputs at
        `q * stride + k` for window offsets `k` in `[0, kernel)`.
        """

        dims = np.array(volume.shape[1:4])
        stride = np.array(stride)
        kernel = np.array(kernel)
        out_dims = -(-dims // stride)
        needed = (out_dims - 1) * stride + kernel
        padding = np.maximum(needed - dims, 0)
        padded = np.pad(volume, [(0, 0)] + [(0, p) for p in padding] + [(0, 0)])

        output = np.zeros((volume.shape[0],) + tuple(out_dims) + (weights.shape[-1],),
                          dtype=np.result_type(volume, weights))
        for k, offset in enumerate(Kernel_Map.get_window_offsets(kernel)):
            end = offset + (out_dims - 1) * stride + 1
            patch = padded[:, offset[0]:end[0]:stride[0],
                           offset[1]:end[1]:stride[1],
                           offset[2]:end[2]:stride[2], :]
            output += cls._apply_weights(patch, weights, k)

        if bias is not None:
            output += bias

        return output

    @classmethod
    def transposed(cls, volume, weights, kernel, stride, out_dims, bias=None):
        """
        Transposed convolution in which input voxel `q` adds its weighted
        features to the outputs at `q * stride + k` for window offsets `k`,
        cropped to `out_dims`.
        """

        dims = np.array(volume.shape[1:4])
        stride = np.array(stride)
        kernel = np.array(kernel)
        full_dims = np.maximum((dims - 1) * stride + kernel, np.array(out_dims))

        output = np.zeros((volume.shape[0],) + tuple(full_dims) + (weights.shape[-1],),
                          dtype=np.result_type(volume, weights))
        for k, offset in enumerate(Kernel_Map.get_window_offsets(kernel)):
            end = offset + (dims - 1) * stride + 1
            output[:, offset[0]:end[0]:stride[0],
                   offset[1]:end[1]:stride[1],
                   offset[2]:end[2]:stride[2], :] += cls._apply_weights(volume, weights, k)

        output = output[:, :out_dims[0], :out_dims[1], :out_dims[2], :]
        if bias is not None:
            output = output + bias

        return output

def dense_conv_oracle(volume, params, stride=1, transposed=False, out_dims=None):
    """
    Apply the `Conv_Params` object `params` to a dense `(B, X, Y, Z, C)`
    volume. Stride one with an odd kernel is a same-size convolution, other
    strides use window offsets, and `transposed` maps a coarse volume onto
    a finer one of dimensions `out_dims`.
    """

    weights = params.weights.data
    bias = None if params.bias is None else params.bias.data
    if np.isscalar(stride):
        stride = (stride,) * 3

    if transposed:
        if out_dims is None:
            out_dims = tuple(np.array(volume.shape[1:4]) * np.array(stride))

        return Dense_Convolution.transposed(volume, weights, params.kernel,
                                            stride, out_dims, bias=bias)

    if all(value == 1 for value in stride) and all(size % 2 == 1 for size in params.kernel):
        return Dense_Convolution.same(volume, weights, params.kernel, bias=bias)

    return Dense_Convolution.strided(volume, weights, params.kernel, stride,
                                     bias=bias)
