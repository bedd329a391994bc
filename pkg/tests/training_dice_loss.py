import unittest
import numpy as np
from ..nn.Tape import Tape
from ..nn.Variable import Variable
from ..sparse.Coordinate_Pyramid import PyramidLevelError
from ..sparse.Sparse_Tensor import Sparse_Tensor
from ..training.Dice_Loss import Dice_Loss, deep_supervised_loss, dice_loss, get_level_weights, get_pooled_targets

class TestTrainingDiceLoss(unittest.TestCase):
    def setUp(self):
        self.rng = np.random.RandomState(1)
        mask = self.rng.uniform(size=(6, 5, 4)) < 0.5
        mask[0, 0, 0] = True
        self.st = Sparse_Tensor.sparsify_dense(np.zeros(mask.shape), mask)
        rows = self.st.num_rows
        self.targets = (self.rng.uniform(size=(rows, 3)) < 0.4).astype(np.float64)
        self.labels = self.st.with_feats(self.targets)

    def _dice(self, pred, target, eps=1e-5):
        overlap = 2.0 * np.sum(pred * target, axis=0) + eps
        total = np.sum(pred, axis=0) + np.sum(target, axis=0) + eps
        return 1.0 - overlap / total

    def test_dice_loss_unit_cases(self):
        ones = np.ones((4, 1))
        zeros = np.zeros((4, 1))

        # Perfect overlap and two empty sets give no loss.
        self.assertAlmostEqual(dice_loss(ones, ones).item(), 0.0)
        self.assertAlmostEqual(dice_loss(zeros, zeros).item(), 0.0)

        # Disjoint sets give a loss of one.
        self.assertAlmostEqual(dice_loss(zeros, ones).item(), 1.0, places=5)

        pred = np.array([[1.0], [1.0]])
        target = np.array([[1.0], [0.0]])
        self.assertAlmostEqual(dice_loss(pred, target).item(), 1.0 / 3.0, places=5)

    def test_dice_loss_channels(self):
        pred = self.rng.uniform(size=self.targets.shape)
        losses = dice_loss(pred, self.targets, reduce=False)
        self.assertEqual(losses.shape, (3,))
        np.testing.assert_allclose(losses.data, self._dice(pred, self.targets))
        self.assertAlmostEqual(dice_loss(pred, self.targets).item(), np.sum(losses.data))

        # Sparse tensors on the same rows are accepted as well.
        head = self.st.with_feats(pred)
        np.testing.assert_allclose(dice_loss(head, self.labels, reduce=False).data,
                                   losses.data)

        other = Sparse_Tensor.sparsify_dense(np.zeros((1, 1, 1)), np.ones((1, 1, 1)))
        with self.assertRaisesRegex(ValueError, "same rows"):
            dice_loss(other, self.labels)
        with self.assertRaises(ValueError):
            dice_loss(pred[:, :2], self.targets)
        with self.assertRaises(ValueError):
            Dice_Loss(eps=0.0)

    def test_dice_loss_gradient(self):
        pred = Variable(self.rng.uniform(size=self.targets.shape), requires_grad=True)
        with Tape() as tape:
            loss = dice_loss(pred, self.targets)

        tape.backward(loss)

        step = 1e-6
        numeric = np.zeros(pred.shape)
        for index in np.ndindex(*pred.shape):
            original = pred.data[index]
            pred.data[index] = original + step
            plus = np.sum(self._dice(pred.data, self.targets))
            pred.data[index] = original - step
            minus = np.sum(self._dice(pred.data, self.targets))
            pred.data[index] = original
            numeric[index] = (plus - minus) / (2 * step)

        np.testing.assert_allclose(pred.grad, numeric, rtol=1e-5, atol=1e-8)

    def test_get_level_weights(self):
        self.assertEqual(get_level_weights(4), [1.0, 0.5, 0.25, 0.125])
        self.assertEqual(get_level_weights(1), [1.0])

    def test_get_pooled_targets(self):
        with self.assertRaises(PyramidLevelError):
            get_pooled_targets(self.labels, [(2, 2, 2)])

        self.st.pyramid.downsample(1, 2)
        self.st.pyramid.downsample(2, 2)
        fine, coarse, coarsest = get_pooled_targets(self.labels, [(1, 1, 1), (2, 2, 2), (4, 4, 4)])
        self.assertIs(fine, self.labels)
        self.assertEqual(coarse.stride, (2, 2, 2))
        self.assertEqual(coarsest.stride, (4, 4, 4))

        # Every coarse target is the mean over the active voxels of its cell.
        cells = self.st.coords.copy()
        cells[:, 1:] = cells[:, 1:] // 2 * 2
        for row, coord in enumerate(coarse.coords):
            members = np.all(cells == coord, axis=1)
            np.testing.assert_allclose(coarse.values[row], self.targets[members].mean(axis=0))

        self.assertTrue(np.all(coarsest.values >= 0.0))
        self.assertTrue(np.all(coarsest.values <= 1.0))

    def test_deep_supervised_loss(self):
        stride = self.st.pyramid.downsample(1, 2)
        coarse_rows = len(self.st.pyramid.lookup(stride))
        fine_pred = self.rng.uniform(size=self.targets.shape)
        coarse_pred = self.rng.uniform(size=(coarse_rows, 3))
        heads = [
            self.st.with_feats(fine_pred),
            Sparse_Tensor.from_level(self.st.pyramid, stride, coarse_pred)
        ]

        total, channels = deep_supervised_loss(heads, self.labels, return_channels=True)
        coarse_targets = get_pooled_targets(self.labels, [stride])[0].values
        expected = self._dice(fine_pred, self.targets) + \
            0.5 * self._dice(coarse_pred, coarse_targets)
        np.testing.assert_allclose(channels, expected)
        self.assertAlmostEqual(total.item(), np.sum(expected))

        single = deep_supervised_loss(heads[:1], self.labels)
        self.assertAlmostEqual(single.item(), np.sum(self._dice(fine_pred, self.targets)))

    def test_deep_supervised_loss_invalid(self):
        with self.assertRaisesRegex(ValueError, "At least one head"):
            deep_supervised_loss([], self.labels)

        stride = self.st.pyramid.downsample(1, 2)
        coarse = Sparse_Tensor.from_level(self.st.pyramid, stride,
                                          np.zeros((len(self.st.pyramid.lookup(stride)), 3)))
        with self.assertRaisesRegex(ValueError, "Head 0 has stride"):
            deep_supervised_loss([coarse], self.labels)
        with self.assertRaisesRegex(ValueError, "Labels must have stride 1"):
            deep_supervised_loss([coarse], coarse)

        other = Sparse_Tensor(self.st.coords.copy(), np.zeros((self.st.num_rows, 3)))
        with self.assertRaisesRegex(ValueError, "does not share the pyramid"):
            deep_supervised_loss([other], self.labels)
