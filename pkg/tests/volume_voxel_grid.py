import unittest
import numpy as np
from ..volume.Voxel_Grid import Voxel_Grid

class TestVolumeVoxelGrid(unittest.TestCase):
    def setUp(self):
        self.values = np.arange(24, dtype=np.float64).reshape(2, 3, 4)
        self.grid = Voxel_Grid(self.values, (0.5, 1.0, 2.0), (10.0, 0.0, -4.0))

    def test_initialization(self):
        self.assertEqual(self.grid.dims, (2, 3, 4))
        self.assertEqual(self.grid.spacing, (0.5, 1.0, 2.0))
        self.assertEqual(self.grid.origin, (10.0, 0.0, -4.0))
        self.assertEqual(self.grid.kind, Voxel_Grid.KIND_HU)
        self.assertFalse(self.grid.is_label)
        self.assertEqual(self.grid.values.dtype, np.float32)
        np.testing.assert_array_equal(self.grid.values, self.values)

    def test_immutable(self):
        with self.assertRaises(ValueError):
            self.grid.values[0, 0, 0] = 1.0

        # The grid does not share memory with the input array.
        self.values[0, 0, 0] = 100.0
        self.assertEqual(self.grid.values[0, 0, 0], 0.0)

    def test_initialization_invalid(self):
        with self.assertRaises(ValueError):
            Voxel_Grid(np.zeros((2, 2)), (1.0, 1.0, 1.0))
        with self.assertRaises(ValueError):
            Voxel_Grid(np.zeros((2, 0, 2)), (1.0, 1.0, 1.0))
        with self.assertRaises(ValueError):
            Voxel_Grid(np.zeros((2, 2, 2)), (1.0, 0.0, 1.0))
        with self.assertRaises(ValueError):
            Voxel_Grid(np.zeros((2, 2, 2)), (1.0, 1.0))
        with self.assertRaises(ValueError):
            Voxel_Grid(np.zeros((2, 2, 2)), (1.0, 1.0, 1.0), kind="mask")

    def test_labels(self):
        labels = Voxel_Grid(np.array([[[0, 1], [2, 3]]]), (1.0, 1.0, 1.0),
                            kind=Voxel_Grid.KIND_LABEL)
        self.assertTrue(labels.is_label)
        self.assertEqual(labels.values.dtype, np.uint8)

        # Integral floats are accepted as label codes.
        Voxel_Grid(np.ones((1, 1, 2)), (1.0, 1.0, 1.0), kind=Voxel_Grid.KIND_LABEL)

        with self.assertRaisesRegex(ValueError, "integer codes"):
            Voxel_Grid(np.full((1, 1, 2), 0.5), (1.0, 1.0, 1.0),
                       kind=Voxel_Grid.KIND_LABEL)
        with self.assertRaisesRegex(ValueError, r"Unexpected label values \[4\]"):
            Voxel_Grid(np.full((1, 1, 2), 4), (1.0, 1.0, 1.0),
                       kind=Voxel_Grid.KIND_LABEL)

    def test_extent_mm(self):
        self.assertEqual(self.grid.extent_mm, (1.0, 3.0, 8.0))

    def test_voxel_to_world(self):
        # Voxel centers lie half a voxel from the origin corner.
        np.testing.assert_allclose(self.grid.voxel_to_world([0, 0, 0]),
                                   [10.25, 0.5, -3.0])
        np.testing.assert_allclose(self.grid.voxel_to_world([[1, 2, 3]]),
                                   [[10.75, 2.5, 3.0]])

    def test_world_to_voxel(self):
        indices = np.array([[0, 0, 0], [1, 2, 3], [0.5, 1.5, 2.25]])
        positions = self.grid.voxel_to_world(indices)
        np.testing.assert_allclose(self.grid.world_to_voxel(positions), indices)

    def test_with_values(self):
        grid = self.grid.with_values(np.ones((2, 3, 4)))
        self.assertEqual(grid.spacing, self.grid.spacing)
        self.assertEqual(grid.origin, self.grid.origin)
        self.assertEqual(grid.kind, Voxel_Grid.KIND_HU)

        labels = self.grid.with_values(np.ones((2, 3, 4)), kind=Voxel_Grid.KIND_LABEL)
        self.assertTrue(labels.is_label)

        with self.assertRaises(ValueError):
            self.grid.with_values(np.ones((3, 3, 3)))

    def test_repr(self):
        self.assertEqual(repr(self.grid), "Voxel_Grid(dims=(2, 3, 4), spacing=(0.5, 1.0, 2.0), origin=(10.0, 0.0, -4.0), kind='hu')")
