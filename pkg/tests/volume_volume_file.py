import json
import os
import shutil
import tempfile
import unittest
import numpy as np
from ..volume.Volume_File import Volume_File
from ..volume.Voxel_Grid import Voxel_Grid

class TestVolumeVolumeFile(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.path = os.path.join(self.directory, "case")
        rng = np.random.RandomState(1)
        self.grid = Voxel_Grid(rng.uniform(-1000, 1000, size=(3, 4, 5)),
                               (0.78, 0.78, 2.5), (1.0, 2.0, 3.0))

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_get_paths(self):
        self.assertEqual(Volume_File.get_paths("a"), ("a.rvol", "a.rvol.json"))
        self.assertEqual(Volume_File.get_paths("a.rvol"), ("a.rvol", "a.rvol.json"))

    def test_store_volume(self):
        Volume_File.store_volume(self.grid, self.path)
        payload_path, header_path = Volume_File.get_paths(self.path)
        self.assertTrue(os.path.isfile(payload_path))

        with open(header_path) as header_file:
            header = json.load(header_file)

        self.assertEqual(header, {
            "dims": [3, 4, 5],
            "spacing_mm": [0.78, 0.78, 2.5],
            "origin_mm": [1.0, 2.0, 3.0],
            "dtype": "f32",
            "kind": "hu",
            "order": "x-fastest"
        })

        # The payload is little-endian with x varying fastest.
        payload = np.fromfile(payload_path, dtype="<f4")
        self.assertEqual(payload.size, 60)
        self.assertEqual(payload[1], self.grid.values[1, 0, 0])
        self.assertEqual(payload[3], self.grid.values[0, 1, 0])
        self.assertEqual(payload[12], self.grid.values[0, 0, 1])

    def test_store_volume_type(self):
        with self.assertRaises(TypeError):
            Volume_File.store_volume(np.zeros((2, 2, 2)), self.path)

    def test_load_volume(self):
        Volume_File.store_volume(self.grid, self.path)
        grid = Volume_File.load_volume(self.path + ".rvol")
        self.assertEqual(grid.dims, self.grid.dims)
        self.assertEqual(grid.spacing, self.grid.spacing)
        self.assertEqual(grid.origin, self.grid.origin)
        np.testing.assert_array_equal(grid.values, self.grid.values)

    def test_load_labels(self):
        labels = Voxel_Grid(np.array([[[0, 1, 2, 3]]]), (1.0, 1.0, 1.0),
                            kind=Voxel_Grid.KIND_LABEL)
        Volume_File.store_volume(labels, self.path)
        payload_path, _ = Volume_File.get_paths(self.path)
        self.assertEqual(os.path.getsize(payload_path), 4)

        grid = Volume_File.load_volume(self.path)
        self.assertTrue(grid.is_label)
        np.testing.assert_array_equal(grid.values, labels.values)

    def test_load_missing(self):
        with self.assertRaisesRegex(IOError, "does not exist"):
            Volume_File.load_volume(self.path)

        Volume_File.store_volume(self.grid, self.path)
        os.remove(self.path + ".rvol")
        with self.assertRaisesRegex(IOError, "payload"):
            Volume_File.load_volume(self.path)

    def _rewrite_header(self, **changes):
        _, header_path = Volume_File.get_paths(self.path)
        with open(header_path) as header_file:
            header = json.load(header_file)

        header.update(changes)
        with open(header_path, "w") as header_file:
            json.dump(header, header_file)

    def test_load_size_mismatch(self):
        Volume_File.store_volume(self.grid, self.path)
        self._rewrite_header(dims=[3, 4, 6])
        with self.assertRaisesRegex(IOError, "Size mismatch"):
            Volume_File.load_volume(self.path)

    def test_load_corrupt_header(self):
        Volume_File.store_volume(self.grid, self.path)
        self._rewrite_header(dtype="f64")
        with self.assertRaisesRegex(IOError, "Unsupported dtype"):
            Volume_File.load_volume(self.path)

        self._rewrite_header(dtype="f32", order="z-fastest")
        with self.assertRaisesRegex(IOError, "Unsupported value order"):
            Volume_File.load_volume(self.path)

        with open(self.path + ".rvol.json", "w") as header_file:
            header_file.write("{not json")

        with self.assertRaisesRegex(IOError, "corrupt"):
            Volume_File.load_volume(self.path)

    def test_load_missing_fields(self):
        Volume_File.store_volume(self.grid, self.path)
        with open(self.path + ".rvol.json", "w") as header_file:
            json.dump({"dims": [3, 4, 5]}, header_file)

        with self.assertRaisesRegex(IOError, "missing fields"):
            Volume_File.load_volume(self.path)
