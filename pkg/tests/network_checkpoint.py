import json
import os
import shutil
import tempfile
import unittest
import numpy as np
from ..network.Checkpoint import Checkpoint, ChecksumError, ShapeMismatchError, load_checkpoint, save_checkpoint
from ..network.Model_Config import Model_Config
from ..network.Sparse_UNet import Sparse_UNet

class TestNetworkCheckpoint(unittest.TestCase):
    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.path = os.path.join(self.directory, "models", "stage1")
        self.config = Model_Config(stage_widths=[4, 8], stage_depths=[1, 1],
                                   decoder_blocks_per_stage=1)
        self.model = Sparse_UNet(self.config, seed=5)

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_get_paths(self):
        expected = ("a/b.ckpt.json", "a/b.ckpt.bin")
        self.assertEqual(Checkpoint.get_paths("a/b"), expected)
        self.assertEqual(Checkpoint.get_paths("a/b.ckpt.json"), expected)
        self.assertEqual(Checkpoint.get_paths("a/b.ckpt.bin"), expected)

    def test_save_and_load(self):
        self.assertFalse(Checkpoint.exists(self.path))
        save_checkpoint(self.model, self.path, extra={"stage": 1, "epochs": 2})
        self.assertTrue(Checkpoint.exists(self.path))

        manifest = Checkpoint.read_manifest(self.path)
        self.assertEqual(manifest["format_version"], Checkpoint.FORMAT_VERSION)
        self.assertEqual(manifest["extra"], {"stage": 1, "epochs": 2})
        self.assertEqual(manifest["seed"], 5)
        self.assertEqual(len(manifest["tensors"]), len(self.model.parameters()))
        self.assertEqual(manifest["payload_bytes"], 4 * self.model.count_params())

        model = load_checkpoint(self.path + Checkpoint.MANIFEST_EXTENSION)
        self.assertEqual(model.config, self.config)
        for (name, expected), (other, actual) in zip(self.model.named_parameters(),
                                                     model.named_parameters()):
            self.assertEqual(name, other)
            self.assertEqual(actual.dtype, np.float32)
            np.testing.assert_array_equal(actual.data, expected.data)

    def test_load_with_config(self):
        save_checkpoint(self.model, self.path)
        model = load_checkpoint(self.path, config=self.config)
        self.assertEqual(model.count_params(), self.model.count_params())

        with self.assertRaises(ShapeMismatchError):
            load_checkpoint(self.path, config=self.config.replace(stage_widths=[4, 16]))
        with self.assertRaises(ShapeMismatchError):
            load_checkpoint(self.path, config=self.config.replace(stage_depths=[1, 2]))

    def test_load_extra_tensors(self):
        config = Model_Config(stage_widths=[4, 8, 8], stage_depths=[1, 1, 1],
                              decoder_blocks_per_stage=1, num_heads=2)
        save_checkpoint(Sparse_UNet(config), self.path)

        with self.assertRaisesRegex(ShapeMismatchError, "no matching parameter"):
            load_checkpoint(self.path, config=config.replace(num_heads=1))

    def test_checksum(self):
        save_checkpoint(self.model, self.path)
        _, payload_path = Checkpoint.get_paths(self.path)
        with open(payload_path, "r+b") as payload_file:
            payload_file.seek(8)
            payload_file.write(b"\x00\x01\x02\x03")

        with self.assertRaises(ChecksumError):
            load_checkpoint(self.path)

        # A truncated payload fails the same way.
        with open(payload_path, "wb") as payload_file:
            payload_file.write(b"\x00")

        with self.assertRaises(ChecksumError):
            load_checkpoint(self.path)

    def test_missing(self):
        with self.assertRaisesRegex(IOError, "does not exist"):
            load_checkpoint(self.path)

        save_checkpoint(self.model, self.path)
        os.remove(Checkpoint.get_paths(self.path)[1])
        with self.assertRaisesRegex(IOError, "payload"):
            load_checkpoint(self.path)

    def test_corrupt_manifest(self):
        save_checkpoint(self.model, self.path)
        manifest_path = Checkpoint.get_paths(self.path)[0]
        with open(manifest_path, "w") as manifest_file:
            manifest_file.write("{")

        with self.assertRaisesRegex(IOError, "corrupt"):
            Checkpoint.read_manifest(self.path)

        with open(manifest_path, "w") as manifest_file:
            json.dump({"config": {}}, manifest_file)

        with self.assertRaisesRegex(IOError, "missing 'tensors'"):
            Checkpoint.read_manifest(self.path)
