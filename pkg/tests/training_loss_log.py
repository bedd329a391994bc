import os
import shutil
import tempfile
import unittest
from ..training.Loss_Log import Loss_Log

class TestTrainingLossLog(unittest.TestCase):
    def setUp(self):
        self.log = Loss_Log()
        self.log.add(0, "train", [0.5, 0.25, 0.125])
        self.log.add(0, "validation", [0.75, 0.5, 0.25])
        self.log.add(1, "train", [0.25, 0.125, 0.0625])
        self.directory = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_add(self):
        self.assertEqual(len(self.log.rows), 12)
        self.assertEqual(self.log.rows[0], (0, "kidneys+masses", "train", 0.5))
        self.assertEqual(self.log.rows[3], (0, "total", "train", 0.875))

        with self.assertRaises(ValueError):
            self.log.add(2, "train", [0.1, 0.2])

    def test_get_losses(self):
        self.assertEqual(self.log.get_losses("train"), [0.875, 0.4375])
        self.assertEqual(self.log.get_losses("train", "tumour"), [0.125, 0.0625])
        self.assertEqual(self.log.get_losses("validation"), [1.5])
        self.assertEqual(self.log.get_losses("test"), [])

    def test_write(self):
        path = os.path.join(self.directory, "loss.csv")
        self.log.write(path)
        with open(path) as log_file:
            lines = log_file.read().splitlines()

        self.assertEqual(lines[0], "epoch,channel,split,loss")
        self.assertEqual(lines[1], "0,kidneys+masses,train,0.5")
        self.assertEqual(len(lines), 13)

        self.assertEqual(Loss_Log.read(path).rows, self.log.rows)

    def test_read_invalid(self):
        path = os.path.join(self.directory, "other.csv")
        with open(path, "w") as log_file:
            log_file.write("epoch,loss\n")

        with self.assertRaisesRegex(IOError, "unexpected header"):
            Loss_Log.read(path)
