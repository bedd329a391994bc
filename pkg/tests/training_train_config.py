import unittest
from mock import MagicMock
from ..training.Train_Config import Train_Config

class TestTrainingTrainConfig(unittest.TestCase):
    def test_defaults(self):
        config = Train_Config()
        self.assertEqual(config.lr, 5e-4)
        self.assertEqual(config.weight_decay, 1e-5)
        self.assertEqual(config.betas, (0.9, 0.95))
        self.assertEqual(config.grad_accum, 8)
        self.assertEqual(config.epochs, 500)
        self.assertEqual(config.warmup_epochs + config.constant_epochs + config.cosine_epochs, 500)
        self.assertEqual(config.folds, 5)

    def test_validate(self):
        with self.assertRaisesRegex(ValueError, "add up to"):
            Train_Config(epochs=10)
        with self.assertRaisesRegex(ValueError, "Betas"):
            Train_Config(betas=(0.9, 1.0))
        with self.assertRaises(ValueError):
            Train_Config(lr=0.0)
        with self.assertRaises(ValueError):
            Train_Config(grad_accum=0)
        with self.assertRaises(ValueError):
            Train_Config(folds=1)
        with self.assertRaises(ValueError):
            Train_Config(weight_decay=-1.0)

    def test_from_settings(self):
        settings = MagicMock()
        settings.as_dict.return_value = {"lr": 1e-3, "epochs": 2,
                                         "warmup_epochs": 1,
                                         "constant_epochs": 1,
                                         "cosine_epochs": 0}
        config = Train_Config.from_settings(settings, seed=9)
        self.assertEqual(config.lr, 1e-3)
        self.assertEqual(config.seed, 9)

        with self.assertRaises(KeyError):
            Train_Config.from_dict({"momentum": 0.9})

    def test_replace(self):
        config = Train_Config()
        other = config.replace(batch_size=2)
        self.assertEqual(other.batch_size, 2)
        self.assertEqual(config.batch_size, 1)
        self.assertNotEqual(config, other)
        self.assertEqual(config, Train_Config.from_dict(config.as_dict()))
        self.assertIn("grad_accum=8", repr(config))
