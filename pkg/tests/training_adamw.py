import unittest
import numpy as np
from ..nn.Variable import Variable
from ..training.AdamW import AdamW, adamw_step
from ..training.Train_Config import Train_Config

class TestTrainingAdamW(unittest.TestCase):
    def setUp(self):
        self.config = Train_Config(lr=0.1, weight_decay=0.01)

    def test_adamw_step_first(self):
        params = [np.array([1.0, -2.0, 3.0])]
        grads = [np.array([0.5, -4.0, 0.0])]
        state = {"m": [np.zeros(3)], "v": [np.zeros(3)]}

        new_params, new_state = adamw_step(params, grads, state, 1, self.config)

        # The first bias-corrected update is the sign of the gradient.
        expected = params[0] - 0.1 * (np.sign(grads[0]) + 0.01 * params[0])
        np.testing.assert_allclose(new_params[0], expected, atol=1e-6)
        np.testing.assert_allclose(new_state["m"][0], 0.1 * grads[0])
        np.testing.assert_allclose(new_state["v"][0], 0.05 * grads[0] ** 2)

        # The given arrays are left untouched.
        np.testing.assert_array_equal(params[0], [1.0, -2.0, 3.0])
        np.testing.assert_array_equal(state["m"][0], np.zeros(3))

    def test_adamw_step_second(self):
        param = np.array([0.5])
        grads = [np.array([1.0]), np.array([-1.0])]
        state = {"m": [np.zeros(1)], "v": [np.zeros(1)]}

        params = [param]
        for t, grad in enumerate(grads, 1):
            params, state = adamw_step(params, [grad], state, t, self.config, lr=0.01)

        m = 0.9 * 0.1 * 1.0 + 0.1 * -1.0
        v = 0.95 * 0.05 + 0.05
        m_hat = m / (1 - 0.9 ** 2)
        v_hat = v / (1 - 0.95 ** 2)
        first = 0.5 - 0.01 * (1.0 + 0.01 * 0.5)
        expected = first - 0.01 * (m_hat / (np.sqrt(v_hat) + 1e-8) + 0.01 * first)
        np.testing.assert_allclose(params[0], [expected], rtol=1e-6)

    def test_adamw_step_invalid(self):
        state = {"m": [np.zeros(2)], "v": [np.zeros(2)]}
        with self.assertRaises(ValueError):
            adamw_step([np.zeros(2)], [], state, 1, self.config)
        with self.assertRaises(ValueError):
            adamw_step([np.zeros(2)], [np.zeros(2)], state, 0, self.config)
        with self.assertRaises(ValueError):
            adamw_step([np.zeros(2)], [np.zeros(3)], state, 1, self.config)

    def test_step(self):
        first = Variable(np.array([1.0, 2.0], dtype=np.float32), requires_grad=True)
        second = Variable(np.array([4.0], dtype=np.float32), requires_grad=True)
        optimizer = AdamW([first, second], self.config)

        first.accumulate(np.array([1.0, -1.0], dtype=np.float32))
        optimizer.step()
        self.assertEqual(optimizer.step_count, 1)
        self.assertEqual(first.dtype, np.float32)
        np.testing.assert_allclose(first.data, [1.0 - 0.1 * 1.01, 2.0 + 0.1 * (1.0 - 0.02)],
                                   rtol=1e-5)

        # Without a gradient, only the weight decay applies.
        np.testing.assert_allclose(second.data, [4.0 - 0.1 * 0.04], rtol=1e-5)

        optimizer.zero_grad()
        self.assertIsNone(first.grad)
        self.assertEqual(len(optimizer.state["m"]), 2)
