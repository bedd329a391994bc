import numpy as np

class AdamW(object):
    """
    Adam with decoupled weight decay over a list of parameter variables.

    The variables are updated in place from their accumulated gradients.
    Variables without a gradient are treated as having a zero gradient.
    """

    def __init__(self, variables, config):
        self._variables = list(variables)
        self._config = config
        self._state = {
            "m": [np.zeros_like(variable.data) for variable in self._variables],
            "v": [np.zeros_like(variable.data) for variable in self._variables]
        }
        self._step = 0

    @property
    def step_count(self):
        return self._step

    @property
    def state(self):
        return self._state

    @staticmethod
    def adamw_step(params, grads, state, t, config, lr=None):
        """
        Perform update `t` (counting from one) on the arrays `params` with
        gradients `grads` and moment `state` holding lists "m" and "v".

        Returns the new parameters and the new state without changing the
        given arrays. The learning rate defaults to the one in `config`.
        """

        if len(params) != len(grads):
            raise ValueError("Received {} gradients for {} parameters".format(len(grads), len(params)))
        if t < 1:
            raise ValueError("Step index must start at 1, not {}".format(t))

        if lr is None:
            lr = config.lr

        beta1, beta2 = config.betas
        new_params = []
        new_state = {"m": [], "v": []}
        for param, grad, m, v in zip(params, grads, state["m"], state["v"]):
            if param.shape != grad.shape:
                raise ValueError("Gradient of shape {} does not match parameter of shape {}".format(grad.shape, param.shape))

            m = beta1 * m + (1.0 - beta1) * grad
            v = beta2 * v + (1.0 - beta2) * grad * grad
            m_hat = m / (1.0 - beta1 ** t)
            v_hat = v / (1.0 - beta2 ** t)
            update = m_hat / (np.sqrt(v_hat) + config.adam_eps) + \
                config.weight_decay * param

            new_params.append((param - lr * update).astype(param.dtype))
            new_state["m"].append(m)
            new_state["v"].append(v)

        return new_params, new_state

    def step(self, lr=None):
        """
        Update all variables with their current gradients at the learning
        rate `lr`.
        """

        self._step += 1
        params = [variable.data for variable in self._variables]
        grads = [
            np.zeros_like(variable.data) if variable.grad is None else variable.grad
            for variable in self._variables
        ]

        params, self._state = self.adamw_step(params, grads, self._state,
                                              self._step, self._config, lr=lr)
        for variable, param in zip(self._variables, params):
            variable.data = param

    def zero_grad(self):
        for variable in self._variables:
            variable.zero_grad()

def adamw_step(params, grads, state, t, config, lr=None):
    return AdamW.adamw_step(params, grads, state, t, config, lr=lr)
