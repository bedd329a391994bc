import numpy as np
from .Operation import Operation

class Layer_Norm(Operation):
    """
    Normalization of every row over its channels, followed by an affine map.
    """

    def __init__(self, eps=1e-6):
        self._eps = eps
        self._normalized = None
        self._inv_std = None
        self._gamma = None

    def forward(self, feats, gamma, beta):
        mean = feats.mean(axis=1, keepdims=True)
        centered = feats - mean
        variance = np.mean(centered * centered, axis=1, keepdims=True)
        self._inv_std = 1.0 / np.sqrt(variance + self._eps)
        self._normalized = centered * self._inv_std
        self._gamma = gamma
        return self._normalized * gamma + beta

    def backward(self, grad):
        channels = self._normalized.shape[1]
        normalized_grad = grad * self._gamma
        feats_grad = self._inv_std / channels * (
            channels * normalized_grad -
            normalized_grad.sum(axis=1, keepdims=True) -
            self._normalized * np.sum(normalized_grad * self._normalized, axis=1, keepdims=True)
        )
        gamma_grad = np.sum(grad * self._normalized, axis=0)
        beta_grad = grad.sum(axis=0)
        return feats_grad, gamma_grad, beta_grad

def layer_norm(st, params):
    feats = Layer_Norm.apply(st.feats, params.gamma, params.beta,
                             eps=params.eps)
    return st.with_feats(feats)
