import numpy as np
from .Operation import Operation

class Pointwise_Linear(Operation):
    """
    Per row linear map `x W + b`, which is a convolution with a 1x1x1 kernel.

    The weights are a `(C_in, C_out)` matrix or a `(1, C_in, C_out)` kernel.
    """

    def __init__(self):
        self._feats = None
        self._weights = None
        self._has_bias = False

    def forward(self, feats, weights, bias=None):
        matrix = weights.reshape(weights.shape[-2], weights.shape[-1])
        if feats.shape[1] != matrix.shape[0]:
            raise ValueError("Input has {} channels, weights expect {}".format(feats.shape[1], matrix.shape[0]))

        self._feats = feats
        self._weights = weights
        self._has_bias = bias is not None

        output = np.dot(feats, matrix)
        if bias is not None:
            output = output + bias

        return output

    def backward(self, grad):
        matrix = self._weights.reshape(self._weights.shape[-2], self._weights.shape[-1])
        feats_grad = np.dot(grad, matrix.T)
        weights_grad = np.dot(self._feats.T, grad).reshape(self._weights.shape)
        bias_grad = grad.sum(axis=0) if self._has_bias else None
        return feats_grad, weights_grad, bias_grad

def pointwise_linear(st, weights, bias=None):
    """
    Apply the per row linear map with `weights` and `bias` variables, or with
    a `Conv_Params` object with a 1x1x1 kernel given as `weights`.
    """

    if hasattr(weights, "weights"):
        weights, bias = weights.weights, weights.bias

    return st.with_feats(Pointwise_Linear.apply(st.feats, weights, bias))
