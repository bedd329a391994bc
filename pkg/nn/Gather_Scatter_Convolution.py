import numpy as np
from .Operation import Operation

class Gather_Scatter_Convolution(Operation):
    """
    Convolution over a kernel map with weights of shape `(K, C_in, C_out)`.

    For every offset `k`, the input rows of the map are gathered, multiplied
    by `W[k]` and added to the output rows. Offsets are processed in order, so
    the summation order is fixed.
    """

    def __init__(self, kernel_map):
        self._kernel_map = kernel_map
        self._feats = None
        self._weights = None
        self._has_bias = False

    def forward(self, feats, weights, bias=None):
        if feats.shape[1] != weights.shape[1]:
            raise ValueError("Input has {} channels, weights expect {}".format(feats.shape[1], weights.shape[1]))
        if feats.shape[0] != self._kernel_map.num_inputs:
            raise ValueError("Input has {} rows, kernel map expects {}".format(feats.shape[0], self._kernel_map.num_inputs))

        self._feats = feats
        self._weights = weights
        self._has_bias = bias is not None

        dtype = np.result_type(feats, weights)
        output = np.zeros((self._kernel_map.num_outputs, weights.shape[2]),
                          dtype=dtype)
        for k, in_rows, out_rows in self._kernel_map:
            output[out_rows] += np.dot(feats[in_rows], weights[k])

        if bias is not None:
            output += bias

        return output

    def backward(self, grad):
        feats_grad = np.zeros_like(self._feats, dtype=grad.dtype)
        weights_grad = np.zeros_like(self._weights, dtype=grad.dtype)
        for k, in_rows, out_rows in self._kernel_map:
            grad_rows = grad[out_rows]
            feats_grad[in_rows] += np.dot(grad_rows, self._weights[k].T)
            weights_grad[k] = np.dot(self._feats[in_rows].T, grad_rows)

        bias_grad = grad.sum(axis=0) if self._has_bias else None
        return feats_grad, weights_grad, bias_grad
