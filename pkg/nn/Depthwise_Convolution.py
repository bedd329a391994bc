import numpy as np
from .Operation import Operation

class Depthwise_Convolution(Operation):
    """
    Submanifold convolution in which output channel `c` only depends on input
    channel `c`, with weights of shape `(K, C)`.
    """

    def __init__(self, kernel_map):
        self._kernel_map = kernel_map
        self._feats = None
        self._weights = None
        self._has_bias = False

    def forward(self, feats, weights, bias=None):
        if weights.ndim != 2 or feats.shape[1] != weights.shape[1]:
            raise ValueError("Depthwise weights of shape {} do not fit {} channels".format(weights.shape, feats.shape[1]))

        self._feats = feats
        self._weights = weights
        self._has_bias = bias is not None

        output = np.zeros((self._kernel_map.num_outputs, feats.shape[1]),
                          dtype=np.result_type(feats, weights))
        for k, in_rows, out_rows in self._kernel_map:
            output[out_rows] += feats[in_rows] * weights[k]

        if bias is not None:
            output += bias

        return output

    def backward(self, grad):
        feats_grad = np.zeros_like(self._feats, dtype=grad.dtype)
        weights_grad = np.zeros_like(self._weights, dtype=grad.dtype)
        for k, in_rows, out_rows in self._kernel_map:
            grad_rows = grad[out_rows]
            feats_grad[in_rows] += grad_rows * self._weights[k]
            weights_grad[k] = np.sum(self._feats[in_rows] * grad_rows, axis=0)

        bias_grad = grad.sum(axis=0) if self._has_bias else None
        return feats_grad, weights_grad, bias_grad

def depthwise_conv(st, params, kernel_map=None):
    if not params.depthwise:
        raise ValueError("Depthwise convolution requires depthwise parameters")

    if kernel_map is None:
        kernel_map = st.pyramid.get_submanifold_map(st.stride, params.kernel)

    feats = Depthwise_Convolution.apply(st.feats, params.weights, params.bias,
                                        kernel_map=kernel_map)
    return st.with_feats(feats)
