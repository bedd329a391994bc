import numpy as np
from .Operation import Operation

class Global_Response_Norm(Operation):
    """
    Global response normalization with a residual connection.

    For every batch item, `g[c]` is the L2 norm of channel `c` over the active
    rows of that item and `n[c] = g[c] / (mean(g) + eps)`. The output is
    `gamma * (x * n) + beta + x`.
    """

    def __init__(self, batch_indices, batch_size, eps=1e-6):
        self._batch_indices = np.asarray(batch_indices, dtype=np.int64)
        self._batch_size = max(int(batch_size), 1)
        self._eps = eps
        self._feats = None
        self._norms = None
        self._response = None
        self._gamma = None

    def _batch_sum(self, values):
        if self._batch_size == 1:
            return values.sum(axis=0, keepdims=True)

        sums = np.zeros((self._batch_size, values.shape[1]), dtype=values.dtype)
        np.add.at(sums, self._batch_indices, values)
        return sums

    def forward(self, feats, gamma, beta):
        self._feats = feats
        self._gamma = gamma
        self._norms = np.sqrt(self._batch_sum(feats * feats))
        denominator = self._norms.mean(axis=1, keepdims=True) + self._eps
        self._response = self._norms / denominator
        return gamma * (feats * self._response[self._batch_indices]) + beta + feats

    def backward(self, grad):
        feats = self._feats
        channels = feats.shape[1]
        response = self._response[self._batch_indices]

        feats_grad = grad + grad * self._gamma * response

        response_grad = self._batch_sum(grad * self._gamma * feats)
        denominator = self._norms.mean(axis=1, keepdims=True) + self._eps
        norms_grad = response_grad / denominator - \
            np.sum(response_grad * self._norms, axis=1, keepdims=True) / \
            (channels * denominator * denominator)

        # The norm is not differentiable at zero; channels without any
        # response there receive no gradient through the norm.
        scale = np.divide(norms_grad, self._norms,
                          out=np.zeros_like(norms_grad),
                          where=self._norms > 0)
        feats_grad = feats_grad + feats * scale[self._batch_indices]

        gamma_grad = np.sum(grad * feats * response, axis=0)
        beta_grad = grad.sum(axis=0)
        return feats_grad, gamma_grad, beta_grad

def grn(st, params):
    """
    Apply global response normalization to the sparse tensor `st` with
    statistics per batch item.
    """

    feats = Global_Response_Norm.apply(st.feats, params.gamma, params.beta,
                                       batch_indices=st.batch_indices,
                                       batch_size=st.batch_size,
                                       eps=params.eps)
    return st.with_feats(feats)
