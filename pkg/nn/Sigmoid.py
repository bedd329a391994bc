from scipy.special import expit
from .Operation import Operation

class Sigmoid(Operation):
    def __init__(self):
        self._output = None

    def forward(self, feats):
        self._output = expit(feats)
        return self._output

    def backward(self, grad):
        return (grad * self._output * (1.0 - self._output),)

def sigmoid(st):
    return st.with_feats(Sigmoid.apply(st.feats))
