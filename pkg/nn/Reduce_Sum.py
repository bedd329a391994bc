import numpy as np
from .Operation import Operation

class Reduce_Sum(Operation):
    """
    Sum of all elements of an array.
    """

    def __init__(self):
        self._shape = None

    def forward(self, values):
        self._shape = values.shape
        return np.sum(values)

    def backward(self, grad):
        return (np.full(self._shape, grad, dtype=np.result_type(grad, np.float32)),)
