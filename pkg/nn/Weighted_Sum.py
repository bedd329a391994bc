import numpy as np
from .Operation import Operation

class Weighted_Sum(Operation):
    """
    Weighted sum of scalar values, used to combine losses.
    """

    def __init__(self, weights):
        self._weights = [float(weight) for weight in weights]

    def forward(self, *values):
        if len(values) != len(self._weights):
            raise ValueError("Expected {} values, got {}".format(len(self._weights), len(values)))

        total = np.zeros((), dtype=np.result_type(*values))
        for weight, value in zip(self._weights, values):
            total = total + weight * value

        return total

    def backward(self, grad):
        return tuple(weight * grad for weight in self._weights)
