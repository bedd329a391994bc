import numpy as np

class Variable(object):
    """
    An array value in the computation graph.

    Leaf variables with `requires_grad` accumulate gradients in `grad` over
    backward passes until `zero_grad` is called.
    """

    def __init__(self, data, requires_grad=False, name=None):
        if isinstance(data, Variable):
            raise TypeError("'data' must be an array, not a Variable")

        self.data = np.asarray(data)
        self.requires_grad = requires_grad
        self.name = name
        self.grad = None

    @property
    def shape(self):
        return self.data.shape

    @property
    def dtype(self):
        return self.data.dtype

    @property
    def size(self):
        return self.data.size

    def zero_grad(self):
        self.grad = None

    def accumulate(self, grad):
        """
        Add `grad` to the accumulated gradient of this variable.
        """

        if grad.shape != self.data.shape:
            raise ValueError("Gradient of shape {} does not match variable {} of shape {}".format(grad.shape, self.name, self.data.shape))

        if self.grad is None:
            self.grad = np.array(grad, dtype=self.data.dtype)
        else:
            self.grad += grad

    def item(self):
        return self.data.item()

    def __repr__(self):
        name = "" if self.name is None else "{}, ".format(self.name)
        return "Variable({}shape={}, requires_grad={})".format(name, self.data.shape, self.requires_grad)
