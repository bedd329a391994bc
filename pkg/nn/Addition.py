from .Operation import Operation

class Addition(Operation):
    def forward(self, first, second):
        if first.shape != second.shape:
            raise ValueError("Cannot add features of shapes {} and {}".format(first.shape, second.shape))

        return first + second

    def backward(self, grad):
        return grad, grad

def add(first, second):
    """
    Sum two sparse tensors that share a pyramid level, row for row.
    """

    if first.pyramid is not second.pyramid or first.stride != second.stride:
        raise ValueError("Tensors must share the same pyramid level to be added")

    return first.with_feats(Addition.apply(first.feats, second.feats))
