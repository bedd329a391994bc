from .Tape import Tape
from .Variable import Variable

class Operation(object):
    """
    A differentiable operation on arrays.

    Subclasses implement `forward`, which receives the input arrays (or
    `None` for absent optional inputs) and saves what `backward` needs, and
    `backward`, which receives the gradient of the output and returns one
    gradient (or `None`) per input.
    """

    def forward(self, *inputs):
        raise NotImplementedError("Subclasses must implement forward(*inputs)")

    def backward(self, grad):
        raise NotImplementedError("Subclasses must implement backward(grad)")

    @classmethod
    def apply(cls, *inputs, **kwargs):
        """
        Run the operation on `Variable` inputs and record it on the active
        tape when any input requires a gradient.

        Keyword arguments configure the operation object.
        """

        operation = cls(**kwargs)
        arrays = [
            value.data if isinstance(value, Variable) else value
            for value in inputs
        ]

        requires_grad = any(
            isinstance(value, Variable) and value.requires_grad
            for value in inputs
        )

        output = Variable(operation.forward(*arrays))

        tape = Tape.get_active()
        if requires_grad and tape is not None:
            output.requires_grad = True
            tape.record(operation, inputs, output)

        return output
