import threading
import numpy as np
from .Variable import Variable

class Tape(object):
    """
    Record of the operations performed while the tape is active.

    Operations are recorded when at least one of their inputs requires
    a gradient. A tape is used as a context manager and is confined to the
    thread that activates it:

        with Tape() as tape:
            loss = ...
        tape.backward(loss)
    """

    _local = threading.local()

    def __init__(self):
        self._entries = []

    @classmethod
    def get_active(cls):
        """
        Retrieve the innermost active tape of the current thread, or `None`.
        """

        stack = getattr(cls._local, "stack", None)
        if not stack:
            return None

        return stack[-1]

    def __enter__(self):
        if not hasattr(self._local, "stack"):
            self._local.stack = []

        self._local.stack.append(self)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self._local.stack.remove(self)
        return False

    def __len__(self):
        return len(self._entries)

    def record(self, operation, inputs, output):
        self._entries.append((operation, tuple(inputs), output))

    def clear(self):
        """
        Discard all recorded operations and their saved activations.
        """

        self._entries = []

    def backward(self, output, grad=None):
        """
        Propagate the gradient `grad` of `output` back through the recorded
        operations in reverse order, visiting each operation once.

        Leaf variables that require a gradient accumulate it in their `grad`
        attribute. If `grad` is not given, then `output` must be a scalar and
        its gradient is one.
        """

        if not self._entries:
            raise RuntimeError("Backward called before any operation was recorded on the tape")
        if not isinstance(output, Variable):
            raise TypeError("'output' must be a Variable")

        produced = set(id(entry[2]) for entry in self._entries)
        if id(output) not in produced:
            raise RuntimeError("Variable {!r} was not produced by an operation on this tape".format(output))

        if grad is None:
            if output.size != 1:
                raise ValueError("A gradient must be given for non-scalar outputs")

            grad = np.ones_like(output.data)
        else:
            grad = np.asarray(grad, dtype=output.dtype)
            if grad.shape != output.shape:
                raise ValueError("Gradient shape {} does not match output shape {}".format(grad.shape, output.shape))

        grads = {id(output): grad}
        for operation, inputs, result in reversed(self._entries):
            result_grad = grads.pop(id(result), None)
            if result_grad is None:
                continue

            input_grads = operation.backward(result_grad)
            for variable, input_grad in zip(inputs, input_grads):
                if input_grad is None or not isinstance(variable, Variable):
                    continue
                if not variable.requires_grad:
                    continue

                if id(variable) in produced:
                    if id(variable) in grads:
                        grads[id(variable)] = grads[id(variable)] + input_grad
                    else:
                        grads[id(variable)] = input_grad
                else:
                    variable.accumulate(input_grad)

def backward(tape, loss, loss_grad=None):
    """
    Compute gradients of all parameters and inputs that contributed to `loss`
    through the operations recorded on `tape`.
    """

    tape.backward(loss, loss_grad)
