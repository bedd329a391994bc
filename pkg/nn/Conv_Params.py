import numpy as np
from scipy.stats import truncnorm
from .Variable import Variable

class Conv_Params(object):
    """
    Weights and optional bias of a convolution.

    Regular weights have shape `(K, C_in, C_out)` with one matrix per kernel
    offset. Depthwise weights have shape `(K, C)` with one channel vector per
    offset. `K` is the kernel volume.
    """

    TRUNCATION = 2.0

    def __init__(self, weights, bias=None, kernel=(1, 1, 1), depthwise=False):
        if not isinstance(weights, Variable):
            weights = Variable(weights, requires_grad=True)
        if bias is not None and not isinstance(bias, Variable):
            bias = Variable(bias, requires_grad=True)

        self.kernel = tuple(int(size) for size in kernel)
        self.depthwise = depthwise
        self.weights = weights
        self.bias = bias

        volume = int(np.prod(self.kernel))
        expected_ndim = 2 if depthwise else 3
        if weights.data.ndim != expected_ndim or weights.shape[0] != volume:
            raise ValueError("Weights of shape {} do not fit kernel {} (depthwise: {})".format(weights.shape, self.kernel, depthwise))
        if bias is not None and bias.shape != (self.out_channels,):
            raise ValueError("Bias of shape {} does not fit {} output channels".format(bias.shape, self.out_channels))
        if not np.all(np.isfinite(weights.data)):
            raise ValueError("Weights must be finite")

    @classmethod
    def initialize(cls, in_channels, out_channels, kernel, bias, rng,
                   std=0.02, depthwise=False, name="conv", dtype=np.float32):
        """
        Create parameters with weights drawn from a normal distribution with
        standard deviation `std`, truncated at two standard deviations, and
        a zero bias when `bias` is enabled.
        """

        if np.isscalar(kernel):
            kernel = (kernel,) * 3

        volume = int(np.prod(kernel))
        if depthwise:
            if in_channels != out_channels:
                raise ValueError("Depthwise convolutions must keep the channel count")

            shape = (volume, in_channels)
        else:
            shape = (volume, in_channels, out_channels)

        if std > 0:
            values = truncnorm.rvs(-cls.TRUNCATION, cls.TRUNCATION, loc=0.0,
                                   scale=std, size=shape, random_state=rng)
        else:
            values = np.zeros(shape)

        weights = Variable(values.astype(dtype), requires_grad=True,
                           name="{}.weights".format(name))
        bias_variable = None
        if bias:
            bias_variable = Variable(np.zeros(out_channels, dtype=dtype),
                                     requires_grad=True,
                                     name="{}.bias".format(name))

        return cls(weights, bias_variable, kernel=kernel, depthwise=depthwise)

    @property
    def in_channels(self):
        return self.weights.shape[1]

    @property
    def out_channels(self):
        return self.weights.shape[1] if self.depthwise else self.weights.shape[2]

    def parameters(self):
        if self.bias is None:
            return [self.weights]

        return [self.weights, self.bias]
