import numpy as np
from .Variable import Variable

class Norm_Params(object):
    """
    Affine scale `gamma`, shift `beta` and stabilizer `eps` of
    a normalization.
    """

    def __init__(self, gamma, beta, eps=1e-6):
        if not isinstance(gamma, Variable):
            gamma = Variable(gamma, requires_grad=True)
        if not isinstance(beta, Variable):
            beta = Variable(beta, requires_grad=True)

        if eps <= 0:
            raise ValueError("Normalization epsilon must be positive, not {}".format(eps))
        if gamma.shape != beta.shape or gamma.data.ndim != 1:
            raise ValueError("Gamma and beta must be vectors of equal length")

        self.gamma = gamma
        self.beta = beta
        self.eps = eps

    @classmethod
    def initialize(cls, channels, eps=1e-6, scale=1.0, name="norm",
                   dtype=np.float32):
        gamma = Variable(np.full(channels, scale, dtype=dtype),
                         requires_grad=True, name="{}.gamma".format(name))
        beta = Variable(np.zeros(channels, dtype=dtype), requires_grad=True,
                        name="{}.beta".format(name))
        return cls(gamma, beta, eps=eps)

    @property
    def channels(self):
        return self.gamma.shape[0]

    def parameters(self):
        return [self.gamma, self.beta]
