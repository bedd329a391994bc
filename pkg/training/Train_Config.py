class Train_Config(object):
    """
    Optimization configuration of a training stage.

    The epochs are split into a warmup phase, a phase at a constant learning
    rate and a cosine annealing phase, which must add up to `epochs`.
    """

    FIELDS = (
        "lr", "weight_decay", "betas", "adam_eps", "batch_size",
        "grad_accum", "epochs", "warmup_epochs", "constant_epochs",
        "cosine_epochs", "dice_eps", "folds", "loader_workers", "validate",
        "seed"
    )

    def __init__(self, lr=5e-4, weight_decay=1e-5, betas=(0.9, 0.95),
                 adam_eps=1e-8, batch_size=1, grad_accum=8, epochs=500,
                 warmup_epochs=1, constant_epochs=99, cosine_epochs=400,
                 dice_eps=1e-5, folds=5, loader_workers=1, validate=True,
                 seed=0):
        self.lr = float(lr)
        self.weight_decay = float(weight_decay)
        self.betas = tuple(float(beta) for beta in betas)
        self.adam_eps = float(adam_eps)
        self.batch_size = int(batch_size)
        self.grad_accum = int(grad_accum)
        self.epochs = int(epochs)
        self.warmup_epochs = int(warmup_epochs)
        self.constant_epochs = int(constant_epochs)
        self.cosine_epochs = int(cosine_epochs)
        self.dice_eps = float(dice_eps)
        self.folds = int(folds)
        self.loader_workers = int(loader_workers)
        self.validate = bool(validate)
        self.seed = int(seed)

        self._validate()

    def _validate(self):
        if self.lr <= 0 or self.adam_eps <= 0 or self.dice_eps <= 0:
            raise ValueError("Learning rate and epsilons must be positive")
        if self.weight_decay < 0:
            raise ValueError("Weight decay must not be negative, not {}".format(self.weight_decay))
        if len(self.betas) != 2 or not all(0 <= beta < 1 for beta in self.betas):
            raise ValueError("Betas must be two values in [0, 1), not {}".format(self.betas))
        if self.batch_size < 1 or self.grad_accum < 1 or self.epochs < 1:
            raise ValueError("Batch size, gradient accumulation and epochs must be positive")
        if min(self.warmup_epochs, self.constant_epochs, self.cosine_epochs) < 0:
            raise ValueError("Schedule phases must not be negative")
        phases = self.warmup_epochs + self.constant_epochs + self.cosine_epochs
        if phases != self.epochs:
            raise ValueError("Schedule phases add up to {} epochs instead of {}".format(phases, self.epochs))
        if self.folds < 2 or self.loader_workers < 1:
            raise ValueError("At least two folds and one loader worker are required")

    @classmethod
    def from_settings(cls, settings, seed=0):
        """
        Create the configuration from the "training" settings component.
        """

        return cls.from_dict(dict(settings.as_dict(), seed=seed))

    @classmethod
    def from_dict(cls, data):
        unknown = set(data.keys()) - set(cls.FIELDS)
        if unknown:
            raise KeyError("Unknown training configuration fields: {}".format(', '.join(sorted(unknown))))

        return cls(**data)

    def as_dict(self):
        data = {}
        for field in self.FIELDS:
            value = getattr(self, field)
            data[field] = list(value) if isinstance(value, tuple) else value

        return data

    def replace(self, **changes):
        data = self.as_dict()
        data.update(changes)
        return self.from_dict(data)

    def __eq__(self, other):
        if not isinstance(other, Train_Config):
            return NotImplemented

        return self.as_dict() == other.as_dict()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result

        return not result

    __hash__ = None

    def __repr__(self):
        return "Train_Config({})".format(', '.join("{}={!r}".format(field, getattr(self, field)) for field in self.FIELDS))
