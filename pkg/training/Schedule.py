import math

def lr_at_epoch(config, epoch, step_fraction=0.0):
    """
    Retrieve the learning rate at `step_fraction` of the way through the
    zero-based `epoch` under the training configuration `config`.

    The rate ramps up linearly from zero during the warmup epochs, stays
    constant and then follows a cosine down to zero.
    """

    if not 0 <= epoch < config.epochs:
        raise ValueError("Epoch {} is outside the schedule of {} epochs".format(epoch, config.epochs))
    if not 0.0 <= step_fraction <= 1.0:
        raise ValueError("Step fraction must be in [0, 1], not {}".format(step_fraction))

    progress = epoch + step_fraction
    if epoch < config.warmup_epochs:
        return config.lr * progress / config.warmup_epochs

    cosine_start = config.warmup_epochs + config.constant_epochs
    if epoch < cosine_start:
        return config.lr

    position = (progress - cosine_start) / config.cosine_epochs
    return config.lr * 0.5 * (1.0 + math.cos(math.pi * position))
