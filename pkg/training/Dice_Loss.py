import numpy as np
from ..nn.Average_Pool import avg_pool
from ..nn.Operation import Operation
from ..nn.Reduce_Sum import Reduce_Sum
from ..nn.Variable import Variable
from ..nn.Weighted_Sum import Weighted_Sum
from ..sparse.Coordinate_Pyramid import PyramidLevelError

class Dice_Loss(Operation):
    """
    Soft Dice loss per channel, `1 - (2 I + eps) / (P + T + eps)`, where `I`
    is the sum of the products of predictions and targets and `P` and `T` are
    the sums of the predictions and the targets over the rows.

    The output is the vector of channel losses. Targets are constants.
    """

    def __init__(self, eps=1e-5):
        if eps <= 0:
            raise ValueError("Dice epsilon must be positive, not {}".format(eps))

        self._eps = eps
        self._target = None
        self._overlap = None
        self._total = None

    def forward(self, pred, target):
        if pred.shape != target.shape:
            raise ValueError("Predictions of shape {} do not match targets of shape {}".format(pred.shape, target.shape))

        self._target = target
        self._overlap = 2.0 * np.sum(pred * target, axis=0) + self._eps
        self._total = np.sum(pred, axis=0) + np.sum(target, axis=0) + self._eps
        return 1.0 - self._overlap / self._total

    def backward(self, grad):
        total = self._total
        pred_grad = -(2.0 * self._target * total - self._overlap) / (total * total)
        return grad * pred_grad, None

def dice_loss(pred, target, eps=1e-5, reduce=True):
    """
    Compute the Dice loss of the prediction `pred` against `target`.

    Both may be sparse tensors on the same coordinate rows, variables or
    arrays of shape `(N, C)`. With `reduce`, the channel losses are summed
    with equal weights into a scalar.
    """

    if hasattr(pred, "pyramid") and hasattr(target, "pyramid"):
        if pred.pyramid is not target.pyramid or pred.stride != target.stride:
            raise ValueError("Predictions and targets must share the same rows")

    pred = getattr(pred, "feats", pred)
    target = getattr(target, "values", target)
    if isinstance(target, Variable):
        target = target.data

    losses = Dice_Loss.apply(pred, np.asarray(target), eps=eps)
    if reduce:
        return Reduce_Sum.apply(losses)

    return losses

def get_level_weights(num_heads):
    """
    Retrieve the deep supervision weights `1 / 2^i` of the heads.
    """

    return [0.5 ** level for level in range(num_heads)]

def get_pooled_targets(labels, strides):
    """
    Average the stride 1 label tensor `labels` down to each of the `strides`
    in turn, which must be registered in its pyramid.
    """

    targets = []
    current = labels
    for stride in strides:
        if not labels.pyramid.has_level(stride):
            raise PyramidLevelError("Stride {} is not registered in the pyramid of the labels".format(stride))

        while current.stride != stride:
            factor = tuple(s // c for s, c in zip(stride, current.stride))
            if any(s % c != 0 for s, c in zip(stride, current.stride)) or \
                    factor == (1, 1, 1):
                raise ValueError("Stride {} cannot be reached from stride {}".format(stride, current.stride))

            current = avg_pool(current, stride=factor)

        targets.append(current)

    return targets

def deep_supervised_loss(heads, labels, eps=1e-5, return_channels=False):
    """
    Compute the deep-supervised Dice loss of the head predictions `heads`,
    finest first, against the stride 1 multi-label tensor `labels`.

    Head `i` must live at stride `2^i` of the pyramid of the labels. Its
    targets are the labels averaged over the cells of that stride, and its
    loss is weighted by `1 / 2^i`. With `return_channels`, the weighted
    channel losses are returned as an array next to the total.
    """

    if not heads:
        raise ValueError("At least one head prediction is required")
    if labels.stride != (1, 1, 1):
        raise ValueError("Labels must have stride 1, not {}".format(labels.stride))

    for level, head in enumerate(heads):
        expected = (2 ** level,) * 3
        if head.stride != expected:
            raise ValueError("Head {} has stride {} instead of {}".format(level, head.stride, expected))
        if head.pyramid is not labels.pyramid:
            raise ValueError("Head {} does not share the pyramid of the labels".format(level))

    targets = get_pooled_targets(labels, [head.stride for head in heads])
    losses = [
        dice_loss(head, target, eps=eps, reduce=False)
        for head, target in zip(heads, targets)
    ]

    weights = get_level_weights(len(heads))
    channel_losses = Weighted_Sum.apply(*losses, weights=weights)
    total = Reduce_Sum.apply(channel_losses)
    if return_channels:
        return total, np.array(channel_losses.data, dtype=np.float64)

    return total
