import numpy as np

def kfold_split(count, folds=5, seed=0):
    """
    Split the case indices `0..count-1` into `folds` disjoint parts after
    a seeded shuffle. The part sizes differ by at most one.
    """

    if folds < 2:
        raise ValueError("At least two folds are required, not {}".format(folds))
    if count < folds:
        raise ValueError("Cannot split {} cases into {} folds".format(count, folds))

    order = np.random.RandomState(seed).permutation(count)
    return [sorted(part.tolist()) for part in np.array_split(order, folds)]

def get_fold(parts, fold):
    """
    Retrieve the training and validation indices for the held-out `fold` of
    the split `parts`.
    """

    if not 0 <= fold < len(parts):
        raise ValueError("Fold {} does not exist in a {}-fold split".format(fold, len(parts)))

    train = sorted(index for number, part in enumerate(parts)
                   if number != fold for index in part)
    return train, list(parts[fold])
