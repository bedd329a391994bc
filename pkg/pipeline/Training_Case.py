import numpy as np
from ..sparse.Sparse_Tensor import Sparse_Tensor
from ..volume.Multi_Label_Mask import Multi_Label_Mask

class Training_Case(object):
    """
    A volume prepared as network input, optionally with labels.

    Stage 1 cases select their active voxels with the HU window of the
    intensities. Stage 2 cases carry an explicit active mask, the lifted
    region of interest cropped to its bounding box, and clamp the normalized
    intensities. The `offset` is the position of the volume in the full
    scan.
    """

    def __init__(self, name, image, window, labels=None, active=None,
                 clip=False, offset=(0, 0, 0)):
        if labels is not None and labels.dims != image.dims:
            raise ValueError("Label dimensions {} do not match image dimensions {}".format(labels.dims, image.dims))
        if active is not None:
            active = np.asarray(active, dtype=bool)
            if active.shape != image.dims:
                raise ValueError("Active mask dimensions {} do not match image dimensions {}".format(active.shape, image.dims))

        self.name = name
        self.image = image
        self.window = window
        self.labels = labels
        self.clip = clip
        self.offset = tuple(int(value) for value in offset)
        self._active = active

    @property
    def dims(self):
        return self.image.dims

    @property
    def active(self):
        if self._active is None:
            return self.window.apply(self.image)

        return self._active

    @property
    def has_labels(self):
        return self.labels is not None

    def augmented(self, augmenter, rng, params):
        """
        Create a copy of this case augmented with the `Augmenter` object
        `augmenter`, drawing from `rng` according to `params`.
        """

        if self.labels is None:
            raise ValueError("Case '{}' has no labels to augment along".format(self.name))

        if self._active is None:
            image, labels = augmenter.augment(self.image, self.labels, rng, params)
            active = None
        else:
            image, labels, active = augmenter.augment(self.image, self.labels, rng,
                                                      params, mask=self._active)

        return Training_Case(self.name, image, self.window, labels=labels,
                             active=active, clip=self.clip, offset=self.offset)

    def to_tensors(self, batch_index=0, pyramid=None):
        """
        Convert the case to a sparse input tensor with normalized intensity
        features and, if the case has labels, the `(N, 3)` matrix of the
        multi-label targets on the same rows.
        """

        feats = self.window.normalize(self.image.values, clip=self.clip)
        st = Sparse_Tensor.sparsify_dense(feats, self.active,
                                          batch_index=batch_index,
                                          pyramid=pyramid)
        if self.labels is None:
            return st, None

        channels = Multi_Label_Mask.from_labels(self.labels).channels
        positions = st.coords[:, 1:]
        targets = channels[:, positions[:, 0], positions[:, 1], positions[:, 2]].T
        return st, targets.astype(np.float64)
