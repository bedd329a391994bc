import numpy as np
from .Voxel_Grid import Voxel_Grid

class Multi_Label_Mask(object):
    """
    Three binary channels over a volume: kidneys and masses, masses (tumour
    and cyst), and tumour only.
    """

    CHANNEL_NAMES = ("kidneys+masses", "tumour+cyst", "tumour")

    # Label codes in the source annotations.
    BACKGROUND = 0
    KIDNEY = 1
    TUMOUR = 2
    CYST = 3

    def __init__(self, channels):
        channels = np.asarray(channels)
        if channels.ndim != 4 or channels.shape[0] != 3:
            raise ValueError("Mask channels must have shape (3, X, Y, Z), not {}".format(channels.shape))

        self._channels = channels.astype(bool)
        self._channels.flags.writeable = False

    @classmethod
    def from_labels(cls, labels):
        """
        Convert a label-code grid `labels` to the nested three-channel scheme.
        """

        if not isinstance(labels, Voxel_Grid) or not labels.is_label:
            raise TypeError("'labels' must be a label-code Voxel_Grid")

        values = labels.values
        invalid = np.setdiff1d(np.unique(values), Voxel_Grid.LABEL_CODES)
        if invalid.size > 0:
            raise ValueError("Unexpected label values {}".format(invalid.tolist()))

        channels = np.stack([
            np.isin(values, (cls.KIDNEY, cls.TUMOUR, cls.CYST)),
            np.isin(values, (cls.TUMOUR, cls.CYST)),
            values == cls.TUMOUR
        ])
        return cls(channels)

    @classmethod
    def empty(cls, dims):
        return cls(np.zeros((3,) + tuple(dims), dtype=bool))

    @property
    def channels(self):
        return self._channels

    @property
    def dims(self):
        return self._channels.shape[1:]

    def channel(self, index):
        return self._channels[index]

    def is_nested(self):
        """
        Check whether tumour is inside masses, which are inside the
        foreground.
        """

        c0, c1, c2 = self._channels
        return bool(np.all(c1 <= c0) and np.all(c2 <= c1))

    def to_labels(self):
        """
        Encode the channels back to label codes.

        Tumour takes precedence over masses, which take precedence over
        kidney, so non-nested predictions still map to a single code.
        """

        c0, c1, c2 = self._channels
        values = np.zeros(self.dims, dtype=np.uint8)
        values[c0] = self.KIDNEY
        values[c1] = self.CYST
        values[c2] = self.TUMOUR
        return values

    def __eq__(self, other):
        if not isinstance(other, Multi_Label_Mask):
            return NotImplemented

        return self.dims == other.dims and np.array_equal(self._channels, other.channels)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result

        return not result

    __hash__ = None
