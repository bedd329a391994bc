import numpy as np
from scipy import ndimage

class ROI_Finder(object):
    """
    Stage 1 region of interest detection on the low resolution grid.
    """

    def __init__(self, threshold=0.1, diameter=11):
        if not 0.0 <= threshold < 1.0:
            raise ValueError("Threshold must be in [0, 1), not {}".format(threshold))

        self._threshold = float(threshold)
        self._diameter = int(diameter)
        self.get_ball(self._diameter)

    @classmethod
    def from_settings(cls, settings):
        return cls(settings.get("threshold"), settings.get("dilate"))

    @property
    def threshold(self):
        return self._threshold

    @property
    def diameter(self):
        return self._diameter

    @staticmethod
    def get_ball(diameter):
        """
        Retrieve the structuring element of the offsets `o` with
        `sum((o / r) ** 2) <= 1` for radius `r = (diameter - 1) / 2`.
        """

        if diameter < 1 or diameter % 2 == 0:
            raise ValueError("Dilation diameter must be a positive odd number, not {}".format(diameter))

        radius = (diameter - 1) // 2
        if radius == 0:
            return np.ones((1, 1, 1), dtype=bool)

        x, y, z = np.ogrid[-radius:radius + 1, -radius:radius + 1, -radius:radius + 1]
        return (x * x + y * y + z * z) <= radius * radius

    def predict_probabilities(self, model, st, dims):
        """
        Run the Stage 1 `model` on the sparse tensor `st` and retrieve the
        dense `(X, Y, Z, 3)` probabilities of its finest head on a grid of
        dimensions `dims`, with zeros at inactive voxels.
        """

        probs = model.forward(st, num_heads=1)[0]
        return probs.densify(dims, fill=0.0, batch_size=1)[0]

    def get_roi(self, probs):
        """
        Retrieve the voxels of the dense probabilities `probs` where the
        largest channel probability exceeds the threshold.
        """

        return np.max(probs, axis=-1) > self._threshold

    def predict_roi(self, model, st, dims):
        """
        Run the Stage 1 `model` on the sparse tensor `st` and retrieve the
        boolean mask of dimensions `dims` of the voxels where the largest
        probability of the finest head exceeds the threshold.
        """

        return self.get_roi(self.predict_probabilities(model, st, dims))

    def dilate(self, mask):
        """
        Dilate the boolean `mask` with the ball of the configured diameter,
        clipped to the grid bounds.
        """

        mask = np.asarray(mask, dtype=bool)
        if self._diameter == 1 or not np.any(mask):
            return mask.copy()

        return ndimage.binary_dilation(mask, structure=self.get_ball(self._diameter))

def dilate(mask, diameter=11):
    return ROI_Finder(diameter=diameter).dilate(mask)
