import numpy as np

class HU_Window(object):
    """
    A closed interval of Hounsfield units that selects the active voxels of
    an intensity grid and maps intensities to features in `[-1, 1]`.
    """

    def __init__(self, lo, hi):
        lo = float(lo)
        hi = float(hi)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ValueError("Window bounds must be finite")
        if lo >= hi:
            raise ValueError("Window lower bound {} must be below the upper bound {}".format(lo, hi))

        self._lo = lo
        self._hi = hi

    @classmethod
    def from_settings(cls, settings):
        return cls(settings.get("hu_lo"), settings.get("hu_hi"))

    @classmethod
    def compute_percentile_range(cls, values, lo_pct=0.5, hi_pct=99.5):
        """
        Create the window between the `lo_pct` and `hi_pct` percentiles of the
        intensity `values`, which may be an array or an iterable of arrays.

        Percentiles interpolate linearly between order statistics.
        """

        if not isinstance(values, np.ndarray):
            parts = [np.asarray(part, dtype=np.float64).ravel() for part in values]
            values = np.concatenate(parts) if parts else np.empty(0)

        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size == 0:
            raise ValueError("Cannot compute percentiles of an empty set of values")
        if not 0 <= lo_pct < hi_pct <= 100:
            raise ValueError("Percentiles ({}, {}) are invalid".format(lo_pct, hi_pct))

        lo, hi = np.percentile(values, [lo_pct, hi_pct])
        return cls(lo, hi)

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    def apply(self, grid):
        """
        Retrieve the boolean mask of the voxels of `grid`, a `Voxel_Grid` or
        an array, whose value lies inside the closed window.
        """

        values = np.asarray(getattr(grid, "values", grid))
        return (values >= self._lo) & (values <= self._hi)

    def normalize(self, values, clip=False):
        """
        Map intensities affinely from `[lo, hi]` to `[-1, 1]`, optionally
        clamping values outside the window.
        """

        values = np.asarray(values, dtype=np.float64)
        feats = 2.0 * (values - self._lo) / (self._hi - self._lo) - 1.0
        if clip:
            feats = np.clip(feats, -1.0, 1.0)

        return feats

    def denormalize(self, feats):
        feats = np.asarray(feats, dtype=np.float64)
        return (feats + 1.0) * (self._hi - self._lo) / 2.0 + self._lo

    def __eq__(self, other):
        if not isinstance(other, HU_Window):
            return NotImplemented

        return self._lo == other.lo and self._hi == other.hi

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result

        return not result

    __hash__ = None

    def __repr__(self):
        return "HU_Window(lo={!r}, hi={!r})".format(self._lo, self._hi)
