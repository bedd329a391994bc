import numpy as np
from ..volume.Resampler import Resampler
from ..volume.Voxel_Grid import Voxel_Grid
from .Component_ROI import lift_to_highres
from .Training_Case import Training_Case

class Case_Builder(object):
    """
    Builder of Stage 1 and Stage 2 cases from full resolution volumes.
    """

    def __init__(self, window, low_spacing=1.99, high_spacing=None):
        self._window = window
        self._low_spacing = low_spacing
        self._high_spacing = high_spacing
        self._resampler = Resampler()

    @classmethod
    def from_settings(cls, settings, window):
        return cls(window, low_spacing=settings.get("low_spacing"),
                   high_spacing=settings.get("high_spacing"))

    @property
    def window(self):
        return self._window

    def resample_low(self, image, labels=None):
        """
        Resample the intensity grid `image`, and `labels` if given, to the
        low resolution spacing.
        """

        low_image = self._resampler.resample(image, self._low_spacing, mode="trilinear")
        low_labels = None
        if labels is not None:
            low_labels = self._resampler.resample(labels, self._low_spacing, mode="nearest")

        return low_image, low_labels

    def resample_high(self, image, labels=None):
        """
        Resample to the high resolution spacing, or keep the native spacing
        when none is configured.
        """

        if self._high_spacing is None:
            return image, labels

        high_image = self._resampler.resample(image, self._high_spacing, mode="trilinear")
        high_labels = None
        if labels is not None:
            high_labels = self._resampler.resample(labels, self._high_spacing, mode="nearest")

        return high_image, high_labels

    def build_stage1(self, name, image, labels=None):
        """
        Create the Stage 1 case of a scan, whose active voxels are the low
        resolution voxels inside the HU window.
        """

        low_image, low_labels = self.resample_low(image, labels)
        return Training_Case(name, low_image, self._window, labels=low_labels)

    def build_stage2(self, name, image, components, low_grid, labels=None):
        """
        Create one Stage 2 case per component in `components`, lifted from
        the low resolution `low_grid` onto the intensity grid `image`.

        Each case covers the bounding box of its lifted component with the
        lifted voxels as active set.
        """

        cases = []
        for component in components:
            if not component.is_lifted:
                component = lift_to_highres(component, low_grid, image)

            lo = component.high_bbox_lo
            hi = component.high_bbox_hi
            crop = tuple(slice(start, stop) for start, stop in zip(lo, hi))
            origin = np.array(image.origin) + np.array(lo) * np.array(image.spacing)

            crop_image = Voxel_Grid(image.values[crop], image.spacing, origin,
                                    kind=image.kind)
            crop_labels = None
            if labels is not None:
                crop_labels = Voxel_Grid(labels.values[crop], labels.spacing,
                                         origin, kind=labels.kind)

            cases.append(Training_Case("{}.{}".format(name, component.id),
                                       crop_image, self._window,
                                       labels=crop_labels,
                                       active=component.high_mask, clip=True,
                                       offset=lo))

        return cases
