import math
import numpy as np
from scipy import ndimage
from .Voxel_Grid import Voxel_Grid

class Resampler(object):
    """
    Resampler of volumes to a new voxel spacing in physical coordinates.
    """

    MODES = {
        "trilinear": 1,
        "nearest": 0
    }

    def get_output_dims(self, dims, spacing, target_spacing):
        """
        Calculate the dimensions covering the same physical extent at the
        `target_spacing`, rounding half away from zero with a minimum of one.
        """

        return tuple(
            max(1, int(math.floor(size * current / target + 0.5)))
            for size, current, target in zip(dims, spacing, target_spacing)
        )

    def resample(self, grid, target_spacing, mode="trilinear"):
        """
        Resample the `Voxel_Grid` object `grid` to `target_spacing`, which is
        either one isotropic spacing or three spacings in millimeters.

        The `mode` is "trilinear" for intensities and "nearest" for labels.
        Samples outside the volume are clamped to the edge.
        """

        if mode not in self.MODES:
            raise ValueError("Unknown resampling mode '{}'".format(mode))
        if grid.is_label and mode != "nearest":
            raise ValueError("Label volumes must be resampled with nearest mode")

        if np.isscalar(target_spacing):
            target_spacing = (target_spacing,) * 3

        target_spacing = tuple(float(value) for value in target_spacing)
        if len(target_spacing) != 3 or any(value <= 0 for value in target_spacing):
            raise ValueError("Target spacing must be three positive values, not {}".format(target_spacing))

        dims = self.get_output_dims(grid.dims, grid.spacing, target_spacing)
        ratio = np.array(target_spacing) / np.array(grid.spacing)

        # Output voxel center i lies at input index (i + 0.5) * ratio - 0.5.
        # A unit ratio maps integer indices onto themselves exactly.
        output = ndimage.affine_transform(grid.values.astype(np.float64), ratio,
                                          offset=0.5 * ratio - 0.5,
                                          output_shape=dims,
                                          order=self.MODES[mode],
                                          mode='nearest')

        if grid.is_label:
            output = np.rint(output)

        return Voxel_Grid(output, target_spacing, grid.origin, kind=grid.kind)
