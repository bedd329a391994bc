import numpy as np

class Voxel_Grid(object):
    """
    A dense 3D scalar volume with physical voxel spacing.

    The values are indexed as `values[x, y, z]`. Intensity grids hold HU
    values in single precision, label grids hold label codes as unsigned bytes.
    Voxel index `i` maps to the physical position `origin + (i + 0.5) * spacing`
    in millimeters, i.e., the origin is the corner of the first voxel.

    Grids are immutable after construction.
    """

    KIND_HU = "hu"
    KIND_LABEL = "label"
    LABEL_CODES = (0, 1, 2, 3)

    def __init__(self, values, spacing, origin=(0.0, 0.0, 0.0), kind=KIND_HU):
        values = np.asarray(values)
        if values.ndim != 3:
            raise ValueError("Volume values must be three-dimensional, not {}-dimensional".format(values.ndim))
        if any(size <= 0 for size in values.shape):
            raise ValueError("Volume dimensions must be positive, not {}".format(values.shape))

        spacing = tuple(float(value) for value in spacing)
        origin = tuple(float(value) for value in origin)
        if len(spacing) != 3 or len(origin) != 3:
            raise ValueError("Spacing and origin must have three components")
        if any(value <= 0 for value in spacing):
            raise ValueError("Spacing must be positive, not {}".format(spacing))

        if kind == self.KIND_HU:
            values = np.array(values, dtype=np.float32)
        elif kind == self.KIND_LABEL:
            if values.dtype.kind == 'f' and not np.all(values == np.round(values)):
                raise ValueError("Label volumes must contain integer codes")

            invalid = np.setdiff1d(np.unique(values), self.LABEL_CODES)
            if invalid.size > 0:
                raise ValueError("Unexpected label values {}".format(invalid.tolist()))

            values = np.array(values, dtype=np.uint8)
        else:
            raise ValueError("Unknown volume kind '{}'".format(kind))

        values.flags.writeable = False

        self._values = values
        self._spacing = spacing
        self._origin = origin
        self._kind = kind

    @property
    def values(self):
        return self._values

    @property
    def dims(self):
        return self._values.shape

    @property
    def spacing(self):
        return self._spacing

    @property
    def origin(self):
        return self._origin

    @property
    def kind(self):
        return self._kind

    @property
    def is_label(self):
        return self._kind == self.KIND_LABEL

    @property
    def extent_mm(self):
        """
        Retrieve the physical size of the volume along each axis.
        """

        return tuple(size * spacing for size, spacing in zip(self.dims, self._spacing))

    def voxel_to_world(self, indices):
        """
        Convert (fractional) voxel indices of shape `(..., 3)` to physical
        positions of voxel centers in millimeters.
        """

        indices = np.asarray(indices, dtype=np.float64)
        return np.asarray(self._origin) + (indices + 0.5) * np.asarray(self._spacing)

    def world_to_voxel(self, positions):
        """
        Convert physical positions of shape `(..., 3)` to fractional voxel
        indices, such that voxel centers have integer indices.
        """

        positions = np.asarray(positions, dtype=np.float64)
        return (positions - np.asarray(self._origin)) / np.asarray(self._spacing) - 0.5

    def with_values(self, values, kind=None):
        """
        Create a new grid with the same geometry but different `values`.
        """

        values = np.asarray(values)
        if values.shape != self.dims:
            raise ValueError("Values of shape {} do not match volume dimensions {}".format(values.shape, self.dims))

        return Voxel_Grid(values, self._spacing, self._origin,
                          kind=self._kind if kind is None else kind)

    def __repr__(self):
        return "Voxel_Grid(dims={}, spacing={}, origin={}, kind={!r})".format(self.dims, self._spacing, self._origin, self._kind)
