import numpy as np
from scipy import ndimage

class Component_ROI(object):
    """
    A connected region of interest on the low resolution grid.

    The voxels are `(M, 3)` low resolution indices in lexicographic order.
    Bounding boxes are given as inclusive lower and exclusive upper corners.
    After lifting, the component also holds the mask of its high resolution
    voxels cropped to their bounding box.
    """

    def __init__(self, component_id, voxels, high_offset=None, high_mask=None):
        voxels = np.asarray(voxels, dtype=np.int64).reshape(-1, 3)
        if voxels.shape[0] == 0:
            raise ValueError("A component must contain at least one voxel")

        order = np.lexsort((voxels[:, 2], voxels[:, 1], voxels[:, 0]))
        self._id = int(component_id)
        self._voxels = voxels[order]
        self._voxels.flags.writeable = False

        if (high_offset is None) != (high_mask is None):
            raise ValueError("The high resolution offset and mask must be given together")

        self._high_offset = None
        self._high_mask = None
        if high_mask is not None:
            self._high_offset = tuple(int(value) for value in high_offset)
            self._high_mask = np.asarray(high_mask, dtype=bool)
            self._high_mask.flags.writeable = False

    @property
    def id(self):
        return self._id

    @property
    def voxels(self):
        return self._voxels

    @property
    def size(self):
        return self._voxels.shape[0]

    @property
    def bbox_lo(self):
        return tuple(int(value) for value in self._voxels.min(axis=0))

    @property
    def bbox_hi(self):
        return tuple(int(value) + 1 for value in self._voxels.max(axis=0))

    @property
    def min_voxel(self):
        return tuple(int(value) for value in self._voxels[0])

    @property
    def is_lifted(self):
        return self._high_mask is not None

    @property
    def high_offset(self):
        return self._high_offset

    @property
    def high_mask(self):
        return self._high_mask

    @property
    def high_bbox_lo(self):
        return self._high_offset

    @property
    def high_bbox_hi(self):
        if self._high_mask is None:
            return None

        return tuple(o + s for o, s in zip(self._high_offset, self._high_mask.shape))

    @property
    def high_size(self):
        return 0 if self._high_mask is None else int(self._high_mask.sum())

    def get_mask(self, dims):
        """
        Retrieve the low resolution voxels as a dense boolean array of
        dimensions `dims`.
        """

        mask = np.zeros(tuple(dims), dtype=bool)
        mask[self._voxels[:, 0], self._voxels[:, 1], self._voxels[:, 2]] = True
        return mask

    def get_high_coords(self):
        """
        Retrieve the global high resolution indices of the lifted voxels.
        """

        if self._high_mask is None:
            raise RuntimeError("Component {} has not been lifted".format(self._id))

        return np.argwhere(self._high_mask) + np.array(self._high_offset)

    def with_id(self, component_id):
        return Component_ROI(component_id, self._voxels, self._high_offset,
                             self._high_mask)

    def __repr__(self):
        return "Component_ROI(id={}, size={}, bbox=({}, {}))".format(self._id, self.size, self.bbox_lo, self.bbox_hi)

def get_structure(connectivity):
    """
    Retrieve the 3D adjacency structure for 6 or 26 connectivity.
    """

    if connectivity == 6:
        return ndimage.generate_binary_structure(3, 1)
    if connectivity == 26:
        return ndimage.generate_binary_structure(3, 3)

    raise ValueError("Connectivity must be 6 or 26, not {}".format(connectivity))

def connected_components(mask, connectivity=26):
    """
    Partition the active voxels of the boolean `mask` into maximal connected
    components.

    The components are ordered by decreasing size and then by their
    lexicographically smallest voxel, and numbered in that order.
    """

    mask = np.asarray(mask, dtype=bool)
    labeled, count = ndimage.label(mask, structure=get_structure(connectivity))
    if count == 0:
        return []

    positions = np.argwhere(labeled > 0)
    numbers = labeled[positions[:, 0], positions[:, 1], positions[:, 2]]
    order = np.argsort(numbers, kind='stable')
    positions = positions[order]
    boundaries = np.cumsum(np.bincount(numbers, minlength=count + 1)[1:])[:-1]

    components = [Component_ROI(0, voxels) for voxels in np.split(positions, boundaries)]
    components.sort(key=lambda component: (-component.size, component.min_voxel))
    return [component.with_id(number) for number, component in enumerate(components)]

def filter_components(components, min_size=50):
    """
    Remove the components with fewer than `min_size` voxels.
    """

    return [component for component in components if component.size >= min_size]

def lift_to_highres(component, low_grid, high_grid):
    """
    Map the low resolution `component` onto the voxels of `high_grid`.

    Both grids are `Voxel_Grid` objects (or objects with `dims`, `spacing` and
    `origin`) in the same physical frame. A high resolution voxel belongs to
    the lifted mask when its center lies in the physical cell of a component
    voxel.
    """

    lo = np.array(component.bbox_lo)
    hi = np.array(component.bbox_hi)
    local = np.zeros(tuple(hi - lo), dtype=bool)
    voxels = component.voxels - lo
    local[voxels[:, 0], voxels[:, 1], voxels[:, 2]] = True

    slices = []
    maps = []
    for axis in range(3):
        centers = high_grid.origin[axis] + \
            (np.arange(high_grid.dims[axis]) + 0.5) * high_grid.spacing[axis]
        cells = np.floor((centers - low_grid.origin[axis]) / low_grid.spacing[axis]).astype(np.int64)
        inside = np.nonzero((cells >= lo[axis]) & (cells < hi[axis]))[0]
        if inside.size == 0:
            raise ValueError("Component {} lies outside the high resolution grid".format(component.id))

        slices.append((int(inside[0]), int(inside[-1]) + 1))
        maps.append(cells[inside[0]:inside[-1] + 1] - lo[axis])

    high_mask = local[np.ix_(maps[0], maps[1], maps[2])]
    if not np.any(high_mask):
        raise ValueError("Component {} lies outside the high resolution grid".format(component.id))

    # Crop to the tight bounds of the lifted voxels.
    positions = np.argwhere(high_mask)
    start = positions.min(axis=0)
    stop = positions.max(axis=0) + 1
    high_mask = high_mask[start[0]:stop[0], start[1]:stop[1], start[2]:stop[2]]
    offset = tuple(int(s[0] + o) for s, o in zip(slices, start))
    return Component_ROI(component.id, component.voxels, offset, high_mask)
