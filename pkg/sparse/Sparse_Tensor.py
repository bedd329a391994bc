import numpy as np
from ..nn.Variable import Variable
from .Coordinate_Pyramid import Coordinate_Pyramid
from .Hash_Index import Hash_Index

class Sparse_Tensor(object):
    """
    Active voxel coordinates with a feature matrix at a tensor stride.

    The coordinates are `(batch, x, y, z)` rows that are stored in the
    coordinate pyramid at the level of the tensor stride. The features are an
    `(N, C)` matrix in a `Variable`, one row per coordinate row.
    """

    def __init__(self, coords, feats, stride=(1, 1, 1), pyramid=None):
        if pyramid is None:
            pyramid = Coordinate_Pyramid()

        stride = Coordinate_Pyramid._normalize_stride(stride)
        if not (pyramid.has_level(stride) and pyramid.lookup(stride) is coords):
            pyramid.register(coords, stride)

        self._pyramid = pyramid
        self._stride = stride
        self._set_feats(feats)

    def _set_feats(self, feats):
        if not isinstance(feats, Variable):
            feats = Variable(feats)

        if feats.data.ndim != 2:
            raise ValueError("Features must be an (N, C) matrix, not shape {}".format(feats.shape))
        if feats.shape[0] != self.num_rows:
            raise ValueError("Feature rows {} do not match coordinate rows {}".format(feats.shape[0], self.num_rows))

        self._feats = feats

    @classmethod
    def from_level(cls, pyramid, stride, feats):
        """
        Create a tensor on an already registered pyramid level.
        """

        tensor = cls.__new__(cls)
        tensor._pyramid = pyramid
        tensor._stride = Coordinate_Pyramid._normalize_stride(stride)
        pyramid.get_index(tensor._stride)
        tensor._set_feats(feats)
        return tensor

    @classmethod
    def sparsify_dense(cls, values, active_mask, batch_index=0, window=None,
                       pyramid=None):
        """
        Create a tensor with one row per active voxel of `active_mask`.

        The `values` is a `Voxel_Grid` or a 3D array of the same dimensions
        as the mask. If a `window` object is given, then its `normalize`
        method maps the values to features; otherwise the values are used as
        is. Rows are in canonical order. An empty mask results in an empty
        tensor, which can be checked with `is_empty`.
        """

        if hasattr(values, "values"):
            values = values.values

        values = np.asarray(values)
        active_mask = np.asarray(active_mask, dtype=bool)
        if values.shape != active_mask.shape:
            raise ValueError("Mask dimensions {} do not match volume dimensions {}".format(active_mask.shape, values.shape))

        positions = np.nonzero(active_mask)
        coords = np.empty((positions[0].size, 4), dtype=np.int64)
        coords[:, 0] = batch_index
        for axis in range(3):
            coords[:, axis + 1] = positions[axis]

        order = np.argsort(Hash_Index.pack(coords), kind='stable')
        coords = coords[order]
        feats = values[positions][order].astype(np.float64)
        if window is not None:
            feats = window.normalize(feats)

        return cls(coords, feats.reshape(-1, 1), pyramid=pyramid)

    @classmethod
    def batch(cls, tensors):
        """
        Combine stride-1 single-item tensors into one tensor with batch
        indices in the order of `tensors`.
        """

        if not tensors:
            raise ValueError("At least one tensor is required")

        coords = []
        feats = []
        for batch_index, tensor in enumerate(tensors):
            if tensor.stride != (1, 1, 1):
                raise ValueError("Only stride 1 tensors can be batched")

            item_coords = tensor.coords.copy()
            item_coords[:, 0] = batch_index
            coords.append(item_coords)
            feats.append(tensor.values)

        coords = np.concatenate(coords)
        feats = np.concatenate(feats)
        order = np.argsort(Hash_Index.pack(coords), kind='stable')
        return cls(coords[order], feats[order])

    @property
    def coords(self):
        return self._pyramid.lookup(self._stride)

    @property
    def feats(self):
        return self._feats

    @property
    def values(self):
        return self._feats.data

    @property
    def stride(self):
        return self._stride

    @property
    def pyramid(self):
        return self._pyramid

    @property
    def num_rows(self):
        return len(self._pyramid.get_index(self._stride))

    @property
    def channels(self):
        return self._feats.shape[1]

    @property
    def is_empty(self):
        return self.num_rows == 0

    @property
    def batch_indices(self):
        return self.coords[:, 0]

    @property
    def batch_size(self):
        if self.is_empty:
            return 0

        return int(self.batch_indices.max()) + 1

    def with_feats(self, feats):
        """
        Create a tensor with the same coordinates and new `feats`.
        """

        return Sparse_Tensor.from_level(self._pyramid, self._stride, feats)

    def densify(self, dims, fill=0.0, batch_size=None):
        """
        Scatter the features into a dense `(B, X, Y, Z, C)` array.

        The `dims` are the dimensions of the grid at this tensor's stride, so
        a row with coordinate `c` is placed at `c / stride`. Voxels without a
        row receive the `fill` value.
        """

        dims = tuple(int(size) for size in dims)
        if batch_size is None:
            batch_size = max(self.batch_size, 1)

        dense = np.full((batch_size,) + dims + (self.channels,), fill,
                        dtype=self.values.dtype)
        if self.is_empty:
            return dense

        coords = self.coords
        indices = coords[:, 1:] // np.array(self._stride)
        if np.any(indices < 0) or np.any(indices >= np.array(dims)) or \
                np.any(coords[:, 0] >= batch_size):
            raise ValueError("Coordinates fall outside dimensions {} with batch size {}".format(dims, batch_size))

        dense[coords[:, 0], indices[:, 0], indices[:, 1], indices[:, 2]] = self.values
        return dense

    def get_mask(self, dims, batch_size=None):
        """
        Retrieve a dense `(B, X, Y, Z)` boolean array of the active voxels.
        """

        ones = Sparse_Tensor.from_level(self._pyramid, self._stride,
                                        np.ones((self.num_rows, 1), dtype=bool))
        return ones.densify(dims, fill=False, batch_size=batch_size)[..., 0]
