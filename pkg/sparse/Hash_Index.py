import numpy as np

class Hash_Index(object):
    """
    An exact index from integer coordinates `(batch, x, y, z)` to row numbers.

    Every coordinate is packed into a single 64-bit key holding the batch
    index in the highest bits, followed by z, y and x, each as a 16-bit
    offset value. Sorting keys therefore sorts rows in canonical
    `(batch, z, y, x)` order, and lookups are binary searches in the sorted
    keys, so there are no collisions to resolve.
    """

    BITS = 16
    OFFSET = 1 << (BITS - 1)
    MASK = (1 << BITS) - 1
    MAX_BATCH = (1 << (BITS - 1)) - 1

    @classmethod
    def pack(cls, coords):
        """
        Pack an `(N, 4)` array of `(batch, x, y, z)` rows into `N` keys.
        """

        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 4)
        if coords.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)

        batch = coords[:, 0]
        spatial = coords[:, 1:]
        if batch.min() < 0 or batch.max() > cls.MAX_BATCH:
            raise ValueError("Batch indices must be in [0, {}]".format(cls.MAX_BATCH))
        if spatial.min() < -cls.OFFSET or spatial.max() >= cls.OFFSET:
            raise ValueError("Coordinates must be in [{}, {})".format(-cls.OFFSET, cls.OFFSET))

        shifted = spatial + cls.OFFSET
        return (batch << (3 * cls.BITS)) | (shifted[:, 2] << (2 * cls.BITS)) | \
            (shifted[:, 1] << cls.BITS) | shifted[:, 0]

    @classmethod
    def unpack(cls, keys):
        """
        Convert keys back to an `(N, 4)` array of `(batch, x, y, z)` rows.
        """

        keys = np.asarray(keys, dtype=np.int64)
        coords = np.empty((keys.shape[0], 4), dtype=np.int64)
        coords[:, 0] = keys >> (3 * cls.BITS)
        coords[:, 3] = ((keys >> (2 * cls.BITS)) & cls.MASK) - cls.OFFSET
        coords[:, 2] = ((keys >> cls.BITS) & cls.MASK) - cls.OFFSET
        coords[:, 1] = (keys & cls.MASK) - cls.OFFSET
        return coords

    @classmethod
    def canonical(cls, coords):
        """
        Retrieve the unique rows of `coords` in canonical order.
        """

        return cls.unpack(np.unique(cls.pack(coords)))

    def __init__(self, coords):
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 4)
        keys = self.pack(coords)
        self._order = np.argsort(keys, kind='stable')
        self._sorted_keys = keys[self._order]
        if np.any(self._sorted_keys[1:] == self._sorted_keys[:-1]):
            raise ValueError("Coordinate rows must be unique")

        self._coords = coords
        self._coords.flags.writeable = False

    @property
    def coords(self):
        return self._coords

    def __len__(self):
        return self._coords.shape[0]

    def is_canonical(self):
        """
        Check whether the indexed rows are in canonical order.
        """

        return bool(np.all(self._order == np.arange(len(self._order))))

    def lookup(self, coords):
        """
        Find the rows of the `(M, 4)` coordinates `coords`.

        Returns an array of `M` row numbers, with -1 for coordinates that are
        not in the index. Coordinates outside the packable range are absent.
        """

        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 4)
        rows = np.full(coords.shape[0], -1, dtype=np.int64)
        if coords.shape[0] == 0 or len(self) == 0:
            return rows

        spatial = coords[:, 1:]
        packable = (coords[:, 0] >= 0) & (coords[:, 0] <= self.MAX_BATCH) & \
            np.all((spatial >= -self.OFFSET) & (spatial < self.OFFSET), axis=1)

        keys = self.pack(coords[packable])
        positions = np.searchsorted(self._sorted_keys, keys)
        positions = np.minimum(positions, len(self._sorted_keys) - 1)
        found = self._sorted_keys[positions] == keys

        packable_rows = np.full(keys.shape[0], -1, dtype=np.int64)
        packable_rows[found] = self._order[positions[found]]
        rows[packable] = packable_rows
        return rows
