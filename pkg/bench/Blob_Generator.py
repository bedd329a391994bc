import math
import numpy as np

class Blob_Generator(object):
    """
    Generator of synthetic occupancy patterns made of random ellipsoids.

    Ellipsoids are added until the target occupancy is reached, after which
    surplus voxels of the last ellipsoid are removed, so the number of active
    voxels is exactly `floor(occupancy * size^3)`.
    """

    def __init__(self, min_radius=0.05, max_radius=0.2):
        if not 0 < min_radius <= max_radius:
            raise ValueError("Invalid ellipsoid radius range ({}, {})".format(min_radius, max_radius))

        self._min_radius = min_radius
        self._max_radius = max_radius

    def get_target(self, size, occupancy):
        if not 0.0 <= occupancy <= 1.0:
            raise ValueError("Occupancy must be in [0, 1], not {}".format(occupancy))

        return int(math.floor(occupancy * size ** 3))

    def generate(self, size, occupancy, rng):
        """
        Create a boolean `(size, size, size)` mask with the occupancy pattern
        drawn from the `RandomState` object `rng`.
        """

        target = self.get_target(size, occupancy)
        total = size ** 3
        if target == total:
            return np.ones((size,) * 3, dtype=bool)

        mask = np.zeros((size,) * 3, dtype=bool)
        count = 0
        grid = np.ogrid[0:size, 0:size, 0:size]
        while count < target:
            center = rng.uniform(0, size, size=3)
            radii = np.maximum(rng.uniform(self._min_radius, self._max_radius, size=3) * size, 0.5)
            distance = sum(((axis + 0.5 - c) / r) ** 2
                           for axis, c, r in zip(grid, center, radii))
            added = (distance <= 1.0) & ~mask
            new_count = int(added.sum())
            if new_count == 0:
                # Fill single free voxels when ellipsoids no longer hit any.
                free = np.flatnonzero(~mask)
                added = np.zeros(total, dtype=bool)
                added[rng.choice(free, size=min(target - count, free.size), replace=False)] = True
                added = added.reshape(mask.shape)
                new_count = int(added.sum())

            surplus = count + new_count - target
            if surplus > 0:
                positions = np.flatnonzero(added)
                drop = rng.choice(positions, size=surplus, replace=False)
                added = added.ravel()
                added[drop] = False
                added = added.reshape(mask.shape)

            mask |= added
            count = int(mask.sum())

        return mask
