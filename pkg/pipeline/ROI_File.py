import json
import numpy as np
from .Component_ROI import Component_ROI

class ROI_File(object):
    """
    Reader and writer of `<case>.roi.json` files with the retained Stage 1
    components of a case.

    Component voxels are stored as runs `[start, length]` of linear indices
    in which x varies fastest.
    """

    @staticmethod
    def encode_runs(indices):
        indices = np.unique(np.asarray(indices, dtype=np.int64))
        if indices.size == 0:
            return []

        breaks = np.nonzero(np.diff(indices) != 1)[0] + 1
        starts = np.concatenate([[0], breaks])
        stops = np.concatenate([breaks, [indices.size]])
        return [[int(indices[start]), int(stop - start)] for start, stop in zip(starts, stops)]

    @staticmethod
    def decode_runs(runs):
        if not runs:
            return np.empty(0, dtype=np.int64)

        return np.concatenate([np.arange(start, start + length, dtype=np.int64)
                               for start, length in runs])

    @classmethod
    def store_rois(cls, path, components, spacing, dims):
        """
        Write the `components` on a low resolution grid with `spacing` and
        dimensions `dims` to the file `path`.
        """

        dims = tuple(int(size) for size in dims)
        if np.isscalar(spacing):
            spacing = (spacing,) * 3

        data = {
            "spacing_mm": [float(value) for value in spacing],
            "grid_dims": list(dims),
            "components": []
        }
        for component in components:
            voxels = component.voxels
            indices = voxels[:, 0] + dims[0] * (voxels[:, 1] + dims[1] * voxels[:, 2])
            data["components"].append({
                "id": component.id,
                "size": component.size,
                "bbox_lo": list(component.bbox_lo),
                "bbox_hi": list(component.bbox_hi),
                "voxels_rle": cls.encode_runs(indices)
            })

        with open(path, 'w') as roi_file:
            json.dump(data, roi_file, indent=2)

    @classmethod
    def load_rois(cls, path):
        """
        Read the file `path`.

        Returns the components, the spacing and the grid dimensions.
        """

        try:
            with open(path) as roi_file:
                data = json.load(roi_file)

            spacing = tuple(float(value) for value in data["spacing_mm"])
            dims = tuple(int(size) for size in data["grid_dims"])
            entries = data["components"]
        except (ValueError, KeyError, TypeError) as error:
            raise IOError("ROI file '{}' is corrupt: {}".format(path, error))

        components = []
        for entry in entries:
            indices = cls.decode_runs(entry["voxels_rle"])
            if indices.size != entry["size"]:
                raise IOError("Component {} in ROI file '{}' has {} voxels instead of {}".format(entry["id"], path, indices.size, entry["size"]))
            if np.any(indices < 0) or np.any(indices >= np.prod(dims)):
                raise IOError("Component {} in ROI file '{}' lies outside the grid".format(entry["id"], path))

            x = indices % dims[0]
            y = (indices // dims[0]) % dims[1]
            z = indices // (dims[0] * dims[1])
            components.append(Component_ROI(entry["id"], np.stack([x, y, z], axis=1)))

        return components, spacing, dims
