import json
import os
import numpy as np
from .Voxel_Grid import Voxel_Grid

class Volume_File(object):
    """
    Reader and writer for raw volumes.

    A raw volume consists of a little-endian payload file `<name>.rvol` with
    the values in x-fastest order, and a JSON sidecar `<name>.rvol.json`
    describing the geometry and the value encoding.
    """

    EXTENSION = ".rvol"
    SIDECAR_EXTENSION = ".json"

    DTYPES = {
        "f32": np.dtype("<f4"),
        "u8": np.dtype("u1")
    }
    KIND_DTYPES = {
        Voxel_Grid.KIND_HU: "f32",
        Voxel_Grid.KIND_LABEL: "u8"
    }
    REQUIRED_FIELDS = ("dims", "spacing_mm", "origin_mm", "dtype", "kind", "order")

    @classmethod
    def get_paths(cls, path):
        """
        Retrieve the payload and sidecar file names for a volume `path`.
        """

        if not path.endswith(cls.EXTENSION):
            path = path + cls.EXTENSION

        return path, path + cls.SIDECAR_EXTENSION

    @classmethod
    def load_volume(cls, path):
        """
        Read a raw volume from `path` and return a `Voxel_Grid`.
        """

        payload_path, header_path = cls.get_paths(path)
        if not os.path.isfile(header_path):
            raise IOError("Volume header '{}' does not exist".format(header_path))
        if not os.path.isfile(payload_path):
            raise IOError("Volume payload '{}' does not exist".format(payload_path))

        with open(header_path) as header_file:
            try:
                header = json.load(header_file)
            except ValueError as e:
                raise IOError("Volume header '{}' is corrupt: {}".format(header_path, e))

        if not isinstance(header, dict):
            raise IOError("Volume header '{}' must contain an object".format(header_path))

        missing = [field for field in cls.REQUIRED_FIELDS if field not in header]
        if missing:
            raise IOError("Volume header '{}' is missing fields {}".format(header_path, ', '.join(missing)))

        if header["order"] != "x-fastest":
            raise IOError("Unsupported value order '{}' in '{}'".format(header["order"], header_path))
        if header["dtype"] not in cls.DTYPES:
            raise IOError("Unsupported dtype '{}' in '{}'".format(header["dtype"], header_path))

        dims = tuple(int(size) for size in header["dims"])
        if len(dims) != 3 or any(size <= 0 for size in dims):
            raise IOError("Invalid dimensions {} in '{}'".format(header["dims"], header_path))

        dtype = cls.DTYPES[header["dtype"]]
        with open(payload_path, "rb") as payload_file:
            payload = payload_file.read()

        expected = int(np.prod(dims)) * dtype.itemsize
        if len(payload) != expected:
            raise IOError("Size mismatch for '{}': header dimensions {} require {} bytes, payload has {}".format(payload_path, dims, expected, len(payload)))

        values = np.frombuffer(payload, dtype=dtype).reshape(dims, order='F')
        return Voxel_Grid(values, header["spacing_mm"], header["origin_mm"],
                          kind=header["kind"])

    @classmethod
    def store_volume(cls, grid, path):
        """
        Write the `Voxel_Grid` object `grid` to the raw volume `path`.
        """

        if not isinstance(grid, Voxel_Grid):
            raise TypeError("'grid' must be a Voxel_Grid object")

        payload_path, header_path = cls.get_paths(path)
        dtype_name = cls.KIND_DTYPES[grid.kind]
        dtype = cls.DTYPES[dtype_name]

        directory = os.path.dirname(payload_path)
        if directory and not os.path.isdir(directory):
            os.makedirs(directory)

        header = {
            "dims": list(grid.dims),
            "spacing_mm": list(grid.spacing),
            "origin_mm": list(grid.origin),
            "dtype": dtype_name,
            "kind": grid.kind,
            "order": "x-fastest"
        }

        with open(payload_path, "wb") as payload_file:
            payload_file.write(grid.values.astype(dtype).tobytes(order='F'))

        with open(header_path, "w") as header_file:
            json.dump(header, header_file, indent=4, sort_keys=True)
