import threading
import numpy as np
from .Hash_Index import Hash_Index
from .Kernel_Map import Kernel_Map

class PyramidLevelError(KeyError):
    pass

class Coordinate_Pyramid(object):
    """
    Registry of coordinate sets per tensor stride.

    Coarser levels are derived from finer ones with `downsample_coords`, so
    decoder tensors reuse exactly the coordinates and row order of the encoder
    tensors at the same stride. Kernel maps are cached per level and kernel.

    Registration is single-writer; lookups and cached maps are read-only.
    """

    def __init__(self):
        self._levels = {}
        self._maps = {}
        self._lock = threading.Lock()

    @staticmethod
    def _normalize_stride(stride):
        if np.isscalar(stride):
            stride = (stride,) * 3

        stride = tuple(int(value) for value in stride)
        if len(stride) != 3 or any(value < 1 for value in stride):
            raise ValueError("Stride must be three positive integers, not {}".format(stride))

        return stride

    @staticmethod
    def downsample_coords(coords, stride_in, factor):
        """
        Quantize `(batch, x, y, z)` rows `coords` at tensor stride `stride_in`
        to the cells of stride `stride_in * factor`.

        Returns the unique cell corners in canonical order.
        """

        stride_in = Coordinate_Pyramid._normalize_stride(stride_in)
        factor = Coordinate_Pyramid._normalize_stride(factor)
        cell = np.array(stride_in, dtype=np.int64) * np.array(factor, dtype=np.int64)

        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 4).copy()
        coords[:, 1:] = np.floor_divide(coords[:, 1:], cell) * cell
        return Hash_Index.canonical(coords)

    def register(self, coords, stride=(1, 1, 1)):
        """
        Register the coordinate set `coords` at `stride`.

        Registering a stride again is only allowed with the same coordinates.
        Returns the pyramid itself, which acts as the key of the levels.
        """

        stride = self._normalize_stride(stride)
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 4)
        if np.any(coords[:, 1:] % np.array(stride) != 0):
            raise ValueError("Coordinates are not divisible by stride {}".format(stride))

        with self._lock:
            if stride in self._levels:
                if not np.array_equal(self._levels[stride].coords, coords):
                    raise ValueError("Stride {} is already registered with other coordinates".format(stride))
            else:
                self._levels[stride] = Hash_Index(coords)

        return self

    def downsample(self, stride_in, factor):
        """
        Register the level at `stride_in * factor` derived from the level at
        `stride_in`, if it does not yet exist, and return its stride.
        """

        stride_in = self._normalize_stride(stride_in)
        factor = self._normalize_stride(factor)
        stride_out = tuple(s * f for s, f in zip(stride_in, factor))
        if stride_out not in self._levels:
            coords = self.downsample_coords(self.lookup(stride_in), stride_in, factor)
            self.register(coords, stride_out)

        return stride_out

    def has_level(self, stride):
        return self._normalize_stride(stride) in self._levels

    def strides(self):
        return sorted(self._levels.keys())

    def get_index(self, stride):
        stride = self._normalize_stride(stride)
        try:
            return self._levels[stride]
        except KeyError:
            raise PyramidLevelError("Stride {} is not registered in the pyramid".format(stride))

    def lookup(self, stride):
        """
        Retrieve the coordinates registered at `stride`, in their stable row
        order.
        """

        return self.get_index(stride).coords

    def get_submanifold_map(self, stride, kernel):
        stride = self._normalize_stride(stride)
        kernel = self._normalize_stride(kernel)
        key = ("submanifold", stride, kernel)
        if key not in self._maps:
            index = self.get_index(stride)
            kernel_map = Kernel_Map.build_submanifold_map(index, stride, kernel)
            with self._lock:
                self._maps.setdefault(key, kernel_map)

        return self._maps[key]

    def get_strided_map(self, stride_in, kernel, stride):
        """
        Retrieve the map from level `stride_in` to the level at
        `stride_in * stride`, which is registered when necessary.
        """

        stride_in = self._normalize_stride(stride_in)
        kernel = self._normalize_stride(kernel)
        stride = self._normalize_stride(stride)
        stride_out = self.downsample(stride_in, stride)
        key = ("strided", stride_in, kernel, stride)
        if key not in self._maps:
            kernel_map = Kernel_Map.build_strided_map(self.get_index(stride_in),
                                                      self.get_index(stride_out),
                                                      stride_in, kernel, stride)
            with self._lock:
                self._maps.setdefault(key, kernel_map)

        return self._maps[key]

    def clear_maps(self):
        """
        Discard all cached kernel maps.
        """

        with self._lock:
            self._maps = {}
