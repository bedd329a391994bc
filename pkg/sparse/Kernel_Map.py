import itertools
import numpy as np

class Kernel_Map(object):
    """
    Per kernel offset lists of `(input row, output row)` pairs.

    A convolution over a kernel map gathers the input rows of each offset,
    multiplies them by the weights of that offset and scatters the result to
    the output rows. Within one offset, input rows and output rows are unique.
    """

    def __init__(self, offsets, in_rows, out_rows, num_inputs, num_outputs):
        if len(offsets) != len(in_rows) or len(offsets) != len(out_rows):
            raise ValueError("Every offset must have input and output rows")

        self._offsets = np.asarray(offsets, dtype=np.int64).reshape(-1, 3)
        self._in_rows = [np.asarray(rows, dtype=np.int64) for rows in in_rows]
        self._out_rows = [np.asarray(rows, dtype=np.int64) for rows in out_rows]
        self._num_inputs = num_inputs
        self._num_outputs = num_outputs

        for inputs, outputs in zip(self._in_rows, self._out_rows):
            if inputs.shape != outputs.shape:
                raise ValueError("Input and output rows must pair up")
            if inputs.size > 0:
                if inputs.min() < 0 or inputs.max() >= num_inputs:
                    raise ValueError("Input row out of range")
                if outputs.min() < 0 or outputs.max() >= num_outputs:
                    raise ValueError("Output row out of range")

    @staticmethod
    def get_submanifold_offsets(kernel):
        """
        Retrieve the offsets `{-r..r}` per axis of an odd `kernel` size.
        """

        if any(size % 2 == 0 or size < 1 for size in kernel):
            raise ValueError("Submanifold kernel sizes must be odd, not {}".format(tuple(kernel)))

        ranges = [range(-(size // 2), size // 2 + 1) for size in kernel]
        return np.array(list(itertools.product(*ranges)), dtype=np.int64)

    @staticmethod
    def get_window_offsets(kernel):
        """
        Retrieve the offsets `[0, kernel)` per axis of a strided window.
        """

        return np.array(list(itertools.product(*[range(size) for size in kernel])),
                        dtype=np.int64)

    @classmethod
    def build_submanifold_map(cls, index, stride, kernel):
        """
        Build the map of a submanifold convolution over the coordinates in the
        `Hash_Index` object `index`, which live at tensor `stride`.

        Row `i` pairs with row `j` for offset `o` when coordinate `j` equals
        coordinate `i` plus `o` times the stride, within the same batch item.
        The output coordinate set is the input set.
        """

        offsets = cls.get_submanifold_offsets(kernel)
        coords = index.coords
        stride = np.asarray(stride, dtype=np.int64)

        in_rows = []
        out_rows = []
        for offset in offsets:
            if not offset.any():
                rows = np.arange(len(index), dtype=np.int64)
                in_rows.append(rows)
                out_rows.append(rows)
                continue

            shifted = coords.copy()
            shifted[:, 1:] += offset * stride
            targets = index.lookup(shifted)
            found = np.nonzero(targets >= 0)[0]
            in_rows.append(found)
            out_rows.append(targets[found])

        return cls(offsets, in_rows, out_rows, len(index), len(index))

    @classmethod
    def build_strided_map(cls, in_index, out_index, in_stride, kernel, stride):
        """
        Build the map of a strided convolution from the coordinates in
        `in_index` at tensor stride `in_stride` to the coordinates in
        `out_index` at tensor stride `in_stride * stride`.

        Input row `i` pairs with output row `j` for window offset `k` when
        input coordinate `i` equals output coordinate `j` plus `k` times the
        input tensor stride.
        """

        in_stride = np.asarray(in_stride, dtype=np.int64)
        out_stride = in_stride * np.asarray(stride, dtype=np.int64)
        out_coords = out_index.coords
        if np.any(out_coords[:, 1:] % out_stride != 0):
            raise ValueError("Output coordinates are not aligned to stride {}".format(tuple(out_stride)))

        offsets = cls.get_window_offsets(kernel)
        in_rows = []
        out_rows = []
        for offset in offsets:
            shifted = out_coords.copy()
            shifted[:, 1:] += offset * in_stride
            sources = in_index.lookup(shifted)
            found = np.nonzero(sources >= 0)[0]
            in_rows.append(sources[found])
            out_rows.append(found)

        return cls(offsets, in_rows, out_rows, len(in_index), len(out_index))

    @property
    def offsets(self):
        return self._offsets

    @property
    def num_inputs(self):
        return self._num_inputs

    @property
    def num_outputs(self):
        return self._num_outputs

    def __len__(self):
        return len(self._offsets)

    def __iter__(self):
        """
        Iterate over the `(offset index, input rows, output rows)` triples
        of offsets that have at least one pair.
        """

        for k, (inputs, outputs) in enumerate(zip(self._in_rows, self._out_rows)):
            if inputs.size > 0:
                yield k, inputs, outputs

    def get_pairs(self, k):
        """
        Retrieve the input and output rows of the offset with index `k`.
        """

        return self._in_rows[k], self._out_rows[k]

    def pair_count(self):
        return sum(inputs.size for inputs in self._in_rows)

    def transpose(self):
        """
        Create the map with the roles of input and output rows swapped.
        """

        return Kernel_Map(self._offsets, self._out_rows, self._in_rows,
                          self._num_outputs, self._num_inputs)

    def get_contributor_counts(self):
        """
        Count the number of pairs that end up in every output row.
        """

        counts = np.zeros(self._num_outputs, dtype=np.int64)
        for _, _, outputs in self:
            counts[outputs] += 1

        return counts
