import numpy as np
from ..sparse.Coordinate_Pyramid import Coordinate_Pyramid
from ..sparse.Sparse_Tensor import Sparse_Tensor
from .Operation import Operation

class Average_Pool(Operation):
    """
    Mean of the active voxels in every pooling cell.

    The divisor is the number of active contributors of the cell rather than
    the cell volume.
    """

    def __init__(self, kernel_map):
        self._kernel_map = kernel_map
        self._counts = kernel_map.get_contributor_counts()
        self._shape = None

    def forward(self, feats):
        self._shape = feats.shape
        output = np.zeros((self._kernel_map.num_outputs, feats.shape[1]),
                          dtype=np.result_type(feats, np.float32))
        for _, in_rows, out_rows in self._kernel_map:
            output[out_rows] += feats[in_rows]

        return output / self._counts[:, np.newaxis]

    def backward(self, grad):
        scaled = grad / self._counts[:, np.newaxis]
        feats_grad = np.zeros(self._shape, dtype=grad.dtype)
        for _, in_rows, out_rows in self._kernel_map:
            feats_grad[in_rows] += scaled[out_rows]

        return (feats_grad,)

def avg_pool(st, stride=2):
    stride = Coordinate_Pyramid._normalize_stride(stride)
    kernel_map = st.pyramid.get_strided_map(st.stride, stride, stride)
    out_stride = tuple(s * f for s, f in zip(st.stride, stride))

    feats = Average_Pool.apply(st.feats, kernel_map=kernel_map)
    return Sparse_Tensor.from_level(st.pyramid, out_stride, feats)
