from ..sparse.Coordinate_Pyramid import Coordinate_Pyramid
from ..sparse.Sparse_Tensor import Sparse_Tensor
from .Gather_Scatter_Convolution import Gather_Scatter_Convolution

class Strided_Convolution(Gather_Scatter_Convolution):
    """
    Convolution from a pyramid level to a coarser level, with window offsets
    `[0, kernel)` per axis.
    """

    pass

def strided_conv(st, params, stride=None):
    """
    Apply the `Conv_Params` object `params` to the sparse tensor `st` with
    a strided convolution. The output lives at `stride` times the input tensor
    stride, where `stride` defaults to the kernel size, and its coordinates
    are registered in the pyramid.
    """

    if params.depthwise:
        raise ValueError("Strided convolution requires full weight matrices")

    stride = Coordinate_Pyramid._normalize_stride(params.kernel if stride is None else stride)
    kernel_map = st.pyramid.get_strided_map(st.stride, params.kernel, stride)
    out_stride = tuple(s * f for s, f in zip(st.stride, stride))

    feats = Strided_Convolution.apply(st.feats, params.weights, params.bias,
                                      kernel_map=kernel_map)
    return Sparse_Tensor.from_level(st.pyramid, out_stride, feats)
