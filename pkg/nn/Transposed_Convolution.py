from ..sparse.Coordinate_Pyramid import Coordinate_Pyramid
from ..sparse.Sparse_Tensor import Sparse_Tensor
from .Gather_Scatter_Convolution import Gather_Scatter_Convolution

class Transposed_Convolution(Gather_Scatter_Convolution):
    """
    Convolution from a pyramid level back to a registered finer level, using
    the pairs of the strided map with input and output roles swapped.
    """

    pass

def transposed_conv(st, params, stride=None, target=None):
    """
    Apply the `Conv_Params` object `params` to the sparse tensor `st` with
    a transposed convolution onto the finer pyramid level `target`.

    Either `stride` (the factor between the levels, defaulting to the kernel
    size) or the `target` stride is used to find the finer level, which must
    already be registered in the pyramid.
    """

    if params.depthwise:
        raise ValueError("Transposed convolution requires full weight matrices")

    if target is None:
        stride = Coordinate_Pyramid._normalize_stride(params.kernel if stride is None else stride)
        if any(s % f != 0 for s, f in zip(st.stride, stride)):
            raise ValueError("Tensor stride {} is not divisible by {}".format(st.stride, stride))

        target = tuple(s // f for s, f in zip(st.stride, stride))
    else:
        target = Coordinate_Pyramid._normalize_stride(target)
        stride = tuple(s // t for s, t in zip(st.stride, target))

    # Raises a pyramid level error when the finer level is missing.
    st.pyramid.get_index(target)
    kernel_map = st.pyramid.get_strided_map(target, params.kernel, stride)
    if kernel_map.num_outputs != st.num_rows:
        raise ValueError("Tensor rows do not match the pyramid level at stride {}".format(st.stride))

    feats = Transposed_Convolution.apply(st.feats, params.weights, params.bias,
                                         kernel_map=kernel_map.transpose())
    return Sparse_Tensor.from_level(st.pyramid, target, feats)
