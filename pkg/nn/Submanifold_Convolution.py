from .Gather_Scatter_Convolution import Gather_Scatter_Convolution

class Submanifold_Convolution(Gather_Scatter_Convolution):
    """
    Convolution that only produces outputs at the active input coordinates.
    """

    pass

def subm_conv(st, params, kernel_map=None):
    """
    Apply the `Conv_Params` object `params` to the sparse tensor `st` with
    a submanifold convolution. The kernel map is taken from the pyramid cache
    unless `kernel_map` is given.
    """

    if params.depthwise:
        raise ValueError("Submanifold convolution requires full weight matrices; use depthwise_conv")

    if kernel_map is None:
        kernel_map = st.pyramid.get_submanifold_map(st.stride, params.kernel)
    elif kernel_map.num_inputs != st.num_rows or kernel_map.num_outputs != st.num_rows:
        raise ValueError("Kernel map was not built for the coordinates of the tensor")

    feats = Submanifold_Convolution.apply(st.feats, params.weights, params.bias,
                                          kernel_map=kernel_map)
    return st.with_feats(feats)
