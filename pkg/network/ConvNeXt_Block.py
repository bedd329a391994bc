from ..nn.Addition import add
from ..nn.Conv_Params import Conv_Params
from ..nn.Depthwise_Convolution import depthwise_conv
from ..nn.Gelu import gelu
from ..nn.Global_Response_Norm import grn
from ..nn.Layer_Norm import layer_norm
from ..nn.Norm_Params import Norm_Params
from ..nn.Pointwise_Linear import pointwise_linear

class ConvNeXt_Block(object):
    """
    ConvNeXtV2 block: depthwise convolution, layer normalization, pointwise
    expansion, GELU, global response normalization, pointwise projection and
    a residual sum.
    """

    def __init__(self, channels, config, rng, name="block"):
        kernel = config.conv_kernel
        expanded = channels * config.mlp_expansion
        std = config.init_std

        self.name = name
        self.depthwise = Conv_Params.initialize(channels, channels, kernel, True,
                                                rng, std=std, depthwise=True,
                                                name="{}.depthwise".format(name))
        self.norm = Norm_Params.initialize(channels, eps=config.norm_eps,
                                           name="{}.norm".format(name))
        self.expand = Conv_Params.initialize(channels, expanded, 1, True, rng,
                                             std=std,
                                             name="{}.expand".format(name))
        self.grn = Norm_Params.initialize(expanded, eps=config.norm_eps,
                                          scale=0.0,
                                          name="{}.grn".format(name))
        self.project = Conv_Params.initialize(expanded, channels, 1, True, rng,
                                              std=std,
                                              name="{}.project".format(name))

    def parameters(self):
        return self.depthwise.parameters() + self.norm.parameters() + \
            self.expand.parameters() + self.grn.parameters() + \
            self.project.parameters()

    def forward(self, st):
        x = depthwise_conv(st, self.depthwise)
        x = layer_norm(x, self.norm)
        x = pointwise_linear(x, self.expand)
        x = gelu(x)
        x = grn(x, self.grn)
        x = pointwise_linear(x, self.project)
        return add(st, x)
