import numpy as np
from ..nn.Addition import add
from ..nn.Conv_Params import Conv_Params
from ..nn.Layer_Norm import layer_norm
from ..nn.Norm_Params import Norm_Params
from ..nn.Pointwise_Linear import pointwise_linear
from ..nn.Sigmoid import sigmoid
from ..nn.Strided_Convolution import strided_conv
from ..nn.Submanifold_Convolution import subm_conv
from ..nn.Transposed_Convolution import transposed_conv
from .ConvNeXt_Block import ConvNeXt_Block
from .Model_Config import Model_Config

class Head(object):
    """
    Classification head: layer normalization, a ConvNeXtV2 block and a final
    convolution to the class channels, followed by a sigmoid.
    """

    def __init__(self, channels, config, rng, name="head"):
        self.norm = Norm_Params.initialize(channels, eps=config.norm_eps,
                                           name="{}.norm".format(name))
        self.block = ConvNeXt_Block(channels, config, rng,
                                    name="{}.block".format(name))
        self.classifier = Conv_Params.initialize(channels, config.num_classes,
                                                 config.head_kernel,
                                                 config.head_bias, rng,
                                                 std=config.init_std,
                                                 name="{}.classifier".format(name))

    def parameters(self):
        return self.norm.parameters() + self.block.parameters() + \
            self.classifier.parameters()

    def forward(self, st):
        x = layer_norm(st, self.norm)
        x = self.block.forward(x)
        if self.classifier.kernel == (1, 1, 1):
            x = pointwise_linear(x, self.classifier)
        else:
            x = subm_conv(x, self.classifier)

        return sigmoid(x)

class Sparse_UNet(object):
    """
    Sparse ConvNeXtV2 U-Net.

    The stem is a pointwise convolution followed by layer normalization. Each
    encoder stage holds ConvNeXtV2 blocks, and consecutive stages are joined
    by layer normalization and a strided convolution. The decoder mirrors the
    encoder with layer normalization and a transposed convolution per stage,
    adds the encoder tensor at the same stride and applies ConvNeXtV2 blocks.
    """

    def __init__(self, config, seed=0, dtype=np.float32):
        if not isinstance(config, Model_Config):
            raise TypeError("'config' must be a Model_Config object")

        self._config = config
        self._seed = seed
        rng = np.random.RandomState(seed)
        widths = config.stage_widths
        std = config.init_std
        eps = config.norm_eps

        self.stem = Conv_Params.initialize(config.in_channels, widths[0], 1,
                                           config.stem_bias, rng, std=std,
                                           name="stem.conv", dtype=dtype)
        self.stem_norm = Norm_Params.initialize(widths[0], eps=eps,
                                                name="stem.norm", dtype=dtype)

        self.encoder = []
        self.downsamples = []
        for stage, (width, depth) in enumerate(zip(widths, config.stage_depths)):
            if stage > 0:
                name = "encoder.{}.down".format(stage)
                self.downsamples.append((
                    Norm_Params.initialize(widths[stage - 1], eps=eps,
                                           name="{}.norm".format(name),
                                           dtype=dtype),
                    Conv_Params.initialize(widths[stage - 1], width,
                                           config.down_kernel, True, rng,
                                           std=std, name="{}.conv".format(name),
                                           dtype=dtype)
                ))

            self.encoder.append([
                ConvNeXt_Block(width, config, rng,
                               name="encoder.{}.block.{}".format(stage, index))
                for index in range(depth)
            ])

        self.upsamples = {}
        self.decoder = {}
        for level in range(config.num_stages - 2, -1, -1):
            name = "decoder.{}.up".format(level)
            self.upsamples[level] = (
                Norm_Params.initialize(widths[level + 1], eps=eps,
                                       name="{}.norm".format(name),
                                       dtype=dtype),
                Conv_Params.initialize(widths[level + 1], widths[level],
                                       config.down_kernel, True, rng, std=std,
                                       name="{}.conv".format(name),
                                       dtype=dtype)
            )
            self.decoder[level] = [
                ConvNeXt_Block(widths[level], config, rng,
                               name="decoder.{}.block.{}".format(level, index))
                for index in range(config.decoder_blocks_per_stage)
            ]

        self.heads = {}
        for level in config.head_levels:
            self.heads[level] = Head(widths[level], config, rng,
                                     name="head.{}".format(level))

        if dtype != np.float32:
            for variable in self.parameters():
                variable.data = variable.data.astype(dtype)

    @property
    def config(self):
        return self._config

    @property
    def seed(self):
        return self._seed

    def named_parameters(self):
        """
        Retrieve the `(name, Variable)` pairs of all parameters in a fixed
        order.
        """

        variables = self.stem.parameters() + self.stem_norm.parameters()
        for stage, blocks in enumerate(self.encoder):
            if stage > 0:
                norm, conv = self.downsamples[stage - 1]
                variables += norm.parameters() + conv.parameters()

            for block in blocks:
                variables += block.parameters()

        for level in sorted(self.upsamples.keys(), reverse=True):
            norm, conv = self.upsamples[level]
            variables += norm.parameters() + conv.parameters()
            for block in self.decoder[level]:
                variables += block.parameters()

        for level in sorted(self.heads.keys()):
            variables += self.heads[level].parameters()

        return [(variable.name, variable) for variable in variables]

    def parameters(self):
        return [variable for _, variable in self.named_parameters()]

    def count_params(self):
        """
        Count the independent scalar parameters, including normalization
        affines and biases.
        """

        return int(sum(variable.size for variable in self.parameters()))

    def zero_grad(self):
        for variable in self.parameters():
            variable.zero_grad()

    def forward(self, st, num_heads=None):
        """
        Run the network on the stride one sparse tensor `st`.

        Returns the probabilities of the `num_heads` finest heads (by default
        the heads that enter the loss) as a list ordered fine to coarse: item
        `i` lives at tensor stride `2^i`, so item 0 is the full resolution
        prediction. This is the order `deep_supervised_loss` expects. Coarser
        heads that are not requested are not evaluated.
        """

        config = self._config
        if st.is_empty:
            raise RuntimeError("Cannot run the network on an empty tensor")
        if st.stride != (1, 1, 1):
            raise ValueError("Input tensor must have stride 1, not {}".format(st.stride))
        if st.channels != config.in_channels:
            raise ValueError("Input has {} channels, the network expects {}".format(st.channels, config.in_channels))

        if num_heads is None:
            num_heads = config.loss_heads

        levels = config.head_levels[:num_heads]

        x = pointwise_linear(st, self.stem)
        x = layer_norm(x, self.stem_norm)

        skips = []
        for stage, blocks in enumerate(self.encoder):
            if stage > 0:
                norm, conv = self.downsamples[stage - 1]
                x = layer_norm(x, norm)
                x = strided_conv(x, conv, stride=config.down_stride)

            for block in blocks:
                x = block.forward(x)

            skips.append(x)

        outputs = {}
        if config.num_stages == 1 and 0 in levels:
            outputs[0] = self.heads[0].forward(x)

        for level in range(config.num_stages - 2, -1, -1):
            norm, conv = self.upsamples[level]
            x = layer_norm(x, norm)
            x = transposed_conv(x, conv, stride=config.down_stride)
            x = add(x, skips[level])
            for block in self.decoder[level]:
                x = block.forward(x)

            if level in levels:
                outputs[level] = self.heads[level].forward(x)

        return [outputs[level] for level in levels]
