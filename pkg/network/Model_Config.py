class Model_Config(object):
    """
    Architecture configuration of the sparse U-Net.

    Heads sit at the finest decoder stages: head `i` predicts at tensor
    stride `2^i`. With one stage there is no decoder and the only head sits
    on the encoder output.
    """

    FIELDS = (
        "in_channels", "stage_widths", "stage_depths",
        "decoder_blocks_per_stage", "conv_kernel", "down_kernel",
        "down_stride", "num_classes", "mlp_expansion", "num_heads",
        "ds_heads", "head_kernel", "stem_bias", "head_bias", "init_std",
        "norm_eps"
    )

    def __init__(self, in_channels=1, stage_widths=(16, 32, 64, 128, 256, 512),
                 stage_depths=(2, 4, 4, 8, 8, 8), decoder_blocks_per_stage=2,
                 conv_kernel=3, down_kernel=2, down_stride=2, num_classes=3,
                 mlp_expansion=4, num_heads=0, ds_heads=4, head_kernel=1,
                 stem_bias=False, head_bias=False, init_std=0.02,
                 norm_eps=1e-6):
        self.in_channels = int(in_channels)
        self.stage_widths = tuple(int(width) for width in stage_widths)
        self.stage_depths = tuple(int(depth) for depth in stage_depths)
        self.decoder_blocks_per_stage = int(decoder_blocks_per_stage)
        self.conv_kernel = int(conv_kernel)
        self.down_kernel = int(down_kernel)
        self.down_stride = int(down_stride)
        self.num_classes = int(num_classes)
        self.mlp_expansion = int(mlp_expansion)
        self.num_heads = int(num_heads)
        self.ds_heads = int(ds_heads)
        self.head_kernel = int(head_kernel)
        self.stem_bias = bool(stem_bias)
        self.head_bias = bool(head_bias)
        self.init_std = float(init_std)
        self.norm_eps = float(norm_eps)

        self._validate()

    def _validate(self):
        if not self.stage_widths:
            raise ValueError("At least one stage is required")
        if len(self.stage_widths) != len(self.stage_depths):
            raise ValueError("Stage widths {} and depths {} must have the same length".format(self.stage_widths, self.stage_depths))
        if any(width < 1 for width in self.stage_widths):
            raise ValueError("Stage widths must be positive")
        if any(depth < 0 for depth in self.stage_depths):
            raise ValueError("Stage depths must not be negative")
        if self.in_channels < 1 or self.mlp_expansion < 1:
            raise ValueError("Input channels and expansion must be positive")
        if self.num_classes != 3:
            raise ValueError("The segmentation pipeline requires 3 classes, not {}".format(self.num_classes))
        if self.conv_kernel % 2 == 0 or self.head_kernel % 2 == 0:
            raise ValueError("Block and head kernels must be odd")
        if self.down_kernel < 1 or self.down_stride < 1:
            raise ValueError("Downsampling kernel and stride must be positive")
        if self.num_heads < 0 or self.ds_heads < 1:
            raise ValueError("Head counts must be positive")
        if self.decoder_blocks_per_stage < 0:
            raise ValueError("Decoder blocks per stage must not be negative")

    @classmethod
    def from_settings(cls, settings):
        """
        Create the configuration from the "network" settings component.
        """

        return cls.from_dict(settings.as_dict())

    @classmethod
    def from_dict(cls, data):
        unknown = set(data.keys()) - set(cls.FIELDS)
        if unknown:
            raise KeyError("Unknown model configuration fields: {}".format(', '.join(sorted(unknown))))

        return cls(**data)

    def as_dict(self):
        data = {}
        for field in self.FIELDS:
            value = getattr(self, field)
            data[field] = list(value) if isinstance(value, tuple) else value

        return data

    def replace(self, **changes):
        data = self.as_dict()
        data.update(changes)
        return Model_Config.from_dict(data)

    @property
    def num_stages(self):
        return len(self.stage_widths)

    @property
    def head_levels(self):
        """
        Retrieve the pyramid levels with a classification head, finest first.
        """

        available = max(self.num_stages - 1, 1)
        count = available if self.num_heads == 0 else min(self.num_heads, available)
        return list(range(count))

    @property
    def loss_heads(self):
        """
        Retrieve the number of heads that enter the deep-supervised loss.
        """

        return min(self.ds_heads, len(self.head_levels))

    def count_block_params(self, channels):
        """
        Count the parameters of one ConvNeXtV2 block of width `channels`.
        """

        expanded = channels * self.mlp_expansion
        depthwise = self.conv_kernel ** 3 * channels + channels
        expand = channels * expanded + expanded
        project = expanded * channels + channels
        return depthwise + 2 * channels + expand + 2 * expanded + project

    def count_params(self):
        """
        Count the independent scalar parameters of the network this
        configuration describes, without building it.
        """

        widths = self.stage_widths
        down_volume = self.down_kernel ** 3
        head_volume = self.head_kernel ** 3

        total = self.in_channels * widths[0] + (widths[0] if self.stem_bias else 0)
        total += 2 * widths[0]
        for stage, (width, depth) in enumerate(zip(widths, self.stage_depths)):
            if stage > 0:
                total += 2 * widths[stage - 1] + down_volume * widths[stage - 1] * width + width

            total += depth * self.count_block_params(width)

        for level in range(self.num_stages - 1):
            total += 2 * widths[level + 1] + down_volume * widths[level + 1] * widths[level] + widths[level]
            total += self.decoder_blocks_per_stage * self.count_block_params(widths[level])

        for level in self.head_levels:
            total += 2 * widths[level] + self.count_block_params(widths[level])
            total += head_volume * widths[level] * self.num_classes
            if self.head_bias:
                total += self.num_classes

        return total

    def __eq__(self, other):
        if not isinstance(other, Model_Config):
            return NotImplemented

        return self.as_dict() == other.as_dict()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result

        return not result

    __hash__ = None

    def __repr__(self):
        return "Model_Config({})".format(', '.join("{}={!r}".format(field, getattr(self, field)) for field in self.FIELDS))
