import numpy as np
from scipy.special import expit
from ..nn.Dense_Convolution import Dense_Convolution
from ..nn.Gelu import Gelu
from ..nn.Global_Response_Norm import Global_Response_Norm
from ..nn.Layer_Norm import Layer_Norm

class Dense_UNet(object):
    """
    Dense evaluation of the parameters of a `Sparse_UNet` on full volumes.

    Inputs are `(B, X, Y, Z, C)` volumes with a `(B, X, Y, Z)` occupancy mask.
    Every layer output is multiplied by the occupancy mask of its level, where
    coarser masks are the occupancy of the pooling cells. On the active voxels
    the results equal those of the sparse network.
    """

    def __init__(self, model):
        self._model = model
        self._config = model.config

    @property
    def model(self):
        return self._model

    def _downsample_mask(self, mask):
        factor = self._config.down_stride
        ones = np.ones((self._config.down_kernel ** 3, 1, 1), dtype=np.float32)
        pooled = Dense_Convolution.strided(mask[..., np.newaxis].astype(np.float32),
                                           ones, (self._config.down_kernel,) * 3,
                                           (factor,) * 3)
        return pooled[..., 0] > 0

    @staticmethod
    def _rows(volume, operation, *params):
        shape = volume.shape
        output = operation.forward(volume.reshape(-1, shape[-1]), *params)
        return output.reshape(shape[:-1] + (output.shape[-1],))

    def _layer_norm(self, volume, mask, norm):
        output = self._rows(volume, Layer_Norm(eps=norm.eps),
                            norm.gamma.data, norm.beta.data)
        return output * mask[..., np.newaxis]

    def _grn(self, volume, mask, norm):
        batch_size = volume.shape[0]
        voxels = int(np.prod(volume.shape[1:4]))
        batch_indices = np.repeat(np.arange(batch_size), voxels)
        operation = Global_Response_Norm(batch_indices, batch_size, eps=norm.eps)
        output = self._rows(volume, operation, norm.gamma.data, norm.beta.data)
        return output * mask[..., np.newaxis]

    @staticmethod
    def _pointwise(volume, mask, params):
        weights = params.weights.data
        output = np.tensordot(volume, weights.reshape(weights.shape[-2], weights.shape[-1]),
                              axes=([4], [0]))
        if params.bias is not None:
            output = output + params.bias.data

        return output * mask[..., np.newaxis]

    def _block(self, volume, mask, block):
        x = Dense_Convolution.same(volume, block.depthwise.weights.data,
                                   block.depthwise.kernel,
                                   bias=block.depthwise.bias.data)
        x = x * mask[..., np.newaxis]
        x = self._layer_norm(x, mask, block.norm)
        x = self._pointwise(x, mask, block.expand)
        x = Gelu().forward(x)
        x = self._grn(x, mask, block.grn)
        x = self._pointwise(x, mask, block.project)
        return volume + x

    def _head(self, volume, mask, head):
        x = self._layer_norm(volume, mask, head.norm)
        x = self._block(x, mask, head.block)
        classifier = head.classifier
        if classifier.kernel == (1, 1, 1):
            x = self._pointwise(x, mask, classifier)
        else:
            bias = None if classifier.bias is None else classifier.bias.data
            x = Dense_Convolution.same(x, classifier.weights.data,
                                       classifier.kernel, bias=bias)

        return expit(x) * mask[..., np.newaxis]

    def get_level_masks(self, mask):
        """
        Retrieve the occupancy masks of all encoder levels, finest first.
        """

        masks = [np.asarray(mask, dtype=bool)]
        for _ in range(1, self._config.num_stages):
            masks.append(self._downsample_mask(masks[-1]))

        return masks

    def forward(self, volume, mask, num_heads=None):
        """
        Run the network on the dense `volume` with occupancy `mask`.

        Returns the dense head probabilities of the `num_heads` finest heads,
        finest first, each zero outside the occupancy of its level.
        """

        config = self._config
        model = self._model
        if num_heads is None:
            num_heads = config.loss_heads

        levels = config.head_levels[:num_heads]
        masks = self.get_level_masks(mask)
        stride = (config.down_stride,) * 3
        kernel = (config.down_kernel,) * 3

        x = self._pointwise(volume, masks[0], model.stem)
        x = self._layer_norm(x, masks[0], model.stem_norm)

        skips = []
        for stage, blocks in enumerate(model.encoder):
            if stage > 0:
                norm, conv = model.downsamples[stage - 1]
                x = self._layer_norm(x, masks[stage - 1], norm)
                x = Dense_Convolution.strided(x, conv.weights.data, kernel,
                                              stride, bias=conv.bias.data)
                x = x * masks[stage][..., np.newaxis]

            for block in blocks:
                x = self._block(x, masks[stage], block)

            skips.append(x)

        outputs = {}
        if config.num_stages == 1 and 0 in levels:
            outputs[0] = self._head(x, masks[0], model.heads[0])

        for level in range(config.num_stages - 2, -1, -1):
            norm, conv = model.upsamples[level]
            x = self._layer_norm(x, masks[level + 1], norm)
            x = Dense_Convolution.transposed(x, conv.weights.data, kernel,
                                             stride, masks[level].shape[1:],
                                             bias=conv.bias.data)
            x = x * masks[level][..., np.newaxis]
            x = x + skips[level]
            for block in model.decoder[level]:
                x = self._block(x, masks[level], block)

            if level in levels:
                outputs[level] = self._head(x, masks[level], model.heads[level])

        return [outputs[level] for level in levels]
