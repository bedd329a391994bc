import numpy as np
from scipy import ndimage

class Augmenter(object):
    """
    Random spatial and intensity augmentation of an intensity grid and its
    aligned label grid.

    The affine transform (rotation, translation and isotropic scaling in one
    resampling pass) and the flips act on both grids, with trilinear
    interpolation for the intensities and nearest neighbor for the labels.
    The intensity scale, intensity shift, noise and smoothing act on the
    intensities only.
    """

    @staticmethod
    def _rotation(axis, angle):
        cos, sin = np.cos(angle), np.sin(angle)
        first, second = [other for other in range(3) if other != axis]
        matrix = np.eye(3)
        matrix[first, first] = cos
        matrix[first, second] = -sin
        matrix[second, first] = sin
        matrix[second, second] = cos
        return matrix

    def get_affine(self, dims, rng, params):
        """
        Draw an affine transform for a volume of dimensions `dims`.

        Returns the matrix and offset that map output voxel indices to input
        voxel indices around the volume center.
        """

        angles = [
            rng.uniform(-params.rot_xy_max, params.rot_xy_max),
            rng.uniform(-params.rot_xy_max, params.rot_xy_max),
            rng.uniform(-params.rot_z_max, params.rot_z_max)
        ]
        translation = np.array([
            rng.uniform(-params.trans_xy_max, params.trans_xy_max),
            rng.uniform(-params.trans_xy_max, params.trans_xy_max),
            rng.uniform(-params.trans_z_max, params.trans_z_max)
        ])
        scale = 1.0 + rng.uniform(-params.scale_max, params.scale_max)

        matrix = np.eye(3)
        for axis in (2, 1, 0):
            matrix = np.dot(matrix, self._rotation(axis, angles[axis]))

        matrix = matrix / scale
        center = (np.array(dims, dtype=np.float64) - 1.0) / 2.0
        offset = center - np.dot(matrix, center) + translation
        return matrix, offset

    def augment(self, image, labels, rng, params, mask=None):
        """
        Augment the intensity grid `image` and the label grid `labels` with
        random draws from the `RandomState` object `rng` according to the
        `Augment_Params` object `params`.

        An optional boolean `mask` array of the same dimensions follows the
        spatial transforms of the labels, with voxels moved in from outside
        the volume being inactive.

        Returns the augmented intensity and label grids, and the augmented
        mask if one is given.
        """

        if image.dims != labels.dims:
            raise ValueError("Image dimensions {} do not match label dimensions {}".format(image.dims, labels.dims))
        if mask is not None:
            mask = np.asarray(mask, dtype=bool)
            if mask.shape != image.dims:
                raise ValueError("Mask dimensions {} do not match image dimensions {}".format(mask.shape, image.dims))

        if not params.augment:
            return (image, labels) if mask is None else (image, labels, mask)

        values = np.array(image.values, dtype=np.float64)
        codes = np.array(labels.values)
        mask_codes = None if mask is None else mask.astype(np.uint8)

        if rng.uniform() < params.affine_p:
            matrix, offset = self.get_affine(values.shape, rng, params)
            if not (np.allclose(matrix, np.eye(3)) and np.allclose(offset, 0.0)):
                values = ndimage.affine_transform(values, matrix, offset=offset,
                                                  order=1, mode='nearest')
                codes = ndimage.affine_transform(codes, matrix, offset=offset,
                                                 order=0, mode='nearest')
                if mask_codes is not None:
                    mask_codes = ndimage.affine_transform(mask_codes, matrix,
                                                          offset=offset,
                                                          order=0,
                                                          mode='constant')

        for axis in range(3):
            if rng.uniform() < params.flip_p:
                values = np.flip(values, axis=axis)
                codes = np.flip(codes, axis=axis)
                if mask_codes is not None:
                    mask_codes = np.flip(mask_codes, axis=axis)

        if rng.uniform() < params.int_scale_p:
            values = values * (1.0 + rng.uniform(-params.int_scale_factor,
                                                 params.int_scale_factor))

        if rng.uniform() < params.int_shift_p:
            values = values + rng.uniform(-params.int_shift_offset,
                                          params.int_shift_offset)

        if rng.uniform() < params.noise_p:
            values = values + rng.normal(params.noise_mean, params.noise_std,
                                         size=values.shape)

        if rng.uniform() < params.smooth_p:
            low, high = params.smooth_sigma
            sigma = rng.uniform(low, high, size=3)
            if np.any(sigma > 0):
                values = ndimage.gaussian_filter(values, sigma=sigma,
                                                 mode='nearest')

        image = image.with_values(values)
        labels = labels.with_values(codes)
        if mask_codes is None:
            return image, labels

        return image, labels, mask_codes > 0
