import numpy as np

class Augment_Params(object):
    """
    Magnitudes and probabilities of the training augmentations.

    Rotations are in radians, translations in voxels and the scale is
    a relative deviation from one. Every probability lies in `[0, 1]`.
    """

    FIELDS = (
        "augment", "affine_p", "rot_xy_max", "rot_z_max", "trans_xy_max",
        "trans_z_max", "scale_max", "flip_p", "int_scale_factor",
        "int_scale_p", "int_shift_offset", "int_shift_p", "noise_mean",
        "noise_std", "noise_p", "smooth_sigma", "smooth_p"
    )

    PROBABILITIES = (
        "affine_p", "flip_p", "int_scale_p", "int_shift_p", "noise_p",
        "smooth_p"
    )

    MAXIMA = (
        "rot_xy_max", "rot_z_max", "trans_xy_max", "trans_z_max",
        "scale_max", "int_scale_factor", "int_shift_offset", "noise_std"
    )

    def __init__(self, augment=True, affine_p=1.0, rot_xy_max=np.pi / 36,
                 rot_z_max=np.pi / 8, trans_xy_max=30.0, trans_z_max=5.0,
                 scale_max=0.15, flip_p=0.3, int_scale_factor=0.1,
                 int_scale_p=0.3, int_shift_offset=5.0, int_shift_p=0.3,
                 noise_mean=0.0, noise_std=1.0, noise_p=0.3,
                 smooth_sigma=(0.25, 1.5), smooth_p=0.3):
        self.augment = bool(augment)
        self.affine_p = float(affine_p)
        self.rot_xy_max = float(rot_xy_max)
        self.rot_z_max = float(rot_z_max)
        self.trans_xy_max = float(trans_xy_max)
        self.trans_z_max = float(trans_z_max)
        self.scale_max = float(scale_max)
        self.flip_p = float(flip_p)
        self.int_scale_factor = float(int_scale_factor)
        self.int_scale_p = float(int_scale_p)
        self.int_shift_offset = float(int_shift_offset)
        self.int_shift_p = float(int_shift_p)
        self.noise_mean = float(noise_mean)
        self.noise_std = float(noise_std)
        self.noise_p = float(noise_p)
        self.smooth_sigma = tuple(float(sigma) for sigma in smooth_sigma)
        self.smooth_p = float(smooth_p)

        for field in self.PROBABILITIES:
            value = getattr(self, field)
            if not 0.0 <= value <= 1.0:
                raise ValueError("Probability '{}' must be in [0, 1], not {}".format(field, value))

        for field in self.MAXIMA:
            if getattr(self, field) < 0:
                raise ValueError("Magnitude '{}' must not be negative".format(field))

        if self.scale_max >= 1:
            raise ValueError("Scale deviation must be below 1, not {}".format(self.scale_max))
        if len(self.smooth_sigma) != 2 or self.smooth_sigma[0] < 0 or \
                self.smooth_sigma[0] > self.smooth_sigma[1]:
            raise ValueError("Smoothing sigma range {} is invalid".format(self.smooth_sigma))

    @classmethod
    def identity(cls):
        """
        Create parameters that leave every case unchanged.
        """

        return cls(augment=False, affine_p=0.0, rot_xy_max=0.0, rot_z_max=0.0,
                   trans_xy_max=0.0, trans_z_max=0.0, scale_max=0.0,
                   flip_p=0.0, int_scale_factor=0.0, int_scale_p=0.0,
                   int_shift_offset=0.0, int_shift_p=0.0, noise_std=0.0,
                   noise_p=0.0, smooth_sigma=(0.0, 0.0), smooth_p=0.0)

    @classmethod
    def from_settings(cls, settings):
        """
        Create the parameters from the "augmentation" settings component.
        """

        return cls.from_dict(settings.as_dict())

    @classmethod
    def from_dict(cls, data):
        unknown = set(data.keys()) - set(cls.FIELDS)
        if unknown:
            raise KeyError("Unknown augmentation fields: {}".format(', '.join(sorted(unknown))))

        return cls(**data)

    def as_dict(self):
        data = {}
        for field in self.FIELDS:
            value = getattr(self, field)
            data[field] = list(value) if isinstance(value, tuple) else value

        return data

    def __eq__(self, other):
        if not isinstance(other, Augment_Params):
            return NotImplemented

        return self.as_dict() == other.as_dict()

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result

        return not result

    __hash__ = None
