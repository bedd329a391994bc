import numpy as np
from ..volume.Voxel_Grid import Voxel_Grid

class Phantom(object):
    """
    Generator of synthetic CT cases with two ellipsoidal kidneys on a uniform
    background. The first kidney holds a tumour sphere and the second one an
    optional cyst sphere.

    Shapes are defined in millimeters and evaluated at voxel centers, so that
    cases generated at different spacings describe the same anatomy.
    """

    def __init__(self, extent_mm=(32.0, 32.0, 32.0),
                 kidney_radii_mm=(6.0, 4.5, 5.0), tumour_radius_mm=2.5,
                 cyst_radius_mm=0.0, kidney_hu=100.0, tumour_hu=50.0,
                 cyst_hu=20.0, background_hu=-100.0, noise_hu=0.0):
        self._extent = np.array(extent_mm, dtype=np.float64)
        self._kidney_radii = np.array(kidney_radii_mm, dtype=np.float64)
        self._tumour_radius = float(tumour_radius_mm)
        self._cyst_radius = float(cyst_radius_mm)
        self._kidney_hu = float(kidney_hu)
        self._tumour_hu = float(tumour_hu)
        self._cyst_hu = float(cyst_hu)
        self._background_hu = float(background_hu)
        self._noise_hu = float(noise_hu)

        if self._extent.shape != (3,) or self._kidney_radii.shape != (3,):
            raise ValueError("Extent and kidney radii must have three components")
        if 4 * self._kidney_radii[0] >= self._extent[0]:
            raise ValueError("Kidneys with x radius {} do not fit side by side in an extent of {} mm".format(self._kidney_radii[0], self._extent[0]))
        if np.any(2 * self._kidney_radii[1:] >= self._extent[1:]):
            raise ValueError("Kidneys do not fit in an extent of {} mm".format(tuple(self._extent)))

    @classmethod
    def from_settings(cls, settings):
        """
        Create the generator from the "phantom" settings component.
        """

        return cls(**settings.as_dict())

    def get_kidney_centers(self):
        """
        Retrieve the physical centers of the two kidneys.
        """

        center = self._extent / 2.0
        shift = np.array([self._extent[0] / 4.0, 0.0, 0.0])
        return [center - shift, center + shift]

    def generate(self, spacing, seed=0):
        """
        Generate an intensity grid and a label grid with isotropic or
        per-axis `spacing` in millimeters.

        The seed jitters the positions of the tumour and cyst inside their
        kidneys and drives the intensity noise.
        """

        if np.isscalar(spacing):
            spacing = (spacing,) * 3

        spacing = np.array(spacing, dtype=np.float64)
        dims = np.maximum(np.floor(self._extent / spacing + 0.5), 1).astype(int)
        rng = np.random.RandomState(seed)

        axes = [(np.arange(size) + 0.5) * step for size, step in zip(dims, spacing)]
        x, y, z = np.meshgrid(*axes, indexing='ij')
        positions = np.stack([x, y, z], axis=-1)

        labels = np.zeros(tuple(dims), dtype=np.uint8)
        first, second = self.get_kidney_centers()
        for center in (first, second):
            distance = np.sum(((positions - center) / self._kidney_radii) ** 2, axis=-1)
            labels[distance <= 1.0] = 1

        def place_sphere(kidney, radius, code):
            if radius <= 0:
                return

            room = np.maximum(self._kidney_radii - radius, 0.0)
            jitter = rng.uniform(-0.25, 0.25, size=3) * room
            distance = np.sum((positions - (kidney + jitter)) ** 2, axis=-1)
            labels[distance <= radius * radius] = code

        place_sphere(first, self._tumour_radius, 2)
        place_sphere(second, self._cyst_radius, 3)

        values = np.full(tuple(dims), self._background_hu)
        values[labels == 1] = self._kidney_hu
        values[labels == 2] = self._tumour_hu
        values[labels == 3] = self._cyst_hu
        if self._noise_hu > 0:
            values = values + rng.normal(0.0, self._noise_hu, size=values.shape)

        image = Voxel_Grid(values, spacing, kind=Voxel_Grid.KIND_HU)
        label_grid = Voxel_Grid(labels, spacing, kind=Voxel_Grid.KIND_LABEL)
        return image, label_grid
