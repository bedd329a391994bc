from ..volume.Resampler import Resampler
from ..volume.Volume_File import Volume_File
from ..volume.Voxel_Grid import Voxel_Grid
from .Command import Command

class Resample_Command(Command):
    """
    Resample a volume to an isotropic spacing and write it as a raw volume.

    Nearest mode reads the input as a label volume.
    """

    COMPONENTS = ("command", "volume")

    def run(self):
        settings = self.get_settings("volume")
        mode = settings.get("mode")
        kind = Voxel_Grid.KIND_LABEL if mode == "nearest" else Voxel_Grid.KIND_HU

        grid = self.load_grid(self.require("in"), kind=kind)
        output = Resampler().resample(grid, settings.get("spacing"), mode=mode)
        Volume_File.store_volume(output, self.require("out"))
        print("Resampled {} to {} at spacing {} mm".format(grid.dims, output.dims, output.spacing))
