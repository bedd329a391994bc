import os
import numpy as np
from ..pipeline.ROI_File import ROI_File
from ..pipeline.Two_Stage_Pipeline import Two_Stage_Pipeline
from ..volume.Volume_File import Volume_File
from ..volume.Voxel_Grid import Voxel_Grid
from .Command import Command

class Segment_Command(Command):
    """
    Segment a scan with the two-stage pipeline and write the label volume.

    The regions of interest are read from an ROI file if one is given, and
    are otherwise found with the Stage 1 checkpoint.
    """

    COMPONENTS = ("command", "pipeline")

    def run(self):
        settings = self.get_settings("command")
        stage2_model = self.load_model("checkpoint")
        roi_path = settings.get("roi_file")
        stage1_model = None
        if not roi_path:
            stage1_model = self.load_model("stage1_checkpoint")

        path = self.require("in")
        out = self.require("out")
        image = self.load_grid(path)
        name = settings.get("case") or os.path.basename(path).split('.')[0]
        pipeline = Two_Stage_Pipeline.from_settings(self.get_settings("pipeline"),
                                                    self.get_window(),
                                                    self._thread_manager,
                                                    stage1_model=stage1_model,
                                                    stage2_model=stage2_model,
                                                    workers=self.workers)

        components = None
        low_grid = None
        if roi_path:
            if not os.path.isfile(roi_path):
                raise IOError("ROI file '{}' does not exist".format(roi_path))

            components, spacing, dims = ROI_File.load_rois(roi_path)
            low_grid = Voxel_Grid(np.zeros(dims, dtype=np.float32), spacing,
                                  image.origin)

        mask, high_image = pipeline.segment(image, components=components,
                                            low_grid=low_grid, name=name)
        Volume_File.store_volume(self.label_grid(mask.to_labels(), high_image), out)

        counts = [int(mask.channel(index).sum()) for index in range(3)]
        print("Segmented {} at {}: channel voxels {}".format(name, high_image.dims, counts))
