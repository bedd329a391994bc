import os
from ..pipeline.ROI_File import ROI_File
from ..pipeline.Two_Stage_Pipeline import Two_Stage_Pipeline
from ..volume.Volume_File import Volume_File
from .Command import Command

class ROI_Command(Command):
    """
    Find the regions of interest of a scan with a Stage 1 network and write
    them to a `<case>.roi.json` file.

    With `--low-out`, the binarized Stage 1 prediction is also written as a
    low resolution label volume.
    """

    COMPONENTS = ("command", "pipeline")

    def get_output_path(self):
        settings = self.get_settings("command")
        path = settings.get("out")
        if path:
            return path

        name = settings.get("case") or os.path.basename(self.require("in")).split('.')[0]
        return "{}.roi.json".format(name)

    def run(self):
        model = self.load_model("checkpoint")
        image = self.load_grid(self.require("in"))
        pipeline = Two_Stage_Pipeline.from_settings(self.get_settings("pipeline"),
                                                    self.get_window(),
                                                    self._thread_manager,
                                                    stage1_model=model,
                                                    workers=self.workers)

        stage1 = pipeline.predict_stage1(image)
        components, low_grid = pipeline.find_components(image, stage1=stage1)
        path = self.get_output_path()
        ROI_File.store_rois(path, components, low_grid.spacing, low_grid.dims)
        print("Found {} components, written to {}".format(len(components), path))
        for component in components:
            print("Component {}: {} voxels in [{}, {})".format(component.id, component.size, component.bbox_lo, component.bbox_hi))

        low_out = self.get_settings("command").get("low_out")
        if low_out:
            mask = pipeline.get_low_mask(stage1[0])
            Volume_File.store_volume(self.label_grid(mask.to_labels(), low_grid), low_out)
            print("Low resolution mask written to {}".format(low_out))
