import numpy as np
from ..pipeline.Component_ROI import Component_ROI
from ..pipeline.ROI_File import ROI_File
from ..volume.Volume_File import Volume_File
from .command_command import CommandTestCase

class TestCommandSegmentCommand(CommandTestCase):
    def setUp(self):
        super(TestCommandSegmentCommand, self).setUp()

        self.image_path, _ = self.write_scan()
        self.checkpoint_path = self.write_checkpoint()
        self.roi_path = self.get_path("case.roi.json")
        components = [
            Component_ROI(0, [[1, 3, 3], [2, 3, 3], [2, 4, 4]]),
            Component_ROI(1, [[5, 3, 3]])
        ]
        ROI_File.store_rois(self.roi_path, components, 4.0, (8, 8, 8))

    def test_run_roi_file(self):
        out_path = self.get_path("segmentation.rvol")
        output = self.run_command("Segment", ["--checkpoint", self.checkpoint_path,
                                              "--roi-file", self.roi_path,
                                              "--in", self.image_path,
                                              "--out", out_path,
                                              "--high-spacing", "2.0",
                                              "--case", "phantom"])
        self.assertIn("Segmented phantom at (16, 16, 16)", output)

        labels = Volume_File.load_volume(out_path)
        self.assertTrue(labels.is_label)
        self.assertEqual(labels.dims, (16, 16, 16))

        # Only the voxels of the lifted components can be labelled.
        allowed = np.zeros((16, 16, 16), dtype=bool)
        allowed[2:6, 6:8, 6:8] = True
        allowed[4:6, 8:10, 8:10] = True
        allowed[10:12, 6:8, 6:8] = True
        self.assertFalse(np.any(labels.values[~allowed]))

    def test_run_stage1(self):
        out_path = self.get_path("segmentation.rvol")
        self.run_command("Segment", ["--checkpoint", self.checkpoint_path,
                                     "--stage1-checkpoint", self.checkpoint_path,
                                     "--in", self.image_path, "--out", out_path,
                                     "--high-spacing", "2.0", "--low-spacing", "4.0",
                                     "--dilate", "3", "--min-size", "1",
                                     "--workers", "2"])
        labels = Volume_File.load_volume(out_path)
        self.assertEqual(labels.dims, (16, 16, 16))
        self.assertTrue(set(np.unique(labels.values)) <= {0, 1, 2, 3})

    def test_run_invalid(self):
        with self.assertRaisesRegex(ValueError, "--stage1-checkpoint"):
            self.run_command("Segment", ["--checkpoint", self.checkpoint_path,
                                         "--in", self.image_path,
                                         "--out", self.get_path("out.rvol")])
        with self.assertRaisesRegex(IOError, "ROI file"):
            self.run_command("Segment", ["--checkpoint", self.checkpoint_path,
                                         "--roi-file", self.get_path("missing.json"),
                                         "--in", self.image_path,
                                         "--out", self.get_path("out.rvol")])
