import os
import numpy as np
from ..pipeline.ROI_File import ROI_File
from ..volume.Volume_File import Volume_File
from .command_command import CommandTestCase

class TestCommandROICommand(CommandTestCase):
    def test_get_output_path(self):
        command = self.create_command("ROI", ["--in", self.get_path("case_00003.rvol")])
        self.assertEqual(command.get_output_path(), "case_00003.roi.json")

        command = self.create_command("ROI", ["--in", "scan.rvol", "--case", "case_00004"])
        self.assertEqual(command.get_output_path(), "case_00004.roi.json")

        command = self.create_command("ROI", ["--out", self.get_path("rois.json")])
        self.assertEqual(command.get_output_path(), self.get_path("rois.json"))

    def test_run(self):
        image_path, _ = self.write_scan()
        out_path = self.get_path("case.roi.json")
        output = self.run_command("ROI", ["--checkpoint", self.write_checkpoint(),
                                          "--in", image_path, "--out", out_path,
                                          "--low-spacing", "4.0", "--dilate", "3",
                                          "--min-size", "1", "--threshold", "0.0"])
        self.assertTrue(os.path.isfile(out_path))
        self.assertIn("written to {}".format(out_path), output)

        components, spacing, dims = ROI_File.load_rois(out_path)
        self.assertEqual(spacing, (4.0, 4.0, 4.0))
        self.assertEqual(dims, (8, 8, 8))

        # Every active voxel passes a zero threshold, so the dilated window
        # forms the components.
        self.assertGreaterEqual(len(components), 1)
        self.assertIn("Found {} components".format(len(components)), output)

    def test_run_low_out(self):
        image_path, _ = self.write_scan()
        low_path = self.get_path("case.low.rvol")
        output = self.run_command("ROI", ["--checkpoint", self.write_checkpoint(),
                                          "--in", image_path,
                                          "--out", self.get_path("case.roi.json"),
                                          "--low-out", low_path,
                                          "--low-spacing", "4.0"])
        self.assertIn("Low resolution mask written to {}".format(low_path), output)

        grid = Volume_File.load_volume(low_path)
        self.assertTrue(grid.is_label)
        self.assertEqual(grid.dims, (8, 8, 8))
        self.assertEqual(grid.spacing, (4.0, 4.0, 4.0))
        self.assertTrue(set(np.unique(grid.values).tolist()) <= {0, 1, 2, 3})

        # Voxels outside the HU window are never predicted.
        self.assertEqual(grid.values[0, 0, 0], 0)

    def test_run_missing_checkpoint(self):
        image_path, _ = self.write_scan()
        with self.assertRaisesRegex(ValueError, "--checkpoint"):
            self.run_command("ROI", ["--in", image_path])
        with self.assertRaisesRegex(IOError, "does not exist"):
            self.run_command("ROI", ["--in", image_path,
                                     "--checkpoint", self.get_path("missing")])
