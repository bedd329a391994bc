import json
import numpy as np
from ..pipeline.HU_Window import HU_Window
from .Command import Command

class Percentiles_Command(Command):
    """
    Compute the HU window from the intensities of the foreground voxels of
    the labelled scans.

    The window is written as a settings overrides file with the `hu_lo` and
    `hu_hi` keys when an output file is given.
    """

    COMPONENTS = ("command", "pipeline", "phantom")

    def get_foreground_values(self):
        if self.get_settings("command").get("in"):
            scans = [("in", self.load_grid(self.require("in")),
                      self.load_labels(self.require("labels")))]
        else:
            scans = self.load_scans()

        return [image.values[labels.values > 0] for _, image, labels in scans]

    def run(self):
        settings = self.get_settings("pipeline")
        values = self.get_foreground_values()
        window = HU_Window.compute_percentile_range(values,
                                                    lo_pct=settings.get("lo_pct"),
                                                    hi_pct=settings.get("hi_pct"))

        count = sum(np.size(part) for part in values)
        print("HU window [{!r}, {!r}] from {} foreground voxels".format(window.lo, window.hi, count))

        path = self.get_settings("command").get("out")
        if path:
            with open(path, 'w') as overrides_file:
                json.dump({"hu_lo": window.lo, "hu_hi": window.hi},
                          overrides_file, indent=4, sort_keys=True)
