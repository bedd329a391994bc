import numpy as np
from ..sparse.Sparse_Tensor import Sparse_Tensor
from ..volume.Volume_File import Volume_File
from .Command import Command

class Sparsify_Command(Command):
    """
    Select the active voxels of a volume with the HU window.

    The active mask is written as a label volume. When labels are given, the
    fraction of foreground voxels that remains active is reported.
    """

    COMPONENTS = ("command", "pipeline")

    def run(self):
        window = self.get_window()
        image = self.load_grid(self.require("in"))
        active = window.apply(image)
        st = Sparse_Tensor.sparsify_dense(image, active, window=window)

        total = int(np.prod(image.dims))
        print("Active voxels: {} of {} ({:.2%})".format(st.num_rows, total, st.num_rows / float(total)))

        labels_path = self.get_settings("command").get("labels")
        if labels_path:
            labels = self.load_labels(labels_path)
            if labels.dims != image.dims:
                raise ValueError("Label dimensions {} do not match image dimensions {}".format(labels.dims, image.dims))

            foreground = labels.values > 0
            count = int(foreground.sum())
            if count > 0:
                retained = int(np.logical_and(foreground, active).sum())
                print("Foreground retention: {:.2%}".format(retained / float(count)))

        path = self.get_settings("command").get("out")
        if path:
            Volume_File.store_volume(self.label_grid(active, image), path)
