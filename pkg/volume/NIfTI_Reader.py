import os
import nibabel as nib
import numpy as np
from nibabel.filebasedimages import ImageFileError
from .Voxel_Grid import Voxel_Grid

class NIfTI_Reader(object):
    """
    Reader for single-file, uncompressed NIfTI-1 volumes.
    """

    HEADER_SIZE = 348
    MAGIC = b"n+1\x00"
    GZIP_MAGIC = b"\x1f\x8b"
    DTYPES = (np.dtype(np.int16), np.dtype(np.float32), np.dtype(np.uint8))

    def _check_header(self, path):
        with open(path, "rb") as nifti_file:
            header = nifti_file.read(self.HEADER_SIZE)

        if header[:2] == self.GZIP_MAGIC:
            raise IOError("Compressed NIfTI file '{}' is not supported".format(path))
        if len(header) < self.HEADER_SIZE:
            raise IOError("NIfTI file '{}' is shorter than its header".format(path))

        # The magic string is located at byte offset 344.
        if header[344:348] != self.MAGIC:
            raise IOError("NIfTI file '{}' has magic {!r}, expected {!r}".format(path, header[344:348], self.MAGIC))

    def read_nifti(self, path, kind=Voxel_Grid.KIND_HU):
        """
        Read the NIfTI-1 file at `path` into a `Voxel_Grid` of the given
        `kind`, with the scaling slope and intercept applied to the values.

        The grid origin is the zero vector since orientation information is
        not carried through the pipeline.
        """

        if not os.path.isfile(path):
            raise IOError("File '{}' does not exist".format(path))
        if path.endswith(".gz"):
            raise IOError("Compressed NIfTI file '{}' is not supported".format(path))

        self._check_header(path)

        try:
            image = nib.Nifti1Image.from_filename(path)
        except ImageFileError as e:
            raise IOError("Cannot read NIfTI file '{}': {}".format(path, e))

        header = image.header
        dtype = header.get_data_dtype()
        if dtype.newbyteorder('=') not in self.DTYPES:
            raise ValueError("Unsupported NIfTI datatype '{}' in '{}'".format(dtype, path))

        shape = image.shape
        if len(shape) < 3 or any(size != 1 for size in shape[3:]):
            raise ValueError("NIfTI file '{}' must hold a single 3D frame, not shape {}".format(path, shape))

        # The array proxy applies scl_slope and scl_inter when they are set.
        values = np.asanyarray(image.dataobj, dtype=np.float64)
        values = values.reshape(shape[:3])
        spacing = [float(zoom) for zoom in header.get_zooms()[:3]]

        return Voxel_Grid(values, spacing, kind=kind)
