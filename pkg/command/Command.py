import json
import os
import numpy as np
from ..network.Checkpoint import Checkpoint
from ..network.Model_Config import Model_Config
from ..pipeline.HU_Window import HU_Window
from ..pipeline.Phantom import Phantom
from ..volume.NIfTI_Reader import NIfTI_Reader
from ..volume.Volume_File import Volume_File
from ..volume.Voxel_Grid import Voxel_Grid

class Command(object):
    """
    Base class of the command line subcommands.

    Subclasses list the settings components they use in `COMPONENTS`, which
    are registered with the `Arguments` object on construction so that their
    keys become options, and implement `run`.
    """

    COMPONENTS = ("command",)

    # Volume file names inside the case directories of a data directory.
    IMAGE_NAMES = ("imaging.nii", "imaging.rvol")
    LABEL_NAMES = ("segmentation.nii", "segmentation.rvol")

    def __init__(self, arguments, thread_manager, import_manager):
        self._arguments = arguments
        self._thread_manager = thread_manager
        self._import_manager = import_manager
        self._settings = {}
        for component in self.COMPONENTS:
            self._settings[component] = arguments.get_settings(component)

        self._nifti_reader = NIfTI_Reader()

    @classmethod
    def create(cls, name, arguments, thread_manager, import_manager):
        """
        Create the subcommand object of the class `<name>_Command`.
        """

        command_class = import_manager.load_class("{}_Command".format(name),
                                                  relative_module="command")
        return command_class(arguments, thread_manager, import_manager)

    def get_settings(self, component):
        return self._settings[component]

    @property
    def seed(self):
        return self._settings["command"].get("seed")

    @property
    def deterministic(self):
        return self._settings["command"].get("deterministic")

    @property
    def workers(self):
        if self.deterministic:
            return 1

        return self._settings["command"].get("workers")

    def require(self, key, component="command"):
        """
        Retrieve the value of a file or string setting that must be given.
        """

        value = self._settings[component].get(key)
        if value is None or value == "":
            raise ValueError("Option '--{}' is required for this command".format(key.replace('_', '-')))

        return value

    def load_grid(self, path, kind=Voxel_Grid.KIND_HU):
        """
        Read an uncompressed NIfTI file or a raw volume into a `Voxel_Grid`.
        """

        if path.endswith(".nii") or path.endswith(".nii.gz"):
            return self._nifti_reader.read_nifti(path, kind=kind)

        grid = Volume_File.load_volume(path)
        if grid.kind != kind:
            raise ValueError("Volume '{}' holds {} values, expected {} values".format(path, grid.kind, kind))

        return grid

    def load_labels(self, path):
        return self.load_grid(path, kind=Voxel_Grid.KIND_LABEL)

    def get_window(self):
        return HU_Window.from_settings(self._arguments.get_settings("pipeline"))

    def get_model_config(self):
        """
        Retrieve the model configuration from the configuration JSON file, or
        from the network settings when no file is given.
        """

        path = self._settings["command"].get("config")
        if path:
            if not os.path.isfile(path):
                raise IOError("Model configuration '{}' does not exist".format(path))

            with open(path) as config_file:
                return Model_Config.from_dict(json.load(config_file))

        return Model_Config.from_settings(self._arguments.get_settings("network"))

    def load_model(self, key="checkpoint"):
        path = self.require(key)
        if not Checkpoint.exists(path):
            raise IOError("Checkpoint '{}' does not exist".format(path))

        return Checkpoint.load_checkpoint(path)

    def _find_volume(self, directory, names):
        for name in names:
            path = os.path.join(directory, name)
            if os.path.isfile(path) or os.path.isfile(path + Volume_File.SIDECAR_EXTENSION):
                return path

        raise IOError("Directory '{}' holds none of {}".format(directory, ', '.join(names)))

    def load_scans(self):
        """
        Retrieve `(name, image, labels)` tuples of the scans of the data
        directory, or of synthetic phantoms when the data directory is not
        given and phantoms are requested.
        """

        settings = self._settings["command"]
        phantoms = settings.get("phantoms")
        data_dir = settings.get("data_dir")
        if not data_dir:
            if phantoms == 0:
                raise ValueError("Option '--data-dir' or '--phantoms' is required for this command")

            phantom = Phantom.from_settings(self._arguments.get_settings("phantom"))
            spacing = self._arguments.get_settings("pipeline").get("high_spacing")
            scans = []
            for index in range(phantoms):
                image, labels = phantom.generate(spacing, seed=self.seed + index)
                scans.append(("phantom{}".format(index), image, labels))

            return scans

        if not os.path.isdir(data_dir):
            raise IOError("Data directory '{}' does not exist".format(data_dir))

        names = list(settings.get("cases"))
        if not names:
            names = sorted(name for name in os.listdir(data_dir)
                           if os.path.isdir(os.path.join(data_dir, name)))

        scans = []
        for name in names:
            directory = os.path.join(data_dir, name)
            image = self.load_grid(self._find_volume(directory, self.IMAGE_NAMES))
            labels = self.load_labels(self._find_volume(directory, self.LABEL_NAMES))
            scans.append((name, image, labels))

        if not scans:
            raise ValueError("Data directory '{}' holds no cases".format(data_dir))

        return scans

    @staticmethod
    def label_grid(labels, grid):
        """
        Create a label `Voxel_Grid` of the label codes `labels` with the
        geometry of `grid`.
        """

        return Voxel_Grid(np.asarray(labels, dtype=np.uint8), grid.spacing,
                          grid.origin, kind=Voxel_Grid.KIND_LABEL)

    def run(self):
        raise NotImplementedError("Subclasses must implement run()")
