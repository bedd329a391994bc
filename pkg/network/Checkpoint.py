import hashlib
import json
import os
import numpy as np
from .Model_Config import Model_Config
from .Sparse_UNet import Sparse_UNet

class ChecksumError(IOError):
    pass

class ShapeMismatchError(ValueError):
    pass

class Checkpoint(object):
    """
    Storage of model parameters in a JSON manifest `<name>.ckpt.json` and
    a little-endian float32 payload `<name>.ckpt.bin`.

    The manifest holds the model configuration, a table of tensor names,
    shapes and offsets, and the SHA-256 checksum of the payload.
    """

    MANIFEST_EXTENSION = ".ckpt.json"
    PAYLOAD_EXTENSION = ".ckpt.bin"
    FORMAT_VERSION = 1
    DTYPE = np.dtype("<f4")

    @classmethod
    def get_paths(cls, path):
        for extension in (cls.MANIFEST_EXTENSION, cls.PAYLOAD_EXTENSION):
            if path.endswith(extension):
                path = path[:-len(extension)]

        return path + cls.MANIFEST_EXTENSION, path + cls.PAYLOAD_EXTENSION

    @classmethod
    def exists(cls, path):
        manifest_path, payload_path = cls.get_paths(path)
        return os.path.isfile(manifest_path) and os.path.isfile(payload_path)

    @classmethod
    def save_checkpoint(cls, model, path, extra=None):
        """
        Write the parameters of the `Sparse_UNet` object `model` to the
        checkpoint `path`. `extra` is a dictionary of additional information
        stored in the manifest.
        """

        manifest_path, payload_path = cls.get_paths(path)
        directory = os.path.dirname(manifest_path)
        if directory and not os.path.isdir(directory):
            os.makedirs(directory)

        tensors = []
        chunks = []
        offset = 0
        for name, variable in model.named_parameters():
            data = np.ascontiguousarray(variable.data, dtype=cls.DTYPE)
            tensors.append({
                "name": name,
                "shape": list(data.shape),
                "offset": offset
            })
            chunks.append(data.tobytes())
            offset += data.nbytes

        payload = b"".join(chunks)
        manifest = {
            "format_version": cls.FORMAT_VERSION,
            "config": model.config.as_dict(),
            "seed": model.seed,
            "tensors": tensors,
            "payload_bytes": len(payload),
            "checksum": hashlib.sha256(payload).hexdigest(),
            "extra": extra if extra is not None else {}
        }

        with open(payload_path, "wb") as payload_file:
            payload_file.write(payload)

        with open(manifest_path, "w") as manifest_file:
            json.dump(manifest, manifest_file, indent=4, sort_keys=True)

    @classmethod
    def read_manifest(cls, path):
        manifest_path, _ = cls.get_paths(path)
        if not os.path.isfile(manifest_path):
            raise IOError("Checkpoint manifest '{}' does not exist".format(manifest_path))

        with open(manifest_path) as manifest_file:
            try:
                manifest = json.load(manifest_file)
            except ValueError as e:
                raise IOError("Checkpoint manifest '{}' is corrupt: {}".format(manifest_path, e))

        for field in ("config", "tensors", "checksum", "payload_bytes"):
            if field not in manifest:
                raise IOError("Checkpoint manifest '{}' is missing '{}'".format(manifest_path, field))

        return manifest

    @classmethod
    def load_checkpoint(cls, path, config=None):
        """
        Read the checkpoint `path` into a new `Sparse_UNet`.

        The network is built from the configuration in the manifest, or from
        the `Model_Config` object `config` when given, in which case every
        stored tensor must fit the parameters of that configuration.
        """

        manifest = cls.read_manifest(path)
        _, payload_path = cls.get_paths(path)
        if not os.path.isfile(payload_path):
            raise IOError("Checkpoint payload '{}' does not exist".format(payload_path))

        with open(payload_path, "rb") as payload_file:
            payload = payload_file.read()

        if len(payload) != manifest["payload_bytes"] or \
                hashlib.sha256(payload).hexdigest() != manifest["checksum"]:
            raise ChecksumError("Checkpoint payload '{}' does not match its checksum".format(payload_path))

        if config is None:
            config = Model_Config.from_dict(manifest["config"])

        model = Sparse_UNet(config, seed=manifest.get("seed", 0))
        parameters = model.named_parameters()
        tensors = manifest["tensors"]
        for index, (name, variable) in enumerate(parameters):
            if index >= len(tensors):
                raise ShapeMismatchError("Checkpoint has no tensor for parameter '{}'".format(name))

            tensor = tensors[index]
            shape = tuple(tensor["shape"])
            if tensor["name"] != name or shape != variable.shape:
                raise ShapeMismatchError("Tensor '{}' of shape {} does not match parameter '{}' of shape {}".format(tensor["name"], shape, name, variable.shape))

            count = int(np.prod(shape))
            data = np.frombuffer(payload, dtype=cls.DTYPE, count=count,
                                 offset=tensor["offset"])
            variable.data = data.reshape(shape).astype(np.float32)

        if len(tensors) != len(parameters):
            name = tensors[len(parameters)]["name"]
            raise ShapeMismatchError("Tensor '{}' has no matching parameter".format(name))

        return model

def save_checkpoint(model, path, extra=None):
    Checkpoint.save_checkpoint(model, path, extra=extra)

def load_checkpoint(path, config=None):
    return Checkpoint.load_checkpoint(path, config=config)
