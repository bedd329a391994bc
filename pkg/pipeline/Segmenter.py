import _thread
import queue
import sys
import numpy as np
from ..core.Threadable import Threadable
from ..volume.Multi_Label_Mask import Multi_Label_Mask

class CapacityError(RuntimeError):
    pass

class OverlapError(ValueError):
    pass

class Component_Prediction(object):
    """
    Stage 2 probabilities of one component on its local voxels.

    The `coords` are `(N, 3)` indices relative to the component crop and the
    `offset` is the position of the crop in the full scan.
    """

    def __init__(self, component_id, offset, coords, probs):
        coords = np.asarray(coords, dtype=np.int64).reshape(-1, 3)
        probs = np.asarray(probs)
        if probs.shape != (coords.shape[0], 3):
            raise ValueError("Probabilities of shape {} do not match {} coordinates".format(probs.shape, coords.shape[0]))

        self.component_id = component_id
        self.offset = tuple(int(value) for value in offset)
        self.coords = coords
        self.probs = probs

    @property
    def global_coords(self):
        return self.coords + np.array(self.offset, dtype=np.int64)

class Segmenter(Threadable):
    """
    Stage 2 segmentation of lifted components.

    Each component is cropped from the high resolution scan and runs through
    the network on its own, so components never read each other's voxels.
    Components are distributed over worker threads.
    """

    def __init__(self, model, thread_manager, max_voxels=4000000, workers=1,
                 name="segmenter"):
        super(Segmenter, self).__init__(name, thread_manager)

        if workers < 1:
            raise ValueError("At least one worker is required, not {}".format(workers))

        self._model = model
        self._max_voxels = int(max_voxels)
        self._workers = int(workers)
        self._results = queue.Queue()

    def check_capacity(self, case):
        size = int(np.count_nonzero(case.active))
        if size > self._max_voxels:
            raise CapacityError("Component '{}' has {} active voxels, more than the capacity of {}".format(case.name, size, self._max_voxels))

    def segment_case(self, number, case):
        """
        Predict the probabilities of one Stage 2 `case`.
        """

        self.check_capacity(case)
        st, _ = case.to_tensors()
        if st.is_empty:
            return Component_Prediction(number, case.offset, np.empty((0, 3)),
                                        np.empty((0, 3)))

        dtype = self._model.stem.weights.dtype
        probs = self._model.forward(st.with_feats(st.values.astype(dtype)),
                                    num_heads=1)[0]
        return Component_Prediction(number, case.offset, st.coords[:, 1:],
                                    probs.values)

    def _loop(self, cases, worker):
        number = worker
        try:
            for number in range(worker, len(cases), self._workers):
                if not self.is_active:
                    return

                self._results.put((number, self.segment_case(number, cases[number])))
        except Exception:
            self._thread_manager.log("'{}' thread".format(self._name))
            self._results.put((number, sys.exc_info()[1]))

    def segment_components(self, cases):
        """
        Segment the Stage 2 `cases` of the components of one scan.

        Returns one `Component_Prediction` per case, in order. Components
        above the capacity raise a `CapacityError` before any prediction.
        """

        for case in cases:
            self.check_capacity(case)

        if self._workers == 1 or len(cases) <= 1:
            return [self.segment_case(number, case) for number, case in enumerate(cases)]

        self._results = queue.Queue()
        self.activate()
        predictions = {}
        try:
            for worker in range(min(self._workers, len(cases))):
                _thread.start_new_thread(self._loop, (cases, worker))

            while len(predictions) < len(cases):
                number, result = self._results.get()
                if isinstance(result, Exception):
                    raise RuntimeError("Segmenting component {} failed: {}".format(number, result))

                predictions[number] = result
        finally:
            self.deactivate()

        return [predictions[number] for number in range(len(cases))]

def reassemble(predictions, dims, threshold=0.5):
    """
    Place the component `predictions` in a scan of dimensions `dims` and
    binarize every channel at `threshold`.

    Voxels outside all components are background. Predictions that share
    a voxel raise an `OverlapError`.
    """

    dims = tuple(int(size) for size in dims)
    channels = np.zeros((3,) + dims, dtype=bool)
    owner = np.full(dims, -1, dtype=np.int64)
    for number, prediction in enumerate(predictions):
        if prediction.coords.shape[0] == 0:
            continue

        coords = prediction.global_coords
        if np.any(coords < 0) or np.any(coords >= np.array(dims)):
            raise ValueError("Component {} falls outside dimensions {}".format(prediction.component_id, dims))

        x, y, z = coords[:, 0], coords[:, 1], coords[:, 2]
        taken = owner[x, y, z]
        if np.any(taken >= 0):
            raise OverlapError("Component {} overlaps component {}".format(prediction.component_id, predictions[int(taken[taken >= 0][0])].component_id))

        owner[x, y, z] = number
        channels[:, x, y, z] = (prediction.probs > threshold).T

    return Multi_Label_Mask(channels)
