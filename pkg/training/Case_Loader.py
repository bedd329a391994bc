import _thread
import queue
import sys
import numpy as np
from ..core.Threadable import Threadable

class Case_Failure(object):
    def __init__(self, index, error):
        self.index = index
        self.error = error

class Case_Loader(Threadable):
    """
    Preparation of training cases on worker threads.

    Each case is augmented with a random state derived from the seed, the
    epoch and its position in the case list, and converted to tensors.
    Cases are delivered in list order regardless of the number of workers,
    so the prepared data only depends on the seed.
    """

    POLL_TIMEOUT = 0.1

    def __init__(self, cases, thread_manager, augmenter=None, params=None,
                 seed=0, epoch=0, workers=1, queue_size=2,
                 name="case_loader"):
        super(Case_Loader, self).__init__(name, thread_manager)

        if workers < 1:
            raise ValueError("At least one worker is required, not {}".format(workers))

        self._cases = list(cases)
        self._augmenter = augmenter
        self._params = params
        self._seed = int(seed)
        self._epoch = int(epoch)
        self._workers = int(workers)
        self._queues = [queue.Queue(maxsize=queue_size) for _ in range(self._workers)]

    def __len__(self):
        return len(self._cases)

    def get_random_state(self, index):
        """
        Retrieve the random state for the case at `index` in this epoch.
        """

        return np.random.RandomState([self._seed % 2**32, self._epoch, index])

    def prepare(self, index):
        """
        Augment the case at `index` and convert it to its input tensor and
        its target matrix.
        """

        case = self._cases[index]
        if self._augmenter is not None and self._params is not None and \
                self._params.augment:
            case = case.augmented(self._augmenter, self.get_random_state(index),
                                  self._params)

        return case.to_tensors()

    def start(self):
        """
        Start the worker threads.
        """

        self.activate()
        for worker in range(self._workers):
            _thread.start_new_thread(self._loop, (worker,))

    def stop(self):
        if self.is_active:
            self.deactivate()

    def _put(self, worker, item):
        while self.is_active:
            try:
                self._queues[worker].put(item, timeout=self.POLL_TIMEOUT)
                return
            except queue.Full:
                continue

    def _loop(self, worker):
        """
        Prepare every case assigned to `worker`. This runs in a separate
        thread.
        """

        index = worker
        try:
            for index in range(worker, len(self._cases), self._workers):
                if not self.is_active:
                    return

                self._put(worker, (index, self.prepare(index)))
        except Exception:
            self._thread_manager.log("'{}' thread".format(self._name))
            self._put(worker, Case_Failure(index, sys.exc_info()[1]))

    def __iter__(self):
        """
        Iterate over the prepared cases in list order, starting the workers
        if necessary. A failure on a worker stops the loader and raises
        a `RuntimeError` here.
        """

        if not self.is_active:
            self.start()

        try:
            for index in range(len(self._cases)):
                item = self._queues[index % self._workers].get()
                if isinstance(item, Case_Failure):
                    raise RuntimeError("Preparing case {} failed: {}".format(item.index, item.error))

                yield item[1]
        finally:
            self.stop()
