import tracemalloc

class Memory_Tracker(object):
    """
    Context manager that measures the peak of the traced allocations,
    including array buffers, made while it is active.

        with Memory_Tracker() as tracker:
            ...
        tracker.peak
    """

    def __init__(self):
        self._peak = None
        self._started = False
        self._baseline = 0

    def __enter__(self):
        self._started = not tracemalloc.is_tracing()
        if self._started:
            tracemalloc.start()

        tracemalloc.clear_traces()
        self._baseline = tracemalloc.get_traced_memory()[0]
        self._peak = None
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        _, peak = tracemalloc.get_traced_memory()
        self._peak = max(peak - self._baseline, 0)
        if self._started:
            tracemalloc.stop()

        return False

    @property
    def peak(self):
        """
        Retrieve the peak number of bytes allocated above the memory in use
        when the tracker was entered.
        """

        if self._peak is None:
            raise RuntimeError("The memory tracker has not finished measuring")

        return self._peak
