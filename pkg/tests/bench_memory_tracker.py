import unittest
import tracemalloc
import numpy as np
from ..bench.Memory_Tracker import Memory_Tracker

class TestBenchMemoryTracker(unittest.TestCase):
    def test_peak(self):
        with Memory_Tracker() as tracker:
            buffer = np.ones(1000000)
            del buffer

        self.assertGreaterEqual(tracker.peak, 8000000)
        self.assertLess(tracker.peak, 16000000)
        self.assertFalse(tracemalloc.is_tracing())

    def test_peak_unfinished(self):
        tracker = Memory_Tracker()
        with self.assertRaises(RuntimeError):
            tracker.peak

        with tracker:
            with self.assertRaises(RuntimeError):
                tracker.peak

    def test_already_tracing(self):
        tracemalloc.start()
        try:
            held = np.ones(500000)
            with Memory_Tracker() as tracker:
                small = np.ones(1000)

            # Memory in use before entering is not counted.
            self.assertLess(tracker.peak, 1000000)
            self.assertTrue(tracemalloc.is_tracing())
            del held, small
        finally:
            tracemalloc.stop()

    def test_exception(self):
        tracker = Memory_Tracker()
        with self.assertRaises(ValueError):
            with tracker:
                raise ValueError("failure")

        self.assertGreaterEqual(tracker.peak, 0)
        self.assertFalse(tracemalloc.is_tracing())
