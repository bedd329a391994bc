import unittest
import numpy as np
from mock import MagicMock
from ..pipeline.HU_Window import HU_Window
from ..volume.Voxel_Grid import Voxel_Grid

class TestPipelineHUWindow(unittest.TestCase):
    def setUp(self):
        self.window = HU_Window(-79.0, 304.0)

    def test_init(self):
        self.assertEqual(self.window.lo, -79.0)
        self.assertEqual(self.window.hi, 304.0)
        self.assertEqual(self.window, HU_Window(-79, 304))
        self.assertNotEqual(self.window, HU_Window(-80, 304))
        self.assertEqual(repr(self.window), "HU_Window(lo=-79.0, hi=304.0)")

        with self.assertRaises(ValueError):
            HU_Window(10.0, 10.0)
        with self.assertRaises(ValueError):
            HU_Window(20.0, 10.0)
        with self.assertRaises(ValueError):
            HU_Window(-np.inf, 10.0)

    def test_from_settings(self):
        settings = MagicMock()
        settings.get.side_effect = lambda key: {"hu_lo": -10.0, "hu_hi": 90.0}[key]
        self.assertEqual(HU_Window.from_settings(settings), HU_Window(-10.0, 90.0))

    def test_apply(self):
        values = np.array([[[-1000.0, -79.0, 0.0, 304.0, 304.5]]])
        expected = [[[False, True, True, True, False]]]

        # The window is closed on both ends.
        np.testing.assert_array_equal(self.window.apply(values), expected)
        grid = Voxel_Grid(values, (1.0, 1.0, 1.0))
        np.testing.assert_array_equal(self.window.apply(grid), expected)

    def test_normalize(self):
        window = HU_Window(-100.0, 300.0)
        values = np.array([-100.0, 100.0, 300.0, 500.0, -300.0])
        np.testing.assert_allclose(window.normalize(values), [-1.0, 0.0, 1.0, 2.0, -2.0])
        np.testing.assert_allclose(window.normalize(values, clip=True), [-1.0, 0.0, 1.0, 1.0, -1.0])
        np.testing.assert_allclose(window.denormalize(window.normalize(values)), values)

    def test_compute_percentile_range(self):
        values = np.arange(101, dtype=np.float64)
        window = HU_Window.compute_percentile_range(values)
        self.assertAlmostEqual(window.lo, 0.5)
        self.assertAlmostEqual(window.hi, 99.5)

        # Percentiles interpolate between order statistics.
        window = HU_Window.compute_percentile_range([[0.0, 10.0], np.array([20.0])],
                                                    lo_pct=25, hi_pct=75)
        self.assertAlmostEqual(window.lo, 5.0)
        self.assertAlmostEqual(window.hi, 15.0)

    def _sorted_percentile(self, values, pct):
        ordered = sorted(values.tolist())
        rank = pct / 100.0 * (len(ordered) - 1)
        below = int(np.floor(rank))
        above = min(below + 1, len(ordered) - 1)
        fraction = rank - below
        return ordered[below] + (ordered[above] - ordered[below]) * fraction

    def test_compute_percentile_range_sorted(self):
        rng = np.random.RandomState(17)
        for case in range(1000):
            values = rng.normal(loc=40.0, scale=300.0, size=rng.randint(2, 400))
            lo_pct = rng.uniform(0.0, 50.0)
            hi_pct = rng.uniform(lo_pct + 1.0, 100.0)
            if case % 10 == 0:
                lo_pct, hi_pct = 0.5, 99.5

            window = HU_Window.compute_percentile_range(np.array_split(values, 3),
                                                        lo_pct=lo_pct, hi_pct=hi_pct)
            msg = "case {} with percentiles ({}, {})".format(case, lo_pct, hi_pct)
            self.assertAlmostEqual(window.lo, self._sorted_percentile(values, lo_pct),
                                   places=8, msg=msg)
            self.assertAlmostEqual(window.hi, self._sorted_percentile(values, hi_pct),
                                   places=8, msg=msg)

    def test_compute_percentile_range_invalid(self):
        with self.assertRaisesRegex(ValueError, "empty"):
            HU_Window.compute_percentile_range(np.array([]))
        with self.assertRaisesRegex(ValueError, "empty"):
            HU_Window.compute_percentile_range([])
        with self.assertRaises(ValueError):
            HU_Window.compute_percentile_range(np.arange(10.0), lo_pct=60, hi_pct=40)
        with self.assertRaises(ValueError):
            HU_Window.compute_percentile_range(np.arange(10.0), hi_pct=101)

        # Constant values collapse the window.
        with self.assertRaises(ValueError):
            HU_Window.compute_percentile_range(np.ones(10))
