import unittest
import numpy as np
from mock import MagicMock
from ..pipeline.Case_Builder import Case_Builder
from ..pipeline.Component_ROI import Component_ROI, lift_to_highres
from ..pipeline.HU_Window import HU_Window
from ..pipeline.Phantom import Phantom

class TestPipelineCaseBuilder(unittest.TestCase):
    def setUp(self):
        self.window = HU_Window(-50.0, 300.0)
        self.builder = Case_Builder(self.window, low_spacing=2.0)
        self.image, self.labels = Phantom().generate(1.0, seed=2)

    def test_from_settings(self):
        settings = MagicMock()
        settings.get.side_effect = lambda key: {"low_spacing": 4.0, "high_spacing": 0.5}[key]
        builder = Case_Builder.from_settings(settings, self.window)
        self.assertIs(builder.window, self.window)

        low_image = builder.resample_low(self.image)[0]
        self.assertEqual(low_image.dims, (8, 8, 8))
        high_image, high_labels = builder.resample_high(self.image, self.labels)
        self.assertEqual(high_image.dims, (64, 64, 64))
        self.assertEqual(high_labels.spacing, (0.5, 0.5, 0.5))
        self.assertTrue(high_labels.is_label)

    def test_resample(self):
        low_image, low_labels = self.builder.resample_low(self.image, self.labels)
        self.assertEqual(low_image.dims, (16, 16, 16))
        self.assertEqual(low_image.spacing, (2.0, 2.0, 2.0))
        self.assertTrue(low_labels.is_label)
        self.assertIsNone(self.builder.resample_low(self.image)[1])

        # Without a high resolution spacing the native volumes are kept.
        high_image, high_labels = self.builder.resample_high(self.image, self.labels)
        self.assertIs(high_image, self.image)
        self.assertIs(high_labels, self.labels)

    def test_build_stage1(self):
        case = self.builder.build_stage1("case_00002", self.image, self.labels)
        self.assertEqual(case.name, "case_00002")
        self.assertEqual(case.dims, (16, 16, 16))
        self.assertTrue(case.has_labels)
        self.assertFalse(case.clip)
        np.testing.assert_array_equal(case.active, self.window.apply(case.image))
        self.assertFalse(case.active[0, 0, 0])

        case = self.builder.build_stage1("case_00003", self.image)
        self.assertFalse(case.has_labels)

    def test_build_stage2(self):
        low_grid = self.builder.resample_low(self.image)[0]
        components = [
            Component_ROI(0, [[4, 8, 8], [5, 8, 8]]),
            Component_ROI(3, [[12, 8, 8]])
        ]
        cases = self.builder.build_stage2("scan", self.image, components,
                                          low_grid, self.labels)
        self.assertEqual([case.name for case in cases], ["scan.0", "scan.3"])

        first = cases[0]
        self.assertEqual(first.dims, (4, 2, 2))
        self.assertEqual(first.offset, (8, 16, 16))
        self.assertEqual(first.image.origin, (8.0, 16.0, 16.0))
        self.assertTrue(first.clip)
        self.assertTrue(np.all(first.active))
        np.testing.assert_array_equal(first.image.values,
                                      self.image.values[8:12, 16:18, 16:18])
        np.testing.assert_array_equal(first.labels.values,
                                      self.labels.values[8:12, 16:18, 16:18])

        second = cases[1]
        self.assertEqual(second.dims, (2, 2, 2))
        self.assertEqual(second.offset, (24, 16, 16))
        self.assertTrue(second.has_labels)

    def test_build_stage2_lifted(self):
        low_grid = self.builder.resample_low(self.image)[0]
        component = lift_to_highres(Component_ROI(1, [[4, 8, 8], [5, 9, 8]]),
                                    low_grid, self.image)
        case = self.builder.build_stage2("scan", self.image, [component], low_grid)[0]
        self.assertEqual(case.dims, (4, 4, 2))
        self.assertFalse(case.has_labels)
        np.testing.assert_array_equal(case.active, component.high_mask)
        self.assertEqual(case.active.sum(), 16)

        self.assertEqual(self.builder.build_stage2("scan", self.image, [], low_grid), [])
