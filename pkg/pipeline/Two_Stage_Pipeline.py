import numpy as np
from ..volume.Multi_Label_Mask import Multi_Label_Mask
from .Case_Builder import Case_Builder
from .Component_ROI import connected_components, filter_components, lift_to_highres
from .ROI_Finder import ROI_Finder
from .Segmenter import Segmenter, reassemble

class Two_Stage_Pipeline(object):
    """
    Inference of a scan with a Stage 1 network on the low resolution HU
    window and a Stage 2 network on the high resolution components of the
    dilated Stage 1 predictions.
    """

    def __init__(self, window, thread_manager, stage1_model=None,
                 stage2_model=None, threshold=0.1, diameter=11, min_size=50,
                 connectivity=26, binarize_threshold=0.5, low_spacing=1.99,
                 high_spacing=None, max_voxels=4000000, workers=1):
        self._builder = Case_Builder(window, low_spacing=low_spacing,
                                     high_spacing=high_spacing)
        self._finder = ROI_Finder(threshold=threshold, diameter=diameter)
        self._thread_manager = thread_manager
        self._stage1_model = stage1_model
        self._stage2_model = stage2_model
        self._min_size = int(min_size)
        self._connectivity = int(connectivity)
        self._binarize_threshold = float(binarize_threshold)
        self._max_voxels = int(max_voxels)
        self._workers = int(workers)

    @classmethod
    def from_settings(cls, settings, window, thread_manager, stage1_model=None,
                      stage2_model=None, workers=1):
        """
        Create the pipeline from the "pipeline" settings component.
        """

        return cls(window, thread_manager, stage1_model=stage1_model,
                   stage2_model=stage2_model,
                   threshold=settings.get("threshold"),
                   diameter=settings.get("dilate"),
                   min_size=settings.get("min_size"),
                   connectivity=settings.get("connectivity"),
                   binarize_threshold=settings.get("binarize_threshold"),
                   low_spacing=settings.get("low_spacing"),
                   high_spacing=settings.get("high_spacing"),
                   max_voxels=settings.get("max_component_voxels"),
                   workers=workers)

    @property
    def builder(self):
        return self._builder

    def predict_stage1(self, image, name="case"):
        """
        Run Stage 1 on the intensity grid `image`.

        Returns the dense `(X, Y, Z, 3)` probabilities of the finest head,
        zero outside the HU window, and the low resolution grid they are
        defined on.
        """

        if self._stage1_model is None:
            raise RuntimeError("A Stage 1 model is required to find regions of interest")

        case = self._builder.build_stage1(name, image)
        st, _ = case.to_tensors()
        if st.is_empty:
            return np.zeros(case.dims + (3,)), case.image

        dtype = self._stage1_model.stem.weights.dtype
        probs = self._finder.predict_probabilities(self._stage1_model,
                                                   st.with_feats(st.values.astype(dtype)),
                                                   case.dims)
        return probs, case.image

    def find_components(self, image, name="case", stage1=None):
        """
        Find the Stage 1 components of the intensity grid `image`.

        The `stage1` probabilities and low resolution grid of
        `predict_stage1` are computed unless given. Returns the retained
        components, which are not yet lifted, and the low resolution grid
        they are defined on.
        """

        probs, low_grid = self.predict_stage1(image, name=name) if stage1 is None else stage1
        roi = self._finder.dilate(self._finder.get_roi(probs))
        components = connected_components(roi, connectivity=self._connectivity)
        return filter_components(components, self._min_size), low_grid

    def get_low_mask(self, probs):
        """
        Binarize the dense Stage 1 probabilities `probs` per channel into a
        low resolution multi-label mask.
        """

        return Multi_Label_Mask(np.moveaxis(probs > self._binarize_threshold, -1, 0))

    def segment_low(self, image, name="case"):
        """
        Segment the intensity grid `image` with Stage 1 alone.

        Returns the low resolution multi-label mask and the grid it is
        defined on.
        """

        probs, low_grid = self.predict_stage1(image, name=name)
        return self.get_low_mask(probs), low_grid

    def lift_components(self, components, low_grid, high_image):
        return [lift_to_highres(component, low_grid, high_image)
                for component in components]

    def segment(self, image, components=None, low_grid=None, name="case"):
        """
        Segment the intensity grid `image`.

        Stage 1 components are computed unless `components` on `low_grid` are
        given. Returns the multi-label mask and the high resolution grid it
        is defined on.
        """

        if self._stage2_model is None:
            raise RuntimeError("A Stage 2 model is required to segment components")

        if components is None:
            components, low_grid = self.find_components(image, name=name)

        high_image, _ = self._builder.resample_high(image)
        if not components:
            return Multi_Label_Mask.empty(high_image.dims), high_image

        components = self.lift_components(components, low_grid, high_image)
        cases = self._builder.build_stage2(name, high_image, components, low_grid)
        segmenter = Segmenter(self._stage2_model, self._thread_manager,
                              max_voxels=self._max_voxels,
                              workers=self._workers)
        predictions = segmenter.segment_components(cases)
        mask = reassemble(predictions, high_image.dims,
                          threshold=self._binarize_threshold)
        return mask, high_image
