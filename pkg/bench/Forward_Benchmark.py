import time
import numpy as np
from ..network.Dense_UNet import Dense_UNet
from ..network.Model_Config import Model_Config
from ..network.Sparse_UNet import Sparse_UNet
from ..sparse.Sparse_Tensor import Sparse_Tensor
from .Bench_Report import Bench_Report
from .Blob_Generator import Blob_Generator
from .Memory_Tracker import Memory_Tracker

class Forward_Benchmark(object):
    """
    Sparse versus dense forward pass benchmark.

    Both arms evaluate the same network parameters on the same synthetic
    inputs. The sparse arm runs the `Sparse_UNet` on the active voxels and
    the dense arm runs a `Dense_UNet` on the full masked volume. Timings
    exclude the creation of the inputs.
    """

    SPARSE = "sparse"
    DENSE = "dense"
    MODES = (SPARSE, DENSE)

    # Number of expanded activation buffers that are alive at once in a block.
    ACTIVATION_BUFFERS = 6

    def __init__(self, model_config, seed=0, memory_budget=8000000000,
                 repetitions=5, warmup_runs=1, workers=1, dtype=np.float32):
        if not isinstance(model_config, Model_Config):
            raise TypeError("'model_config' must be a Model_Config object")
        if repetitions < 5:
            raise ValueError("At least 5 repetitions are required, not {}".format(repetitions))
        if warmup_runs < 0:
            raise ValueError("Warmup runs must not be negative")

        self._config = model_config
        self._seed = seed
        self._memory_budget = int(memory_budget)
        self._repetitions = int(repetitions)
        self._warmup_runs = int(warmup_runs)
        self._workers = int(workers)
        self._dtype = dtype

        self._model = Sparse_UNet(model_config, seed=seed, dtype=dtype)
        self._dense_model = Dense_UNet(self._model)
        self._generator = Blob_Generator()

    @classmethod
    def from_settings(cls, settings, network_settings=None, seed=0, workers=1):
        """
        Create the benchmark from the "benchmark" settings component. The
        network uses the desk-scale widths and depths of the benchmark on top
        of the `network_settings` component, if given.
        """

        if network_settings is not None:
            config = Model_Config.from_settings(network_settings)
        else:
            config = Model_Config()

        config = config.replace(stage_widths=list(settings.get("bench_widths")),
                                stage_depths=list(settings.get("bench_depths")))
        return cls(config, seed=seed,
                   memory_budget=settings.get("memory_budget"),
                   repetitions=settings.get("repetitions"),
                   warmup_runs=settings.get("warmup_runs"), workers=workers)

    @property
    def model(self):
        return self._model

    @property
    def repetitions(self):
        return self._repetitions

    def make_inputs(self, size, occupancy, batch):
        """
        Create `batch` synthetic volumes of `size^3` voxels with exactly
        `floor(occupancy * size^3)` active voxels each.

        Returns the `(B, X, Y, Z)` values, which are zero outside the active
        voxels, and the boolean `(B, X, Y, Z)` occupancy masks.
        """

        if self._generator.get_target(size, occupancy) == 0:
            raise ValueError("Occupancy {} leaves no active voxels at size {}".format(occupancy, size))

        rng = np.random.RandomState([self._seed % 2**32, size, batch])
        masks = np.stack([
            self._generator.generate(size, occupancy, rng) for _ in range(batch)
        ])
        values = rng.standard_normal(masks.shape).astype(self._dtype) * masks
        return values, masks

    def make_sparse_input(self, values, masks):
        """
        Convert dense inputs to a batched sparse tensor on a new coordinate
        pyramid, so that its kernel maps are not built yet.
        """

        tensors = [
            Sparse_Tensor.sparsify_dense(values[index], masks[index])
            for index in range(masks.shape[0])
        ]
        st = Sparse_Tensor.batch(tensors)
        return st.with_feats(st.values.astype(self._dtype))

    def estimate_memory(self, mode, size, occupancy, batch):
        """
        Estimate the peak number of bytes of a forward pass.

        The estimate counts the expanded activations of the finest stage,
        which dominate the memory use, and for the sparse arm also the kernel
        map pairs of that stage.
        """

        config = self._config
        itemsize = np.dtype(self._dtype).itemsize
        width = config.stage_widths[0] * config.mlp_expansion
        if mode == self.DENSE:
            rows = batch * size ** 3
            return rows * width * itemsize * self.ACTIVATION_BUFFERS

        rows = batch * self._generator.get_target(size, occupancy)
        pairs = rows * config.conv_kernel ** 3 * 2 * np.dtype(np.int64).itemsize
        return rows * width * itemsize * self.ACTIVATION_BUFFERS + pairs

    def _run_sparse(self, values, masks, st=None):
        if st is None:
            st = self.make_sparse_input(values, masks)

        return self._model.forward(st)

    def _run_dense(self, values, masks):
        return self._dense_model.forward(values[..., np.newaxis], masks)

    def _time(self, function, *args):
        start = time.perf_counter()
        function(*args)
        return time.perf_counter() - start

    def compare_outputs(self, sparse_outputs, dense_outputs):
        """
        Compute the maximum absolute difference between the sparse and dense
        head outputs on the active voxels of every head.
        """

        if len(sparse_outputs) != len(dense_outputs):
            raise ValueError("Expected {} dense head outputs, got {}".format(len(sparse_outputs), len(dense_outputs)))

        error = 0.0
        for sparse_output, dense_output in zip(sparse_outputs, dense_outputs):
            batch_size = dense_output.shape[0]
            dims = dense_output.shape[1:4]
            mask = sparse_output.get_mask(dims, batch_size=batch_size)
            dense_sparse = sparse_output.densify(dims, batch_size=batch_size)
            if np.any(mask):
                difference = np.abs(dense_sparse[mask] - dense_output[mask])
                error = max(error, float(difference.max()))

        return error

    def check_equivalence(self, size, occupancy, batch=1):
        """
        Run both arms once on the same inputs and return the maximum
        absolute difference of the head outputs on the active voxels.
        """

        values, masks = self.make_inputs(size, occupancy, batch)
        sparse_outputs = self._run_sparse(values, masks)
        dense_outputs = self._run_dense(values, masks)
        return self.compare_outputs(sparse_outputs, dense_outputs)

    def _oom_report(self, mode, size, occupancy, batch):
        return Bench_Report(mode, size, occupancy, batch, self._repetitions,
                            workers=self._workers, oom=True)

    def bench_forward(self, mode, size, occupancy, batch=1):
        """
        Benchmark the forward pass of one arm.

        The sparse arm reports the times with cached kernel maps as well as
        the times including the construction of the coordinate pyramid and
        kernel maps. An arm whose estimated or measured peak memory exceeds
        the memory budget is reported as out of memory.
        """

        if mode not in self.MODES:
            raise ValueError("Unknown benchmark mode '{}'".format(mode))

        if self.estimate_memory(mode, size, occupancy, batch) > self._memory_budget:
            return self._oom_report(mode, size, occupancy, batch)

        values, masks = self.make_inputs(size, occupancy, batch)

        try:
            with Memory_Tracker() as tracker:
                if mode == self.SPARSE:
                    self._run_sparse(values, masks)
                else:
                    self._run_dense(values, masks)
        except MemoryError:
            return self._oom_report(mode, size, occupancy, batch)

        if tracker.peak > self._memory_budget:
            return self._oom_report(mode, size, occupancy, batch)

        times = []
        map_times = []
        if mode == self.SPARSE:
            for _ in range(self._warmup_runs):
                self._run_sparse(values, masks)

            for _ in range(self._repetitions):
                map_times.append(self._time(self._run_sparse, values, masks))

            st = self.make_sparse_input(values, masks)
            self._run_sparse(values, masks, st)
            for _ in range(self._repetitions):
                times.append(self._time(self._run_sparse, values, masks, st))
        else:
            for _ in range(self._warmup_runs):
                self._run_dense(values, masks)

            for _ in range(self._repetitions):
                times.append(self._time(self._run_dense, values, masks))

        return Bench_Report(mode, size, occupancy, batch, self._repetitions,
                            times=times, map_times=map_times,
                            memories=[tracker.peak], workers=self._workers)
