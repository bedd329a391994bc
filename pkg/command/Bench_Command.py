from ..bench.Bench_Report import report_emit
from ..bench.Forward_Benchmark import Forward_Benchmark
from .Command import Command

class Bench_Command(Command):
    """
    Benchmark the sparse and dense forward passes on synthetic volumes and
    emit the reports as a CSV or markdown table.
    """

    COMPONENTS = ("command", "network", "benchmark")

    def run(self):
        settings = self.get_settings("benchmark")
        benchmark = Forward_Benchmark.from_settings(settings,
                                                    self.get_settings("network"),
                                                    seed=self.seed,
                                                    workers=self.workers)

        size = settings.get("bench_size")
        batch = settings.get("bench_batch")
        reports = []
        for occupancy in settings.get("occupancy"):
            for mode in settings.get("arms"):
                report = benchmark.bench_forward(mode, size, occupancy, batch)
                if report.oom:
                    print("{} at occupancy {}: OOM".format(mode, occupancy))
                else:
                    print("{} at occupancy {}: {:.4f} s".format(mode, occupancy, report.time[0]))

                reports.append(report)

        path = self.get_settings("command").get("out") or None
        text = report_emit(reports, settings.get("report_format"), path=path)
        print(text)
