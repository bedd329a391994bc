import csv
import io
import numpy as np

class Bench_Report(object):
    """
    Timing and peak memory measurements of one benchmark arm.

    An arm that exceeded the memory budget has no measurements and is
    reported as out of memory.
    """

    OOM = "OOM"
    CSV_COLUMNS = (
        "mode", "size", "occupancy", "batch", "repetitions", "workers",
        "time_mean", "time_std", "map_time_mean", "map_time_std",
        "memory_mean", "memory_std"
    )

    def __init__(self, mode, size, occupancy, batch, repetitions, times=None,
                 map_times=None, memories=None, workers=1, oom=False):
        if not oom and repetitions < 5:
            raise ValueError("At least 5 repetitions are required, not {}".format(repetitions))
        if not oom and (times is None or len(times) != repetitions):
            raise ValueError("Expected {} timed runs".format(repetitions))

        self.mode = mode
        self.size = int(size)
        self.occupancy = float(occupancy)
        self.batch = int(batch)
        self.repetitions = int(repetitions)
        self.workers = int(workers)
        self.oom = bool(oom)
        self.times = [] if times is None else [float(value) for value in times]
        self.map_times = [] if map_times is None else [float(value) for value in map_times]
        self.memories = [] if memories is None else [int(value) for value in memories]

    @staticmethod
    def _statistics(values):
        if not values:
            return None, None

        return float(np.mean(values)), float(np.std(values))

    @property
    def time(self):
        return self._statistics(self.times)

    @property
    def map_time(self):
        return self._statistics(self.map_times)

    @property
    def memory(self):
        return self._statistics(self.memories)

    def as_row(self):
        """
        Retrieve the CSV values of the report.
        """

        def cells(statistics):
            if self.oom:
                return [self.OOM, self.OOM]
            if statistics[0] is None:
                return ["", ""]

            return [repr(statistics[0]), repr(statistics[1])]

        return [self.mode, str(self.size), repr(self.occupancy), str(self.batch),
                str(self.repetitions), str(self.workers)] + \
            cells(self.time) + cells(self.map_time) + cells(self.memory)

    @classmethod
    def from_row(cls, row):
        """
        Recreate the summary statistics of a report from a CSV row.

        Returns a dictionary keyed by the CSV columns with parsed values.
        """

        data = dict(zip(cls.CSV_COLUMNS, row))
        parsed = {
            "mode": data["mode"],
            "size": int(data["size"]),
            "occupancy": float(data["occupancy"]),
            "batch": int(data["batch"]),
            "repetitions": int(data["repetitions"]),
            "workers": int(data["workers"])
        }
        for column in cls.CSV_COLUMNS[6:]:
            value = data[column]
            if value == cls.OOM:
                parsed[column] = cls.OOM
            elif value == "":
                parsed[column] = None
            else:
                parsed[column] = float(value)

        return parsed

def _format_statistics(statistics, scale=1.0, digits=3):
    if statistics[0] is None:
        return "-"

    return "{0:.{2}f} ± {1:.{2}f}".format(statistics[0] * scale, statistics[1] * scale, digits)

def format_markdown(reports):
    lines = [
        "| Model | Resolution | Occupancy | Batch | Time (s) | Time with maps (s) | Memory (MB) |",
        "|---|---|---|---|---|---|---|"
    ]
    for report in reports:
        resolution = "{0}x{0}x{0}".format(report.size)
        if report.oom:
            cells = [report.OOM] * 3
        else:
            cells = [
                _format_statistics(report.time),
                _format_statistics(report.map_time),
                _format_statistics(report.memory, scale=1e-6, digits=1)
            ]

        lines.append("| {} | {} | {:.2f} | {} | {} |".format(report.mode, resolution, report.occupancy, report.batch, " | ".join(cells)))

    return "\n".join(lines) + "\n"

def format_csv(reports):
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(Bench_Report.CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.as_row())

    return output.getvalue()

def report_emit(reports, report_format="markdown", path=None):
    """
    Format the `reports` as a "csv" or "markdown" table and write it to
    `path` if it is given. Returns the formatted text.
    """

    if report_format == "csv":
        text = format_csv(reports)
    elif report_format == "markdown":
        text = format_markdown(reports)
    else:
        raise ValueError("Unknown report format '{}'".format(report_format))

    if path is not None:
        with open(path, 'w', newline='') as report_file:
            report_file.write(text)

    return text

def read_csv(path):
    with open(path, newline='') as report_file:
        reader = csv.reader(report_file)
        header = next(reader, None)
        if header is None or tuple(header) != Bench_Report.CSV_COLUMNS:
            raise IOError("Benchmark report '{}' has an unexpected header".format(path))

        return [Bench_Report.from_row(row) for row in reader]
