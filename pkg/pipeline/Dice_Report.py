import csv
import numpy as np
from ..volume.Multi_Label_Mask import Multi_Label_Mask

class Dice_Report(object):
    """
    Dice similarity coefficients of the three output channels of a case and
    their unweighted mean "All".
    """

    ALL = "All"

    def __init__(self, scores, case=None):
        scores = tuple(float(score) for score in scores)
        if len(scores) != len(Multi_Label_Mask.CHANNEL_NAMES):
            raise ValueError("Expected {} channel scores, got {}".format(len(Multi_Label_Mask.CHANNEL_NAMES), len(scores)))

        self._scores = scores
        self.case = case

    @classmethod
    def dsc(cls, pred, truth, case=None):
        """
        Compare the `Multi_Label_Mask` objects `pred` and `truth` over the
        full grid. A channel that is empty in both masks scores one.
        """

        if pred.dims != truth.dims:
            raise ValueError("Prediction dimensions {} do not match truth dimensions {}".format(pred.dims, truth.dims))

        scores = []
        for index in range(len(Multi_Label_Mask.CHANNEL_NAMES)):
            predicted = pred.channel(index)
            actual = truth.channel(index)
            total = int(predicted.sum()) + int(actual.sum())
            if total == 0:
                scores.append(1.0)
            else:
                overlap = int(np.logical_and(predicted, actual).sum())
                scores.append(2.0 * overlap / total)

        return cls(scores, case=case)

    @property
    def scores(self):
        return self._scores

    @property
    def all(self):
        return sum(self._scores) / len(self._scores)

    def as_dict(self):
        data = dict(zip(Multi_Label_Mask.CHANNEL_NAMES, self._scores))
        data[self.ALL] = self.all
        return data

    @classmethod
    def mean(cls, reports, case="mean"):
        """
        Average the channel scores of `reports` into a single report.
        """

        if not reports:
            raise ValueError("Cannot average an empty list of reports")

        scores = np.mean([report.scores for report in reports], axis=0)
        return cls(scores, case=case)

    @classmethod
    def read_metrics(cls, path):
        """
        Read the reports of a metrics CSV file written by `write_metrics`.
        Rows of a case appear in channel order; the "All" rows are derived
        and skipped.
        """

        scores = {}
        with open(path, newline='') as metrics_file:
            reader = csv.reader(metrics_file)
            header = next(reader, None)
            if header != ["case", "channel", "dsc"]:
                raise ValueError("File '{}' is not a metrics file".format(path))

            for case, channel, score in reader:
                if channel == cls.ALL:
                    continue
                if channel not in Multi_Label_Mask.CHANNEL_NAMES:
                    raise ValueError("Unknown channel '{}' in '{}'".format(channel, path))

                scores.setdefault(case, {})[channel] = float(score)

        reports = []
        for case, channels in scores.items():
            if len(channels) != len(Multi_Label_Mask.CHANNEL_NAMES):
                raise ValueError("Case '{}' in '{}' lacks channel scores".format(case, path))

            reports.append(cls([channels[name] for name in Multi_Label_Mask.CHANNEL_NAMES], case=case))

        return reports

    @staticmethod
    def write_metrics(path, reports):
        """
        Write the `reports` as CSV rows of case, channel and score.
        """

        with open(path, 'w', newline='') as metrics_file:
            writer = csv.writer(metrics_file)
            writer.writerow(["case", "channel", "dsc"])
            for report in reports:
                names = Multi_Label_Mask.CHANNEL_NAMES + (Dice_Report.ALL,)
                for name, score in zip(names, report.scores + (report.all,)):
                    writer.writerow([report.case, name, "{:.6f}".format(score)])

    def __repr__(self):
        return "Dice_Report({})".format(', '.join("{}={:.4f}".format(name, score) for name, score in self.as_dict().items()))
