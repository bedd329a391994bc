import os
import numpy as np
from ..pipeline.Dice_Report import Dice_Report
from ..volume.Multi_Label_Mask import Multi_Label_Mask
from ..volume.Resampler import Resampler
from ..volume.Volume_File import Volume_File
from .Command import Command

class Eval_Command(Command):
    """
    Score predicted label volumes against the ground truth labels.

    A single prediction is given with `--in` and `--labels`. With
    `--pred-dir`, every case of `--data-dir` is scored against the volume
    named after it, followed by the mean over the cases. With `--metrics`,
    the mean rows of metrics files of several folds are averaged.
    """

    COMPONENTS = ("command",)

    PREDICTION_EXTENSIONS = (".rvol", ".nii", ".nii.gz")

    def score(self, prediction, truth, case):
        """
        Compute the Dice report of the label grids `prediction` and `truth`.

        Labels with another spacing than the prediction, such as those of
        a low resolution Stage 1 prediction, are resampled to its grid with
        nearest neighbor interpolation first.
        """

        if not np.allclose(prediction.spacing, truth.spacing):
            truth = Resampler().resample(truth, prediction.spacing, mode="nearest")

        if prediction.dims != truth.dims:
            raise ValueError("Prediction dimensions {} do not match label dimensions {}".format(prediction.dims, truth.dims))

        return Dice_Report.dsc(Multi_Label_Mask.from_labels(prediction),
                               Multi_Label_Mask.from_labels(truth), case=case)

    def _find_prediction(self, directory, name):
        names = [name + extension for extension in self.PREDICTION_EXTENSIONS]
        for candidate in names:
            path = os.path.join(directory, candidate)
            if os.path.isfile(path) or os.path.isfile(path + Volume_File.SIDECAR_EXTENSION):
                return path

        raise IOError("Directory '{}' holds no prediction for case '{}'".format(directory, name))

    def score_directory(self):
        """
        Score the predictions of `--pred-dir` against the labels of the cases
        of `--data-dir`.
        """

        settings = self.get_settings("command")
        pred_dir = self.require("pred_dir")
        data_dir = self.require("data_dir")
        for directory in (pred_dir, data_dir):
            if not os.path.isdir(directory):
                raise IOError("Directory '{}' does not exist".format(directory))

        names = list(settings.get("cases"))
        if not names:
            names = sorted(name for name in os.listdir(data_dir)
                           if os.path.isdir(os.path.join(data_dir, name)))
        if not names:
            raise ValueError("Data directory '{}' holds no cases".format(data_dir))

        reports = []
        for name in names:
            prediction = self.load_labels(self._find_prediction(pred_dir, name))
            labels_path = self._find_volume(os.path.join(data_dir, name), self.LABEL_NAMES)
            reports.append(self.score(prediction, self.load_labels(labels_path), name))

        return reports

    def aggregate_folds(self, paths):
        """
        Retrieve the mean report of every metrics file in `paths`, using its
        "mean" row when present and the mean of its cases otherwise.
        """

        reports = []
        for path in paths:
            if not os.path.isfile(path):
                raise IOError("Metrics file '{}' does not exist".format(path))

            fold_reports = Dice_Report.read_metrics(path)
            means = [report for report in fold_reports if report.case == "mean"]
            if means:
                report = means[0]
            else:
                report = Dice_Report.mean(fold_reports)

            report.case = os.path.basename(path).split('.')[0]
            reports.append(report)

        return reports

    def print_table(self, reports):
        names = Multi_Label_Mask.CHANNEL_NAMES + (Dice_Report.ALL,)
        width = max(len("case"), max(len(str(report.case)) for report in reports))
        print("{:<{}}  {}".format("case", width, "  ".join("{:>14}".format(name) for name in names)))
        for report in reports:
            scores = report.scores + (report.all,)
            print("{:<{}}  {}".format(report.case, width, "  ".join("{:>14.4f}".format(score) for score in scores)))

    def run(self):
        settings = self.get_settings("command")
        metrics = list(settings.get("metrics"))
        if metrics or settings.get("pred_dir"):
            reports = self.aggregate_folds(metrics) if metrics else self.score_directory()
            reports.append(Dice_Report.mean(reports))
            self.print_table(reports)
        else:
            path = self.require("in")
            case = settings.get("case")
            if not case:
                case = os.path.basename(path).split('.')[0]

            report = self.score(self.load_labels(path),
                                self.load_labels(self.require("labels")), case)
            for channel, score in sorted(report.as_dict().items()):
                print("{}: {:.4f}".format(channel, score))

            reports = [report]

        out = settings.get("out")
        if out:
            Dice_Report.write_metrics(out, reports)
