from ..pipeline.Case_Builder import Case_Builder
from ..pipeline.Component_ROI import connected_components, filter_components
from ..pipeline.ROI_Finder import dilate
from ..pipeline.Two_Stage_Pipeline import Two_Stage_Pipeline
from ..training.Augment_Params import Augment_Params
from ..training.Train_Config import Train_Config
from ..training.Trainer import Trainer, train_stage
from .Command import Command

class Train_Command(Command):
    """
    Train a Stage 1 or Stage 2 network on the scans of a data directory or on
    synthetic phantoms, holding out one cross-validation fold.

    Stage 2 cases are the components found by a Stage 1 checkpoint if one is
    given, and otherwise the dilated components of the ground truth
    foreground.
    """

    COMPONENTS = ("command", "network", "training", "augmentation",
                  "pipeline", "phantom")

    def get_train_config(self):
        config = Train_Config.from_settings(self.get_settings("training"),
                                            seed=self.seed)
        if self.deterministic:
            config = config.replace(loader_workers=1)

        return config

    def get_truth_components(self, builder, image, labels):
        settings = self.get_settings("pipeline")
        low_image, low_labels = builder.resample_low(image, labels)
        roi = dilate(low_labels.values > 0, diameter=settings.get("dilate"))
        components = connected_components(roi, connectivity=settings.get("connectivity"))
        return filter_components(components, settings.get("min_size")), low_image

    def build_cases(self, scans):
        """
        Create the cases of every scan for the configured stage. Stage 2 scans
        become lists of component cases.
        """

        window = self.get_window()
        builder = Case_Builder.from_settings(self.get_settings("pipeline"), window)
        if self.get_settings("command").get("stage") == 1:
            return [builder.build_stage1(name, image, labels)
                    for name, image, labels in scans]

        pipeline = None
        if self.get_settings("command").get("stage1_checkpoint"):
            pipeline = Two_Stage_Pipeline.from_settings(self.get_settings("pipeline"),
                                                        window,
                                                        self._thread_manager,
                                                        stage1_model=self.load_model("stage1_checkpoint"),
                                                        workers=self.workers)

        cases = []
        for name, image, labels in scans:
            if pipeline is not None:
                components, low_grid = pipeline.find_components(image, name=name)
            else:
                components, low_grid = self.get_truth_components(builder, image, labels)

            if not components:
                print("Scan {} has no regions of interest, skipping".format(name))
                continue

            high_image, high_labels = builder.resample_high(image, labels)
            cases.append(builder.build_stage2(name, high_image, components,
                                              low_grid, labels=high_labels))

        return cases

    def run(self):
        settings = self.get_settings("command")
        out = self.require("out")
        config = self.get_train_config()
        model_config = self.get_model_config()
        augment_params = Augment_Params.from_settings(self.get_settings("augmentation"))

        scans = self.build_cases(self.load_scans())
        fold = settings.get("fold")
        if fold >= config.folds:
            raise ValueError("Fold {} does not exist with {} folds".format(fold, config.folds))
        if len(scans) < config.folds:
            print("Only {} scans for {} folds, training on all scans".format(len(scans), config.folds))
            fold = None

        def callback(epoch, log):
            message = "Epoch {}: train loss {:.6f}".format(epoch, log.get_losses(Trainer.TRAIN)[-1])
            validation = log.get_losses(Trainer.VALIDATION)
            if len(validation) == epoch + 1:
                message += ", validation loss {:.6f}".format(validation[-1])

            print(message)

        _, log = train_stage(scans, config, model_config, fold=fold,
                             thread_manager=self._thread_manager,
                             augment_params=augment_params,
                             checkpoint_path=out, callback=callback,
                             extra={"stage": settings.get("stage")})

        log_path = settings.get("loss_log") or "{}.loss.csv".format(out)
        log.write(log_path)
        print("Checkpoint written to {}, loss log to {}".format(out, log_path))
