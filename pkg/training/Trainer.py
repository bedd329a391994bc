import math
import numpy as np
from ..core.Thread_Manager import Thread_Manager
from ..network.Checkpoint import save_checkpoint
from ..network.Sparse_UNet import Sparse_UNet
from ..nn.Tape import Tape
from ..sparse.Sparse_Tensor import Sparse_Tensor
from .AdamW import AdamW
from .Augmenter import Augmenter
from .Case_Loader import Case_Loader
from .Dice_Loss import deep_supervised_loss
from .K_Fold import get_fold, kfold_split
from .Loss_Log import Loss_Log
from .Schedule import lr_at_epoch

class Trainer(object):
    """
    Training loop of one stage for a sparse U-Net.

    Every batch runs a forward and backward pass of the deep-supervised Dice
    loss. Gradients of `grad_accum` consecutive batches are averaged before
    an AdamW update at the scheduled learning rate, so an epoch with `n`
    batches performs `ceil(n / grad_accum)` updates.
    """

    TRAIN = "train"
    VALIDATION = "validation"

    def __init__(self, model, config, thread_manager, augment_params=None):
        self._model = model
        self._config = config
        self._thread_manager = thread_manager
        self._augment_params = augment_params
        self._augmenter = Augmenter()
        self._optimizer = AdamW(model.parameters(), config)
        self._dtype = model.stem.weights.dtype

    @property
    def model(self):
        return self._model

    @property
    def update_count(self):
        return self._optimizer.step_count

    def make_batch(self, items):
        """
        Combine prepared `(tensor, targets)` items into one input tensor and
        a label tensor on the same rows.
        """

        if len(items) == 1:
            st, targets = items[0]
            st = st.with_feats(st.values.astype(self._dtype))
            return st, st.with_feats(targets)

        joined = [st.with_feats(np.concatenate([st.values, targets], axis=1))
                  for st, targets in items]
        batched = Sparse_Tensor.batch(joined)
        values = batched.values
        inputs = batched.with_feats(values[:, :1].astype(self._dtype))
        return inputs, batched.with_feats(values[:, 1:])

    def compute_loss(self, inputs, labels):
        """
        Run the network and compute the deep-supervised loss of a batch.

        Returns the loss variable and the weighted losses per channel.
        """

        heads = self._model.forward(inputs)
        loss, channels = deep_supervised_loss(heads, labels,
                                              eps=self._config.dice_eps,
                                              return_channels=True)
        if not np.isfinite(loss.item()):
            raise RuntimeError("Training loss is not finite")

        return loss, channels

    def validate(self, cases):
        """
        Compute the mean channel losses over unaugmented `cases`.
        """

        totals = np.zeros(3)
        for case in cases:
            inputs, targets = case.to_tensors()
            inputs = inputs.with_feats(inputs.values.astype(self._dtype))
            _, channels = self.compute_loss(inputs, inputs.with_feats(targets))
            totals += channels

        return totals / max(len(cases), 1)

    def train_epoch(self, epoch, cases):
        """
        Train one epoch on `cases` in a seeded random order.

        Returns the mean channel losses over the batches.
        """

        config = self._config
        order = np.random.RandomState([config.seed % 2**32, epoch]).permutation(len(cases))
        loader = Case_Loader([cases[index] for index in order],
                             self._thread_manager, augmenter=self._augmenter,
                             params=self._augment_params, seed=config.seed,
                             epoch=epoch, workers=config.loader_workers)

        num_batches = int(math.ceil(len(cases) / float(config.batch_size)))
        num_updates = int(math.ceil(num_batches / float(config.grad_accum)))

        totals = np.zeros(3)
        items = []
        batch_number = 0
        update_number = 0
        try:
            for index, item in enumerate(loader):
                items.append(item)
                if len(items) < config.batch_size and index < len(cases) - 1:
                    continue

                group_start = (batch_number // config.grad_accum) * config.grad_accum
                group_size = min(config.grad_accum, num_batches - group_start)

                inputs, labels = self.make_batch(items)
                items = []
                with Tape() as tape:
                    loss, channels = self.compute_loss(inputs, labels)

                tape.backward(loss, np.array(1.0 / group_size))
                tape.clear()
                totals += channels
                batch_number += 1

                if batch_number - group_start == group_size:
                    lr = lr_at_epoch(config, epoch, update_number / float(num_updates))
                    self._optimizer.step(lr)
                    self._optimizer.zero_grad()
                    update_number += 1
        finally:
            loader.stop()

        return totals / max(batch_number, 1)

    def train(self, train_cases, validation_cases=None, log=None,
              callback=None):
        """
        Train for all epochs of the configuration.

        Losses per channel are recorded in the `Loss_Log` object `log`. The
        `callback` is called with the epoch and the log after every epoch.
        """

        if not train_cases:
            raise ValueError("Cannot train on an empty set of cases")

        if log is None:
            log = Loss_Log()

        for epoch in range(self._config.epochs):
            log.add(epoch, self.TRAIN, self.train_epoch(epoch, train_cases))
            if validation_cases and self._config.validate:
                log.add(epoch, self.VALIDATION, self.validate(validation_cases))

            if callback is not None:
                callback(epoch, log)

        return log

def split_cases(scans, folds, fold, seed=0):
    """
    Split `scans`, each a case or a list of the component cases of one scan,
    into flat lists of training and validation cases for the held-out `fold`.
    A `fold` of `None` trains on all scans.
    """

    def flatten(indices):
        cases = []
        for index in indices:
            scan = scans[index]
            cases.extend(scan if isinstance(scan, (list, tuple)) else [scan])

        return cases

    if fold is None:
        return flatten(range(len(scans))), []

    train, validation = get_fold(kfold_split(len(scans), folds, seed), fold)
    return flatten(train), flatten(validation)

def train_stage(scans, config, model_config, fold=None, thread_manager=None,
                augment_params=None, checkpoint_path=None, callback=None,
                extra=None, dtype=np.float32):
    """
    Train a new network instance on the training part of `scans` for the
    held-out `fold`.

    The parameters of the last epoch are written to `checkpoint_path` if it
    is given. Returns the trained model and the loss log.
    """

    train_cases, validation_cases = split_cases(scans, config.folds, fold,
                                                seed=config.seed)
    if not train_cases:
        raise ValueError("Cannot train on an empty set of cases")

    if thread_manager is None:
        thread_manager = Thread_Manager()

    model = Sparse_UNet(model_config, seed=config.seed, dtype=dtype)
    trainer = Trainer(model, config, thread_manager, augment_params=augment_params)
    log = trainer.train(train_cases, validation_cases, callback=callback)

    if checkpoint_path is not None:
        info = {"fold": fold, "epochs": config.epochs,
                "updates": trainer.update_count}
        if extra is not None:
            info.update(extra)

        save_checkpoint(model, checkpoint_path, extra=info)

    return model, log
