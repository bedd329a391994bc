import csv
from ..volume.Multi_Label_Mask import Multi_Label_Mask

class Loss_Log(object):
    """
    Per-epoch losses per output channel for the training and validation
    splits, with a "total" row summing the channels.
    """

    COLUMNS = ("epoch", "channel", "split", "loss")
    TOTAL = "total"

    def __init__(self, channel_names=Multi_Label_Mask.CHANNEL_NAMES):
        self._channel_names = tuple(channel_names)
        self._rows = []

    @property
    def rows(self):
        return list(self._rows)

    def add(self, epoch, split, channel_losses):
        """
        Record the `channel_losses` of `split` at `epoch`.
        """

        channel_losses = [float(loss) for loss in channel_losses]
        if len(channel_losses) != len(self._channel_names):
            raise ValueError("Expected {} channel losses, got {}".format(len(self._channel_names), len(channel_losses)))

        for name, loss in zip(self._channel_names, channel_losses):
            self._rows.append((int(epoch), name, split, loss))

        self._rows.append((int(epoch), self.TOTAL, split, sum(channel_losses)))

    def get_losses(self, split, channel=TOTAL):
        """
        Retrieve the losses of one `channel` of `split` in epoch order.
        """

        return [row[3] for row in self._rows if row[2] == split and row[1] == channel]

    def write(self, path):
        with open(path, 'w', newline='') as log_file:
            writer = csv.writer(log_file)
            writer.writerow(self.COLUMNS)
            for epoch, channel, split, loss in self._rows:
                writer.writerow([epoch, channel, split, repr(loss)])

    @classmethod
    def read(cls, path):
        log = cls()
        with open(path, newline='') as log_file:
            reader = csv.reader(log_file)
            header = next(reader, None)
            if header is None or tuple(header) != cls.COLUMNS:
                raise IOError("Loss log '{}' has an unexpected header".format(path))

            for epoch, channel, split, loss in reader:
                log._rows.append((int(epoch), channel, split, float(loss)))

        return log
