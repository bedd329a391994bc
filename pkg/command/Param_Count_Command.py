from .Command import Command

class Param_Count_Command(Command):
    """
    Print the number of parameters of the configured network.
    """

    COMPONENTS = ("command", "network")

    def run(self):
        print(self.get_model_config().count_params())
