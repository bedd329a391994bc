import sys
from __init__ import __package__
from .command.Command import Command
from .core.Import_Manager import Import_Manager
from .core.Thread_Manager import Thread_Manager
from .settings import Arguments

# Subcommand names and the prefixes of their command classes.
COMMANDS = {
    "resample": "Resample",
    "percentiles": "Percentiles",
    "sparsify": "Sparsify",
    "train": "Train",
    "roi": "ROI",
    "segment": "Segment",
    "eval": "Eval",
    "bench": "Bench",
    "param-count": "Param_Count",
    "selftest": "Selftest"
}

def main(argv):
    """
    Run the subcommand given as first argument and return the exit code.

    Usage errors exit with code 2 through the argument parser, failures of
    the command itself print an error message and return 1.
    """

    arguments = Arguments("settings.json", argv, positionals=[{
        "name": "command",
        "help": "Subcommand to run",
        "type": "string",
        "required": True,
        "options": sorted(COMMANDS.keys())
    }])

    thread_manager = Thread_Manager()
    import_manager = Import_Manager()

    name = arguments.get_positional_value("command")
    command = Command.create(COMMANDS[name], arguments, thread_manager,
                             import_manager)

    arguments.check_help()

    try:
        command.run()
    except Exception as e:
        thread_manager.destroy()
        sys.stderr.write("error: {}\n".format(e))
        return 1

    return 0

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
