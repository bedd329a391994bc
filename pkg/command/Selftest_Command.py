from ..bench.Test_Run import Test_Run
from .Command import Command

class Selftest_Command(Command):
    """
    Run the oracle test modules of the engine and the pipeline.
    """

    COMPONENTS = ("command", "test_runner")

    def run(self):
        test_run = Test_Run(self._arguments)
        modules = self.get_settings("test_runner").get("oracle_modules")
        result = test_run.execute_unit_tests(list(modules))
        if not test_run.is_passed():
            raise RuntimeError("{} of {} oracle tests failed".format(len(result.failures) + len(result.errors), result.testsRun))

        print("All {} oracle tests passed".format(result.testsRun))
