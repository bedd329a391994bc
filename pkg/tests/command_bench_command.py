from ..bench.Bench_Report import read_csv
from .command_command import CommandTestCase

class TestCommandBenchCommand(CommandTestCase):
    def test_run(self):
        out_path = self.get_path("bench.csv")
        output = self.run_command("Bench", ["--bench-size", "8", "--occupancy", "0.2",
                                            "--bench-widths", "4", "8",
                                            "--bench-depths", "1", "1",
                                            "--warmup-runs", "0",
                                            "--report-format", "csv",
                                            "--out", out_path])
        self.assertIn("sparse at occupancy 0.2:", output)
        self.assertIn("dense at occupancy 0.2:", output)

        rows = read_csv(out_path)
        self.assertEqual([row["mode"] for row in rows], ["sparse", "dense"])
        self.assertEqual(rows[0]["size"], 8)
        self.assertEqual(rows[0]["repetitions"], 5)
        self.assertGreater(rows[0]["time_mean"], 0.0)
        self.assertIsNone(rows[1]["map_time_mean"])

    def test_run_oom(self):
        output = self.run_command("Bench", ["--bench-size", "8", "--occupancy", "0.2",
                                            "--bench-widths", "4", "8",
                                            "--bench-depths", "1", "1",
                                            "--arms", "dense", "--memory-budget", "1"])
        self.assertIn("dense at occupancy 0.2: OOM", output)
        self.assertIn("| dense | 8x8x8 | 0.20 | 1 | OOM | OOM | OOM |", output)
