from cspart.cli import main


def run(argv):
    return main(argv)


class TestGenerate:
    def test_writes_deployment(self, tmp_path):
        out = tmp_path / "dep.txt"
        assert run(["generate", "--n", "20", "--grid", "2", "2",
                    "--seed", "3", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("region ")
        assert len(lines) == 21

    def test_stdout(self, capsys):
        assert run(["generate", "--n", "3", "--grid", "2", "2"]) == 0
        assert capsys.readouterr().out.count("node ") == 3


class TestCcsp:
    def test_from_file(self, tmp_path):
        dep = tmp_path / "dep.txt"
        rep = tmp_path / "report.txt"
        run(["generate", "--n", "40", "--grid", "2", "2", "--seed", "3",
             "--out", str(dep)])
        assert run(["ccsp", "--in", str(dep), "--out", str(rep)]) == 0
        text = rep.read_text()
        assert text.startswith("partition 0:")
        assert "free:" in text

    def test_inline(self, capsys):
        assert run(["ccsp", "--n", "30", "--grid", "2", "2", "--seed", "7"]) == 0
        assert "free:" in capsys.readouterr().out


class TestDcsp:
    def test_trace_deterministic(self, tmp_path):
        traces = []
        for name in ("a", "b"):
            t = tmp_path / f"{name}.trace"
            o = tmp_path / f"{name}.out"
            assert run(["dcsp", "--n", "60", "--grid", "2", "2", "--seed", "9",
                        "--lp", "0.2", "--trace", str(t), "--out", str(o)]) == 0
            traces.append(t.read_bytes())
        assert traces[0] == traces[1]

    def test_report_fields(self, capsys):
        assert run(["dcsp", "--n", "40", "--grid", "2", "2", "--seed", "2"]) == 0
        out = capsys.readouterr().out
        assert "rounds:" in out and "tx_total:" in out


class TestLifetime:
    def test_report(self, capsys):
        assert run(["lifetime", "--n", "40", "--grid", "2", "2", "--seed", "2",
                    "--lp", "0.2"]) == 0
        out = capsys.readouterr().out
        assert "lifetime_rounds:" in out

    def test_invalid_energy_exit_2(self):
        assert run(["lifetime", "--n", "10", "--grid", "2", "2",
                    "--e0", "-5"]) == 2


class TestCampaign:
    ARGS = ["campaign", "--n", "20", "40", "--grid", "2", "2",
            "--reps", "2", "--seed", "11"]

    def test_byte_identical_reruns(self, tmp_path):
        outs = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            assert run(self.ARGS + ["--out", str(path)]) == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    def test_invalid_config_exit_2(self, tmp_path):
        assert run(["campaign", "--n", "20", "--reps", "0",
                    "--out", str(tmp_path / "x.csv")]) == 2

    def test_figures_written(self, tmp_path):
        figdir = tmp_path / "figs"
        assert run(self.ARGS + ["--out", str(tmp_path / "c.csv"),
                                "--figures", str(figdir)]) == 0
        pngs = list(figdir.glob("*.png"))
        assert pngs


class TestCheck:
    def test_ok(self, tmp_path):
        csv_path = tmp_path / "c.csv"
        args = TestCampaign.ARGS + ["--out", str(csv_path)]
        assert run(args) == 0
        assert run(["check", "--in", str(csv_path), "--grid", "2", "2",
                    "--seed", "11"]) == 0

    def test_violation_exit_3(self, tmp_path):
        csv_path = tmp_path / "c.csv"
        assert run(TestCampaign.ARGS + ["--out", str(csv_path)]) == 0
        text = csv_path.read_text().splitlines()
        fields = text[1].split(",")
        fields[5] = str(int(fields[5]) + 2)     # corrupt a partitions count
        text[1] = ",".join(fields)
        csv_path.write_text("\n".join(text) + "\n")
        assert run(["check", "--in", str(csv_path)]) == 3

    def test_missing_file_exit_2(self):
        assert run(["check", "--in", "/nonexistent/x.csv"]) == 2
