import json
import os

import pytest

from windfit.cli import main
from windfit.families import DistParams

from helpers import year_csv

WE3_PARAMS = DistParams.we3(2, 1.5, 0)


@pytest.fixture(scope="module")
def csv_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "wind.csv"
    path.write_text(year_csv(WE3_PARAMS, 240, seed=33), encoding="utf-8")
    return str(path)


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestFitCommand:
    def test_json_output_deterministic(self, csv_path, capsys):
        argv = ["fit", "--input", csv_path, "--families", "we3,ln3",
                "--format", "json", "--seed", "9"]
        code1, out1, _ = run_cli(argv, capsys)
        code2, out2, _ = run_cli(argv, capsys)
        assert code1 == code2 == 0
        assert out1 == out2
        report = json.loads(out1)
        assert report["meta"]["families"] == ["we3", "ln3"]

    def test_text_output(self, csv_path, capsys):
        code, out, _ = run_cli(["fit", "--input", csv_path,
                                "--families", "we3"], capsys)
        assert code == 0
        assert "== annual ==" in out

    def test_plot_dir(self, csv_path, capsys, tmp_path):
        plots = tmp_path / "plots"
        code, _, _ = run_cli(["fit", "--input", csv_path, "--families", "we3",
                              "--format", "json", "--plot-dir", str(plots)],
                             capsys)
        assert code == 0
        files = sorted(os.listdir(plots))
        assert "hist_annual.csv" in files and "pdf_annual_we3.csv" in files

    def test_season_map_flag(self, csv_path, capsys):
        mapping = ",".join(f"{m}=summer" for m in range(1, 13))
        code, out, _ = run_cli(["fit", "--input", csv_path, "--families", "we3",
                                "--season-map", mapping, "--format", "json"],
                               capsys)
        assert code == 0
        assert json.loads(out)["descriptive"]["summer"]["n"] == 240

    def test_missing_file_exit_1(self, capsys):
        code, _, err = run_cli(["fit", "--input", "/no/such/file.csv"], capsys)
        assert code == 1 and "error" in err

    def test_usage_error_exit_1(self, capsys):
        code, _, _ = run_cli(["fit"], capsys)
        assert code == 1
        code, _, _ = run_cli(["unknown-command"], capsys)
        assert code == 1

    def test_bad_family_exit_1(self, csv_path, capsys):
        code, _, err = run_cli(["fit", "--input", csv_path,
                                "--families", "cauchy"], capsys)
        assert code == 1 and "unknown family" in err

    def test_parse_error_exit_1(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("timestamp,speed_ms\n2018-01-01T00:00:00,-3.0\n")
        code, _, err = run_cli(["fit", "--input", str(bad)], capsys)
        assert code == 1 and "negative" in err

    def test_fit_failure_exit_2(self, tmp_path, capsys):
        rows = ["timestamp,speed_ms"] + [
            f"2018-01-0{1 + i % 3}T00:00:00,{1.0 + (i % 3)}" for i in range(9)]
        path = tmp_path / "degenerate.csv"
        path.write_text("\n".join(rows) + "\n")
        code, out, _ = run_cli(["fit", "--input", str(path),
                                "--families", "we3", "--format", "json"],
                               capsys)
        assert code == 2
        report = json.loads(out)
        assert report["errors"] and report["errors"][0]["stage"] == "fit"


class TestRemoteMode:
    def test_server_roundtrip(self, csv_path, capsys, tmp_path, monkeypatch):
        from fastapi.testclient import TestClient
        from windfit.service import create_app
        import httpx

        test_client = TestClient(create_app())

        def fake_post(url, json=None, timeout=None):
            assert url.endswith("/fit")
            return test_client.post("/fit", json=json)

        monkeypatch.setattr(httpx, "post", fake_post)
        plots = tmp_path / "remote_plots"
        code, out, _ = run_cli(["fit", "--input", csv_path, "--families", "we3",
                                "--server", "http://fake:9", "--format", "json",
                                "--plot-dir", str(plots)], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["gof"]["annual"]["we3"]["rank"] == 1
        assert "plot_data" not in report
        assert "hist_annual.csv" in os.listdir(plots)

    def test_server_rejection_exit_1(self, capsys, tmp_path, monkeypatch):
        from fastapi.testclient import TestClient
        from windfit.service import create_app
        import httpx

        test_client = TestClient(create_app())
        monkeypatch.setattr(
            httpx, "post",
            lambda url, json=None, timeout=None: test_client.post("/fit", json=json))
        bad = tmp_path / "bad.csv"
        bad.write_text("nope\n")
        code, _, err = run_cli(["fit", "--input", str(bad),
                                "--server", "http://fake:9"], capsys)
        assert code == 1 and "rejected" in err
