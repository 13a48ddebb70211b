import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run_cli(*args, cwd=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    return subprocess.run(
        [sys.executable, "-m", "weyldl", *args],
        capture_output=True,
        text=True,
        env=env,
        cwd=cwd,
    )


@pytest.fixture()
def workdir(tmp_path):
    os.environ["WEYL_DL_CACHE"] = str(tmp_path / ".cache")
    yield tmp_path
    del os.environ["WEYL_DL_CACHE"]


class TestEnumerate:
    def test_g2(self, workdir):
        out = run_cli("enumerate", "--family", "G", "--rank", "2", cwd=workdir)
        assert out.returncode == 0
        lines = [l for l in out.stdout.splitlines() if l.startswith("rep=")]
        assert len(lines) == 6
        assert sum("cuspidal=true" in l for l in lines) == 3

    def test_a1(self, workdir):
        out = run_cli("enumerate", "--family", "A", "--rank", "1", cwd=workdir)
        assert out.returncode == 0
        assert len([l for l in out.stdout.splitlines() if l.startswith("rep=")]) == 2

    def test_triality_rows(self, workdir):
        out = run_cli(
            "enumerate", "--family", "D", "--rank", "4", "--twist", "3", cwd=workdir
        )
        assert out.returncode == 0
        lines = [l for l in out.stdout.splitlines() if l.startswith("rep=")]
        assert len(lines) == 7
        assert sum("cuspidal=true" in l for l in lines) == 4
        # Minimal lengths of the cuspidal classes match the tabulated rows.
        lengths = sorted(
            int(l.split("min_length=")[1].split()[0])
            for l in lines
            if "cuspidal=true" in l
        )
        assert lengths == [2, 4, 6, 8]

    def test_cache_written(self, workdir):
        run_cli("enumerate", "--family", "G", "--rank", "2", cwd=workdir)
        cache = workdir / ".cache" / "classes-G2-t1-delta-v1.jsonl"
        assert cache.exists()
        header = json.loads(cache.read_text().splitlines()[0])
        assert header["group"] == {"family": "G", "rank": 2, "twist": 1}

    def test_usage_error(self, workdir):
        out = run_cli("enumerate", "--family", "Z", "--rank", "2", cwd=workdir)
        assert out.returncode == 2


class TestCertifyCheck:
    def test_suzuki_round_trip(self, workdir):
        cert_path = workdir / "cert.json"
        out = run_cli(
            "certify", "--family", "B", "--rank", "2", "--twist", "2",
            "--class-rep", "1", "--q", "sqrt2", "--out", str(cert_path),
            cwd=workdir,
        )
        assert out.returncode == 0, out.stderr
        payload = json.loads(cert_path.read_text())
        assert payload["format_version"] == 1
        assert payload["group"] == {"family": "B", "rank": 2, "twist": 2}
        assert payload["form"] == "lemma-1.11"
        check = run_cli("check", str(cert_path), cwd=workdir)
        assert check.returncode == 0
        assert check.stdout.startswith("accept")

    def test_check_rejects_tampering(self, workdir):
        cert_path = workdir / "cert.json"
        run_cli(
            "certify", "--family", "A", "--rank", "2", "--class-rep", "1,2",
            "--out", str(cert_path), cwd=workdir,
        )
        payload = json.loads(cert_path.read_text())
        payload["mu"][0]["a"] = "-99/1"
        bad = workdir / "bad.json"
        bad.write_text(json.dumps(payload))
        out = run_cli("check", str(bad), cwd=workdir)
        assert out.returncode == 1
        assert "reject" in out.stderr

    def test_check_rejects_garbage(self, workdir):
        bad = workdir / "garbage.json"
        bad.write_text("{]")
        out = run_cli("check", str(bad), cwd=workdir)
        assert out.returncode == 1

    def test_byte_identical_runs(self, workdir):
        args = (
            "certify", "--family", "G", "--rank", "2", "--class-rep", "1,2",
        )
        a = run_cli(*args, cwd=workdir).stdout
        b = run_cli(*args, cwd=workdir).stdout
        assert a == b and a.strip()


class TestVerifyPaper:
    def test_f4_filter(self, workdir):
        out = run_cli("verify-paper", "--filter", "F4", cwd=workdir)
        assert out.returncode == 0, out.stdout + out.stderr
        assert "total: 7/7 cases pass" in out.stdout

    def test_report_json(self, workdir):
        path = workdir / "report.json"
        out = run_cli(
            "verify-paper", "--filter", "2B2", "--out", str(path), cwd=workdir
        )
        assert out.returncode == 0
        payload = json.loads(path.read_text())
        assert [c["label"] for c in payload["cases"]] == ["2B2 case 1", "2B2 case 2"]


class TestShiftGraph:
    def test_a2_coxeter(self, workdir):
        out = run_cli(
            "shift-graph", "--family", "A", "--rank", "2", "--class-rep", "1,2",
            cwd=workdir,
        )
        assert out.returncode == 0
        assert "# 2 nodes, 2 edges" in out.stderr
        assert '"1,2" -> "2,1"' in out.stdout

    def test_dot_file(self, workdir):
        path = workdir / "graph.dot"
        out = run_cli(
            "shift-graph", "--family", "G", "--rank", "2", "--class-rep", "1,2",
            "--dot", str(path), cwd=workdir,
        )
        assert out.returncode == 0
        assert path.read_text().startswith("digraph shifts {")
