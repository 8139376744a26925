import json
import subprocess
import sys

import pytest

from spectral_turan.cli import EXIT_INPUT, EXIT_NONCONVERGED, EXIT_OK, main, parse_range
from spectral_turan.hypergraph import complete_hypergraph, turan_hypergraph
from spectral_turan.io import format_edgelist, parse_edgelist


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


@pytest.fixture
def k8_file(tmp_path):
    path = tmp_path / "k8.txt"
    path.write_text(format_edgelist(complete_hypergraph(8)))
    return str(path)


class TestLambda:
    def test_k8_edge_list(self, capsys, k8_file):
        code, doc = run_json(capsys, ["lambda", "--alpha", "2", "--pattern", "k2", "--host", k8_file])
        assert code == EXIT_OK
        assert doc["lambda"] == pytest.approx(7.0, abs=1e-8)
        assert doc["converged"]

    @pytest.mark.parametrize("method", ["fixed-point", "reduced", "brute-force"])
    def test_methods_agree(self, capsys, method):
        code, doc = run_json(capsys, ["lambda", "--host", "blowup:2,1,1,1,1", "--pattern", "c5", "--method", method])
        assert code == EXIT_OK
        assert doc["lambda"] == pytest.approx(0.25298, abs=1e-4)

    def test_nonconverged_exit(self, capsys):
        code, doc = run_json(capsys, ["lambda", "--host", "path:6", "--max-iter", "1", "--restarts", "1", "--method", "fixed-point"])
        assert code == EXIT_NONCONVERGED
        assert doc["converged"] is False

    def test_graph6_batch(self, capsys, tmp_path):
        path = tmp_path / "g.g6"
        path.write_bytes(b"Bw\nDhc\n")
        code, doc = run_json(capsys, ["lambda", "--graph6", str(path)])
        assert code == EXIT_OK and len(doc["instances"]) == 2


class TestCount:
    def test_petersen_c5(self, capsys):
        code, doc = run_json(capsys, ["count", "--pattern", "c5", "--host", "petersen"])
        assert code == EXIT_OK
        assert doc["copies"] == 12 and doc["inj"] == 120

    def test_csv(self, capsys):
        assert main(["count", "--host", "complete:4", "--format", "csv"]) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 2


class TestConstruct:
    def test_round_trip(self, capsys):
        assert main(["construct", "turan:3,2,7"]) == EXIT_OK
        assert parse_edgelist(capsys.readouterr().out) == turan_hypergraph(3, 2, 7)

    def test_out_file(self, tmp_path, capsys):
        path = tmp_path / "t.txt"
        assert main(["construct", "turan:2,2,4", "--out", str(path)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert len(parse_edgelist(path.read_text())) == 4


class TestVerify:
    def test_appendix(self, capsys):
        code, doc = run_json(capsys, ["verify", "appendix-inequalities"])
        assert code == EXIT_OK and doc["passed"]

    def test_turan_count(self, capsys):
        code, doc = run_json(capsys, ["verify", "turan-count", "--m", "3", "--n-range", "1-10"])
        assert code == EXIT_OK and doc["exact_checks"] == 10

    def test_pentagon(self, capsys):
        code, doc = run_json(capsys, ["pentagon", "--n", "5"])
        assert code == EXIT_OK and doc["summary"]["ties"] == 1

    def test_missing_flag(self, capsys):
        assert main(["verify", "turan-count"]) == EXIT_INPUT
        assert "--m" in capsys.readouterr().err


class TestInputErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ["lambda", "--host", "/nonexistent/file.txt"],
            ["lambda", "--pattern", "k9", "--host", "complete:3"],
            ["lambda", "--host", "complete:3", "--alpha", "0.5"],
            ["construct", "nope:3"],
            ["verify", "no-such-suite"],
            ["entropy", "--pattern", "c5", "--host", "cycle:6"],
        ],
    )
    def test_exit_two(self, argv, capsys):
        assert main(argv) == EXIT_INPUT

    def test_malformed_edge_list(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("3 2\n1 2\n1 5\n")
        assert main(["lambda", "--host", str(path)]) == EXIT_INPUT
        assert "line 3" in capsys.readouterr().err

    def test_parse_range(self):
        assert parse_range("3-6") == [3, 4, 5, 6]
        assert parse_range("2,5") == [2, 5]


class TestDeterminism:
    def test_byte_identical_json(self, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"r{k}.json"
            subprocess.run(
                [sys.executable, "-m", "spectral_turan", "lambda", "--host", "petersen", "--pattern", "c5",
                 "--seed", "7", "--out", str(path)],
                check=True,
            )
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    def test_entropy_exit(self, capsys):
        code, doc = run_json(capsys, ["entropy", "--host", "complete:4", "--perturbations", "50"])
        assert code == EXIT_OK and doc["equal"]
