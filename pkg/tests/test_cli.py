from __future__ import annotations

import io
import json
import logging
from pathlib import Path

import numpy as np
import pytest

from core import StateKind, dumps_document, loads_document
from main import main

S = 1.0 / np.sqrt(2.0)
BELL = np.array([S, 0, 0, S])


@pytest.fixture(autouse=True)
def _drop_cli_log_handler():
    yield
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, "_qudit_json_logger", False):
            root.removeHandler(handler)


def _feed(monkeypatch: pytest.MonkeyPatch, text: str) -> None:
    monkeypatch.setattr("sys.stdin", io.StringIO(text))


def _error_payload(stderr: str) -> dict:
    for line in stderr.splitlines():
        try:
            payload = json.loads(line)
        except ValueError:
            continue
        if isinstance(payload, dict) and "error" in payload:
            return payload
    raise AssertionError(f"no error payload in {stderr!r}")


def test_state_make_writes_ket_document(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["state", "make", "ghz", "--n", "3"]) == 0
    doc = loads_document(capsys.readouterr().out)
    assert doc.kind == StateKind.KET
    assert doc.n == 3
    np.testing.assert_allclose(np.abs(doc.to_array()[[0, 7]]), [S, S])


def test_state_make_graph_from_edges(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["state", "make", "graph", "--n", "3", "--edges", "1-2,2-3"]) == 0
    graph = loads_document(capsys.readouterr().out).to_array()
    assert main(["state", "make", "cluster", "--n", "3"]) == 0
    cluster = loads_document(capsys.readouterr().out).to_array()
    assert abs(np.vdot(graph, cluster)) == pytest.approx(1.0)


def test_state_make_mixed_state_is_density_matrix(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["state", "make", "mm", "--n", "2", "--d", "3"]) == 0
    doc = loads_document(capsys.readouterr().out)
    assert doc.kind == StateKind.DM
    assert doc.d == 3
    np.testing.assert_allclose(doc.to_array(), np.eye(9) / 9)


def test_state_print_renders_kets(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["state", "make", "ghz", "--n", "3"]) == 0
    _feed(monkeypatch, capsys.readouterr().out)
    assert main(["state", "print"]) == 0
    assert capsys.readouterr().out.strip() == "0.70711|000>+0.70711|111>"


def test_state_writes_to_out_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    target = tmp_path / "docs" / "w.json"
    assert main(["state", "make", "w", "--n", "3", "--out", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert main(["state", "print", "--in", str(target)]) == 0
    assert capsys.readouterr().out.strip() == "0.57735|001>+0.57735|010>+0.57735|100>"


def test_op_build_then_decompose(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["op", "build", "--pauli", "xx+yy+zz"]) == 0
    built = capsys.readouterr().out
    assert loads_document(built).kind == StateKind.OP
    _feed(monkeypatch, built)
    assert main(["op", "decompose"]) == 0
    assert capsys.readouterr().out.strip() == "xx+yy+zz"


def test_op_decompose_latex(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    _feed(monkeypatch, dumps_document(np.array([[0, 1], [1, 0]]), kind=StateKind.OP))
    assert main(["op", "decompose", "--latex"]) == 0
    assert "\\sigma_{x}" in capsys.readouterr().out


def test_reg_reorder_swaps_qudits(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    _feed(monkeypatch, dumps_document(np.kron([1, 0], [0, 1])))
    assert main(["reg", "reorder", "--perm", "1,2"]) == 0
    doc = loads_document(capsys.readouterr().out)
    assert doc.kind == StateKind.KET
    np.testing.assert_allclose(doc.to_array(), np.kron([0, 1], [1, 0]))


def test_reg_keep_and_remove(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    _feed(monkeypatch, dumps_document(BELL))
    assert main(["reg", "keep", "--qudits", "1"]) == 0
    kept = loads_document(capsys.readouterr().out)
    assert kept.kind == StateKind.DM
    np.testing.assert_allclose(kept.to_array(), np.eye(2) / 2, atol=1e-12)
    _feed(monkeypatch, dumps_document(BELL))
    assert main(["reg", "remove", "--qudits", "2"]) == 0
    np.testing.assert_allclose(loads_document(capsys.readouterr().out).to_array(), np.eye(2) / 2, atol=1e-12)


def test_chain_ground_energy(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["chain", "ising", "--n", "4", "--b", "0", "--ground-energy"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(-3.0)
    assert main(["chain", "heisenberg", "--n", "2", "--sparse", "--ground-energy"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(-3.0)
    assert main(["chain", "ising2d", "--nx", "2", "--ny", "2", "--b", "0", "--ground-energy"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(-4.0)


def test_chain_thermal_state_document(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["chain", "ising", "--n", "2", "--thermal", "1e6"]) == 0
    doc = loads_document(capsys.readouterr().out)
    assert doc.kind == StateKind.DM
    np.testing.assert_allclose(doc.to_array(), np.eye(4) / 4, atol=1e-6)


def test_chain_thermal_energy_scalar(capsys: pytest.CaptureFixture[str]) -> None:
    # single bond -z1 z2: energy -tanh(1/T)
    assert main(["chain", "ising", "--n", "2", "--b", "0", "--thermal-energy", "1"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(-np.tanh(1.0), rel=1e-5)
    assert main(["chain", "ising", "--n", "2", "--thermal-energy", "1e8"]) == 0
    assert abs(float(capsys.readouterr().out)) < 1e-6


def test_chain_rejects_non_positive_temperature(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["chain", "ising", "--n", "2", "--thermal", "0"]) == 1
    assert _error_payload(capsys.readouterr().err)["error"] == "INVALID_PARAMETER"
    assert main(["chain", "ising", "--n", "2", "--thermal-energy", "-1"]) == 1
    assert _error_payload(capsys.readouterr().err)["error"] == "INVALID_PARAMETER"


def test_chain_lattice_rejects_bad_coupling(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["chain", "lattice2d", "--nx", "2", "--ny", "2", "--coupling", "xq"]) == 1
    assert _error_payload(capsys.readouterr().err)["error"] == "INVALID_PARAMETER"


def test_ent_scalar_criteria(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    bell = dumps_document(BELL)
    _feed(monkeypatch, bell)
    assert main(["ent", "negativity", "--qudits", "1"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(0.5)
    _feed(monkeypatch, bell)
    assert main(["ent", "ccnr"]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(2.0)
    _feed(monkeypatch, bell)
    assert main(["ent", "schmidt", "--qudits", "1"]) == 0
    values = [float(x) for x in capsys.readouterr().out.split()]
    assert values == pytest.approx([S, S], abs=1e-6)


def test_ent_pt_and_spin_squeezing(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    _feed(monkeypatch, dumps_document(BELL))
    assert main(["ent", "pt", "--qudits", "1"]) == 0
    out = loads_document(capsys.readouterr().out).to_array()
    assert np.linalg.eigvalsh(out).min() == pytest.approx(-0.5)
    polarized = np.zeros(8)
    polarized[0] = 1.0
    _feed(monkeypatch, dumps_document(polarized))
    assert main(["ent", "optspinsq"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"fmin", "f123"}
    assert len(report["f123"]) == 3


def test_ent_search_echoes_seed(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    zz = dumps_document(np.diag([1.0, -1.0, -1.0, 1.0]), kind=StateKind.OP)
    _feed(monkeypatch, zz)
    assert main(["ent", "maxsep", "--par", "200,200,0.02", "--seed", "11"]) == 0
    captured = capsys.readouterr()
    assert float(captured.out) == pytest.approx(1.0, abs=1e-6)
    assert "seed=11" in captured.err


def test_rand_is_reproducible_with_seed(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["rand", "vec", "--n", "2", "--seed", "3"]) == 0
    first = capsys.readouterr()
    assert main(["rand", "vec", "--n", "2", "--seed", "3"]) == 0
    second = capsys.readouterr()
    assert first.out == second.out
    assert "seed=3" in first.err
    vec = loads_document(first.out).to_array()
    assert np.linalg.norm(vec) == pytest.approx(1.0)


def test_rand_without_seed_reports_drawn_seed(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["rand", "unitary", "--n", "1", "--d", "3"]) == 0
    captured = capsys.readouterr()
    assert "seed=" in captured.err
    u = loads_document(captured.out).to_array()
    np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-10)


def test_rand_twirl_reports_difference(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    _feed(monkeypatch, dumps_document(np.eye(4) / 4, kind=StateKind.DM))
    assert main(["rand", "twirl", "--iters", "5", "--seed", "1"]) == 0
    captured = capsys.readouterr()
    assert "difference=" in captured.err
    np.testing.assert_allclose(loads_document(captured.out).to_array(), np.eye(4) / 4, atol=1e-12)


def test_errors_are_reported_as_json(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    _feed(monkeypatch, dumps_document(BELL))
    assert main(["ent", "negativity"]) == 1
    payload = _error_payload(capsys.readouterr().err)
    assert payload["error"] == "INVALID_PARAMETER"
    assert payload["hint"]


@pytest.mark.parametrize(
    ("argv", "stdin", "code"),
    [
        (["state", "print"], "", "MALFORMED_DOCUMENT"),
        (["op", "build", "--pauli", "xq"], "", "PAULI_SYNTAX_ERROR"),
        (["--dense-max-dim", "8", "state", "make", "ghz", "--n", "4"], "", "SIZE_CAP_EXCEEDED"),
        (["state", "make", "dicke", "--n", "3"], "", "INVALID_PARAMETER"),
        (["rand", "vec", "--n", "2", "--seed", "-4"], "", "INVALID_PARAMETER"),
    ],
)
def test_failures_exit_with_one(
    argv: list[str], stdin: str, code: str, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]
) -> None:
    _feed(monkeypatch, stdin)
    assert main(argv) == 1
    assert _error_payload(capsys.readouterr().err)["error"] == code


def test_usage_errors_exit_with_two(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bogus"]) == 2
    assert main(["chain", "ising", "--ground-energy", "--thermal", "1"]) == 2
    assert main(["chain", "ising", "--thermal", "1", "--thermal-energy", "1"]) == 2
    assert "usage" in capsys.readouterr().err


def test_stats_flag_prints_snapshot(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["--stats", "rand", "dmat", "--n", "1", "--seed", "2"]) == 0
    lines = [line for line in capsys.readouterr().err.splitlines() if line.startswith("{")]
    snapshot = json.loads(lines[-1])
    assert {"counters", "timers", "uptime_seconds"} <= set(snapshot)


def test_unexpected_failures_are_reported(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    def _explode(*_args: object, **_kwargs: object) -> str:
        raise np.linalg.LinAlgError("SVD did not converge")

    monkeypatch.setattr("main.decompose", _explode)
    _feed(monkeypatch, dumps_document(np.eye(2), kind=StateKind.OP))
    assert main(["op", "decompose"]) == 1
    payload = _error_payload(capsys.readouterr().err)
    assert payload["error"] == "UNEXPECTED_ERROR"
    assert "LinAlgError" in payload["message"]
