#!/usr/bin/env python3
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import numpy as np
from pydantic import ValidationError

from chains import (
    Boundary,
    ThermalParams,
    XYParams,
    cluster_hamiltonian,
    heisenberg,
    ising,
    ising2d,
    lattice2d,
    thstate,
    xy_hamiltonian,
)
from config import DECOMPOSE_THRESHOLD, LOG_LEVEL, PRINTV_THRESHOLD, SCALAR_DIGITS, TWIRL_ITERATIONS
from core import (
    QuantumDocument,
    StateKind,
    Storage,
    dumps_document,
    ex,
    is_vector_like,
    loads_document,
    mineig,
    read_document,
    to_dense,
    use_policy,
)
from core.paulis import SIGMA_X, SIGMA_Y, SIGMA_Z
from entangle import (
    SearchParams,
    ccnr,
    concurrence,
    maxb,
    maxbisep,
    maxsep,
    maxsymsep,
    negativity,
    optspinsq,
    overlapb,
    pt,
    schmidt,
)
from errors import ParameterError, QuditError, explain_error
from observability import configure_json_logging, get_logger, log_event
from pauli_io import decompose, paulistr, printv
from permute import keep, remove, reorder
from randmat import make_rng, rdmat, rproduct, runitary, rvec, twirl, twirl2
from runtime_metrics import get_runtime_metrics_snapshot
from states import GraphSpec, gstate, named_state

APP_LOGGER = get_logger("qudit.cli")

STATE_NAMES = (
    "ghz",
    "w",
    "cluster",
    "ring",
    "dicke",
    "mm",
    "me",
    "singlet",
    "smolin",
    "graph",
    "horodecki3x3",
    "horodecki4x2",
    "upb3x3",
)
CHAIN_MODELS = ("ising", "heisenberg", "xy", "lattice2d", "ising2d", "cluster")
ENT_CRITERIA = (
    "pt",
    "negativity",
    "ccnr",
    "concurrence",
    "schmidt",
    "overlapb",
    "optspinsq",
    "maxsep",
    "maxsymsep",
    "maxbisep",
    "maxb",
)
RAND_KINDS = ("vec", "product", "dmat", "unitary", "twirl", "twirl2")
_LETTERS = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


# ---------------------------------------------------------------------------
# Input / output helpers
# ---------------------------------------------------------------------------


def _int_list(text: Optional[str], flag: str) -> list[int]:
    if not text:
        raise ParameterError(f"{flag} is required for this command")
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError as exc:
        raise ParameterError(f"{flag} must be a comma separated list of integers, got {text!r}") from exc


def _require(value: Any, flag: str) -> Any:
    if value is None:
        raise ParameterError(f"{flag} is required for this command")
    return value


def _format_scalar(value: Any) -> str:
    number = complex(value)
    if abs(number.imag) > 1e-12:
        return f"{number.real:.{SCALAR_DIGITS}g}{number.imag:+.{SCALAR_DIGITS}g}i"
    return f"{number.real:.{SCALAR_DIGITS}g}"


def _read_input(args: argparse.Namespace) -> QuantumDocument:
    if getattr(args, "input", None):
        return read_document(args.input)
    return loads_document(sys.stdin.read())


def _emit_text(args: argparse.Namespace, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        target = Path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text + "\n", encoding="utf-8")
        return
    print(text)


def _emit_document(args: argparse.Namespace, value: Any, d: int, kind: Optional[StateKind] = None) -> None:
    _emit_text(args, dumps_document(to_dense(value) if not is_vector_like(value) else value, d=d, kind=kind))


def _seeded_rng(args: argparse.Namespace) -> np.random.Generator:
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (2**63))
    print(f"seed={seed}", file=sys.stderr)
    log_event(APP_LOGGER, logging.INFO, "cli.seed", seed=seed)
    return make_rng(seed)


def _graph_from_edges(n: int, text: Optional[str]) -> GraphSpec:
    rows = [[0] * n for _ in range(n)]
    for part in (text or "").replace(" ", "").split(","):
        if not part:
            continue
        try:
            a, b = (int(x) for x in part.split("-"))
        except ValueError as exc:
            raise QuditError("INVALID_GRAPH", f"edge {part!r} must look like 1-2") from exc
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise QuditError("INVALID_GRAPH", f"edge {part!r} is not between two distinct vertices of 1..{n}")
        rows[a - 1][b - 1] = rows[b - 1][a - 1] = 1
    return GraphSpec.coerce(rows)


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _cmd_state_make(args: argparse.Namespace) -> int:
    if args.name == "graph":
        value = gstate(_graph_from_edges(_require(args.n, "--n"), args.edges))
    else:
        value = named_state(args.name, n=args.n, d=args.d, param=args.param)
    kind = StateKind.KET if is_vector_like(value) else StateKind.DM
    _emit_document(args, value, args.d, kind)
    return 0


def _cmd_state_print(args: argparse.Namespace) -> int:
    doc = _read_input(args)
    value = doc.to_array()
    if doc.kind == StateKind.KET:
        _emit_text(args, printv(value, args.threshold, doc.d))
    else:
        _emit_text(args, np.array2string(value, precision=SCALAR_DIGITS, suppress_small=True, max_line_width=200))
    return 0


def _cmd_op_build(args: argparse.Namespace) -> int:
    _emit_document(args, paulistr(args.pauli), 2, StateKind.OP)
    return 0


def _cmd_op_decompose(args: argparse.Namespace) -> int:
    doc = _read_input(args)
    _emit_text(args, decompose(doc.to_array(), latex=args.latex, threshold=args.threshold))
    return 0


def _cmd_reg(args: argparse.Namespace) -> int:
    doc = _read_input(args)
    value = doc.to_array()
    if args.action == "reorder":
        _emit_document(args, reorder(value, _int_list(args.perm, "--perm"), doc.d), doc.d, doc.kind)
    elif args.action == "keep":
        _emit_document(args, keep(value, _int_list(args.qudits, "--qudits"), doc.d), doc.d, StateKind.DM)
    else:
        _emit_document(args, remove(value, _int_list(args.qudits, "--qudits"), doc.d), doc.d, StateKind.DM)
    return 0


def _build_chain(args: argparse.Namespace) -> Any:
    boundary = Boundary.PERIODIC if args.periodic else Boundary.APERIODIC
    storage = Storage.SPARSE if args.sparse else Storage.DENSE
    model = args.model
    if model == "ising":
        return ising(args.b, _require(args.n, "--n"), boundary, storage)
    if model == "heisenberg":
        return heisenberg(_require(args.n, "--n"), boundary, storage)
    if model == "xy":
        return xy_hamiltonian(XYParams(jx=args.jx, jy=args.jy, b=args.b), _require(args.n, "--n"), boundary, storage)
    if model == "cluster":
        return cluster_hamiltonian(_require(args.n, "--n"), boundary, storage)
    nx, ny = _require(args.nx, "--nx"), _require(args.ny, "--ny")
    if model == "ising2d":
        return ising2d(args.b, nx, ny, boundary, storage)
    coupling = str(args.coupling or "").lower()
    if len(coupling) != 2 or any(ch not in _LETTERS for ch in coupling):
        raise ParameterError(f"--coupling must be two letters from x, y, z, got {args.coupling!r}")
    return lattice2d(_LETTERS[coupling[0]], _LETTERS[coupling[1]], nx, ny, boundary, storage)


def _cmd_chain(args: argparse.Namespace) -> int:
    h = _build_chain(args)
    if args.ground_energy:
        _emit_text(args, _format_scalar(mineig(h)))
    elif args.thermal is not None:
        _emit_document(args, thstate(h, ThermalParams.coerce(args.thermal)), 2, StateKind.DM)
    elif args.thermal_energy is not None:
        rho = thstate(h, ThermalParams.coerce(args.thermal_energy))
        _emit_text(args, _format_scalar(ex(h, rho).real))
    else:
        _emit_document(args, h, 2, StateKind.OP)
    return 0


def _search_params(args: argparse.Namespace) -> SearchParams:
    return SearchParams.parse(args.par) if args.par else SearchParams()


def _cmd_ent(args: argparse.Namespace) -> int:
    doc = _read_input(args)
    value, d = doc.to_array(), doc.d
    criterion = args.criterion
    if criterion == "pt":
        _emit_document(args, pt(value, _int_list(args.qudits, "--qudits"), d), d, StateKind.DM)
        return 0
    if criterion == "schmidt":
        coefficients = schmidt(value, _int_list(args.qudits, "--qudits"), d)
        _emit_text(args, " ".join(_format_scalar(c) for c in coefficients))
        return 0
    if criterion == "optspinsq":
        report = optspinsq(value)
        _emit_text(args, json.dumps({"fmin": report.fmin, "f123": list(report.f123)}))
        return 0
    handlers: dict[str, Callable[[], Any]] = {
        "negativity": lambda: negativity(value, _int_list(args.qudits, "--qudits"), d),
        "ccnr": lambda: ccnr(value, d, _int_list(args.qudits, "--qudits") if args.qudits else None),
        "concurrence": lambda: concurrence(value),
        "overlapb": lambda: overlapb(value, d),
        "maxsep": lambda: maxsep(value, d, _search_params(args), _seeded_rng(args)).value,
        "maxsymsep": lambda: maxsymsep(value, d, _search_params(args), _seeded_rng(args))[0],
        "maxbisep": lambda: maxbisep(
            value, _int_list(args.qudits, "--qudits"), d, _search_params(args), _seeded_rng(args)
        ).value,
        "maxb": lambda: maxb(value, d, _search_params(args), _seeded_rng(args)).value,
    }
    _emit_text(args, _format_scalar(handlers[criterion]()))
    return 0


def _cmd_rand(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind in ("twirl", "twirl2"):
        doc = _read_input(args)
        rng = _seeded_rng(args)
        if kind == "twirl":
            out, difference = twirl(doc.to_array(), doc.d, args.iters, rng)
            print(f"difference={_format_scalar(difference)}", file=sys.stderr)
            _emit_document(args, out, doc.d, StateKind.DM)
        else:
            difference, _ = twirl2(doc.to_array(), doc.d, args.iters, rng)
            _emit_text(args, _format_scalar(difference))
        return 0
    n = _require(args.n, "--n")
    rng = _seeded_rng(args)
    samplers: dict[str, tuple[Callable[..., Any], StateKind]] = {
        "vec": (rvec, StateKind.KET),
        "product": (rproduct, StateKind.KET),
        "dmat": (rdmat, StateKind.DM),
        "unitary": (runitary, StateKind.OP),
    }
    sampler, doc_kind = samplers[kind]
    _emit_document(args, sampler(n, args.d, rng), args.d, doc_kind)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Multi-qudit register toolkit")
    parser.add_argument("--stats", action="store_true", help="Print runtime counters and timers to stderr on exit")
    parser.add_argument("--verbose", action="store_true", help="Emit structured debug logs to stderr")
    parser.add_argument("--hermitian-tol", type=float, default=None, help="Override the Hermiticity tolerance")
    parser.add_argument("--dense-max-dim", type=int, default=None, help="Override the dense size cap")
    subparsers = parser.add_subparsers(dest="command", required=True)

    reader = argparse.ArgumentParser(add_help=False)
    reader.add_argument("--in", dest="input", default=None, help="Input document (default: stdin)")
    writer = argparse.ArgumentParser(add_help=False)
    writer.add_argument("--out", default=None, help="Output path (default: stdout)")
    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument("--seed", type=int, default=None, help="Random seed; echoed to stderr")

    state = subparsers.add_parser("state", help="Build or print named states")
    state_actions = state.add_subparsers(dest="action", required=True)
    make = state_actions.add_parser("make", parents=[writer], help="Write a named state document")
    make.add_argument("name", choices=STATE_NAMES)
    make.add_argument("--n", type=int, default=None)
    make.add_argument("--d", type=int, default=2)
    make.add_argument("--param", type=float, default=None, help="Dicke excitations or bound-entangled family parameter")
    make.add_argument("--edges", default=None, help="Graph edges such as 1-2,2-3")
    make.set_defaults(handler=_cmd_state_make)
    show = state_actions.add_parser("print", parents=[reader, writer], help="Render a state document")
    show.add_argument("--threshold", type=float, default=PRINTV_THRESHOLD)
    show.set_defaults(handler=_cmd_state_print)

    op = subparsers.add_parser("op", help="Pauli operators")
    op_actions = op.add_subparsers(dest="action", required=True)
    build = op_actions.add_parser("build", parents=[writer], help="Operator from a Pauli expression")
    build.add_argument("--pauli", required=True)
    build.set_defaults(handler=_cmd_op_build)
    dec = op_actions.add_parser("decompose", parents=[reader, writer], help="Pauli decomposition of an operator")
    dec.add_argument("--latex", action="store_true")
    dec.add_argument("--threshold", type=float, default=DECOMPOSE_THRESHOLD)
    dec.set_defaults(handler=_cmd_op_decompose)

    reg = subparsers.add_parser("reg", help="Rearrange or reduce registers")
    reg_actions = reg.add_subparsers(dest="action", required=True)
    for action in ("reorder", "keep", "remove"):
        sub = reg_actions.add_parser(action, parents=[reader, writer])
        if action == "reorder":
            sub.add_argument("--perm", required=True, help="Slot-ordered permutation such as 2,3,1")
        else:
            sub.add_argument("--qudits", required=True, help="Qudit indices such as 1,3")
        sub.set_defaults(handler=_cmd_reg)

    chain = subparsers.add_parser("chain", parents=[writer], help="Spin-chain Hamiltonians")
    chain.add_argument("model", choices=CHAIN_MODELS)
    chain.add_argument("--n", type=int, default=None)
    chain.add_argument("--nx", type=int, default=None)
    chain.add_argument("--ny", type=int, default=None)
    chain.add_argument("--b", type=float, default=1.0)
    chain.add_argument("--jx", type=float, default=1.0)
    chain.add_argument("--jy", type=float, default=1.0)
    chain.add_argument("--coupling", default="zz", help="lattice2d bond operators, two letters from x, y, z")
    chain.add_argument("--periodic", action="store_true")
    chain.add_argument("--sparse", action="store_true")
    output = chain.add_mutually_exclusive_group()
    output.add_argument("--ground-energy", action="store_true")
    output.add_argument("--thermal", type=float, default=None, metavar="T", help="Emit the thermal state document")
    output.add_argument("--thermal-energy", type=float, default=None, metavar="T", help="Print the thermal energy Tr(rho H)")
    chain.set_defaults(handler=_cmd_chain)

    ent = subparsers.add_parser("ent", parents=[reader, writer, seeded], help="Entanglement criteria and searches")
    ent.add_argument("criterion", choices=ENT_CRITERIA)
    ent.add_argument("--op", dest="input", default=None, help="Alias of --in")
    ent.add_argument("--qudits", default=None)
    ent.add_argument("--par", default=None, help="n_phase1,n_phase2,step_const")
    ent.set_defaults(handler=_cmd_ent)

    rand = subparsers.add_parser("rand", parents=[reader, writer, seeded], help="Random states and twirling")
    rand.add_argument("kind", choices=RAND_KINDS)
    rand.add_argument("--n", type=int, default=None)
    rand.add_argument("--d", type=int, default=2)
    rand.add_argument("--iters", type=int, default=TWIRL_ITERATIONS)
    rand.set_defaults(handler=_cmd_rand)

    return parser.parse_args(argv)


def _report_error(code: str, message: str) -> None:
    info = explain_error(code) or {}
    payload = {"error": code, "message": message, "hint": info.get("hint", "")}
    print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
    log_event(APP_LOGGER, logging.INFO, "cli.error", code=code, detail=message)


def main(argv: list[str] | None = None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_json_logging(level=logging.DEBUG if args.verbose else LOG_LEVEL)

    overrides: dict[str, Any] = {}
    if args.hermitian_tol is not None:
        overrides["hermitian_tol"] = args.hermitian_tol
    if args.dense_max_dim is not None:
        overrides["dense_max_dim"] = args.dense_max_dim

    try:
        with use_policy(**overrides):
            return int(args.handler(args))
    except QuditError as exc:
        _report_error(exc.code, exc.message)
        return 1
    except ValidationError as exc:
        first = exc.errors()[0] if exc.errors() else {}
        _report_error("INVALID_PARAMETER", str(first.get("msg") or exc))
        return 1
    except Exception as exc:  # noqa: BLE001
        log_event(
            APP_LOGGER,
            logging.ERROR,
            "cli.unhandled_exception",
            command=args.command,
            exception_type=type(exc).__name__,
            exception_message=str(exc),
        )
        _report_error("UNEXPECTED_ERROR", f"{type(exc).__name__}: {exc}")
        return 1
    finally:
        if args.stats:
            print(json.dumps(get_runtime_metrics_snapshot(), ensure_ascii=False), file=sys.stderr)


if __name__ == "__main__":
    raise SystemExit(main())
