"""Command-line front end.

Exit codes: 0 success, 2 input error.  ``verify`` and ``sample`` return 1 when
their check fails; ``analyze`` returns 1 for an *entangled* verdict, which is
a result rather than an error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .core import is_unitary, max_abs_diff, max_qubits
from .entangler import apply_R_to_plus, build_R, r_unitarity_check, tau
from .formats import (
    FormatError,
    dumps,
    load_json,
    phases_from_dict,
    state_from_dict,
    state_to_dict,
    write_atomic,
)
from .separability import DEFAULT_TOL, EXPERIMENT_MAX_QUBITS, consistency_experiment, is_fully_product, kernel_output
from .synthesis import blocks_unitary, circuit_from_dict, circuit_to_dict, compose_diagonal, decompose
from .transform import make_selective_kernel

CLI_MAX_QUBITS = 10
VERIFY_TOL = 1e-12


class UsageError(ValueError):
    pass


def _limit() -> int:
    return max_qubits(CLI_MAX_QUBITS)


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def cmd_synthesize(args) -> int:
    phases = phases_from_dict(load_json(args.phases), _limit())
    _emit(dumps(circuit_to_dict(decompose(phases))), args.out)
    return 0


def cmd_verify(args) -> int:
    phases = phases_from_dict(load_json(args.phases), _limit())
    if args.circuit is None:
        circuit = decompose(phases)
    else:
        circuit = circuit_from_dict(load_json(args.circuit))
        if circuit.num_qubits != phases.num_qubits:
            raise UsageError(
                f"circuit acts on {circuit.num_qubits} qubits but the profile has {phases.num_qubits}"
            )
    kernel = make_selective_kernel(phases, include_prefactor=False)
    # Both operands are diagonal; comparing diagonals is the dense comparison.
    err = max_abs_diff(compose_diagonal(circuit), kernel.diagonal())
    report = {
        "reconstruction_error": err,
        "kernel_unitary": is_unitary(kernel.dense(), args.tol),
        "blocks_unitary": blocks_unitary(circuit, args.tol),
    }
    _emit(dumps(report), args.out)
    ok = err <= args.tol and report["kernel_unitary"] and report["blocks_unitary"]
    return 0 if ok else 1


def cmd_analyze(args) -> int:
    if args.state is not None:
        state = state_from_dict(load_json(args.state), _limit())
    else:
        phases = phases_from_dict(load_json(args.phases), _limit())
        state = kernel_output(phases, include_prefactor=args.prefactor)
    report = is_fully_product(state, args.tol, max_violations=args.max_violations)
    _emit(dumps(report.to_dict(args.max_violations)), args.out)
    return 0 if report.is_product else 1


def cmd_entangle(args) -> int:
    data = load_json(args.alpha)
    alpha = state_from_dict(data, _limit()).amplitudes
    r = build_R(alpha)
    state = apply_R_to_plus(r)
    report = {
        "r_unitary": r_unitarity_check(r, args.tol),
        "tau_is_diag_alpha": max_abs_diff(tau(alpha), np.diag(alpha)) <= args.tau_tol,
    }
    write_atomic(args.out, dumps(state_to_dict(state)))
    if args.report is None:
        sys.stdout.write(dumps(report))
    else:
        write_atomic(args.report, dumps(report))
    return 0


def cmd_sample(args) -> int:
    limit = min(_limit(), EXPERIMENT_MAX_QUBITS)
    if not 1 <= args.qubits <= limit:
        raise UsageError(f"--qubits must be in [1, {limit}], got {args.qubits}")
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    summary = consistency_experiment(args.qubits, args.trials, args.seed, args.tol)
    _emit(dumps(summary), args.out)
    return 0 if summary["disagreements"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="selphase",
        description="Selective phase rotation entanglers: synthesis, verification and separability analysis.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synthesize", help="decompose a phase profile into controlled gates")
    s.add_argument("--phases", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_synthesize)

    s = sub.add_parser("verify", help="check that the controlled-gate product reproduces the kernel")
    s.add_argument("--phases", required=True)
    s.add_argument("--circuit", help="circuit JSON to check instead of a fresh decomposition")
    s.add_argument("--tol", type=float, default=VERIFY_TOL)
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("analyze", help="Segre separability test; exit 1 means entangled")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--state")
    src.add_argument("--phases", help="analyze the kernel applied to the plus-product state")
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--prefactor", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--max-violations", type=int, default=100,
                   help="violated quadrics listed in the report (default 100)")
    s.add_argument("--out")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("entangle", help="apply the entangler R to the plus-product state")
    s.add_argument("--alpha", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--report", help="unitarity report path (default: stdout)")
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--tau-tol", type=float, default=1e-15)
    s.set_defaults(func=cmd_entangle)

    s = sub.add_parser("sample", help="random-profile consistency experiment")
    s.add_argument("--qubits", type=int, required=True)
    s.add_argument("--trials", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, ValueError, IndexError) as exc:
        print(f"selphase {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
