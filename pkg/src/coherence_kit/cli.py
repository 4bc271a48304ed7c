"""Command-line driver tying setup construction, verification, simulation and
reconstruction into scriptable workflows with JSON artifacts.

Every subcommand is a thin composition of library calls; no numeric logic
lives here.  Exit codes: 0 on success, 1 on domain errors (with a
machine-readable JSON object on stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import serialize
from .bases import DEFAULT_ALPHA, SetupConfig, build_minimal_setup, qubit_bloch_basis
from .detection import (
    certifies_coherence,
    entry_from_probabilities,
    offdiagonal_expansion_coeffs,
    qubit_undetectable_state,
)
from .errors import CoherenceKitError
from .linalg import DEFAULT_TOL
from .modmath import proposition_counterexample
from .recon import (
    reconstruct_offdiagonals,
    simulate_probabilities,
    threshold_verdict,
    vandermonde_system,
)
from .states import c1_coherence, random_density_matrix


def _print_json(obj, stream=None) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True), file=stream or sys.stdout)


def _cmd_build_setup(args) -> int:
    config = SetupConfig(dim=args.dim, alpha=args.alpha)
    setup = build_minimal_setup(config)
    serialize.save_json(args.out, serialize.setup_to_json(setup))
    print(f"wrote {args.dim}-basis setup (alpha={args.alpha!r}) to {args.out}")
    return 0


def _cmd_verify(args) -> int:
    setup = serialize.setup_from_json(serialize.load_json(args.setup))
    report = certifies_coherence(setup, tol=args.tol, include_reference=args.include_reference)
    extra = {}
    if setup.alpha is not None:
        config = SetupConfig(dim=setup.dim, alpha=setup.alpha)
        extra["min_vandermonde_node_distance"] = min(
            vandermonde_system(config, z).min_node_distance for z in range(1, setup.dim)
        )
    obj = serialize.report_to_json(report, extra=extra)
    if args.report:
        serialize.save_json(args.report, obj)
        print(f"wrote report to {args.report}")
    else:
        _print_json(obj)
    return 0


def _cmd_simulate(args) -> int:
    rho = serialize.complex_matrix_from_json(serialize.load_json(args.state), expected_kind="density")
    setup = serialize.setup_from_json(serialize.load_json(args.setup))
    table = simulate_probabilities(rho, setup)
    serialize.save_json(args.out, serialize.table_to_json(table))
    print(f"wrote {table.num_bases} x {table.dim} probability table to {args.out}")
    return 0


def _cmd_reconstruct(args) -> int:
    table = serialize.table_from_json(serialize.load_json(args.table))
    config = SetupConfig(dim=args.dim, alpha=args.alpha)
    reference_row = None
    if args.with_reference:
        ref_table = serialize.table_from_json(serialize.load_json(args.with_reference))
        reference_row = ref_table.probs[0]
    rec = reconstruct_offdiagonals(table, config, reference_row=reference_row)
    serialize.save_json(args.out, serialize.reconstruction_to_json(rec, args.dim, args.alpha))
    print(f"wrote reconstructed entries to {args.out}")
    return 0


def _cmd_coherence(args) -> int:
    table = serialize.table_from_json(serialize.load_json(args.table))
    config = SetupConfig(dim=args.dim, alpha=args.alpha)
    rec = reconstruct_offdiagonals(table, config)
    obj = {
        "dim": args.dim,
        "alpha": args.alpha,
        "c1_estimate": rec.coherence(),
        "error_estimate": rec.error_estimate,
    }
    if args.threshold is not None:
        obj["threshold_r"] = args.threshold
        obj["threshold_value"] = args.threshold * (args.dim - 1)
        obj["verdict"] = threshold_verdict(table, config, args.threshold)
    _print_json(obj)
    return 0


def _cmd_check_proposition(args) -> int:
    ok = True
    for d in range(2, args.max_dim + 1):
        triple = proposition_counterexample(d)
        if triple is None:
            print(f"d={d}: ok")
        else:
            x, i, j = triple
            print(f"d={d}: FAILED at shift x={x} with indices i={i}, j={j}")
            ok = False
    return 0 if ok else 1


def _cmd_demo_qubit(args) -> int:
    rng = np.random.default_rng(args.seed)

    print("-- single-pair blind spot --")
    a = np.array([1.0, 0.0, 0.0])
    b = np.array([0.0, 0.0, 1.0])
    rho_hidden = qubit_undetectable_state(a, b)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    for name, obs in (("x", sx), ("z", sz)):
        hidden = float(np.trace(rho_hidden @ obs).real)
        mixed = float(np.trace(np.eye(2) / 2 @ obs).real)
        print(f"spin-{name} expectation: hidden state {hidden:+.12f}, I/2 {mixed:+.12f}")
    print(f"hidden-state coherence: {c1_coherence(rho_hidden):.12f}")
    print("measuring along x and z cannot distinguish the two, yet one is coherent.")

    print("-- two unbiased bases reconstruct a random qubit state --")
    setup = build_minimal_setup(SetupConfig(dim=2, alpha=0.5))
    rho = random_density_matrix(2, rng)
    table = simulate_probabilities(rho, setup)
    coeffs_re, coeffs_im = offdiagonal_expansion_coeffs(setup, 0, 1)
    entry = entry_from_probabilities(coeffs_re, coeffs_im, table.probs)
    print(f"true offdiag entry:          {rho[0, 1]:+.12f}")
    print(f"reconstructed from probs:    {entry:+.12f}")
    print(f"true coherence:              {c1_coherence(rho):.12f}")
    print(f"coherence from probs:        {2 * abs(entry):.12f}")
    print("note: these two bases are the x and y spin eigenbases.")
    xb = qubit_bloch_basis([1.0, 0.0, 0.0]).vectors
    overlap = np.min(np.abs(setup.measured[0].vectors.conj() @ xb.T).max(axis=1))
    print(f"basis-1 / spin-x maximum vector overlap: {overlap:.12f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence-kit",
        description="Construct, verify and use minimal coherence-certifying measurement setups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-setup", help="construct the d-basis minimal setup")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_build_setup)

    p = sub.add_parser("verify", help="report the undetected-perturbation structure of a setup")
    p.add_argument("--setup", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--report", default=None)
    p.add_argument("--include-reference", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("simulate", help="exact Born probabilities of a state under a setup")
    p.add_argument("--state", required=True)
    p.add_argument("--setup", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("reconstruct", help="recover off-diagonal entries from a probability table")
    p.add_argument("--table", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--with-reference", default=None, help="reference-basis table to fill the diagonal")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("coherence", help="estimate the l1 coherence from a probability table")
    p.add_argument("--table", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--threshold", type=float, default=None)
    p.set_defaults(func=_cmd_coherence)

    p = sub.add_parser("check-proposition", help="exhaustive exponent-injectivity check per dimension")
    p.add_argument("--max-dim", type=int, default=50)
    p.set_defaults(func=_cmd_check_proposition)

    p = sub.add_parser("demo-qubit", help="qubit blind spot and two-basis reconstruction demo")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_demo_qubit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CoherenceKitError as exc:
        _print_json({"error": type(exc).__name__, "message": str(exc)}, stream=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
