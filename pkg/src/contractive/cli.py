"""Command-line entry point.

Every subcommand writes one JSON document (to stdout or ``--output``) that
carries ``schema``, ``version``, ``seed`` and ``tolerances``. Exit status is
0 when all contracts hold, 1 on a contract violation and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .core import DEFAULT_TOLERANCES, Tolerances, is_contraction, spectral_norm
from .errors import ContractiveError, InputError
from .jsonio import (
    SCHEMA_VERSION,
    blocks_from_json,
    complex_to_json,
    dumps,
    matrix_from_json,
    matrix_to_json,
    omegas_from_json,
    parse_complex,
)
from .model import ModelParameters, build_model_matrix
from .model_space import QuadratureGrid, TMWBasis, compressed_shift_by_quadrature, gram_matrix, LOW_ACCURACY_MODULUS
from .moebius import moebius_matrix, near_boundary, resolvent_condition
from .parrott import ParrottBlocks, assemble, central_completion, minimal_norm_completion, scalar_feasibility_disk
from .sampling import GENERATOR_INFO, draw_omegas, omega_rule, rng_for
from .verifier import truncation_check, unique_completion_solver, uniqueness_sweep

log = logging.getLogger("contractive")

EXIT_OK, EXIT_CONTRACT, EXIT_INPUT = 0, 1, 2


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number {text!r}") from None
    if not (np.isfinite(value) and value > 0):
        raise argparse.ArgumentTypeError(f"must be strictly positive, got {text!r}")
    return value


def _tamper(text: str) -> tuple[int, int, complex]:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("tamper must be i,j,re,im")
    try:
        return int(parts[0]), int(parts[1]), complex(float(parts[2]), float(parts[3]))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tamper {text!r}") from None


# ---- subcommands: each returns (payload, contracts_ok) ----

def cmd_generate(args, tol):
    p = ModelParameters(tuple(omegas_from_json(_load_json(args.omegas))))
    return matrix_to_json(build_model_matrix(p)), True


def cmd_check(args, tol):
    M = matrix_from_json(_load_json(args.matrix))
    cert = is_contraction(M, tol)
    payload = {"verdict": cert.verdict.value, "norm": cert.norm, "defect_rank": cert.defect_rank}
    payload["witness"] = None if cert.witness is None else [complex_to_json(z) for z in cert.witness]
    return payload, cert.contractive


def cmd_complete(args, tol):
    blocks = ParrottBlocks(**blocks_from_json(_load_json(args.blocks)))
    B = central_completion(blocks, tol)
    disk = None
    if blocks.corner_shape == (1, 1):
        d = scalar_feasibility_disk(blocks, tol)
        disk = {"center": complex_to_json(d.center), "radius": d.radius}
    B_min = minimal_norm_completion(blocks, tol)
    assembled = spectral_norm(assemble(blocks, B))
    payload = {
        "B_central": matrix_to_json(B),
        "disk": disk,
        "assembled_norm": assembled,
        "B_minimal_norm": matrix_to_json(B_min),
        "minimal_norm": spectral_norm(assemble(blocks, B_min)),
        "column_norm": blocks.column_norm(),
        "row_norm": blocks.row_norm(),
    }
    return payload, assembled <= 1.0 + tol.cert_tol


def _uniqueness_dict(rep) -> dict:
    return {
        "omegas": [complex_to_json(w) for w in rep.omegas],
        "solved_matrix": matrix_to_json(rep.solved_matrix),
        "max_disk_radius": rep.max_disk_radius,
        "max_deviation_from_model": rep.max_deviation_from_model,
        "advisory": rep.advisory,
        "all_violations": rep.all_violations,
        "perturbation_results": [
            {
                "position": [q.row, q.col],
                "epsilon": q.epsilon,
                "phase": q.phase,
                "resulting_norm": q.resulting_norm,
                "verdict": q.verdict,
            }
            for q in rep.perturbation_results
        ],
    }


def cmd_verify_theorem(args, tol):
    if args.n < 2 or args.draws < 1:
        raise InputError("--n must be >= 2 and --draws >= 1")
    limit = 10.0 * tol.cert_tol
    reports, ok = [], True
    for d in range(args.draws):
        omegas = draw_omegas(rng_for(args.seed, d), args.n, args.radius)
        if args.n >= 3:
            rep = uniqueness_sweep(omegas, args.epsilon, args.phases, tol)
        else:
            rep = unique_completion_solver(omegas, tol)
        passed = rep.max_disk_radius <= limit and rep.max_deviation_from_model <= limit and rep.all_violations
        log.info("draw %d: radius %.3e deviation %.3e pass=%s", d, rep.max_disk_radius,
                 rep.max_deviation_from_model, passed)
        ok = ok and (passed or rep.advisory)
        reports.append(_uniqueness_dict(rep))
    payload = {
        "n": args.n,
        "draws": args.draws,
        "radius": args.radius,
        "epsilon": args.epsilon,
        "phases": args.phases,
        "rng": GENERATOR_INFO,
        "max_disk_radius": max(r["max_disk_radius"] for r in reports),
        "max_deviation_from_model": max(r["max_deviation_from_model"] for r in reports),
        "reports": reports,
    }
    return payload, ok


def cmd_tmw_verify(args, tol):
    p = ModelParameters(tuple(omegas_from_json(_load_json(args.omegas))))
    basis, grid = TMWBasis(p), QuadratureGrid(args.nodes)
    gram = float(np.max(np.abs(gram_matrix(basis, grid) - np.eye(p.n))))
    entry = float(np.max(np.abs(compressed_shift_by_quadrature(basis, grid) - build_model_matrix(p))))
    payload = {
        "gram_defect": gram,
        "entry_defect": entry,
        "N": args.nodes,
        "max_omega": p.max_modulus,
        "low_accuracy": p.max_modulus >= LOW_ACCURACY_MODULUS,
        "target": args.target,
    }
    return payload, gram <= args.target and entry <= args.target


def cmd_moebius(args, tol):
    w = parse_complex(args.omega)
    T = matrix_from_json(_load_json(args.matrix))
    out = moebius_matrix(w, T, tol)
    payload = matrix_to_json(out)
    payload.update(
        omega=complex_to_json(w),
        condition=resolvent_condition(w, T),
        near_boundary=bool(near_boundary(w, T)),
        input_norm=spectral_norm(T),
        output_norm=spectral_norm(out),
    )
    return payload, True


def cmd_truncate(args, tol):
    if args.omegas is not None:
        omegas = omegas_from_json(_load_json(args.omegas))
        source = {"file": args.omegas}
    else:
        omegas = omega_rule(args.omegas_rule)
        source = {"rule": args.omegas_rule}
    rep = truncation_check(omegas, args.n_max, args.tamper, tol)
    payload = {
        "omegas_source": source,
        "sizes": rep.sizes,
        "norms": rep.norms,
        "blaschke_partial": rep.blaschke_partial,
        "tamper": None if rep.tamper is None else {
            "position": [rep.tamper[0], rep.tamper[1]],
            "delta": complex_to_json(rep.tamper[2]),
        },
        "violation_start": rep.violation_start,
        "monotone": rep.monotone,
    }
    return payload, rep.contract_ok


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_seed, default=0, help="64-bit unsigned seed (default 0)")
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    for name in ("eig", "rank", "cert", "solve"):
        default = getattr(DEFAULT_TOLERANCES, f"{name}_tol")
        common.add_argument(f"--{name}-tol", type=_positive, default=None,
                            help=f"override {name}_tol (default {default:g})")

    parser = argparse.ArgumentParser(prog="contractive", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="build the model matrix")
    p.add_argument("--omegas", required=True, help='file with {"omegas": [[re, im], ...]}')
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", parents=[common], help="certify a matrix as a contraction")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("complete", parents=[common], help="Parrott completion of a 2x2 block matrix")
    p.add_argument("--blocks", required=True, help='file with {"A": ..., "C": ..., "D": ...}')
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("verify-theorem", parents=[common], help="completion solver and uniqueness sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--draws", type=int, default=1)
    p.add_argument("--radius", type=float, default=0.8, help="draw omegas from the disk of this radius")
    p.add_argument("--epsilon", type=_positive, default=1e-2)
    p.add_argument("--phases", type=int, default=8)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("tmw-verify", parents=[common], help="quadrature cross-check of the model matrix")
    p.add_argument("--omegas", required=True)
    p.add_argument("--nodes", type=int, default=1024)
    p.add_argument("--target", type=_positive, default=1e-9)
    p.set_defaults(func=cmd_tmw_verify)

    p = sub.add_parser("moebius", parents=[common], help="apply a Moebius transform to a matrix")
    p.add_argument("--omega", required=True, help="parameter such as 0.3+0.2i")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_moebius)

    p = sub.add_parser("truncate", parents=[common], help="truncations of the infinite model matrix")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--omegas-rule", help="geometric:r (1 - r^k), power:r (r^k) or constant:c")
    src.add_argument("--omegas", help="file with explicit points")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--tamper", type=_tamper, help="i,j,re,im (1-based position)")
    p.set_defaults(func=cmd_truncate)
    return parser


def _configure_logging() -> None:
    level = os.environ.get("CONTRACTIVE_LOG", "error").upper()
    if level not in ("ERROR", "INFO", "DEBUG"):
        level = "ERROR"
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run(argv=None) -> int:
    _configure_logging()
    args = build_parser().parse_args(argv)
    try:
        tol = DEFAULT_TOLERANCES.with_overrides(
            eig_tol=args.eig_tol, rank_tol=args.rank_tol, cert_tol=args.cert_tol, solve_tol=args.solve_tol
        )
        payload, ok = args.func(args, tol)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ContractiveError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    report = {
        "schema": SCHEMA_VERSION,
        "version": __version__,
        "command": args.command,
        "seed": args.seed,
        "tolerances": tol.as_dict(),
        "contracts_ok": bool(ok),
    }
    report.update(payload)
    text = dumps(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_CONTRACT


def main() -> None:
    sys.exit(run())
