"""Command line front end.

Exit codes: 0 when the requested computation succeeds (and any checked
property holds), 1 for malformed input or arguments, 2 when the input is
well formed but the mathematical verdict is negative (not positive
definite, completion failed, q-positivity violated, bound exceeded, ...).

Every run emits a report: human-readable lines by default, a single JSON
object with ``--json``.  Floating point values in human output carry 17
significant digits so runs can be compared byte for byte.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

import numpy as np

from . import __version__
from .errors import InputError, QHError
from .io import (dump_json_file, load_json_file, measure_from_json,
                 pair_from_json, realization_from_json, sequence_from_json,
                 sequence_to_json)
from .measures import card_supp, herglotz_synthesize, synthesize_indefinite
from .moments import (HermitianSequence, caratheodory_extend,
                      is_positive_definite, negative_squares)
from .quatcore import Quaternion, adjoint, scale_of
from .realize import moment_sequence, verify_negative_squares_bound
from .slicefn import CaratheodoryFunction, caratheodory_kernel


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _sha256(filename: str) -> str:
    try:
        with open(filename, "rb") as fh:
            return hashlib.sha256(fh.read()).hexdigest()
    except OSError as exc:
        raise InputError(f"cannot read {filename}: {exc}") from exc


class _Parser(argparse.ArgumentParser):
    """Argument errors must map to exit code 1, not argparse's default 2."""

    def error(self, message):
        raise InputError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="qherglotz",
                     description="Quaternionic Herglotz function toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true",
                        help="emit the run report as a JSON object")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for commands that sample (default 0)")
    parser.add_argument("--tol", type=float, default=None,
                        help="override the verdict tolerance where applicable")
    parser.add_argument("--out", default=None,
                        help="write the produced artifact to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-pd", help="test a Hermitian sequence for "
                       "positive definiteness of its Toeplitz matrix")
    p.add_argument("sequence")
    p.add_argument("--order", type=int, default=None,
                   help="Toeplitz order N (default: full sequence)")
    p.set_defaults(func=_cmd_check_pd)

    p = sub.add_parser("neg-squares", help="count negative squares of a "
                       "Hermitian sequence")
    p.add_argument("sequence")
    p.add_argument("--n-max", type=int, default=None,
                   help="largest Toeplitz order to inspect (default: full)")
    p.set_defaults(func=_cmd_neg_squares)

    p = sub.add_parser("extend", help="extend a positive definite sequence "
                       "by Schur completion steps")
    p.add_argument("sequence")
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("synth", help="moments of a discrete q-positive measure")
    p.add_argument("measure")
    p.add_argument("--n-max", type=int, default=4)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("synth-indef", help="moments of a difference of "
                       "q-positive measures with disjoint support")
    p.add_argument("pair")
    p.add_argument("--n-max", type=int, default=4)
    p.set_defaults(func=_cmd_synth_indef)

    p = sub.add_parser("realize-check", help="check that the moment sequence "
                       "of a realization respects its signature bound")
    p.add_argument("realization")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=_cmd_realize_check)

    p = sub.add_parser("kernel-check", help="sample the reproducing kernel "
                       "identity of a sequence's Caratheodory function")
    p.add_argument("sequence")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--truncation", type=int, default=60)
    p.add_argument("--radius", type=float, default=0.5)
    p.set_defaults(func=_cmd_kernel_check)
    return parser


def _load_sequence(filename: str) -> HermitianSequence:
    return sequence_from_json(load_json_file(filename), filename)


def _emit_artifact(args, report: dict, payload: dict, lines: list[str]):
    report["result"] = payload
    if args.out:
        dump_json_file(args.out, payload)
        report["out"] = args.out
        lines.append(f"wrote: {args.out}")


def _cmd_check_pd(args, report, lines):
    seq = _load_sequence(args.sequence)
    order = seq.N if args.order is None else args.order
    if not 0 <= order <= seq.N:
        raise InputError(f"--order must lie in [0, {seq.N}]")
    ok, min_eig = is_positive_definite(seq, order)
    if args.tol is not None:
        ok = min_eig >= -abs(args.tol)
    report["results"] = {"order": order, "pd": ok, "min_eig": min_eig}
    lines.append(f"order: {order}")
    lines.append(f"min-eig: {_fmt(min_eig)}")
    lines.append(f"pd: {'true' if ok else 'false'}")
    return 0 if ok else 2


def _cmd_neg_squares(args, report, lines):
    seq = _load_sequence(args.sequence)
    n_max = seq.N if args.n_max is None else args.n_max
    if not 0 <= n_max <= seq.N:
        raise InputError(f"--n-max must lie in [0, {seq.N}]")
    kappa, profile, stabilized = negative_squares(seq, n_max)
    report["results"] = {"kappa": kappa, "profile": profile,
                         "stabilized": stabilized}
    lines.append(f"kappa: {kappa}")
    lines.append(f"profile: {' '.join(str(k) for k in profile)}")
    lines.append(f"stabilized: {'true' if stabilized else 'false'}")
    return 0


def _cmd_extend(args, report, lines):
    seq = _load_sequence(args.sequence)
    if args.steps < 0:
        raise InputError("--steps must be nonnegative")
    extended = caratheodory_extend(seq, args.steps)
    report["results"] = {"N_in": seq.N, "N_out": extended.N}
    lines.append(f"extended: N = {seq.N} -> {extended.N}")
    _emit_artifact(args, report, sequence_to_json(extended), lines)
    return 0


def _cmd_synth(args, report, lines):
    nu = measure_from_json(load_json_file(args.measure), args.measure)
    if args.n_max < 0:
        raise InputError("--n-max must be nonnegative")
    values = [herglotz_synthesize(nu, n) for n in range(args.n_max + 1)]
    seq = HermitianSequence(values)
    report["results"] = {"s": seq.s, "N": seq.N}
    lines.append(f"moments: 0..{seq.N}, block size {seq.s}")
    _emit_artifact(args, report, sequence_to_json(seq), lines)
    return 0


def _cmd_synth_indef(args, report, lines):
    pair = pair_from_json(load_json_file(args.pair), args.pair)
    if args.n_max < 0:
        raise InputError("--n-max must be nonnegative")
    values = [synthesize_indefinite(pair, n) for n in range(args.n_max + 1)]
    seq = HermitianSequence(values)
    card_minus = card_supp(pair.minus)
    report["results"] = {"s": seq.s, "N": seq.N, "card_supp_minus": card_minus}
    lines.append(f"moments: 0..{seq.N}, block size {seq.s}")
    lines.append(f"card-supp-minus: {card_minus}")
    _emit_artifact(args, report, sequence_to_json(seq), lines)
    return 0


def _cmd_realize_check(args, report, lines):
    r = realization_from_json(load_json_file(args.realization),
                              args.realization)
    if args.n_max < 0:
        raise InputError("--n-max must be nonnegative")
    kappa_seq, ok = verify_negative_squares_bound(r, args.n_max)
    report["results"] = {"kappa": r.J.kappa, "kappa_seq": kappa_seq,
                         "bound_holds": ok}
    lines.append(f"kappa: {r.J.kappa}")
    lines.append(f"kappa-seq: {kappa_seq}")
    lines.append(f"bound-holds: {'true' if ok else 'false'}")
    return 0 if ok else 2


def _random_ball_point(rng: np.random.Generator, radius: float) -> Quaternion:
    v = rng.normal(size=4)
    n = float(np.linalg.norm(v))
    while n == 0.0:
        v = rng.normal(size=4)
        n = float(np.linalg.norm(v))
    r = radius * float(rng.uniform()) ** 0.25
    v = v * (r / n)
    return Quaternion(v[0], v[1], v[2], v[3])


def _cmd_kernel_check(args, report, lines):
    seq = _load_sequence(args.sequence)
    if args.samples < 1:
        raise InputError("--samples must be positive")
    if not 0.0 < args.radius < 1.0:
        raise InputError("--radius must lie in (0, 1)")
    if args.truncation < seq.N:
        raise InputError(f"--truncation must be at least the sequence "
                         f"length {seq.N}")
    phi = CaratheodoryFunction(seq)
    tol = 1e-8 if args.tol is None else args.tol
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        p = _random_ball_point(rng, args.radius)
        q = _random_ball_point(rng, args.radius)
        w = (phi.value(p, args.truncation).value
             + adjoint(phi.value(q, args.truncation).value)).times_real(0.5)
        k = caratheodory_kernel(phi, p, q, args.truncation)
        resid = (k - k.scale_left(p).scale_right(q.conj()) - w).max_entry()
        worst = max(worst, resid / scale_of(w))
    ok = worst <= tol
    report["results"] = {"samples": args.samples, "truncation": args.truncation,
                         "radius": args.radius, "max_residual": worst,
                         "tolerance": tol, "identity_holds": ok}
    lines.append(f"samples: {args.samples}")
    lines.append(f"max-residual: {_fmt(worst)}")
    lines.append(f"identity-holds: {'true' if ok else 'false'}")
    return 0 if ok else 2


_INPUT_ATTRS = ("sequence", "measure", "pair", "realization")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (None, 0) else int(exc.code)

    report = {"command": args.command, "seed": args.seed, "inputs": {}}
    lines: list[str] = []
    try:
        for attr in _INPUT_ATTRS:
            filename = getattr(args, attr, None)
            if filename is not None:
                report["inputs"][filename] = _sha256(filename)
        code = args.func(args, report, lines)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except QHError as exc:
        report["verdict"] = "fail"
        report["reason"] = f"{type(exc).__name__}: {exc}"
        bad = getattr(exc, "violations", ())
        if bad:
            report["violations"] = [
                {"kind": v.kind, "t": v.t, "defect": v.defect} for v in bad]
        report["exit"] = 2
        if args.json:
            print(json.dumps(report, indent=2))
        else:
            print(f"verdict: fail ({report['reason']})")
            for v in bad:
                print(f"violation: {v.message}")
        return 2

    report["verdict"] = "ok" if code == 0 else "fail"
    report["exit"] = code
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for line in lines:
            print(line)
        print(f"verdict: {report['verdict']}")
    return code


if __name__ == "__main__":
    sys.exit(main())
