"""Command-line front end: ``upq-walls <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 engine/oracle disagreement.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Tuple

from . import oracle, report
from .core_types import CurveData, ExtendedInterval, HiggsType, as_rational, format_rational, validate_type
from .errors import ConsistencyError, UpqWallsError
from .parameter_space import alpha_range, chambers, enumerate_walls, field_profile
from .theorem_engine import (
    birationality_verdict,
    flip_codim_bound,
    irreducibility_verdict,
    smoothness_verdict,
)


class InputError(UpqWallsError):
    code = "InvalidInput"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ------------------------------------------------------------------ parsing


def parse_type(text: str) -> HiggsType:
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError(f"--type expects P,Q,A,B, got {text!r}")
    try:
        p, q, a, b = (int(x) for x in parts)
    except ValueError:
        raise InputError(f"--type entries must be integers, got {text!r}") from None
    return validate_type(p, q, a, b, require_main=True)


def parse_rational(text: str):
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not an exact rational: {text!r}") from None


def parse_window(text: Optional[str]) -> Optional[ExtendedInterval]:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"--window expects LO,HI, got {text!r}")
    lo, hi = (parse_rational(x) for x in parts)
    if lo > hi:
        raise InputError(f"--window has LO > HI: {text!r}")
    return ExtendedInterval.closed(lo, hi)


def curve_from_args(args) -> CurveData:
    if args.canonical:
        return CurveData.with_canonical_twist(args.genus)
    return CurveData(args.genus, args.degL)


def _common_parents() -> Tuple[argparse.ArgumentParser, argparse.ArgumentParser]:
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--genus", type=int, required=True)
    twist = curve.add_mutually_exclusive_group(required=True)
    twist.add_argument("--canonical", action="store_true", help="L = K, deg L = 2g-2")
    twist.add_argument("--degL", type=int)
    curve.add_argument("--window", help="finite closed window LO,HI (rationals n/d)")
    curve.add_argument("--out", help="write output here instead of stdout")
    typ = argparse.ArgumentParser(add_help=False)
    typ.add_argument("--type", required=True, help="P,Q,A,B")
    typ.add_argument("--format", choices=("text", "json", "svg"), default="text")
    typ.add_argument("--self-check", action="store_true", help="run the oracle alongside")
    return curve, typ


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="upq-walls", description="Walls and chambers of the alpha-line for twisted U(p,q)-Higgs types.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    curve, typ = _common_parents()
    sub.add_parser("analyze", parents=[curve, typ], help="full report")
    sub.add_parser("walls", parents=[curve, typ], help="critical values with witnesses")
    sub.add_parser("chambers", parents=[curve, typ], help="chambers with field profiles")
    verdict = sub.add_parser("verdict", parents=[curve, typ], help="theorem verdicts at one value")
    where = verdict.add_mutually_exclusive_group(required=True)
    where.add_argument("--alpha", help="smoothness / irreducibility at this alpha")
    where.add_argument("--wall", help="birationality and codimension at this wall")
    sub.add_parser("check", parents=[curve, typ], help="oracle identity suite and engine cross-check")
    sweep = sub.add_parser("sweep", parents=[curve], help="JSON-lines reports over a box of types")
    sweep.add_argument("--ranks", type=int, required=True, help="1 <= p, q <= RMAX")
    sweep.add_argument("--degrees", type=int, required=True, help="|a|, |b| <= DMAX")
    return parser


# ------------------------------------------------------------------ commands


def _write(args, data: bytes) -> None:
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode()


def _text_or_json(args, lines: List[str], obj) -> bytes:
    if args.format == "json":
        return _json_bytes(obj)
    if args.format == "svg":
        raise InputError("svg output is only available for analyze")
    return ("\n".join(lines) + "\n").encode()


def _require_consistent(check: Optional[oracle.OracleReport]) -> None:
    if check is not None and not check.passed:
        desc, exp, act = check.mismatches[0]
        raise ConsistencyError(
            f"{len(check.mismatches)} oracle mismatches; first: {desc}: expected {exp}, got {act}"
        )


def cmd_analyze(args, t, c, window) -> bytes:
    r = report.analyze(t, c, window, self_check=args.self_check)
    data = report.render(r, args.format)
    if r.self_check is not None and not r.self_check.passed:
        _write(args, data)
        _require_consistent(r.self_check)
    return data


def cmd_walls(args, t, c, window) -> bytes:
    window = report.default_window(t, c, window)
    walls = enumerate_walls(t, c, window)
    check = oracle.cross_check(t, c, window, walls) if args.self_check else None
    _require_consistent(check)
    lines = [f"walls of {t} on {window}:"] if walls else ["walls: none in window"]
    for w in walls:
        wit = " ".join(f"({a},{b},{s})" for a, b, s in (x.as_tuple() for x in w.witnesses))
        lines.append(f"  {format_rational(w.alpha_c)}  {w.status.value}  {wit}")
    obj = [
        {
            "alpha": format_rational(w.alpha_c),
            "status": w.status.value.lower(),
            "witnesses": [list(x.as_tuple()) for x in w.witnesses],
            "decompositions": [report._decomposition(d) for d in w.decompositions],
        }
        for w in walls
    ]
    return _text_or_json(args, lines, obj)


def cmd_chambers(args, t, c, window) -> bytes:
    window = report.default_window(t, c, window)
    chs = chambers(t, c, window, enumerate_walls(t, c, window, refine=False))
    lines = []
    for ch in chs:
        pr = ch.profile
        desc = "outside admissible range" if pr is None else f"beta {pr.beta_status}  gamma {pr.gamma_status}"
        lines.append(f"{ch.interval}  sample {format_rational(ch.sample_alpha)}  {desc}")
    obj = [
        {
            "lo": format_rational(ch.interval.lower),
            "hi": format_rational(ch.interval.upper),
            "sample": format_rational(ch.sample_alpha),
            "profile": report._profile(ch.profile),
        }
        for ch in chs
    ]
    return _text_or_json(args, lines, obj)


def cmd_verdict(args, t, c, window) -> bytes:
    if args.alpha is not None:
        alpha = parse_rational(args.alpha)
        smooth = smoothness_verdict(t, c, alpha)
        irred = irreducibility_verdict(t, c, alpha)
        profile = field_profile(t, c, alpha) if alpha_range(t, c).range.contains(alpha) else None
        obj = {
            "alpha": format_rational(alpha),
            "smoothness": report._verdict(smooth),
            "irreducibility": report._verdict(irred),
            "profile": report._profile(profile),
        }
        lines = [f"alpha = {format_rational(alpha)}", report._verdict_line("smooth", smooth),
                 report._verdict_line("irreducible", irred)]
        return _text_or_json(args, lines, obj)
    alpha = parse_rational(args.wall)
    codim = flip_codim_bound(t, c, alpha)
    biv = birationality_verdict(t, c, alpha)
    obj = {
        "alpha": format_rational(alpha),
        "codim_bounds": None if codim is None else [codim.bound_plus, codim.bound_minus],
        "codim_notes": [] if codim is None else list(codim.notes),
        "birational": report._verdict(biv),
    }
    lines = [f"wall {format_rational(alpha)}", report._verdict_line("birational", biv)]
    lines += [f"  note: {n}" for n in biv.notes]
    if codim is not None:
        lines.append(f"codimension estimates: +{codim.bound_plus} / -{codim.bound_minus}")
        lines += [f"  note: {n}" for n in codim.notes]
    return _text_or_json(args, lines, obj)


def cmd_check(args, t, c, window) -> bytes:
    result = oracle.verify_identities([(t, c)])
    rng = alpha_range(t, c)
    if window is not None or rng.finite:
        window = report.default_window(t, c, window)
        result = result.merged(oracle.cross_check(t, c, window, enumerate_walls(t, c, window)))
    obj = {"checked": result.checked, "passed": result.passed, "mismatches": [list(m) for m in result.mismatches]}
    lines = [f"{'passed' if result.passed else 'FAILED'}: {result.checked} checks"]
    lines += [f"  {d}: expected {e}, got {a}" for d, e, a in result.mismatches]
    data = _text_or_json(args, lines, obj)
    if not result.passed:
        _write(args, data)
        _require_consistent(result)
    return data


def _sweep_one(job) -> str:
    t, c, window = job
    try:
        r = report.analyze(t, c, window)
        return json.dumps(report.to_dict(r), separators=(",", ":"))
    except UpqWallsError as exc:
        return json.dumps({"type": report._type(t), "error": exc.code, "message": str(exc)}, separators=(",", ":"))


def sweep_jobs(rmax: int, dmax: int, c: CurveData, window: Optional[ExtendedInterval]):
    for p in range(1, rmax + 1):
        for q in range(1, rmax + 1):
            for a in range(-dmax, dmax + 1):
                for b in range(-dmax, dmax + 1):
                    yield HiggsType(p, q, a, b), c, window


def thread_count() -> int:
    raw = os.environ.get("UPQ_WALLS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"UPQ_WALLS_THREADS must be an integer, got {raw!r}") from None
    if n < 1:
        raise InputError("UPQ_WALLS_THREADS must be at least 1")
    return n


def cmd_sweep(args) -> bytes:
    if args.ranks < 1 or args.degrees < 0:
        raise InputError("--ranks must be >= 1 and --degrees >= 0")
    c = curve_from_args(args)
    jobs = list(sweep_jobs(args.ranks, args.degrees, c, parse_window(args.window)))
    workers = thread_count()
    if workers == 1:
        lines = [_sweep_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            lines = list(pool.map(_sweep_one, jobs, chunksize=8))
    return ("\n".join(lines) + "\n").encode()


COMMANDS = {
    "analyze": cmd_analyze,
    "walls": cmd_walls,
    "chambers": cmd_chambers,
    "verdict": cmd_verdict,
    "check": cmd_check,
}


VALUE_FLAGS = ("--window", "--alpha", "--wall", "--type")


def _glue_negative_values(argv: List[str]) -> List[str]:
    """Turn ``--window -3,3`` into ``--window=-3,3`` so argparse does not
    mistake a negative value for an option."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_values(argv))
    try:
        if args.command == "sweep":
            data = cmd_sweep(args)
        else:
            t = parse_type(args.type)
            c = curve_from_args(args)
            data = COMMANDS[args.command](args, t, c, parse_window(args.window))
        _write(args, data)
    except UpqWallsError as exc:
        print(f"upq-walls: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"upq-walls: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
