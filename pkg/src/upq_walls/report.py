"""Full analysis of one type on one window, and its text / JSON / SVG forms.

JSON field names are the stable interface; the text layout is not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple
from xml.sax.saxutils import escape

from . import oracle
from .core_types import CurveData, ExtendedInterval, HiggsType, format_rational
from .errors import HypothesisError, WindowRequired
from .invariants import GenericityFlags, expected_dimension, genericity, mu, mw_interval, toledo
from .parameter_space import (
    Chamber,
    FieldProfile,
    FieldStatus,
    FieldStatusKind,
    ParamRange,
    Thresholds,
    Wall,
    WallStatus,
    WitnessTriple,
    alpha_range,
    chambers,
    enumerate_walls,
    thresholds,
)
from .theorem_engine import (
    Conclusion,
    Decomposition,
    FlipCodimBound,
    ToledoCase,
    VanishingWindow,
    Verdict,
    WindowSource,
    birationality_verdict,
    flip_codim_bound,
    gl_comparison_window,
    h2_vanishing_window,
    irreducibility_verdict,
    smoothness_verdict,
    toledo_meaningful_range,
)


@dataclass(frozen=True)
class InvariantSummary:
    mu: Fraction
    toledo: Fraction
    dimension: int
    mw_at_zero: Tuple[Fraction, Fraction]
    genericity: GenericityFlags
    toledo_case: ToledoCase


@dataclass(frozen=True)
class WallReport:
    wall: Wall
    codim: Optional[FlipCodimBound]
    birational: Verdict


@dataclass(frozen=True)
class ChamberReport:
    chamber: Chamber
    smoothness: Optional[Verdict]
    irreducibility: Verdict


@dataclass(frozen=True)
class AnalysisReport:
    type: HiggsType
    curve: CurveData
    window: ExtendedInterval
    invariants: InvariantSummary
    range: ParamRange
    thresholds: Thresholds
    h2_window: Optional[VanishingWindow]
    walls: Tuple[WallReport, ...]
    chambers: Tuple[ChamberReport, ...]
    gl_comparison: Verdict
    self_check: Optional[oracle.OracleReport] = None


def default_window(t: HiggsType, c: CurveData, window: Optional[ExtendedInterval]) -> ExtendedInterval:
    if window is not None:
        return window
    rng = alpha_range(t, c)
    if not rng.finite:
        raise WindowRequired("p = q: the admissible range is unbounded; pass --window LO,HI")
    return rng.range


def analyze(
    t: HiggsType,
    c: CurveData,
    window: Optional[ExtendedInterval] = None,
    self_check: bool = False,
    decomposition_detail: bool = True,
) -> AnalysisReport:
    window = default_window(t, c, window)
    walls = enumerate_walls(t, c, window)
    wall_reports = []
    for w in walls:
        codim = flip_codim_bound(t, c, w.alpha_c, decompositions=list(w.decompositions))
        birational = birationality_verdict(t, c, w.alpha_c, decompositions=list(w.decompositions))
        if not decomposition_detail:
            w = Wall(w.alpha_c, w.witnesses, w.status, ())
        wall_reports.append(WallReport(w, codim, birational))

    chamber_reports = []
    for ch in chambers(t, c, window, walls):
        try:
            smooth = smoothness_verdict(t, c, ch.sample_alpha)
        except HypothesisError:
            smooth = None
        chamber_reports.append(ChamberReport(ch, smooth, irreducibility_verdict(t, c, ch.sample_alpha)))

    try:
        h2 = h2_vanishing_window(t, c)
    except HypothesisError:
        h2 = None

    mw0 = mw_interval(t.p, t.q, 0, c)
    summary = InvariantSummary(
        mu=mu(t),
        toledo=toledo(t),
        dimension=expected_dimension(t, c),
        mw_at_zero=(mw0.tau_min, mw0.tau_max),
        genericity=genericity(t),
        toledo_case=toledo_meaningful_range(t, c).case,
    )
    check = None
    if self_check:
        check = oracle.cross_check(t, c, window, walls).merged(oracle.verify_identities([(t, c)]))
    return AnalysisReport(
        type=t,
        curve=c,
        window=window,
        invariants=summary,
        range=alpha_range(t, c),
        thresholds=thresholds(t, c),
        h2_window=h2,
        walls=tuple(wall_reports),
        chambers=tuple(chamber_reports),
        gl_comparison=gl_comparison_window(t, c),
        self_check=check,
    )


# ------------------------------------------------------------------ to JSON


def _rat(x: Optional[Fraction]) -> Optional[str]:
    return None if x is None else format_rational(x)


def _interval(i: ExtendedInterval) -> Dict[str, Any]:
    return {
        "lo": "-inf" if i.lower is None else format_rational(i.lower),
        "hi": "+inf" if i.upper is None else format_rational(i.upper),
        "lo_closed": i.lower_closed,
        "hi_closed": i.upper_closed,
    }


def _type(t: HiggsType) -> Dict[str, int]:
    return {"p": t.p, "q": t.q, "a": t.a, "b": t.b}


def _status(s: FieldStatus) -> Dict[str, Any]:
    return {"kind": s.kind.value, "bound": s.bound}


def _profile(pr: Optional[FieldProfile]) -> Optional[Dict[str, Any]]:
    if pr is None:
        return None
    return {
        "beta_status": _status(pr.beta_status),
        "gamma_status": _status(pr.gamma_status),
        "beta_surjective": pr.beta_surjective,
        "gamma_surjective": pr.gamma_surjective,
        "extreme_note": pr.extreme_note,
    }


def _verdict(v: Optional[Verdict]) -> Optional[Dict[str, Any]]:
    if v is None:
        return None
    return {
        "applicable": v.applicable,
        "conclusion": v.conclusion.value,
        "window": _interval(v.window_used),
        "conditions": [[name, ok] for name, ok in v.conditions],
        "notes": list(v.notes),
        "details": dict(v.details),
    }


def _decomposition(d: Decomposition) -> Dict[str, Any]:
    return {
        "t1": _type(d.t1),
        "t2": _type(d.t2),
        "chi_12": d.chi_12,
        "chi_21": d.chi_21,
        "same_sign_ranks": d.same_sign_ranks,
    }


def to_dict(r: AnalysisReport) -> Dict[str, Any]:
    inv = r.invariants
    th = r.thresholds
    h2 = r.h2_window
    return {
        "type": _type(r.type),
        "curve": {"genus": r.curve.genus, "deg_l": r.curve.deg_l, "canonical": r.curve.canonical},
        "window": _interval(r.window),
        "invariants": {
            "mu": _rat(inv.mu),
            "toledo": _rat(inv.toledo),
            "dimension": inv.dimension,
            "mw_at_zero": [_rat(inv.mw_at_zero[0]), _rat(inv.mw_at_zero[1])],
            "genericity": {
                "coprime_rank_sum_exists_m": inv.genericity.coprime_rank_sum_exists_m,
                "coprime_pq": inv.genericity.coprime_pq,
                "alpha_independent_possible": inv.genericity.alpha_independent_possible,
            },
            "toledo_case": inv.toledo_case.value,
        },
        "range": dict(_interval(r.range.range), finite=r.range.finite),
        "thresholds": {
            "alpha_i": [_rat(x) for x in th.alpha_i],
            "alpha_prime_j": [_rat(x) for x in th.alpha_prime_j],
            "alpha_t": _rat(th.alpha_t),
            "alpha_t_prime": _rat(th.alpha_t_prime),
        },
        "h2_window": None
        if h2 is None
        else {
            "intervals": [_interval(i) for i in h2.intervals],
            "stable_only": h2.stable_only,
            "sources": [s.value for s in h2.sources],
            "pieces": [[s.value, _interval(i)] for s, i in h2.pieces],
            "notes": list(h2.notes),
        },
        "walls": [
            {
                "alpha": _rat(w.wall.alpha_c),
                "status": w.wall.status.value.lower(),
                "witnesses": [list(x.as_tuple()) for x in w.wall.witnesses],
                "decompositions": [_decomposition(d) for d in w.wall.decompositions],
                "codim_bounds": None if w.codim is None else [w.codim.bound_plus, w.codim.bound_minus],
                "codim_notes": [] if w.codim is None else list(w.codim.notes),
                "birational": _verdict(w.birational),
            }
            for w in r.walls
        ],
        "chambers": [
            {
                "lo": _rat(ch.chamber.interval.lower),
                "hi": _rat(ch.chamber.interval.upper),
                "sample": _rat(ch.chamber.sample_alpha),
                "profile": _profile(ch.chamber.profile),
                "verdicts": {
                    "smoothness": _verdict(ch.smoothness),
                    "irreducibility": _verdict(ch.irreducibility),
                },
            }
            for ch in r.chambers
        ],
        "gl_comparison": _verdict(r.gl_comparison),
        "self_check": None
        if r.self_check is None
        else {
            "checked": r.self_check.checked,
            "passed": r.self_check.passed,
            "mismatches": [list(m) for m in r.self_check.mismatches],
        },
    }


def to_json(r: AnalysisReport, indent: Optional[int] = 2) -> str:
    return json.dumps(to_dict(r), indent=indent)


# ---------------------------------------------------------------- from JSON


def _parse_rat(s: Optional[str]) -> Optional[Fraction]:
    return None if s is None else Fraction(s)


def _parse_interval(d: Dict[str, Any]) -> ExtendedInterval:
    lo = None if d["lo"] == "-inf" else Fraction(d["lo"])
    hi = None if d["hi"] == "+inf" else Fraction(d["hi"])
    return ExtendedInterval(lo, hi, d["lo_closed"], d["hi_closed"])


def _parse_type(d: Dict[str, int]) -> HiggsType:
    return HiggsType(d["p"], d["q"], d["a"], d["b"])


def _parse_status(d: Dict[str, Any]) -> FieldStatus:
    return FieldStatus(FieldStatusKind(d["kind"]), d["bound"])


def _parse_profile(d: Optional[Dict[str, Any]]) -> Optional[FieldProfile]:
    if d is None:
        return None
    return FieldProfile(
        _parse_status(d["beta_status"]),
        _parse_status(d["gamma_status"]),
        d["beta_surjective"],
        d["gamma_surjective"],
        d["extreme_note"],
    )


def _parse_verdict(d: Optional[Dict[str, Any]]) -> Optional[Verdict]:
    if d is None:
        return None
    return Verdict(
        applicable=d["applicable"],
        conclusion=Conclusion(d["conclusion"]),
        window_used=_parse_interval(d["window"]),
        conditions=tuple((name, ok) for name, ok in d["conditions"]),
        notes=tuple(d["notes"]),
        details=dict(d["details"]),
    )


def from_dict(d: Dict[str, Any]) -> AnalysisReport:
    t = _parse_type(d["type"])
    cd = d["curve"]
    curve = CurveData(cd["genus"], cd["deg_l"], cd["canonical"])
    inv = d["invariants"]
    gen = inv["genericity"]
    summary = InvariantSummary(
        mu=Fraction(inv["mu"]),
        toledo=Fraction(inv["toledo"]),
        dimension=inv["dimension"],
        mw_at_zero=(Fraction(inv["mw_at_zero"][0]), Fraction(inv["mw_at_zero"][1])),
        genericity=GenericityFlags(
            gen["coprime_rank_sum_exists_m"], gen["coprime_pq"], gen["alpha_independent_possible"]
        ),
        toledo_case=ToledoCase(inv["toledo_case"]),
    )
    th = d["thresholds"]
    h2 = d["h2_window"]
    walls = []
    for w in d["walls"]:
        decs = tuple(
            Decomposition(
                _parse_type(x["t1"]), _parse_type(x["t2"]), x["chi_12"], x["chi_21"], x["same_sign_ranks"]
            )
            for x in w["decompositions"]
        )
        wall = Wall(
            Fraction(w["alpha"]),
            tuple(WitnessTriple(*x) for x in w["witnesses"]),
            WallStatus(w["status"].capitalize()),
            decs,
        )
        codim = None
        if w["codim_bounds"] is not None:
            codim = FlipCodimBound(w["codim_bounds"][0], w["codim_bounds"][1], tuple(w["codim_notes"]))
        walls.append(WallReport(wall, codim, _parse_verdict(w["birational"])))
    chs = []
    for ch in d["chambers"]:
        chamber = Chamber(
            ExtendedInterval.open(Fraction(ch["lo"]), Fraction(ch["hi"])),
            Fraction(ch["sample"]),
            _parse_profile(ch["profile"]),
        )
        v = ch["verdicts"]
        chs.append(ChamberReport(chamber, _parse_verdict(v["smoothness"]), _parse_verdict(v["irreducibility"])))
    sc = d["self_check"]
    return AnalysisReport(
        type=t,
        curve=curve,
        window=_parse_interval(d["window"]),
        invariants=summary,
        range=ParamRange(_parse_interval(d["range"]), d["range"]["finite"]),
        thresholds=Thresholds(
            tuple(Fraction(x) for x in th["alpha_i"]),
            tuple(Fraction(x) for x in th["alpha_prime_j"]),
            _parse_rat(th["alpha_t"]),
            _parse_rat(th["alpha_t_prime"]),
        ),
        h2_window=None
        if h2 is None
        else VanishingWindow(
            intervals=tuple(_parse_interval(i) for i in h2["intervals"]),
            stable_only=h2["stable_only"],
            sources=tuple(WindowSource(s) for s in h2["sources"]),
            pieces=tuple((WindowSource(s), _parse_interval(i)) for s, i in h2["pieces"]),
            notes=tuple(h2["notes"]),
        ),
        walls=tuple(walls),
        chambers=tuple(chs),
        gl_comparison=_parse_verdict(d["gl_comparison"]),
        self_check=None
        if sc is None
        else oracle.OracleReport(sc["checked"], tuple(tuple(m) for m in sc["mismatches"]), sc["passed"]),
    )


def from_json(text: str) -> AnalysisReport:
    return from_dict(json.loads(text))


# -------------------------------------------------------------------- text


def _verdict_line(name: str, v: Optional[Verdict]) -> str:
    if v is None:
        return f"{name}: hypotheses of the vanishing results fail"
    extra = "".join(f", {k}={v.details[k]}" for k in sorted(v.details))
    return f"{name}: {v.conclusion.value} (window {v.window_used}{extra})"


def _ascii_line(r: AnalysisReport, width: int = 61) -> str:
    lo, hi = r.window.lower, r.window.upper
    cells = ["-"] * width
    if hi > lo:
        for w in r.walls:
            pos = round((w.wall.alpha_c - lo) / (hi - lo) * (width - 1))
            cells[pos] = "|" if w.wall.status is WallStatus.DECOMPOSABLE else ":"
    return f"{format_rational(lo)} [{''.join(cells)}] {format_rational(hi)}"


def to_text(r: AnalysisReport) -> str:
    inv = r.invariants
    out = [
        f"type {r.type}  genus {r.curve.genus}  deg(L) {r.curve.deg_l}"
        + ("  (canonical)" if r.curve.canonical else ""),
        f"window {r.window}",
        f"mu = {format_rational(inv.mu)}  toledo = {format_rational(inv.toledo)}  dimension = {inv.dimension}",
        f"MW bounds at alpha=0: [{format_rational(inv.mw_at_zero[0])}, {format_rational(inv.mw_at_zero[1])}]",
        f"toledo range case: {inv.toledo_case.value}",
        "genericity: "
        f"coprime_rank_sum_exists_m={inv.genericity.coprime_rank_sum_exists_m} "
        f"coprime_pq={inv.genericity.coprime_pq} "
        f"alpha_independent_possible={inv.genericity.alpha_independent_possible}",
        f"alpha range: {r.range.range}",
    ]
    th = r.thresholds
    if th.alpha_i:
        out.append("alpha_i: " + ", ".join(format_rational(x) for x in th.alpha_i))
    if th.alpha_prime_j:
        out.append("alpha'_j: " + ", ".join(format_rational(x) for x in th.alpha_prime_j))
    if th.alpha_t is not None:
        out.append(f"alpha_t: {format_rational(th.alpha_t)}")
    if th.alpha_t_prime is not None:
        out.append(f"alpha_t': {format_rational(th.alpha_t_prime)}")
    if r.h2_window is not None:
        ivs = " u ".join(str(i) for i in r.h2_window.intervals) or "empty"
        out.append(f"H2 vanishing window: {ivs}" + ("  (stable objects only)" if r.h2_window.stable_only else ""))
    out.append(_ascii_line(r))
    if not r.walls:
        out.append("walls: none in window")
    else:
        out.append(f"walls: {len(r.walls)}")
    for w in r.walls:
        wall = w.wall
        wit = " ".join(f"({a},{b},{s})" for a, b, s in (x.as_tuple() for x in wall.witnesses))
        out.append(f"  alpha_c = {format_rational(wall.alpha_c)}  {wall.status.value}  witnesses {wit}")
        for d in wall.decompositions:
            out.append(f"    {d.t1} + {d.t2}  chi(t1,t2) = {d.chi_21}  chi(t2,t1) = {d.chi_12}")
        if w.codim is not None:
            out.append(f"    codimension estimates: +{w.codim.bound_plus} / -{w.codim.bound_minus}")
        out.append("    " + _verdict_line("birational", w.birational))
        for note in w.birational.notes:
            out.append(f"      note: {note}")
    out.append(f"chambers: {len(r.chambers)}")
    for ch in r.chambers:
        c = ch.chamber
        out.append(f"  {c.interval}  sample {format_rational(c.sample_alpha)}")
        if c.profile is not None:
            pr = c.profile
            out.append(
                f"    beta {pr.beta_status}  gamma {pr.gamma_status}  "
                f"beta surjective {pr.beta_surjective}  gamma surjective {pr.gamma_surjective}"
            )
        else:
            out.append("    sample outside the admissible range")
        out.append("    " + _verdict_line("smooth", ch.smoothness))
        out.append("    " + _verdict_line("irreducible", ch.irreducibility))
    if r.gl_comparison.applicable or r.type.p == r.type.q:
        out.append(_verdict_line("GL(2p) comparison", r.gl_comparison))
    if r.self_check is not None:
        sc = r.self_check
        out.append(f"self-check: {'passed' if sc.passed else 'FAILED'} ({sc.checked} checks)")
        for desc, exp, act in sc.mismatches:
            out.append(f"  {desc}: expected {exp}, got {act}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------- SVG

SVG_WIDTH = 800
SVG_HEIGHT = 160
MARGIN = 40
AXIS_Y = 90


def _x(alpha: Fraction, lo: Fraction, hi: Fraction) -> int:
    if hi == lo:
        return SVG_WIDTH // 2
    return MARGIN + round((alpha - lo) / (hi - lo) * (SVG_WIDTH - 2 * MARGIN))


def _clip(i: ExtendedInterval, lo: Fraction, hi: Fraction) -> Optional[Tuple[Fraction, Fraction]]:
    a = lo if i.lower is None else max(lo, i.lower)
    b = hi if i.upper is None else min(hi, i.upper)
    return (a, b) if a < b else None


def to_svg(r: AnalysisReport) -> str:
    lo, hi = r.window.lower, r.window.upper
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f"<title>{escape(f'walls of {r.type} on {r.window}')}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if r.h2_window is not None:
        for i in r.h2_window.intervals:
            span = _clip(i, lo, hi)
            if span:
                x0, x1 = _x(span[0], lo, hi), _x(span[1], lo, hi)
                parts.append(
                    f'<rect class="window h2" x="{x0}" y="{AXIS_Y - 30}" width="{x1 - x0}" height="60" '
                    'fill="#cde8cd" fill-opacity="0.7"/>'
                )
    birational = [w.birational.window_used for w in r.walls if w.birational.applicable]
    seen = set()
    for i in birational:
        span = _clip(i, lo, hi)
        if span and span not in seen:
            seen.add(span)
            x0, x1 = _x(span[0], lo, hi), _x(span[1], lo, hi)
            parts.append(
                f'<rect class="window birational" x="{x0}" y="{AXIS_Y - 12}" width="{x1 - x0}" height="24" '
                'fill="#c9d7f0" fill-opacity="0.8"/>'
            )
    parts.append(
        f'<line class="axis" x1="{MARGIN}" y1="{AXIS_Y}" x2="{SVG_WIDTH - MARGIN}" y2="{AXIS_Y}" '
        'stroke="black" stroke-width="2"/>'
    )
    for x, label in ((MARGIN, lo), (SVG_WIDTH - MARGIN, hi)):
        parts.append(
            f'<text class="endpoint" x="{x}" y="{AXIS_Y + 45}" text-anchor="middle" '
            f'font-size="12">{format_rational(label)}</text>'
        )
    for w in r.walls:
        x = _x(w.wall.alpha_c, lo, hi)
        decomposable = w.wall.status is WallStatus.DECOMPOSABLE
        dash = "" if decomposable else ' stroke-dasharray="4,3"'
        kind = "decomposable" if decomposable else "numerical"
        parts.append(
            f'<line class="wall {kind}" x1="{x}" y1="{AXIS_Y - 25}" x2="{x}" y2="{AXIS_Y + 25}" '
            f'stroke="#b22222" stroke-width="2"{dash}/>'
        )
        parts.append(
            f'<text class="wall-label" x="{x}" y="{AXIS_Y - 32}" text-anchor="middle" '
            f'font-size="10">{format_rational(w.wall.alpha_c)}</text>'
        )
    for k, ch in enumerate(r.chambers, 1):
        x = _x(ch.chamber.sample_alpha, lo, hi)
        parts.append(
            f'<text class="chamber" x="{x}" y="{AXIS_Y + 20}" text-anchor="middle" font-size="11">C{k}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(r: AnalysisReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        return (to_json(r) + "\n").encode()
    if fmt == "svg":
        return to_svg(r).encode()
    if fmt == "text":
        return to_text(r).encode()
    raise ValueError(f"unknown format {fmt!r}")
