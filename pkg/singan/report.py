"""
Turning an Analysis into an AnalysisReport, and rendering it as text or JSON.

JSON output is canonical (sorted keys, fixed indentation) and validated
against the published report schema before it is written.
"""

import json
from fractions import Fraction
from typing import Iterable, List, Optional

import jsonschema
from jsonschema import validate

from .analysis import Analysis
from .deauto import DeautoReport
from .dsl.printer import format_param
from .errors import SinganError
from .growth import Recurrence, RootInterval
from .schemas import (
    AnalysisReport,
    ConfinementCheckOut,
    DeautoOut,
    GrowthOut,
    RecurrenceOut,
    RootOut,
    SingularityOut,
    VerdictOut,
)
from .singularity import ANTICONFINED, CONFINED, SingularityReport, entry_eps, entry_symbol

JSON_SCHEMA = AnalysisReport.model_json_schema(by_alias=True)

DIGITS = 12
SHOWN = 4


def decimal(value: Optional[float]) -> Optional[str]:
    return None if value is None else f"{value:.{DIGITS}f}"


def rational(value: Fraction) -> str:
    return str(Fraction(value))


def eps_power(valuation: int) -> str:
    if valuation == 0:
        return "O(1)"
    return "ε" if valuation == 1 else f"ε^{{{valuation}}}"


def pattern_text(symbols: Iterable[str]) -> str:
    return "{" + ", ".join(symbols) + "}"


def _component_text(components) -> str:
    parts = [eps_power(v) for v in components]
    return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


def notation(r: SingularityReport) -> str:
    """Confined patterns as {1, 0, ∞, -1}; anticonfined orbits as …, ε^{2}, ε, c, ε^{-1}, …"""
    if r.classification == CONFINED:
        return pattern_text(entry_symbol(e) for e in r.pattern)
    if r.classification != ANTICONFINED:
        return f"not confined within {r.horizon} steps"
    pair = bool(r.forward_components or r.backward_components)
    if pair:
        backward = [_component_text(c) for c in r.backward_components[:SHOWN]]
        forward = [_component_text(c) for c in r.forward_components[:SHOWN]]
    else:
        backward = [eps_power(v) for v in r.backward_valuations[:SHOWN]]
        forward = [eps_power(v) for v in r.forward_valuations[:SHOWN]]
    window = [_window_text(comps) for comps in r.regular_window]
    return ", ".join(["…"] + list(reversed(backward)) + window + forward + ["…"])


def _window_text(components) -> str:
    parts = [entry_eps(e) for e in components]
    return parts[0] if len(parts) == 1 else "(" + ", ".join(parts) + ")"


def _growth_out(r: SingularityReport) -> Optional[GrowthOut]:
    g = r.growth
    if g is None:
        return None
    return GrowthOut(
        type=g.kind,
        rate=decimal(g.rate),
        slope=rational(g.slope) if g.slope is not None else None,
        recurrence=str(g.recurrence) if g.recurrence is not None else None,
    )


def singularity_out(r: SingularityReport) -> SingularityOut:
    return SingularityOut(
        value=r.entry,
        seed=str(r.seed),
        source=r.source,
        classification=r.classification,
        pattern=[entry_symbol(e) for e in r.pattern],
        notation=notation(r),
        horizon=r.horizon,
        truncation=r.truncation,
        forward_valuations=list(r.forward_valuations),
        backward_valuations=list(r.backward_valuations),
        forward_components=[list(c) for c in r.forward_components],
        backward_components=[list(c) for c in r.backward_components],
        regular_window=[_window_text(comps) for comps in r.regular_window],
        growth=_growth_out(r),
    )


def recurrence_out(r: Optional[Recurrence]) -> Optional[RecurrenceOut]:
    if r is None:
        return None
    return RecurrenceOut(order=r.order, coeffs=[rational(c) for c in r.coeffs], valid_from=r.valid_from, text=str(r))


def root_out(root: Optional[RootInterval]) -> Optional[RootOut]:
    if root is None:
        return None
    return RootOut(lo=rational(root.lo), hi=rational(root.hi), decimal=root.decimal(DIGITS))


def deauto_out(d: Optional[DeautoReport]) -> Optional[DeautoOut]:
    if d is None:
        return None
    checks = [
        ConfinementCheckOut(
            value=c.value,
            classification=c.report.classification,
            autonomous=c.autonomous.classification,
            pattern=[entry_symbol(e) for e in c.report.pattern],
            autonomous_pattern=[entry_symbol(e) for e in c.autonomous.pattern],
            matches_autonomous=c.matches_autonomous,
        )
        for c in d.checks
    ]
    return DeautoOut(
        param=d.param,
        constraint=format_param(d.constraint),
        char_poly=str(d.char_poly) if d.char_poly is not None else None,
        factors=list(d.factors),
        dominant_root=root_out(d.dominant_root),
        predicted_entropy=decimal(d.predicted_entropy),
        loglog_rate=decimal(d.loglog_rate),
        confinement_verified=d.confinement_verified,
        checks=checks,
    )


def build_report(a: Analysis) -> AnalysisReport:
    e = a.entropy
    v = a.verdict
    return AnalysisReport(
        name=a.m.name,
        kind=a.m.arity,
        config=a.config.echo(),
        singular_values=[sv.label for sv in a.singular_values],
        singularities=[singularity_out(r) for r in a.singularities],
        probes=[singularity_out(r) for r in a.probes],
        degrees=list(e.degrees.degrees),
        seeds_used=list(e.degrees.seeds_used),
        recurrence=recurrence_out(e.recurrence),
        char_poly=str(e.char_poly) if e.char_poly is not None else None,
        factors=list(e.factors),
        dominant_root=root_out(e.dominant_root),
        entropy=decimal(e.entropy),
        entropy_method=e.method,
        growth_type=e.growth_type,
        polynomial_order=e.order,
        verdict=VerdictOut(kind=v.kind, reason=v.reason, bound=decimal(v.bound)),
        deauto=deauto_out(a.deauto),
        notes=list(a.notes),
        warnings=list(dict.fromkeys(a.warnings)),
    )


def validate_report(data: dict) -> None:
    try:
        validate(instance=data, schema=JSON_SCHEMA)
    except jsonschema.exceptions.ValidationError as e:
        raise SinganError(f"Report validation failed: {e.message}") from e


def render_json(r: AnalysisReport) -> str:
    data = r.model_dump(by_alias=True, mode="json")
    validate_report(data)
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_json(text: str) -> AnalysisReport:
    return AnalysisReport.model_validate_json(text)


def _singularity_lines(items: List[SingularityOut]) -> List[str]:
    lines = []
    for s in items:
        line = f"  {s.value}: {s.classification} {s.notation}"
        if s.growth is not None:
            line += f"; growth {s.growth.type}"
            if s.growth.rate is not None:
                line += f" rate {s.growth.rate}"
            if s.growth.slope is not None:
                line += f" slope {s.growth.slope}"
            if s.growth.recurrence is not None:
                line += f" ({s.growth.recurrence})"
        lines.append(line)
    return lines


def render_text(r: AnalysisReport) -> str:
    cfg = " ".join(f"{k}={v}" for k, v in sorted(r.config.items()))
    lines = [f"map: {r.name} ({r.kind})", f"config: {cfg}"]
    if r.kind == "scalar":
        lines.append("singular values: " + (", ".join(r.singular_values) or "none"))
    if r.singularities:
        lines.append("singularities:")
        lines.extend(_singularity_lines(r.singularities))
    if r.probes:
        lines.append("probes:")
        lines.extend(_singularity_lines(r.probes))
    lines.append("degrees: " + ", ".join(str(d) for d in r.degrees))
    if r.recurrence is not None:
        lines.append(f"recurrence: {r.recurrence.text} (from n = {r.recurrence.valid_from})")
    if r.char_poly is not None:
        factored = " ".join(r.factors)
        lines.append(f"characteristic polynomial: {r.char_poly} = {factored}")
    if r.dominant_root is not None:
        lines.append(f"dominant root: {r.dominant_root.decimal} in [{r.dominant_root.lo}, {r.dominant_root.hi}]")
    growth = r.growth_type if r.polynomial_order is None else f"{r.growth_type} (order {r.polynomial_order})"
    lines.append(f"entropy: {r.entropy} ({r.entropy_method}), degree growth {growth}")
    verdict = f"verdict: {r.verdict.kind}"
    if r.verdict.bound is not None:
        verdict += f" (entropy lower bound {r.verdict.bound})"
    lines.append(f"{verdict}: {r.verdict.reason}")
    if r.deauto is not None:
        d = r.deauto
        lines.append(f"deautonomisation of {d.param}: {d.constraint}")
        for c in d.checks:
            lines.append(
                f"  {c.value}: {c.classification} {pattern_text(c.pattern)}"
                f" (autonomous {c.autonomous} {pattern_text(c.autonomous_pattern)})"
            )
        lines.append(f"  confinement verified: {'yes' if d.confinement_verified else 'no'}")
        if d.char_poly is not None:
            lines.append(f"  constraint polynomial: {d.char_poly} = {' '.join(d.factors)}")
        if d.predicted_entropy is not None:
            lines.append(f"  predicted entropy: {d.predicted_entropy}")
        if d.loglog_rate is not None:
            lines.append(f"  log log growth rate: {d.loglog_rate}")
    for note in r.notes:
        lines.append(f"note: {note}")
    for warning in r.warnings:
        lines.append(f"warning: {warning}")
    return "\n".join(lines) + "\n"


def render_report(r: AnalysisReport, fmt: str = "text") -> bytes:
    if fmt == "json":
        return render_json(r).encode("utf-8")
    if fmt == "text":
        return render_text(r).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")
