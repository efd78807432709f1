"""
One analysis run: singular values, their classification, anticonfined probes,
degree growth and the combined verdict.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .config import AnalysisConfig
from .deauto import DeautoReport, deautonomisation_report
from .errors import NotAnticonfined
from .growth import EntropyEstimate, entropy_estimate
from .maps.model import SCALAR, MapInstance
from .singularity import (
    Seed,
    SingularityReport,
    SingularValue,
    Verdict,
    classify_seed,
    classify_singularity,
    find_singular_values,
    infinity_probe,
    probe_anticonfined,
    verdict,
)

logger = logging.getLogger(__name__)

NO_SINGULAR_VALUES = "no enterable singular values; anticonfined probe at infinity"


@dataclass
class Analysis:
    m: MapInstance
    config: AnalysisConfig
    singular_values: List[SingularValue]
    singularities: List[SingularityReport]
    probes: List[SingularityReport]
    entropy: EntropyEstimate
    verdict: Verdict
    deauto: Optional[DeautoReport] = None
    notes: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


def run_probes(
    m: MapInstance, probes: Sequence[Seed], config: AnalysisConfig, singular: Sequence[SingularValue]
) -> Tuple[List[SingularityReport], List[str]]:
    """Classify user and catalog probes; add the probe at infinity when it is not a singular value."""
    reports, notes = [], []
    for seed in probes:
        logger.info("%s: probing %s", m.name, seed)
        reports.append(classify_seed(m, seed, config, singular))
    if m.arity == SCALAR and not any(v.is_infinite for v in singular):
        seed = infinity_probe()
        try:
            reports.append(probe_anticonfined(m, seed, config, singular))
        except NotAnticonfined as exc:
            logger.info("dropping the probe at infinity: %s", exc.detail)
            notes.append("the probe at infinity is not anticonfined")
    return reports, notes


def analyze_map(
    m: MapInstance,
    config: Optional[AnalysisConfig] = None,
    probes: Sequence[Seed] = (),
    deauto_param: Optional[str] = None,
) -> Analysis:
    config = config or AnalysisConfig()
    logger.info("analysing %s", m.name)
    singular = find_singular_values(m) if m.arity == SCALAR else []
    singularities = [classify_singularity(m, v, config, singular) for v in singular]
    probe_reports, notes = run_probes(m, probes, config, singular)
    if m.arity == SCALAR and not singular:
        notes.insert(0, NO_SINGULAR_VALUES)
    logger.info("%s: degree growth over %d steps", m.name, config.steps)
    entropy = entropy_estimate(m, config.steps, None, config)
    result = verdict(singularities + probe_reports, entropy)
    deauto = deautonomisation_report(m, deauto_param, config) if deauto_param else None
    warnings: List[str] = []
    for report in singularities + probe_reports:
        warnings.extend(report.warnings)
    warnings.extend(entropy.warnings)
    warnings.extend(result.warnings)
    return Analysis(m, config, singular, singularities, probe_reports, entropy, result, deauto, notes, warnings)
