"""
Convergent validity between rating scales and group-difference tests
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Sequence

import numpy as np

from analysis.aggregation import SCENARIOS
from analysis.normalization import NormalizedResponse
from analysis.rank_tests import RankTestResult, kendall_tau_b, kruskal_wallis, mann_whitney_u, spearman
from ingestion.records import Scenario
from utils.errors import QuestionSetMismatch, TooFewGroups

logger = logging.getLogger(__name__)


@dataclass
class ValidityReport:
    spearman: float
    kendall: float
    mann_whitney: RankTestResult
    n_questions: int

    @property
    def mann_whitney_p(self) -> float:
        return self.mann_whitney.p_value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n_questions": self.n_questions,
            "spearman": self.spearman,
            "kendall_tau_b": self.kendall,
            "mann_whitney_u": self.mann_whitney.statistic,
            "mann_whitney_p": self.mann_whitney.p_value,
            "mann_whitney_method": self.mann_whitney.method,
        }


def convergent_validity(me_medians: Mapping[str, float], s100_medians: Mapping[str, float]) -> ValidityReport:
    """Rank agreement of paired per-question medians from the two scales"""
    if set(me_medians) != set(s100_medians):
        raise QuestionSetMismatch(tuple(sorted(set(me_medians) ^ set(s100_medians))))

    questions = sorted(me_medians)
    x = [me_medians[q] for q in questions]
    y = [s100_medians[q] for q in questions]
    report = ValidityReport(
        spearman=spearman(x, y),
        kendall=kendall_tau_b(x, y),
        mann_whitney=mann_whitney_u(x, y),
        n_questions=len(questions),
    )
    logger.info(f"🔗 Convergent validity over {len(questions)} questions: "
                f"spearman={report.spearman:.3f} kendall={report.kendall:.3f}")
    return report


@dataclass
class GroupDifference:
    scenario: Scenario
    test: str
    result: RankTestResult
    group_sizes: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scenario": self.scenario.value,
            "test": self.test,
            "group_sizes": dict(sorted(self.group_sizes.items())),
            **self.result.to_dict(),
        }


def _participant_means(normalized: Sequence[NormalizedResponse]) -> Dict[Scenario, Dict[str, Dict[str, float]]]:
    """scenario -> group -> participant -> mean signed value"""
    answers: Dict[tuple, List[float]] = defaultdict(list)
    for r in normalized:
        if r.group is None:
            continue
        answers[(r.scenario, r.group, r.participant_id)].append(r.signed_value)

    means: Dict[Scenario, Dict[str, Dict[str, float]]] = defaultdict(lambda: defaultdict(dict))
    for (scenario, group, participant), values in answers.items():
        means[scenario][group][participant] = float(np.mean(values))
    return means


def group_differences(normalized: Sequence[NormalizedResponse]) -> List[GroupDifference]:
    """
    Compare per-participant scenario means across group labels: Mann-Whitney
    U for two groups, Kruskal-Wallis for more.
    """
    groups = sorted({r.group for r in normalized if r.group is not None})
    if len(groups) < 2:
        raise TooFewGroups(len(groups))

    means = _participant_means(normalized)
    differences: List[GroupDifference] = []
    for scenario in SCENARIOS:
        by_group = means.get(scenario, {})
        samples = {g: [by_group[g][p] for p in sorted(by_group[g])] for g in groups if by_group.get(g)}
        if len(samples) < 2:
            continue
        ordered = [samples[g] for g in sorted(samples)]
        if len(ordered) == 2:
            test, result = "mann_whitney_u", mann_whitney_u(*ordered)
        else:
            test, result = "kruskal_wallis", kruskal_wallis(ordered)
        differences.append(GroupDifference(
            scenario=scenario,
            test=test,
            result=result,
            group_sizes={g: len(v) for g, v in samples.items()},
        ))
    return differences
