"""Table similarity metrics: RNSS, RMS, relaxed QA accuracy, correlations.

RNSS compares the unordered multisets of numbers in two tables through a
minimum-cost matching of relative distances. RMS treats each table as an
unordered collection of (row header, column header, value) entries, matches
entries by header keys, and reports precision, recall, and F1. Both tables
and the transposed prediction are scored so orientation never penalizes a
correct extraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .assignment import min_cost_matching
from .errors import DegenerateInputError
from .tables import Entry, Table, extract_entries, parse_number, table_numbers, transpose
from .textdist import DEFAULT_TAU, nl_tau

DEFAULT_THETA = 0.5

_TRUE_WORDS = frozenset({"true", "yes"})
_FALSE_WORDS = frozenset({"false", "no"})


@dataclass(frozen=True)
class MetricConfig:
    """Thresholds for textual (tau) and numeric (theta) similarity clamping."""

    tau: float = DEFAULT_TAU
    theta: float = DEFAULT_THETA

    def __post_init__(self):
        if not 0 < self.tau <= 1:
            raise ValueError("tau must be in (0, 1]")
        if not 0 < self.theta <= 1:
            raise ValueError("theta must be in (0, 1]")


@dataclass(frozen=True)
class RmsScore:
    precision: float
    recall: float
    f1: float


def relative_distance(p: float, t: float, theta: float | None = None) -> float:
    """min(1, |p-t|/|t|), optionally clamped to 1 above ``theta``.

    A zero target admits only a zero prediction: the distance is 0 when both
    are zero and 1 otherwise.
    """
    if t == 0:
        d = 0.0 if p == 0 else 1.0
    else:
        d = min(1.0, abs(p - t) / abs(t))
    if theta is not None and d > theta:
        return 1.0
    return d


def rnss(pred: Sequence[float], target: Sequence[float]) -> float:
    """Relative Number Set Similarity between two number multisets.

    1 minus the mean matched relative distance, normalized by the larger
    side. The published formula scores 1 when either side is empty: unmatched
    extra predictions cost nothing, which is exactly the precision blindness
    RMS was designed to fix.
    """
    n, m = len(pred), len(target)
    if n == 0 or m == 0:
        return 1.0
    cost = [[relative_distance(p, t) for t in target] for p in pred]
    pairs = min_cost_matching(cost)
    total = sum(cost[i][j] for i, j in pairs)
    return 1.0 - total / max(n, m)


def rnss_tables(pred: Table, target: Table) -> float:
    """RNSS over every numeric-parsing cell of two tables, headers included."""
    return rnss(table_numbers(pred), table_numbers(target))


def entry_similarity(p: Entry, t: Entry, cfg: MetricConfig) -> float:
    """Product of key similarity and value similarity for two entries.

    Values compare numerically when both parse as numbers, textually
    otherwise.
    """
    key_sim = 1.0 - nl_tau(p.key(), t.key(), cfg.tau)
    pn, tn = parse_number(p.value), parse_number(t.value)
    if pn is not None and tn is not None:
        value_sim = 1.0 - relative_distance(pn, tn, cfg.theta)
    else:
        value_sim = 1.0 - nl_tau(p.value, t.value, cfg.tau)
    return key_sim * value_sim


def rms(pred: Table, target: Table, cfg: MetricConfig | None = None) -> RmsScore:
    """Relative Mapping Similarity in the given orientation.

    Entries are matched by minimizing header-key distances (values play no
    part in the matching); the matched entry similarities are then summed and
    normalized by the prediction size (precision) and target size (recall).
    """
    cfg = cfg or MetricConfig()
    p_entries = extract_entries(pred)
    t_entries = extract_entries(target)
    n, m = len(p_entries), len(t_entries)
    if n == 0 and m == 0:
        return RmsScore(1.0, 1.0, 1.0)
    if n == 0 or m == 0:
        return RmsScore(0.0, 0.0, 0.0)
    cost = [
        [nl_tau(p.key(), t.key(), cfg.tau) for t in t_entries]
        for p in p_entries
    ]
    pairs = min_cost_matching(cost)
    total = sum(
        entry_similarity(p_entries[i], t_entries[j], cfg) for i, j in pairs
    )
    precision = total / n
    recall = total / m
    return RmsScore(precision, recall, _harmonic(precision, recall))


def rms_with_transposition(
    pred: Table, target: Table, cfg: MetricConfig | None = None
) -> RmsScore:
    """RMS of the better-scoring orientation of the prediction.

    Both the prediction and its transpose are scored against the target; the
    full score triple of the higher-F1 orientation is returned, with ties
    favoring the untransposed table.
    """
    straight = rms(pred, target, cfg)
    transposed = rms(transpose(pred), target, cfg)
    return transposed if transposed.f1 > straight.f1 else straight


def _harmonic(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def normalize_answer(answer: str) -> str:
    """Normalization shared by relaxed accuracy and self-consistency voting.

    Trims, lowercases, strips one trailing period, and removes currency,
    percent, and comma characters.
    """
    s = answer.strip().lower()
    if s.endswith("."):
        s = s[:-1]
    s = s.replace("$", "").replace("%", "").replace(",", "")
    return s.strip()


def answer_vote_key(answer: str) -> str:
    """Equivalence-class key for majority voting.

    Numeric answers unify on their value, boolean words on their class, and
    everything else on the normalized string.
    """
    s = normalize_answer(answer)
    value = parse_number(s)
    if value is not None:
        return f"num:{value!r}"
    if s in _TRUE_WORDS:
        return "bool:true"
    if s in _FALSE_WORDS:
        return "bool:false"
    return f"txt:{s}"


def relaxed_accuracy(pred_answer: str, gold_answer: str) -> bool:
    """Exact match with 5% tolerance on numeric answers.

    Both answers are normalized; numeric pairs pass when the relative error
    is at most 5% (a zero gold requires a zero prediction), boolean words
    unify yes/true and no/false, and all other pairs require string equality.
    """
    p = normalize_answer(pred_answer)
    g = normalize_answer(gold_answer)
    pn, gn = parse_number(p), parse_number(g)
    if pn is not None and gn is not None:
        if gn == 0:
            return pn == 0
        return abs(pn - gn) <= 0.05 * abs(gn)
    if p in _TRUE_WORDS and g in _TRUE_WORDS:
        return True
    if p in _FALSE_WORDS and g in _FALSE_WORDS:
        return True
    return p == g


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Product-moment correlation coefficient."""
    if len(x) != len(y):
        raise DegenerateInputError("sequences must have equal length")
    n = len(x)
    if n < 2:
        raise DegenerateInputError("need at least two points")
    mx = sum(x) / n
    my = sum(y) / n
    dx = [xi - mx for xi in x]
    dy = [yi - my for yi in y]
    sx = math.sqrt(sum(d * d for d in dx))
    sy = math.sqrt(sum(d * d for d in dy))
    if sx == 0 or sy == 0:
        raise DegenerateInputError("zero variance")
    return sum(a * b for a, b in zip(dx, dy)) / (sx * sy)


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation: Pearson over fractional (tie-averaged) ranks."""
    return pearson(_ranks(x), _ranks(y))


def _ranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        average = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = average
        i = j + 1
    return ranks
