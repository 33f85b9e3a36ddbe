"""Levenshtein edit distance and its thresholded normalized form."""

from __future__ import annotations

DEFAULT_TAU = 0.5


def levenshtein(a: str, b: str) -> int:
    """Minimum number of single-character edits turning ``a`` into ``b``.

    Computed over Unicode scalar values with the classic two-row DP.
    """
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def nl_tau(a: str, b: str, tau: float = DEFAULT_TAU) -> float:
    """Normalized Levenshtein distance, clamped to 1 above ``tau``.

    The raw distance is divided by the longer length; values above the
    threshold snap to 1 so that very dissimilar strings get no partial
    credit. Two empty strings are at distance 0.
    """
    if not a and not b:
        return 0.0
    d = levenshtein(a, b) / max(len(a), len(b))
    return 1.0 if d > tau else d
