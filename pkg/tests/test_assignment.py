import itertools
import time

import numpy as np
import pytest

from tabeval.assignment import min_cost_matching


def brute_force_min_cost(c):
    """Enumerate every maximal injection; independent of the solver."""
    n, m = c.shape
    best = None
    if n <= m:
        for cols in itertools.permutations(range(m), n):
            total = sum(c[i, cols[i]] for i in range(n))
            if best is None or total < best:
                best = total
    else:
        for rows in itertools.permutations(range(n), m):
            total = sum(c[rows[j], j] for j in range(m))
            if best is None or total < best:
                best = total
    return best


def test_two_by_two():
    assert min_cost_matching([[1, 2], [3, 0]]) == [(0, 0), (1, 1)]


def test_identity_friendly():
    assert min_cost_matching([[0, 1], [1, 0]]) == [(0, 0), (1, 1)]


def test_rectangular_two_by_one():
    assert min_cost_matching([[0.1], [0.0]]) == [(1, 0)]


def test_empty():
    assert min_cost_matching([]) == []
    assert min_cost_matching(np.zeros((0, 3))) == []


def test_matching_is_injective():
    rng = np.random.default_rng(5)
    c = rng.random((4, 7))
    pairs = min_cost_matching(c)
    assert len(pairs) == 4
    assert len({i for i, _ in pairs}) == 4
    assert len({j for _, j in pairs}) == 4


def test_all_tied_costs_give_diagonal():
    pairs = min_cost_matching(np.ones((3, 3)))
    assert pairs == [(0, 0), (1, 1), (2, 2)]


def test_tie_break_needs_three_cycle():
    # The diagonal and the 3-cycle (0,1),(1,2),(2,0) are both zero-cost, and
    # no pairwise column swap connects them at equal cost, so the tie-break
    # must search globally for the lexicographic minimum.
    c = np.array([
        [0.0, 0.0, 1.0],
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
    ])
    assert min_cost_matching(c) == [(0, 0), (1, 1), (2, 2)]


def test_lexicographic_min_oracle_random_ties():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 6))
        c = rng.integers(0, 3, size=(n, m)).astype(float)  # dense ties
        pairs = min_cost_matching(c)
        if n <= m:
            candidates = [
                sorted((i, cols[i]) for i in range(n))
                for cols in itertools.permutations(range(m), n)
            ]
        else:
            candidates = [
                sorted((rows[j], j) for j in range(m))
                for rows in itertools.permutations(range(n), m)
            ]
        totals = [sum(c[i, j] for i, j in p) for p in candidates]
        best = min(totals)
        expected = min(p for p, t in zip(candidates, totals) if t <= best + 1e-9)
        assert pairs == expected


def test_oracle_equivalence_random():
    rng = np.random.default_rng(42)
    for _ in range(300):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(1, 7))
        c = np.round(rng.random((n, m)), 3)
        pairs = min_cost_matching(c)
        total = sum(c[i, j] for i, j in pairs)
        assert total == pytest.approx(brute_force_min_cost(c), abs=1e-12)


def test_row_permutation_preserves_cost():
    rng = np.random.default_rng(7)
    for _ in range(50):
        c = rng.random((5, 5))
        base = sum(c[i, j] for i, j in min_cost_matching(c))
        perm = rng.permutation(5)
        permuted = sum(c[perm[i], j] for i, j in min_cost_matching(c[perm]))
        assert permuted == pytest.approx(base, abs=1e-12)


def test_500_by_500_under_a_second():
    rng = np.random.default_rng(1)
    c = rng.random((500, 500))
    start = time.perf_counter()
    pairs = min_cost_matching(c)
    assert time.perf_counter() - start < 1.0
    assert len(pairs) == 500


def test_deterministic():
    rng = np.random.default_rng(3)
    c = rng.choice([0.0, 0.25, 0.5, 1.0], size=(6, 6))
    assert min_cost_matching(c) == min_cost_matching(c.copy())


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        min_cost_matching([[np.inf, 0.0]])
