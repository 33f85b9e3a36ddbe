"""Exact minimum-cost bipartite matching (Hungarian algorithm).

Rectangular cost matrices are padded to square with zero-cost dummy rows or
columns; dummy pairs never appear in the result. The augmenting-path
formulation with row/column potentials runs in O(n^3).
"""

from __future__ import annotations

import numpy as np


def min_cost_matching(cost) -> list[tuple[int, int]]:
    """Return index pairs minimizing the total selected cost.

    The result has ``min(N, M)`` pairs, sorted by row index. Ties between
    equal-cost matchings are canonicalized toward the lexicographically
    smallest pair set. An empty matrix yields an empty matching.
    """
    c = np.asarray(cost, dtype=float)
    if c.size == 0:
        return []
    if c.ndim != 2:
        raise ValueError("cost matrix must be two-dimensional")
    if not np.isfinite(c).all():
        raise ValueError("cost matrix must be finite")
    n_rows, n_cols = c.shape
    n = max(n_rows, n_cols)
    square = np.zeros((n, n))
    square[:n_rows, :n_cols] = c
    assignment, u, v = _hungarian_square(square)
    assignment = _lexicographic_min(square, assignment, u, v, n_rows)
    return sorted(
        (i, j) for i, j in enumerate(assignment) if i < n_rows and j < n_cols
    )


def _hungarian_square(c: np.ndarray):
    """Solve the square problem.

    Returns the column assigned to each row plus the final row/column
    potentials (1-based, index 0 unused)."""
    n = c.shape[0]
    # 1-based arrays with a virtual column 0, per the standard formulation.
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # p[j]: row matched to column j (0 = free)
    way = np.zeros(n + 1, dtype=np.intp)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        used[0] = True
        while True:
            i0 = p[j0]
            cur = c[i0 - 1] - u[i0] - v[1:]
            free = ~used[1:]
            better = free & (cur < minv[1:])
            minv1 = minv[1:]
            minv1[better] = cur[better]
            way1 = way[1:]
            way1[better] = j0
            candidates = np.where(free, minv1, np.inf)
            j1 = int(np.argmin(candidates)) + 1
            delta = candidates[j1 - 1]
            used_cols = used.nonzero()[0]
            u[p[used_cols]] += delta
            v[used_cols] -= delta
            minv1[free] -= delta
            used[j1] = True
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    assignment = [0] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1
    return assignment, u, v


def _lexicographic_min(square, assignment, u, v, n_real):
    """Resolve cost ties toward the lexicographically smallest pair set.

    By complementary slackness every minimum-cost matching uses only tight
    edges (zero reduced cost under the final potentials), so ties are
    resolved exactly by finding the lexicographically smallest perfect
    matching of the tight-edge graph: fix each real row in turn to its
    smallest column for which the rest of the graph still has a perfect
    matching, checked with one augmenting path per rejected candidate.
    """
    n = square.shape[0]
    tol = 1e-9 * max(1.0, float(np.abs(square).max()))
    reduced = square - u[1:, None] - v[None, 1:]
    adj = [np.nonzero(reduced[i] <= tol)[0].tolist() for i in range(n)]
    match_row = list(assignment)
    match_col = [-1] * n
    for i, j in enumerate(match_row):
        match_col[j] = i
    fixed_row = [False] * n
    fixed_col = [False] * n

    def augment(start):
        seen = [False] * n

        def dfs(r):
            for j in adj[r]:
                if fixed_col[j] or seen[j]:
                    continue
                seen[j] = True
                r2 = match_col[j]
                if r2 == -1 or (not fixed_row[r2] and dfs(r2)):
                    match_col[j] = r
                    match_row[r] = j
                    return True
            return False

        return dfs(start)

    for i in range(n_real):
        for j in adj[i]:
            if fixed_col[j] or j > match_row[i]:
                continue
            if j == match_row[i]:
                break
            # Force (i, j): evict column j's row and try to re-augment it.
            evicted = match_col[j]
            old = match_row[i]
            saved = (list(match_row), list(match_col))
            match_col[old] = -1
            match_row[evicted] = -1
            match_row[i] = j
            match_col[j] = i
            fixed_row[i] = fixed_col[j] = True
            if augment(evicted):
                break
            fixed_row[i] = fixed_col[j] = False
            match_row, match_col = saved
        fixed_row[i] = True
        fixed_col[match_row[i]] = True
    return match_row


def matching_cost(pairs: list[tuple[int, int]], cost) -> float:
    """Total cost of a matching, summed in sorted pair order."""
    c = np.asarray(cost, dtype=float)
    return float(sum(c[i, j] for i, j in sorted(pairs)))
