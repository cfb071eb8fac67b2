"""Independent brute-force oracle for the contribution estimator.

Minimizes sum_ij (r_ij - c_j)^2 over the simplex (c_j >= 0, sum c = 1) with
no closed-form shortcuts: candidate enumeration over a lattice on the simplex
followed by pairwise bisection refinement. Deliberately dumb so it stays
independent of the implementation it checks.
"""

from __future__ import annotations

import itertools

import numpy as np


def objective(ratings, c) -> float:
    """Direct transcription of the squared-disagreement sum."""
    total = 0.0
    for row in ratings:
        for j, value in enumerate(row):
            diff = value - c[j]
            total += diff * diff
    return total


def _simplex_lattice(n: int, steps: int) -> np.ndarray:
    """All compositions of ``steps`` into n parts, scaled to sum to 1."""
    points = []
    for cuts in itertools.combinations(range(steps + n - 1), n - 1):
        prev = -1
        parts = []
        for cut in cuts:
            parts.append(cut - prev - 1)
            prev = cut
        parts.append(steps + n - 2 - prev)
        points.append(parts)
    return np.asarray(points, dtype=float) / steps


def _bisect_pair(ratings, c, i, j, iterations: int = 40):
    """Shift mass between c_i and c_j (sum fixed) to the 1D minimum by bisection
    on the slope sign."""
    total = c[i] + c[j]
    lo, hi = 0.0, total  # c_i ranges over [0, total]

    def value(ci: float) -> float:
        trial = list(c)
        trial[i] = ci
        trial[j] = total - ci
        return objective(ratings, trial)

    for _ in range(iterations):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if value(m1) <= value(m2):
            hi = m2
        else:
            lo = m1
    best = (lo + hi) / 2
    out = list(c)
    out[i] = best
    out[j] = total - best
    return out


def minimize_on_simplex(ratings, steps: int | None = None, refine_rounds: int = 6):
    """Grid-search the simplex, then refine with coordinate-pair bisection."""
    m = len(ratings)
    n = len(ratings[0])
    if steps is None:
        steps = {2: 10000, 3: 120, 4: 48, 5: 24, 6: 16}[n]
    lattice = _simplex_lattice(n, steps)
    r = np.asarray(ratings, dtype=float)
    # sum_ij (r_ij - c_j)^2 via broadcasting; still the naive formula
    diffs = r[None, :, :] - lattice[:, None, :]
    objectives = np.einsum("kij,kij->k", diffs, diffs)
    best = list(lattice[int(np.argmin(objectives))])

    for _ in range(refine_rounds):
        before = objective(ratings, best)
        for i in range(n):
            for j in range(i + 1, n):
                best = _bisect_pair(ratings, best, i, j)
        if before - objective(ratings, best) < 1e-15:
            break
    return tuple(best), objective(ratings, best)
