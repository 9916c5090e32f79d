"""Independent reference implementations used only by the tests.

Nothing here imports the solver internals: beliefs are re-derived from the
raw payoff matrices and feasibility is decided by Fourier-Motzkin
elimination instead of the simplex.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def fm_feasible(inequalities, n_vars):
    """Is ``{x : a.x <= b for (a, b) in inequalities}`` non-empty?"""
    rows = [([Fraction(c) for c in a], Fraction(b)) for a, b in inequalities]
    for j in range(n_vars):
        pos, neg, rest = [], [], []
        for a, b in rows:
            (pos if a[j] > 0 else neg if a[j] < 0 else rest).append((a, b))
        combined = list(rest)
        for (ap, bp), (an, bn) in product(pos, neg):
            lp, ln = -an[j], ap[j]
            combined.append(([lp * x + ln * y for x, y in zip(ap, an)], lp * bp + ln * bn))
        rows = _dedupe(combined)
    return all(b >= 0 for _, b in rows)


def _dedupe(rows):
    seen = {}
    for a, b in rows:
        scale = next((abs(x) for x in a if x), None)
        if scale is None:
            key = (tuple(a), b)
        else:
            key = (tuple(x / scale for x in a), b / scale)
        seen[key] = None
    return [(list(a), b) for a, b in seen]


def truncated(weights, k):
    head = [Fraction(w) for w in weights[:k]]
    return [w / sum(head) for w in head]


def fm_supports(k, action, matrix, own, other, allowed, weights):
    """Oracle for "some admissible belief makes ``action`` weakly optimal".

    ``matrix[i][j]`` is the player's payoff for ``own[i]`` against
    ``other[j]``; ``allowed[t]`` (``1 <= t < k``) lists the opponent options
    level ``t`` may use. The simplex equalities are removed by writing the
    last option of each level as one minus the others.
    """
    masses = truncated(weights, k)
    n_opts = len(other)
    blocks = [[other.index(b) for b in allowed[t]] for t in range(1, k)]
    free = [(t, pos) for t, block in enumerate(blocks) for pos in block[:-1]]
    n = len(free)
    ineqs = []
    # q >= 0 for the free entries and the eliminated last entry of each block
    for v in range(n):
        a = [Fraction(0)] * n
        a[v] = Fraction(-1)
        ineqs.append((a, Fraction(0)))
    for t, block in enumerate(blocks):
        a = [Fraction(1) if free[v][0] == t else Fraction(0) for v in range(n)]
        ineqs.append((a, Fraction(1)))
    me = matrix[own.index(action)]
    for i, alt in enumerate(own):
        if alt == action:
            continue
        diff = [x - y for x, y in zip(me, matrix[i])]
        # E[diff] = m0 * mean(diff) + sum_t m_t * (sum_free q (d_b - d_last) + d_last)
        const = masses[0] * sum(diff) / n_opts
        coeffs = [Fraction(0)] * n
        for t, block in enumerate(blocks):
            last = block[-1]
            const += masses[t + 1] * diff[last]
            for v, (tv, pos) in enumerate(free):
                if tv == t:
                    coeffs[v] = masses[t + 1] * (diff[pos] - diff[last])
        # E[diff] >= 0  <=>  -coeffs . q <= const
        ineqs.append(([-c for c in coeffs], const))
    return fm_feasible(ineqs, n)


def grid_supports(k, action, matrix, own, other, allowed, weights, steps=12):
    """Search a rational grid of beliefs; a hit proves support, a miss proves nothing."""
    masses = truncated(weights, k)
    blocks = [[other.index(b) for b in allowed[t]] for t in range(1, k)]
    for choice in product(*[list(_compositions(steps, len(b))) for b in blocks]):
        marginal = [masses[0] / len(other)] * len(other)
        for t, (block, counts) in enumerate(zip(blocks, choice)):
            for pos, c in zip(block, counts):
                marginal[pos] += masses[t + 1] * Fraction(c, steps)
        values = [sum(m * x for m, x in zip(marginal, row)) for row in matrix]
        if values[own.index(action)] == max(values):
            return True
    return False


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def fm_system_feasible(constraints, n_vars):
    """FM verdict for ``(coeffs, relation, rhs)`` rows over nonnegative variables."""
    ineqs = []
    for v in range(n_vars):
        ineqs.append(([-1 if i == v else 0 for i in range(n_vars)], 0))
    for coeffs, relation, rhs in constraints:
        if relation in ("<=", "="):
            ineqs.append((list(coeffs), rhs))
        if relation in (">=", "="):
            ineqs.append(([-c for c in coeffs], -rhs))
    return fm_feasible(ineqs, n_vars)
