"""Exact rational linear feasibility.

A phase-1 simplex over :class:`fractions.Fraction` with Bland's rule. All
variables are nonnegative; constraints are ``coeffs . x (=|>=|<=) rhs``.
There is no objective: the solver only answers whether the system has a
solution, and returns one if it does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

__all__ = [
    "Constraint",
    "LinearSystem",
    "LPResult",
    "lp_feasible",
]

RELATIONS = ("=", ">=", "<=")


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")

    def holds(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coeffs, x) if c), Fraction(0))
        if self.relation == "=":
            return lhs == self.rhs
        if self.relation == ">=":
            return lhs >= self.rhs
        return lhs <= self.rhs


@dataclass
class LinearSystem:
    """Nonnegative variables plus a list of linear constraints."""

    names: list[str]
    constraints: list[Constraint] = field(default_factory=list)

    @property
    def n_vars(self) -> int:
        return len(self.names)

    def add(self, coeffs: Sequence, relation: str, rhs) -> None:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.n_vars:
            raise ValueError(
                f"constraint has {len(coeffs)} coefficients, system has {self.n_vars} variables"
            )
        self.constraints.append(Constraint(coeffs, relation, Fraction(rhs)))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n_vars or any(v < 0 for v in x):
            return False
        return all(c.holds(x) for c in self.constraints)


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None

    def __bool__(self) -> bool:
        return self.feasible


def lp_feasible(system: LinearSystem) -> LPResult:
    """Decide feasibility of ``system`` exactly.

    Returns a witness point when feasible. The pivoting sequence depends only
    on the constraint order, so repeated calls give the same witness.
    """
    n = system.n_vars
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    kinds: list[str] = []
    for con in system.constraints:
        coeffs = list(con.coeffs)
        b = con.rhs
        relation = con.relation
        if b < 0:
            coeffs = [-c for c in coeffs]
            b = -b
            relation = {"=": "=", ">=": "<=", "<=": ">="}[relation]
        rows.append(coeffs)
        rhs.append(b)
        kinds.append(relation)

    m = len(rows)
    if m == 0:
        return LPResult(True, tuple(Fraction(0) for _ in range(n)))

    # column layout: [original n | one slack per inequality | one artificial per row needing it]
    slack_col = {}
    col = n
    for r, k in enumerate(kinds):
        if k != "=":
            slack_col[r] = col
            col += 1
    art_start = col
    basis: list[int] = []
    art_cols: list[int] = []
    for r, k in enumerate(kinds):
        if k == "<=":
            basis.append(slack_col[r])
        else:
            basis.append(col)
            art_cols.append(col)
            col += 1
    width = col

    tableau: list[list[Fraction]] = []
    for r in range(m):
        row = rows[r] + [Fraction(0)] * (width - n)
        if kinds[r] == ">=":
            row[slack_col[r]] = Fraction(-1)
        elif kinds[r] == "<=":
            row[slack_col[r]] = Fraction(1)
        if basis[r] >= art_start:
            row[basis[r]] = Fraction(1)
        row.append(rhs[r])
        tableau.append(row)

    # phase-1 objective: minimize sum of artificials; cost row holds reduced costs
    is_art = [False] * width
    for c in art_cols:
        is_art[c] = True
    cost = [Fraction(0)] * (width + 1)
    for r in range(m):
        if is_art[basis[r]]:
            for j in range(width + 1):
                if tableau[r][j] and (j == width or not is_art[j]):
                    cost[j] -= tableau[r][j]
    # cost[width] is -(sum of artificials) at the current basis

    while True:
        entering = -1
        for j in range(width):
            if cost[j] < 0 and not is_art[j]:
                entering = j
                break
        if entering < 0:
            break
        leaving = -1
        best_ratio = None
        for r in range(m):
            a = tableau[r][entering]
            if a > 0:
                ratio = tableau[r][width] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and basis[r] < basis[leaving])
                ):
                    best_ratio = ratio
                    leaving = r
        if leaving < 0:
            # unbounded direction cannot occur in phase 1 (objective bounded below by 0)
            raise ArithmeticError("phase-1 simplex found an unbounded ray")
        _pivot(tableau, cost, leaving, entering)
        basis[leaving] = entering

    if cost[width] != 0:
        return LPResult(False, None)

    x = [Fraction(0)] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = tableau[r][width]
    witness = tuple(x)
    if not system.satisfied_by(witness):
        raise ArithmeticError("simplex witness failed exact re-evaluation")
    return LPResult(True, witness)


def _pivot(tableau, cost, r, c):
    pivot_row = tableau[r]
    p = pivot_row[c]
    if p != 1:
        inv = 1 / p
        tableau[r] = pivot_row = [v * inv if v else v for v in pivot_row]
    nz = [j for j, v in enumerate(pivot_row) if v]
    for i, row in enumerate(tableau):
        if i == r:
            continue
        factor = row[c]
        if factor:
            for j in nz:
                row[j] -= factor * pivot_row[j]
    factor = cost[c]
    if factor:
        for j in nz:
            cost[j] -= factor * pivot_row[j]
