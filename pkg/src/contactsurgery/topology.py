"""Smooth-topology bookkeeping: linking matrices and first homology.

The contact coefficient of a component translates to the usual
Seifert-framed coefficient by adding tb.  For a diagram with smooth
coefficients p_i/q_i the generalized linking matrix has row i equal to
q_i times the linking row with p_i on the diagonal; its cokernel is
the first homology of the surgered manifold and serves as the
cross-check oracle for converted presentations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import fronts
from .errors import InfiniteCoefficient, MissingLinkingData
from .exact import INF
from .surgery import ContactDiagram


@dataclass(frozen=True)
class LinkingMatrix:
    ids: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.ids)
        if any(len(row) != n for row in self.rows) or len(self.rows) != n:
            raise ValueError("linking matrix must be square over its ids")


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form."""

    invariant_factors: tuple[int, ...] = ()
    rank: int = 0

    def __post_init__(self):
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors {self.invariant_factors} not a divisibility chain")
        if any(d < 2 for d in self.invariant_factors):
            raise ValueError(f"invariant factors must be >= 2, got {self.invariant_factors}")

    def order(self) -> int | None:
        """Group order, or None when the group is infinite."""
        if self.rank:
            return None
        return math.prod(self.invariant_factors)

    def __str__(self):
        parts = [f"Z/{d}" for d in self.invariant_factors] + ["Z"] * self.rank
        return " + ".join(parts) if parts else "0"


def smooth_coefficient(tb: int, r) -> Fraction:
    """Translate a contact coefficient to the Seifert framing: tb + r."""
    if r is INF:
        raise InfiniteCoefficient("cannot translate an infinite coefficient")
    return Fraction(tb) + Fraction(r)


def generalized_linking_matrix(diagram: ContactDiagram) -> LinkingMatrix:
    """Relation matrix of the surgered manifold's first homology.

    Row i is q_i * (lk(i, 1), ..., lk(i, n)) with diagonal entry p_i,
    where p_i/q_i is the reduced smooth coefficient of component i.
    """
    comps = diagram.components
    smooth = [smooth_coefficient(c.tb(), c.coefficient) for c in comps]
    rows = []
    for i, comp in enumerate(comps):
        p, q = smooth[i].numerator, smooth[i].denominator
        row = []
        for j, other in enumerate(comps):
            if i == j:
                row.append(p)
            else:
                row.append(q * diagram.linking_number(comp.id, other.id))
        rows.append(tuple(row))
    return LinkingMatrix(tuple(c.id for c in comps), tuple(rows))


def smith_normal_form(matrix):
    """Diagonalize an integer matrix: returns (D, U, V) with U*M*V = D.

    U and V are unimodular; the diagonal of D is nonnegative and each
    entry divides the next.  Pivots are chosen by minimal absolute
    value, which keeps entries small at the scales used here.
    """
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, factor):
        a[dst] = [x + factor * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + factor * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, factor):
        for row in a:
            row[dst] += factor * row[src]
        for row in v:
            row[dst] += factor * row[src]

    def min_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    for t in range(min(m, n)):
        pos = min_pivot(t)
        if pos is None:
            break
        swap_rows(t, pos[0])
        swap_cols(t, pos[1])
        while True:
            # clear the cross below/right of the pivot by floored division;
            # remainders shrink strictly, so re-pivoting terminates
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    dirty = True
            if dirty:
                pos = min_pivot(t)
                swap_rows(t, pos[0])
                swap_cols(t, pos[1])
                continue
            offender = next(
                (
                    (i, j)
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if a[i][j] % a[t][t] != 0
                ),
                None,
            )
            if offender is None:
                break
            add_row(t, offender[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    d = [[a[i][j] if i == j else 0 for j in range(n)] for i in range(m)]
    return d, u, v


def first_homology(diagram: ContactDiagram) -> AbelianGroup:
    """Cokernel invariant factors of the generalized linking matrix."""
    if not diagram.components:
        return AbelianGroup()
    matrix = generalized_linking_matrix(diagram)
    d, _, _ = smith_normal_form(matrix.rows)
    diag = [d[i][i] for i in range(len(matrix.ids))]
    return AbelianGroup(
        invariant_factors=tuple(x for x in diag if x >= 2),
        rank=sum(1 for x in diag if x == 0),
    )
