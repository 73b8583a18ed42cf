"""Contact surgery diagrams: coefficients, presentation matrices, H1 and d3.

Every component of a surgery diagram carries a :class:`Role`: a contact
surgery coefficient (a reduced nonzero fraction) or ``None`` for a marked
knot.  Marked knots ride along through moves but never enter the ambient
invariants.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .front import FrontDiagram, FrontError

__all__ = ["Role", "SurgeryDiagram", "HomologyReport", "D3Report",
           "MarkedKnotHasNoCoefficient", "ContainsMarkedKnot", "NotSymmetric",
           "Unsolvable", "UNSOLVABLE", "topological_coefficient",
           "presentation_matrix", "smith_normal_form", "h1", "signature",
           "d3", "match_stabilizations", "determinant", "solve"]


class MarkedKnotHasNoCoefficient(FrontError):
    pass


class ContainsMarkedKnot(FrontError):
    pass


class NotSymmetric(FrontError):
    pass


@dataclass(frozen=True)
class Role:
    """Name plus contact coefficient; ``coeff is None`` marks a knot."""

    name: str
    coeff: Fraction | None
    tags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.coeff is not None:
            c = Fraction(self.coeff)
            if c == 0:
                raise FrontError("contact 0-surgery is excluded")
            object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "tags", frozenset(self.tags))

    @property
    def marked(self) -> bool:
        return self.coeff is None

    def coeff_text(self) -> str:
        if self.coeff is None:
            return "marked"
        c = self.coeff
        if c.denominator == 1:
            return f"{c.numerator:+d}"
        return f"{c.numerator}/{c.denominator}"

    def with_tags(self, *add: str, drop: Iterable[str] = ()) -> "Role":
        return Role(self.name, self.coeff, (self.tags | set(add)) - set(drop))


@dataclass(frozen=True)
class SurgeryDiagram:
    """A front whose component labels are :class:`Role` records."""

    front: FrontDiagram

    def __post_init__(self):
        names = []
        for lab in self.front.labels:
            if not isinstance(lab, Role):
                raise FrontError(f"component without a role: {lab!r}")
            names.append(lab.name)
        if len(set(names)) != len(names):
            raise FrontError(f"duplicate component names {names}")

    @property
    def roles(self) -> tuple[Role, ...]:
        return self.front.labels

    @property
    def names(self) -> list[str]:
        return [r.name for r in self.roles]

    def index(self, name: str) -> int:
        for i, r in enumerate(self.roles):
            if r.name == name:
                return i
        raise FrontError(f"unknown component {name!r}")

    def role(self, name: str) -> Role:
        return self.roles[self.index(name)]

    def surgery_indices(self) -> list[int]:
        return [i for i, r in enumerate(self.roles) if not r.marked]

    def fresh_name(self, stem: str) -> str:
        taken = set(self.names)
        if stem not in taken:
            return stem
        k = 1
        while f"{stem}{k}" in taken:
            k += 1
        return f"{stem}{k}"


class HomologyReport(NamedTuple):
    free_rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


class D3Report(NamedTuple):
    defined: bool
    value: Fraction | None
    c_squared: Fraction | None
    sigma: int | None
    chi: int | None
    q_plus: int | None
    reason: str = ""


class Unsolvable:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "Unsolvable"


UNSOLVABLE = Unsolvable()


# --------------------------------------------------------------------------
# coefficients and matrices

def topological_coefficient(sd: SurgeryDiagram, c: int) -> Fraction:
    r = sd.roles[c]
    if r.marked:
        raise MarkedKnotHasNoCoefficient(f"{r.name} is a marked knot")
    return sd.front.classical(c).tb + r.coeff


def presentation_matrix(sd: SurgeryDiagram, comps: Sequence[int] | None = None) -> np.ndarray:
    """Integer matrix with ``M_ii = a_i`` and ``M_ij = b_i lk(i, j)``."""
    if comps is None:
        if any(r.marked for r in sd.roles):
            raise ContainsMarkedKnot("presentation matrix of a diagram with marked knots")
        comps = range(sd.front.n_components)
    comps = list(comps)
    n = len(comps)
    M = np.zeros((n, n), dtype=object)
    for a, i in enumerate(comps):
        t = topological_coefficient(sd, i)
        M[a, a] = t.numerator
        for b, j in enumerate(comps):
            if a != b:
                M[a, b] = t.denominator * sd.front.lk(i, j)
    return M


# --------------------------------------------------------------------------
# exact integer linear algebra

def smith_normal_form(M) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(D, U, V)`` with ``U @ M @ V == D`` and ``D`` a divisibility chain."""
    M = np.asarray(M, dtype=object)
    if M.ndim != 2:
        M = M.reshape(0, 0)
    m, n = M.shape
    A = [[int(x) for x in row] for row in M.tolist()]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(abs(A[i][t]), i, "r") for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), j, "c") for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, k, how = min(rest)
                if how == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
            if bad:
                add_row(t, bad[0][0], 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    D = np.array(A, dtype=object).reshape(m, n)
    return D, np.array(U, dtype=object).reshape(m, m), np.array(V, dtype=object).reshape(n, n)


def _fraction_rows(M) -> list[list[Fraction]]:
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return []
    return [[Fraction(int(x)) if not isinstance(x, Fraction) else x for x in row] for row in M]


def determinant(M) -> Fraction:
    A = _fraction_rows(M)
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def solve(M, b) -> list[Fraction]:
    """Exact solution of ``M x = b`` for invertible ``M``."""
    A = _fraction_rows(M)
    n = len(A)
    rhs = [Fraction(v) for v in b]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        rhs[c], rhs[piv] = rhs[piv], rhs[c]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
                rhs[r] -= f * rhs[c]
    return [rhs[i] / A[i][i] for i in range(n)]


def signature(M) -> int:
    """Signature by fraction-free symmetric elimination.

    Each Schur complement is scaled by ``|pivot|``; positive scaling keeps
    the signature, so everything stays in the integers.
    """
    rows = M.tolist() if isinstance(M, np.ndarray) else [list(r) for r in M]
    n = len(rows)
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric("signature of a non-symmetric matrix")
    den = 1
    for row in rows:
        for x in row:
            if not isinstance(x, int):
                d = Fraction(x).denominator
                den = den * d // gcd(den, d)
    A = [[int(Fraction(x) * den) if den > 1 or not isinstance(x, int) else x for x in row]
         for row in rows]
    sig = 0
    while A:
        n = len(A)
        k = next((i for i in range(n) if A[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in range(n) for j in range(n) if A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # congruence: add row/column j to row/column i
            A[i] = [x + y for x, y in zip(A[i], A[j])]
            for row in A:
                row[i] += row[j]
            continue
        p = A[k][k]
        s = 1 if p > 0 else -1
        sig += s
        rest = [r for r in range(n) if r != k]
        A = [[s * (p * A[r][c] - A[r][k] * A[k][c]) for c in rest] for r in rest]
        g = 0
        for row in A:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            A = [[x // g for x in row] for row in A]
    return sig


# --------------------------------------------------------------------------
# manifold invariants

def h1(sd: SurgeryDiagram, comps: Sequence[int] | None = None) -> HomologyReport:
    M = presentation_matrix(sd, comps)
    n = M.shape[0]
    if n == 0:
        return HomologyReport(0, ())
    D, _, _ = smith_normal_form(M)
    diag = [int(D[i, i]) for i in range(n)]
    return HomologyReport(sum(1 for x in diag if x == 0),
                          tuple(x for x in diag if x > 1))


def d3(sd: SurgeryDiagram, comps: Sequence[int] | None = None) -> D3Report:
    """Hopf invariant of the plane field for a contact (+-1)-surgery diagram."""
    if comps is None:
        if any(r.marked for r in sd.roles):
            raise ContainsMarkedKnot("d3 of a diagram with marked knots")
        comps = list(range(sd.front.n_components))
    comps = list(comps)
    for i in comps:
        if abs(sd.roles[i].coeff) != 1:
            return D3Report(False, None, None, None, None, None, "rational coefficient present")
    M = presentation_matrix(sd, comps)
    if determinant(M) == 0:
        return D3Report(False, None, None, None, None, None, "singular matrix")
    rot = [sd.front.classical(i).rot for i in comps]
    x = solve(M, rot)
    c2 = sum((a * b for a, b in zip(x, rot)), Fraction(0))
    sigma = signature(M)
    chi = 1 + len(comps)
    q = sum(1 for i in comps if sd.roles[i].coeff == 1)
    value = (c2 - 3 * sigma - 2 * chi) / 4 + q
    return D3Report(True, value, c2, sigma, chi, q)


def match_stabilizations(delta_framing: int, delta_rotation: int):
    """Counts ``(k, m)`` of positive and negative stabilizations.

    Solves ``k + m = -delta_framing`` and ``k - m = delta_rotation`` in
    non-negative integers; returns :data:`UNSOLVABLE` otherwise.
    """
    s, t = -delta_framing, delta_rotation
    if (s + t) % 2:
        return UNSOLVABLE
    k, m = (s + t) // 2, (s - t) // 2
    if k < 0 or m < 0:
        return UNSOLVABLE
    return k, m
