"""Exact rational linear algebra and a phase-1 simplex with Farkas certificates.

Every geometric decision in the package goes through this module, so all
verdicts are exact.  Rationals are :class:`fractions.Fraction` (arbitrary
precision, always in lowest terms).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Tuple

Rational = Fraction
RatVector = Tuple[Fraction, ...]


class DimensionError(ValueError):
    """Raised when matrix and vector shapes do not agree."""


class CertificateError(RuntimeError):
    """An exact certificate failed re-verification (internal inconsistency)."""


def as_vector(values) -> RatVector:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def integer_scale(v: Sequence[Fraction]) -> Tuple[int, ...]:
    """Clear denominators by their LCM, then divide by the GCD of the result."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


# ---------------------------------------------------------------------------
# Linear systems
# ---------------------------------------------------------------------------


def solve_linear(A: Sequence[Sequence], b: Sequence) -> Optional[RatVector]:
    """Solve ``A x = b`` exactly.

    Returns a solution or ``None`` if the system is inconsistent.  Free
    variables are set to zero.  Gauss-Jordan over the rationals; the
    pivot is the first nonzero entry in each column.
    """
    rows = len(A)
    if len(b) != rows:
        raise DimensionError(f"A has {rows} rows but b has length {len(b)}")
    cols = len(A[0]) if rows else 0
    for r in A:
        if len(r) != cols:
            raise DimensionError("ragged matrix")
    if rows == 0:
        return tuple(Fraction(0) for _ in range(cols))

    M = [[Fraction(x) for x in r] + [Fraction(rhs)] for r, rhs in zip(A, b)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r][c]
        M[r] = [v / p for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = M[i][cols]
    sol = tuple(x)
    for row, rhs in zip(A, b):
        if dot(row, sol) != Fraction(rhs):
            raise CertificateError("linear solve failed verification")
    return sol


def rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, rows):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        r += 1
        if r == rows:
            break
    return r


def inverse(A: Sequence[Sequence]) -> Tuple[RatVector, ...]:
    """Exact inverse of a square matrix (raises ValueError if singular)."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


# ---------------------------------------------------------------------------
# Linear programming (feasibility only)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LPProblem:
    """Feasibility problem ``A_eq x = b_eq``, ``A_ge x >= b_ge``, ``x >= 0``.

    Strict conic inequalities are encoded upstream as ``>= 1`` rows.
    """

    num_vars: int
    eq_rows: Tuple[RatVector, ...] = ()
    eq_rhs: RatVector = ()
    ge_rows: Tuple[RatVector, ...] = ()
    ge_rhs: RatVector = ()

    @classmethod
    def build(cls, num_vars, eq=(), ge=()) -> "LPProblem":
        """``eq``/``ge`` are iterables of ``(row, rhs)`` pairs."""
        eq = list(eq)
        ge = list(ge)
        prob = cls(
            num_vars=num_vars,
            eq_rows=tuple(as_vector(r) for r, _ in eq),
            eq_rhs=tuple(Fraction(v) for _, v in eq),
            ge_rows=tuple(as_vector(r) for r, _ in ge),
            ge_rhs=tuple(Fraction(v) for _, v in ge),
        )
        prob.check()
        return prob

    def check(self) -> None:
        if len(self.eq_rows) != len(self.eq_rhs) or len(self.ge_rows) != len(self.ge_rhs):
            raise DimensionError("row/rhs count mismatch")
        for r in self.eq_rows + self.ge_rows:
            if len(r) != self.num_vars:
                raise DimensionError("row length differs from variable count")

    @property
    def num_constraints(self) -> int:
        return len(self.eq_rows) + len(self.ge_rows) + self.num_vars


@dataclass(frozen=True)
class LPOutcome:
    """Exactly one of ``witness`` / ``farkas`` is set.

    ``farkas`` holds multipliers for the constraints in the order: equality
    rows (any sign), ``>=`` rows (nonnegative), then the bounds ``x_i >= 0``
    (nonnegative).  The combination has zero left-hand side and a positive
    right-hand side, i.e. it reads ``0 >= c`` with ``c > 0``.
    """

    witness: Optional[RatVector] = None
    farkas: Optional[RatVector] = None
    pivots: int = field(default=0, compare=False)

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def verify_witness(p: LPProblem, x: Sequence[Fraction]) -> bool:
    if len(x) != p.num_vars or any(v < 0 for v in x):
        return False
    if any(dot(r, x) != v for r, v in zip(p.eq_rows, p.eq_rhs)):
        return False
    return all(dot(r, x) >= v for r, v in zip(p.ge_rows, p.ge_rhs))


def verify_farkas(p: LPProblem, y: Sequence[Fraction]) -> bool:
    ne, ng, nv = len(p.eq_rows), len(p.ge_rows), p.num_vars
    if len(y) != ne + ng + nv:
        return False
    if any(v < 0 for v in y[ne:]):
        return False
    rows = p.eq_rows + p.ge_rows
    for j in range(nv):
        s = sum((y[i] * rows[i][j] for i in range(ne + ng)), Fraction(0)) + y[ne + ng + j]
        if s != 0:
            return False
    rhs = sum((y[i] * v for i, v in enumerate(p.eq_rhs + p.ge_rhs)), Fraction(0))
    return rhs > 0


def lp_feasible(p: LPProblem) -> LPOutcome:
    """Decide feasibility of ``p`` exactly with a phase-1 simplex (Bland's rule)."""
    p.check()
    ne, ng, nv = len(p.eq_rows), len(p.ge_rows), p.num_vars
    m = ne + ng
    # Standard form: original vars, surplus vars for >= rows, then artificials.
    n_struct = nv + ng
    n_total = n_struct + m
    T = []
    signs = []
    for i in range(m):
        if i < ne:
            row = list(p.eq_rows[i]) + [Fraction(0)] * ng
            rhs = p.eq_rhs[i]
        else:
            row = list(p.ge_rows[i - ne]) + [Fraction(0)] * ng
            row[nv + (i - ne)] = Fraction(-1)
            rhs = p.ge_rhs[i - ne]
        s = -1 if rhs < 0 else 1
        signs.append(s)
        if s < 0:
            row = [-x for x in row]
            rhs = -rhs
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    basis = [n_struct + i for i in range(m)]

    # Reduced-cost row of the phase-1 objective (sum of artificials).
    cost = [Fraction(0)] * n_struct + [Fraction(1)] * m + [Fraction(0)]
    z = cost[:]
    for i in range(m):
        z = [a - b for a, b in zip(z, T[i])]

    pivots = 0
    while True:
        enter = next((j for j in range(n_total) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:  # pragma: no cover - phase 1 is bounded below by 0
            raise CertificateError("unbounded phase-1 problem")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        if z[enter] != 0:
            f = z[enter]
            z = [a - f * b for a, b in zip(z, T[leave])]
        basis[leave] = enter
        pivots += 1

    if -z[-1] == 0:
        x = [Fraction(0)] * n_total
        for i, bj in enumerate(basis):
            x[bj] = T[i][-1]
        witness = tuple(x[:nv])
        if not verify_witness(p, witness):
            raise CertificateError("simplex witness failed verification")
        return LPOutcome(witness=witness, pivots=pivots)

    # Dual of the phase-1 optimum: y_i = 1 - reduced cost of artificial i.
    y_std = [Fraction(1) - z[n_struct + i] for i in range(m)]
    y = [y_std[i] * signs[i] for i in range(m)]
    rows = p.eq_rows + p.ge_rows
    bounds = []
    for j in range(nv):
        s = sum((y[i] * rows[i][j] for i in range(m)), Fraction(0))
        bounds.append(-s)
    farkas = tuple(y) + tuple(bounds)
    if not verify_farkas(p, farkas):
        raise CertificateError("Farkas certificate failed verification")
    return LPOutcome(farkas=farkas, pivots=pivots)


# ---------------------------------------------------------------------------
# Separation of a strict set from a non-strict set
# ---------------------------------------------------------------------------


def cone_intersection_problem(strict: Sequence[Sequence], nonstrict: Sequence[Sequence]) -> LPProblem:
    """Variables ``a`` (nonstrict) and ``b`` (strict); ``sum a*alpha = sum b*beta``, ``sum b = 1``."""
    if not strict:
        raise ValueError("strict generator set must be nonempty")
    dim = len(strict[0])
    na, nb = len(nonstrict), len(strict)
    eq = []
    for c in range(dim):
        row = [Fraction(v[c]) for v in nonstrict] + [-Fraction(v[c]) for v in strict]
        eq.append((row, 0))
    eq.append(([0] * na + [1] * nb, 1))
    return LPProblem.build(na + nb, eq=eq)


def farkas_to_separator(farkas: Sequence[Fraction], strict: Sequence[Sequence],
                        nonstrict: Sequence[Sequence]) -> RatVector:
    """Turn a certificate for :func:`cone_intersection_problem` into a covector.

    The result ``h`` satisfies ``beta(h) >= 1`` on ``strict`` and
    ``alpha(h) <= 0`` on ``nonstrict`` (pairing = coordinate dot product).
    """
    dim = len(strict[0])
    y = [Fraction(v) for v in farkas[:dim]]
    t = Fraction(farkas[dim])
    if t <= 0:
        raise CertificateError("certificate does not bound the strict side")
    h = tuple(v / t for v in y)
    if any(dot(b, h) < 1 for b in strict) or any(dot(a, h) > 0 for a in nonstrict):
        raise CertificateError("certificate does not separate")
    return h


def separate(strict: Sequence[Sequence], nonstrict: Sequence[Sequence]) -> Optional[RatVector]:
    """Covector ``h`` with ``beta(h) >= 1`` on strict, ``<= 0`` on nonstrict, or None."""
    if not strict:
        return None
    out = lp_feasible(cone_intersection_problem(strict, nonstrict))
    if out.feasible:
        return None
    return farkas_to_separator(out.farkas, strict, nonstrict)


def covector_problem(dim: int, ge_one=(), le_zero=(), eq_zero=()) -> LPProblem:
    """LP in a free covector ``h`` (split as ``h+ - h-``)."""
    def split(v):
        return [Fraction(x) for x in v] + [-Fraction(x) for x in v]

    eq = [(split(v), 0) for v in eq_zero]
    ge = [(split(v), 1) for v in ge_one] + [([-x for x in split(v)], 0) for v in le_zero]
    return LPProblem.build(2 * dim, eq=eq, ge=ge)


def find_covector(dim: int, ge_one=(), le_zero=(), eq_zero=()) -> Optional[RatVector]:
    """Some ``h`` with the requested sign pattern, or None (exact)."""
    out = lp_feasible(covector_problem(dim, ge_one, le_zero, eq_zero))
    if not out.feasible:
        return None
    w = out.witness
    return tuple(w[i] - w[dim + i] for i in range(dim))
