"""Cone and centralizer conditions, minimal relations and infinite-type certificates."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exact import (
    CertificateError,
    RatVector,
    cone_intersection_problem,
    farkas_to_separator,
    integer_scale,
    lcm,
    lp_feasible,
)
from .rootsystem import DynkinType, RootSystem, format_root
from .subalgebra import (
    RootSubalgebra,
    centralizer_normalizer_levi,
    separator_for_nilradical,
    singular_weights,
)

Term = Tuple[int, int]  # (root index, positive multiplicity)


class ConjecturalError(RuntimeError):
    """Classification in E8 rests on an unproved statement; pass ``assume_conjecture``."""


class Verdict(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"

    def __str__(self) -> str:
        return self.value


# ---------------------------------------------------------------------------
# Relations and certificates
# ---------------------------------------------------------------------------


def _combine(terms: Iterable[Term]) -> Tuple[Term, ...]:
    c: Counter = Counter()
    for r, m in terms:
        c[int(r)] += int(m)
    return tuple(sorted((r, m) for r, m in c.items() if m))


def _weighted_sum(rs: RootSystem, terms: Iterable[Term]) -> Tuple[int, ...]:
    v = np.zeros(rs.rank, dtype=np.int64)
    for r, m in terms:
        v += m * rs.coords[r]
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class Relation:
    """``omega = sum a_i alpha_i = sum b_j beta_j`` with positive integer coefficients."""

    alphas: Tuple[Term, ...]
    betas: Tuple[Term, ...]
    omega: Tuple[int, ...]
    two_sided: bool = False
    minimal: bool = False

    @classmethod
    def make(cls, rs: RootSystem, alphas: Iterable[Term], betas: Iterable[Term], **flags) -> "Relation":
        a = _combine(alphas)
        b = _combine(betas)
        wa = _weighted_sum(rs, a)
        wb = _weighted_sum(rs, b)
        if wa != wb:
            raise CertificateError("relation sides differ")
        if not any(wa):
            raise CertificateError("relation has zero weight")
        return cls(a, b, wa, **flags)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.alphas)

    def format(self, rs: RootSystem) -> str:
        def side(terms):
            return " + ".join((f"{m}" if m > 1 else "") + f"({format_root(rs, r)})" for r, m in terms)

        return f"{side(self.alphas)} = {side(self.betas)}"

    def to_json(self, rs: RootSystem) -> dict:
        return {
            "alphas": [[format_root(rs, r), m] for r, m in self.alphas],
            "betas": [[format_root(rs, r), m] for r, m in self.betas],
        }


@dataclass(frozen=True)
class ConeHolds:
    separator: RatVector


@dataclass(frozen=True)
class ConeFails:
    relation: Relation


@dataclass(frozen=True)
class StrictlyInfinite:
    relation: Relation
    basis: Tuple[int, ...]
    coeffs: Tuple[int, ...]
    cutoff: int = 0


@dataclass(frozen=True)
class ExtensionNeeded:
    cutoff: int


Certificate = Union[ConeHolds, ConeFails, StrictlyInfinite, ExtensionNeeded]


def certificate_kind(cert: Certificate) -> str:
    return {ConeHolds: "cone_holds", ConeFails: "cone_fails", StrictlyInfinite: "strictly_infinite",
            ExtensionNeeded: "extension_needed"}[type(cert)]


# ---------------------------------------------------------------------------
# Cone condition
# ---------------------------------------------------------------------------


def _check_separator(rs: RootSystem, h: Sequence[Fraction], strict: Iterable[int], nonstrict: Iterable[int]) -> None:
    for b in strict:
        if sum(Fraction(x) * y for x, y in zip(rs.roots[b], h)) < 1:
            raise CertificateError("separator fails on a nilradical root")
    for a in nonstrict:
        if sum(Fraction(x) * y for x, y in zip(rs.roots[a], h)) > 0:
            raise CertificateError("separator fails on a singular weight")


def cone_condition(l: RootSubalgebra) -> Union[ConeHolds, ConeFails]:
    """Decide whether the cones of ``n`` and of the singular weights meet only at zero."""
    rs = l.ambient
    if not l.n:
        return ConeHolds(tuple(Fraction(0) for _ in range(rs.rank)))
    sing = sorted(singular_weights(l))
    n = sorted(l.n)
    strict = [rs.roots[i] for i in n]
    nonstrict = [rs.roots[i] for i in sing]
    out = lp_feasible(cone_intersection_problem(strict, nonstrict))
    if out.feasible:
        ints = integer_scale(out.witness)
        a = [(sing[i], ints[i]) for i in range(len(sing)) if ints[i]]
        b = [(n[j], ints[len(sing) + j]) for j in range(len(n)) if ints[len(sing) + j]]
        return ConeFails(Relation.make(rs, a, b))
    h = farkas_to_separator(out.farkas, strict, nonstrict)
    _check_separator(rs, h, n, sing)
    return ConeHolds(h)


def centralizer_condition(l: RootSubalgebra) -> Tuple[bool, DynkinType]:
    """Every simple constituent of the Levi type is of type A or C (B2 counts as C2)."""
    levi = centralizer_normalizer_levi(l).levi_type
    return accepted_levi(levi), levi


def accepted_levi(levi: DynkinType) -> bool:
    return all(c.series in "AC" or (c.series == "B" and c.rank == 2) for c in levi.components)


def _require_supported(l: RootSubalgebra, assume_conjecture: bool) -> None:
    if not assume_conjecture and any(c.series == "E" and c.rank == 8 for c in l.ambient.type.components):
        raise ConjecturalError("the criterion is conjectural for E8; pass --assume-conjecture (assume_conjecture=True) to proceed")


def classify(l: RootSubalgebra, assume_conjecture: bool = False) -> Verdict:
    """Finite type exactly when both the cone and the centralizer conditions hold."""
    _require_supported(l, assume_conjecture)
    if isinstance(cone_condition(l), ConeFails):
        return Verdict.INFINITE
    ok, _ = centralizer_condition(l)
    return Verdict.FINITE if ok else Verdict.INFINITE


# ---------------------------------------------------------------------------
# Two-sided weights and strongly orthogonal decompositions
# ---------------------------------------------------------------------------


def compute_S(l: RootSubalgebra) -> FrozenSet[int]:
    """Singular weights ``alpha`` whose root vector normalizes ``n``.

    A sum ``alpha + beta = 0`` with ``beta`` in ``n`` counts as leaving ``n``.
    """
    rs = l.ambient
    t = rs.add_table
    n = sorted(l.n)
    nset = l.n
    out = []
    for a in sorted(singular_weights(l)):
        ok = True
        for b in n:
            s = int(t[a, b])
            if s == -2 or (s >= 0 and s not in nset):
                ok = False
                break
        if ok:
            out.append(a)
    return frozenset(out)


def is_two_sided(l: RootSubalgebra, rel: Relation) -> bool:
    s = compute_S(l)
    return all(a in s for a, _ in rel.alphas)


def strongly_orthogonal_decomposition(rs: RootSystem, omega: Sequence[int], n_roots: Iterable[int]
                                      ) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Pairwise strongly orthogonal roots of ``n_roots`` with positive integer coefficients summing to ``omega``.

    Coefficients are forced: ``b = <omega, beta> / <beta, beta>``.  The first
    solution in index order is returned.
    """
    omega = np.asarray([int(x) for x in omega], dtype=np.int64)
    if not omega.any():
        raise ValueError("omega must be nonzero")
    pairing = rs.coords @ rs.gram_array @ omega
    cands = []
    coef = {}
    for b in sorted(int(x) for x in n_roots):
        p = int(pairing[b])
        nb = int(rs.norms[b])
        if p > 0 and p % nb == 0:
            cands.append(b)
            coef[b] = p // nb
    so = rs.strong_orth_table
    chosen: List[int] = []

    def dfs(start: int, rem: np.ndarray) -> bool:
        if not rem.any():
            return True
        for pos in range(start, len(cands)):
            b = cands[pos]
            if all(so[b, c] for c in chosen):
                chosen.append(b)
                if dfs(pos + 1, rem - coef[b] * rs.coords[b]):
                    return True
                chosen.pop()
        return False

    if dfs(0, omega):
        return tuple(chosen), tuple(coef[b] for b in chosen)
    return None


# ---------------------------------------------------------------------------
# Minimal relations
# ---------------------------------------------------------------------------


def _integer_covector(h: Sequence[Fraction]) -> np.ndarray:
    d = 1
    for x in h:
        d = lcm(d, Fraction(x).denominator)
    return np.array([int(Fraction(x) * d) for x in h], dtype=np.int64)


def vector_partitions(rs: RootSystem, omega: Sequence[int], parts: Sequence[int], h: np.ndarray
                      ) -> List[Tuple[int, ...]]:
    """All multisets of ``parts`` summing to ``omega``; ``h`` must be positive on every part."""
    parts = sorted(parts)
    vals = rs.coords[parts] @ h
    if (vals <= 0).any():
        raise ValueError("covector must be positive on all parts")
    vecs = rs.coords[parts]
    out: List[Tuple[int, ...]] = []
    chosen: List[int] = []

    def dfs(start: int, rem: np.ndarray, budget: int) -> None:
        if not rem.any():
            out.append(tuple(chosen))
            return
        for pos in range(start, len(parts)):
            v = int(vals[pos])
            if v > budget:
                continue
            chosen.append(parts[pos])
            dfs(pos, rem - vecs[pos], budget - v)
            chosen.pop()

    w = np.asarray(omega, dtype=np.int64)
    budget = int(w @ h)
    if budget > 0:
        dfs(0, w, budget)
    return out


def reduce_relation(rs: RootSystem, alphas: Iterable[Term], betas: Iterable[Term]) -> Relation:
    """Combine repeated summands and merge pairs of right-hand roots whose sum is a root."""
    t = rs.add_table
    bs = []
    for r, m in betas:
        bs.extend([int(r)] * int(m))
    merged = True
    while merged:
        merged = False
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                s = int(t[bs[i], bs[j]])
                if s >= 0:
                    bs = [x for k, x in enumerate(bs) if k not in (i, j)] + [s]
                    merged = True
                    break
            if merged:
                break
    return Relation.make(rs, alphas, [(b, 1) for b in bs], minimal=True)


def minimal_relations(l: RootSubalgebra, max_length: Optional[int] = None) -> List[Relation]:
    """All reduced relations of the least possible length, with two-sidedness flags."""
    rs = l.ambient
    if isinstance(cone_condition(l), ConeHolds):
        raise ValueError("the cone condition holds; there are no relations")
    h = separator_for_nilradical(l)
    if h is None:
        raise CertificateError("no separator for the nilradical")
    hi = _integer_covector(h)
    sing = sorted(singular_weights(l))
    n = sorted(l.n)
    s_set = compute_S(l)
    limit = max_length or 4 * rs.rank + 4
    for L in range(1, limit + 1):
        found = {}
        for combo in combinations_with_replacement(sing, L):
            omega = np.zeros(rs.rank, dtype=np.int64)
            for a in combo:
                omega += rs.coords[a]
            if not omega.any():
                continue
            alphas = _combine((a, 1) for a in combo)
            for part in vector_partitions(rs, omega, n, hi):
                rel = reduce_relation(rs, alphas, [(b, 1) for b in part])
                key = (rel.alphas, rel.betas)
                if key not in found:
                    two = all(a in s_set for a, _ in rel.alphas)
                    found[key] = Relation(rel.alphas, rel.betas, rel.omega, two_sided=two, minimal=True)
        if found:
            return [found[k] for k in sorted(found)]
    raise CertificateError("no relation found below the length limit")


# ---------------------------------------------------------------------------
# Certificate search
# ---------------------------------------------------------------------------


@dataclass
class SearchStats:
    states: int = 0
    decompositions: int = 0


def find_certificate(l: RootSubalgebra, cutoff: Optional[int] = None, stats: Optional[SearchStats] = None
                     ) -> Certificate:
    """Search multisets of two-sided singular weights for a strongly orthogonally decomposable sum.

    Multisets are visited by size (from 2 up to ``max(#S, rank)``) and
    lexicographically within a size; the first hit wins.
    """
    rs = l.ambient
    cone = cone_condition(l)
    if isinstance(cone, ConeHolds):
        return cone
    S = sorted(compute_S(l))
    if cutoff is None:
        cutoff = max(len(S), rs.rank)
    stats = stats if stats is not None else SearchStats()
    n = sorted(l.n)
    decomp_cache: Dict[Tuple[int, ...], object] = {}
    failed = set()
    vecs = [rs.coords[a] for a in S]

    def decompose(omega: Tuple[int, ...]):
        if omega not in decomp_cache:
            stats.decompositions += 1
            decomp_cache[omega] = strongly_orthogonal_decomposition(rs, omega, n)
        return decomp_cache[omega]

    chosen: List[int] = []

    def dfs(start: int, remaining: int, partial: np.ndarray):
        if remaining == 0:
            key = tuple(int(x) for x in partial)
            if not any(key):
                return None
            d = decompose(key)
            return (key, d) if d is not None else None
        state = (start, remaining, partial.tobytes())
        if state in failed:
            return None
        stats.states += 1
        for pos in range(start, len(S)):
            chosen.append(S[pos])
            hit = dfs(pos, remaining - 1, partial + vecs[pos])
            if hit is not None:
                return hit
            chosen.pop()
        failed.add(state)
        return None

    for size in range(2, cutoff + 1):
        chosen.clear()
        hit = dfs(0, size, np.zeros(rs.rank, dtype=np.int64))
        if hit is not None:
            omega, (basis, coeffs) = hit
            rel = Relation.make(rs, [(a, 1) for a in chosen], zip(basis, coeffs), two_sided=True)
            cert = StrictlyInfinite(rel, tuple(basis), tuple(coeffs), cutoff)
            verify_certificate(l, cert)
            return cert
    return ExtensionNeeded(cutoff)


def verify_certificate(l: RootSubalgebra, cert: Certificate) -> None:
    """Re-check a certificate from scratch; raises :class:`CertificateError` on failure."""
    rs = l.ambient
    if isinstance(cert, ConeHolds):
        if l.n:
            _check_separator(rs, cert.separator, l.n, singular_weights(l))
        return
    if isinstance(cert, ExtensionNeeded):
        if isinstance(cone_condition(l), ConeHolds):
            raise CertificateError("extension needed reported although the cone condition holds")
        return
    if isinstance(cert, ConeFails):
        rel = cert.relation
        if not any(rel.omega):
            raise CertificateError("relation has zero weight")
        sing = singular_weights(l)
        if any(a not in sing for a, _ in rel.alphas) or any(b not in l.n for b, _ in rel.betas):
            raise CertificateError("relation uses roots outside the singular weights or n")
        if _weighted_sum(rs, rel.alphas) != rel.omega or _weighted_sum(rs, rel.betas) != rel.omega:
            raise CertificateError("relation sides do not match omega")
        return
    rel = cert.relation
    s_set = compute_S(l)
    if any(a not in s_set for a, _ in rel.alphas):
        raise CertificateError("relation is not two-sided")
    if any(b not in l.n for b in cert.basis):
        raise CertificateError("decomposition leaves n")
    if any(c <= 0 for c in cert.coeffs):
        raise CertificateError("non-positive coefficient")
    so = rs.strong_orth_table
    for i, a in enumerate(cert.basis):
        for b in cert.basis[i + 1:]:
            if not so[a, b]:
                raise CertificateError("decomposition is not strongly orthogonal")
    if _weighted_sum(rs, zip(cert.basis, cert.coeffs)) != rel.omega:
        raise CertificateError("decomposition does not sum to omega")
    if _weighted_sum(rs, rel.alphas) != rel.omega or _weighted_sum(rs, rel.betas) != rel.omega:
        raise CertificateError("relation sides do not match omega")
