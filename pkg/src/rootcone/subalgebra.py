"""Root subalgebras ``l = k + n`` and their root-combinatorial invariants.

A root subalgebra is recorded by two sets of root indices: the reductive
part ``k`` (symmetric and closed) and the nilradical ``n`` (closed,
containing no pair of opposite roots, stable under adding roots of ``k``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exact import RatVector, find_covector
from .rootsystem import (
    DynkinType,
    RootSystem,
    RootSystemError,
    closure,
    dynkin_type_of,
    format_root,
    is_closed,
    is_symmetric,
    parse_root,
)


class SubalgebraError(ValueError):
    """Seeds do not define a valid root subalgebra."""


def _indices(rs: RootSystem, roots: Iterable) -> List[int]:
    out = []
    for r in roots:
        if isinstance(r, (int, np.integer)):
            i = int(r)
            if not 0 <= i < rs.size:
                raise SubalgebraError(f"root index {i} out of range")
            out.append(i)
        elif isinstance(r, str):
            out.append(parse_root(rs, r))
        else:
            out.append(rs.root_index(r))
    return out


@dataclass(frozen=True)
class KModule:
    """Weights of one ``k``-submodule of ``g / k`` with its extreme weights."""

    weights: Tuple[int, ...]
    highest: int
    lowest: int

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class CentralizerDatum:
    c_roots: FrozenSet[int]
    q_roots: FrozenSet[int]
    levi_roots: FrozenSet[int]
    levi_type: DynkinType


@dataclass(frozen=True, eq=False)
class RootSubalgebra:
    """A validated pair of root sets; construct with :func:`make_subalgebra`."""

    ambient: RootSystem
    k: FrozenSet[int]
    n: FrozenSet[int]

    def __eq__(self, other) -> bool:
        return (isinstance(other, RootSubalgebra) and other.ambient is self.ambient
                and other.k == self.k and other.n == self.n)

    def __hash__(self) -> int:
        return hash((self.ambient.type, self.k, self.n))

    def __repr__(self) -> str:
        rs = self.ambient
        ks = ", ".join(format_root(rs, i) for i in self.k_positive)
        ns = ", ".join(format_root(rs, i) for i in sorted(self.n))
        return f"RootSubalgebra({rs.type}; k+=[{ks}]; n=[{ns}])"

    @cached_property
    def l(self) -> FrozenSet[int]:
        return self.k | self.n

    @cached_property
    def k_positive(self) -> Tuple[int, ...]:
        return tuple(i for i in sorted(self.k) if self.ambient.positive[i])

    @cached_property
    def k_simple(self) -> Tuple[int, ...]:
        from .rootsystem import subsystem_simple_roots

        return tuple(subsystem_simple_roots(self.ambient, self.k))

    @property
    def is_solvable(self) -> bool:
        return not self.k

    @cached_property
    def k_type(self) -> DynkinType:
        return dynkin_type_of(self.ambient, self.k)

    def transform(self, perm: np.ndarray) -> "RootSubalgebra":
        """Image under a root permutation (assumed to be an automorphism)."""
        return RootSubalgebra(self.ambient, frozenset(int(perm[i]) for i in self.k),
                              frozenset(int(perm[i]) for i in self.n))

    def to_json(self) -> dict:
        rs = self.ambient
        return {
            "type": str(rs.type),
            "k": [format_root(rs, i) for i in self.k_positive],
            "n": [format_root(rs, i) for i in sorted(self.n)],
        }


def validate(l: RootSubalgebra) -> None:
    """Raise :class:`SubalgebraError` unless all structural invariants hold."""
    rs = l.ambient
    k, n = l.k, l.n
    if not is_symmetric(rs, k):
        raise SubalgebraError("k roots are not symmetric")
    if not is_closed(rs, k):
        raise SubalgebraError("k roots are not closed under addition")
    if k & n:
        raise SubalgebraError("seeds overlap: k and n share roots")
    if any(int(rs.neg[i]) in n for i in n):
        raise SubalgebraError("not a nilradical-type set: n contains opposite roots")
    t = rs.add_table
    for b in n:
        for d in k:
            s = int(t[b, d])
            if s >= 0 and s not in n:
                raise SubalgebraError("n is not stable under k")
        for c in n:
            s = int(t[b, c])
            if s >= 0 and s not in n:
                raise SubalgebraError("n is not closed under addition")


def make_subalgebra(ambient: RootSystem, k_seed: Iterable = (), n_seed: Iterable = ()) -> RootSubalgebra:
    """Close the seeds and validate.

    ``k`` is the closure of the seed and its negative; ``n`` is the closure
    of its seed under addition and under adding roots of ``k``.  Seeds may
    be root indices, coordinate tuples or textual root expressions.
    """
    rs = ambient
    ks = _indices(rs, k_seed)
    ns = _indices(rs, n_seed)
    k = closure(rs, ks + [int(rs.neg[i]) for i in ks])
    if set(ns) & k:
        raise SubalgebraError("seeds overlap: an n seed lies in k")
    t = rs.add_table
    n = set(ns)
    frontier = list(n)
    kl = sorted(k)
    while frontier:
        nxt = []
        for b in frontier:
            for other in kl + sorted(n):
                for x, y in ((b, other), (other, b)):
                    s = int(t[x, y])
                    if s == -2:
                        raise SubalgebraError("not a nilradical-type set: n contains opposite roots")
                    if s >= 0 and s not in n and (other in n or other in k):
                        if s in k:
                            raise SubalgebraError("seeds overlap: a sum of n roots lies in k")
                        n.add(s)
                        nxt.append(s)
        frontier = nxt
    l = RootSubalgebra(rs, frozenset(k), frozenset(n))
    validate(l)
    return l


def from_json(rs: RootSystem, data: dict) -> RootSubalgebra:
    """Build from ``{"type": ..., "k": [...], "n": [...]}``; ``k`` may list positive roots only."""
    if str(data.get("type", rs.type)).upper() != str(rs.type).upper():
        raise SubalgebraError(f"type {data.get('type')} does not match {rs.type}")
    return make_subalgebra(rs, data.get("k", []), data.get("n", []))


# ---------------------------------------------------------------------------
# Derived data
# ---------------------------------------------------------------------------


def centralizer_roots(l: RootSubalgebra) -> FrozenSet[int]:
    """Roots strongly orthogonal to every root of ``k``."""
    return centralizer_of(l.ambient, l.k)


def centralizer_of(rs: RootSystem, k: Iterable[int]) -> FrozenSet[int]:
    k = sorted(k)
    if not k:
        return frozenset(range(rs.size))
    ok = rs.strong_orth_table[:, k].all(axis=1)
    return frozenset(int(i) for i in np.nonzero(ok)[0])


def module_decomposition(rs: RootSystem, k: Iterable[int]) -> List[KModule]:
    """Connected components of the roots outside ``k`` under adding roots of ``k``."""
    k = sorted(set(k))
    kset = set(k)
    t = rs.add_table
    rest = [i for i in range(rs.size) if i not in kset]
    parent = {i: i for i in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in rest:
        for d in k:
            s = int(t[a, d])
            if s >= 0 and s not in kset:
                ra, rb = find(a), find(s)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for a in rest:
        groups.setdefault(find(a), []).append(a)
    kpos = [d for d in k if rs.positive[d]]
    kneg = [int(rs.neg[d]) for d in kpos]
    mods = []
    for ws in groups.values():
        hi = [a for a in ws if all(t[a, d] == -1 for d in kpos)]
        lo = [a for a in ws if all(t[a, d] == -1 for d in kneg)]
        if len(hi) != 1 or len(lo) != 1:
            raise RootSystemError("module without a unique extreme weight")
        mods.append(KModule(tuple(sorted(ws)), hi[0], lo[0]))
    mods.sort(key=lambda m: m.lowest)
    return mods


def k_module_decomposition(l: RootSubalgebra) -> List[KModule]:
    return module_decomposition(l.ambient, l.k)


def singular_weights(l: RootSubalgebra) -> FrozenSet[int]:
    """Roots outside ``l`` killed by adding every positive root of ``k``."""
    rs = l.ambient
    t = rs.add_table
    kpos = list(l.k_positive)
    lset = l.l
    out = []
    for a in range(rs.size):
        if a in lset:
            continue
        if kpos and (t[a, kpos] >= 0).any():
            continue
        out.append(a)
    return frozenset(out)


def dynkin_type(ambient: RootSystem, subset: Iterable) -> DynkinType:
    return dynkin_type_of(ambient, _indices(ambient, subset))


def parabolic_nilradical_test(ambient: RootSystem, subset: Iterable, n_part: Iterable) -> Optional[RatVector]:
    """Covector ``h`` with ``beta(h) >= 1`` on ``n_part`` and ``alpha(h) <= 0`` on the rest of ``subset``.

    ``None`` means ``n_part`` is not the nilradical of a parabolic
    subalgebra of the subsystem.  Covectors pair with simple coordinates.
    """
    rs = ambient
    sub = set(_indices(rs, subset))
    npart = set(_indices(rs, n_part))
    if not npart <= sub:
        raise SubalgebraError("n_part is not contained in the subset")
    if not npart:
        return tuple(0 for _ in range(rs.rank))
    rest = sorted(sub - npart)
    return find_covector(rs.rank, ge_one=[rs.roots[i] for i in sorted(npart)],
                         le_zero=[rs.roots[i] for i in rest])


def normalizer_q(rs: RootSystem, c_roots: Iterable[int], n: Iterable[int]) -> FrozenSet[int]:
    """Centralizer roots ``alpha`` with ``alpha + beta`` in ``n`` or not a root (nor zero) for every ``beta`` in ``n`` and the centralizer."""
    c = set(c_roots)
    nset = set(n)
    nc = sorted(nset & c)
    t = rs.add_table
    out = []
    for a in sorted(c):
        ok = True
        for b in nc:
            s = int(t[a, b])
            if s == -2 or (s >= 0 and s not in nset):
                ok = False
                break
        if ok:
            out.append(a)
    return frozenset(out)


def centralizer_normalizer_levi(l: RootSubalgebra) -> CentralizerDatum:
    """Centralizer roots, the normalizer set ``Q`` and the type of ``Q`` intersected with ``-Q``."""
    rs = l.ambient
    c = centralizer_roots(l)
    q = normalizer_q(rs, c, l.n)
    levi = frozenset(a for a in q if int(rs.neg[a]) in q)
    if not is_closed(rs, levi):
        levi = closure(rs, levi)
    return CentralizerDatum(c, q, levi, dynkin_type_of(rs, levi))


def separator_for_nilradical(l: RootSubalgebra) -> Optional[RatVector]:
    """Covector vanishing on ``k`` and at least 1 on ``n`` (exists for every valid ``l``)."""
    rs = l.ambient
    if not l.n:
        return tuple(0 for _ in range(rs.rank))
    return find_covector(rs.rank, ge_one=[rs.roots[i] for i in sorted(l.n)],
                         eq_zero=[rs.roots[i] for i in l.k_simple])
