"""Symmetry groups acting on a root system, and canonical forms under them.

Group elements are permutations of root indices (``numpy`` integer rows)
induced by integer linear maps of the root lattice.  Composition
``(p * q)[i] = p[q[i]]`` applies ``q`` first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exact import inverse, rank as matrix_rank
from .rootsystem import (
    RootSystem,
    RootSystemError,
    cartan_from_gram,
    subsystem_simple_roots,
    weyl_order_from_gram,
)

#: Largest group that :meth:`SymmetryGroup.elements` will materialize.
MATERIALIZE_LIMIT = 400_000


class SymmetryError(RuntimeError):
    """A computed map failed to be a root system automorphism."""


# ---------------------------------------------------------------------------
# Permutations and linear maps
# ---------------------------------------------------------------------------


def identity(rs: RootSystem) -> np.ndarray:
    return np.arange(rs.size, dtype=np.int64)


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Apply ``q`` then ``p``."""
    return p[q]


def linear_map(rs: RootSystem, perm: np.ndarray) -> np.ndarray:
    """Integer matrix (columns = images of simple roots) of a root permutation."""
    return rs.coords[perm[list(rs.simple_indices)]].T.copy()


def perm_from_matrix(rs: RootSystem, M: np.ndarray) -> Optional[np.ndarray]:
    """Root permutation induced by ``M`` (simple coordinates), or None if ``M`` does not permute the roots."""
    img = rs.coords @ np.asarray(M, dtype=np.int64).T
    out = np.empty(rs.size, dtype=np.int64)
    idx = rs.index
    for i, row in enumerate(img.tolist()):
        j = idx.get(tuple(row))
        if j is None:
            return None
        out[i] = j
    if len(set(out.tolist())) != rs.size:
        return None
    return out


def is_automorphism(rs: RootSystem, perm: np.ndarray) -> bool:
    """``perm`` is induced by a linear map preserving the form."""
    perm = np.asarray(perm)
    M = linear_map(rs, perm)
    if not np.array_equal(rs.coords @ M.T, rs.coords[perm]):
        return False
    return np.array_equal(rs.inner_table[np.ix_(perm, perm)], rs.inner_table)


@lru_cache(maxsize=None)
def _weight_basis(rs: RootSystem) -> Tuple[Tuple[Fraction, ...], ...]:
    """Fundamental weights in simple-root coordinates (columns of the inverse Cartan matrix)."""
    cartan = cartan_from_gram(rs.gram)
    inv = inverse([[cartan[j][i] for j in range(rs.rank)] for i in range(rs.rank)])
    return tuple(tuple(inv[i][j] for i in range(rs.rank)) for j in range(rs.rank))


def in_weyl_group(rs: RootSystem, perm: np.ndarray) -> bool:
    """Whether an automorphism lies in the Weyl group (simple ambient).

    Weyl elements act trivially on the weight lattice modulo the root lattice.
    """
    M = linear_map(rs, perm)
    for w in _weight_basis(rs):
        img = [sum(Fraction(int(M[i][j])) * w[j] for j in range(rs.rank)) - w[i] for i in range(rs.rank)]
        if any(x.denominator != 1 for x in img):
            return False
    return True


def bfs_closure(gens: Sequence[np.ndarray], n: int, limit: int = MATERIALIZE_LIMIT) -> np.ndarray:
    """All products of the generators, as a 2-D array with the identity first."""
    ident = np.arange(n, dtype=np.int64)
    dtype = np.int16 if n < 32000 else np.int64
    seen = {ident.astype(dtype).tobytes()}
    elements = [ident]
    frontier = [ident]
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                key = y.astype(dtype).tobytes()
                if key not in seen:
                    seen.add(key)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > limit:
                        raise SymmetryError(f"group exceeds materialization limit {limit}")
        frontier = nxt
    return np.array(elements, dtype=np.int64).reshape(len(elements), n)


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class SymmetryGroup:
    """A group of root permutations given by generators and its known order."""

    rs: RootSystem
    generators: Tuple[np.ndarray, ...]
    order: int
    name: str = ""
    _elements: Optional[np.ndarray] = field(default=None, repr=False)

    def elements(self) -> np.ndarray:
        if self._elements is None:
            if self.order > MATERIALIZE_LIMIT:
                raise SymmetryError(f"{self.name or 'group'} of order {self.order} is too large to list")
            els = bfs_closure(self.generators, self.rs.size)
            if len(els) != self.order:
                raise SymmetryError(f"{self.name}: closure has {len(els)} elements, expected {self.order}")
            self._elements = els
        return self._elements

    @property
    def materialized(self) -> bool:
        return self._elements is not None

    def orbit(self, idx: Iterable[int]) -> List[Tuple[int, ...]]:
        """Orbit of a root set, walked with the generators (no element list needed)."""
        start = tuple(sorted(int(i) for i in idx))
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                arr = np.array(s, dtype=np.int64)
                for g in self.generators:
                    t = tuple(sorted(g[arr].tolist()))
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return sorted(seen)

    def __len__(self) -> int:
        return self.order


def simple_reflections(rs: RootSystem, simple: Sequence[int]) -> List[np.ndarray]:
    return [rs.reflection_perms[i] for i in simple]


def diagram_automorphisms(rs: RootSystem) -> List[np.ndarray]:
    """Root permutations induced by symmetries of the Dynkin diagram (identity included)."""
    return block_stabilizer(rs, [list(rs.simple_indices)])


def weyl_group(rs: RootSystem) -> SymmetryGroup:
    return SymmetryGroup(rs, tuple(simple_reflections(rs, rs.simple_indices)),
                         weyl_order_from_gram(rs.gram), name=f"W({rs.type})")


def automorphism_group(rs: RootSystem) -> SymmetryGroup:
    """Weyl group extended by diagram automorphisms."""
    diag = diagram_automorphisms(rs)
    gens = tuple(simple_reflections(rs, rs.simple_indices)) + tuple(
        d for d in diag if not np.array_equal(d, identity(rs)))
    return SymmetryGroup(rs, gens, weyl_order_from_gram(rs.gram) * len(diag), name=f"Aut({rs.type})")


def subsystem_weyl_group(rs: RootSystem, roots: Iterable[int], name: str = "") -> SymmetryGroup:
    """Weyl group of a symmetric closed subsystem, acting on all of the ambient roots."""
    simple = subsystem_simple_roots(rs, roots)
    gram = [[int(rs.inner_table[a, b]) for b in simple] for a in simple]
    order = weyl_order_from_gram(gram) if simple else 1
    return SymmetryGroup(rs, tuple(simple_reflections(rs, simple)), order, name=name)


def block_stabilizer(rs: RootSystem, blocks: Sequence[Sequence[int]]) -> List[np.ndarray]:
    """All automorphisms of the root system mapping each block of roots onto itself.

    The union of the blocks must be linearly independent.  The basis is
    completed by ambient simple roots whose images are unconstrained apart
    from preserving the form; each full assignment is validated by checking
    that the induced linear map permutes the roots.
    """
    basis: List[int] = []
    allowed: List[List[int]] = []
    for block in blocks:
        for r in block:
            basis.append(int(r))
            allowed.append([int(x) for x in block])
    if basis and matrix_rank([rs.roots[i] for i in basis]) != len(basis):
        raise RootSystemError("blocks are not linearly independent")
    everything = list(range(rs.size))
    for s in rs.simple_indices:
        if matrix_rank([rs.roots[i] for i in basis + [s]]) > len(basis):
            basis.append(s)
            allowed.append(everything)
    B = np.array([rs.roots[i] for i in basis], dtype=np.int64).T
    Binv = inverse(B.tolist())
    ip = rs.inner_table
    results: List[np.ndarray] = []
    images: List[int] = []

    def extend(pos: int) -> None:
        if pos == len(basis):
            img = np.array([rs.roots[i] for i in images], dtype=np.int64).T
            M = [[sum(Fraction(int(img[i][k])) * Binv[k][j] for k in range(len(basis)))
                  for j in range(rs.rank)] for i in range(rs.rank)]
            if any(x.denominator != 1 for row in M for x in row):
                return
            perm = perm_from_matrix(rs, np.array([[int(x) for x in row] for row in M], dtype=np.int64))
            if perm is not None:
                results.append(perm)
            return
        src = basis[pos]
        used = set(images)
        for cand in allowed[pos]:
            if cand in used or ip[cand, cand] != ip[src, src]:
                continue
            if all(ip[cand, images[k]] == ip[src, basis[k]] for k in range(pos)):
                images.append(cand)
                extend(pos + 1)
                images.pop()

    extend(0)
    return results


@dataclass(eq=False)
class RestrictedSymmetry:
    """The groups ``W'''`` (Weyl group of the centralizer roots), ``W''`` and ``W' = W''' x| W''``."""

    w3: SymmetryGroup
    w2: SymmetryGroup
    w1: SymmetryGroup

    @property
    def orders(self) -> Tuple[int, int, int]:
        return (self.w3.order, self.w2.order, self.w1.order)


def orthogonal_roots(rs: RootSystem, roots: Iterable[int]) -> List[int]:
    """Roots orthogonal to every root in ``roots``."""
    roots = sorted(set(int(i) for i in roots))
    if not roots:
        return list(range(rs.size))
    ok = (rs.inner_table[:, roots] == 0).all(axis=1)
    return [int(i) for i in np.nonzero(ok)[0]]


def determinant(rs: RootSystem, perm: np.ndarray) -> int:
    """Determinant (+1 or -1) of the linear map inducing an automorphism."""
    return int(round(np.linalg.det(linear_map(rs, perm).astype(float))))


def _choose_w2(rs: RootSystem, sk: List[int], sc: List[int], k: List[int], c: List[int]) -> List[np.ndarray]:
    stab = block_stabilizer(rs, [sk, sc])
    fixed = sk + sc
    inner = [g for g in stab if all(g[i] == i for i in fixed) and in_weyl_group(rs, g)]
    if len(inner) == 1:
        return stab
    rotations = [g for g in stab if determinant(rs, g) == 1]
    if len(rotations) * len(inner) == len(stab) and sum(determinant(rs, g) == 1 for g in inner) == 1:
        return rotations
    return block_stabilizer(rs, [sk, sc, subsystem_simple_roots(rs, orthogonal_roots(rs, k + c))])


def restricted_symmetry_group(rs: RootSystem, k_roots: Iterable[int], c_roots: Iterable[int],
                              full: bool = False) -> RestrictedSymmetry:
    """Automorphisms preserving the positive roots of ``k``, split along the centralizer roots.

    ``W''`` holds one root permutation per diagram automorphism of the
    ``k`` and centralizer simple roots (paired with its outer class).
    Weyl elements fixing both simple systems pointwise are reflections in
    roots orthogonal to both parts; they are dropped by keeping the
    determinant-one elements, or failing that the elements preserving the
    positive orthogonal roots.  With ``full`` the whole stabilizer of the
    two positive systems is used.  Since ``W'''`` fixes the ``k`` roots and
    acts simply transitively on positive systems of the centralizer,
    ``|W'| = |W'''| * |W''|``.
    """
    from .rootsystem import is_closed, is_symmetric

    k = sorted(set(int(i) for i in k_roots))
    c = sorted(set(int(i) for i in c_roots))
    for name, s in (("k", k), ("centralizer", c)):
        if not (is_symmetric(rs, s) and is_closed(rs, s)):
            raise RootSystemError(f"{name} roots are not a symmetric closed subsystem")
    sk = subsystem_simple_roots(rs, k)
    sc = subsystem_simple_roots(rs, c)
    w3 = subsystem_weyl_group(rs, c, name="W'''")
    w2_elems = block_stabilizer(rs, [sk, sc]) if full else _choose_w2(rs, sk, sc, k, c)
    w2 = SymmetryGroup(rs, tuple(w2_elems), len(w2_elems), name="W''",
                       _elements=np.array(w2_elems, dtype=np.int64).reshape(len(w2_elems), rs.size))
    w1 = SymmetryGroup(rs, w3.generators + tuple(w2_elems), w3.order * w2.order, name="W'")
    return RestrictedSymmetry(w3, w2, w1)


def product_elements(first: SymmetryGroup, second: SymmetryGroup) -> np.ndarray:
    """Elements ``a * b`` for ``a`` in ``first`` and ``b`` in ``second`` (a semidirect product listing)."""
    A = first.elements()
    B = second.elements()
    return np.concatenate([A[:, b] for b in B], axis=0) if len(B) else A


def restricted_elements(sym: RestrictedSymmetry) -> np.ndarray:
    if sym.w1._elements is None:
        els = product_elements(sym.w3, sym.w2)
        if len({row.tobytes() for row in els.astype(np.int16)}) != sym.w1.order:
            raise SymmetryError("W''' and W'' do not form a semidirect product")
        sym.w1._elements = els
    return sym.w1._elements


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------


def lex_min_image(elements: np.ndarray, idx: Sequence[int], rank: Optional[np.ndarray] = None
                  ) -> Tuple[int, ...]:
    """Least image of a root set over a list of group elements, as a sorted index tuple.

    Sets are compared as sorted tuples of ``rank[i]`` (default: the index
    itself), so ``rank`` overrides the total order used to pick the winner.
    """
    idx = np.asarray(sorted(int(i) for i in idx), dtype=np.int64)
    if idx.size == 0:
        return ()
    raw = elements[:, idx]
    keyed = np.sort(raw if rank is None else rank[raw], axis=1)
    best = np.lexsort(keyed.T[::-1])[0]
    return tuple(sorted(int(x) for x in raw[best]))


def lex_min_images(elements: np.ndarray, sets: Sequence[Sequence[int]],
                   rank: Optional[np.ndarray] = None) -> List[Tuple[int, ...]]:
    return [lex_min_image(elements, s, rank) for s in sets]


def _pairing_with_simple(rs: RootSystem, v: np.ndarray) -> np.ndarray:
    return v @ rs.gram_array


def canonical_subsystem(rs: RootSystem, roots: Iterable[int], diagram: Optional[Sequence[np.ndarray]] = None
                        ) -> Tuple[int, ...]:
    """Least member of the orbit of a symmetric subsystem under ``W`` (and the given diagram maps).

    The sum of the positive roots of the subsystem is moved into the
    dominant chamber; the subsystems in the orbit realizing that dominant
    vector form a single orbit of its stabilizer, which is walked in full.
    """
    base = sorted(set(int(i) for i in roots))
    if diagram is None:
        diagram = [identity(rs)]
    best = None
    for d in diagram:
        cur = np.asarray(sorted(int(d[i]) for i in base), dtype=np.int64)
        cur = _dominant_representative(rs, cur)
        for cand in _stabilizer_orbit(rs, cur):
            if best is None or cand < best:
                best = cand
    return best if best is not None else ()


def _rho(rs: RootSystem, idx: np.ndarray) -> np.ndarray:
    pos = idx[rs.positive[idx]] if idx.size else idx
    return rs.coords[pos].sum(axis=0) if pos.size else np.zeros(rs.rank, dtype=np.int64)


def _dominant_representative(rs: RootSystem, idx: np.ndarray) -> np.ndarray:
    v = _rho(rs, idx)
    simple = rs.simple_indices
    refl = rs.reflection_perms
    while True:
        pair = _pairing_with_simple(rs, v)
        neg = np.nonzero(pair < 0)[0]
        if neg.size == 0:
            break
        i = int(neg[0])
        idx = refl[simple[i]][idx]
        v = v - (2 * int(pair[i]) // int(rs.gram[i][i])) * rs.coords[simple[i]]
    # The positive roots of the moved set sum to the dominant vector.
    if not np.array_equal(_rho(rs, idx), v):
        raise SymmetryError("dominant representative mismatch")
    return idx


def _stabilizer_orbit(rs: RootSystem, idx: np.ndarray) -> List[Tuple[int, ...]]:
    v = _rho(rs, idx)
    pair = _pairing_with_simple(rs, v)
    gens = [rs.reflection_perms[rs.simple_indices[i]] for i in range(rs.rank) if pair[i] == 0]
    start = tuple(sorted(idx.tolist()))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for s in frontier:
            arr = np.asarray(s, dtype=np.int64)
            for g in gens:
                t = tuple(sorted(g[arr].tolist()))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return list(seen)
