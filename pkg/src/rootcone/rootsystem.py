"""Root systems of types A-G in integer simple-root coordinates.

Conventions:

* classical types use the Euclidean form on epsilon coordinates
  (``<e_i, e_j> = delta_ij``);
* E-types have roots of squared length 2;
* F4 has long roots of squared length 4 and short roots of squared length 2;
* G2 has long roots of squared length 6 and short roots of squared length 2,
  with the long simple root listed first.

Roots are stored as tuples of integers in the simple-root basis and indexed
in lexicographic order of those tuples.  That index order is the total
order used for canonical forms elsewhere in the package.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exact import solve_linear

Coords = Tuple[int, ...]

SERIES = "ABCDEFG"
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


class RootSystemError(ValueError):
    """Invalid type, root or subsystem."""


class NotARootError(RootSystemError):
    """Well-formed vector expression that does not name a root."""


# ---------------------------------------------------------------------------
# Dynkin types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Component:
    """One simple constituent; ``short`` marks an all-short component in a non-simply-laced ambient."""

    series: str
    rank: int
    short: bool = False

    def __post_init__(self):
        check_series_rank(self.series, self.rank)

    @property
    def label(self) -> str:
        return f"{self.series}{self.rank}" + ("'" if self.short else "")

    def sort_key(self):
        return (-self.rank, self.series, self.short)


def check_series_rank(series: str, rank: int) -> None:
    if series not in SERIES:
        raise RootSystemError(f"unknown series {series!r}")
    if series in _EXCEPTIONAL:
        if rank not in _EXCEPTIONAL[series]:
            raise RootSystemError(f"{series}{rank} is not a valid type")
    elif rank < _MIN_RANK[series]:
        raise RootSystemError(f"{series}{rank}: rank must be at least {_MIN_RANK[series]}")


_TYPE_TOKEN = re.compile(r"^(\d*)([A-Ga-g])_?(\d+)('?)$")


@dataclass(frozen=True)
class DynkinType:
    """A multiset of simple components in canonical order."""

    components: Tuple[Component, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.components, key=Component.sort_key))
        object.__setattr__(self, "components", ordered)

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        text = text.strip().replace(" ", "")
        if text in ("", "0", "-", "trivial"):
            return cls(())
        comps: List[Component] = []
        for token in text.split("+"):
            m = _TYPE_TOKEN.match(token)
            if not m:
                raise RootSystemError(f"cannot parse type component {token!r}")
            mult = int(m.group(1) or 1)
            comps.extend([Component(m.group(2).upper(), int(m.group(3)), bool(m.group(4)))] * mult)
        return cls(tuple(comps))

    @classmethod
    def simple(cls, series: str, rank: int) -> "DynkinType":
        return cls((Component(series, rank),))

    @property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @property
    def is_simple(self) -> bool:
        return len(self.components) == 1

    def __str__(self) -> str:
        if not self.components:
            return "0"
        counts = Counter(self.components)
        seen = []
        for c in self.components:
            if c not in seen:
                seen.append(c)
        return "+".join((f"{counts[c]}" if counts[c] > 1 else "") + c.label for c in seen)

    def __repr__(self) -> str:
        return f"DynkinType({str(self)!r})"

    def unmarked(self) -> "DynkinType":
        return DynkinType(tuple(Component(c.series, c.rank) for c in self.components))


# ---------------------------------------------------------------------------
# Cartan data
# ---------------------------------------------------------------------------


def _epsilon_basis(series: str, n: int) -> Optional[List[List[Fraction]]]:
    """Simple roots as epsilon vectors (rows), for classical types and F4."""
    F = Fraction
    if series == "A":
        rows = []
        for i in range(n):
            v = [F(0)] * (n + 1)
            v[i], v[i + 1] = F(1), F(-1)
            rows.append(v)
        return rows
    if series in "BCD":
        rows = []
        for i in range(n - 1):
            v = [F(0)] * n
            v[i], v[i + 1] = F(1), F(-1)
            rows.append(v)
        last = [F(0)] * n
        if series == "B":
            last[n - 1] = F(1)
        elif series == "C":
            last[n - 1] = F(2)
        else:
            last[n - 2], last[n - 1] = F(1), F(1)
        rows.append(last)
        return rows
    if series == "F":
        h = F(1, 2)
        return [
            [F(0), F(1), F(-1), F(0)],
            [F(0), F(0), F(1), F(-1)],
            [F(0), F(0), F(0), F(1)],
            [h, -h, -h, -h],
        ]
    return None


def _epsilon_scale(series: str) -> int:
    """Factor relating the ambient form to the Euclidean form on epsilon vectors."""
    return 2 if series == "F" else 1


def simple_gram(series: str, n: int) -> List[List[int]]:
    """Gram matrix of the simple roots under the package normalization."""
    check_series_rank(series, n)
    eps = _epsilon_basis(series, n)
    if eps is not None:
        s = _epsilon_scale(series)
        return [[int(s * sum(a * b for a, b in zip(u, v))) for v in eps] for u in eps]
    if series == "G":
        return [[6, -3], [-3, 2]]
    # E_n, Bourbaki numbering: chain 1-3-4-5-..., node 2 attached to node 4.
    g = [[0] * n for _ in range(n)]
    edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    for i in range(n):
        g[i][i] = 2
    for a, b in edges:
        g[a][b] = g[b][a] = -1
    return g


def cartan_from_gram(gram: Sequence[Sequence[int]]) -> List[List[int]]:
    """Cartan integers ``a_ij = 2<a_i,a_j>/<a_j,a_j>``."""
    n = len(gram)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = Fraction(2 * gram[i][j], gram[j][j])
            if v.denominator != 1:
                raise RootSystemError("non-crystallographic Gram matrix")
            out[i][j] = int(v)
    return out


def closure_under_reflections(gram: Sequence[Sequence[int]]) -> List[Coords]:
    """All roots generated from the simple roots by simple reflections."""
    n = len(gram)
    start = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                p = sum(v[j] * gram[j][i] for j in range(n))
                c = Fraction(2 * p, gram[i][i])
                if c == 0:
                    continue
                w = list(v)
                w[i] -= int(c)
                w = tuple(w)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return sorted(seen)


def weyl_order_from_gram(gram: Sequence[Sequence[int]]) -> int:
    """Order of the Weyl group, by orbit of a fundamental weight times a parabolic subgroup."""
    n = len(gram)
    if n == 0:
        return 1
    cartan = cartan_from_gram(gram)
    # Components are handled independently.
    comps = _components(cartan)
    if len(comps) > 1:
        out = 1
        for comp in comps:
            out *= weyl_order_from_gram([[gram[i][j] for j in comp] for i in comp])
        return out
    # Orbit of the last fundamental weight, in fundamental-weight coordinates.
    start = tuple(int(i == n - 1) for i in range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(n):
                if lam[i] == 0:
                    continue
                mu = tuple(lam[j] - lam[i] * cartan[i][j] for j in range(n))
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    sub = [[gram[i][j] for j in range(n - 1)] for i in range(n - 1)]
    return len(seen) * weyl_order_from_gram(sub)


def _components(cartan: Sequence[Sequence[int]]) -> List[List[int]]:
    n = len(cartan)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and cartan[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def weyl_order_formula(series: str, n: int) -> int:
    from math import factorial

    if series == "A":
        return factorial(n + 1)
    if series in "BC":
        return 2 ** n * factorial(n)
    if series == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
            ("F", 4): 1152, ("G", 2): 12}[(series, n)]


# ---------------------------------------------------------------------------
# Root systems
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RootSystem:
    """All roots of a (semi)simple type, with form and positivity.

    Use :func:`build` to construct.  Instances are immutable and cached per type.
    """

    type: DynkinType
    gram: Tuple[Tuple[int, ...], ...]
    roots: Tuple[Coords, ...]
    eps_rows: Optional[Tuple[Tuple[Fraction, ...], ...]] = field(default=None, repr=False)
    eps_scale: int = 1

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def size(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.type})"

    # -- indices and tables -------------------------------------------------

    @cached_property
    def index(self) -> Dict[Coords, int]:
        return {r: i for i, r in enumerate(self.roots)}

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array(self.roots, dtype=np.int64).reshape(len(self.roots), self.rank)

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64).reshape(self.rank, self.rank)

    @cached_property
    def inner_table(self) -> np.ndarray:
        """``inner_table[i, j] = <root_i, root_j>``."""
        c = self.coords
        return c @ self.gram_array @ c.T

    @cached_property
    def norms(self) -> np.ndarray:
        return np.diag(self.inner_table).copy()

    @cached_property
    def neg(self) -> np.ndarray:
        return np.array([self.index[tuple(-x for x in r)] for r in self.roots], dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]``: index of ``root_i + root_j``, ``-2`` if zero, ``-1`` if not a root."""
        n = self.size
        tab = np.full((n, n), -1, dtype=np.int64)
        idx = self.index
        for i, a in enumerate(self.roots):
            for j, b in enumerate(self.roots):
                s = tuple(x + y for x, y in zip(a, b))
                if not any(s):
                    tab[i, j] = -2
                else:
                    tab[i, j] = idx.get(s, -1)
        return tab

    @cached_property
    def positive(self) -> np.ndarray:
        return np.array([all(x >= 0 for x in r) for r in self.roots], dtype=bool)

    @cached_property
    def simple_indices(self) -> Tuple[int, ...]:
        return tuple(self.index[tuple(int(i == j) for j in range(self.rank))] for i in range(self.rank))

    @cached_property
    def heights(self) -> np.ndarray:
        return self.coords.sum(axis=1)

    @cached_property
    def long_length(self) -> int:
        return int(self.norms.max())

    def is_short(self, i: int) -> bool:
        return int(self.norms[i]) < self.long_length

    @property
    def simply_laced(self) -> bool:
        return int(self.norms.min()) == self.long_length

    # -- queries -------------------------------------------------------------

    def root_index(self, v: Iterable[int]) -> int:
        key = tuple(int(x) for x in v)
        try:
            return self.index[key]
        except KeyError:
            raise RootSystemError(f"{format_root(self, key)} is not a root of {self.type}") from None

    def is_root(self, v: Iterable[int]) -> bool:
        return tuple(int(x) for x in v) in self.index

    def is_root_or_zero(self, v: Iterable[int]) -> bool:
        v = tuple(int(x) for x in v)
        return not any(v) or v in self.index

    def inner(self, a: Sequence, b: Sequence) -> Fraction:
        """Form on arbitrary (possibly rational) simple-coordinate vectors."""
        g = self.gram
        n = self.rank
        return sum((Fraction(a[i]) * g[i][j] * Fraction(b[j]) for i in range(n) for j in range(n)
                    if a[i] and b[j]), Fraction(0))

    def strongly_orthogonal(self, i: int, j: int) -> bool:
        """Roots ``i`` and ``j`` (indices): neither sum nor difference is a root or zero."""
        return self.add_table[i, j] == -1 and self.add_table[i, self.neg[j]] == -1

    @cached_property
    def strong_orth_table(self) -> np.ndarray:
        t = self.add_table
        return (t == -1) & (t[:, self.neg] == -1)

    def reflect(self, v: Sequence[int], i: int) -> Coords:
        """Reflection of ``v`` in root ``i``."""
        r = self.roots[i]
        c = Fraction(2) * self.inner(v, r) / int(self.norms[i])
        if c.denominator != 1:
            raise RootSystemError("reflection leaves the root lattice")
        c = int(c)
        return tuple(int(x) - c * y for x, y in zip(v, r))

    @cached_property
    def reflection_perms(self) -> np.ndarray:
        """``reflection_perms[i]`` permutes root indices by the reflection in root ``i``."""
        c = self.coords
        out = np.empty((self.size, self.size), dtype=np.int64)
        for i in range(self.size):
            coef = (2 * self.inner_table[:, i]) // int(self.norms[i])
            img = c - np.outer(coef, c[i])
            out[i] = [self.index[tuple(row)] for row in img.tolist()]
        return out

    # -- epsilon view ----------------------------------------------------------

    @property
    def has_epsilon(self) -> bool:
        return self.eps_rows is not None

    def to_epsilon(self, v: Sequence[int]) -> Tuple[Fraction, ...]:
        if self.eps_rows is None:
            raise RootSystemError(f"no epsilon realization for {self.type}")
        dim = len(self.eps_rows[0])
        return tuple(sum((Fraction(v[i]) * self.eps_rows[i][k] for i in range(self.rank)), Fraction(0))
                     for k in range(dim))

    def from_epsilon(self, e: Sequence) -> Optional[Coords]:
        if self.eps_rows is None:
            raise RootSystemError(f"no epsilon realization for {self.type}")
        dim = len(self.eps_rows[0])
        if len(e) != dim:
            return None
        A = [[self.eps_rows[i][k] for i in range(self.rank)] for k in range(dim)]
        x = solve_linear(A, [Fraction(t) for t in e])
        if x is None or any(t.denominator != 1 for t in x):
            return None
        return tuple(int(t) for t in x)

    @property
    def epsilon_dim(self) -> int:
        return len(self.eps_rows[0]) if self.eps_rows else 0


_CACHE: Dict[DynkinType, RootSystem] = {}


def build(type_: "DynkinType | str") -> RootSystem:
    """Root system of a (semi)simple type; components are placed block-diagonally."""
    if isinstance(type_, str):
        type_ = DynkinType.parse(type_)
    type_ = type_.unmarked()
    if type_ in _CACHE:
        return _CACHE[type_]
    if not type_.components:
        raise RootSystemError("empty type")
    n = type_.rank
    gram = [[0] * n for _ in range(n)]
    off = 0
    for comp in type_.components:
        g = simple_gram(comp.series, comp.rank)
        for i in range(comp.rank):
            for j in range(comp.rank):
                gram[off + i][off + j] = g[i][j]
        off += comp.rank
    roots = closure_under_reflections(gram)
    eps_rows = None
    scale = 1
    if type_.is_simple:
        comp = type_.components[0]
        eps = _epsilon_basis(comp.series, comp.rank)
        if eps is not None:
            eps_rows = tuple(tuple(r) for r in eps)
            scale = _epsilon_scale(comp.series)
    rs = RootSystem(type_, tuple(tuple(r) for r in gram), tuple(roots), eps_rows, scale)
    _validate(rs)
    _CACHE[type_] = rs
    return rs


def expected_root_count(series: str, n: int) -> int:
    return {
        "A": n * (n + 1), "B": 2 * n * n, "C": 2 * n * n, "D": 2 * n * (n - 1),
    }.get(series) or {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12}[(series, n)]


def _validate(rs: RootSystem) -> None:
    expected = sum(expected_root_count(c.series, c.rank) for c in rs.type.components)
    if rs.size != expected:
        raise RootSystemError(f"{rs.type}: generated {rs.size} roots, expected {expected}")
    for r in rs.roots:
        if not (all(x >= 0 for x in r) or all(x <= 0 for x in r)):
            raise RootSystemError("root with mixed-sign coordinates")


# ---------------------------------------------------------------------------
# Textual syntax
# ---------------------------------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*(e|ε|a|α|g|γ)\s*_?\s*(\d+)", re.IGNORECASE)


def parse_vector(rs: RootSystem, text: str) -> Coords:
    """Parse ``[a1,...]``, an epsilon expression (``e1+e2``) or a simple-root expression (``a1+2a2``)."""
    raw = text
    s = text.strip().lower().replace(" ", "").replace("\t", "")
    if not s:
        raise RootSystemError("empty root expression")
    if s.startswith("[") or s.startswith("("):
        if not (s.endswith("]") or s.endswith(")")):
            raise RootSystemError(f"unterminated coordinate list in {raw!r}")
        body = s[1:-1]
        try:
            vals = [int(t) for t in body.split(",") if t != ""]
        except ValueError:
            raise RootSystemError(f"non-integer coordinate in {raw!r}") from None
        if len(vals) != rs.rank:
            raise RootSystemError(f"{raw!r} has {len(vals)} coordinates, {rs.type} has rank {rs.rank}")
        return tuple(vals)
    pos = 0
    kind = None
    acc: Dict[int, Fraction] = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise RootSystemError(f"cannot parse {raw!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise RootSystemError(f"missing sign in {raw!r} at position {pos}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        letter = m.group(3)
        k = "e" if letter in ("e", "ε") else "a"
        if kind is None:
            kind = k
        elif kind != k:
            raise RootSystemError(f"mixed epsilon and simple-root terms in {raw!r}")
        i = int(m.group(4))
        acc[i] = acc.get(i, Fraction(0)) + sign * coef
        pos = m.end()
    if kind == "a":
        if any(i < 1 or i > rs.rank for i in acc):
            raise NotARootError(f"simple-root index out of range in {raw!r}")
        vec = [acc.get(i + 1, Fraction(0)) for i in range(rs.rank)]
        if any(v.denominator != 1 for v in vec):
            raise RootSystemError(f"{raw!r} is not in the root lattice")
        return tuple(int(v) for v in vec)
    if not rs.has_epsilon:
        raise RootSystemError(f"epsilon syntax is not available for {rs.type}")
    dim = rs.epsilon_dim
    if any(i < 1 or i > dim for i in acc):
        raise NotARootError(f"epsilon index out of range in {raw!r}")
    vec = rs.from_epsilon([acc.get(i + 1, Fraction(0)) for i in range(dim)])
    if vec is None:
        raise NotARootError(f"{raw!r} is not in the root lattice of {rs.type}")
    return vec


def parse_root(rs: RootSystem, text: str) -> int:
    """Index of the root written as ``text``."""
    try:
        v = parse_vector(rs, text)
    except NotARootError:
        v = None
    if v not in rs.index:
        raise RootSystemError(f"{text.strip()} is not a root of {rs.type}")
    return rs.index[v]


def _format_linear(coefs: Sequence[Fraction], letter: str) -> str:
    parts = []
    for i, c in enumerate(coefs):
        if c == 0:
            continue
        mag = abs(c)
        body = ("" if mag == 1 else str(mag)) + f"{letter}{i + 1}"
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def format_root(rs: RootSystem, v: "Sequence[int] | int", style: str = "auto") -> str:
    """Epsilon expression for classical types and F4, simple coordinates otherwise."""
    if isinstance(v, (int, np.integer)):
        v = rs.roots[int(v)]
    if style == "auto":
        style = "eps" if rs.has_epsilon else ("simple" if rs.type.is_simple and rs.type.components[0].series == "G" else "coords")
    if style == "eps":
        return _format_linear(rs.to_epsilon(v), "e")
    if style == "simple":
        letter = "g" if rs.type.is_simple and rs.type.components[0].series == "G" else "a"
        return _format_linear([Fraction(x) for x in v], letter)
    return "[" + ",".join(str(int(x)) for x in v) + "]"


# ---------------------------------------------------------------------------
# Subsystem helpers
# ---------------------------------------------------------------------------


def is_symmetric(rs: RootSystem, idx: Iterable[int]) -> bool:
    s = set(idx)
    return all(int(rs.neg[i]) in s for i in s)


def is_closed(rs: RootSystem, idx: Iterable[int]) -> bool:
    s = sorted(set(idx))
    t = rs.add_table
    ss = set(s)
    return all(t[i, j] < 0 or int(t[i, j]) in ss for i in s for j in s)


def closure(rs: RootSystem, idx: Iterable[int]) -> frozenset:
    """Smallest set containing ``idx`` and closed under root addition."""
    s = set(int(i) for i in idx)
    t = rs.add_table
    frontier = list(s)
    while frontier:
        nxt = []
        for i in frontier:
            for j in list(s):
                for a, b in ((i, j), (j, i)):
                    k = int(t[a, b])
                    if k >= 0 and k not in s:
                        s.add(k)
                        nxt.append(k)
        frontier = nxt
    return frozenset(s)


def subsystem_simple_roots(rs: RootSystem, idx: Iterable[int]) -> List[int]:
    """Positive elements of a symmetric closed set that are not sums of two positive elements."""
    s = set(idx)
    pos = [i for i in s if rs.positive[i]]
    posset = set(pos)
    t = rs.add_table
    decomposable = set()
    for a in pos:
        for b in pos:
            k = int(t[a, b])
            if k in posset:
                decomposable.add(k)
    return sorted(i for i in pos if i not in decomposable)


def identify_cartan(cartan: Sequence[Sequence[int]]) -> Tuple[str, int, List[int]]:
    """Identify a connected Cartan matrix; returns (series, rank, node order)."""
    n = len(cartan)
    if n == 1:
        return "A", 1, [0]
    deg = [sum(1 for j in range(n) if j != i and cartan[i][j] != 0) for i in range(n)]
    multi = [(i, j) for i in range(n) for j in range(n) if i != j and cartan[i][j] < -1]
    if multi:
        i, j = multi[0]
        if cartan[i][j] == -3:
            return "G", 2, [j, i]
        # a_ij = -2 means root i is long and root j is short.
        long_end, short_end = i, j
        if n == 4 and deg[long_end] == 2 and deg[short_end] == 2:
            return "F", 4, []
        if n == 2 or deg[short_end] == 1:
            return "B", n, []
        return "C", n, []
    if max(deg) <= 2:
        return "A", n, []
    branch = deg.index(3)
    arms = []
    for start in (j for j in range(n) if j != branch and cartan[branch][j] != 0):
        length, prev, cur = 1, branch, start
        while True:
            nxt = [k for k in range(n) if k not in (prev, cur) and cartan[cur][k] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return "D", n, []
    if arms[:2] == [1, 2] and n in (6, 7, 8):
        return "E", n, []
    raise RootSystemError("unrecognized Cartan matrix")


def dynkin_type_of(rs: RootSystem, idx: Iterable[int]) -> DynkinType:
    """Dynkin type of a symmetric closed subset of roots, with short-root tags."""
    idx = set(int(i) for i in idx)
    if not is_symmetric(rs, idx) or not is_closed(rs, idx):
        raise RootSystemError("subset is not a symmetric closed subsystem")
    simple = subsystem_simple_roots(rs, idx)
    if not simple:
        return DynkinType(())
    n = len(simple)
    gram = [[int(rs.inner_table[a, b]) for b in simple] for a in simple]
    cartan = cartan_from_gram(gram)
    comps = []
    laced = rs.simply_laced
    for comp in _components(cartan):
        sub = [[cartan[a][b] for b in comp] for a in comp]
        series, rank, _ = identify_cartan(sub)
        short = False
        if not laced and series in "ADE":
            short = all(rs.is_short(simple[a]) for a in comp)
        comps.append(Component(series, rank, short))
    return DynkinType(tuple(comps))
