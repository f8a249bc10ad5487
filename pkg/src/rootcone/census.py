"""Enumerate root subalgebras up to symmetry, classify them, and persist the results."""

from __future__ import annotations

import json
import os
from collections import Counter, OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .conditions import (
    ConeFails,
    ConeHolds,
    ConjecturalError,
    ExtensionNeeded,
    Relation,
    StrictlyInfinite,
    Verdict,
    accepted_levi,
    centralizer_condition,
    certificate_kind,
    cone_condition,
    find_certificate,
    verify_certificate,
)
from .exact import CertificateError
from .rootsystem import (
    DynkinType,
    RootSystem,
    build,
    dynkin_type_of,
    format_root,
    is_closed,
    is_symmetric,
    parse_root,
    subsystem_simple_roots,
)
from .subalgebra import RootSubalgebra, SubalgebraError, centralizer_of, module_decomposition, validate
from .symmetry import (
    RestrictedSymmetry,
    canonical_subsystem,
    diagram_automorphisms,
    lex_min_image,
    linear_map,
    restricted_elements,
    restricted_symmetry_group,
)

SCHEMA_VERSION = 1
LARGE_TYPES = ("E7", "E8")


class CensusError(ValueError):
    """Invalid census request or census file."""


# ---------------------------------------------------------------------------
# Reductive subalgebras
# ---------------------------------------------------------------------------


def _highest_root(rs: RootSystem, simple: Sequence[int]) -> int:
    """Highest root of the subsystem spanned by ``simple`` (a connected simple system)."""
    from .rootsystem import closure

    sub = closure(rs, list(simple) + [int(rs.neg[i]) for i in simple])
    pos = [i for i in sub if rs.positive[i]]
    return max(pos, key=lambda i: (int(rs.heights[i]), rs.roots[i]))


def _components(rs: RootSystem, simple: Sequence[int]) -> List[List[int]]:
    simple = list(simple)
    seen = set()
    comps = []
    for s in simple:
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in simple:
                if b not in seen and rs.inner_table[a, b] != 0:
                    seen.add(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def _span_subsystem(rs: RootSystem, generators: Sequence[int]) -> FrozenSet[int]:
    """Roots in the orbit of the generators under their reflections."""
    gens = list(generators)
    out = set(gens) | {int(rs.neg[g]) for g in gens}
    frontier = list(out)
    refl = rs.reflection_perms
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                s = int(refl[g][r])
                if s not in out:
                    out.add(s)
                    nxt.append(s)
        frontier = nxt
    return frozenset(out)


def lower_representative(rs: RootSystem, sub: Iterable[int]) -> Tuple[int, ...]:
    """Conjugate of a subsystem reached by simple reflections that lower the heights of its positive roots.

    Used only to present class representatives readably (a root subsystem
    of simple roots where possible); it is not a canonical form.
    """
    cur = np.array(sorted(int(i) for i in sub), dtype=np.int64)

    def score(idx: np.ndarray) -> int:
        pos = idx[rs.positive[idx]]
        return int(rs.heights[pos].sum())

    refl = rs.reflection_perms
    simple = list(rs.simple_indices)
    best = score(cur)
    while cur.size:
        cands = [np.sort(refl[i][cur]) for i in simple]
        scores = [score(c) for c in cands]
        j = int(np.argmin(scores))
        if scores[j] >= best:
            break
        cur, best = cands[j], scores[j]
    return tuple(int(i) for i in cur)


def enumerate_reductive_subalgebras(rs: RootSystem) -> List[Tuple[Tuple[int, ...], DynkinType]]:
    """One closed symmetric subsystem per automorphism class, including the empty set and all roots.

    Candidates come from repeatedly deleting a node of a component's
    diagram or of its extended diagram; non-closed candidates are dropped
    and the rest are deduplicated by canonical form.
    """
    diagram = diagram_automorphisms(rs)
    start = canonical_subsystem(rs, range(rs.size), diagram)
    classes: Dict[Tuple[int, ...], None] = {start: None}
    frontier = [start]
    while frontier:
        nxt = []
        for sub in frontier:
            simple = subsystem_simple_roots(rs, sub)
            comps = _components(rs, simple)
            cands = []
            for i in range(len(simple)):
                cands.append(simple[:i] + simple[i + 1:])
            for ci, comp in enumerate(comps):
                others = [s for j, c in enumerate(comps) if j != ci for s in c]
                lowest = int(rs.neg[_highest_root(rs, comp)])
                ext = comp + [lowest]
                for i in range(len(ext)):
                    cands.append(others + ext[:i] + ext[i + 1:])
            for gens in cands:
                cand = _span_subsystem(rs, gens) if gens else frozenset()
                if not is_closed(rs, cand):
                    continue
                key = canonical_subsystem(rs, cand, diagram)
                if key not in classes:
                    classes[key] = None
                    nxt.append(key)
        frontier = nxt
    out = [(lower_representative(rs, key), dynkin_type_of(rs, key)) for key in classes]
    out.sort(key=lambda kt: (-len(kt[0]), -kt[1].rank, str(kt[1]), kt[0]))
    return out


# ---------------------------------------------------------------------------
# Nilradicals
# ---------------------------------------------------------------------------


@dataclass
class ModuleTable:
    """Module-level addition data for a fixed ``k``."""

    modules: List[Tuple[int, ...]]
    module_of: Dict[int, int]
    negated: List[int]
    sums: List[List[int]]          # bitmask of modules hit by sums
    incompatible: List[int]        # bitmask of modules that cannot coexist with a module


def module_table(rs: RootSystem, k: Iterable[int]) -> ModuleTable:
    k = frozenset(k)
    mods = [m.weights for m in module_decomposition(rs, k)]
    module_of = {r: i for i, m in enumerate(mods) for r in m}
    neg = [module_of[int(rs.neg[m[0]])] for m in mods]
    t = rs.add_table
    M = len(mods)
    sums = [[0] * M for _ in range(M)]
    incompat = [0] * M
    for a in range(M):
        for b in range(a, M):
            mask = 0
            bad = False
            for x in mods[a]:
                for y in mods[b]:
                    s = int(t[x, y])
                    if s == -2 or (s >= 0 and s in k):
                        bad = True
                    elif s >= 0:
                        mask |= 1 << module_of[s]
            sums[a][b] = sums[b][a] = mask
            if bad:
                incompat[a] |= 1 << b
                incompat[b] |= 1 << a
    return ModuleTable(mods, module_of, neg, sums, incompat)


def _propagate(tab: ModuleTable, included: int, excluded: int, new: int) -> Optional[int]:
    """Add module ``new`` and everything forced by closure; None on contradiction."""
    work = [new]
    while work:
        x = work.pop()
        bit = 1 << x
        if included & bit:
            continue
        if excluded & bit:
            return None
        if tab.incompatible[x] & (included | bit):
            return None
        included |= bit
        forced = tab.sums[x][x]
        rest = included
        while rest:
            low = rest & -rest
            y = low.bit_length() - 1
            rest ^= low
            forced |= tab.sums[x][y]
        forced &= ~included
        while forced:
            low = forced & -forced
            work.append(low.bit_length() - 1)
            forced ^= low
    return included


def _search(tab: ModuleTable, free_pairs: List[Tuple[int, ...]], included: int, excluded: int) -> List[int]:
    """All closed, consistent completions of a partial assignment over the free module pairs."""
    out: List[int] = []

    def rec(pos: int, inc: int, exc: int) -> None:
        if pos == len(free_pairs):
            out.append(inc)
            return
        pair = free_pairs[pos]
        decided = [m for m in pair if (inc >> m) & 1]
        if decided:
            # closure already chose one side; the other side is excluded
            exc2 = exc
            for m in pair:
                if m not in decided:
                    exc2 |= 1 << m
            rec(pos + 1, inc, exc2)
            return
        both = 0
        for m in pair:
            both |= 1 << m
        # option: neither
        rec(pos + 1, inc, exc | both)
        for m in pair:
            if (exc >> m) & 1:
                continue
            other = 0
            for o in pair:
                if o != m:
                    other |= 1 << o
            got = _propagate(tab, inc, exc | other, m)
            if got is not None:
                rec(pos + 1, got, exc | other)

    rec(0, included, excluded)
    return out


def _roots_of(tab: ModuleTable, mask: int) -> Tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.extend(tab.modules[low.bit_length() - 1])
        mask ^= low
    return tuple(sorted(out))


def _module_pairs(tab: ModuleTable, allowed: Iterable[int]) -> List[Tuple[int, ...]]:
    seen = set()
    pairs = []
    for m in sorted(allowed):
        if m in seen:
            continue
        p = tuple(sorted({m, tab.negated[m]}))
        seen.update(p)
        if len(p) == 1:
            # self-opposite modules can never lie in n
            continue
        pairs.append(p)
    return pairs


def standard_parabolic_nilradical(rs: RootSystem, c_roots: Iterable[int], J: Iterable[int]) -> FrozenSet[int]:
    """Positive centralizer roots not in the span of the simple roots ``J``."""
    c = sorted(c_roots)
    simple = subsystem_simple_roots(rs, c)
    J = set(J)
    from .exact import solve_linear

    basis = [rs.roots[s] for s in simple]
    out = []
    for r in c:
        if not rs.positive[r]:
            continue
        x = solve_linear([[b[i] for b in basis] for i in range(rs.rank)], list(rs.roots[r]))
        if any(x[j] != 0 for j, s in enumerate(simple) if s not in J):
            out.append(r)
    return frozenset(out)


def seed_rank(rs: RootSystem, seed: Optional[int]) -> np.ndarray:
    """Total order on the roots used for deduplication (``rank[i]`` is the position of root ``i``).

    The default puts positive roots first by height, then negative roots
    by depth, so representatives favour low positive roots.  An integer
    seed gives a random order instead.
    """
    if seed is not None:
        return np.random.default_rng(seed).permutation(rs.size).astype(np.int64)
    keys = sorted(range(rs.size), key=lambda i: (not rs.positive[i], abs(int(rs.heights[i])), i))
    rank = np.empty(rs.size, dtype=np.int64)
    rank[keys] = np.arange(rs.size)
    return rank


def enumerate_nilradicals(rs: RootSystem, k_roots: Iterable[int], parabolic_filter: bool = True,
                          sym: Optional[RestrictedSymmetry] = None, rank: Optional[np.ndarray] = None
                          ) -> List[Tuple[int, ...]]:
    """Nilradicals for a fixed ``k``, one per orbit of ``W'``, as canonical sorted index tuples.

    With the filter on, the part of ``n`` inside the centralizer roots is
    a standard parabolic nilradical taken up to ``W''``; otherwise every
    closed union of modules is considered.
    """
    k = frozenset(int(i) for i in k_roots)
    c = centralizer_of(rs, k)
    if sym is None:
        sym = restricted_symmetry_group(rs, k, c)
    elements = restricted_elements(sym)
    tab = module_table(rs, k)
    results = set()
    if not parabolic_filter:
        pairs = _module_pairs(tab, range(len(tab.modules)))
        for mask in _search(tab, pairs, 0, 0):
            results.add(lex_min_image(elements, _roots_of(tab, mask), rank))
        return sorted(results)

    c_mods = {tab.module_of[r] for r in c}
    free_pairs = _module_pairs(tab, [m for m in range(len(tab.modules)) if m not in c_mods])
    simple_c = subsystem_simple_roots(rs, c)
    w2 = sym.w2.elements()
    seen_J = set()
    for size in range(len(simple_c) + 1):
        from itertools import combinations

        for J in combinations(simple_c, size):
            key = frozenset(J)
            if key in seen_J:
                continue
            orbit = {frozenset(int(w[j]) for j in J) for w in w2}
            seen_J.update(orbit)
            P = standard_parabolic_nilradical(rs, c, J)
            inc = 0
            exc = 0
            for r in c:
                bit = 1 << tab.module_of[r]
                if r in P:
                    inc |= bit
                else:
                    exc |= bit
            # closure inside the centralizer is automatic for a parabolic nilradical
            stab_rows = np.ones(len(elements), dtype=bool)
            Pm = np.zeros(rs.size, dtype=bool)
            Pm[list(P)] = True
            if P:
                stab_rows = Pm[elements[:, sorted(P)]].all(axis=1)
            G = elements[stab_rows]
            for mask in _search(tab, free_pairs, inc, exc):
                results.add(lex_min_image(G, _roots_of(tab, mask), rank))
    return sorted({lex_min_image(elements, n, rank) for n in results})


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------


@dataclass
class ClassificationRecord:
    ambient: str
    k_type: str
    k_roots: Tuple[int, ...]
    n_roots: Tuple[int, ...]
    n_modules: Tuple[int, ...]
    cone_holds: bool
    centralizer_holds: bool
    levi_type: str
    verdict: str
    certificate: object
    symmetry: Tuple[int, int, int]
    weyl_classes: int = 1

    def subalgebra(self) -> RootSubalgebra:
        return RootSubalgebra(build(self.ambient), frozenset(self.k_roots), frozenset(self.n_roots))

    @property
    def extension_needed(self) -> bool:
        return isinstance(self.certificate, ExtensionNeeded)


def classify_subalgebra(l: RootSubalgebra, symmetry=(0, 0, 0), certificates: bool = True,
                        n_modules: Tuple[int, ...] = ()) -> ClassificationRecord:
    rs = l.ambient
    cone = cone_condition(l)
    ok, levi = centralizer_condition(l)
    holds = isinstance(cone, ConeHolds)
    verdict = Verdict.FINITE if (holds and ok) else Verdict.INFINITE
    if holds:
        cert = cone
    elif certificates:
        cert = find_certificate(l)
    else:
        cert = cone
    return ClassificationRecord(
        ambient=str(rs.type), k_type=str(l.k_type), k_roots=tuple(sorted(l.k)),
        n_roots=tuple(sorted(l.n)), n_modules=n_modules, cone_holds=holds, centralizer_holds=ok,
        levi_type=str(levi), verdict=verdict.value, certificate=cert, symmetry=tuple(symmetry))


@dataclass
class CensusOptions:
    include_solvable: bool = False
    parabolic_filter: bool = True
    certificates: bool = True
    include_whole: bool = True
    full_stabilizer: bool = False
    seed_order: Optional[int] = None
    assume_conjecture: bool = False
    large: bool = False
    threads: int = 1


@dataclass
class CensusSummary:
    type: str
    total: int = 0
    cone_holds: int = 0
    cone_fails: int = 0
    extension_needed: int = 0
    finite: int = 0
    infinite: int = 0
    weyl_classes: int = 0
    per_k: Dict[str, Dict[str, int]] = field(default_factory=dict)
    options: Dict[str, object] = field(default_factory=dict)

    def headline(self) -> Tuple[int, int, int]:
        return (self.total, self.cone_holds, self.cone_fails)

    def check(self) -> None:
        if self.cone_holds + self.cone_fails != self.total or self.finite + self.infinite != self.total:
            raise CensusError("summary counts do not add up")
        if sum(v["total"] for v in self.per_k.values()) != self.total:
            raise CensusError("per-k counts do not add up")


def summarize(type_: str, records: Sequence[ClassificationRecord], options: Optional[CensusOptions] = None
              ) -> CensusSummary:
    s = CensusSummary(type=type_, options=asdict(options) if options else {})
    for r in records:
        s.total += 1
        s.cone_holds += r.cone_holds
        s.cone_fails += not r.cone_holds
        s.extension_needed += r.extension_needed
        s.finite += r.verdict == "finite"
        s.infinite += r.verdict == "infinite"
        s.weyl_classes += r.weyl_classes
        block = s.per_k.setdefault(r.k_type, {"total": 0, "cone_holds": 0, "cone_fails": 0, "extension_needed": 0})
        block["total"] += 1
        block["cone_holds"] += r.cone_holds
        block["cone_fails"] += not r.cone_holds
        block["extension_needed"] += r.extension_needed
    s.check()
    return s


def _outer_signatures(rs: RootSystem, elements: np.ndarray) -> np.ndarray:
    """Action of each element on the weight lattice modulo the root lattice, as an integer code."""
    from .rootsystem import cartan_from_gram
    from .exact import inverse

    cartan = cartan_from_gram(rs.gram)
    inv = inverse([[cartan[j][i] for j in range(rs.rank)] for i in range(rs.rank)])
    den = 1
    for row in inv:
        for x in row:
            den = den * x.denominator // np.gcd(den, x.denominator)
    W = np.array([[int(inv[i][j] * den) for j in range(rs.rank)] for i in range(rs.rank)], dtype=np.int64)
    simple = list(rs.simple_indices)
    mats = rs.coords[elements[:, simple]]          # (g, rank_image_of_simple, rank)
    imgs = np.einsum("gsi,sj->gij", mats, W) % den  # images of weights, scaled
    flat = imgs.reshape(len(elements), -1)
    _, codes = np.unique(flat, axis=0, return_inverse=True)
    return codes.reshape(-1)


def _census_for_k(type_: str, k: Tuple[int, ...], options: CensusOptions) -> List[ClassificationRecord]:
    rs = build(type_)
    c = centralizer_of(rs, k)
    sym = restricted_symmetry_group(rs, k, c, full=options.full_stabilizer)
    nils = enumerate_nilradicals(rs, k, options.parabolic_filter, sym, seed_rank(rs, options.seed_order))
    tab = module_table(rs, k)
    n_out = len(diagram_automorphisms(rs))
    elements = restricted_elements(sym) if n_out > 1 else None
    codes = _outer_signatures(rs, elements) if n_out > 1 else None
    records = []
    for n in nils:
        if not options.include_whole and len(k) == rs.size:
            continue
        l = RootSubalgebra(rs, frozenset(k), frozenset(n))
        mods = tuple(sorted({tab.module_of[r] for r in n}))
        rec = classify_subalgebra(l, sym.orders, options.certificates, mods)
        if n_out > 1:
            nm = np.zeros(rs.size, dtype=bool)
            nm[list(n)] = True
            stab = nm[elements[:, list(n)]].all(axis=1) if n else np.ones(len(elements), dtype=bool)
            rec.weyl_classes = n_out // len(set(codes[stab].tolist()))
        records.append(rec)
    return records


def run_census(type_: str, options: Optional[CensusOptions] = None
               ) -> Tuple[List[ClassificationRecord], CensusSummary]:
    """Classify every root subalgebra class of a simple type (non-solvable by default)."""
    options = options or CensusOptions()
    rs = build(type_)
    tname = str(rs.type)
    if not rs.type.is_simple:
        raise CensusError("census requires a simple type")
    if tname in LARGE_TYPES and not options.large:
        raise CensusError(f"{tname} census is long-running; pass --large")
    if tname == "E8" and not options.assume_conjecture:
        raise ConjecturalError("the criterion is conjectural for E8; pass --assume-conjecture (assume_conjecture=True) to proceed")
    cached = _cache_load(tname, options)
    if cached is not None:
        return cached
    ks = [k for k, _ in enumerate_reductive_subalgebras(rs)]
    if not options.include_solvable:
        ks = [k for k in ks if k]
    if options.threads > 1:
        with ProcessPoolExecutor(max_workers=options.threads) as pool:
            parts = list(pool.map(_census_for_k, [tname] * len(ks), ks, [options] * len(ks)))
    else:
        parts = [_census_for_k(tname, k, options) for k in ks]
    records = [r for part in parts for r in part]
    summary = summarize(tname, records, options)
    _cache_store(tname, options, records, summary)
    return records, summary


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------


def _frac(x) -> str:
    return str(Fraction(x))


def certificate_to_json(rs: RootSystem, cert) -> dict:
    if isinstance(cert, ConeHolds):
        return {"verdict": "cone_holds", "separator": [_frac(x) for x in cert.separator]}
    if isinstance(cert, ExtensionNeeded):
        return {"verdict": "extension_needed", "cutoff": cert.cutoff}
    if isinstance(cert, StrictlyInfinite):
        return {
            "verdict": "infinite",
            "relation": cert.relation.to_json(rs),
            "orth_decomposition": [[format_root(rs, b), c] for b, c in zip(cert.basis, cert.coeffs)],
            "cutoff": cert.cutoff,
        }
    if isinstance(cert, ConeFails):
        return {"verdict": "cone_fails", "relation": cert.relation.to_json(rs)}
    raise CensusError(f"unknown certificate {cert!r}")


def certificate_from_json(rs: RootSystem, data: dict):
    kind = data.get("verdict")
    if kind == "cone_holds":
        return ConeHolds(tuple(Fraction(x) for x in data["separator"]))
    if kind == "extension_needed":
        return ExtensionNeeded(int(data["cutoff"]))
    rel = data.get("relation")
    if rel is None:
        raise CensusError(f"certificate of kind {kind!r} lacks a relation")
    alphas = [(parse_root(rs, r), int(m)) for r, m in rel["alphas"]]
    betas = [(parse_root(rs, r), int(m)) for r, m in rel["betas"]]
    if kind == "cone_fails":
        return ConeFails(Relation.make(rs, alphas, betas))
    if kind == "infinite":
        dec = [(parse_root(rs, r), int(m)) for r, m in data["orth_decomposition"]]
        relation = Relation.make(rs, alphas, betas, two_sided=True)
        return StrictlyInfinite(relation, tuple(b for b, _ in dec), tuple(c for _, c in dec), int(data.get("cutoff", 0)))
    raise CensusError(f"unknown certificate kind {kind!r}")


def record_to_json(rec: ClassificationRecord) -> dict:
    rs = build(rec.ambient)
    return OrderedDict(
        type=rec.ambient,
        k_type=rec.k_type,
        k=[format_root(rs, i) for i in rec.k_roots if rs.positive[i]],
        n=[format_root(rs, i) for i in rec.n_roots],
        n_modules=list(rec.n_modules),
        cone="holds" if rec.cone_holds else "fails",
        centralizer="holds" if rec.centralizer_holds else "fails",
        levi_type=rec.levi_type,
        verdict=rec.verdict,
        certificate=certificate_to_json(rs, rec.certificate),
        symmetry={"W3": rec.symmetry[0], "W2": rec.symmetry[1], "W1": rec.symmetry[2]},
        weyl_classes=rec.weyl_classes,
    )


def record_from_json(data: dict, verify: bool = True) -> ClassificationRecord:
    try:
        rs = build(data["type"])
        k_pos = [parse_root(rs, r) for r in data["k"]]
        k = sorted(set(k_pos) | {int(rs.neg[i]) for i in k_pos})
        n = sorted(parse_root(rs, r) for r in data["n"])
        rec = ClassificationRecord(
            ambient=str(rs.type), k_type=data["k_type"], k_roots=tuple(k), n_roots=tuple(n),
            n_modules=tuple(data.get("n_modules", ())), cone_holds=data["cone"] == "holds",
            centralizer_holds=data["centralizer"] == "holds", levi_type=data["levi_type"],
            verdict=data["verdict"], certificate=certificate_from_json(rs, data["certificate"]),
            symmetry=(int(data["symmetry"]["W3"]), int(data["symmetry"]["W2"]), int(data["symmetry"]["W1"])),
            weyl_classes=int(data.get("weyl_classes", 1)))
    except (KeyError, TypeError) as exc:
        raise CensusError(f"malformed record: {exc}") from exc
    if verify:
        validate_record(rec)
    return rec


def validate_record(rec: ClassificationRecord) -> None:
    """Check internal consistency; raises :class:`CensusError`."""
    l = rec.subalgebra()
    try:
        validate(l)
    except SubalgebraError as exc:
        raise CensusError(f"invalid subalgebra: {exc}") from exc
    expected = "finite" if (rec.cone_holds and rec.centralizer_holds) else "infinite"
    if rec.verdict != expected:
        raise CensusError("verdict inconsistent with the condition flags")
    if rec.centralizer_holds != accepted_levi(DynkinType.parse(rec.levi_type)):
        raise CensusError("centralizer flag inconsistent with the Levi type")
    if rec.cone_holds != isinstance(rec.certificate, ConeHolds):
        raise CensusError("cone flag inconsistent with the certificate")
    try:
        verify_certificate(l, rec.certificate)
    except CertificateError as exc:
        raise CensusError(f"certificate failed verification: {exc}") from exc


def save_records(path, records: Sequence[ClassificationRecord], summary: Optional[CensusSummary] = None) -> None:
    if summary is None and records:
        summary = summarize(records[0].ambient, records)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "summary": asdict(summary) if summary else None,
        "records": [record_to_json(r) for r in records],
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def load_records(path, verify: bool = True) -> List[ClassificationRecord]:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or data.get("schema_version") != SCHEMA_VERSION:
        raise CensusError(f"unsupported census schema in {path}")
    return [record_from_json(r, verify) for r in data["records"]]


def _cache_path(type_: str, options: CensusOptions) -> Optional[Path]:
    root = os.environ.get("ROOTCONE_CACHE_DIR")
    if not root:
        return None
    flags = "".join([
        "s" if options.include_solvable else "n",
        "p" if options.parabolic_filter else "a",
        "c" if options.certificates else "x",
        "w" if options.include_whole else "",
        "f" if options.full_stabilizer else "",
        f"o{options.seed_order}" if options.seed_order is not None else "",
    ])
    return Path(root) / f"census-{type_}-{flags}-v{SCHEMA_VERSION}.json"


def _cache_load(type_: str, options: CensusOptions):
    path = _cache_path(type_, options)
    if path is None or not path.exists():
        return None
    records = load_records(path)
    return records, summarize(type_, records, options)


def _cache_store(type_: str, options: CensusOptions, records, summary) -> None:
    path = _cache_path(type_, options)
    if path is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    save_records(path, records, summary)
