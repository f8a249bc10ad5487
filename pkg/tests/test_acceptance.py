"""Acceptance criteria, one test each, reporting a PASS/FAIL line per criterion."""

from __future__ import annotations

import os
import random
import time
from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest

from rootcone.census import CensusOptions, enumerate_reductive_subalgebras, run_census, validate_record
from rootcone.conditions import (
    ConeHolds,
    StrictlyInfinite,
    Verdict,
    centralizer_condition,
    classify,
    cone_condition,
    find_certificate,
    minimal_relations,
)
from rootcone.exact import cone_intersection_problem, dot, lp_feasible, separate, verify_farkas, verify_witness
from rootcone.rootsystem import build, dynkin_type_of, format_root, parse_root
from rootcone.subalgebra import (
    centralizer_of,
    make_subalgebra,
    module_decomposition,
    parabolic_nilradical_test,
    singular_weights,
)
from rootcone.symmetry import automorphism_group, restricted_symmetry_group, weyl_group

from tables import (
    CONE_FAILING,
    E7_REPEATED_ROWS,
    SHAPE_ROW_C_DOUBLE,
    SHAPE_ROWS_B,
    SHAPE_ROWS_C,
    SYMMETRY_ROWS,
)

OFF = CensusOptions(parabolic_filter=False)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _timed(detail: str, timer: Timer, limit: float) -> str:
    return f"{detail} in {timer.seconds:.1f} s (limit {limit:g} s)"


@pytest.fixture(scope="module")
def rank_three_censuses():
    out = {}
    for name in ("B3", "C3"):
        with Timer() as t:
            out[name] = run_census(name, OFF)
        out[name] = out[name] + (t.seconds,)
    return out


# ---------------------------------------------------------------------------
# 1-4: rank two and three
# ---------------------------------------------------------------------------


def test_criterion_1_b3_c3_census(criterion, rank_three_censuses):
    got = {name: rank_three_censuses[name][1].headline() for name in ("B3", "C3")}
    slow = max(rank_three_censuses[name][2] for name in ("B3", "C3"))
    ok = got == {"B3": (43, 32, 11), "C3": (54, 38, 16)} and slow < 10
    criterion(1, "B3/C3 non-solvable census (filter off)",
              ok, f"B3 {got['B3']}, C3 {got['C3']}, slowest {slow:.1f} s (limit 10 s)")


def _w_canonical(rs, elements, k, n):
    return min((tuple(sorted(g[list(k)].tolist())), tuple(sorted(g[list(n)].tolist()))) for g in elements)


def test_criterion_2_cone_failing_table(criterion, rank_three_censuses):
    details, ok = [], True
    with Timer() as t:
        for name in ("B3", "C3"):
            rs = build(name)
            els = weyl_group(rs).elements()
            records = rank_three_censuses[name][0]
            mine = Counter(_w_canonical(rs, els, r.k_roots, r.n_roots) for r in records if not r.cone_holds)
            ref = Counter()
            for k_text, n_text in CONE_FAILING[name]:
                l = make_subalgebra(rs, k_text, n_text)
                ok &= sorted(l.n) == sorted(parse_root(rs, x) for x in n_text)
                ref[_w_canonical(rs, els, l.k, l.n)] += 1
            ok &= mine == ref
            details.append(f"{name} {sum(mine.values())} rows, {len(mine)} conjugacy classes")
    ok &= t.seconds < 10
    criterion(2, "cone-failing B3/C3 table, set-for-set", ok, _timed("; ".join(details), t, 10))


def test_criterion_3_sp6_example(criterion):
    with Timer() as t:
        rs = build("C3")
        l = make_subalgebra(rs, ["2e2", "2e3"], ["2e1", "e1+e2", "e1-e2"])
        sing = {format_root(rs, i) for i in singular_weights(l)}
        ok = sing == {"e1+e3", "e2+e3", "-e1+e3", "-e1+e2", "-2e1"}
        ok &= isinstance(cone_condition(l), ConeHolds)
        ok &= parabolic_nilradical_test(rs, range(rs.size), l.n) is None
        ok &= classify(l) is Verdict.FINITE
    ok &= t.seconds < 1
    criterion(3, "sp(6) example", ok, _timed("singular set, cone, parabolic test, finite type", t, 1))


def test_criterion_4_g2(criterion):
    with Timer() as t:
        records, summary = run_census("G2")
        rs = build("G2")
        failing = [r for r in records if not r.cone_holds]
        ok = len(failing) == 1
        ok &= [format_root(rs, i) for i in failing[0].n_roots] == ["g1+3g2", "2g1+3g2"]
        cert = find_certificate(failing[0].subalgebra())
        ok &= isinstance(cert, StrictlyInfinite)
        ok &= cert.relation.format(rs) == "(g1+g2) + (g1+2g2) = (2g1+3g2)"
    ok &= t.seconds < 1
    criterion(4, "G2 unique cone-failing class with strictly infinite relation", ok,
              _timed(f"{summary.headline()}, relation {cert.relation.format(rs)}", t, 1))


# ---------------------------------------------------------------------------
# 5-6: reductive classes and symmetry tables
# ---------------------------------------------------------------------------


def _symmetry_rows(name):
    rs = build(name)
    rows = []
    for k, ty in enumerate_reductive_subalgebras(rs):
        c = centralizer_of(rs, k)
        w3, w2, w1 = restricted_symmetry_group(rs, k, c).orders
        rows.append((str(ty) if k else "", str(dynkin_type_of(rs, c)) if c else "", w2, w3, w1))
    return rows


@pytest.fixture(scope="module")
def symmetry_rows():
    out = {}
    for name in ("F4", "E6", "E7"):
        with Timer() as t:
            out[name] = _symmetry_rows(name)
        out[name + "_seconds"] = t.seconds
    return out


def test_criterion_5_reductive_classes(criterion, symmetry_rows):
    f4, e6, e7 = (symmetry_rows[n] for n in ("F4", "E6", "E7"))
    e7_pairs = {(r[0], r[1]) for r in e7}
    ok = len(f4) == 24 and len(e6) == 21 and len(e7_pairs) == 44
    # E7 has three pairs of non-conjugate k with the same (k_ss, C(k_ss)_ss) types
    ok &= len(e7) == 44 + len(E7_REPEATED_ROWS)
    ok &= max(symmetry_rows["F4_seconds"], symmetry_rows["E6_seconds"]) < 60
    criterion(5, "reductive classes F4/E6/E7", ok,
              f"F4 {len(f4)}, E6 {len(e6)}, E7 {len(e7_pairs)} distinct (k_ss, C(k_ss)_ss) rows "
              f"({len(e7)} Weyl classes)")


def test_criterion_6_symmetry_tables(criterion, symmetry_rows):
    details, ok = [], True
    for name in ("F4", "E6"):
        match = Counter(symmetry_rows[name]) == Counter(SYMMETRY_ROWS[name])
        ok &= match
        details.append(f"{name} {len(symmetry_rows[name])}/{len(SYMMETRY_ROWS[name])} rows")
    e7 = Counter(symmetry_rows["E7"])
    ok &= e7 == Counter(SYMMETRY_ROWS["E7"]) + Counter(E7_REPEATED_ROWS)
    details.append(f"E7 all {len(SYMMETRY_ROWS['E7'])} rows")
    f4 = {(r[0], r[1]): r[2:] for r in symmetry_rows["F4"]}
    ok &= f4[("3A1", "A1")] == (6, 2, 12) and f4[("", "F4")][2] == 1152
    ok &= {(r[0]): r[4] for r in symmetry_rows["E6"]}[""] == 103680
    total = sum(symmetry_rows[n + "_seconds"] for n in ("F4", "E6", "E7"))
    ok &= total < 300
    criterion(6, "W''/W'''/W' symmetry tables", ok, f"{', '.join(details)} in {total:.1f} s (limit 300 s)")


# ---------------------------------------------------------------------------
# 7-9: exceptional censuses
# ---------------------------------------------------------------------------


def test_criterion_7_f4_census(criterion):
    with Timer() as t:
        records, summary = run_census("F4")
    rs = build("F4")
    ext = [r for r in records if r.extension_needed]
    ok = summary.headline() == (503, 234, 269) and len(ext) == 1
    if len(ext) == 1:
        r = ext[0]
        longs = all(not rs.is_short(i) for i in r.k_roots)
        dims = sorted(len(m.weights) for m in module_decomposition(rs, r.k_roots) if set(m.weights) <= set(r.n_roots))
        ok &= r.k_type == "2A1" and longs and len(r.n_roots) == 7 and dims == [1, 1, 1, 2, 2]
        ok &= str(dynkin_type_of(rs, centralizer_of(rs, r.k_roots))) == "B2"
    for r in records:
        validate_record(r)
    ok &= t.seconds < 1800
    criterion(7, "F4 census", ok, _timed(f"{summary.headline()}, {len(ext)} extension-needed "
                                          f"(k two long A1, dim n 2+2+1+1+1)", t, 1800))


def test_criterion_8_e6_census(criterion):
    with Timer() as t:
        records, summary = run_census("E6")
    ok = summary.headline() == (2044, 706, 1338) and summary.extension_needed == 0
    ok &= t.seconds < 4 * 3600
    criterion(8, "E6 census", ok, _timed(f"{summary.headline()}, {summary.extension_needed} extension-needed",
                                          t, 4 * 3600))


def test_criterion_9_e7_census(criterion):
    if not os.environ.get("ROOTCONE_RUN_E7"):
        criterion.skip(9, "E7 census", "about an hour on one core; set ROOTCONE_RUN_E7=1 or run scripts/reproduce_e7.sh")
    with Timer() as t:
        _, summary = run_census("E7", CensusOptions(large=True))
    ok = summary.headline() == (73834, 7427, 66407) and summary.extension_needed == 0
    criterion(9, "E7 census", ok, f"{summary.headline()}, {summary.extension_needed} extension-needed "
                                  f"in {t.seconds:.0f} s")


# ---------------------------------------------------------------------------
# 10: property suites
# ---------------------------------------------------------------------------


def test_criterion_10a_lp_duality(criterion):
    rng = random.Random(20240611)
    checked = 0
    ok = True
    for _ in range(500):
        dim = rng.randint(2, 4)
        vecs = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(8)]
        strict = [v for v in vecs[:rng.randint(1, 4)] if any(v)] or [(1,) + (0,) * (dim - 1)]
        loose = vecs[4:4 + rng.randint(0, 4)]
        p = cone_intersection_problem(strict, loose)
        out = lp_feasible(p)
        ok &= (out.witness is None) != (out.farkas is None)
        if out.feasible:
            ok &= verify_witness(p, out.witness)
            ok &= separate(strict, loose) is None
        else:
            ok &= verify_farkas(p, out.farkas)
            h = separate(strict, loose)
            ok &= h is not None and all(dot(v, h) >= 1 for v in strict) and all(dot(v, h) <= 0 for v in loose)
        checked += 1
    criterion("10a", "LP duality on random cone pairs", ok, f"{checked} pairs, one verified certificate each")


def _bounded_sums(rs, gens, bound):
    """Nonzero sums of at most ``bound`` roots from ``gens``, with repetition."""
    vecs = {tuple(int(x) for x in rs.coords[g]) for g in gens}
    layer, seen = {tuple([0] * rs.rank)}, set()
    for _ in range(bound):
        layer = {tuple(a + b for a, b in zip(s, v)) for s in layer for v in vecs}
        seen |= layer
    seen.discard(tuple([0] * rs.rank))
    return seen


def test_criterion_10b_rational_vs_integer_cone(criterion):
    bound = 6
    checked = 0
    ok = True
    for name in ("B3", "C3", "G2"):
        rs = build(name)
        records, _ = run_census(name, CensusOptions(parabolic_filter=False, include_solvable=True, certificates=False))
        for r in records:
            l = r.subalgebra()
            meets = bool(_bounded_sums(rs, l.n, bound) & _bounded_sums(rs, singular_weights(l), bound))
            ok &= meets == (not isinstance(cone_condition(l), ConeHolds))
            checked += 1
    criterion("10b", "rational cone test equals bounded integer search", ok,
              f"{checked} B3/C3/G2 entries (solvable included), integer sums of up to {bound} roots per side")


def test_criterion_10c_root_strings(criterion):
    bound = 6
    ok = True
    checked = 0
    for name in ("A1", "A2", "B2", "G2", "A3", "B3", "C3", "2A1", "A1+A2", "A1+B2", "3A1"):
        rs = build(name)
        coords = {tuple(int(x) for x in c): i for i, c in enumerate(rs.coords)}
        zero = tuple([0] * rs.rank)
        for g in range(rs.size):
            gv = tuple(int(x) for x in rs.coords[g])
            bad = [a for a in range(rs.size) if rs.add_table[a, g] == -1]
            for s in _bounded_sums(rs, bad, bound) if bad else ():
                t = tuple(x + y for x, y in zip(s, gv))
                ok &= not (t == zero or (t in coords and t != gv))
            checked += 1
    criterion("10c", "root-string property", ok, f"every root of 11 systems of rank <= 3, sums of up to {bound} roots")


def _row_gram(row):
    ac, bc, products = row
    names = [f"a{i + 1}" for i in range(len(ac))] + [f"b{j + 1}" for j in range(len(bc))]
    return names, {(x, y): products.get(x + y, products.get(y + x, 2 if x == y else 0)) for x in names for y in names}


def _epsilon_product(rs, i, j):
    return sum(Fraction(a) * b for a, b in zip(rs.to_epsilon(rs.roots[i]), rs.to_epsilon(rs.roots[j])))


def _matches_row(rs, rel, rows):
    alphas, betas = list(rel.alphas), list(rel.betas)
    for row in rows:
        ac, bc, _ = row
        if sorted(m for _, m in alphas) != sorted(ac) or sorted(m for _, m in betas) != sorted(bc):
            continue
        names, gram = _row_gram(row)
        for pa in permutations(alphas):
            if tuple(m for _, m in pa) != ac:
                continue
            for pb in permutations(betas):
                if tuple(m for _, m in pb) != bc:
                    continue
                roots = dict(zip(names, [x for x, _ in pa] + [x for x, _ in pb]))
                if all(_epsilon_product(rs, roots[x], roots[y]) == gram[x, y] for x in names for y in names):
                    return True
    return False


def _row_is_consistent(row):
    ac, bc, _ = row
    names, gram = _row_gram(row)
    return all(sum(c * gram[f"a{i + 1}", x] for i, c in enumerate(ac))
               == sum(c * gram[f"b{j + 1}", x] for j, c in enumerate(bc)) for x in names)


def test_criterion_10d_minimal_relation_shapes(criterion, rank_three_censuses):
    ok = all(_row_is_consistent(r) for r in SHAPE_ROWS_B + SHAPE_ROWS_C + [SHAPE_ROW_C_DOUBLE])
    details = []
    for name, rows in (("B3", SHAPE_ROWS_B), ("C3", SHAPE_ROWS_C)):
        rs = build(name)
        listed = extra = 0
        for r in rank_three_censuses[name][0]:
            if r.cone_holds:
                continue
            rels = [x for x in minimal_relations(r.subalgebra()) if x.two_sided and x.length == 2]
            if any(_matches_row(rs, x, rows) for x in rels):
                listed += 1
            elif name == "C3" and any(_matches_row(rs, x, [SHAPE_ROW_C_DOUBLE]) for x in rels):
                extra += 1
            else:
                ok = False
        details.append(f"{name} {listed} listed" + (f" + {extra} via 2a1 = b1 + b2" if name == "C3" else ""))
        if name == "B3":
            ok &= listed == 11
        else:
            ok &= (listed, extra) == (12, 4)
    criterion("10d", "two-sided length-2 relations match the shape table", ok, "; ".join(details))


def test_criterion_10e_classify_invariance(criterion):
    ok = True
    checked = 0
    for name in ("A1", "A2", "A3", "B2", "B3", "C3", "G2"):
        rs = build(name)
        elements = automorphism_group(rs).elements()
        records, _ = run_census(name, CensusOptions(parabolic_filter=False, include_solvable=True, certificates=False))
        for r in records:
            l = r.subalgebra()
            base = (isinstance(cone_condition(l), ConeHolds), centralizer_condition(l))
            images = {(m.k, m.n): m for m in (l.transform(g) for g in elements)}
            for m in images.values():
                got = (isinstance(cone_condition(m), ConeHolds), centralizer_condition(m))
                ok &= got == base
                checked += 1
    criterion("10e", "classify invariant under Aut", ok, f"{checked} subalgebras in rank <= 3 (full orbits)")
