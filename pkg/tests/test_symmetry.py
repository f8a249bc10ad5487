from __future__ import annotations

from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootcone.census import enumerate_reductive_subalgebras, lower_representative
from rootcone.rootsystem import build, dynkin_type_of, is_closed
from rootcone.subalgebra import centralizer_of, make_subalgebra
from rootcone.symmetry import (
    automorphism_group,
    block_stabilizer,
    canonical_subsystem,
    diagram_automorphisms,
    in_weyl_group,
    is_automorphism,
    lex_min_image,
    restricted_elements,
    restricted_symmetry_group,
    weyl_group,
)


@pytest.mark.parametrize("name, diagram", [("A3", 2), ("B3", 1), ("D4", 6), ("E6", 2), ("E7", 1), ("F4", 1), ("G2", 1)])
def test_diagram_automorphism_count(name, diagram):
    rs = build(name)
    diag = diagram_automorphisms(rs)
    assert len(diag) == diagram
    assert all(is_automorphism(rs, d) for d in diag)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "D4"])
def test_group_closure_matches_order(name):
    rs = build(name)
    w = weyl_group(rs)
    els = w.elements()
    assert len(els) == w.order
    assert len({row.tobytes() for row in els}) == w.order
    aut = automorphism_group(rs)
    assert len(aut.elements()) == aut.order


@pytest.mark.parametrize("name, minus_one", [("B3", True), ("C3", True), ("D4", True), ("A3", False),
                                            ("E6", False), ("E7", True), ("G2", True)])
def test_minus_one_in_weyl_group(name, minus_one):
    rs = build(name)
    assert is_automorphism(rs, rs.neg)
    assert in_weyl_group(rs, rs.neg) == minus_one


def test_block_stabilizer_fixes_blocks():
    rs = build("F4")
    simple = list(rs.simple_indices)
    stab = block_stabilizer(rs, [simple[:2], simple[2:]])
    assert stab
    for g in stab:
        assert set(g[simple[:2]].tolist()) == set(simple[:2])
        assert is_automorphism(rs, g)


def _brute_force_classes(rs):
    """Orbits of closed symmetric subsets under the automorphism group, by exhaustion."""
    pos = [i for i in range(rs.size) if rs.positive[i]]
    els = automorphism_group(rs).elements()
    seen = set()
    for r in range(len(pos) + 1):
        for sub in combinations(pos, r):
            full = set(sub) | {int(rs.neg[i]) for i in sub}
            if not is_closed(rs, full):
                continue
            seen.add(min(tuple(sorted(g[list(full)].tolist())) for g in els))
    return seen


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "C3", "A1+A2", "3A1"])
def test_reductive_classes_against_brute_force(name):
    rs = build(name)
    classes = enumerate_reductive_subalgebras(rs)
    assert len(classes) == len(_brute_force_classes(rs))
    for k, ty in classes:
        assert dynkin_type_of(rs, k) == ty


@pytest.mark.parametrize("name, expected", [("F4", 24), ("E6", 21)])
def test_reductive_class_counts(name, expected):
    assert len(enumerate_reductive_subalgebras(build(name))) == expected


def test_lowered_representatives_g2():
    rs = build("G2")
    reps = {str(t): k for k, t in enumerate_reductive_subalgebras(rs)}
    assert [rs.roots[i] for i in reps["A1"] if rs.positive[i]] == [(1, 0)]
    assert [rs.roots[i] for i in reps["A1'"] if rs.positive[i]] == [(0, 1)]


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_canonical_subsystem_is_invariant(data):
    name = data.draw(st.sampled_from(["B3", "C3", "F4", "A3"]))
    rs = build(name)
    els = automorphism_group(rs).elements()
    classes = enumerate_reductive_subalgebras(rs)
    k, _ = classes[data.draw(st.integers(0, len(classes) - 1))]
    g = els[data.draw(st.integers(0, len(els) - 1))]
    diag = diagram_automorphisms(rs)
    image = sorted(g[list(k)].tolist())
    assert canonical_subsystem(rs, image, diag) == canonical_subsystem(rs, k, diag)
    low = lower_representative(rs, image)
    assert canonical_subsystem(rs, low, diag) == canonical_subsystem(rs, k, diag)


def test_lex_min_image_and_rank_override():
    rs = build("B3")
    els = weyl_group(rs).elements()
    idx = [rs.size - 1]
    assert lex_min_image(els, idx) == (0,)
    rank = np.arange(rs.size)[::-1].copy()
    assert lex_min_image(els, idx, rank) == (rs.size - 1,)


@pytest.mark.parametrize("name, k_type, orders", [
    ("F4", "3A1", (2, 6, 12)),
    ("F4", "0", (1152, 1, 1152)),
    ("E6", "0", (51840, 2, 103680)),
    ("E6", "2A2", (6, 4, 24)),
    ("F4", "2A1+A1'", (1, 2, 2)),
])
def test_restricted_symmetry_orders(name, k_type, orders):
    rs = build(name)
    reps = {str(t): k for k, t in enumerate_reductive_subalgebras(rs)}
    k = reps[k_type]
    sym = restricted_symmetry_group(rs, k, centralizer_of(rs, k))
    assert sym.orders == orders


def test_full_stabilizer_is_larger_when_inner_part_nontrivial():
    rs = build("F4")
    reps = {str(t): k for k, t in enumerate_reductive_subalgebras(rs)}
    k = reps["2A1+A1'"]
    c = centralizer_of(rs, k)
    assert restricted_symmetry_group(rs, k, c, full=True).w2.order > restricted_symmetry_group(rs, k, c).w2.order


@pytest.mark.parametrize("name", ["B3", "C3", "G2", "F4"])
def test_restricted_group_preserves_k_and_positive_k(name):
    rs = build(name)
    for k, _ in enumerate_reductive_subalgebras(rs)[1:]:
        sym = restricted_symmetry_group(rs, k, centralizer_of(rs, k))
        if sym.w1.order > 5000:
            continue
        kpos = {i for i in k if rs.positive[i]}
        for g in restricted_elements(sym):
            assert {int(g[i]) for i in kpos} == kpos
            assert is_automorphism(rs, g)


def test_restricted_elements_act_on_subalgebras():
    rs = build("C3")
    l = make_subalgebra(rs, ["2e1"], ["2e2"])
    sym = restricted_symmetry_group(rs, sorted(l.k), centralizer_of(rs, l.k))
    for g in restricted_elements(sym):
        assert l.transform(g).k == l.k
