from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootcone.exact import dot
from rootcone.rootsystem import build, format_root, parse_root
from rootcone.subalgebra import (
    SubalgebraError,
    centralizer_normalizer_levi,
    centralizer_roots,
    from_json,
    k_module_decomposition,
    make_subalgebra,
    parabolic_nilradical_test,
    separator_for_nilradical,
    singular_weights,
    validate,
)
from rootcone.symmetry import weyl_group


def names(rs, idx):
    return {format_root(rs, i) for i in idx}


@pytest.fixture(scope="module")
def sp6_example():
    rs = build("C3")
    return make_subalgebra(rs, ["2e2", "2e3"], ["2e1", "e1+e2", "e1-e2"])


def test_seeds_are_closed(sp6_example):
    rs = sp6_example.ambient
    assert names(rs, sp6_example.k) == {"2e2", "-2e2", "2e3", "-2e3"}
    assert names(rs, sp6_example.n) == {"2e1", "e1+e2", "e1-e2"}
    assert str(sp6_example.k_type) == "2A1"


def test_n_seed_is_closed_under_k():
    rs = build("C3")
    l = make_subalgebra(rs, ["2e2"], ["e1-e2"])
    assert names(rs, l.n) == {"e1-e2", "e1+e2", "2e1"}


def test_k_seed_closure():
    rs = build("B3")
    l = make_subalgebra(rs, ["e1-e2", "e2-e3"])
    assert str(l.k_type) == "A2"
    assert len(l.k) == 6 and not l.n


@pytest.mark.parametrize("k, n, message", [
    (["e1-e2"], ["e1-e2"], "overlap"),
    ([], ["e1", "-e1"], "opposite"),
    (["e1"], ["e1+e2", "-e2"], "overlap"),
    ([], ["e1", "-e1+e2", "-e2"], "opposite"),
])
def test_invalid_seeds(k, n, message):
    with pytest.raises(SubalgebraError, match=message):
        make_subalgebra(build("B3"), k, n)


def test_validate_rejects_non_stable_n():
    from rootcone.subalgebra import RootSubalgebra

    rs = build("B3")
    k = frozenset({parse_root(rs, "e1-e2"), parse_root(rs, "-e1+e2")})
    n = frozenset({parse_root(rs, "e2")})
    with pytest.raises(SubalgebraError, match="stable"):
        validate(RootSubalgebra(rs, k, n))


def test_singular_weights_sp6(sp6_example):
    rs = sp6_example.ambient
    assert names(rs, singular_weights(sp6_example)) == {"e1+e3", "e2+e3", "-e1+e3", "-e1+e2", "-2e1"}


def test_sp6_n_is_not_a_parabolic_nilradical(sp6_example):
    rs = sp6_example.ambient
    assert parabolic_nilradical_test(rs, range(rs.size), sp6_example.n) is None


def test_parabolic_nilradical_of_borel():
    rs = build("B3")
    pos = [i for i in range(rs.size) if rs.positive[i]]
    h = parabolic_nilradical_test(rs, range(rs.size), pos)
    assert h is not None
    assert all(dot(rs.roots[i], h) >= 1 for i in pos)


def test_parabolic_nilradical_test_requires_subset():
    rs = build("B3")
    with pytest.raises(SubalgebraError):
        parabolic_nilradical_test(rs, [0], [1])


@pytest.mark.parametrize("name", ["B3", "C3", "G2", "F4"])
def test_module_decomposition_partitions_complement(name):
    rs = build(name)
    l = make_subalgebra(rs, [rs.simple_indices[0]])
    mods = k_module_decomposition(l)
    covered = sorted(w for m in mods for w in m.weights)
    assert covered == sorted(set(range(rs.size)) - set(l.k))
    sing = singular_weights(l)
    assert {m.highest for m in mods} == sing


def test_module_dimensions_g2():
    rs = build("G2")
    l = make_subalgebra(rs, ["g2"])
    dims = sorted(len(m) for m in k_module_decomposition(l))
    assert dims == [1, 1, 4, 4]


def test_centralizer_of_long_root_c3():
    rs = build("C3")
    l = make_subalgebra(rs, ["2e1"])
    assert str(make_subalgebra(rs, sorted(centralizer_roots(l))).k_type) == "B2"


def test_levi_of_whole_centralizer():
    rs = build("C3")
    l = make_subalgebra(rs, ["2e1"])
    datum = centralizer_normalizer_levi(l)
    assert str(datum.levi_type) == "B2"
    assert datum.q_roots == datum.c_roots


def test_levi_with_nilradical_in_centralizer():
    rs = build("C3")
    l = make_subalgebra(rs, ["2e1"], ["2e2"])
    datum = centralizer_normalizer_levi(l)
    assert names(rs, datum.q_roots) == {"2e2", "2e3", "-2e3", "e2-e3", "e2+e3"}
    assert names(rs, datum.levi_roots) == {"2e3", "-2e3"}
    assert str(datum.levi_type) == "A1"


def test_json_roundtrip(sp6_example):
    rs = sp6_example.ambient
    assert from_json(rs, sp6_example.to_json()) == sp6_example
    with pytest.raises(SubalgebraError, match="does not match"):
        from_json(rs, {"type": "B3", "k": [], "n": []})


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_random_subalgebras_have_a_separator(data):
    rs = build(data.draw(st.sampled_from(["B3", "C3", "G2"])))
    k = data.draw(st.lists(st.integers(0, rs.size - 1), max_size=2))
    n = data.draw(st.lists(st.integers(0, rs.size - 1), max_size=3))
    try:
        l = make_subalgebra(rs, k, n)
    except SubalgebraError:
        return
    h = separator_for_nilradical(l)
    assert all(dot(rs.roots[b], h) >= 1 for b in l.n)
    assert all(dot(rs.roots[d], h) == 0 for d in l.k)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_transform_preserves_validity(data):
    rs = build("C3")
    els = weyl_group(rs).elements()
    l = make_subalgebra(rs, ["e2-e3"], ["2e1"])
    g = els[data.draw(st.integers(0, len(els) - 1))]
    m = l.transform(g)
    validate(m)
    assert m.k_type == l.k_type
    assert len(singular_weights(m)) == len(singular_weights(l))
