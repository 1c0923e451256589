import itertools

import pytest
from hypothesis import given, strategies as st

from vbw.perm import (
    DegreeError,
    Permutation,
    all_permutations,
    canonical_tuple,
    centralizer,
    compose,
    conjugacy_orbit_size,
    coxeter_relation_failures,
    extend_homomorphism,
    involution_class_reps,
    nu6_images,
    w0,
)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(lambda p: Permutation(p, n))


def test_compose_examples():
    p = Permutation([2, 3, 1])
    assert compose(Permutation.identity(3), p) == p
    s1, s2 = Permutation.simple(1, 3), Permutation.simple(2, 3)
    assert compose(s1, compose(s2, s1)) == Permutation([3, 2, 1])
    assert compose(w0(), w0().inverse()).is_identity()


def test_compose_is_function_composition():
    p, q = Permutation([2, 3, 1]), Permutation([1, 3, 2])
    assert all(compose(p, q)(x) == p(q(x)) for x in range(1, 4))


def test_compose_degree_mismatch():
    with pytest.raises(DegreeError):
        compose(Permutation.identity(3), Permutation.identity(4))


@given(perms(5), perms(5), perms(5))
def test_group_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert (p * p.inverse()).is_identity()
    assert eval_reduced(p) == p


def eval_reduced(p):
    out = Permutation.identity(p.n)
    for i in p.reduced_word():
        out = out * Permutation.simple(i, p.n)
    return out


@given(perms(6))
def test_reduced_word_length_is_inversions(p):
    inv = sum(1 for a, b in itertools.combinations(range(1, 7), 2) if p(a) > p(b))
    assert len(p.reduced_word()) == inv


def test_parse_formats():
    assert Permutation.parse("[2,1,3]") == Permutation.simple(1, 3)
    assert Permutation.parse("(1,2)(3,4)", 4) == Permutation([2, 1, 4, 3])
    assert Permutation.parse("()", 3).is_identity()


def test_centralizer_examples():
    c = centralizer([Permutation.simple(3, 5), Permutation.simple(4, 5)], 5)
    assert set(c) == {Permutation.identity(5), Permutation.simple(1, 5)}
    assert len(centralizer([], 3)) == 6
    assert set(centralizer([Permutation.simple(1, 3)], 3)) == {Permutation.identity(3), Permutation.simple(1, 3)}


@given(st.lists(perms(5), max_size=2))
def test_centralizer_matches_brute_force(gens):
    brute = [x for x in all_permutations(5) if all(x * g == g * x for g in gens)]
    assert sorted(centralizer(gens, 5)) == sorted(brute)


def test_canonical_tuple_examples():
    e = Permutation.identity(3)
    assert canonical_tuple((e, e), 3) == (e, e)


def _brute_canonical(t, m):
    return min(tuple(g * p * g.inverse() for p in t) for g in all_permutations(m))


@given(st.lists(perms(4), min_size=1, max_size=3))
def test_canonical_tuple_is_orbit_minimum(t):
    canon = canonical_tuple(t, 4)
    assert tuple(p.images for p in canon) == tuple(p.images for p in _brute_canonical(t, 4))


@given(st.lists(perms(4), min_size=1, max_size=2), perms(4))
def test_canonical_tuple_is_conjugation_invariant(t, g):
    moved = [g * p * g.inverse() for p in t]
    assert canonical_tuple(moved, 4) == canonical_tuple(t, 4)


@given(st.lists(perms(4), min_size=1, max_size=2))
def test_orbit_size(t):
    orbit = {tuple(g * p * g.inverse() for p in t) for g in all_permutations(4)}
    assert conjugacy_orbit_size(t, 4) == len(orbit)


def test_nu6_images_match_definition():
    expected = ["(1,2)(3,4)(5,6)", "(2,3)(1,5)(4,6)", "(1,3)(2,4)(5,6)", "(1,2)(3,5)(4,6)", "(2,3)(1,4)(5,6)"]
    assert list(nu6_images()) == [Permutation.parse(c, 6) for c in expected]


def test_nu6_is_a_homomorphism_not_inner():
    u = nu6_images()
    assert coxeter_relation_failures(u) == []
    table = extend_homomorphism(u, 6)
    assert len(set(table.values())) == 720
    # inner automorphisms preserve cycle types; nu6 sends a transposition to a triple one
    assert table[Permutation.simple(1, 6)].cycle_type() == (2, 2, 2)


def test_nu6_squared_is_conjugation_by_w0():
    table = extend_homomorphism(nu6_images(), 6)
    for i in range(1, 6):
        s = Permutation.simple(i, 6)
        assert table[table[s]] == w0() * s * w0().inverse()


def test_involution_class_reps():
    assert involution_class_reps(2) == [Permutation.simple(1, 2)]
    assert involution_class_reps(4) == [Permutation.parse("(1,2)", 4), Permutation.parse("(1,2)(3,4)", 4)]
    assert involution_class_reps(5) == [Permutation.parse("(1,2)", 5), Permutation.parse("(1,2)(3,4)", 5)]
    with pytest.raises(ValueError):
        involution_class_reps(1)


@pytest.mark.parametrize("m", range(2, 8))
def test_involution_reps_cover_all_classes(m):
    types = {p.cycle_type() for p in all_permutations(m) if (p * p).is_identity() and not p.is_identity()}
    assert {p.cycle_type() for p in involution_class_reps(m)} == types


def test_extend_homomorphism_rejects_bad_images():
    with pytest.raises(ValueError):
        extend_homomorphism([Permutation.parse("[2,3,1]")] * 2, 3)
