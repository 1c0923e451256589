import random

import pytest
from hypothesis import given, strategies as st

from vbw.artin import (
    INF,
    GeneratorSubset,
    chain_components,
    coset_retraction,
    fixed_generator_subset,
    infinity_split,
    is_free_of_infinity,
    kb_coxeter_matrix,
    kb_m,
    pair_split,
)
from vbw.kbeq import kb_equal
from vbw.perm import Permutation
from vbw.words import KBWord

from oracles import coxeter_m


def test_matrix_examples():
    assert kb_coxeter_matrix(3)((1, 2), (2, 3)) == 3
    assert kb_coxeter_matrix(4)((1, 2), (3, 4)) == 2
    assert kb_coxeter_matrix(3)((1, 2), (2, 1)) == INF


@pytest.mark.parametrize("n", range(2, 7))
def test_matrix_matches_reference(n):
    M = kb_coxeter_matrix(n)
    assert len(M.labels) == n * (n - 1)
    for s in M.labels:
        for t in M.labels:
            assert M(s, t) == (coxeter_m(s, t) or INF)


def test_matrix_relators_are_symmetric_in_count():
    M = kb_coxeter_matrix(3)
    rels = M.relators()
    # the only finite pairs on {1,2,3} are the six head-to-tail pairs
    assert len(rels) == 6
    assert all(len(lhs) == 3 for lhs, _ in rels)


@given(st.sets(st.sampled_from(kb_coxeter_matrix(4).labels), min_size=1))
def test_submatrix_coherence(X):
    assert kb_coxeter_matrix(4).submatrix(X) == kb_coxeter_matrix(4, X)


@given(st.permutations([1, 2, 3, 4, 5]))
def test_matrix_is_permutation_invariant(p):
    w = Permutation(p)
    labels = kb_coxeter_matrix(5).labels
    for s in labels[:6]:
        for t in labels:
            assert kb_m(s, t) == kb_m((w(s[0]), w(s[1])), (w(t[0]), w(t[1])))


def test_infinity_split_examples():
    X = GeneratorSubset([(1, 2), (2, 1)], 3)
    a, b, base = infinity_split(X)
    assert a.members == {(1, 2)} and b.members == {(2, 1)} and not base.members
    W = GeneratorSubset.full(3)
    a, b, base = infinity_split(W)
    assert a.members == {(1, 2), (2, 3), (3, 1)}
    assert b.members == {(2, 1), (3, 2), (1, 3)}
    assert infinity_split(GeneratorSubset([(1, 2)], 3)) is None


def test_infinity_split_parts_are_mutually_infinite():
    a, b, _ = infinity_split(GeneratorSubset.full(3))
    assert all(kb_m(s, t) == INF for s in a for t in b)


def test_pair_split():
    X = GeneratorSubset.full(3)
    g1, g2, H = pair_split(X, (1, 2), (2, 1))
    assert (2, 1) not in g1 and (1, 2) not in g2 and len(H) == 4
    with pytest.raises(ValueError):
        pair_split(X, (1, 2), (2, 3))


def test_fixed_generator_subset_examples():
    S = GeneratorSubset.full(4)
    assert fixed_generator_subset(S, 1).members == {(3, 4), (4, 3)}
    assert not fixed_generator_subset(GeneratorSubset([(1, 2), (2, 1)], 4), 1).members
    assert fixed_generator_subset(S, 3).members == {(1, 2), (2, 1)}
    with pytest.raises(ValueError):
        fixed_generator_subset(GeneratorSubset([(1, 3)], 4), 1)


def test_chain_components():
    comps = chain_components([(1, 2), (2, 3), (4, 5)])
    assert comps == [("path", [(1, 2), (2, 3)]), ("path", [(4, 5)])]
    assert chain_components([(1, 2), (2, 3), (3, 1)]) == [("cycle", [(1, 2), (2, 3), (3, 1)])]
    assert not is_free_of_infinity([(1, 2), (1, 3)])


def _random_word(rng, gens, n, length):
    return tuple((*rng.choice(gens), rng.choice((1, -1))) for _ in range(length))


def test_coset_retraction_fixes_base_words():
    rng = random.Random(3)
    X = GeneratorSubset.full(4).sorted()
    H = [g for g in X if g != (1, 2)]
    for _ in range(100):
        h = _random_word(rng, H, 4, rng.randint(0, 8))
        assert coset_retraction(h, X, H) == h


def test_coset_retraction_is_well_defined():
    # perturbing a word by a relator must not change the retracted element
    rng = random.Random(4)
    n = 4
    X = GeneratorSubset.full(n).sorted()
    H = [g for g in X if 1 not in g or g == (1, 3)]
    rels = kb_coxeter_matrix(n).relators()
    for _ in range(60):
        w = _random_word(rng, X, n, rng.randint(0, 6))
        lhs, rhs = rng.choice(rels)
        rel = tuple((*g, 1) for g in lhs) + tuple((*g, -1) for g in reversed(rhs))
        k = rng.randint(0, len(w))
        w2 = w[:k] + rel + w[k:]
        r1 = KBWord(coset_retraction(w, X, H), n)
        r2 = KBWord(coset_retraction(w2, X, H), n)
        assert kb_equal(r1, r2).equal


def test_coset_retraction_is_left_equivariant():
    rng = random.Random(5)
    n = 4
    X = GeneratorSubset.full(n).sorted()
    H = [g for g in X if 2 not in g]
    for _ in range(60):
        h = _random_word(rng, H, n, rng.randint(0, 4))
        w = _random_word(rng, X, n, rng.randint(0, 6))
        lhs = KBWord(coset_retraction(h + w, X, H), n)
        rhs = KBWord(h + coset_retraction(w, X, H), n)
        assert kb_equal(lhs, rhs).equal
