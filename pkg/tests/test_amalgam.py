import random

import pytest
from hypothesis import given, settings, strategies as st

from vbw.amalgam import (
    CyclicAmalgamSpec,
    FreeProductSpec,
    Involution,
    KBAmalgamSpec,
    KBOracle,
    PreconditionError,
    amalgam_normal_form,
    fg,
    fg_str,
    hexagon_decompose,
    hexagon_relator,
    s1_twisted_decompose,
    straighten_symmetric_section,
    swap_fixed_check,
    twisted_decompose,
    twisted_decompose_at,
)
from vbw.artin import GeneratorSubset
from vbw.kbeq import in_parabolic, kb_equal, kb_is_trivial
from vbw.perm import Permutation
from vbw.vb import SemidirectElement
from vbw.words import KBWord, free_reduce

FP = FreeProductSpec([["b"], ["c"]])
CY = CyclicAmalgamSpec("a", ["b", "c"])


def swap(mapping):
    def apply(w):
        return free_reduce((mapping[x][0], e * mapping[x][1]) for x, e in w)
    return Involution(apply, {0: 1, 1: 0})


BC = swap({"b": ("c", 1), "c": ("b", 1)})


def kb(text, n=4):
    return KBWord.parse(text, n)


def fg_words(letters, max_size=12):
    return st.lists(st.tuples(st.sampled_from(letters), st.sampled_from((1, -1))), max_size=max_size).map(free_reduce)


# -- normal forms ------------------------------------------------------------


def test_free_product_example():
    nf = amalgam_normal_form(FP, [(0, fg("b")), (1, fg("c")), (0, fg("B"))])
    assert [(j, fg_str(t)) for j, t in nf.syllables] == [(0, "b"), (1, "c"), (0, "B")]
    assert nf.base == ()


def test_cyclic_amalgam_example():
    nf = amalgam_normal_form(CY, [(0, fg("ba")), (1, fg("cA"))])
    assert [fg_str(t) for _, t in nf.syllables] == ["b", "ac"]
    assert fg_str(nf.base) == "A"


def test_base_element_has_no_syllables():
    nf = amalgam_normal_form(CY, [(0, fg("aa"))])
    assert nf.length == 0 and fg_str(nf.base) == "aa"


@given(fg_words("bc"))
def test_free_product_syllables_are_maximal_runs(x):
    nf = amalgam_normal_form(FP, FP.segment(x))
    runs = 0
    prev = None
    for letter, _ in x:
        if letter != prev:
            runs += 1
        prev = letter
    assert nf.length == runs
    assert FP.product(*(t for _, t in nf.syllables)) == x


@given(fg_words("abc"), st.randoms())
def test_cyclic_normal_form_is_unique(x, rnd):
    nf = amalgam_normal_form(CY, CY.segment(x))
    assert CY.equal(nf.element(CY), x)
    # split x at a random point and fold the two halves as separate factor elements
    k = rnd.randint(0, len(x))
    seq = CY.segment(x[:k]) + CY.segment(x[k:])
    assert amalgam_normal_form(CY, seq).same_as(nf, CY)
    # representatives never end in the base letter
    assert all(t and t[-1][0] != "a" for _, t in nf.syllables)


@given(fg_words("abc"))
def test_cyclic_base_membership(x):
    nf = amalgam_normal_form(CY, CY.segment(x))
    assert (nf.length == 0) == all(c == "a" for c, _ in x)


def test_kb_amalgam_membership_matches_parabolic_test():
    rng = random.Random(2)
    n = 4
    oracle = KBOracle(n)
    Y = GeneratorSubset.full(n).members
    spec = KBAmalgamSpec(oracle, Y, [(1, 2), (2, 1)])
    gens = sorted(Y)
    for _ in range(80):
        w = tuple((*rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 6)))
        if rng.random() < 0.4:
            w = tuple(x for x in w if x[:2] not in ((1, 2), (2, 1)))
        nf = amalgam_normal_form(spec, spec.segment(w))
        inside, _ = in_parabolic(KBWord(w, n), spec.H)
        assert (nf.length == 0) == inside
        back = nf.element(spec)
        assert kb_equal(KBWord(back, n), KBWord(w, n)).equal


# -- swap-fixed check and twisted decomposition -------------------------------


def test_swap_fixed_check_examples():
    assert swap_fixed_check(FP, BC, ())[0] == "in_base"
    assert swap_fixed_check(FP, BC, fg("b"))[0] == "not_fixed"
    assert swap_fixed_check(FP, BC, fg("bc"))[0] == "not_fixed"
    h = fg("aa")
    tau = swap({"b": ("c", 1), "c": ("b", 1), "a": ("a", 1)})
    assert swap_fixed_check(CY, tau, h) == ("in_base", h)


def test_twisted_examples():
    assert twisted_decompose(FP, BC, ()) == ((), ())
    a1, b1 = twisted_decompose(FP, BC, fg("bC"))
    assert fg_str(a1) == "b" and b1 == ()
    a1, b1 = twisted_decompose(FP, BC, fg("bCbC"))
    assert fg_str(a1) == "bC" and b1 == ()


def test_twisted_precondition():
    with pytest.raises(PreconditionError):
        twisted_decompose(FP, BC, fg("b"))


@given(fg_words("abc", 8), st.integers(-3, 3))
def test_twisted_round_trip_cyclic(w, k):
    tau = swap({"b": ("c", 1), "c": ("b", 1), "a": ("a", -1)})
    base = fg("a" * k if k > 0 else "A" * -k)
    alpha = CY.product(w, base, tau.apply(CY.inv(w)))
    a1, b1 = twisted_decompose(CY, tau, alpha)
    assert CY.product(a1, b1, tau.apply(CY.inv(a1))) == alpha
    assert all(c == "a" for c, _ in b1)


# -- KB towers ---------------------------------------------------------------


def test_s1_twisted_examples():
    full = GeneratorSubset.full(4)
    assert s1_twisted_decompose(KBWord((), 4), full).is_empty()
    assert s1_twisted_decompose(kb("d1.2 d2.1'"), full) == kb("d1.2")
    assert s1_twisted_decompose(kb("d1.2 d1.3 d2.3' d2.1'"), full) == kb("d1.2 d1.3")


def test_s1_twisted_precondition():
    with pytest.raises(PreconditionError):
        s1_twisted_decompose(kb("d1.2"), GeneratorSubset.full(4))
    with pytest.raises(PreconditionError):
        s1_twisted_decompose(kb("d1.3 d2.3'"), GeneratorSubset([(1, 3), (2, 3)], 4).members - {(2, 3)})


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 5), st.randoms(use_true_random=False))
def test_s1_twisted_round_trip(n, rnd):
    gens = GeneratorSubset.full(n).sorted()
    x = KBWord([(*rnd.choice(gens), rnd.choice((1, -1))) for _ in range(rnd.randint(0, 5))], n)
    s1 = Permutation.simple(1, n)
    a = x * x.inverse().act(s1)
    a1 = s1_twisted_decompose(a, GeneratorSubset.full(n))
    assert kb_equal(a, a1 * a1.inverse().act(s1)).equal


@pytest.mark.parametrize("k", [2, 3])
def test_twisted_at_other_generators(k):
    rng = random.Random(k)
    n = 5
    sk = Permutation.simple(k, n)
    gens = GeneratorSubset.full(n).sorted()
    for _ in range(20):
        x = KBWord([(*rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(1, 4))], n)
        a = x * x.inverse().act(sk)
        a1 = twisted_decompose_at(a, GeneratorSubset.full(n), k)
        assert kb_equal(a, a1 * a1.inverse().act(sk)).equal


def test_hexagon_examples():
    full = GeneratorSubset.full(4)
    assert hexagon_decompose(KBWord((), 4), full) == (KBWord((), 4), KBWord((), 4))
    assert kb_is_trivial(hexagon_relator(kb("d3.4 d1.4"))).equal
    assert hexagon_decompose(kb("d3.4 d1.4"), full) == (kb("d3.4"), kb("d1.4"))
    assert hexagon_decompose(kb("d4.3"), full) == (kb("d4.3"), KBWord((), 4))


def test_hexagon_precondition():
    with pytest.raises(PreconditionError):
        hexagon_decompose(kb("d1.2"), GeneratorSubset.full(4))


def _letterwise_fixed(rng, n, avoid, length):
    gens = GeneratorSubset.avoiding(n, avoid).sorted()
    return KBWord([(*rng.choice(gens), rng.choice((1, -1))) for _ in range(length)], n)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_hexagon_round_trip(n):
    rng = random.Random(n)
    s1, s2 = Permutation.simple(1, n), Permutation.simple(2, n)
    for _ in range(25):
        a = _letterwise_fixed(rng, n, (1, 2), rng.randint(0, 4)) * _letterwise_fixed(rng, n, (2, 3), rng.randint(0, 4))
        assert kb_is_trivial(hexagon_relator(a)).equal
        first, second = hexagon_decompose(a, GeneratorSubset.full(n))
        assert kb_equal(first * second, a).equal
        assert kb_equal(first.act(s1), first).equal
        assert kb_equal(second.act(s2), second).equal


def test_hexagon_on_words_hiding_the_split():
    # splice conjugated relators into both halves so neither is letterwise fixed
    rng = random.Random(9)
    n = 4
    s1, s2 = Permutation.simple(1, n), Permutation.simple(2, n)
    rel = kb("d1.2 d2.3 d1.2 d2.3' d1.2' d2.3'")
    gens = GeneratorSubset.full(n).sorted()
    for _ in range(15):
        c = KBWord([(*rng.choice(gens), rng.choice((1, -1))) for _ in range(2)], n)
        x = _letterwise_fixed(rng, n, (1, 2), 2) * c * rel * c.inverse()
        y = c * rel.inverse() * c.inverse() * _letterwise_fixed(rng, n, (2, 3), 2)
        a = x * y
        first, second = hexagon_decompose(a, GeneratorSubset.full(n))
        assert kb_equal(first * second, a).equal
        assert kb_equal(first.act(s1), first).equal
        assert kb_equal(second.act(s2), second).equal


# -- straightening sections of pi_K -------------------------------------------


def _taus(n):
    return [SemidirectElement.tau(i, n) for i in range(1, n)]


def test_straighten_identity_section():
    res = straighten_symmetric_section(_taus(4))
    assert res.outcome == "ok" and res.conjugator.is_empty()


@pytest.mark.parametrize("beta0", ["d1.2 d2.1", "d1.3 d3.4'", "d2.4 d1.2 d4.3", "d3.1 d2.4 d4.1'"])
def test_straighten_recovers_a_conjugator(beta0):
    n = 4
    b = SemidirectElement.from_kb(kb(beta0))
    images = [b * t * b.inverse() for t in _taus(n)]
    res = straighten_symmetric_section(images)
    assert res.outcome == "ok"
    beta = SemidirectElement.from_kb(res.conjugator)
    for i, x in enumerate(images, start=1):
        y = beta.inverse() * x * beta
        assert y.perm == Permutation.simple(i, n)
        assert kb_is_trivial(y.kb).equal
    assert res.to_json()["outcome"] == "ok"


def test_straighten_random_conjugates_n5():
    rng = random.Random(5)
    n = 5
    gens = GeneratorSubset.full(n).sorted()
    for _ in range(10):
        b0 = KBWord([(*rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(1, 4))], n)
        b = SemidirectElement.from_kb(b0)
        res = straighten_symmetric_section([b * t * b.inverse() for t in _taus(n)])
        assert res.outcome == "ok"


def test_straighten_rejects_non_homomorphisms():
    n = 4
    images = _taus(n)
    images[0] = SemidirectElement(kb("d1.2 d2.1'"), Permutation.simple(1, n))
    with pytest.raises(PreconditionError):
        straighten_symmetric_section(images)


def test_straighten_rejects_wrong_permutations():
    images = _taus(4)
    images[1] = SemidirectElement.tau(1, 4)
    with pytest.raises(PreconditionError):
        straighten_symmetric_section(images)
