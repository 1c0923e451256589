"""Normal forms in amalgamated products and the constructive decomposition lemmas.

The engine is parameterized by an :class:`AmalgamSpec` that supplies
multiplication, an identity test and, for each factor G_j, a split
g = theta(g) beta(g) with theta(g) a left coset representative of the base
H and beta(g) in H.  Three instantiations are provided:

* :class:`FreeProductSpec`: F(b) * F(c) and friends, H trivial
* :class:`CyclicAmalgamSpec`: F(a, b) *_<a> F(a, c)
* :class:`KBAmalgamSpec`: KB_n[Y] = *_{KB[H]} KB[H + x_j] for generators x_j
  of Y pairwise at m = inf, with H = Y minus the x_j

On top of the engine sit the twisted decomposition through a
factor-swapping involution, the hexagon decomposition for two involutions
satisfying the braid relation, and their KB_n towers.  Every decomposition
is checked by multiplying back before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .artin import GeneratorSubset, coset_retraction, kb_m, INF
from .kbeq import (
    Budget,
    BudgetExhausted,
    Decider,
    UnknownVerdict,
    default_budget,
    kb_equal,
)
from .perm import Permutation
from .vb import SemidirectElement
from .words import KBWord, free_reduce, invert_letters


class PreconditionError(ValueError):
    pass


class SelfCheckError(AssertionError):
    """A decomposition failed its own verification (an internal bug)."""


# -- generic engine ---------------------------------------------------------


class AmalgamSpec:
    """Oracles for G = G_1 *_H ... *_H G_p; elements are values of an ambient group."""

    p = 2

    def one(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def is_one(self, x) -> bool:
        raise NotImplementedError

    def split(self, j: int, g):
        """(theta, beta) with g = theta beta, beta in H, theta constant on g H."""
        raise NotImplementedError

    def segment(self, x) -> list[tuple[int, object]]:
        """Write an ambient element as a product of factor elements."""
        raise NotImplementedError

    def base_part(self, x):
        """(True, h) with h a base-group representative of x if x is in H, else (False, None)."""
        nf = amalgam_normal_form(self, self.segment(x))
        return (True, nf.base) if not nf.syllables else (False, None)

    def equal(self, x, y) -> bool:
        return self.is_one(self.mul(x, self.inv(y)))

    def product(self, *xs):
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out


@dataclass
class NormalForm:
    syllables: list = field(default_factory=list)  # [(j, theta)]
    base: object = None

    @property
    def length(self) -> int:
        return len(self.syllables)

    def element(self, spec: AmalgamSpec):
        return spec.product(*(t for _, t in self.syllables), self.base)

    def factors(self) -> list[int]:
        return [j for j, _ in self.syllables]

    def same_as(self, other: "NormalForm", spec: AmalgamSpec) -> bool:
        if self.factors() != other.factors():
            return False
        pairs = [(a, b) for (_, a), (_, b) in zip(self.syllables, other.syllables)]
        return all(spec.equal(a, b) for a, b in pairs) and spec.equal(self.base, other.base)


def amalgam_normal_form(spec: AmalgamSpec, seq: Sequence[tuple[int, object]]) -> NormalForm:
    """The normal form theta_1 ... theta_l beta of a product of factor elements.

    Folds left to right: the running base part is pushed into the next
    factor element and split again; consecutive elements of one factor merge.
    """
    syl: list = []
    beta = spec.one()
    for j, g in seq:
        if syl and syl[-1][0] == j:
            _, last = syl.pop()
            x = spec.mul(spec.mul(last, beta), g)
        else:
            x = spec.mul(beta, g)
        theta, beta = spec.split(j, x)
        if not spec.is_one(theta):
            syl.append((j, theta))
    return NormalForm(syl, beta)


@dataclass
class Involution:
    """An automorphism of G permuting the factors: x -> apply(x), G_j -> G_{factor[j]}."""

    apply: Callable
    factor: dict


def swap_fixed_check(spec: AmalgamSpec, tau: Involution, alpha):
    """("in_base", beta) if tau(alpha) = alpha, else ("not_fixed", i, syllable pair).

    For a factor-swapping involution a fixed element lies in the base.
    """
    nf = amalgam_normal_form(spec, spec.segment(alpha))
    if spec.equal(tau.apply(alpha), alpha):
        if nf.syllables:
            raise SelfCheckError("fixed element with a nonempty normal form")
        return ("in_base", nf.base)
    image = amalgam_normal_form(spec, spec.segment(tau.apply(alpha)))
    for i in range(max(nf.length, image.length)):
        a = nf.syllables[i] if i < nf.length else None
        b = image.syllables[i] if i < image.length else None
        if a is None or b is None or a[0] != b[0] or not spec.equal(a[1], b[1]):
            return ("not_fixed", i, (a, b))
    return ("not_fixed", nf.length, ((None, nf.base), (None, image.base)))


def twisted_decompose(spec: AmalgamSpec, tau: Involution, alpha):
    """(alpha', beta') with alpha = alpha' beta' tau(alpha'^-1), beta' in H, tau(beta') = beta'^-1.

    Requires tau(alpha) = alpha^-1 and tau swapping two factors.  Peels
    the first syllable theta_1 and its partner tau(theta_1) at the end.
    """
    if not spec.is_one(spec.mul(tau.apply(alpha), alpha)):
        raise PreconditionError("tau(alpha) != alpha^-1")
    prefix = spec.one()
    cur = alpha
    while True:
        nf = amalgam_normal_form(spec, spec.segment(cur))
        if not nf.syllables:
            beta = nf.base
            break
        if nf.length == 1:
            raise SelfCheckError("odd syllable count for a tau-inverted element")
        theta1 = nf.syllables[0][1]
        edge = spec.product(nf.syllables[-1][1], nf.base, tau.apply(theta1))
        inside, h = spec.base_part(edge)
        if not inside:
            raise SelfCheckError("outer syllables do not cancel into the base")
        cur = spec.product(*(t for _, t in nf.syllables[1:-1]), h)
        prefix = spec.mul(prefix, theta1)
    back = spec.product(prefix, beta, tau.apply(spec.inv(prefix)))
    if not spec.equal(back, alpha) or not spec.is_one(spec.mul(tau.apply(beta), beta)):
        raise SelfCheckError("twisted decomposition does not multiply back")
    return prefix, beta


def hexagon_lhs(spec_mul: Callable, inv: Callable, t1: Callable, t2: Callable, alpha):
    """alpha t2(alpha^-1) (t2 t1)(alpha) (t2 t1 t2)(alpha^-1) (t1 t2)(alpha) t1(alpha^-1)."""
    ai = inv(alpha)
    parts = [alpha, t2(ai), t2(t1(alpha)), t2(t1(t2(ai))), t1(t2(alpha)), t1(ai)]
    out = parts[0]
    for x in parts[1:]:
        out = spec_mul(out, x)
    return out


def hexagon_generic(spec: AmalgamSpec, tau1: Involution, tau2: Involution, twisted: Callable, alpha):
    """(alpha', beta, alpha'') with alpha = alpha' beta alpha'', beta in H.

    tau1(alpha') = alpha' and tau2(alpha'') = alpha''.  ``twisted(i, gamma)``
    returns delta in H with gamma = delta tau_i(delta^-1) whenever gamma in H
    satisfies tau_i(gamma) = gamma^-1.  Assumes alpha satisfies the hexagon
    equation; the recursion strips one syllable per step.
    """
    taus = {1: tau1, 2: tau2}
    left, right = spec.one(), spec.one()
    cur = alpha
    while True:
        nf = amalgam_normal_form(spec, spec.segment(cur))
        syl = [t for _, t in nf.syllables]
        if not syl:
            beta = nf.base
            break
        syl[-1] = spec.mul(syl[-1], nf.base)
        js = nf.factors()
        if len(syl) == 1:
            a = syl[0]
            j = js[0]
            if tau1.factor[j] == j:
                gamma = spec.mul(spec.inv(a), tau1.apply(a))
                ok, gh = spec.base_part(gamma)
                if not ok:
                    raise PreconditionError("alpha^-1 tau1(alpha) is not in the base")
                delta = twisted(1, gh)
                left = spec.product(left, a, delta)
                beta = spec.inv(delta)
            elif tau2.factor[j] == j:
                gamma = spec.mul(a, spec.inv(tau2.apply(a)))
                ok, gh = spec.base_part(gamma)
                if not ok:
                    raise PreconditionError("alpha tau2(alpha)^-1 is not in the base")
                delta = twisted(2, gh)
                right = spec.product(spec.inv(delta), a, right)
                beta = delta
            else:
                raise PreconditionError("single syllable moved by both involutions")
            break
        last, first = syl[-1], syl[0]
        ok, gh = spec.base_part(spec.mul(last, spec.inv(taus[2].apply(last))))
        if ok:
            # gamma = delta^-1 tau2(delta) with delta = eps^-1, eps from twisted(2, gamma)
            delta = spec.inv(twisted(2, gh))
            right = spec.product(delta, last, right)
            cur = spec.product(*syl[:-1], spec.inv(delta))
            continue
        ok, gh = spec.base_part(spec.mul(spec.inv(taus[1].apply(first)), first))
        if ok:
            eps = twisted(1, gh)
            t_eps = tau1.apply(eps)
            left = spec.product(left, first, t_eps)
            cur = spec.product(spec.inv(t_eps), *syl[1:])
            continue
        raise PreconditionError("alpha does not satisfy the hexagon equation")
    if not spec.equal(spec.product(left, beta, right), alpha):
        raise SelfCheckError("hexagon decomposition does not multiply back")
    if not spec.equal(tau1.apply(left), left) or not spec.equal(tau2.apply(right), right):
        raise SelfCheckError("hexagon factors are not fixed")
    return left, beta, right


# -- free-group instantiations ----------------------------------------------


def fg(text: str) -> tuple:
    """Free-group word from letters like ``a b A`` (capital = inverse) or ``abA``."""
    out = []
    for ch in text.replace(" ", ""):
        out.append((ch.lower(), -1 if ch.isupper() else 1))
    return free_reduce(out)


def fg_str(w) -> str:
    return "".join(x if e > 0 else x.upper() for x, e in w) or "1"


class _FreeGroupSpec(AmalgamSpec):
    def one(self):
        return ()

    def mul(self, x, y):
        return free_reduce(tuple(x) + tuple(y))

    def inv(self, x):
        return invert_letters(x)

    def is_one(self, x) -> bool:
        return not free_reduce(x)


class FreeProductSpec(_FreeGroupSpec):
    """Free product of free groups on disjoint letter sets; H = 1."""

    def __init__(self, factor_letters: Sequence[Sequence[str]]):
        self.letters = [frozenset(s) for s in factor_letters]
        self.p = len(self.letters)
        self.owner = {x: j for j, s in enumerate(self.letters) for x in s}

    def split(self, j, g):
        return free_reduce(g), ()

    def segment(self, x):
        out: list = []
        for letter in free_reduce(x):
            j = self.owner[letter[0]]
            if out and out[-1][0] == j:
                out[-1] = (j, out[-1][1] + (letter,))
            else:
                out.append((j, (letter,)))
        return out

    def base_part(self, x):
        x = free_reduce(x)
        return (True, ()) if not x else (False, None)


class CyclicAmalgamSpec(_FreeGroupSpec):
    """F(a, b_1) *_<a> F(a, b_2) *_<a> ...; representatives drop the trailing a-power."""

    def __init__(self, base_letter: str, others: Sequence[str]):
        self.a = base_letter
        self.others = list(others)
        self.p = len(self.others)
        self.owner = {x: j for j, x in enumerate(self.others)}

    def split(self, j, g):
        g = free_reduce(g)
        k = len(g)
        while k and g[k - 1][0] == self.a:
            k -= 1
        return g[:k], g[k:]

    def segment(self, x):
        out: list = []
        pending: tuple = ()
        for letter in free_reduce(x):
            if letter[0] == self.a:
                if out:
                    out[-1] = (out[-1][0], out[-1][1] + (letter,))
                else:
                    pending += (letter,)
                continue
            j = self.owner[letter[0]]
            if out and out[-1][0] == j:
                out[-1] = (j, out[-1][1] + (letter,))
            else:
                out.append((j, pending + (letter,)))
                pending = ()
        if pending:
            out.append((0, pending))
        return out

    def base_part(self, x):
        x = free_reduce(x)
        return (True, x) if all(c == self.a for c, _ in x) else (False, None)


# -- the KB_n instantiation -------------------------------------------------


class KBOracle:
    """Shared memo and node budget for the exact-or-Unknown KB_n tests."""

    def __init__(self, n: int, budget: int | None = None):
        self.n = n
        self.budget = Budget(default_budget() if budget is None else budget)
        self.decider = Decider(n, self.budget)

    def trivial(self, letters) -> bool:
        try:
            return self.decider.trivial(free_reduce(letters))
        except (BudgetExhausted, RecursionError) as exc:
            raise UnknownVerdict(str(exc)) from exc

    def equal(self, x, y) -> bool:
        return self.trivial(tuple(x) + invert_letters(y))

    def in_base(self, letters, H) -> tuple[bool, tuple]:
        try:
            return self.decider.in_base(free_reduce(letters), frozenset(H), 0)
        except (BudgetExhausted, RecursionError) as exc:
            raise UnknownVerdict(str(exc)) from exc


def act_letters(letters, w: Permutation) -> tuple:
    return tuple((w(i), w(j), e) for i, j, e in letters)


class KBAmalgamSpec(AmalgamSpec):
    """KB[Y] as the amalgam of the KB[H + {x_j}] over KB[H], H = Y - {x_j}.

    The extra generators x_j must be pairwise at m = inf.  Elements are
    freely reduced letter tuples.  Representatives come from the coset
    retraction: theta(g) = g rho_H(g^-1), beta(g) = rho_H(g^-1)^-1.
    """

    def __init__(self, oracle: KBOracle, Y, extras: Sequence[tuple]):
        self.oracle = oracle
        self.extras = [tuple(x) for x in extras]
        self.p = len(self.extras)
        self.Y = frozenset(tuple(y) for y in Y)
        for a, x in enumerate(self.extras):
            if x not in self.Y:
                raise ValueError(f"{x} is not in Y")
            for z in self.extras[a + 1:]:
                if kb_m(x, z) != INF:
                    raise ValueError(f"{x} and {z} are not an infinity pair")
        self.H = self.Y - set(self.extras)
        self.owner = {x: j for j, x in enumerate(self.extras)}

    def one(self):
        return ()

    def mul(self, x, y):
        return free_reduce(tuple(x) + tuple(y))

    def inv(self, x):
        return invert_letters(x)

    def is_one(self, x) -> bool:
        return self.oracle.trivial(x)

    def split(self, j, g):
        ambient = frozenset((i, k) for i, k, _ in g) | self.H
        beta_inv = coset_retraction(invert_letters(g), ambient, self.H)
        return free_reduce(tuple(g) + beta_inv), invert_letters(beta_inv)

    def segment(self, x):
        out: list = []
        pending: tuple = ()
        for letter in free_reduce(x):
            j = self.owner.get(letter[:2])
            if j is None:
                if out:
                    out[-1] = (out[-1][0], out[-1][1] + (letter,))
                else:
                    pending += (letter,)
                continue
            if out and out[-1][0] == j:
                out[-1] = (j, out[-1][1] + (letter,))
            else:
                out.append((j, pending + (letter,)))
                pending = ()
        if pending:
            out.append((0, pending))
        return out

    def base_part(self, x):
        ok, h = self.oracle.in_base(x, self.H)
        return (True, h) if ok else (False, None)

    def involution(self, w: Permutation) -> Involution:
        factor = {}
        for j, x in enumerate(self.extras):
            img = (w(x[0]), w(x[1]))
            if img not in self.owner:
                raise ValueError(f"{w} does not permute the factors")
            factor[j] = self.owner[img]
        return Involution(lambda g: act_letters(g, w), factor)


# -- KB_n towers ------------------------------------------------------------


def _perm_from_prefix(n: int, prefix: Sequence[int]) -> Permutation:
    rest = [x for x in range(1, n + 1) if x not in prefix]
    return Permutation(list(prefix) + rest, n)


def _gens(X) -> frozenset:
    if isinstance(X, GeneratorSubset):
        return X.members
    return frozenset(tuple(x) for x in X)


def _is_invariant(Y: frozenset, w: Permutation) -> bool:
    return frozenset((w(i), w(j)) for i, j in Y) == Y


def _s(k: int, n: int) -> Permutation:
    return Permutation.simple(k, n)


def _certify_equal(u, v, n: int, budget: int | None, what: str):
    verdict = kb_equal(KBWord(u, n, check=False), KBWord(v, n, check=False), budget)
    if verdict.unknown:
        raise UnknownVerdict(f"could not certify {what}")
    if not verdict.equal:
        raise SelfCheckError(f"{what} failed: {verdict.to_json()}")
    return verdict


def _twisted_s1(oracle: KBOracle, a, Y: frozenset, n: int) -> tuple:
    """Core of the s_1 tower on letter tuples; returns alpha' (unverified)."""
    s1 = _s(1, n)
    pairs = [((1, 2), (2, 1))]
    pairs += [((1, k), (2, k)) for k in range(3, n + 1)]
    pairs += [((k, 1), (k, 2)) for k in range(3, n + 1)]
    prefix: tuple = ()
    beta = free_reduce(a)
    cur = Y
    for p, q in pairs:
        if p not in cur:
            continue
        spec = KBAmalgamSpec(oracle, cur, [p, q])
        a2, beta = twisted_decompose(spec, spec.involution(s1), beta)
        prefix = free_reduce(prefix + a2)
        cur = spec.H
    # beta is now s_1-fixed and s_1-inverted, hence of order <= 2, hence trivial
    if not oracle.trivial(beta):
        raise SelfCheckError("terminal twisted part is not trivial")
    return prefix


def twisted_decompose_at(a: KBWord, X, k: int = 1, budget: int | None = None,
                         oracle: KBOracle | None = None, verify: bool = True) -> KBWord:
    """alpha' with a = alpha' s_k(alpha'^-1), given s_k(a) = a^-1 and X s_k-invariant."""
    n = a.n
    Y = _gens(X)
    if not a.support() <= Y:
        raise PreconditionError("word support is not contained in X")
    sk = _s(k, n)
    if not _is_invariant(Y, sk):
        raise PreconditionError(f"X is not invariant under s_{k}")
    oracle = oracle or KBOracle(n, budget)
    if not oracle.trivial(act_letters(a.letters, sk) + a.letters):
        raise PreconditionError(f"s_{k}(a) != a^-1")
    c = _perm_from_prefix(n, [k, k + 1])
    cinv = c.inverse()
    a1 = act_letters(a.letters, cinv)
    Y1 = frozenset((cinv(i), cinv(j)) for i, j in Y)
    pre = _twisted_s1(oracle, a1, Y1, n)
    out = KBWord(act_letters(pre, c), n, check=False)
    if verify:
        back = out * out.inverse().act(sk)
        _certify_equal(back.letters, a.letters, n, budget, "twisted decomposition")
    return out


def s1_twisted_decompose(a: KBWord, X, budget: int | None = None) -> KBWord:
    """alpha' in KB[X] with a = alpha' s_1(alpha'^-1), for s_1(a) = a^-1."""
    return twisted_decompose_at(a, X, 1, budget)


def hexagon_relator(a: KBWord, k: int = 1) -> KBWord:
    """The hexagon left-hand side for the pair (s_k, s_{k+1})."""
    n = a.n
    t1, t2 = _s(k, n), _s(k + 1, n)
    return hexagon_lhs(lambda x, y: x * y, lambda x: x.inverse(),
                       lambda x: x.act(t1), lambda x: x.act(t2), a)


def _fixed_prefix(letters, k: int) -> int:
    bad = {k, k + 1}
    m = 0
    while m < len(letters) and bad.isdisjoint(letters[m][:2]):
        m += 1
    return m


def _hexagon_s12(oracle: KBOracle, a, Y: frozenset, n: int) -> tuple[tuple, tuple]:
    s1, s2 = _s(1, n), _s(2, n)
    left: tuple = ()
    right: tuple = ()
    cur_word = free_reduce(a)
    # tie-break: letterwise s_1-fixed prefix into alpha', s_2-fixed suffix into alpha''
    m = _fixed_prefix(cur_word, 1)
    left, cur_word = cur_word[:m], cur_word[m:]
    rev = cur_word[::-1]
    m = _fixed_prefix(rev, 2)
    right = cur_word[len(cur_word) - m:]
    cur_word = cur_word[:len(cur_word) - m]

    def twisted(H):
        def run(i, gamma):
            return twisted_decompose_at(KBWord(gamma, n, check=False), H, i,
                                        oracle=oracle, verify=False).letters
        return run

    cur = Y
    triples = [[(j, k) for j in (1, 2, 3)] for k in range(4, n + 1)]
    triples += [[(k, j) for j in (1, 2, 3)] for k in range(4, n + 1)]
    for triple in triples:
        if triple[0] not in cur:
            continue
        spec = KBAmalgamSpec(oracle, cur, triple)
        l2, beta, r2 = hexagon_generic(spec, spec.involution(s1), spec.involution(s2),
                                       twisted(spec.H), cur_word)
        left = free_reduce(left + l2)
        right = free_reduce(r2 + right)
        cur_word = beta
        cur = spec.H
    # what is left lives in KB[W1] x KB[W2]; W2 (indices >= 4) is fixed by s_1 and s_2
    low = tuple(x for x in cur_word if max(x[:2]) <= 3)
    high = tuple(x for x in cur_word if min(x[:2]) >= 4)
    right = free_reduce(high + right)
    W1 = frozenset(g for g in cur if max(g) <= 3)
    if low:
        cyc1 = [g for g in [(1, 2), (2, 3), (3, 1)] if g in W1]
        cyc2 = [g for g in [(2, 1), (3, 2), (1, 3)] if g in W1]
        spec = _KBFreeProduct(oracle, cyc1, cyc2)
        l2, beta, r2 = hexagon_generic(spec, spec.involution(s1), spec.involution(s2),
                                       lambda i, g: (), low)
        if not oracle.trivial(beta):
            raise SelfCheckError("base remainder of the hexagon tower is not trivial")
        left = free_reduce(left + l2)
        right = free_reduce(r2 + right)
    return left, right


class _KBFreeProduct(KBAmalgamSpec):
    """KB[W_11] * KB[W_12] for the two directed 3-cycles on {1, 2, 3}; H trivial."""

    def __init__(self, oracle: KBOracle, cyc1, cyc2):
        self.oracle = oracle
        self.groups = [frozenset(cyc1), frozenset(cyc2)]
        self.p = 2
        self.H = frozenset()
        self.owner = {g: j for j, grp in enumerate(self.groups) for g in grp}
        self.extras = [tuple(sorted(grp)) for grp in self.groups]

    def split(self, j, g):
        return free_reduce(g), ()

    def segment(self, x):
        out: list = []
        for letter in free_reduce(x):
            j = self.owner[letter[:2]]
            if out and out[-1][0] == j:
                out[-1] = (j, out[-1][1] + (letter,))
            else:
                out.append((j, (letter,)))
        return out

    def base_part(self, x):
        return (True, ()) if self.oracle.trivial(x) else (False, None)

    def involution(self, w: Permutation) -> Involution:
        factor = {}
        for j, grp in enumerate(self.groups):
            img = frozenset((w(a), w(b)) for a, b in grp)
            factor[j] = 0 if img == self.groups[0] else 1
        return Involution(lambda g: act_letters(g, w), factor)


def hexagon_decompose_at(a: KBWord, X, k: int = 1, budget: int | None = None,
                         oracle: KBOracle | None = None, verify: bool = True) -> tuple[KBWord, KBWord]:
    """(alpha', alpha'') with a = alpha' alpha'', s_k(alpha') = alpha', s_{k+1}(alpha'') = alpha''."""
    n = a.n
    Y = _gens(X)
    if not a.support() <= Y:
        raise PreconditionError("word support is not contained in X")
    t1, t2 = _s(k, n), _s(k + 1, n)
    if not (_is_invariant(Y, t1) and _is_invariant(Y, t2)):
        raise PreconditionError(f"X is not invariant under s_{k} and s_{k + 1}")
    oracle = oracle or KBOracle(n, budget)
    if not oracle.trivial(hexagon_relator(a, k).letters):
        raise PreconditionError("a does not satisfy the hexagon equation")
    c = _perm_from_prefix(n, [k, k + 1, k + 2])
    cinv = c.inverse()
    a1 = act_letters(a.letters, cinv)
    Y1 = frozenset((cinv(i), cinv(j)) for i, j in Y)
    left, right = _hexagon_s12(oracle, a1, Y1, n)
    first = KBWord(act_letters(left, c), n, check=False)
    second = KBWord(act_letters(right, c), n, check=False)
    if verify:
        _certify_equal((first * second).letters, a.letters, n, budget, "hexagon split")
        _certify_equal(first.act(t1).letters, first.letters, n, budget, "s_k-fixed factor")
        _certify_equal(second.act(t2).letters, second.letters, n, budget, "s_{k+1}-fixed factor")
    return first, second


def hexagon_decompose(a: KBWord, X, budget: int | None = None) -> tuple[KBWord, KBWord]:
    """(alpha', alpha'') with a = alpha' alpha'', s_1(alpha') = alpha', s_2(alpha'') = alpha''."""
    return hexagon_decompose_at(a, X, 1, budget)


# -- sections of pi_K -------------------------------------------------------


@dataclass
class StraightenResult:
    outcome: str  # "ok" | "unknown"
    conjugator: KBWord | None
    steps: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"outcome": self.outcome,
                "conjugator": None if self.conjugator is None else str(self.conjugator),
                "steps": self.steps}


def _conj(beta: KBWord, x: SemidirectElement) -> SemidirectElement:
    """beta^-1 x beta."""
    b = SemidirectElement.from_kb(beta)
    return b.inverse() * x * b


def straighten_symmetric_section(images: Sequence[SemidirectElement], budget: int | None = None) -> StraightenResult:
    """A conjugator beta in KB_n with beta^-1 images[i] beta = tau_{i+1} for all i.

    ``images[i]`` is the image of s_{i+1} under a homomorphism S_n -> VB_n
    whose composite with pi_K is the identity.  Proceeds one generator at a
    time; each step conjugates by an element fixing the earlier tau's.
    """
    if not images:
        raise PreconditionError("no images")
    n = images[0].n
    if len(images) != n - 1:
        raise PreconditionError(f"expected {n - 1} images")
    for i, x in enumerate(images, start=1):
        if x.perm != _s(i, n):
            raise PreconditionError(f"image {i} does not map to s_{i} under pi_K")
    oracle = KBOracle(n, budget)
    for i in range(1, n):
        for j in range(i, n):
            rel = [i, i] if i == j else ([i, j] * 3 if j == i + 1 else [i, j] * 2)
            x = SemidirectElement.identity(n)
            for r in rel:
                x = x * images[r - 1]
            if not x.perm.is_identity() or not oracle.trivial(x.kb.letters):
                raise PreconditionError(f"images violate the relation for s_{i}, s_{j}")
    full = GeneratorSubset.full(n).members
    current = list(images)
    total = KBWord((), n)
    steps = []
    try:
        for k in range(1, n):
            alpha = current[k - 1].kb
            if oracle.trivial(alpha.letters):
                steps.append({"k": k, "conjugator": "e"})
                continue
            if k == 1:
                beta = twisted_decompose_at(alpha, full, 1, oracle=oracle, verify=False)
            else:
                X, hexX = full, full
                if k >= 3:
                    # alpha commutes with tau_1 .. tau_{k-2}, so it lies in KB[S_k]
                    X = GeneratorSubset.tail(n, k).members
                    hexX = GeneratorSubset.tail(n, k - 1).members
                    inside, word = oracle.in_base(alpha.letters, X)
                    if not inside:
                        raise SelfCheckError(f"image {k} does not lie in KB[S_{k}]")
                    alpha = KBWord(word, n, check=False)
                beta_k = twisted_decompose_at(alpha, X, k, oracle=oracle, verify=False)
                beta, _ = hexagon_decompose_at(beta_k, hexX, k - 1, oracle=oracle, verify=False)
            current = [_conj(beta, x) for x in current]
            total = total * beta
            steps.append({"k": k, "conjugator": str(beta)})
    except UnknownVerdict:
        return StraightenResult("unknown", None, steps)
    # final check: every image is conjugated onto its tau
    for i, x in enumerate(images, start=1):
        y = _conj(total, x)
        if y.perm != _s(i, n):
            raise SelfCheckError("conjugated image has the wrong permutation")
        verdict = kb_equal(y.kb, KBWord((), n), budget)
        if verdict.unknown:
            return StraightenResult("unknown", total, steps)
        if not verdict.equal:
            raise SelfCheckError(f"conjugated image {i} is not tau_{i}")
    return StraightenResult("ok", total, steps)
