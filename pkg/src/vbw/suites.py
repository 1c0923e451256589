"""Verification suites shared by the ``verify`` command and the test suite.

Each suite runs a fixed, seeded list of cases and records one outcome per
case: ``pass``, ``fail`` (a wrong answer or a failed self-check) or
``unknown`` (an undecided oracle call).  A suite passes when nothing fails
and the Unknown rate stays within its allowance.
"""

from __future__ import annotations

import functools
import random
import time
from dataclasses import dataclass, field

from . import catalog
from .amalgam import (
    CyclicAmalgamSpec,
    FreeProductSpec,
    Involution,
    PreconditionError,
    SelfCheckError,
    amalgam_normal_form,
    fg_str,
    hexagon_decompose,
    hexagon_relator,
    s1_twisted_decompose,
    twisted_decompose,
)
from .artin import GeneratorSubset
from .kbeq import UnknownVerdict, dihedral_normal_form, kb_equal, kb_is_trivial
from .perm import Permutation, canonical_tuple, coxeter_relation_failures, nu6_images, w0
from .vb import SemidirectElement, to_semidirect, vb_relators
from .words import KBWord, free_reduce, invert_letters

SEED = 20240229


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    max_unknown_rate: float = 0.0
    seconds: float = 0.0

    def add(self, case: str, outcome: str, **detail) -> None:
        self.cases.append({"case": case, "outcome": outcome, **detail})

    def count(self, outcome: str) -> int:
        return sum(1 for c in self.cases if c["outcome"] == outcome)

    @property
    def unknown_rate(self) -> float:
        return self.count("unknown") / len(self.cases) if self.cases else 0.0

    @property
    def passed(self) -> bool:
        return self.count("fail") == 0 and self.unknown_rate <= self.max_unknown_rate

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "counts": {k: self.count(k) for k in ("pass", "fail", "unknown")},
            "unknown_rate": round(self.unknown_rate, 4),
            "max_unknown_rate": self.max_unknown_rate,
            "cases": self.cases,
            "timing": {"seconds": round(self.seconds, 3)},
        }

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (f"{self.suite}: {state} ({self.count('pass')} pass, {self.count('fail')} fail, "
                f"{self.count('unknown')} unknown, {self.seconds:.2f}s)")


def _verdict_outcome(verdict, want_equal: bool) -> str:
    if verdict.unknown:
        return "unknown"
    return "pass" if verdict.equal == want_equal else "fail"


def _timed(fn):
    def run(*args, **kwargs) -> SuiteReport:
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t0
        return rep
    return functools.wraps(fn)(run)


# -- relations and catalog --------------------------------------------------


@_timed
def relations(ns=range(3, 8), budget: int | None = None) -> SuiteReport:
    """Every defining relator of VB_n folds to (r, id) with r trivial in KB_n."""
    rep = SuiteReport("relations")
    for n in ns:
        for name, word in vb_relators(n):
            x = to_semidirect(word)
            if not x.perm.is_identity():
                rep.add(f"n={n} {name}", "fail", reason="permutation part is not the identity")
                continue
            verdict = kb_is_trivial(x.kb, budget)
            rep.add(f"n={n} {name}", _verdict_outcome(verdict, True), tier=verdict.tier)
    return rep


def _images_equal(f: catalog.CatalogHom, g: catalog.CatalogHom, budget) -> bool:
    return all(catalog.elements_equal(f.images[k], g.images[k], budget) for k in f.images)


@_timed
def catalog_checks(ns=range(3, 8), budget: int | None = None) -> SuiteReport:
    """Identities among the named homomorphisms."""
    rep = SuiteReport("catalog")

    def check(case: str, fn) -> None:
        try:
            rep.add(case, "pass" if fn() else "fail")
        except catalog.RelationError as exc:
            rep.add(case, "unknown", reason=str(exc))

    for n in ns:
        z1, z2 = catalog.zeta1(n), catalog.zeta2(n)
        ident = catalog.identity(n, "vb")
        sym_id = catalog.identity(n, "sym")
        check(f"n={n} zeta1^2 = id", lambda: _images_equal(catalog.compose(z1, z1), ident, budget))
        check(f"n={n} zeta2^2 = id", lambda: _images_equal(catalog.compose(z2, z2), ident, budget))
        check(f"n={n} zeta1 zeta2 = zeta2 zeta1", lambda: _images_equal(
            catalog.compose(z1, z2), catalog.compose(z2, z1), budget))
        io = catalog.iota(n)
        check(f"n={n} piK iota = id",
              lambda: _images_equal(catalog.compose(catalog.pi_K(n), io), sym_id, budget))
        check(f"n={n} piP iota = id",
              lambda: _images_equal(catalog.compose(catalog.pi_P(n), io), sym_id, budget))
        s1 = SemidirectElement.sigma(1, n)
        check(f"n={n} zeta2 negates the sigma degree",
              lambda: catalog.sd_abelianize(z2.images[("s", 1)]) == (-1, 0)
              and catalog.sd_abelianize(s1) == (1, 0))
        check(f"n={n} zeta1 preserves the sigma degree",
              lambda: all(catalog.sd_abelianize(z1.images[("s", i)]) == (1, 0) for i in range(1, n)))
    for case, ok in _nu6_cases():
        rep.add(case, "pass" if ok else "fail")
    return rep


def _nu6_cases() -> list[tuple[str, bool]]:
    u = nu6_images()
    out = [("nu6 satisfies the S_6 relations", not coxeter_relation_failures(u))]
    squared = [catalog.nu6().evaluate(x.reduced_word()) for x in u]
    conj = [Permutation.simple(i, 6).conjugate_by(w0()) for i in range(1, 6)]
    out.append(("nu6^2 is conjugation by (1,6,2,5,3)", squared == conj))
    ident = canonical_tuple([Permutation.simple(i, 6) for i in range(1, 6)], 6)
    out.append(("nu6 is not inner", canonical_tuple(u, 6) != ident))
    # an outer automorphism swaps transpositions with triple transpositions
    out.append(("nu6 sends transpositions to triple transpositions",
                all(x.cycle_type() == (2, 2, 2) for x in u)))
    return out


@_timed
def nu6_suite() -> SuiteReport:
    rep = SuiteReport("nu6")
    for case, ok in _nu6_cases():
        rep.add(case, "pass" if ok else "fail")
    return rep


# -- amalgam normal forms ---------------------------------------------------


def _rand_fg(rng: random.Random, letters: str, length: int) -> tuple:
    return free_reduce((rng.choice(letters), rng.choice((1, -1))) for _ in range(length))


def _rebracket(rng: random.Random, spec, x) -> list:
    """A random factor sequence for x: syllables cut up and padded with base elements."""
    seq = []
    for j, g in spec.segment(x):
        cuts = sorted(rng.sample(range(len(g) + 1), min(2, len(g) + 1)))
        pieces = [g[:cuts[0]], g[cuts[0]:cuts[-1]], g[cuts[-1]:]]
        for piece in pieces:
            if piece:
                seq.append((j, piece))
    if isinstance(spec, CyclicAmalgamSpec):
        # push a random base element across every boundary
        out = []
        for j, g in seq:
            h = _rand_fg(rng, spec.a, rng.randint(0, 2))
            out.append((j, free_reduce(tuple(g) + h)))
            out.append((rng.randrange(spec.p), invert_letters(h)))
        seq = out
    return seq


def _nf_instances():
    return [("free product", FreeProductSpec([["b"], ["c"]]), "bc", None),
            ("cyclic amalgam", CyclicAmalgamSpec("a", ["b", "c"]), "abc", "a")]


@_timed
def normalform(count: int = 1000, seed: int = SEED) -> SuiteReport:
    """Uniqueness, idempotence and base membership of amalgam normal forms."""
    rep = SuiteReport("normalform")
    rng = random.Random(seed)
    for label, spec, letters, base in _nf_instances():
        fails = 0
        for k in range(count):
            x = _rand_fg(rng, letters, rng.randint(0, 12))
            nf = amalgam_normal_form(spec, spec.segment(x))
            ok = spec.equal(nf.element(spec), x)
            again = amalgam_normal_form(spec, spec.segment(nf.element(spec)))
            ok = ok and again.same_as(nf, spec)
            other = amalgam_normal_form(spec, _rebracket(rng, spec, x))
            ok = ok and other.same_as(nf, spec)
            ok = ok and all(a != b for (a, _), (b, _) in zip(nf.syllables, nf.syllables[1:]))
            if not ok:
                fails += 1
                rep.add(f"{label} #{k}", "fail", word=fg_str(x))
        rep.add(f"{label}: {count} uniqueness checks", "pass" if not fails else "fail")
        # l = 0 exactly on the base
        inside = outside = 0
        for k in range(count):
            if base and rng.random() < 0.5:
                x = _rand_fg(rng, base, rng.randint(0, 6))
                want = True
            else:
                x = _rand_fg(rng, letters, rng.randint(1, 10))
                want = all(c == base for c, _ in x) if base else not x
            nf = amalgam_normal_form(spec, _rebracket(rng, spec, x))
            if (nf.length == 0) != want:
                rep.add(f"{label} base membership #{k}", "fail", word=fg_str(x))
            inside += want
            outside += not want
        rep.add(f"{label}: l = 0 iff in H ({inside} in, {outside} out)", "pass")
    return rep


# -- constructive lemmas ----------------------------------------------------


def _swap(spec_letters: dict) -> Involution:
    def apply(w):
        return free_reduce((spec_letters[x][0], e * spec_letters[x][1]) for x, e in w)
    return Involution(apply, {0: 1, 1: 0})


@_timed
def lemma3_8(count: int = 200, seed: int = SEED) -> SuiteReport:
    """Twisted decompositions through a factor swap, on inputs built from known witnesses."""
    rep = SuiteReport("lemma3_8", max_unknown_rate=0.1)
    rng = random.Random(seed)
    fp = FreeProductSpec([["b"], ["c"]])
    fp_tau = _swap({"b": ("c", 1), "c": ("b", 1)})
    cy = CyclicAmalgamSpec("a", ["b", "c"])
    cy_tau = _swap({"b": ("c", 1), "c": ("b", 1), "a": ("a", -1)})
    for k in range(count):
        if k % 2 == 0:
            spec, tau, letters, base = fp, fp_tau, "bc", ()
        else:
            spec, tau, letters = cy, cy_tau, "abc"
            base = _rand_fg(rng, "a", rng.randint(0, 3))
        witness = _rand_fg(rng, letters, rng.randint(0, 10))
        alpha = spec.product(witness, base, tau.apply(spec.inv(witness)))
        try:
            a1, b1 = twisted_decompose(spec, tau, alpha)
        except (SelfCheckError, PreconditionError) as exc:
            rep.add(f"#{k}", "fail", alpha=fg_str(alpha), reason=str(exc))
            continue
        back = spec.product(a1, b1, tau.apply(spec.inv(a1)))
        ok = back == free_reduce(alpha) and spec.base_part(b1)[0] and spec.is_one(spec.mul(tau.apply(b1), b1))
        rep.add(f"#{k}", "pass" if ok else "fail", alpha=fg_str(alpha), alpha1=fg_str(a1), beta1=fg_str(b1))
    return rep


def _rand_kb(rng: random.Random, gens: list, length: int, n: int) -> KBWord:
    return KBWord([(*rng.choice(gens), rng.choice((1, -1))) for _ in range(length)], n)


@_timed
def lemma3_9(count: int = 200, seed: int = SEED, budget: int | None = None) -> SuiteReport:
    """s_1-twisted decompositions in KB_n for a = x s_1(x^-1) with random x."""
    rep = SuiteReport("lemma3_9", max_unknown_rate=0.1)
    rng = random.Random(seed)
    for k in range(count):
        n = rng.choice((3, 4, 5))
        full = GeneratorSubset.full(n)
        x = _rand_kb(rng, full.sorted(), rng.randint(1, 6), n)
        a = x * x.inverse().act(Permutation.simple(1, n))
        case = f"#{k} n={n} a={a}"
        try:
            a1 = s1_twisted_decompose(a, full, budget)
        except UnknownVerdict:
            rep.add(case, "unknown")
            continue
        except (SelfCheckError, PreconditionError) as exc:
            rep.add(case, "fail", reason=str(exc))
            continue
        verdict = kb_equal(a, a1 * a1.inverse().act(Permutation.simple(1, n)), budget)
        rep.add(case, _verdict_outcome(verdict, True), alpha1=str(a1), tier=verdict.tier)
    return rep


@_timed
def lemma3_11(count: int = 200, seed: int = SEED, budget: int | None = None) -> SuiteReport:
    """Hexagon splits a = a' a'' for a' fixed by s_1 and a'' fixed by s_2."""
    rep = SuiteReport("lemma3_11", max_unknown_rate=0.1)
    rng = random.Random(seed)
    for k in range(count):
        n = rng.choice((4, 5))
        full = GeneratorSubset.full(n)
        g1 = GeneratorSubset.avoiding(n, (1, 2)).sorted()
        g2 = GeneratorSubset.avoiding(n, (2, 3)).sorted()
        x = _rand_kb(rng, g1, rng.randint(0, 4), n)
        y = _rand_kb(rng, g2, rng.randint(0, 4), n)
        a = x * y
        case = f"#{k} n={n} a={a}"
        try:
            first, second = hexagon_decompose(a, full, budget)
        except UnknownVerdict:
            rep.add(case, "unknown")
            continue
        except (SelfCheckError, PreconditionError) as exc:
            rep.add(case, "fail", reason=str(exc))
            continue
        checks = [kb_equal(a, first * second, budget),
                  kb_equal(first.act(Permutation.simple(1, n)), first, budget),
                  kb_equal(second.act(Permutation.simple(2, n)), second, budget)]
        if any(v.distinct for v in checks):
            outcome = "fail"
        elif any(v.unknown for v in checks):
            outcome = "unknown"
        else:
            outcome = "pass"
        rep.add(case, outcome, alpha1=str(first), alpha2=str(second))
    return rep


def _power(g: tuple, e: int, n: int) -> KBWord:
    sign = 1 if e > 0 else -1
    return KBWord([(*g, sign)] * abs(e), n)


@_timed
def lemma6_0(bound: int = 5, n: int = 4, budget: int | None = None) -> SuiteReport:
    """delta_{i,j}^l1 delta_{j,k}^l2 is trivial iff l1 = l2 = 0."""
    rep = SuiteReport("lemma6_0")
    triples = [(i, j, k) for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)
               if len({i, j, k}) == 3]
    for i, j, k in triples:
        bad = []
        for l1 in range(-bound, bound + 1):
            for l2 in range(-bound, bound + 1):
                w = _power((i, j), l1, n) * _power((j, k), l2, n)
                want = l1 == 0 and l2 == 0
                form = dihedral_normal_form(w, ((i, j), (j, k)))
                verdict = kb_is_trivial(w, budget)
                if form.is_identity() != want or verdict.unknown or verdict.equal != want:
                    bad.append([l1, l2])
        rep.add(f"d{i}.{j}^l1 d{j}.{k}^l2", "pass" if not bad else "fail", failures=bad)
    return rep


@_timed
def hexagon_forward(count: int = 50, seed: int = SEED, budget: int | None = None) -> SuiteReport:
    """The hexagon relator of a' a'' is trivial for letterwise-fixed a', a''."""
    rep = SuiteReport("hexagon_forward")
    rng = random.Random(seed)
    for k in range(count):
        n = rng.choice((4, 5))
        x = _rand_kb(rng, GeneratorSubset.avoiding(n, (1, 2)).sorted(), rng.randint(0, 4), n)
        y = _rand_kb(rng, GeneratorSubset.avoiding(n, (2, 3)).sorted(), rng.randint(0, 4), n)
        verdict = kb_is_trivial(hexagon_relator(x * y), budget)
        rep.add(f"#{k} n={n}", _verdict_outcome(verdict, True), tier=verdict.tier)
    return rep


SUITES = {
    "relations": relations,
    "catalog": catalog_checks,
    "nu6": nu6_suite,
    "lemma3_8": lemma3_8,
    "lemma3_9": lemma3_9,
    "lemma3_11": lemma3_11,
    "lemma6_0": lemma6_0,
    "normalform": normalform,
}
