"""The named homomorphisms between symmetric and virtual braid groups.

A :class:`CatalogHom` stores generator images and checks every defining
relator of its source on construction.  Sources and targets are ``"sym"``
(S_n, generators s_i) or ``"vb"`` (VB_n, generators sigma_i and tau_i).
VB elements are :class:`~vbw.vb.SemidirectElement` values.
"""

from __future__ import annotations

from .kbeq import kb_is_trivial
from .perm import DegreeError, Permutation, nu6_images
from .vb import (
    SemidirectElement,
    from_semidirect,
    sym_relators,
    vb_relators,
)
from .words import VBWord


class RelationError(ValueError):
    pass


def _sym_generators(n: int) -> list:
    return list(range(1, n))


def _vb_generators(n: int) -> list:
    return [("s", i) for i in range(1, n)] + [("t", i) for i in range(1, n)]


def _target_identity(kind: str, m: int):
    return Permutation.identity(m) if kind == "sym" else SemidirectElement.identity(m)


def _vb_letter(x: SemidirectElement, e: int) -> SemidirectElement:
    return x if e > 0 else x.inverse()


def _sym_letter(p: Permutation, e: int) -> Permutation:
    return p if e > 0 else p.inverse()


def elements_equal(x, y, budget: int | None = None) -> bool:
    """Exact equality for target elements; raises if the KB oracle is undecided."""
    if isinstance(x, Permutation):
        return x == y
    if x.perm != y.perm:
        return False
    verdict = kb_is_trivial(x.kb * y.kb.inverse(), budget)
    if verdict.unknown:
        raise RelationError(f"could not decide equality of {x!r} and {y!r}")
    return verdict.equal


class CatalogHom:
    def __init__(self, name: str, source: str, n: int, target: str, m: int,
                 images: dict, *, verify: bool = True):
        self.name = name
        self.source = source
        self.n = n
        self.target = target
        self.m = m
        self.images = dict(images)
        expected = _sym_generators(n) if source == "sym" else _vb_generators(n)
        if sorted(self.images, key=str) != sorted(expected, key=str):
            raise ValueError(f"{name}: images do not match the generators of {source}{n}")
        if verify:
            self.verify_relations()

    def __repr__(self) -> str:
        return f"CatalogHom({self.name}: {self.source}{self.n} -> {self.target}{self.m})"

    def __call__(self, word):
        return self.evaluate(word)

    def evaluate(self, word):
        """Image of a VBWord (vb source) or an index list of s_i (sym source)."""
        out = _target_identity(self.target, self.m)
        if self.source == "vb":
            if not isinstance(word, VBWord):
                raise TypeError(f"{self.name} expects a VB word")
            if word.n != self.n:
                raise DegreeError(f"{self.name} is defined on VB_{self.n}, got a word on {word.n} strands")
            letters = [((k, i), e) for k, i, e in word.letters]
        else:
            if isinstance(word, Permutation):
                if word.n != self.n:
                    raise DegreeError(f"{self.name} is defined on S_{self.n}")
                word = word.reduced_word()
            letters = [(i, 1) for i in word]
            for i, _ in letters:
                if not 1 <= i <= self.n - 1:
                    raise DegreeError(f"s_{i} is not a generator of S_{self.n}")
        for g, e in letters:
            img = self.images[g]
            out = out * (_sym_letter(img, e) if self.target == "sym" else _vb_letter(img, e))
        return out

    def relator_images(self) -> list[tuple[str, object]]:
        if self.source == "vb":
            return [(name, self.evaluate(r)) for name, r in vb_relators(self.n)]
        return [(name, self.evaluate(word)) for name, word in sym_relators(self.n)]

    def verify_relations(self, budget: int | None = None) -> None:
        one = _target_identity(self.target, self.m)
        for name, img in self.relator_images():
            if not elements_equal(img, one, budget):
                raise RelationError(f"{self.name}: relator {name} maps to {img}")


def _source_word(kind: str, element) -> object:
    """Turn a target element back into a word of the same group."""
    if kind == "sym":
        return element.reduced_word()
    return from_semidirect(element)


def compose(outer: CatalogHom, inner: CatalogHom, *, verify: bool = False) -> CatalogHom:
    """outer o inner (inner applied first)."""
    if inner.target != outer.source or inner.m != outer.n:
        raise DegreeError(f"cannot compose {outer} after {inner}")
    images = {g: outer.evaluate(_source_word(inner.target, img)) for g, img in inner.images.items()}
    return CatalogHom(f"{outer.name}.{inner.name}", inner.source, inner.n, outer.target, outer.m,
                      images, verify=verify)


def pi_K(n: int) -> CatalogHom:
    images = {}
    for i in range(1, n):
        images[("s", i)] = Permutation.identity(n)
        images[("t", i)] = Permutation.simple(i, n)
    return CatalogHom("piK", "vb", n, "sym", n, images)


def pi_P(n: int) -> CatalogHom:
    images = {}
    for i in range(1, n):
        images[("s", i)] = Permutation.simple(i, n)
        images[("t", i)] = Permutation.simple(i, n)
    return CatalogHom("piP", "vb", n, "sym", n, images)


def iota(n: int) -> CatalogHom:
    return CatalogHom("iota", "sym", n, "vb", n, {i: SemidirectElement.tau(i, n) for i in range(1, n)})


def zeta1(n: int) -> CatalogHom:
    images = {}
    for i in range(1, n):
        t = SemidirectElement.tau(i, n)
        images[("s", i)] = t * SemidirectElement.sigma(i, n) * t
        images[("t", i)] = t
    return CatalogHom("zeta1", "vb", n, "vb", n, images)


def zeta2(n: int) -> CatalogHom:
    images = {}
    for i in range(1, n):
        images[("s", i)] = SemidirectElement.sigma(i, n, -1)
        images[("t", i)] = SemidirectElement.tau(i, n)
    return CatalogHom("zeta2", "vb", n, "vb", n, images)


def nu6(n: int = 6) -> CatalogHom:
    if n != 6:
        raise DegreeError("nu6 is defined on S_6 only")
    return CatalogHom("nu6", "sym", 6, "sym", 6, {i: u for i, u in enumerate(nu6_images(), start=1)})


def identity(n: int, kind: str = "vb") -> CatalogHom:
    if kind == "sym":
        images = {i: Permutation.simple(i, n) for i in range(1, n)}
    else:
        images = {("s", i): SemidirectElement.sigma(i, n) for i in range(1, n)}
        images.update({("t", i): SemidirectElement.tau(i, n) for i in range(1, n)})
    return CatalogHom("identity", kind, n, kind, n, images, verify=False)


BASIC = {"piK": pi_K, "piP": pi_P, "iota": iota, "zeta1": zeta1, "zeta2": zeta2, "nu6": nu6}

# source kind of each basic map, used to place "identity" inside composites
_SOURCE = {"piK": "vb", "piP": "vb", "iota": "sym", "zeta1": "vb", "zeta2": "vb", "nu6": "sym"}
_TARGET = {"piK": "sym", "piP": "sym", "iota": "vb", "zeta1": "vb", "zeta2": "vb", "nu6": "sym"}


def lookup(name: str, n: int) -> CatalogHom:
    """Resolve a name such as ``piP``, ``nu6.piK`` or ``iota.nu6.piP`` on degree n.

    Dotted names compose right to left.  ``identity`` takes the kind of its
    neighbour and defaults to VB_n.
    """
    parts = name.split(".")
    for p in parts:
        if p not in BASIC and p != "identity":
            raise KeyError(f"unknown homomorphism {p!r}")
    kinds: list[str | None] = [_SOURCE.get(p) for p in parts]
    # propagate kinds into identity slots from the right neighbour's target or left's source
    for k in range(len(parts) - 1, -1, -1):
        if parts[k] == "identity":
            if k + 1 < len(parts):
                kinds[k] = _TARGET.get(parts[k + 1]) or kinds[k + 1]
            elif k > 0 and kinds[k - 1]:
                kinds[k] = kinds[k - 1]
            else:
                kinds[k] = "vb"
    hom = None
    for p, kind in zip(reversed(parts), reversed(kinds)):
        step = identity(n, kind) if p == "identity" else BASIC[p](n)
        hom = step if hom is None else compose(step, hom)
    hom.name = name
    return hom


def sd_abelianize(x: SemidirectElement) -> tuple[int, int]:
    """vb_abelianize of any word representing x."""
    from .vb import vb_abelianize

    return vb_abelianize(from_semidirect(x))

