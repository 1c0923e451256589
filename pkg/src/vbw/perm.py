"""Permutations of {1, ..., n} and brute-force subgroup computations in S_n.

Composition convention: ``p * q`` is the map ``x -> p(q(x))``, so the right
factor acts first.  This is the convention used everywhere in the package,
including the action of S_n on KB_n and the projections of VB_n onto S_n.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Sequence

MAX_CENTRALIZER_DEGREE = 8
MAX_CANONICAL_DEGREE = 6


class DegreeError(ValueError):
    """Raised when permutations of different degrees are combined."""


class BruteForceLimit(ValueError):
    """Raised when a brute-force routine is asked for a degree it refuses."""


class Permutation:
    """A permutation in one-line form: ``images[k-1]`` is the image of ``k``."""

    __slots__ = ("images", "n")

    def __init__(self, images: Sequence[int], n: int | None = None):
        images = tuple(int(x) for x in images)
        if n is None:
            n = len(images)
        if len(images) != n:
            raise DegreeError(f"one-line form {images} does not have length {n}")
        if sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{n}")
        self.images = images
        self.n = n

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1), n)

    @classmethod
    def transposition(cls, i: int, j: int, n: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images, n)

    @classmethod
    def simple(cls, i: int, n: int) -> "Permutation":
        """The Coxeter generator s_i = (i, i+1)."""
        if not 1 <= i < n:
            raise ValueError(f"s_{i} is not a generator of S_{n}")
        return cls.transposition(i, i + 1, n)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        images = list(range(1, n + 1))
        seen: set[int] = set()
        for cycle in cycles:
            for x in cycle:
                if not 1 <= x <= n or x in seen:
                    raise ValueError(f"bad cycle {tuple(cycle)} for degree {n}")
                seen.add(x)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a - 1] = b
        return cls(images, n)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse ``[2,1,3]`` (one-line) or ``(1,2)(3,4)`` (cycles; needs ``n``)."""
        text = text.strip()
        if text.startswith("["):
            body = text.strip("[]").strip()
            images = [int(x) for x in body.split(",")] if body else []
            return cls(images, n if n is not None else len(images))
        if n is None:
            raise ValueError("cycle notation needs an explicit degree")
        if text in ("", "()", "id", "e"):
            return cls.identity(n)
        if not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\))+", text):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [[int(x) for x in c.split(",")] for c in re.findall(r"\(([^)]*)\)", text)]
        return cls.from_cycles(cycles, n)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, x in enumerate(self.images, 1):
            inv[x - 1] = k
        return Permutation(inv, self.n)

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def conjugate_by(self, g: "Permutation") -> "Permutation":
        """Return g self g^-1."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its least element."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.n + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            x = self(start)
            while x != start:
                cycle.append(x)
                seen.add(x)
                x = self(x)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def length(self) -> int:
        """Number of inversions, i.e. the Coxeter length in the s_i."""
        im = self.images
        return sum(1 for a in range(self.n) for b in range(a + 1, self.n) if im[a] > im[b])

    def reduced_word(self) -> list[int]:
        """Indices i_1..i_k with self = s_{i_1} * ... * s_{i_k}, k = length."""
        word: list[int] = []
        p = list(self.images)
        # peel right descents: p = (p * s_i) * s_i
        while True:
            for i in range(self.n - 1):
                if p[i] > p[i + 1]:
                    p[i], p[i + 1] = p[i + 1], p[i]
                    word.append(i + 1)
                    break
            else:
                break
        return word[::-1]

    def cycle_str(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return (self.n, self.images) < (other.n, other.images)

    def __hash__(self) -> int:
        return hash(self.images)

    def to_json(self) -> list[int]:
        return list(self.images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """The permutation x -> p(q(x))."""
    if p.n != q.n:
        raise DegreeError(f"cannot compose permutations of degrees {p.n} and {q.n}")
    pim = p.images
    return Permutation([pim[x - 1] for x in q.images], p.n)


@lru_cache(maxsize=None)
def all_permutations(n: int) -> tuple[Permutation, ...]:
    """All of S_n in lexicographic one-line order."""
    return tuple(Permutation(p, n) for p in permutations(range(1, n + 1)))


def eval_word(word: Iterable[int], n: int) -> Permutation:
    """Evaluate s_{i_1} * ... * s_{i_k}."""
    result = Permutation.identity(n)
    for i in word:
        result = result * Permutation.simple(i, n)
    return result


def centralizer(gens: Iterable[Permutation], n: int) -> list[Permutation]:
    """All g in S_n commuting with every element of ``gens`` (brute force)."""
    if n > MAX_CENTRALIZER_DEGREE:
        raise BruteForceLimit(f"centralizer is brute force and limited to n <= {MAX_CENTRALIZER_DEGREE}")
    gens = list(gens)
    for g in gens:
        if g.n != n:
            raise DegreeError(f"generator {g} does not have degree {n}")
    return [g for g in all_permutations(n) if all(g * h == h * g for h in gens)]


def _conjugate_images(g: tuple[int, ...], ginv: tuple[int, ...], c: tuple[int, ...]) -> tuple[int, ...]:
    # (g c g^-1)(x) = g(c(g^-1(x)))
    return tuple(g[c[ginv[x] - 1] - 1] for x in range(len(g)))


def canonical_tuple(t: Sequence[Permutation], m: int) -> tuple[Permutation, ...]:
    """Lexicographically least simultaneous conjugate of ``t`` over S_m."""
    if m > MAX_CANONICAL_DEGREE:
        raise BruteForceLimit(f"canonical_tuple is brute force and limited to m <= {MAX_CANONICAL_DEGREE}")
    for c in t:
        if c.n != m:
            raise DegreeError(f"{c} does not have degree {m}")
    raw = [c.images for c in t]
    best = None
    for g in all_permutations(m):
        gi, ginv = g.images, g.inverse().images
        cand = tuple(_conjugate_images(gi, ginv, c) for c in raw)
        if best is None or cand < best:
            best = cand
    return tuple(Permutation(c, m) for c in best) if best is not None else ()


def conjugacy_orbit_size(t: Sequence[Permutation], m: int) -> int:
    """Number of distinct simultaneous conjugates of ``t``."""
    raw = [c.images for c in t]
    orbit = set()
    for g in all_permutations(m):
        gi, ginv = g.images, g.inverse().images
        orbit.add(tuple(_conjugate_images(gi, ginv, c) for c in raw))
    return len(orbit)


NU6_CYCLES = (
    ((1, 2), (3, 4), (5, 6)),
    ((2, 3), (1, 5), (4, 6)),
    ((1, 3), (2, 4), (5, 6)),
    ((1, 2), (3, 5), (4, 6)),
    ((2, 3), (1, 4), (5, 6)),
)

W0_CYCLE = (1, 6, 2, 5, 3)


def nu6_images() -> tuple[Permutation, ...]:
    """Images u_1..u_5 of s_1..s_5 under the exceptional automorphism of S_6."""
    return tuple(Permutation.from_cycles(c, 6) for c in NU6_CYCLES)


def w0() -> Permutation:
    return Permutation.from_cycles([W0_CYCLE], 6)


def coxeter_relation_failures(images: Sequence[Permutation]) -> list[str]:
    """Return the S_n Coxeter relations violated by ``images`` (empty if none)."""
    bad = []
    k = len(images)
    for a in range(k):
        u = images[a]
        if not (u * u).is_identity():
            bad.append(f"s{a + 1}^2")
        for b in range(a + 1, k):
            v = images[b]
            if b - a == 1:
                if u * v * u != v * u * v:
                    bad.append(f"braid s{a + 1} s{b + 1}")
            elif u * v != v * u:
                bad.append(f"commute s{a + 1} s{b + 1}")
    return bad


def extend_homomorphism(images: Sequence[Permutation], n: int) -> dict[Permutation, Permutation]:
    """Extend s_i -> images[i-1] to a map S_n -> S_m, checking well-definedness.

    Breadth-first search over the Cayley graph of S_n; raises ValueError if
    two paths to the same element give different images.
    """
    if len(images) != n - 1:
        raise ValueError(f"need {n - 1} generator images, got {len(images)}")
    m = images[0].n if images else 1
    gens = [Permutation.simple(i, n) for i in range(1, n)]
    table = {Permutation.identity(n): Permutation.identity(m)}
    frontier = [Permutation.identity(n)]
    while frontier:
        nxt = []
        for x in frontier:
            fx = table[x]
            for g, img in zip(gens, images):
                y = x * g
                fy = fx * img
                if y in table:
                    if table[y] != fy:
                        raise ValueError("generator images do not define a homomorphism")
                else:
                    table[y] = fy
                    nxt.append(y)
        frontier = nxt
    return table


def involution_class_reps(m: int) -> list[Permutation]:
    """One product of k disjoint transpositions (1,2)(3,4)... per k = 1..m//2."""
    if m < 2:
        raise ValueError("S_m has no involutions for m < 2")
    return [
        Permutation.from_cycles([(2 * a + 1, 2 * a + 2) for a in range(k)], m)
        for k in range(1, m // 2 + 1)
    ]
