"""Left normal forms in the braid groups B_N.

Simple braids are stored as permutations of {0..N-1} (tuples).  The braid
sigma_{i_1} ... sigma_{i_k} maps to the product s_{i_1} * ... * s_{i_k}
with the package convention (right factor acts first), and a positive
braid is simple iff that product has length k.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Simple = tuple


def _identity(N: int) -> Simple:
    return tuple(range(N))


def _delta(N: int) -> Simple:
    return tuple(range(N - 1, -1, -1))


def _mul(p: Simple, q: Simple) -> Simple:
    return tuple(p[x] for x in q)


def _s(i: int, N: int) -> Simple:
    im = list(range(N))
    im[i - 1], im[i] = i, i - 1
    return tuple(im)


def _right_descents(p: Simple) -> set[int]:
    return {i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1]}


def _left_descents(p: Simple) -> set[int]:
    inv = [0] * len(p)
    for k, x in enumerate(p):
        inv[x] = k
    return {i + 1 for i in range(len(p) - 1) if inv[i] > inv[i + 1]}


def _flip(p: Simple) -> Simple:
    """Conjugation by Delta: i -> N-1-i on both sides."""
    N = len(p)
    return tuple(N - 1 - p[N - 1 - x] for x in range(N))


def _left_weight(a: Simple, b: Simple) -> tuple[Simple, Simple, bool]:
    changed = False
    N = len(a)
    while True:
        move = _left_descents(b) - _right_descents(a)
        if not move:
            return a, b, changed
        i = min(move)
        s = _s(i, N)
        a, b = _mul(a, s), _mul(s, b)
        changed = True


class GarsideForm:
    """Delta^power * factors[0] * ... with factors left-weighted, none 1 or Delta."""

    __slots__ = ("N", "power", "factors")

    def __init__(self, N: int, power: int = 0, factors: Sequence[Simple] = ()):
        self.N = N
        self.power = power
        self.factors = tuple(factors)

    def is_identity(self) -> bool:
        return self.power == 0 and not self.factors

    def key(self) -> tuple:
        return (self.N, self.power, self.factors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GarsideForm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_json(self) -> dict:
        return {"delta_power": self.power, "factors": [list(f) for f in self.factors]}

    def __repr__(self) -> str:
        return f"GarsideForm(N={self.N}, power={self.power}, factors={list(self.factors)})"


def normal_form(word: Iterable[tuple[int, int]], N: int) -> GarsideForm:
    """Left normal form of the braid sigma_{i_1}^{e_1} ... in B_N.

    Each sigma_i^{-1} is rewritten Delta^{-1} (Delta sigma_i^{-1}) and the
    Delta^{-1} pushed to the front, conjugating the simple factors it
    crosses.  The positive part is then made left-weighted one factor at
    a time.
    """
    word = list(word)
    for i, e in word:
        if not 1 <= i <= N - 1 or e not in (1, -1):
            raise ValueError(f"bad braid letter {(i, e)} for B_{N}")
    delta = _delta(N)
    ident = _identity(N)
    n_inv = sum(1 for _, e in word if e < 0)
    power = -n_inv
    after = n_inv
    simples = []
    for i, e in word:
        if e > 0:
            f = _s(i, N)
        else:
            after -= 1
            f = _mul(delta, _s(i, N))
        if after % 2:
            f = _flip(f)
        simples.append(f)

    factors: list[Simple] = []
    for b in simples:
        factors.append(b)
        k = len(factors) - 1
        while k > 0:
            a, b2, changed = _left_weight(factors[k - 1], factors[k])
            factors[k - 1], factors[k] = a, b2
            if not changed:
                break
            k -= 1
        while factors and factors[-1] == ident:
            factors.pop()
        while factors and factors[0] == delta:
            factors.pop(0)
            power += 1
    return GarsideForm(N, power, factors)


def is_trivial(word: Iterable[tuple[int, int]], N: int) -> bool:
    return normal_form(word, N).is_identity()


def invert(word: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(i, -e) for i, e in reversed(word)]


def affine_images(c: int) -> list[list[tuple[int, int]]]:
    """Braid words in B_{c+1} for the generators a_1..a_c of the Artin group of type A~_{c-1}.

    The affine generators sit in the type-B Artin group, realized in B_{c+1}
    with t = sigma_1^2 and s_i = sigma_{i+1}: a_i = s_i for i < c and
    a_c = r s_{c-1} r^-1 with r = t s_1 ... s_{c-1}.  This embedding is
    injective, so the word problem transfers exactly.
    """
    if c < 3:
        raise ValueError("affine cycles have length >= 3")
    images = [[(i + 1, 1)] for i in range(1, c)]
    r = [(1, 1), (1, 1)] + [(i + 1, 1) for i in range(1, c)]
    images.append(r + [(c, 1)] + invert(r))
    return images
