"""Words over the VB_n generators (sigma_i, tau_i) and the KB_n generators delta_{i,j}.

Token format (whitespace separated): ``s3`` sigma_3, ``s3'`` its inverse,
``t2`` tau_2 (``t2'`` is accepted and normalized since tau_i^2 = 1),
``d1.2`` delta_{1,2}, ``d1.2'`` its inverse, ``e`` the empty word.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

from .perm import DegreeError, Permutation

KBLetter = tuple  # (i, j, exponent)
VBLetter = tuple  # ("s" | "t", i, exponent)

_VB_TOKEN = re.compile(r"([st])(\d+)(')?")
_KB_TOKEN = re.compile(r"d(\d+)\.(\d+)(')?")


class WordParseError(ValueError):
    pass


def free_reduce(letters: Iterable[tuple]) -> tuple:
    """Cancel adjacent x x^-1 pairs; letters are tuples whose last entry is +-1."""
    out: list[tuple] = []
    for x in letters:
        if out and out[-1][:-1] == x[:-1] and out[-1][-1] == -x[-1]:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[tuple]) -> tuple:
    return tuple(x[:-1] + (-x[-1],) for x in reversed(letters))


def _tokens(text: str) -> list[str]:
    toks = text.split()
    return [] if toks in ([], ["e"]) else toks


class KBWord:
    """A freely reduced word in the generators delta_{i,j} of KB_n."""

    __slots__ = ("letters", "n")

    def __init__(self, letters: Iterable[Sequence[int]] = (), n: int = 0, *, check: bool = True):
        letters = tuple((int(i), int(j), int(e)) for i, j, e in letters)
        if check:
            for i, j, e in letters:
                if i == j or not (1 <= i <= n and 1 <= j <= n) or e not in (1, -1):
                    raise ValueError(f"bad KB letter {(i, j, e)} for n = {n}")
        self.letters = free_reduce(letters)
        self.n = n

    @classmethod
    def delta(cls, i: int, j: int, n: int, e: int = 1) -> "KBWord":
        return cls([(i, j, e)], n)

    @classmethod
    def parse(cls, text: str, n: int) -> "KBWord":
        letters = []
        for tok in _tokens(text):
            m = _KB_TOKEN.fullmatch(tok)
            if not m:
                raise WordParseError(f"bad KB token {tok!r}")
            letters.append((int(m[1]), int(m[2]), -1 if m[3] else 1))
        try:
            return cls(letters, n)
        except ValueError as exc:
            raise WordParseError(str(exc)) from exc

    def _check(self, other: "KBWord") -> None:
        if self.n != other.n:
            raise DegreeError(f"KB words on {self.n} and {other.n} strands")

    def __mul__(self, other: "KBWord") -> "KBWord":
        self._check(other)
        return KBWord(self.letters + other.letters, self.n, check=False)

    def inverse(self) -> "KBWord":
        return KBWord(invert_letters(self.letters), self.n, check=False)

    def act(self, w: Permutation) -> "KBWord":
        """Apply w letterwise: delta_{i,j} -> delta_{w(i), w(j)}."""
        if w.n != self.n:
            raise DegreeError(f"permutation of degree {w.n} acting on KB_{self.n}")
        return KBWord(((w(i), w(j), e) for i, j, e in self.letters), self.n, check=False)

    def support(self) -> frozenset:
        return frozenset((i, j) for i, j, _ in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KBWord):
            return NotImplemented
        return self.n == other.n and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def __str__(self) -> str:
        return format_kb_letters(self.letters)

    def __repr__(self) -> str:
        return f"KBWord({str(self)!r}, n={self.n})"


def format_kb_letters(letters: Sequence[tuple]) -> str:
    if not letters:
        return "e"
    return " ".join(f"d{i}.{j}" + ("'" if e < 0 else "") for i, j, e in letters)


class VBWord:
    """A word in sigma_i^{+-1} and tau_i; tau exponents are always +1."""

    __slots__ = ("letters", "n")

    def __init__(self, letters: Iterable[Sequence] = (), n: int = 2):
        out = []
        for kind, i, e in letters:
            i, e = int(i), int(e)
            if kind not in ("s", "t") or not 1 <= i <= n - 1 or e not in (1, -1):
                raise ValueError(f"bad VB letter {(kind, i, e)} for n = {n}")
            out.append((kind, i, 1 if kind == "t" else e))
        self.letters = tuple(out)
        self.n = n

    @classmethod
    def parse(cls, text: str, n: int) -> "VBWord":
        letters = []
        for tok in _tokens(text):
            m = _VB_TOKEN.fullmatch(tok)
            if not m:
                raise WordParseError(f"bad VB token {tok!r}")
            letters.append((m[1], int(m[2]), -1 if m[3] else 1))
        try:
            return cls(letters, n)
        except ValueError as exc:
            raise WordParseError(str(exc)) from exc

    @classmethod
    def sigma(cls, i: int, n: int, e: int = 1) -> "VBWord":
        return cls([("s", i, e)], n)

    @classmethod
    def tau(cls, i: int, n: int) -> "VBWord":
        return cls([("t", i, 1)], n)

    def __mul__(self, other: "VBWord") -> "VBWord":
        if self.n != other.n:
            raise DegreeError(f"VB words on {self.n} and {other.n} strands")
        return VBWord(self.letters + other.letters, self.n)

    def inverse(self) -> "VBWord":
        return VBWord(((k, i, -e) for k, i, e in reversed(self.letters)), self.n)

    def reduced(self) -> "VBWord":
        """Free reduction, also cancelling tau_i tau_i."""
        out: list[tuple] = []
        for x in self.letters:
            if out and out[-1][:2] == x[:2] and (x[0] == "t" or out[-1][2] == -x[2]):
                out.pop()
            else:
                out.append(x)
        return VBWord(out, self.n)

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VBWord):
            return NotImplemented
        return self.n == other.n and self.letters == other.letters

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"{k}{i}" + ("'" if e < 0 else "") for k, i, e in self.letters)

    def __repr__(self) -> str:
        return f"VBWord({str(self)!r}, n={self.n})"


def parse_sym_word(text: str, n: int) -> list[int]:
    """Parse a word in the Coxeter generators s_i of S_n (tokens ``s<i>``)."""
    out = []
    for tok in _tokens(text):
        m = re.fullmatch(r"s(\d+)(')?", tok)
        if not m or not 1 <= int(m[1]) <= n - 1:
            raise WordParseError(f"bad S_{n} token {tok!r}")
        out.append(int(m[1]))
    return out
