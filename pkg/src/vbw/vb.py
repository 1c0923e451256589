"""Arithmetic in VB_n through the decomposition VB_n = KB_n x| S_n.

An element is a pair (a, w) standing for a * iota(w), with a in KB_n and
w in S_n; multiplication is (a, u)(b, v) = (a u(b), u v) where u acts on
KB_n by permuting the indices of the deltas.
"""

from __future__ import annotations

from .perm import DegreeError, Permutation
from .words import KBWord, VBWord


def expand_delta(n: int, i: int, j: int) -> VBWord:
    """The defining VB_n word of delta_{i,j}."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"delta_{i},{j} is not defined for n = {n}")
    if i < j:
        prefix = [("t", k, 1) for k in range(i, j - 1)]
        core = [("s", j - 1, 1)]
    else:
        i, j = j, i
        prefix = [("t", k, 1) for k in range(i, j)]
        core = [("s", j - 1, 1)]
    return VBWord(prefix + core + prefix[::-1], n)


def perm_act_kb(w: Permutation, a: KBWord) -> KBWord:
    return a.act(w)


class SemidirectElement:
    """The element kb * iota(perm) of VB_n."""

    __slots__ = ("kb", "perm")

    def __init__(self, kb: KBWord, perm: Permutation):
        if kb.n != perm.n:
            raise DegreeError(f"KB part on {kb.n} strands, permutation of degree {perm.n}")
        self.kb = kb
        self.perm = perm

    @property
    def n(self) -> int:
        return self.perm.n

    @classmethod
    def identity(cls, n: int) -> "SemidirectElement":
        return cls(KBWord((), n), Permutation.identity(n))

    @classmethod
    def tau(cls, i: int, n: int) -> "SemidirectElement":
        return cls(KBWord((), n), Permutation.simple(i, n))

    @classmethod
    def sigma(cls, i: int, n: int, e: int = 1) -> "SemidirectElement":
        return cls(KBWord([(i, i + 1, e)], n), Permutation.identity(n))

    @classmethod
    def from_kb(cls, a: KBWord) -> "SemidirectElement":
        return cls(a, Permutation.identity(a.n))

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return sd_multiply(self, other)

    def inverse(self) -> "SemidirectElement":
        return sd_inverse(self)

    def __eq__(self, other: object) -> bool:
        # syntactic: free-reduced KB part and permutation
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return self.kb == other.kb and self.perm == other.perm

    def __hash__(self) -> int:
        return hash((self.kb, self.perm))

    def to_json(self) -> dict:
        return {"kb": str(self.kb), "perm": self.perm.to_json()}

    def __repr__(self) -> str:
        return f"SemidirectElement(kb={str(self.kb)!r}, perm={self.perm})"


def sd_multiply(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    if x.n != y.n:
        raise DegreeError(f"VB elements on {x.n} and {y.n} strands")
    return SemidirectElement(x.kb * y.kb.act(x.perm), x.perm * y.perm)


def sd_inverse(x: SemidirectElement) -> SemidirectElement:
    uinv = x.perm.inverse()
    return SemidirectElement(x.kb.inverse().act(uinv), uinv)


def to_semidirect(w: VBWord) -> SemidirectElement:
    """Fold a VB word left to right into its (KB word, permutation) form."""
    n = w.n
    letters: list[tuple] = []
    perm = list(range(1, n + 1))
    for kind, i, e in w.letters:
        if kind == "t":
            # perm <- perm * s_i
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        else:
            letters.append((perm[i - 1], perm[i], e))
    return SemidirectElement(KBWord(letters, n, check=False), Permutation(perm, n))


def iota_word(w: Permutation) -> VBWord:
    """A reduced tau-word for iota(w)."""
    return VBWord([("t", i, 1) for i in w.reduced_word()], w.n)


def kb_to_vb(a: KBWord) -> VBWord:
    out = VBWord((), a.n)
    for i, j, e in a.letters:
        d = expand_delta(a.n, i, j)
        out = out * (d if e > 0 else d.inverse())
    return out


def from_semidirect(x: SemidirectElement) -> VBWord:
    return kb_to_vb(x.kb) * iota_word(x.perm)


def pi_K(w: VBWord) -> Permutation:
    """sigma_i -> 1, tau_i -> s_i."""
    return to_semidirect(w).perm


def pi_P(w: VBWord) -> Permutation:
    """sigma_i, tau_i -> s_i."""
    out = Permutation.identity(w.n)
    for _, i, _ in w.letters:
        out = out * Permutation.simple(i, w.n)
    return out


def kb_transposition_image(a: KBWord) -> Permutation:
    """Letterwise delta_{i,j}^{+-1} -> (i, j); the restriction of pi_P to KB_n."""
    out = Permutation.identity(a.n)
    for i, j, _ in a.letters:
        out = out * Permutation.transposition(i, j, a.n)
    return out


def sd_pi_P(x: SemidirectElement) -> Permutation:
    return kb_transposition_image(x.kb) * x.perm


def vb_abelianize(w: VBWord) -> tuple[int, int]:
    """Image in Z x Z/2: (sum of sigma exponents, parity of the tau count)."""
    sig = sum(e for k, _, e in w.letters if k == "s")
    taus = sum(1 for k, _, _ in w.letters if k == "t")
    return sig, taus % 2


def kb_abelian_classes(n: int) -> dict[tuple[int, int], int]:
    """Class index of each delta_{i,j} in the abelianization of KB_n.

    The abelianized braid relation identifies delta_{i,j} with delta_{j,k}
    for i, j, k distinct; commutation relations identify nothing.
    """
    gens = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    parent = {g: g for g in gens}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for i, j in gens:
        for k in range(1, n + 1):
            if k not in (i, j):
                a, b = find((i, j)), find((j, k))
                if a != b:
                    parent[max(a, b)] = min(a, b)
    roots = sorted({find(g) for g in gens})
    index = {r: c for c, r in enumerate(roots)}
    return {g: index[find(g)] for g in gens}


def kb_abelianize(a: KBWord) -> tuple[int, ...]:
    """Exponent sums per abelianization class of the delta generators."""
    classes = kb_abelian_classes(a.n)
    out = [0] * (max(classes.values()) + 1 if classes else 0)
    for i, j, e in a.letters:
        out[classes[(i, j)]] += e
    return tuple(out)


def vb_relators(n: int) -> list[tuple[str, VBWord]]:
    """Named defining relators (lhs * rhs^-1) of the standard VB_n presentation."""
    out = []

    def w(*letters):
        return VBWord(letters, n)

    s = lambda i, e=1: ("s", i, e)
    t = lambda i: ("t", i, 1)
    gens = range(1, n)
    for i in gens:
        out.append((f"t{i}^2", w(t(i), t(i))))
    for i in gens:
        for j in gens:
            if abs(i - j) >= 2:
                if i < j:
                    out.append((f"s{i} s{j} = s{j} s{i}", w(s(i), s(j), s(i, -1), s(j, -1))))
                    out.append((f"t{i} t{j} = t{j} t{i}", w(t(i), t(j), t(i), t(j))))
                out.append((f"t{i} s{j} = s{j} t{i}", w(t(i), s(j), t(i), s(j, -1))))
            elif abs(i - j) == 1:
                if i < j:
                    out.append((f"s{i} s{j} s{i} = s{j} s{i} s{j}",
                                w(s(i), s(j), s(i), s(j, -1), s(i, -1), s(j, -1))))
                    out.append((f"t{i} t{j} t{i} = t{j} t{i} t{j}",
                                w(t(i), t(j), t(i), t(j), t(i), t(j))))
                out.append((f"t{i} t{j} s{i} = s{j} t{i} t{j}",
                            w(t(i), t(j), s(i), t(j), t(i), s(j, -1))))
    return out


def sym_relators(n: int) -> list[tuple[str, list[int]]]:
    """Coxeter relators of S_n as index words in the s_i."""
    out = []
    for i in range(1, n):
        out.append((f"s{i}^2", [i, i]))
        for j in range(i + 1, n):
            if j - i == 1:
                out.append((f"s{i} s{j} s{i} = s{j} s{i} s{j}", [i, j, i, j, i, j]))
            else:
                out.append((f"s{i} s{j} = s{j} s{i}", [i, j, i, j]))
    return out
