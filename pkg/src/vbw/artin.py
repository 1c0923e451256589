"""Coxeter matrices over the delta generators of KB_n and parabolic bookkeeping.

Generators are ordered pairs ``(i, j)`` standing for delta_{i,j}.  Two
generators have m = 2 when their index pairs are disjoint, m = 3 when they
chain head to tail as (i, j), (j, k) with i, j, k distinct, and m = inf
otherwise.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

from .perm import Permutation

INF = math.inf

Pair = tuple  # (i, j)


def kb_m(s: Pair, t: Pair) -> float:
    """Coxeter matrix entry m_{s,t} for delta generators s, t."""
    if s == t:
        return 1
    (i, j), (k, l) = s, t
    if len({i, j, k, l}) == 4:
        return 2
    if (j == k and i != l) or (l == i and k != j):
        return 3
    return INF


def pi_word(s, t, m: int) -> list:
    """The alternating word s t s ... of length m."""
    return [s if r % 2 == 0 else t for r in range(m)]


class CoxeterMatrix:
    """A Coxeter matrix with entries in {1, 2, 3, ..., inf} over hashable labels."""

    def __init__(self, labels: Iterable, entry):
        self.labels = sorted(labels)
        self._entry = entry
        for a in self.labels:
            for b in self.labels:
                v = entry(a, b)
                if (a == b) != (v == 1) or v != entry(b, a) or (a != b and v != INF and v < 2):
                    raise ValueError(f"invalid Coxeter entry m({a}, {b}) = {v}")

    def __call__(self, s, t) -> float:
        return self._entry(s, t)

    def submatrix(self, labels: Iterable) -> "CoxeterMatrix":
        labels = set(labels)
        missing = labels - set(self.labels)
        if missing:
            raise ValueError(f"labels {sorted(missing)} not in matrix")
        return CoxeterMatrix(labels, self._entry)

    def as_table(self) -> list[list[float]]:
        return [[self(a, b) for b in self.labels] for a in self.labels]

    def relators(self) -> list[tuple[list, list]]:
        """Pairs (Pi(s,t,m), Pi(t,s,m)) for s < t with finite m."""
        out = []
        for a_idx, s in enumerate(self.labels):
            for t in self.labels[a_idx + 1:]:
                m = self(s, t)
                if m != INF:
                    out.append((pi_word(s, t, int(m)), pi_word(t, s, int(m))))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoxeterMatrix):
            return NotImplemented
        return self.labels == other.labels and self.as_table() == other.as_table()


class GeneratorSubset:
    """A set X of delta generators of KB_n, stored as index pairs."""

    __slots__ = ("members", "n")

    def __init__(self, members: Iterable[Pair], n: int):
        members = frozenset((int(i), int(j)) for i, j in members)
        for i, j in members:
            if i == j or not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"delta_{i},{j} is not a generator of KB_{n}")
        self.members = members
        self.n = n

    @classmethod
    def full(cls, n: int) -> "GeneratorSubset":
        return cls(((i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j), n)

    @classmethod
    def tail(cls, n: int, k: int) -> "GeneratorSubset":
        """S_k = {delta_{i,j} : k <= i != j <= n}."""
        return cls(((i, j) for i in range(k, n + 1) for j in range(k, n + 1) if i != j), n)

    @classmethod
    def avoiding(cls, n: int, indices: Iterable[int]) -> "GeneratorSubset":
        """All delta_{i,j} with i, j outside ``indices`` (U_k for {k, k+1})."""
        bad = set(indices)
        return cls((p for p in cls.full(n).members if bad.isdisjoint(p)), n)

    def act(self, w: Permutation) -> "GeneratorSubset":
        return GeneratorSubset(((w(i), w(j)) for i, j in self.members), self.n)

    def is_invariant(self, w: Permutation) -> bool:
        return self.act(w).members == self.members

    def sorted(self) -> list[Pair]:
        return sorted(self.members)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.members

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.members)

    def __or__(self, other: "GeneratorSubset") -> "GeneratorSubset":
        return GeneratorSubset(self.members | other.members, self.n)

    def __and__(self, other: "GeneratorSubset") -> "GeneratorSubset":
        return GeneratorSubset(self.members & other.members, self.n)

    def __sub__(self, other) -> "GeneratorSubset":
        other = other.members if isinstance(other, GeneratorSubset) else frozenset(other)
        return GeneratorSubset(self.members - other, self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorSubset):
            return NotImplemented
        return self.n == other.n and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        return "{" + ", ".join(f"d{i}.{j}" for i, j in self.sorted()) + "}"


def kb_coxeter_matrix(n: int, X: Iterable[Pair] | None = None) -> CoxeterMatrix:
    """The Coxeter matrix of KB_n (or of its parabolic on X)."""
    if n < 2:
        raise ValueError("KB_n needs n >= 2")
    labels = GeneratorSubset.full(n).members if X is None else GeneratorSubset(X, n).members
    return CoxeterMatrix(labels, kb_m)


def _components(X: Iterable[Pair]) -> list[list[Pair]]:
    """Connected components of the graph on X with an edge where m != inf."""
    todo = sorted(X)
    comps = []
    seen: set = set()
    for start in todo:
        if start in seen:
            continue
        comp, stack = [], [start]
        seen.add(start)
        while stack:
            s = stack.pop()
            comp.append(s)
            for t in todo:
                if t not in seen and kb_m(s, t) != INF:
                    seen.add(t)
                    stack.append(t)
        comps.append(sorted(comp))
    return comps


def infinity_split(X: GeneratorSubset):
    """Split X into (X_1, X_2, base) with only m = inf between X_1 and X_2.

    Uses connected components of the finite-m graph, so the base is empty
    and KB_n[X] is the free product of the two parabolics.  X_1 is the
    component holding the least member.  Returns None if X is connected.
    """
    if not X.members:
        raise ValueError("infinity_split needs a nonempty subset")
    comps = _components(X.members)
    if len(comps) < 2:
        return None
    first = GeneratorSubset(comps[0], X.n)
    return first, X - first, GeneratorSubset((), X.n)


def pair_split(X: GeneratorSubset, a: Pair, b: Pair):
    """KB[X] = KB[X - {b}] *_{KB[X - {a, b}]} KB[X - {a}] when m(a, b) = inf."""
    if a not in X or b not in X or kb_m(a, b) != INF:
        raise ValueError(f"{a}, {b} is not an infinity pair of {X}")
    return X - {b}, X - {a}, X - {a, b}


def fixed_generator_subset(X: GeneratorSubset, k: int) -> GeneratorSubset:
    """X intersected with U_k: the generators of KB[X]^{s_k} for s_k-invariant X."""
    n = X.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"s_{k} is not a generator of S_{n}")
    if not X.is_invariant(Permutation.simple(k, n)):
        raise ValueError(f"{X} is not invariant under s_{k}")
    return GeneratorSubset((p for p in X.members if k not in p and k + 1 not in p), n)


def is_free_of_infinity(X: Iterable[Pair]) -> bool:
    X = sorted(X)
    return all(kb_m(s, t) != INF for a, s in enumerate(X) for t in X[a + 1:])


def chain_components(X: Iterable[Pair]) -> list[tuple[str, list[Pair]]]:
    """Describe a free-of-infinity X as directed paths and directed cycles.

    Each index is the tail of at most one and the head of at most one
    member, so the members form vertex-disjoint directed paths (type A)
    and cycles of length >= 3 (affine type A~).  Members are listed in
    traversal order; cycles start at their least member.
    """
    X = sorted(X)
    if not is_free_of_infinity(X):
        raise ValueError("subset is not free of infinity")
    by_tail = {i: (i, j) for i, j in X}
    heads = {j for _, j in X}
    out = []
    used: set = set()
    for i, j in X:
        if i in heads or (i, j) in used:
            continue
        path = [(i, j)]
        while path[-1][1] in by_tail:
            path.append(by_tail[path[-1][1]])
        used.update(path)
        out.append(("path", path))
    for p in X:
        if p in used:
            continue
        cyc = [p]
        while by_tail[cyc[-1][1]] != p:
            cyc.append(by_tail[cyc[-1][1]])
        used.update(cyc)
        out.append(("cycle", cyc))
    return out


def _two_b(s: Pair, t: Pair) -> int:
    """2 B(alpha_s, alpha_t) in the Tits representation: 2, 0, -1 or -2."""
    m = kb_m(s, t)
    if m == 1:
        return 2
    if m == 2:
        return 0
    if m == 3:
        return -1
    return -2


def coset_retraction(letters, X: Iterable[Pair], H: Iterable[Pair]) -> tuple:
    """Set retraction KB[X] -> KB[H] onto a parabolic subgroup.

    Reads the word left to right while tracking the minimal representative
    y of the current right W_H-coset in the Coxeter group W[X], acting on
    roots through the (integral) Tits representation.  A letter s^e whose
    root y(alpha_s) is a simple root alpha_t with t in H contributes t^e;
    every other letter moves y to y s.  The result equals the input for
    words already in KB[H], is independent of the chosen word for a given
    element, and satisfies retract(h a) = h retract(a) for h in KB[H].
    """
    labels = sorted(X)
    index = {s: c for c, s in enumerate(labels)}
    hset = set(H)
    dim = len(labels)
    unit = {c: labels[c] for c in range(dim) if labels[c] in hset}
    two_b = [[_two_b(s, t) for t in labels] for s in labels]
    neighbours = [[c for c in range(dim) if c != r and two_b[r][c] != 0] for r in range(dim)]
    # columns of y: cols[c] = y(alpha_c)
    cols = [[1 if r == c else 0 for r in range(dim)] for c in range(dim)]
    out = []
    for i, j, e in letters:
        c = index[(i, j)]
        col = cols[c]
        nz = [r for r in range(dim) if col[r]]
        if len(nz) == 1 and col[nz[0]] == 1 and nz[0] in unit:
            t = unit[nz[0]]
            out.append((t[0], t[1], e))
            continue
        for d in neighbours[c]:
            f = two_b[c][d]
            cd = cols[d]
            cols[d] = [cd[r] - f * col[r] for r in range(dim)]
        cols[c] = [-v for v in col]
    return tuple(out)
