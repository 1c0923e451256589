"""Homomorphisms from S_n and VB_n into S_m, enumerated exhaustively and classified.

Homomorphisms are tuples of generator images.  Search is backtracking with
a relator checked as soon as all of its generators have images; the first
image ranges over conjugacy class representatives only, and the survivors
are deduplicated by :func:`~vbw.perm.canonical_tuple`.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .perm import (
    Permutation,
    all_permutations,
    canonical_tuple,
    centralizer,
    conjugacy_orbit_size,
    involution_class_reps,
    nu6_images,
)


class SearchLimit(RuntimeError):
    pass


@dataclass
class FinitePresentation:
    name: str
    gen_names: list[str]
    relators: list[tuple[str, list[tuple[int, int]]]]  # words of (generator index, exponent)

    @property
    def ngens(self) -> int:
        return len(self.gen_names)

    @classmethod
    def sym(cls, n: int) -> "FinitePresentation":
        gens = [f"s{i}" for i in range(1, n)]
        rels = []
        for i in range(n - 1):
            rels.append((f"s{i + 1}^2", [(i, 1), (i, 1)]))
            for j in range(i + 1, n - 1):
                if j == i + 1:
                    rels.append((f"(s{i + 1} s{j + 1})^3", [(i, 1), (j, 1)] * 3))
                else:
                    rels.append((f"(s{i + 1} s{j + 1})^2", [(i, 1), (j, 1)] * 2))
        return cls(f"sym{n}", gens, rels)

    @classmethod
    def vb(cls, n: int) -> "FinitePresentation":
        """Generators sigma_1..sigma_{n-1} (indices 0..n-2), then tau_1..tau_{n-1}."""
        k = n - 1
        gens = [f"s{i}" for i in range(1, n)] + [f"t{i}" for i in range(1, n)]
        s = lambda i, e=1: (i - 1, e)
        t = lambda i: (k + i - 1, 1)
        rels = []
        for i in range(1, n):
            rels.append((f"t{i}^2", [t(i), t(i)]))
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) >= 2:
                    if i < j:
                        rels.append((f"[s{i},s{j}]", [s(i), s(j), s(i, -1), s(j, -1)]))
                        rels.append((f"[t{i},t{j}]", [t(i), t(j), t(i), t(j)]))
                    rels.append((f"[t{i},s{j}]", [t(i), s(j), t(i), s(j, -1)]))
                elif abs(i - j) == 1:
                    if i < j:
                        rels.append((f"s{i}s{j}s{i}=s{j}s{i}s{j}",
                                     [s(i), s(j), s(i), s(j, -1), s(i, -1), s(j, -1)]))
                        rels.append((f"(t{i}t{j})^3", [t(i), t(j)] * 3))
                    rels.append((f"t{i}t{j}s{i}=s{j}t{i}t{j}",
                                 [t(i), t(j), s(i), t(j), t(i), s(j, -1)]))
        return cls(f"vb{n}", gens, rels)

    @classmethod
    def parse_source(cls, text: str) -> "FinitePresentation":
        if text.startswith("sym"):
            return cls.sym(int(text[3:]))
        if text.startswith("vb"):
            return cls.vb(int(text[2:]))
        raise ValueError(f"unknown source group {text!r}")


def evaluate(word, images, m: int) -> Permutation:
    out = Permutation.identity(m)
    for g, e in word:
        p = images[g]
        out = out * (p if e > 0 else p.inverse())
    return out


def relator_failures(P: FinitePresentation, images, m: int) -> list[str]:
    return [name for name, w in P.relators if not evaluate(w, images, m).is_identity()]


def class_representatives(m: int) -> list[Permutation]:
    """The lex-least permutation of each cycle type in S_m."""
    seen = {}
    for p in all_permutations(m):
        seen.setdefault(p.cycle_type(), p)
    return sorted(seen.values(), key=lambda p: p.images)


def _search(P: FinitePresentation, m: int, first: Permutation, node_limit: int | None) -> list[tuple]:
    perms = all_permutations(m)
    n = P.ngens
    # relators indexed by the largest generator they mention
    by_last: dict[int, list] = {g: [] for g in range(n)}
    for _, w in P.relators:
        by_last[max(g for g, _ in w)].append(w)
    single = {g: [w for w in by_last[g] if all(x == g for x, _ in w)] for g in range(n)}
    cands = [[p for p in perms if all(evaluate(w, {g: p}, m).is_identity() for w in single[g])]
             for g in range(n)]
    images: dict[int, Permutation] = {}
    out = []
    nodes = 0

    def extend(g: int) -> None:
        nonlocal nodes
        if g == n:
            out.append(tuple(images[x] for x in range(n)))
            return
        pool = [first] if g == 0 else cands[g]
        for p in pool:
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise SearchLimit(f"more than {node_limit} search nodes")
            images[g] = p
            if all(evaluate(w, images, m).is_identity() for w in by_last[g]):
                extend(g + 1)
            del images[g]

    extend(0)
    return out


def _canon_job(args):
    P, m, first, node_limit = args
    found = _search(P, m, first, node_limit)
    return sorted({canonical_tuple(t, m) for t in found}, key=_key)


def _key(t) -> tuple:
    return tuple(p.images for p in t)


def enumerate_homs(P: FinitePresentation, m: int, jobs: int = 1,
                   node_limit: int | None = None) -> list[tuple]:
    """All homomorphisms P -> S_m up to conjugacy, as sorted canonical tuples."""
    if P.ngens == 0:
        return [()]
    args = [(P, m, rep, node_limit) for rep in class_representatives(m)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_canon_job, args))
    else:
        parts = [_canon_job(a) for a in args]
    classes = {t for part in parts for t in part}
    return sorted(classes, key=_key)


def raw_count(classes, m: int) -> int:
    return sum(conjugacy_orbit_size(t, m) for t in classes)


# -- vb sources -------------------------------------------------------------


def enumerate_vb_homs(n: int, m: int, sym_classes=None, jobs: int = 1) -> list[tuple]:
    """Homomorphisms VB_n -> S_m up to conjugacy, tau images first.

    The tau images form a homomorphism S_n -> S_m, taken up to conjugacy.
    sigma_1 must commute with tau_3 .. tau_{n-1}, and the mixed relation
    determines sigma_{i+1} from sigma_i.  Every candidate is checked against
    all relators.
    """
    P = FinitePresentation.vb(n)
    if sym_classes is None:
        sym_classes = enumerate_homs(FinitePresentation.sym(n), m, jobs)
    found = set()
    for taus in sym_classes:
        cent = centralizer(taus[2:], m)
        for s1 in cent:
            sig = [s1]
            for i in range(n - 2):
                c = taus[i] * taus[i + 1]
                sig.append(c * sig[i] * c.inverse())
            images = tuple(sig) + tuple(taus)
            if not relator_failures(P, images, m):
                found.add(canonical_tuple(images, m))
    return sorted(found, key=_key)


# -- classification ---------------------------------------------------------


def is_abelian(images) -> bool:
    return all(p * q == q * p for a, p in enumerate(images) for q in images[a + 1:])


def _sym_catalog(n: int, m: int) -> dict:
    out = {}
    if n == m:
        out["identity"] = canonical_tuple([Permutation.simple(i, n) for i in range(1, n)], m)
        if n == 6:
            out["nu6"] = canonical_tuple(nu6_images(), m)
    return out


def _vb_catalog(n: int, m: int) -> dict:
    out = {}
    if n != m:
        return out
    s = [Permutation.simple(i, n) for i in range(1, n)]
    ident = [Permutation.identity(n)] * (n - 1)
    out["piK"] = canonical_tuple(ident + s, m)
    out["piP"] = canonical_tuple(s + s, m)
    if n == 6:
        u = list(nu6_images())
        out["nu6.piK"] = canonical_tuple(ident + u, m)
        out["nu6.piP"] = canonical_tuple(u + u, m)
    return out


def _abelian_tag(images, source: str, n: int) -> str:
    if all(p.is_identity() for p in images):
        return "abelian:trivial"
    if source == "sym":
        k = images[0].cycle_type().count(2)
        return f"abelian:involution({k})"
    sig, tau = images[0], images[n - 1]
    return f"abelian:tau{_type_str(tau)},sigma{_type_str(sig)}"


def _type_str(p: Permutation) -> str:
    return "[" + ",".join(str(c) for c in p.cycle_type() if c > 1) + "]"


def tag_class(images, source: str, n: int, m: int) -> str:
    if is_abelian(images):
        return _abelian_tag(images, source, n)
    catalog = _sym_catalog(n, m) if source == "sym" else _vb_catalog(n, m)
    canon = canonical_tuple(images, m)
    for name, t in catalog.items():
        if t == canon:
            return name
    return "other"


def expected_tags(source: str, n: int, m: int) -> list[str] | None:
    """Non-Abelian tags predicted for n >= 5, n >= m; None outside that range."""
    if n < 5 or m > n or m < 2:
        return None
    if source == "sym":
        return sorted(_sym_catalog(n, m))
    return sorted(_vb_catalog(n, m))


def abelian_sym_catalog(m: int) -> list[tuple]:
    """Abelian S_n -> S_m classes: every s_i goes to one element w with w^2 = 1."""
    return [canonical_tuple((Permutation.identity(m),), m)] + [
        canonical_tuple((w,), m) for w in involution_class_reps(m)]


@dataclass
class Report:
    source: str
    target_degree: int
    classes: list = field(default_factory=list)
    raw_count: int = 0
    certified: bool = False
    catalog_match: bool | None = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "source": self.source,
            "target_degree": self.target_degree,
            "classes": self.classes,
            "raw_count": self.raw_count,
            "certified": self.certified,
            "catalog_match": self.catalog_match,
            "timing": round(self.seconds, 3),
        }

    def tags(self) -> list[str]:
        return [c["tag"] for c in self.classes]


def _abelian_key(images, kind: str, n: int, m: int) -> tuple:
    """Simultaneous conjugacy class of the distinct images of an Abelian homomorphism."""
    if kind == "sym":
        return canonical_tuple((images[0],), m)
    return canonical_tuple((images[0], images[n - 1]), m)


def _report(source: str, n: int, m: int, classes, abelian_expected, t0: float) -> Report:
    kind = "sym" if source.startswith("sym") else "vb"
    rows = [{"tag": tag_class(t, kind, n, m), "images": [p.to_json() for p in t]} for t in classes]
    rep = Report(source, m, rows, raw_count(classes, m), seconds=time.perf_counter() - t0)
    expected = expected_tags(kind, n, m)
    if expected is None:
        rep.certified = False
        return rep
    tags = rep.tags()
    nonab = sorted(t for t in tags if not t.startswith("abelian"))
    ab_keys = sorted((_abelian_key(t, kind, n, m) for t in classes if is_abelian(t)), key=_key)
    rep.catalog_match = (nonab == expected and "other" not in tags
                         and ab_keys == sorted(abelian_expected, key=_key))
    rep.certified = bool(rep.catalog_match)
    return rep


def classify_sym_to_sym(n: int, m: int, jobs: int = 1) -> Report:
    t0 = time.perf_counter()
    classes = enumerate_homs(FinitePresentation.sym(n), m, jobs)
    return _report(f"sym{n}", n, m, classes, abelian_sym_catalog(m), t0)


def abelian_vb_catalog(m: int) -> list[tuple]:
    """Abelian VB_n -> S_m classes as canonical (sigma image, tau image) pairs.

    Brute force over all pairs: tau image w1 with w1^2 = 1 and sigma image
    w2 commuting with it.
    """
    pairs = set()
    for w1 in all_permutations(m):
        if not (w1 * w1).is_identity():
            continue
        for w2 in all_permutations(m):
            if w1 * w2 == w2 * w1:
                pairs.add(canonical_tuple((w2, w1), m))
    return sorted(pairs, key=_key)


def classify_vb_to_sym(n: int, m: int, jobs: int = 1) -> Report:
    t0 = time.perf_counter()
    classes = enumerate_vb_homs(n, m, jobs=jobs)
    return _report(f"vb{n}", n, m, classes, abelian_vb_catalog(m), t0)


def classify(source: str, m: int, jobs: int = 1) -> Report:
    if source.startswith("sym"):
        return classify_sym_to_sym(int(source[3:]), m, jobs)
    if source.startswith("vb"):
        return classify_vb_to_sym(int(source[2:]), m, jobs)
    raise ValueError(f"unknown source group {source!r}")
