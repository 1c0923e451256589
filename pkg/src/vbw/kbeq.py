"""Tiered equality oracle for words in KB_n.

Every verdict is certified.  ``equal`` comes with the normal form or
reduction that proves it and ``distinct`` with a homomorphism invariant or
an exact normal form that separates the words.  ``unknown`` is returned
once the node budget runs out.

Tiers, applied to the support X of u v^-1 after free reduction:

1. invariants: the letterwise transposition image and the abelianization
2. X has no m = 3 entry: right-angled normal form (commutation piling)
3. X is free of infinity: Garside normal forms of its directed paths
   (braid groups) and directed cycles (affine type A~, embedded in a braid
   group); the single 3-labelled pair is the dihedral case
4. X contains an m = inf pair {a, b}: KB[X] = KB[X-b] *_{KB[X-a-b]} KB[X-a];
   syllables are reduced with base-membership tests decided recursively
   through the coset retraction of :mod:`vbw.artin`
5. bounded breadth-first rewriting with the defining relations
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Any

from . import garside
from .artin import INF, chain_components, coset_retraction, is_free_of_infinity, kb_m
from .perm import DegreeError
from .vb import kb_abelian_classes, kb_transposition_image
from .words import KBWord, format_kb_letters, free_reduce, invert_letters

DEFAULT_BUDGET = 10_000


def default_budget() -> int:
    return int(os.environ.get("VBW_BUDGET", DEFAULT_BUDGET))


class BudgetExhausted(Exception):
    pass


class UnknownVerdict(Exception):
    """Raised by callers that need a decisive answer and got ``unknown``."""


class Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def spend(self, k: int = 1) -> None:
        if self.spent + k > self.limit:
            raise BudgetExhausted(f"budget of {self.limit} nodes exhausted")
        self.spent += k


@dataclass
class EqVerdict:
    outcome: str  # "equal" | "distinct" | "unknown"
    tier: str = ""
    certificate: Any = None
    witness: Any = None
    budget_spent: int = 0

    @property
    def equal(self) -> bool:
        return self.outcome == "equal"

    @property
    def distinct(self) -> bool:
        return self.outcome == "distinct"

    @property
    def unknown(self) -> bool:
        return self.outcome == "unknown"

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "tier": self.tier,
            "certificate": self.certificate,
            "witness": self.witness,
            "budget_spent": self.budget_spent,
        }


def _support(letters) -> frozenset:
    return frozenset((i, j) for i, j, _ in letters)


def _commute(x, y) -> bool:
    return kb_m(x, y) == 2 or x == y


# -- tier 2 -----------------------------------------------------------------


def raag_normal_form(u: KBWord, X=None) -> KBWord:
    """Canonical word for u in the right-angled parabolic KB[X].

    Cancels x^e ... x^-e whenever everything in between commutes with x,
    then emits the lexicographically least linearization of the commutation
    class.  Requires every entry of the Coxeter matrix on X to be 2 or inf.
    """
    X = u.support() if X is None else frozenset(X)
    if not u.support() <= X:
        raise ValueError("word support is not contained in X")
    gens = sorted(X)
    for a, s in enumerate(gens):
        for t in gens[a + 1:]:
            if kb_m(s, t) == 3:
                raise ValueError(f"d{s[0]}.{s[1]} and d{t[0]}.{t[1]} braid; not right-angled")
    return KBWord(_raag_letters(u.letters), u.n, check=False)


def _raag_letters(letters) -> tuple:
    out: list[tuple] = []
    for x in letters:
        g = x[:2]
        k = len(out) - 1
        while k >= 0:
            y = out[k]
            if y[:2] == g and y[2] == -x[2]:
                del out[k]
                break
            if _commute(y[:2], g):
                k -= 1
                continue
            out.append(x)
            break
        else:
            out.append(x)
    result = []
    rest = out
    while rest:
        best = None
        for idx, x in enumerate(rest):
            if all(_commute(y[:2], x[:2]) for y in rest[:idx]):
                if best is None or x < rest[best]:
                    best = idx
        result.append(rest[best])
        rest = rest[:best] + rest[best + 1:]
    return tuple(result)


# -- tier 3 -----------------------------------------------------------------


def dihedral_normal_form(u: KBWord, pair) -> garside.GarsideForm:
    """Garside form of u in <a, b | aba = bab> for pair = (a, b) with m = 3.

    a maps to sigma_1 and b to sigma_2 in B_3.
    """
    a, b = (tuple(p) for p in pair)
    if kb_m(a, b) != 3:
        raise ValueError(f"{a}, {b} do not satisfy a braid relation")
    if not u.support() <= {a, b}:
        raise ValueError("word support is not contained in the pair")
    return garside.normal_form([(1 if (i, j) == a else 2, e) for i, j, e in u.letters], 3)


def chain_normal_form(letters) -> tuple:
    """Exact canonical form for a word with free-of-infinity support.

    The support splits into commuting directed paths and cycles; each
    component's projection gets its Garside form (paths in B_{k+1},
    cycles through the affine embedding).
    """
    X = _support(letters)
    out = []
    for kind, comp in chain_components(X):
        pos = {g: k for k, g in enumerate(comp)}
        proj = [(pos[(i, j)], e) for i, j, e in letters if (i, j) in pos]
        if kind == "path":
            nf = garside.normal_form([(k + 1, e) for k, e in proj], len(comp) + 1)
        else:
            images = garside.affine_images(len(comp))
            word = []
            for k, e in proj:
                word.extend(images[k] if e > 0 else garside.invert(images[k]))
            nf = garside.normal_form(word, len(comp) + 1)
        out.append((kind, tuple(comp), nf.key()))
    return tuple(out)


def _chain_trivial(letters) -> bool:
    return all(key[1] == 0 and not key[2] for _, _, key in chain_normal_form(letters))


# -- tier 4 -----------------------------------------------------------------


class Decider:
    """Recursive triviality test over amalgam splittings of KB parabolics."""

    def __init__(self, n: int, budget: Budget):
        self.n = n
        self.budget = budget
        self.memo: dict[tuple, bool] = {}
        classes = kb_abelian_classes(n)
        self.classes = classes
        self.nclasses = max(classes.values()) + 1 if classes else 0
        self.max_depth = 0

    def _invariants_trivial(self, w) -> bool:
        ab = [0] * self.nclasses
        for i, j, e in w:
            ab[self.classes[(i, j)]] += e
        if any(ab):
            return False
        perm = list(range(self.n + 1))
        for i, j, _ in w:
            # right-multiply by the transposition (i, j)
            perm[i], perm[j] = perm[j], perm[i]
        return perm == list(range(self.n + 1))

    def trivial(self, letters, depth: int = 0) -> bool:
        w = free_reduce(letters)
        if not w:
            return True
        if w in self.memo:
            return self.memo[w]
        self.budget.spend()
        self.max_depth = max(self.max_depth, depth)
        result = self._trivial(w, depth)
        self.memo[w] = result
        return result

    def _trivial(self, w, depth) -> bool:
        if not self._invariants_trivial(w):
            return False
        X = _support(w)
        if is_free_of_infinity(X):
            return _chain_trivial(w)
        gens = sorted(X)
        if not any(kb_m(s, t) == 3 for a, s in enumerate(gens) for t in gens[a + 1:]):
            return not _raag_letters(w)
        comps = _finite_components(gens)
        if len(comps) > 1:
            return self._free_product_trivial(w, comps, depth)
        a, b = _choose_infinity_pair(w, gens)
        return self._amalgam_trivial(w, a, b, X, depth)

    def _free_product_trivial(self, w, comps, depth) -> bool:
        comp_of = {g: c for c, comp in enumerate(comps) for g in comp}
        stack: list[list] = []  # [component, letters]
        for x in w:
            c = comp_of[x[:2]]
            if stack and stack[-1][0] == c:
                stack[-1][1] = free_reduce(stack[-1][1] + (x,))
            else:
                stack.append([c, (x,)])
            # a syllable is only tested when the next one starts
        out: list[list] = []
        for c, syl in stack:
            if out and out[-1][0] == c:
                out[-1][1] = free_reduce(out[-1][1] + syl)
            else:
                out.append([c, syl])
            while out and self.trivial(out[-1][1], depth + 1):
                out.pop()
        return not out

    def segment(self, w, a, b) -> list[list]:
        """Cut w into syllables [kind, letters]: kind 1 holds a, kind 2 holds b, 0 neither."""
        segs: list[list] = []
        cur_kind, cur = 0, []
        for x in w:
            g = x[:2]
            kind = 1 if g == a else 2 if g == b else 0
            if kind and cur_kind and kind != cur_kind:
                segs.append([cur_kind, tuple(cur)])
                cur = []
            if kind:
                cur_kind = kind
            cur.append(x)
        segs.append([cur_kind, tuple(cur)])
        return segs

    def in_base(self, letters, base, depth) -> tuple[bool, tuple]:
        """Decide whether a factor element lies in KB[base]; return its base word if so."""
        ambient = _support(letters) | base
        inv = invert_letters(letters)
        beta_inv = coset_retraction(inv, ambient, base)
        theta = free_reduce(letters + beta_inv)
        if self.trivial(theta, depth + 1):
            return True, invert_letters(beta_inv)
        return False, ()

    def _amalgam_trivial(self, w, a, b, X, depth) -> bool:
        base = X - {a, b}
        segs = self.segment(w, a, b)
        stack: list[list] = []
        prefix: tuple = ()
        for kind, syl in segs:
            if prefix:
                syl = free_reduce(prefix + syl)
                prefix = ()
            if stack and stack[-1][0] == kind:
                stack[-1][1] = free_reduce(stack[-1][1] + syl)
            else:
                stack.append([kind, syl])
            while stack:
                top_kind, top = stack[-1]
                inside, h = self.in_base(top, base, depth)
                if not inside:
                    break
                stack.pop()
                if stack:
                    stack[-1][1] = free_reduce(stack[-1][1] + h)
                else:
                    prefix = h
                    break
        if stack:
            return False
        return self.trivial(prefix, depth + 1)


def _finite_components(gens) -> list[list]:
    seen: set = set()
    comps = []
    for start in gens:
        if start in seen:
            continue
        comp, todo = [], [start]
        seen.add(start)
        while todo:
            s = todo.pop()
            comp.append(s)
            for t in gens:
                if t not in seen and kb_m(s, t) != INF:
                    seen.add(t)
                    todo.append(t)
        comps.append(comp)
    return comps


def _choose_infinity_pair(w, gens):
    count: dict = {}
    for i, j, _ in w:
        count[(i, j)] = count.get((i, j), 0) + 1
    best = None
    for p, s in enumerate(gens):
        for t in gens[p + 1:]:
            if kb_m(s, t) == INF:
                key = (count[s] + count[t], s, t)
                if best is None or key < best:
                    best = key
    _, s, t = best
    return (s, t) if count[s] <= count[t] else (t, s)


# -- tier 5 -----------------------------------------------------------------


def _rewrite_rules(X) -> list[tuple[tuple, tuple]]:
    gens = sorted(X)
    rules = []
    for p, s in enumerate(gens):
        for t in gens[p + 1:]:
            m = kb_m(s, t)
            if m == INF:
                continue
            m = int(m)
            lhs = [(*g, 1) for g in (s, t) * m][:m]
            rhs = [(*g, 1) for g in (t, s) * m][:m]
            rel = lhs + list(invert_letters(rhs))
            for r in (rel, list(invert_letters(rel))):
                for k in range(len(r)):
                    rot = r[k:] + r[:k]
                    rules.append((tuple(rot[:m]), invert_letters(rot[m:])))
    return rules


def rewrite_search(w, budget: Budget, max_extra: int = 2):
    """Breadth-first search for a relation-move path from w to the empty word.

    Moves replace a relator half by the other half and freely reduce; words
    may grow by at most ``max_extra`` letters.  Returns the path or None.
    """
    w = free_reduce(w)
    rules = _rewrite_rules(_support(w))
    limit = len(w) + max_extra
    parent = {w: None}
    queue = deque([w])
    while queue:
        cur = queue.popleft()
        if not cur:
            path = []
            while cur is not None:
                path.append(cur)
                cur = parent[cur]
            return path[::-1]
        budget.spend()
        for lhs, rhs in rules:
            k = len(lhs)
            for pos in range(len(cur) - k + 1):
                if cur[pos:pos + k] == lhs:
                    nxt = free_reduce(cur[:pos] + rhs + cur[pos + k:])
                    if len(nxt) <= limit and nxt not in parent:
                        parent[nxt] = cur
                        queue.append(nxt)
    return None


# -- the cascade ------------------------------------------------------------


def kb_equal(u: KBWord, v: KBWord, budget: int | None = None) -> EqVerdict:
    """Decide u = v in KB_n, returning a certified verdict."""
    if u.n != v.n:
        raise DegreeError(f"KB words on {u.n} and {v.n} strands")
    if budget is None:
        budget = default_budget()
    n = u.n
    w = free_reduce(u.letters + invert_letters(v.letters))
    if not w:
        return EqVerdict("equal", "free", {"method": "free reduction of u v^-1"})

    tu, tv = kb_transposition_image(u), kb_transposition_image(v)
    if tu != tv:
        return EqVerdict("distinct", "invariants", witness={
            "invariant": "transposition_image", "values": [tu.to_json(), tv.to_json()]})
    from .vb import kb_abelianize

    au, av = kb_abelianize(u), kb_abelianize(v)
    if au != av:
        return EqVerdict("distinct", "invariants", witness={
            "invariant": "kb_abelianize", "values": [list(au), list(av)]})

    X = _support(w)
    gens = sorted(X)
    has_three = any(kb_m(s, t) == 3 for p, s in enumerate(gens) for t in gens[p + 1:])
    if not has_three:
        nf = _raag_letters(w)
        if not nf:
            return EqVerdict("equal", "raag", {"method": "right-angled normal form of u v^-1 is empty"})
        return EqVerdict("distinct", "raag", witness={
            "invariant": "raag_normal_form(u v^-1)", "values": [format_kb_letters(nf), "e"]})

    if is_free_of_infinity(X):
        nf = chain_normal_form(w)
        trivial = all(key[1] == 0 and not key[2] for _, _, key in nf)
        name = "dihedral" if len(X) == 2 else "garside"
        detail = [{"kind": kind, "generators": [f"d{i}.{j}" for i, j in comp],
                   "delta_power": key[1], "factors": [list(f) for f in key[2]]}
                  for kind, comp, key in nf]
        if trivial:
            return EqVerdict("equal", name, {"method": "Garside normal form of u v^-1 is trivial",
                                             "forms": detail})
        return EqVerdict("distinct", name, witness={"invariant": "garside_normal_form(u v^-1)",
                                                    "values": [detail, "identity"]})

    bud = Budget(budget)
    decider = Decider(n, bud)
    try:
        trivial = decider.trivial(w)
    except BudgetExhausted:
        trivial = None
    except RecursionError:
        trivial = None
    if trivial is not None:
        cert = {"method": "amalgam reduction over infinity splittings",
                "nodes": bud.spent, "depth": decider.max_depth}
        if trivial:
            return EqVerdict("equal", "amalgam", cert, budget_spent=bud.spent)
        return EqVerdict("distinct", "amalgam", witness={
            "invariant": "amalgam normal form length of u v^-1", "values": [">= 1", 0],
            "nodes": bud.spent}, budget_spent=bud.spent)

    rest = Budget(max(budget - bud.spent, 0))
    try:
        path = rewrite_search(w, rest)
    except BudgetExhausted:
        path = None
    spent = bud.spent + rest.spent
    if path is not None:
        return EqVerdict("equal", "rewrite", {"method": "relation moves",
                                              "trace": [format_kb_letters(p) for p in path]},
                         budget_spent=spent)
    return EqVerdict("unknown", "rewrite", budget_spent=spent)


def kb_is_trivial(a: KBWord, budget: int | None = None) -> EqVerdict:
    return kb_equal(a, KBWord((), a.n), budget)


def require_equal(u: KBWord, v: KBWord, budget: int | None = None) -> bool:
    """True/False for equal/distinct; raises UnknownVerdict otherwise."""
    verdict = kb_equal(u, v, budget)
    if verdict.unknown:
        raise UnknownVerdict(f"could not decide {u} = {v}")
    return verdict.equal


def in_parabolic(a: KBWord, H, budget: int | None = None) -> tuple[bool, KBWord]:
    """Decide a in KB[H]; when it is, also return an equal word over H."""
    H = frozenset(tuple(p) for p in H)
    bud = Budget(default_budget() if budget is None else budget)
    dec = Decider(a.n, bud)
    try:
        inside, h = dec.in_base(a.letters, H, 0)
    except BudgetExhausted as exc:
        raise UnknownVerdict(str(exc)) from exc
    return inside, KBWord(h, a.n, check=False)


def coset_split(g: KBWord, H) -> tuple[KBWord, KBWord]:
    """(theta, beta) with g = theta beta, beta in KB[H], theta depending only on g KB[H]."""
    H = frozenset(tuple(p) for p in H)
    beta_inv = coset_retraction(g.inverse().letters, g.support() | H, H)
    theta = KBWord(g.letters + beta_inv, g.n, check=False)
    return theta, KBWord(beta_inv, g.n, check=False).inverse()
