"""Label systems, domination checks, canonical-label downsets and
covers, and assembly of the product poset attached to a pruned tree."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .poset_topology import FinitePoset
from .signatures import TruncatedSignature, enumerate_downset, meet, sig_leq
from .trees import LevelTree, leaf_order
from .vdgen import generate_V, generate_tilde, removal_meet


@dataclass(frozen=True)
class LabelSystem:
    d: int
    labels: tuple[tuple[TruncatedSignature, ...], ...]  # index = level 0..d

    def __post_init__(self):
        if len(self.labels) != self.d + 1:
            raise ValueError("need label sets for levels 0..d")
        for c, lam in enumerate(self.labels):
            for s in lam:
                if s.d != self.d:
                    raise ValueError("level %d label %s has wrong ambient depth" % (c, s))

    def at(self, c: int) -> tuple[TruncatedSignature, ...]:
        return self.labels[c]

    def replace(self, c: int, labels) -> "LabelSystem":
        new = list(self.labels)
        new[c] = tuple(labels)
        return LabelSystem(self.d, tuple(new))


def system(d: int) -> LabelSystem:
    """The built-in system: level 0 carries the canonical list, level c
    the tilde list for d-c, and the top level the minimal label."""
    if d < 1:
        raise ValueError("d must be >= 1")
    labels = [tuple(generate_V(d).elements)]
    for c in range(1, d):
        labels.append(tuple(generate_tilde(d - c, d).elements))
    labels.append((TruncatedSignature(d, ("12",)),))
    return LabelSystem(d, tuple(labels))


@dataclass(frozen=True)
class Conj1Witness:
    a: int
    b: int
    twisted: bool
    label: TruncatedSignature

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "b": self.b,
            "twisted": self.twisted,
            "label": self.label.to_json(),
            "required": (self.label.swap() if self.twisted else self.label).to_json(),
        }


def _pair_ok(sys: LabelSystem, a: int, b: int, twisted: bool):
    """Every level-b label (swapped if twisted) must be dominated by
    some level-a label.  Returns the first failing label or None."""
    for lam in sys.at(b):
        needed = lam.swap() if twisted else lam
        if not any(sig_leq(needed, lam2) for lam2 in sys.at(a)):
            return lam
    return None


def check_conjecture1(sys: LabelSystem):
    """Domination condition over all level pairs.  Returns None on pass
    or the lexicographically first Conj1Witness."""
    for a in range(sys.d + 1):
        for b in range(a, sys.d + 1):
            for twisted in (False, True):
                if twisted and a == b:
                    continue
                bad = _pair_ok(sys, a, b, twisted)
                if bad is not None:
                    return Conj1Witness(a, b, twisted, bad)
    return None


def check_conjecture1_reduced(sys: LabelSystem):
    """The (0,1)-pair check alone (plus reflexive sanity); used to
    confirm the full scan agrees with the two-map reduction for the
    built-in systems."""
    for twisted in (False, True):
        bad = _pair_ok(sys, 0, 1, twisted)
        if bad is not None:
            return Conj1Witness(0, 1, twisted, bad)
    return None


def downset(labels) -> FinitePoset:
    elements = enumerate_downset(labels)
    return FinitePoset(elements, sig_leq)


@dataclass(frozen=True)
class Conj2Witness:
    alpha: TruncatedSignature
    membership: tuple[int, ...]

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "membership": list(self.membership)}


def membership_sets(d: int) -> dict[TruncatedSignature, tuple[int, ...]]:
    """For each element of the full downset, the indices (0-based, in
    canonical order) of the canonical labels dominating it."""
    V = generate_V(d).elements
    P = enumerate_downset(V)
    return {
        alpha: tuple(i for i, omega in enumerate(V) if sig_leq(alpha, omega)) for alpha in P
    }


def check_conjecture2(d: int):
    """Interval property: each downset element's membership set must be
    contiguous in the canonical order.  None on pass, else a witness."""
    for alpha, mem in membership_sets(d).items():
        if mem[-1] - mem[0] + 1 != len(mem):
            return Conj2Witness(alpha, mem)
    return None


@dataclass
class CoverReport:
    d: int
    union_ok: bool
    maxima_ok: bool
    maxima: list[TruncatedSignature]
    intersection_maxima: list[TruncatedSignature]
    recipe_ok: bool
    interval_ok: bool

    def passed(self) -> bool:
        return self.union_ok and self.maxima_ok and self.recipe_ok and self.interval_ok

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "union_ok": self.union_ok,
            "maxima_ok": self.maxima_ok,
            "maxima": [s.text() for s in self.maxima],
            "intersection_maxima": [s.text() for s in self.intersection_maxima],
            "recipe_ok": self.recipe_ok,
            "interval_ok": self.interval_ok,
            "pass": self.passed(),
        }


def check_cover(d: int) -> CoverReport:
    """Set-level cover of the full downset by the downsets of the
    canonical labels, with pairwise intersections of consecutive pieces
    having the expected maxima."""
    seq = generate_V(d)
    V = seq.elements
    P = enumerate_downset(V)
    pieces = [enumerate_downset([omega]) for omega in V]
    union = set().union(*map(set, pieces))
    union_ok = union == set(P)
    maxima_ok = True
    for omega, piece in zip(V, pieces):
        if not all(sig_leq(x, omega) for x in piece) or omega not in piece:
            maxima_ok = False
    inter_maxima = []
    recipe_ok = True
    for i in range(len(V) - 1):
        inter = [x for x in pieces[i] if sig_leq(x, V[i + 1])]
        maxima = [x for x in inter if all(sig_leq(y, x) for y in inter)]
        if len(maxima) != 1:
            recipe_ok = False
            continue
        inter_maxima.append(maxima[0])
        brute = meet(V[i], V[i + 1])
        expected = removal_meet(V[i], seq.moves[i][0])
        if brute != maxima[0] or expected != maxima[0]:
            recipe_ok = False
    interval_ok = check_conjecture2(d) is None
    return CoverReport(d, union_ok, maxima_ok, list(V), inter_maxima, recipe_ok, interval_ok)


class ProductPoset:
    """Lazy product of finite posets: elements are index tuples, the
    relation is componentwise; materialized only under a size cap."""

    def __init__(self, factors: list[FinitePoset]):
        self.factors = factors

    @property
    def size(self) -> int:
        n = 1
        for f in self.factors:
            n *= len(f)
        return n

    def leq(self, x: tuple, y: tuple) -> bool:
        return all(f.leq(a, b) for f, a, b in zip(self.factors, x, y))

    def elements(self):
        return itertools.product(*(f.elements for f in self.factors))

    def to_finite_poset(self, cap: int = 10**6) -> FinitePoset:
        if self.size > cap:
            raise ValueError("product has %d elements, over the cap %d" % (self.size, cap))
        return FinitePoset(list(self.elements()), self.leq)


def poset_for_tree(sys: LabelSystem, T: LevelTree, cap: int = 10**6):
    """Product over leaf pairs (meeting at level c) of the downsets of
    the level-c labels.  A 2-leaf tree returns the bare downset; other
    trees return a FinitePoset on index tuples, or a lazy ProductPoset
    above the cap."""
    if T.depth != sys.d + 1:
        raise ValueError("tree depth must be %d" % (sys.d + 1))
    if not T.is_pruned():
        raise ValueError("not pruned")
    pairs = sorted(leaf_order(T).items(), key=lambda kv: tuple(sorted(kv[0])))
    if not pairs:
        return FinitePoset([()], lambda x, y: True)
    if len(pairs) == 1:
        return downset(sys.at(pairs[0][1]))
    factors = [downset(sys.at(c)) for _, c in pairs]
    prod = ProductPoset(factors)
    if prod.size <= cap:
        return prod.to_finite_poset(cap)
    return prod
