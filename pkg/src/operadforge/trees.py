"""Level trees, tree morphisms, fibers, prunisation, and two-leaf trees.

A depth-d level tree is a chain of maps of finite (possibly empty)
ordinals; we store, for each level k = 1..d, the sequence of fiber
sizes over the level-(k-1) vertices.  Vertices are addressed as
(level, index) with indices in canonical left-to-right order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class LevelTree:
    depth: int
    fibers: tuple[tuple[int, ...], ...]  # fibers[k-1][v] = size of fiber over vertex v at level k-1

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("depth must be >= 1")
        if len(self.fibers) != self.depth:
            raise ValueError("need one fiber row per level 1..depth")
        if len(self.fibers[0]) != 1:
            raise ValueError("level 1 has exactly one fiber (over the root)")
        for k in range(1, self.depth):
            if len(self.fibers[k]) != sum(self.fibers[k - 1]):
                raise ValueError(
                    "level %d: %d fiber entries for %d vertices"
                    % (k + 1, len(self.fibers[k]), sum(self.fibers[k - 1]))
                )
        if any(n < 0 for row in self.fibers for n in row):
            raise ValueError("fiber sizes must be nonnegative")

    def size(self, level: int) -> int:
        """Number of vertices at a level (0 = root)."""
        if level == 0:
            return 1
        return sum(self.fibers[level - 1])

    def parent(self, level: int, v: int) -> int:
        """Index of the parent of vertex v at level >= 1."""
        if not (1 <= level <= self.depth and 0 <= v < self.size(level)):
            raise ValueError("no vertex (%d, %d)" % (level, v))
        acc = 0
        for p, n in enumerate(self.fibers[level - 1]):
            acc += n
            if v < acc:
                return p
        raise AssertionError

    def children(self, level: int, v: int) -> range:
        """Indices at level+1 of the children of vertex v at level."""
        row = self.fibers[level]
        start = sum(row[:v])
        return range(start, start + row[v])

    def ancestor(self, level: int, v: int, up_to: int) -> int:
        """Index of the ancestor of (level, v) at level up_to <= level."""
        while level > up_to:
            v = self.parent(level, v)
            level -= 1
        return v

    def leaves(self) -> list[tuple[int, int]]:
        """All leaves: top-level vertices plus empty-fiber vertices below."""
        out = [(self.depth, v) for v in range(self.size(self.depth))]
        for k in range(self.depth):
            out.extend(
                (k, v) for v in range(self.size(k)) if k < self.depth and self.fibers[k][v] == 0
            )
        out.sort()
        return out

    def is_pruned(self) -> bool:
        """All leaves at the top level: every fiber below is nonempty."""
        return all(n >= 1 for row in self.fibers for n in row)

    def is_degenerate(self) -> bool:
        return self.fibers[0][0] == 0

    def num_leaves(self) -> int:
        """Top-level leaf count (the |T| of a pruned tree)."""
        return self.size(self.depth)

    def to_nested(self):
        """Recursive form: depth-1 subtree -> [fiber size]; deeper
        subtree -> list of child subtree forms; empty root fiber -> []."""

        def form(level: int, v: int):
            if self.depth - level == 1:
                return [self.fibers[level][v]]
            return [form(level + 1, c) for c in self.children(level, v)]

        if self.is_degenerate() and self.depth > 1:
            return []
        return form(0, 0)

    def to_json(self) -> dict:
        return {"d": self.depth, "tree": self.to_nested()}

    @staticmethod
    def from_nested(d: int, nested) -> "LevelTree":
        rows: list[list[int]] = [[] for _ in range(d)]

        def walk(level: int, node):
            if d - level == 1:
                if not (isinstance(node, list) and len(node) == 1 and isinstance(node[0], int)):
                    raise ValueError("depth-1 subtree must be a singleton [n]")
                rows[level].append(node[0])
                return
            if not isinstance(node, list):
                raise ValueError("expected a list at level %d" % level)
            rows[level].append(len(node))
            for child in node:
                walk(level + 1, child)

        if nested == [] and d > 1:
            rows[0].append(0)
        else:
            # the root row records how many level-1 vertices exist
            if d == 1:
                walk(0, nested)
            else:
                rows[0].append(len(nested))
                for child in nested:
                    walk(1, child)
        return LevelTree(d, tuple(tuple(r) for r in rows))


def subtree(T: LevelTree, level: int, v: int) -> LevelTree:
    """The depth-(d-level) tree hanging off vertex (level, v)."""
    if not (0 <= level < T.depth):
        raise ValueError("no proper subtree at level %d" % level)
    if level == 0:
        if v != 0:
            raise ValueError("no vertex (0, %d)" % v)
        return T
    rows = []
    frontier = [v]
    for k in range(level, T.depth):
        row = tuple(T.fibers[k][w] for w in frontier)
        rows.append(row)
        frontier = [c for w in frontier for c in T.children(k, w)]
    return LevelTree(T.depth - level, tuple(rows))


def linear_tree(d: int) -> LevelTree:
    """The one-leaf tree U_d."""
    return LevelTree(d, ((1,),) * d)


def degenerate_tree(d: int) -> LevelTree:
    return LevelTree(d, ((0,),) + ((),) * (d - 1))


def leaf_order(T: LevelTree) -> dict[frozenset[int], int]:
    """For a pruned tree: maps each unordered pair of top-level leaves
    (0-based indices) to the level where their ancestor chains meet."""
    if not T.is_pruned():
        raise ValueError("not pruned")
    n = T.num_leaves()
    out = {}
    for x, y in itertools.combinations(range(n), 2):
        level = T.depth
        while level > 0 and T.ancestor(T.depth, x, level) != T.ancestor(T.depth, y, level):
            level -= 1
        out[frozenset((x, y))] = level
    return out


def prunisation(T: LevelTree) -> LevelTree:
    """The subtree generated by the top-level leaves."""
    d = T.depth
    if T.size(d) == 0:
        return degenerate_tree(d)
    keep = [set() for _ in range(d + 1)]
    keep[d] = set(range(T.size(d)))
    for k in range(d, 0, -1):
        keep[k - 1] = {T.parent(k, v) for v in keep[k]}
    rows = []
    for k in range(1, d + 1):
        row = []
        for v in sorted(keep[k - 1]):
            row.append(sum(1 for c in T.children(k - 1, v) if c in keep[k]))
        rows.append(tuple(row))
    return LevelTree(d, tuple(rows))


@dataclass(frozen=True)
class TreeMorphism:
    source: LevelTree
    target: LevelTree
    maps: tuple[tuple[int, ...], ...]  # maps[k] on level-k vertices, k = 0..d

    def __post_init__(self):
        S, T = self.source, self.target
        if S.depth != T.depth:
            raise ValueError("depth mismatch")
        d = S.depth
        if len(self.maps) != d + 1:
            raise ValueError("need one map per level 0..%d" % d)
        if self.maps[0] != (0,):
            raise ValueError("root must map to root")
        for k in range(d + 1):
            if len(self.maps[k]) != S.size(k):
                raise ValueError("level %d map has wrong domain size" % k)
            if any(not (0 <= w < T.size(k)) for w in self.maps[k]):
                raise ValueError("level %d map leaves the codomain" % k)
        for k in range(1, d + 1):
            for v in range(S.size(k)):
                if T.parent(k, self.maps[k][v]) != self.maps[k - 1][S.parent(k, v)]:
                    raise ValueError("level %d: does not commute with structure maps" % k)
        # order-preserving on each fiber
        for k in range(1, d + 1):
            for a in range(S.size(k - 1)):
                imgs = [self.maps[k][c] for c in S.children(k - 1, a)]
                if any(x > y for x, y in zip(imgs, imgs[1:])):
                    raise ValueError("level %d: not monotone on fiber of vertex %d" % (k, a))

    def apply(self, level: int, v: int) -> int:
        return self.maps[level][v]


def identity_morphism(T: LevelTree) -> TreeMorphism:
    return TreeMorphism(T, T, tuple(tuple(range(T.size(k))) for k in range(T.depth + 1)))


def compose_morphisms(psi: TreeMorphism, phi: TreeMorphism) -> TreeMorphism:
    if phi.target != psi.source:
        raise ValueError("morphisms not composable")
    maps = tuple(
        tuple(psi.maps[k][w] for w in phi.maps[k]) for k in range(phi.source.depth + 1)
    )
    return TreeMorphism(phi.source, psi.target, maps)


def fiber(phi: TreeMorphism, a: tuple[int, int]) -> LevelTree:
    """Preimage tree of the ancestor chain of a leaf of the target."""
    level_a, idx_a = a
    T = phi.target
    if (level_a, idx_a) not in T.leaves():
        raise ValueError("(%d, %d) is not a leaf of the target" % a)
    d = T.depth
    chain = {k: T.ancestor(level_a, idx_a, k) for k in range(level_a + 1)}
    S = phi.source
    keep = []
    for k in range(d + 1):
        if k <= level_a:
            keep.append([v for v in range(S.size(k)) if phi.maps[k][v] == chain[k]])
        else:
            keep.append([])
    index = [{v: i for i, v in enumerate(row)} for row in keep]
    rows = []
    for k in range(1, d + 1):
        row = []
        for v in keep[k - 1]:
            row.append(sum(1 for c in S.children(k - 1, v) if c in index[k]))
        rows.append(tuple(row))
    if not keep[1]:
        return degenerate_tree(d)
    return LevelTree(d, tuple(rows))


def surjective_morphisms(S: LevelTree, T: LevelTree) -> list[TreeMorphism]:
    """All level-wise surjective morphisms S -> T (brute force)."""
    if S.depth != T.depth:
        return []
    d = S.depth

    def level_maps(k: int, lower: tuple[int, ...]):
        # enumerate fiber-wise monotone surjections compatible with `lower`
        out = [[]]
        for a in range(S.size(k - 1)):
            ta = lower[a]
            targets = list(T.children(k - 1, ta))
            fiber_src = list(S.children(k - 1, a))
            choices = []
            for combo in itertools.combinations_with_replacement(targets, len(fiber_src)):
                choices.append(list(combo))
            out = [prev + c for prev in out for c in choices]
        return [tuple(m) for m in out]

    results = []
    partials = [((0,),)]
    for k in range(1, d + 1):
        new_partials = []
        for maps in partials:
            for mk in level_maps(k, maps[-1]):
                new_partials.append(maps + (mk,))
        partials = new_partials
    for maps in partials:
        try:
            m = TreeMorphism(S, T, maps)
        except ValueError:
            continue
        if all(set(maps[k]) == set(range(T.size(k))) for k in range(d + 1)):
            results.append(m)
    return results


def quasi_bijection_exists(n: int, a: int, src_numbering, b: int, tgt_numbering) -> bool:
    """Order on two-leaf trees: equal numbering needs a <= b, differing
    numbering needs a < b."""
    if not (0 <= a <= n - 1 and 0 <= b <= n - 1):
        raise ValueError("meeting levels must lie in 0..n-1")
    same = _norm_numbering(src_numbering) == _norm_numbering(tgt_numbering)
    return (same and a <= b) or (not same and a < b)


def _norm_numbering(num):
    if num in ("id", (1, 2)):
        return (1, 2)
    if num in ("swap", (2, 1)):
        return (2, 1)
    raise ValueError("numbering must be 'id'/'swap' or a 2-permutation")


@dataclass(frozen=True)
class TwoLeafTree:
    """The pruned depth-n tree T^n_a with two leaves meeting at level a,
    carrying a leaf numbering."""

    n: int
    a: int
    numbering: tuple[int, ...] = (1, 2)

    def __post_init__(self):
        if not (0 <= self.a <= self.n - 1):
            raise ValueError("meeting level must lie in 0..n-1")
        if self.numbering not in ((1, 2), (2, 1)):
            raise ValueError("numbering must be a 2-permutation")

    def tree(self) -> LevelTree:
        rows = []
        for k in range(1, self.n + 1):
            if k <= self.a:
                rows.append((1,) * self.tree_width(k - 1))
            elif k == self.a + 1:
                rows.append((2,))
            else:
                rows.append((1, 1))
        return LevelTree(self.n, tuple(rows))

    def tree_width(self, level: int) -> int:
        return 1 if level <= self.a else 2
