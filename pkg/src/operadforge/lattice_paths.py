"""Lattice paths between intervals and their generalized, tree-colored
relatives: enumeration, pairwise parameters, simplicial actions in every
direction, substitution, closure checks, matching objects, and homology
of parameter blocks.

A path from [[n+1]] to [[n_1+1]] x ... x [[n_k+1]] (funny product) is
stored as a staircase word (axis i appears n_i+1 times) plus a multiset
of n cut positions marking the images of the internal objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .poset_topology import HomologyReport, homology_from_boundaries
from .signatures import (
    ID2,
    BergerElement,
    TruncatedSignature,
    berger_leq,
    factor_leq,
)
from .trees import LevelTree, leaf_order, subtree


# ---------------------------------------------------------------- classical

@dataclass(frozen=True)
class LatticePath:
    in_degrees: tuple[int, ...]
    out_degree: int
    word: tuple[int, ...]
    cuts: tuple[int, ...]

    def __post_init__(self):
        k = len(self.in_degrees)
        if any(n < 0 for n in self.in_degrees) or self.out_degree < 0:
            raise ValueError("degrees must be nonnegative")
        counts = [0] * k
        for letter in self.word:
            if not (1 <= letter <= k):
                raise ValueError("word letter %r outside axes 1..%d" % (letter, k))
            counts[letter - 1] += 1
        if counts != [n + 1 for n in self.in_degrees]:
            raise ValueError("word content does not match in-degrees")
        if len(self.cuts) != self.out_degree:
            raise ValueError("need exactly %d cuts" % self.out_degree)
        L = len(self.word)
        if any(not (0 <= c <= L) for c in self.cuts):
            raise ValueError("cut positions must lie in 0..%d" % L)
        if tuple(sorted(self.cuts)) != self.cuts:
            raise ValueError("cuts must be sorted")

    @property
    def k(self) -> int:
        return len(self.in_degrees)

    @property
    def L(self) -> int:
        return len(self.word)

    def to_json(self) -> dict:
        return {
            "word": list(self.word),
            "cuts": list(self.cuts),
            "degrees": {"in": list(self.in_degrees), "out": self.out_degree},
        }

    @staticmethod
    def from_json(data: dict) -> "LatticePath":
        return LatticePath(
            tuple(data["degrees"]["in"]),
            data["degrees"]["out"],
            tuple(data["word"]),
            tuple(data["cuts"]),
        )


def identity_path(m: int) -> LatticePath:
    return LatticePath((m,), m, (1,) * (m + 1), tuple(range(1, m + 1)))


def shuffle_words(counts: tuple[int, ...]):
    """All words with counts[i] copies of letter i+1, lexicographic."""
    if sum(counts) == 0:
        yield ()
        return
    for i, c in enumerate(counts):
        if c:
            rest = counts[:i] + (c - 1,) + counts[i + 1:]
            for w in shuffle_words(rest):
                yield (i + 1,) + w


def enumerate_paths(in_degrees, out_degree) -> list[LatticePath]:
    in_degrees = tuple(in_degrees)
    counts = tuple(n + 1 for n in in_degrees)
    L = sum(counts)
    out = []
    for word in shuffle_words(counts):
        for cuts in itertools.combinations_with_replacement(range(L + 1), out_degree):
            out.append(LatticePath(in_degrees, out_degree, word, cuts))
    return out


def projection_pattern(word, i: int, j: int) -> str:
    """Run pattern of the projection to axes i < j, '1' for axis i."""
    out = []
    for letter in word:
        if letter == i:
            sym = "1"
        elif letter == j:
            sym = "2"
        else:
            continue
        if not out or out[-1] != sym:
            out.append(sym)
    return "".join(out)


def path_params(path: LatticePath) -> BergerElement:
    k = path.k
    first = {}
    for pos, letter in enumerate(path.word):
        first.setdefault(letter, pos)
    order = sorted(range(1, k + 1), key=lambda ax: first[ax])
    sigma = [0] * k
    for rank, ax in enumerate(order, start=1):
        sigma[ax - 1] = rank
    mu = []
    for i in range(1, k):
        for j in range(i + 1, k + 1):
            mu.append(len(projection_pattern(path.word, i, j)) - 2)
    return BergerElement(k, tuple(mu), tuple(sigma))


def block_membership(x, spec) -> bool:
    """Is the path inside the block cut out by the parameter bound?"""
    if isinstance(x, GeneralizedLatticePath):
        if not isinstance(spec, TruncatedSignature):
            raise ValueError("generalized paths take a signature bound")
        if x.arity != 2:
            raise ValueError("pairwise signature bound needs arity 2")
        return profile_leq(pair_profile(x, 1, 2), spec)
    if isinstance(spec, BergerElement):
        return berger_leq(path_params(x), spec)
    if isinstance(spec, TruncatedSignature):
        if x.k != 2:
            raise ValueError("signature bound needs arity 2")
        if spec.m != 1:
            raise ValueError("a classical path takes a single-level bound")
        return factor_leq(projection_pattern(x.word, 1, 2), spec.factors[0])
    raise ValueError("unsupported bound %r" % (spec,))


# ------------------------------------------------------- simplicial actions

def _check_ordinal_map(delta, codomain: int) -> None:
    if any(not (0 <= v <= codomain) for v in delta):
        raise ValueError("map leaves the codomain 0..%d" % codomain)
    if any(a > b for a, b in zip(delta, delta[1:])):
        raise ValueError("map is not monotone")
    if not delta:
        raise ValueError("empty domain")


def simplicial_act(path: LatticePath, direction, delta, codomain: int) -> LatticePath:
    """Apply an ordinal map delta: [len(delta)-1] -> [codomain].

    direction "out": covariant; domain degree must equal out_degree,
    the result has out degree `codomain` (cut positions are re-read off
    the dual interval map).  direction i in 1..k: contravariant;
    codomain must equal the axis degree n_i, the result has axis degree
    len(delta)-1 (axis steps are collapsed/duplicated).
    """
    delta = tuple(delta)
    _check_ordinal_map(delta, codomain)
    if direction == "out":
        n = path.out_degree
        if len(delta) - 1 != n:
            raise ValueError("domain degree %d, path has out degree %d" % (len(delta) - 1, n))
        pts = (0,) + path.cuts + (path.L,)
        new_cuts = []
        for t in range(1, codomain + 1):
            s = next((s for s in range(n + 1) if delta[s] >= t), n + 1)
            new_cuts.append(pts[s])
        return LatticePath(path.in_degrees, codomain, path.word, tuple(new_cuts))
    i = direction
    if not (1 <= i <= path.k):
        raise ValueError("no axis %r" % (i,))
    ni = path.in_degrees[i - 1]
    if codomain != ni:
        raise ValueError("codomain %d, axis %d has degree %d" % (codomain, i, ni))
    m = len(delta) - 1
    counts = [0] * (ni + 1)
    for v in delta:
        counts[v] += 1
    new_word = []
    expansion = []
    r = 0
    for letter in path.word:
        if letter != i:
            new_word.append(letter)
            expansion.append(1)
        else:
            e = counts[r]
            r += 1
            new_word.extend([i] * e)
            expansion.append(e)
    prefix = [0]
    for e in expansion:
        prefix.append(prefix[-1] + e)
    new_cuts = tuple(prefix[c] for c in path.cuts)
    new_in = path.in_degrees[:i - 1] + (m,) + path.in_degrees[i:]
    return LatticePath(new_in, path.out_degree, tuple(new_word), new_cuts)


def coface(n: int, j: int) -> tuple[int, ...]:
    """delta^j: [n-1] -> [n], skipping j."""
    return tuple(s if s < j else s + 1 for s in range(n))


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """sigma^j: [n+1] -> [n], hitting j twice."""
    return tuple(s if s <= j else s - 1 for s in range(n + 2))


# ------------------------------------------------------------- substitution

def compose_paths(outer: LatticePath, slot: int, inner: LatticePath) -> LatticePath:
    """Substitute `inner` for axis `slot` of `outer`: each step of that
    axis expands into the corresponding segment of the inner word."""
    i = slot
    if not (1 <= i <= outer.k):
        raise ValueError("no slot %d" % i)
    if outer.in_degrees[i - 1] != inner.out_degree:
        raise ValueError(
            "slot %d has color %d, inner path outputs %d"
            % (i, outer.in_degrees[i - 1], inner.out_degree)
        )
    ki = inner.k
    q = (0,) + inner.cuts + (inner.L,)
    new_word = []
    expansion = []
    r = 0
    for letter in outer.word:
        if letter < i:
            new_word.append(letter)
            expansion.append(1)
        elif letter > i:
            new_word.append(letter + ki - 1)
            expansion.append(1)
        else:
            r += 1
            seg = inner.word[q[r - 1]:q[r]]
            new_word.extend(l + i - 1 for l in seg)
            expansion.append(len(seg))
    prefix = [0]
    for e in expansion:
        prefix.append(prefix[-1] + e)
    new_cuts = tuple(prefix[c] for c in outer.cuts)
    new_in = outer.in_degrees[:i - 1] + inner.in_degrees + outer.in_degrees[i:]
    return LatticePath(new_in, outer.out_degree, tuple(new_word), new_cuts)


def relabel_axes(path: LatticePath, perm: tuple[int, ...]) -> LatticePath:
    """perm[p-1] is the new label of old axis p."""
    if sorted(perm) != list(range(1, path.k + 1)):
        raise ValueError("perm must be a permutation of 1..k")
    new_in = [0] * path.k
    for p, new in enumerate(perm, start=1):
        new_in[new - 1] = path.in_degrees[p - 1]
    word = tuple(perm[l - 1] for l in path.word)
    return LatticePath(tuple(new_in), path.out_degree, word, path.cuts)


def delete_axis(path: LatticePath, i: int) -> LatticePath:
    """Postcompose with the collapse of axis i to the unit."""
    new_word = []
    expansion = []
    for letter in path.word:
        if letter == i:
            expansion.append(0)
        else:
            new_word.append(letter - (1 if letter > i else 0))
            expansion.append(1)
    prefix = [0]
    for e in expansion:
        prefix.append(prefix[-1] + e)
    new_cuts = tuple(prefix[c] for c in path.cuts)
    new_in = path.in_degrees[:i - 1] + path.in_degrees[i:]
    return LatticePath(new_in, path.out_degree, tuple(new_word), new_cuts)


# --------------------------------------------------------- generalized paths

@dataclass(frozen=True)
class GeneralizedLatticePath:
    """A map from the disk of `source` into the funny product of the
    disks of `targets`, recursively: a level-1 path plus, for each
    internal level-1 point, a path one level down into the fibers at
    its image coordinates (None where no fiber is hit)."""

    source: LevelTree
    targets: tuple[LevelTree, ...]
    base: LatticePath
    subs: tuple = ()

    def __post_init__(self):
        d = self.source.depth
        if any(t.depth != d for t in self.targets):
            raise ValueError("all colors must share depth %d" % d)
        if self.base.out_degree != self.source.fibers[0][0]:
            raise ValueError("level-1 path out degree mismatch")
        if self.base.in_degrees != tuple(t.fibers[0][0] for t in self.targets):
            raise ValueError("level-1 path in degrees mismatch")
        if d == 1:
            if self.subs:
                raise ValueError("depth-1 path has no sub-paths")
            return
        p = self.base.out_degree
        if len(self.subs) != p:
            raise ValueError("need one sub-path per internal level-1 point")
        for a in range(1, p + 1):
            act = self.active_axes(a)
            sub = self.subs[a - 1]
            if not act:
                if sub is not None:
                    raise ValueError("point %d hits no fiber, sub-path must be None" % a)
                continue
            if sub is None:
                raise ValueError("point %d hits fibers, sub-path required" % a)
            exp_src = subtree(self.source, 1, a - 1)
            exp_tgts = tuple(
                subtree(self.targets[i - 1], 1, self.coordinate(a, i) - 1) for i in act
            )
            if sub.source != exp_src or sub.targets != exp_tgts:
                raise ValueError("point %d: sub-path colors do not match" % a)

    @property
    def depth(self) -> int:
        return self.source.depth

    @property
    def arity(self) -> int:
        return len(self.targets)

    def coordinate(self, a: int, i: int) -> int:
        """Axis-i coordinate of the image of internal point a."""
        c = self.base.cuts[a - 1]
        return sum(1 for letter in self.base.word[:c] if letter == i)

    def active_axes(self, a: int) -> list[int]:
        out = []
        for i in range(1, self.base.k + 1):
            u = self.coordinate(a, i)
            if 1 <= u <= self.base.in_degrees[i - 1]:
                out.append(i)
        return out

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "targets": [t.to_json() for t in self.targets],
            "base": self.base.to_json(),
            "subs": [None if s is None else s.to_json() for s in self.subs],
        }

    @staticmethod
    def from_json(data: dict) -> "GeneralizedLatticePath":
        source = LevelTree.from_nested(data["source"]["d"], data["source"]["tree"])
        targets = tuple(LevelTree.from_nested(t["d"], t["tree"]) for t in data["targets"])
        base = LatticePath.from_json(data["base"])
        subs = tuple(
            None if s is None else GeneralizedLatticePath.from_json(s)
            for s in data.get("subs", [])
        )
        return GeneralizedLatticePath(source, targets, base, subs)


def enumerate_generalized(source: LevelTree, targets) -> list[GeneralizedLatticePath]:
    targets = tuple(targets)
    d = source.depth
    bases = enumerate_paths(
        tuple(t.fibers[0][0] for t in targets), source.fibers[0][0]
    )
    if d == 1:
        return [GeneralizedLatticePath(source, targets, b) for b in bases]
    out = []
    for base in bases:
        probe = GeneralizedLatticePath.__new__(GeneralizedLatticePath)
        object.__setattr__(probe, "source", source)
        object.__setattr__(probe, "targets", targets)
        object.__setattr__(probe, "base", base)
        object.__setattr__(probe, "subs", (None,) * base.out_degree)
        options = []
        for a in range(1, base.out_degree + 1):
            act = probe.active_axes(a)
            if not act:
                options.append([None])
                continue
            src = subtree(source, 1, a - 1)
            tgts = tuple(subtree(targets[i - 1], 1, probe.coordinate(a, i) - 1) for i in act)
            options.append(enumerate_generalized(src, tgts))
        for combo in itertools.product(*options):
            out.append(GeneralizedLatticePath(source, targets, base, tuple(combo)))
    return out


def pair_profile(gp: GeneralizedLatticePath, i: int, j: int) -> list[list[str]]:
    """Per level, the run patterns of the (i, j) projections of the
    fiber paths where both axes are active ('1' = axis i)."""
    levels: list[list[str]] = [[projection_pattern(gp.base.word, i, j)]]
    if gp.depth >= 2:
        deeper: list[list[str]] = [[] for _ in range(gp.depth - 1)]
        for a in range(1, gp.base.out_degree + 1):
            sub = gp.subs[a - 1]
            if sub is None:
                continue
            act = gp.active_axes(a)
            if i not in act or j not in act:
                continue
            li, lj = act.index(i) + 1, act.index(j) + 1
            for lvl, patterns in enumerate(pair_profile(sub, li, lj)):
                deeper[lvl].extend(patterns)
        levels.extend(deeper)
    return levels


def profile_leq(profile: list[list[str]], sig: TruncatedSignature) -> bool:
    """Level-wise domination; levels past the bound's truncation must be
    silent (no fiber path sees both axes)."""
    for lvl, patterns in enumerate(profile, start=1):
        if lvl <= sig.m:
            if not all(factor_leq(p, sig.factors[lvl - 1]) for p in patterns):
                return False
        elif patterns:
            return False
    return True


def swap_profile(profile: list[list[str]]) -> list[list[str]]:
    tr = str.maketrans("12", "21")
    return [[p.translate(tr) for p in patterns] for patterns in profile]


def identity_generalized(color: LevelTree) -> GeneralizedLatticePath:
    p = color.fibers[0][0]
    base = identity_path(p)
    if color.depth == 1:
        return GeneralizedLatticePath(color, (color,), base)
    subs = tuple(
        identity_generalized(subtree(color, 1, a)) for a in range(p)
    )
    return GeneralizedLatticePath(color, (color,), base, subs)


def compose_generalized(
    outer: GeneralizedLatticePath, slot: int, inner: GeneralizedLatticePath
) -> GeneralizedLatticePath:
    """Substitute `inner` (a path out of the color at `slot`) into
    `outer`, level by level."""
    b = slot
    if not (1 <= b <= outer.arity):
        raise ValueError("no slot %d" % b)
    if outer.targets[b - 1] != inner.source:
        raise ValueError("slot %d color does not match inner source" % b)
    new_base = compose_paths(outer.base, b, inner.base)
    new_targets = outer.targets[:b - 1] + inner.targets + outer.targets[b:]
    if outer.depth == 1:
        return GeneralizedLatticePath(outer.source, new_targets, new_base)
    new_subs = []
    for a in range(1, outer.base.out_degree + 1):
        sub = outer.subs[a - 1]
        if sub is None:
            new_subs.append(None)
            continue
        act = outer.active_axes(a)
        if b not in act:
            new_subs.append(sub)
            continue
        v = outer.coordinate(a, b)
        local = act.index(b) + 1
        inner_sub = inner.subs[v - 1]
        if inner_sub is None:
            if sub.arity == 1:
                new_subs.append(None)
            else:
                new_subs.append(drop_target(sub, local))
        else:
            new_subs.append(compose_generalized(sub, local, inner_sub))
    return GeneralizedLatticePath(outer.source, new_targets, new_base, tuple(new_subs))


def drop_target(gp: GeneralizedLatticePath, slot: int) -> GeneralizedLatticePath:
    """Collapse one target of a depth-1 path to the unit."""
    if gp.depth != 1:
        raise ValueError("target collapse implemented for depth 1 only")
    return GeneralizedLatticePath(
        gp.source,
        gp.targets[:slot - 1] + gp.targets[slot:],
        delete_axis(gp.base, slot),
    )


# ------------------------------------------------------------ closure checks

@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int
    witness: dict | None = None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {
            "check": self.name,
            "result": "pass" if self.passed else "fail",
            "checked": self.checked,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def pruned_two_trees(max_leaves: int) -> list[LevelTree]:
    out = []
    for p in range(1, max_leaves + 1):
        for qs in itertools.product(range(1, max_leaves + 1), repeat=p):
            if sum(qs) <= max_leaves:
                out.append(LevelTree(2, ((p,), qs)))
    return out


def pair_complexity_label(T: LevelTree, height: int = 2) -> BergerElement:
    """The parameter bound attached to a pruned tree: leaf pairs meeting
    at level i are bounded by complexity height-1-i with trivial
    movement."""
    lo = leaf_order(T)
    k = T.num_leaves()
    mu = []
    for i in range(k - 1):
        for j in range(i + 1, k):
            mu.append(height - 1 - lo[frozenset((i, j))])
    return BergerElement(k, tuple(mu), tuple(range(1, k + 1)))


def _pair_k2(path: LatticePath, i: int, j: int) -> str:
    return projection_pattern(path.word, i, j)


def _pattern_flip(p: str) -> str:
    return p.translate(str.maketrans("12", "21"))


def _pattern_leq(a: str, b: str) -> bool:
    return factor_leq(a, b)


def closure_check_tam(max_arity: int = 3, max_degree: int = 1) -> CheckReport:
    """Compose parameter-bounded classical paths along all surjections
    of pruned 2-trees within the bounds and verify the composites stay
    bounded, with the pairwise propagation rules."""
    from .trees import fiber, prunisation, surjective_morphisms

    trees = pruned_two_trees(max_arity)
    degrees = range(max_degree + 1)
    checked = 0

    @lru_cache(maxsize=None)
    def block(mu_sigma_key, in_degrees, out):
        spec = _label_cache[mu_sigma_key]
        return [p for p in enumerate_paths(in_degrees, out) if block_membership(p, spec)]

    _label_cache: dict = {}

    def block_of(T, in_degrees, out):
        spec = pair_complexity_label(T)
        key = (spec.k, spec.mu, spec.sigma)
        _label_cache[key] = spec
        return block(key, tuple(in_degrees), out)

    for T in trees:
        kT = T.num_leaves()
        labelT = pair_complexity_label(T)
        groups_of = lambda phi, s: [
            [l for l in range(kT) if phi.maps[2][l] == b] for b in range(s)
        ]
        for S in trees:
            s = S.num_leaves()
            if s > kT:
                continue
            for phi in surjective_morphisms(T, S):
                groups = groups_of(phi, s)
                fibers = [prunisation(fiber(phi, (2, b))) for b in range(s)]
                if any(f.num_leaves() != len(g) for f, g in zip(fibers, groups)):
                    raise RuntimeError("fiber leaf count mismatch")
                flat = [l for g in groups for l in g]
                perm = tuple(l + 1 for l in flat)
                for n in degrees:
                    for mids in itertools.product(degrees, repeat=s):
                        outers = block_of(S, mids, n)
                        if not outers:
                            continue
                        for leafdegs in itertools.product(degrees, repeat=kT):
                            inner_sets = [
                                block_of(
                                    fibers[b],
                                    tuple(leafdegs[l] for l in groups[b]),
                                    mids[b],
                                )
                                for b in range(s)
                            ]
                            if any(not xs for xs in inner_sets):
                                continue
                            for outer in outers:
                                for inners in itertools.product(*inner_sets):
                                    comp = outer
                                    for b in range(s, 0, -1):
                                        comp = compose_paths(comp, b, inners[b - 1])
                                    comp = relabel_axes(comp, perm)
                                    checked += 1
                                    bad = _tam_composite_bad(
                                        comp, labelT, outer, inners, groups
                                    )
                                    if bad:
                                        return CheckReport(
                                            "closure-tam",
                                            False,
                                            checked,
                                            _tam_witness(
                                                T, S, phi, n, mids, leafdegs,
                                                outer, inners, comp, bad,
                                            ),
                                        )
    return CheckReport("closure-tam", True, checked)


def _tam_composite_bad(comp, labelT, outer, inners, groups):
    """Returns a reason string if membership or a propagation rule
    fails, else None."""
    if not block_membership(comp, labelT):
        return "membership"
    kT = comp.k
    group_of = {}
    local_pos = {}
    for b, g in enumerate(groups):
        for pos, l in enumerate(g):
            group_of[l] = b
            local_pos[l] = pos
    # full-expansion flag: every inner segment contains every axis
    full = True
    for b, inner in enumerate(inners):
        q = (0,) + inner.cuts + (inner.L,)
        for r in range(len(q) - 1):
            seg = inner.word[q[r]:q[r + 1]]
            if any(ax not in seg for ax in range(1, inner.k + 1)):
                full = False
    for x in range(kT - 1):
        for y in range(x + 1, kT):
            cpat = _pair_k2(comp, x + 1, y + 1)
            bx, by = group_of[x], group_of[y]
            if bx == by:
                ipat = _pair_k2(inners[bx], local_pos[x] + 1, local_pos[y] + 1)
                if cpat != ipat:
                    return "same-fiber inheritance at (%d,%d)" % (x + 1, y + 1)
            else:
                i0, j0 = min(bx, by), max(bx, by)
                opat = _pair_k2(outer, i0 + 1, j0 + 1)
                if bx != i0:
                    opat = _pattern_flip(opat)
                if not _pattern_leq(cpat, opat):
                    return "cross-fiber dominance at (%d,%d)" % (x + 1, y + 1)
                if full and cpat != opat:
                    return "cross-fiber equality at (%d,%d)" % (x + 1, y + 1)
    return None


def _tam_witness(T, S, phi, n, mids, leafdegs, outer, inners, comp, reason):
    return {
        "check": "closure-tam",
        "reason": reason,
        "T": T.to_json(),
        "S": S.to_json(),
        "phi": [list(m) for m in phi.maps],
        "out_degree": n,
        "mid_degrees": list(mids),
        "leaf_degrees": list(leafdegs),
        "outer": outer.to_json(),
        "inners": [x.to_json() for x in inners],
        "composite": comp.to_json(),
    }


def theta2_colors(max_total_degree: int = 2) -> list[LevelTree]:
    """Depth-2 trees with at most the given number of vertices above
    the root, degenerate tree included."""
    out = [LevelTree(2, ((0,), ()))]
    for p in range(1, max_total_degree + 1):
        for qs in itertools.product(range(max_total_degree + 1), repeat=p):
            if p + sum(qs) <= max_total_degree:
                out.append(LevelTree(2, ((p,), qs)))
    return out


def seq2_label_sets(weakened: bool = False):
    """Levels 0..2 of the depth-2 label system; the weakened variant
    drops the second canonical label at level 0."""
    from .conjectures import system

    sys = system(2)
    labels = [list(sys.at(c)) for c in range(3)]
    if weakened:
        labels[0] = [labels[0][0]]
    return labels


def closure_check_seq2(max_total_degree: int = 2, weakened: bool = False) -> CheckReport:
    """Compose label-bounded generalized paths along all two-leaf
    depth-3 quasi-bijections with small depth-2 colors and verify the
    composites stay bounded."""
    from .trees import quasi_bijection_exists

    labels = seq2_label_sets(weakened)
    colors = theta2_colors(max_total_degree)
    checked = 0

    def member(profile, c):
        return any(profile_leq(profile, lam) for lam in labels[c])

    gen_cache: dict = {}

    def gen(src, tgts):
        key = (src, tgts)
        if key not in gen_cache:
            gen_cache[key] = enumerate_generalized(src, tgts)
        return gen_cache[key]

    arrows = [
        (a, b, rho)
        for a in range(3)
        for b in range(3)
        for rho in ("id", "swap")
        if quasi_bijection_exists(3, a, "id", b, rho)
    ]
    for c in colors:
        for c1p in colors:
            for c2p in colors:
                outer_all = gen(c, (c1p, c2p))
                outer_flags = []
                for omega in outer_all:
                    prof = pair_profile(omega, 1, 2)
                    flags = tuple(member(prof, b) for b in range(3))
                    if any(flags):
                        outer_flags.append((omega, flags))
                if not outer_flags:
                    continue
                for c1 in colors:
                    u1s = gen(c1p, (c1,))
                    for c2 in colors:
                        u2s = gen(c2p, (c2,))
                        for omega, flags in outer_flags:
                            for u2 in u2s:
                                mid = compose_generalized(omega, 2, u2)
                                for u1 in u1s:
                                    comp = compose_generalized(mid, 1, u1)
                                    prof = pair_profile(comp, 1, 2)
                                    sprof = swap_profile(prof)
                                    checked += 1
                                    for a, b, rho in arrows:
                                        if not flags[b]:
                                            continue
                                        need = sprof if rho == "swap" else prof
                                        if not member(need, a):
                                            return CheckReport(
                                                "closure-seq2",
                                                False,
                                                checked,
                                                {
                                                    "check": "closure-seq2",
                                                    "weakened": weakened,
                                                    "a": a,
                                                    "b": b,
                                                    "rho": rho,
                                                    "outer": omega.to_json(),
                                                    "u1": u1.to_json(),
                                                    "u2": u2.to_json(),
                                                    "composite": comp.to_json(),
                                                    "profile": prof,
                                                },
                                            )
    return CheckReport("closure-seq2", True, checked, notes=("weakened",) if weakened else ())


# ----------------------------------------------------------- matching object

def _block_paths(spec, in_degrees, out) -> list[LatticePath]:
    return [p for p in enumerate_paths(in_degrees, out) if block_membership(p, spec)]


def _spec_arity(spec) -> int:
    if isinstance(spec, TruncatedSignature):
        return 2
    return spec.k


def _out_codegeneracies(x: LatticePath) -> tuple[LatticePath, ...]:
    n = x.out_degree
    return tuple(
        simplicial_act(x, "out", codegeneracy(n - 1, i), n - 1) for i in range(n)
    )


@dataclass
class MatchingReport:
    ell: int
    passed: bool
    per_degree: list[dict]
    horn_instances: int = 0
    horn_failures: int = 0
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {
            "check": "matching",
            "ell": self.ell,
            "result": "pass" if self.passed else "fail",
            "per_degree": self.per_degree,
        }
        if self.ell == 0:
            out["horn_instances"] = self.horn_instances
            out["horn_failures"] = self.horn_failures
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def matching_check(spec, ell: int, max_degree: int = 2) -> MatchingReport:
    """Compare the block at out-degree ell+1 with its matching object
    (the equalizer over compatible codegeneracy tuples): a bijection
    for ell >= 1, a point for ell = -1, a surjection plus enumerated
    horn lifts for ell = 0."""
    k = _spec_arity(spec)
    per_degree = []
    if ell == -1:
        for nd in itertools.product(range(max_degree + 1), repeat=k):
            per_degree.append({"multidegree": list(nd), "target": "point", "ok": True})
        return MatchingReport(ell, True, per_degree)
    passed = True
    witness = None
    for nd in itertools.product(range(max_degree + 1), repeat=k):
        top = _block_paths(spec, nd, ell + 1)
        low = _block_paths(spec, nd, ell)
        if ell == 0:
            image = {_out_codegeneracies(x)[0] for x in top}
            ok = image == set(low)
            per_degree.append(
                {"multidegree": list(nd), "surjective": ok, "size": len(top)}
            )
            if not ok and witness is None:
                passed = False
                missed = sorted(set(low) - image, key=lambda p: (p.word, p.cuts))[0]
                witness = {"multidegree": list(nd), "unreached": missed.to_json()}
            continue
        sigmas = {x: _out_codegeneracies(x) for x in low}
        by_word: dict = {}
        for x in low:
            by_word.setdefault(x.word, []).append(x)
        matching = []
        for word, group in sorted(by_word.items()):
            for tup in itertools.product(group, repeat=ell + 1):
                if all(
                    sigmas[tup[j]][i] == sigmas[tup[i]][j - 1]
                    for i in range(ell + 1)
                    for j in range(i + 1, ell + 1)
                ):
                    matching.append(tup)
        m_values = {x: _out_codegeneracies(x) for x in top}
        injective = len(set(m_values.values())) == len(top)
        image_ok = set(m_values.values()) == set(matching)
        ok = injective and image_ok
        per_degree.append(
            {
                "multidegree": list(nd),
                "bijective": ok,
                "block_size": len(top),
                "matching_size": len(matching),
            }
        )
        if not ok and witness is None:
            passed = False
            witness = {"multidegree": list(nd), "injective": injective, "onto": image_ok}
    report = MatchingReport(ell, passed, per_degree, witness=witness)
    if ell == 0:
        instances, failures, horn_witness = _horn_lifts(spec, min(max_degree, 2))
        report.horn_instances = instances
        report.horn_failures = failures
        if failures:
            report.passed = False
            report.witness = report.witness or horn_witness
    return report


def _diag_face(x: LatticePath, a: int) -> LatticePath:
    """Simultaneous face a on every argument axis (diagonal action)."""
    y = x
    for i in range(1, x.k + 1):
        ni = y.in_degrees[i - 1]
        y = simplicial_act(y, i, coface(ni, a), ni)
    return y


def _horn_lifts(spec, max_n: int):
    """Enumerate all horn instances of the out-codegeneracy projection
    between the diagonal simplicial sets at out degrees 1 and 0 and
    check each lifts.  Returns (instances, failures, witness)."""
    k = _spec_arity(spec)

    def Y(n):
        return _block_paths(spec, (n,) * k, 1)

    def Z(n):
        return _block_paths(spec, (n,) * k, 0)

    def proj(x):
        return _out_codegeneracies(x)[0]

    instances = failures = 0
    witness = None
    # n = 1 horns: one vertex plus a filled edge downstairs
    Y0, Y1, Z1 = Y(0), Y(1), Z(1)
    for i in (0, 1):
        a = 1 - i
        for alpha in Y0:
            for beta in Z1:
                if _diag_face(beta, a) != proj(alpha):
                    continue
                instances += 1
                if not any(
                    _diag_face(y, a) == alpha and proj(y) == beta for y in Y1
                ):
                    failures += 1
                    witness = witness or {
                        "n": 1, "i": i, "alpha": alpha.to_json(), "beta": beta.to_json()
                    }
    if max_n < 2:
        return instances, failures, witness
    # n = 2 horns: two compatible edges plus a filled triangle downstairs
    Y2, Z2 = Y(2), Z(2)
    for i in (0, 1, 2):
        faces = [a for a in (0, 1, 2) if a != i]
        for alphas in itertools.product(Y1, repeat=2):
            by_face = dict(zip(faces, alphas))
            a, b = faces
            if _diag_face(by_face[a], b - 1) != _diag_face(by_face[b], a):
                continue
            for beta in Z2:
                if any(_diag_face(beta, f) != proj(by_face[f]) for f in faces):
                    continue
                instances += 1
                if not any(
                    all(_diag_face(y, f) == by_face[f] for f in faces)
                    and proj(y) == beta
                    for y in Y2
                ):
                    failures += 1
                    witness = witness or {
                        "n": 2,
                        "i": i,
                        "alphas": [x.to_json() for x in alphas],
                        "beta": beta.to_json(),
                    }
    return instances, failures, witness


# ------------------------------------------------------------ block homology

def _degenerate_set(spec, nd: tuple[int, ...], n: int, lower_cache) -> set:
    """Images of the argument degeneracies landing in multidegree nd."""
    out = set()
    for i in range(1, len(nd) + 1):
        if nd[i - 1] == 0:
            continue
        below = nd[:i - 1] + (nd[i - 1] - 1,) + nd[i:]
        for x in lower_cache[below]:
            for j in range(nd[i - 1]):
                out.add(simplicial_act(x, i, codegeneracy(nd[i - 1] - 1, j), nd[i - 1] - 1))
    return out


def block_homology(spec, n: int, bound: int = 8) -> tuple[HomologyReport | None, dict]:
    """Homology of the normalized argument-direction chain complex of a
    block at fixed out degree n.  Returns (report, diagnostics); the
    report is None when the nondegenerate frontier stays open below the
    bound (status inconclusive)."""
    k = _spec_arity(spec)
    all_paths: dict[tuple[int, ...], list[LatticePath]] = {}
    nondeg: dict[tuple[int, ...], list[LatticePath]] = {}
    nondeg_sets: dict[tuple[int, ...], set] = {}
    frontier = None
    empty_streak = 0
    for N in range(bound + 1):
        diag_count = 0
        for nd in itertools.product(range(N + 1), repeat=k):
            if sum(nd) != N:
                continue
            xs = _block_paths(spec, nd, n)
            all_paths[nd] = xs
            degen = _degenerate_set(spec, nd, n, all_paths)
            nds = [x for x in xs if x not in degen]
            nds.sort(key=lambda p: (p.word, p.cuts))
            nondeg[nd] = nds
            nondeg_sets[nd] = set(nds)
            diag_count += len(nds)
        empty_streak = empty_streak + 1 if diag_count == 0 else 0
        if empty_streak >= 2:
            frontier = N - 2
            break
    diagnostics = {
        "frontier": frontier,
        "bound": bound,
        "status": "closed" if frontier is not None else "inconclusive",
        "cells": {str(nd): len(v) for nd, v in sorted(nondeg.items()) if v},
    }
    if frontier is None:
        return None, diagnostics
    # normalized total complex on the nondegenerate basis
    basis: dict[int, list[tuple[tuple[int, ...], LatticePath]]] = {}
    for nd, xs in sorted(nondeg.items()):
        for x in xs:
            basis.setdefault(sum(nd), []).append((nd, x))
    maxN = max(basis) if basis else 0
    ngens = [len(basis.get(N, [])) for N in range(maxN + 1)]
    index = {
        N: {cell: r for r, cell in enumerate(basis.get(N, []))} for N in range(maxN + 1)
    }
    boundaries: list[dict[tuple[int, int], int]] = [{}]
    for N in range(1, maxN + 1):
        mat: dict[tuple[int, int], int] = {}
        for col, (nd, x) in enumerate(basis.get(N, [])):
            sign_prefix = 1
            for i in range(1, k + 1):
                mi = nd[i - 1]
                if mi >= 1:
                    below = nd[:i - 1] + (mi - 1,) + nd[i:]
                    for j in range(mi + 1):
                        face = simplicial_act(x, i, coface(mi, j), mi)
                        if face not in nondeg_sets[below]:
                            continue
                        row = index[N - 1][(below, face)]
                        coeff = sign_prefix * (-1) ** j
                        mat[(row, col)] = mat.get((row, col), 0) + coeff
                sign_prefix *= (-1) ** mi
        boundaries.append({kv: v for kv, v in mat.items() if v})
    report = homology_from_boundaries(ngens, boundaries, reduced=False)
    return report, diagnostics
