"""Finite posets, order complexes, exact integer homology, dismantling.

Homology is computed over Z via a sparse Smith normal form with
minimal-absolute-value pivoting; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .trees import quasi_bijection_exists


class FinitePoset:
    """Elements in a fixed canonical order plus a <= relation matrix.

    The order axioms are verified on construction; invalid relations
    are rejected, never repaired.
    """

    def __init__(self, elements, leq):
        self.elements = list(elements)
        n = len(self.elements)
        if callable(leq):
            self.matrix = [[bool(leq(x, y)) for y in self.elements] for x in self.elements]
        else:
            self.matrix = [[bool(v) for v in row] for row in leq]
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != n:
            raise ValueError("duplicate elements")
        M = self.matrix
        for i in range(n):
            if not M[i][i]:
                raise ValueError("relation not reflexive")
        for i in range(n):
            for j in range(n):
                if i != j and M[i][j] and M[j][i]:
                    raise ValueError("relation not antisymmetric")
                if M[i][j]:
                    for k in range(n):
                        if M[j][k] and not M[i][k]:
                            raise ValueError("relation not transitive")

    def __len__(self):
        return len(self.elements)

    def index(self, x) -> int:
        return self._index[x]

    def leq(self, x, y) -> bool:
        return self.matrix[self._index[x]][self._index[y]]

    def leq_idx(self, i: int, j: int) -> bool:
        return self.matrix[i][j]

    def op(self) -> "FinitePoset":
        n = len(self.elements)
        return FinitePoset(self.elements, [[self.matrix[j][i] for j in range(n)] for i in range(n)])

    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (i, j) with element i covered by element j."""
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if i != j and self.matrix[i][j]:
                    if not any(
                        k != i and k != j and self.matrix[i][k] and self.matrix[k][j]
                        for k in range(n)
                    ):
                        out.append((i, j))
        return out

    def restrict(self, indices) -> "FinitePoset":
        idx = list(indices)
        return FinitePoset(
            [self.elements[i] for i in idx],
            [[self.matrix[i][j] for j in idx] for i in idx],
        )

    def maximum(self):
        """The top element, or None."""
        n = len(self.elements)
        tops = [i for i in range(n) if all(self.matrix[j][i] for j in range(n))]
        return self.elements[tops[0]] if tops else None

    def minimum(self):
        n = len(self.elements)
        bots = [i for i in range(n) if all(self.matrix[i][j] for j in range(n))]
        return self.elements[bots[0]] if bots else None


@dataclass
class SimplicialComplexZ:
    """Chains of a poset: generators[q] lists the strict (q+1)-chains
    as tuples of element indices; boundaries[q] is the sparse integer
    matrix C_q -> C_{q-1} (boundaries[0] is empty)."""

    generators: list[list[tuple[int, ...]]]
    boundaries: list[dict[tuple[int, int], int]]

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * len(g) for q, g in enumerate(self.generators))


def order_complex(P: FinitePoset) -> SimplicialComplexZ:
    n = len(P.elements)
    succ = [[j for j in range(n) if j != i and P.matrix[i][j]] for i in range(n)]
    chains_by_dim: list[list[tuple[int, ...]]] = []
    current = [(i,) for i in range(n)]
    while current:
        chains_by_dim.append(sorted(current))
        current = [c + (j,) for c in current for j in succ[c[-1]]]
    generators = chains_by_dim
    boundaries: list[dict[tuple[int, int], int]] = [{}]
    for q in range(1, len(generators)):
        lower = {c: i for i, c in enumerate(generators[q - 1])}
        mat: dict[tuple[int, int], int] = {}
        for col, chain in enumerate(generators[q]):
            for t in range(len(chain)):
                face = chain[:t] + chain[t + 1:]
                row = lower[face]
                mat[(row, col)] = mat.get((row, col), 0) + (-1) ** t
        boundaries.append({k: v for k, v in mat.items() if v})
    cx = SimplicialComplexZ(generators, boundaries)
    _assert_boundary_squares_to_zero(cx)
    return cx


def _assert_boundary_squares_to_zero(cx: SimplicialComplexZ) -> None:
    for q in range(2, len(cx.generators)):
        B1, B2 = cx.boundaries[q - 1], cx.boundaries[q]
        cols: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in B2.items():
            cols.setdefault(c, []).append((r, v))
        rows1: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in B1.items():
            rows1.setdefault(c, []).append((r, v))
        for c, entries in cols.items():
            acc: dict[int, int] = {}
            for mid, v in entries:
                for r, w in rows1.get(mid, ()):
                    acc[r] = acc.get(r, 0) + v * w
            assert all(v == 0 for v in acc.values()), "boundary does not square to zero"


def smith_normal_form(entries: dict[tuple[int, int], int]) -> list[int]:
    """Diagonal of the Smith normal form of a sparse integer matrix,
    as positive invariant factors d_1 | d_2 | ...

    Elimination picks the nonzero entry of minimal absolute value as
    pivot to keep coefficient growth down.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, dict[int, int]] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, {})[r] = v

    def set_entry(r, c, v):
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, {})[r] = v
        else:
            if r in rows and c in rows[r]:
                del rows[r][c]
                if not rows[r]:
                    del rows[r]
            if c in cols and r in cols[c]:
                del cols[c][r]
                if not cols[c]:
                    del cols[c]

    diagonal: list[int] = []
    while rows:
        # minimal absolute value pivot
        pr, pc, pv = None, None, None
        for r, row in rows.items():
            for c, v in row.items():
                if pv is None or abs(v) < abs(pv):
                    pr, pc, pv = r, c, v
                    if abs(pv) == 1:
                        break
            if pv is not None and abs(pv) == 1:
                break
        # clear the pivot column
        for r in list(cols[pc].keys()):
            if r == pr:
                continue
            v = cols[pc][r]
            q = v // pv
            if q:
                for c, w in list(rows[pr].items()):
                    set_entry(r, c, rows.get(r, {}).get(c, 0) - q * w)
            if cols.get(pc, {}).get(r):
                # remainder left; will be picked up as a smaller pivot later
                continue
        if any(r != pr for r in cols.get(pc, {})):
            continue
        # clear the pivot row
        for c in list(rows[pr].keys()):
            if c == pc:
                continue
            v = rows[pr][c]
            q = v // pv
            if q:
                for r, w in list(cols[pc].items()):
                    set_entry(r, c, rows.get(r, {}).get(c, 0) - q * w)
        if any(c != pc for c in rows.get(pr, {})):
            continue
        diagonal.append(abs(pv))
        set_entry(pr, pc, 0)
    # enforce the divisibility chain
    diagonal.sort()
    for i in range(len(diagonal)):
        for j in range(i + 1, len(diagonal)):
            a, b = diagonal[i], diagonal[j]
            g = gcd(a, b)
            diagonal[i], diagonal[j] = g, a * b // g
    return diagonal


@dataclass
class HomologyReport:
    betti: dict[int, int]
    torsion: dict[int, tuple[int, ...]]
    generator_counts: dict[int, int]
    reduced: bool = True

    def euler_consistent(self) -> bool:
        chi_gen = sum((-1) ** q * n for q, n in self.generator_counts.items())
        chi_b = sum((-1) ** q * b for q, b in self.betti.items())
        # reduced homology drops one Z in degree 0 for a nonempty complex
        drop = 1 if self.reduced and self.generator_counts.get(0, 0) else 0
        return chi_gen == chi_b + drop

    def is_acyclic(self) -> bool:
        return all(b == 0 for b in self.betti.values()) and all(
            not t for t in self.torsion.values()
        )


def homology_from_boundaries(
    ngens: list[int], boundaries: list[dict[tuple[int, int], int]], reduced: bool = False
) -> HomologyReport:
    """Reduced or plain homology of a chain complex given generator
    counts per degree and boundary matrices d_q: C_q -> C_{q-1}."""
    maxq = len(ngens) - 1
    snf = {q: smith_normal_form(boundaries[q]) if q <= maxq else [] for q in range(maxq + 2)}
    if reduced and ngens and ngens[0]:
        # augmentation to Z: rank 1 for a nonempty complex
        snf[0] = [1]
    else:
        snf[0] = []
    betti = {}
    torsion = {}
    for q in range(maxq + 1):
        rank_q = len(snf[q])
        rank_q1 = len(snf.get(q + 1, []))
        betti[q] = ngens[q] - rank_q - rank_q1
        torsion[q] = tuple(v for v in snf.get(q + 1, []) if v > 1)
    return HomologyReport(betti, torsion, {q: ngens[q] for q in range(maxq + 1)}, reduced)


def homology(cx: SimplicialComplexZ, reduced: bool = True) -> HomologyReport:
    ngens = [len(g) for g in cx.generators]
    if not ngens:
        return HomologyReport({}, {}, {}, reduced)
    return homology_from_boundaries(ngens, cx.boundaries, reduced)


@dataclass
class DismantleResult:
    success: bool
    removed: list  # removal order (elements)
    core: FinitePoset | None  # irreducible core on failure


def dismantle(P: FinitePoset) -> DismantleResult:
    """Greedy beat-point removal.  A beat point is an element whose
    strict up-set has a minimum or strict down-set has a maximum."""
    removed = []
    current = P
    while len(current) > 1:
        n = len(current)
        beat = None
        for i in range(n):
            up = [j for j in range(n) if j != i and current.matrix[i][j]]
            down = [j for j in range(n) if j != i and current.matrix[j][i]]
            if up and any(all(current.matrix[m][j] for j in up) for m in up):
                beat = i
                break
            if down and any(all(current.matrix[j][m] for j in down) for m in down):
                beat = i
                break
        if beat is None:
            return DismantleResult(False, removed, current)
        removed.append(current.elements[beat])
        current = current.restrict([k for k in range(n) if k != beat])
    return DismantleResult(True, removed, None)


def milgram_poset(n: int) -> FinitePoset:
    """Two-leaf trees of depth n with a leaf numbering, ordered by the
    existence of a numbered quasi-bijection."""
    if n < 1:
        raise ValueError("n must be >= 1")
    elements = [(a, eps) for a in range(n) for eps in ("id", "swap")]

    def leq(x, y):
        return quasi_bijection_exists(n, x[0], x[1], y[0], y[1])

    return FinitePoset(elements, leq)
