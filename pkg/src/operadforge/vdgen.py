"""Elementary digit-shifting moves and the canonical label lists V_d.

Starting from w_d = (121)|...|(121), a move from factor A >= 2 shifts
its leading digit leftwards: factor A-1 grows by one trailing symbol
(kept alternating) and factor A shrinks by one.  If factor A drops to
length 2 with factors to its right, the move is only legal when there
is exactly one such factor and it already has length 2; that factor is
removed.  A preference rule (avoid removals, rightmost first) makes the
walk deterministic; iterating it yields V_d.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .signatures import TruncatedSignature, sig_leq, meet


def w_d(d: int) -> TruncatedSignature:
    if d < 1:
        raise ValueError("d must be >= 1")
    return TruncatedSignature(d, ("121",) * d)


@dataclass(frozen=True)
class MoveState:
    signature: TruncatedSignature
    history: tuple[tuple[int, bool], ...] = ()

    def __post_init__(self):
        d = self.signature.d
        total = sum(len(f) for f in self.signature.factors)
        # moves conserve symbols except removals, which drop exactly two
        assert total <= 3 * d and (3 * d - total) % 2 == 0
        if self.history:
            removals = sum(1 for _, r in self.history if r)
            assert total == 3 * d - 2 * removals


def _grow(factor: str) -> str:
    return factor + ("2" if factor[-1] == "1" else "1")


def move_legality(sig: TruncatedSignature, A: int):
    """Returns (legal, triggers_removal, reason)."""
    m = sig.m
    if A < 2 or A > m:
        return False, False, "factor index out of range"
    if len(sig.factors[A - 1]) < 3:
        return False, False, "source factor too short"
    shrinks_to_2 = len(sig.factors[A - 1]) == 3
    right = sig.factors[A:]
    if shrinks_to_2 and right:
        if len(right) == 1 and len(right[0]) == 2:
            return True, True, ""
        return False, False, "would leave a short factor with %d to its right" % len(right)
    return True, False, ""


def apply_move(sig: TruncatedSignature, A: int) -> tuple[TruncatedSignature, bool]:
    legal, removal, reason = move_legality(sig, A)
    if not legal:
        raise ValueError("illegal move from factor %d: %s" % (A, reason))
    factors = list(sig.factors)
    factors[A - 2] = _grow(factors[A - 2])
    factors[A - 1] = factors[A - 1][1:]
    if removal:
        del factors[A]
    return TruncatedSignature(sig.d, tuple(factors)), removal


def elementary_move(s: MoveState, A: int) -> MoveState:
    new_sig, removal = apply_move(s.signature, A)
    return MoveState(new_sig, s.history + ((A, removal),))


def legal_moves(sig: TruncatedSignature) -> list[tuple[int, bool]]:
    out = []
    for A in range(2, sig.m + 1):
        legal, removal, _ = move_legality(sig, A)
        if legal:
            out.append((A, removal))
    return out


def next_factor(s: MoveState):
    """Rule-3 choice: rightmost legal non-removal move, else rightmost
    removal move, else None."""
    moves = legal_moves(s.signature)
    plain = [A for A, rem in moves if not rem]
    if plain:
        return plain[-1]
    removing = [A for A, rem in moves if rem]
    if removing:
        return removing[-1]
    return None


@dataclass(frozen=True)
class MoveSequence:
    d: int
    elements: tuple[TruncatedSignature, ...]
    moves: tuple[tuple[int, bool], ...] = ()
    warnings: tuple[str, ...] = ()

    def texts(self) -> list[str]:
        return [e.text() for e in self.elements]


def generate_V(d: int) -> MoveSequence:
    state = MoveState(w_d(d))
    elements = [state.signature]
    moves = []
    warnings = []
    seen = {state.signature}
    while True:
        candidates = legal_moves(state.signature)
        plain = [A for A, rem in candidates if not rem]
        if len(plain) > 1:
            warnings.append(
                "branching at %s: non-removal candidates %r, chose rightmost"
                % (state.signature.text(), plain)
            )
        A = next_factor(state)
        if A is None:
            break
        state = elementary_move(state, A)
        if state.signature in seen:
            raise RuntimeError("move walk revisited %s" % state.signature.text())
        seen.add(state.signature)
        elements.append(state.signature)
        moves.append(state.history[-1])
    return MoveSequence(d, tuple(elements), tuple(moves), tuple(warnings))


def generate_tilde(ell: int, d: int | None = None) -> MoveSequence:
    """The level-shifted lists: the head element gains a minimal extra
    factor, the rest are unchanged.  `d` re-ambients the elements
    (default ell+1) so they can live in a deeper label system."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if d is None:
        d = ell + 1
    if d < ell + 1:
        raise ValueError("ambient depth must be at least ell+1")
    if ell == 0:
        return MoveSequence(d, (TruncatedSignature(d, ("12",)),))
    base = generate_V(ell)
    head = TruncatedSignature(d, w_d(ell).factors + ("12",))
    rest = tuple(e.with_ambient(d) for e in base.elements[1:])
    return MoveSequence(d, (head,) + rest, warnings=base.warnings)


@dataclass(frozen=True)
class MoveGraph:
    d: int
    nodes: tuple[TruncatedSignature, ...]
    edges: tuple[tuple[int, int, int], ...]  # (src index, dst index, factor)
    canonical: tuple[int, ...]  # node indices along the preferred walk
    pruned: tuple[int, ...]  # reachable but off the preferred walk


def move_graph(d: int) -> MoveGraph:
    """Breadth-first expansion of all legal moves, with the preferred
    walk and the off-walk (pruned) nodes marked."""
    start = w_d(d)
    nodes = [start]
    index = {start: 0}
    edges = []
    frontier = [start]
    while frontier:
        new_frontier = []
        for sig in frontier:
            for A, _rem in legal_moves(sig):
                nxt, _ = apply_move(sig, A)
                if nxt not in index:
                    index[nxt] = len(nodes)
                    nodes.append(nxt)
                    new_frontier.append(nxt)
                edges.append((index[sig], index[nxt], A))
        frontier = new_frontier
    canonical = tuple(index[e] for e in generate_V(d).elements)
    pruned = tuple(sorted(set(range(len(nodes))) - set(canonical)))
    return MoveGraph(d, tuple(nodes), tuple(sorted(set(edges))), canonical, pruned)


def removal_meet(omega: TruncatedSignature, A: int) -> TruncatedSignature:
    """Digit-removal description of the meet of consecutive canonical
    labels: drop the leading digit of the factor the next move shifts
    from; if that leaves a length-2 factor with a factor to its right,
    the right factor goes too.  Used as an oracle against meet()."""
    factors = list(omega.factors)
    if not (2 <= A <= len(factors)):
        raise ValueError("factor index out of range")
    factors[A - 1] = factors[A - 1][1:]
    if len(factors[A - 1]) == 2 and A < len(factors):
        if A + 1 != len(factors):
            raise ValueError("unexpected shape for digit-removal meet")
        del factors[A]
    return TruncatedSignature(omega.d, tuple(factors))


def consecutive_meets(d: int) -> list[TruncatedSignature]:
    seq = generate_V(d)
    out = []
    for a, b in zip(seq.elements, seq.elements[1:]):
        m = meet(a, b)
        if m is None:
            raise RuntimeError("no meet for consecutive labels %s, %s" % (a, b))
        out.append(m)
    return out
