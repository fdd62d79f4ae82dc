"""Bar-string signatures and the complete-graph poset they live in.

An alternating string over {1,2} of length l encodes the pair
(mu = l-2, sigma = id if it starts with '1' else the transposition).
A truncated signature is a bar-separated tuple of such strings, one per
level, e.g. (1212)|(21); a trailing length-2 factor truncates all
higher levels, and absent levels count as bottom.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

ID2 = (1, 2)
SWAP2 = (2, 1)


@dataclass(frozen=True)
class BergerElement:
    """A point (mu, sigma) of the arity-k complete-graph poset.

    mu holds one nonnegative complexity per pair i<j (1-based axes, in
    lexicographic pair order); sigma is a permutation of {1..k} given in
    one-line notation (sigma[i-1] is the image of i).
    """

    k: int
    mu: tuple[int, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        npairs = self.k * (self.k - 1) // 2
        if len(self.mu) != npairs:
            raise ValueError("need %d complexities for arity %d" % (npairs, self.k))
        if any(m < 0 for m in self.mu):
            raise ValueError("complexities must be nonnegative")
        if sorted(self.sigma) != list(range(1, self.k + 1)):
            raise ValueError("sigma must be a permutation of 1..k")

    def mu_of(self, i: int, j: int) -> int:
        if not (1 <= i < j <= self.k):
            raise ValueError("need 1 <= i < j <= k")
        # pairs (1,2),(1,3),..,(1,k),(2,3),.. in lexicographic order
        idx = (i - 1) * self.k - i * (i + 1) // 2 + j - 1
        return self.mu[idx]

    def sign_of(self, i: int, j: int) -> bool:
        """True iff sigma keeps the pair i<j in natural relative order."""
        return self.sigma[i - 1] < self.sigma[j - 1]


def berger_leq(x: BergerElement, y: BergerElement) -> bool:
    """Pairwise order: equal relative sign needs mu <= mu', differing
    sign needs mu < mu'."""
    if x.k != y.k:
        raise ValueError("arity mismatch: %d vs %d" % (x.k, y.k))
    for i in range(1, x.k):
        for j in range(i + 1, x.k + 1):
            if x.sign_of(i, j) == y.sign_of(i, j):
                if not x.mu_of(i, j) <= y.mu_of(i, j):
                    return False
            else:
                if not x.mu_of(i, j) < y.mu_of(i, j):
                    return False
    return True


_FACTOR_RE = re.compile(r"^[12]+$")


def _check_factor(s: str, pos: int) -> None:
    if not _FACTOR_RE.match(s):
        raise ValueError("factor %d: symbols must be 1 or 2: %r" % (pos, s))
    for a, b in zip(s, s[1:]):
        if a == b:
            raise ValueError("factor %d: not alternating: %r" % (pos, s))


def factor_to_k2(s: str) -> BergerElement:
    """Length-l alternating string -> (mu=l-2, sigma by leading symbol)."""
    if len(s) < 2:
        raise ValueError("factor too short: %r" % s)
    return BergerElement(2, (len(s) - 2,), ID2 if s[0] == "1" else SWAP2)


def k2_to_factor(x: BergerElement) -> str:
    if x.k != 2:
        raise ValueError("only arity 2 converts to a string factor")
    start = "1" if x.sigma == ID2 else "2"
    out = []
    for i in range(x.mu[0] + 2):
        out.append(start if i % 2 == 0 else ("2" if start == "1" else "1"))
    return "".join(out)


def factor_leq(a: str, b: str) -> bool:
    return berger_leq(factor_to_k2(a), factor_to_k2(b))


@dataclass(frozen=True)
class TruncatedSignature:
    d: int
    factors: tuple[str, ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("ambient depth must be >= 1")
        if not self.factors:
            raise ValueError("need at least one factor")
        m = len(self.factors)
        if m > self.d:
            raise ValueError("factor %d: more factors than ambient depth %d" % (m, self.d))
        for pos, f in enumerate(self.factors, start=1):
            _check_factor(f, pos)
            if pos < m and len(f) < 3:
                raise ValueError("factor %d: non-last factor needs length >= 3" % pos)
        if len(self.factors[-1]) < 2:
            raise ValueError("factor %d: last factor needs length >= 2" % m)
        # a truncation below ambient depth must end in a minimal factor
        if m < self.d and len(self.factors[-1]) != 2:
            raise ValueError(
                "factor %d: truncated signature must end with a length-2 factor" % m
            )

    @property
    def m(self) -> int:
        return len(self.factors)

    def level(self, i: int) -> BergerElement:
        """K(2) component at level i (1-based), i <= m."""
        return factor_to_k2(self.factors[i - 1])

    def text(self) -> str:
        return "|".join("(%s)" % f for f in self.factors)

    def __str__(self) -> str:
        return self.text()

    def to_json(self) -> dict:
        return {"d": self.d, "factors": list(self.factors)}

    def swap(self) -> "TruncatedSignature":
        tr = str.maketrans("12", "21")
        return TruncatedSignature(self.d, tuple(f.translate(tr) for f in self.factors))

    def with_ambient(self, d: int) -> "TruncatedSignature":
        return TruncatedSignature(d, self.factors)


def parse_signature(text: str, d: int) -> TruncatedSignature:
    """Parse "(1212)|(21)" or "1212|21" (parentheses optional)."""
    parts = text.split("|")
    factors = []
    for pos, p in enumerate(parts, start=1):
        p = p.strip()
        if p.startswith("(") and p.endswith(")"):
            p = p[1:-1]
        if not p:
            raise ValueError("factor %d: empty" % pos)
        factors.append(p)
    return TruncatedSignature(d, tuple(factors))


def sig_leq(a: TruncatedSignature, b: TruncatedSignature) -> bool:
    """Componentwise order with absent levels of `a` counting as bottom."""
    if a.d != b.d:
        raise ValueError("ambient depth mismatch: %d vs %d" % (a.d, b.d))
    if a.m > b.m:
        return False
    return all(factor_leq(a.factors[i], b.factors[i]) for i in range(a.m))


def swap(a: TruncatedSignature) -> TruncatedSignature:
    return a.swap()


def _sort_key(s: TruncatedSignature):
    return (s.m, tuple(len(f) for f in s.factors), s.factors)


def enumerate_downset(labels) -> list[TruncatedSignature]:
    """All valid signatures dominated by at least one label, in a fixed
    canonical order.  Finite because factor lengths are bounded by the
    labels' own lengths."""
    labels = list(labels)
    if not labels:
        return []
    d = labels[0].d
    if any(l.d != d for l in labels):
        raise ValueError("labels must share ambient depth")
    max_m = max(l.m for l in labels)
    max_len = {
        i: max(len(l.factors[i - 1]) for l in labels if l.m >= i)
        for i in range(1, max_m + 1)
    }
    out = []
    for m in range(1, max_m + 1):
        ranges = []
        for i in range(1, m + 1):
            if i < m:
                lens = range(3, max_len[i] + 1)
            elif m < d:
                lens = range(2, 3)
            else:
                lens = range(2, max_len[m] + 1)
            ranges.append([(ln, st) for ln in lens for st in "12"])
        for combo in itertools.product(*ranges):
            factors = []
            for ln, st in combo:
                alt = st + ("2" if st == "1" else "1")
                factors.append((alt * ln)[:ln])
            try:
                sig = TruncatedSignature(d, tuple(factors))
            except ValueError:
                continue
            if any(sig_leq(sig, l) for l in labels):
                out.append(sig)
    out.sort(key=_sort_key)
    return out


def meet(a: TruncatedSignature, b: TruncatedSignature):
    """Unique maximum of downset(a) & downset(b), or None.

    Brute force over the finite common downset; uniqueness of the
    maximum is checked, not assumed.
    """
    common = [s for s in enumerate_downset([a]) if sig_leq(s, b)]
    if not common:
        return None
    maxima = [s for s in common if all(sig_leq(t, s) for t in common)]
    if len(maxima) != 1:
        return None
    return maxima[0]
