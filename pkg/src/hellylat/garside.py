"""Classical Garside structure on braid groups B_n at desk scale.

Representation.  Simple elements are the permutations of {1..n} in one-line
notation (tuples), with the prefix order: u <= v iff len(u) + len(u^-1 v) =
len(v), where len counts one-line inversions.  The Garside element delta is
the half-turn, whose permutation is the longest element w0.  A braid is kept
in left-greedy normal form as (inf, body): the integer delta power followed
by a tuple of proper simples (neither identity nor delta) in which every
adjacent pair (x, y) is left-weighted: no atom a with x*a still simple
left-divides y.

Group arithmetic reduces to permutation arithmetic plus renormalization:
conjugation by delta is conjugation by w0 on permutations, and x^-1 * delta,
delta * x^-1 are again simples because delta is balanced.  Lattice meets of
simples are computed by a leveled scan over divisor bitmasks; the lattice
property of the simples poset is verified pair-by-pair at construction.

Group-level meets/joins and thickening balls are offered only inside
explicit windows, enumerated by BFS on right multiplication by atoms
filtered by the prefix order against the window top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .poset import CapExceeded, PosetError, _iter_bits

Perm = tuple[int, ...]


class GarsideError(ValueError):
    pass


def _mul(p: Perm, q: Perm) -> Perm:
    """Composition with q acting first on positions: group product p*q."""
    return tuple(p[q[k] - 1] for k in range(len(p)))


def _inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


def _length(p: Perm) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


class SimplesLattice:
    """The lattice of simple elements of the braid group B_n."""

    __slots__ = ("n", "simples", "index", "lengths", "identity", "delta",
                 "atoms", "_down", "_up", "_by_length_desc", "_len_masks",
                 "_right_comp", "_left_comp", "_tau")

    def __init__(self, n: int):
        if not 2 <= n <= 6:
            raise GarsideError("strand count must satisfy 2 <= n <= 6")
        self.n = n
        self.simples: tuple[Perm, ...] = tuple(
            itertools.permutations(range(1, n + 1)))
        self.index = {w: i for i, w in enumerate(self.simples)}
        self.lengths = tuple(_length(w) for w in self.simples)
        self.identity = tuple(range(1, n + 1))
        self.delta = tuple(range(n, 0, -1))
        self.atoms = tuple(self._atom(i) for i in range(1, n))
        m = len(self.simples)
        down = [0] * m
        up = [0] * m
        for i, u in enumerate(self.simples):
            for j, v in enumerate(self.simples):
                if self.lengths[i] + _length(_mul(_inv(u), v)) == self.lengths[j]:
                    down[j] |= 1 << i
                    up[i] |= 1 << j
        self._down = tuple(down)
        self._up = tuple(up)
        max_len = self.lengths[self.index[self.delta]]
        len_masks = [0] * (max_len + 1)
        for i, l in enumerate(self.lengths):
            len_masks[l] |= 1 << i
        self._len_masks = tuple(len_masks)
        self._by_length_desc = tuple(range(max_len, -1, -1))
        self._right_comp = tuple(_mul(_inv(w), self.delta) for w in self.simples)
        self._left_comp = tuple(_mul(self.delta, _inv(w)) for w in self.simples)
        self._tau = tuple(_mul(self.delta, _mul(w, self.delta)) for w in self.simples)
        self._verify_lattice()

    def _atom(self, i: int) -> Perm:
        w = list(range(1, self.n + 1))
        w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    def _verify_lattice(self) -> None:
        m = len(self.simples)
        e = self.index[self.identity]
        d = self.index[self.delta]
        full = (1 << m) - 1
        if self._up[e] != full or self._down[d] != full:
            raise GarsideError("prefix order lost its bounds")
        # balancedness: left-divisor set of delta = right-divisor set.
        for i, w in enumerate(self.simples):
            if _length(self._right_comp[i]) != _length(self.delta) - self.lengths[i]:
                raise GarsideError("delta is not balanced")
        for i in range(m):
            for j in range(i + 1, m):
                if self._extreme(self._down[i] & self._down[j], True) is None:
                    raise GarsideError("simples pair without meet")
                if self._extreme(self._up[i] & self._up[j], False) is None:
                    raise GarsideError("simples pair without join")

    def _extreme(self, candidates: int, take_max: bool) -> int | None:
        """Index of the unique longest (or shortest) candidate dominating
        (dominated by) all others, or None."""
        if candidates == 0:
            return None
        order = self._by_length_desc if take_max else reversed(self._by_length_desc)
        for l in order:
            level = candidates & self._len_masks[l]
            if level == 0:
                continue
            if level & (level - 1):
                return None
            c = level.bit_length() - 1
            cover = self._down[c] if take_max else self._up[c]
            if candidates & ~cover:
                return None
            return c
        return None

    def leq_simple(self, u: Perm, v: Perm) -> bool:
        return (self._down[self.index[v]] >> self.index[u]) & 1 == 1

    def meet_simple(self, u: Perm, v: Perm) -> Perm:
        i, j = self.index[u], self.index[v]
        k = self._extreme(self._down[i] & self._down[j], True)
        assert k is not None
        return self.simples[k]

    def join_simple(self, u: Perm, v: Perm) -> Perm:
        i, j = self.index[u], self.index[v]
        k = self._extreme(self._up[i] & self._up[j], False)
        assert k is not None
        return self.simples[k]

    def right_complement(self, w: Perm) -> Perm:
        return self._right_comp[self.index[w]]

    def left_complement(self, w: Perm) -> Perm:
        return self._left_comp[self.index[w]]

    def tau(self, w: Perm, power: int = 1) -> Perm:
        """Conjugation by delta: tau(w) = delta^-1 w delta (an involution on
        permutations since w0 has order two)."""
        return self._tau[self.index[w]] if power % 2 else w

    def is_simple_product(self, u: Perm, v: Perm) -> bool:
        return self.lengths[self.index[u]] + self.lengths[self.index[v]] \
            == _length(_mul(u, v))


def build_braid_garside(n: int) -> SimplesLattice:
    """Simples lattice of B_n, fully verified at construction."""
    return SimplesLattice(n)


@dataclass(frozen=True)
class BraidElement:
    """Left-greedy normal form: delta^inf followed by proper simples."""
    inf: int
    body: tuple[Perm, ...]

    def canonical_length(self) -> int:
        return len(self.body)

    def sup(self) -> int:
        return self.inf + len(self.body)


def identity_braid() -> BraidElement:
    return BraidElement(0, ())


def delta_power(k: int) -> BraidElement:
    return BraidElement(k, ())


def _is_left_weighted(ctx: SimplesLattice, x: Perm, y: Perm) -> bool:
    """No atom a with x*a simple left-divides y."""
    for a in ctx.atoms:
        if ctx.is_simple_product(x, a) and ctx.leq_simple(a, y):
            return False
    return True


def _normalize_body(ctx: SimplesLattice, factors: list[Perm]) -> tuple[int, tuple[Perm, ...]]:
    """Left-greedy normalization of a factor list; returns the delta power
    absorbed at the front and the normalized proper body."""
    m = len(factors)
    for _ in range(2 * m + 4):
        changed = False
        for i in range(len(factors) - 1):
            x, y = factors[i], factors[i + 1]
            if x == ctx.delta or y == ctx.identity:
                continue
            t = ctx.meet_simple(ctx.right_complement(x), y)
            if t != ctx.identity:
                factors[i] = _mul(x, t)
                factors[i + 1] = _mul(_inv(t), y)
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("normalization failed to stabilize")
    lead = 0
    while factors and factors[0] == ctx.delta:
        lead += 1
        factors.pop(0)
    while factors and factors[-1] == ctx.identity:
        factors.pop()
    assert all(f != ctx.identity and f != ctx.delta for f in factors)
    return lead, tuple(factors)


def mult(ctx: SimplesLattice, g: BraidElement, h: BraidElement) -> BraidElement:
    """Product of two braids in normal form."""
    factors = [ctx.tau(x, h.inf) for x in g.body] + list(h.body)
    lead, body = _normalize_body(ctx, factors)
    return BraidElement(g.inf + h.inf + lead, body)


_INV_CACHE: dict[tuple[int, BraidElement], BraidElement] = {}


def inverse(ctx: SimplesLattice, g: BraidElement) -> BraidElement:
    key = (id(ctx), g)
    hit = _INV_CACHE.get(key)
    if hit is not None:
        return hit
    out = identity_braid()
    for x in reversed(g.body):
        # x^-1 = delta^-1 * (delta x^-1), and delta * x^-1 is a simple.
        piece = BraidElement(-1, (ctx.left_complement(x),)) \
            if ctx.left_complement(x) != ctx.identity else BraidElement(-1, ())
        out = mult(ctx, out, piece)
    out = mult(ctx, out, delta_power(-g.inf))
    if len(_INV_CACHE) < 500_000:
        _INV_CACHE[key] = out
    return out


def atom_braid(ctx: SimplesLattice, i: int, sign: int = 1) -> BraidElement:
    if not 1 <= i <= ctx.n - 1:
        raise GarsideError(f"atom index {i} out of range for {ctx.n} strands")
    a = ctx.atoms[i - 1]
    if sign > 0:
        if a == ctx.delta:  # only in B_2
            return delta_power(1)
        return BraidElement(0, (a,))
    lc = ctx.left_complement(a)
    return BraidElement(-1, (lc,)) if lc != ctx.identity else BraidElement(-1, ())


def normal_form(ctx: SimplesLattice, word: Sequence[int]) -> BraidElement:
    """Normal form of a word given as signed atom indices (e.g. [1, 2, -1]).
    Multiplying the form out reproduces the word's element; already-canonical
    inputs are fixed points."""
    out = identity_braid()
    for letter in word:
        if letter == 0:
            raise GarsideError("atom index 0 is invalid")
        out = mult(ctx, out, atom_braid(ctx, abs(letter), 1 if letter > 0 else -1))
    return out


def prefix_leq(ctx: SimplesLattice, g: BraidElement, h: BraidElement) -> bool:
    """g <= h in the left order: g^-1 h lies in the positive monoid, i.e.
    its normal form has inf >= 0."""
    return mult(ctx, inverse(ctx, g), h).inf >= 0


def braid_to_word(ctx: SimplesLattice, g: BraidElement) -> list[int]:
    """Some word of signed atoms representing g (delta factored greedily)."""
    word: list[int] = []
    delta_word = _simple_to_word(ctx, ctx.delta)
    if g.inf >= 0:
        word.extend(delta_word * g.inf)
    else:
        word.extend([-i for i in reversed(delta_word)] * (-g.inf))
    for x in g.body:
        word.extend(_simple_to_word(ctx, x))
    return word


def _simple_to_word(ctx: SimplesLattice, w: Perm) -> list[int]:
    out = []
    cur = list(w)
    while True:
        for i in range(len(cur) - 1):
            if cur[i] > cur[i + 1]:
                break
        else:
            break
        # peel a descent from the left: find first ascent-violating position
        # in the inverse sense; simplest: bubble via any descent at the end.
        out.append(i + 1)
        cur[i], cur[i + 1] = cur[i + 1], cur[i]
    out.reverse()
    return out


# -- windows, intervals, thickening ------------------------------------------

def interval(ctx: SimplesLattice, lo: BraidElement, hi: BraidElement,
             cap: int = 100_000) -> list[BraidElement]:
    """The prefix-order interval [lo, hi], enumerated by BFS on right
    multiplication by atoms filtered against hi."""
    if not prefix_leq(ctx, lo, hi):
        return []
    seen = {lo}
    frontier = [lo]
    while frontier:
        new = []
        for g in frontier:
            for i in range(1, ctx.n):
                nxt = mult(ctx, g, atom_braid(ctx, i))
                if nxt in seen:
                    continue
                if prefix_leq(ctx, nxt, hi):
                    seen.add(nxt)
                    new.append(nxt)
                    if len(seen) > cap:
                        raise CapExceeded(f"interval larger than {cap}")
        frontier = new
    return sorted(seen, key=lambda g: (g.inf + len(g.body), g.inf, g.body))


def lattice_ops_window(ctx: SimplesLattice, g: BraidElement, h: BraidElement,
                       window: tuple[BraidElement, BraidElement],
                       cap: int = 100_000) -> dict[str, BraidElement]:
    """Meet and join of g, h by exhaustive scan over an enumerated interval
    [lo, hi] containing both; valid since intervals of a lattice are closed
    under the meets/joins of the elements they bound."""
    lo, hi = window
    for side in (g, h):
        if not (prefix_leq(ctx, lo, side) and prefix_leq(ctx, side, hi)):
            raise GarsideError("window does not contain the operands")
    elems = interval(ctx, lo, hi, cap=cap)
    lower = [z for z in elems
             if prefix_leq(ctx, z, g) and prefix_leq(ctx, z, h)]
    upper = [z for z in elems
             if prefix_leq(ctx, g, z) and prefix_leq(ctx, h, z)]
    meet = _unique_extreme_braid(ctx, lower, take_max=True)
    join = _unique_extreme_braid(ctx, upper, take_max=False)
    if meet is None or join is None:
        raise GarsideError("window too small to certify meet/join")
    return {"meet": meet, "join": join}


def _unique_extreme_braid(ctx: SimplesLattice, items: list[BraidElement],
                          take_max: bool) -> BraidElement | None:
    best = None
    for z in items:
        if best is None:
            best = z
        elif take_max and prefix_leq(ctx, best, z):
            best = z
        elif not take_max and prefix_leq(ctx, z, best):
            best = z
    if best is None:
        return None
    for z in items:
        ok = prefix_leq(ctx, z, best) if take_max else prefix_leq(ctx, best, z)
        if not ok:
            return None
    return best


_NBR_CACHE: dict[tuple[int, BraidElement], tuple[BraidElement, ...]] = {}


def thickening_neighbors(ctx: SimplesLattice, g: BraidElement,
                         cap: int = 100_000) -> tuple[BraidElement, ...]:
    """Neighbors of g in the thickening graph: the interval
    [g delta^-1, g delta] minus g itself."""
    key = (id(ctx), g)
    hit = _NBR_CACHE.get(key)
    if hit is not None:
        return hit
    lo = mult(ctx, g, delta_power(-1))
    hi = mult(ctx, g, delta_power(1))
    out = tuple(z for z in interval(ctx, lo, hi, cap=cap) if z != g)
    if len(_NBR_CACHE) < 100_000:
        _NBR_CACHE[key] = out
    return out


def thickening_ball(ctx: SimplesLattice, g: BraidElement, k: int,
                    cap: int = 100_000) -> set[BraidElement]:
    """BFS ball of radius k in the thickening graph.  The defining property
    (ball = interval [g delta^-k, g delta^k]) is asserted before returning."""
    if k < 0:
        raise GarsideError("radius must be >= 0")
    seen = {g}
    frontier = [g]
    for _ in range(k):
        new = []
        for x in frontier:
            for y in thickening_neighbors(ctx, x, cap=cap):
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"ball larger than {cap}")
        frontier = new
    expected = set(interval(ctx, mult(ctx, g, delta_power(-k)),
                            mult(ctx, g, delta_power(k)), cap=cap))
    assert seen == expected, "thickening ball differs from its interval"
    return seen


# -- text interchange ---------------------------------------------------------

def parse_word(text: str) -> list[int]:
    """Braid words as comma-separated signed atoms, e.g. "s1,s2,-s1"."""
    word = []
    text = text.strip()
    if not text:
        return word
    for piece in text.split(","):
        piece = piece.strip()
        sign = 1
        if piece.startswith("-"):
            sign = -1
            piece = piece[1:]
        if not piece.startswith("s"):
            raise GarsideError(f"bad atom {piece!r} (expected like 's1' or '-s2')")
        word.append(sign * int(piece[1:]))
    return word


def format_normal_form(ctx: SimplesLattice, g: BraidElement) -> str:
    """Render as "d^p | s... . s..." with one atom word per simple factor."""
    if not g.body:
        return f"d^{g.inf} |"
    factors = " . ".join(
        "".join(f"s{i}" for i in _simple_to_word(ctx, x)) for x in g.body)
    return f"d^{g.inf} | {factors}"
