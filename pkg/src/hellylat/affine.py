"""The affine version of a bounded graded lattice, over a discrete line.

Given a bounded graded lattice L of rank n and H = (1/k)Z, a point of the
affine version is a class [c, u]: a maximal chain c of L together with a
weakly increasing vector u in H^n, where two pairs are identified when they
differ only in chain entries at non-jump positions of u.  The canonical
representative (MPoint) therefore stores u plus the chain entry of rank i
for exactly the jump positions i (those with u_i < u_{i+1}); rank 0 and rank
n entries are pinned to the bottom and top of L.

Coordinates are held as integer multiples of 1/k ("ticks"), so every
computation here is exact integer arithmetic; public accessors convert to
Fraction.

The partial order is computed two ways:
  - criterion mode: componentwise on u plus, for each jump j of the lower
    point, a comparison of chain entries: with i minimal such that
    v_{i+1} >= u_{j+1}, the upper point's rank-i entry must lie below the
    lower point's rank-j entry in L.
  - oracle mode: reachability through elementary steps (raise the top part
    of a constant block of u by one tick, choosing the new chain entry just
    below the raised part), closed under search within a coordinate window.
The two modes are required to agree; the agreement is part of the test
surface, not an assumption.

Joins follow the elementary-step recursion: the join of two elementary
superiors of a common point is computed directly by block analysis (disjoint
blocks commute; overlapping blocks resolve through a meet taken in L), and
the general case folds one elementary step at a time.  Meets run the same
algorithm in the order-dual context.  The translation action, the distance
d(x, y) = min { t : (-t)x <= y <= t x } (by binary search over a provably
sufficient range), thickening windows, and the Boolean model M_H(2^[n]) =
H^n round out the module.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

from . import helly
from .poset import CapExceeded, FinitePoset, PosetError, analyze, _iter_bits


class AffineError(ValueError):
    pass


class AffineContext:
    """A bounded graded lattice base together with the tick denominator."""

    __slots__ = ("base", "n", "denom", "bottom", "top", "rank_of", "by_rank",
                 "_dual", "_posets_equal")

    def __init__(self, base: FinitePoset, denom: int = 1):
        profile = analyze(base)
        if not profile.lattice or not profile.graded or profile.rank is None:
            raise AffineError("base must be a bounded graded lattice")
        if profile.rank < 1:
            raise AffineError("base rank must be >= 1")
        if denom < 1:
            raise AffineError("denominator must be >= 1")
        self.base = base
        self.n = profile.rank
        self.denom = denom
        self.bottom = profile.bounded_below
        self.top = profile.bounded_above
        self.rank_of = {x: base.rank_of(x) for x in base.elements}
        by_rank: list[list[Any]] = [[] for _ in range(self.n + 1)]
        for x in base.elements:
            by_rank[self.rank_of[x]].append(x)
        self.by_rank = tuple(tuple(level) for level in by_rank)
        self._dual: AffineContext | None = None

    def dual(self) -> "AffineContext":
        if self._dual is None:
            d = AffineContext(self.base.dual(), self.denom)
            d._dual = self
            self._dual = d
        return self._dual

    def elements_between(self, lo: Any, hi: Any, rank: int) -> list[Any]:
        mask = self.base.upset_mask(lo) & self.base.downset_mask(hi)
        return [x for x in self.base.elements_of(mask) if self.rank_of[x] == rank]


@dataclass(frozen=True)
class MPoint:
    """Canonical representative: tick vector plus jump-position chain entries.

    jumps is a sorted tuple of (position, element) with 1 <= position <= n-1,
    listing the rank-``position`` chain entry for exactly the positions where
    u//denom steps up."""
    u: tuple[int, ...]
    jumps: tuple[tuple[int, Any], ...]

    def jump_map(self) -> dict[int, Any]:
        return dict(self.jumps)

    def coords(self, ctx: AffineContext) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, ctx.denom) for t in self.u)


def make_point(ctx: AffineContext, chain: Sequence[Any], u: Sequence) -> MPoint:
    """Canonical point from a maximal chain (listed bottom to top, length
    rank+1) and a weakly increasing coordinate vector over H."""
    if len(chain) != ctx.n + 1:
        raise AffineError(f"chain must have {ctx.n + 1} elements, got {len(chain)}")
    if chain[0] != ctx.bottom or chain[-1] != ctx.top:
        raise AffineError("chain must run from the bottom to the top of the base")
    for lo, hi in zip(chain, chain[1:]):
        if not ctx.base.lt(lo, hi):
            raise AffineError("chain entries out of order")
        if ctx.rank_of[hi] != ctx.rank_of[lo] + 1:
            raise AffineError("chain is not maximal")
    ticks = [_to_tick(ctx, val) for val in u]
    if len(ticks) != ctx.n:
        raise AffineError(f"need {ctx.n} coordinates, got {len(ticks)}")
    for a, b in zip(ticks, ticks[1:]):
        if a > b:
            raise AffineError("coordinates must be weakly increasing")
    jumps = tuple((i, chain[i]) for i in range(1, ctx.n)
                  if ticks[i - 1] < ticks[i])
    return MPoint(tuple(ticks), jumps)


def _to_tick(ctx: AffineContext, val) -> int:
    f = Fraction(val)
    t = f * ctx.denom
    if t.denominator != 1:
        raise AffineError(f"coordinate {val} is not a multiple of 1/{ctx.denom}")
    return int(t)


def constant_point(ctx: AffineContext, tick: int) -> MPoint:
    return MPoint((tick,) * ctx.n, ())


def origin(ctx: AffineContext) -> MPoint:
    return constant_point(ctx, 0)


def chain_entry(ctx: AffineContext, p: MPoint, rank: int) -> Any:
    """Chain entry of the given rank; canonical at rank 0, rank n, and the
    jump positions, which are the only ranks the order machinery reads."""
    if rank == 0:
        return ctx.bottom
    if rank == ctx.n:
        return ctx.top
    for pos, elem in p.jumps:
        if pos == rank:
            return elem
    raise AffineError(f"rank {rank} is not a jump position of {p}")


def translate(ctx: AffineContext, p: MPoint, t) -> MPoint:
    """Diagonal action: shift every coordinate by t in H, jumps unchanged."""
    dt = _to_tick(ctx, t)
    return translate_ticks(p, dt)


def translate_ticks(p: MPoint, dt: int) -> MPoint:
    return MPoint(tuple(c + dt for c in p.u), p.jumps)


# -- order ---------------------------------------------------------------------

def leq(ctx: AffineContext, alpha: MPoint, beta: MPoint,
        mode: str = "criterion") -> bool:
    if mode == "criterion":
        return _leq_criterion(ctx, alpha, beta)
    if mode == "oracle":
        return _leq_oracle(ctx, alpha, beta)
    raise AffineError(f"unknown order mode {mode!r}")


def _leq_criterion(ctx: AffineContext, alpha: MPoint, beta: MPoint) -> bool:
    u, v = alpha.u, beta.u
    if any(a > b for a, b in zip(u, v)):
        return False
    for j, a_entry in alpha.jumps:  # jumps at positions 1..n-1; u_j < u_{j+1}
        target = u[j]  # tick of u_{j+1} in 1-based speak
        i = _min_index_reaching(v, target, j)
        if i == 0:
            continue  # bottom entry of beta, below everything
        b_entry = chain_entry(ctx, beta, i)
        if not ctx.base.leq(b_entry, a_entry):
            return False
    return True


def _min_index_reaching(v: tuple[int, ...], target: int, j: int) -> int:
    """Minimal i in {0..j} with v_{i+1} >= target (1-based positions);
    exists because v_{j+1} >= u_{j+1} = target was already checked."""
    for i in range(j + 1):
        if v[i] >= target:
            return i
    raise AssertionError("componentwise comparison should guarantee a hit")


def _leq_oracle(ctx: AffineContext, alpha: MPoint, beta: MPoint) -> bool:
    """Reachability through elementary steps, pruned to the coordinate box
    below beta (safe: every intermediate point of a witness chain is below
    beta, hence inside the box)."""
    if any(a > b for a, b in zip(alpha.u, beta.u)):
        return False
    seen = {alpha}
    frontier = [alpha]
    while frontier:
        new = []
        for p in frontier:
            if p == beta:
                return True
            for q in elementary_superiors(ctx, p):
                if q in seen:
                    continue
                if all(a <= b for a, b in zip(q.u, beta.u)):
                    seen.add(q)
                    new.append(q)
        frontier = new
    return beta in seen


# -- elementary steps ----------------------------------------------------------

@dataclass(frozen=True)
class ElementaryStep:
    """Raise positions i..j (a top part of a constant block of u) by one
    tick, installing b as the new rank i-1 chain entry."""
    i: int
    j: int
    b: Any


def _blocks(u: tuple[int, ...]) -> list[tuple[int, int]]:
    """Maximal constant blocks of u as (i0, j) in 1-based positions."""
    out = []
    start = 0
    for k in range(1, len(u) + 1):
        if k == len(u) or u[k] != u[start]:
            out.append((start + 1, k))
            start = k
    return out


def elementary_superiors(ctx: AffineContext, p: MPoint) -> list[MPoint]:
    """All points one elementary step above p, without duplicates."""
    out = []
    seen = set()
    for i0, j in _blocks(p.u):
        lo = chain_entry(ctx, p, i0 - 1)
        hi = chain_entry(ctx, p, j)
        for i in range(i0, j + 1):
            for b in ctx.elements_between(lo, hi, i - 1):
                q = elementary_step(ctx, p, ElementaryStep(i, j, b))
                if q not in seen:
                    seen.add(q)
                    out.append(q)
    return out


def elementary_step(ctx: AffineContext, p: MPoint, step: ElementaryStep) -> MPoint:
    """Apply one elementary step, validating its block data."""
    i, j, b = step.i, step.j, step.b
    n = ctx.n
    u = p.u
    if not 1 <= i <= j <= n:
        raise AffineError(f"bad step positions ({i}, {j})")
    if u[i - 1] != u[j - 1]:
        raise AffineError("step positions do not span a constant block")
    if j < n and u[j - 1] >= u[j]:
        raise AffineError("step block must end at the top of its level")
    i0 = i
    while i0 > 1 and u[i0 - 2] == u[i - 1]:
        i0 -= 1
    lo = chain_entry(ctx, p, i0 - 1)
    hi = chain_entry(ctx, p, j)
    if ctx.rank_of.get(b) != i - 1:
        raise AffineError(f"step entry must have rank {i - 1}")
    if not (ctx.base.leq(lo, b) and ctx.base.leq(b, hi)):
        raise AffineError("step entry outside its chain interval")
    v = list(u)
    for k in range(i - 1, j):
        v[k] = u[j - 1] + 1
    v = tuple(v)
    entries = {pos: elem for pos, elem in p.jumps}
    entries[i - 1] = b
    jumps = tuple((k, entries[k]) for k in range(1, n) if v[k - 1] < v[k])
    return MPoint(v, jumps)


def first_step_toward(ctx: AffineContext, alpha: MPoint, beta: MPoint) -> MPoint:
    """The canonical elementary step from alpha toward beta (requires
    alpha < beta); iterating it reaches beta."""
    u, v = alpha.u, beta.u
    i = next(k + 1 for k in range(ctx.n) if u[k] < v[k])
    j = i
    while j < ctx.n and u[j] == u[i - 1]:
        j += 1
    b = chain_entry(ctx, beta, i - 1)
    return elementary_step(ctx, alpha, ElementaryStep(i, j, b))


def step_decomposition(ctx: AffineContext, alpha: MPoint,
                       beta: MPoint) -> list[MPoint]:
    """The canonical elementary chain alpha = p_0 < p_1 < ... < p_m = beta."""
    out = [alpha]
    cur = alpha
    guard = sum(b - a for a, b in zip(alpha.u, beta.u)) + 1
    for _ in range(guard):
        if cur == beta:
            return out
        cur = first_step_toward(ctx, cur, beta)
        out.append(cur)
    raise AssertionError("step decomposition failed to terminate")


def step_count(ctx: AffineContext, alpha: MPoint, beta: MPoint) -> int:
    """Length of the canonical elementary decomposition (recursion
    bookkeeping for the join)."""
    return len(step_decomposition(ctx, alpha, beta)) - 1


# -- join and meet ---------------------------------------------------------------

def join(ctx: AffineContext, beta: MPoint, gamma: MPoint) -> MPoint:
    """Least upper bound, by the elementary-step recursion."""
    if _leq_criterion(ctx, beta, gamma):
        return gamma
    if _leq_criterion(ctx, gamma, beta):
        return beta
    alpha = _common_lower_bound(ctx, beta, gamma)
    acc = gamma
    cur = alpha
    guard = sum(b - a for a, b in zip(alpha.u, beta.u)) + 1
    for _ in range(guard):
        if cur == beta:
            return acc
        nxt = first_step_toward(ctx, cur, beta)
        acc = _join_elem_general(ctx, cur, nxt, acc)
        cur = nxt
    raise AssertionError("join fold failed to terminate")


def meet(ctx: AffineContext, beta: MPoint, gamma: MPoint) -> MPoint:
    """Greatest lower bound, via the join in the order-dual context."""
    dual = ctx.dual()
    return _dual_point(ctx, join(dual, _dual_point(ctx, beta), _dual_point(ctx, gamma)))


def _dual_point(ctx: AffineContext, p: MPoint) -> MPoint:
    """Reverse and negate coordinates; a rank-r jump entry becomes rank n-r."""
    n = ctx.n
    u = tuple(-t for t in reversed(p.u))
    jumps = tuple(sorted((n - pos, elem) for pos, elem in p.jumps))
    return MPoint(u, jumps)


def _common_lower_bound(ctx: AffineContext, beta: MPoint, gamma: MPoint) -> MPoint:
    """A lower bound of both: slide beta diagonally below gamma's minimum."""
    k = max(0, beta.u[-1] - gamma.u[0] + 1)
    alpha = translate_ticks(beta, -k)
    assert _leq_criterion(ctx, alpha, beta) and _leq_criterion(ctx, alpha, gamma)
    return alpha


def _step_data(ctx: AffineContext, alpha: MPoint, beta: MPoint) -> ElementaryStep:
    """Recover (i, j, b) for an elementary superior beta of alpha."""
    diff = [k for k in range(ctx.n) if alpha.u[k] != beta.u[k]]
    i, j = diff[0] + 1, diff[-1] + 1
    return ElementaryStep(i, j, chain_entry(ctx, beta, i - 1))


def _join_of_steps(ctx: AffineContext, alpha: MPoint, beta: MPoint,
                   gamma: MPoint) -> MPoint:
    """Join of two elementary superiors of alpha.

    Disjoint blocks: apply the other step to each side (the two orders agree).
    Overlapping blocks (same level top): the coarser raise dominates when the
    chain entries are comparable; otherwise raise from the meet of the two
    entries taken in the base lattice."""
    if beta == gamma:
        return beta
    sb = _step_data(ctx, alpha, beta)
    sg = _step_data(ctx, alpha, gamma)
    if sb.j < sg.i or sg.j < sb.i:
        delta = elementary_step(ctx, beta, sg)
        delta2 = elementary_step(ctx, gamma, sb)
        assert delta == delta2, "disjoint elementary steps must commute"
        return delta
    if sg.i < sb.i:
        sb, sg = sg, sb
        beta, gamma = gamma, beta
    assert sb.j == sg.j, "overlapping blocks must share their top"
    if sb.i == sg.i:
        assert sb.b != sg.b
    if ctx.base.leq(sb.b, sg.b):
        return beta
    g = _base_meet(ctx, sb.b, sg.b)
    r = ctx.rank_of[g] + 1
    delta = elementary_step(ctx, alpha, ElementaryStep(r, sb.j, g))
    assert _leq_criterion(ctx, beta, delta) and _leq_criterion(ctx, gamma, delta)
    return delta


def _base_meet(ctx: AffineContext, x: Any, y: Any) -> Any:
    from .poset import AMBIGUOUS, bound
    res = bound(ctx.base, x, y, "meet")
    if res is None or res is AMBIGUOUS:
        raise AffineError("base failed to provide a meet")
    return res


def _join_elem_general(ctx: AffineContext, alpha: MPoint, beta: MPoint,
                       gamma: MPoint) -> MPoint:
    """Join of beta and gamma where beta is an elementary superior of alpha
    and gamma >= alpha; recursion peels gamma one elementary step at a time."""
    if gamma == alpha:
        return beta
    if _leq_criterion(ctx, beta, gamma):
        return gamma
    g1 = first_step_toward(ctx, alpha, gamma)
    d1 = _join_of_steps(ctx, alpha, beta, g1)
    # beta v gamma = d1 v gamma, and d1 is one elementary step above g1
    # (d1 == g1 would force beta <= gamma, excluded above).
    assert d1 != g1
    return _join_elem_general(ctx, g1, d1, gamma)


# -- distance and geodesics -------------------------------------------------------

def distance_ticks(ctx: AffineContext, x: MPoint, y: MPoint) -> int:
    """Minimal t (in ticks) with (-t)x <= y <= t x, by binary search; the
    search range max(u_n - v_1, v_n - u_1, 0) provably satisfies the
    predicate, and the predicate is monotone in t."""
    hi = max(x.u[-1] - y.u[0], y.u[-1] - x.u[0], 0)
    lo = 0

    def ok(t: int) -> bool:
        return (_leq_criterion(ctx, translate_ticks(x, -t), y)
                and _leq_criterion(ctx, y, translate_ticks(x, t)))

    assert ok(hi)
    while lo < hi:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def distance(ctx: AffineContext, x: MPoint, y: MPoint) -> Fraction:
    return Fraction(distance_ticks(ctx, x, y), ctx.denom)


def geodesic_point(ctx: AffineContext, x: MPoint, y: MPoint, r) -> MPoint:
    """A point z with d(x, z) <= r and d(z, y) <= d(x, y) - r: the meet of
    the r-raise of x with the (d-r)-raise of y (both dominate the matching
    lowerings, so the meet lands between)."""
    rt = _to_tick(ctx, r)
    d = distance_ticks(ctx, x, y)
    if rt < 0 or rt > d:
        raise AffineError(f"r must lie in [0, d(x,y)] = [0, {Fraction(d, ctx.denom)}]")
    z = meet(ctx, translate_ticks(x, rt), translate_ticks(y, d - rt))
    assert distance_ticks(ctx, x, z) <= rt
    assert distance_ticks(ctx, z, y) <= d - rt
    return z


# -- windows and enumeration -------------------------------------------------------

def interval_points(ctx: AffineContext, lo: MPoint, hi: MPoint,
                    cap: int = 500_000) -> list[MPoint]:
    """All points of the order interval [lo, hi], by elementary-step BFS
    from lo pruned against hi."""
    if not _leq_criterion(ctx, lo, hi):
        return []
    seen = {lo}
    frontier = [lo]
    while frontier:
        new = []
        for p in frontier:
            for q in elementary_superiors(ctx, p):
                if q not in seen and _leq_criterion(ctx, q, hi):
                    seen.add(q)
                    new.append(q)
                    if len(seen) > cap:
                        raise CapExceeded(f"interval larger than {cap}")
        frontier = new
    return sorted(seen, key=lambda p: (p.u, tuple(ctx.base.index(e) for _, e in p.jumps)))


def thickening_window(ctx: AffineContext, center: MPoint,
                      radius: int, cap: int = 500_000) -> helly.SimpleGraph:
    """Graph on the interval [(-radius)center, (+radius)center] with an edge
    between x and y whenever (-1)x <= y <= (+1)x (one tick each way)."""
    lo = translate_ticks(center, -radius * ctx.denom)
    hi = translate_ticks(center, radius * ctx.denom)
    points = interval_points(ctx, lo, hi, cap=cap)
    buckets: dict[tuple[int, ...], list[MPoint]] = {}
    for p in points:
        buckets.setdefault(p.u, []).append(p)
    edges = []
    for p in points:
        # cross-bucket candidates once (v lexicographically above p.u),
        # same-bucket pairs once below.
        for v in _nearby_vectors(p.u):
            for q in buckets.get(v, ()):
                if _unit_adjacent(ctx, p, q):
                    edges.append((p, q))
    for bucket in buckets.values():
        for a in range(len(bucket)):
            for b in range(a + 1, len(bucket)):
                if _unit_adjacent(ctx, bucket[a], bucket[b]):
                    edges.append((bucket[a], bucket[b]))
    return helly.SimpleGraph(points, edges)


def _nearby_vectors(u: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Weakly increasing integer vectors within one tick of u, strictly
    greater in lexicographic order (to emit each candidate edge once)."""
    deltas = [(-1, 0, 1)] * len(u)
    for offs in _product(deltas):
        v = tuple(a + d for a, d in zip(u, offs))
        if v <= u:
            continue
        if all(v[k] <= v[k + 1] for k in range(len(v) - 1)):
            yield v


def _product(choices: list[tuple[int, ...]]) -> Iterator[tuple[int, ...]]:
    if not choices:
        yield ()
        return
    for head in choices[0]:
        for rest in _product(choices[1:]):
            yield (head,) + rest


def _unit_adjacent(ctx: AffineContext, p: MPoint, q: MPoint) -> bool:
    return (_leq_criterion(ctx, translate_ticks(p, -1), q)
            and _leq_criterion(ctx, q, translate_ticks(p, 1)))


def enumerate_points(ctx: AffineContext, lo_tick: int, hi_tick: int) -> list[MPoint]:
    """Every point whose coordinates lie in [lo_tick, hi_tick]: all weakly
    increasing tick vectors with every admissible jump labeling (used by the
    brute-force oracles)."""
    n = ctx.n
    out: list[MPoint] = []

    def vectors(prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        start = prefix[-1] if prefix else lo_tick
        for t in range(start, hi_tick + 1):
            yield from vectors(prefix + [t])

    for u in vectors([]):
        jump_positions = [k for k in range(1, n) if u[k - 1] < u[k]]

        def labelings(idx: int, prev_elem, acc: list[tuple[int, Any]]):
            if idx == len(jump_positions):
                out.append(MPoint(u, tuple(acc)))
                return
            pos = jump_positions[idx]
            for e in ctx.by_rank[pos]:
                if ctx.base.leq(prev_elem, e):
                    labelings(idx + 1, e, acc + [(pos, e)])

        labelings(0, ctx.bottom, [])
    return out


def brute_force_lub(ctx: AffineContext, beta: MPoint, gamma: MPoint) -> MPoint:
    """Independent least-upper-bound oracle: enumerate all candidate points
    in a sufficient coordinate box, filter the upper bounds, and take the
    unique minimal one."""
    lo = min(beta.u[0], gamma.u[0])
    hi = max(beta.u[-1], gamma.u[-1])
    ups = [p for p in enumerate_points(ctx, lo, hi)
           if _leq_criterion(ctx, beta, p) and _leq_criterion(ctx, gamma, p)]
    assert ups, "constant top point must be an upper bound"
    minimal = [p for p in ups
               if not any(q != p and _leq_criterion(ctx, q, p) for q in ups)]
    assert len(minimal) == 1, f"expected unique minimal upper bound, got {minimal}"
    least = minimal[0]
    assert all(_leq_criterion(ctx, least, q) for q in ups)
    return least


def brute_force_glb(ctx: AffineContext, beta: MPoint, gamma: MPoint) -> MPoint:
    lo = min(beta.u[0], gamma.u[0])
    hi = max(beta.u[-1], gamma.u[-1])
    downs = [p for p in enumerate_points(ctx, lo, hi)
             if _leq_criterion(ctx, p, beta) and _leq_criterion(ctx, p, gamma)]
    assert downs
    maximal = [p for p in downs
               if not any(q != p and _leq_criterion(ctx, p, q) for q in downs)]
    assert len(maximal) == 1, f"expected unique maximal lower bound, got {maximal}"
    greatest = maximal[0]
    assert all(_leq_criterion(ctx, q, greatest) for q in downs)
    return greatest


# -- orthoscheme distances and the Boolean model -------------------------------------

def unit_interval_points(ctx: AffineContext) -> list[MPoint]:
    """Points of the realization window [0_M, 1_M] at the context denominator."""
    return interval_points(ctx, origin(ctx), constant_point(ctx, ctx.denom))


def convert_point(p: MPoint, src_denom: int, dst_ctx: AffineContext) -> MPoint:
    """Re-express a point built over (1/src_denom)Z at the destination
    context's denominator; errors when a coordinate is not representable."""
    ticks = []
    for t in p.u:
        scaled = Fraction(t * dst_ctx.denom, src_denom)
        if scaled.denominator != 1:
            raise AffineError(
                f"coordinate {Fraction(t, src_denom)} not representable at "
                f"denominator {dst_ctx.denom}")
        ticks.append(int(scaled))
    return MPoint(tuple(ticks), p.jumps)


def orthoscheme_distance(base: FinitePoset, x: MPoint, y: MPoint, k: int,
                         src_denom: int = 1) -> Fraction:
    """Distance at denominator k between points of the unit realization
    window [0_M, 1_M], after re-expressing both points at denominator k.

    The discretized distance dominates the underlying continuous one and
    shrinks under denominator refinement: d_{k'} <= d_k whenever k | k'."""
    ctx = AffineContext(base, k)
    xs = convert_point(x, src_denom, ctx)
    ys = convert_point(y, src_denom, ctx)
    for p in (xs, ys):
        if p.u[0] < 0 or p.u[-1] > k:
            raise AffineError("orthoscheme points must lie in the unit window")
    return distance(ctx, xs, ys)


def point_from_fractions(ctx: AffineContext, coords: Sequence[Fraction],
                         jump_entries: dict[int, Any] | None = None) -> MPoint:
    """Build a canonical point directly from fractional coordinates plus the
    chain entries at jump positions (entries at non-jumps are not accepted)."""
    ticks = tuple(_to_tick(ctx, c) for c in coords)
    for a, b in zip(ticks, ticks[1:]):
        if a > b:
            raise AffineError("coordinates must be weakly increasing")
    jump_entries = dict(jump_entries or {})
    jumps = []
    for pos in range(1, ctx.n):
        if ticks[pos - 1] < ticks[pos]:
            if pos not in jump_entries:
                raise AffineError(f"missing chain entry at jump position {pos}")
            e = jump_entries.pop(pos)
            if ctx.rank_of.get(e) != pos:
                raise AffineError(f"entry at position {pos} must have rank {pos}")
            jumps.append((pos, e))
    if jump_entries:
        raise AffineError(f"entries given at non-jump positions {sorted(jump_entries)}")
    p = MPoint(ticks, tuple(jumps))
    _validate_chain(ctx, p)
    return p


def _validate_chain(ctx: AffineContext, p: MPoint) -> None:
    prev = ctx.bottom
    for pos, elem in p.jumps:
        if not ctx.base.leq(prev, elem):
            raise AffineError("jump entries do not form a chain")
        prev = elem
    if not ctx.base.leq(prev, ctx.top):
        raise AffineError("jump entries do not form a chain")


def boolean_model(ctx: AffineContext, p: MPoint) -> tuple[Fraction, ...]:
    """Order isomorphism M_H(Boolean_n) -> H^n: coordinate e of the image is
    the level at which e enters the chain."""
    n = ctx.n
    ground = frozenset(range(1, n + 1))
    if ctx.bottom != frozenset() or ctx.top != ground:
        raise AffineError("boolean_model needs the Boolean base")
    out: dict[int, Fraction] = {}
    prev_elem = ctx.bottom
    prev_pos = 0
    levels = list(p.jumps) + [(n, ctx.top)]
    for pos, elem in levels:
        for e in elem - prev_elem:
            out[e] = Fraction(p.u[prev_pos], ctx.denom)
        prev_elem = elem
        prev_pos = pos
    return tuple(out[e] for e in range(1, n + 1))


def boolean_point(ctx: AffineContext, vector: Sequence) -> MPoint:
    """Inverse of boolean_model: the point whose chain adds coordinates in
    increasing value order."""
    n = ctx.n
    ticks = [_to_tick(ctx, v) for v in vector]
    order = sorted(range(n), key=lambda k: (ticks[k], k))
    u = tuple(ticks[k] for k in order)
    jumps = []
    acc: set[int] = set()
    for idx, k in enumerate(order):
        acc.add(k + 1)
        pos = idx + 1
        if pos < n and u[pos - 1] < u[pos]:
            jumps.append((pos, frozenset(acc)))
    return MPoint(u, tuple(jumps))


# -- serialization ------------------------------------------------------------------

def point_to_json(ctx: AffineContext, p: MPoint) -> str:
    doc = {
        "u": [str(Fraction(t, ctx.denom)) for t in p.u],
        "jumps": {str(pos): ctx.base.label(elem) for pos, elem in p.jumps},
    }
    return json.dumps(doc, sort_keys=True)


def point_from_json(ctx: AffineContext, text: str) -> MPoint:
    doc = json.loads(text)
    coords = [Fraction(s) for s in doc["u"]]
    by_label = {ctx.base.label(e): e for e in ctx.base.elements}
    entries = {}
    for pos, label in doc.get("jumps", {}).items():
        if label not in by_label:
            raise AffineError(f"unknown element label {label!r}")
        entries[int(pos)] = by_label[label]
    return point_from_fractions(ctx, coords, entries)
