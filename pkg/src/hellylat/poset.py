"""Finite posets with exhaustive, definition-level lattice analysis.

A FinitePoset stores the full order relation as one bitmask per element:
``up[i]`` has bit ``j`` set iff ``elements[i] <= elements[j]``.  Order axioms
(reflexivity, antisymmetry, transitivity) are checked at construction, so
every FinitePoset in circulation is a genuine partial order.  All analysis
operations (gradedness, meets and joins, the bowtie search, the flag
condition, interval Helly checks) are implemented by exhaustive search over
these bitmasks; they are meant as ground truth at desk scale, not as
asymptotically clever algorithms.

Conventions:
  - "meet" of x, y = the unique maximal common lower bound, when unique.
  - "graded" means every interval I(x, y) has a rank, i.e. all maximal
    chains of the interval have the same length.
  - a poset has a rank n when it is bounded and all maximal chains have
    length n.
  - "flag" means any three pairwise upperly bounded elements have a common
    upper bound.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Iterable, Iterator, Sequence


class PosetError(ValueError):
    """Invalid poset data (order axioms violated, unknown elements...)."""


class PreconditionError(PosetError):
    """An operation was called on a poset outside its stated domain."""


class CapExceeded(RuntimeError):
    """An enumeration exceeded its configured size guard."""


class _Ambiguous:
    """Result of bound() when several maximal/minimal candidates exist."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AMBIGUOUS"


AMBIGUOUS = _Ambiguous()


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Immutable finite poset over opaque hashable element identifiers."""

    __slots__ = ("elements", "labels", "_index", "_up", "_down", "_key", "_hash")

    def __init__(self, elements: Sequence[Any], up_rows: Sequence[int],
                 labels: Sequence[str] | None = None, _checked: bool = False):
        elements = tuple(elements)
        up_rows = tuple(up_rows)
        n = len(elements)
        if len(set(elements)) != n:
            raise PosetError("elements are not distinct")
        if labels is None:
            labels = tuple(str(e) for e in elements)
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise PosetError("labels length mismatch")
        self.elements = elements
        self.labels = labels
        self._index = {e: i for i, e in enumerate(elements)}
        self._up = up_rows
        if not _checked:
            self._check_axioms()
        full = (1 << n) - 1
        down = [0] * n
        for i in range(n):
            row = up_rows[i] & full
            for j in _iter_bits(row):
                down[j] |= 1 << i
        self._down = tuple(down)
        self._key = (elements, up_rows)
        self._hash = hash(self._key)

    def _check_axioms(self) -> None:
        n = len(self.elements)
        for i in range(n):
            row = self._up[i]
            if not (row >> i) & 1:
                raise PosetError(f"relation not reflexive at {self.labels[i]}")
            if row >> n:
                raise PosetError("relation row out of range")
            for j in _iter_bits(row):
                if j != i and (self._up[j] >> i) & 1:
                    raise PosetError(
                        f"relation not antisymmetric on {self.labels[i]}, {self.labels[j]}")
                if self._up[j] & ~row:
                    raise PosetError(
                        f"relation not transitive through {self.labels[i]} <= {self.labels[j]}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_leq(cls, elements: Sequence[Any], leq: Callable[[Any, Any], bool],
                 labels: Sequence[str] | None = None) -> "FinitePoset":
        elements = tuple(elements)
        rows = []
        for x in elements:
            row = 0
            for j, y in enumerate(elements):
                if leq(x, y):
                    row |= 1 << j
            rows.append(row)
        return cls(elements, rows, labels)

    @classmethod
    def from_covers(cls, elements: Sequence[Any], covers: Iterable[tuple[Any, Any]],
                    labels: Sequence[str] | None = None) -> "FinitePoset":
        """Build from a cover (Hasse) relation; the transitive-reflexive
        closure is computed here and the order axioms are then validated."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rows = [1 << i for i in range(n)]
        succ: list[list[int]] = [[] for _ in range(n)]
        for lo, hi in covers:
            if lo not in index or hi not in index:
                raise PosetError(f"cover ({lo!r}, {hi!r}) uses unknown element")
            succ[index[lo]].append(index[hi])
        # closure by reverse topological sweep; cycles surface as antisymmetry
        # failures in the constructor.
        for _ in range(n):
            changed = False
            for i in range(n):
                row = rows[i]
                for j in succ[i]:
                    new = row | rows[j]
                    if new != row:
                        rows[i] = row = new
                        changed = True
            if not changed:
                break
        return cls(elements, rows, labels)

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Any) -> bool:
        return x in self._index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FinitePoset) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FinitePoset({len(self.elements)} elements)"

    def index(self, x: Any) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def label(self, x: Any) -> str:
        return self.labels[self.index(x)]

    def leq(self, x: Any, y: Any) -> bool:
        return (self._up[self.index(x)] >> self.index(y)) & 1 == 1

    def lt(self, x: Any, y: Any) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: Any, y: Any) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    def upset_mask(self, x: Any) -> int:
        return self._up[self.index(x)]

    def downset_mask(self, x: Any) -> int:
        return self._down[self.index(x)]

    def elements_of(self, mask: int) -> list[Any]:
        return [self.elements[i] for i in _iter_bits(mask)]

    def minimum(self) -> Any | None:
        full = (1 << len(self.elements)) - 1
        for i, row in enumerate(self._up):
            if row == full:
                return self.elements[i]
        return None

    def maximum(self) -> Any | None:
        full = (1 << len(self.elements)) - 1
        for i, row in enumerate(self._down):
            if row == full:
                return self.elements[i]
        return None

    def covers(self) -> list[tuple[Any, Any]]:
        """All cover pairs (lo, hi): lo < hi with nothing strictly between."""
        out = []
        n = len(self.elements)
        for i in range(n):
            strict_up = self._up[i] & ~(1 << i)
            for j in _iter_bits(strict_up):
                between = strict_up & self._down[j] & ~(1 << j)
                if between == 0:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def cover_successors(self) -> list[list[int]]:
        n = len(self.elements)
        succ: list[list[int]] = [[] for _ in range(n)]
        for lo, hi in self.covers():
            succ[self.index(lo)].append(self.index(hi))
        return succ

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements, self._down, self.labels, _checked=True)

    def restrict(self, subset: Sequence[Any]) -> "FinitePoset":
        subset = tuple(subset)
        return FinitePoset.from_leq(subset, self.leq,
                                    tuple(self.label(x) for x in subset))

    def rank_of(self, x: Any) -> int:
        """Rank of x = longest chain length from a minimal element up to x.
        Meaningful when the poset is graded and bounded below."""
        order = self._topo_order()
        depth = [0] * len(self.elements)
        succ = self.cover_successors()
        for i in order:
            for j in succ[i]:
                depth[j] = max(depth[j], depth[i] + 1)
        return depth[self.index(x)]

    def _topo_order(self) -> list[int]:
        n = len(self.elements)
        ups = [(bin(self._up[i]).count("1"), i) for i in range(n)]
        ups.sort(reverse=True)  # many elements above => earlier
        return [i for _, i in ups]


# -- analysis --------------------------------------------------------------

@dataclass(frozen=True)
class PosetProfile:
    bounded_below: Any | None
    bounded_above: Any | None
    graded: bool
    rank: int | None
    meet_semilattice: bool
    lattice: bool
    flag: bool


@dataclass(frozen=True)
class Bowtie:
    a: Any
    b: Any
    c: Any
    d: Any


@dataclass(frozen=True)
class IntervalSpec:
    lo: Any
    hi: Any


@dataclass(frozen=True)
class IntervalDisjoint:
    """Two intervals of the family have empty intersection."""
    first: int
    second: int


@dataclass(frozen=True)
class IntervalHellyViolation:
    """Pairwise intersecting intervals without common element (impossible on
    a genuine lattice)."""
    indices: tuple[int, ...]


_PROFILE_CACHE: dict[tuple, PosetProfile] = {}


def analyze(p: FinitePoset) -> PosetProfile:
    """Compute every profile flag by exhaustive definition-level search."""
    cached = _PROFILE_CACHE.get(p._key)
    if cached is not None:
        return cached
    bot = p.minimum()
    top = p.maximum()
    graded = _is_graded(p)
    rank = None
    if graded and bot is not None and top is not None:
        rank = p.rank_of(top)
    meet_all, join_all = _semilattice_flags(p)
    profile = PosetProfile(
        bounded_below=bot,
        bounded_above=top,
        graded=graded,
        rank=rank,
        meet_semilattice=meet_all,
        lattice=meet_all and join_all,
        flag=_is_flag(p),
    )
    _PROFILE_CACHE[p._key] = profile
    return profile


def _is_graded(p: FinitePoset) -> bool:
    """Every interval has a rank (all of its maximal chains equal length)."""
    n = len(p.elements)
    if n == 0:
        return True
    if p.minimum() is not None or p.maximum() is not None:
        q = p if p.minimum() is not None else p.dual()
        # With a global minimum, gradedness is equivalent to the longest-path
        # rank increasing by exactly 1 along every cover.
        order = q._topo_order()
        succ = q.cover_successors()
        depth = [0] * n
        for i in order:
            for j in succ[i]:
                depth[j] = max(depth[j], depth[i] + 1)
        for i in range(n):
            for j in succ[i]:
                if depth[j] != depth[i] + 1:
                    return False
        return True
    # General case: check each interval directly.
    succ = p.cover_successors()
    for i in range(n):
        reach = p._up[i]
        for j in _iter_bits(reach & ~(1 << i)):
            inside = reach & p._down[j]
            lo_len, hi_len = _extreme_path_lengths(p, succ, inside, i, j)
            if lo_len != hi_len:
                return False
    return True


def _extreme_path_lengths(p: FinitePoset, succ: list[list[int]], inside: int,
                          src: int, dst: int) -> tuple[int, int]:
    order = [i for i in p._topo_order() if (inside >> i) & 1]
    INF = 1 << 30
    shortest = {i: INF for i in order}
    longest = {i: -INF for i in order}
    shortest[src] = longest[src] = 0
    for i in order:
        if longest[i] < 0:
            continue
        for j in succ[i]:
            if (inside >> j) & 1:
                shortest[j] = min(shortest[j], shortest[i] + 1)
                longest[j] = max(longest[j], longest[i] + 1)
    return shortest[dst], longest[dst]


def _unique_extreme(p: FinitePoset, candidates: int, maximal: bool):
    """Unique maximal (or minimal) element of a candidate set, if any.

    Returns (element, True) when unique, (None, False) when the set is empty,
    (AMBIGUOUS, False) when there are several maximal/minimal candidates.
    """
    if candidates == 0:
        return None, False
    rows = p._up if maximal else p._down
    best = None
    for i in _iter_bits(candidates):
        if rows[i] & candidates == (1 << i):
            if best is not None:
                return AMBIGUOUS, False
            best = i
    if best is None:  # cannot happen in a finite poset
        return AMBIGUOUS, False
    if maximal:
        dominated = p._down[best]
    else:
        dominated = p._up[best]
    if candidates & ~dominated:
        return AMBIGUOUS, False
    return p.elements[best], True


def _semilattice_flags(p: FinitePoset) -> tuple[bool, bool]:
    n = len(p.elements)
    meet_all = True
    join_all = True
    for i in range(n):
        for j in range(i + 1, n):
            if meet_all:
                res, ok = _unique_extreme(p, p._down[i] & p._down[j], maximal=True)
                if not ok:
                    meet_all = False
            if join_all:
                res, ok = _unique_extreme(p, p._up[i] & p._up[j], maximal=False)
                if not ok:
                    join_all = False
            if not meet_all and not join_all:
                return False, False
    return meet_all, join_all


def _is_flag(p: FinitePoset) -> bool:
    n = len(p.elements)
    ups = p._up
    for i in range(n):
        for j in range(i + 1, n):
            uij = ups[i] & ups[j]
            if uij == 0:
                continue
            for k in range(j + 1, n):
                if uij & ups[k]:
                    continue
                if ups[i] & ups[k] and ups[j] & ups[k]:
                    return False
    return True


def bound(p: FinitePoset, x: Any, y: Any, direction: str):
    """Meet or join of x, y by exhaustive scan.

    Returns the element when the unique maximal lower / minimal upper bound
    exists, None when there is no common bound at all, and AMBIGUOUS when
    several maximal/minimal candidates exist.
    """
    if direction not in ("meet", "join"):
        raise PosetError(f"direction must be 'meet' or 'join', got {direction!r}")
    i, j = p.index(x), p.index(y)
    if direction == "meet":
        candidates = p._down[i] & p._down[j]
        res, ok = _unique_extreme(p, candidates, maximal=True)
    else:
        candidates = p._up[i] & p._up[j]
        res, ok = _unique_extreme(p, candidates, maximal=False)
    return res if ok or res is AMBIGUOUS else None


def find_bowtie(p: FinitePoset) -> Bowtie | None:
    """Search four distinct elements a, b, c, d with a, c minimal upper
    bounds of {b, d} and b, d maximal lower bounds of {a, c}.

    Precondition: p bounded and graded.  For such posets the result is None
    exactly when p is a lattice.
    """
    profile = analyze(p)
    if profile.bounded_below is None or profile.bounded_above is None or not profile.graded:
        raise PreconditionError("bowtie search requires a bounded graded poset")
    n = len(p.elements)
    for bi in range(n):
        for di in range(bi + 1, n):
            if (p._up[bi] >> di) & 1 or (p._up[di] >> bi) & 1:
                continue
            common_up = p._up[bi] & p._up[di]
            minimal_ups = [k for k in _iter_bits(common_up)
                           if p._down[k] & common_up == (1 << k)]
            if len(minimal_ups) < 2:
                continue
            for ai_pos in range(len(minimal_ups)):
                for ci_pos in range(ai_pos + 1, len(minimal_ups)):
                    ai, ci = minimal_ups[ai_pos], minimal_ups[ci_pos]
                    common_down = p._down[ai] & p._down[ci]
                    maximal = {k for k in _iter_bits(common_down)
                               if p._up[k] & common_down == (1 << k)}
                    if bi in maximal and di in maximal:
                        return Bowtie(p.elements[ai], p.elements[bi],
                                      p.elements[ci], p.elements[di])
    return None


def pair_join(p: FinitePoset, x: Any, y: Any) -> Any | None:
    """Least upper bound of an upperly bounded pair in a meet-semilattice:
    the meet of all common upper bounds, which is itself an upper bound."""
    common = p._up[p.index(x)] & p._up[p.index(y)]
    if common == 0:
        return None
    res, ok = _unique_extreme(p, common, maximal=False)
    if not ok:
        return None
    return res


def family_join(p: FinitePoset, xs: Iterable[Any]) -> Any | None:
    """Join of a pairwise upperly bounded family in a graded flag
    meet-semilattice with minimum; None when some pair has no upper bound.

    Works by repeated pairwise joins: the flag condition guarantees that
    replacing two members by their join keeps the family pairwise upperly
    bounded, so the fold reaches the join of the whole family.  (For a
    finite poset, the bounded-rank maximal-subfamily argument reduces to
    this induction.)
    """
    profile = analyze(p)
    if not (profile.graded and profile.flag and profile.meet_semilattice
            and profile.bounded_below is not None):
        raise PreconditionError(
            "family_join requires a graded flag meet-semilattice with minimum")
    items = list(xs)
    if not items:
        return profile.bounded_below
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            if p._up[p.index(items[a])] & p._up[p.index(items[b])] == 0:
                return None
    acc = items[0]
    for nxt in items[1:]:
        acc = pair_join(p, acc, nxt)
        if acc is None:  # unreachable on a flag semilattice input
            return None
    return acc


def interval_helly_check(p: FinitePoset, family: Sequence[IntervalSpec]):
    """Common element of a pairwise intersecting interval family.

    Returns the witness element when one exists; an IntervalDisjoint report
    when some pair of intervals is disjoint; an IntervalHellyViolation when
    the family pairwise intersects with no common element (which cannot
    happen on a lattice).
    """
    if not family:
        raise PosetError("empty interval family")
    masks = []
    for spec in family:
        if not p.leq(spec.lo, spec.hi):
            raise PosetError(f"interval bounds out of order: {spec!r}")
        masks.append(p._up[p.index(spec.lo)] & p._down[p.index(spec.hi)])
    total = reduce(lambda a, b: a & b, masks)
    if total:
        return p.elements[next(_iter_bits(total))]
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if masks[i] & masks[j] == 0:
                return IntervalDisjoint(i, j)
    return IntervalHellyViolation(tuple(range(len(family))))


def maximal_chains(p: FinitePoset, cap: int = 200_000) -> list[tuple[Any, ...]]:
    """Every maximal chain exactly once, as an increasing element tuple."""
    n = len(p.elements)
    if n == 0:
        return []
    succ = p.cover_successors()
    minimal = [i for i in range(n) if p._down[i] == (1 << i)]
    out: list[tuple[Any, ...]] = []
    stack: list[tuple[int, list[int]]] = [(i, [i]) for i in reversed(minimal)]
    while stack:
        node, path = stack.pop()
        nxt = succ[node]
        if not nxt:
            out.append(tuple(p.elements[k] for k in path))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} maximal chains")
            continue
        for j in reversed(nxt):
            stack.append((j, path + [j]))
    return out


def are_isomorphic(p: FinitePoset, q: FinitePoset) -> bool:
    """Backtracking order-isomorphism test (desk scale)."""
    n = len(p.elements)
    if n != len(q.elements):
        return False

    def signature(poset: FinitePoset, i: int) -> tuple[int, int]:
        return (bin(poset._down[i]).count("1"), bin(poset._up[i]).count("1"))

    sig_p = [signature(p, i) for i in range(n)]
    sig_q = [signature(q, i) for i in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return False
    candidates = [[j for j in range(n) if sig_q[j] == sig_p[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: len(candidates[i]))
    mapping: dict[int, int] = {}
    used = set()

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for i2, j2 in mapping.items():
                if ((p._up[i] >> i2) & 1) != ((q._up[j] >> j2) & 1):
                    ok = False
                    break
                if ((p._up[i2] >> i) & 1) != ((q._up[j2] >> j) & 1):
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used.add(j)
                if extend(k + 1):
                    return True
                del mapping[i]
                used.discard(j)
        return False

    return extend(0)


# -- random bounded graded posets ------------------------------------------

def random_bounded_graded(seed: int, size: int, rank: int | None = None) -> FinitePoset:
    """Seeded layered-DAG sample of a bounded graded poset with <= size
    elements.

    Layer 0 = {bottom} and the top layer = {top}; cover edges only join
    consecutive layers and every middle element gets at least one edge down
    and one up, so the result is bounded and graded by construction.
    """
    rng = random.Random(seed)
    if size < 2:
        raise PosetError("need size >= 2 for a bounded poset")
    if rank is None:
        rank = rng.randint(1, max(1, min(4, size - 1)))
    inner = size - 2
    layers: list[int] = [1]
    remaining = inner
    mids = max(0, rank - 1)
    sizes = [0] * mids
    for k in range(mids):
        left = mids - k - 1
        hi = remaining - left
        if hi <= 0:
            sizes[k] = 0 if left else remaining
            remaining -= sizes[k]
            continue
        take = rng.randint(0 if left else max(0, remaining - 3 * left), hi)
        sizes[k] = take
        remaining -= take
    sizes = [s for s in sizes]
    layers.extend(s for s in sizes if s > 0)
    layers.append(1)
    names = []
    layer_of = []
    for li, cnt in enumerate(layers):
        for k in range(cnt):
            names.append(f"L{li}E{k}")
            layer_of.append(li)
    covers = []
    start = [0]
    for cnt in layers:
        start.append(start[-1] + cnt)
    for li in range(len(layers) - 1):
        lo_range = range(start[li], start[li + 1])
        hi_range = range(start[li + 1], start[li + 2])
        for hi in hi_range:
            lo = rng.choice(list(lo_range))
            covers.append((names[lo], names[hi]))
        for lo in lo_range:
            hi = rng.choice(list(hi_range))
            covers.append((names[lo], names[hi]))
        for lo in lo_range:
            for hi in hi_range:
                if rng.random() < 0.35:
                    covers.append((names[lo], names[hi]))
    p = FinitePoset.from_covers(names, set(covers))
    profile = analyze(p)
    assert profile.bounded_below is not None and profile.bounded_above is not None
    assert profile.graded
    return p


# -- JSON interchange -------------------------------------------------------

def poset_to_json(p: FinitePoset) -> str:
    covers = [[p.label(lo), p.label(hi)] for lo, hi in p.covers()]
    doc = {"elements": list(p.labels), "covers": sorted(covers)}
    return json.dumps(doc, sort_keys=True)


def poset_from_json(text: str) -> FinitePoset:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "elements" not in doc or "covers" not in doc:
        raise PosetError('poset JSON needs "elements" and "covers"')
    elements = [str(e) for e in doc["elements"]]
    covers = [(str(lo), str(hi)) for lo, hi in doc["covers"]]
    return FinitePoset.from_covers(elements, covers)
