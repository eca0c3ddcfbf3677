"""Thin Euclidean models on Z^n: the extended type-A complex and the type-C
complex, with type functions, fundamental-domain reduction, generator
actions, and local-poset extraction.

Family "A_extended": vertices are all of Z^n; two vertices span an edge of
the triangulated space exactly when one fits in the unit box above the other,
so comparability is the componentwise criterion u <= v <= u + (1,..,1).
This relation is local (deliberately not transitive across boxes); the poset
structure lives in the vertex links, extracted by local_poset.  The height
sum(x) plays the role of an integer type; reduced mod n it is the building
type.  Generators: adjacent transpositions plus the affine move
(x_1,..,x_n) -> (x_n - 1, x_2,..,x_{n-1}, x_1 + 1); the fundamental column
is x_1 <= ... <= x_n <= x_1 + 1.

Family "C": vertices are Z^n, the reflection group is (2Z)^n (even
translations) extended by signed permutations; the fundamental domain is the
orthoscheme with vertices (0,..,0), (0,..,0,1), ..., (1,..,1) and the type
of a vertex is its number of odd coordinates.  Two vertices are adjacent
when some group element maps both into the fundamental vertex set (decided
by brute force over the point group after an even translation toward the
origin), and v < v' when they are adjacent with lower type; that relation is
globally transitive here, which the FinitePoset constructor re-verifies each
time a local poset is built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Sequence

from .poset import FinitePoset, PosetError

FAMILIES = ("A_extended", "C")


class CoxeterError(ValueError):
    pass


@dataclass(frozen=True)
class LatticePoint:
    coords: tuple[int, ...]
    family: str

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise CoxeterError(f"unknown family {self.family!r}")
        if not self.coords:
            raise CoxeterError("empty coordinate vector")


def a_point(*coords: int) -> LatticePoint:
    return LatticePoint(tuple(coords), "A_extended")


def c_point(*coords: int) -> LatticePoint:
    return LatticePoint(tuple(coords), "C")


def type_value(p: LatticePoint) -> int:
    """A_extended: the integer height sum(x) (building type = height mod n).
    C: the number of odd coordinates, in {0..n}."""
    if p.family == "A_extended":
        return sum(p.coords)
    return sum(1 for c in p.coords if c % 2)


def building_type(p: LatticePoint) -> int:
    if p.family == "A_extended":
        return sum(p.coords) % len(p.coords)
    return type_value(p)


def _check_pair(u: LatticePoint, v: LatticePoint) -> None:
    if u.family != v.family:
        raise CoxeterError("family mismatch")
    if len(u.coords) != len(v.coords):
        raise CoxeterError("dimension mismatch")


def compare(u: LatticePoint, v: LatticePoint) -> str:
    """'less' | 'greater' | 'equal' | 'incomparable'."""
    _check_pair(u, v)
    if u.coords == v.coords:
        return "equal"
    if u.family == "A_extended":
        if _box_leq(u.coords, v.coords):
            return "less"
        if _box_leq(v.coords, u.coords):
            return "greater"
        return "incomparable"
    if not c_adjacent(u, v):
        return "incomparable"
    tu, tv = type_value(u), type_value(v)
    assert tu != tv, "adjacent vertices must have different types"
    return "less" if tu < tv else "greater"


def leq(u: LatticePoint, v: LatticePoint) -> bool:
    return compare(u, v) in ("less", "equal")


def _box_leq(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(0 <= y - x <= 1 for x, y in zip(a, b))


# -- A_extended: generators, fundamental column, simplices ----------------------

def a_generators(n: int) -> list[str]:
    return [f"w{i}" for i in range(1, n + 1)]


def a_apply(move: str, x: tuple[int, ...]) -> tuple[int, ...]:
    n = len(x)
    i = int(move[1:])
    if not 1 <= i <= n:
        raise CoxeterError(f"bad generator {move!r}")
    if i < n:
        y = list(x)
        y[i - 1], y[i] = y[i], y[i - 1]
        return tuple(y)
    return (x[n - 1] - 1,) + x[1:n - 1] + (x[0] + 1,)


def in_fundamental_column(x: tuple[int, ...]) -> bool:
    return all(x[k] <= x[k + 1] for k in range(len(x) - 1)) and x[-1] <= x[0] + 1


def a_maximal_simplices(n: int, lo: int, hi: int,
                        pad: int = 6) -> list[tuple[tuple[int, ...], ...]]:
    """Vertex chains of the maximal simplices meeting the coordinate window
    [lo, hi]: the orbit, under the generator action, of the fundamental
    chains (base level k, cyclic start i), enumerated by BFS inside a padded
    window.  This is the generative list the componentwise box criterion is
    validated against."""
    seeds = []
    for k in range(lo - pad, hi + pad):
        for i in range(n):
            chain = []
            for t in range(n, -1, -1):
                v = [k] * n
                for s in range(t, n):
                    v[(i + s) % n] += 1
                chain.append(tuple(v))
            seeds.append(tuple(chain))
    gens = a_generators(n)
    seen = set(seeds)
    frontier = list(seeds)
    while frontier:
        new = []
        for chain in frontier:
            for mv in gens:
                img = tuple(sorted((a_apply(mv, v) for v in chain),
                                   key=lambda v: (sum(v), v)))
                if img in seen:
                    continue
                if any(c < lo - pad or c > hi + pad for vert in img for c in vert):
                    continue
                seen.add(img)
                new.append(img)
        frontier = new
    return [chain for chain in sorted(seen)
            if all(lo <= c <= hi for vert in chain for c in vert)]


def reduce_to_fundamental(p: LatticePoint) -> tuple[tuple[str, ...], LatticePoint]:
    """Witness word of generator moves (applied left to right) carrying the
    point into the fundamental domain, plus the reduced point."""
    if p.family == "A_extended":
        return _a_reduce(p)
    return _c_reduce(p)


def _a_reduce(p: LatticePoint) -> tuple[tuple[str, ...], LatticePoint]:
    x = p.coords
    n = len(x)
    moves: list[str] = []
    fuel = 8 * (n + 1) * (1 + max(x) - min(x)) ** 2 + 64
    cur = x
    for _ in range(fuel):
        if in_fundamental_column(cur):
            out = LatticePoint(cur, "A_extended")
            assert _a_replay(moves, x) == cur
            return tuple(moves), out
        descent = next((k for k in range(n - 1) if cur[k] > cur[k + 1]), None)
        if descent is not None:
            moves.append(f"w{descent + 1}")
            cur = a_apply(moves[-1], cur)
            continue
        moves.append(f"w{n}")
        cur = a_apply(moves[-1], cur)
    # fuel exhausted: fall back to exhaustive orbit search (guards against
    # convention slips; not expected to run).
    return _a_reduce_bfs(p)


def _a_replay(moves: Sequence[str], x: tuple[int, ...]) -> tuple[int, ...]:
    for m in moves:
        x = a_apply(m, x)
    return x


def _a_reduce_bfs(p: LatticePoint) -> tuple[tuple[str, ...], LatticePoint]:
    n = len(p.coords)
    start = p.coords
    seen = {start: ()}
    frontier = [start]
    while frontier:
        new = []
        for cur in frontier:
            if in_fundamental_column(cur):
                return seen[cur], LatticePoint(cur, "A_extended")
            for mv in a_generators(n):
                nxt = a_apply(mv, cur)
                if nxt not in seen:
                    seen[nxt] = seen[cur] + (mv,)
                    new.append(nxt)
        frontier = new
    raise AssertionError("orbit search exhausted without reaching the column")


# -- C family: point group, adjacency, reduction ---------------------------------

def _signed_perms(n: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield perm, signs


def _apply_signed(perm: tuple[int, ...], signs: tuple[int, ...],
                  x: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(signs[k] * x[perm[k]] for k in range(len(x)))


def c_fundamental_vertices(n: int) -> list[tuple[int, ...]]:
    """The orthoscheme vertex chain: i trailing ones, i = 0..n."""
    return [tuple([0] * (n - i) + [1] * i) for i in range(n + 1)]


def c_adjacent(u: LatticePoint, v: LatticePoint) -> bool:
    """Some reflection-group element (even translation + signed permutation)
    maps both vertices into the fundamental orthoscheme's vertex set."""
    _check_pair(u, v)
    if u.coords == v.coords:
        return False
    n = len(u.coords)
    if any(abs(a - b) > 1 for a, b in zip(u.coords, v.coords)):
        return False
    base = tuple(c - (c % 2) for c in u.coords)
    u0 = tuple(a - b for a, b in zip(u.coords, base))
    v0 = tuple(a - b for a, b in zip(v.coords, base))
    targets = set(c_fundamental_vertices(n))
    for perm, signs in _signed_perms(n):
        gu = _apply_signed(perm, signs, u0)
        gv = _apply_signed(perm, signs, v0)
        shift = tuple(2 if c == -1 else 0 for c in gu)
        gu = tuple(a + b for a, b in zip(gu, shift))
        if gu not in targets:
            continue
        gv = tuple(a + b for a, b in zip(gv, shift))
        if gv in targets:
            return True
    return False


def c_neighbors(v: LatticePoint) -> list[LatticePoint]:
    n = len(v.coords)
    out = []
    for offs in itertools.product((-1, 0, 1), repeat=n):
        if all(o == 0 for o in offs):
            continue
        w = LatticePoint(tuple(a + o for a, o in zip(v.coords, offs)), "C")
        if c_adjacent(v, w):
            out.append(w)
    return out


def _c_reduce(p: LatticePoint) -> tuple[tuple[str, ...], LatticePoint]:
    """Fold coordinates into [0, 1] by the reflections x_1 = 0 and x_n = 1
    after sorting with adjacent transpositions; the result is the orthoscheme
    vertex with the same number of odd coordinates."""
    cur = list(p.coords)
    n = len(cur)
    moves: list[str] = []

    def sort_pass():
        changed = True
        while changed:
            changed = False
            for k in range(n - 1):
                if cur[k] > cur[k + 1]:
                    cur[k], cur[k + 1] = cur[k + 1], cur[k]
                    moves.append(f"t{k + 1}")
                    changed = True

    fuel = 4 * sum(abs(c) + 1 for c in cur) + 16
    for _ in range(fuel):
        sort_pass()
        if cur[0] < 0:
            cur[0] = -cur[0]
            moves.append("r0")
            continue
        if cur[-1] > 1:
            cur[-1] = 2 - cur[-1]
            moves.append("r1")
            continue
        break
    out = tuple(cur)
    assert in_c_orthoscheme(out), "folding failed to land in the orthoscheme"
    assert _c_replay(moves, p.coords) == out
    return tuple(moves), LatticePoint(out, "C")


def in_c_orthoscheme(x: tuple[int, ...]) -> bool:
    return all(x[k] <= x[k + 1] for k in range(len(x) - 1)) \
        and 0 <= x[0] and x[-1] <= 1


def c_apply(move: str, x: tuple[int, ...]) -> tuple[int, ...]:
    y = list(x)
    if move == "r0":
        y[0] = -y[0]
    elif move == "r1":
        y[-1] = 2 - y[-1]
    elif move.startswith("t"):
        k = int(move[1:]) - 1
        y[k], y[k + 1] = y[k + 1], y[k]
    else:
        raise CoxeterError(f"bad move {move!r}")
    return tuple(y)


def _c_replay(moves: Sequence[str], x: tuple[int, ...]) -> tuple[int, ...]:
    for m in moves:
        x = c_apply(m, x)
    return x


# -- local posets -----------------------------------------------------------------

def local_poset(v: LatticePoint) -> FinitePoset:
    """A_extended: the link poset of the vertex in the non-extended complex,
    with formal bottom/top adjoined; its elements are the diagonal classes of
    box-neighbors, with the order induced by lifting.

    C: the poset on v and its neighbors under the adjacency-and-type order
    (the constructor re-checks transitivity, which is the content of the
    local order claim)."""
    if v.family == "A_extended":
        return _a_local_poset(v)
    return _c_local_poset(v)


def _a_local_poset(v: LatticePoint) -> FinitePoset:
    n = len(v.coords)
    # neighbor classes of v in the non-extended complex have exactly one
    # representative in the window [v, v + (1,..,1)]; simplices through the
    # diagonal edge of the window are chains of such representatives, so the
    # induced link order is the box order between them.
    mids = []
    for offs in itertools.product((0, 1), repeat=n):
        if all(o == 0 for o in offs) or all(o == 1 for o in offs):
            continue
        mids.append(tuple(a + o for a, o in zip(v.coords, offs)))

    elems: list[Any] = ["bot"] + mids + ["top"]

    def rel(a, b):
        if a == b:
            return True
        if a == "bot" or b == "top":
            return True
        if b == "bot" or a == "top":
            return False
        return _box_leq(a, b)

    labels = ["0"] + [",".join(map(str, m)) for m in mids] + ["1"]
    return FinitePoset.from_leq(elems, rel, labels)


def _c_local_poset(v: LatticePoint) -> FinitePoset:
    pts = [v] + c_neighbors(v)

    def rel(a: LatticePoint, b: LatticePoint) -> bool:
        return compare(a, b) in ("less", "equal")

    labels = [",".join(map(str, p.coords)) for p in pts]
    return FinitePoset.from_leq(pts, rel, labels)


@dataclass(frozen=True)
class LocalSplit:
    """Link of a C-family vertex split at the vertex: both halves are posets
    with the vertex as minimum (the lower half carries the reversed order)."""
    below: tuple[LatticePoint, ...]
    above: tuple[LatticePoint, ...]
    lower_half: FinitePoset
    upper_half: FinitePoset
    pairs_comparable: bool


def c_local_split(v: LatticePoint) -> LocalSplit:
    nbrs = c_neighbors(v)
    below = tuple(w for w in nbrs if compare(w, v) == "less")
    above = tuple(w for w in nbrs if compare(w, v) == "greater")
    assert len(below) + len(above) == len(nbrs)
    lower = FinitePoset.from_leq(
        (v,) + below, lambda a, b: compare(b, a) in ("less", "equal"),
        [",".join(map(str, p.coords)) for p in (v,) + below])
    upper = FinitePoset.from_leq(
        (v,) + above, lambda a, b: compare(a, b) in ("less", "equal"),
        [",".join(map(str, p.coords)) for p in (v,) + above])
    pairs_ok = all(compare(w, w2) == "less" for w in below for w2 in above)
    return LocalSplit(below, above, lower, upper, pairs_ok)


def window_points(family: str, n: int, lo: int, hi: int) -> list[LatticePoint]:
    return [LatticePoint(c, family)
            for c in itertools.product(range(lo, hi + 1), repeat=n)]


def c_window_poset(n: int, lo: int, hi: int) -> FinitePoset:
    """The vertex poset of a type-C window under the adjacency-and-type
    order; construction re-verifies antisymmetry and transitivity."""
    pts = window_points("C", n, lo, hi)
    rel = {}
    for p in pts:
        for q in pts:
            if p is q:
                continue
            if all(abs(a - b) <= 1 for a, b in zip(p.coords, q.coords)):
                if compare(p, q) == "less":
                    rel[(p, q)] = True

    def leq_fn(a, b):
        return a == b or rel.get((a, b), False)

    labels = [",".join(map(str, p.coords)) for p in pts]
    return FinitePoset.from_leq(pts, leq_fn, labels)


# -- separation-criterion cross-check ---------------------------------------------

def c_adjacent_by_separation(u: LatticePoint, v: LatticePoint) -> bool:
    """Independent adjacency test: two distinct vertices share a closed
    alcove iff no wall x_i = k or x_i +- x_j = 2k strictly separates them."""
    _check_pair(u, v)
    if u.coords == v.coords:
        return False
    n = len(u.coords)
    for i in range(n):
        if _strictly_separated(u.coords[i], v.coords[i], 1):
            return False
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for sign in (1, -1):
                a = u.coords[i] + sign * u.coords[j]
                b = v.coords[i] + sign * v.coords[j]
                if _strictly_separated(a, b, 2):
                    return False
    return True


def _strictly_separated(a: int, b: int, modulus: int) -> bool:
    lo, hi = min(a, b), max(a, b)
    k = (lo // modulus + 1) * modulus
    return lo < k < hi


# -- serialization ------------------------------------------------------------------

def point_to_json(p: LatticePoint) -> str:
    import json
    return json.dumps({"family": p.family, "coords": list(p.coords)},
                      sort_keys=True)


def point_from_json(text: str) -> LatticePoint:
    import json
    doc = json.loads(text)
    return LatticePoint(tuple(int(c) for c in doc["coords"]), doc["family"])
