"""Constructors for the concrete poset families used by the workbench.

Every constructor returns a FinitePoset whose element identifiers are
canonical hashable values (frozensets of vectors for subspace posets,
one-line permutation tuples for the weak order, ...) listed in a
deterministic order, so that a given spec always produces the identical
poset object.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .poset import FinitePoset, PosetError, random_bounded_graded

KINDS = ("boolean", "partition", "chain", "product", "dual", "subspace",
         "polar", "weak_order", "noncrossing", "fc_local", "random_graded")

SIZE_CAP = 20_000


@dataclass
class CatalogSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "params": self.params}, sort_keys=True)


def parse_spec(text: str) -> CatalogSpec:
    """Accepts JSON {"kind":..., "params":{...}} or shorthand kind:k=v,k=v."""
    text = text.strip()
    if text.startswith("{"):
        doc = json.loads(text)
        return CatalogSpec(doc["kind"], dict(doc.get("params", {})))
    if ":" in text:
        kind, rest = text.split(":", 1)
        params: dict[str, Any] = {}
        for piece in rest.split(","):
            if not piece:
                continue
            key, _, val = piece.partition("=")
            if val == "":
                raise PosetError(f"bad spec parameter {piece!r}")
            try:
                params[key] = int(val)
            except ValueError:
                params[key] = val
        return CatalogSpec(kind, params)
    return CatalogSpec(text, {})


def generate(spec: CatalogSpec) -> FinitePoset:
    if spec.kind not in KINDS:
        raise PosetError(f"unknown catalog kind {spec.kind!r}")
    p = spec.params
    if spec.kind == "boolean":
        return boolean(int(p["n"]))
    if spec.kind == "partition":
        return partition(int(p["n"]))
    if spec.kind == "chain":
        return chain(int(p["n"]))
    if spec.kind == "product":
        factors = [generate(CatalogSpec(**f)) for f in p["factors"]]
        if len(factors) != 2:
            raise PosetError("product takes exactly two factors")
        return product(factors[0], factors[1])
    if spec.kind == "dual":
        return generate(CatalogSpec(**p["inner"])).dual()
    if spec.kind == "subspace":
        return subspace(int(p["q"]), int(p["n"]))
    if spec.kind == "polar":
        return polar(int(p["q"]), int(p["dim"]))
    if spec.kind == "weak_order":
        return weak_order(int(p["n"]))
    if spec.kind == "noncrossing":
        return noncrossing(int(p["n"]))
    if spec.kind == "fc_local":
        from .helly import SimpleGraph
        g = SimpleGraph(tuple(p["vertices"]), tuple(tuple(e) for e in p["edges"]))
        return fc_local_poset(g)
    if spec.kind == "random_graded":
        return random_bounded_graded(int(p.get("seed", 0)), int(p["size"]),
                                     p.get("rank"))
    raise AssertionError(spec.kind)


def _guard(count: int) -> None:
    if count > SIZE_CAP:
        raise PosetError(f"catalog size {count} exceeds cap {SIZE_CAP}")


# -- classical families -----------------------------------------------------

def boolean(n: int) -> FinitePoset:
    """Subsets of {1..n} ordered by inclusion."""
    if n < 0:
        raise PosetError("boolean rank must be >= 0")
    _guard(2 ** n)
    elems = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            elems.append(frozenset(combo))
    labels = ["{" + ",".join(map(str, sorted(e))) + "}" for e in elems]
    return FinitePoset.from_leq(elems, frozenset.issubset, labels)


def partition(n: int) -> FinitePoset:
    """Set partitions of {1..n} under refinement (finer below coarser)."""
    if n < 1:
        raise PosetError("partition lattice needs n >= 1")
    parts = [frozenset(frozenset(b) for b in blocks)
             for blocks in _set_partitions(list(range(1, n + 1)))]
    _guard(len(parts))
    parts.sort(key=lambda blocks: (len(blocks),
                                   sorted(tuple(sorted(b)) for b in blocks)),
               reverse=True)

    def refines(a, b):
        return all(any(block <= other for other in b) for block in a)

    labels = ["|".join("".join(map(str, sorted(b)))
                       for b in sorted(blocks, key=min)) for blocks in parts]
    return FinitePoset.from_leq(parts, refines, labels)


def _set_partitions(items: list) -> Iterable[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in _set_partitions(rest):
        for k in range(len(smaller)):
            yield smaller[:k] + [[first] + smaller[k]] + smaller[k + 1:]
        yield [[first]] + smaller


def chain(n: int) -> FinitePoset:
    """The (n+1)-element chain 0 < 1 < ... < n."""
    if n < 0:
        raise PosetError("chain length must be >= 0")
    elems = tuple(range(n + 1))
    return FinitePoset.from_leq(elems, lambda a, b: a <= b)


def product(a: FinitePoset, b: FinitePoset) -> FinitePoset:
    _guard(len(a) * len(b))
    elems = [(x, y) for x in a.elements for y in b.elements]
    labels = [f"({a.label(x)},{b.label(y)})" for x, y in elems]
    return FinitePoset.from_leq(
        elems, lambda u, v: a.leq(u[0], v[0]) and b.leq(u[1], v[1]), labels)


# -- finite vector geometry --------------------------------------------------

class SmallField:
    """Arithmetic for F_q, q prime in {2,3,5} directly, q = 4 via the
    irreducible polynomial x^2 + x + 1 over F_2 (elements as 2-bit vectors)."""

    def __init__(self, q: int):
        if q not in (2, 3, 4, 5):
            raise PosetError(f"field size {q} not supported (need q in 2,3,4,5)")
        self.q = q
        if q == 4:
            self._mul4 = [[0, 0, 0, 0],
                          [0, 1, 2, 3],
                          [0, 2, 3, 1],
                          [0, 3, 1, 2]]

    def add(self, a: int, b: int) -> int:
        if self.q == 4:
            return a ^ b
        return (a + b) % self.q

    def mul(self, a: int, b: int) -> int:
        if self.q == 4:
            return self._mul4[a][b]
        return (a * b) % self.q

    def neg(self, a: int) -> int:
        if self.q == 4:
            return a
        return (-a) % self.q

    def scalars(self) -> range:
        return range(self.q)


def _span(field: SmallField, vectors: Sequence[tuple[int, ...]],
          n: int) -> frozenset[tuple[int, ...]]:
    basis: list[tuple[int, ...]] = []
    seen = {tuple([0] * n)}
    for v in vectors:
        if v in seen:
            continue
        basis.append(v)
        new = set()
        for w in seen:
            for s in field.scalars():
                if s == 0:
                    continue
                sv = tuple(field.add(w[k], field.mul(s, v[k])) for k in range(n))
                new.add(sv)
        seen |= new
    return frozenset(seen)


def enumerate_subspaces(q: int, n: int) -> list[frozenset[tuple[int, ...]]]:
    """All linear subspaces of F_q^n, each as the frozenset of its vectors,
    enumerated via reduced row echelon forms."""
    field = SmallField(q)
    out = [_span(field, [], n)]
    for k in range(1, n + 1):
        for pivots in itertools.combinations(range(n), k):
            free_positions = []
            for r in range(k):
                for c in range(n):
                    if c > pivots[r] and c not in pivots:
                        free_positions.append((r, c))
            for values in itertools.product(field.scalars(),
                                            repeat=len(free_positions)):
                rows = [[0] * n for _ in range(k)]
                for r in range(k):
                    rows[r][pivots[r]] = 1
                for (r, c), val in zip(free_positions, values):
                    rows[r][c] = val
                out.append(_span(field, [tuple(r) for r in rows], n))
    return out


def subspace(q: int, n: int) -> FinitePoset:
    """All linear subspaces of F_q^n ordered by inclusion."""
    subs = enumerate_subspaces(q, n)
    _guard(len(subs))
    subs.sort(key=lambda s: (len(s), sorted(s)))
    labels = [f"dim{_dim(q, s)}#{i}" for i, s in enumerate(subs)]
    return FinitePoset.from_leq(subs, frozenset.issubset, labels)


def _dim(q: int, s: frozenset) -> int:
    d = 0
    while q ** d < len(s):
        d += 1
    return d


def symplectic_form(q: int, dim: int):
    """Standard alternating form on F_q^dim with basis e_1..e_m, f_1..f_m:
    B(x, y) = sum_i x_{e_i} y_{f_i} - x_{f_i} y_{e_i}."""
    if dim % 2 != 0:
        raise PosetError("symplectic dimension must be even")
    m = dim // 2
    field = SmallField(q)

    def form(x: tuple[int, ...], y: tuple[int, ...]) -> int:
        total = 0
        for i in range(m):
            total = field.add(total, field.mul(x[i], y[m + i]))
            total = field.add(total, field.neg(field.mul(x[m + i], y[i])))
        return total

    return form


def polar(q: int, dim: int) -> FinitePoset:
    """Totally isotropic subspaces of the standard symplectic space F_q^dim
    (including the zero subspace, the minimum), ordered by inclusion."""
    form = symplectic_form(q, dim)
    subs = []
    for s in enumerate_subspaces(q, dim):
        vecs = sorted(s)
        if all(form(u, v) == 0 for u, v in itertools.combinations(vecs, 2)):
            subs.append(s)
    _guard(len(subs))
    subs.sort(key=lambda s: (len(s), sorted(s)))
    labels = [f"iso{_dim(q, s)}#{i}" for i, s in enumerate(subs)]
    return FinitePoset.from_leq(subs, frozenset.issubset, labels)


# -- Coxeter-flavoured families ----------------------------------------------

def perm_inversions(w: tuple[int, ...]) -> frozenset[tuple[int, int]]:
    """Value pairs (a, b), a < b, appearing out of order in the one-line
    notation: the inversion set characterizing the prefix (weak) order."""
    n = len(w)
    pos = [0] * (n + 1)
    for i, v in enumerate(w):
        pos[v] = i
    return frozenset((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)
                     if pos[a] > pos[b])


def weak_order(n: int) -> FinitePoset:
    """S_n under the prefix order of the classical Garside structure
    (inversion-set inclusion)."""
    if n < 1:
        raise PosetError("weak order needs n >= 1")
    _guard(_factorial(n))
    perms = list(itertools.permutations(range(1, n + 1)))
    inv = {w: perm_inversions(w) for w in perms}
    labels = ["".join(map(str, w)) for w in perms]
    return FinitePoset.from_leq(perms, lambda u, v: inv[u] <= inv[v], labels)


def _factorial(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def noncrossing(n: int) -> FinitePoset:
    """Noncrossing partitions of an n-cycle under refinement."""
    if n < 1:
        raise PosetError("noncrossing needs n >= 1")
    parts = []
    for blocks in _set_partitions(list(range(1, n + 1))):
        fb = frozenset(frozenset(b) for b in blocks)
        if _is_noncrossing(fb):
            parts.append(fb)
    _guard(len(parts))
    parts.sort(key=lambda blocks: (len(blocks),
                                   sorted(tuple(sorted(b)) for b in blocks)),
               reverse=True)

    def refines(a, b):
        return all(any(block <= other for other in b) for block in a)

    labels = ["|".join("".join(map(str, sorted(b)))
                       for b in sorted(blocks, key=min)) for blocks in parts]
    return FinitePoset.from_leq(parts, refines, labels)


def _is_noncrossing(blocks: frozenset[frozenset[int]]) -> bool:
    for b1, b2 in itertools.combinations(blocks, 2):
        for a, c in itertools.combinations(sorted(b1), 2):
            for b, d in itertools.combinations(sorted(b2), 2):
                if a < b < c < d or b < a < d < c:
                    return False
    return True


def fc_local_poset(defining_graph, labels: dict | None = None) -> FinitePoset:
    """Union of the Boolean intervals over the cliques of a right-angled
    defining graph, glued along shared sub-cliques: concretely, the poset of
    all cliques (including the empty one, the identity) under inclusion,
    graded by support size.

    labels, when given, maps edges to Coxeter labels; any label other than 2
    is rejected since only the right-angled case is modelled here.
    """
    if labels:
        bad = {e: m for e, m in labels.items() if m != 2}
        if bad:
            raise PosetError(
                f"non-right-angled edges {sorted(map(tuple, bad))}: only label-2 "
                "(commuting) edges are supported; spherical subsets would need a "
                "Coxeter classification engine")
    verts = sorted(defining_graph.vertices, key=str)
    adj = {v: set(defining_graph.neighbors(v)) for v in verts}
    cliques: list[frozenset] = []

    def grow(current: list, candidates: list) -> None:
        cliques.append(frozenset(current))
        for i, v in enumerate(candidates):
            grow(current + [v], [w for w in candidates[i + 1:] if w in adj[v]])

    grow([], verts)
    _guard(len(cliques))
    cliques.sort(key=lambda c: (len(c), sorted(map(str, c))))
    names = ["1" if not c else "".join(sorted(map(str, c))) for c in cliques]
    return FinitePoset.from_leq(cliques, frozenset.issubset, names)
