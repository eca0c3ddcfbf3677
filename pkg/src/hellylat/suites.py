"""Verification suites: one per acceptance criterion of the workbench.

Each suite is a function (seed, cap) -> dict with keys "status" ("pass" or
"fail") and "witness" (computed counts and values; on failure the
counterexample).  The CLI wraps results into timed reports; the test suite
calls the same functions directly so there is a single source of truth.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Any, Callable, Iterator

from . import affine, catalog, coxeter, garside, helly
from .poset import (FinitePoset, IntervalSpec, analyze, are_isomorphic, bound,
                    family_join, find_bowtie, interval_helly_check,
                    random_bounded_graded, _iter_bits)

Result = dict[str, Any]


def _pass(**witness) -> Result:
    return {"status": "pass", "witness": witness}


def _fail(**witness) -> Result:
    return {"status": "fail", "witness": witness}


# -- 1: bowtie characterization ------------------------------------------------

def _labeled_strict_posets(m: int) -> Iterator[tuple[int, ...]]:
    pairs = list(itertools.combinations(range(m), 2))
    for assignment in itertools.product((0, 1, 2), repeat=len(pairs)):
        rows = [0] * m
        for (i, j), a in zip(pairs, assignment):
            if a == 1:
                rows[i] |= 1 << j
            elif a == 2:
                rows[j] |= 1 << i
        ok = True
        for i in range(m):
            r = rows[i]
            for j in _iter_bits(r):
                if rows[j] & ~r:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield tuple(rows)


def _canonical_signature(rows: tuple[int, ...], m: int) -> int:
    best = None
    for perm in itertools.permutations(range(m)):
        sig = 0
        for i in range(m):
            for j in _iter_bits(rows[i]):
                sig |= 1 << (perm[i] * m + perm[j])
        if best is None or sig < best:
            best = sig
    return best if best is not None else 0


def inner_posets_up_to_iso(max_inner: int) -> list[tuple[int, tuple[int, ...]]]:
    """All posets on <= max_inner labeled points, one per isomorphism class,
    as (m, strict-order bitmask rows)."""
    out = []
    for m in range(max_inner + 1):
        seen = set()
        for rows in _labeled_strict_posets(m):
            sig = _canonical_signature(rows, m)
            if sig not in seen:
                seen.add(sig)
                out.append((m, rows))
    return out


def _bounded_from_inner(m: int, rows: tuple[int, ...]) -> FinitePoset:
    bot, top = m, m + 1

    def leq(a: int, b: int) -> bool:
        if a == b:
            return True
        if a == bot or b == top:
            return True
        if b == bot or a == top:
            return False
        return (rows[a] >> b) & 1 == 1

    labels = [f"x{i}" for i in range(m)] + ["bot", "top"]
    return FinitePoset.from_leq(list(range(m + 2)), leq, labels)


def suite_bowtie_oracle(seed: int = 2024, cap: int = 500) -> Result:
    """Exhaustive bounded graded posets with <= 7 elements (up to iso) plus
    `cap` seeded random ones with <= 12 elements: no-bowtie agrees with the
    brute-force lattice test on every instance."""
    checked = 0
    graded_count = 0
    one = FinitePoset.from_leq(["*"], lambda a, b: True)
    instances = [one]
    for m, rows in inner_posets_up_to_iso(5):
        instances.append(_bounded_from_inner(m, rows))
    for p in instances:
        profile = analyze(p)
        if not profile.graded:
            continue
        graded_count += 1
        witness = find_bowtie(p)
        if (witness is None) != profile.lattice:
            return _fail(stage="exhaustive", size=len(p),
                         bowtie=repr(witness), lattice=profile.lattice)
        checked += 1
    rng = random.Random(seed)
    for trial in range(cap):
        p = random_bounded_graded(rng.randrange(1 << 30), rng.randint(4, 12))
        profile = analyze(p)
        witness = find_bowtie(p)
        if (witness is None) != profile.lattice:
            return _fail(stage="random", trial=trial, size=len(p),
                         bowtie=repr(witness), lattice=profile.lattice)
        checked += 1
    return _pass(exhaustive_bounded_graded=graded_count, random_trials=cap,
                 agreements=checked)


# -- 2: thickening balls coincide with order intervals ---------------------------

_BASES: dict[str, Callable[[], FinitePoset]] = {
    "boolean2": lambda: catalog.boolean(2),
    "boolean3": lambda: catalog.boolean(3),
    "weak3": lambda: catalog.weak_order(3),
}


def suite_ball_interval(seed: int = 0, cap: int = 0) -> Result:
    counts = {}
    for name, make in _BASES.items():
        ctx = affine.AffineContext(make(), 1)
        graph = affine.thickening_window(ctx, affine.origin(ctx), 5)
        inner_lo = affine.constant_point(ctx, -3)
        inner_hi = affine.constant_point(ctx, 3)
        inner = [p for p in graph.vertices
                 if affine.leq(ctx, inner_lo, p) and affine.leq(ctx, p, inner_hi)]
        vertex_set = set(graph.vertices)
        checked = 0
        for x in inner:
            for k in (0, 1, 2):
                got = helly.ball(graph, helly.BallSpec(x, k))
                lo = affine.translate_ticks(x, -k)
                hi = affine.translate_ticks(x, k)
                expected = {y for y in vertex_set
                            if affine.leq(ctx, lo, y) and affine.leq(ctx, y, hi)}
                if got != expected:
                    return _fail(base=name, x=str(x.u), k=k,
                                 ball=len(got), interval=len(expected))
                checked += 1
        counts[name] = checked
    return _pass(**counts)


# -- 3: order criterion vs elementary-step oracle --------------------------------

def suite_order_criterion(seed: int = 0, cap: int = 0) -> Result:
    counts = {}
    for name, make in _BASES.items():
        ctx = affine.AffineContext(make(), 1)
        points = affine.enumerate_points(ctx, 0, 3)
        m = len(points)
        table = []
        for a in points:
            row = 0
            for j, b in enumerate(points):
                crit = affine.leq(ctx, a, b, "criterion")
                orac = affine.leq(ctx, a, b, "oracle")
                if crit != orac:
                    return _fail(base=name, alpha=str(a), beta=str(b),
                                 criterion=crit, oracle=orac)
                if crit:
                    row |= 1 << j
            table.append(row)
        # partial-order axioms of the criterion on the window
        for i in range(m):
            if not (table[i] >> i) & 1:
                return _fail(base=name, reflexive_failure=str(points[i]))
            for j in _iter_bits(table[i]):
                if j != i and (table[j] >> i) & 1:
                    return _fail(base=name, antisymmetry=(str(points[i]),
                                                          str(points[j])))
                if table[j] & ~table[i]:
                    return _fail(base=name, transitivity=(str(points[i]),
                                                          str(points[j])))
        counts[name] = m * m
    return _pass(**counts)


# -- 4: joins and meets vs brute force --------------------------------------------

def suite_join_oracle(seed: int = 0, cap: int = 0) -> Result:
    counts = {}
    for name, make in _BASES.items():
        ctx = affine.AffineContext(make(), 1)
        points = affine.enumerate_points(ctx, 0, 3)
        for beta in points:
            for gamma in points:
                want = affine.brute_force_lub(ctx, beta, gamma)
                got = affine.join(ctx, beta, gamma)
                if got != want:
                    return _fail(base=name, op="join", beta=str(beta),
                                 gamma=str(gamma), got=str(got), want=str(want))
                want_m = affine.brute_force_glb(ctx, beta, gamma)
                got_m = affine.meet(ctx, beta, gamma)
                if got_m != want_m:
                    return _fail(base=name, op="meet", beta=str(beta),
                                 gamma=str(gamma), got=str(got_m), want=str(want_m))
        counts[name] = len(points) ** 2
    return _pass(**counts)


# -- 5: Boolean model ---------------------------------------------------------------

def suite_boolean_model(seed: int = 0, cap: int = 0) -> Result:
    counts = {}
    for n in (2, 3):
        ctx = affine.AffineContext(catalog.boolean(n), 1)
        points = affine.enumerate_points(ctx, 0, 4)
        if len(points) != 5 ** n:
            return _fail(n=n, points=len(points), expected=5 ** n)
        images = {}
        for p in points:
            vec = affine.boolean_model(ctx, p)
            if vec in images:
                return _fail(n=n, collision=str(vec))
            images[vec] = p
            if affine.boolean_point(ctx, vec) != p:
                return _fail(n=n, roundtrip=str(vec))
        for p in points:
            vp = affine.boolean_model(ctx, p)
            for q in points:
                vq = affine.boolean_model(ctx, q)
                comp = all(a <= b for a, b in zip(vp, vq))
                if affine.leq(ctx, p, q) != comp:
                    return _fail(n=n, order_mismatch=(str(vp), str(vq)))
                want = max(abs(a - b) for a, b in zip(vp, vq))
                if affine.distance(ctx, p, q) != want:
                    return _fail(n=n, distance_mismatch=(str(vp), str(vq)))
        counts[f"n{n}"] = len(points) ** 2
    return _pass(**counts)


# -- 6: orthoscheme refinement ---------------------------------------------------

def suite_orthoscheme_convergence(seed: int = 77, cap: int = 50) -> Result:
    rng = random.Random(seed)
    pairs_checked = 0
    for _ in range(cap):
        n = rng.choice((1, 2, 3))
        base = catalog.boolean(n)
        ctx2 = affine.AffineContext(base, 2)
        window = affine.unit_interval_points(ctx2)
        x = rng.choice(window)
        y = rng.choice(window)
        linf = max(abs(a - b) for a, b in zip(
            affine.boolean_model(ctx2, x), affine.boolean_model(ctx2, y)))
        dists = {}
        for k in (2, 4, 8, 16):
            dists[k] = affine.orthoscheme_distance(base, x, y, k, src_denom=2)
            if abs(dists[k] - linf) > Fraction(2, k):
                return _fail(n=n, k=k, d=str(dists[k]), linf=str(linf))
        for k in (2, 4, 8):
            if dists[2 * k] > dists[k]:
                return _fail(n=n, refinement=(k, str(dists[k]), str(dists[2 * k])))
        pairs_checked += 1
    return _pass(pairs=pairs_checked)


# -- 7: Garside thickening Helly + normal-form round trips -------------------------

def suite_garside_helly(seed: int = 11, cap: int = 1000) -> Result:
    ctx = garside.build_braid_garside(3)
    e = garside.identity_braid()
    centers = garside.interval(ctx, garside.delta_power(-1), garside.delta_power(1))
    window = set(garside.interval(ctx, garside.delta_power(-4), garside.delta_power(4)))
    balls = []
    for c in centers:
        for r in (0, 1, 2):
            b = garside.thickening_ball(ctx, c, r)
            if not b <= window:
                return _fail(stage="window", center=garside.format_normal_form(ctx, c),
                             radius=r)
            balls.append(((c, r), frozenset(b)))
    index_masks = []
    order = sorted(window, key=lambda g: (g.inf, g.body))
    pos = {g: i for i, g in enumerate(order)}
    for _, b in balls:
        m = 0
        for g in b:
            m |= 1 << pos[g]
        index_masks.append(m)
    k = len(balls)
    inter = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if index_masks[i] & index_masks[j]:
                inter[i] |= 1 << j
                inter[j] |= 1 << i
    families = 0
    for clique in helly.bron_kerbosch_pivot(inter):
        members = list(_iter_bits(clique))
        common = (1 << len(order)) - 1
        for i in members:
            common &= index_masks[i]
        families += 1
        if common == 0 and len(members) >= 2:
            return _fail(stage="helly", family=[
                (garside.format_normal_form(ctx, balls[i][0][0]), balls[i][0][1])
                for i in members])
    rng = random.Random(seed)
    roundtrips = 0
    for strands in (3, 4):
        bctx = garside.build_braid_garside(strands)
        for _ in range(cap // 2):
            w1 = [rng.choice((1, -1)) * rng.randint(1, strands - 1)
                  for _ in range(rng.randint(0, 10))]
            w2 = [rng.choice((1, -1)) * rng.randint(1, strands - 1)
                  for _ in range(rng.randint(0, 10))]
            lhs = garside.normal_form(bctx, w1 + w2)
            rhs = garside.mult(bctx, garside.normal_form(bctx, w1),
                               garside.normal_form(bctx, w2))
            if lhs != rhs:
                return _fail(stage="roundtrip", strands=strands, w1=w1, w2=w2)
            roundtrips += 1
    return _pass(centers=len(centers), balls=len(balls),
                 maximal_families=families, roundtrips=roundtrips)


# -- 8: flag semilattices -----------------------------------------------------------

def suite_semilattice(seed: int = 0, cap: int = 0) -> Result:
    p = catalog.polar(2, 4)
    profile = analyze(p)
    if not (profile.graded and profile.flag and profile.meet_semilattice
            and profile.bounded_below is not None):
        return _fail(stage="polar-profile", profile=repr(profile))
    if profile.bounded_above is not None:
        return _fail(stage="polar-should-be-unbounded-above")
    n = len(p.elements)
    families = 0
    for size in (2, 3, 4):
        for combo in itertools.combinations(range(n), size):
            ok = all(p._up[a] & p._up[b] for a, b in itertools.combinations(combo, 2))
            elems = [p.elements[i] for i in combo]
            got = family_join(p, elems)
            if not ok:
                if got is not None:
                    return _fail(stage="polar-join-should-fail",
                                 family=[p.label(e) for e in elems])
                continue
            common = (1 << n) - 1
            for i in combo:
                common &= p._up[i]
            minimal = [j for j in _iter_bits(common)
                       if p._down[j] & common == (1 << j)]
            if len(minimal) != 1 or p.elements[minimal[0]] != got:
                return _fail(stage="polar-join-mismatch",
                             family=[p.label(e) for e in elems])
            families += 1
    for q, dim in ((2, 3), (3, 3)):
        s = catalog.subspace(q, dim)
        sp = analyze(s)
        if not sp.lattice or find_bowtie(s) is not None:
            return _fail(stage="subspace", q=q, n=dim)
    graphs = 0
    for nv in range(0, 6):
        verts = [f"g{i}" for i in range(nv)]
        all_edges = list(itertools.combinations(verts, 2))
        for picks in itertools.product((False, True), repeat=len(all_edges)):
            g = helly.SimpleGraph(verts, [e for e, take in zip(all_edges, picks) if take])
            fc = catalog.fc_local_poset(g)
            prof = analyze(fc)
            if not (prof.graded and prof.flag and prof.meet_semilattice
                    and prof.bounded_below is not None):
                return _fail(stage="fc-local", vertices=nv,
                             edges=[e for e, t in zip(all_edges, picks) if t])
            graphs += 1
    return _pass(polar_families=families, fc_graphs=graphs)


# -- 9: Helly checker sanity ---------------------------------------------------------

def _cycle_graph(n: int) -> helly.SimpleGraph:
    return helly.SimpleGraph(list(range(n)), [(i, (i + 1) % n) for i in range(n)])


def _king_graph(side: int) -> helly.SimpleGraph:
    verts = [(x, y) for x in range(side) for y in range(side)]
    edges = [(u, v) for u in verts for v in verts
             if u < v and max(abs(u[0] - v[0]), abs(u[1] - v[1])) == 1]
    return helly.SimpleGraph(verts, edges)


def _random_tree(rng: random.Random, n: int) -> helly.SimpleGraph:
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    return helly.SimpleGraph(list(range(n)), edges)


def suite_helly_sanity(seed: int = 5, cap: int = 50) -> Result:
    six = _cycle_graph(6)
    res = helly.helly_check(six, [helly.BallSpec(0, 1), helly.BallSpec(2, 1),
                                  helly.BallSpec(4, 1)])
    if not isinstance(res, helly.HellyViolation):
        return _fail(stage="six-cycle-should-violate")
    if not isinstance(helly.clique_helly_check(six), helly.HellyPass):
        return _fail(stage="six-cycle-clique-helly")
    rng = random.Random(seed)
    for trial in range(cap):
        t = _random_tree(rng, rng.randint(2, 50))
        fam = [helly.BallSpec(rng.randrange(len(t)), rng.randint(0, 4))
               for _ in range(8)]
        if not isinstance(helly.helly_check(t, fam), helly.HellyPass):
            return _fail(stage="tree", trial=trial)
    king = _king_graph(7)
    core = [(x, y) for x in range(2, 5) for y in range(2, 5)]
    fam = helly.exhaustive_ball_family(king, core, 2)
    if not isinstance(helly.helly_check(king, fam), helly.HellyPass):
        return _fail(stage="king-window")
    return _pass(trees=cap, king_family=len(fam))


# -- 10: thin local posets -----------------------------------------------------------

def suite_local_posets(seed: int = 0, cap: int = 0) -> Result:
    reference = catalog.boolean(3)
    checked_a = 0
    for coords in itertools.product(range(-2, 3), repeat=3):
        lp = coxeter.local_poset(coxeter.LatticePoint(coords, "A_extended"))
        profile = analyze(lp)
        if not (profile.lattice and profile.graded and profile.rank == 3):
            return _fail(stage="a-profile", vertex=coords)
        if find_bowtie(lp) is not None:
            return _fail(stage="a-bowtie", vertex=coords)
        if not are_isomorphic(lp, reference):
            return _fail(stage="a-not-boolean", vertex=coords)
        checked_a += 1
    checked_c = 0
    for coords in itertools.product(range(-1, 2), repeat=2):
        v = coxeter.LatticePoint(coords, "C")
        split = coxeter.c_local_split(v)
        if not split.pairs_comparable:
            return _fail(stage="c-split", vertex=coords)
        for half in (split.lower_half, split.upper_half):
            prof = analyze(half)
            if not (prof.graded and prof.flag and prof.meet_semilattice
                    and prof.bounded_below is not None):
                return _fail(stage="c-half", vertex=coords)
            elems = list(half.elements)
            for size in (2, 3):
                for combo in itertools.combinations(elems, size):
                    if all(half.upset_mask(a) & half.upset_mask(b)
                           for a, b in itertools.combinations(combo, 2)):
                        if family_join(half, combo) is None:
                            return _fail(stage="c-family-join", vertex=coords)
        checked_c += 1
    window = coxeter.c_window_poset(2, -3, 3)
    graph = helly.thickening_from_poset(window)
    interior = [p for p in graph.vertices
                if all(-1 <= c <= 1 for c in p.coords)]
    fam = helly.exhaustive_ball_family(graph, interior, 2)
    res = helly.helly_check(graph, fam)
    if not isinstance(res, helly.HellyPass):
        return _fail(stage="c-thickening", violation=repr(res))
    return _pass(a_vertices=checked_a, c_vertices=checked_c,
                 c_window=len(graph), c_families=len(fam))


# -- 11: the loop-length evaluation ---------------------------------------------------

def loop_length_value() -> dict[str, Any]:
    """Length of the comparison loop in the Euclidean-orthoscheme link of the
    rank-3 prefix lattice: 2 arccos(sqrt(14/25)) + 4 arccos(sqrt(13/35)),
    reported against the full angle 2*pi."""
    value = 2 * math.acos(math.sqrt(14 / 25)) + 4 * math.acos(math.sqrt(13 / 35))
    ratio = value / (2 * math.pi)
    return {
        "value": value,
        "ratio_to_2pi": ratio,
        "less_than_2pi": value < 2 * math.pi,
        "warning": "printed constant 0.987(2pi) in the source differs from the "
                   "direct evaluation of the arccos expression; only the "
                   "strict bound below 2pi is asserted",
    }


def suite_loop_length(seed: int = 0, cap: int = 0) -> Result:
    data = loop_length_value()
    if not data["less_than_2pi"]:
        return _fail(**data)
    if not 0.81 <= data["ratio_to_2pi"] <= 0.82:
        return _fail(**data)
    return _pass(**data)


SUITES: dict[str, tuple[str, Callable[[int, int], Result], int]] = {
    # name -> (capability tag, runner, default cap)
    "bowtie-oracle": ("lattice-iff-no-bowtie", suite_bowtie_oracle, 500),
    "ball-interval": ("thickening-balls-are-intervals", suite_ball_interval, 0),
    "order-criterion": ("affine-order-criterion-vs-oracle", suite_order_criterion, 0),
    "join-oracle": ("affine-joins-vs-brute-force", suite_join_oracle, 0),
    "boolean-model": ("boolean-base-is-linf-grid", suite_boolean_model, 0),
    "orthoscheme-convergence": ("denominator-refinement", suite_orthoscheme_convergence, 50),
    "garside-helly": ("garside-thickening-helly", suite_garside_helly, 1000),
    "semilattice-join": ("flag-semilattice-joins", suite_semilattice, 0),
    "helly-sanity": ("ball-and-clique-helly-checkers", suite_helly_sanity, 50),
    "local-posets": ("thin-local-posets", suite_local_posets, 0),
    "loop-length": ("orthoscheme-loop-length", suite_loop_length, 0),
}
