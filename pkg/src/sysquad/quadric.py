"""Interval extraction and the quadric-complex verification checks.

A square complex is quadric when it is simply connected and both square
replacement rules hold. The checks here verify the rules directly, the
quadrangle condition from a basepoint, that metric balls and intervals
embed isometrically, and that every basepoint interval is K_{2,3}-free
(flat).
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .complexes import (
    BasedComplex,
    Graph,
    SquareComplex,
    bfs_levels,
    canonical_cycle,
    find_K23,
)
from .metrics import all_pairs, vertex_order
from .reports import DEFAULT_CERT_CAP, CheckReport, ReportBuilder


@dataclass(frozen=True)
class Interval:
    """Full subcomplex on the union of geodesics between two vertices."""

    endpoints: tuple[int, int]
    complex: SquareComplex
    parent: SquareComplex
    dist_from_u: dict[int, int]
    dist_from_v: dict[int, int]

    @property
    def graph(self) -> Graph:
        return self.complex.graph

    @property
    def vertices(self) -> frozenset[int]:
        return self.complex.graph.vertices


def _full_subcomplex(c: SquareComplex, verts: set[int] | frozenset[int]) -> SquareComplex:
    g = c.graph
    edges = [
        (u, w) for u in verts for w in g.neighbors(u) if u < w and w in verts
    ]
    squares = {
        s
        for w in verts
        for s in c.squares_at(w)
        if all(x in verts for x in s)
    }
    return SquareComplex(Graph(verts, edges), squares)


def _restricted_bfs(g: Graph, verts: frozenset[int] | set[int], source: int) -> dict[int, int]:
    dist = {source: 0}
    q = deque([source])
    while q:
        u = q.popleft()
        du = dist[u]
        for w in g.neighbors(u):
            if w in verts and w not in dist:
                dist[w] = du + 1
                q.append(w)
    return dist


def interval(c: SquareComplex, u: int, v: int) -> Interval:
    """Interval between u and v: all vertices with d(u,w) + d(w,v) = d(u,v)."""
    g = c.graph
    du = bfs_levels(g, u)
    if v not in du:
        raise ValueError(f"vertices {u} and {v} lie in different components")
    dv = bfs_levels(g, v)
    total = du[v]
    verts = frozenset(
        w for w, d in du.items() if w in dv and d + dv[w] == total
    )
    sub = _full_subcomplex(c, verts)
    return Interval(
        endpoints=(u, v),
        complex=sub,
        parent=c,
        dist_from_u={w: du[w] for w in verts},
        dist_from_v={w: dv[w] for w in verts},
    )


def descending_reachable(g: Graph, levels: dict[int, int], v: int) -> frozenset[int]:
    """Vertices reachable from v along edges that descend one level per step."""
    if v not in levels:
        raise ValueError(f"vertex {v} has no level")
    verts = {v}
    q = deque([v])
    while q:
        w = q.popleft()
        lw = levels[w]
        for x in g.neighbors(w):
            if levels.get(x) == lw - 1 and x not in verts:
                verts.add(x)
                q.append(x)
    return frozenset(verts)


def based_interval(b: BasedComplex, v: int) -> Interval:
    """Interval from the basepoint to v, via descending-edge reachability.

    A geodesic from v to the basepoint drops one level per step, so the
    interval is exactly the set reachable from v along edges that descend
    one level. Costs O(interval size), no BFS over the whole complex.
    """
    c = b.complex
    if not isinstance(c, SquareComplex):
        raise ValueError("based_interval expects a square complex")
    levels = b.levels
    if v not in levels:
        raise ValueError(f"vertex {v} is unreachable from the basepoint")
    g = b.graph
    vset = descending_reachable(g, levels, v)
    sub = _full_subcomplex(c, vset)
    return Interval(
        endpoints=(b.basepoint, v),
        complex=sub,
        parent=c,
        dist_from_u={w: levels[w] for w in vset},
        dist_from_v=_restricted_bfs(g, vset, v),
    )


def _diagonal_index(c: SquareComplex) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Map each diagonal pair of a square to the sorted middle pairs seen with it."""
    diags: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for s in sorted(c.squares):
        a, b, cc, d = s
        for diag, mid in ((((a, cc)), (b, d)), (((b, d)), (a, cc))):
            key = (min(diag), max(diag))
            val = (min(mid), max(mid))
            diags.setdefault(key, []).append(val)
    for key in diags:
        diags[key].sort()
    return diags


def check_replacement_rule_A(c: SquareComplex, cap: int = DEFAULT_CERT_CAP) -> CheckReport:
    """Two squares over a K_{2,3} force the square on the outer 4-cycle.

    Whenever squares sit on (u0 v0 u1 v1) and (u0 v1 u1 v2), the pattern
    is a K_{2,3} with sides {u0,u1} and {v0,v1,v2}; the rule demands a
    square on (u0 v0 u1 v2) as well.
    """
    rb = ReportBuilder("rule-a", cap)
    for (u0, u1), mids in sorted(_diagonal_index(c).items()):
        for m1, m2 in combinations(mids, 2):
            shared = set(m1) & set(m2)
            if len(shared) != 1:
                continue
            rb.count("patterns")
            v1 = shared.pop()
            v0 = m1[0] if m1[1] == v1 else m1[1]
            v2 = m2[0] if m2[1] == v1 else m2[1]
            if not c.has_square((u0, v0, u1, v2)):
                lo, hi = min(v0, v2), max(v0, v2)
                rb.violation("rule-a", (u0, u1, lo, v1, hi), "missing-outer-square")
    return rb.build()


def _corner_entries(c: SquareComplex, u: int) -> list[tuple[tuple[int, int], int]]:
    """Squares at u seen from u: (sorted pair of corners adjacent to u, opposite corner)."""
    entries = []
    for s in c.squares_at(u):
        i = s.index(u)
        wing = (s[i - 1], s[(i + 1) % 4])
        entries.append(((min(wing), max(wing)), s[(i + 2) % 4]))
    entries.sort()
    return entries


def check_replacement_rule_B(c: SquareComplex, cap: int = DEFAULT_CERT_CAP) -> CheckReport:
    """Three squares around a vertex force a chorded hexagon.

    When squares (u a0 b0 a1), (u a1 b1 a2), (u a2 b2 a0) surround u and
    the hexagon (a0 b0 a1 b1 a2 b2) is embedded, some antipodal pair of
    the hexagon must be joined by an edge with squares on both resulting
    4-cycles. Degenerate (non-embedded) hexagons are skipped.
    """
    rb = ReportBuilder("rule-b", cap)
    g = c.graph
    for u in sorted(g.vertices):
        entries = _corner_entries(c, u)
        if len(entries) < 3:
            continue
        seen = set()  # two square triples can glue to the same hexagon
        for (w0, o0), (w1, o1), (w2, o2) in combinations(entries, 3):
            s01 = set(w0) & set(w1)
            s12 = set(w1) & set(w2)
            s02 = set(w0) & set(w2)
            if len(s01) != 1 or len(s12) != 1 or len(s02) != 1:
                continue
            a1, a2, a0 = s01.pop(), s12.pop(), s02.pop()
            if len({a0, a1, a2}) != 3:
                continue
            # hexagon a0 b0 a1 b1 a2 b2 with b_i opposite u in the i-th square
            b0, b1, b2 = o0, o1, o2
            hexagon = (a0, b0, a1, b1, a2, b2)
            if len(set(hexagon)) != 6:
                rb.count("degenerate")
                continue
            key = canonical_cycle(hexagon)
            if key in seen:
                continue
            seen.add(key)
            rb.count("hexagons")
            options = (
                ((a0, b1), (a0, b0, a1, b1), (b1, a2, b2, a0)),
                ((b0, a2), (b0, a1, b1, a2), (a2, b2, a0, b0)),
                ((a1, b2), (a1, b1, a2, b2), (b2, a0, b0, a1)),
            )
            ok = any(
                g.has_edge(*chord) and c.has_square(c1) and c.has_square(c2)
                for chord, c1, c2 in options
            )
            if not ok:
                rb.violation(
                    "rule-b", (u,) + canonical_cycle(hexagon), "no-chorded-antipode"
                )
    return rb.build()


def check_quadrangle_condition(b: BasedComplex, cap: int = DEFAULT_CERT_CAP) -> CheckReport:
    """Two downward neighbours of a vertex see a common vertex two levels down."""
    levels = b.levels
    if len(levels) != len(b.graph.vertices):
        raise ValueError("basepoint does not reach every vertex")
    g = b.graph
    rb = ReportBuilder("quadrangle", cap)
    for x in sorted(g.vertices):
        lx = levels[x]
        if lx < 2:
            continue
        down = [w for w in g.neighbors(x) if levels[w] == lx - 1]
        for v, w in combinations(down, 2):
            rb.count("pairs")
            common = g.neighbor_set(v) & g.neighbor_set(w)
            if not any(levels[y] == lx - 2 for y in common):
                rb.violation("quadrangle", (x, v, w), f"level={lx}")
    return rb.build()


def _ball_distance(g: Graph, inside: np.ndarray, idx: dict[int, int],
                   x: int, y: int) -> int | float:
    """Distance from x to y in the subgraph induced on ``inside`` (index mask)."""
    if not (inside[idx[x]] and inside[idx[y]]):
        return float("inf")
    dist = {x: 0}
    q = deque([x])
    while q:
        a = q.popleft()
        if a == y:
            return dist[a]
        da = dist[a]
        for w in g.neighbors(a):
            if inside[idx[w]] and w not in dist:
                dist[w] = da + 1
                q.append(w)
    return float("inf")


def check_ball_isometry(
    c: SquareComplex | BasedComplex | Graph,
    cap: int = DEFAULT_CERT_CAP,
    dist: np.ndarray | None = None,
) -> CheckReport:
    """Every ball around every center embeds isometrically, all radii at once.

    Equivalent local form: for each ordered pair (x, y) and center u, some
    neighbour z of x with d(z,y) = d(x,y) - 1 satisfies
    d(u,z) <= max(d(u,x), d(u,y)). A failing triple certifies that the
    smallest ball around u containing x and y distorts d(x, y); the
    certificate carries the recomputed in-ball distance.
    """
    g = c if isinstance(c, Graph) else c.graph
    order = vertex_order(g)
    n = len(order)
    idx = {v: i for i, v in enumerate(order)}
    rb = ReportBuilder("ball-isometry", cap)
    rb.set_stat("centers", n)
    if n == 0:
        rb.set_stat("triples", 0)
        return rb.build()
    D = all_pairs(g, order) if dist is None else dist
    finite = np.isfinite(D)
    arange = np.arange(n)
    examined = 0
    for x in range(n):
        nb = np.array([idx[w] for w in g.neighbors(order[x])], dtype=np.int64)
        # eligible[u, y]: u sees both x and y, y != x
        eligible = finite[:, x][:, None] & finite & finite[x][None, :]
        eligible[:, x] = False
        examined += int(eligible.sum())
        if len(nb) == 0:
            continue
        # first_steps[k, y]: neighbour k of x starts a geodesic from x to y
        first_steps = D[nb, :] == D[x, :] - 1.0
        cand = np.full((n, n), np.inf)
        for k in range(len(nb)):
            step = np.where(first_steps[k][None, :], D[:, nb[k]][:, None], np.inf)
            np.minimum(cand, step, out=cand)
        thresh = np.maximum(D[:, x][:, None], D)
        bad = eligible & (cand > thresh)
        for u, y in zip(*np.nonzero(bad)):
            r = int(max(D[u, x], D[u, y]))
            inside = D[u] <= r
            db = _ball_distance(g, inside, idx, order[x], order[int(y)])
            rb.violation(
                "ball-isometry",
                (order[int(u)], order[x], order[int(y)]),
                f"r={r} d_ball={db} d={int(D[x, y])}",
            )
    rb.set_stat("triples", examined)
    return rb.build()


def _default_pairs(b: BasedComplex, seed: int = 0, extra: int = 100) -> list[tuple[int, int]]:
    verts = sorted(b.graph.vertices)
    pairs = [(b.basepoint, v) for v in verts]
    rng = random.Random(seed)
    seen = {tuple(sorted(p)) for p in pairs}
    attempts = 0
    while len(seen) < len(pairs) + extra and attempts < 20 * extra:
        attempts += 1
        u, v = rng.choice(verts), rng.choice(verts)
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        pairs.append(key)
    return pairs


def check_interval_isometry(
    c: SquareComplex | BasedComplex,
    pairs: list[tuple[int, int]] | None = None,
    cap: int = DEFAULT_CERT_CAP,
    seed: int = 0,
    dist: np.ndarray | None = None,
) -> CheckReport:
    """Each sampled interval embeds isometrically.

    Default sample: every (basepoint, v) pair plus up to 100 seeded random
    pairs (the first argument must then be based). Exhaustive all-pairs
    checking is available by passing every pair explicitly.
    """
    if pairs is None:
        if not isinstance(c, BasedComplex):
            raise ValueError("default sampling needs a based complex")
        pairs = _default_pairs(c, seed)
    sq = c.complex if isinstance(c, BasedComplex) else c
    g = sq.graph
    order = vertex_order(g)
    idx = {v: i for i, v in enumerate(order)}
    D = all_pairs(g, order) if dist is None else dist
    rb = ReportBuilder("interval-isometry", cap)
    for u, v in pairs:
        rb.count("intervals")
        if not np.isfinite(D[idx[u], idx[v]]):
            rb.violation("disconnected", (u, v), "no-path")
            continue
        total = int(D[idx[u], idx[v]])
        iu = idx[u]
        iv = idx[v]
        verts = frozenset(
            order[w]
            for w in np.flatnonzero(D[iu] + D[iv] == total)
        )
        for x in sorted(verts):
            inner = _restricted_bfs(g, verts, x)
            for y in sorted(verts):
                if y <= x:
                    continue
                d_global = int(D[idx[x], idx[y]])
                d_inner = inner.get(y)
                if d_inner is None or d_inner != d_global:
                    rb.violation(
                        "interval-isometry",
                        (u, v, x, y),
                        f"d_interval={d_inner} d={d_global}",
                    )
    return rb.build()


def check_flat_intervals(b: BasedComplex, cap: int = DEFAULT_CERT_CAP) -> CheckReport:
    """No basepoint interval contains a K_{2,3}."""
    if not isinstance(b.complex, SquareComplex):
        raise ValueError("check_flat_intervals expects a square complex")
    if len(b.levels) != len(b.graph.vertices):
        raise ValueError("basepoint does not reach every vertex")
    rb = ReportBuilder("flat-intervals", cap)
    for v in sorted(b.graph.vertices):
        rb.count("intervals")
        z = based_interval(b, v)
        for (u0, u1), triple in find_K23(z.graph):
            rb.violation(
                "k23-in-interval",
                (u0, u1) + triple,
                f"interval={b.basepoint}->{v}",
            )
    return rb.build()
