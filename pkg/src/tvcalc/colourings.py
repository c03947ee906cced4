"""Admissible edge colourings and the state-sum invariant.

Colours live on edge classes as doubled integers 0..r-2 (twice the
half-integer colour), so every admissibility test is integer arithmetic.
A colouring is admissible when each triangle class satisfies the parity
condition, the triangle inequalities and the degree bound; the invariant
is the exact cyclotomic sum of per-colouring weights, one factor per
vertex, edge, triangle and tetrahedron class.

Enumeration is a backtracking search over a fixed edge order chosen so
triangles complete as early as possible.  ``EnumerationStats.nodes_visited``
counts the fully assigned candidates built at the bottom of the search
tree; pruned interior branches never build a candidate and are not
counted.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .cyclotomic import Cyc, FieldContext, field_init
from .homology import CocycleBasis, cocycle_space_1, reduce_colouring
from .triangulation import (
    Skeleton,
    Triangulation,
    build_skeleton,
    validate_closed_3manifold,
)

__all__ = [
    "Colouring",
    "EnumerationStats",
    "admissible_triple",
    "admissible_colouring",
    "enumerate_admissible",
    "vertex_weight",
    "edge_weight",
    "triangle_weight",
    "tetrahedron_weight",
    "WeightSystem",
    "colouring_weight",
    "state_sum",
    "tv",
    "tv_at_class",
]


@dataclass(frozen=True)
class Colouring:
    """Doubled colours per edge class: entry j is twice the colour of edge
    class j."""

    doubled: tuple

    def __iter__(self):
        return iter(self.doubled)

    def __len__(self):
        return len(self.doubled)


@dataclass
class EnumerationStats:
    nodes_visited: int = 0
    admissible_count: int = 0


def admissible_triple(r: int, a: int, b: int, c: int) -> bool:
    """Test one triangle: doubled colours a, b, c against level r.

    Even sum, each colour at most the sum of the other two, and total at
    most 2(r-2).
    """
    s = a + b + c
    if s & 1:
        return False
    if s > 2 * (r - 2):
        return False
    return a <= b + c and b <= a + c and c <= a + b


def _as_skeleton(obj) -> Skeleton:
    if isinstance(obj, Skeleton):
        return obj
    if isinstance(obj, Triangulation):
        return build_skeleton(obj)
    raise TypeError(f"expected Triangulation or Skeleton, got {type(obj)!r}")


def admissible_colouring(skel: Skeleton, doubled, r: int) -> bool:
    """Check every triangle class of the skeleton against ``doubled``."""
    if len(doubled) != skel.e:
        raise ValueError(f"expected {skel.e} colours, got {len(doubled)}")
    if any(not (0 <= x <= r - 2) for x in doubled):
        return False
    for ea, eb, ec in skel.triangle_edge_classes:
        if not admissible_triple(r, doubled[ea], doubled[eb], doubled[ec]):
            return False
    return True


# ---------------------------------------------------------------------------
# backtracking enumeration


def _search_plan(skel: Skeleton):
    """Static edge order plus the triangle checks that complete per level.

    Greedy order: always pick the edge class finishing the most triangles,
    ties broken by smallest class id.  Returns (order, checks) where
    checks[k] lists (ea, eb, ec) triangle triples fully decided once the
    first k+1 edges are assigned and not decided earlier.
    """
    triangles = skel.triangle_edge_classes
    undecided = set(range(skel.e))
    order = []
    placed = set()
    while undecided:
        best, best_score = None, -1
        for e in sorted(undecided):
            score = 0
            for tri in triangles:
                if e in tri and all(x == e or x in placed for x in tri):
                    score += 1
            if score > best_score:
                best, best_score = e, score
        order.append(best)
        placed.add(best)
        undecided.discard(best)

    checks = [[] for _ in order]
    level = {e: k for k, e in enumerate(order)}
    for tri in triangles:
        checks[max(level[x] for x in tri)].append(tri)
    return order, checks


def enumerate_admissible(
    source,
    r: int,
    integer_only: bool = False,
    class_coords=None,
    basis: CocycleBasis | None = None,
):
    """All admissible colourings, in increasing colour order along the
    search plan, with search statistics.

    integer_only restricts the search to whole colours (even doubled
    values).  class_coords keeps only colourings whose half-integer
    pattern represents that cohomology class; it filters emitted results
    and does not shrink the search tree.  Returns (list of Colouring,
    EnumerationStats).
    """
    if r < 3:
        raise ValueError(f"r must be at least 3, got {r}")
    skel = _as_skeleton(source)
    if class_coords is not None:
        if basis is None:
            basis = cocycle_space_1(skel)
        class_coords = tuple(int(b) for b in class_coords)
        if len(class_coords) != basis.beta1:
            raise ValueError(
                f"class has length {len(class_coords)}, "
                f"expected {basis.beta1}")

    order, checks = _search_plan(skel)
    e = skel.e
    domain = tuple(range(0, r - 1, 2) if integer_only else range(r - 1))
    stats = EnumerationStats()
    found = []
    assigned = [0] * e

    def triples_ok(level: int) -> bool:
        for ea, eb, ec in checks[level]:
            if not admissible_triple(
                    r, assigned[ea], assigned[eb], assigned[ec]):
                return False
        return True

    def visit(depth: int) -> None:
        last = depth == e - 1
        edge = order[depth]
        for value in domain:
            assigned[edge] = value
            if last:
                stats.nodes_visited += 1
                if not triples_ok(depth):
                    continue
                doubled = tuple(assigned)
                if class_coords is not None:
                    if basis.class_of(reduce_colouring(doubled)) \
                            != class_coords:
                        continue
                stats.admissible_count += 1
                found.append(Colouring(doubled))
            else:
                if triples_ok(depth):
                    visit(depth + 1)
        assigned[edge] = 0

    if e:
        visit(0)
    return found, stats


# ---------------------------------------------------------------------------
# weights

# cache pools per (r, q); field contexts are memoised so this never grows
# beyond the set of levels actually used
_CACHES: dict = {}


def _cache(ctx: FieldContext) -> dict:
    got = _CACHES.get((ctx.r, ctx.q))
    if got is None:
        got = {"edge": {}, "triangle": {}, "tet": {}, "vertex": None}
        _CACHES[(ctx.r, ctx.q)] = got
    return got


def vertex_weight(ctx: FieldContext) -> Cyc:
    """Constant per-vertex factor |zeta - 1/zeta|^2 / (2r)."""
    pool = _cache(ctx)
    if pool["vertex"] is None:
        diff = ctx.zeta_power(1) - ctx.zeta_power(-1)
        pool["vertex"] = (diff * diff.conjugate()) / (2 * ctx.r)
    return pool["vertex"]


def edge_weight(ctx: FieldContext, a: int) -> Cyc:
    """Weight of an edge with doubled colour a: (-1)^a [a+1]."""
    pool = _cache(ctx)["edge"]
    got = pool.get(a)
    if got is None:
        got = ctx.quantum_integer(a + 1)
        if a & 1:
            got = -got
        pool[a] = got
    return got


def triangle_weight(ctx: FieldContext, a: int, b: int, c: int) -> Cyc:
    """Weight of a triangle with doubled colours a, b, c."""
    if not admissible_triple(ctx.r, a, b, c):
        raise ValueError(f"triple ({a}, {b}, {c}) is not admissible "
                         f"for r={ctx.r}")
    key = (a, b, c) if a <= b <= c else tuple(sorted((a, b, c)))
    pool = _cache(ctx)["triangle"]
    got = pool.get(key)
    if got is None:
        a, b, c = key
        half = (a + b + c) // 2
        got = (ctx.bracket_factorial(half - c)
               * ctx.bracket_factorial(half - b)
               * ctx.bracket_factorial(half - a)
               * ctx.inverse_bracket_factorial(half + 1))
        if half & 1:
            got = -got
        pool[key] = got
    return got


# local edges are indexed by vertex pairs 01,02,03,12,13,23; the four
# triangles and three opposite pairs below are fixed by that numbering
_TET_TRIANGLES = ((0, 1, 3), (0, 2, 4), (1, 2, 5), (3, 4, 5))
_TET_QUADS = ((0, 1, 4, 5), (0, 2, 3, 5), (1, 2, 3, 4))


def _tet_symmetry_maps():
    """Edge-index permutations fixing the tetrahedron weight.

    Exactly the 24 vertex relabellings: they permute the triangle and
    quad half-sum families and leave the weight alone.  Reversing all
    three opposite pairs (k -> 5-k) preserves quads but swaps triangle
    edge sets with vertex stars, so it is not a symmetry.
    """
    from .triangulation import ALL_PERMS, EDGE_INDEX, EDGE_VERTICES

    maps = set()
    for perm in ALL_PERMS:
        maps.add(tuple(
            EDGE_INDEX[(min(perm[u], perm[v]), max(perm[u], perm[v]))]
            for (u, v) in EDGE_VERTICES))
    return tuple(sorted(maps))


_TET_SYMMETRIES = _tet_symmetry_maps()


def tetrahedron_weight(ctx: FieldContext, colours) -> Cyc:
    """Weight of one tetrahedron from its six doubled edge colours.

    colours[k] is the doubled colour of local edge k.  Requires the four
    surrounding triangles to be admissible; the value is an alternating
    sum over the integers z between the largest triangle sum and the
    smallest quad sum (halved colours), empty range giving zero.
    """
    colours = tuple(colours)
    if len(colours) != 6:
        raise ValueError(f"expected 6 colours, got {len(colours)}")
    for ia, ib, ic in _TET_TRIANGLES:
        if not admissible_triple(ctx.r, colours[ia], colours[ib],
                                 colours[ic]):
            raise ValueError(
                f"triangle colours ({colours[ia]}, {colours[ib]}, "
                f"{colours[ic]}) are not admissible for r={ctx.r}")

    pool = _cache(ctx)["tet"]
    key = min(tuple(colours[m[k]] for k in range(6))
              for m in _TET_SYMMETRIES)
    got = pool.get(key)
    if got is not None:
        return got

    tri_sums = [sum(colours[k] for k in tri) // 2 for tri in _TET_TRIANGLES]
    quad_sums = [sum(colours[k] for k in qd) // 2 for qd in _TET_QUADS]
    lo = max(tri_sums)
    hi = min(quad_sums)
    total = ctx.zero
    for z in range(lo, hi + 1):
        if z + 1 >= ctx.r:
            continue    # the leading factorial vanishes
        term = ctx.bracket_factorial(z + 1)
        for t in tri_sums:
            term = term * ctx.inverse_bracket_factorial(z - t)
        for qd in quad_sums:
            term = term * ctx.inverse_bracket_factorial(qd - z)
        if z & 1:
            term = -term
        total = total + term
    pool[key] = total
    return total


class WeightSystem:
    """Per-colouring weights of a fixed skeleton at level (r, q)."""

    def __init__(self, skel: Skeleton, r: int, q: int = 1):
        self.skel = skel
        self.ctx = field_init(r, q)

    def colouring_weight(self, colouring) -> Cyc:
        doubled = tuple(colouring)
        skel, ctx = self.skel, self.ctx
        w = vertex_weight(ctx) ** skel.v
        for a in doubled:
            w = w * edge_weight(ctx, a)
        for ea, eb, ec in skel.triangle_edge_classes:
            w = w * triangle_weight(ctx, doubled[ea], doubled[eb],
                                    doubled[ec])
        for edges in skel.tet_edge_classes:
            w = w * tetrahedron_weight(
                ctx, tuple(doubled[c] for c in edges))
        return w


def colouring_weight(source, colouring, r: int, q: int = 1) -> Cyc:
    """Weight of one admissible colouring: the product over all vertex,
    edge, triangle and tetrahedron classes."""
    skel = _as_skeleton(source)
    doubled = tuple(colouring)
    if not admissible_colouring(skel, doubled, r):
        raise ValueError("colouring is not admissible")
    return WeightSystem(skel, r, q).colouring_weight(doubled)


def _checked_skeleton(source) -> Skeleton:
    skel = _as_skeleton(source)
    report = validate_closed_3manifold(skel)
    if not report.is_closed_3manifold:
        raise ValueError(
            "not a closed 3-manifold triangulation: "
            + "; ".join(report.messages))
    return skel


def state_sum(
    source,
    r: int,
    q: int = 1,
    class_coords=None,
    integer_only: bool = False,
    threads: int = 1,
):
    """Exact invariant value plus enumeration statistics.

    The sum is chunked when threads > 1; exact field addition makes the
    result identical for every thread count.
    """
    skel = _checked_skeleton(source)
    colourings, stats = enumerate_admissible(
        skel, r, integer_only=integer_only, class_coords=class_coords)
    system = WeightSystem(skel, r, q)
    if threads < 1:
        raise ValueError("threads must be positive")
    if threads == 1 or len(colourings) < 2 * threads:
        total = system.ctx.zero
        for col in colourings:
            total = total + system.colouring_weight(col)
        return total, stats

    def chunk_sum(chunk):
        part = system.ctx.zero
        for col in chunk:
            part = part + system.colouring_weight(col)
        return part

    step = -(-len(colourings) // threads)
    chunks = [colourings[i:i + step]
              for i in range(0, len(colourings), step)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(chunk_sum, chunks))
    total = system.ctx.zero
    for part in parts:
        total = total + part
    return total, stats


def tv(source, r: int, q: int = 1, threads: int = 1) -> Cyc:
    """The invariant of a closed triangulation: sum of the weights of all
    admissible colourings."""
    value, _ = state_sum(source, r, q, threads=threads)
    return value


def tv_at_class(source, r: int, q: int, class_coords,
                threads: int = 1) -> Cyc:
    """Partial invariant: only colourings whose half-integer pattern lies
    in the given cohomology class (bit per class generator)."""
    value, _ = state_sum(source, r, q, class_coords=class_coords,
                         threads=threads)
    return value
