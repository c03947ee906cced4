"""Structure-aware colouring enumeration and fast state sums.

At level 3 the admissible colourings are exactly the Z/2 1-cocycles.
Each level-4 colouring reduces mod 2 to one of them, which turns the
level-4 search into small independent searches over the zero-coloured
edges of each cocycle.  For odd levels on one-vertex triangulations the
state sum factors through the level-3 invariant and the integer-coloured
part, so only even colours need enumerating.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .colourings import (
    Colouring,
    EnumerationStats,
    WeightSystem,
    _checked_skeleton,
    enumerate_admissible,
    state_sum,
)
from .cyclotomic import Cyc, field_init
from .homology import cocycle_space_1
from .triangulation import Skeleton

__all__ = [
    "Adm3Certificate",
    "BoundReport",
    "adm3_certificate",
    "adm4_structured",
    "tv4_structured",
    "tv_odd_fast",
    "bounds",
]


@dataclass(frozen=True)
class Adm3Certificate:
    """Every level-3 admissible colouring, with its zero-coloured edges.

    Level-3 admissibility forces colours in {0, 1} with an even number
    of 1s around every triangle, i.e. the colourings are the Z/2
    1-cocycles; there are 2^(v - 1 + beta1) of them.
    """

    colourings: tuple
    kernels: tuple

    def __len__(self) -> int:
        return len(self.colourings)


def adm3_certificate(source) -> Adm3Certificate:
    skel = _checked_skeleton(source)
    basis = cocycle_space_1(skel)
    colourings = []
    kernels = []
    for mask in basis.span():
        doubled = tuple((mask >> j) & 1 for j in range(skel.e))
        colourings.append(Colouring(doubled))
        kernels.append(tuple(j for j in range(skel.e) if not doubled[j]))
    return Adm3Certificate(tuple(colourings), tuple(kernels))


def _extend_cocycle(skel: Skeleton, doubled3, kernel):
    """All level-4 colourings reducing to the given nonzero cocycle.

    Zero-coloured edges may be raised to colour 2; edges coloured 1
    stay.  A triangle with two colour-1 edges allows anything on its
    third edge, so only triangles all of whose edges lie in the kernel
    constrain the search: they must not carry exactly one or three 2s.
    Returns (colourings, candidates tested at the deepest level).
    """
    if not kernel:
        # nothing to choose; the doubled cocycle itself is the candidate
        return [Colouring(doubled3)], 1

    level_of = {c: k for k, c in enumerate(kernel)}
    checks = [[] for _ in kernel]
    for tri in skel.triangle_edge_classes:
        if all(doubled3[c] == 0 for c in tri):
            checks[max(level_of[c] for c in tri)].append(tri)

    def ok(values, tri):
        twos = sum(1 for c in tri if values[c] == 2)
        return twos == 0 or twos == 2

    found = []
    tested = 0
    values = list(doubled3)
    last = len(kernel) - 1

    def walk(k):
        nonlocal tested
        c = kernel[k]
        for colour in (0, 2):
            values[c] = colour
            if k == last:
                tested += 1
                if all(ok(values, tri) for tri in checks[k]):
                    found.append(Colouring(tuple(values)))
            else:
                if all(ok(values, tri) for tri in checks[k]):
                    walk(k + 1)
        values[c] = 0

    walk(0)
    return found, tested


def adm4_structured(source, threads: int = 1):
    """Level-4 admissible colourings via their mod-2 reductions.

    Returns (colourings sorted lexicographically, EnumerationStats).
    Set-equal to enumerate_admissible(source, 4); the node count is at
    most sum(2^|kernel| over nonzero cocycles) + #cocycles.
    """
    skel = _checked_skeleton(source)
    cert = adm3_certificate(skel)
    stats = EnumerationStats()
    found = []

    jobs = [(theta.doubled, kernel)
            for theta, kernel in zip(cert.colourings, cert.kernels)
            if any(theta.doubled)]
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda job: _extend_cocycle(skel, *job), jobs))
    else:
        results = [_extend_cocycle(skel, doubled3, kernel)
                   for doubled3, kernel in jobs]
    for part, tested in results:
        found.extend(part)
        stats.nodes_visited += tested

    # every doubled cocycle is admissible at level 4: triangle sums stay
    # even and at most 4, and a lone 2 would need an odd number of 1s
    for theta in cert.colourings:
        stats.nodes_visited += 1
        found.append(Colouring(tuple(2 * x for x in theta.doubled)))

    stats.admissible_count = len(found)
    found.sort(key=lambda col: col.doubled)
    return found, stats


def tv4_structured(source, q: int = 1, threads: int = 1) -> Cyc:
    """Level-4 state sum over the structured enumeration.

    Exactly equals tv(source, 4, q).
    """
    skel = _checked_skeleton(source)
    colourings, _ = adm4_structured(skel, threads=threads)
    weights = WeightSystem(skel, 4, q)
    total = weights.ctx.zero
    for col in colourings:
        total = total + weights.colouring_weight(col)
    return total


def _tv3_by_cocycles(skel: Skeleton) -> Cyc:
    """Level-3 state sum straight over the Z/2 cocycle span."""
    basis = cocycle_space_1(skel)
    weights = WeightSystem(skel, 3, 1)
    total = weights.ctx.zero
    for mask in basis.span():
        doubled = tuple((mask >> j) & 1 for j in range(skel.e))
        total = total + weights.colouring_weight(Colouring(doubled))
    return total


def tv_odd_fast(source, r: int) -> Cyc:
    """Odd-level invariant of a one-vertex triangulation at q = 1.

    The state sum splits as the level-3 invariant times the sum over
    integer colourings (the trivial-class part), divided by the
    trivial-class part at level 3, which is the weight of the zero
    colouring.  Only the even colours are enumerated at level r, at
    most floor(r/2) per edge instead of r - 1.
    """
    if r < 3 or r % 2 == 0:
        raise ValueError("the fast algorithm needs an odd level r >= 3")
    skel = _checked_skeleton(source)
    if skel.v != 1:
        raise ValueError(
            "the fast algorithm needs a one-vertex triangulation; "
            "retriangulate or use the plain state sum")

    level3 = _tv3_by_cocycles(skel)
    if r == 3:
        return level3
    assert level3.is_rational(), "level-3 weights are rational"

    zero_weight = WeightSystem(skel, 3, 1).colouring_weight(
        Colouring((0,) * skel.e))
    scale = level3.as_rational() / zero_weight.as_rational()

    integer_part, _ = state_sum(skel, r, 1, integer_only=True)
    return integer_part * field_init(r, 1).from_rational(scale)


@dataclass(frozen=True)
class BoundReport:
    """Size bounds for the admissible-colouring count at one level.

    Bounds that do not apply to the input (wrong level, multiple
    vertices, nonzero Z/2 first Betti number) are None.  ``sharp``
    lists the applicable bound names attained by ``actual``.
    """

    r: int
    tetrahedra: int
    vertices: int
    beta1: int
    naive: int
    kernel_sum_bound: int | None
    coarse_cocycle_bound: int | None
    integer_colour_bound: int | None
    small_level_bound: int | None
    actual: int
    nodes_visited: int
    sharp: tuple

    def to_json_dict(self) -> dict:
        return {
            "r": self.r,
            "tetrahedra": self.tetrahedra,
            "vertices": self.vertices,
            "beta1": self.beta1,
            "bounds": {
                "naive": self.naive,
                "kernel_sum": self.kernel_sum_bound,
                "coarse_cocycle": self.coarse_cocycle_bound,
                "integer_colour": self.integer_colour_bound,
                "small_level": self.small_level_bound,
            },
            "actual": self.actual,
            "nodes_visited": self.nodes_visited,
            "sharp": list(self.sharp),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def bounds(source, r: int) -> BoundReport:
    """Compare the enumerated colouring count against its upper bounds.

    naive: full domain size, (r-1)^edges.  At r = 4, kernel_sum sums
    2^|kernel| over nonzero cocycles plus one per cocycle, and
    coarse_cocycle replaces each kernel by the worst case.  On
    one-vertex triangulations with trivial Z/2 homology the integer
    bound floor(r/2)^(n+1) always applies, and for r in {5, 6, 7} the
    count is further capped by 2^n + 1 or 3^n + 1.
    """
    skel = _checked_skeleton(source)
    n = len(skel.triangulation.gluings)
    basis = cocycle_space_1(skel)
    beta1 = basis.beta1

    naive = (r - 1) ** skel.e
    kernel_sum = coarse = None
    if r == 4:
        cert = adm3_certificate(skel)
        kernel_sum = sum(1 << len(ker)
                         for theta, ker in zip(cert.colourings, cert.kernels)
                         if any(theta.doubled))
        kernel_sum += len(cert)
        coarse = (len(cert) - 1) * ((1 << (skel.e - 1)) + 1) + 1

    integer_bound = small_level = None
    if skel.v == 1 and beta1 == 0:
        integer_bound = (r // 2) ** (n + 1)
        if r == 5:
            small_level = 2 ** n + 1
        elif r in (6, 7):
            small_level = 3 ** n + 1

    colourings, stats = enumerate_admissible(skel, r)
    actual = len(colourings)

    sharp = tuple(sorted(
        name for name, value in (
            ("naive", naive),
            ("kernel_sum", kernel_sum),
            ("coarse_cocycle", coarse),
            ("integer_colour", integer_bound),
            ("small_level", small_level),
        ) if value is not None and actual == value))

    return BoundReport(
        r=r, tetrahedra=n, vertices=skel.v, beta1=beta1, naive=naive,
        kernel_sum_bound=kernel_sum, coarse_cocycle_bound=coarse,
        integer_colour_bound=integer_bound, small_level_bound=small_level,
        actual=actual, nodes_visited=stats.nodes_visited, sharp=sharp)
