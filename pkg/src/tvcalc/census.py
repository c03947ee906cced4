"""Exhaustive census of closed 3-manifold triangulations with few tetrahedra.

Enumerates all connected gluing tables on exactly ``tets`` tetrahedra up to
combinatorial isomorphism, keeping those that triangulate a closed
3-manifold (no free faces, no edge reversed onto itself, all vertex links
spheres).  Intended for desk scale only; the search is a plain backtracking
sweep over face pairings with incremental edge-validity pruning.
"""
from __future__ import annotations

import itertools

from .homology import betti_z2
from .triangulation import (
    ALL_PERMS,
    EDGE_INDEX,
    EDGE_VERTICES,
    FACE_EDGES,
    Triangulation,
    build_skeleton,
    make_triangulation,
    perm_compose,
    perm_invert,
    validate_closed_3manifold,
)

__all__ = ["enumerate_census", "canonical_form", "canonical_triangulation"]

MAX_CENSUS_TETS = 3


def _bfs_relabelling(tri: Triangulation, start: int, start_perm):
    """Relabel tetrahedra/vertices from a seed, making met gluings identity.

    Returns the relabelled gluing table as a flat tuple signature, or None
    if the triangulation is disconnected from the seed.
    """
    n = tri.n
    order = [start]            # old index of new tet k
    perms = {start: start_perm}   # old tet -> permutation old labels -> new
    new_index = {start: 0}
    table = []
    k = 0
    while k < len(order):
        old_t = order[k]
        rho = perms[old_t]
        rho_inv = perm_invert(rho)
        for new_face in range(4):
            old_face = rho_inv[new_face]
            g = tri.gluings[old_t][old_face]
            if g is None:
                table.append((-1, -1))
                continue
            t2, p = g
            if t2 not in new_index:
                new_index[t2] = len(order)
                order.append(t2)
                # choose the target labelling that turns this gluing into
                # the identity permutation
                perms[t2] = perm_compose(rho, perm_invert(p))
            sig = perm_compose(perms[t2], perm_compose(p, rho_inv))
            table.append((new_index[t2], ALL_PERMS.index(sig)))
        k += 1
    if len(order) != n:
        return None
    return tuple(table)


def canonical_form(tri: Triangulation):
    """Lexicographically minimal relabelled gluing table.

    Minimises over all choices of starting tetrahedron and starting vertex
    permutation; two triangulations are combinatorially isomorphic exactly
    when their canonical forms agree (connected case).
    """
    best = None
    for start in range(tri.n):
        for perm in ALL_PERMS:
            sig = _bfs_relabelling(tri, start, perm)
            if sig is not None and (best is None or sig < best):
                best = sig
    if best is None:
        raise ValueError("disconnected triangulation")
    return best


def canonical_triangulation(tri: Triangulation) -> Triangulation:
    """Rebuild the triangulation from its canonical form."""
    sig = canonical_form(tri)
    n = tri.n
    glu = []
    for t in range(n):
        row = []
        for f in range(4):
            t2, pidx = sig[4 * t + f]
            row.append(None if t2 < 0 else (t2, ALL_PERMS[pidx]))
        glu.append(row)
    return make_triangulation(glu)


# Permutations gluing face f onto face f2: the three vertices of face f in
# ascending order map onto the vertices of face f2 in each of six orders.
def _face_gluing_perms(f: int, f2: int):
    src = [u for u in range(4) if u != f]
    for image in itertools.permutations([u for u in range(4) if u != f2]):
        p = [0, 0, 0, 0]
        p[f] = f2
        for u, iu in zip(src, image):
            p[u] = iu
        yield tuple(p)


_PERMS_BY_FACES = {
    (f, f2): tuple(_face_gluing_perms(f, f2))
    for f in range(4) for f2 in range(4)
}


class _EdgeState:
    """Union-find with parity over the 6n local edges, copy-on-branch."""

    __slots__ = ("parent", "parity")

    def __init__(self, n: int):
        self.parent = list(range(6 * n))
        self.parity = [0] * (6 * n)

    def copy(self) -> "_EdgeState":
        dup = object.__new__(_EdgeState)
        dup.parent = self.parent.copy()
        dup.parity = self.parity.copy()
        return dup

    def find(self, x: int):
        p = 0
        while self.parent[x] != x:
            p ^= self.parity[x]
            x = self.parent[x]
        return x, p

    def union(self, x: int, y: int, parity: int) -> bool:
        """Merge; False on a parity conflict (edge reversed onto itself)."""
        rx, px = self.find(x)
        ry, py = self.find(y)
        if rx == ry:
            return (px ^ py) == parity
        self.parent[ry] = rx
        self.parity[ry] = parity ^ px ^ py
        return True


def _apply_gluing(state: _EdgeState, t, face, t2, p) -> bool:
    for k in FACE_EDGES[face]:
        u, v = EDGE_VERTICES[k]
        iu, iv = p[u], p[v]
        k2 = EDGE_INDEX[(iu, iv)]
        flipped = 1 if iu > iv else 0
        if not state.union(6 * t + k, 6 * t2 + k2, flipped):
            return False
    return True


def enumerate_census(tets: int, one_vertex: bool = False,
                     z2_homology_sphere: bool = False,
                     beta1: int | None = None,
                     limit: int | None = None):
    """Yield the closed-3-manifold census on exactly ``tets`` tetrahedra.

    Output is up to combinatorial isomorphism, each member given in its
    canonical labelling, in a deterministic discovery order.  Filters:
    ``one_vertex`` keeps single-vertex triangulations, ``z2_homology_sphere``
    keeps those with trivial first Z/2 homology, ``beta1`` pins the first
    Z/2 Betti number.  ``limit`` stops after that many results, which keeps
    partial sweeps at the largest sizes affordable.
    """
    if not (1 <= tets <= MAX_CENSUS_TETS):
        raise ValueError(
            f"census supports 1..{MAX_CENSUS_TETS} tetrahedra, got {tets}")
    n = tets
    gluings = [[None] * 4 for _ in range(n)]
    seen: set = set()
    emitted = 0

    def candidates(state, used):
        # first unglued face
        spot = None
        for t in range(used):
            for f in range(4):
                if gluings[t][f] is None:
                    spot = (t, f)
                    break
            if spot:
                break
        if spot is None:
            return None, ()
        t, f = spot
        opts = []
        for t2 in range(t, used):
            for f2 in range(4):
                if gluings[t2][f2] is not None or (t2, f2) <= (t, f):
                    continue
                for p in _PERMS_BY_FACES[(f, f2)]:
                    opts.append((t2, p))
        if used < n:
            # a brand new tetrahedron: all 96 (face, permutation) choices
            # are equivalent under its relabelling, so fix the identity
            opts.append((used, (0, 1, 2, 3)))
        return spot, opts

    def emit(tri):
        nonlocal emitted
        skel = build_skeleton(tri)
        if not skel.valid_edges:
            return None
        report = validate_closed_3manifold(skel)
        if not report.is_closed_3manifold:
            return None
        key = canonical_form(tri)
        if key in seen:
            return None
        seen.add(key)
        if one_vertex and skel.v != 1:
            return None
        b1 = betti_z2(skel, 1)
        if z2_homology_sphere and b1 != 0:
            return None
        if beta1 is not None and b1 != beta1:
            return None
        emitted += 1
        return canonical_triangulation(tri)

    def search(state, used):
        nonlocal emitted
        if limit is not None and emitted >= limit:
            return
        spot, opts = candidates(state, used)
        if spot is None:
            if used == n:
                tri = make_triangulation(gluings)
                result = emit(tri)
                if result is not None:
                    yield result
            return
        t, f = spot
        for t2, p in opts:
            f2 = p[f]
            branch = state.copy()
            if not _apply_gluing(branch, t, f, t2, p):
                continue
            gluings[t][f] = (t2, p)
            gluings[t2][f2] = (t, perm_invert(p))
            yield from search(branch, max(used, t2 + 1))
            gluings[t][f] = None
            gluings[t2][f2] = None
            if limit is not None and emitted >= limit:
                return

    yield from search(_EdgeState(n), 1)
