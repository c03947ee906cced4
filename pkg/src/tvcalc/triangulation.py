"""Generalised triangulations of 3-manifolds, given by face gluing tables.

A triangulation consists of n abstract tetrahedra with vertices labelled
0..3.  Face f of a tetrahedron is the face opposite vertex f.  Faces are
glued in pairs: a gluing of face f of tetrahedron t to tetrahedron t2 is
recorded as a permutation p of {0,1,2,3} mapping the vertices of t to the
vertices of t2, with p[f] naming the matching face of t2.  Gluings are
involutive, and a face is never glued to itself.

The quotient identifies tetrahedron vertices, edges and triangles into
equivalence classes; the skeleton computed here records those classes
together with edge orientations, which is everything the homology and
colouring machinery needs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

__all__ = [
    "ALL_PERMS",
    "EDGE_VERTICES",
    "EDGE_INDEX",
    "FACE_EDGES",
    "ParseError",
    "Triangulation",
    "Skeleton",
    "ValidityReport",
    "parse_triangulation",
    "serialise_triangulation",
    "build_skeleton",
    "validate_closed_3manifold",
    "pachner_23",
    "perm_compose",
    "perm_invert",
]

Perm = tuple  # tuple of 4 ints, images of 0..3


def perm_compose(p: Perm, q: Perm) -> Perm:
    """Composition p after q: i -> p[q[i]]."""
    return (p[q[0]], p[q[1]], p[q[2]], p[q[3]])


def perm_invert(p: Perm) -> Perm:
    inv = [0, 0, 0, 0]
    for i in range(4):
        inv[p[i]] = i
    return tuple(inv)


ALL_PERMS: tuple[Perm, ...] = tuple(itertools.permutations(range(4)))

# Local edges of a tetrahedron, indexed 0..5 by their vertex pairs.
EDGE_VERTICES: tuple[tuple[int, int], ...] = (
    (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX: dict[tuple[int, int], int] = {}
for _k, (_u, _v) in enumerate(EDGE_VERTICES):
    EDGE_INDEX[(_u, _v)] = _k
    EDGE_INDEX[(_v, _u)] = _k

# The three edges lying on face f (the edges avoiding vertex f).
FACE_EDGES: tuple[tuple[int, int, int], ...] = tuple(
    tuple(k for k, (u, v) in enumerate(EDGE_VERTICES) if f not in (u, v))
    for f in range(4))

# Opposite edge: the one sharing no vertex.
OPPOSITE_EDGE: tuple[int, ...] = (5, 4, 3, 2, 1, 0)


class ParseError(ValueError):
    """Raised for malformed gluing-table text; carries the line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Triangulation:
    """An immutable gluing table.

    gluings[t][f] is None for an unglued face, else a pair (t2, p) with p a
    vertex permutation taking face f of t to face p[f] of t2.
    """

    gluings: tuple

    def __post_init__(self):
        for t, row in enumerate(self.gluings):
            if len(row) != 4:
                raise ValueError(f"tetrahedron {t}: expected 4 faces")
            for f, g in enumerate(row):
                if g is None:
                    continue
                t2, p = g
                if not (0 <= t2 < len(self.gluings)):
                    raise ValueError(
                        f"tetrahedron {t} face {f}: target {t2} out of range")
                if sorted(p) != [0, 1, 2, 3]:
                    raise ValueError(
                        f"tetrahedron {t} face {f}: not a permutation")
                f2 = p[f]
                if t2 == t and f2 == f:
                    raise ValueError(
                        f"tetrahedron {t} face {f}: glued to itself")
                back = self.gluings[t2][f2]
                if back is None or back[0] != t or back[1] != perm_invert(p):
                    raise ValueError(
                        f"tetrahedron {t} face {f}: gluing not involutive")

    @property
    def n(self) -> int:
        return len(self.gluings)

    def is_closed(self) -> bool:
        return all(g is not None for row in self.gluings for g in row)

    def unglued_faces(self) -> list:
        return [(t, f) for t, row in enumerate(self.gluings)
                for f, g in enumerate(row) if g is None]


def make_triangulation(glu_lists) -> Triangulation:
    """Build a Triangulation from nested lists, freezing them to tuples."""
    rows = []
    for row in glu_lists:
        rows.append(tuple(
            None if g is None else (g[0], tuple(g[1])) for g in row))
    return Triangulation(tuple(rows))


# ---------------------------------------------------------------------------
# gluing-table text format


def parse_triangulation(text: str) -> Triangulation:
    """Parse the plain-text gluing-table format.

    First meaningful line is the header ``tri 1``; then one line per
    tetrahedron, ``tet <i>: <g0> <g1> <g2> <g3>`` where each ``<gf>`` is
    either ``-`` (unglued) or ``<j>:<p0p1p2p3>``.  ``#`` starts a comment.
    """
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append((number, stripped))
    if not lines:
        raise ParseError("empty table", 1)
    number, header = lines[0]
    if header != "tri 1":
        raise ParseError(f"expected header 'tri 1', got {header!r}", number)

    rows = []
    for expect, (number, line) in enumerate(lines[1:]):
        head, _, rest = line.partition(":")
        parts = head.split()
        if len(parts) != 2 or parts[0] != "tet":
            raise ParseError(f"expected 'tet {expect}: ...'", number)
        try:
            index = int(parts[1])
        except ValueError:
            raise ParseError(f"bad tetrahedron index {parts[1]!r}", number)
        if index != expect:
            raise ParseError(
                f"tetrahedron lines out of order: got {index}, "
                f"expected {expect}", number)
        entries = rest.split()
        if len(entries) != 4:
            raise ParseError(
                f"expected 4 face entries, got {len(entries)}", number)
        row = []
        for f, entry in enumerate(entries):
            if entry == "-":
                row.append(None)
                continue
            target, _, permtext = entry.partition(":")
            try:
                t2 = int(target)
            except ValueError:
                raise ParseError(f"bad face entry {entry!r}", number)
            if len(permtext) != 4 or not permtext.isdigit():
                raise ParseError(f"bad permutation in {entry!r}", number)
            p = tuple(int(c) for c in permtext)
            if sorted(p) != [0, 1, 2, 3]:
                raise ParseError(f"not a permutation in {entry!r}", number)
            row.append((t2, p))
        rows.append(tuple(row))

    n = len(rows)
    for t, row in enumerate(rows):
        for f, g in enumerate(row):
            if g is not None and not (0 <= g[0] < n):
                raise ParseError(
                    f"tetrahedron {t} face {f}: target {g[0]} out of range",
                    1)
    try:
        return Triangulation(tuple(rows))
    except ValueError as exc:
        raise ParseError(str(exc), 1)


def serialise_triangulation(tri: Triangulation) -> str:
    """Emit the canonical text form; parse . serialise is the identity."""
    out = ["tri 1"]
    for t, row in enumerate(tri.gluings):
        cells = []
        for g in row:
            if g is None:
                cells.append("-")
            else:
                t2, p = g
                cells.append(f"{t2}:{''.join(str(i) for i in p)}")
        out.append(f"tet {t}: " + " ".join(cells))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# union-find


class _UnionFind:
    """Union-find with an optional parity bit per element.

    The parity of an element is relative to its root; joining an element to
    itself with odd parity marks the whole class as conflicted, which is how
    edge reversals are detected.
    """

    def __init__(self, size: int, track_parity: bool = False):
        self.parent = list(range(size))
        self.rank = [0] * size
        self.parity = [0] * size if track_parity else None
        self.conflict = [False] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        if self.parity is None:
            while self.parent[x] != root:
                self.parent[x], x = root, self.parent[x]
        return root

    def parity_to_root(self, x: int) -> int:
        p = 0
        while self.parent[x] != x:
            p ^= self.parity[x]
            x = self.parent[x]
        return p

    def union(self, x: int, y: int, parity: int = 0) -> None:
        rx, ry = self.find(x), self.find(y)
        if self.parity is not None:
            parity ^= self.parity_to_root(x) ^ self.parity_to_root(y)
        if rx == ry:
            if self.parity is not None and parity:
                self.conflict[rx] = True
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.parity is not None:
            self.parity[ry] = parity
        self.conflict[rx] = self.conflict[rx] or self.conflict[ry]
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1

    def classes(self):
        """Class ids in first-appearance order; returns (ids, count)."""
        ids = [-1] * len(self.parent)
        seen: dict[int, int] = {}
        for x in range(len(self.parent)):
            root = self.find(x)
            if root not in seen:
                seen[root] = len(seen)
            ids[x] = seen[root]
        return ids, len(seen)


# ---------------------------------------------------------------------------
# skeleton


@dataclass(frozen=True)
class Skeleton:
    """Vertex/edge/triangle classes of a triangulation's quotient space."""

    triangulation: Triangulation
    vertex_class: tuple      # 4n entries, index 4t+u
    edge_class: tuple        # 6n entries, index 6t+e
    edge_sign: tuple         # +1/-1 vs the class orientation (valid edges)
    triangle_class: tuple    # 4n entries, index 4t+f
    end_class: tuple         # 12n entries, index 2(6t+e)+side
    v: int
    e: int
    f: int
    valid_edges: bool
    tet_edge_classes: tuple        # per tet, classes of edges 01,02,03,12,13,23
    triangle_edge_classes: tuple   # per triangle class, its 3 edge classes
    edge_endpoints: tuple          # per edge class, (tail, head) vertex classes

    @property
    def n(self) -> int:
        return self.triangulation.n


def build_skeleton(tri: Triangulation) -> Skeleton:
    n = tri.n
    vertices = _UnionFind(4 * n)
    edges = _UnionFind(6 * n, track_parity=True)
    triangles = _UnionFind(4 * n)
    ends = _UnionFind(12 * n)

    for t, row in enumerate(tri.gluings):
        for face, g in enumerate(row):
            if g is None:
                continue
            t2, p = g
            triangles.union(4 * t + face, 4 * t2 + p[face])
            for u in range(4):
                if u != face:
                    vertices.union(4 * t + u, 4 * t2 + p[u])
            for k in FACE_EDGES[face]:
                u, v = EDGE_VERTICES[k]
                iu, iv = p[u], p[v]
                k2 = EDGE_INDEX[(iu, iv)]
                flipped = 1 if iu > iv else 0
                edges.union(6 * t + k, 6 * t2 + k2, flipped)
                lo, hi = EDGE_VERTICES[k2]
                side_u = 0 if iu == lo else 1
                ends.union(2 * (6 * t + k) + 0, 2 * (6 * t2 + k2) + side_u)
                ends.union(2 * (6 * t + k) + 1, 2 * (6 * t2 + k2) + (1 - side_u))

    vclass, v = vertices.classes()
    eclass, e = edges.classes()
    fclass, f = triangles.classes()
    endclass, _ = ends.classes()

    valid = not any(edges.conflict[edges.find(x)] for x in range(6 * n))
    esign = tuple(-1 if edges.parity_to_root(x) else 1 for x in range(6 * n))

    tet_edges = tuple(
        tuple(eclass[6 * t + k] for k in range(6)) for t in range(n))

    tri_rep = [-1] * f
    for local in range(4 * n):
        c = fclass[local]
        if tri_rep[c] < 0:
            tri_rep[c] = local
    tri_edges = []
    for c in range(f):
        t, face = divmod(tri_rep[c], 4)
        tri_edges.append(tuple(eclass[6 * t + k] for k in FACE_EDGES[face]))

    # Orient each edge class by its union-find root representative.
    endpoints = [None] * e
    for t in range(n):
        for k in range(6):
            local = 6 * t + k
            if edges.find(local) == local:
                u, w = EDGE_VERTICES[k]
                endpoints[eclass[local]] = (vclass[4 * t + u],
                                            vclass[4 * t + w])

    return Skeleton(
        triangulation=tri,
        vertex_class=tuple(vclass),
        edge_class=tuple(eclass),
        edge_sign=esign,
        triangle_class=tuple(fclass),
        end_class=tuple(endclass),
        v=v, e=e, f=f,
        valid_edges=valid,
        tet_edge_classes=tet_edges,
        triangle_edge_classes=tuple(tri_edges),
        edge_endpoints=tuple(endpoints),
    )


# ---------------------------------------------------------------------------
# validity


@dataclass(frozen=True)
class ValidityReport:
    closed: bool
    valid_edges: bool
    vertex_links_are_spheres: bool
    messages: tuple

    @property
    def is_closed_3manifold(self) -> bool:
        return (self.closed and self.valid_edges
                and self.vertex_links_are_spheres)


def _vertex_link_data(skel: Skeleton):
    """Per vertex class: (faces, edges, vertices, connected) of its link.

    The link of a vertex class is a surface built from one corner triangle
    per incident tetrahedron corner.  Corner-triangle edges sit inside
    tetrahedron faces and are matched by the face gluings; corner-triangle
    vertices sit on tetrahedron edges and correspond to edge-end classes.
    """
    tri = skel.triangulation
    n = tri.n
    counts = []
    for target in range(skel.v):
        faces = 0
        corner_edges = 0       # (face, corner) incidences, glued in pairs
        unglued = 0
        corner_uf: dict[tuple[int, int], int] = {}
        corners = []
        for t in range(n):
            for u in range(4):
                if skel.vertex_class[4 * t + u] == target:
                    corner_uf[(t, u)] = len(corners)
                    corners.append((t, u))
        faces = len(corners)
        link_uf = _UnionFind(max(faces, 1))
        for t, u in corners:
            for face in range(4):
                if face == u:
                    continue
                g = tri.gluings[t][face]
                if g is None:
                    unglued += 1
                    continue
                corner_edges += 1
                t2, p = g
                link_uf.union(corner_uf[(t, u)], corner_uf[(t2, p[u])])
        # Link vertices: edge-end classes whose endpoint lies in this class.
        end_seen = set()
        for t in range(n):
            for k in range(6):
                u, w = EDGE_VERTICES[k]
                for side, vert in ((0, u), (1, w)):
                    if skel.vertex_class[4 * t + vert] == target:
                        end_seen.add(skel.end_class[2 * (6 * t + k) + side])
        link_vertices = len(end_seen)
        link_edges = corner_edges // 2
        _, components = link_uf.classes() if faces else ([], 0)
        counts.append((faces, link_edges, link_vertices,
                       components, unglued))
    return counts


def validate_closed_3manifold(skel: Skeleton) -> ValidityReport:
    """Check the three conditions for underlying a closed 3-manifold."""
    tri = skel.triangulation
    messages = []
    closed = tri.is_closed()
    if not closed:
        messages.append(
            f"{len(tri.unglued_faces())} unglued face(s)")
    valid_edges = skel.valid_edges
    if not valid_edges:
        messages.append("an edge is identified with itself in reverse")

    links_ok = True
    for vc, (faces, edges, verts, components, unglued) in enumerate(
            _vertex_link_data(skel)):
        if unglued:
            links_ok = False
            messages.append(f"vertex {vc}: link has boundary")
            continue
        euler = verts - edges + faces
        if components != 1 or euler != 2:
            links_ok = False
            messages.append(
                f"vertex {vc}: link has euler characteristic {euler} "
                f"in {components} component(s)")
    return ValidityReport(closed, valid_edges, links_ok, tuple(messages))


# ---------------------------------------------------------------------------
# 2-3 move


def pachner_23(tri: Triangulation, triangle_class: int) -> Triangulation:
    """Replace the two tetrahedra around an internal triangle by three.

    The given triangle class must be a face glued between two *distinct*
    tetrahedra; anything else is rejected.  The result triangulates the
    same manifold with one extra tetrahedron, one extra edge and two extra
    triangles.
    """
    skel = build_skeleton(tri)
    if not (0 <= triangle_class < skel.f):
        raise ValueError(f"no triangle class {triangle_class}")
    locs = [i for i, c in enumerate(skel.triangle_class)
            if c == triangle_class]
    if len(locs) != 2:
        raise ValueError("triangle is on the boundary")
    t0, f0 = divmod(locs[0], 4)
    t1_, f1_ = divmod(locs[1], 4)
    if t0 == t1_:
        raise ValueError("triangle has the same tetrahedron on both sides")
    g = tri.gluings[t0][f0]
    t1, sigma = g
    f1 = sigma[f0]

    eq = sorted(u for u in range(4) if u != f0)   # equatorial vertices in t0
    n = tri.n

    # New tetrahedron k (k = 0,1,2) has local vertices
    #   0 -> apex f0 of t0, 1 -> apex f1 of t1,
    #   2 -> eq[k] of t0,   3 -> eq[k+1] of t0.
    # Face 1 of new tet k replaces face eq[k+2] of t0 (map mu into t0);
    # face 0 replaces face sigma[eq[k+2]] of t1 (map nu into t1).
    mu, nu = [], []
    for k in range(3):
        a, b, c = eq[k], eq[(k + 1) % 3], eq[(k + 2) % 3]
        m = [0, 0, 0, 0]
        m[0], m[1], m[2], m[3] = f0, c, a, b
        mu.append(tuple(m))
        nn = [0, 0, 0, 0]
        nn[0], nn[1], nn[2], nn[3] = sigma[c], f1, sigma[a], sigma[b]
        nu.append(tuple(nn))

    # Old boundary faces of the bipyramid -> (new tet, new face, map into old)
    replaced = {}
    for k in range(3):
        c = eq[(k + 2) % 3]
        replaced[(t0, c)] = (k, 1, mu[k])
        replaced[(t1, sigma[c])] = (k, 0, nu[k])

    def relabel(t: int) -> int:
        # old tetrahedra keep their order with t0, t1 removed; new tets at end
        return t - sum(1 for s in (t0, t1) if s < t)

    new_n = n + 1
    glu = [[None] * 4 for _ in range(new_n)]

    for t in range(n):
        if t in (t0, t1):
            continue
        for face in range(4):
            old = tri.gluings[t][face]
            if old is None:
                continue
            t2, p = old
            if (t2, p[face]) in replaced:
                k, fnew, m = replaced[(t2, p[face])]
                minv = perm_invert(m)
                glu[relabel(t)][face] = (n - 2 + k, perm_compose(minv, p))
            else:
                glu[relabel(t)][face] = (relabel(t2), p)

    for (told, fold), (k, fnew, m) in replaced.items():
        old = tri.gluings[told][fold]
        t2, p = old   # closedness of this face is implied by the gluing g
        comp = perm_compose(p, m)
        if (t2, p[fold]) in replaced:
            k2, fnew2, m2 = replaced[(t2, p[fold])]
            glu[n - 2 + k][fnew] = (n - 2 + k2,
                                    perm_compose(perm_invert(m2), comp))
        else:
            glu[n - 2 + k][fnew] = (relabel(t2), comp)

    # Internal gluings around the new central edge: face 2 of new tet k
    # (opposite its vertex 2) meets face 3 of new tet k+1.
    swap23 = (0, 1, 3, 2)
    for k in range(3):
        k2 = (k + 1) % 3
        glu[n - 2 + k][2] = (n - 2 + k2, swap23)
        glu[n - 2 + k2][3] = (n - 2 + k, swap23)

    return make_triangulation(glu)
