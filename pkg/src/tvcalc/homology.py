"""Z/2 chain complexes of triangulation skeletons, plus integral H1.

Chain groups are generated by the vertex, edge, triangle and tetrahedron
classes of a skeleton.  Boundary entries count incidences with
multiplicity, so a triangle whose edges are identified in pairs can have a
column of weight one or three.  Matrices over GF(2) are stored one bitmask
per row; the integer Smith normal form used for H1 is a naive pivoting
reduction, which is plenty for desk-scale inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .triangulation import EDGE_INDEX, EDGE_VERTICES, FACE_EDGES, Skeleton

__all__ = [
    "GF2Matrix",
    "boundary_matrix_z2",
    "betti_z2",
    "CocycleBasis",
    "cocycle_space_1",
    "reduce_colouring",
    "cohomology_class",
    "H1Summary",
    "h1_integral",
]


@dataclass
class GF2Matrix:
    """A matrix over GF(2); rows[i] holds row i with column j at bit j."""

    nrows: int
    ncols: int
    rows: list

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "GF2Matrix":
        return cls(nrows, ncols, [0] * nrows)

    def flip(self, i: int, j: int) -> None:
        self.rows[i] ^= 1 << j

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column_weight(self, j: int) -> int:
        return sum((row >> j) & 1 for row in self.rows)

    def rank(self) -> int:
        return len(_echelon(self.rows.copy(), self.ncols)[0])

    def kernel_basis(self) -> list:
        """Basis of {x : M x = 0}, one bitmask per vector, deterministic.

        Pivots are chosen first-nonzero in column order, free columns in
        increasing order.
        """
        pivots, reduced = _echelon(self.rows.copy(), self.ncols)
        pivot_cols = {col: row for col, row in pivots}
        basis = []
        for j in range(self.ncols):
            if j in pivot_cols:
                continue
            vec = 1 << j
            for col, row in pivots:
                if (reduced[row] >> j) & 1:
                    vec |= 1 << col
            basis.append(vec)
        return basis


def _echelon(rows: list, ncols: int):
    """Row reduce in place; returns ([(pivot_col, row_index)...], rows)."""
    pivots = []
    next_row = 0
    for col in range(ncols):
        pivot = None
        for i in range(next_row, len(rows)):
            if (rows[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            continue
        rows[next_row], rows[pivot] = rows[pivot], rows[next_row]
        for i in range(len(rows)):
            if i != next_row and (rows[i] >> col) & 1:
                rows[i] ^= rows[next_row]
        pivots.append((col, next_row))
        next_row += 1
    return pivots, rows


# ---------------------------------------------------------------------------
# boundary matrices


def _edge_rep_local(skel: Skeleton):
    """First local edge of each edge class, scanning in index order."""
    reps = [-1] * skel.e
    for local, c in enumerate(skel.edge_class):
        if reps[c] < 0:
            reps[c] = local
    return reps


def _triangle_rep_local(skel: Skeleton):
    reps = [-1] * skel.f
    for local, c in enumerate(skel.triangle_class):
        if reps[c] < 0:
            reps[c] = local
    return reps


def boundary_matrix_z2(skel: Skeleton, p: int) -> GF2Matrix:
    """The GF(2) boundary map from p-chains to (p-1)-chains."""
    if p == 1:
        m = GF2Matrix.zero(skel.v, skel.e)
        for c, local in enumerate(_edge_rep_local(skel)):
            t, k = divmod(local, 6)
            u, w = EDGE_VERTICES[k]
            m.flip(skel.vertex_class[4 * t + u], c)
            m.flip(skel.vertex_class[4 * t + w], c)
        return m
    if p == 2:
        m = GF2Matrix.zero(skel.e, skel.f)
        for c, local in enumerate(_triangle_rep_local(skel)):
            t, face = divmod(local, 4)
            for k in FACE_EDGES[face]:
                m.flip(skel.edge_class[6 * t + k], c)
        return m
    if p == 3:
        m = GF2Matrix.zero(skel.f, skel.n)
        for t in range(skel.n):
            for face in range(4):
                m.flip(skel.triangle_class[4 * t + face], t)
        return m
    raise ValueError(f"p must be 1, 2 or 3, got {p}")


def betti_z2(skel: Skeleton, p: int) -> int:
    """dim H_p(.; Z/2) = dim ker d_p - rank d_{p+1}."""
    dims = {0: skel.v, 1: skel.e, 2: skel.f, 3: skel.n}
    if p not in dims:
        raise ValueError(f"p must be 0..3, got {p}")
    ker = dims[p] - (boundary_matrix_z2(skel, p).rank() if p > 0 else 0)
    img = boundary_matrix_z2(skel, p + 1).rank() if p < 3 else 0
    return ker - img


# ---------------------------------------------------------------------------
# 1-cocycles and cohomology classes


@dataclass
class CocycleBasis:
    """Basis of the Z/2 1-cocycles, coboundaries listed first.

    A cocycle is a bitmask with bit j for edge class j.  The trailing
    ``beta1`` basis vectors represent the cohomology classes; expressing a
    cocycle over the basis and keeping the trailing coordinates gives its
    class.
    """

    n_edges: int
    coboundary_dim: int
    beta1: int
    vectors: tuple
    _solve_rows: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        # Row reduce the basis once, remembering the combination of
        # original basis vectors that produced each reduced row.
        rows = []   # (reduced bitmask, combination bitmask)
        for i, vec in enumerate(self.vectors):
            acc, combo = vec, 1 << i
            for rvec, rcombo, pivot in rows:
                if (acc >> pivot) & 1:
                    acc ^= rvec
                    combo ^= rcombo
            if acc == 0:
                raise ValueError("basis vectors are dependent")
            pivot = (acc & -acc).bit_length() - 1
            rows.append((acc, combo, pivot))
        self._solve_rows = rows

    def is_cocycle(self, mask: int) -> bool:
        acc = mask
        for rvec, _, pivot in self._solve_rows:
            if (acc >> pivot) & 1:
                acc ^= rvec
        return acc == 0

    def coordinates(self, mask: int):
        acc, combo = mask, 0
        for rvec, rcombo, pivot in self._solve_rows:
            if (acc >> pivot) & 1:
                acc ^= rvec
                combo ^= rcombo
        if acc:
            raise ValueError("not a cocycle")
        return tuple((combo >> i) & 1 for i in range(len(self.vectors)))

    def class_of(self, mask: int):
        coords = self.coordinates(mask)
        return tuple(coords[self.coboundary_dim:])

    def span(self):
        """All 2^dim cocycles, in binary counting order over the basis."""
        dim = len(self.vectors)
        for bits in range(1 << dim):
            acc = 0
            b = bits
            i = 0
            while b:
                if b & 1:
                    acc ^= self.vectors[i]
                b >>= 1
                i += 1
            yield acc


def cocycle_space_1(skel: Skeleton) -> CocycleBasis:
    """Basis of ker(delta^1 -> C^2), coboundaries first.

    For a connected closed skeleton the dimension is v - 1 + beta1.
    """
    if betti_z2(skel, 0) != 1:
        raise ValueError("skeleton is not connected")
    d1 = boundary_matrix_z2(skel, 1)
    d2 = boundary_matrix_z2(skel, 2)
    # delta^2 is the transpose of d2: rows = triangles, cols = edges.
    delta2 = GF2Matrix.zero(skel.f, skel.e)
    for c in range(skel.f):
        for j in range(skel.e):
            if d2.get(j, c):
                delta2.flip(c, j)
    kernel = delta2.kernel_basis()

    # Coboundaries of single vertex classes; any v-1 of them are a basis
    # of the coboundary subspace (the full sum is zero on a closed complex).
    cob = []
    for vert in range(skel.v - 1):
        mask = 0
        for j in range(skel.e):
            if d1.get(vert, j):
                mask |= 1 << j
        cob.append(mask)

    beta1 = betti_z2(skel, 1)
    vectors = list(cob)
    # Greedily extend by kernel vectors independent of the span so far.
    rows = []
    for vec in vectors:
        acc = vec
        for rvec, pivot in rows:
            if (acc >> pivot) & 1:
                acc ^= rvec
        if acc == 0:
            raise ValueError("coboundary vectors are dependent")
        rows.append((acc, (acc & -acc).bit_length() - 1))
    for vec in kernel:
        acc = vec
        for rvec, pivot in rows:
            if (acc >> pivot) & 1:
                acc ^= rvec
        if acc:
            rows.append((acc, (acc & -acc).bit_length() - 1))
            vectors.append(vec)
    if len(vectors) != skel.v - 1 + beta1:
        raise ValueError(
            f"cocycle space has dimension {len(vectors)}, "
            f"expected {skel.v - 1 + beta1}")
    return CocycleBasis(
        n_edges=skel.e,
        coboundary_dim=skel.v - 1,
        beta1=beta1,
        vectors=tuple(vectors),
    )


def reduce_colouring(doubled) -> int:
    """Fractional-part bitmask of a colouring: bit j set when the colour on
    edge class j is a half-integer (odd doubled value)."""
    mask = 0
    for j, a in enumerate(doubled):
        if a & 1:
            mask |= 1 << j
    return mask


def cohomology_class(basis: CocycleBasis, doubled):
    """Class coordinates (length beta1) of a colouring's reduction."""
    return basis.class_of(reduce_colouring(doubled))


# ---------------------------------------------------------------------------
# integral H1


def _boundary_int(skel: Skeleton, p: int):
    """Signed boundary matrices for p = 1, 2 (list-of-list ints)."""
    if p == 1:
        m = [[0] * skel.e for _ in range(skel.v)]
        for c, (tail, head) in enumerate(skel.edge_endpoints):
            m[head][c] += 1
            m[tail][c] -= 1
        return m
    if p == 2:
        m = [[0] * skel.f for _ in range(skel.e)]
        for c, local in enumerate(_triangle_rep_local(skel)):
            t, face = divmod(local, 4)
            verts = [u for u in range(4) if u != face]
            # boundary of the oriented 2-simplex (x, y, z)
            x, y, z = verts
            for simplex_sign, (a, b) in ((1, (y, z)), (-1, (x, z)),
                                         (1, (x, y))):
                k = EDGE_INDEX[(a, b)]
                local_edge = 6 * t + k
                sign = simplex_sign * skel.edge_sign[local_edge]
                m[skel.edge_class[local_edge]][c] += sign
        return m
    raise ValueError(f"p must be 1 or 2, got {p}")


def _int_rank(matrix) -> int:
    """Rank over Q by fraction-free elimination on a copy."""
    from fractions import Fraction
    rows = [[Fraction(x) for x in row] for row in matrix]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]),
                     None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def smith_normal_form(matrix):
    """Diagonal of the Smith normal form, in divisibility order.

    Naive pivoting with exact integers; suitable for the handful of rows
    and columns a small skeleton produces.
    """
    m = [row.copy() for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    diag = []
    top = 0
    while top < min(nrows, ncols):
        # locate the smallest nonzero entry in the remaining block
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                if m[i][j] and (best is None
                                or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        pivot = m[top][top]
        dirty = False
        for i in range(top + 1, nrows):
            if m[i][top] % pivot:
                dirty = True
            q = m[i][top] // pivot
            if q:
                m[i] = [a - q * b for a, b in zip(m[i], m[top])]
        for j in range(top + 1, ncols):
            if m[top][j] % pivot:
                dirty = True
            q = m[top][j] // pivot
            if q:
                for row in m:
                    row[j] -= q * row[top]
        if dirty or any(m[i][top] for i in range(top + 1, nrows)) \
                or any(m[top][j] for j in range(top + 1, ncols)):
            continue
        # pivot must divide the rest of the block; if not, absorb a row
        offender = None
        for i in range(top + 1, nrows):
            for j in range(top + 1, ncols):
                if m[i][j] % pivot:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            m[top] = [a + b for a, b in zip(m[top], m[offender])]
            continue
        diag.append(abs(pivot))
        top += 1
    return diag


@dataclass(frozen=True)
class H1Summary:
    """Integral first homology: free rank and torsion coefficients."""

    rank: int
    torsion: tuple

    def __str__(self) -> str:
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def h1_integral(skel: Skeleton) -> H1Summary:
    """H1 over the integers, from the Smith normal form of the 2-boundary.

    The torsion of H1 equals the torsion of coker(d2) because chains modulo
    cycles are free; the free rank comes from the usual rank count.
    """
    d1 = _boundary_int(skel, 1)
    d2 = _boundary_int(skel, 2)
    rank_d1 = _int_rank(d1)
    diag = smith_normal_form(d2)
    rank_d2 = len([d for d in diag if d])
    rank = skel.e - rank_d1 - rank_d2
    torsion = tuple(d for d in diag if d > 1)
    return H1Summary(rank=rank, torsion=torsion)
