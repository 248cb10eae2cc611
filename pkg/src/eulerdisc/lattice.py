"""Integer point configurations and exact lattice polytope geometry.

Everything here is exact: volumes are normalized lattice volumes (a basis
simplex of the reference lattice has volume 1), faces are found by brute
force over supporting hyperplanes, and coordinates are reduced with
integer row operations only.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence, Tuple

from .errors import HypothesisError, InputError, SizeLimitError
from .graphs import BipartiteSubgraph, PatternGraph, condition_star, contract, induced, is_connected
from .kernels import batch_normals, det_int

__all__ = [
    "PointConfiguration",
    "edge_config",
    "contracted_config",
    "lattice_normalize",
    "normalized_volume",
    "f_vector",
    "facets",
    "subdiagram_volume",
]


class PointConfiguration:
    """Ordered list of integer points of a common ambient dimension."""

    __slots__ = ("points", "labels")

    def __init__(self, points, labels: Optional[Sequence[str]] = None):
        points = tuple(tuple(int(x) for x in p) for p in points)
        if points:
            d = len(points[0])
            if any(len(p) != d for p in points):
                raise InputError("points have mixed dimensions")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != len(points) or len(set(labels)) != len(labels):
                raise InputError("labels must be unique and aligned with points")
        self.points = points
        self.labels = labels

    def __len__(self):
        return len(self.points)

    @property
    def ambient_dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def dump(self) -> str:
        """Matrix view with points as columns, optionally headed by labels."""
        if not self.points:
            return "(empty configuration)"
        cols = [[str(x) for x in p] for p in self.points]
        if self.labels:
            for c, lab in zip(cols, self.labels):
                c.insert(0, lab)
        widths = [max(len(s) for s in c) for c in cols]
        nrows = len(cols[0])
        lines = []
        for r in range(nrows):
            lines.append("  ".join(c[r].rjust(w) for c, w in zip(cols, widths)))
        return "\n".join(lines)

    def __repr__(self):
        return f"PointConfiguration({len(self.points)} points in dim {self.ambient_dim})"


def edge_config(g: PatternGraph) -> PointConfiguration:
    """One 0/1 column e_i + e_j per edge, in the graph's edge order."""
    n = g.left_size + g.right_size
    pts = []
    labels = []
    for i, j in g.edge_order():
        v = [0] * n
        v[i] = 1
        v[j] = 1
        pts.append(v)
        labels.append(f"{i}{j}")
    return PointConfiguration(pts, labels)


def contracted_config(g: PatternGraph, h: BipartiteSubgraph) -> PointConfiguration:
    """Edge configuration after contracting h: rows of V(h) and columns of
    E(h) are removed; a surviving edge keeps unit entries at its surviving
    endpoints only."""
    survivors, out = contract(g, h)
    index = {v: i for i, v in enumerate(survivors)}
    pts = []
    labels = []
    for (i, j), kept in out:
        v = [0] * len(survivors)
        for w in kept:
            v[index[w]] = 1
        pts.append(v)
        labels.append(f"{i}{j}")
    return PointConfiguration(pts, labels)


# ---------------------------------------------------------------------------
# Integer row reduction (Hermite style)


def _row_reduce(rows):
    """Integer row echelon basis of the lattice spanned by the rows.

    Returns (basis, pivots) with basis[i] having its first nonzero entry in
    column pivots[i], positive, and pivots strictly increasing.
    """
    rows = [list(r) for r in rows if any(r)]
    basis = []
    pivots = []
    for row in rows:
        row = list(row)
        while True:
            lead = next((j for j, x in enumerate(row) if x), None)
            if lead is None:
                break
            k = next((i for i, p in enumerate(pivots) if p == lead), None)
            if k is None:
                if row[lead] < 0:
                    row = [-x for x in row]
                pos = next((i for i, p in enumerate(pivots) if p > lead), len(pivots))
                basis.insert(pos, row)
                pivots.insert(pos, lead)
                break
            b = basis[k]
            # gcd step in the shared pivot column
            while row[lead]:
                q = b[lead] // row[lead]
                b2 = [x - q * y for x, y in zip(b, row)]
                basis[k], row = row, b2
                b = basis[k]
                lead_new = next((j for j, x in enumerate(row) if x), None)
                if lead_new != lead:
                    break
            lead2 = next((j for j, x in enumerate(row) if x), None)
            if lead2 == lead:
                continue
            if lead2 is None:
                break
    return basis, pivots


def _solve_lattice(basis, pivots, vec):
    """Coordinates of vec in the row basis; None when vec is outside."""
    rem = list(vec)
    coords = []
    for b, p in zip(basis, pivots):
        if rem[p] % b[p]:
            return None
        c = rem[p] // b[p]
        coords.append(c)
        if c:
            rem = [x - c * y for x, y in zip(rem, b)]
    if any(rem):
        return None
    return coords


def lattice_normalize(c: PointConfiguration):
    """Reduce to full-dimensional coordinates in the difference lattice.

    Translates by the first point, takes the lattice generated by the
    difference vectors, and rewrites every point in a basis of that
    lattice.  Returns (d, points in Z^d).
    """
    if not c.points:
        raise InputError("cannot normalize an empty configuration")
    p0 = c.points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in c.points]
    basis, pivots = _row_reduce(diffs)
    d = len(basis)
    out = []
    for v in diffs:
        coords = _solve_lattice(basis, pivots, v)
        assert coords is not None
        out.append(tuple(coords))
    return d, out


# ---------------------------------------------------------------------------
# Volume


def _kernel_basis(normal):
    """Basis of the saturated lattice Z^d orthogonal to a primitive vector.

    Column operations reduce the normal to a single nonzero entry; the
    remaining columns of the accumulated unimodular matrix span the kernel.
    """
    d = len(normal)
    n = list(normal)
    U = [[1 if i == j else 0 for j in range(d)] for i in range(d)]  # columns
    # Reduce n against itself with gcd column operations.
    nz = [j for j in range(d) if n[j]]
    while len(nz) > 1:
        nz.sort(key=lambda j: abs(n[j]))
        j0 = nz[0]
        for j in nz[1:]:
            q = n[j] // n[j0]
            n[j] -= q * n[j0]
            for i in range(d):
                U[i][j] -= q * U[i][j0]
        nz = [j for j in range(d) if n[j]]
    pivot = nz[0]
    return [tuple(U[i][j] for i in range(d)) for j in range(d) if j != pivot]


def _project_to_kernel(normal, vectors):
    """Coordinates of lattice vectors orthogonal to `normal` in the
    saturated kernel lattice."""
    kb = _kernel_basis(normal)
    basis, pivots = _row_reduce(kb)
    out = []
    for v in vectors:
        coords = _solve_lattice(basis, pivots, v)
        assert coords is not None
        out.append(tuple(coords))
    return out


def _hull_facets(pts, d):
    """Supporting hyperplanes of a full-dimensional hull.

    Returns a list of (normal, offset, member index tuple) with the normal
    primitive and oriented so that normal . p <= offset for all points.
    """
    unique = sorted(set(pts))
    if len(unique) < d + 1:
        raise InputError("configuration is not full-dimensional")
    cand_sets = list(combinations(unique, d))
    normals = batch_normals(cand_sets)
    seen = {}
    for ps, nrm in zip(cand_sets, normals):
        if not any(nrm):
            continue
        offset = sum(a * b for a, b in zip(nrm, ps[0]))
        key = (nrm, offset)
        keyn = (tuple(-x for x in nrm), -offset)
        if key in seen or keyn in seen:
            continue
        lo = hi = False
        for p in unique:
            s = sum(a * b for a, b in zip(nrm, p))
            if s < offset:
                lo = True
            elif s > offset:
                hi = True
            if lo and hi:
                break
        if lo and hi:
            seen[key] = None
            continue
        if hi:
            nrm = tuple(-x for x in nrm)
            offset = -offset
        members = tuple(
            i
            for i, p in enumerate(pts)
            if sum(a * b for a, b in zip(nrm, p)) == offset
        )
        seen[(nrm, offset)] = members
    return [(n, c, m) for (n, c), m in seen.items() if m is not None]


_VOL_CACHE = {}


def _nvol_fulldim(pts: tuple, d: int) -> int:
    """Normalized volume of a full-dimensional hull of lattice points in Z^d."""
    if d == 0:
        return 1
    if d == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    key = (d, frozenset(pts))
    cached = _VOL_CACHE.get(key)
    if cached is not None:
        return cached
    base = min(pts)
    total = 0
    for normal, offset, members in _hull_facets(pts, d):
        height = offset - sum(a * b for a, b in zip(normal, base))
        if height == 0:
            continue
        fpts = [pts[i] for i in members]
        origin = fpts[0]
        rel = [tuple(a - b for a, b in zip(p, origin)) for p in fpts]
        sub = _project_to_kernel(normal, rel)
        total += height * _nvol_fulldim(tuple(sub), d - 1)
    _VOL_CACHE[key] = total
    return total


def normalized_volume(c: PointConfiguration) -> int:
    """Lattice volume of the hull, measured in its own difference lattice."""
    d, pts = lattice_normalize(c)
    return _nvol_fulldim(tuple(pts), d)


# ---------------------------------------------------------------------------
# Faces


def _rank_of(points) -> int:
    if not points:
        return 0
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    basis, _ = _row_reduce(diffs)
    return len(basis)


def facets(c: PointConfiguration, max_points=None):
    """Facet supports as tuples of point indices, in a deterministic order."""
    d, pts = lattice_normalize(c)
    _check_desk_scale(d, len(set(pts)), max_points)
    return sorted(members for _, _, members in _hull_facets(tuple(pts), d))


def _check_desk_scale(d, npts, max_points=None):
    limit = 20 if max_points is None else max_points
    if d > 8 or npts > limit:
        raise SizeLimitError(
            f"face enumeration limited to dimension 8 and {limit} points"
            f" (got d={d}, {npts})"
        )


def f_vector(c: PointConfiguration, max_points=None) -> Tuple[int, ...]:
    """Counts of proper faces by dimension 0..d-1.

    Proper faces are intersections of facets; each face is identified by
    the set of configuration points it contains.
    """
    d, pts = lattice_normalize(c)
    _check_desk_scale(d, len(set(pts)), max_points)
    pts = tuple(pts)
    facet_sets = [frozenset(m) for _, _, m in _hull_facets(pts, d)]
    faces = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for f in frontier:
            for g in facet_sets:
                h = f & g
                if h and h not in faces:
                    new.add(h)
        faces |= new
        frontier = new
    counts = [0] * d
    for f in faces:
        dim = _rank_of([pts[i] for i in sorted(f)])
        counts[dim] += 1
    return tuple(counts)


# ---------------------------------------------------------------------------
# Subdiagram volumes


def subdiagram_volume(g: PatternGraph, h: BipartiteSubgraph) -> int:
    """Exponent attached to a contracted configuration.

    Computed as vol(Conv({0} u A')) - vol(Conv(A')) where A' is the
    configuration after contracting h, with both volumes measured in the
    lattice generated by A'; a lower-dimensional Conv(A') contributes 0.
    """
    if not is_connected(h):
        raise HypothesisError("subgraph must be connected")
    if len(h.left) != len(h.right):
        raise HypothesisError("subgraph must use equally many rows and columns")
    if induced(g, h.left, h.right).edges != h.edges:
        raise HypothesisError("subgraph must be induced")
    if not condition_star(h):
        from .graphs import star_violation

        w = star_violation(h)
        detail = f"violating W = {sorted(w)}" if w else "single row with no edge"
        raise HypothesisError(
            f"precondition violated: subgraph fails the expansion condition ({detail})"
        )
    conf = contracted_config(g, h)
    with_origin = PointConfiguration(((0,) * conf.ambient_dim,) + conf.points)
    d, pts0 = lattice_normalize(with_origin)
    vol0 = _nvol_fulldim(tuple(pts0), d)
    rest = pts0[1:]
    if not rest or _rank_of(rest) < d:
        vol1 = 0
    else:
        vol1 = _nvol_fulldim(tuple(rest), d)
    return vol0 - vol1
