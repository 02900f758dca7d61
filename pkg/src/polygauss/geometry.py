"""Exact geometry for rational convex polytopes in ambient dimension 1, 2, or 3.

Polytopes are stored in both representations at once: an exact vertex list
and a facet system of primitive integer normals with rational offsets.  All
membership and face-classification queries are done in exact rational
arithmetic; floating point only ever enters downstream (angles, phases).

The face lattice is explicit.  Every face carries the set of vertex indices
lying on it, which is what the point classifier and the angle-weight cache
key on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    MalformedInput,
    UnsupportedDimension,
)

Rational = int | Fraction

_MAX_FACETS_FOR_BITMASK = 62  # tight-set bitmasks live in a signed int64


class RationalVector:
    """Immutable point or direction with exact rational coordinates."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[Rational | str]) -> None:
        self.coords: tuple[Fraction, ...] = tuple(Fraction(c) for c in coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Fraction:
        return self.coords[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalVector) and self.coords == other.coords

    def __lt__(self, other: "RationalVector") -> bool:
        return self.coords < other.coords

    def __le__(self, other: "RationalVector") -> bool:
        return self.coords <= other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "rvec(" + ", ".join(str(c) for c in self.coords) + ")"

    def _check_dim(self, other: "RationalVector") -> None:
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch(
                f"vectors have dimensions {len(self.coords)} and {len(other.coords)}"
            )

    def __add__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "RationalVector") -> "RationalVector":
        self._check_dim(other)
        return RationalVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "RationalVector":
        return RationalVector(-a for a in self.coords)

    def __mul__(self, scalar: Rational) -> "RationalVector":
        return RationalVector(a * scalar for a in self.coords)

    __rmul__ = __mul__

    def dot(self, other: "RationalVector") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.coords, other.coords)), Fraction(0))

    def cross(self, other: "RationalVector") -> "RationalVector":
        if len(self.coords) != 3 or len(other.coords) != 3:
            raise UnsupportedDimension("cross product needs dimension 3")
        a, b = self.coords, other.coords
        return RationalVector(
            (
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            )
        )

    def norm_sq(self) -> Fraction:
        return sum((a * a for a in self.coords), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)


def rvec(*coords: Rational | str) -> RationalVector:
    """Shorthand constructor: rvec(1, '1/2', 0)."""
    return RationalVector(coords)


def independent_rows(rows: Sequence[Sequence[Fraction]]) -> list[int]:
    """Indices of a maximal linearly independent subset, by Gaussian elimination.

    Scans rows in order and keeps each row that is not in the span of the
    rows kept so far, so the result is the greedy (lexicographically first)
    basis.  Exact arithmetic throughout.
    """
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    picked: list[int] = []
    for idx, raw in enumerate(rows):
        r = [Fraction(x) for x in raw]
        for b, p in zip(basis, pivots):
            if r[p]:
                factor = r[p] / b[p]
                r = [x - factor * y for x, y in zip(r, b)]
        pivot = next((j for j, x in enumerate(r) if x), None)
        if pivot is None:
            continue
        basis.append(r)
        pivots.append(pivot)
        picked.append(idx)
    return picked


def affine_rank(points: Sequence[RationalVector]) -> int:
    """Dimension of the affine hull of a point set."""
    if not points:
        return -1
    base = points[0]
    diffs = [tuple((p - base).coords) for p in points[1:]]
    return len(independent_rows(diffs))


def _primitive(vec: Sequence[Fraction]) -> tuple[tuple[int, ...], Fraction]:
    """Scale a nonzero rational vector by a positive rational into primitive
    integers.  Returns (integer vector, scale factor applied)."""
    lcm = 1
    for c in vec:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in vec]
    g = math.gcd(*ints) if len(ints) > 1 else abs(ints[0])
    scale = Fraction(lcm, g)
    return tuple(n // g for n in ints), scale


class LocationKind(Enum):
    OUTSIDE = "outside"
    INTERIOR = "interior"
    FACE = "face"


@dataclass(frozen=True)
class FaceLocation:
    """Where a point sits relative to a polytope.

    kind FACE means the point lies in the relative interior of the proper
    face with index ``face_id``; INTERIOR and OUTSIDE carry no face.
    """

    kind: LocationKind
    face_id: int | None = None
    face_dim: int | None = None

    @property
    def inside(self) -> bool:
        return self.kind is not LocationKind.OUTSIDE


@dataclass(frozen=True)
class Face:
    """A face of the lattice: its dimension, the vertices on it, and a basis
    of its direction space (empty for vertices)."""

    dim: int
    vertex_ids: tuple[int, ...]
    span_basis: tuple[RationalVector, ...]


@dataclass(eq=False)
class Polytope:
    """Convex rational polytope, full-dimensional in its ambient space.

    Treat instances as immutable; the private fields are lazy caches that
    other modules fill in (angle weights, lattice scans, dilate memo) and
    are safe to share between a polytope and its dilates.
    """

    dim: int
    vertices: tuple[RationalVector, ...]
    facet_normals: tuple[tuple[int, ...], ...]
    facet_offsets: tuple[Fraction, ...]
    facet_vertex_ids: tuple[frozenset[int], ...]
    faces: tuple[Face, ...]
    _face_by_vertices: dict[frozenset[int], int] = field(repr=False, default_factory=dict)
    _full_face_id: int = field(repr=False, default=-1)
    _angle_cache: dict[int, float] = field(repr=False, default_factory=dict)
    _scan_cache: dict = field(repr=False, default_factory=dict)
    _dilate_cache: dict = field(repr=False, default_factory=dict)
    _volume: Fraction | None = field(repr=False, default=None)

    @property
    def n_facets(self) -> int:
        return len(self.facet_normals)

    def face_id_of_vertex_set(self, vertex_ids: frozenset[int]) -> int:
        return self._face_by_vertices[vertex_ids]

    def face_id_from_tight(self, tight: frozenset[int]) -> int:
        """Face whose relative interior a feasible point lies in, given the
        set of facet indices the point is tight on."""
        if not tight:
            return self._full_face_id
        common: frozenset[int] = self.facet_vertex_ids[min(tight)]
        for i in tight:
            common = common & self.facet_vertex_ids[i]
        face_id = self._face_by_vertices.get(common)
        if face_id is None:
            raise AssertionError(f"tight set {sorted(tight)} resolves to no face")
        return face_id

    def bbox(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.dim))
        return lo, hi

    def edges(self) -> list[Face]:
        return [f for f in self.faces if f.dim == 1]

    def __repr__(self) -> str:
        return (
            f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, "
            f"facets={self.n_facets})"
        )


def _facet_planes(
    dim: int, points: list[RationalVector]
) -> list[tuple[tuple[int, ...], Fraction]]:
    """All supporting hyperplanes spanned by d-subsets of the points, oriented
    so the polytope satisfies <normal, x> <= offset."""
    planes: dict[tuple[tuple[int, ...], Fraction], None] = {}
    for subset in itertools.combinations(points, dim):
        if dim == 1:
            normal_frac = (Fraction(1),)
        elif dim == 2:
            d = subset[1] - subset[0]
            if d.is_zero():
                continue
            normal_frac = (d[1], -d[0])
        else:
            n = (subset[1] - subset[0]).cross(subset[2] - subset[0])
            if n.is_zero():
                continue
            normal_frac = n.coords
        normal, scale = _primitive(normal_frac)
        offset = sum(
            (Fraction(a) * c for a, c in zip(normal, subset[0].coords)), Fraction(0)
        )
        nvec = RationalVector(normal)
        side_lo = side_hi = False
        for p in points:
            s = nvec.dot(p) - offset
            if s > 0:
                side_hi = True
            elif s < 0:
                side_lo = True
            if side_lo and side_hi:
                break
        if side_lo and side_hi:
            continue  # cuts through the point set, not supporting
        if side_hi:
            normal = tuple(-a for a in normal)
            offset = -offset
        planes[(normal, offset)] = None
    return list(planes)


def _build_face_lattice(
    dim: int,
    vertices: tuple[RationalVector, ...],
    facet_vertex_ids: tuple[frozenset[int], ...],
) -> tuple[tuple[Face, ...], dict[frozenset[int], int], int]:
    face_sets: dict[frozenset[int], int] = {}
    for i in range(len(vertices)):
        face_sets[frozenset([i])] = 0
    for vs in facet_vertex_ids:
        face_sets.setdefault(vs, dim - 1)
    if dim == 3:
        for vs1, vs2 in itertools.combinations(facet_vertex_ids, 2):
            shared = vs1 & vs2
            if len(shared) == 2:
                face_sets.setdefault(shared, 1)
    everything = frozenset(range(len(vertices)))
    face_sets[everything] = dim

    def sort_key(item: tuple[frozenset[int], int]):
        vs, fdim = item
        return (fdim, tuple(sorted(vs)))

    faces: list[Face] = []
    index: dict[frozenset[int], int] = {}
    for vs, fdim in sorted(face_sets.items(), key=sort_key):
        ids = tuple(sorted(vs))
        pts = [vertices[i] for i in ids]
        diffs = [pts[k] - pts[0] for k in range(1, len(pts))]
        picked = independent_rows([tuple(d.coords) for d in diffs])
        basis = tuple(diffs[k] for k in picked)
        if len(basis) != fdim:
            raise AssertionError(
                f"face on vertices {ids} has affine rank {len(basis)}, expected {fdim}"
            )
        index[vs] = len(faces)
        faces.append(Face(dim=fdim, vertex_ids=ids, span_basis=basis))
    return tuple(faces), index, index[everything]


def build_polytope(points: Sequence[RationalVector | Sequence[Rational | str]]) -> Polytope:
    """Convex hull of a rational point set, as an exact Polytope.

    Facets are found by brute force over d-element subsets, which is entirely
    adequate at these sizes and trivially correct.  Input points that are not
    vertices of the hull are dropped.
    """
    pts = [p if isinstance(p, RationalVector) else RationalVector(p) for p in points]
    if not pts:
        raise DegenerateInput("empty point set")
    dim = pts[0].dim
    if not 1 <= dim <= 3:
        raise UnsupportedDimension(f"ambient dimension {dim} not in 1..3")
    for p in pts:
        if p.dim != dim:
            raise DimensionMismatch("points of mixed dimensions")
    uniq = sorted(set(pts))
    if affine_rank(uniq) != dim:
        raise DegenerateInput(
            f"points span affine dimension {affine_rank(uniq)}, need {dim}"
        )

    planes = _facet_planes(dim, uniq)

    # A hull vertex is a point whose tight facet normals span the full space.
    vertices: list[RationalVector] = []
    for p in uniq:
        tight_normals = [
            normal
            for normal, offset in planes
            if RationalVector(normal).dot(p) == offset
        ]
        if len(independent_rows(tight_normals)) == dim:
            vertices.append(p)
    vertices.sort()
    vtuple = tuple(vertices)

    facet_vertex_ids = []
    normals = []
    offsets = []
    for normal, offset in sorted(planes):
        nvec = RationalVector(normal)
        on = frozenset(i for i, v in enumerate(vtuple) if nvec.dot(v) == offset)
        if len(on) < dim:
            raise AssertionError(f"facet {normal} carries only {len(on)} vertices")
        normals.append(normal)
        offsets.append(offset)
        facet_vertex_ids.append(on)

    faces, index, full_id = _build_face_lattice(dim, vtuple, tuple(facet_vertex_ids))
    return Polytope(
        dim=dim,
        vertices=vtuple,
        facet_normals=tuple(normals),
        facet_offsets=tuple(offsets),
        facet_vertex_ids=tuple(facet_vertex_ids),
        faces=faces,
        _face_by_vertices=index,
        _full_face_id=full_id,
    )


def dilate(P: Polytope, n: int) -> Polytope:
    """The dilate nP for a positive integer n.

    Combinatorics, face indexing and angle weights are identical to P's, so
    the angle cache is shared with the parent; repeated calls are memoized.
    """
    if n < 1:
        raise MalformedInput(f"dilation factor must be a positive integer, got {n}")
    if n == 1:
        return P
    cached = P._dilate_cache.get(n)
    if cached is not None:
        return cached
    vertices = tuple(RationalVector(tuple(c * n for c in v.coords)) for v in P.vertices)
    faces = tuple(
        Face(f.dim, f.vertex_ids, tuple(n * b for b in f.span_basis)) for f in P.faces
    )
    Q = Polytope(
        dim=P.dim,
        vertices=vertices,
        facet_normals=P.facet_normals,
        facet_offsets=tuple(b * n for b in P.facet_offsets),
        facet_vertex_ids=P.facet_vertex_ids,
        faces=faces,
        _face_by_vertices=P._face_by_vertices,
        _full_face_id=P._full_face_id,
        _angle_cache=P._angle_cache,  # angles are dilation-invariant
    )
    P._dilate_cache[n] = Q
    return Q


def classify_point(P: Polytope, x: RationalVector) -> FaceLocation:
    """Exact location of a rational point relative to P."""
    if x.dim != P.dim:
        raise DimensionMismatch(f"point has dimension {x.dim}, polytope {P.dim}")
    tight = []
    for i, (normal, offset) in enumerate(zip(P.facet_normals, P.facet_offsets)):
        s = sum((a * c for a, c in zip(normal, x.coords)), Fraction(0)) - offset
        if s > 0:
            return FaceLocation(LocationKind.OUTSIDE)
        if s == 0:
            tight.append(i)
    if not tight:
        return FaceLocation(LocationKind.INTERIOR)
    face_id = P.face_id_from_tight(frozenset(tight))
    return FaceLocation(LocationKind.FACE, face_id, P.faces[face_id].dim)


def _integer_facet_system(P: Polytope) -> tuple[np.ndarray, np.ndarray]:
    """Facet system cleared of denominators: rows A, bounds c with the body
    equal to {x : A x <= c} and tightness preserved row by row."""
    rows = []
    bounds = []
    for normal, offset in zip(P.facet_normals, P.facet_offsets):
        den = offset.denominator
        rows.append([a * den for a in normal])
        bounds.append(offset.numerator)
    return np.array(rows, dtype=np.int64), np.array(bounds, dtype=np.int64)


def scan_lattice(P: Polytope) -> tuple[np.ndarray, np.ndarray]:
    """All lattice points of P with their face classification, vectorized.

    Returns (points, face_ids): an (N, dim) int64 array in lexicographic
    order and a parallel int array; interior points get the id of the full
    face.  Cached on the polytope.
    """
    hit = P._scan_cache.get("scan")
    if hit is not None:
        return hit
    if P.n_facets > _MAX_FACETS_FOR_BITMASK:
        raise UnsupportedDimension(
            f"{P.n_facets} facets exceeds the bitmask scan limit"
        )
    lo_f, hi_f = P.bbox()
    lo = [math.ceil(c) for c in lo_f]
    hi = [math.floor(c) for c in hi_f]
    if any(h < l for l, h in zip(lo, hi)):
        empty = (np.zeros((0, P.dim), np.int64), np.zeros(0, np.int64))
        P._scan_cache["scan"] = empty
        return empty
    axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, P.dim)
    A, c = _integer_facet_system(P)
    slack = c[None, :] - grid @ A.T
    inside = (slack >= 0).all(axis=1)
    pts = grid[inside]
    tight = slack[inside] == 0
    weights_bits = np.int64(1) << np.arange(P.n_facets, dtype=np.int64)
    bits = tight @ weights_bits
    uniq, inv = np.unique(bits, return_inverse=True)
    resolved = np.empty(len(uniq), dtype=np.int64)
    for k, mask in enumerate(uniq):
        m = int(mask)
        tight_set = frozenset(i for i in range(P.n_facets) if (m >> i) & 1)
        resolved[k] = P.face_id_from_tight(tight_set)
    result = (pts, resolved[inv])
    P._scan_cache["scan"] = result
    return result


def lattice_points(P: Polytope) -> list[tuple[RationalVector, FaceLocation]]:
    """Lattice points of P in lexicographic order, each with its location."""
    pts, face_ids = scan_lattice(P)
    out = []
    for row, fid in zip(pts.tolist(), face_ids.tolist()):
        face = P.faces[fid]
        if face.dim == P.dim:
            loc = FaceLocation(LocationKind.INTERIOR)
        else:
            loc = FaceLocation(LocationKind.FACE, fid, face.dim)
        out.append((RationalVector(row), loc))
    return out


def _facet_cycles(P: Polytope) -> dict[int, list[int]]:
    """For a 3-polytope: vertex ids of every facet in boundary-cycle order."""
    edge_pairs = [set(f.vertex_ids) for f in P.faces if f.dim == 1]
    cycles: dict[int, list[int]] = {}
    for fi, vs in enumerate(P.facet_vertex_ids):
        adj: dict[int, list[int]] = {v: [] for v in vs}
        for pair in edge_pairs:
            if pair <= vs:
                a, b = sorted(pair)
                adj[a].append(b)
                adj[b].append(a)
        for v, nbrs in adj.items():
            if len(nbrs) != 2:
                raise AssertionError(
                    f"vertex {v} has {len(nbrs)} neighbours on facet {fi}"
                )
        start = min(vs)
        cycle = [start, adj[start][0]]
        while True:
            prev, cur = cycle[-2], cycle[-1]
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == start:
                break
            cycle.append(nxt)
        if len(cycle) != len(vs):
            raise AssertionError(f"facet {fi} cycle misses vertices")
        cycles[fi] = cycle
    return cycles


def volume(P: Polytope) -> Fraction:
    """Euclidean volume of P, exact.

    Dimension 3 triangulates each facet polygon along its boundary cycle and
    cones the triangles over an interior point; the resulting simplices are
    disjoint, so absolute determinants can be summed.
    """
    if P._volume is not None:
        return P._volume
    if P.dim == 1:
        vol = P.vertices[-1][0] - P.vertices[0][0]
    elif P.dim == 2:
        # The boundary of a polygon is a single cycle of its edges.
        adj: dict[int, list[int]] = {i: [] for i in range(len(P.vertices))}
        for vs in P.facet_vertex_ids:
            a, b = sorted(vs)
            adj[a].append(b)
            adj[b].append(a)
        cycle = [0, adj[0][0]]
        while True:
            prev, cur = cycle[-2], cycle[-1]
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            if nxt == 0:
                break
            cycle.append(nxt)
        base = P.vertices[cycle[0]]
        vol = Fraction(0)
        for a, b in zip(cycle[1:], cycle[2:]):
            u = P.vertices[a] - base
            w = P.vertices[b] - base
            vol += abs(u[0] * w[1] - u[1] * w[0])
        vol /= 2
    else:
        apex = RationalVector(
            tuple(
                sum((v[i] for v in P.vertices), Fraction(0)) / len(P.vertices)
                for i in range(3)
            )
        )
        vol = Fraction(0)
        for fi, cycle in _facet_cycles(P).items():
            base = P.vertices[cycle[0]]
            for a, b in zip(cycle[1:], cycle[2:]):
                u = P.vertices[a] - base
                w = P.vertices[b] - base
                z = base - apex
                det = u.cross(w).dot(z)
                vol += abs(det)
        vol /= 6
    P._volume = vol
    return vol


def translate(P: Polytope, shift: RationalVector) -> Polytope:
    """P + shift.  Shares the angle cache; face structure is unchanged."""
    if shift.dim != P.dim:
        raise DimensionMismatch("shift dimension differs from polytope dimension")
    vertices = tuple(v + shift for v in P.vertices)
    offsets = tuple(
        b + sum((Fraction(a) * s for a, s in zip(normal, shift.coords)), Fraction(0))
        for normal, b in zip(P.facet_normals, P.facet_offsets)
    )
    return Polytope(
        dim=P.dim,
        vertices=vertices,
        facet_normals=P.facet_normals,
        facet_offsets=offsets,
        facet_vertex_ids=P.facet_vertex_ids,
        faces=tuple(Face(f.dim, f.vertex_ids, f.span_basis) for f in P.faces),
        _face_by_vertices=P._face_by_vertices,
        _full_face_id=P._full_face_id,
        _angle_cache=P._angle_cache,
    )


def polytope_to_dict(P: Polytope) -> dict:
    """JSON-ready description: dimension plus vertices as 'p/q' strings."""
    return {
        "dim": P.dim,
        "vertices": [[str(c) for c in v.coords] for v in P.vertices],
    }


def polytope_from_dict(data: object) -> Polytope:
    """Parse the JSON form; error messages name the offending field."""
    if not isinstance(data, dict):
        raise MalformedInput("top level: expected an object")
    if "dim" not in data:
        raise MalformedInput("dim: missing")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise MalformedInput("dim: expected an integer")
    if not 1 <= dim <= 3:
        raise MalformedInput(f"dim: {dim} outside supported range 1..3")
    raw = data.get("vertices")
    if not isinstance(raw, list) or not raw:
        raise MalformedInput("vertices: expected a non-empty list")
    parsed = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != dim:
            raise MalformedInput(f"vertices[{i}]: expected a list of {dim} coordinates")
        coords = []
        for j, c in enumerate(row):
            if not isinstance(c, (str, int)):
                raise MalformedInput(
                    f"vertices[{i}][{j}]: expected an integer or 'p/q' string"
                )
            try:
                coords.append(Fraction(c))
            except (ValueError, ZeroDivisionError) as exc:
                raise MalformedInput(f"vertices[{i}][{j}]: {exc}") from exc
        parsed.append(RationalVector(coords))
    try:
        return build_polytope(parsed)
    except (DegenerateInput, UnsupportedDimension, DimensionMismatch) as exc:
        raise MalformedInput(f"vertices: {exc}") from exc
