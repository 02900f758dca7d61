"""Normalized solid angles of polytope faces.

All angles are fractions of the full sphere (or full circle in the plane),
so an interior point has angle 1, a facet point 1/2, and a vertex of the
positive octant cone 1/8.  Exact rational data goes in; a single float
comes out, computed through one atan2 per simplicial cone, which keeps the
values well inside 1e-12 of truth for the coordinate sizes used here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateCone,
    DegenerateTetrahedron,
    NotAnEdge,
    UnsupportedDimension,
)
from .geometry import (
    Face,
    LocationKind,
    Polytope,
    Rational,
    RationalVector,
    classify_point,
)

TWO_PI = 2.0 * math.pi


def _det3(a: RationalVector, b: RationalVector, c: RationalVector) -> Fraction:
    return a.dot(b.cross(c))


def _cone_angle(a: RationalVector, b: RationalVector, c: RationalVector) -> float:
    """Solid angle of the cone spanned by three independent vectors at the
    origin.  With la, lb, lc the generator lengths,

        tan(2 pi w) = |det(a,b,c)| / (la lb lc + (b.c) la + (c.a) lb + (a.b) lc)

    evaluated through atan2 so obtuse cones (negative denominator) land on
    the correct branch; the result lies in (0, 1/2)."""
    det = _det3(a, b, c)
    if det == 0:
        raise DegenerateCone("cone generators are linearly dependent")
    la = math.sqrt(a.norm_sq())
    lb = math.sqrt(b.norm_sq())
    lc = math.sqrt(c.norm_sq())
    denom = (
        la * lb * lc
        + float(b.dot(c)) * la
        + float(c.dot(a)) * lb
        + float(a.dot(b)) * lc
    )
    return math.atan2(abs(float(det)), denom) / TWO_PI


def simplicial_cone_solid_angle(
    apex: RationalVector,
    generators: Sequence[RationalVector | Sequence[Rational | str]],
) -> float:
    """Normalized solid angle at `apex` of the cone through three points.

    The generator points are translated to the apex before the arctangent
    formula is applied; passing direction vectors with apex 0 is the common
    special case."""
    if len(generators) != 3:
        raise DegenerateCone(f"need 3 generators, got {len(generators)}")
    gens = [
        (g if isinstance(g, RationalVector) else RationalVector(g)) - apex
        for g in generators
    ]
    if any(g.dim != 3 for g in gens) or apex.dim != 3:
        raise UnsupportedDimension("simplicial cones need ambient dimension 3")
    return _cone_angle(*gens)


def external_solid_angle(
    vertices: Sequence[RationalVector | Sequence[Rational | str]], i: int, j: int
) -> float:
    """External solid angle phi_ij of a tetrahedron: the angle of the cone at
    v_i generated by v_i - v_j together with the two edges from v_i to the
    remaining vertices.  Flipping the first generator negates two of the dot
    products in the arctangent denominator:

        tan(2 pi phi) = |det| / (la lb lc + (b.c) la - (c.a) lb - (a.b) lc)
    """
    if i == j:
        raise DegenerateCone("external angle needs distinct vertex indices")
    pts = [p if isinstance(p, RationalVector) else RationalVector(p) for p in vertices]
    if len(pts) != 4:
        raise DegenerateTetrahedron(f"need 4 vertices, got {len(pts)}")
    k, l = (m for m in range(4) if m not in (i, j))
    a = pts[j] - pts[i]
    b = pts[k] - pts[i]
    c = pts[l] - pts[i]
    det = _det3(a, b, c)
    if det == 0:
        raise DegenerateCone("tetrahedron vertices are affinely dependent")
    la = math.sqrt(a.norm_sq())
    lb = math.sqrt(b.norm_sq())
    lc = math.sqrt(c.norm_sq())
    denom = (
        la * lb * lc
        + float(b.dot(c)) * la
        - float(c.dot(a)) * lb
        - float(a.dot(b)) * lc
    )
    return math.atan2(abs(float(det)), denom) / TWO_PI


def _planar_angle(u: RationalVector, w: RationalVector) -> float:
    cross = u[0] * w[1] - u[1] * w[0]
    if cross == 0 and u.dot(w) <= 0:
        raise DegenerateCone("planar cone generators are anti-parallel")
    return math.atan2(abs(float(cross)), float(u.dot(w))) / TWO_PI


def _face_by_ref(P: Polytope, face: Face | int) -> tuple[int, Face]:
    if isinstance(face, Face):
        return P.faces.index(face), face
    return face, P.faces[face]


def dihedral_angle(P: Polytope, edge: Face | int) -> float:
    """Interior dihedral angle along an edge of a 3-polytope, as a fraction
    of the full circle.  Computed from the two facet normals n1, n2: the
    angle between the bounding half-planes is pi minus the angle between the
    outward normals, so w = 1/2 - atan2(|n1 x n2|, n1.n2) / 2 pi."""
    if P.dim != 3:
        raise UnsupportedDimension("dihedral angles need a 3-polytope")
    _, face = _face_by_ref(P, edge)
    if face.dim != 1:
        raise NotAnEdge(f"face has dimension {face.dim}, expected 1")
    touching = [
        i
        for i, vs in enumerate(P.facet_vertex_ids)
        if set(face.vertex_ids) <= vs
    ]
    if len(touching) != 2:
        raise AssertionError(f"edge lies on {len(touching)} facets")
    n1 = RationalVector(P.facet_normals[touching[0]])
    n2 = RationalVector(P.facet_normals[touching[1]])
    cross = n1.cross(n2)
    return 0.5 - math.atan2(math.sqrt(cross.norm_sq()), float(n1.dot(n2))) / TWO_PI


def _cyclic_edge_directions(P: Polytope, vid: int) -> list[RationalVector]:
    """Directions of the edges leaving vertex vid, in cyclic order around the
    vertex cone.  Two edges are neighbours when they share a facet."""
    edge_faces = [f for f in P.faces if f.dim == 1 and vid in f.vertex_ids]
    dirs = []
    for f in edge_faces:
        other = f.vertex_ids[1] if f.vertex_ids[0] == vid else f.vertex_ids[0]
        dirs.append(P.vertices[other] - P.vertices[vid])
    k = len(dirs)
    if k == 3:
        return dirs
    adj: dict[int, list[int]] = {i: [] for i in range(k)}
    for vs in P.facet_vertex_ids:
        if vid not in vs:
            continue
        members = [
            i for i, f in enumerate(edge_faces) if set(f.vertex_ids) <= vs
        ]
        if len(members) != 2:
            raise AssertionError(
                f"facet holds {len(members)} edges at vertex {vid}, expected 2"
            )
        a, b = members
        adj[a].append(b)
        adj[b].append(a)
    cycle = [0, adj[0][0]]
    while len(cycle) < k:
        prev, cur = cycle[-2], cycle[-1]
        cycle.append(adj[cur][0] if adj[cur][0] != prev else adj[cur][1])
    return [dirs[i] for i in cycle]


def _vertex_angle(P: Polytope, vid: int) -> float:
    if P.dim == 1:
        return 0.5
    if P.dim == 2:
        nbrs = []
        for vs in P.facet_vertex_ids:
            if vid in vs:
                (other,) = set(vs) - {vid}
                nbrs.append(other)
        if len(nbrs) != 2:
            raise AssertionError(f"vertex {vid} lies on {len(nbrs)} polygon edges")
        u = P.vertices[nbrs[0]] - P.vertices[vid]
        w = P.vertices[nbrs[1]] - P.vertices[vid]
        return _planar_angle(u, w)
    dirs = _cyclic_edge_directions(P, vid)
    # Fan the vertex cone over its first extreme ray; the pieces are
    # simplicial and interior-disjoint, so the angles add.
    total = 0.0
    for j in range(1, len(dirs) - 1):
        total += _cone_angle(dirs[0], dirs[j], dirs[j + 1])
    return total


def face_angle(P: Polytope, face_id: int) -> float:
    """Normalized solid angle of P at any point in the relative interior of
    the given face.  Cached per polytope; dilates share the cache."""
    hit = P._angle_cache.get(face_id)
    if hit is not None:
        return hit
    face = P.faces[face_id]
    if face.dim == P.dim:
        value = 1.0
    elif face.dim == P.dim - 1:
        value = 0.5
    elif face.dim == 1:
        value = dihedral_angle(P, face_id)
    elif face.dim == 0:
        value = _vertex_angle(P, face.vertex_ids[0])
    else:
        raise AssertionError(f"face of dimension {face.dim} in a {P.dim}-polytope")
    P._angle_cache[face_id] = value
    return value


def solid_angle(P: Polytope, x: RationalVector) -> float:
    """Normalized solid angle of P at an arbitrary rational point: 0 outside,
    1 in the interior, and the face weight on the boundary."""
    loc = classify_point(P, x)
    if loc.kind is LocationKind.OUTSIDE:
        return 0.0
    if loc.kind is LocationKind.INTERIOR:
        return 1.0
    return face_angle(P, loc.face_id)


@dataclass(frozen=True)
class TetrahedronAngles:
    """Angle data of a tetrahedron with vertices v0..v3.

    solid[i] is the solid angle at v_i; dihedral[(i, j)] (i < j) the
    normalized dihedral angle along edge ij; external[(i, j)] (ordered,
    i != j) the solid angle of the cone at v_i generated by v_i - v_j and
    the two other edge directions; sq_lengths[(i, j)] the squared edge
    length |v_i - v_j|^2.
    """

    vertices: tuple[RationalVector, ...]
    solid: tuple[float, float, float, float]
    dihedral: dict[tuple[int, int], float]
    external: dict[tuple[int, int], float]
    sq_lengths: dict[tuple[int, int], int | Fraction]
    volume: Fraction

    def gram_residuals(self) -> list[float]:
        """|w_i - (1/2) sum_j w_ij + 1/4| for each vertex."""
        out = []
        for i in range(4):
            s = sum(
                self.dihedral[tuple(sorted((i, j)))] for j in range(4) if j != i
            )
            out.append(abs(self.solid[i] - 0.5 * s + 0.25))
        return out

    def external_residuals(self) -> dict[tuple[int, int], float]:
        """|w_ij - (w_i + phi_ij)| over all ordered pairs."""
        out = {}
        for (i, j), phi in self.external.items():
            w = self.dihedral[tuple(sorted((i, j)))]
            out[(i, j)] = abs(w - (self.solid[i] + phi))
        return out


def tetrahedron_angles(
    points: Sequence[RationalVector | Sequence[Rational | str]]
) -> TetrahedronAngles:
    """All angle data of the tetrahedron on four affinely independent points.

    Works straight from the vertex vectors.  Dihedral angles come from the
    identity (u x p) x (u x q) = det(u, p, q) u for the two face planes
    through edge direction u, giving

        w_ij = atan2(|det| |u|, (u x p).(u x q)) / 2 pi.
    """
    if len(points) != 4:
        raise DegenerateTetrahedron(f"need 4 points, got {len(points)}")
    pts = [p if isinstance(p, RationalVector) else RationalVector(p) for p in points]
    if any(p.dim != 3 for p in pts):
        raise UnsupportedDimension("tetrahedron vertices must be 3-dimensional")
    det = _det3(pts[1] - pts[0], pts[2] - pts[0], pts[3] - pts[0])
    if det == 0:
        raise DegenerateTetrahedron("zero signed volume")

    solid = []
    external: dict[tuple[int, int], float] = {}
    for i in range(4):
        others = [j for j in range(4) if j != i]
        gens = [pts[j] - pts[i] for j in others]
        solid.append(_cone_angle(*gens))
        for j in others:
            external[(i, j)] = external_solid_angle(pts, i, j)

    dihedral: dict[tuple[int, int], float] = {}
    sq_lengths: dict[tuple[int, int], int | Fraction] = {}
    for i in range(4):
        for j in range(i + 1, 4):
            k, l = (m for m in range(4) if m not in (i, j))
            u = pts[j] - pts[i]
            m1 = u.cross(pts[k] - pts[i])
            m2 = u.cross(pts[l] - pts[i])
            dihedral[(i, j)] = (
                math.atan2(
                    abs(float(det)) * math.sqrt(u.norm_sq()), float(m1.dot(m2))
                )
                / TWO_PI
            )
            nsq = u.norm_sq()
            sq_lengths[(i, j)] = int(nsq) if nsq.denominator == 1 else nsq

    return TetrahedronAngles(
        vertices=tuple(pts),
        solid=tuple(solid),
        dihedral=dihedral,
        external=external,
        sq_lengths=sq_lengths,
        volume=abs(det) / 6,
    )
