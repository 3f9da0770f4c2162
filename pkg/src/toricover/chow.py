"""Divisor classes and intersection theory of the toric variety of a simple
polytope.

A divisor is a rational coefficient per facet.  Linear equivalence is the flux
relation: D ~ 0 iff coeff_F = <u_F, v> for a single constant vector v.  Top
intersection numbers are computed through exact mixed volumes: divisors are
shifted by a multiple of the ample class until their offset polytopes share
the combinatorial type of P (the nef certificate), and the polarization
identity turns inclusion-exclusion of volumes into the intersection product.
Simple non-Delzant polytopes come out with rational (orbifold) intersection
numbers automatically; no extra bookkeeping is done for them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .polytope import (
    NotSimpleError,
    SimplePolytope,
    solve_region_vertices,
)


class NefLiftFailedError(Exception):
    """No shift multiple up to the cap made every divisor fan-compatible."""


NEF_LIFT_CAP = 2 ** 16


@dataclass(frozen=True)
class Divisor:
    """Facet-indexed rational coefficients; position i belongs to facet id i."""

    coeffs: tuple

    @classmethod
    def from_map(cls, p: SimplePolytope, mapping) -> "Divisor":
        coeffs = [Fraction(0)] * p.num_facets
        for fid, value in mapping.items():
            fid = int(fid)
            if not 0 <= fid < p.num_facets:
                raise ValueError(f"facet id {fid} not in 0..{p.num_facets - 1}")
            coeffs[fid] = Fraction(value)
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls, p: SimplePolytope) -> "Divisor":
        return cls(tuple(Fraction(0) for _ in range(p.num_facets)))

    @classmethod
    def on_facet(cls, p: SimplePolytope, facet_id: int, value=1) -> "Divisor":
        return cls.from_map(p, {facet_id: Fraction(value)})

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Divisor") -> "Divisor":
        return Divisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, scalar) -> "Divisor":
        c = Fraction(scalar)
        return Divisor(tuple(c * a for a in self.coeffs))

    def to_map(self):
        return {i: c for i, c in enumerate(self.coeffs)}


@dataclass(frozen=True)
class RingPresentation:
    """Generators c_F, the n linear relations sum_F u_F[i] c_F = 0, and the
    minimal non-faces (facet sets with empty intersection)."""

    generators: tuple
    linear_relations: tuple
    minimal_nonfaces: tuple


@dataclass(frozen=True)
class IntersectionQuery:
    polytope: SimplePolytope
    divisors: tuple

    def __post_init__(self):
        if len(self.divisors) != self.polytope.dim:
            raise ValueError(
                f"need exactly {self.polytope.dim} divisors, got {len(self.divisors)}"
            )


@dataclass(frozen=True)
class Region:
    """The offsets-polytope {x : <u_F, x> + coeff_F >= 0} of a divisor.

    Always bounded here because the normals are those of an existing polytope.
    May be empty or lower dimensional; both report volume 0.
    """

    dim: int
    normals: tuple
    offsets: tuple
    vertices: tuple

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def affine_rank(self) -> int:
        if not self.vertices:
            return -1
        base = self.vertices[0].coords
        rows = [linalg.vec_sub(v.coords, base) for v in self.vertices[1:]]
        return linalg.rank(rows) if rows else 0

    @property
    def is_full_dim(self) -> bool:
        return self.affine_rank() == self.dim

    @property
    def is_simple(self) -> bool:
        return all(len(v.facets) == self.dim for v in self.vertices)

    def incidence_pattern(self):
        return frozenset(v.facets for v in self.vertices)


def presentation(p: SimplePolytope) -> RingPresentation:
    """Linear relations from the normals plus the minimal non-faces.

    A facet set is a face iff it sits inside some vertex's incidence set, so
    non-faces never need more than n+1 elements: every larger set contains an
    (n+1)-subset that is already a non-face.
    """
    relations = tuple(
        tuple(u[i] for u in p.normals) for i in range(p.dim)
    )
    incidences = [v.facets for v in p.vertices]

    def is_face(s) -> bool:
        return any(s <= inc for inc in incidences)

    nonfaces = []
    ids = list(p.facet_ids())
    for size in range(2, p.dim + 2):
        for combo in itertools.combinations(ids, size):
            s = frozenset(combo)
            if is_face(s):
                continue
            if all(is_face(s - {f}) for f in s):
                nonfaces.append(s)
    return RingPresentation(
        generators=tuple(ids),
        linear_relations=relations,
        minimal_nonfaces=tuple(sorted(nonfaces, key=sorted)),
    )


def principal_divisor(p: SimplePolytope, v) -> Divisor:
    """The divisor of fluxes <u_F, v> of the constant vector field v."""
    return Divisor(tuple(linalg.dot(u, v) for u in p.normals))


def is_principal(p: SimplePolytope, d: Divisor):
    """A vector v with <u_F, v> = coeff_F for every facet, or None."""
    return linalg.solve(list(p.normals), list(d.coeffs))


def linearly_equivalent(p: SimplePolytope, d1: Divisor, d2: Divisor) -> bool:
    return is_principal(p, d1 - d2) is not None


def ample_from_offsets(p: SimplePolytope) -> Divisor:
    """The ample divisor whose coefficients are the facet offsets of P after
    recentering at the vertex centroid (a strictly interior point, so all
    coefficients come out positive)."""
    centered = p.translate(p.vertex_centroid())
    return Divisor(centered.offsets)


def polytope_of_divisor(p: SimplePolytope, d: Divisor) -> Region:
    vertices = solve_region_vertices(p.normals, d.coeffs, require_simple=False)
    vertices.sort(key=lambda v: v.coords)
    return Region(p.dim, p.normals, tuple(d.coeffs), tuple(vertices))


def _face_simplices(dim: int, vertices):
    """Triangulate a simple polytope given by vertices with facet incidences.

    Every face is coned from its lexicographically smallest vertex over the
    triangulations of the subfaces avoiding that vertex.  Returns tuples of
    n+1 coordinate tuples.
    """
    memo = {}

    def face_verts(s):
        return [v for v in vertices if s <= v.facets]

    def tri(s, d):
        if s in memo:
            return memo[s]
        vs = face_verts(s)
        if d == 0:
            memo[s] = [(vs[0].coords,)]
            return memo[s]
        base = min(vs, key=lambda v: v.coords)
        subfaces = set()
        for v in vs:
            for f in v.facets - s:
                subfaces.add(s | {f})
        simplices = []
        for s2 in subfaces:
            if s2 <= base.facets:
                continue
            for simplex in tri(s2, d - 1):
                simplices.append(simplex + (base.coords,))
        memo[s] = simplices
        return simplices

    return tri(frozenset(), dim)


def volume(obj) -> Fraction:
    """Exact Euclidean volume by vertex-simplex triangulation.

    Accepts a SimplePolytope or a Region.  Empty and lower-dimensional regions
    have volume 0.  A full-dimensional region whose vertex lies on more than n
    facets is rejected: the intersection routines only ever take volumes of
    fan-certified (hence simple) regions, and silently triangulating a
    non-simple region would need face-lattice machinery this library does not
    carry.
    """
    if isinstance(obj, SimplePolytope):
        dim, vertices = obj.dim, obj.vertices
    else:
        if obj.is_empty or not obj.is_full_dim:
            return Fraction(0)
        if not obj.is_simple:
            raise NotSimpleError("volume of a non-simple region is unsupported")
        dim, vertices = obj.dim, obj.vertices
    total = Fraction(0)
    for simplex in _face_simplices(dim, vertices):
        base = simplex[-1]
        rows = [linalg.vec_sub(pt, base) for pt in simplex[:-1]]
        total += abs(linalg.det(rows))
    return total / Fraction(_factorial(dim))


def _factorial(n: int) -> int:
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


def is_nef_certified(p: SimplePolytope, d: Divisor) -> bool:
    """Nef test: the offsets-polytope of d has exactly P's incidence pattern."""
    region = polytope_of_divisor(p, d)
    return region.incidence_pattern() == p.incidence_pattern()


def intersection_number(query: IntersectionQuery) -> Fraction:
    """Top intersection product D_1 ... D_n via mixed-volume polarization.

    Steps: shift every D_j by M times the ample divisor H (doubling M from 1
    up to NEF_LIFT_CAP) until each shifted divisor is fan-compatible with P;
    the polarized product of nef divisors E_1..E_n is
        sum over nonempty S of (-1)^(n-|S|) vol(region(sum_{j in S} E_j)),
    which equals n! vol for n equal arguments; finally expand the shift
    multilinearly to recover the product of the original divisors.
    """
    p = query.polytope
    n = p.dim
    divisors = query.divisors
    h = ample_from_offsets(p)

    m = 1
    while m <= NEF_LIFT_CAP:
        if all(is_nef_certified(p, d + m * h) for d in divisors):
            break
        m *= 2
    else:
        raise NefLiftFailedError(
            f"no shift multiple up to {NEF_LIFT_CAP} makes all divisors nef"
        )
    shifted = [d + m * h for d in divisors]

    vol_memo = {}

    def region_volume(div: Divisor) -> Fraction:
        key = div.coeffs
        if key not in vol_memo:
            vol_memo[key] = volume(polytope_of_divisor(p, div))
        return vol_memo[key]

    def polarized(args) -> Fraction:
        total = Fraction(0)
        for size in range(1, n + 1):
            sign = (-1) ** (n - size)
            for subset in itertools.combinations(range(n), size):
                acc = args[subset[0]]
                for j in subset[1:]:
                    acc = acc + args[j]
                total += sign * region_volume(acc)
        return total

    result = Fraction(0)
    for picks in itertools.product(range(2), repeat=n):
        args = [shifted[j] if picks[j] else h for j in range(n)]
        weight = Fraction(-m) ** (n - sum(picks))
        result += weight * polarized(args)
    return result


def self_intersection_top(p: SimplePolytope, d: Divisor) -> Fraction:
    """The n-fold product D^n; equals n! vol(region(D)) for nef D."""
    return intersection_number(IntersectionQuery(p, tuple([d] * p.dim)))


def avoidance_certificate(p: SimplePolytope, h: Divisor, touched):
    """A divisor H' ~ H with zero coefficient on every touched facet, or None.

    H' = H + div(v) where v solves <u_F, v> = -coeff_F(H) for F touched; when
    the system is underdetermined the free components of v are set to zero.
    """
    touched = sorted(touched)
    if not touched:
        return h
    rows = [p.normals[f] for f in touched]
    rhs = [-h.coeffs[f] for f in touched]
    v = linalg.solve(rows, rhs)
    if v is None:
        return None
    return h + principal_divisor(p, v)


def inessential_touch_set(p: SimplePolytope, h: Divisor, touched) -> bool:
    """Sufficient certificate that a set touching exactly `touched` pulls back
    to a subset on which the ample class vanishes."""
    return avoidance_certificate(p, h, touched) is not None
