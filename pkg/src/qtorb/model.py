"""
The characteristic pair (P, Λ).

A model attaches a primitive integer vector λ_i to every facet F_i of a simple polytope,
optionally with rational inward normals. Local groups G_F are never built as abstract
groups: they are represented by their box elements Σ a_j λ_j (a_j in [0, 1)) and by the
elementary divisors of the facet matrix Λ_F.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .exceptions import (
    InvariantViolation,
    ModelError,
    ModelMismatchError,
    SectorError,
    UnsupportedOperation,
)
from .linalg import (
    IntMatrix,
    IntVector,
    RationalVector,
    determinant,
    frac_part,
    is_primitive,
    rational_vector,
    smith_normal_form,
)
from .polytope import CombinatorialPolytope, Face
from .polytope import validate as validate_polytope

log = logging.getLogger("qtorb.model")

VertexLike = Union[Face, FrozenSet[int], Iterable[int]]


@dataclass(frozen=True)
class CharacteristicModel:
    """
    An omnioriented quasitoric orbifold given combinatorially.

    :param polytope: the simple polytope P
    :param charvecs: λ_i for every facet, in facet order
    :param normals: optional inward normals for every facet, in facet order
    """

    polytope: CombinatorialPolytope
    charvecs: Tuple[IntVector, ...]
    normals: Optional[Tuple[RationalVector, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "charvecs", tuple(tuple(int(x) for x in v) for v in self.charvecs))
        if self.normals is not None:
            object.__setattr__(self, "normals", tuple(rational_vector(v) for v in self.normals))

    @property
    def n(self) -> int:
        return self.polytope.dim

    @property
    def m(self) -> int:
        return self.polytope.m

    @property
    def facets(self) -> Tuple[str, ...]:
        return self.polytope.facets

    @property
    def faces(self) -> Tuple[Face, ...]:
        return self.polytope.faces

    @property
    def top(self) -> Face:
        "The face P itself"
        return Face(frozenset(), self.n)

    def charvec(self, facet: Union[int, str]) -> IntVector:
        if isinstance(facet, str):
            facet = self.polytope.facet_index(facet)
        return self.charvecs[facet]

    def facet_matrix(self, face: Union[Face, Iterable[int]]) -> IntMatrix:
        "n x k matrix Λ_F with columns λ_i, i in I(F) increasing"
        indices = face.indices if isinstance(face, Face) else sorted(face)
        return IntMatrix.from_columns([self.charvecs[i] for i in indices], self.n)

    def face(self, facets: Iterable[int]) -> Face:
        return self.polytope.face(facets)

    def face_by_names(self, names: Iterable[str]) -> Face:
        return self.polytope.face_by_names(names)

    def describe(self, face: Face) -> str:
        return self.polytope.describe(face)

    @cached_property
    def _cache(self) -> Dict:
        return {}


@dataclass(frozen=True, order=True)
class BoxElement:
    """
    An element Σ a_j λ_j of Box_F, a_j in [0, 1) rational.

    :param face: the face F
    :param coeffs: a_j for j in I(F), increasing facet index
    :param lattice_point: Σ a_j λ_j, an integer vector
    """

    face: Face
    lattice_point: IntVector
    coeffs: RationalVector = field(compare=False)

    @property
    def age(self) -> Fraction:
        "Degree shifting number ι(g) = Σ a_j"
        return sum(self.coeffs, Fraction(0))

    @property
    def interior(self) -> bool:
        "True iff every a_j is in (0, 1); the zero element of Box_P counts as interior"
        return all(c > 0 for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def coefficient(self, facet: int) -> Fraction:
        "a_facet, zero for facets not containing F"
        indices = self.face.indices
        if facet in self.face.facets:
            return self.coeffs[indices.index(facet)]
        return Fraction(0)

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(zip(self.face.indices, self.coeffs))


@dataclass(frozen=True, order=True)
class TwistedSector:
    """
    A sector (F, g) with g in Box_F°; (P, 0) is the untwisted sector.
    """

    face: Face
    element: BoxElement

    @property
    def age(self) -> Fraction:
        return self.element.age

    @property
    def degree_shift(self) -> Fraction:
        return 2 * self.element.age

    @property
    def twisted(self) -> bool:
        return not self.element.is_zero


def validate_model(M: CharacteristicModel) -> List[str]:
    """
    Check the model invariants.

    :return: diagnostics, empty iff the polytope is valid, every λ_i is primitive, Λ_v is
        nonsingular at every vertex, and (if present) normals are independent at every vertex
    """
    P = M.polytope
    diagnostics = validate_polytope(P)
    if diagnostics:
        return diagnostics

    n = M.n
    if len(M.charvecs) != P.m:
        return [f"{len(M.charvecs)} characteristic vectors for {P.m} facets"]
    for name, v in zip(P.facets, M.charvecs):
        if len(v) != n:
            diagnostics.append(f"characteristic vector of {name} has length {len(v)}, expected {n}")
            continue
        prim = is_primitive(v)
        if prim.zero:
            diagnostics.append(f"characteristic vector of {name} is zero")
        elif not prim:
            diagnostics.append(
                f"primitivity violated: characteristic vector {list(v)} of {name} has gcd {prim.content}"
            )
    if diagnostics:
        return diagnostics

    for v in P.vertices:
        if determinant(M.facet_matrix(v)) == 0:
            diagnostics.append(f"zero determinant at vertex {P.describe_facets(v)}")

    if M.normals is not None:
        if len(M.normals) != P.m:
            diagnostics.append(f"{len(M.normals)} normals for {P.m} facets")
        elif any(len(u) != n for u in M.normals):
            diagnostics.append(f"normals must have length {n}")
        else:
            for v in P.vertices:
                if determinant(_normal_matrix(M, v)) == 0:
                    diagnostics.append(f"inward normals dependent at vertex {P.describe_facets(v)}")

    return diagnostics


def check_model(M: CharacteristicModel) -> CharacteristicModel:
    "Raise ModelError with all diagnostics unless M is valid"
    diagnostics = validate_model(M)
    if diagnostics:
        raise ModelError("invalid characteristic model", diagnostics)
    return M


def _face_smith(M: CharacteristicModel, face: Face):
    key = ("snf", face.facets)
    if key not in M._cache:
        M._cache[key] = smith_normal_form(M.facet_matrix(face))
    return M._cache[key]


def elementary_divisors(M: CharacteristicModel, face: Face) -> Tuple[int, ...]:
    """
    Invariant factors of G_F greater than one; () for a trivial group.
    G_F ≅ ⊕ Z/d_i over the returned d_i.
    """
    if face.is_polytope:
        return ()
    return tuple(d for d in _face_smith(M, face).elementary_divisors if d > 1)


def local_group_order(M: CharacteristicModel, face: Face) -> int:
    """
    Order of the local group G_F = ((N(F) ⊗ Q) ∩ N) / N(F).

    Equal to the product of the elementary divisors of Λ_F, i.e. |det Λ_v| at a vertex.
    """
    if face.is_polytope:
        return 1
    return _face_smith(M, face).torsion


def vertex_order(M: CharacteristicModel, vertex: VertexLike) -> int:
    "|det Λ_v|"
    facets = vertex.facets if isinstance(vertex, Face) else frozenset(vertex)
    return abs(determinant(M.facet_matrix(facets)))


def vertex_orders(M: CharacteristicModel) -> Dict[FrozenSet[int], int]:
    return {v: vertex_order(M, v) for v in M.polytope.vertices}


def box_elements(M: CharacteristicModel, face: Face) -> List[BoxElement]:
    """
    Complete enumeration of Box_F.

    With U·Λ_F·V = D, a rational a gives an integral Λ_F·a exactly when c = V^{-1}a has
    c_i in (1/d_i)Z. The representatives c_i = t_i/d_i, 0 <= t_i < d_i, mapped through V
    and reduced mod 1, are the |G_F| distinct box elements.
    """
    key = ("box", face.facets)
    if key in M._cache:
        return M._cache[key]

    n = M.n
    if face.is_polytope:
        result = [BoxElement(face, (0,) * n, ())]
    else:
        A = M.facet_matrix(face)
        snf = _face_smith(M, face)
        divisors = snf.diagonal
        if 0 in divisors:
            raise ModelError(
                "dependent characteristic vectors",
                [f"characteristic vectors of {M.describe(face)} are linearly dependent"],
            )
        result = []
        for t in product(*(range(d) for d in divisors)):
            c = tuple(Fraction(ti, d) for ti, d in zip(t, divisors))
            a = tuple(frac_part(x) for x in snf.V.apply(c))
            point = A.apply(a)
            if any(x.denominator != 1 for x in point):
                raise InvariantViolation(f"non-integral box point {point} over {M.describe(face)}")
            result.append(BoxElement(face, tuple(int(x) for x in point), a))
        result.sort()
        if len(set(result)) != len(result):
            raise InvariantViolation(f"repeated box element over {M.describe(face)}")

    M._cache[key] = result
    return result


def interior_box_elements(M: CharacteristicModel, face: Face) -> List[BoxElement]:
    "Box_F°: the elements with every coefficient in (0, 1); Box_P° = {0}"
    return [g for g in box_elements(M, face) if g.interior]


def find_box_element(M: CharacteristicModel, face: Face, lattice_point: Sequence[int]) -> BoxElement:
    """
    The element of Box_F with the given lattice point.

    :raises ModelMismatchError: when no element of Box_F has this lattice point
    """
    lattice_point = tuple(int(x) for x in lattice_point)
    for g in box_elements(M, face):
        if g.lattice_point == lattice_point:
            return g
    raise ModelMismatchError(f"{list(lattice_point)} is not in the box of {M.describe(face)}")


def untwisted_sector(M: CharacteristicModel) -> TwistedSector:
    top = M.top
    return TwistedSector(top, box_elements(M, top)[0])


def twisted_sectors(M: CharacteristicModel, untwisted: bool = False) -> List[TwistedSector]:
    """
    One sector per face F and g in Box_F°, in canonical order.

    :param untwisted: also list the untwisted sector (P, 0), first
    """
    sectors = [untwisted_sector(M)] if untwisted else []
    for F in M.faces:
        if F.is_polytope:
            continue
        sectors.extend(TwistedSector(F, g) for g in interior_box_elements(M, F))
    return sectors


def check_box_partition(M: CharacteristicModel) -> List[str]:
    """
    Verify G_v = ⊔_{v <= F} G_F° at every vertex.

    :return: diagnostics, empty when for every vertex the interior boxes of the faces
        through it (P included) list Box_v exactly once
    """
    diagnostics = []
    for v in M.polytope.vertices:
        expected = sorted(g.lattice_point for g in box_elements(M, Face(v, 0)))
        found = []
        for F in M.faces:
            if F.facets <= v:
                found.extend(g.lattice_point for g in interior_box_elements(M, F))
        if sorted(found) != expected:
            diagnostics.append(
                f"box decomposition fails at vertex {M.polytope.describe_facets(v)}: "
                f"{len(found)} sector elements against {len(expected)} box elements"
            )
    return diagnostics


def inverse_sector(M: CharacteristicModel, sector: TwistedSector) -> TwistedSector:
    """
    The sector (F, g^{-1}), g^{-1} = Σ (1 - a_i) λ_i.

    :raises SectorError: for the untwisted sector
    """
    if not sector.twisted:
        raise SectorError("the untwisted sector is not paired by inversion")
    g = sector.element
    coeffs = tuple(1 - a for a in g.coeffs)
    total = [sum(col) for col in zip(*(M.charvecs[i] for i in g.face.indices))]
    point = tuple(t - x for t, x in zip(total, g.lattice_point))
    return TwistedSector(sector.face, BoxElement(sector.face, point, coeffs))


@dataclass(frozen=True)
class QuasiSLReport:
    """
    Truthy iff every twisted sector has integral age.

    :param offenders: the sectors with non-integral age
    """

    quasi_sl: bool
    offenders: Tuple[TwistedSector, ...] = ()

    def __bool__(self):
        return self.quasi_sl


def is_quasi_sl(M: CharacteristicModel) -> QuasiSLReport:
    offenders = tuple(s for s in twisted_sectors(M) if s.age.denominator != 1)
    return QuasiSLReport(not offenders, offenders)


def _normal_matrix(M: CharacteristicModel, vertex: Iterable[int]) -> IntMatrix:
    # positive rescaling of a column keeps the sign of the determinant
    columns = []
    for i in sorted(vertex):
        u = M.normals[i]
        scale = lcm(*(x.denominator for x in u)) if u else 1
        columns.append([int(x * scale) for x in u])
    return IntMatrix.from_columns(columns, M.n)


def vertex_sign(M: CharacteristicModel, vertex: VertexLike) -> int:
    """
    Sign of a vertex: sign of det Λ_(v) with the facets at v positively ordered, i.e.
    ordered so that their inward normals form a positively oriented basis.

    Any fixed ordering gives sign(det N_v) · sign(det Λ_v), which is the same number.

    :raises UnsupportedOperation: when the model carries no normals
    """
    if M.normals is None:
        raise UnsupportedOperation("vertex signs need inward normals")
    facets = vertex.facets if isinstance(vertex, Face) else frozenset(vertex)
    dn = determinant(_normal_matrix(M, facets))
    dl = determinant(M.facet_matrix(facets))
    if dn == 0 or dl == 0:
        raise ModelError("degenerate vertex", [f"singular matrix at vertex {M.polytope.describe_facets(facets)}"])
    return 1 if (dn > 0) == (dl > 0) else -1


def vertex_signs(M: CharacteristicModel) -> Dict[FrozenSet[int], int]:
    return {v: vertex_sign(M, v) for v in M.polytope.vertices}


def is_positively_omnioriented(M: CharacteristicModel) -> bool:
    return all(s == 1 for s in vertex_signs(M).values())


def is_manifold(M: CharacteristicModel) -> bool:
    "True iff every vertex group is trivial"
    return all(o == 1 for o in vertex_orders(M).values())


def reorient(M: CharacteristicModel, facets: Iterable[Union[int, str]]) -> CharacteristicModel:
    """
    Change the omniorientation by reversing λ_i for the given facets.

    Group orders and box cardinalities do not change; ages in general do.
    """
    flip = {M.polytope.facet_index(f) if isinstance(f, str) else f for f in facets}
    charvecs = tuple(
        tuple(-x for x in v) if i in flip else v for i, v in enumerate(M.charvecs)
    )
    return CharacteristicModel(M.polytope, charvecs, M.normals)
