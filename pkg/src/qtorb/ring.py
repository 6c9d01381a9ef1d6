"""
Combinatorial skeleton of the Chen-Ruan product.

For sectors (K_1, g_1) and (K_2, g_2) the coefficients of g_1 and g_2 are added facet by
facet. A facet whose sum has a positive fractional part stays in the target face K and
carries that fraction in g_1g_2; a facet whose sum reaches 1 contributes its Thom form
θ_i to Θ(g_1, g_2). Only this bookkeeping is computed, never forms.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Tuple

from .exceptions import InvariantViolation, ModelMismatchError, PolytopeError
from .linalg import frac_part
from .model import (
    BoxElement,
    CharacteristicModel,
    TwistedSector,
    find_box_element,
    interior_box_elements,
    twisted_sectors,
)
from .polytope import Face

log = logging.getLogger("qtorb.ring")

FRAC_ONLY = "frac-only"
INTEGER_PLUS_FRAC = "integer-plus-frac"
INTEGER_EXACT = "integer-exact"


@dataclass(frozen=True)
class SectorProduct:
    """
    Result of :func:`sector_product`.

    :param zero: True when K_1 ∩ K_2 is empty, the product vanishes
    :param target: the face K (None when zero)
    :param element: g_1g_2 in Box_K° (None when zero)
    :param theta_facets: facets whose Thom form enters Θ(g_1, g_2)
    :param case_tags: facet -> frac-only | integer-plus-frac | integer-exact
    :param witness: a vertex of K_1 ∩ K_2
    """

    zero: bool
    target: Optional[Face] = None
    element: Optional[BoxElement] = None
    theta_facets: Tuple[int, ...] = ()
    case_tags: Dict[int, str] = field(default_factory=dict, compare=False)
    witness: Optional[FrozenSet[int]] = field(default=None, compare=False)

    @property
    def sector(self) -> Optional[TwistedSector]:
        return None if self.zero else TwistedSector(self.target, self.element)


def _check_sector(M: CharacteristicModel, s: TwistedSector):
    try:
        face = M.face(s.face.facets)
        g = find_box_element(M, face, s.element.lattice_point)
    except (PolytopeError, ModelMismatchError) as e:
        raise ModelMismatchError(f"sector does not belong to this model: {e}")
    if g.coeffs != s.element.coeffs or not g.interior:
        raise ModelMismatchError("sector does not belong to this model")


def sector_product(M: CharacteristicModel, s1: TwistedSector, s2: TwistedSector) -> SectorProduct:
    """
    Target sector and Θ bookkeeping of s1 ⋆ s2.

    :raises ModelMismatchError: when a sector is not a sector of M
    """
    _check_sector(M, s1)
    _check_sector(M, s2)
    union = s1.face.facets | s2.face.facets
    witness = next((v for v in M.polytope.vertices if union <= v), None)
    if witness is None:
        return SectorProduct(zero=True)

    a1, a2 = s1.element.as_dict(), s2.element.as_dict()
    fractions: Dict[int, Fraction] = {}
    theta: List[int] = []
    tags: Dict[int, str] = {}
    for i in sorted(union):
        total = a1.get(i, Fraction(0)) + a2.get(i, Fraction(0))
        if total == 0:
            continue
        part = frac_part(total)
        if part:
            fractions[i] = part
        if total >= 1:
            theta.append(i)
        tags[i] = FRAC_ONLY if total < 1 else (INTEGER_EXACT if total == 1 else INTEGER_PLUS_FRAC)

    target = M.face(fractions.keys())
    coeffs = tuple(fractions[i] for i in target.indices)
    point = [Fraction(0)] * M.n
    for i, a in fractions.items():
        point = [x + a * y for x, y in zip(point, M.charvecs[i])]
    if any(x.denominator != 1 for x in point):
        raise InvariantViolation(f"product lattice point {point} is not integral")
    element = BoxElement(target, tuple(int(x) for x in point), coeffs)

    if not (target.facets <= union) or element not in interior_box_elements(M, target):
        raise InvariantViolation(f"product over {M.describe(target)} is not an interior box element")
    if s1.age + s2.age != element.age + len(theta):
        raise InvariantViolation("degree bookkeeping failed: ages do not add up")

    return SectorProduct(
        zero=False,
        target=target,
        element=element,
        theta_facets=tuple(theta),
        case_tags=tags,
        witness=witness,
    )


@dataclass(frozen=True)
class ProductTable:
    """
    All products over the sectors of a model (untwisted first).

    :param entries: (i, j) -> product of sectors[i] and sectors[j]
    :param associativity_violations: triples whose two bracketings disagree
    """

    sectors: Tuple[TwistedSector, ...]
    entries: Dict[Tuple[int, int], SectorProduct]
    associativity_violations: Tuple[Tuple[int, int, int], ...] = ()

    def __getitem__(self, key) -> SectorProduct:
        return self.entries[key]

    def index(self, sector: TwistedSector) -> int:
        return self.sectors.index(sector)


def sector_product_table(M: CharacteristicModel) -> ProductTable:
    """
    Products of every ordered pair of sectors, with associativity checked on every triple
    whose faces share a vertex.
    """
    sectors = tuple(twisted_sectors(M, untwisted=True))
    size = len(sectors)
    entries = {
        (i, j): sector_product(M, sectors[i], sectors[j]) for i, j in product(range(size), repeat=2)
    }
    index = {s: k for k, s in enumerate(sectors)}

    violations = []
    for i, j, k in product(range(size), repeat=3):
        union = sectors[i].face.facets | sectors[j].face.facets | sectors[k].face.facets
        if not any(union <= v for v in M.polytope.vertices):
            continue
        left = entries[(i, j)]
        right = entries[(j, k)]
        if left.zero or right.zero:
            violations.append((i, j, k))
            continue
        lhs = entries[(index[left.sector], k)]
        rhs = entries[(i, index[right.sector])]
        if lhs.zero or rhs.zero or lhs.sector != rhs.sector:
            violations.append((i, j, k))

    if violations:
        log.warning(f"{len(violations)} non-associative triples")
    return ProductTable(sectors, entries, tuple(violations))
