"""
Ordinary and Chen-Ruan Betti numbers, the Euler cross-check and Poincaré duality.

Over Q the cohomology of a quasitoric orbifold X(F) is concentrated in even degrees
with rank H^{2i} = h_i(F), the h-vector of its polytope. Every Chen-Ruan computation
below rests on this rule: it reproduces χ(X(F)) = number of vertices of F and
h^2 = m - n.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exceptions import InvariantViolation
from .model import (
    CharacteristicModel,
    TwistedSector,
    interior_box_elements,
    inverse_sector,
    is_quasi_sl,
    twisted_sectors,
    vertex_orders,
)
from .polytope import Face, h_vector

log = logging.getLogger("qtorb.cohomology")


@dataclass(frozen=True)
class CRBettiTable:
    """
    Ranks h^d_CR by exact degree d.

    :param entries: degree -> rank, zero ranks omitted, degrees increasing
    :param euler: total rank (the CR Euler characteristic when quasi-SL)
    :param quasi_sl: whether every degree shift is even
    :param dim: real dimension 2n
    """

    entries: Tuple[Tuple[Fraction, int], ...]
    euler: int
    quasi_sl: bool
    dim: int

    @classmethod
    def from_ranks(cls, ranks: Dict[Fraction, int], quasi_sl: bool, dim: int) -> "CRBettiTable":
        entries = tuple(sorted((Fraction(d), r) for d, r in ranks.items() if r))
        return cls(entries, sum(r for _, r in entries), quasi_sl, dim)

    def rank(self, degree) -> int:
        return dict(self.entries).get(Fraction(degree), 0)

    @property
    def degrees(self) -> Tuple[Fraction, ...]:
        return tuple(d for d, _ in self.entries)

    def even_ranks(self) -> Tuple[int, ...]:
        """
        (h^0, h^2, ..., h^2n) for a table supported in even integral degrees.

        :raises ValueError: when some degree is not an even integer
        """
        if any(d.denominator != 1 or d.numerator % 2 for d in self.degrees):
            raise ValueError("table has degrees outside 2Z")
        return tuple(self.rank(d) for d in range(0, self.dim + 1, 2))

    def is_palindromic(self) -> bool:
        return all(self.rank(self.dim - d) == r for d, r in self.entries)


def ordinary_betti(M: CharacteristicModel, face: Face) -> Dict[int, int]:
    "Ranks of H^*(X(F); Q): degree 2i carries h_i(F), odd degrees vanish"
    return {2 * i: h for i, h in enumerate(h_vector(M.polytope, face))}


def sector_betti(M: CharacteristicModel, sector: TwistedSector) -> Dict[Fraction, int]:
    "Contribution of one sector: ordinary ranks of its face shifted by 2ι(g)"
    shift = sector.degree_shift
    return {d + shift: r for d, r in ordinary_betti(M, sector.face).items()}


def cr_betti(M: CharacteristicModel) -> CRBettiTable:
    "Chen-Ruan Betti table: H*_CR = ⊕_F ⊕_{g ∈ G_F°} H^{* - 2ι(g)}(X(F))"
    ranks: Dict[Fraction, int] = defaultdict(int)
    for sector in twisted_sectors(M, untwisted=True):
        for d, r in sector_betti(M, sector).items():
            ranks[Fraction(d)] += r
    table = CRBettiTable.from_ranks(ranks, bool(is_quasi_sl(M)), 2 * M.n)
    log.debug(f"CR Betti table: {[(str(d), r) for d, r in table.entries]}")
    return table


@dataclass(frozen=True)
class EulerReport:
    """
    Both Euler formulas and their common value.

    :param by_sectors: Σ_F (#vertices of F)·|Box_F°|
    :param by_vertices: Σ_v |det Λ_v|
    :param quasi_sl: when False the value is a sector-count invariant only
    """

    value: int
    by_sectors: int
    by_vertices: int
    quasi_sl: bool

    @property
    def is_euler_characteristic(self) -> bool:
        return self.quasi_sl

    @property
    def k_theory_ranks(self) -> Optional[Tuple[int, int]]:
        "(rank K^0_orb, rank K^1_orb) for quasi-SL models: every degree is even"
        return (self.value, 0) if self.quasi_sl else None


def euler_cr(M: CharacteristicModel) -> EulerReport:
    """
    χ_CR computed two ways.

    :raises InvariantViolation: when the two formulas disagree
    """
    by_sectors = sum(
        len(M.polytope.vertices_of(F)) * len(interior_box_elements(M, F)) for F in M.faces
    )
    by_vertices = sum(vertex_orders(M).values())
    if by_sectors != by_vertices:
        raise InvariantViolation(
            f"Euler cross-check failed: {by_sectors} by sectors, {by_vertices} by vertices"
        )
    return EulerReport(by_vertices, by_sectors, by_vertices, bool(is_quasi_sl(M)))


@dataclass(frozen=True)
class DualityReport:
    "Outcome of the Poincaré duality check; truthy iff no violation"

    symmetric: bool
    violations: Tuple[str, ...] = field(default_factory=tuple)

    def __bool__(self):
        return self.symmetric and not self.violations


def check_poincare_duality(M: CharacteristicModel) -> DualityReport:
    """
    h^d_CR = h^{2n-d}_CR, and sector by sector: the contribution of (F, g) in degree d
    equals that of (F, g^{-1}) in degree 2n - d.
    """
    dim = 2 * M.n
    table = cr_betti(M)
    violations: List[str] = []
    for d, r in table.entries:
        if table.rank(dim - d) != r:
            violations.append(f"h^{d} = {r} but h^{dim - d} = {table.rank(dim - d)}")

    sectors = twisted_sectors(M, untwisted=True)
    for sector in sectors:
        partner = inverse_sector(M, sector) if sector.twisted else sector
        mine = sector_betti(M, sector)
        theirs = sector_betti(M, partner)
        for d, r in mine.items():
            if theirs.get(dim - d, 0) != r:
                violations.append(
                    f"sector {M.describe(sector.face)} {list(sector.element.lattice_point)} "
                    f"does not pair with its inverse in degree {d}"
                )
    return DualityReport(table.is_palindromic(), tuple(violations))
