"""
Combinatorial blowups of quasitoric orbifolds.

Blowing up along a face F = F_1 ∩ ... ∩ F_k truncates P at F and gives the new facet
F_0 the vector λ_0 = Σ b_j λ_j, b_j > 0. At a vertex w of F the preimage vertex v_i
(which drops F_i) has det Λ_{v_i} = b_i det Λ_w. The blowup is crepant when Σ b_j = 1.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cohomology import CRBettiTable, cr_betti, euler_cr
from .exceptions import BlowupError, InvariantViolation
from .linalg import (
    IntVector,
    RationalVector,
    content,
    is_primitive,
    solve_rational,
)
from .model import (
    BoxElement,
    CharacteristicModel,
    check_model,
    interior_box_elements,
    is_manifold,
    is_quasi_sl,
    vertex_order,
    vertex_orders,
)
from .polytope import Face, truncate
from .settings import Settings

log = logging.getLogger("qtorb.blowup")


@dataclass(frozen=True)
class BlowupSpec:
    """
    A blowup request with its derived data.

    :param face: the face F blown up (codimension k >= 2)
    :param lambda0: the primitive vector assigned to the new facet
    :param b: coefficients of lambda0 over λ_j, j in I(F) increasing, all positive
    """

    face: Face
    lambda0: IntVector
    b: RationalVector

    @property
    def crepant(self) -> bool:
        return sum(self.b) == 1

    @property
    def resolution_step(self) -> bool:
        "Every b_j < 1, i.e. every new vertex has a smaller group than the vertex it replaces"
        return all(x < 1 for x in self.b)

    def order_drops(self, M: CharacteristicModel) -> bool:
        "Direct check of the resolution definition: o(G_{v_i}) < o(G_w) for all w, v_i"
        return all(
            x * vertex_order(M, w) < vertex_order(M, w)
            for w in M.polytope.vertices_of(self.face)
            for x in self.b
        )


def make_blowup_spec(M: CharacteristicModel, face: Face, lambda0: Sequence[int]) -> BlowupSpec:
    """
    Solve λ_0 = Σ b_j λ_j over I(F).

    :raises BlowupError: when F has codimension < 2, λ_0 is not primitive, or λ_0 is not
        in the open cone spanned by the λ_j
    """
    lambda0 = tuple(int(x) for x in lambda0)
    face = M.face(face.facets)
    label = M.describe(face)
    if face.codim < 2:
        raise BlowupError(f"cannot blow up {label}: codimension {face.codim} < 2")
    if len(lambda0) != M.n:
        raise BlowupError(f"lambda0 has length {len(lambda0)}, expected {M.n}")
    prim = is_primitive(lambda0)
    if not prim:
        raise BlowupError(
            f"lambda0 {list(lambda0)} is not primitive"
            + (" (zero vector)" if prim.zero else f" (gcd {prim.content})")
        )
    b = solve_rational(M.facet_matrix(face), lambda0)
    if b is None:
        raise BlowupError(f"lambda0 {list(lambda0)} is not in the span of the vectors of {label}")
    if any(x <= 0 for x in b):
        raise BlowupError(
            f"lambda0 {list(lambda0)} is outside the open cone of {label}: "
            f"coefficients {[str(x) for x in b]}"
        )
    return BlowupSpec(face, lambda0, b)


def blow_up(M: CharacteristicModel, spec: BlowupSpec, name: Optional[str] = None) -> CharacteristicModel:
    """
    The blowup model: truncate P at spec.face, give the new facet λ_0 and, when normals are
    present, the sum of the normals of the facets in I(F).

    :param name: name of the new facet, default Settings.compute["new_facet_name"]
    """
    name = name or Settings.compute["new_facet_name"]
    polytope = truncate(M.polytope, spec.face, name)
    charvecs = M.charvecs + (spec.lambda0,)
    normals = None
    if M.normals is not None:
        normal0 = tuple(sum(col) for col in zip(*(M.normals[i] for i in spec.face.indices)))
        normals = M.normals + (normal0,)
    Y = CharacteristicModel(polytope, charvecs, normals)
    log.info(
        f"blew up {M.describe(spec.face)} with lambda0 {list(spec.lambda0)} "
        f"(b = {[str(x) for x in spec.b]}, crepant={spec.crepant})"
    )
    return check_model(Y)


def det_scaling_violations(M: CharacteristicModel, spec: BlowupSpec, Y: CharacteristicModel) -> List[str]:
    """
    Check |det Λ_{v_i}| = b_i |det Λ_w| for every vertex w of F and its preimages v_i.
    """
    new = Y.m - 1
    violations = []
    for w in M.polytope.vertices_of(spec.face):
        ow = vertex_order(M, w)
        for i, bi in zip(spec.face.indices, spec.b):
            v = (w - {i}) | {new}
            ov = vertex_order(Y, v)
            if Fraction(ov) != bi * ow:
                violations.append(
                    f"vertex {Y.polytope.describe_facets(v)}: order {ov}, expected {bi * ow}"
                )
    return violations


@dataclass(frozen=True)
class CrepantCandidateReport:
    """
    Crepant choices of λ_0 over a face.

    :param dual_vectors: for each vertex w of F, the v with <λ_i, v> = 1 for i in I(w)
    :param candidates: primitive age-one elements of Box_F°
    """

    face: Face
    dual_vectors: Tuple[Tuple[frozenset, RationalVector], ...]
    candidates: Tuple[BoxElement, ...]


def crepant_candidates(M: CharacteristicModel, face: Face) -> CrepantCandidateReport:
    """
    All λ_0 giving a crepant blowup along F.

    Crepancy forces every b_j into (0, 1), so the candidates are exactly the primitive
    lattice points of age-one interior box elements. Each lies on the hyperplane
    A_w = {x : <x, v_w> = 1} of every vertex w of F.
    """
    face = M.face(face.facets)
    if face.codim < 2:
        raise BlowupError(f"cannot blow up {M.describe(face)}: codimension {face.codim} < 2")
    duals = []
    for w in M.polytope.vertices_of(face):
        Lt = M.facet_matrix(w).transpose()
        duals.append((w, solve_rational(Lt, (1,) * M.n)))
    candidates = tuple(
        g for g in interior_box_elements(M, face) if g.age == 1 and is_primitive(g.lattice_point)
    )
    for w, v in duals:
        for g in candidates:
            if sum(x * c for x, c in zip(g.lattice_point, v)) != 1:
                raise InvariantViolation(
                    f"candidate {list(g.lattice_point)} is off the age-one hyperplane of "
                    f"{M.polytope.describe_facets(w)}"
                )
    return CrepantCandidateReport(face, tuple(duals), candidates)


@dataclass(frozen=True)
class McKayReport:
    """
    Before/after comparison of a blowup.

    The raw comparisons are always computed. ``in_scope`` says whether the theorems apply
    (quasi-SL input and crepant blowup); ``violations`` lists expected statements that
    failed and is only populated in scope.
    """

    spec: BlowupSpec
    dim: int
    euler_before: int
    euler_after: int
    betti_before: CRBettiTable
    betti_after: CRBettiTable
    euler_conserved: bool
    betti_conserved: bool
    h2_monotone: bool
    quasi_sl_preserved: bool
    untwisted_h2_gain: int
    in_scope: bool
    scope_notes: Tuple[str, ...] = ()
    violations: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def expects_betti(self) -> bool:
        return self.in_scope and self.dim <= 6

    @property
    def expects_h2(self) -> bool:
        return self.in_scope and self.dim >= 8


def verify_mckay(M: CharacteristicModel, spec: BlowupSpec, Y: Optional[CharacteristicModel] = None) -> McKayReport:
    """
    Compare the CR invariants of M and its blowup.

    In scope (quasi-SL, crepant): Euler conservation and quasi-SL preservation always,
    Betti equality in dimension <= 6, h^2 monotonicity in dimension >= 8.
    """
    Y = Y or blow_up(M, spec)
    dim = 2 * M.n
    qsl_before = bool(is_quasi_sl(M))
    qsl_after = bool(is_quasi_sl(Y))
    notes = []
    if not qsl_before:
        notes.append("input is not quasi-SL")
    if not spec.crepant:
        notes.append(f"blowup is not crepant (sum of b = {sum(spec.b)})")
    in_scope = not notes

    before, after = cr_betti(M), cr_betti(Y)
    e_before, e_after = euler_cr(M).value, euler_cr(Y).value
    h2_before, h2_after = before.rank(2), after.rank(2)

    checks = {
        "euler_conserved": e_before == e_after,
        "betti_conserved": before.entries == after.entries,
        "h2_monotone": h2_after >= h2_before,
        "quasi_sl_preserved": qsl_after,
    }
    violations = []
    if in_scope:
        expected = ["euler_conserved", "quasi_sl_preserved"]
        if dim <= 6:
            expected.append("betti_conserved")
        if dim >= 8:
            expected.append("h2_monotone")
        violations = [name for name in expected if not checks[name]]
        if violations:
            log.error(f"McKay statements failed on an in-scope blowup: {violations}")

    return McKayReport(
        spec=spec,
        dim=dim,
        euler_before=e_before,
        euler_after=e_after,
        betti_before=before,
        betti_after=after,
        untwisted_h2_gain=(Y.m - Y.n) - (M.m - M.n),
        in_scope=in_scope,
        scope_notes=tuple(notes),
        violations=tuple(violations),
        **checks,
    )


def _primitive_element(M: CharacteristicModel, g: BoxElement) -> BoxElement:
    "g / gcd(lattice point); coefficients stay in (0, 1)"
    c = content(g.lattice_point)
    if c == 1:
        return g
    return BoxElement(
        g.face,
        tuple(x // c for x in g.lattice_point),
        tuple(a / c for a in g.coeffs),
    )


def next_resolution_step(M: CharacteristicModel) -> Optional[BlowupSpec]:
    """
    The step resolve takes next: the face of largest codimension with a nontrivial interior
    box (smallest facet tuple among those), then its primitivized element of least age,
    ties broken by the lattice point. None for a manifold.
    """
    faces = [F for F in M.faces if F.codim >= 2 and interior_box_elements(M, F)]
    if not faces:
        return None
    face = min(faces, key=lambda F: (-F.codim, F.indices))
    elements = {_primitive_element(M, g) for g in interior_box_elements(M, face)}
    g = min(elements, key=lambda e: (e.age, e.lattice_point))
    return BlowupSpec(face, g.lattice_point, g.coeffs)


@dataclass(frozen=True)
class Resolution:
    """
    An iterated blowup ending in a manifold.

    :param steps: the BlowupSpec of every step, each relative to the previous model
    :param models: the models after each step
    """

    start: CharacteristicModel
    steps: Tuple[BlowupSpec, ...]
    models: Tuple[CharacteristicModel, ...]

    @property
    def final(self) -> CharacteristicModel:
        return self.models[-1] if self.models else self.start

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def step_bound(M: CharacteristicModel) -> int:
    """
    Upper bound on the number of resolution steps: the potential Σ_v ((n+1)^(o_v - 1) - 1).

    A step replaces each vertex w of the chosen face by at most n vertices of integral
    orders b_i·o_w <= o_w - 1, which lowers the potential by at least one.
    """
    return sum((M.n + 1) ** (o - 1) - 1 for o in vertex_orders(M).values())


def resolve(M: CharacteristicModel) -> Resolution:
    """
    Blow up until every local group is trivial.

    Each step replaces every vertex of the chosen face (order o) by vertices of orders
    b_i·o < o, so the multiset of vertex orders strictly decreases and the loop ends.

    :raises InvariantViolation: if the step bound is exceeded
    """
    limit = Settings.compute["resolve_max_steps"] or step_bound(M)
    steps, models = [], []
    current = M
    while True:
        spec = next_resolution_step(current)
        if spec is None:
            break
        if len(steps) >= limit:
            raise InvariantViolation(f"resolution did not terminate within {limit} steps")
        current = blow_up(current, spec)
        steps.append(spec)
        models.append(current)
        log.debug(f"resolution step {len(steps)}: {list(spec.lambda0)}")

    if not is_manifold(current):
        raise InvariantViolation("resolution stopped on a model that is not a manifold")
    return Resolution(M, tuple(steps), tuple(models))
