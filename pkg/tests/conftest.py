from fractions import Fraction
from itertools import product

import pytest

from qtorb.blowup import BlowupSpec
from qtorb.linalg import IntMatrix, solve_rational
from qtorb.model import CharacteristicModel, box_elements, local_group_order
from qtorb.modelfile import list_fixtures, load_fixture
from qtorb.polytope import Face, simplex

ALL_FIXTURES = list_fixtures()

# largest group order the denominator grid is run on
ORACLE_MAX_ORDER = 200


def brute_force_box(M: CharacteristicModel, face: Face):
    """
    Box_F by the denominator grid: every a in ((1/N)Z ∩ [0, 1))^k with N = |G_F|
    and Σ a_j λ_j integral. Returns sorted (lattice point, coefficients) pairs.
    """
    N = local_group_order(M, face)
    indices = face.indices
    found = []
    for t in product(range(N), repeat=len(indices)):
        a = tuple(Fraction(x, N) for x in t)
        point = [Fraction(0)] * M.n
        for aj, i in zip(a, indices):
            point = [p + aj * x for p, x in zip(point, M.charvecs[i])]
        if all(p.denominator == 1 for p in point):
            found.append((tuple(int(p) for p in point), a))
    return sorted(found)


def oracle_feasible(M: CharacteristicModel, face: Face) -> bool:
    N = local_group_order(M, face)
    return N <= ORACLE_MAX_ORDER and N ** face.codim <= 10 ** 5


def age_one_violations(M: CharacteristicModel, spec: BlowupSpec, Y: CharacteristicModel):
    """
    Re-express every age-1 element of Box_w, w a vertex of the blown-up face, over the new
    vertices of Y. In a crepant blowup each lands in some new vertex cone with age 1 again.
    """
    new = Y.m - 1
    violations = []
    for w in M.polytope.vertices_of(spec.face):
        for g in box_elements(M, M.face(w)):
            if g.age != 1 or g.lattice_point == spec.lambda0:
                continue
            found = False
            for i in spec.face.indices:
                v = sorted((w - {i}) | {new})
                c = solve_rational(IntMatrix.from_columns([Y.charvecs[k] for k in v]), g.lattice_point)
                if all(x >= 0 for x in c):
                    found = True
                    if sum(c) != 1 or any(x >= 1 for x in c):
                        violations.append((w, g.lattice_point, c))
            if not found:
                violations.append((w, g.lattice_point, None))
    return violations


def weighted_simplex(weights) -> CharacteristicModel:
    "Simplex with λ_i = e_i and λ_{n+1} = weights (every weight nonzero)"
    n = len(weights)
    charvecs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    charvecs.append(tuple(weights))
    return CharacteristicModel(simplex(n), tuple(charvecs))


@pytest.fixture
def simplex4():
    return load_fixture("simplex4")


@pytest.fixture
def simplex4_y():
    return load_fixture("simplex4_y")


@pytest.fixture
def simplex4_z():
    return load_fixture("simplex4_z")


@pytest.fixture
def simplex4_fan():
    return load_fixture("simplex4_fan")


@pytest.fixture
def simplex4_alt():
    return load_fixture("simplex4_alt")


@pytest.fixture
def w2():
    return load_fixture("w2")


@pytest.fixture
def w3():
    return load_fixture("w3")


@pytest.fixture
def cp2():
    return load_fixture("cp2")


@pytest.fixture
def cp1xcp1():
    return load_fixture("cp1xcp1")


@pytest.fixture
def pp112():
    return load_fixture("pp112")


@pytest.fixture(params=ALL_FIXTURES)
def any_fixture(request):
    return load_fixture(request.param)
