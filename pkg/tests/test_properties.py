"""
Invariants checked on generated models: weighted simplices Δ^n with λ_i = e_i and a
random primitive λ_{n+1}, and polytopes built from simplices by products and truncations.
"""

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import age_one_violations, brute_force_box, oracle_feasible, weighted_simplex
from qtorb.blowup import (
    blow_up,
    crepant_candidates,
    det_scaling_violations,
    make_blowup_spec,
    resolve,
)
from qtorb.cohomology import check_poincare_duality, cr_betti, euler_cr
from qtorb.linalg import content, primitivize
from qtorb.model import (
    box_elements,
    check_box_partition,
    is_manifold,
    is_quasi_sl,
    local_group_order,
    twisted_sectors,
    vertex_order,
    vertex_orders,
)
from qtorb.polytope import f_vector, h_vector, polygon, product, simplex, truncate, validate
from qtorb.ring import sector_product_table

nonzero = st.integers(min_value=-4, max_value=4).filter(lambda x: x != 0)


def weights(min_n=2, max_n=4, elements=nonzero):
    return (
        st.integers(min_value=min_n, max_value=max_n)
        .flatmap(lambda n: st.lists(elements, min_size=n, max_size=n))
        .filter(lambda w: content(w) == 1)
    )


models = weights().map(weighted_simplex)

small_models = weights(2, 3, st.integers(min_value=-3, max_value=3).filter(lambda x: x != 0)).map(
    weighted_simplex
)

base_polytopes = st.one_of(
    st.integers(min_value=2, max_value=4).map(simplex),
    st.integers(min_value=3, max_value=7).map(polygon),
    st.tuples(st.integers(1, 2), st.integers(1, 2)).map(lambda ab: product(simplex(ab[0]), simplex(ab[1]))),
)


@st.composite
def truncated_polytopes(draw):
    P = draw(base_polytopes)
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        faces = [F for F in P.faces if F.codim >= 2]
        P = truncate(P, draw(st.sampled_from(faces)))
    return P


@settings(derandomize=True, max_examples=100, deadline=None)
@given(truncated_polytopes())
def test_dehn_sommerville(P):
    assert validate(P) == []
    h = h_vector(P)
    assert h == tuple(reversed(h))
    assert h[0] == 1
    assert sum(h) == len(P.vertices) == f_vector(P)[0]
    for F in P.faces:
        hF = h_vector(P, F)
        assert hF == tuple(reversed(hF))


@settings(derandomize=True, max_examples=100, deadline=None)
@given(models)
def test_cr_table_is_palindromic(M):
    assert check_poincare_duality(M)
    table = cr_betti(M)
    assert table.euler == euler_cr(M).value
    assert table.rank(0) == table.rank(2 * M.n) == 1


@settings(derandomize=True, max_examples=100, deadline=None)
@given(models)
def test_box_partition_and_oracle(M):
    assert check_box_partition(M) == []
    for F in M.faces:
        box = box_elements(M, F)
        assert len(box) == local_group_order(M, F)
        if oracle_feasible(M, F):
            assert sorted((g.lattice_point, g.coeffs) for g in box) == brute_force_box(M, F)


@st.composite
def blowups(draw):
    M = draw(models)
    faces = [F for F in M.faces if F.codim >= 2]
    F = draw(st.sampled_from(faces))
    c = draw(st.lists(st.integers(1, 3), min_size=F.codim, max_size=F.codim))
    total = [0] * M.n
    for ci, i in zip(c, F.indices):
        total = [t + ci * x for t, x in zip(total, M.charvecs[i])]
    return M, F, primitivize(total)


@settings(derandomize=True, max_examples=100, deadline=None)
@given(blowups())
def test_det_scaling(data):
    M, F, lambda0 = data
    spec = make_blowup_spec(M, F, lambda0)
    assert all(x > 0 for x in spec.b)
    Y = blow_up(M, spec)
    assert det_scaling_violations(M, spec, Y) == []
    assert len(Y.polytope.vertices) == len(M.polytope.vertices) + (F.codim - 1) * len(
        M.polytope.vertices_of(F)
    )
    orders = sum(vertex_order(M, w) for w in M.polytope.vertices_of(F))
    assert euler_cr(Y).value - euler_cr(M).value == (sum(spec.b) - 1) * orders
    if spec.crepant:
        assert euler_cr(Y).value == euler_cr(M).value


@settings(derandomize=True, max_examples=60, deadline=None)
@given(models)
def test_crepant_blowups_keep_quasi_sl(M):
    if not is_quasi_sl(M):
        return
    for F in M.faces:
        if F.codim < 2:
            continue
        for g in crepant_candidates(M, F).candidates:
            spec = make_blowup_spec(M, F, g.lattice_point)
            assert spec.crepant
            Y = blow_up(M, spec)
            assert is_quasi_sl(Y)
            assert age_one_violations(M, spec, Y) == []
            assert euler_cr(Y).value == euler_cr(M).value


@settings(derandomize=True, max_examples=60, deadline=None)
@given(models)
def test_products_add_degrees(M):
    table = sector_product_table(M)
    assert table.associativity_violations == ()
    sectors = table.sectors
    for (i, j), p in table.entries.items():
        if p.zero:
            continue
        assert sectors[i].age + sectors[j].age == p.element.age + len(p.theta_facets)
        assert p.target.facets <= sectors[i].face.facets | sectors[j].face.facets
        assert table[(j, i)] == p


@settings(derandomize=True, max_examples=50, deadline=None)
@given(small_models)
def test_resolve_reaches_a_manifold(M):
    resolution = resolve(M)
    assert is_manifold(resolution.final)
    assert len(resolution) <= sum(vertex_orders(M).values())
    assert twisted_sectors(resolution.final) == []
    for spec in resolution:
        assert spec.resolution_step
    assert check_box_partition(resolution.final) == []
