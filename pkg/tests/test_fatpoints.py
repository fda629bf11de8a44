import pytest

from homaloidal import (
    CertificationError,
    FatIdealSpec,
    FieldConfig,
    PointSet,
    Provenance,
    betti_table,
    conditions_matrix,
    eta_transform,
    hilbert_value,
    initial_degree,
    kernel_basis,
    linear_system,
    monomials,
    mult_map,
    power_dim,
    quad_transform_points,
    rank,
    row_space_rank,
    sample_points,
    symbolic_dim,
)
from homaloidal.fatpoints import _shift_by_monomials, derive_seed

FIELD = FieldConfig()
P = FIELD.modulus


@pytest.fixture(scope="module")
def pts6():
    return sample_points(6, FIELD, frame=True)


@pytest.fixture(scope="module")
def pts8():
    return sample_points(8, FIELD, frame=True)


@pytest.fixture(scope="module")
def spec5(pts8):
    return FatIdealSpec(pts8, (2, 2, 2, 2, 1, 1, 1, 1))


# ---------------------------------------------------------------------------
# monomials and sampling


def test_monomials_graded_lex():
    assert monomials(2) == ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))
    assert len(monomials(5)) == 21


def test_sample_points_deterministic_and_valid():
    a = sample_points(8, FIELD)
    b = sample_points(8, FIELD)
    assert a.points == b.points
    c = sample_points(8, FieldConfig(P, 1))
    assert c.points != a.points


def test_sample_points_frame_normalization(pts8):
    assert pts8.points[:3] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert pts8.points[3] == (1, 1, 1)
    assert pts8.provenance.frame


def test_point_canonicalization_and_invariants():
    ps = PointSet(((2, 4, 2), (0, 3, 0), (5, 3, 0)), FieldConfig(7), Provenance(None, False))
    # scaled so the last nonzero coordinate is 1
    assert ps.points == ((1, 2, 1), (0, 1, 0), (4, 1, 0))
    with pytest.raises(ValueError, match="distinct"):
        PointSet(((1, 1, 1), (2, 2, 2)), FieldConfig(7), Provenance(None, False))
    with pytest.raises(ValueError, match="collinear"):
        PointSet(((1, 0, 1), (2, 0, 1), (3, 0, 1)), FieldConfig(7), Provenance(None, False))
    with pytest.raises(ValueError, match="\\(0,0,0\\)"):
        PointSet(((0, 0, 0),), FieldConfig(7), Provenance(None, False))


def test_sample_points_requires_big_modulus():
    with pytest.raises(ValueError, match="modulus"):
        sample_points(4, FieldConfig(101))


# ---------------------------------------------------------------------------
# conditions matrix


def test_conditions_matrix_row_count(spec5):
    m = conditions_matrix(spec5, 5)
    assert m.rows == 16  # sum of m_i(m_i+1)/2
    assert m.cols == 21


def test_conditions_enforce_multiplicity_on_every_chart():
    # x^2 z vanishes at (1:0:0) and both its x,y-partials vanish there, yet
    # the point is smooth on the curve; the chart-aware rows must reject it
    ps = PointSet(((1, 0, 0),), FIELD, Provenance(None, False))
    spec = FatIdealSpec(ps, (2,))
    basis = kernel_basis(conditions_matrix(spec, 3))
    idx = {m: i for i, m in enumerate(monomials(3))}
    col = idx[(2, 0, 1)]
    for row in basis.entries:
        on_x2z = {i: int(v) for i, v in enumerate(row) if v}
        assert on_x2z != {col: 1}, "x^2 z slipped through the multiplicity conditions"
    # and the dimension matches the expected count of conditions
    assert basis.rows == 10 - 3


def test_conditions_matrix_rejects_small_modulus(spec5):
    small = FatIdealSpec(
        PointSet(((1, 2, 1), (3, 4, 1)), FieldConfig(11), Provenance(None, False)), (2, 1)
    )
    with pytest.raises(ValueError, match="too small"):
        conditions_matrix(small, 11)


def test_zero_multiplicity_points_impose_nothing(pts8):
    spec = FatIdealSpec(pts8, (2, 2, 2, 2, 0, 0, 0, 0))
    assert conditions_matrix(spec, 4).rows == 12
    assert linear_system(spec, 2).dimension == 0
    assert linear_system(spec, 4).dimension == 15 - 12


# ---------------------------------------------------------------------------
# hilbert values and certification


def test_hilbert_value_certified(spec5):
    rep = hilbert_value(spec5, 5)
    assert rep.sampled_dim == 5 and rep.expected == 5
    assert rep.certified and rep.samples_used == 1


def test_hilbert_value_honest_about_superabundance():
    # five double points always carry the doubled conic: sampled 1, expected 0
    pts = sample_points(5, FIELD)
    rep = hilbert_value(FatIdealSpec(pts, (2,) * 5), 4, retries=3)
    assert rep.sampled_dim == 1 and rep.expected == 0
    assert not rep.certified and rep.samples_used == 3


def test_hilbert_value_does_not_resample_seedless_sets():
    # same coordinates as a sampled set, but with the seed stripped
    ps = PointSet(sample_points(5, FIELD).points, FIELD, Provenance(None, False))
    rep = hilbert_value(FatIdealSpec(ps, (2,) * 5), 4, retries=5)
    assert rep.samples_used == 1 and not rep.certified


def test_initial_degree(spec5, pts6):
    assert initial_degree(spec5, 10) == 5
    assert initial_degree(FatIdealSpec(pts6, (1,) * 6), 10) == 3
    assert initial_degree(FatIdealSpec(pts6, (3,) * 6), 4) is None


# ---------------------------------------------------------------------------
# multiplication maps and resolutions


def test_mult_map_surjective_with_linear_syzygies(spec5):
    mm = mult_map(linear_system(spec5, 5), spec5, 6)
    assert mm.source_dim == 5 and mm.target_dim == 12
    assert mm.image_rank == 12 and mm.kernel_dim == 3
    assert mm.surjective and mm.certified
    with pytest.raises(ValueError, match="follow"):
        mult_map(linear_system(spec5, 5), spec5, 7)


def test_betti_tables(pts6, pts8, spec5):
    assert betti_table(spec5).generators == {5: 5}
    assert betti_table(spec5).syzygies == {6: 3, 7: 1}
    simple = betti_table(FatIdealSpec(pts6, (1,) * 6))
    assert simple.generators == {3: 4} and simple.syzygies == {4: 3}
    pts9 = sample_points(9, FIELD, frame=True)
    deg7 = betti_table(FatIdealSpec(pts9, (3, 3, 3, 2, 2, 2, 1, 1, 1)))
    assert deg7.generators == {7: 6} and deg7.syzygies == {8: 3, 9: 2}


def test_betti_table_needs_wide_enough_window(spec5):
    with pytest.raises(CertificationError, match="widen the window"):
        betti_table(spec5, gen_degree_window=1)


def test_betti_table_refuses_uncertified_input():
    pts = sample_points(5, FIELD)
    with pytest.raises(CertificationError, match="uncertified"):
        betti_table(FatIdealSpec(pts, (2,) * 5))


def test_doubled_net_resolution_shape(pts6):
    # six double points in degree 5: a three-dimensional net, one extra
    # sextic generator, no linear syzygies, three syzygies with cubic
    # coefficient forms
    spec = FatIdealSpec(pts6, (2,) * 6)
    net = linear_system(spec, 5)
    assert net.dimension == 3
    mm = mult_map(net, spec, 6)
    assert mm.kernel_dim == 0
    assert mm.target_dim - mm.image_rank == 1
    shifted = _shift_by_monomials(net.basis, 5, 3)
    assert shifted.rows - rank(shifted) == 3
    assert rank(shifted) == 27 == linear_system(spec, 8).dimension
    table = betti_table(spec)
    assert table.generators == {5: 3, 6: 1} and table.syzygies == {7: 3}


# ---------------------------------------------------------------------------
# powers


def test_power_dims(pts6, spec5):
    assert power_dim(FatIdealSpec(pts6, (1,) * 6), 2) == 10
    assert power_dim(spec5, 2) == 14
    assert power_dim(spec5, 3) == 28


def test_symbolic_dims(pts6, spec5):
    assert symbolic_dim(FatIdealSpec(pts6, (1,) * 6), 2, 5).sampled_dim == 3
    assert symbolic_dim(spec5, 2, 10).sampled_dim == 14
    assert symbolic_dim(spec5, 3, 15).sampled_dim == 28
    assert symbolic_dim(spec5, 2, 9).sampled_dim == 3
    with pytest.raises(ValueError, match="at least 1"):
        symbolic_dim(spec5, 0, 5)


def test_power_dim_guard():
    pts = sample_points(3, FIELD)
    spec = FatIdealSpec(pts, (1, 1, 1))  # conic basis has dimension 3
    with pytest.raises(ValueError, match="guard"):
        power_dim(spec, 450)  # C(452, 2) multisets exceed the product guard


# ---------------------------------------------------------------------------
# quadratic point transform and eta


def test_quad_transform_points_fixes_frame_and_moves_rest(pts8):
    moved = quad_transform_points(pts8, 0, 1, 2)
    assert moved.points[:4] == pts8.points[:4]  # (1:1:1) is fixed too
    x, y, _ = pts8.points[4]
    # on the chart z = 1 the map inverts both affine coordinates
    assert moved.points[4] == (pow(x, P - 2, P), pow(y, P - 2, P), 1)
    assert moved.provenance.frame


def test_quad_transform_points_validates_base(pts8):
    with pytest.raises(ValueError, match="coordinate points"):
        quad_transform_points(pts8, 0, 1, 4)
    # no coordinate points at all: the base requirement fails outright
    shifted = PointSet(((1, 1, 1), (1, 2, 1), (0, 1, 1), (2, 0, 1)), FIELD, Provenance(None, False))
    with pytest.raises(ValueError, match="coordinate points"):
        quad_transform_points(shifted, 0, 1, 2)
    with pytest.raises(ValueError, match="distinct"):
        quad_transform_points(pts8, 0, 1, 1)


def test_eta_transform_round_trip(pts8, spec5):
    sys5 = linear_system(spec5, 5)
    eta = eta_transform(sys5, 2, 2, 2)
    assert eta.degree == 4 and eta.dimension == 5
    tilde = FatIdealSpec(quad_transform_points(pts8, 0, 1, 2), (1, 1, 1, 2, 1, 1, 1, 1))
    tilde4 = linear_system(tilde, 4)
    assert tilde4.dimension == 5
    assert row_space_rank([tilde4.basis, eta.basis]) == 5
    zeta = eta_transform(eta, 1, 1, 1)
    assert zeta.degree == 5
    assert row_space_rank([sys5.basis, zeta.basis]) == 5


def test_eta_transform_rejects_nondivisible_systems(pts8):
    # the full degree-2 space does not vanish at the coordinate points
    spec = FatIdealSpec(pts8, (0,) * 8)
    sys2 = linear_system(spec, 2)
    with pytest.raises(ValueError, match="divisible"):
        eta_transform(sys2, 1, 1, 0)
    with pytest.raises(ValueError, match="negative"):
        eta_transform(sys2, 2, 2, 2)


# ---------------------------------------------------------------------------
# misc


def test_derive_seed_is_stable():
    assert derive_seed(0, "points:8:1:1") == derive_seed(0, "points:8:1:1")
    assert derive_seed(0, "a") != derive_seed(0, "b")
    assert derive_seed(1, "a") != derive_seed(0, "a")


def test_spec_validation(pts8):
    with pytest.raises(ValueError, match="multiplicities for"):
        FatIdealSpec(pts8, (1, 1))
    with pytest.raises(ValueError, match="non-negative"):
        FatIdealSpec(pts8, (1,) * 7 + (-1,))
