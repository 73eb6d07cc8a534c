import pytest

from cases import conic_f2, fermat, quadric_surface, smooth_cubic_f3, two_quadrics_f5
from dworkzeta.errors import ExceptionalClassNeeded, NotSmoothSuspected
from dworkzeta.field_tower import make_field
from dworkzeta.jacobian_cohomology import (boundary_columns, boundary_matrix, compute_piece, enumerate_piece,
                                           exceptional_class, expected_degree, full_basis, hodge_numbers,
                                           monomial_basis, torsion_vector)
from dworkzeta.polyforms import BiForm, VarietySpec, bidegree, theta
from oracles import brute_force_piece, classical_hodge, rank_mod_p

VOL = 0b1111


def test_enumerate_examples_fermat():
    spec = fermat(7)
    assert enumerate_piece(spec, 1, 4) == (((0, 0, 0), (0,), VOL),)
    assert len(enumerate_piece(spec, 2, 4)) == 10
    three = enumerate_piece(spec, 2, 3)
    by_mask = {}
    for a, b, m in three:
        by_mask.setdefault(m, []).append((a, b))
    # omitting dx_i: b = 1 and sum a = 4; omitting dy_1: b = 2 and sum a = 3
    assert sorted(len(v) for v in by_mask.values()) == [10, 15, 15, 15]
    assert len(three) == 55


@pytest.mark.parametrize("spec_fn", [lambda: fermat(7), conic_f2, lambda: quadric_surface(3), two_quadrics_f5])
def test_enumerate_matches_brute_force(spec_fn):
    spec = spec_fn()
    top = spec.nslots
    for e in range(spec.r, spec.n + 2):
        for k in (top - 1, top):
            got = enumerate_piece(spec, e, k)
            assert len(set(got)) == len(got)
            max_exp = max(max(sum(a) for a, _, _ in got), max((max(b) for _, b, _ in got), default=0), e) if got else e
            assert set(got) == brute_force_piece(spec.n, spec.r, spec.degrees, e, k, max_exp)


def test_boundary_matrix_fermat_f7():
    spec = fermat(7)
    assert boundary_matrix(spec, 1) == [[]]
    m2 = boundary_matrix(spec, 2)
    assert len(m2) == 10
    assert rank_mod_p(m2, 7) == 9


def test_boundary_columns_have_weight_e():
    spec = two_quadrics_f5()
    for e in (2, 3):
        targets = enumerate_piece(spec, e, spec.nslots)
        for col in boundary_columns(spec, e):
            for i, c in enumerate(col):
                if c:
                    assert bidegree(spec, *targets[i]) == (0, e)


def test_hyperplane_has_no_cohomology():
    spec = VarietySpec.from_terms(make_field(3), 2, [[(1, (1, 0, 0))]])
    assert enumerate_piece(spec, 1, spec.nslots) == ()
    h = hodge_numbers(spec)
    assert h.h == {1: 0, 2: 0}


def test_hodge_fermat_f7():
    h = hodge_numbers(fermat(7))
    assert h.h == {1: 1, 2: 1}
    assert not h.exceptional


def test_conic_over_f2_exceptional():
    spec = conic_f2()
    h = hodge_numbers(spec)
    assert h.exceptional and h.exceptional_weight == 2
    assert h.pieces[2].cokernel_dim == 1
    assert h.h[2] == 0
    tc = exceptional_class(spec)
    assert not compute_piece(spec, 2).is_zero_class(torsion_vector(spec, tc))
    assert theta(tc.tau) == tc.etas[-1]
    for zeta, eta in zip(tc.zetas, tc.etas):
        assert theta(zeta) == eta
    assert monomial_basis(spec, 2, tc) == ()


def test_quadric_over_f2_not_exceptional():
    spec = quadric_surface(2)
    assert not spec.exceptional
    with pytest.raises(ValueError):
        exceptional_class(spec)


def test_smooth_cubic_f3_torsion_class():
    spec = smooth_cubic_f3()
    h = hodge_numbers(spec)
    assert h.h == {1: 1, 2: 1}
    assert h.pieces[2].cokernel_dim == 2
    tc = exceptional_class(spec)
    assert theta(tc.tau) == tc.etas[-1]
    for zeta, eta in zip(tc.zetas, tc.etas):
        assert theta(zeta) == eta
    with pytest.raises(ExceptionalClassNeeded):
        monomial_basis(spec, 2)
    basis = monomial_basis(spec, 2, tc)
    assert len(basis) == 1
    # basis plus tau spans the cokernel: rank is additive
    piece = compute_piece(spec, 2)
    idx = {t: i for i, t in enumerate(piece.target_monomials)}
    rows = [list(c) for c in boundary_columns(spec, 2)]
    base = rank_mod_p(rows, 3)
    vec = [0] * len(idx)
    vec[idx[basis[0]]] = 1
    assert rank_mod_p(rows + [vec, torsion_vector(spec, tc)], 3) == base + 2


def test_singular_fermat_f3_theta_chain():
    spec = fermat(3)
    with pytest.raises(NotSmoothSuspected):
        hodge_numbers(spec)
    tc = exceptional_class(spec, require_nonzero=False)
    assert theta(tc.tau) == tc.etas[-1]


def test_monomial_basis_fermat_f7():
    spec = fermat(7)
    assert monomial_basis(spec, 1) == (((0, 0, 0), (0,), VOL),)
    assert monomial_basis(spec, 2) == (((1, 1, 1), (1,), VOL),)
    assert [e for e, _ in full_basis(spec)] == [1, 2]


@pytest.mark.parametrize("spec_fn", [lambda: fermat(7), lambda: quadric_surface(3), two_quadrics_f5, smooth_cubic_f3])
def test_vanishing_below_r(spec_fn):
    spec = spec_fn()
    for e in range(0, spec.r):
        assert compute_piece(spec, e).cokernel_dim == 0


@pytest.mark.parametrize("spec_fn", [lambda: fermat(7), lambda: fermat(5), lambda: quadric_surface(3),
                                     lambda: fermat(5, n=3, d=3), lambda: fermat(7, n=1, d=3)])
def test_classical_jacobian_oracle(spec_fn):
    spec = spec_fn()
    coeffs = dict(spec.polys[0])
    assert hodge_numbers(spec).h == classical_hodge(coeffs, spec.n, spec.degrees[0], spec.p)


@pytest.mark.parametrize("spec_fn", [lambda: fermat(7), conic_f2, lambda: quadric_surface(3), two_quadrics_f5,
                                     smooth_cubic_f3, lambda: fermat(2, n=3, d=3)])
def test_degree_matches_euler_characteristic(spec_fn):
    spec = spec_fn()
    assert hodge_numbers(spec).degree == expected_degree(spec.n, spec.degrees)


def test_basis_classes_independent():
    spec = fermat(5, n=3, d=3)
    for e in range(1, 4):
        piece = compute_piece(spec, e)
        idx = {t: i for i, t in enumerate(piece.target_monomials)}
        rows = [list(c) for c in boundary_columns(spec, e)] if idx else []
        base = rank_mod_p(rows, 5) if rows else 0
        extra = []
        for t in piece.basis:
            v = [0] * len(idx)
            v[idx[t]] = 1
            extra.append(v)
        if extra:
            assert rank_mod_p(rows + extra, 5) == base + len(extra)
        assert piece.cokernel_dim == len(idx) - base


def test_zero_form_class():
    spec = fermat(7)
    piece = compute_piece(spec, 2)
    assert piece.is_zero_class([0] * 10)
    assert BiForm(spec).is_zero()
