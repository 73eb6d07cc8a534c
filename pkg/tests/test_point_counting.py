import pytest
from hypothesis import given, settings

from cases import conic_f2, fermat, quadric_surface, two_quadrics_f5
from dworkzeta.errors import BudgetExceeded, NonIntegralRelation
from dworkzeta.field_tower import make_field
from dworkzeta.point_counting import (SingularPointFound, SmoothUpToDepth, count_affine, count_ledger,
                                      count_projective, predicted_cost, projective_from_affine,
                                      smoothness_audit)
from dworkzeta.polyforms import VarietySpec
from oracles import brute_force_affine_count
from strategies import specs


def hyperplane(p, n=2, a=1):
    return VarietySpec.from_terms(make_field(p, a), n, [[(1, (1,) + (0,) * n)]])


def test_hyperplane_affine_f3():
    assert count_affine(hyperplane(3), 1) == 9


@pytest.mark.parametrize("p,a", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_hyperplane_is_projective_space(p, a):
    q = p ** a
    for n in (1, 2, 3):
        spec = hyperplane(p, n, a)
        for m in range(1, 4):
            if (q ** m) ** (n + 1) > 2 * 10 ** 6:
                continue
            Q = q ** m
            assert count_projective(spec, m) == (Q ** n - 1) // (Q - 1)


def test_fermat_cubic_f5():
    spec = fermat(5)
    assert count_affine(spec, 1) == 25
    assert count_projective(spec, 1) == 6
    assert count_projective(spec, 2) == 36


def test_fermat_cubic_f7_hasse_window():
    v = count_projective(fermat(7), 1)
    assert (v - 8) ** 2 <= 4 * 7
    assert v == count_projective(fermat(7), 1, direct=True)


@pytest.mark.parametrize("spec_fn", [lambda: fermat(5), conic_f2, lambda: quadric_surface(3), two_quadrics_f5,
                                     lambda: fermat(2, a=2), lambda: fermat(3, a=2, n=1)])
def test_matches_brute_force(spec_fn):
    spec = spec_fn()
    for m in (1, 2):
        if (spec.q ** m) ** (spec.n + 1) > 70000:
            continue
        assert count_affine(spec, m) == brute_force_affine_count(spec, m)


@settings(max_examples=25)
@given(specs(n_max=2))
def test_random_specs_match_oracle(spec):
    assert count_affine(spec, 1) == brute_force_affine_count(spec, 1)
    assert count_projective(spec, 1) == count_projective(spec, 1, direct=True)


@pytest.mark.parametrize("spec_fn", [lambda: fermat(5), two_quadrics_f5, lambda: fermat(3, a=2)])
def test_partition_invariance(spec_fn):
    spec = spec_fn()
    ref = count_affine(spec, 1)
    for parts, workers in [(4, 1), (16, 1), (16, 4), (3, 2)]:
        assert count_affine(spec, 1, partitions=parts, workers=workers) == ref
    assert count_affine(spec, 2, partitions=16, workers=4) == count_affine(spec, 2)


def test_direct_projective_agrees_with_relation():
    for spec in (fermat(5), conic_f2(), quadric_surface(3), two_quadrics_f5()):
        for m in (1, 2):
            if (spec.q ** m) ** (spec.n + 1) > 10 ** 6:
                continue
            assert count_projective(spec, m) == count_projective(spec, m, direct=True)


def test_relation_divisibility_asserted():
    assert projective_from_affine(25, 5, 1) == 6
    with pytest.raises(NonIntegralRelation):
        projective_from_affine(26, 5, 1)


def test_ledger():
    led = count_ledger(fermat(5), 2, partitions=4)
    assert led.projective == {1: 6, 2: 36}
    assert led.depth == 2
    led.check_relation()
    led.affine[2] += 24
    with pytest.raises(NonIntegralRelation):
        led.check_relation()


def test_budget_vetoes_early():
    spec = fermat(7)
    assert predicted_cost(spec, 2) == 7 ** 3 + 49 ** 3
    with pytest.raises(BudgetExceeded):
        count_ledger(spec, 2, budget=1000)
    with pytest.raises(BudgetExceeded):
        count_affine(spec, 3, budget=10 ** 4)


def test_audit_smooth_conic_f2():
    v = smoothness_audit(conic_f2(), 2)
    assert isinstance(v, SmoothUpToDepth) and v.depth == 2


def test_audit_fermat_f7_smooth():
    assert isinstance(smoothness_audit(fermat(7), 2), SmoothUpToDepth)


def test_audit_finds_cusp_witness():
    spec = VarietySpec.from_terms(make_field(5), 2, [[(1, (3, 0, 0)), (1, (0, 3, 0))]])
    v = smoothness_audit(spec, 1)
    assert isinstance(v, SingularPointFound)
    assert v.point == (0, 0, 1)


def test_audit_fermat_in_char_3_singular():
    # x^3 + y^3 + z^3 = (x + y + z)^3 in characteristic 3
    assert isinstance(smoothness_audit(fermat(3), 1), SingularPointFound)
