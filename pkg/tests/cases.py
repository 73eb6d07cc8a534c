"""Named varieties shared across test modules."""
from dworkzeta.field_tower import make_field
from dworkzeta.polyforms import VarietySpec


def fermat(p, n=2, d=3, a=1):
    return VarietySpec.from_terms(make_field(p, a), n,
                                  [[(1, tuple(d if i == k else 0 for i in range(n + 1))) for k in range(n + 1)]],
                                  label=f"fermat d={d} n={n} over F_{p}^{a}")


def quadric_surface(p):
    return fermat(p, n=3, d=2)


def smooth_cubic_f3():
    # y^2 z = x^3 - x z^2 in coordinates (x, y, z) = (x0, x1, x2)
    return VarietySpec.from_terms(make_field(3), 2, [[(1, (0, 2, 1)), (-1, (3, 0, 0)), (1, (1, 0, 2))]])


def conic_f2():
    return VarietySpec.from_terms(make_field(2), 2, [[(1, (1, 1, 0)), (1, (0, 0, 2))]])


def two_quadrics_f5():
    return VarietySpec.from_terms(make_field(5), 3, [
        [(4, (0, 0, 2, 0)), (4, (0, 1, 0, 1)), (2, (0, 1, 1, 0)), (4, (1, 1, 0, 0))],
        [(2, (0, 1, 0, 1)), (4, (0, 2, 0, 0)), (2, (1, 0, 0, 1))]])
