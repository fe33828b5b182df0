import math

import mpmath as mp
import numpy as np
import pytest

import oracles as O
from hypcat.catenary import rho, varrho, varrho_prime, x_of, y_of
from hypcat.jacobi import (
    BracketError,
    CatenoidKind,
    E_of,
    E_via_varrho,
    I_integrand,
    catenary_height_at,
    classify_catenoid,
    envelope_point,
    f_coef,
    find_a_c,
    find_z,
    intersect_catenaries,
    partials,
    tangency,
    xi,
    xi_form2,
    xi_profile,
    zeta,
    zeta_closed,
)
from hypcat.models import DomainError

SQRT2 = math.sqrt(2.0)


@pytest.fixture(scope="module")
def a_c():
    return find_a_c()


def test_f_coef():
    for a in (0.1, 0.7, 3.0):
        assert f_coef(a, 0.0) == pytest.approx(1.0, abs=1e-14)
        assert f_coef(a, 1.3) == f_coef(a, -1.3)


def test_f_coef_high_precision():
    mp.mp.dps = 40
    a, s = mp.mpf("0.5"), mp.mpf("2.0")
    ref = mp.sinh(2 * a) ** 2 * mp.cosh(2 * s) / (mp.cosh(2 * a) ** 2 * mp.cosh(2 * s) ** 2 - 1)
    assert f_coef(0.5, 2.0) == pytest.approx(float(ref), rel=1e-14)


def test_I_integrand():
    for a in (0.2, 0.4, 0.5):
        A = math.cosh(2 * a)
        assert A * A < 3
        assert I_integrand(a, 10.0) > 0.0
        exact = (A * (3 - A * A) + A * A - 1 - 2 * A) / ((A + 1) ** 2 * (A - 1) ** 1.5)
        assert I_integrand(a, 0.0) == pytest.approx(exact, rel=1e-13)
    # cosh^2 2a > 3: the leading coefficient, hence the sign for large T, is negative
    assert I_integrand(1.0, 10.0) < 0.0


def test_zeta():
    assert zeta(0.5, 0.0) == 0.0
    for s in (0.3, 1.0, 4.0):
        assert zeta(0.5, s) == -zeta(0.5, -s)
        assert zeta(0.5, s) > 0.0
    h = 1e-6
    ys = (y_of(0.5, 1.0 + h) - y_of(0.5, 1.0 - h)) / (2 * h)
    assert zeta(0.5, 1.0) == pytest.approx(SQRT2 * math.cosh(y_of(0.5, 1.0)) * ys, abs=1e-6)


def test_zeta_forms_coincide():
    for a in (0.2, 0.9):
        for s in (0.1, 1.0, 3.0):
            assert zeta_closed(a, s) / zeta(a, s) == pytest.approx(1.0, abs=1e-12)


def test_partials_closed_forms_by_difference():
    h = 1e-6
    for a, s in ((0.3, 0.8), (1.1, 2.0)):
        x_a, x_s, y_a, y_s = partials(a, s)
        assert x_a == pytest.approx((x_of(a + h, s) - x_of(a - h, s)) / (2 * h), abs=1e-6)
        assert x_s == pytest.approx((x_of(a, s + h) - x_of(a, s - h)) / (2 * h), abs=1e-6)
        assert y_a == pytest.approx((y_of(a + h, s) - y_of(a - h, s)) / (2 * h), abs=1e-6)
        assert y_s == pytest.approx((y_of(a, s + h) - y_of(a, s - h)) / (2 * h), abs=1e-6)


def test_xi_basics():
    for a in (0.1, 0.6, 2.0):
        assert xi(a, 0.0) == pytest.approx(1.0, abs=1e-12)
        for s in (0.5, 3.0):
            assert xi(a, s) == xi(a, -s)


def test_xi_forms_agree():
    for a in (0.1, 0.3, 0.6, 1.5):
        for s in np.linspace(0.1, 6.0, 12):
            assert abs(xi(a, s) - xi_form2(a, s)) <= 1e-5 * max(1.0, abs(xi(a, s)))


def _sign_changes(vals):
    signs = np.sign(vals[vals != 0.0])
    return int(np.count_nonzero(np.diff(signs)))


def test_single_sign_change_below_a_c():
    s = np.linspace(0.0, 50.0, 2001)
    for a in (0.1, 0.3, 0.45):
        _, xis = xi_profile(a, s)
        assert _sign_changes(xis) == 1, a


def test_positive_above_a_c():
    s = np.linspace(0.0, 20.0, 401)
    _, xis = xi_profile(0.6, s)
    assert np.all(xis > 0.0)


def test_profile_matches_pointwise():
    s = np.linspace(-4.0, 4.0, 33)
    zetas, xis = xi_profile(0.3, s)
    for si, z, x in zip(s, zetas, xis):
        assert z == pytest.approx(zeta(0.3, si), abs=1e-12)
        assert x == pytest.approx(xi(0.3, si), abs=1e-9)


def test_E(a_c):
    assert abs(E_of(a_c)) <= 1e-6
    assert E_of(0.3) > 0.0 > E_of(0.7)
    assert E_of(0.45) == pytest.approx(O.E(0.45), abs=1e-9)


def test_E_equals_varrho_prime():
    # sqrt(2) int I is d/da x(a, inf) = varrho'
    for a in np.linspace(0.1, 1.0, 10):
        assert E_of(a) == pytest.approx(varrho_prime(a), abs=1e-8)
        assert E_via_varrho(a) == pytest.approx(varrho_prime(a) / SQRT2, abs=1e-15)


def test_find_a_c(a_c):
    assert abs(a_c - 0.49577) <= 1e-4
    assert abs(varrho(a_c) - 0.501143) <= 1e-5
    assert abs(2 * varrho(a_c) - 1.00229) <= 2e-5
    assert abs(varrho_prime(a_c)) <= 1e-9


def test_find_z():
    for a in (0.1, 0.3, 0.45):
        z = find_z(a)
        assert abs(xi(a, z)) <= 1e-7
    z = find_z(0.1)
    assert abs(tangency(0.1, z)) <= 1e-6


def test_find_z_fails_above_a_c():
    with pytest.raises(DomainError):
        find_z(0.55)
    with pytest.raises(BracketError):
        find_z(0.55, check_domain=False)


def test_find_z_equals_tangency_root():
    from scipy.optimize import brentq

    for a in (0.2, 0.4):
        z = find_z(a)
        root = brentq(lambda s: tangency(a, s), 0.5 * z, 1.5 * z, xtol=1e-12)
        assert z == pytest.approx(root, abs=1e-6)


def test_classify_catenoid():
    c = classify_catenoid(0.3)
    assert c.kind is CatenoidKind.UNSTABLE_INDEX_ONE and c.z is not None and not c.least_area
    c = classify_catenoid(0.6)
    assert c.kind is CatenoidKind.GLOBALLY_STABLE and c.z is None and not c.least_area
    c = classify_catenoid(1.2)
    assert c.kind is CatenoidKind.GLOBALLY_STABLE and c.least_area
    assert classify_catenoid(0.3).as_dict()["kind"] == "UnstableIndexOne"


def test_intersections():
    p12, p13, p23 = (intersect_catenaries(*p) for p in ((0.1, 0.2), (0.1, 0.35), (0.2, 0.35)))
    assert p12[1] < p13[1] < p23[1]
    assert varrho(3.0) < varrho(0.1)
    assert intersect_catenaries(0.1, 3.0) is None
    with pytest.raises(DomainError):
        intersect_catenaries(0.3, 0.2)


def test_intersection_is_interior():
    a1, a2 = 0.1, 0.2
    # at t = a2 the outer curve has not started, so the gap is negative
    assert rho(a2, a2) - rho(a1, a2) < 0.0
    x, y = intersect_catenaries(a1, a2)
    assert y > a2
    assert rho(a1, y) == pytest.approx(x, abs=1e-12)
    assert rho(a2, y) == pytest.approx(x, abs=1e-9)


def test_envelope_points(a_c):
    for a in (0.1, 0.2, 0.3, 0.4):
        e = envelope_point(a)
        assert abs(e.tangency_residual) <= 1e-6
        z = find_z(a)
        assert e.x == pytest.approx(x_of(a, z)) and e.y == pytest.approx(y_of(a, z))
        # below sigma_{a_c}, outside the region foliated by the stable catenaries
        assert e.y < catenary_height_at(a_c, e.x)


def test_envelope_is_limit_of_intersections():
    for a in (0.1, 0.3):
        e = envelope_point(a)
        for other in (a - 1e-3, a + 1e-3):
            lo, hi = sorted((a, other))
            x, y = intersect_catenaries(lo, hi)
            assert math.hypot(x - e.x, y - e.y) <= 1e-2


def test_envelope_requires_unstable():
    with pytest.raises(DomainError):
        envelope_point(0.7)


def test_catenary_height_at():
    a = 0.8
    for s in (0.0, 0.5, 2.0):
        assert catenary_height_at(a, x_of(a, s)) == pytest.approx(y_of(a, s), abs=1e-9)
    with pytest.raises(DomainError):
        catenary_height_at(a, varrho(a) + 0.01)
