import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmcount.errors import InvalidArgument
from cmcount.modfunc import eta, j_invariant, reduce_tau, weber_values

PREC = 200
upper = st.tuples(st.floats(-0.5, 0.5), st.floats(0.6, 2.0))


def _tau(xy):
    return mpmath.mpc(*xy)


def test_j_at_i_and_rho():
    with mpmath.workprec(PREC):
        assert abs(j_invariant(mpmath.mpc(0, 1), PREC) - 1728) < mpmath.mpf(2) ** -150
        rho = mpmath.mpc(-0.5, mpmath.sqrt(3) / 2)
        assert abs(j_invariant(rho, PREC)) < mpmath.mpf(2) ** -150


def test_weber_at_i():
    w = weber_values(mpmath.mpc(0, 1), PREC)
    with mpmath.workprec(PREC):
        assert abs(w.gamma2 - 12) < mpmath.mpf(2) ** -150
        assert abs(w.gamma3) < mpmath.mpf(2) ** -150
        # eta(i) = Gamma(1/4) / (2 pi^(3/4))
        want = mpmath.gamma(mpmath.mpf(1) / 4) / (2 * mpmath.pi ** (mpmath.mpf(3) / 4))
        assert abs(w.eta - want) < mpmath.mpf(2) ** -150


@settings(max_examples=25, deadline=None)
@given(upper)
def test_eta_translation(xy):
    tau = _tau(xy)
    with mpmath.workprec(PREC):
        ratio = eta(tau + 1, PREC) / eta(tau, PREC)
        assert abs(ratio - mpmath.expjpi(mpmath.mpf(1) / 12)) < mpmath.mpf(2) ** -120


@settings(max_examples=25, deadline=None)
@given(upper)
def test_eta_inversion(xy):
    tau = _tau(xy)
    with mpmath.workprec(PREC):
        lhs = eta(-1 / tau, PREC)
        rhs = mpmath.sqrt(-1j * tau) * eta(tau, PREC)
        assert abs(lhs - rhs) < mpmath.mpf(2) ** -120


@settings(max_examples=25, deadline=None)
@given(upper)
def test_j_modular_and_identities(xy):
    tau = _tau(xy)
    w = weber_values(tau, PREC)
    with mpmath.workprec(PREC):
        tol = mpmath.mpf(2) ** -100 * max(1, abs(w.j))
        assert abs(j_invariant(tau + 1, PREC) - w.j) < tol
        assert abs(j_invariant(-1 / tau, PREC) - w.j) < tol
        g3 = weber_values(tau + 1, PREC).gamma3
        assert abs(g3 + w.gamma3) < tol  # gamma3 changes sign under T
        r1, r2 = w.residuals()
        assert r1 < tol and r2 < tol


@settings(max_examples=25, deadline=None)
@given(st.floats(-20, 20), st.floats(0.06, 3.0))
def test_reduce_tau_lands_in_fundamental_domain(x, y):
    t, _, _ = reduce_tau(mpmath.mpc(x, y))
    assert abs(t.real) <= 0.5 + 1e-12 and abs(t) >= 1 - 1e-12


def test_large_imaginary_part_leading_term():
    with mpmath.workprec(PREC):
        tau = mpmath.mpc(0, 6)
        q = mpmath.exp(2j * mpmath.pi * tau)
        assert abs(j_invariant(tau, PREC) * q - 1) < mpmath.mpf(10) ** -10
        assert abs(eta(tau, PREC) / mpmath.exp(2j * mpmath.pi * tau / 24) - 1) < mpmath.mpf(10) ** -10


def test_lower_half_plane_rejected():
    with pytest.raises(InvalidArgument):
        weber_values(mpmath.mpc(0, -1))
