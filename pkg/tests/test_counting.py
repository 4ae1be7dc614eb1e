import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import primerange

from cmcount.bigarith import legendre, sqrt_mod_p
from cmcount.classfield import hilbert_class_poly
from cmcount.counting import (CurveFp, cm_construct, count_1mod4, count_special, frobenius_trace,
                              naive_count, order_certificate)
from cmcount.counting.formulas import _normalize_1mod4
from cmcount.errors import (Inconsistency, InertPrime, Infeasible, InvalidArgument, NoRoot, PreconditionError,
                            ResourceError)
from cmcount.quadorder import disc_info


def cm_curve(p, j0):
    k = 1728 - j0
    return CurveFp(p, 3 * j0 * k % p, 2 * j0 * k * k % p)


def cm_cases(discs, bound):
    out = []
    for D in discs:
        hp = hilbert_class_poly(D)
        for p in primerange(5, bound):
            if D % p and legendre(D % p, p) == 1:
                out += [(D, p, j0) for j0 in hp.roots_mod(p) if j0 not in (0, 1728 % p)]
    return out


CASES = cm_cases([-7, -8, -11, -15, -20, -23, -24, -16, -28, -99], 300)


@pytest.mark.parametrize("p,a,b,n", [(11, 9, 10, 16), (5, 1, 0, 4), (3, 0, 1, 4)])
def test_naive_examples(p, a, b, n):
    assert naive_count(CurveFp(p, a, b)) == n


def test_naive_limit():
    with pytest.raises(ResourceError):
        naive_count(CurveFp(10_000_019, 1, 1))


def test_main_example_and_twist():
    c = CurveFp(11, 9, 10)
    fd = frobenius_trace(-7, c)
    assert fd.count == 16 and fd.trace == -4
    assert frobenius_trace(-7, c.quadratic_twist()).count == 8
    js = fd.to_json()
    assert set(js) == {"lambda", "epsilon", "W", "trace", "count", "branch"}


def test_inert_rejected():
    with pytest.raises(InvalidArgument):
        frobenius_trace(-7, CurveFp(3, 1, 1))
    with pytest.raises(InertPrime):
        frobenius_trace(-7, CurveFp(5, 1, 1))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CASES), st.integers(1, 10**6))
def test_isomorphism_invariance(case, u):
    D, p, j0 = case
    if u % p == 0:
        return
    c = cm_curve(p, j0)
    iso = CurveFp(p, c.a * pow(u, 4, p) % p, c.b * pow(u, 6, p) % p)
    s = sqrt_mod_p(-disc_info(D).d % p, p)
    assert frobenius_trace(D, iso, (j0, s)).count == frobenius_trace(D, c, (j0, s)).count


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CASES))
def test_embedding_and_twist(case):
    D, p, j0 = case
    c = cm_curve(p, j0)
    s = sqrt_mod_p(-disc_info(D).d % p, p)
    n1 = frobenius_trace(D, c, (j0, s)).count
    assert frobenius_trace(D, c, (j0, p - s)).count == n1
    n2 = frobenius_trace(D, c.quadratic_twist(), (j0, s)).count
    assert n1 + n2 == 2 * p + 2
    assert n1 == naive_count(c)


def test_special_examples():
    assert count_special(CurveFp(5, 4, 0), "j1728").count == 8  # y^2 = x^3 - x
    assert count_special(CurveFp(7, 0, 2), "j0").count == 9
    with pytest.raises(PreconditionError):
        count_special(CurveFp(7, 1, 0), "j1728")


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([p for p in primerange(5, 600) if p % 12 == 1]), st.integers(1, 10**6))
def test_special_against_oracle(p, c):
    if c % p == 0:
        return
    for which, curve in (("j1728", CurveFp(p, c % p, 0)), ("j0", CurveFp(p, 0, c % p))):
        assert count_special(curve, which).count == naive_count(curve)


def test_1mod4_normalization_examples():
    assert _normalize_1mod4(disc_info(-7), 29).u == -1
    lam = _normalize_1mod4(disc_info(-8), 17)
    assert (lam.u, abs(lam.v)) == (3, 2)
    with pytest.raises(PreconditionError):
        count_1mod4(-7, cm_curve(19, -3375 % 19))


@pytest.mark.parametrize("case", [c for c in CASES if c[1] % 4 == 1 and (c[0] % 2 or c[0] % 16 in (4, 8))])
def test_1mod4_agrees_with_main(case):
    D, p, j0 = case
    c = cm_curve(p, j0)
    for curve in (c, c.quadratic_twist()):
        assert count_1mod4(D, curve).count == frobenius_trace(D, curve).count == naive_count(curve)


def test_construct_examples():
    curve, fd, cert = cm_construct(-7, 11, count=16)
    assert naive_count(curve) == 16 == cert.count == cert.oracle_count
    with pytest.raises(Infeasible):
        cm_construct(-7, 11, count=24)
    with pytest.raises(NoRoot):
        cm_construct(-23, 13, count=14)


def test_construct_is_deterministic():
    p, D = 10007, -7
    t = abs(frobenius_trace(D, cm_curve(p, -3375 % p)).trace)
    first = cm_construct(D, p, trace=t, seed=5)
    second = cm_construct(D, p, trace=t, seed=5)
    assert first[0] == second[0] and first[2] == second[2]
    other = cm_construct(D, p, trace=-t, seed=5)
    assert other[1].count == p + 1 + t


def test_order_certificate_detects_wrong_order():
    curve = CurveFp(11, 9, 10)
    assert order_certificate(curve, 16, points=10) == 10
    with pytest.raises(Inconsistency):
        order_certificate(curve, 17, points=10, seed=1)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(CASES), st.integers(0, 2**32))
def test_group_law(case, seed):
    import random
    D, p, j0 = case
    c = cm_curve(p, j0)
    rng = random.Random(seed)
    P, Q, R = (c.random_point(rng) for _ in range(3))
    assert all(c.contains(X) for X in (P, Q, R, c.add(P, Q)))
    assert c.add(c.add(P, Q), R) == c.add(P, c.add(Q, R))
    assert c.add(P, Q) == c.add(Q, P)
    assert c.mul(naive_count(c), P) is None
