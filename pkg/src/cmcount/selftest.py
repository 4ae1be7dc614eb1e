"""Self-test suites run by ``cmcount selftest``."""
from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from .classfield import gamma3_poly, hilbert_class_poly
from .epsilon import epsilon_table
from .modfunc import weber_values
from .quadorder import QuadNumber, disc_info, weierstrass_disc

# epsilon tables keyed by class label; odd D is keyed by the class of lambda^3
EPSILON_REFERENCE = {
    -7: {"1": 0, "-√-d": 0, "-1": 2, "√-d": 2},
    -28: {"1": 0, "√-d": 0, "-1+2√-d": 0, "2-√-d": 0,
          "-1": 2, "-√-d": 2, "1+2√-d": 2, "2+√-d": 2},
    -8: {"1": 0, "-1+2√-d": 0, "1+√-d": 0, "-1+√-d": 0,
         "-1": 2, "1+2√-d": 2, "1-√-d": 2, "-1-√-d": 2},
    -20: {"1": 0, "1+2√-d": 0, "2+√-d": 1, "√-d": 1,
          "-1": 2, "-1+2√-d": 2, "2-√-d": 3, "-√-d": 3},
    -16: {"1": 0, "-1+2√-d": 0, "1-√-d": 1, "-1-√-d": 1,
          "-1": 2, "1+2√-d": 2, "1+√-d": 3, "-1+√-d": 3},
}

CLASS_POLY_REFERENCE = {
    -7: (1, 3375),
    -8: (1, -8000),
    -23: (1, 3491750, -5151296875, 12771880859375),
}


def check_epsilon_tables() -> tuple[bool, str]:
    bad = []
    for D, ref in EPSILON_REFERENCE.items():
        table = epsilon_table(D)
        if D % 2:
            got = {}
            for c, k in table.items():
                got.setdefault((c ** 3).label(), set()).add(k)
            ok = all(got.get(lbl) == {k} for lbl, k in ref.items()) and len(got) == len(ref)
        else:
            got = {c.label(): k for c, k in table.items()}
            ok = got == ref
        if not ok:
            bad.append(D)
    return not bad, "mismatch for " + ", ".join(map(str, bad)) if bad else "5 tables match"


def check_weber(points: int = 10, prec: int = 256, seed: int = 0) -> tuple[bool, str]:
    rng = random.Random(seed)
    worst = mpmath.mpf(0)
    for _ in range(points):
        D = -rng.choice([3, 4, 7, 8, 11, 15, 19, 20, 23, 24])
        if D % 4 not in (0, 1):
            D *= 4
        A = rng.choice([1, 2, 3])
        B = rng.randrange(-A, A + 1)
        tau = QuadNumber(Fraction(-B, 2 * A), Fraction(1, 2 * A), D)
        r1, r2 = weber_values(tau, prec).residuals()
        worst = max(worst, r1, r2)
    ok = worst < mpmath.mpf(2) ** -(prec // 2)
    return ok, f"max residual {mpmath.nstr(worst, 5)}"


def check_class_polys() -> tuple[bool, str]:
    bad = [D for D, ref in CLASS_POLY_REFERENCE.items() if hilbert_class_poly(D).coeffs != ref]
    return not bad, "mismatch for " + ", ".join(map(str, bad)) if bad else "fixtures match"


def check_gamma3_identity() -> tuple[bool, str]:
    bad = [D for D in (-7, -8, -15, -23, -24, -40) if not gamma3_poly(D).identity_holds()]
    return not bad, "fails for " + ", ".join(map(str, bad)) if bad else "identity exact"


def sqrt33_unit_discriminant() -> QuadNumber:
    def q(x, y):
        return QuadNumber(Fraction(x), Fraction(y), 33)

    return weierstrass_disc(q(0, 0), q(Fraction(-7, 2), Fraction(-1, 2)), q(1, 0),
                            q(Fraction(-2487, 2), Fraction(-433, 2)), q(-21416, -3728))


def check_sqrt33_model() -> tuple[bool, str]:
    delta = sqrt33_unit_discriminant()
    ok = delta == QuadNumber(-23, -4, 33) and delta.norm() == 1
    return ok, f"discriminant {delta}"


def check_sweep(bound: int = 200) -> tuple[bool, str]:
    from sympy import primerange

    from .bigarith import cornacchia, sqrt_mod_p
    from .counting import CurveFp, frobenius_trace, naive_count
    from .errors import NoSolution

    total = 0
    for D in (-7, -8, -15, -20, -23):
        disc = disc_info(D)
        hp = hilbert_class_poly(D)
        for p in primerange(5, bound):
            if D % p == 0:
                continue
            try:
                cornacchia(D, p)
            except NoSolution:
                continue
            s = sqrt_mod_p(-disc.d, p)
            for j0 in hp.roots_mod(p):
                k = 1728 - j0
                c = CurveFp(p, 3 * j0 * k, 2 * j0 * k * k)
                for curve in (c, c.quadratic_twist()):
                    if frobenius_trace(disc, curve, (j0, s)).count != naive_count(curve):
                        return False, f"disagreement at D={D}, p={p}"
                    total += 1
    return True, f"{total} counts agree with brute force"


QUICK = [
    ("epsilon tables", check_epsilon_tables),
    ("weber identities", check_weber),
    ("class polynomials", check_class_polys),
    ("gamma3 identity", check_gamma3_identity),
    ("sqrt(33) model discriminant", check_sqrt33_model),
]

FULL = QUICK + [("oracle sweep", check_sweep)]


def run(quick: bool = True) -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in (QUICK if quick else FULL):
        ok, detail = fn()
        out.append((name, ok, detail))
    return out
