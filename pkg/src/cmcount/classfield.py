"""Reduced forms, class polynomials, and exact polynomial expressions in j.

All polynomials are stored with exact coefficients, highest degree first.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, pi, sqrt

import mpmath
import sympy
from sympy import QQ, Poly

from .errors import (
    Inconsistency,
    ModeError,
    NoRoot,
    PreconditionError,
    ResourceError,
)
from .modfunc import weber_values
from .quadorder import Discriminant, QuadNumber, disc_info, odd_index_form, tau_from_ideal

__all__ = [
    "ClassPoly",
    "GammaExpr",
    "QjPoly",
    "class_number",
    "gamma3_poly",
    "hilbert_class_poly",
    "reduced_forms",
    "sqrt_d_poly",
]

MAX_CLASS_NUMBER = 64
_X = sympy.Symbol("x")


def _disc(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else disc_info(D)


@lru_cache(maxsize=None)
def _reduced_forms(D: int) -> tuple:
    out = []
    a_max = isqrt(-D // 3)
    for A in range(1, a_max + 1):
        for B in range(-A + 1, A + 1):
            if (B - D) % 2:
                continue
            num = B * B - D
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A or (C == A and B < 0):
                continue
            if gcd(gcd(A, B), C) == 1:
                out.append((A, B, C))
    return tuple(sorted(out))


def reduced_forms(D) -> list[tuple[int, int, int]]:
    """Reduced primitive positive definite forms of discriminant D."""
    return list(_reduced_forms(_disc(D).D))


def class_number(D) -> int:
    return len(_reduced_forms(_disc(D).D))


def form_point(D: int, form) -> QuadNumber:
    A, B, _ = form
    return QuadNumber(Fraction(-B, 2 * A), Fraction(1, 2 * A), D)


def _poly_from_roots(roots):
    c = [mpmath.mpc(1)]
    for r in roots:
        c = [a - r * b for a, b in zip(c + [0], [0] + c)]
    return c


def _round_exact(values, tol_bits: int = 16):
    """Round complex numbers to integers; None if any is not close enough."""
    tol = mpmath.mpf(2) ** (-tol_bits)
    out = []
    for z in values:
        n = int(mpmath.nint(z.real))
        if abs(z.real - n) > tol or abs(z.imag) > tol:
            return None
        out.append(n)
    return out


def _auto_prec(D: int, forms) -> int:
    # log2 |j(tau)| is about pi*sqrt|D|/A/ln 2; the product of all roots bounds the coefficients
    bits = sum(pi * sqrt(-D) / A / 0.6931 for A, _, _ in forms)
    return max(128, int(bits) + 8 * len(forms) + 64)


# -------------------------------------------------------------------------------------------------
# polynomials over Q in j, reduced modulo a class polynomial


@dataclass(frozen=True)
class QjPoly:
    """A polynomial in x with rational coefficients (highest degree first)."""

    coeffs: tuple

    @classmethod
    def from_sympy(cls, poly: Poly) -> "QjPoly":
        cs = [Fraction(int(c.numerator), int(c.denominator)) for c in poly.all_coeffs()]
        return cls(tuple(cs))

    def to_sympy(self) -> Poly:
        return Poly([sympy.Rational(c.numerator, c.denominator) for c in self.coeffs], _X, domain=QQ)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def denominator(self) -> int:
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return den

    def eval_mod(self, x: int, p: int) -> int:
        if self.denominator() % p == 0:
            raise PreconditionError(f"p={p} divides a coefficient denominator")
        acc = 0
        for c in self.coeffs:
            acc = (acc * x + c.numerator * pow(c.denominator, -1, p)) % p
        return acc

    def eval_numeric(self, x):
        acc = mpmath.mpc(0)
        for c in self.coeffs:
            acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
        return acc

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


@dataclass(frozen=True)
class ClassPoly:
    """Monic integer polynomial whose roots are j of the reduced forms of D."""

    D: int
    coeffs: tuple  # ints, leading 1 first
    prec: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_sympy(self) -> Poly:
        return Poly(list(self.coeffs), _X, domain=sympy.ZZ)

    def as_qj(self) -> QjPoly:
        return QjPoly(tuple(Fraction(c) for c in self.coeffs))

    def eval_mod(self, x: int, p: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = (acc * x + c) % p
        return acc

    def roots_mod(self, p: int) -> list[int]:
        """Distinct roots in F_p, ascending."""
        poly = Poly(list(self.coeffs), _X, modulus=p)
        roots = set()
        for fac, _ in poly.factor_list()[1]:
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                roots.add(int(-b * pow(int(a), -1, p)) % p)
        return sorted(roots)

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


def _class_poly_at(D: int, forms, prec: int):
    with mpmath.workprec(prec):
        roots = [weber_values(form_point(D, f), prec).j for f in forms]
        return _round_exact(_poly_from_roots(roots))


@lru_cache(maxsize=None)
def _hilbert(D: int, max_h: int, prec0) -> ClassPoly:
    forms = _reduced_forms(D)
    if len(forms) > max_h:
        raise ResourceError(f"class number {len(forms)} exceeds bound {max_h}")
    prec = prec0 or _auto_prec(D, forms)
    for _ in range(8):
        first = _class_poly_at(D, forms, prec)
        if first is not None and _class_poly_at(D, forms, 2 * prec) == first:
            return ClassPoly(D, tuple(first), prec)
        prec *= 2
    raise Inconsistency(f"class polynomial for D={D} did not stabilise")


def hilbert_class_poly(D, max_h: int = MAX_CLASS_NUMBER, prec: int | None = None) -> ClassPoly:
    """prod (x - j(tau_form)) over reduced forms, certified at two precisions."""
    return _hilbert(_disc(D).D, max_h, prec)


# -------------------------------------------------------------------------------------------------
# interpolation of conjugate values


def _interpolate(hp: ClassPoly, js, ys):
    """Integer polynomial sum_k y_k H(x)/(x - j_k), or None if not integral."""
    P = [mpmath.mpc(0)] * hp.degree
    for k, y in enumerate(ys):
        q = _poly_from_roots([j for l, j in enumerate(js) if l != k])
        P = [a + y * b for a, b in zip(P, q)]
    return _round_exact(P)


def _solve_mod_H(hp: ClassPoly, P_int) -> QjPoly:
    """G with G(j_k) = y_k, from P = G*H' mod H."""
    H = hp.to_sympy().set_domain(QQ)
    P = Poly(P_int, _X, domain=QQ)
    inv = sympy.invert(H.diff(_X).as_expr(), H.as_expr(), _X, domain=QQ)
    G = (P * Poly(inv, _X, domain=QQ)).rem(H)
    return QjPoly.from_sympy(G)


def _conjugates(disc: Discriminant, value_at, prec: int):
    """(j_k, y_k) for every class; the principal class comes first."""
    js, ys = [], []
    with mpmath.workprec(prec):
        for form in _reduced_forms(disc.D):
            point = tau_from_ideal(disc, odd_index_form(form))
            w = weber_values(point, prec)
            js.append(w.j)
            ys.append(value_at(form, w))
    return js, ys


def _fit(disc: Discriminant, hp: ClassPoly, value_at, check, prec: int) -> QjPoly:
    """Exact G over Q from numerically known conjugate values.

    Tries the values as computed, then (for small class numbers) every sign
    pattern that keeps the principal value fixed.
    """
    for _ in range(4):
        js, ys = _conjugates(disc, value_at, prec)
        with mpmath.workprec(prec):
            patterns = [()]
            if len(ys) <= 10:
                patterns += [
                    flips for r in range(1, len(ys))
                    for flips in itertools.combinations(range(1, len(ys)), r)
                ]
            for flips in patterns:
                ys2 = [-y if k in flips else y for k, y in enumerate(ys)]
                P = _interpolate(hp, js, ys2)
                if P is None:
                    continue
                G = _solve_mod_H(hp, P)
                if check(G) and abs(G.eval_numeric(js[0]) - ys2[0]) < mpmath.mpf(2) ** -16:
                    return G
        prec *= 2
    raise Inconsistency(f"could not reconstruct an exact polynomial for D={disc.D}")


def _is_zero_mod(expr: Poly, hp: ClassPoly) -> bool:
    H = hp.to_sympy().set_domain(QQ)
    return expr.rem(H).is_zero


@dataclass(frozen=True)
class GammaExpr:
    """G in Q[x] with G(j(tau_D)) = radical * gamma3(tau_D).

    mode "odd": radical sqrt(D) (D odd); mode "even48": radical sqrt(-D)
    (D = 4, 8 mod 16).
    """

    D: int
    mode: str
    G: QjPoly
    H: ClassPoly

    @property
    def radicand_sign(self) -> int:
        return 1 if self.mode == "odd" else -1

    def identity_holds(self) -> bool:
        """G^2 == +-D (x - 1728) mod H, checked exactly."""
        G = self.G.to_sympy()
        rhs = Poly(self.radicand_sign * self.D * (_X - 1728), _X, domain=QQ)
        return _is_zero_mod(G * G - rhs, self.H)

    def eval_mod(self, j0: int, p: int) -> int:
        return self.G.eval_mod(j0, p)


def gamma_mode(D: int) -> str:
    if D % 2:
        return "odd"
    if D % 16 in (4, 8):
        return "even48"
    raise ModeError(f"D={D} = {D % 16} mod 16: gamma3 is not needed there")


@lru_cache(maxsize=None)
def _gamma3(D: int) -> GammaExpr:
    disc = _disc(D)
    mode = gamma_mode(D)
    if D in (-3, -4):
        raise ModeError("j = 0 and j = 1728 are handled separately")
    hp = hilbert_class_poly(D)
    sign = 1 if mode == "odd" else -1

    def value_at(form, w):
        if mode == "odd":
            return mpmath.sqrt(mpmath.mpc(D)) * w.gamma3
        # i*gamma3 is the invariant quantity; conjugating i costs chi_4(A)
        return _chi4(odd_index_form(form)[0]) * mpmath.sqrt(mpmath.mpf(-D)) * w.gamma3

    def check(G: QjPoly) -> bool:
        g = G.to_sympy()
        return _is_zero_mod(g * g - Poly(sign * D * (_X - 1728), _X, domain=QQ), hp)

    G = _fit(disc, hp, value_at, check, hp.prec + 64)
    return GammaExpr(D, mode, G, hp)


def gamma3_poly(D) -> GammaExpr:
    """Exact G with G(j) = sqrt(D)*gamma3 (D odd) or sqrt(-D)*gamma3 (D = 4, 8 mod 16)."""
    return _gamma3(_disc(D).D)


def _chi4(n: int) -> int:
    return 1 if n % 4 == 1 else -1


@lru_cache(maxsize=None)
def _sqrt_d(D: int) -> QjPoly:
    disc = _disc(D)
    if D % 16 not in (0, 12):
        raise ModeError("sqrt(d) lies in Q(j) only for D = 0, 12 mod 16")
    hp = hilbert_class_poly(D)
    d = disc.d

    def value_at(form, w):
        A = odd_index_form(form)[0]
        return _chi4(A) * mpmath.sqrt(mpmath.mpf(d))

    def check(Q: QjPoly) -> bool:
        q = Q.to_sympy()
        return _is_zero_mod(q * q - Poly(d, _X, domain=QQ), hp)

    return _fit(disc, hp, value_at, check, hp.prec + 64)


def sqrt_d_poly(D) -> QjPoly:
    """Q in Q[x] with Q(j(tau_D)) = +sqrt(d), for D = 0, 12 mod 16.

    Used to locate i = sqrt(-d)/sqrt(d) in a residue field.
    """
    return _sqrt_d(_disc(D).D)


def root_of(hp: ClassPoly, j0: int, p: int) -> None:
    if hp.eval_mod(j0, p):
        raise NoRoot(f"j0={j0} is not a root of H_{hp.D} mod {p}")


def check_bound(D: int, max_h: int = MAX_CLASS_NUMBER) -> None:
    if class_number(D) > max_h:
        raise ResourceError(f"class number of {D} exceeds {max_h}")

