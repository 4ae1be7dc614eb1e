"""Q-curve models over Q(j) with CM by the maximal order of Q(sqrt(-d)),
and their Hecke characters written with Jacobi symbols.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import QQ, Poly

from .bigarith import is_prime, jacobi, legendre, sqrt_mod_p
from .classfield import ClassPoly, QjPoly, gamma3_poly, hilbert_class_poly
from .counting import CurveFp, frobenius_trace, naive_count, prime_generator
from .counting.curve import NAIVE_LIMIT
from .epsilon import epsilon_tau
from .errors import InertPrime, InvalidArgument, PreconditionError, UnitGroupError
from .quadorder import QuadElem, disc_info

__all__ = ["QCurveModel", "qcurve_crosscheck", "qcurve_hecke", "qcurve_model"]

_X = sympy.Symbol("x")


def _check_d(d: int) -> None:
    if d <= 0 or sympy.factorint(d) and max(sympy.factorint(d).values()) > 1:
        raise InvalidArgument(f"d={d} must be a positive squarefree integer")
    if d % 4 not in (2, 3):
        raise PreconditionError(f"d={d}: models exist here only for d = 2, 3 mod 4")


def disc_of(d: int) -> int:
    return -d if d % 4 == 3 else -4 * d


@dataclass(frozen=True)
class QCurveModel:
    """y^2 = x^3 + a(j) x + b(j) with a, b in Q[j]/(H_D)."""

    d: int
    D: int
    a: QjPoly
    b: QjPoly
    H: ClassPoly

    def _reduce(self, poly: Poly) -> QjPoly:
        return QjPoly.from_sympy(poly.rem(self.H.to_sympy().set_domain(QQ)))

    def discriminant(self) -> QjPoly:
        a, b = self.a.to_sympy(), self.b.to_sympy()
        return self._reduce(-16 * (4 * a ** 3 + 27 * b ** 2))

    def expected_discriminant(self) -> QjPoly:
        sign = -1 if self.d % 2 else 1
        return self._reduce(Poly(sign * self.d ** 3 * _X ** 8, _X, domain=QQ))

    def discriminant_identity(self) -> bool:
        """Delta(E) == (-1)^d d^3 j^8 in Q[j]/H_D, exactly."""
        return self.discriminant() == self.expected_discriminant()

    def reduce(self, j0: int, p: int) -> CurveFp:
        return CurveFp(p, self.a.eval_mod(j0, p), self.b.eval_mod(j0, p))

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "D": self.D,
            "modulus": [str(c) for c in self.H.coeffs],
            "a": [str(c) for c in self.a.coeffs],
            "b": [str(c) for c in self.b.coeffs],
            "discriminant_identity": self.discriminant_identity(),
        }


def qcurve_model(d: int) -> QCurveModel:
    """The model a = +-d j^3/48, b = -d (radical*gamma3) j^4/864 over Q(j)."""
    _check_d(d)
    if d == 3:
        raise UnitGroupError("d = 3 gives j = 0; no model of this shape")
    D = disc_of(d)
    H = hilbert_class_poly(D)
    G = gamma3_poly(D).G.to_sympy()
    j = Poly(_X, _X, domain=QQ)
    if d % 4 == 3:
        # sqrt(-d) gamma3 = G(j)
        a = Poly(QQ(d, 48), _X, domain=QQ) * j ** 3
        b = -Poly(QQ(d, 864), _X, domain=QQ) * G * j ** 4
    else:
        # sqrt(d) gamma3 = G(j)/2
        a = -Poly(QQ(d, 48), _X, domain=QQ) * j ** 3
        b = -Poly(QQ(d, 1728), _X, domain=QQ) * G * j ** 4
    Hq = H.to_sympy().set_domain(QQ)
    return QCurveModel(d, D, QjPoly.from_sympy(a.rem(Hq)), QjPoly.from_sympy(b.rem(Hq)), H)


def _half(x) -> Fraction:
    f = Fraction(x)
    if (2 * f).denominator != 1:
        raise InvalidArgument(f"{x} is not a half-integer")
    return f


def qcurve_hecke(d: int, u, v) -> QuadElem:
    """psi(P) for lambda = u + v sqrt(-d), by the Jacobi-symbol formula."""
    _check_d(d)
    if d == 3:
        raise PreconditionError("the character formula needs d != 3")
    u, v = _half(u), _half(v)
    disc = disc_info(disc_of(d))
    lam = QuadElem.from_uv(disc, u, v)
    q = lam.norm()
    if q % 2 == 0:
        raise PreconditionError("lambda must be prime to 2")
    if d % 4 == 3:
        sign = jacobi(int(4 * u), d)
    else:
        u_int = int(u)
        e = (q - 1) * (q + d + 11) // 16 if d % 8 == 6 else (q - 1) * (q + d + 3) // 16
        sign = (-1) ** (e % 2) * jacobi(u_int, d // 2)
        if d % 8 == 2:
            sign *= (-1) ** (((u_int - 1) // 2) % 2)
    if sign == 0:
        raise PreconditionError(f"u={u} shares a factor with d={d}")
    return lam if sign == 1 else -lam


def qcurve_crosscheck(d: int, p: int) -> dict:
    """Compare three traces at every degree-1 prime above p.

    "main" runs the general trace formula on the reduced model, "sqrtd"
    uses the shortcut W = (s/p) available when beta = sqrt(-d), "jacobi"
    evaluates the closed character, and "oracle" is brute force (p < 10^7).
    """
    _check_d(d)
    if d == 3:
        raise PreconditionError("the character formula needs d != 3")
    if p <= 3 or not is_prime(p) or (2 * d) % p == 0:
        raise InvalidArgument(f"p={p} must be a prime > 3 not dividing 2d")
    if legendre(-d, p) != 1:
        raise InertPrime(f"p={p} is inert in Q(sqrt(-{d}))")
    model = qcurve_model(d)
    disc = disc_info(model.D)
    rows = []
    agree = True
    s0 = sqrt_mod_p(-d, p)
    for j0 in model.H.roots_mod(p):
        curve = model.reduce(j0, p)
        for s in (s0, p - s0):
            lam = prime_generator(disc, p, s)
            eps = epsilon_tau(disc, lam, 1)
            w = legendre(s, p)
            k = (eps + (0 if w == 1 else 2)) % 4
            if k % 2:
                raise PreconditionError("epsilon is not real on this order")
            t_sqrtd = lam.trace() * (1 if k == 0 else -1)
            t_main = frobenius_trace(disc, curve, (j0, s)).trace
            t_jac = qcurve_hecke(d, lam.u, lam.v).trace()
            t_orc = p + 1 - naive_count(curve) if p < NAIVE_LIMIT else None
            traces = {t_sqrtd, t_main, t_jac} | ({t_orc} if t_orc is not None else set())
            ok = len(traces) == 1
            agree &= ok
            rows.append({
                "j0": j0, "s": s, "lambda": str(lam), "epsilon": f"i^{eps}", "W": w,
                "trace_sqrtd": t_sqrtd, "trace_main": t_main, "trace_jacobi": t_jac,
                "trace_oracle": t_orc, "agree": ok,
            })
    return {"d": d, "p": p, "D": model.D, "agree": agree, "primes": rows}
