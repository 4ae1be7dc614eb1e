"""Closed-form Frobenius traces for CM curves at degree-1 primes.

Throughout, a prime of the ring class field with residue field F_p is
named by a pair (j0, s): j0 is the image of j(tau_D) (a root of H_D mod p)
and s is the image of sqrt(-d).  Every such pair names exactly one prime,
so the base point tau_D can be used for every root.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..bigarith import cornacchia, is_prime, legendre, power_residue_symbol, sqrt_mod_p
from ..classfield import gamma3_poly, hilbert_class_poly, sqrt_d_poly
from ..epsilon import epsilon_tau
from ..errors import (
    Inconsistency,
    InertPrime,
    InvalidArgument,
    NoRoot,
    PreconditionError,
    RamifiedPrime,
    SupersingularError,
    UnitGroupError,
)
from ..quadorder import Discriminant, QuadElem, disc_info
from .curve import CurveFp

__all__ = [
    "FrobeniusData",
    "branch_of",
    "count_1mod4",
    "count_special",
    "frobenius_trace",
    "gamma3_residue",
    "i_residue",
    "prime_generator",
]


@dataclass(frozen=True)
class FrobeniusData:
    """psi(P) = unit * lambda; trace = Tr(psi(P)); count = p + 1 - trace.

    ``epsilon`` and ``W`` are exponents: of i, or of zeta6 = exp(pi i/3)
    on the j0 branch (``root_order`` 6).
    """

    p: int
    lam: QuadElem
    epsilon: int
    W: int
    trace: int
    count: int
    branch: str
    root_order: int = 4
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.count != self.p + 1 - self.trace:
            raise Inconsistency("count and trace disagree")
        if self.trace * self.trace > 4 * self.p:
            raise Inconsistency(f"trace {self.trace} violates the Hasse bound for p={self.p}")

    def to_json(self) -> dict:
        u, v = self.lam.u, self.lam.v
        base = "i" if self.root_order == 4 else "zeta6"
        return {
            "lambda": [u.numerator, u.denominator, v.numerator, v.denominator],
            "epsilon": f"{base}^{self.epsilon}",
            "W": f"{base}^{self.W}",
            "trace": self.trace,
            "count": self.count,
            "branch": self.branch,
        }


def branch_of(D: int) -> str:
    if D % 2:
        return "odd"
    return "4or8" if D % 16 in (4, 8) else "0or12"


def _finish(p, lam, eps, W, branch, details) -> FrobeniusData:
    k = (eps + W) % 4
    if k % 2:
        raise Inconsistency(f"W*epsilon = i^{k} is not real; the (j0, s) data is inconsistent")
    trace = lam.trace() * (1 if k == 0 else -1)
    if trace % p == 0:
        raise SupersingularError(p)
    return FrobeniusData(p, lam, eps, W, trace, p + 1 - trace, branch, 4, details)


def prime_generator(disc: Discriminant, p: int, s: int) -> QuadElem:
    """lambda in O of norm p with lambda -> 0 under sqrt(-d) -> s."""
    u, v = cornacchia(disc.D, p)
    lam = QuadElem.from_uv(disc, u, v)
    if lam.image_mod(p, s):
        lam = lam.conj()
    if lam.image_mod(p, s):
        raise InvalidArgument(f"s={s} is not a square root of -{disc.d} mod {p}")
    return lam


def gamma3_residue(D: int, j0: int, s: int, p: int) -> int:
    """Image of gamma3 (D odd) or of i*gamma3 (D = 4, 8 mod 16) at the prime (j0, s).

    With G(j) = sqrt(D) gamma3 (odd) or sqrt(-D) gamma3 (even), and
    sqrt(D) = sqrt(-d) for odd D, i/sqrt(-D) = sqrt(-d)/(2d) for even D.
    """
    disc = disc_info(D)
    g = gamma3_poly(D).eval_mod(j0, p)
    if D % 2:
        return g * pow(s, -1, p) % p
    return g * s * pow(2 * disc.d, -1, p) % p


def i_residue(D: int, j0: int, s: int, p: int) -> int:
    """Image of i = sqrt(-d)/sqrt(d) at the prime (j0, s), for D = 0, 12 mod 16."""
    q = sqrt_d_poly(D).eval_mod(j0, p)
    if q == 0:
        raise PreconditionError(f"sqrt(d) vanishes mod {p}")
    return s * pow(q, -1, p) % p


def _check_prime(disc: Discriminant, p: int) -> None:
    if p <= 3 or not is_prime(p):
        raise InvalidArgument(f"p={p} must be a prime > 3")
    if disc.D % p == 0 or disc.f % p == 0:
        raise RamifiedPrime(f"p={p} divides D={disc.D}")


def frobenius_trace(disc, curve: CurveFp, embed: tuple[int, int] | None = None) -> FrobeniusData:
    """Trace of Frobenius of ``curve`` from lambda, epsilon and the residue symbol W."""
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    p = curve.p
    if disc.D in (-3, -4):
        raise UnitGroupError("use count_special for j = 0 and j = 1728")
    _check_prime(disc, p)
    if legendre(disc.D, p) != 1:
        raise InertPrime(f"p={p} is inert for D={disc.D}")
    if embed is None:
        j0, s = curve.j, sqrt_mod_p(-disc.d, p)
    else:
        j0, s = embed[0] % p, embed[1] % p
    if (s * s + disc.d) % p:
        raise InvalidArgument(f"s={s} is not a square root of -{disc.d} mod {p}")
    if curve.j != j0:
        raise InvalidArgument(f"curve has j={curve.j}, not j0={j0}")
    hp = hilbert_class_poly(disc.D)
    if hp.eval_mod(j0, p):
        raise NoRoot(f"j0={j0} is not a root of H_{disc.D} mod {p}")
    if j0 in (0, 1728 % p):
        raise PreconditionError(f"j0 = {j0} mod {p}: special j-invariant")

    lam = prime_generator(disc, p, s)
    eps = epsilon_tau(disc, lam, 1)
    b = curve.b
    branch = branch_of(disc.D)
    if branch == "odd":
        g3 = gamma3_residue(disc.D, j0, s, p)
        W = 0 if legendre(6 * b * g3, p) == 1 else 2
        details = {"gamma3": g3}
    elif branch == "4or8":
        ig3 = gamma3_residue(disc.D, j0, s, p)
        W = 0 if legendre(-6 * b * ig3, p) == 1 else 2
        details = {"i_gamma3": ig3}
    else:
        iota = i_residue(disc.D, j0, s, p)
        x = 36 * b * b * (j0 - 1728) % p
        y = pow(x, (p - 1) // 4, p)
        W = next((k for k in range(4) if pow(iota, k, p) == y), None)
        if W is None:
            raise Inconsistency("quartic symbol is not a power of the image of i")
        details = {"i": iota}
    details.update({"j0": j0, "s": s})
    return _finish(p, lam, eps, W, branch, details)


# -------------------------------------------------------------------------------------------------
# j = 1728 and j = 0


def _gauss_normalized(p: int) -> tuple[int, int]:
    """x + y i with x^2 + y^2 = p and x + y i = 1 mod (2 + 2i)."""
    x, y = cornacchia(-4, p)
    x, y = int(x), int(y)
    for _ in range(4):
        # (x - 1 + y i)(2 - 2i)/8 must be Gaussian-integral
        re, im = 2 * (x - 1) + 2 * y, 2 * y - 2 * (x - 1)
        if re % 8 == 0 and im % 8 == 0:
            return x, y
        x, y = -y, x
    raise AssertionError("no associate is 1 mod 2+2i")


def _eisenstein_normalized(p: int) -> tuple[int, int]:
    """(2u, 2v) for u + v sqrt(-3) of norm p with the element = 1 mod 3."""
    u, v = cornacchia(-3, p)
    u2, v2 = int(2 * u), int(2 * v)
    for _ in range(6):
        # (u + v sqrt(-3) - 1)/3 integral in Z[(1+sqrt(-3))/2]: 2u-2, 2v divisible by 3
        if (u2 - 2) % 3 == 0 and v2 % 3 == 0:
            return u2, v2
        # multiply by zeta6 = (1 + sqrt(-3))/2
        u2, v2 = (u2 - 3 * v2) // 2, (u2 + v2) // 2
    raise AssertionError("no associate is 1 mod 3")


def count_special(curve: CurveFp, which: str) -> FrobeniusData:
    """Counts for y^2 = x^3 - a x (which='j1728') and y^2 = x^3 + 16 b (which='j0')."""
    p = curve.p
    if p <= 3:
        raise InvalidArgument("p must exceed 3")
    if which == "j1728":
        if curve.b:
            raise InvalidArgument("j1728 branch needs a curve y^2 = x^3 - a x")
        if p % 4 != 1:
            raise PreconditionError(f"p={p} is not 1 mod 4")
        x, y = _gauss_normalized(p)
        disc = disc_info(-4)
        iota = -x * pow(y, -1, p) % p  # x + y*iota = 0
        a = -curve.a % p
        # express the symbol's residue as a power of the image of i
        g = power_residue_symbol(a, p, 4).residue
        k = next(m for m in range(4) if pow(iota, m, p) == g)
        lam = QuadElem(disc, 2 * x, 2 * y)
        # psi = i^(-k) * lambda
        psi = lam
        for _ in range((-k) % 4):
            psi = QuadElem(disc, -psi.v2, psi.u2)
        trace = psi.trace()
        return FrobeniusData(p, lam, 0, (-k) % 4, trace, p + 1 - trace, "j1728", 4,
                             {"i": iota, "a": a})
    if which == "j0":
        if curve.a:
            raise InvalidArgument("j0 branch needs a curve y^2 = x^3 + 16 b")
        if p % 3 != 1:
            raise PreconditionError(f"p={p} is not 1 mod 3")
        disc = disc_info(-3)
        u2, v2 = _eisenstein_normalized(p)
        # sqrt(-3) -> s with u + v s = 0
        s = -u2 * pow(v2, -1, p) % p
        zeta = (1 + s) * pow(2, -1, p) % p
        b = curve.b * pow(16, -1, p) % p
        g = power_residue_symbol(b, p, 6).residue
        k = next(m for m in range(6) if pow(zeta, m, p) == g)
        lam = QuadElem(disc, u2, v2)
        psi = lam
        for _ in range((-k) % 6):
            psi = QuadElem(disc, (psi.u2 - 3 * psi.v2) // 2, (psi.u2 + psi.v2) // 2)
        trace = psi.trace()
        return FrobeniusData(p, lam, 0, (-k) % 6, trace, p + 1 - trace, "j0", 6,
                             {"zeta6": zeta, "b": b})
    raise InvalidArgument(f"unknown special branch {which!r}")


# -------------------------------------------------------------------------------------------------
# p = 1 mod 4


def _normalize_1mod4(disc: Discriminant, p: int) -> QuadElem:
    u, v = cornacchia(disc.D, p)
    lam = QuadElem.from_uv(disc, u, v)
    D = disc.D
    if D % 2:
        c = (lam ** 3).reduce(4)
        one = disc.one().reduce(4)
        if c == one:
            return lam
        if c == (-disc.one()).reduce(4):
            return -lam
        raise Inconsistency("lambda^3 is not +-1 mod 4")
    # sqrt(D) = 2 sqrt(-d)
    sqrtD = QuadElem(disc, 0, 4)
    if D % 16 == 4:
        # The count needs epsilon(lambda) = i^((p-1)/2), which by the epsilon table means
        # lambda = 1 or 1 + sqrt(D) mod 4, with no extra (-1)^((p-1)/4) twist: that sign
        # gives the twist's count whenever p = 5 mod 8.
        targets = {disc.one().reduce(4), (disc.one() + sqrtD).reduce(4)}
        for cand in (lam, -lam):
            if cand.reduce(4) in targets:
                assert epsilon_tau(disc, cand) == ((p - 1) // 2) % 4
                return cand
    else:
        targets = {disc.one().reduce(4), (sqrtD - 1).reduce(4)}
        for cand in (lam, -lam):
            if cand.reduce(4) in targets:
                return cand
    raise Inconsistency(f"no sign of lambda meets the normalization for D={D}")


def count_1mod4(disc, curve: CurveFp) -> FrobeniusData:
    """p + 1 - 2 (Delta/p)_4 u for p = 1 mod 4 and D odd or D = 4, 8 mod 16."""
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    p, D = curve.p, disc.D
    if p % 4 != 1:
        raise PreconditionError(f"p={p} is not 1 mod 4")
    if D == -3 or not (D % 2 or D % 16 in (4, 8)):
        raise PreconditionError(f"D={D}: need D odd (not -3) or D = 4, 8 mod 16")
    _check_prime(disc, p)
    if legendre(D, p) != 1:
        raise InertPrime(f"p={p} is inert for D={D}")
    if hilbert_class_poly(D).eval_mod(curve.j, p):
        raise NoRoot(f"curve j-invariant is not a root of H_{D} mod {p}")
    delta = curve.discriminant
    if legendre(delta, p) != 1:
        raise Inconsistency(f"discriminant {delta} is not a square mod {p}")
    quartic = 1 if pow(delta, (p - 1) // 4, p) == 1 else -1
    lam = _normalize_1mod4(disc, p)
    u = lam.u
    assert u.denominator == 1 or D % 2
    trace2 = 2 * quartic * u
    trace = int(trace2)
    if trace % p == 0:
        raise SupersingularError(p)
    return FrobeniusData(p, lam, 0, 0 if quartic == 1 else 2, trace, p + 1 - trace, "onemod4", 4,
                         {"quartic": quartic, "u": str(u)})

