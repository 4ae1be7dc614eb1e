"""CM method: a curve over F_p with a prescribed trace, plus a certificate."""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..bigarith import legendre, sqrt_mod_p
from ..classfield import hilbert_class_poly
from ..errors import Inconsistency, InertPrime, Infeasible, InvalidArgument, NoRoot, UnitGroupError
from ..quadorder import Discriminant, disc_info, good_generator
from .curve import NAIVE_LIMIT, CurveFp, naive_count
from .formulas import FrobeniusData, frobenius_trace

__all__ = ["Certificate", "cm_construct", "order_certificate"]

ORACLE_LIMIT = 10**4


@dataclass(frozen=True)
class Certificate:
    count: int
    points_checked: int
    seed: int
    oracle_count: int | None

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "random_points": self.points_checked,
            "seed": self.seed,
            "oracle_count": self.oracle_count,
        }


def order_certificate(curve: CurveFp, n: int, points: int = 20, seed: int = 0) -> int:
    """Check [n]P = O for ``points`` seeded random points; returns the number checked."""
    rng = random.Random(seed)
    for _ in range(points):
        P = curve.random_point(rng)
        if curve.mul(n, P) is not None:
            raise Inconsistency(f"[{n}]P != O for P={P} on {curve}")
    return points


def cm_construct(disc, p: int, *, trace: int | None = None, count: int | None = None,
                 seed: int = 0, points: int = 20, oracle_limit: int = ORACLE_LIMIT
                 ) -> tuple[CurveFp, FrobeniusData, Certificate]:
    """Curve over F_p with CM by the order of ``disc`` and the requested trace or count."""
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    if (trace is None) == (count is None):
        raise InvalidArgument("give exactly one of trace and count")
    if disc.D in (-3, -4):
        raise UnitGroupError("construction is implemented for D other than -3, -4")
    if legendre(disc.D, p) != 1:
        raise InertPrime(f"p={p} does not split for D={disc.D}")
    t = trace if trace is not None else p + 1 - count
    if t * t > 4 * p:
        raise Infeasible(f"trace {t} exceeds the Hasse bound for p={p}")
    # H_D splits into linear factors mod p exactly when p is principal
    roots = [r for r in hilbert_class_poly(disc.D).roots_mod(p) if r not in (0, 1728 % p)]
    if not roots:
        raise NoRoot(f"H_{disc.D} has no usable root mod {p}")
    lam = good_generator(disc, p)
    if abs(t) != abs(lam.trace()):
        raise Infeasible(f"trace {t} is not +-{abs(lam.trace())} for D={disc.D}, p={p}")
    j0 = roots[0]
    s = sqrt_mod_p(-disc.d, p)
    k = 1728 - j0
    curve = CurveFp(p, 3 * j0 * k, 2 * j0 * k * k)
    fd = frobenius_trace(disc, curve, (j0, s))
    if fd.trace != t:
        curve = curve.quadratic_twist()
        fd = frobenius_trace(disc, curve, (j0, s))
    if fd.trace != t:
        raise Inconsistency("twisting did not produce the requested trace")
    n = p + 1 - t
    checked = order_certificate(curve, n, points, seed)
    oracle = None
    if p < min(oracle_limit, NAIVE_LIMIT):
        oracle = naive_count(curve)
        if oracle != n:
            raise Inconsistency(f"oracle count {oracle} != {n}")
    return curve, fd, Certificate(n, checked, seed, oracle)
