"""Short Weierstrass curves over F_p and the brute-force point counter."""
from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..bigarith import is_prime, legendre, sqrt_mod_p
from ..errors import InvalidArgument, ResourceError

__all__ = ["CurveFp", "naive_count", "NAIVE_LIMIT"]

NAIVE_LIMIT = 10**7

Point = tuple[int, int] | None  # None is the point at infinity


@dataclass(frozen=True)
class CurveFp:
    """y^2 = x^3 + a x + b over F_p."""

    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise InvalidArgument(f"p={self.p} is not an odd prime")
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        # in characteristic 3 the short model's discriminant vanishes identically,
        # so p = 3 inputs are accepted unchecked (oracle use only)
        if self.p > 3 and (4 * self.a ** 3 + 27 * self.b ** 2) % self.p == 0:
            raise InvalidArgument(f"singular curve: 4a^3 + 27b^2 = 0 mod {self.p}")

    @property
    def discriminant(self) -> int:
        return -16 * (4 * self.a ** 3 + 27 * self.b ** 2) % self.p

    @property
    def j(self) -> int:
        p = self.p
        if p == 3:
            raise InvalidArgument("j is not defined by the short model in characteristic 3")
        num = 1728 * 4 * pow(self.a, 3, p)
        return num * pow(4 * self.a ** 3 + 27 * self.b ** 2, -1, p) % p

    def twist(self, c: int) -> "CurveFp":
        """y^2 = x^3 + c^2 a x + c^3 b."""
        if c % self.p == 0:
            raise InvalidArgument("twist parameter must be nonzero")
        return CurveFp(self.p, self.a * c * c, self.b * c ** 3)

    def nonresidue(self) -> int:
        c = 2
        while legendre(c, self.p) != -1:
            c += 1
        return c

    def quadratic_twist(self) -> "CurveFp":
        return self.twist(self.nonresidue())

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p

    def contains(self, P: Point) -> bool:
        if P is None:
            return True
        x, y = P
        return (y * y - self.rhs(x)) % self.p == 0

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        p = self.p
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            m = (3 * x1 * x1 + self.a) * pow(2 * y1, -1, p) % p
        else:
            m = (y2 - y1) * pow(x2 - x1, -1, p) % p
        x3 = (m * m - x1 - x2) % p
        return x3, (m * (x1 - x3) - y1) % p

    def mul(self, n: int, P: Point) -> Point:
        if n < 0:
            n, P = -n, (None if P is None else (P[0], -P[1] % self.p))
        R: Point = None
        while n:
            if n & 1:
                R = self.add(R, P)
            P = self.add(P, P)
            n >>= 1
        return R

    def random_point(self, rng: random.Random) -> Point:
        while True:
            x = rng.randrange(self.p)
            f = self.rhs(x)
            if f == 0:
                return x, 0
            if legendre(f, self.p) == 1:
                y = sqrt_mod_p(f, self.p)
                return x, y if rng.random() < 0.5 else self.p - y

    def __str__(self) -> str:
        return f"y^2 = x^3 + {self.a}x + {self.b} over F_{self.p}"


def naive_count(curve: CurveFp) -> int:
    """p + 1 + sum_x (x^3 + ax + b | p), vectorised over all x."""
    p = curve.p
    if p >= NAIVE_LIMIT:
        raise ResourceError(f"naive count is limited to p < {NAIVE_LIMIT}")
    x = np.arange(p, dtype=np.int64)
    f = (x * x % p * x + curve.a * x + curve.b) % p
    chi = -np.ones(p, dtype=np.int64)
    chi[x * x % p] = 1
    chi[0] = 0
    return p + 1 + int(chi[f].sum())
