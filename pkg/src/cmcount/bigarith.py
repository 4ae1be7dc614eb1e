"""Integer and modular arithmetic: residue symbols, square roots mod p,
and the norm equation u^2 + d v^2 = p in imaginary quadratic orders.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from sympy import isprime

from .errors import (
    InertPrime,
    InvalidArgument,
    NonPrincipal,
    NonresidueError,
    PreconditionError,
    RamifiedPrime,
    ResourceError,
    ZeroArgument,
)

__all__ = [
    "SymbolValue",
    "cornacchia",
    "is_prime",
    "jacobi",
    "legendre",
    "norm_equation_search",
    "power_residue_symbol",
    "primitive_root_of_unity",
    "sqrt_mod_p",
]


def is_prime(n: int) -> bool:
    return n >= 2 and bool(isprime(n))


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n <= 0 or n % 2 == 0:
        raise InvalidArgument(f"Jacobi symbol needs odd positive modulus, got {n}")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def legendre(a: int, p: int) -> int:
    # primality of p is the caller's business; this sits in hot loops
    return jacobi(a, p)


def _require_odd_prime(p: int) -> None:
    if p < 3 or not is_prime(p):
        raise InvalidArgument(f"expected an odd prime, got {p}")


@lru_cache(maxsize=None)
def primitive_root_of_unity(p: int, n: int) -> int:
    """Smallest g in [1, p) of multiplicative order exactly n modulo p."""
    if (p - 1) % n:
        raise PreconditionError(f"p={p} is not 1 mod {n}")
    prime_factors = [q for q in (2, 3, 5, 7) if n % q == 0]
    if any(not is_prime(q) for q in prime_factors) or n > 6:
        raise InvalidArgument(f"unsupported root-of-unity order {n}")
    e = (p - 1) // n
    for h in range(1, p):
        g = pow(h, e, p)
        if all(pow(g, n // q, p) != 1 for q in prime_factors):
            return g
    raise AssertionError("unreachable: F_p^* is cyclic")


@dataclass(frozen=True)
class SymbolValue:
    """An n-th root of unity in F_p, stored as root**k for the fixed
    primitive root ``primitive_root_of_unity(p, n)``."""

    k: int
    n: int
    p: int

    def __post_init__(self):
        if self.n not in (2, 3, 4, 6) or not 0 <= self.k < self.n:
            raise InvalidArgument(f"bad symbol value exponent {self.k} for n={self.n}")

    @property
    def residue(self) -> int:
        if self.n == 2:
            return 1 if self.k == 0 else self.p - 1
        return pow(primitive_root_of_unity(self.p, self.n), self.k, self.p)

    def __int__(self) -> int:
        """Signed integer value; only meaningful when the value is +-1."""
        r = self.residue
        if r == 1:
            return 1
        if r == self.p - 1:
            return -1
        raise ValueError(f"symbol value {self} is not +-1")


def power_residue_symbol(a: int, p: int, n: int) -> SymbolValue:
    """The unique n-th root of unity congruent to a^((p-1)/n) mod p."""
    _require_odd_prime(p)
    if n not in (2, 3, 4, 6):
        raise InvalidArgument(f"power residue symbol of order {n} not supported")
    if a % p == 0:
        raise ZeroArgument(f"{a} is divisible by {p}")
    if (p - 1) % n:
        raise PreconditionError(f"p={p} is not 1 mod {n}")
    if n == 2:
        return SymbolValue(0 if legendre(a, p) == 1 else 1, 2, p)
    x = pow(a, (p - 1) // n, p)
    g = primitive_root_of_unity(p, n)
    y = 1
    for k in range(n):
        if y == x:
            return SymbolValue(k, n, p)
        y = y * g % p
    raise AssertionError("a^((p-1)/n) is not an n-th root of unity")


def sqrt_mod_p(a: int, p: int) -> int:
    """Smaller square root of a modulo the odd prime p (Tonelli-Shanks)."""
    if p != 2:
        _require_odd_prime(p)  # a composite modulus would loop forever below
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    ls = legendre(a, p)
    if ls != 1:
        raise NonresidueError(a, p, ls)
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def _to_element(D: int, x: int, y: int) -> tuple[Fraction, Fraction]:
    # x^2 + |D| y^2 = 4p  <=>  lambda = (x + y sqrt(D))/2
    if D % 2:
        return Fraction(x, 2), Fraction(y, 2)
    return Fraction(x, 2), Fraction(y)


def cornacchia(D: int, p: int) -> tuple[Fraction, Fraction]:
    """Solve N(u + v sqrt(-d)) = p in the order of discriminant D.

    Returns (u, v) with u > 0 and v > 0. Raises ``InertPrime``,
    ``RamifiedPrime`` or ``NonPrincipal`` when no principal solution exists.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise InvalidArgument(f"not a negative discriminant: {D}")
    _require_odd_prime(p)
    if D % p == 0:
        raise RamifiedPrime(f"p={p} divides D={D}")
    if legendre(D, p) != 1:
        raise InertPrime(f"p={p} is inert for D={D}")
    r = sqrt_mod_p(D, p)
    if (r - D) % 2:
        r = p - r
    a, b = 2 * p, r
    bound = isqrt(4 * p)
    while b > bound:
        a, b = b, a % b
    c, rem = divmod(4 * p - b * b, -D)
    y = isqrt(c) if rem == 0 and c > 0 else -1
    if y < 0 or y * y != c:
        raise NonPrincipal(f"p={p} splits for D={D} but is not represented by the principal form")
    return _to_element(D, b, y)


def norm_equation_search(D: int, p: int, limit: int = 10**6):
    """Exhaustive search for x^2 + |D| y^2 = 4p; None if unsolvable.

    Independent of ``cornacchia``; used to cross-check it.
    """
    if p >= limit:
        raise ResourceError(f"exhaustive search capped at p < {limit}")
    for y in range(1, isqrt(4 * p // -D) + 1):
        x2 = 4 * p + D * y * y
        x = isqrt(x2)
        if x * x == x2 and (x - y * D) % 2 == 0:
            return _to_element(D, x, y)
    return None
