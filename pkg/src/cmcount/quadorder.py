"""Imaginary quadratic orders.

Elements are written u + v*sqrt(-d) with the positive integer d attached to
the discriminant D (d = -D for odd D, d = -D/4 for even D).  The order of
discriminant D is Z[omega] with omega = (1 + sqrt(-d))/2 for odd D and
omega = sqrt(-d) for even D; residue classes are stored in the basis
{1, omega}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import factorint

from . import bigarith
from .errors import InvalidArgument, InvalidDiscriminant, OddIndexError

__all__ = [
    "CmPoint",
    "Discriminant",
    "QuadElem",
    "QuadNumber",
    "ResidueClass",
    "disc_info",
    "good_generator",
    "odd_index_form",
    "tau_from_ideal",
    "weierstrass_disc",
]


def _split_square(n: int) -> tuple[int, int]:
    """n = c^2 * m with m squarefree (sign kept on m)."""
    c, m = 1, -1 if n < 0 else 1
    for q, e in factorint(abs(n)).items():
        c *= q ** (e // 2)
        m *= q ** (e % 2)
    return c, m


@dataclass(frozen=True)
class Discriminant:
    D: int
    d: int
    f: int
    D0: int

    @property
    def klass16(self) -> int:
        return self.D % 16

    @property
    def klass32(self) -> int:
        return self.D % 32

    @property
    def odd(self) -> bool:
        return self.D % 2 == 1

    @property
    def fundamental(self) -> bool:
        return self.f == 1

    @property
    def tau_D(self) -> "QuadNumber":
        """Base point with Z + Z*tau_D equal to the order."""
        D, d = self.D, self.d
        if D % 8 == 1:
            return QuadNumber(Fraction(-3, 2), Fraction(1, 2), -d)
        if D % 8 == 5:
            return QuadNumber(Fraction(3, 2), Fraction(1, 2), -d)
        if D % 32 in (4, 8):
            return QuadNumber(Fraction(3), Fraction(1), -d)
        return QuadNumber(Fraction(0), Fraction(1), -d)

    @property
    def z_d(self) -> "QuadNumber":
        """Base point for maximal orders with d = 2, 3 mod 4."""
        if not self.fundamental or self.d % 4 not in (2, 3):
            raise InvalidDiscriminant(f"z_d is defined for squarefree d = 2, 3 mod 4, not d={self.d}")
        return self.tau_D

    @property
    def tau_poly(self) -> tuple[int, int]:
        """(B, C) with tau_D^2 + B tau_D + C = 0."""
        t = self.tau_D
        B = -2 * t.x
        C = t.x * t.x + self.d * t.y * t.y
        assert B.denominator == 1 and C.denominator == 1
        return int(B), int(C)

    def element(self, u, v) -> "QuadElem":
        return QuadElem.from_uv(self, u, v)

    def one(self) -> "QuadElem":
        return QuadElem(self, 2, 0)

    def omega(self) -> "QuadElem":
        return QuadElem(self, 1, 1) if self.odd else QuadElem(self, 0, 2)

    def unit_classes(self, m: int = 4) -> list["ResidueClass"]:
        """All classes of (O/mO)^x for m a power of 2, in (a, b) order."""
        out = []
        for a in range(m):
            for b in range(m):
                c = ResidueClass(self, a, b, m)
                if c.norm() % 2:
                    out.append(c)
        return out

    def __str__(self) -> str:
        return f"D={self.D}"


@lru_cache(maxsize=None)
def disc_info(D: int) -> Discriminant:
    if not isinstance(D, int) or D >= 0 or D % 4 not in (0, 1):
        raise InvalidDiscriminant(f"D must be a negative integer = 0, 1 mod 4, got {D}")
    c, m = _split_square(D)
    if m % 4 == 1:
        D0, f = m, c
    else:
        D0, f = 4 * m, c // 2
    d = -D if D % 2 else -D // 4
    return Discriminant(D, d, f, D0)


def _as_disc(disc) -> Discriminant:
    return disc if isinstance(disc, Discriminant) else disc_info(disc)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidArgument(f"expected an exact rational, got {x!r}")


@dataclass(frozen=True)
class QuadNumber:
    """x + y*sqrt(m) in Q(sqrt(m)), m squarefree or any nonsquare integer."""

    x: Fraction
    y: Fraction
    m: int

    def __post_init__(self):
        object.__setattr__(self, "x", _frac(self.x))
        object.__setattr__(self, "y", _frac(self.y))

    def _coerce(self, other) -> "QuadNumber":
        if isinstance(other, QuadNumber):
            if other.m != self.m:
                raise InvalidArgument("mixed quadratic fields")
            return other
        return QuadNumber(_frac(other), Fraction(0), self.m)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadNumber(self.x + o.x, self.y + o.y, self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.x, -self.y, self.m)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadNumber(self.x * o.x + self.m * self.y * o.y, self.x * o.y + self.y * o.x, self.m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = QuadNumber(1, 0, self.m)
        for _ in range(n):
            out = out * self
        return out

    def conj(self):
        return QuadNumber(self.x, -self.y, self.m)

    def norm(self) -> Fraction:
        return self.x * self.x - self.m * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        num = self * o.conj()
        return QuadNumber(num.x / n, num.y / n, self.m)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except InvalidArgument:
            return NotImplemented
        return self.x == o.x and self.y == o.y

    def __hash__(self):
        return hash((self.x, self.y, self.m))

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        sign = "+" if self.y > 0 else "-"
        return f"{self.x} {sign} {abs(self.y)}*sqrt({self.m})"


def weierstrass_disc(a1, a2, a3, a4, a6):
    """Discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    Coefficients may be ints, Fractions or QuadNumbers over one field.
    """
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6


@dataclass(frozen=True)
class QuadElem:
    """u + v*sqrt(-d) in the order of ``disc``, stored as (2u, 2v)."""

    disc: Discriminant
    u2: int
    v2: int

    def __post_init__(self):
        if self.disc.odd:
            if (self.u2 - self.v2) % 2:
                raise InvalidArgument("not in the order: 2u and 2v must have equal parity")
        elif self.u2 % 2 or self.v2 % 2:
            raise InvalidArgument("not in the order: u and v must be integers")

    @classmethod
    def from_uv(cls, disc, u, v) -> "QuadElem":
        u, v = _frac(u) * 2, _frac(v) * 2
        if u.denominator != 1 or v.denominator != 1:
            raise InvalidArgument("coordinates must be half-integers")
        return cls(_as_disc(disc), int(u), int(v))

    @classmethod
    def from_basis(cls, disc, a: int, b: int) -> "QuadElem":
        """a + b*omega."""
        disc = _as_disc(disc)
        if disc.odd:
            return cls(disc, 2 * a + b, b)
        return cls(disc, 2 * a, 2 * b)

    @property
    def u(self) -> Fraction:
        return Fraction(self.u2, 2)

    @property
    def v(self) -> Fraction:
        return Fraction(self.v2, 2)

    @property
    def basis_coords(self) -> tuple[int, int]:
        if self.disc.odd:
            return (self.u2 - self.v2) // 2, self.v2
        return self.u2 // 2, self.v2 // 2

    def _check(self, other: "QuadElem") -> None:
        if other.disc != self.disc:
            raise InvalidArgument(f"mixed discriminants {self.disc.D} and {other.disc.D}")

    def _lift(self, other) -> "QuadElem":
        if isinstance(other, int):
            return QuadElem(self.disc, 2 * other, 0)
        if isinstance(other, QuadElem):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.disc, self.u2 + o.u2, self.v2 + o.v2)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.disc, -self.u2, -self.v2)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self.disc.d
        u4 = self.u2 * o.u2 - d * self.v2 * o.v2
        v4 = self.u2 * o.v2 + self.v2 * o.u2
        return QuadElem(self.disc, u4 // 2, v4 // 2)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidArgument("negative powers leave the order")
        out, base = self.disc.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "QuadElem":
        return QuadElem(self.disc, self.u2, -self.v2)

    def norm(self) -> int:
        n4 = self.u2 * self.u2 + self.disc.d * self.v2 * self.v2
        return n4 // 4

    def trace(self) -> int:
        return self.u2

    def reduce(self, m: int = 4) -> "ResidueClass":
        a, b = self.basis_coords
        return ResidueClass(self.disc, a % m, b % m, m)

    def image_mod(self, p: int, s: int) -> int:
        """Image in F_p under sqrt(-d) -> s."""
        return (self.u2 + self.v2 * s) * pow(2, -1, p) % p

    def __str__(self) -> str:
        return _format_uv(self.u, self.v)


def _format_uv(u: Fraction, v: Fraction) -> str:
    if v == 0:
        return str(u)
    head = "" if u == 0 else str(u)
    if v == 1:
        tail = "√-d"
    elif v == -1:
        tail = "-√-d"
    else:
        tail = f"{v}√-d"
    if head and not tail.startswith("-"):
        tail = "+" + tail
    return head + tail


@dataclass(frozen=True)
class ResidueClass:
    """Class of a + b*omega modulo m*O."""

    disc: Discriminant
    a: int
    b: int
    m: int = 4

    def __post_init__(self):
        object.__setattr__(self, "a", self.a % self.m)
        object.__setattr__(self, "b", self.b % self.m)

    def lift(self) -> QuadElem:
        """Representative with basis coordinates in (-m/2, m/2]."""
        def sym(x):
            return x - self.m if x > self.m // 2 else x
        return QuadElem.from_basis(self.disc, sym(self.a), sym(self.b))

    def norm(self) -> int:
        return self.lift().norm() % self.m

    def __mul__(self, other: "ResidueClass") -> "ResidueClass":
        if other.disc != self.disc or other.m != self.m:
            raise InvalidArgument("mixed residue rings")
        return (self.lift() * other.lift()).reduce(self.m)

    def __neg__(self):
        return ResidueClass(self.disc, -self.a, -self.b, self.m)

    def __pow__(self, n: int):
        return (self.lift() ** n).reduce(self.m)

    def label(self) -> str:
        """u + v*sqrt(-d) form with small coordinates."""
        if self.disc.odd:
            # prefer integral u, v when the class contains such an element
            best = None
            for a in range(-2, 3):
                for b in range(-2, 3):
                    if (a - self.a) % self.m or (b - self.b) % self.m:
                        continue
                    e = QuadElem.from_basis(self.disc, a, b)
                    key = (e.u.denominator, abs(e.v), abs(e.u), -e.u, -e.v)
                    if best is None or key < best[0]:
                        best = (key, e)
            return str(best[1])
        return str(self.lift())

    def __str__(self) -> str:
        return self.label()


def good_generator(disc, p: int) -> QuadElem:
    """Generator in O of a degree-1 prime above p (sign not normalized)."""
    disc = _as_disc(disc)
    if p == 2 or (disc.D * disc.f) % p == 0:
        raise InvalidArgument(f"p={p} must not divide 2*D*f")
    u, v = bigarith.cornacchia(disc.D, p)
    lam = QuadElem.from_uv(disc, u, v)
    assert lam.norm() == p
    return lam


def odd_index_form(form: tuple[int, int, int]) -> tuple[int, int, int]:
    """A properly equivalent form whose first coefficient is odd."""
    A, B, C = form
    if A % 2:
        return form
    if C % 2:
        return (C, -B, A)
    # A, C even forces B odd; shift x -> x + y then swap
    return (A + B + C, -(2 * A + B), A)


@dataclass(frozen=True)
class CmPoint:
    """tau = r*tau_D + s with rational r > 0 and s."""

    r: Fraction
    s: Fraction
    disc: Discriminant = field(compare=True)

    @property
    def value(self) -> QuadNumber:
        return self.disc.tau_D * self.r + self.s

    @property
    def r_mod4(self) -> int:
        """r as a 2-adic unit modulo 4."""
        num, den = self.r.numerator, self.r.denominator
        if num % 2 == 0 or den % 2 == 0:
            raise InvalidArgument("r is not a 2-adic unit")
        return num * pow(den, -1, 4) % 4

    def min_poly(self) -> tuple[int, int, int]:
        """Primitive (A, B, C) with A tau^2 + B tau + C = 0, A > 0."""
        t = self.value
        tr, nm = t.trace(), t.norm()
        den = tr.denominator * nm.denominator // gcd(tr.denominator, nm.denominator)
        A, B, C = den, int(-tr * den), int(nm * den)
        g = gcd(gcd(A, B), C)
        return A // g, B // g, C // g

    def lattice_disc(self) -> int:
        """Discriminant of the multiplier ring of Z + Z*tau."""
        A, B, C = self.min_poly()
        return B * B - 4 * A * C

    def to_mpc(self):
        import mpmath

        t = self.value
        return mpmath.mpc(mpmath.mpf(t.x.numerator) / t.x.denominator,
                          mpmath.sqrt(self.disc.d) * mpmath.mpf(t.y.numerator) / t.y.denominator)


def tau_from_ideal(disc, form: tuple[int, int, int]) -> CmPoint:
    """tau = r*tau_D + s, r = 1 (mod 2), s = 0 (mod 4), j(tau) = j(form).

    The form's root (-B + sqrt(D))/(2A) spans, with 1, a lattice homothetic
    to the ideal A*Z + ((-B + sqrt(D))/2)*Z of index A, which is rewritten
    in the basis {A, tau_D + c}.
    """
    disc = _as_disc(disc)
    A, B, C = form
    if B * B - 4 * A * C != disc.D:
        raise InvalidArgument(f"form {form} does not have discriminant {disc.D}")
    if A <= 0:
        raise InvalidArgument("form must be positive definite")
    if gcd(gcd(A, B), C) != 1:
        raise InvalidArgument(f"form {form} is not primitive")
    if A % 2 == 0:
        raise OddIndexError(f"form {form} has even leading coefficient; use odd_index_form")
    # both parities: (-B + sqrt(D))/2 = tau_D + (-B/2 - Re tau_D)
    c = Fraction(-B, 2) - disc.tau_D.x
    assert c.denominator == 1
    c = int(c)
    # shift c by a multiple of A so that 4 | c, choosing the smallest |c|
    k = (-c * pow(A, -1, 4)) % 4
    c4 = c + k * A
    c4 -= 4 * A * round(Fraction(c4, 4 * A))
    return CmPoint(Fraction(1, A), Fraction(c4, A), disc)


def multiplier_disc_of_tau_D(disc) -> int:
    disc = _as_disc(disc)
    return CmPoint(Fraction(1), Fraction(0), disc).lattice_disc()

