"""The homomorphism phi: SL2(Z/4) -> mu_4 and the derived maps delta, epsilon.

Values in mu_4 are returned as exponents k of i (0 <= k < 4).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .errors import InvalidArgument, UnitGroupError
from .quadorder import Discriminant, QuadElem, ResidueClass, disc_info

Mat = tuple[int, int, int, int]  # (a, b, c, d) for [[a, b], [c, d]] mod 4

IDENTITY: Mat = (1, 0, 0, 1)
T: Mat = (1, 1, 0, 1)


def mat(a, b, c, d) -> Mat:
    return (a % 4, b % 4, c % 4, d % 4)


def mul(M: Mat, N: Mat) -> Mat:
    a, b, c, d = M
    e, f, g, h = N
    return mat(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def det(M: Mat) -> int:
    return (M[0] * M[3] - M[1] * M[2]) % 4


def inverse(M: Mat) -> Mat:
    if det(M) != 1:
        raise InvalidArgument(f"{M} is not in SL2(Z/4)")
    a, b, c, d = M
    return mat(d, -b, -c, a)


@lru_cache(maxsize=None)
def sl2_z4() -> tuple[Mat, ...]:
    return tuple(M for M in product(range(4), repeat=4) if det(M) == 1)


@lru_cache(maxsize=None)
def commutator_subgroup() -> frozenset:
    G = sl2_z4()
    gens = {mul(mul(x, y), mul(inverse(x), inverse(y))) for x in G for y in G}
    C = {IDENTITY}
    frontier = list(C)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in C:
                    C.add(y)
                    new.append(y)
        frontier = new
    return frozenset(C)


def phi(M: Mat) -> int:
    """k with phi(M) = i^k, i.e. [[1, -k], [0, 1]] M lies in the commutator subgroup."""
    M = mat(*M)
    if det(M) != 1:
        raise InvalidArgument(f"det {M} != 1 mod 4")
    C = commutator_subgroup()
    for k in range(4):
        if mul(mat(1, -k, 0, 1), M) in C:
            return k
    raise AssertionError("SL2(Z/4)/C is not generated by T")


def _elem(disc: Discriminant, lam) -> QuadElem:
    if isinstance(lam, ResidueClass):
        lam = lam.lift()
    if not isinstance(lam, QuadElem):
        raise InvalidArgument(f"expected an order element, got {lam!r}")
    if lam.disc != disc:
        raise InvalidArgument("element belongs to a different order")
    if lam.norm() % 2 == 0:
        raise InvalidArgument(f"{lam} has even norm; not a unit mod 4")
    return lam


def q_matrix(disc: Discriminant, lam: QuadElem) -> tuple[int, int, int, int]:
    """Integer matrix of multiplication by lam on the basis (tau_D, 1)."""
    B, C = disc.tau_poly
    t = disc.tau_D.x
    # lam = g*tau_D + h
    g = lam.v2 if disc.odd else lam.v2 // 2
    h = lam.u - g * t
    assert h.denominator == 1
    h = int(h)
    return (h - B * g, -C * g, g, h)


def delta_tau(disc, lam, r_mod4: int = 1) -> int:
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    lam = _elem(disc, lam)
    if r_mod4 % 4 not in (1, 3):
        raise InvalidArgument("r must be odd")
    n_inv = lam.norm() % 4  # odd n is its own inverse mod 4
    a, b, c, d = q_matrix(disc, lam)
    k = phi(mat(a, b, n_inv * c, n_inv * d))
    return k if r_mod4 % 4 == 1 else (-k) % 4


def epsilon_tau(disc, lam, r_mod4: int = 1) -> int:
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    lam = _elem(disc, lam)
    k = delta_tau(disc, lam, r_mod4)
    if disc.D % 16 in (4, 8):
        k += (lam.norm() - 1) // 2
    return k % 4


def epsilon_table(disc) -> dict[ResidueClass, int]:
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    if disc.D in (-3, -4):
        raise UnitGroupError(f"D={disc.D} has unit group larger than +-1")
    return {c: epsilon_tau(disc, c) for c in disc.unit_classes(4)}


def format_table(disc) -> list[str]:
    disc = disc if isinstance(disc, Discriminant) else disc_info(disc)
    rows = []
    for c, k in epsilon_table(disc).items():
        row = f"{c.label()} → i^{k}"
        if disc.odd:
            row += f"    (λ^3 ≡ {(c ** 3).label()})"
        rows.append(row)
    return rows
