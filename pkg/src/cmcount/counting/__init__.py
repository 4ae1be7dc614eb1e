"""Point counting: closed formulas, the brute-force oracle, and CM construction."""
from .curve import NAIVE_LIMIT, CurveFp, naive_count
from .formulas import (
    FrobeniusData,
    count_1mod4,
    count_special,
    frobenius_trace,
    gamma3_residue,
    i_residue,
    prime_generator,
)

__all__ = [
    "NAIVE_LIMIT",
    "CurveFp",
    "FrobeniusData",
    "count_1mod4",
    "count_special",
    "frobenius_trace",
    "gamma3_residue",
    "i_residue",
    "naive_count",
    "prime_generator",
]

from .construct import Certificate, cm_construct, order_certificate  # noqa: E402

__all__ += ["Certificate", "cm_construct", "order_certificate"]
