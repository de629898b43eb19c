"""dbflab: characters of boson-fermion diagonal coinvariants, computed two ways.

One route evaluates the universal formula E_n[q - eps*u] and the closed
formulas built on Macdonald operators; the other computes the quotient ring
directly by linear algebra (:mod:`dbflab.oracle`).
"""
from .mpoly import MFrac, MPoly
from .partitions import Partition, format_partition, parse_partition, partitions_of
from .symfunc import SymFunc, e, h, m, p, s

__version__ = "0.1.0"

__all__ = [
    "MFrac",
    "MPoly",
    "Partition",
    "SymFunc",
    "e",
    "format_partition",
    "h",
    "m",
    "p",
    "parse_partition",
    "partitions_of",
    "s",
]
