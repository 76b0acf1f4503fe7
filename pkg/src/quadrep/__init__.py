"""Representation numbers of ideals in real quadratic fields.

For an odd squarefree discriminant D > 1 the package computes, exactly,
the number of residues of a fractional ideal whose scaled norm hits a
given class modulo b, the quadratic Gauss sums that reconstruct those
counts, the character-weighted divisor sums attached to an ideal's genus,
and the Dirichlet series identity connecting all of them.
"""

from .arith import factorize, is_prime, kronecker
from .dirichlet import (
    SeriesEval,
    TheoremReport,
    residue_at_2,
    series_lhs,
    series_rhs,
    verify_theorem,
    zeta_truncated,
    l_truncated,
)
from .divisor import sigma_decomp, sigma_def, sigma_euler, sigma_vanishes
from .errors import (
    ConsistencyError,
    EnumerationBoundError,
    FactorizationBoundError,
    QuadrepError,
    RepresentativeSearchError,
)
from .gauss import classical_gauss, gauss_closed, gauss_direct
from .ideals import (
    FracIdeal,
    GenusFingerprint,
    PrimIdeal,
    PrimeIdeal,
    different_ideal,
    genus_fingerprint,
    genus_representatives,
    parse_ideal,
    prime_above,
    principal_ideal,
    unit_ideal,
)
from .quadfield import Discriminant, QuadElem, omega, sqrt_disc
from .repnum import g_rep, rep_count, rep_count_bruteforce, rep_from_gauss_dft

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "Discriminant",
    "EnumerationBoundError",
    "FactorizationBoundError",
    "FracIdeal",
    "GenusFingerprint",
    "PrimIdeal",
    "PrimeIdeal",
    "QuadElem",
    "QuadrepError",
    "RepresentativeSearchError",
    "SeriesEval",
    "TheoremReport",
    "classical_gauss",
    "different_ideal",
    "factorize",
    "g_rep",
    "gauss_closed",
    "gauss_direct",
    "genus_fingerprint",
    "genus_representatives",
    "is_prime",
    "kronecker",
    "l_truncated",
    "omega",
    "parse_ideal",
    "prime_above",
    "principal_ideal",
    "rep_count",
    "rep_count_bruteforce",
    "rep_from_gauss_dft",
    "residue_at_2",
    "series_lhs",
    "series_rhs",
    "sigma_decomp",
    "sigma_def",
    "sigma_euler",
    "sigma_vanishes",
    "sqrt_disc",
    "unit_ideal",
    "verify_theorem",
    "zeta_truncated",
    "__version__",
]
