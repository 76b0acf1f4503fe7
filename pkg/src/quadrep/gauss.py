"""Quadratic Gauss sums attached to ideal norm forms, carried exactly.

A sum over lambda in ideal/(b*ideal) of e(a*N(lambda)/(b*N(ideal))) is stored
as the integer vector counting how often each exponent t/b occurs; floating
point only enters when a vector or closed form is evaluated to a complex
number for comparison.  Closed forms at prime powers split into a rational
value and a "ramified" value coeff * eps(p) * sqrt(p).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, sqrt

import numpy as np

from .arith import eps, is_prime, kronecker, rational_legendre, valuation
from .ideals import FracIdeal, coprime_to, residue_norm_profile


@dataclass(frozen=True)
class ExponentVector:
    """Integer counts: counts[t] copies of e(t/b).

    A vector built from a full residue enumeration has sum(counts) = b^2.
    """

    b: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.b < 1 or len(self.counts) != self.b:
            raise ValueError("counts must have length b >= 1")


@dataclass(frozen=True)
class ExactGaussValue:
    """Closed Gauss sum value.

    kind "rational" means the value is coeff; kind "ramified" means
    coeff * eps(p) * sqrt(p) with p the odd modulus carried alongside.
    """

    kind: str
    coeff: Fraction
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("rational", "ramified"):
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.kind == "ramified" and (self.p is None or self.p <= 0 or self.p % 2 == 0):
            raise ValueError("ramified values need an odd positive modulus")

    def as_complex(self) -> complex:
        if self.kind == "rational":
            return complex(self.coeff)
        return complex(self.coeff) * eps(self.p) * sqrt(self.p)


def _roots_of_unity(b: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(b) / b)


def eval_complex(vec: ExponentVector) -> complex:
    """Evaluate sum counts[t] * e(t/b) in double precision."""
    counts = np.asarray(vec.counts, dtype=np.float64)
    return complex(counts @ _roots_of_unity(vec.b))


def gauss_direct(
    ideal: FracIdeal, a: int, b: int, limit: int | None = None
) -> ExponentVector:
    """The Gauss sum G_b(ideal, a) by direct residue enumeration.

    counts[t] is the number of lambda in ideal/(b*ideal) whose norm ratio r
    satisfies a*r = t (mod b); the profile enumeration is shared and cached.
    """
    profile = residue_norm_profile(ideal, b, limit)
    counts = [0] * b
    for r, n in enumerate(profile):
        counts[a * r % b] += n
    return ExponentVector(b, tuple(counts))


def gauss_closed(ideal: FracIdeal, a: int, p: int, beta: int) -> ExactGaussValue:
    """Closed form of G_{p^beta}(ideal, a).

    With alpha = min(val_p(a), beta): the value is p^(2 beta) when
    alpha = beta; (chi_D(p) * p)^(alpha+beta) when p does not divide D; and
    eps(p) * p^(alpha+beta+1/2) * (a0 N(ideal) | p) * (-D/p | p)^(alpha+beta+1)
    in the ramified case, which requires the ideal to be coprime to p.
    """
    if beta < 0:
        raise ValueError(f"beta must be >= 0, got {beta}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    disc = ideal.disc
    alpha = beta if a == 0 else min(valuation(a, p), beta)
    if alpha == beta:
        return ExactGaussValue("rational", Fraction(p ** (2 * beta)))
    chi = kronecker(disc.D, p)
    if chi != 0:
        return ExactGaussValue("rational", Fraction((chi * p) ** (alpha + beta)))
    if not coprime_to(ideal, p):
        raise ValueError(
            f"ramified closed form needs an ideal coprime to {p}; "
            "replace it by a coprime genus representative first"
        )
    a0 = a // p**alpha
    sign = (
        kronecker(a0, p)
        * rational_legendre(ideal.norm(), p)
        * kronecker(-(disc.D // p), p) ** ((alpha + beta + 1) % 2)
    )
    return ExactGaussValue("ramified", Fraction(sign * p ** (alpha + beta)), p)


def classical_gauss(
    a: int, c: int, limit: int | None = None
) -> tuple[ExactGaussValue, ExponentVector]:
    """The classical sum over x mod c of e(a x^2 / c), closed and direct.

    For odd c > 0 with gcd(a, c) = 1 the closed value is
    eps(c) * sqrt(c) * (a|c).
    """
    if c <= 0 or c % 2 == 0:
        raise ValueError(f"classical Gauss sum needs odd c > 0, got {c}")
    if gcd(a, c) != 1:
        raise ValueError(f"a = {a} must be coprime to c = {c}")
    closed = ExactGaussValue("ramified", Fraction(kronecker(a, c)), c)
    counts = [0] * c
    for x in range(c):
        counts[a * x * x % c] += 1
    return closed, ExponentVector(c, tuple(counts))


def twisted_sum_direct(p: int, r: int, c: int) -> complex:
    """Sum over a mod p^r of (a|p) e(a c / p^r), evaluated directly.

    Vanishes for r > 1; for r = 1 it equals eps(p) * (c|p) * sqrt(p).
    """
    if not is_prime(p) or p == 2:
        raise ValueError(f"need an odd prime, got {p}")
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if c % p == 0:
        raise ValueError(f"c = {c} must be a unit at {p}")
    q = p**r
    total = 0j
    for a in range(q):
        s = kronecker(a, p)
        if s:
            total += s * cmath.exp(2j * cmath.pi * a * c / q)
    return total
