"""Shared fixture builders for the test suite."""

from __future__ import annotations

from fractions import Fraction

from quadrep.arith import is_prime, kronecker
from quadrep.ideals import (
    FracIdeal,
    genus_representatives,
    prime_above,
    unit_ideal,
)
from quadrep.quadfield import Discriminant

VALID_DISCS = (5, 13, 17, 21, 33, 57, 105)


def first_split_prime(disc: Discriminant) -> int:
    p = 2
    while not (is_prime(p) and disc.D % p != 0 and kronecker(disc.D, p) == 1):
        p += 1
    return p


def fixture_ideals(disc: Discriminant) -> list[FracIdeal]:
    """The unit ideal, a split prime, its square, a fractional multiple,

    and one representative per genus fingerprint, deduplicated.
    """
    ids = [unit_ideal(disc)]
    p = first_split_prime(disc)
    prime = prime_above(disc, p)[0].ideal
    ids += [prime, prime * prime, FracIdeal(Fraction(1, 3), prime.prim)]
    ids += genus_representatives(disc)
    seen = set()
    out = []
    for ideal in ids:
        if ideal.key() not in seen:
            seen.add(ideal.key())
            out.append(ideal)
    return out
