"""Fractional ideals of the ring of integers in standard two-generator form.

A primitive integral ideal is the module Z*a + Z*(b + sqrt(D))/2 with b odd,
0 < b <= 2a and a | (b^2 - D)/4; every fractional ideal is a positive
rational multiple of exactly one such module.  Products are reduced through
a 2x2 Hermite normal form over the half-integer coordinates, so the whole
module is exact integer/rational arithmetic.  The one enumeration primitive,
`residue_norm_profile`, counts the values of the ideal's norm form on
(Z/bZ)^2 and is backed by numpy; chunking does not affect its output.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import (
    factorize,
    is_prime,
    kronecker,
    primes_upto,
    rational_legendre,
    sqrt_mod,
    valuation,
    xgcd,
)
from .errors import (
    EnumerationBoundError,
    RepresentativeSearchError,
)
from .quadfield import Discriminant, QuadElem, omega

DEFAULT_MAX_ENUM_B = 10_000


def max_enum_b() -> int:
    """Enumeration bound for residue profiles; QUADREP_MAX_B overrides."""
    env = os.environ.get("QUADREP_MAX_B")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"QUADREP_MAX_B must be an integer, got {env!r}") from exc
    return DEFAULT_MAX_ENUM_B


class PrimIdeal:
    """Primitive integral ideal Z*a + Z*(b + sqrt(D))/2 in canonical form.

    b is reduced to the unique odd representative in (0, 2a]; the constructor
    rejects modules that are not stable under the full ring of integers.
    """

    __slots__ = ("disc", "a", "b")

    def __init__(self, disc: Discriminant, a: int, b: int):
        if a <= 0:
            raise ValueError(f"leading coefficient must be positive, got {a}")
        if b % 2 == 0:
            raise ValueError(f"second generator coordinate must be odd, got {b}")
        b %= 2 * a  # odd, hence nonzero: lands in (0, 2a)
        if (b * b - disc.D) % (4 * a) != 0:
            raise ValueError(
                f"[{a}, {b}] is not an ideal for D = {disc.D}: a must divide (b^2 - D)/4"
            )
        self.disc = disc
        self.a = a
        self.b = b

    def form(self) -> tuple[int, int, int]:
        """Coefficients (a, b, c) of the norm form a x^2 + b xy + c y^2.

        The form has discriminant b^2 - 4ac = D and value N(x*alpha + y*beta)
        divided by the ideal norm, for the standard basis alpha, beta.
        """
        c = (self.b * self.b - self.disc.D) // (4 * self.a)
        return self.a, self.b, c

    def conjugate(self) -> PrimIdeal:
        return PrimIdeal(self.disc, self.a, -self.b)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PrimIdeal)
            and self.disc == other.disc
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self) -> int:
        return hash((self.disc.D, self.a, self.b))

    def __repr__(self) -> str:
        return f"PrimIdeal(D={self.disc.D}, [{self.a}, {self.b}])"


class FracIdeal:
    """Fractional ideal: positive rational scale times a primitive ideal."""

    __slots__ = ("scale", "prim")

    def __init__(self, scale: Fraction | int, prim: PrimIdeal):
        scale = Fraction(scale)
        if scale <= 0:
            raise ValueError(f"scale must be positive, got {scale}")
        self.scale = scale
        self.prim = prim

    @property
    def disc(self) -> Discriminant:
        return self.prim.disc

    def norm(self) -> Fraction:
        return self.scale * self.scale * self.prim.a

    def is_integral(self) -> bool:
        return self.scale.denominator == 1

    def conjugate(self) -> FracIdeal:
        return FracIdeal(self.scale, self.prim.conjugate())

    def inverse(self) -> FracIdeal:
        """The fractional inverse, via conjugate/norm."""
        return FracIdeal(
            1 / (self.scale * self.prim.a), self.prim.conjugate()
        )

    def z_basis(self) -> tuple[tuple[Fraction, QuadElem], tuple[Fraction, QuadElem]]:
        """A Z-basis (alpha, beta), each returned as (rational scale, element)."""
        alpha = (self.scale, QuadElem(self.disc, 2 * self.prim.a, 0))
        beta = (self.scale, QuadElem(self.disc, self.prim.b, 1))
        return alpha, beta

    def form(self) -> tuple[int, int, int]:
        return self.prim.form()

    def __mul__(self, other: FracIdeal) -> FracIdeal:
        if self.disc != other.disc:
            raise ValueError("mixed discriminants")
        disc = self.disc
        a1, b1 = self.prim.a, self.prim.b
        a2, b2 = other.prim.a, other.prim.b
        gens1 = (QuadElem(disc, 2 * a1, 0), QuadElem(disc, b1, 1))
        gens2 = (QuadElem(disc, 2 * a2, 0), QuadElem(disc, b2, 1))
        prods = [x * y for x in gens1 for y in gens2]
        content, prim = _module_from_rows(disc, [(z.u, z.v) for z in prods])
        return FracIdeal(self.scale * other.scale * content, prim)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FracIdeal)
            and self.scale == other.scale
            and self.prim == other.prim
        )

    def __hash__(self) -> int:
        return hash((self.scale, self.prim))

    def __repr__(self) -> str:
        return f"FracIdeal({self.scale} * {self.prim!r})"

    def key(self) -> tuple[int, Fraction, int, int]:
        """Hashable identity used for caches."""
        return (self.disc.D, self.scale, self.prim.a, self.prim.b)


def unit_ideal(disc: Discriminant) -> FracIdeal:
    """The full ring of integers as a fractional ideal."""
    return FracIdeal(1, PrimIdeal(disc, 1, 1))


def _module_from_rows(
    disc: Discriminant, rows: list[tuple[int, int]]
) -> tuple[int, PrimIdeal]:
    """Split the lattice spanned by half-coordinate rows into content * primitive.

    Rows (u, v) denote (u + v*sqrt(D))/2.  Returns (content, PrimIdeal) with
    the lattice equal to content * (Z*a + Z*(b + sqrt(D))/2).  Assumes the
    lattice is stable under the ring of integers; the PrimIdeal constructor
    re-checks stability.
    """
    # Stage 1: a single vector (h, k) with k = gcd of all v-coordinates.
    h, k = 0, 0
    for u, v in rows:
        if v == 0:
            continue
        g, x, y = xgcd(k, v)
        h, k = x * h + y * u, g
    if k == 0:
        raise ValueError("rows do not span a rank-2 module")
    # Stage 2: the intersection with the x-axis is generated by (g0, 0).
    g0 = 0
    for u, v in rows:
        g0 = math.gcd(g0, u - (v // k) * h)
    if g0 == 0:
        raise ValueError("rows do not span a rank-2 module")
    if h % k != 0 or g0 % (2 * k) != 0:
        raise ValueError("module is not stable under the ring of integers")
    a = g0 // (2 * k)
    b = h // k
    return k, PrimIdeal(disc, a, b)


def principal_ideal(elem: QuadElem, scale: Fraction | int = 1) -> FracIdeal:
    """The principal fractional ideal generated by scale * elem."""
    if elem.is_zero():
        raise ValueError("zero generates no fractional ideal")
    w = omega(elem.disc)
    rows = [(elem.u, elem.v), ((elem * w).u, (elem * w).v)]
    content, prim = _module_from_rows(elem.disc, rows)
    return FracIdeal(Fraction(scale) * content, prim)


def different_ideal(disc: Discriminant) -> FracIdeal:
    """The different (sqrt(D)), norm D."""
    return FracIdeal(1, PrimIdeal(disc, disc.D, disc.D))


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of the ring of integers lying above the rational prime p."""

    p: int
    kind: str  # "split" | "inert" | "ramified"
    ideal: FracIdeal

    def ramification_index(self) -> int:
        return 2 if self.kind == "ramified" else 1


def prime_above(disc: Discriminant, p: int) -> list[PrimeIdeal]:
    """The primes above p, ordered by their canonical b coordinate.

    chi_D(p) = +1 gives the two conjugate split primes, -1 the inert ideal
    (p) itself, and 0 the unique ramified prime.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    D = disc.D
    chi = kronecker(D, p)
    if chi == -1:
        return [PrimeIdeal(p, "inert", FracIdeal(p, PrimIdeal(disc, 1, 1)))]
    if chi == 0:
        # p | D is odd, and b = p is the unique odd solution of
        # b^2 = D (mod 4p) in (0, 2p].
        return [PrimeIdeal(p, "ramified", FracIdeal(1, PrimIdeal(disc, p, p)))]
    if p == 2:
        # D = 1 (mod 8): both odd classes mod 4 work.
        found = [PrimIdeal(disc, 2, 1), PrimIdeal(disc, 2, 3)]
    else:
        r = sqrt_mod(D, p)
        bs = set()
        for root in (r, p - r):
            b = root if root % 2 == 1 else root + p  # odd lift mod 2p
            bs.add(b % (2 * p))
        found = [PrimIdeal(disc, p, b) for b in sorted(bs)]
    return [PrimeIdeal(p, "split", FracIdeal(1, prim)) for prim in found]


def ideal_valuation(ideal: FracIdeal, prime: PrimeIdeal) -> int:
    """Exponent of the prime in the ideal's factorization.

    The rational scale contributes through the ramification index; the
    primitive part is peeled off by repeated exact division.
    """
    v = prime.ramification_index() * valuation(ideal.scale, prime.p)
    pinv = prime.ideal.inverse()
    x = FracIdeal(1, ideal.prim)
    while True:
        y = x * pinv
        if not y.is_integral():
            return v
        x = y
        v += 1


def coprime_to(ideal: FracIdeal, n: int) -> bool:
    """True when every prime above every prime factor of n has valuation 0."""
    if n == 0:
        raise ValueError("coprimality to 0 is not meaningful")
    if abs(n) == 1:
        return True
    for p, _ in factorize(n):
        for prime in prime_above(ideal.disc, p):
            if ideal_valuation(ideal, prime) != 0:
                return False
    return True


# Profiles depend only on (D, a, b, modulus); scales drop out entirely.
_PROFILE_CACHE: dict[tuple[int, int, int, int], tuple[int, ...]] = {}


def residue_norm_profile(
    ideal: FracIdeal, b: int, limit: int | None = None
) -> tuple[int, ...]:
    """Counts of N(lambda)/N(ideal) mod b over lambda in ideal/(b*ideal).

    Entry r of the result is the number of (x, y) in (Z/bZ)^2 with
    Q(x, y) = r (mod b), where Q is the ideal's norm form; the counts sum
    to b^2.  Enumeration is chunked through numpy but the result does not
    depend on the chunking.
    """
    if b < 1:
        raise ValueError(f"modulus must be >= 1, got {b}")
    bound = limit if limit is not None else max_enum_b()
    if b > bound:
        raise EnumerationBoundError(
            f"modulus {b} exceeds enumeration bound {bound} (QUADREP_MAX_B overrides)"
        )
    A, B, C = ideal.prim.form()
    key = (ideal.disc.D, ideal.prim.a, ideal.prim.b, b)
    cached = _PROFILE_CACHE.get(key)
    if cached is not None:
        return cached
    A %= b
    B %= b
    C %= b
    xs = np.arange(b, dtype=np.int64)
    ax2 = (A * xs % b) * xs % b
    cy2 = (C * xs % b) * xs % b
    counts = np.zeros(b, dtype=np.int64)
    chunk = max(1, 4_000_000 // b)
    for lo in range(0, b, chunk):
        hi = min(b, lo + chunk)
        # intermediate products stay below b^3 <= 10^12, safely inside int64
        bxy = (B * xs[lo:hi, None] % b) * xs[None, :] % b
        tot = (ax2[lo:hi, None] + bxy + cy2[None, :]) % b
        counts += np.bincount(tot.ravel(), minlength=b)
    profile = tuple(int(c) for c in counts)
    _PROFILE_CACHE[key] = profile
    return profile


@dataclass(frozen=True)
class GenusFingerprint:
    """Signs chi_{D(p)}(N) at the ramified primes; the product is always +1."""

    disc: Discriminant
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != self.disc.omega:
            raise ValueError("one sign per ramified prime required")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"signs must be +-1, got {self.signs}")
        if math.prod(self.signs) != 1:
            raise ValueError(f"sign product must be +1, got {self.signs}")

    def sign(self, p: int) -> int:
        for q, s in zip(self.disc.primes, self.signs):
            if q == p:
                return s
        raise ValueError(f"{p} does not ramify in D = {self.disc.D}")

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.disc.primes, self.signs))


_FINGERPRINT_CACHE: dict[tuple, GenusFingerprint] = {}


def genus_fingerprint(ideal: FracIdeal) -> GenusFingerprint:
    """The genus fingerprint of the ideal.

    Reads the Legendre symbols of the norm at each ramified prime, replacing
    the ideal by a coprime representative of the same genus first whenever it
    meets a ramified prime.  Results are cached per ideal.
    """
    key = ideal.key()
    cached = _FINGERPRINT_CACHE.get(key)
    if cached is not None:
        return cached
    disc = ideal.disc
    rep = ideal
    if not coprime_to(ideal, disc.D):
        rep = coprime_genus_representative(ideal, 1)
    n = rep.norm()
    fp = GenusFingerprint(disc, tuple(rational_legendre(n, p) for p in disc.primes))
    _FINGERPRINT_CACHE[key] = fp
    return fp


def coprime_genus_representative(
    ideal: FracIdeal, n: int, box: int = 200
) -> FracIdeal:
    """An integral ideal of the same genus, coprime to n*D.

    Searches lambda = x*alpha + y*beta over an expanding coordinate box for
    a totally positive-norm element with N(lambda)/N(ideal) coprime to n*D,
    then returns (lambda) * ideal^(-1).  The search is deterministic; the
    default box is far larger than desk-scale inputs ever need.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    disc = ideal.disc
    target = abs(n) * disc.D
    A, B, C = ideal.prim.form()

    def q(x: int, y: int) -> int:
        return A * x * x + B * x * y + C * y * y

    for radius in range(1, box + 1):
        shell = []
        for x in range(-radius, radius + 1):
            for y in range(-radius, radius + 1):
                if max(abs(x), abs(y)) == radius:
                    shell.append((x, y))
        for x, y in sorted(shell):
            val = q(x, y)
            if val <= 0 or math.gcd(val, target) != 1:
                continue
            lam = QuadElem(disc, 2 * ideal.prim.a * x + ideal.prim.b * y, y)
            rep = principal_ideal(lam, ideal.scale) * ideal.inverse()
            if not rep.is_integral():
                raise RepresentativeSearchError(
                    f"representative of {ideal!r} came out non-integral"
                )
            return rep
    raise RepresentativeSearchError(
        f"no element coprime to {target} found in box {box} for {ideal!r}"
    )


def genus_representatives(disc: Discriminant, prime_bound: int = 2000) -> list[FracIdeal]:
    """One integral ideal per genus, the unit ideal first.

    Walks split primes in increasing order until all 2^(omega-1) fingerprints
    are seen.  Deterministic for a fixed discriminant.
    """
    want = 2 ** (disc.omega - 1)
    reps: dict[tuple[int, ...], FracIdeal] = {}
    one = unit_ideal(disc)
    reps[genus_fingerprint(one).signs] = one
    for p in primes_upto(prime_bound):
        if len(reps) == want:
            break
        if kronecker(disc.D, p) != 1:
            continue
        cand = prime_above(disc, p)[0].ideal
        fp = genus_fingerprint(cand).signs
        if fp not in reps:
            reps[fp] = cand
    if len(reps) != want:
        raise RepresentativeSearchError(
            f"found {len(reps)} of {want} genera below {prime_bound} for D = {disc.D}"
        )
    return list(reps.values())


def format_ideal(ideal: FracIdeal) -> str:
    """Canonical textual form: "ok", "prim:a,b" or "frac:num/den:a,b"."""
    a, b = ideal.prim.a, ideal.prim.b
    if ideal.scale == 1:
        if a == 1:
            return "ok"
        return f"prim:{a},{b}"
    s = ideal.scale
    return f"frac:{s.numerator}/{s.denominator}:{a},{b}"


def parse_ideal(disc: Discriminant, text: str) -> FracIdeal:
    """Parse the textual ideal grammar.

    Accepted forms: "ok" (unit ideal), "prim:a,b", "frac:num/den:a,b" and
    "prime:p,k" for the k-th (1-based) prime above p in canonical order.
    """
    text = text.strip()
    if text == "ok":
        return unit_ideal(disc)
    head, _, rest = text.partition(":")
    if head == "prim":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError(f"prim spec takes a,b: {text!r}")
        return FracIdeal(1, PrimIdeal(disc, int(parts[0]), int(parts[1])))
    if head == "frac":
        scale_txt, sep, ab = rest.partition(":")
        parts = ab.split(",")
        if not sep or len(parts) != 2:
            raise ValueError(f"frac spec takes num/den:a,b: {text!r}")
        num, _, den = scale_txt.partition("/")
        scale = Fraction(int(num), int(den) if den else 1)
        return FracIdeal(scale, PrimIdeal(disc, int(parts[0]), int(parts[1])))
    if head == "prime":
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError(f"prime spec takes p,k: {text!r}")
        p, k = int(parts[0]), int(parts[1])
        primes = prime_above(disc, p)
        if not 1 <= k <= len(primes):
            raise ValueError(f"index {k} out of range: {len(primes)} prime(s) above {p}")
        return primes[k - 1].ideal
    raise ValueError(f"unknown ideal spec {text!r}")
