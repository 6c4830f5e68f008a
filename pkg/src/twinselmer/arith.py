"""Exact integer kernel: primality, quadratic residue symbols, valuations, CRT."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

# Fixed Miller-Rabin witness set. Deterministic for every n below
# 3317044064679887385961981 (> 2**64); above that we fall back to 40
# pseudo-random rounds seeded by n so results stay reproducible.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981
_MR_ROUNDS = 40


def is_prime(n: int) -> bool:
    """Primality test, exact for n < 2**64 and strongly probabilistic above."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    if n < _MR_DETERMINISTIC_BOUND:
        witnesses = list(_MR_WITNESSES)
    else:
        rng = random.Random(n)
        witnesses = [rng.randrange(2, n - 1) for _ in range(_MR_ROUNDS)]
    for a in witnesses:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_odd_prime(n: int) -> bool:
    return n >= 3 and n % 2 == 1 and is_prime(n)


def is_twin_pair(p: int, q: int) -> bool:
    """True iff p and q are odd primes with q = p + 2."""
    return q - p == 2 and p >= 3 and is_prime(p) and is_prime(q)


def legendre_symbol(a: int, l: int) -> int:
    """Legendre symbol of a modulo the odd prime l, in {-1, 0, 1}.

    a is reduced mod l first, so negative and composite arguments are fine.
    """
    if l < 3 or l % 2 == 0:
        raise ValueError(f"modulus must be an odd prime, got {l}")
    r = pow(a % l, (l - 1) // 2, l)
    return -1 if r == l - 1 else r


def _int_valuation(m: int, l: int) -> int:
    m = abs(m)
    v = 0
    while m % l == 0:
        m //= l
        v += 1
    return v


def padic_valuation(x: int | Fraction, l: int) -> int:
    """Exponent of the prime l in the nonzero rational x."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if l < 2:
        raise ValueError(f"not a prime: {l}")
    if isinstance(x, Fraction):
        return _int_valuation(x.numerator, l) - _int_valuation(x.denominator, l)
    return _int_valuation(x, l)


@dataclass(frozen=True)
class UnitSquareClass:
    """Square-class tag of an l-adic unit.

    For odd l the tag is the Legendre symbol (+1 or -1); for l = 2 it is the
    residue mod 8, and the unit is a square exactly when that residue is 1.
    """

    is_square: bool
    tag: int


def unit_square_class(u: int | Fraction, l: int) -> UnitSquareClass:
    """Square class of the l-adic unit u; rejects non-units."""
    if isinstance(u, Fraction):
        num, den = u.numerator, u.denominator
    else:
        num, den = u, 1
    if num == 0 or num % l == 0 or den % l == 0:
        raise ValueError(f"{u} is not an l-adic unit at l={l}")
    if l == 2:
        # an odd x is its own inverse mod 8, so num/den mod 8 = num*den mod 8
        tag = (num * den) % 8
        return UnitSquareClass(tag == 1, tag)
    s = legendre_symbol(num, l) * legendre_symbol(den, l)
    return UnitSquareClass(s == 1, s)


def crt_solve(congruences) -> tuple[int, int] | None:
    """Solve x = r_i (mod m_i) simultaneously.

    Moduli need not be coprime; consistency is checked. Returns
    (residue, modulus) with 0 <= residue < modulus, or None if the system
    is contradictory.
    """
    r, m = 0, 1
    for r2, m2 in congruences:
        if m2 <= 0:
            raise ValueError(f"modulus must be positive, got {m2}")
        g = gcd(m, m2)
        if (r2 - r) % g:
            return None
        mm = m2 // g
        if mm > 1:
            t = ((r2 - r) // g * pow((m // g) % mm, -1, mm)) % mm
        else:
            t = 0
        lcm = m // g * m2
        r = (r + m * t) % lcm
        m = lcm
    return r, m


def primes_up_to(n: int) -> list[int]:
    """Ascending primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def twin_pairs_up_to(n: int) -> list[tuple[int, int]]:
    """Ascending twin pairs (p, p+2) of odd primes with p + 2 <= n."""
    ps = primes_up_to(n)
    pset = set(ps)
    return [(p, p + 2) for p in ps if p >= 3 and p + 2 in pset]
