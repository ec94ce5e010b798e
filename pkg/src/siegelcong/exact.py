"""Exact rational kernels: Bernoulli numbers, p-adic valuations, residues.

Rationals are :class:`fractions.Fraction` throughout (always reduced, positive
denominator).  Bernoulli numbers use the convention ``B_1 = -1/2``.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Union

from .errors import DenominatorDivisible, InvalidPair, NotPrime

Rational = Union[int, Fraction]


class Infinity(enum.Enum):
    INFINITY = "INFINITY"

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "INFINITY"


INFINITY = Infinity.INFINITY


@dataclass(frozen=True)
class PValuation:
    prime: int
    value: Union[int, Infinity]

    @property
    def is_infinite(self) -> bool:
        return self.value is INFINITY

    def at_least(self, bound: int) -> bool:
        return self.value is INFINITY or self.value >= bound

    def __int__(self) -> int:
        if self.value is INFINITY:
            raise ValueError("valuation of zero is infinite")
        return self.value


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


_bernoulli_cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli(m: int) -> Fraction:
    """Return ``B_m`` from ``sum_{j<=m} C(m+1, j) B_j = 0`` with ``B_0 = 1``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m < len(_bernoulli_cache):
        return _bernoulli_cache[m]
    with _bernoulli_lock:
        cache = _bernoulli_cache
        for n in range(len(cache), m + 1):
            if n % 2 == 1:
                cache.append(Fraction(0))
                continue
            total = Fraction(1) - Fraction(n + 1, 2)  # j = 0 and j = 1 terms
            for j in range(2, n, 2):
                total += comb(n + 1, j) * cache[j]
            cache.append(-total / (n + 1))
        return cache[m]


def bernoulli_poly_eval(m: int, x: Rational) -> Fraction:
    """``B_m(x) = sum_j C(m, j) B_j x^(m-j)``, evaluated by Horner's rule."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = Fraction(x)
    acc = Fraction(0)
    for j in range(m + 1):
        acc = acc * x + comb(m, j) * bernoulli(j)
    return acc


def _ord_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_valuation(q: Rational, p: int) -> PValuation:
    require_prime(p)
    q = Fraction(q)
    if q == 0:
        return PValuation(p, INFINITY)
    return PValuation(p, _ord_int(q.numerator, p) - _ord_int(q.denominator, p))


def ord_p(q: Rational, p: int) -> Union[int, Infinity]:
    return p_valuation(q, p).value


def residue_mod_p(q: Rational, p: int) -> int:
    """Image of a p-integral rational in ``Z/pZ``."""
    require_prime(p)
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DenominatorDivisible(q, p)
    return q.numerator * pow(q.denominator, -1, p) % p


def von_staudt_clausen(m: int) -> tuple[frozenset[int], int]:
    """Primes ``q`` with ``(q-1) | m`` and the integer ``B_m + sum 1/q``."""
    if m < 2 or m % 2:
        raise ValueError("von Staudt-Clausen needs an even m >= 2")
    qs = frozenset(d + 1 for d in range(1, m + 1) if m % d == 0 and is_prime(d + 1))
    value = bernoulli(m) + sum(Fraction(1, q) for q in qs)
    if value.denominator != 1:
        raise ArithmeticError(f"B_{m} + sum 1/q = {value} is not an integer")
    return qs, value.numerator


def kummer_check(m1: int, m2: int, p: int) -> bool:
    """Compare ``B_m1/m1`` and ``B_m2/m2`` modulo p."""
    require_prime(p)
    for m in (m1, m2):
        if m < 2 or m % 2:
            raise InvalidPair(f"{m} is not an even integer >= 2")
        if m % (p - 1) == 0:
            raise InvalidPair(f"{m} is divisible by p-1 = {p - 1}")
    if (m1 - m2) % (p - 1):
        raise InvalidPair(f"{m1} and {m2} are not congruent mod {p - 1}")
    lhs = residue_mod_p(bernoulli(m1) / m1, p)
    rhs = residue_mod_p(bernoulli(m2) / m2, p)
    return lhs == rhs


def is_regular_prime(p: int) -> bool:
    require_prime(p)
    if p < 3:
        raise ValueError("regularity is defined for odd primes")
    return all(bernoulli(m).numerator % p for m in range(2, p - 2, 2))


def format_rational(q: Rational) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    num, _, den = s.partition("/")
    value = Fraction(int(num), int(den or 1))
    if den and (value.numerator != int(num) or value.denominator != int(den)):
        raise ValueError(f"{s!r} is not in lowest terms")
    return value


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
