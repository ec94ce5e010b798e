"""Real quadratic characters attached to discriminants.

A character is identified by a fundamental discriminant ``d0`` (``1`` for the
trivial character); its values are Kronecker symbols ``(d0 / n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import NamedTuple

from .errors import PDividesConductor, TrivialM1
from .exact import PValuation, bernoulli, p_valuation, require_prime, residue_mod_p


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol ``(a / n)`` for arbitrary integers, not both zero."""
    if a == 0 and n == 0:
        raise ValueError("kronecker(0, 0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = (n & -n).bit_length() - 1
        n >>= v
        if v % 2 and a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * _jacobi(a, n)


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write ``n > 0`` as ``core * s**2`` with ``core`` squarefree."""
    core, s = 1, 1
    q = 2
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            s *= q ** (e // 2)
            if e % 2:
                core *= q
        q += 1 if q == 2 else 2
    return core * n, s


class FundamentalDecomposition(NamedTuple):
    d0: int
    f: int


@lru_cache(maxsize=None)
def fundamental_decompose(D: int) -> FundamentalDecomposition:
    """Split a discriminant as ``D = d0 * f**2`` with ``d0`` fundamental or 1."""
    if D == 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a nonzero discriminant (must be 0 or 1 mod 4)")
    core, s = _squarefree_split(abs(D))
    if D < 0:
        core = -core
    if core % 4 == 1:
        return FundamentalDecomposition(core, s)
    # core = 2, 3 mod 4: D = 4*core*(s/2)^2
    return FundamentalDecomposition(4 * core, s // 2)


def is_fundamental(D: int) -> bool:
    if D == 1 or D % 4 not in (0, 1):
        return False
    return fundamental_decompose(D).f == 1


def fundamental_discriminants(bound: int, sign: int = 0) -> list[int]:
    """Nontrivial fundamental discriminants with ``|D| <= bound``, sorted by ``|D|``.

    ``sign`` restricts to negative (-1) or positive (+1) values; 0 keeps both.
    """
    out = []
    for n in range(2, bound + 1):
        for D in (-n, n):
            if sign and (D > 0) != (sign > 0):
                continue
            if is_fundamental(D):
                out.append(D)
    return out


@dataclass(frozen=True)
class QuadCharacter:
    fundamental_discriminant: int

    @property
    def conductor(self) -> int:
        return abs(self.fundamental_discriminant)

    @property
    def is_trivial(self) -> bool:
        return self.fundamental_discriminant == 1

    def __call__(self, a: int) -> int:
        if self.is_trivial:
            return 1
        return self.table()[a % self.conductor]

    def table(self) -> tuple[int, ...]:
        return _char_table(self.fundamental_discriminant)

    def parity(self) -> int:
        """``chi(-1)``."""
        return self(-1)

    def __str__(self) -> str:
        return f"chi_{self.fundamental_discriminant}"


@lru_cache(maxsize=4096)
def _char_table(d0: int) -> tuple[int, ...]:
    f = abs(d0)
    return tuple(kronecker(d0, a) for a in range(f))


def quad_char(D: int) -> QuadCharacter:
    """Primitive character of ``Q(sqrt(D))``; trivial when ``D`` is a square."""
    return QuadCharacter(fundamental_decompose(D).d0)


@lru_cache(maxsize=4096)
def _power_sums(d0: int, top: int) -> tuple[int, ...]:
    # S_i = sum_{a=1}^{f} chi(a) a^i for i = 0..top
    table = _char_table(d0)
    f = abs(d0)
    sums = [0] * (top + 1)
    for a in range(1, f + 1):
        c = table[a % f]
        if not c:
            continue
        pw = c
        for i in range(top + 1):
            sums[i] += pw
            pw *= a
    return tuple(sums)


def gen_bernoulli(m: int, chi: QuadCharacter) -> Fraction:
    """Generalized Bernoulli number ``B_{m,chi}``.

    Uses ``f^(m-1) sum_a chi(a) B_m(a/f)`` expanded into integer power sums
    ``sum_a chi(a) a^i`` so that large conductors stay cheap.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if chi.is_trivial:
        if m == 1:
            raise TrivialM1("B_{1,chi} for the trivial character is convention-dependent")
        return bernoulli(m)
    if chi.parity() != (-1) ** m:
        return Fraction(0)
    f = chi.conductor
    sums = _power_sums(chi.fundamental_discriminant, max(m, 16))
    total = Fraction(0)
    for j in range(m + 1):
        bj = bernoulli(j)
        if bj:
            total += comb(m, j) * bj * sums[m - j] * Fraction(f) ** (j - 1)
    return total


def carlitz_denominator_possible(m: int, chi: QuadCharacter, p: int) -> bool:
    """Necessary condition for ``p`` to divide the denominator of ``B_{m,chi}``."""
    if p == 2:
        raise ValueError("only odd primes are supported")
    half = (p - 1) // 2
    return chi.conductor == p and m % half == 0 and (m // half) % 2 == 1


def gen_bernoulli_valuation(m: int, chi: QuadCharacter, p: int) -> tuple[PValuation, bool]:
    require_prime(p)
    val = p_valuation(gen_bernoulli(m, chi), p)
    possible = carlitz_denominator_possible(m, chi, p)
    if not val.at_least(0) and not possible:
        raise ArithmeticError(f"ord_{p} B_{m},{chi} = {val.value} contradicts the Carlitz criterion")
    return val, possible


class CarlitzCheck(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def carlitz_congruence_check(chi: QuadCharacter, p: int) -> CarlitzCheck:
    """Compare ``B_{p,chi}/p`` with ``(1/f)(1 - chi(p)) sum_{s<=f} s chi(s)`` mod p."""
    require_prime(p)
    if chi.is_trivial:
        raise ValueError("the congruence concerns nontrivial characters")
    f = chi.conductor
    if f % p == 0:
        raise PDividesConductor(f"{p} divides the conductor {f}")
    lhs = residue_mod_p(gen_bernoulli(p, chi) / p, p)
    first_moment = sum(s * chi(s) for s in range(1, f + 1))
    rhs = residue_mod_p(Fraction((1 - chi(p)) * first_moment, f), p)
    return CarlitzCheck(lhs, rhs, lhs == rhs)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
