"""Closed-form Fourier coefficients and Bernoulli-factor certificates.

Degree 1: ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(t) q^t``; ``Delta`` from the
Euler product.  Degree 2: the Cohen-function formula

    a(E_k, T) = 2 / (zeta(1-k) zeta(3-2k)) * sum_{d | cont T} d^(k-1) H(k-1, det(2T)/d^2)

for positive definite ``T``, with rank-one indices ``(t,0,0)`` taking the
degree-1 value so that ``Phi(E_k^(2)) = E_k^(1)``.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

import gmpy2

from .characters import QuadCharacter, fundamental_decompose, fundamental_discriminants, gen_bernoulli
from .exact import (
    INFINITY,
    bernoulli,
    format_rational,
    is_prime,
    ord_p,
    require_prime,
    residue_mod_p,
)
from .qexp import FourierExpansion, from_function
from .quadforms import BinaryHalfIntegral, class_number


# ---------------------------------------------------------------------------
# divisor sums


def divisor_sigma(r: int, t: int) -> int:
    if t < 1:
        raise ValueError("t must be positive")
    total = 0
    d = 1
    while d * d <= t:
        if t % d == 0:
            total += d**r
            e = t // d
            if e != d:
                total += e**r
        d += 1
    return total


def sigma_table(r: int, n: int, modulus: Optional[int] = None) -> list[int]:
    """``[sigma_r(0)=0, sigma_r(1), ..., sigma_r(n)]`` by a divisor sieve."""
    table = [0] * (n + 1)
    for d in range(1, n + 1):
        w = d**r if modulus is None else pow(d, r, modulus)
        for m in range(d, n + 1, d):
            table[m] += w
    if modulus is not None:
        table = [x % modulus for x in table]
    return table


def _mobius(n: int) -> int:
    result, q = 1, 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            result = -result
        q += 1
    return -result if n > 1 else result


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# degree 1


def _check_weight(k: int) -> None:
    if k < 4 or k % 2:
        raise ValueError(f"weight must be even and >= 4, got {k}")


def eis1_constant(k: int) -> Fraction:
    """``-2k / B_k``, the factor in front of ``sigma_{k-1}``."""
    return Fraction(-2 * k) / bernoulli(k)


def eis1(k: int, t_max: int) -> FourierExpansion:
    _check_weight(k)
    c = eis1_constant(k)
    sig = sigma_table(k - 1, t_max)
    coeffs = {0: Fraction(1)}
    coeffs.update((t, c * sig[t]) for t in range(1, t_max + 1))
    return FourierExpansion(1, t_max, coeffs, f"E_{k}^(1)")


def g12_expansion(t_max: int) -> FourierExpansion:
    """``-(B_12/24) E_12``: constant ``691/65520``, then ``sigma_11(t)``."""
    sig = sigma_table(11, t_max)
    coeffs = {0: -bernoulli(12) / 24}
    coeffs.update((t, Fraction(sig[t])) for t in range(1, t_max + 1))
    return FourierExpansion(1, t_max, coeffs, "G_12^(1)")


def _pack(coeffs: list[int], width: int) -> int:
    nbytes = width // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(value: int, width: int, count: int) -> list[int]:
    nbytes = width // 8
    half = 1 << (width - 1)
    bias = int.from_bytes((b"\x00" * (nbytes - 1) + b"\x80") * count, "little")
    # low slots are exact modulo 2^(width*count) once each is shifted by ``half``
    raw = ((value + bias) & ((1 << (width * count)) - 1)).to_bytes(nbytes * count, "little")
    return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(count)]


def poly_mul_trunc(f: list[int], g: list[int], n: int) -> list[int]:
    """Integer polynomial product truncated to ``n`` terms (Kronecker substitution)."""
    f, g = f[:n], g[:n]
    if not f or not g:
        return [0] * n
    mf = max(abs(x) for x in f) or 1
    mg = max(abs(x) for x in g) or 1
    bits = mf.bit_length() + mg.bit_length() + min(len(f), len(g)).bit_length() + 2
    width = (bits + 7) // 8 * 8
    prod = int(gmpy2.mpz(_pack(f, width)) * gmpy2.mpz(_pack(g, width)))
    count = min(n, len(f) + len(g) - 1)
    out = _unpack(prod, width, count)
    return out + [0] * (n - count)


def poly_pow_trunc(f: list[int], e: int, n: int) -> list[int]:
    result = [1] + [0] * (n - 1)
    base = f[:n] + [0] * (n - len(f))
    while e:
        if e & 1:
            result = poly_mul_trunc(result, base, n)
        e >>= 1
        if e:
            base = poly_mul_trunc(base, base, n)
    return result


def euler_product(n: int) -> list[int]:
    """``prod_{m>=1} (1 - q^m)`` to ``n`` terms via pentagonal numbers."""
    out = [0] * n
    k = 0
    while True:
        hit = False
        for j in ((k, -k) if k else (0,)):
            e = j * (3 * j - 1) // 2
            if e < n:
                out[e] = -1 if j % 2 else 1
                hit = True
        if not hit:
            return out
        k += 1


def tau_values(t_max: int) -> list[int]:
    """``[0, tau(1), ..., tau(t_max)]``."""
    eta24 = poly_pow_trunc(euler_product(t_max), 24, t_max)
    return [0] + eta24


def delta_expansion(t_max: int) -> FourierExpansion:
    if t_max < 1:
        raise ValueError("t_max must be positive")
    tau = tau_values(t_max)
    coeffs = {t: Fraction(tau[t]) for t in range(t_max + 1)}
    return FourierExpansion(1, t_max, coeffs, "Delta")


# ---------------------------------------------------------------------------
# Cohen's function and degree 2


def zeta_neg(r: int) -> Fraction:
    """``zeta(1 - r)`` for ``r >= 2``."""
    return -bernoulli(r) / r


@lru_cache(maxsize=None)
def cohen_h(r: int, N: int) -> Fraction:
    """Cohen's ``H(r, N)``; ``H(1, N)`` is the Hurwitz class number."""
    if r < 1:
        raise ValueError("r must be positive")
    if N == 0:
        return zeta_neg(2 * r)
    D = (-1) ** r * N
    if D % 4 in (2, 3):
        return Fraction(0)
    d0, f = fundamental_decompose(D)
    chi = QuadCharacter(d0)
    if d0 == 1:
        if r == 1:
            raise ValueError("H(1, N) with a square discriminant cannot occur")
        lval = zeta_neg(r)
    else:
        lval = -gen_bernoulli(r, chi) / r
    if not lval:
        return Fraction(0)
    total = 0
    for d in _divisors(f):
        mu = _mobius(d)
        if mu:
            total += mu * chi(d) * d ** (r - 1) * divisor_sigma(2 * r - 1, f // d)
    return lval * total


def eis2_scale(k: int) -> Fraction:
    return Fraction(2) / (zeta_neg(k) * zeta_neg(2 * k - 2))


def eis2_coefficient(k: int, T) -> Fraction:
    a, b, c = T
    det2 = 4 * a * c - b * b
    if det2 < 0 or a < 0 or c < 0:
        raise ValueError(f"{tuple(T)} is not positive semidefinite")
    if a == b == c == 0:
        return Fraction(1)
    cont = gcd(gcd(a, b), c)
    if det2 == 0:
        return eis1_constant(k) * divisor_sigma(k - 1, cont)
    total = Fraction(0)
    for d in _divisors(cont):
        total += d ** (k - 1) * cohen_h(k - 1, det2 // (d * d))
    return eis2_scale(k) * total


def eis2(k: int, trace_bound: int, det2_bound: Optional[int] = None) -> FourierExpansion:
    """Degree-2 Siegel Eisenstein series, one stored value per GL2-class."""
    _check_weight(k)
    return from_function(2, trace_bound, lambda T: eis2_coefficient(k, T), f"E_{k}^(2)",
                         classwise=True, det2_bound=det2_bound)


def sweep_trace_bound(det2_bound: int) -> int:
    """Trace bound covering every reduced form with ``det2 <= det2_bound``."""
    return det2_bound // 4 + 2


# ---------------------------------------------------------------------------
# Boecherer factors and certificates


class Parity(enum.Enum):
    EVEN = "EVEN"
    ODD = "ODD"


@dataclass(frozen=True)
class BoechererFactor:
    n: int
    k: int
    value: Fraction
    parity: Parity

    def valuation(self, p: int):
        return ord_p(self.value, p)


def bocherer_factor(n: int, k: int) -> BoechererFactor:
    """``(k/B_k) prod_{i=1}^{m} (k-i)/B_{2k-2i}`` with ``m = (n-2)/2`` or ``(n-1)/2``."""
    if n < 1:
        raise ValueError("degree must be positive")
    parity = Parity.EVEN if n % 2 == 0 else Parity.ODD
    top = (n - 2) // 2 if parity is Parity.EVEN else (n - 1) // 2
    if k < 2 or 2 * k - 2 * top < 2:
        raise ValueError("Bernoulli indices must be at least 2")
    value = Fraction(k) / bernoulli(k)
    for i in range(1, top + 1):
        value *= Fraction(k - i) / bernoulli(2 * k - 2 * i)
    return BoechererFactor(n, k, value, parity)


def alpha_p(n: int, k: int, p: int):
    if n % 2:
        raise ValueError("alpha_p needs even n")
    return bocherer_factor(n, k).valuation(p)


def beta_p(n: int, k: int, p: int):
    if n % 2 == 0:
        raise ValueError("beta_p needs odd n")
    return bocherer_factor(n, k).valuation(p)


class Claim(enum.Enum):
    M1_DEG3 = "M1_DEG3"
    M2_DEG5 = "M2_DEG5"
    M2_DEG4_SQUARE = "M2_DEG4_SQUARE"
    M2_DEG4_NONSQUARE = "M2_DEG4_NONSQUARE"
    M3 = "M3"


class Verdict(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INAPPLICABLE = "INAPPLICABLE"


@dataclass
class Factor:
    expression: str
    value: Fraction
    valuation: object
    expected: str = ""
    holds: bool = True

    def to_dict(self) -> dict:
        return {
            "expression": self.expression,
            "value": format_rational(self.value),
            "valuation": str(self.valuation) if self.valuation is INFINITY else self.valuation,
            "expected": self.expected,
            "holds": self.holds,
        }


@dataclass
class CertificateTrace:
    claim: Claim
    params: dict
    hypotheses: dict = field(default_factory=dict)
    factors: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    verdict: Verdict = Verdict.FAIL
    failing_hypothesis: Optional[str] = None

    def add(self, expression: str, value, p: int, expected: str = "", test=None) -> Factor:
        value = Fraction(value)
        v = ord_p(value, p)
        holds = True if test is None else bool(test(v))
        fac = Factor(expression, value, v, expected, holds)
        self.factors.append(fac)
        return fac

    @property
    def holds(self) -> bool:
        return self.verdict is not Verdict.FAIL

    def finish(self) -> "CertificateTrace":
        ok = all(f.holds for f in self.factors) and all(self.checks.values())
        self.verdict = Verdict.PASS if ok else Verdict.FAIL
        return self

    def to_dict(self) -> dict:
        return {
            "claim": self.claim.value,
            "params": dict(self.params),
            "hypotheses": dict(self.hypotheses),
            "factors": [f.to_dict() for f in self.factors],
            "checks": dict(self.checks),
            "verdict": self.verdict.value,
            "failing_hypothesis": self.failing_hypothesis,
        }


def _at_least(bound: int):
    return lambda v: v is INFINITY or v >= bound


def _equals(target: int):
    return lambda v: v == target


def _inapplicable(trace: CertificateTrace) -> CertificateTrace:
    for name, ok in trace.hypotheses.items():
        if not ok:
            trace.failing_hypothesis = name
            trace.verdict = Verdict.INAPPLICABLE
            return trace
    return trace


def bernoulli_certificate(claim, **params) -> CertificateTrace:
    """Exact-valuation trace of the Bernoulli factors behind a divisibility claim."""
    claim = Claim(claim)
    trace = CertificateTrace(claim, params)
    p = params["p"]
    trace.hypotheses["p prime"] = is_prime(p)
    if claim is Claim.M1_DEG3:
        trace.hypotheses["p > 7"] = p > 7
        trace.hypotheses["p = 3 mod 4"] = p % 4 == 3
    elif claim is Claim.M3:
        n = params["n"]
        trace.hypotheses["n even positive"] = n > 0 and n % 2 == 0
        trace.hypotheses["p > n+3"] = p > n + 3
        trace.hypotheses["p = (-1)^(n/2) mod 4"] = (p - (-1) ** (n // 2)) % 4 == 0
    else:
        trace.hypotheses["p > 5"] = p > 5
    if not all(trace.hypotheses.values()):
        return _inapplicable(trace)
    return _CERTIFICATES[claim](trace, p).finish()


def _cert_m1_deg3(trace: CertificateTrace, p: int) -> CertificateTrace:
    k = (p + 1) // 2
    bk = bernoulli(k)
    trace.add(f"B_{k}", bk, p, "0", _equals(0))
    h = class_number(-p)
    trace.params["h(-p)"] = h
    trace.checks[f"B_{k} = -h(-p)/2 mod p"] = residue_mod_p(bk, p) == residue_mod_p(Fraction(-h, 2), p)
    f1 = trace.add(f"{p + 1}/B_{k}", Fraction(p + 1) / bk, p, "0", _equals(0))
    f2 = trace.add(f"{p - 1}/B_{p - 1}", Fraction(p - 1) / bernoulli(p - 1), p, "1", _equals(1))
    trace.add("product", f1.value * f2.value, p, ">= 1", _at_least(1))
    return trace


def _cert_m2_deg5(trace: CertificateTrace, p: int) -> CertificateTrace:
    b_p1, b_2p, b_2p2 = bernoulli(p + 1), bernoulli(2 * p), bernoulli(2 * (p - 1))
    twelfth = residue_mod_p(Fraction(1, 12), p)
    trace.checks[f"B_{p + 1}/{p + 1} = 1/12 mod p (Kummer)"] = residue_mod_p(b_p1 / (p + 1), p) == twelfth
    trace.checks[f"B_{2 * p}/{2 * p} = 1/12 mod p (Kummer)"] = residue_mod_p(b_2p / (2 * p), p) == twelfth
    trace.add(f"B_{2 * p}", b_2p, p, ">= 1 (Adams)", _at_least(1))
    f1 = trace.add(f"{p + 1}/B_{p + 1}", Fraction(p + 1) / b_p1, p, "0", _equals(0))
    f2 = trace.add(f"{p}/B_{2 * p}", Fraction(p) / b_2p, p, "0", _equals(0))
    f3 = trace.add(f"{p - 1}/B_{2 * (p - 1)}", Fraction(p - 1) / b_2p2, p, "1", _equals(1))
    trace.add("product", f1.value * f2.value * f3.value, p, ">= 1", _at_least(1))
    trace.add(f"beta_p(3,{p + 1}) factor", bocherer_factor(3, p + 1).value, p, "0", _equals(0))
    return trace


def _cert_m2_deg4_square(trace: CertificateTrace, p: int) -> CertificateTrace:
    lead = Fraction(p + 1) / bernoulli(p + 1) * Fraction(p) / bernoulli(2 * p)
    trace.add(f"({p + 1}/B_{p + 1})({p}/B_{2 * p})", lead, p, ">= 0", _at_least(0))
    ratio = bernoulli(p - 1) / bernoulli(2 * (p - 1))
    trace.add(f"B_{p - 1}/B_{2 * (p - 1)}", ratio, p, "0", _equals(0))
    trace.checks[f"B_{p - 1}/B_{2 * (p - 1)} = 1 mod p"] = residue_mod_p(ratio, p) == 1
    return trace


def _cert_m2_deg4_nonsquare(trace: CertificateTrace, p: int) -> CertificateTrace:
    bound = trace.params.setdefault("bound", 100)
    lead = Fraction(p + 1) / bernoulli(p + 1) * Fraction(p) / bernoulli(2 * p)
    trace.add(f"({p + 1}/B_{p + 1})({p}/B_{2 * p})", lead, p, ">= 0", _at_least(0))
    b_2p2 = bernoulli(2 * (p - 1))
    for d0 in fundamental_discriminants(bound):
        ratio = gen_bernoulli(p - 1, QuadCharacter(d0)) / b_2p2
        trace.add(f"B_{p - 1},chi_{d0}/B_{2 * (p - 1)}", ratio, p, ">= 1", _at_least(1))
    return trace


def _cert_m3(trace: CertificateTrace, p: int) -> CertificateTrace:
    n = trace.params["n"]
    k = (n + p - 1) // 2
    trace.params["k"] = k
    even = bocherer_factor(n, k)
    odd = bocherer_factor(n + 1, k)
    fa = trace.add(f"EVEN factor (n={n}, k={k})", even.value, p, "finite (alpha_p)",
                   lambda v: v is not INFINITY)
    fb = trace.add(f"ODD factor (n={n + 1}, k={k})", odd.value, p, "alpha_p + 1",
                   lambda v: v is not INFINITY)
    fc = trace.add(f"{p - 1}/B_{p - 1}", Fraction(p - 1) / bernoulli(p - 1), p, "1", _equals(1))
    trace.add(f"ODD factor * p^-alpha_p", odd.value / Fraction(p) ** fa.valuation, p, ">= 1",
              _at_least(1))
    trace.params["alpha_p"] = fa.valuation
    trace.checks["beta - alpha = ord_p((p-1)/B_{p-1})"] = fb.valuation - fa.valuation == fc.valuation
    return trace


_CERTIFICATES = {
    Claim.M1_DEG3: _cert_m1_deg3,
    Claim.M2_DEG5: _cert_m2_deg5,
    Claim.M2_DEG4_SQUARE: _cert_m2_deg4_square,
    Claim.M2_DEG4_NONSQUARE: _cert_m2_deg4_nonsquare,
    Claim.M3: _cert_m3,
}
