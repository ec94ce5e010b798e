"""Golay code, Leech lattice, short-vector counts and theta series.

The Leech lattice is realized inside ``Z^24`` at scale ``1/sqrt(8)``: a vector
``x`` belongs to it when all coordinates share a parity ``m``, the positions
with ``x_i = m + 2 (mod 4)`` support a Golay codeword, and
``sum(x) = 4m (mod 8)``.  Gram matrices use ``L[x] = x.x / 8``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Optional, Sequence

import numpy as np

from .characters import kronecker
from .eisenstein import delta_expansion, eis1
from .errors import SiegelCongError
from .exact import format_rational, parse_rational, residue_mod_p
from .qexp import FourierExpansion, linear_combine
from .quadforms import BinaryHalfIntegral, FormClassList, class_list, gl2_class_representatives
from .report import CongruenceReport, Status

QUADRATIC_RESIDUES_23 = frozenset(pow(x, 2, 23) for x in range(1, 23))


class ConstructionError(SiegelCongError):
    code = "CONSTRUCTION_FAILED"


# ---------------------------------------------------------------------------
# Golay code


def _gf_mul(a: int, b: int, modulus: int, degree: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> degree & 1:
            a ^= modulus
    return out


def _gf_pow(a: int, e: int, modulus: int, degree: int) -> int:
    out = 1
    while e:
        if e & 1:
            out = _gf_mul(out, a, modulus, degree)
        a = _gf_mul(a, a, modulus, degree)
        e >>= 1
    return out


def qr_generator_polynomial() -> list[int]:
    """Coefficients (low degree first) of ``prod_{r in QR(23)} (X - beta^r)`` over GF(2).

    ``beta`` is a primitive 23rd root of unity in GF(2^11) = GF(2)[x]/(x^11+x^2+1).
    """
    modulus, degree = (1 << 11) | (1 << 2) | 1, 11
    beta = None
    for gamma in range(2, 1 << 11):
        cand = _gf_pow(gamma, (2**11 - 1) // 23, modulus, degree)
        if cand != 1:
            beta = cand
            break
    poly = [1]  # coefficients in GF(2^11)
    for r in sorted(QUADRATIC_RESIDUES_23):
        root = _gf_pow(beta, r, modulus, degree)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= _gf_mul(c, root, modulus, degree)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise ConstructionError("QR polynomial does not have binary coefficients")
    return poly


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class BinaryCode:
    length: int
    generator_rows: tuple[int, ...]  # bit i of a row = coordinate i

    @property
    def dimension(self) -> int:
        return len(self.generator_rows)

    def codewords(self) -> list[int]:
        words = [0]
        for row in self.generator_rows:
            words += [w ^ row for w in words]
        return words

    def weight_enumerator(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.codewords():
            k = _popcount(w)
            out[k] = out.get(k, 0) + 1
        return dict(sorted(out.items()))

    def minimum_weight(self) -> int:
        return min(_popcount(w) for w in self.codewords() if w)

    def is_self_dual(self) -> bool:
        rows = self.generator_rows
        orth = all(_popcount(a & b) % 2 == 0 for a in rows for b in rows)
        return orth and 2 * self.dimension == self.length

    def vector(self, word: int) -> list[int]:
        return [(word >> i) & 1 for i in range(self.length)]

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "dimension": self.dimension,
            "generator_rows": ["".join(str(b) for b in self.vector(r)) for r in self.generator_rows],
        }


@lru_cache(maxsize=1)
def golay_code() -> BinaryCode:
    """Extended binary Golay code from the length-23 quadratic-residue code."""
    g = qr_generator_polynomial()
    rows = []
    for shift in range(12):
        word = 0
        for i, c in enumerate(g):
            if c:
                word |= 1 << (i + shift)
        if _popcount(word) % 2:
            word |= 1 << 23
        rows.append(word)
    code = BinaryCode(24, tuple(rows))
    enum_ = code.weight_enumerator()
    if sum(enum_.values()) != 4096 or code.minimum_weight() != 8 or enum_.get(8) != 759:
        raise ConstructionError(f"not the extended Golay code: {enum_}")
    if not code.is_self_dual():
        raise ConstructionError("Golay code is not self-dual")
    return code


# ---------------------------------------------------------------------------
# integer lattices


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style HNF; returns the nonzero rows (a basis of the row lattice)."""
    A = [list(r) for r in rows]
    m, n = len(A), len(A[0])
    r = 0
    for col in range(n):
        while True:
            nz = [i for i in range(r, m) if A[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][col]))
            A[r], A[piv] = A[piv], A[r]
            clean = True
            for i in range(r + 1, m):
                if A[i][col]:
                    q = A[i][col] // A[r][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    clean = clean and A[i][col] == 0
            if clean:
                break
        if r < m and A[r][col]:
            if A[r][col] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][col] // A[r][col]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
            if r == m:
                break
    return A[:r]


def exact_determinant(M: Sequence[Sequence]) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if A[r][i]), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            A[i], A[piv] = A[piv], A[i]
            det = -det
        det *= A[i][i]
        inv = 1 / A[i][i]
        for r in range(i + 1, n):
            if A[r][i]:
                f = A[r][i] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[i])]
    return det


def ldl_decomposition(G: Sequence[Sequence]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact ``x^T G x = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2``."""
    n = len(G)
    A = [[Fraction(x) for x in row] for row in G]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = A[i][j] / d[i]
        for r in range(i + 1, n):
            for s in range(i + 1, n):
                A[r][s] -= mu[i][r] * d[i] * mu[i][s]
    return d, mu


def lll_reduce(basis: Sequence[Sequence[int]], delta: float = 0.99) -> list[list[int]]:
    """LLL on integer rows.

    Gram-Schmidt data is floating point and only steers the unimodular integer
    updates, so the output always spans the same lattice.
    """
    B = [list(map(int, r)) for r in basis]
    n = len(B)

    def gso(B):
        M = np.array(B, dtype=float)
        Q = np.zeros_like(M)
        mu = np.zeros((n, n))
        bb = np.zeros(n)
        for i in range(n):
            v = M[i].copy()
            for j in range(i):
                mu[i, j] = M[i] @ Q[j] / bb[j]
                v -= mu[i, j] * Q[j]
            Q[i] = v
            bb[i] = v @ v
        return mu, bb

    mu, bb = gso(B)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                mu, bb = gso(B)
        if bb[k] >= (delta - mu[k, k - 1] ** 2) * bb[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            mu, bb = gso(B)
            k = max(k - 1, 1)
    return B


@dataclass
class IntegralLattice:
    gram: tuple[tuple[Fraction, ...], ...]
    basis: Optional[list[list[int]]] = None
    scale: Fraction = Fraction(1)
    provenance: str = ""
    _kernel_data: Optional[tuple] = field(default=None, repr=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def determinant(self) -> Fraction:
        return exact_determinant(self.gram)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.gram for x in row)

    def is_even(self) -> bool:
        return self.is_integral() and all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def norm(self, coords: Sequence[int]) -> Fraction:
        g = self.gram
        return sum((g[i][j] * coords[i] * coords[j] for i in range(self.rank) for j in range(self.rank)),
                   Fraction(0))

    def kernel_data(self):
        if self._kernel_data is None:
            if not self.is_integral():
                raise ValueError("enumeration kernel needs an integral Gram matrix")
            d, mu = ldl_decomposition(self.gram)
            G = np.array([[int(x) for x in row] for row in self.gram], dtype=np.int64)
            self._kernel_data = (G, np.array([float(x) for x in d]),
                                 np.array([[float(x) for x in row] for row in mu]))
        return self._kernel_data

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "provenance": self.provenance,
            "scale": format_rational(self.scale),
            "gram": [[format_rational(x) for x in row] for row in self.gram],
            "basis": self.basis,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "IntegralLattice":
        obj = json.loads(text)
        gram = tuple(tuple(parse_rational(x) for x in row) for row in obj["gram"])
        return cls(gram, obj.get("basis"), parse_rational(obj.get("scale", "1/1")),
                   obj.get("provenance", ""))


def lattice_from_gram(gram, provenance: str = "") -> IntegralLattice:
    return IntegralLattice(tuple(tuple(Fraction(x) for x in row) for row in gram), None,
                           Fraction(1), provenance)


def _gram_of(basis, scale: Fraction) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(scale * sum(a * b for a, b in zip(u, v)) for v in basis) for u in basis)


# ---------------------------------------------------------------------------
# Leech lattice


def leech_contains(x: Sequence[int], code: Optional[BinaryCode] = None) -> bool:
    """Membership in the Leech lattice (coordinates scaled by sqrt 8)."""
    code = code or golay_code()
    if len(x) != 24:
        return False
    m = x[0] % 2
    if any(v % 2 != m for v in x):
        return False
    if sum(x) % 8 != 4 * m:
        return False
    support = 0
    for i, v in enumerate(x):
        if v % 4 == m + 2:
            support |= 1 << i
    return support in _codeword_set(code)


@lru_cache(maxsize=4)
def _codeword_set(code: BinaryCode) -> frozenset:
    return frozenset(code.codewords())


def leech_generators(code: Optional[BinaryCode] = None) -> list[list[int]]:
    code = code or golay_code()
    gens = [[2 * b for b in code.vector(row)] for row in code.generator_rows]
    for i in range(1, 24):
        v = [0] * 24
        v[0], v[i] = 4, -4
        gens.append(v)
    gens.append([-3] + [1] * 23)
    return gens


@lru_cache(maxsize=1)
def leech_lattice() -> IntegralLattice:
    """Leech lattice with an LLL-reduced basis; validated on construction."""
    code = golay_code()
    gens = leech_generators(code)
    # 8 Z^24 lies inside the lattice; adding it completes the span of gens
    completion = [[8 if j == i else 0 for j in range(24)] for i in range(24)]
    for v in gens + completion:
        if not leech_contains(v, code):
            raise ConstructionError(f"generator {v} fails the membership predicate")
    basis = hermite_normal_form(gens + completion)
    if len(basis) != 24:
        raise ConstructionError("generators do not span a rank-24 lattice")
    basis = lll_reduce(basis)
    scale = Fraction(1, 8)
    lattice = IntegralLattice(_gram_of(basis, scale), basis, scale, "Leech: Golay predicate + HNF + LLL")
    if lattice.determinant() != 1:
        raise ConstructionError(f"determinant {lattice.determinant()} != 1")
    if not lattice.is_even():
        raise ConstructionError("Gram matrix is not even")
    counts = short_vector_counts(lattice, 2)
    if counts.get(2, 0) != 0:
        raise ConstructionError("lattice has vectors of norm 2")
    return lattice


def short_vector_counts(lattice: IntegralLattice, max_norm: int) -> dict[int, int]:
    """Number of lattice vectors of each norm ``0, 1, ..., max_norm`` (``x`` and ``-x`` both counted)."""
    from ._enum import count_by_norm

    G, q, mu = lattice.kernel_data()
    counts = count_by_norm(G, q, mu, int(max_norm))
    return {m: int(c) for m, c in enumerate(counts)}


def lattice_theta1(lattice: IntegralLattice, t_max: int,
                   counts: Optional[dict] = None) -> FourierExpansion:
    """Degree-1 theta series: ``a(t)`` counts vectors with ``L[x] = 2t``.

    ``counts`` may carry a precomputed :func:`short_vector_counts` table
    reaching at least norm ``2 t_max``.
    """
    if counts is None or max(counts) < 2 * t_max:
        counts = short_vector_counts(lattice, 2 * t_max)
    coeffs = {t: Fraction(counts.get(2 * t, 0)) for t in range(t_max + 1)}
    return FourierExpansion(1, t_max, coeffs, f"theta_{lattice.provenance.split(':')[0]}")


def leech_identity_expansion(t_max: int) -> FourierExpansion:
    """``E_12 - (65520/691) Delta``."""
    return linear_combine([(1, eis1(12, t_max)), (Fraction(-65520, 691), delta_expansion(t_max))],
                          label="E_12 - 65520/691 Delta")


def leech_theta_identity_check(t_max: int, enum_bound: int = 3,
                               counts: Optional[dict] = None) -> CongruenceReport:
    """Check theta_Leech against the weight-12 identity, then the mod-23 vanishing."""
    start = time.perf_counter()
    report = CongruenceReport("LEECH23", {"t_bound": t_max, "enum_bound": enum_bound})
    ident = leech_identity_expansion(max(t_max, enum_bound))
    theta = lattice_theta1(leech_lattice(), enum_bound, counts)
    mismatch = [t for t in range(enum_bound + 1) if theta[t] != ident[t]]
    report.add_violations("theta", mismatch)
    if not mismatch:
        report.notes.append(f"identity verified by enumeration for t <= {enum_bound}: "
                            + ", ".join(str(theta[t]) for t in range(enum_bound + 1)))
    bad = [t for t in range(1, t_max + 1)
           if kronecker(-23, t) == -1 and residue_mod_p(ident[t], 23) != 0]
    report.add_violations("t", bad)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report.settle()


# ---------------------------------------------------------------------------
# genus theta series of binary forms


@dataclass(frozen=True)
class GenusBQF:
    p: int
    classes: FormClassList

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(1, w) for w in self.classes.aut_orders)

    @property
    def mass(self) -> Fraction:
        return sum(self.weights, Fraction(0))


def genus_bqf(p: int) -> GenusBQF:
    if p % 4 != 3:
        raise ValueError("the genus of discriminant -p needs p = 3 mod 4")
    return GenusBQF(p, class_list(-p))


def representations(form, n_max: int) -> dict[int, list[tuple[int, int]]]:
    """Vectors ``(x, y)`` with ``Q(x, y) = n`` for ``0 <= n <= n_max``."""
    a, b, c = form
    disc = 4 * a * c - b * b
    # Q(x,y) >= disc*y^2/(4a) and >= disc*x^2/(4c)
    ymax = isqrt(4 * a * n_max // disc) + 1
    xmax = isqrt(4 * c * n_max // disc) + 1
    out: dict[int, list[tuple[int, int]]] = {n: [] for n in range(n_max + 1)}
    for x in range(-xmax, xmax + 1):
        for y in range(-ymax, ymax + 1):
            n = a * x * x + b * x * y + c * y * y
            if n <= n_max:
                out[n].append((x, y))
    return out


def _pair_count(form, reps, T) -> int:
    a, b, c = form
    ta, tb, tc = T
    count = 0
    for x1, y1 in reps[ta]:
        # bilinear form with Gram [[2a, b], [b, 2c]]
        u, v = 2 * a * x1 + b * y1, b * x1 + 2 * c * y1
        for x2, y2 in reps[tc]:
            if u * x2 + v * y2 == tb:
                count += 1
    return count


def genus_theta(p: int, degree: int, bound: int, det2_bound: Optional[int] = None) -> FourierExpansion:
    """Mass-weighted average of the theta series over the classes of discriminant ``-p``."""
    genus = genus_bqf(p)
    weights, mass = genus.weights, genus.mass
    label = f"genus_theta^({degree})(-{p})"
    if degree == 1:
        coeffs = {t: Fraction(0) for t in range(bound + 1)}
        for form, w in zip(genus.classes.classes, weights):
            for n, vecs in representations(form, bound).items():
                coeffs[n] += w * len(vecs)
        return FourierExpansion(1, bound, {t: v / mass for t, v in coeffs.items()}, label)
    if degree != 2:
        raise ValueError("degree must be 1 or 2")
    reps = [representations(form, bound) for form in genus.classes.classes]
    coeffs = {}
    for T in gl2_class_representatives(bound, det2_bound):
        total = Fraction(0)
        for form, w, r in zip(genus.classes.classes, weights, reps):
            total += w * _pair_count(form, r, T)
        coeffs[T] = total / mass
    return FourierExpansion(2, bound, coeffs, label, classwise=True, det2_bound=det2_bound)
