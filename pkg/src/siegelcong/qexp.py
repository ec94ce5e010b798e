"""Truncated Fourier expansions of degree 1 and 2.

Degree-1 expansions are keyed by ``t``; degree-2 expansions by index triples
``(a, b, c)`` (see :mod:`siegelcong.quadforms`).  The truncation region is
``t <= bound`` or ``a + c <= bound`` (optionally also ``det2 <= det2_bound``);
indices inside the region that are not stored have coefficient zero.

A *classwise* degree-2 expansion stores one value per GL2(Z)-class and looks
up any index through :func:`~siegelcong.quadforms.gl2_canonical`.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import DenominatorDivisible
from .exact import format_rational, p_valuation, parse_rational, require_prime, residue_mod_p
from .quadforms import BinaryHalfIntegral, enumerate_psd, gl2_canonical, gl2_class_representatives

FORMAT_VERSION = 1


def _index_order(T):
    if isinstance(T, int):
        return (T,)
    return (T[0] + T[2], T[0], T[1], T[2])


def index_key(T) -> str:
    if isinstance(T, int):
        return str(T)
    return f"{T[0]},{T[1]},{T[2]}"


def parse_index_key(s: str):
    parts = [int(x) for x in s.split(",")]
    if len(parts) == 1:
        return parts[0]
    return BinaryHalfIntegral(*parts)


@dataclass(frozen=True)
class FourierExpansion:
    degree: int
    bound: int
    coefficients: Mapping = field(repr=False)
    label: str = ""
    classwise: bool = False
    det2_bound: Optional[int] = None

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise ValueError("only degrees 1 and 2 are supported")
        if self.classwise and self.degree != 2:
            raise ValueError("classwise storage only applies to degree 2")

    # -- region -------------------------------------------------------------
    def in_region(self, T) -> bool:
        if self.degree == 1:
            return 0 <= T <= self.bound
        T = BinaryHalfIntegral(*T)
        if not T.is_psd() or T.trace > self.bound:
            return False
        return self.det2_bound is None or T.det2 <= self.det2_bound

    def region_indices(self) -> list:
        if self.degree == 1:
            return list(range(self.bound + 1))
        out = enumerate_psd(self.bound)
        if self.det2_bound is not None:
            out = [T for T in out if T.det2 <= self.det2_bound]
        return out

    def stored_indices(self) -> list:
        """Indices carrying the data: class representatives, or the full region."""
        if self.classwise:
            return sorted(self.coefficients, key=_index_order)
        return self.region_indices()

    # -- access -------------------------------------------------------------
    def __getitem__(self, T) -> Fraction:
        if self.degree == 2:
            T = BinaryHalfIntegral(*T)
        if not self.in_region(T):
            raise KeyError(f"index {T} outside truncation region of {self.label or 'expansion'}")
        if self.classwise:
            T = gl2_canonical(T)
        return self.coefficients.get(T, Fraction(0))

    def items(self):
        for T in self.stored_indices():
            yield T, self[T]

    def with_label(self, label: str) -> "FourierExpansion":
        return FourierExpansion(self.degree, self.bound, self.coefficients, label,
                                self.classwise, self.det2_bound)

    def restrict(self, bound: int) -> "FourierExpansion":
        bound = min(bound, self.bound)
        if self.degree == 1:
            coeffs = {t: v for t, v in self.coefficients.items() if t <= bound}
        else:
            coeffs = {T: v for T, v in self.coefficients.items() if T[0] + T[2] <= bound}
        return FourierExpansion(self.degree, bound, coeffs, self.label, self.classwise,
                                self.det2_bound)

    def map_coefficients(self, fn: Callable, label: str) -> "FourierExpansion":
        coeffs = {T: fn(T, v) for T, v in self.coefficients.items()}
        return FourierExpansion(self.degree, self.bound, coeffs, label, self.classwise,
                                self.det2_bound)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> str:
        obj = {
            "degree": self.degree,
            "bound": self.bound,
            "label": self.label,
            "coefficients": {index_key(T): format_rational(v) for T, v in self.items()},
        }
        if self.classwise:
            obj["classwise"] = True
        if self.det2_bound is not None:
            obj["det2_bound"] = self.det2_bound
        obj["format_version"] = FORMAT_VERSION
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str) -> "FourierExpansion":
        obj = json.loads(text)
        coeffs = {parse_index_key(k): parse_rational(v) for k, v in obj["coefficients"].items()}
        return cls(obj["degree"], obj["bound"], coeffs, obj.get("label", ""),
                   obj.get("classwise", False), obj.get("det2_bound"))


def constant(degree: int, bound: int, value=1, label: str = "const") -> FourierExpansion:
    zero = 0 if degree == 1 else BinaryHalfIntegral(0, 0, 0)
    return FourierExpansion(degree, bound, {zero: Fraction(value)}, label)


def from_function(degree: int, bound: int, fn: Callable, label: str = "",
                  classwise: bool = False, det2_bound: Optional[int] = None) -> FourierExpansion:
    """Tabulate ``fn`` over the region (or over class representatives)."""
    if classwise:
        indices = gl2_class_representatives(bound, det2_bound)
    else:
        indices = FourierExpansion(degree, bound, {}, label, classwise, det2_bound).region_indices()
    coeffs = {T: Fraction(fn(T)) for T in indices}
    return FourierExpansion(degree, bound, coeffs, label, classwise, det2_bound)


def theta_op(F: FourierExpansion) -> FourierExpansion:
    """Multiply each coefficient by ``det(T)`` (``t`` in degree 1)."""
    if F.degree == 1:
        return F.map_coefficients(lambda t, v: v * t, f"Theta({F.label})")
    return F.map_coefficients(lambda T, v: v * Fraction(T[0] * T[2] * 4 - T[1] * T[1], 4),
                              f"Theta({F.label})")


def phi_op(F: FourierExpansion) -> FourierExpansion:
    """Siegel Phi: ``a(Phi F, t) = a(F, (t, 0, 0))``."""
    if F.degree != 2:
        raise ValueError("Phi lowers degree 2 to degree 1")
    coeffs = {t: F[(t, 0, 0)] for t in range(F.bound + 1)}
    return FourierExpansion(1, F.bound, coeffs, f"Phi({F.label})")


def linear_combine(terms: Sequence[tuple], label: str = "") -> FourierExpansion:
    """Exact linear combination ``sum c_i F_i`` over the common region."""
    if not terms:
        raise ValueError("need at least one term")
    degrees = {F.degree for _, F in terms}
    if len(degrees) != 1:
        raise ValueError("cannot combine expansions of different degrees")
    degree = degrees.pop()
    bound = min(F.bound for _, F in terms)
    d2 = [F.det2_bound for _, F in terms if F.det2_bound is not None]
    det2_bound = min(d2) if d2 else None
    classwise = all(F.classwise for _, F in terms)
    shell = FourierExpansion(degree, bound, {}, label, classwise, det2_bound)
    if classwise:
        keys = set()
        for _, F in terms:
            keys.update(T for T in F.coefficients if shell.in_region(T))
        indices = sorted(keys, key=_index_order)
    else:
        indices = shell.region_indices()
    coeffs = {}
    for T in indices:
        total = Fraction(0)
        for c, F in terms:
            if c:
                total += Fraction(c) * F[T]
        coeffs[T] = total
    return FourierExpansion(degree, bound, coeffs, label or "linear_combination",
                            classwise, det2_bound)


def multiply(F: FourierExpansion, G: FourierExpansion, label: str = "") -> FourierExpansion:
    """Cauchy product on the common truncation region."""
    if F.degree != G.degree:
        raise ValueError("cannot multiply expansions of different degrees")
    bound = min(F.bound, G.bound)
    label = label or f"({F.label})*({G.label})"
    if F.degree == 1:
        f = [F[t] for t in range(bound + 1)]
        g = [G[t] for t in range(bound + 1)]
        coeffs = {t: sum((f[i] * g[t - i] for i in range(t + 1)), Fraction(0))
                  for t in range(bound + 1)}
        return FourierExpansion(1, bound, coeffs, label)
    if F.det2_bound is not None or G.det2_bound is not None:
        raise ValueError("products need expansions complete over all psd indices")
    region = enumerate_psd(bound)
    f = [(T, F[T]) for T in region]
    g = [(T, G[T]) for T in region]
    coeffs = {T: Fraction(0) for T in region}
    for T1, v1 in f:
        if not v1:
            continue
        room = bound - T1.trace
        for T2, v2 in g:
            if T2.trace > room:
                break  # region is sorted by trace
            if v2:
                coeffs[T1 + T2] += v1 * v2
    return FourierExpansion(2, bound, coeffs, label)


def reduce_mod_p(F: FourierExpansion, p: int, indices: Optional[Iterable] = None) -> dict:
    """Residues of the stored coefficients (or of ``indices``) modulo ``p``."""
    require_prime(p)
    out = {}
    for T in (F.stored_indices() if indices is None else indices):
        v = F[T]
        try:
            out[T] = residue_mod_p(v, p)
        except DenominatorDivisible:
            raise DenominatorDivisible(v, p, index=T) from None
    return out


def _common_indices(F: FourierExpansion, G: FourierExpansion) -> list:
    if F.classwise and G.classwise:
        keys = {T for T in F.coefficients if G.in_region(T)}
        keys.update(T for T in G.coefficients if F.in_region(T))
        return sorted(keys, key=_index_order)
    return [T for T in F.region_indices() if G.in_region(T)]


def congruence_violations(F: FourierExpansion, G: FourierExpansion, p: int,
                          index_filter: Optional[Callable] = None) -> list:
    """Indices (passing ``index_filter``) where ``F`` and ``G`` differ mod ``p``."""
    if F.degree != G.degree:
        raise ValueError("degree mismatch")
    require_prime(p)
    indices = [T for T in _common_indices(F, G) if index_filter is None or index_filter(T)]
    rf = reduce_mod_p(F, p, indices)
    rg = reduce_mod_p(G, p, indices)
    return [T for T in indices if rf[T] != rg[T]]


class KernelMode(enum.Enum):
    THETA_KERNEL = "THETA_KERNEL"
    SINGULAR = "SINGULAR"


def kernel_report(F: FourierExpansion, p: int, mode: KernelMode = KernelMode.THETA_KERNEL) -> list:
    """Positive-definite stored indices that violate the mod-p property.

    For odd ``p``, ``det(T) = det2/4`` vanishes mod p exactly when ``det2``
    does, so the kernel test filters on ``det2``.
    """
    require_prime(p)
    mode = KernelMode(mode)
    if F.degree == 1:
        indices = [t for t in F.stored_indices() if t > 0]
        det_unit = lambda t: t % p != 0  # noqa: E731
    else:
        indices = [T for T in F.stored_indices() if T.is_positive_definite()]
        if p == 2:
            det_unit = lambda T: p_valuation(T.det, 2).value == 0  # noqa: E731
        else:
            det_unit = lambda T: T.det2 % p != 0  # noqa: E731
    if mode is KernelMode.THETA_KERNEL:
        indices = [T for T in indices if det_unit(T)]
    residues = reduce_mod_p(F, p, indices)
    return [T for T in indices if residues[T]]
