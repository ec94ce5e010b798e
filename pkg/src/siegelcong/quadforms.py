"""Binary quadratic forms and the degree-2 index set.

A triple ``(a, b, c)`` stands for the half-integral matrix
``[[a, b/2], [b/2, c]]`` and, equally, for the form ``a x^2 + b xy + c y^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, NamedTuple

from .characters import QuadCharacter, quad_char


class BinaryHalfIntegral(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def det2(self) -> int:
        """``det(2T) = 4ac - b^2``."""
        return 4 * self.a * self.c - self.b * self.b

    @property
    def det(self) -> Fraction:
        return Fraction(self.det2, 4)

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    @property
    def trace(self) -> int:
        return self.a + self.c

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.det2 > 0

    def is_psd(self) -> bool:
        return self.a >= 0 and self.c >= 0 and self.det2 >= 0

    def __add__(self, other):  # type: ignore[override]
        return BinaryHalfIntegral(self.a + other.a, self.b + other.b, self.c + other.c)

    def key(self) -> str:
        return f"{self.a},{self.b},{self.c}"


def gauss_reduce(a: int, b: int, c: int) -> BinaryHalfIntegral:
    """SL2(Z)-reduce a positive definite form to ``-a < b <= a <= c``."""
    disc = b * b - 4 * a * c
    if a <= 0 or disc >= 0:
        raise ValueError(f"({a},{b},{c}) is not positive definite")
    while True:
        r = (a - b) // (2 * a)
        b += 2 * r * a
        c = (b * b - disc) // (4 * a)
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if a == c and b < 0:
        b = -b
    return BinaryHalfIntegral(a, b, c)


def is_reduced(a: int, b: int, c: int) -> bool:
    return -a < b <= a <= c and (b >= 0 or a != c)


def gl2_canonical(T) -> BinaryHalfIntegral:
    """Representative of the GL2(Z)-class of a positive semidefinite index."""
    a, b, c = T
    if a == b == c == 0:
        return BinaryHalfIntegral(0, 0, 0)
    det2 = 4 * a * c - b * b
    if det2 < 0 or a < 0 or c < 0:
        raise ValueError(f"({a},{b},{c}) is not positive semidefinite")
    if det2 == 0:
        return BinaryHalfIntegral(gcd(gcd(a, b), c), 0, 0)
    r = gauss_reduce(a, b, c)
    return BinaryHalfIntegral(r.a, abs(r.b), r.c)


def aut_order(form) -> int:
    """Order of the proper automorphism group of a positive definite form."""
    a, b, c = gauss_reduce(*form)
    if a == b == c:
        return 6
    if b == 0 and a == c:
        return 4
    return 2


@dataclass(frozen=True)
class FormClassList:
    discriminant: int
    classes: tuple[BinaryHalfIntegral, ...]
    aut_orders: tuple[int, ...]

    @property
    def class_number(self) -> int:
        return sum(1 for f in self.classes if f.content == 1)

    def __len__(self) -> int:
        return len(self.classes)


def _check_negative_discriminant(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"{D} is not a negative discriminant")


def class_list(D: int, primitive: bool = True) -> FormClassList:
    """Reduced forms of discriminant ``D < 0`` (SL2-classes, signed ``b``).

    With ``primitive=False`` the imprimitive classes are included too, which is
    what the Hurwitz class number counts.
    """
    _check_negative_discriminant(D)
    forms = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if not is_reduced(a, b, c):
                continue
            form = BinaryHalfIntegral(a, b, c)
            if primitive and form.content != 1:
                continue
            forms.append(form)
    forms.sort()
    return FormClassList(D, tuple(forms), tuple(aut_order(f) for f in forms))


def class_number(D: int) -> int:
    return len(class_list(D))


def hurwitz_class_number(N: int) -> Fraction:
    """Weighted count of all classes of discriminant ``-N`` (weights 1/2, 1/3)."""
    if N == 0:
        return Fraction(-1, 12)
    if (-N) % 4 not in (0, 1):
        return Fraction(0)
    cl = class_list(-N, primitive=False)
    return sum((Fraction(2, w) for w in cl.aut_orders), Fraction(0))


def chi_of_matrix(T) -> QuadCharacter:
    """The character ``(-det(2T) / .)`` of a positive definite index."""
    T = BinaryHalfIntegral(*T)
    if not T.is_positive_definite():
        raise ValueError(f"{tuple(T)} is not positive definite")
    return quad_char(-T.det2)


def enumerate_psd(trace_bound: int) -> list[BinaryHalfIntegral]:
    """All psd indices with ``a + c <= trace_bound``, ordered by (trace, a, b)."""
    out = []
    for tr in range(trace_bound + 1):
        for a in range(tr + 1):
            c = tr - a
            bmax = isqrt(4 * a * c)
            out.extend(BinaryHalfIntegral(a, b, c) for b in range(-bmax, bmax + 1))
    return out


def iter_pos_def_reduced(det2_bound: int) -> Iterator[BinaryHalfIntegral]:
    for a in range(1, isqrt(det2_bound // 3) + 1):
        for b in range(0, a + 1):
            c = a
            while 4 * a * c - b * b <= det2_bound:
                if 4 * a * c - b * b > 0:
                    yield BinaryHalfIntegral(a, b, c)
                c += 1


def enumerate_pos_def_reduced(det2_bound: int) -> list[BinaryHalfIntegral]:
    """GL2(Z)-class representatives ``0 <= b <= a <= c`` with ``0 < det2 <= det2_bound``.

    Sorted by (det2, a, b).
    """
    forms = list(iter_pos_def_reduced(det2_bound))
    forms.sort(key=lambda f: (f.det2, f.a, f.b, f.c))
    return forms


def gl2_class_representatives(trace_bound: int, det2_bound=None) -> list[BinaryHalfIntegral]:
    """Canonical GL2-class representatives of psd indices with trace <= trace_bound.

    A reduced form has the least trace in its class, so this lists exactly the
    classes meeting the region ``a + c <= trace_bound`` (and ``det2 <= det2_bound``).
    """
    out = [BinaryHalfIntegral(0, 0, 0)]
    out.extend(BinaryHalfIntegral(t, 0, 0) for t in range(1, trace_bound + 1))
    for a in range(1, trace_bound // 2 + 1):
        for b in range(0, a + 1):
            for c in range(a, trace_bound - a + 1):
                det2 = 4 * a * c - b * b
                if det2_bound is not None and det2 > det2_bound:
                    break
                if det2 > 0:
                    out.append(BinaryHalfIntegral(a, b, c))
    out.sort(key=lambda T: (T.a + T.c, T.a, T.b, T.c))
    return out
