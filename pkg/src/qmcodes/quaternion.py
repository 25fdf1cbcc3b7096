"""Exact arithmetic on Lipschitz quaternion integers.

A Lipschitz integer is a0 + a1*i + a2*j + a3*k with integer coordinates.
Multiplication follows the Hamilton relations

    i^2 = j^2 = k^2 = -1,   ij = -ji = k,   jk = -kj = i,   ki = -ik = j,

so the product is associative but not commutative.  Coordinates are plain
Python ints: all arithmetic is exact at any magnitude, there is no overflow
to detect.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


@dataclass(frozen=True, slots=True)
class Quaternion:
    a0: int = 0
    a1: int = 0
    a2: int = 0
    a3: int = 0

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "Quaternion":
        a0, a1, a2, a3 = (int(c) for c in coeffs)
        return cls(a0, a1, a2, a3)

    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs())

    def __add__(self, other: "Quaternion | int") -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Quaternion(self.a0 + other.a0, self.a1 + other.a1,
                          self.a2 + other.a2, self.a3 + other.a3)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion | int") -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Quaternion | int") -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.a0, -self.a1, -self.a2, -self.a3)

    def __mul__(self, other: "Quaternion | int") -> "Quaternion":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.coeffs()
        b0, b1, b2, b3 = other.coeffs()
        return Quaternion(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )

    def __rmul__(self, other: int) -> "Quaternion":
        # Integer scalars commute with everything, so left scalar
        # multiplication can reuse __mul__.
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.a0, -self.a1, -self.a2, -self.a3)

    def norm(self) -> int:
        """N(q) = q * conjugate(q) = a0^2 + a1^2 + a2^2 + a3^2."""
        return self.a0 ** 2 + self.a1 ** 2 + self.a2 ** 2 + self.a3 ** 2

    def weight(self) -> int:
        """Sum of absolute coordinate values, |a0|+|a1|+|a2|+|a3|."""
        return abs(self.a0) + abs(self.a1) + abs(self.a2) + abs(self.a3)

    def __bool__(self) -> bool:
        return self.coeffs() != (0, 0, 0, 0)

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for value, sym in zip(self.coeffs(), ("", "i", "j", "k")):
            if value == 0:
                continue
            sign = "-" if value < 0 else ("+" if parts else "")
            mag = abs(value)
            digits = "" if (mag == 1 and sym) else str(mag)
            parts.append(f"{sign}{digits}{sym}")
        return "".join(parts)


def _coerce(value) -> "Quaternion":
    if isinstance(value, Quaternion):
        return value
    if isinstance(value, int):
        return Quaternion(value, 0, 0, 0)
    return NotImplemented


def coord_weight(q: Quaternion) -> int:
    return q.weight()


ZERO = Quaternion(0, 0, 0, 0)
ONE = Quaternion(1, 0, 0, 0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)

# Fixed unit order (+1, -1, +i, -i, +j, -j, +k, -k): orbit construction and
# the displayed kernel sums iterate units in exactly this order.
UNITS: tuple[Quaternion, ...] = (ONE, -ONE, I, -I, J, -J, K, -K)
