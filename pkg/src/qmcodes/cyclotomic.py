"""Exact arithmetic in Z[xi_p], sums of p-th roots of unity.

Elements are stored on the power basis 1, xi, ..., xi^(p-2) after reducing
with the relation 1 + xi + ... + xi^(p-1) = 0, which makes the representation
unique: two values are equal iff their coefficient vectors are equal, and a
value is a rational integer iff every coefficient beyond the constant one is
zero.
"""

from __future__ import annotations

from .errors import MixedOrder, NotRational


class CyclotomicInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs):
        if p < 2:
            raise ValueError(f"root order must be >= 2, got {p}")
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != p - 1:
            raise ValueError(f"need {p - 1} coefficients for order {p}, got {len(coeffs)}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicInt is immutable")

    @classmethod
    def from_int(cls, n: int, p: int) -> "CyclotomicInt":
        return cls(p, (n,) + (0,) * (p - 2))

    @classmethod
    def zero(cls, p: int) -> "CyclotomicInt":
        return cls.from_int(0, p)

    @classmethod
    def one(cls, p: int) -> "CyclotomicInt":
        return cls.from_int(1, p)

    @classmethod
    def root(cls, e: int, p: int) -> "CyclotomicInt":
        """xi^e, with the exponent reduced mod p."""
        e %= p
        if e < p - 1:
            coeffs = [0] * (p - 1)
            coeffs[e] = 1
            return cls(p, coeffs)
        # xi^(p-1) = -(1 + xi + ... + xi^(p-2))
        return cls(p, (-1,) * (p - 1))

    @classmethod
    def from_exponent_counts(cls, counts, p: int) -> "CyclotomicInt":
        """sum over e of counts[e] * xi^e, counts indexed 0..p-1."""
        counts = list(counts)
        if len(counts) != p:
            raise ValueError(f"need {p} exponent counts, got {len(counts)}")
        top = counts[p - 1]
        return cls(p, [int(c) - top for c in counts[: p - 1]])

    def _check(self, other: "CyclotomicInt"):
        if self.p != other.p:
            raise MixedOrder(f"root orders differ: {self.p} vs {other.p}")

    def __add__(self, other) -> "CyclotomicInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return CyclotomicInt(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other) -> "CyclotomicInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CyclotomicInt":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "CyclotomicInt":
        return CyclotomicInt(self.p, [-c for c in self.coeffs])

    def __mul__(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return CyclotomicInt(self.p, [c * other for c in self.coeffs])
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        self._check(other)
        p = self.p
        # Convolve on exponents 0 .. 2p-4, fold exponents mod p, then
        # eliminate xi^(p-1) with the minimal-polynomial relation.
        acc = [0] * p
        for ea, ca in enumerate(self.coeffs):
            if ca == 0:
                continue
            for eb, cb in enumerate(other.coeffs):
                if cb == 0:
                    continue
                acc[(ea + eb) % p] += ca * cb
        top = acc[p - 1]
        return CyclotomicInt(p, [acc[e] - top for e in range(p - 1)])

    def __rmul__(self, other) -> "CyclotomicInt":
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def _coerce(self, other):
        if isinstance(other, CyclotomicInt):
            return other
        if isinstance(other, int):
            return CyclotomicInt.from_int(other, self.p)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.p, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int:
        """The integer value of a rational element; NotRational otherwise."""
        if not self.is_rational():
            raise NotRational(
                f"cyclotomic value is not a rational integer: {self.coeffs}",
                coeffs=self.coeffs,
            )
        return self.coeffs[0]

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicInt":
        return cls(obj["p"], obj["coeffs"])

    def __repr__(self) -> str:
        return f"CyclotomicInt(p={self.p}, coeffs={self.coeffs})"

    def __str__(self) -> str:
        if not self:
            return "0"
        parts = []
        for e, c in enumerate(self.coeffs):
            if c == 0:
                continue
            sym = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            digits = "" if (mag == 1 and sym) else str(mag)
            parts.append(f"{sign}{digits}{sym}")
        return "".join(parts)


def root_of_unity(e: int, p: int) -> CyclotomicInt:
    return CyclotomicInt.root(e, p)
