"""GF(p^m) arithmetic over a deterministic primitive polynomial.

Elements are coefficient vectors (g_0, ..., g_{m-1}) on the basis
1, alpha, ..., alpha^(m-1), with every coefficient reduced into [0, p).
The additive character maps g to xi^(g_0) for the complex p-th root xi,
returned as an exact cyclotomic integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .cyclotomic import CyclotomicInt
from .errors import InvalidParams


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _factorize(n: int) -> list[int]:
    """Distinct prime factors by trial division (n stays desk-scale)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True, slots=True)
class FieldElem:
    coeffs: tuple[int, ...]

    @property
    def g0(self) -> int:
        return self.coeffs[0]

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


class FieldSpec:
    """GF(p^m) with primitive element alpha = the class of the indeterminate.

    Use make_field() to construct; the primitive polynomial is either the
    lexicographically smallest monic primitive one (coefficient tuples ordered
    from the constant term) or an explicit override.
    """

    def __init__(self, p: int, m: int, primitive_poly: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p ** m
        self.primitive_poly = primitive_poly
        self.zero = FieldElem((0,) * m)
        self.one = self.element([1] + [0] * (m - 1))
        self.alpha = self.element([0, 1] + [0] * (m - 2)) if m >= 2 else \
            self.element([(-primitive_poly[0]) % p])
        self._build_logs()

    def element(self, coeffs) -> FieldElem:
        coeffs = tuple(int(c) % self.p for c in coeffs)
        if len(coeffs) != self.m:
            raise ValueError(f"need {self.m} coefficients, got {len(coeffs)}")
        return FieldElem(coeffs)

    def add(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return FieldElem(tuple((a + b) % self.p for a, b in zip(x.coeffs, y.coeffs)))

    def neg(self, x: FieldElem) -> FieldElem:
        return FieldElem(tuple((-a) % self.p for a in x.coeffs))

    def sub(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return self.add(x, self.neg(y))

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        return FieldElem(_polymulmod(x.coeffs, y.coeffs, self.primitive_poly, self.p))

    def pow(self, x: FieldElem, e: int) -> FieldElem:
        result = self.one
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            base = self.mul(base, base)
        return result

    def _build_logs(self):
        # elements[0] = 0 and elements[1 + e] = alpha^e: the discrete-log
        # order the enumerator variables z_0..z_{q-1} are indexed by.
        powers = []
        x = self.one
        for _ in range(self.q - 1):
            powers.append(x)
            x = self.mul(x, self.alpha)
        if x != self.one or len(set(powers)) != self.q - 1:
            raise InvalidParams(
                f"polynomial {self.primitive_poly} is not primitive over GF({self.p})")
        self.elements: tuple[FieldElem, ...] = (self.zero, *powers)
        self.dlog: dict[FieldElem, int] = {g: e for e, g in enumerate(powers)}
        self.index: dict[FieldElem, int] = {g: t for t, g in enumerate(self.elements)}

    @cached_property
    def chi1_table(self) -> dict[FieldElem, CyclotomicInt]:
        return {g: chi1(g, self) for g in self.elements}

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, m={self.m}, poly={self.primitive_poly})"


def chi1(g: FieldElem, field: FieldSpec) -> CyclotomicInt:
    """Additive character: xi^(g_0)."""
    return CyclotomicInt.root(g.g0, field.p)


def _polymulmod(a, b, modpoly, p) -> tuple[int, ...]:
    m = len(modpoly) - 1
    prod_c = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            prod_c[i + j] = (prod_c[i + j] + ca * cb) % p
    # reduce x^m = -(modpoly[:-1]) repeatedly, highest degree first
    for d in range(len(prod_c) - 1, m - 1, -1):
        c = prod_c[d]
        if c == 0:
            continue
        prod_c[d] = 0
        for t in range(m):
            prod_c[d - m + t] = (prod_c[d - m + t] - c * modpoly[t]) % p
    out = prod_c[:m] + [0] * (m - len(prod_c))
    return tuple(v % p for v in out[:m])


def _x_has_full_order(modpoly, p: int, m: int) -> bool:
    """True iff the class of x has multiplicative order exactly p^m - 1."""
    n = p ** m - 1
    x = tuple([0, 1] + [0] * (m - 2)) if m >= 2 else ((-modpoly[0]) % p,)

    def powx(e: int):
        result = tuple([1] + [0] * (m - 1))
        base = x
        while e:
            if e & 1:
                result = _polymulmod(result, base, modpoly, p)
            e >>= 1
            base = _polymulmod(base, base, modpoly, p)
        return result

    one = tuple([1] + [0] * (m - 1))
    if powx(n) != one:
        return False
    return all(powx(n // ell) != one for ell in _factorize(n))


def make_field(p: int, m: int, primitive_poly=None) -> FieldSpec:
    """Construct GF(p^m).

    Without an override the monic primitive polynomial is found by
    lexicographic search over constant-term-first coefficient tuples, so the
    construction is deterministic.  An override pins any other convention
    (e.g. the x^2 - x - 1 that makes alpha^2 = alpha + 1 in GF(9)); it is
    validated for primitivity.
    """
    if not is_odd_prime(p):
        raise InvalidParams(f"p must be an odd prime, got {p}")
    if m < 1:
        raise InvalidParams(f"extension degree must be >= 1, got {m}")

    if primitive_poly is not None:
        poly = tuple(int(c) % p for c in primitive_poly)
        if len(poly) != m + 1 or tuple(primitive_poly)[-1] % p != 1:
            raise InvalidParams(
                f"override polynomial must be monic of degree {m}: {primitive_poly}")
        if not _x_has_full_order(poly, p, m):
            raise InvalidParams(f"override polynomial {primitive_poly} is not primitive")
        return FieldSpec(p, m, poly)

    for lower in product(range(p), repeat=m):
        poly = tuple(lower) + (1,)
        if _x_has_full_order(poly, p, m):
            return FieldSpec(p, m, poly)
    raise InvalidParams(f"no primitive polynomial of degree {m} over GF({p})")
