"""Additive bijection between GF(p^2) and the residue ring.

The map sends a + b*alpha to reduce(a*1 + b*u), where u is the image of
alpha: by default the first of reduce(i), reduce(j), reduce(k) whose span
with 1 covers the whole ring (checked at class level, since a unit can
collapse onto the scalar line after reduction even though its canonical
form looks independent), or any explicitly pinned image.  The additive
character on the field transports through the inverse map to a character
psi on the residues.
"""

from __future__ import annotations

import numpy as np

from .cyclotomic import CyclotomicInt
from .errors import NoIndependentUnit
from .galois_field import FieldElem, FieldSpec
from .quaternion import I, J, K, ONE, Quaternion
from .residue_ring import ResidueRing


class Correspondence:
    def __init__(self, field: FieldSpec, ring: ResidueRing, u: Quaternion,
                 ring_index_of_ab: np.ndarray):
        self.field = field
        self.ring = ring
        self.u = u
        self._to_ring = ring_index_of_ab          # [a][b] -> residue index
        n = len(ring.residues)
        self._g0 = np.empty(n, dtype=np.int64)
        self._g1 = np.empty(n, dtype=np.int64)
        ab = np.array([(a, b) for a in range(field.p) for b in range(field.p)])
        idx = ring_index_of_ab[ab[:, 0], ab[:, 1]]
        self._g0[idx] = ab[:, 0]
        self._g1[idx] = ab[:, 1]

    @property
    def g0(self) -> np.ndarray:
        """Constant-basis field coefficient per residue index (psi exponent)."""
        return self._g0

    def to_ring(self, x: FieldElem) -> Quaternion:
        a, b = x.coeffs
        return self.ring.residues[int(self._to_ring[a, b])]

    def to_field(self, r: Quaternion) -> FieldElem:
        i = self.ring.index[r]
        return FieldElem((int(self._g0[i]), int(self._g1[i])))

    def psi(self, r: Quaternion) -> CyclotomicInt:
        """The transported additive character, xi^(g0 of the field preimage)."""
        return CyclotomicInt.root(int(self._g0[self.ring.index[r]]), self.field.p)

    def psi_by_index(self, i: int) -> CyclotomicInt:
        return CyclotomicInt.root(int(self._g0[i]), self.field.p)

    def dump_table(self) -> list:
        """JSON pairs [[g0, g1], [a0, a1, a2, a3]] in field-element order."""
        out = []
        for g in self.field.elements:
            out.append([list(g.coeffs), list(self.to_ring(g).coeffs())])
        return out


def _coverage_index(ring: ResidueRing, u: Quaternion) -> np.ndarray | None:
    """The (a, b) -> residue-index table for u, or None if (1, u) does not
    additively generate all p^2 classes."""
    p = ring.p
    ab = np.array([(a, b) for a in range(p) for b in range(p)], dtype=np.int64)
    one = np.array(ONE.coeffs(), dtype=np.int64)
    u_arr = np.array(u.coeffs(), dtype=np.int64)
    pts = ab[:, :1] * one + ab[:, 1:] * u_arr
    idx = ring.indices_of(ring.batch_reduce(pts))
    if len(np.unique(idx)) != p * p:
        return None
    table = np.empty((p, p), dtype=np.int64)
    table[ab[:, 0], ab[:, 1]] = idx
    return table


def build_correspondence(field: FieldSpec, ring: ResidueRing,
                         alpha_image: Quaternion | None = None) -> Correspondence:
    if field.m != 2 or field.p != ring.p:
        raise ValueError(
            f"correspondence needs GF(p^2) with p = {ring.p}, got {field!r}")

    if alpha_image is not None:
        u = ring.reduce(alpha_image)
        table = _coverage_index(ring, u)
        if table is None:
            raise NoIndependentUnit(
                f"pinned alpha image {alpha_image} does not generate the ring with 1")
    else:
        for cand in (I, J, K):
            u = ring.reduce(cand)
            table = _coverage_index(ring, u)
            if table is not None:
                break
        else:
            raise NoIndependentUnit(
                "none of i, j, k generates the ring together with 1")

    corr = Correspondence(field, ring, u, table)
    _check_nondegenerate(corr)
    return corr


def _check_nondegenerate(corr: Correspondence):
    """Every nonzero residue d must admit an x with psi(d*x) != 1, and the
    character must sum to zero over the ring; both are exact table checks."""
    g0 = corr._g0
    counts = np.bincount(g0, minlength=corr.field.p)
    # sum_x xi^(g0(x)) = 0 iff each exponent occurs equally often
    assert (counts == counts[0]).all(), "character does not sum to zero"
    mul = corr.ring.mul_table
    nontrivial = (g0[mul] != 0).any(axis=1)
    assert nontrivial[1:].all(), "psi is degenerate for some nonzero residue"
