"""The residue ring H[Z]_pi for a prime quaternion pi of odd prime norm p.

Residue classes are the cosets x + H[Z]*pi (left multiples of pi), of which
there are exactly p^2.  The canonical representative of a class is found by
right division: among the candidates x - q*pi, with every coordinate of q
ranging over the three integers nearest the rational quotient x*conj(pi)/p,
take the one minimizing (coordinate weight, then lexicographic order on the
coordinates).  The candidate set only depends on the class of x, so the
canonical form is well defined and idempotent by construction; the tests
re-check both anyway.

Bulk operations (tables, orbit construction) run on int64 numpy arrays for
speed; the arithmetic stays exact because every value involved is far below
2^63, which construction asserts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .errors import NonPrimeNorm, PartitionFailure, UnknownResidue
from .galois_field import is_odd_prime
from .quaternion import I, J, K, ONE, Quaternion, UNITS

_PACK_OFF = 1 << 11      # coordinate offset for packed (weight, coords) keys
_PACK_BASE = 1 << 12


@dataclass(frozen=True, slots=True)
class PrimeModulus:
    pi: Quaternion
    p: int
    pi_conj: Quaternion

    @classmethod
    def create(cls, pi: Quaternion) -> "PrimeModulus":
        p = pi.norm()
        if not is_odd_prime(p):
            raise NonPrimeNorm(f"norm of {pi} is {p}, not an odd prime")
        conj = pi.conjugate()
        assert pi * conj == Quaternion(p) and conj * pi == Quaternion(p)
        return cls(pi, p, conj)


def _round_nearest(num: int, den: int) -> int:
    """Nearest integer to num/den for den > 0; odd den means no ties occur."""
    return (2 * num + den) // (2 * den)


_Q_OFFSETS = [Quaternion.from_coeffs(t) for t in product((-1, 0, 1), repeat=4)]


def _reduce_scalar(x: Quaternion, mod: PrimeModulus) -> Quaternion:
    """Pure-python canonical form; reference for the vectorized path."""
    p = mod.p
    c = x * mod.pi_conj
    base = Quaternion.from_coeffs(_round_nearest(v, p) for v in c.coeffs())
    best = None
    best_key = None
    for off in _Q_OFFSETS:
        q = base + off
        cand = x - q * mod.pi
        key = (cand.weight(), cand.coeffs())
        if best_key is None or key < best_key:
            best_key = key
            best = cand
    return best


def _right_mul_matrix(c: Quaternion) -> np.ndarray:
    """Matrix M with (x @ M) = coords of x*c."""
    c0, c1, c2, c3 = c.coeffs()
    return np.array(
        [
            [c0, c1, c2, c3],
            [-c1, c0, -c3, c2],
            [-c2, c3, c0, -c1],
            [-c3, -c2, c1, c0],
        ],
        dtype=np.int64,
    )


_OFFSETS_ARR = np.array([t for t in product((-1, 0, 1), repeat=4)], dtype=np.int64)


def _pack_keys(coords: np.ndarray) -> np.ndarray:
    """Pack (weight, a0, a1, a2, a3) into one int64 so that numeric order on
    keys equals (weight, lex) order on quaternions."""
    w = np.abs(coords).sum(axis=-1)
    assert w.max(initial=0) < _PACK_BASE and np.abs(coords).max(initial=0) < _PACK_OFF
    key = w.astype(np.int64)
    for t in range(4):
        key = key * _PACK_BASE + (coords[..., t] + _PACK_OFF)
    return key


def _quat_mul_nd(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coordinatewise quaternion product with numpy broadcasting."""
    a0, a1, a2, a3 = (x[..., t] for t in range(4))
    b0, b1, b2, b3 = (y[..., t] for t in range(4))
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ],
        axis=-1,
    )


class ResidueRing:
    """Canonical residues of H[Z] mod pi plus exact lookup tables.

    residues are ordered by (coordinate weight, then lex on coordinates), so
    index 0 is always the zero quaternion.  Construction is single-threaded;
    the object is immutable afterwards and safe to share.
    """

    def __init__(self, modulus: PrimeModulus):
        self.modulus = modulus
        self.p = modulus.p
        self._m_pi = _right_mul_matrix(modulus.pi)
        self._m_conj = _right_mul_matrix(modulus.pi_conj)
        self._build_residues()
        self._build_coords()
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _build_residues(self):
        p = self.p
        # Every class has a remainder of norm < p, so reducing the lattice
        # ball N(x) <= p-1 hits every class at least once.
        r = int(np.floor(np.sqrt(p - 1)))
        axis = np.arange(-r, r + 1, dtype=np.int64)
        grid = np.stack(np.meshgrid(axis, axis, axis, axis, indexing="ij"), axis=-1)
        seeds = grid.reshape(-1, 4)
        seeds = seeds[(seeds ** 2).sum(axis=1) <= p - 1]
        reduced = self.batch_reduce(seeds)
        keys = _pack_keys(reduced)
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        reduced = reduced[order]
        dedup = np.concatenate(([True], keys[1:] != keys[:-1]))
        self._res_coords = np.ascontiguousarray(reduced[dedup])
        self._res_keys = keys[dedup]
        if len(self._res_coords) != p * p:
            raise PartitionFailure(
                f"expected {p * p} residues, found {len(self._res_coords)}")
        assert tuple(self._res_coords[0]) == (0, 0, 0, 0)
        # canonical form must be idempotent on its own output
        again = self.batch_reduce(self._res_coords)
        assert np.array_equal(again, self._res_coords)

        self.residues: tuple[Quaternion, ...] = tuple(
            Quaternion.from_coeffs(row) for row in self._res_coords)
        self.index: dict[Quaternion, int] = {q: t for t, q in enumerate(self.residues)}
        self.zero_index = 0
        self.one_index = self.index[ONE]
        self.unit_indices = np.array([self.index[u] for u in UNITS], dtype=np.int64)

    def _build_coords(self):
        # An additive basis (1, u) with u one of i, j, k: u qualifies iff the
        # classes a*1 + b*u cover the whole ring.  At least one of i, j, k
        # always works, since 1, i, j, k generate the additive group.
        p = self.p
        ab = np.array([(a, b) for a in range(p) for b in range(p)], dtype=np.int64)
        for u in (I, J, K):
            u_arr = np.array(u.coeffs(), dtype=np.int64)
            one_arr = np.array(ONE.coeffs(), dtype=np.int64)
            pts = ab[:, :1] * one_arr + ab[:, 1:] * u_arr
            idx = self.indices_of(self.batch_reduce(pts))
            if len(np.unique(idx)) == p * p:
                self.u_basis = u
                break
        else:  # pragma: no cover - impossible, see note above
            raise PartitionFailure("no additive basis among i, j, k")
        self._ca = np.empty(p * p, dtype=np.int64)
        self._cb = np.empty(p * p, dtype=np.int64)
        self._ca[idx] = ab[:, 0]
        self._cb[idx] = ab[:, 1]
        self._inv_coord = np.empty((p, p), dtype=np.int64)
        self._inv_coord[ab[:, 0], ab[:, 1]] = idx

    def _build_tables(self):
        p = self.p
        ca, cb = self._ca, self._cb
        self.add_table = self._inv_coord[
            (ca[:, None] + ca[None, :]) % p, (cb[:, None] + cb[None, :]) % p]
        self.neg_table = self._inv_coord[(-ca) % p, (-cb) % p]
        self.weight_arr = np.abs(self._res_coords).sum(axis=1)

    # -- reduction and lookups --------------------------------------------

    def reduce(self, x: Quaternion) -> Quaternion:
        """Canonical representative of the class of x."""
        return _reduce_scalar(x, self.modulus)

    def reduce_index(self, x: Quaternion) -> int:
        return self.index[self.reduce(x)]

    def batch_reduce(self, coords: np.ndarray) -> np.ndarray:
        """Canonical forms for an (N, 4) int array of quaternion coordinates."""
        coords = np.asarray(coords, dtype=np.int64)
        flat = coords.reshape(-1, 4)
        if len(flat) == 0:
            return flat.copy()
        p = self.p
        num = flat @ self._m_conj
        base = (2 * num + p) // (2 * p)
        qs = base[:, None, :] + _OFFSETS_ARR[None, :, :]
        cands = flat[:, None, :] - (qs @ self._m_pi)
        keys = _pack_keys(cands)
        pick = np.argmin(keys, axis=1)
        return cands[np.arange(len(flat)), pick].reshape(coords.shape)

    def indices_of(self, coords: np.ndarray) -> np.ndarray:
        """Residue indices for an (N, 4) array of canonical coordinates."""
        keys = _pack_keys(np.asarray(coords, dtype=np.int64))
        pos = np.searchsorted(self._res_keys, keys)
        assert np.array_equal(self._res_keys[pos], keys), "non-canonical input"
        return pos

    def coords_of(self, indices: np.ndarray) -> np.ndarray:
        return self._res_coords[np.asarray(indices)]

    def mul_pairs(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Index matrix of reduce(x * y) for all x in left, y in right."""
        lx = self._res_coords[np.asarray(left)][:, None, :]
        ry = self._res_coords[np.asarray(right)][None, :, :]
        prod = _quat_mul_nd(lx, ry)
        return self.indices_of(self.batch_reduce(prod))

    @cached_property
    def mul_table(self) -> np.ndarray:
        """(p^2, p^2) table of reduce(x * y) on canonical representatives."""
        everything = np.arange(len(self.residues))
        return self.mul_pairs(everything, everything)

    @cached_property
    def multiplication_well_defined(self) -> bool:
        """Whether products are independent of class representatives.

        Representative-independence is equivalent to pi*y being a left
        multiple of pi for every residue y; this fails for typical moduli,
        which is why all products here are defined on canonical forms.
        """
        pi_arr = np.array(self.modulus.pi.coeffs(), dtype=np.int64)
        prods = _quat_mul_nd(pi_arr[None, :], self._res_coords)
        reduced = self.batch_reduce(prods)
        return bool((np.abs(reduced).sum(axis=1) == 0).all())

    @cached_property
    def partition(self) -> "WeightClassPartition":
        return _build_partition(self)

    def __repr__(self) -> str:
        return f"ResidueRing(pi={self.modulus.pi}, p={self.p})"

    def to_json(self) -> dict:
        return {"p": self.p, "pi": list(self.modulus.pi.coeffs())}


def make_ring(pi: Quaternion) -> ResidueRing:
    return ResidueRing(PrimeModulus.create(pi))


class WeightClassPartition:
    """Left-unit-orbit partition of the residues.

    Class 0 is {0}; each nonzero class is an 8-element orbit
    {reduce(u * r)} over the units.  Classes are ordered by (minimum weight
    in the class, then its lexicographically smallest member); the
    representative of a class is its smallest minimum-weight member, except
    that the class of 1 (always the unique minimum-weight orbit) is class 1
    with representative 1.
    """

    def __init__(self, ring: ResidueRing, classes: list[np.ndarray],
                 reps: list[int], left_right_agree: bool):
        self.ring = ring
        self.classes: tuple[tuple[int, ...], ...] = tuple(
            tuple(int(i) for i in c) for c in classes)
        self.rep_indices: tuple[int, ...] = tuple(reps)
        self.reps: tuple[Quaternion, ...] = tuple(
            ring.residues[r] for r in self.rep_indices)
        self.left_right_agree = left_right_agree
        self.m = len(self.classes) - 1
        class_of = np.empty(len(ring.residues), dtype=np.int64)
        for c, members in enumerate(self.classes):
            class_of[list(members)] = c
        self.class_of = class_of

    def class_members(self, t: int) -> tuple[Quaternion, ...]:
        return tuple(self.ring.residues[i] for i in self.classes[t])

    def to_json(self) -> list:
        return [[list(self.ring.residues[i].coeffs()) for i in members]
                for members in self.classes]


def _orbit_sets(orbit_matrix: np.ndarray, n: int) -> list[frozenset[int]]:
    assigned = [False] * n
    orbits = []
    for r in range(n):
        if assigned[r]:
            continue
        members = frozenset(int(v) for v in orbit_matrix[:, r])
        if any(assigned[m] for m in members):
            raise PartitionFailure("unit orbits are not disjoint")
        for m in members:
            assigned[m] = True
        orbits.append(members)
    return orbits


def _build_partition(ring: ResidueRing) -> WeightClassPartition:
    n = len(ring.residues)
    everything = np.arange(n)
    left = ring.mul_pairs(ring.unit_indices, everything)   # (8, n)
    orbits = _orbit_sets(left, n)
    for members in orbits:
        if len(members) not in (1, 8) or (len(members) == 1 and members != {0}):
            raise PartitionFailure(
                f"orbit size {len(members)} (expected 8, or 1 for zero)")
    if len(orbits) != 1 + (n - 1) // 8:
        raise PartitionFailure(
            f"{len(orbits)} orbits do not match 1 + (p^2-1)/8")

    def member_key(i: int) -> tuple:
        return (int(ring.weight_arr[i]), tuple(int(v) for v in ring.coords_of(i)))

    ordered = []
    for members in orbits:
        sorted_members = sorted(members, key=member_key)
        ordered.append((member_key(sorted_members[0]), sorted_members))
    ordered.sort(key=lambda pair: pair[0])
    classes = [np.array(members) for _, members in ordered]
    assert classes[0][0] == ring.zero_index
    reps = [members[0] for members in (c.tolist() for c in classes)]
    # The unit orbit is the only class with a weight-1 member, so it sorts
    # directly after {0}; pin its representative to the residue 1 itself.
    if ring.one_index not in classes[1].tolist():
        raise PartitionFailure("class of 1 is not the first nonzero class")
    reps[1] = ring.one_index

    right = ring.mul_pairs(everything, ring.unit_indices).T  # (8, n)
    agree = set(_orbit_sets(right, n)) == {frozenset(c.tolist()) for c in classes}
    return WeightClassPartition(ring, classes, reps, agree)


def weight_classes(ring: ResidueRing) -> WeightClassPartition:
    return ring.partition


def unit_orbit(r: Quaternion, ring: ResidueRing) -> tuple[Quaternion, ...]:
    """{reduce(u * r)} over the eight units, sorted by (weight, lex)."""
    idx = ring.reduce_index(r)
    orbit = ring.mul_pairs(ring.unit_indices, np.array([idx]))[:, 0]
    members = sorted(set(int(v) for v in orbit))
    return tuple(ring.residues[i] for i in members)


def qm_weight(r: Quaternion, ring: ResidueRing) -> int:
    """Weight of a canonical residue."""
    if r not in ring.index:
        raise UnknownResidue(f"{r} is not a canonical residue mod {ring.modulus.pi}")
    return r.weight()


def qm_distance(x: Quaternion, y: Quaternion, ring: ResidueRing) -> int:
    return ring.reduce(x - y).weight()
