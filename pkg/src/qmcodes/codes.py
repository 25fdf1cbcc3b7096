"""Linear codes over the residue ring: span generation, brute-force duals,
and minimum quaternion-Mannheim distance.

Codewords are stored as (N, n) arrays of residue indices, sorted
lexicographically.  The additive group of the ring is elementary abelian of
order p^2, so the additive closure of the left scalar multiples of the
generator rows equals their F_p-span in additive coordinates; span() computes
exactly that closure by row reduction mod p.  The dual is found by scanning
all p^(2n) candidate vectors and keeping those that pair to zero with every
codeword (candidates are discarded at their first failing codeword, which
changes nothing about the result since the conditions are conjunctive).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import cached_property

import numpy as np

from .errors import EmptyCode, IntractableSize
from .quaternion import Quaternion
from .residue_ring import ResidueRing

DEFAULT_BUDGET = 10 ** 8
_CHUNK = 1 << 20


class Code:
    """A set of length-n words over the ring, closed under addition.

    left_closed records whether the word set is closed under left
    multiplication by every residue.  Left multiplication by a fixed
    representative is additive on classes, so closure over an additive basis
    of the word set is equivalent to closure over all words; the check runs
    over every residue times every basis word.
    """

    def __init__(self, ring: ResidueRing, n: int, generators, words: np.ndarray,
                 basis: np.ndarray):
        self.ring = ring
        self.n = n
        self.generators = tuple(tuple(row) for row in generators)
        self.words = words
        self.basis = basis
        self.left_closed = _left_closed(ring, n, basis)

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def k(self) -> int | None:
        """log base p^2 of |C| when integral, else None."""
        dim = len(self.basis)
        return dim // 2 if dim % 2 == 0 else None

    @cached_property
    def _word_keys(self) -> np.ndarray:
        return _pack_words(self.words, len(self.ring.residues))

    def contains(self, word) -> bool:
        idx = np.array([[self.ring.reduce_index(q) for q in word]])
        key = _pack_words(idx, len(self.ring.residues))[0]
        pos = np.searchsorted(self._word_keys, key)
        return pos < len(self._word_keys) and self._word_keys[pos] == key

    def word_quaternions(self, row: int) -> tuple[Quaternion, ...]:
        return tuple(self.ring.residues[i] for i in self.words[row])

    def __repr__(self) -> str:
        return f"Code(n={self.n}, size={self.size}, p={self.ring.p})"


def _pack_words(words: np.ndarray, base: int) -> np.ndarray:
    keys = np.zeros(len(words), dtype=np.int64)
    for t in range(words.shape[1]):
        keys = keys * base + words[:, t]
    return keys


def _coords_of_words(ring: ResidueRing, words: np.ndarray) -> np.ndarray:
    """(N, n) index array -> (N, 2n) additive coordinates mod p."""
    n = words.shape[1]
    out = np.empty((len(words), 2 * n), dtype=np.int64)
    for t in range(n):
        out[:, 2 * t] = ring._ca[words[:, t]]
        out[:, 2 * t + 1] = ring._cb[words[:, t]]
    return out


def _words_of_coords(ring: ResidueRing, coords: np.ndarray) -> np.ndarray:
    n = coords.shape[1] // 2
    out = np.empty((len(coords), n), dtype=np.int64)
    for t in range(n):
        out[:, t] = ring._inv_coord[coords[:, 2 * t], coords[:, 2 * t + 1]]
    return out


def _rref_modp(rows: np.ndarray, p: int) -> np.ndarray:
    """Reduced row echelon form mod p; returns only the nonzero rows."""
    mat = np.array(rows, dtype=np.int64) % p
    rank = 0
    for col in range(mat.shape[1] if len(mat) else 0):
        pivot = None
        for r in range(rank, len(mat)):
            if mat[r, col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        mat[[rank, pivot]] = mat[[pivot, rank]]
        inv = pow(int(mat[rank, col]), p - 2, p)
        mat[rank] = (mat[rank] * inv) % p
        for r in range(len(mat)):
            if r != rank and mat[r, col]:
                mat[r] = (mat[r] - mat[r, col] * mat[rank]) % p
        rank += 1
        if rank == len(mat):
            break
    return mat[:rank]


def _residual_mod_basis(basis: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    """Reduce row vectors against an rref basis; zero residual = in span."""
    out = np.array(vecs, dtype=np.int64) % p
    for row in basis:
        col = int(np.argmax(row != 0))
        out = (out - out[:, col:col + 1] * row[None, :]) % p
    return out


def _left_closed(ring: ResidueRing, n: int, basis: np.ndarray) -> bool:
    if len(basis) == 0:
        return True
    p = ring.p
    basis_words = _words_of_coords(ring, basis)
    everything = np.arange(len(ring.residues))
    for word in basis_words:
        prods = ring.mul_pairs(everything, word)      # (p^2, n)
        coords = _coords_of_words(ring, prods)
        if _residual_mod_basis(basis, coords, p).any():
            return False
    return True


def span(ring: ResidueRing, generators, n: int | None = None) -> Code:
    """Additive closure of the left scalar multiples of the generator rows.

    With no generators the result is the zero code, whose length must then
    be given explicitly.
    """
    gen_rows = [tuple(ring.reduce(q) for q in row) for row in generators]
    if gen_rows:
        lengths = {len(row) for row in gen_rows}
        if len(lengths) != 1:
            raise ValueError("generator rows have differing lengths")
        if n is not None and n not in lengths:
            raise ValueError("generator rows do not match the given length")
        n = lengths.pop()
    elif n is None:
        raise ValueError("an empty generator list needs an explicit length")
    else:
        return zero_code(ring, n)
    p = ring.p
    everything = np.arange(len(ring.residues))
    seed_blocks = []
    for row in gen_rows:
        idx = np.array([ring.index[q] for q in row])
        seed_blocks.append(ring.mul_pairs(everything, idx))
    seeds = np.concatenate(seed_blocks, axis=0)
    basis = _rref_modp(_coords_of_words(ring, seeds), p)
    words = _enumerate_span(ring, basis, n)
    return Code(ring, n, gen_rows, words, basis)


def zero_code(ring: ResidueRing, n: int) -> Code:
    words = np.zeros((1, n), dtype=np.int64)
    return Code(ring, n, (), words, np.empty((0, 2 * n), dtype=np.int64))


def _enumerate_span(ring: ResidueRing, basis: np.ndarray, n: int) -> np.ndarray:
    p = ring.p
    dim = len(basis)
    total = p ** dim
    ids = np.arange(total, dtype=np.int64)
    digits = np.empty((total, dim), dtype=np.int64)
    for t in range(dim):
        digits[:, t] = (ids // p ** (dim - 1 - t)) % p
    coords = (digits @ basis) % p if dim else np.zeros((1, 2 * n), dtype=np.int64)
    words = _words_of_coords(ring, coords)
    order = np.argsort(_pack_words(words, len(ring.residues)), kind="stable")
    return np.ascontiguousarray(words[order])


def _pairing_fold(ring: ResidueRing, word, cands: np.ndarray, side: str) -> np.ndarray:
    mul = ring.mul_table
    acc = None
    for t, c in enumerate(word):
        term = mul[c, cands[:, t]] if side == "left" else mul[cands[:, t], c]
        acc = term if acc is None else ring.add_table[acc, term]
    return acc


def dual(code: Code, *, budget: int | None = None, jobs: int = 1,
         codeword_side: str = "left") -> Code:
    """Brute-force dual: all vectors pairing to zero with every codeword
    under sum_t c_t * v_t (codeword factor on the chosen side)."""
    if codeword_side not in ("left", "right"):
        raise ValueError(f"codeword_side must be 'left' or 'right': {codeword_side}")
    ring = code.ring
    n = code.n
    p2 = len(ring.residues)
    total = p2 ** n
    limit = DEFAULT_BUDGET if budget is None else budget
    if total > limit:
        raise IntractableSize(
            f"dual search space p^(2n) = {total} exceeds budget {limit}")

    words = [tuple(int(v) for v in w) for w in code.words]
    nonzero_words = [w for w in words if any(w)]

    if not nonzero_words:
        survivors = _all_vectors(p2, n)
    else:
        first, rest = nonzero_words[0], nonzero_words[1:]
        survivors = _scan_full_grid(ring, first, p2, n, total, jobs, codeword_side)
        for w in rest:
            if len(survivors) == 0:
                break
            acc = _pairing_fold(ring, w, survivors, codeword_side)
            survivors = survivors[acc == ring.zero_index]

    basis = _incremental_basis(ring, survivors)
    assert ring.p ** len(basis) == len(survivors), "dual is not a subgroup?"
    return Code(ring, n, (), np.ascontiguousarray(survivors), basis)


def _all_vectors(p2: int, n: int) -> np.ndarray:
    ids = np.arange(p2 ** n, dtype=np.int64)
    out = np.empty((len(ids), n), dtype=np.int64)
    for t in range(n):
        out[:, t] = (ids // p2 ** (n - 1 - t)) % p2
    return out


def _scan_full_grid(ring, word, p2, n, total, jobs, side) -> np.ndarray:
    spans = [(lo, min(lo + _CHUNK, total)) for lo in range(0, total, _CHUNK)]

    def scan(bounds):
        lo, hi = bounds
        ids = np.arange(lo, hi, dtype=np.int64)
        cands = np.empty((len(ids), n), dtype=np.int64)
        for t in range(n):
            cands[:, t] = (ids // p2 ** (n - 1 - t)) % p2
        acc = _pairing_fold(ring, word, cands, side)
        return cands[acc == ring.zero_index]

    if jobs > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(scan, spans))
    else:
        parts = [scan(s) for s in spans]
    return np.concatenate(parts, axis=0)


def _incremental_basis(ring: ResidueRing, words: np.ndarray) -> np.ndarray:
    """rref basis of the additive span of the given words."""
    p = ring.p
    ncols = 2 * words.shape[1]
    basis = np.empty((0, ncols), dtype=np.int64)
    remaining = _coords_of_words(ring, words)
    while len(remaining):
        res = _residual_mod_basis(basis, remaining, p) if len(basis) else remaining
        nz = np.flatnonzero(res.any(axis=1))
        if len(nz) == 0:
            break
        basis = _rref_modp(np.vstack([basis, res[nz[0]][None, :]]), p)
        remaining = remaining[nz]
    return basis


def min_qm_distance(code: Code) -> int:
    """Minimum weight over nonzero codewords (= minimum pairwise distance)."""
    if code.size < 2:
        raise EmptyCode("minimum distance needs at least one nonzero codeword")
    weights = code.ring.weight_arr[code.words].sum(axis=1)
    # words are lex-sorted, so row 0 is the zero word
    return int(weights[1:].min())
