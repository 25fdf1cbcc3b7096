"""Sparse multivariate polynomials with exact cyclotomic coefficients,
composition vectors, and weight enumerators of codeword sets.

substitute() implements the MacWilliams-style replacement of each variable by
a linear form.  Two internally equivalent routes exist: a sparse reference
route over cyclotomic coefficients, and a dense route used when the linear
forms and coefficients are all rational integers, which precomputes the
transition matrix of the substitution per total degree (substitution by
linear forms preserves degree).  The dense route switches to unbounded
Python integers whenever an a-priori coefficient bound does not fit int64,
so both routes are exact; the tests cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

import numpy as np

from .cyclotomic import CyclotomicInt
from .errors import InexactDivision, NotRational, UnknownResidue

_INT64_LIMIT = 1 << 62


class Enumerator:
    """Map from exponent vectors to cyclotomic coefficients; zero
    coefficients are never stored."""

    def __init__(self, num_vars: int, root_order: int, terms=None):
        self.num_vars = num_vars
        self.root_order = root_order
        self._terms: dict[tuple[int, ...], CyclotomicInt] = {}
        if terms:
            for exp, coeff in terms.items() if isinstance(terms, dict) else terms:
                self._set(tuple(int(e) for e in exp), coeff)

    def _set(self, exp, coeff):
        if len(exp) != self.num_vars:
            raise ValueError(f"exponent vector {exp} needs {self.num_vars} entries")
        if isinstance(coeff, int):
            coeff = CyclotomicInt.from_int(coeff, self.root_order)
        if coeff:
            self._terms[exp] = coeff

    def terms(self) -> list[tuple[tuple[int, ...], CyclotomicInt]]:
        return sorted(self._terms.items())

    def coefficient(self, exp) -> CyclotomicInt:
        return self._terms.get(tuple(exp), CyclotomicInt.zero(self.root_order))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Enumerator):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and self.root_order == other.root_order
                and self._terms == other._terms)

    def __add__(self, other: "Enumerator") -> "Enumerator":
        self._compatible(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, CyclotomicInt.zero(self.root_order)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Enumerator(self.num_vars, self.root_order, out)

    def __mul__(self, other: "Enumerator") -> "Enumerator":
        self._compatible(other)
        out: dict[tuple[int, ...], CyclotomicInt] = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                prev = out.get(exp)
                s = ca * cb if prev is None else prev + ca * cb
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Enumerator(self.num_vars, self.root_order, out)

    def _compatible(self, other: "Enumerator"):
        if self.num_vars != other.num_vars or self.root_order != other.root_order:
            raise ValueError("enumerator shapes differ")

    def mass(self) -> CyclotomicInt:
        """Value at z_t = 1 for all t (the total codeword count)."""
        total = CyclotomicInt.zero(self.root_order)
        for c in self._terms.values():
            total = total + c
        return total

    def integer_terms(self) -> dict[tuple[int, ...], int]:
        """All coefficients as rational integers; NotRational if any is not."""
        return {exp: c.as_integer() for exp, c in self.terms()}

    def to_json(self) -> dict:
        return {
            "vars": self.num_vars,
            "terms": [{"exp": list(exp), "coeff": c.as_integer()}
                      for exp, c in self.terms()],
        }

    @classmethod
    def from_json(cls, obj: dict, root_order: int) -> "Enumerator":
        terms = {tuple(t["exp"]): CyclotomicInt.from_int(t["coeff"], root_order)
                 for t in obj["terms"]}
        return cls(obj["vars"], root_order, terms)

    def render_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exp, coeff in sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True):
            c = coeff.as_integer()
            body = " ".join(
                f"z{t}" if e == 1 else f"z{t}^{e}"
                for t, e in enumerate(exp) if e)
            mag = abs(c)
            head = str(mag) if (mag != 1 or not body) else ""
            piece = (head + " " + body).strip() if body else head
            if not pieces:
                pieces.append(piece if c >= 0 else f"-{piece}")
            else:
                pieces.append(("+ " if c >= 0 else "- ") + piece)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Enumerator({len(self._terms)} terms in {self.num_vars} vars)"


@dataclass(frozen=True)
class Classifier:
    """Maps residue indices to enumerator variable indices."""
    kind: str            # "qi" or "complete"
    num_vars: int
    of_index: np.ndarray


def qi_classifier(partition) -> Classifier:
    return Classifier("qi", partition.m + 1, partition.class_of)


def complete_classifier(correspondence) -> Classifier:
    field = correspondence.field
    ring = correspondence.ring
    table = np.empty(len(ring.residues), dtype=np.int64)
    for i, r in enumerate(ring.residues):
        table[i] = field.index[correspondence.to_field(r)]
    return Classifier("complete", field.q, table)


def composition(u, classifier: Classifier, ring) -> tuple[int, ...]:
    """Exponent vector: entry t counts the coordinates falling in class t."""
    exps = [0] * classifier.num_vars
    for r in u:
        if r not in ring.index:
            raise UnknownResidue(f"{r} is not a canonical residue")
        exps[int(classifier.of_index[ring.index[r]])] += 1
    return tuple(exps)


def weight_enumerator(code, classifier: Classifier) -> Enumerator:
    """Sum of composition monomials over the codeword set."""
    p = code.ring.p
    v = classifier.num_vars
    words = code.words
    if len(words) == 0:
        return Enumerator(v, p)
    cls = np.sort(classifier.of_index[words], axis=1)
    n = cls.shape[1]
    keys = np.zeros(len(cls), dtype=np.int64)
    for t in range(n):
        keys = keys * v + cls[:, t]
    uniq, counts = np.unique(keys, return_counts=True)
    terms = {}
    for key, count in zip(uniq.tolist(), counts.tolist()):
        digits = []
        for _ in range(n):
            digits.append(key % v)
            key //= v
        exps = [0] * v
        for d in digits:
            exps[d] += 1
        terms[tuple(exps)] = CyclotomicInt.from_int(count, p)
    return Enumerator(v, p, terms)


# -- substitution --------------------------------------------------------

def substitute(w: Enumerator, rows, scale_div: int) -> Enumerator:
    """Replace each z_t by sum_s rows[t][s] * z_s, then divide the expansion
    exactly by scale_div (InexactDivision if any coefficient resists)."""
    if scale_div <= 0:
        raise ValueError("scale_div must be positive")
    v = w.num_vars
    rows = [list(r) for r in rows]
    if len(rows) != v or any(len(r) != v for r in rows):
        raise ValueError(f"substitution matrix must be {v} x {v}")

    int_rows = None
    try:
        int_rows = tuple(tuple(c.as_integer() for c in row) for row in rows)
        int_coeffs = {exp: c.as_integer() for exp, c in w._terms.items()}
    except NotRational:
        int_rows = None
    if int_rows is not None:
        return _substitute_dense(w, int_rows, int_coeffs, scale_div)
    return _substitute_sparse(w, rows, scale_div)


def _div_exact(c: CyclotomicInt, s: int, exp) -> CyclotomicInt:
    if any(v % s for v in c.coeffs):
        raise InexactDivision(
            f"coefficient {c.coeffs} of term {exp} is not divisible by {s}")
    return CyclotomicInt(c.p, [v // s for v in c.coeffs])


def _substitute_sparse(w: Enumerator, rows, scale_div: int) -> Enumerator:
    p = w.root_order
    v = w.num_vars
    zero = CyclotomicInt.zero(p)
    linear = [
        Enumerator(v, p, {_unit_exp(v, s): rows[t][s] for s in range(v)})
        for t in range(v)
    ]
    power_memo: dict[tuple[int, int], Enumerator] = {}

    def linear_power(t: int, e: int) -> Enumerator:
        key = (t, e)
        if key not in power_memo:
            if e == 0:
                power_memo[key] = Enumerator(v, p, {(0,) * v: CyclotomicInt.one(p)})
            else:
                power_memo[key] = linear_power(t, e - 1) * linear[t]
        return power_memo[key]

    acc: dict[tuple[int, ...], CyclotomicInt] = {}
    for exp, coeff in w._terms.items():
        prod = Enumerator(v, p, {(0,) * v: coeff})
        for t, e in enumerate(exp):
            if e:
                prod = prod * linear_power(t, e)
        for texp, tcoeff in prod._terms.items():
            s = acc.get(texp, zero) + tcoeff
            if s:
                acc[texp] = s
            else:
                acc.pop(texp, None)
    return Enumerator(v, p, {exp: _div_exact(c, scale_div, exp)
                             for exp, c in acc.items()})


def _unit_exp(v: int, s: int) -> tuple[int, ...]:
    e = [0] * v
    e[s] = 1
    return tuple(e)


_transition_cache: dict[tuple, tuple] = {}


def _degree_space(v: int, d: int):
    monos = list(combinations_with_replacement(range(v), d))
    pos = {m: i for i, m in enumerate(monos)}
    return monos, pos


def _transition(rows_key: tuple, rows: tuple, v: int, d: int, dtype) -> tuple:
    """(monos, pos, T) where column c of T expands the substitution of the
    degree-d monomial c.  Built inductively degree by degree."""
    cache_key = (rows_key, v, d, dtype is object)
    if cache_key in _transition_cache:
        return _transition_cache[cache_key]
    monos, pos = _degree_space(v, d)
    if d == 0:
        out = (monos, pos, np.ones((1, 1), dtype=dtype))
        _transition_cache[cache_key] = out
        return out
    prev_monos, prev_pos, prev_t = _transition(rows_key, rows, v, d - 1, dtype)
    kernel = np.array(rows, dtype=dtype)
    ext = np.empty((len(prev_monos), v), dtype=np.int64)
    for i, mono in enumerate(prev_monos):
        for s in range(v):
            ext[i, s] = pos[tuple(sorted(mono + (s,)))]
    t_mat = np.zeros((len(monos), len(monos)), dtype=dtype)
    for c, mono in enumerate(monos):
        col = prev_t[:, prev_pos[mono[:-1]]]
        contrib = col[:, None] * kernel[mono[-1]][None, :]
        np.add.at(t_mat[:, c], ext.ravel(), contrib.ravel())
    out = (monos, pos, t_mat)
    _transition_cache[cache_key] = out
    return out


def _substitute_dense(w: Enumerator, int_rows: tuple, int_coeffs: dict,
                      scale_div: int) -> Enumerator:
    p = w.root_order
    v = w.num_vars
    by_degree: dict[int, dict[tuple[int, ...], int]] = {}
    for exp, c in int_coeffs.items():
        by_degree.setdefault(sum(exp), {})[exp] = c

    max_row_sum = max((sum(abs(c) for c in row) for row in int_rows), default=1)
    max_coeff = max((abs(c) for c in int_coeffs.values()), default=0)

    out_terms: dict[tuple[int, ...], CyclotomicInt] = {}
    for d, terms in sorted(by_degree.items()):
        space = _binomial(d + v - 1, d)
        bound = max_coeff * len(terms) * max(1, max_row_sum) ** d
        dtype = np.int64 if bound < _INT64_LIMIT else object
        monos, pos, t_mat = _transition(int_rows, int_rows, v, d, dtype)
        vec = np.zeros(space, dtype=dtype)
        for exp, c in terms.items():
            vec[pos[_exp_to_mono(exp)]] += c
        result = t_mat @ vec
        for i, value in enumerate(result.tolist()):
            if value == 0:
                continue
            exp = _mono_to_exp(monos[i], v)
            if value % scale_div:
                raise InexactDivision(
                    f"coefficient {value} of term {exp} is not divisible by {scale_div}")
            prev = out_terms.get(exp, CyclotomicInt.zero(p))
            out_terms[exp] = prev + CyclotomicInt.from_int(value // scale_div, p)
    return Enumerator(v, p, {e: c for e, c in out_terms.items() if c})


def _exp_to_mono(exp) -> tuple[int, ...]:
    out = []
    for t, e in enumerate(exp):
        out.extend([t] * e)
    return tuple(out)


def _mono_to_exp(mono, v: int) -> tuple[int, ...]:
    exps = [0] * v
    for t in mono:
        exps[t] += 1
    return tuple(exps)


def _binomial(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)
