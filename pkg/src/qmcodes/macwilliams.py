"""MacWilliams substitution kernels and transforms, plus the brute-force
duality verifier.

The complete kernel (field level) has entries chi1(w_t * w_s) over field
multiplication, indexed by the elements 0, 1, alpha, alpha^2, ... in
discrete-log order.  The quaternion-integer kernel has entries

    K[t][s] = sum over x in class s of psi(reduce(w_t_hat * x_hat)),

computed directly from this orbit-sum definition for every row including
row 0 (which therefore comes out as the class sizes).  The shift/circulant
structure the kernel rows might carry is reported as a diagnostic, never
assumed.  Every QI kernel entry must be a rational integer; a NotRational
entry aborts the build with its (t, s) coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import Code, dual
from .correspondence import Correspondence
from .cyclotomic import CyclotomicInt
from .enumerator import Enumerator, qi_classifier, substitute, weight_enumerator
from .errors import NegativeCoefficient, NotRational
from .galois_field import FieldSpec, chi1
from .residue_ring import WeightClassPartition


class Kernel:
    def __init__(self, mode: str, rows, reps, int_rows=None):
        self.mode = mode
        self.rows: tuple[tuple[CyclotomicInt, ...], ...] = tuple(
            tuple(r) for r in rows)
        self.reps = tuple(reps)
        self.num_vars = len(self.rows)
        self.int_rows = None if int_rows is None else tuple(
            tuple(int(c) for c in r) for r in int_rows)

    def int_matrix(self) -> np.ndarray:
        assert self.int_rows is not None
        return np.array(self.int_rows, dtype=np.int64)

    def is_shift_structured(self) -> bool:
        """Whether K[t][s] for t, s >= 1 depends only on (s - t) mod m."""
        if self.int_rows is None or self.num_vars < 2:
            return False
        m = self.num_vars - 1
        template = self.int_rows[1][1:]
        for t in range(1, self.num_vars):
            for s in range(1, self.num_vars):
                if self.int_rows[t][s] != template[(s - t) % m]:
                    return False
        return True

    def to_json(self) -> list:
        assert self.int_rows is not None, "only the QI kernel dumps as integers"
        return [list(r) for r in self.int_rows]

    def __repr__(self) -> str:
        return f"Kernel(mode={self.mode}, vars={self.num_vars})"


def complete_kernel(field: FieldSpec) -> Kernel:
    """q x q matrix chi1(w_t * w_s), elements in discrete-log order."""
    elements = field.elements
    rows = [
        tuple(chi1(field.mul(a, b), field) for b in elements)
        for a in elements
    ]
    return Kernel("complete", rows, elements)


def qi_kernel(ring, partition: WeightClassPartition,
              correspondence: Correspondence) -> Kernel:
    if partition.ring is not ring or correspondence.ring is not ring:
        raise ValueError("partition and correspondence must come from this ring")
    p = ring.p
    rows = []
    int_rows = []
    for t, rep in enumerate(partition.rep_indices):
        row = []
        int_row = []
        for s, members in enumerate(partition.classes):
            prods = ring.mul_pairs(np.array([rep]), np.array(members))[0]
            counts = np.bincount(correspondence.g0[prods], minlength=p)
            entry = CyclotomicInt.from_exponent_counts(counts, p)
            try:
                int_row.append(entry.as_integer())
            except NotRational as exc:
                raise NotRational(
                    f"QI kernel entry ({t}, {s}) is not rational: {entry.coeffs}",
                    coeffs=entry.coeffs) from exc
            row.append(entry)
        rows.append(row)
        int_rows.append(int_row)
    sizes = [len(members) for members in partition.classes]
    assert int_rows[0] == sizes, "row 0 must be the class sizes"
    assert all(r[0] == 1 for r in int_rows), "column 0 must be all ones"
    return Kernel("qi", rows, partition.reps, int_rows)


def qi_transform(w: Enumerator, cardinality: int, kernel: Kernel) -> Enumerator:
    """Substitute the QI kernel and divide by |C|; the result must have
    nonnegative rational integer coefficients."""
    if kernel.mode != "qi":
        raise ValueError("qi_transform needs a QI kernel")
    out = substitute(w, kernel.rows, cardinality)
    for exp, c in out.terms():
        if c.as_integer() < 0:
            raise NegativeCoefficient(
                f"transformed coefficient of {exp} is {c.as_integer()}")
    return out


def complete_transform(w: Enumerator, cardinality: int, kernel: Kernel) -> Enumerator:
    if kernel.mode != "complete":
        raise ValueError("complete_transform needs a complete kernel")
    return substitute(w, kernel.rows, cardinality)


def collapse_to_classes(w: Enumerator, correspondence: Correspondence,
                        partition: WeightClassPartition) -> Enumerator:
    """Complete enumerator (q element variables) -> QI enumerator (m+1
    class variables) by summing exponents over each class."""
    field = correspondence.field
    var_of = [
        int(partition.class_of[correspondence.ring.index[correspondence.to_ring(g)]])
        for g in field.elements
    ]
    out: dict[tuple[int, ...], CyclotomicInt] = {}
    for exp, coeff in w.terms():
        folded = [0] * (partition.m + 1)
        for elem_idx, e in enumerate(exp):
            folded[var_of[elem_idx]] += e
        key = tuple(folded)
        prev = out.get(key)
        total = coeff if prev is None else prev + coeff
        if total:
            out[key] = total
        else:
            out.pop(key, None)
    return Enumerator(partition.m + 1, w.root_order, out)


@dataclass
class Report:
    n: int
    code_size: int
    dual_size: int
    code_k: int | None
    left_closed: bool
    kernel_rational: bool
    primal: Enumerator
    transformed: Enumerator
    dual_enum: Enumerator
    equal: bool

    @property
    def verdict(self) -> str:
        return "equal" if self.equal else "unequal"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "code_size": self.code_size,
            "dual_size": self.dual_size,
            "k": self.code_k,
            "left_closed": self.left_closed,
            "kernel_rational": self.kernel_rational,
            "primal": self.primal.to_json(),
            "transformed": self.transformed.to_json(),
            "dual": self.dual_enum.to_json(),
            "verdict": self.verdict,
        }

    def render_text(self) -> str:
        k = "-" if self.code_k is None else str(self.code_k)
        return "\n".join([
            f"code: n={self.n} |C|={self.code_size} |C-dual|={self.dual_size} "
            f"k={k} left_closed={str(self.left_closed).lower()}",
            f"primal (qi):     {self.primal.render_text()}",
            f"transform /|C|:  {self.transformed.render_text()}",
            f"dual brute:      {self.dual_enum.render_text()}",
            f"kernel rational: {str(self.kernel_rational).lower()}",
            f"verdict: {self.verdict}",
        ])


def verify_duality(code: Code, correspondence: Correspondence,
                   partition: WeightClassPartition | None = None,
                   kernel: Kernel | None = None, *,
                   budget: int | None = None, jobs: int = 1) -> Report:
    """Transform the code's QI enumerator and compare it, term for term,
    against the QI enumerator of the brute-force dual."""
    ring = code.ring
    if partition is None:
        partition = ring.partition
    if kernel is None:
        kernel = qi_kernel(ring, partition, correspondence)
    classifier = qi_classifier(partition)

    primal = weight_enumerator(code, classifier)
    transformed = qi_transform(primal, code.size, kernel)
    dual_code = dual(code, budget=budget, jobs=jobs)
    dual_enum = weight_enumerator(dual_code, classifier)
    return Report(
        n=code.n,
        code_size=code.size,
        dual_size=dual_code.size,
        code_k=code.k,
        left_closed=code.left_closed,
        kernel_rational=True,
        primal=primal,
        transformed=transformed,
        dual_enum=dual_enum,
        equal=(transformed == dual_enum),
    )
