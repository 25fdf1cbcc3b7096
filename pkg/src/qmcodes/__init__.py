"""Exact weight enumerators and MacWilliams transforms for linear codes over
quaternion-integer residue rings H[Z]_pi."""

from .codes import Code, DEFAULT_BUDGET, dual, min_qm_distance, span, zero_code
from .codespec import CodeSpec, Context, build_context, load_spec, parse_spec
from .correspondence import Correspondence, build_correspondence
from .cyclotomic import CyclotomicInt, root_of_unity
from .enumerator import (Classifier, Enumerator, complete_classifier,
                         composition, qi_classifier, substitute,
                         weight_enumerator)
from .galois_field import FieldElem, FieldSpec, chi1, make_field
from .macwilliams import (Kernel, Report, collapse_to_classes,
                          complete_kernel, complete_transform, qi_kernel,
                          qi_transform, verify_duality)
from .quaternion import UNITS, Quaternion, coord_weight
from .residue_ring import (PrimeModulus, ResidueRing, WeightClassPartition,
                           make_ring, qm_distance, qm_weight, unit_orbit,
                           weight_classes)

__version__ = "0.1.0"
