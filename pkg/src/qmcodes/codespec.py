"""Code-spec files: the JSON input format of the CLI, plus the builder that
assembles the ring / field / correspondence / partition / kernel for a spec.

Quaternion literals are always 4-int arrays [a0, a1, a2, a3]; there is no
string form.  The schema is published at docs/codespec.schema.json (kept
byte-identical to the embedded constant by a test).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property

import jsonschema

from . import codes
from .correspondence import Correspondence, build_correspondence
from .enumerator import Classifier, complete_classifier, qi_classifier
from .errors import SpecFileError
from .galois_field import FieldSpec, make_field
from .macwilliams import Kernel
from .macwilliams import complete_kernel as _build_complete_kernel
from .macwilliams import qi_kernel as _build_qi_kernel
from .quaternion import Quaternion
from .residue_ring import ResidueRing, WeightClassPartition, make_ring

SCHEMA_VERSION = 1

CODESPEC_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": f"qmcodes/codespec-v{SCHEMA_VERSION}.schema.json",
    "title": "qmcodes code spec",
    "type": "object",
    "required": ["p", "pi", "n", "generators"],
    "additionalProperties": False,
    "$defs": {
        "quaternion": {
            "type": "array",
            "items": {"type": "integer"},
            "minItems": 4,
            "maxItems": 4,
        }
    },
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "pi": {"$ref": "#/$defs/quaternion"},
        "n": {"type": "integer", "minimum": 1},
        "generators": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"$ref": "#/$defs/quaternion"},
                "minItems": 1,
            },
        },
        "alpha_image": {"$ref": "#/$defs/quaternion"},
        "primitive_poly": {
            "type": "array",
            "items": {"type": "integer"},
            "minItems": 2,
        },
        "budget": {"type": "integer", "minimum": 1},
    },
}


@dataclass(frozen=True)
class CodeSpec:
    p: int
    pi: Quaternion
    n: int
    generators: tuple[tuple[Quaternion, ...], ...]
    alpha_image: Quaternion | None = None
    primitive_poly: tuple[int, ...] | None = None
    budget: int | None = None


def parse_spec(obj) -> CodeSpec:
    try:
        jsonschema.validate(obj, CODESPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecFileError(f"spec does not match schema: {exc.message}") from exc
    pi = Quaternion.from_coeffs(obj["pi"])
    if pi.norm() != obj["p"]:
        raise SpecFileError(
            f"norm of pi {obj['pi']} is {pi.norm()}, spec says p = {obj['p']}")
    gens = []
    for row in obj["generators"]:
        if len(row) != obj["n"]:
            raise SpecFileError(
                f"generator row has {len(row)} entries, expected n = {obj['n']}")
        gens.append(tuple(Quaternion.from_coeffs(q) for q in row))
    alpha_image = (Quaternion.from_coeffs(obj["alpha_image"])
                   if "alpha_image" in obj else None)
    poly = tuple(obj["primitive_poly"]) if "primitive_poly" in obj else None
    return CodeSpec(
        p=obj["p"], pi=pi, n=obj["n"], generators=tuple(gens),
        alpha_image=alpha_image, primitive_poly=poly, budget=obj.get("budget"),
    )


def load_spec(path: str) -> CodeSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"cannot read spec file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(f"spec file {path} is not valid JSON: {exc}") from exc
    return parse_spec(obj)


def resolve_budget(spec: CodeSpec, flag_value: int | None) -> int:
    """Flag beats spec file beats QMCODES_BUDGET beats the default."""
    if flag_value is not None:
        return flag_value
    if spec.budget is not None:
        return spec.budget
    env = os.environ.get("QMCODES_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise SpecFileError(f"QMCODES_BUDGET is not an integer: {env!r}") from exc
    return codes.DEFAULT_BUDGET


class Context:
    """Everything derived from one spec, built lazily and shared."""

    def __init__(self, spec: CodeSpec):
        self.spec = spec

    @cached_property
    def ring(self) -> ResidueRing:
        return make_ring(self.spec.pi)

    @cached_property
    def field(self) -> FieldSpec:
        return make_field(self.spec.p, 2, self.spec.primitive_poly)

    @cached_property
    def correspondence(self) -> Correspondence:
        return build_correspondence(self.field, self.ring, self.spec.alpha_image)

    @cached_property
    def partition(self) -> WeightClassPartition:
        return self.ring.partition

    @cached_property
    def qi_kernel(self) -> Kernel:
        return _build_qi_kernel(self.ring, self.partition, self.correspondence)

    @cached_property
    def complete_kernel(self) -> Kernel:
        return _build_complete_kernel(self.field)

    @cached_property
    def code(self) -> codes.Code:
        return codes.span(self.ring, self.spec.generators, self.spec.n)

    def classifier(self, mode: str) -> Classifier:
        if mode == "qi":
            return qi_classifier(self.partition)
        if mode == "complete":
            return complete_classifier(self.correspondence)
        raise ValueError(f"unknown mode {mode!r}")

    def kernel(self, mode: str) -> Kernel:
        return self.qi_kernel if mode == "qi" else self.complete_kernel


def build_context(spec: CodeSpec) -> Context:
    return Context(spec)
