"""Four-type data-type system and the input/output type-signature algebra.

Values are classified into four JSON-flavoured types: number, string,
array and hashmap (booleans and nulls count as strings).  A type
signature pairs a set of input types with a set of output types and has
a canonical text form such as ``"as-n"``: input tags sorted
alphabetically, a hyphen, then output tags sorted alphabetically.

Everything here is an immutable value; all functions are pure.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable

from .errors import MalformedSignature


class DataType(str, enum.Enum):
    ARRAY = "a"
    HASHMAP = "h"
    NUMBER = "n"
    STRING = "s"

    def __str__(self) -> str:
        return self.value


_TAG_TO_TYPE = {t.value: t for t in DataType}

# The 15 non-empty subsets of the type universe, ordered by size then
# alphabetically, so enumeration runs from {a} up to {a,h,n,s}.
_TYPE_SETS: tuple[frozenset[DataType], ...] = tuple(
    frozenset(combo)
    for size in range(1, 5)
    for combo in itertools.combinations(sorted(DataType), size)
)


def _tags(types: Iterable[DataType]) -> str:
    return "".join(sorted(t.value for t in types))


@dataclass(frozen=True)
class TypeSignature:
    """A set of input types paired with a set of output types.

    Either side may be empty (degenerate program units exist); such
    signatures are representable but are not part of the 225 production
    signatures and are routed to the baseline family downstream.
    """

    inputs: frozenset[DataType]
    outputs: frozenset[DataType]

    def canonical(self) -> str:
        return f"{_tags(self.inputs)}-{_tags(self.outputs)}"

    def subsumes(self, other: "TypeSignature") -> bool:
        """True iff every input and output type of `other` is present here."""
        return other.inputs <= self.inputs and other.outputs <= self.outputs

    def is_production(self) -> bool:
        """Both sides non-empty: one of the 225 enumerable signatures."""
        return bool(self.inputs) and bool(self.outputs)

    def __str__(self) -> str:
        return self.canonical()


def signature(inputs: Iterable[DataType], outputs: Iterable[DataType]) -> TypeSignature:
    return TypeSignature(frozenset(inputs), frozenset(outputs))


def canonical_string(sig: TypeSignature) -> str:
    return sig.canonical()


def parse_signature(text: str) -> TypeSignature:
    """Parse ``"as-n"`` or ``"as:n"`` style text into a TypeSignature.

    Unsorted and duplicated tags are normalized away.  Raises
    MalformedSignature on unknown tags or a missing/ambiguous separator.
    """
    seps = [c for c in ("-", ":") if c in text]
    if not seps:
        raise MalformedSignature(f"no '-' or ':' separator in {text!r}")
    sep = seps[0]
    left, _, right = text.partition(sep)
    try:
        inputs = frozenset(_TAG_TO_TYPE[c] for c in left)
        outputs = frozenset(_TAG_TO_TYPE[c] for c in right)
    except KeyError as exc:
        raise MalformedSignature(f"unknown type tag {exc.args[0]!r} in {text!r}") from None
    return TypeSignature(inputs, outputs)


def subsumes(ts2: TypeSignature, ts1: TypeSignature) -> bool:
    """True iff ts2 subsumes ts1 (ts1's types all present in ts2)."""
    return ts2.subsumes(ts1)


def enumerate_production_signatures() -> list[TypeSignature]:
    """All 225 signatures with non-empty sides, from ``a-a`` to ``ahns-ahns``.

    Both sides run through the 15 non-empty type sets ordered by size
    then alphabetically, inputs-major.
    """
    return [
        TypeSignature(ins, outs)
        for ins in _TYPE_SETS
        for outs in _TYPE_SETS
    ]


def type_of_value(value: object) -> DataType:
    """Classify a JSON-style value: number->n, array->a, object->h,
    string/boolean/null->s."""
    # bool is a subclass of int, so it must be tested first
    if value is None or isinstance(value, (bool, str)):
        return DataType.STRING
    if isinstance(value, (int, float)):
        return DataType.NUMBER
    if isinstance(value, (list, tuple)):
        return DataType.ARRAY
    if isinstance(value, dict):
        return DataType.HASHMAP
    raise TypeError(f"not a JSON-style value: {type(value).__name__}")
