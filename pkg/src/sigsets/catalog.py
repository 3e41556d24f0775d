"""Instruction catalog: per-instruction input/output type sets.

A catalog file is JSON:

    {"name": "...", "version": "...",
     "instructions": [{"id": "add", "inputs": ["n"], "outputs": ["n"]}, ...]}

Type tags are restricted to a/h/n/s.  Instructions may declare an empty
input set (constant producers) but never an empty output set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import (
    CatalogParseError,
    DuplicateInstruction,
    EmptyOutputTypes,
    UnknownInstruction,
)
from .typesig import DataType, TypeSignature


@dataclass(frozen=True)
class InstructionSpec:
    id: str
    input_types: frozenset[DataType]
    output_types: frozenset[DataType]

    def __post_init__(self) -> None:
        if not self.id:
            raise CatalogParseError("instruction id must be non-empty")
        if not self.output_types:
            raise EmptyOutputTypes(self.id)


@dataclass(frozen=True)
class Catalog:
    """Immutable, id-sorted collection of instruction specs."""

    name: str
    version: str
    specs: tuple[InstructionSpec, ...]
    _by_id: dict[str, InstructionSpec] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        by_id: dict[str, InstructionSpec] = {}
        for spec in self.specs:
            if spec.id in by_id:
                raise DuplicateInstruction(spec.id)
            by_id[spec.id] = spec
        object.__setattr__(self, "specs", tuple(sorted(self.specs, key=lambda s: s.id)))
        object.__setattr__(self, "_by_id", by_id)

    def __iter__(self) -> Iterator[InstructionSpec]:
        return iter(self.specs)

    def __len__(self) -> int:
        return len(self.specs)

    def __contains__(self, instr_id: str) -> bool:
        return instr_id in self._by_id

    def get(self, instr_id: str) -> InstructionSpec:
        try:
            return self._by_id[instr_id]
        except KeyError:
            raise UnknownInstruction(instr_id) from None

    def ids(self) -> list[str]:
        return [s.id for s in self.specs]


def _parse_tags(raw: object, where: str) -> frozenset[DataType]:
    if not isinstance(raw, list) or not all(isinstance(t, str) for t in raw):
        raise CatalogParseError(f"{where}: type tags must be a list of strings")
    tags = set()
    for t in raw:
        try:
            tags.add(DataType(t))
        except ValueError:
            raise CatalogParseError(f"{where}: unknown type tag {t!r}") from None
    return frozenset(tags)


def catalog_from_dict(data: dict) -> Catalog:
    if not isinstance(data, dict):
        raise CatalogParseError("catalog root must be a JSON object")
    instructions = data.get("instructions")
    if not isinstance(instructions, list):
        raise CatalogParseError("catalog must contain an 'instructions' list")
    specs = []
    for entry in instructions:
        if not isinstance(entry, dict) or not isinstance(entry.get("id"), str):
            raise CatalogParseError("each instruction needs a string 'id'")
        iid = entry["id"]
        specs.append(
            InstructionSpec(
                id=iid,
                input_types=_parse_tags(entry.get("inputs", []), f"instruction {iid!r} inputs"),
                output_types=_parse_tags(entry.get("outputs", []), f"instruction {iid!r} outputs"),
            )
        )
    return Catalog(
        name=str(data.get("name", "")),
        version=str(data.get("version", "")),
        specs=tuple(specs),
    )


def load_catalog(path: str | Path) -> Catalog:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CatalogParseError(f"cannot read catalog {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogParseError(f"catalog {path} is not valid JSON: {exc}") from exc
    return catalog_from_dict(data)


def catalog_to_dict(cat: Catalog) -> dict:
    return {
        "name": cat.name,
        "version": cat.version,
        "instructions": [
            {
                "id": s.id,
                "inputs": sorted(t.value for t in s.input_types),
                "outputs": sorted(t.value for t in s.output_types),
            }
            for s in cat.specs
        ],
    }


def subset_signature(instr_ids: Iterable[str], cat: Catalog) -> TypeSignature:
    """Signature of an instruction set: the union of its members' input
    types paired with the union of their output types."""
    inputs: set[DataType] = set()
    outputs: set[DataType] = set()
    for iid in instr_ids:
        spec = cat.get(iid)
        inputs |= spec.input_types
        outputs |= spec.output_types
    return TypeSignature(frozenset(inputs), frozenset(outputs))


def subset_can_serve(sub: Iterable[str], tc_sig: TypeSignature, cat: Catalog) -> bool:
    """Can this instruction set plausibly solve a problem with the given
    signature?  Every required output type must be produced by at least
    one member and every required input type consumed by at least one.
    """
    specs = [cat.get(iid) for iid in sub]
    for out_t in tc_sig.outputs:
        if not any(out_t in s.output_types for s in specs):
            return False
    for in_t in tc_sig.inputs:
        if not any(in_t in s.input_types for s in specs):
            return False
    return True
