"""Test-case-driven synthesis over the toy DSL.

The engine infers the type signature of the test cases, selects the
matching instruction-subset family from an atlas (baseline when no
family matches), and searches each subset in family order.  Within a
subset, programs are enumerated bottom-up by node count with
observational-equivalence pruning: two candidates producing identical
outputs on every case input are interchangeable, so only the first is
kept.  The first program reproducing every case output exactly wins.

Search is sequential in family order, so the returned program is the
earliest solution the family ordering can offer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .catalog import Catalog, subset_can_serve
from .dsl import INSTRUCTIONS, DslInstruction
from .errors import (
    CorpusParseError,
    EvaluationFault,
    InconsistentArity,
    InconsistentCaseTypes,
    InvalidParameter,
)
from .families import BASELINE_KEY, FamilyAtlas, select_family
from .typesig import DataType, TypeSignature, type_of_value

DEFAULT_MAX_DEPTH = 6
DEFAULT_MAX_NODES = 7
DEFAULT_PER_SUBSET_BUDGET = 50_000


@dataclass(frozen=True)
class TestCase:
    inputs: tuple
    output: object


@dataclass(frozen=True)
class InputRef:
    pos: int

    def render(self) -> str:
        return f"x{self.pos}"


@dataclass(frozen=True)
class Literal:
    value: object
    dtype: DataType

    def render(self) -> str:
        return json.dumps(self.value, sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Call:
    instr_id: str
    args: tuple

    def render(self) -> str:
        if not self.args:
            return f"({self.instr_id})"
        return f"({self.instr_id} {' '.join(a.render() for a in self.args)})"


Program = InputRef | Literal | Call


def program_instructions(p: Program) -> frozenset[str]:
    if isinstance(p, Call):
        return frozenset({p.instr_id}) | frozenset(
            i for a in p.args for i in program_instructions(a)
        )
    return frozenset()


def program_size(p: Program) -> int:
    if isinstance(p, Call):
        return 1 + sum(program_size(a) for a in p.args)
    return 1


def evaluate_program(p: Program, inputs: Sequence) -> object:
    """Run a program on one input vector; faults raise EvaluationFault."""
    if isinstance(p, InputRef):
        if not 0 <= p.pos < len(inputs):
            raise EvaluationFault(f"input x{p.pos} out of range")
        return inputs[p.pos]
    if isinstance(p, Literal):
        return p.value
    instr = INSTRUCTIONS[p.instr_id]
    return instr.fn(*(evaluate_program(a, inputs) for a in p.args))


def canon(value: object):
    """Hashable canonical form distinguishing the JSON value kinds.

    Numbers compare across int/float (3 == 3.0) but not against
    booleans, which count as string-kind values.
    """
    if isinstance(value, bool):
        return ("b", value)
    if value is None:
        return ("z",)
    if isinstance(value, (int, float)):
        try:
            return ("n", float(value))
        except OverflowError:
            return ("n", value)
    if isinstance(value, str):
        return ("s", value)
    if isinstance(value, list):
        return ("a", tuple(canon(v) for v in value))
    if isinstance(value, dict):
        return ("h", tuple(sorted((k, canon(v)) for k, v in value.items())))
    raise TypeError(f"not a JSON-style value: {type(value).__name__}")


def load_cases(path: str | Path) -> list[TestCase]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorpusParseError(0, f"cannot load test cases {path}: {exc}") from exc
    return cases_from_dict(data)


def cases_from_dict(data: dict) -> list[TestCase]:
    if not isinstance(data, dict) or not isinstance(data.get("cases"), list):
        raise CorpusParseError(0, "test-case file must contain a 'cases' list")
    cases = []
    for entry in data["cases"]:
        if not isinstance(entry, dict) or "inputs" not in entry or "output" not in entry:
            raise CorpusParseError(0, "each case needs 'inputs' and 'output'")
        if not isinstance(entry["inputs"], list):
            raise CorpusParseError(0, "'inputs' must be a list")
        cases.append(TestCase(inputs=tuple(entry["inputs"]), output=entry["output"]))
    if not cases:
        raise CorpusParseError(0, "empty case list")
    return cases


def validate_cases(cases: Sequence[TestCase]) -> None:
    if not cases:
        raise InconsistentArity("no test cases given")
    arity = len(cases[0].inputs)
    for c in cases:
        if len(c.inputs) != arity:
            raise InconsistentArity(
                f"case arities differ: {len(c.inputs)} vs {arity}"
            )
    for pos in range(arity):
        kinds = {type_of_value(c.inputs[pos]) for c in cases}
        if len(kinds) > 1:
            raise InconsistentCaseTypes(
                f"input position {pos} mixes types {sorted(k.value for k in kinds)}"
            )


def infer_signature(cases: Sequence[TestCase]) -> TypeSignature:
    """Union of top-level input types and output types over all cases."""
    if not cases:
        raise InconsistentArity("no test cases given")
    arity = len(cases[0].inputs)
    inputs: set[DataType] = set()
    outputs: set[DataType] = set()
    for c in cases:
        if len(c.inputs) != arity:
            raise InconsistentArity(f"case arities differ: {len(c.inputs)} vs {arity}")
        inputs.update(type_of_value(v) for v in c.inputs)
        outputs.add(type_of_value(c.output))
    return TypeSignature(frozenset(inputs), frozenset(outputs))


@dataclass
class SynthStats:
    family_key: str = BASELINE_KEY
    subsets_examined: int = 0
    subsets_skipped: int = 0
    programs_enumerated: int = 0
    evaluation_faults: int = 0
    solved_subset: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "family_key": self.family_key,
            "subsets_examined": self.subsets_examined,
            "subsets_skipped": self.subsets_skipped,
            "programs_enumerated": self.programs_enumerated,
            "evaluation_faults": self.evaluation_faults,
            "solved_subset": list(self.solved_subset) if self.solved_subset else None,
        }


@dataclass(frozen=True)
class SynthesisResult:
    program: Program | None
    stats: SynthStats

    @property
    def found(self) -> bool:
        return self.program is not None

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "program": self.program.render() if self.program else None,
            "stats": self.stats.to_dict(),
        }


def _mined_literals(cases: Sequence[TestCase]) -> list[Literal]:
    values: dict[tuple, Literal] = {}
    for c in cases:
        for v in list(c.inputs) + [c.output]:
            if isinstance(v, bool) or v is None:
                continue
            if isinstance(v, (int, float)):
                values.setdefault(canon(v), Literal(v, DataType.NUMBER))
            elif isinstance(v, str):
                values.setdefault(canon(v), Literal(v, DataType.STRING))
    return [values[k] for k in sorted(values, key=repr)]


def _compositions(total: int, parts: int):
    # ordered splits of `total` into `parts` positive integers, lexicographic
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass
class _Candidate:
    program: Program
    raw: tuple  # raw output value per case; never mutated downstream
    key: tuple  # canonical form of raw, used for equivalence pruning
    depth: int


class _SubsetSearch:
    """Size-ordered enumeration restricted to one instruction subset."""

    def __init__(
        self,
        cases: Sequence[TestCase],
        subset: Iterable[str],
        leaves: Sequence[Literal],
        max_depth: int,
        max_nodes: int,
        budget: int,
        stats: SynthStats,
    ):
        self.cases = cases
        self.expected = tuple(canon(c.output) for c in cases)
        self.instrs: list[DslInstruction] = [
            INSTRUCTIONS[iid] for iid in sorted(subset) if iid in INSTRUCTIONS
        ]
        self.leaves = leaves
        self.max_depth = max_depth
        self.max_nodes = max_nodes
        self.budget = budget
        self.stats = stats
        self.spent = 0
        # pools[size][dtype] -> candidates in construction order
        self.pools: list[dict[DataType, list[_Candidate]]] = []
        self.seen: set[tuple] = set()

    def _admit(self, program: Program, dtype: DataType, raw: tuple, depth: int, size: int):
        key = tuple(canon(v) for v in raw)
        if key == self.expected:
            return program
        if key in self.seen:
            return None
        self.seen.add(key)
        self.pools[size - 1].setdefault(dtype, []).append(
            _Candidate(program=program, raw=raw, key=key, depth=depth)
        )
        return None

    def _spend(self) -> bool:
        if self.spent >= self.budget:
            return False
        self.spent += 1
        self.stats.programs_enumerated += 1
        return True

    def run(self) -> Program | None:
        for size in range(1, self.max_nodes + 1):
            self.pools.append({})
            found = self._fill(size)
            if found is not None or self.spent >= self.budget:
                return found
        return None

    def _leaf_candidates(self):
        arity = len(self.cases[0].inputs)
        for pos in range(arity):
            dtype = type_of_value(self.cases[0].inputs[pos])
            yield InputRef(pos), dtype, tuple(c.inputs[pos] for c in self.cases), 1
        for lit in self.leaves:
            yield lit, lit.dtype, tuple(lit.value for _ in self.cases), 1
        for instr in self.instrs:
            if instr.param_types:
                continue
            value = instr.fn()
            yield Call(instr.id, ()), instr.return_type, tuple(value for _ in self.cases), 1

    def _fill(self, size: int) -> Program | None:
        if size == 1:
            for prog, dtype, raw, depth in self._leaf_candidates():
                if not self._spend():
                    return None
                solved = self._admit(prog, dtype, raw, depth, size)
                if solved is not None:
                    return solved
            return None

        for instr in self.instrs:
            arity = len(instr.param_types)
            if arity == 0 or arity > size - 1:
                continue
            for split in _compositions(size - 1, arity):
                solved = self._apply(instr, split, size)
                if solved is not None:
                    return solved
                if self.spent >= self.budget:
                    return None
        return None

    def _apply(self, instr: DslInstruction, split: tuple[int, ...], size: int) -> Program | None:
        pools = []
        for part, dtype in zip(split, instr.param_types):
            pool = self.pools[part - 1].get(dtype, [])
            if not pool:
                return None
            pools.append(pool)

        def rec(idx: int, chosen: list[_Candidate]) -> Program | None:
            if idx == len(pools):
                return self._construct(instr, chosen, size)
            for cand in pools[idx]:
                chosen.append(cand)
                solved = rec(idx + 1, chosen)
                chosen.pop()
                if solved is not None:
                    return solved
                if self.spent >= self.budget:
                    return None
            return None

        return rec(0, [])

    def _construct(self, instr: DslInstruction, chosen: list[_Candidate], size: int) -> Program | None:
        depth = 1 + max(c.depth for c in chosen)
        if depth > self.max_depth:
            return None
        if not self._spend():
            return None
        raw = []
        for case_idx in range(len(self.cases)):
            try:
                raw.append(instr.fn(*(c.raw[case_idx] for c in chosen)))
            except EvaluationFault:
                self.stats.evaluation_faults += 1
                return None
        program = Call(instr.id, tuple(c.program for c in chosen))
        return self._admit(program, instr.return_type, tuple(raw), depth, size)


def synthesize(
    cases: Sequence[TestCase],
    atlas: FamilyAtlas,
    cat: Catalog,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_nodes: int = DEFAULT_MAX_NODES,
    per_subset_budget: int = DEFAULT_PER_SUBSET_BUDGET,
) -> SynthesisResult:
    """Search family subsets in order for a program matching every case."""
    if max_depth < 1 or max_nodes < 1 or per_subset_budget < 1:
        raise InvalidParameter("budgets must be positive")
    validate_cases(cases)
    sig = infer_signature(cases)
    family = select_family(atlas, sig)
    stats = SynthStats(family_key=family.key)
    leaves = _mined_literals(cases)

    for subset in family.subsets:
        if not subset_can_serve(subset.instructions, sig, cat):
            stats.subsets_skipped += 1
            continue
        stats.subsets_examined += 1
        search = _SubsetSearch(
            cases=cases,
            subset=subset.instructions,
            leaves=leaves,
            max_depth=max_depth,
            max_nodes=max_nodes,
            budget=per_subset_budget,
            stats=stats,
        )
        program = search.run()
        if program is not None:
            stats.solved_subset = tuple(sorted(subset.instructions))
            return SynthesisResult(program=program, stats=stats)
    return SynthesisResult(program=None, stats=stats)
