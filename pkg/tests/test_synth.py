import itertools

import pytest

from sigsets.errors import EvaluationFault, InconsistentArity, InconsistentCaseTypes
from sigsets.families import BASELINE_KEY, Family, FamilyAtlas, InstructionSubset
from sigsets.synth import (
    Call,
    InputRef,
    Literal,
    TestCase as SynthCase,
    canon,
    evaluate_program,
    infer_signature,
    program_instructions,
    program_size,
    synthesize,
    validate_cases,
)
from sigsets.typesig import DataType


def cases(*pairs):
    return [SynthCase(inputs=tuple(i), output=o) for i, o in pairs]


class TestInferSignature:
    def test_mixed_inputs_array_output(self):
        sig = infer_signature(cases(([3, "x"], [1, 2])))
        assert sig.canonical() == "ns-a"

    def test_numeric(self):
        sig = infer_signature(cases(([2], 4), ([3], 6)))
        assert sig.canonical() == "n-n"

    def test_arity_mismatch(self):
        with pytest.raises(InconsistentArity):
            infer_signature(cases(([1], 1), ([1, 2], 1)))

    def test_union_across_cases(self):
        sig = infer_signature(cases(([1], 1), ([2], "s")))
        assert sig.canonical() == "n-ns"

    def test_validate_rejects_mixed_position_types(self):
        with pytest.raises(InconsistentCaseTypes):
            validate_cases(cases(([1], 1), (["s"], 2)))


class TestEvaluateProgram:
    def test_mul_with_literal_instruction(self):
        prog = Call("mul", (InputRef(0), Call("lit_2", ())))
        assert evaluate_program(prog, [3]) == 6

    def test_out_of_range_index_faults(self):
        prog = Call("get_num", (InputRef(0), Literal(5, DataType.NUMBER)))
        with pytest.raises(EvaluationFault):
            evaluate_program(prog, [[1, 2]])

    def test_concat(self):
        prog = Call("concat", (InputRef(0), InputRef(1)))
        assert evaluate_program(prog, ["a", "b"]) == "ab"

    def test_div_by_zero_faults(self):
        prog = Call("div", (InputRef(0), Literal(0, DataType.NUMBER)))
        with pytest.raises(EvaluationFault):
            evaluate_program(prog, [4])


def brute_force_minimal_solutions(case_list, instruction_ids, max_nodes):
    """Independent enumeration: all programs up to max_nodes over the
    given instructions plus input refs, checked against the cases."""
    from sigsets.dsl import INSTRUCTIONS

    arity = len(case_list[0].inputs)
    leaves = [InputRef(p) for p in range(arity)]
    by_size = {1: list(leaves) + [Call(i, ()) for i in instruction_ids if not INSTRUCTIONS[i].param_types]}
    solutions = []

    def outputs(prog):
        try:
            return tuple(canon(evaluate_program(prog, list(c.inputs))) for c in case_list)
        except EvaluationFault:
            return None

    expected = tuple(canon(c.output) for c in case_list)
    for size in range(1, max_nodes + 1):
        by_size.setdefault(size, [])
        if size > 1:
            for iid in instruction_ids:
                instr = INSTRUCTIONS[iid]
                k = len(instr.param_types)
                if k == 0 or k > size - 1:
                    continue
                for split in (
                    s for s in itertools.product(range(1, size), repeat=k) if sum(s) == size - 1
                ):
                    for children in itertools.product(*(by_size.get(s, []) for s in split)):
                        by_size[size].append(Call(iid, children))
        for prog in by_size[size]:
            if outputs(prog) == expected:
                solutions.append(prog)
        if solutions:
            return size, solutions
    return None, []


def atlas_with(*families, baseline_sets=()):
    baseline = Family(
        key=BASELINE_KEY,
        cap=10,
        subsets=tuple(InstructionSubset(frozenset(s), 0) for s in baseline_sets),
        population=0,
    )
    return FamilyAtlas(
        baseline=baseline,
        by_signature={f.key: f for f in families},
        cap=10,
        provenance={},
    )


def fam(key, *sets):
    return Family(
        key=key,
        cap=10,
        subsets=tuple(InstructionSubset(frozenset(s), 0) for s in sets),
        population=1,
    )


class TestSynthesize:
    def test_doubling_matches_brute_force_oracle(self, toy_cat):
        case_list = cases(([2], 4), ([3], 6))
        min_size, solutions = brute_force_minimal_solutions(case_list, ["mul", "lit_2"], 3)
        assert min_size == 3  # no 1- or 2-node program doubles
        atlas = atlas_with(fam("n-n", ["mul", "lit_2"]))
        result = synthesize(case_list, atlas, toy_cat)
        assert result.found
        assert program_size(result.program) <= min_size
        assert "mul" in result.program.render()
        for c in case_list:
            assert canon(evaluate_program(result.program, list(c.inputs))) == canon(c.output)
        assert result.stats.subsets_examined >= 1

    def test_identity_program(self, toy_cat):
        atlas = atlas_with(fam("n-n", ["add"]))
        result = synthesize(cases(([5], 5), ([9], 9)), atlas, toy_cat)
        assert result.found
        assert result.program == InputRef(0)
        assert result.program.render() == "x0"

    def test_unservable_family_not_found(self, toy_cat):
        # output type h, but no subset produces h
        atlas = atlas_with(baseline_sets=(["add", "mul"], ["concat"]))
        result = synthesize(cases(([1], {"a": 1}),), atlas, toy_cat)
        assert not result.found
        assert result.stats.subsets_examined == 0
        assert result.stats.subsets_skipped == 2

    def test_program_uses_only_subset_instructions(self, toy_cat, demo_atlas):
        case_list = cases(([["a", "b"], "-"], "a-b"), (([["x"], ","]), "x"))
        result = synthesize(case_list, demo_atlas, toy_cat)
        assert result.found
        assert program_instructions(result.program) <= set(result.stats.solved_subset)

    def test_family_selection_invariance(self, toy_cat, demo_atlas):
        result = synthesize(cases(([2], 4), ([3], 6)), demo_atlas, toy_cat)
        assert result.stats.family_key == "n-n"
        fallback = synthesize(cases(([{"k": 1}], 1), ([{}], 0)), demo_atlas, toy_cat)
        assert fallback.stats.family_key == BASELINE_KEY

    def test_budget_monotone(self, toy_cat):
        case_list = cases(([2], 4), ([3], 6), ([5], 10))
        atlas = atlas_with(fam("n-n", ["add", "sub", "div", "mul", "lit_1", "lit_2"]))
        small = synthesize(case_list, atlas, toy_cat, per_subset_budget=200)
        big = synthesize(case_list, atlas, toy_cat, per_subset_budget=50_000)
        assert big.found
        if small.found:
            assert small.program == big.program

    def test_not_found_within_tiny_budget(self, toy_cat):
        atlas = atlas_with(fam("n-n", ["mul", "lit_2"]))
        result = synthesize(cases(([2], 4), ([3], 6)), atlas, toy_cat, per_subset_budget=2)
        assert not result.found
        assert result.stats.programs_enumerated <= 2

    def test_deterministic(self, toy_cat, demo_atlas):
        case_list = cases(([[3, 1, 2]], [1, 2, 3]), ([[5, 4]], [4, 5]))
        r1 = synthesize(case_list, demo_atlas, toy_cat)
        r2 = synthesize(case_list, demo_atlas, toy_cat)
        assert r1.program == r2.program
        assert r1.stats == r2.stats

    def test_faults_counted_not_fatal(self, toy_cat):
        # div(x0, x1) divides by zero during search; the solution divides by
        # the literal-2 instruction instead
        atlas = atlas_with(fam("n-n", ["div", "lit_2"]))
        case_list = cases(([6, 0], 3), ([10, 0], 5))
        result = synthesize(case_list, atlas, toy_cat)
        assert result.found
        for c in case_list:
            assert evaluate_program(result.program, list(c.inputs)) == c.output
        assert result.stats.evaluation_faults > 0
