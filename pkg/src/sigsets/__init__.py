"""Instruction-subset families keyed by test-case type signatures.

Mines which instructions co-occur in program units, clusters them into
capped instruction subsets (one baseline family plus one family per
input/output type signature), measures how much leading-subset work the
signature families save, and drives a toy test-case synthesizer with
them.
"""

from .amplify import amplify
from .catalog import (
    Catalog,
    InstructionSpec,
    load_catalog,
    subset_can_serve,
    subset_signature,
)
from .corpus import (
    UnitRecord,
    UnitSubset,
    corpus_stats,
    derive_unit_subsets,
    generate_synthetic_corpus,
    load_corpus,
    write_corpus,
)
from .evaluation import (
    EvaluationReport,
    SignatureEvaluation,
    evaluate_signature,
    leading_nonsuperset_count,
    run_evaluation,
)
from .families import (
    Family,
    FamilyAtlas,
    InstructionSubset,
    atlas_stats,
    build_atlas,
    cluster,
    load_atlas,
    reorder,
    save_atlas,
    select_family,
)
from .report import emit_report
from .synth import (
    SynthesisResult,
    TestCase,
    evaluate_program,
    infer_signature,
    synthesize,
)
from .typesig import (
    DataType,
    TypeSignature,
    canonical_string,
    enumerate_production_signatures,
    parse_signature,
    subsumes,
    type_of_value,
)

__version__ = "0.1.0"
