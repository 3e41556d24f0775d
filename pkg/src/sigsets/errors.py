"""Exception types shared across the package.

Everything that signals bad input data derives from DataError so the CLI
can map it to a single exit code.
"""


class SigsetsError(Exception):
    """Base class for all package errors."""


class DataError(SigsetsError):
    """Malformed or inconsistent input data (CLI exit code 1)."""


class MalformedSignature(DataError):
    """Signature text with unknown type tags or a missing separator."""


class CatalogParseError(DataError):
    """Catalog file is not valid JSON or violates the catalog schema."""


class DuplicateInstruction(DataError):
    def __init__(self, instr_id: str):
        super().__init__(f"duplicate instruction id: {instr_id!r}")
        self.instr_id = instr_id


class EmptyOutputTypes(DataError):
    def __init__(self, instr_id: str):
        super().__init__(f"instruction {instr_id!r} declares no output types")
        self.instr_id = instr_id


class UnknownInstruction(DataError):
    def __init__(self, instr_id: str, line: int | None = None):
        loc = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown instruction id: {instr_id!r}{loc}")
        self.instr_id = instr_id
        self.line = line


class CorpusParseError(DataError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"corpus line {line}: {reason}")
        self.line = line
        self.reason = reason


class InvalidParameter(SigsetsError):
    """A numeric or structural parameter outside its allowed range."""


class OversizedSubset(SigsetsError):
    """A unit subset larger than the family cap reached clustering."""


class NoCoveringSubset(DataError):
    """No family member is a superset of the queried instruction set.

    Cannot happen when a family is evaluated against the population it
    was built from; raised only on atlas/corpus mismatches.
    """

    def __init__(self, family_key: str, instructions):
        ids = ",".join(sorted(instructions))
        super().__init__(f"family {family_key!r} has no superset of {{{ids}}}")
        self.family_key = family_key
        self.instructions = frozenset(instructions)


class ProvenanceMismatch(DataError):
    """Atlas provenance does not match the corpus it is evaluated against."""


class InconsistentArity(DataError):
    """Test cases in one set disagree on the number of inputs."""


class InconsistentCaseTypes(DataError):
    """Test cases in one set disagree on a per-position input type."""


class EvaluationFault(SigsetsError):
    """A toy-DSL instruction could not produce a value for its inputs."""
