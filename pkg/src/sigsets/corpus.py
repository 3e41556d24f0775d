"""Program-unit records, their deduplicated instruction subsets, and a
seeded synthetic corpus generator.

Corpus files are JSONL, one object per line:

    {"pu_id": "...", "origin": "...", "instructions": ["add", "mul", ...]}

A unit subset collapses all records that use exactly the same set of
instructions into one entry carrying the occurrence count, so downstream
counting can weight by frequency instead of iterating duplicates.
"""

from __future__ import annotations

import hashlib
import json
import random
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from pathlib import Path
from typing import Iterable, Sequence

from .catalog import Catalog, subset_signature
from .errors import CorpusParseError, InvalidParameter, UnknownInstruction
from .typesig import TypeSignature


@dataclass(frozen=True)
class UnitRecord:
    pu_id: str
    origin: str
    instructions: tuple[str, ...]  # may contain repeats, never empty


@dataclass(frozen=True)
class UnitSubset:
    """The deduplicated instruction set of one or more program units.

    frequency counts real program units sharing exactly this set; it is
    zero only for artificial subsets produced by amplification.
    """

    instructions: frozenset[str]
    frequency: int
    signature: TypeSignature

    @property
    def sorted_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.instructions))

    def __len__(self) -> int:
        return len(self.instructions)


@dataclass(frozen=True)
class SubsetDerivation:
    subsets: tuple[UnitSubset, ...]
    oversize_discarded: int  # records whose unique-id count exceeded the cap


def load_corpus(path: str | Path, cat: Catalog, *, on_unknown: str = "reject") -> list[UnitRecord]:
    """Read and validate a JSONL corpus against a catalog.

    on_unknown: "reject" raises UnknownInstruction, "drop" silently
    removes unknown ids (records left empty by dropping are rejected).
    """
    if on_unknown not in ("reject", "drop"):
        raise InvalidParameter(f"on_unknown must be 'reject' or 'drop', got {on_unknown!r}")
    records: list[UnitRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(lineno, f"invalid JSON: {exc.msg}") from None
            records.append(_record_from_obj(obj, lineno, cat, on_unknown))
    return records


def _record_from_obj(obj: object, lineno: int, cat: Catalog, on_unknown: str) -> UnitRecord:
    if not isinstance(obj, dict):
        raise CorpusParseError(lineno, "record must be a JSON object")
    pu_id = obj.get("pu_id")
    origin = obj.get("origin", "")
    instructions = obj.get("instructions")
    if not isinstance(pu_id, str) or not pu_id:
        raise CorpusParseError(lineno, "'pu_id' must be a non-empty string")
    if not isinstance(instructions, list) or not instructions:
        raise CorpusParseError(lineno, "'instructions' must be a non-empty list")
    if not all(isinstance(i, str) for i in instructions):
        raise CorpusParseError(lineno, "'instructions' entries must be strings")
    kept: list[str] = []
    for iid in instructions:
        if iid in cat:
            kept.append(iid)
        elif on_unknown == "reject":
            raise UnknownInstruction(iid, line=lineno)
    if not kept:
        raise CorpusParseError(lineno, "no catalog instructions left in record")
    return UnitRecord(pu_id=pu_id, origin=str(origin), instructions=tuple(kept))


def derive_unit_subsets(
    records: Iterable[UnitRecord], cat: Catalog, cap: int | None
) -> SubsetDerivation:
    """Collapse records into unique instruction sets with frequencies.

    Sets with more than `cap` unique instructions are discarded and
    counted; cap=None keeps everything.  Output is ordered by sorted
    instruction ids.
    """
    counts: dict[frozenset[str], int] = {}
    discarded = 0
    for rec in records:
        ids = frozenset(rec.instructions)
        if cap is not None and len(ids) > cap:
            discarded += 1
            continue
        counts[ids] = counts.get(ids, 0) + 1
    subsets = tuple(
        UnitSubset(instructions=ids, frequency=freq, signature=subset_signature(ids, cat))
        for ids, freq in sorted(counts.items(), key=lambda kv: tuple(sorted(kv[0])))
    )
    return SubsetDerivation(subsets=subsets, oversize_discarded=discarded)


def corpus_digest(subsets: Iterable[UnitSubset]) -> str:
    """Order-independent sha256 over the real (frequency > 0) subsets.

    Stored in atlas provenance so evaluation can refuse a mismatched
    corpus/atlas pair.
    """
    lines = sorted(
        f"{','.join(s.sorted_ids)}|{s.frequency}" for s in subsets if s.frequency > 0
    )
    h = hashlib.sha256()
    for line in lines:
        h.update(line.encode("utf-8"))
        h.update(b"\n")
    return h.hexdigest()


def _weighted_sample_without_replacement(
    rng: random.Random, items: Sequence[str], weights: Sequence[float], k: int
) -> list[str]:
    pool = list(items)
    w = list(weights)
    chosen: list[str] = []
    for _ in range(k):
        cum = list(accumulate(w))
        idx = bisect_right(cum, rng.random() * cum[-1])
        idx = min(idx, len(pool) - 1)
        chosen.append(pool.pop(idx))
        w.pop(idx)
    return chosen


def generate_synthetic_corpus(
    seed: int,
    n_pus: int,
    cat: Catalog,
    zipf_exponent: float = 1.0,
    n_cooccurrence_groups: int = 20,
    group_size_range: tuple[int, int] = (3, 12),
    cap: int = 10,
) -> list[UnitRecord]:
    """Deterministically generate program-unit records with co-occurrence
    structure and a skewed instruction-rank distribution.

    Each program unit picks one co-occurrence group (group popularity is
    itself skewed), then samples 1..min(cap, |group|) distinct
    instructions from it with rank weights 1/rank**zipf_exponent, where
    an instruction's rank is its position in the sorted catalog.  The
    unique-count distribution is skewed low, so the bulk of units use
    only a handful of instructions.
    """
    if n_pus < 1:
        raise InvalidParameter(f"n_pus must be >= 1, got {n_pus}")
    if zipf_exponent <= 0:
        raise InvalidParameter(f"zipf_exponent must be > 0, got {zipf_exponent}")
    if n_cooccurrence_groups < 1:
        raise InvalidParameter("n_cooccurrence_groups must be >= 1")
    lo, hi = group_size_range
    ids = cat.ids()
    if not (1 <= lo <= hi <= len(ids)):
        raise InvalidParameter(f"group_size_range {group_size_range} not within 1..{len(ids)}")
    if cap < 1:
        raise InvalidParameter(f"cap must be >= 1, got {cap}")

    rng = random.Random(seed)
    rank_weight = {iid: 1.0 / (rank ** zipf_exponent) for rank, iid in enumerate(ids, start=1)}

    groups: list[list[str]] = []
    for _ in range(n_cooccurrence_groups):
        size = rng.randint(lo, hi)
        groups.append(sorted(rng.sample(ids, size)))
    # skewed group popularity: common idioms dominate the corpus
    group_cum = list(accumulate(1.0 / (g + 1) for g in range(len(groups))))

    records: list[UnitRecord] = []
    for n in range(n_pus):
        gi = bisect_right(group_cum, rng.random() * group_cum[-1])
        group = groups[min(gi, len(groups) - 1)]
        max_k = min(len(group), cap)
        k_cum = list(accumulate(1.0 / (k ** 1.5) for k in range(1, max_k + 1)))
        k = 1 + bisect_right(k_cum, rng.random() * k_cum[-1])
        k = min(k, max_k)
        chosen = _weighted_sample_without_replacement(
            rng, group, [rank_weight[i] for i in group], k
        )
        # repeat a few ids so records look like real instruction streams
        stream = list(chosen)
        for iid in chosen:
            if rng.random() < 0.3:
                stream.append(iid)
        records.append(
            UnitRecord(pu_id=f"pu{n:06d}", origin="synthetic", instructions=tuple(stream))
        )
    return records


def write_corpus(records: Iterable[UnitRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(
                json.dumps(
                    {
                        "pu_id": rec.pu_id,
                        "origin": rec.origin,
                        "instructions": list(rec.instructions),
                    },
                    sort_keys=True,
                    separators=(",", ":"),
                )
            )
            fh.write("\n")


@dataclass(frozen=True)
class CorpusStats:
    size_histogram: dict[int, int]  # unique-instruction count -> weighted PU count
    total_pus: int
    fraction_within_cap: float
    cap: int
    per_signature: dict[str, int]  # canonical signature -> weighted PU count


def corpus_stats(subsets: Iterable[UnitSubset], cap: int = 10) -> CorpusStats:
    histogram: dict[int, int] = {}
    per_signature: dict[str, int] = {}
    total = 0
    within = 0
    for s in subsets:
        if s.frequency <= 0:
            continue
        size = len(s)
        histogram[size] = histogram.get(size, 0) + s.frequency
        key = s.signature.canonical()
        per_signature[key] = per_signature.get(key, 0) + s.frequency
        total += s.frequency
        if size <= cap:
            within += s.frequency
    fraction = within / total if total else 0.0
    return CorpusStats(
        size_histogram=dict(sorted(histogram.items())),
        total_pus=total,
        fraction_within_cap=fraction,
        cap=cap,
        per_signature=dict(sorted(per_signature.items())),
    )
