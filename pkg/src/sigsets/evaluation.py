"""Relative non-productive effort counting.

For one unit subset, the work a family costs is the number of leading
subsets that are not supersets of it: the prefix a sequential search
would burn before reaching the first subset able to contain a solution.
Per problem signature three counts are taken, each frequency-weighted
over the real unit subsets carrying that signature:

    R1  against the baseline family,
    R2  against the signature's own family before reordering,
    R3  against the same family after descending-coverage reordering,

then totalled (T1..T3) and averaged per program unit (M1..M3).  Totals
are integers; means are derived last, so M_i * n_pus == T_i exactly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import UnitSubset, corpus_digest
from .errors import NoCoveringSubset, ProvenanceMismatch
from .families import Family, FamilyAtlas, InstructionSubset, _MaskSpace


@dataclass(frozen=True)
class SignatureEvaluation:
    signature: str
    n_pus: int
    t1: int
    t2: int
    t3: int

    @property
    def m1(self) -> float:
        return self.t1 / self.n_pus if self.n_pus else 0.0

    @property
    def m2(self) -> float:
        return self.t2 / self.n_pus if self.n_pus else 0.0

    @property
    def m3(self) -> float:
        return self.t3 / self.n_pus if self.n_pus else 0.0


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple[SignatureEvaluation, ...]  # descending M1
    totals: dict[str, int]  # T1, T2, T3, n_pus summed over all rows
    reductions: dict[str, float | str | None]  # log10 ratios, "inf" or None when degenerate
    provenance: dict


def _subsets_of(family_or_list: Family | Sequence[InstructionSubset]) -> Sequence[InstructionSubset]:
    if isinstance(family_or_list, Family):
        return family_or_list.subsets
    return family_or_list


def leading_nonsuperset_count(
    family: Family | Sequence[InstructionSubset], target: UnitSubset | Iterable[str]
) -> int:
    """Position of the first subset containing the target instruction set.

    Equivalently: how many leading subsets are not supersets of it.
    Raises NoCoveringSubset when no member contains the target.
    """
    subsets = _subsets_of(family)
    ids = target.instructions if isinstance(target, UnitSubset) else frozenset(target)
    space = _MaskSpace([i for s in subsets for i in s.instructions] + list(ids))
    m = space.mask(ids)
    idx = _scan([space.mask(s.instructions) for s in subsets], m)
    if idx is None:
        key = family.key if isinstance(family, Family) else "<anonymous>"
        raise NoCoveringSubset(key, ids)
    return idx


def _scan(order_masks: Sequence[int], m: int) -> int | None:
    for i, sm in enumerate(order_masks):
        if m & ~sm == 0:
            return i
    return None


def evaluate_signature(
    sig: str,
    puis_group: Sequence[UnitSubset],
    baseline: Family | Sequence[InstructionSubset],
    tsis_unordered: Family | Sequence[InstructionSubset],
    tsis_reordered: Family | Sequence[InstructionSubset],
) -> SignatureEvaluation:
    """Weighted leading-subset totals for one signature's unit subsets."""
    base = _subsets_of(baseline)
    unordered = _subsets_of(tsis_unordered)
    ordered = _subsets_of(tsis_reordered)
    space = _MaskSpace(
        [i for s in base for i in s.instructions]
        + [i for s in unordered for i in s.instructions]
        + [i for s in puis_group for i in s.instructions]
    )
    base_masks = [space.mask(s.instructions) for s in base]
    unordered_masks = [space.mask(s.instructions) for s in unordered]
    ordered_masks = [space.mask(s.instructions) for s in ordered]

    t1 = t2 = t3 = n_pus = 0
    for s in puis_group:
        if s.frequency <= 0:
            continue
        m = space.mask(s.instructions)
        counts = []
        for masks, which in ((base_masks, "baseline"), (unordered_masks, sig), (ordered_masks, sig)):
            idx = _scan(masks, m)
            if idx is None:
                raise NoCoveringSubset(which, s.instructions)
            counts.append(idx)
        t1 += s.frequency * counts[0]
        t2 += s.frequency * counts[1]
        t3 += s.frequency * counts[2]
        n_pus += s.frequency
    return SignatureEvaluation(signature=sig, n_pus=n_pus, t1=t1, t2=t2, t3=t3)


def _reduction_log10(t_base: int, t_new: int) -> float | str | None:
    if t_base == 0:
        return None  # no baseline work to reduce: undefined
    if t_new == 0:
        return "inf"
    return math.log10(t_base / t_new)


def run_evaluation(
    atlas: FamilyAtlas, subsets: Sequence[UnitSubset], threads: int = 1
) -> EvaluationReport:
    """Evaluate every signature family in the atlas against its unit subsets.

    The subsets must be the real population the atlas was built from;
    a provenance digest mismatch aborts before any counting.
    """
    real = [s for s in subsets if s.frequency > 0]
    digest = corpus_digest(real)
    expected = atlas.provenance.get("corpus_digest")
    if expected is not None and digest != expected:
        raise ProvenanceMismatch(
            f"corpus digest {digest[:12]}... does not match atlas provenance {str(expected)[:12]}..."
        )

    groups: dict[str, list[UnitSubset]] = {}
    for s in real:
        if s.signature.is_production():
            groups.setdefault(s.signature.canonical(), []).append(s)

    keys = sorted(atlas.by_signature)

    def one(key: str) -> SignatureEvaluation:
        fam = atlas.by_signature[key]
        return evaluate_signature(
            key,
            groups.get(key, ()),
            atlas.baseline,
            fam.unordered_subsets(),
            fam.subsets,
        )

    if threads > 1 and len(keys) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            evaluated = list(pool.map(one, keys))
    else:
        evaluated = [one(key) for key in keys]

    # a family key without matching units can only occur when provenance
    # checking was disabled; such rows carry no information
    evaluated = [r for r in evaluated if r.n_pus > 0]
    rows = tuple(sorted(evaluated, key=lambda r: (-r.m1, r.signature)))
    totals = {
        "T1": sum(r.t1 for r in rows),
        "T2": sum(r.t2 for r in rows),
        "T3": sum(r.t3 for r in rows),
        "n_pus": sum(r.n_pus for r in rows),
    }
    reductions = {
        "signatures_log10": _reduction_log10(totals["T1"], totals["T2"]),
        "signatures_reordered_log10": _reduction_log10(totals["T1"], totals["T3"]),
    }
    return EvaluationReport(
        rows=rows, totals=totals, reductions=reductions, provenance=dict(atlas.provenance)
    )
