"""Clustering unit subsets into capped instruction-subset families.

The atlas holds one "baseline" family built from every unit subset plus
one family per type signature built exclusively from same-signature
subsets.  Families answer one query: given a problem signature, which
ordered list of instruction subsets should constrain search.

Clustering is a deterministic greedy agglomeration: unique subsets are
processed in descending frequency (ties by instruction ids); each
uncovered subset merges into the overlapping cluster that shares the
most instructions while staying within the cap, or opens a new cluster;
a final pass then repeatedly merges any two clusters whose union fits
the cap (overlap is not required there) until no merge applies.  The
greedy step only considers clusters sharing at least one instruction;
zero-overlap consolidation is left to the final pass, which reaches the
same end state.

Clusters are emitted in ascending instruction-id order.  Creation order
would leak frequency information (clusters open in descending-frequency
processing order), which would contaminate the before-reordering
measurements that the evaluation takes against emission order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .amplify import amplify
from .catalog import Catalog
from .corpus import UnitSubset, corpus_digest
from .errors import CatalogParseError, OversizedSubset
from .typesig import TypeSignature, parse_signature

BASELINE_KEY = "baseline"


@dataclass(frozen=True)
class InstructionSubset:
    instructions: frozenset[str]
    coverage: int  # frequency-weighted count of real unit subsets contained in this set

    @property
    def sorted_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self.instructions))

    def __len__(self) -> int:
        return len(self.instructions)


@dataclass(frozen=True)
class Family:
    """An ordered list of instruction subsets under one key.

    pre_reorder, when present, maps emission order to current positions:
    subsets[pre_reorder[k]] is the subset that was emitted k-th by the
    clusterer.  It is kept so the evaluation can count against the family
    as it stood before frequency reordering.
    """

    key: str
    cap: int
    subsets: tuple[InstructionSubset, ...]
    population: int
    pre_reorder: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.subsets)

    def unordered_subsets(self) -> tuple[InstructionSubset, ...]:
        if self.pre_reorder is None:
            return self.subsets
        return tuple(self.subsets[i] for i in self.pre_reorder)


@dataclass(frozen=True)
class FamilyAtlas:
    baseline: Family
    by_signature: dict[str, Family]
    cap: int
    provenance: dict


class _MaskSpace:
    """Bijection between instruction ids and bit positions."""

    def __init__(self, ids: Iterable[str]):
        self.ids = sorted(set(ids))
        self.bit = {iid: i for i, iid in enumerate(self.ids)}

    def mask(self, instructions: Iterable[str]) -> int:
        m = 0
        for iid in instructions:
            m |= 1 << self.bit[iid]
        return m

    def unmask(self, mask: int) -> frozenset[str]:
        return frozenset(self.ids[i] for i in range(mask.bit_length()) if mask >> i & 1)


def _cluster_masks(ordered_masks: list[int], cap: int) -> list[int]:
    clusters: list[int] = []
    postings: dict[int, list[int]] = {}  # bit position -> cluster indices touching it

    def bits(mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    for m in ordered_masks:
        cand = sorted({c for b in bits(m) for c in postings.get(b, ())})
        if any(m & ~clusters[c] == 0 for c in cand):
            continue  # already covered
        best = -1
        best_overlap = 0
        for c in cand:
            u = clusters[c] | m
            if u.bit_count() > cap:
                continue
            overlap = (clusters[c] & m).bit_count()
            if overlap > best_overlap:
                best_overlap = overlap
                best = c
        if best >= 0:
            grown = clusters[best] | m
            for b in bits(grown & ~clusters[best]):
                postings.setdefault(b, []).append(best)
            clusters[best] = grown
        else:
            clusters.append(m)
            idx = len(clusters) - 1
            for b in bits(m):
                postings.setdefault(b, []).append(idx)

    # consolidate: merge any two clusters whose union fits, to fixpoint
    alive = [True] * len(clusters)
    i = 0
    while i < len(clusters):
        if not alive[i]:
            i += 1
            continue
        j = i + 1
        while j < len(clusters):
            if alive[j] and (clusters[i] | clusters[j]).bit_count() <= cap:
                clusters[i] |= clusters[j]
                alive[j] = False
                j = i + 1  # the grown cluster may now absorb earlier rejects
            else:
                j += 1
        i += 1
    return [c for c, keep in zip(clusters, alive) if keep]


def _coverage(cluster_masks: Sequence[int], real: Sequence[tuple[int, int]]) -> list[int]:
    # real: (mask, frequency) pairs with frequency > 0
    return [
        sum(freq for m, freq in real if m & ~cm == 0)
        for cm in cluster_masks
    ]


def cluster(subsets: Sequence[UnitSubset], cap: int) -> list[InstructionSubset]:
    """Greedy agglomeration of unit subsets into capped clusters.

    Every input subset ends up contained in at least one returned
    cluster; clusters are emitted in a deterministic order with coverage
    counted over the real (frequency > 0) inputs.
    """
    for s in subsets:
        if len(s) > cap:
            raise OversizedSubset(
                f"unit subset of size {len(s)} exceeds cap {cap}: {s.sorted_ids}"
            )
    if not subsets:
        return []

    merged: dict[frozenset[str], int] = {}
    for s in subsets:
        merged[s.instructions] = merged.get(s.instructions, 0) + s.frequency
    space = _MaskSpace(iid for ids in merged for iid in ids)
    ordered = sorted(merged.items(), key=lambda kv: (-kv[1], tuple(sorted(kv[0]))))
    masks = _cluster_masks([space.mask(ids) for ids, _ in ordered], cap)

    real = [(space.mask(ids), freq) for ids, freq in merged.items() if freq > 0]
    coverage = _coverage(masks, real)
    emitted = [
        InstructionSubset(instructions=space.unmask(m), coverage=cov)
        for m, cov in zip(masks, coverage)
    ]
    return sorted(emitted, key=lambda s: s.sorted_ids)


def reorder(family: Family, building_subsets: Sequence[UnitSubset]) -> Family:
    """Sort a family by descending coverage over its real population.

    Coverage is recomputed from building_subsets (frequency > 0 entries
    only); ties break on ascending instruction-id lists.  The returned
    family records the pre-reorder positions.
    """
    space = _MaskSpace(
        [iid for s in family.subsets for iid in s.instructions]
        + [iid for s in building_subsets for iid in s.instructions]
    )
    real = [(space.mask(s.instructions), s.frequency) for s in building_subsets if s.frequency > 0]
    masks = [space.mask(s.instructions) for s in family.unordered_subsets()]
    coverage = _coverage(masks, real)
    emitted = [
        replace(s, coverage=cov)
        for s, cov in zip(family.unordered_subsets(), coverage)
    ]
    order = sorted(
        range(len(emitted)), key=lambda i: (-emitted[i].coverage, emitted[i].sorted_ids)
    )
    position = [0] * len(order)
    for new_pos, old_pos in enumerate(order):
        position[old_pos] = new_pos
    return Family(
        key=family.key,
        cap=family.cap,
        subsets=tuple(emitted[i] for i in order),
        population=family.population,
        pre_reorder=tuple(position),
    )


def build_atlas(
    subsets: Sequence[UnitSubset],
    cat: Catalog,
    cap: int,
    amplify_factor: float = 3.0,
    seed: int = 0,
) -> FamilyAtlas:
    """Build the baseline family plus one reordered family per signature.

    Only signatures carried by at least one real unit subset get a
    family; subsets whose signature has an empty side contribute to the
    baseline only.  The baseline stays in cluster-emission order.
    """
    real = [s for s in subsets if s.frequency > 0]

    baseline_members = amplify(real, cap, amplify_factor, f"{seed}:{BASELINE_KEY}")
    baseline = Family(
        key=BASELINE_KEY,
        cap=cap,
        subsets=tuple(cluster(baseline_members, cap)),
        population=sum(s.frequency for s in real),
        pre_reorder=None,
    )

    groups: dict[str, list[UnitSubset]] = {}
    for s in real:
        if s.signature.is_production():
            groups.setdefault(s.signature.canonical(), []).append(s)

    by_signature: dict[str, Family] = {}
    for key in sorted(groups):
        group = groups[key]
        members = amplify(group, cap, amplify_factor, f"{seed}:{key}")
        fam = Family(
            key=key,
            cap=cap,
            subsets=tuple(cluster(members, cap)),
            population=sum(s.frequency for s in group),
            pre_reorder=None,
        )
        by_signature[key] = reorder(fam, group)

    return FamilyAtlas(
        baseline=baseline,
        by_signature=by_signature,
        cap=cap,
        provenance={
            "corpus_digest": corpus_digest(real),
            "catalog_name": cat.name,
            "catalog_version": cat.version,
            "cap": cap,
            "amplify_factor": amplify_factor,
            "seed": seed,
        },
    )


def select_family(atlas: FamilyAtlas, query_sig: TypeSignature) -> Family:
    """Exact-signature family when present, baseline otherwise."""
    if not query_sig.is_production():
        return atlas.baseline
    return atlas.by_signature.get(query_sig.canonical(), atlas.baseline)


@dataclass(frozen=True)
class FamilyStatsRow:
    key: str
    subset_count: int
    population: int


def atlas_stats(atlas: FamilyAtlas) -> list[FamilyStatsRow]:
    """Per-family subset counts and populations, baseline row first."""
    rows = [FamilyStatsRow(BASELINE_KEY, len(atlas.baseline), atlas.baseline.population)]
    for key in sorted(atlas.by_signature):
        fam = atlas.by_signature[key]
        rows.append(FamilyStatsRow(key, len(fam), fam.population))
    return rows


def _family_to_dict(fam: Family) -> dict:
    d: dict = {
        "subsets": [
            {"instructions": list(s.sorted_ids), "coverage": s.coverage}
            for s in fam.subsets
        ],
        "population": fam.population,
    }
    if fam.pre_reorder is not None:
        d["pre_reorder"] = list(fam.pre_reorder)
    return d


def _family_from_dict(key: str, cap: int, d: dict) -> Family:
    subsets = tuple(
        InstructionSubset(frozenset(entry["instructions"]), int(entry["coverage"]))
        for entry in d["subsets"]
    )
    pre = d.get("pre_reorder")
    return Family(
        key=key,
        cap=cap,
        subsets=subsets,
        population=int(d["population"]),
        pre_reorder=tuple(pre) if pre is not None else None,
    )


def atlas_to_dict(atlas: FamilyAtlas) -> dict:
    return {
        "cap": atlas.cap,
        "provenance": atlas.provenance,
        "baseline": _family_to_dict(atlas.baseline),
        "families": {key: _family_to_dict(fam) for key, fam in sorted(atlas.by_signature.items())},
    }


def atlas_from_dict(data: dict) -> FamilyAtlas:
    try:
        cap = int(data["cap"])
        baseline = _family_from_dict(BASELINE_KEY, cap, data["baseline"])
        by_signature = {
            key: _family_from_dict(key, cap, fam)
            for key, fam in data["families"].items()
        }
        for key in by_signature:
            if not parse_signature(key).is_production():
                raise CatalogParseError(f"atlas family key {key!r} is not a production signature")
        provenance = dict(data.get("provenance", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogParseError(f"malformed atlas: {exc}") from exc
    return FamilyAtlas(baseline=baseline, by_signature=by_signature, cap=cap, provenance=provenance)


def save_atlas(atlas: FamilyAtlas, path: str | Path) -> None:
    text = json.dumps(atlas_to_dict(atlas), sort_keys=True, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def load_atlas(path: str | Path) -> FamilyAtlas:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogParseError(f"cannot load atlas {path}: {exc}") from exc
    return atlas_from_dict(data)
