import json
from pathlib import Path

import pytest

from sigsets.catalog import Catalog, InstructionSpec, catalog_to_dict
from sigsets.corpus import UnitRecord, UnitSubset, derive_unit_subsets, load_corpus
from sigsets.dsl import builtin_catalog
from sigsets.families import build_atlas
from sigsets.typesig import DataType, TypeSignature

N, S, A, H = DataType.NUMBER, DataType.STRING, DataType.ARRAY, DataType.HASHMAP

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "sigsets" / "data"


def spec(iid, inputs, outputs):
    return InstructionSpec(
        id=iid, input_types=frozenset(inputs), output_types=frozenset(outputs)
    )


@pytest.fixture(scope="session")
def toy_cat():
    return builtin_catalog()


@pytest.fixture(scope="session")
def mini_cat():
    """Four instructions spanning all four types."""
    return Catalog(
        name="mini",
        version="1",
        specs=(
            spec("add", [N, N], [N]),
            spec("concat", [S, S], [S]),
            spec("length", [S], [N]),
            spec("wrap", [A, H], [A, H]),
        ),
    )


def unit(cat, ids, frequency=1):
    """UnitSubset with its signature derived from the catalog."""
    from sigsets.catalog import subset_signature

    ids = frozenset(ids)
    return UnitSubset(
        instructions=ids, frequency=frequency, signature=subset_signature(ids, cat)
    )


def abstract_unit(ids, frequency=1, sig="n-n"):
    """UnitSubset over abstract instruction names, for order/counting tests."""
    from sigsets.typesig import parse_signature

    return UnitSubset(
        instructions=frozenset(ids), frequency=frequency, signature=parse_signature(sig)
    )


def write_corpus_file(path, rows):
    lines = [json.dumps(r, sort_keys=True, separators=(",", ":")) for r in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def write_catalog_file(path, cat):
    Path(path).write_text(
        json.dumps(catalog_to_dict(cat), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return path


@pytest.fixture(scope="session")
def demo_subsets(toy_cat):
    records = load_corpus(DATA_DIR / "demo_corpus.jsonl", toy_cat)
    return derive_unit_subsets(records, toy_cat, cap=10).subsets


@pytest.fixture(scope="session")
def demo_atlas(toy_cat, demo_subsets):
    return build_atlas(demo_subsets, toy_cat, cap=10, amplify_factor=3.0, seed=0)


def records_from_sets(sets_with_freq):
    """Expand (instruction ids, count) pairs into UnitRecords."""
    records = []
    n = 0
    for ids, count in sets_with_freq:
        for _ in range(count):
            records.append(
                UnitRecord(pu_id=f"pu{n:05d}", origin="test", instructions=tuple(ids))
            )
            n += 1
    return records
