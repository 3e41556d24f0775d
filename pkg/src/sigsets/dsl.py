"""The bundled toy instruction set: 24 instructions over JSON values.

Each instruction has positional parameter types, a return type, and a
total evaluation function.  Anything an instruction cannot handle
(division by zero, an out-of-range index, a non-numeric element where a
number is required) raises EvaluationFault; the synthesizer treats such
candidates as dead ends rather than errors.

The flat input/output type sets of these instructions form the bundled
default catalog, shipped as ``data/toy_catalog.json``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Callable

from .catalog import Catalog, InstructionSpec
from .errors import EvaluationFault
from .typesig import DataType

N, S, A, H = DataType.NUMBER, DataType.STRING, DataType.ARRAY, DataType.HASHMAP


@dataclass(frozen=True)
class DslInstruction:
    id: str
    param_types: tuple[DataType, ...]
    return_type: DataType
    fn: Callable


def _fault(msg: str):
    raise EvaluationFault(msg)


def _num(v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        _fault(f"expected a number, got {type(v).__name__}")
    return v


def _guard_num(v):
    if isinstance(v, float) and math.isnan(v):
        _fault("arithmetic produced NaN")
    return v


def _str(v):
    if not isinstance(v, str):
        _fault(f"expected a string, got {type(v).__name__}")
    return v


def _list(v):
    if not isinstance(v, list):
        _fault(f"expected an array, got {type(v).__name__}")
    return v


def _dict(v):
    if not isinstance(v, dict):
        _fault(f"expected a hashmap, got {type(v).__name__}")
    return v


def _index(v, length: int) -> int:
    _num(v)
    if isinstance(v, float) and not v.is_integer():
        _fault(f"index {v} is not an integer")
    i = int(v)
    if not 0 <= i < length:
        _fault(f"index {i} out of range for length {length}")
    return i


def _div(a, b):
    if _num(b) == 0:
        _fault("division by zero")
    return _guard_num(_num(a) / b)


def _str_to_num(s):
    text = _str(s).strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        _fault(f"cannot parse {s!r} as a number")
    if math.isnan(value) or math.isinf(value):
        _fault(f"{s!r} is not a finite number")
    return value


def _split(s, sep):
    if _str(sep) == "":
        _fault("empty separator")
    return _str(s).split(sep)


def _join(items, sep):
    _str(sep)
    parts = _list(items)
    if not all(isinstance(p, str) for p in parts):
        _fault("join requires an array of strings")
    return sep.join(parts)


def _total(items):
    acc = 0
    for v in _list(items):
        acc = acc + _num(v)
    return _guard_num(acc)


def _sort_list(items):
    parts = _list(items)
    all_nums = all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in parts)
    all_strs = all(isinstance(v, str) for v in parts)
    if not (all_nums or all_strs):
        _fault("sort requires all numbers or all strings")
    return sorted(parts)


def _get_num(items, idx):
    parts = _list(items)
    return _num(parts[_index(idx, len(parts))])


def _lookup_str(mapping, key):
    d = _dict(mapping)
    k = _str(key)
    if k not in d:
        _fault(f"missing key {k!r}")
    return _str(d[k])


def _zip_map(keys, values):
    ks, vs = _list(keys), _list(values)
    if len(ks) != len(vs):
        _fault(f"key/value length mismatch: {len(ks)} vs {len(vs)}")
    if not all(isinstance(k, str) for k in ks):
        _fault("hashmap keys must be strings")
    return dict(zip(ks, vs))


def _make_registry() -> dict[str, DslInstruction]:
    defs = [
        ("add", (N, N), N, lambda a, b: _guard_num(_num(a) + _num(b))),
        ("sub", (N, N), N, lambda a, b: _guard_num(_num(a) - _num(b))),
        ("mul", (N, N), N, lambda a, b: _guard_num(_num(a) * _num(b))),
        ("div", (N, N), N, _div),
        ("concat", (S, S), S, lambda a, b: _str(a) + _str(b)),
        ("upper", (S,), S, lambda s: _str(s).upper()),
        ("lower", (S,), S, lambda s: _str(s).lower()),
        ("strlen", (S,), N, lambda s: len(_str(s))),
        ("num_to_str", (N,), S, lambda v: str(_num(v))),
        ("str_to_num", (S,), N, _str_to_num),
        ("split", (S, S), A, _split),
        ("join", (A, S), S, _join),
        ("count", (A,), N, lambda items: len(_list(items))),
        ("total", (A,), N, _total),
        ("sort_list", (A,), A, _sort_list),
        ("reverse_list", (A,), A, lambda items: list(reversed(_list(items)))),
        ("get_num", (A, N), N, _get_num),
        ("keys", (H,), A, lambda m: sorted(_dict(m).keys())),
        ("lookup_str", (H, S), S, _lookup_str),
        ("zip_map", (A, A), H, _zip_map),
        ("lit_0", (), N, lambda: 0),
        ("lit_1", (), N, lambda: 1),
        ("lit_2", (), N, lambda: 2),
        ("lit_empty", (), S, lambda: ""),
    ]
    return {
        iid: DslInstruction(id=iid, param_types=params, return_type=ret, fn=fn)
        for iid, params, ret, fn in defs
    }


INSTRUCTIONS: dict[str, DslInstruction] = _make_registry()


def builtin_catalog() -> Catalog:
    """Catalog derived from the instruction registry's flat type sets."""
    specs = tuple(
        InstructionSpec(
            id=instr.id,
            input_types=frozenset(instr.param_types),
            output_types=frozenset({instr.return_type}),
        )
        for instr in INSTRUCTIONS.values()
    )
    return Catalog(name="toy-dsl", version="1", specs=specs)


def builtin_catalog_path() -> str:
    """Filesystem path of the bundled catalog JSON."""
    return str(resources.files("sigsets").joinpath("data/toy_catalog.json"))
