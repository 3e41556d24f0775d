"""Artificial unit subsets: capped unions of sampled pairs.

Combining smaller real subsets into larger artificial ones makes the
clustered families more general without inventing instruction
combinations that never co-occur.  Artificial subsets carry frequency 0:
they shape cluster membership but are invisible to coverage counting and
evaluation.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from itertools import accumulate
from typing import Sequence

from .corpus import UnitSubset
from .errors import InvalidParameter
from .typesig import TypeSignature

# rejected-draw allowance per accepted target before giving up
_ATTEMPT_MULTIPLIER = 20


def amplify(
    subsets: Sequence[UnitSubset], cap: int, factor: float, seed: int | str
) -> list[UnitSubset]:
    """Append up to factor * len(subsets) artificial pairwise unions.

    Pairs are drawn frequency-weighted from the input; a union is
    accepted when its size stays within the cap and it duplicates no
    set already present.  factor=0 returns the input unchanged.
    """
    if factor < 0:
        raise InvalidParameter(f"factor must be >= 0, got {factor}")
    if cap < 1:
        raise InvalidParameter(f"cap must be >= 1, got {cap}")
    for s in subsets:
        if len(s) > cap:
            raise InvalidParameter(
                f"input subset of size {len(s)} exceeds cap {cap}: {sorted(s.instructions)}"
            )

    out = list(subsets)
    target = int(factor * len(subsets))
    if target == 0 or len(subsets) < 2:
        return out

    weights = [s.frequency for s in subsets]
    if sum(weights) == 0:
        return out
    cum = list(accumulate(weights))
    rng = random.Random(seed)
    seen = {s.instructions for s in subsets}

    accepted = 0
    attempts_left = max(100, _ATTEMPT_MULTIPLIER * target)
    while accepted < target and attempts_left > 0:
        attempts_left -= 1
        a = subsets[bisect_right(cum, rng.random() * cum[-1])]
        b = subsets[bisect_right(cum, rng.random() * cum[-1])]
        union = a.instructions | b.instructions
        if len(union) > cap or union in seen:
            continue
        seen.add(union)
        out.append(
            UnitSubset(
                instructions=union,
                frequency=0,
                signature=TypeSignature(
                    a.signature.inputs | b.signature.inputs,
                    a.signature.outputs | b.signature.outputs,
                ),
            )
        )
        accepted += 1
    return out
