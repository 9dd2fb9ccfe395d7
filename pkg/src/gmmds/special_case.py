"""Explicit unique selection for families whose zero sets pairwise share at most one column.

With sigma the identity, S*_i is an (i-1)-subset of Z_i:

* S*_1 is empty;
* S*_2 is the element of (Z_2 & Z_3) - Z_1 when Z_2 and Z_3 meet, otherwise
  the smallest element of Z_2 - Z_1;
* for 3 <= i < k, S*_i takes the common element of Z_i with each Z_i'
  (2 <= i' < i), then the common element with Z_{i+1}, then the smallest
  unused elements of Z_i;
* S*_k is Z_k.

The rows are first reordered so that Z_2 & Z_3, when nonempty, avoids Z_1.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .errors import NotApplicable
from .multiset import ZFamily, enumerate_outcomes
from .symdet import Multiset


def applies(fam: ZFamily) -> bool:
    """Pairwise intersections of size <= 1 and an empty total intersection."""
    sets = [set(z) for z in fam.zeros]
    if any(len(a & b) > 1 for a, b in itertools.combinations(sets, 2)):
        return False
    return not set.intersection(*sets)


def _step2_ok(sets: list[set[int]]) -> bool:
    if len(sets) < 3:
        return True
    common = sets[1] & sets[2]
    return not common or not common <= sets[0]


def reorder_for_step2(fam: ZFamily) -> tuple[ZFamily, tuple[int, ...]]:
    """Lexicographically first row order (identity when possible) that suits step 2.

    Returns the reordered family and ``perm`` with new row i = old row perm[i]
    (both 1-based).
    """
    if not applies(fam):
        raise NotApplicable("zero sets share more than one column pairwise, or all share a column")
    sets = [set(z) for z in fam.zeros]
    for perm in itertools.permutations(range(fam.k)):
        if _step2_ok([sets[p] for p in perm]):
            reordered = ZFamily(fam.k, fam.n, tuple(fam.zeros[p] for p in perm))
            return reordered, tuple(p + 1 for p in perm)
    raise AssertionError("no suitable row order; the family cannot satisfy the hypothesis")


@dataclass(frozen=True)
class StarSelection:
    family: ZFamily
    permutation: tuple[int, ...]
    selections: tuple[tuple[int, ...], ...]
    multiset: Multiset

    def to_json(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "zeros": [list(z) for z in self.family.zeros],
            "selections": [list(s) for s in self.selections],
            "multiset": list(self.multiset),
        }


def build_star_selection(fam: ZFamily) -> StarSelection:
    """Build S*_1..S*_k on the reordered family; see the module docstring."""
    fam, perm = reorder_for_step2(fam)
    k = fam.k
    sets = [set(z) for z in fam.zeros]
    picks: list[list[int]] = []
    for i in range(k):
        row = i + 1
        if row == 1:
            chosen: list[int] = []
        elif row == k:
            chosen = sorted(sets[i])
        elif row == 2:
            common = sets[1] & sets[2]
            chosen = [min(common - sets[0])] if common else [min(sets[1] - sets[0])]
        else:
            chosen = []
            for other in range(1, i):
                for t in sorted(sets[i] & sets[other]):
                    if t not in chosen:
                        chosen.append(t)
            for t in sorted(sets[i] & sets[i + 1]):
                if t not in chosen:
                    chosen.append(t)
            for t in sorted(sets[i]):
                if len(chosen) >= row - 1:
                    break
                if t not in chosen:
                    chosen.append(t)
        assert len(chosen) == row - 1 and set(chosen) <= sets[i]
        picks.append(chosen)
    selections = tuple(tuple(sorted(c)) for c in picks)
    multiset = tuple(sorted(Counter(t for s in selections for t in s).elements()))
    return StarSelection(fam, perm, selections, multiset)


def verify_star(fam: ZFamily) -> tuple[StarSelection, int]:
    """Build S* and return it with the number of choices producing its union."""
    star = build_star_selection(fam)
    return star, enumerate_outcomes(star.family).count(star.multiset)
