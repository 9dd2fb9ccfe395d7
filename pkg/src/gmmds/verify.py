"""Brute-force MDS oracles.

Two routes that share nothing with the construction code: every k x k
minor must be nonsingular, or equivalently the minimum weight over all
q^k - 1 nonzero codewords must equal n - k + 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf as gflib
from .errors import DimensionMismatch, TooLarge
from .gf import FieldSpec

MDS_MINOR_LIMIT = 10**6
CODEWORD_LIMIT = 10**6


@dataclass(frozen=True)
class MdsVerdict:
    is_mds: bool
    failing_columns: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.is_mds

    def to_json(self) -> dict:
        return {
            "is_mds": self.is_mds,
            "failing_columns": list(self.failing_columns) if self.failing_columns else None,
        }


def _unpack(g, field: FieldSpec | None):
    if field is None:
        field = g.field
        g = g.entries
    rows = [list(r) for r in g]
    if not rows:
        raise DimensionMismatch("empty generator matrix")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionMismatch("ragged generator matrix")
    return field, rows, len(rows), n


def is_mds(g, field: FieldSpec | None = None) -> MdsVerdict:
    """Check every maximal minor; report the lexicographically first singular column set.

    ``g`` is a GeneratorMatrix, or a list of rows together with ``field``.
    """
    field, rows, k, n = _unpack(g, field)
    if k > n:
        raise DimensionMismatch(f"k = {k} exceeds n = {n}")
    if math.comb(n, k) > MDS_MINOR_LIMIT:
        raise TooLarge(f"C({n},{k}) minors exceeds {MDS_MINOR_LIMIT}")
    for cols in itertools.combinations(range(n), k):
        minor = [[row[c] for c in cols] for row in rows]
        if gflib.det(field, minor) == 0:
            return MdsVerdict(False, tuple(c + 1 for c in cols))
    return MdsVerdict(True)


def min_weight_check(g, field: FieldSpec | None = None) -> bool:
    """Every row has weight exactly n - k + 1 (the minimum weight of an MDS code)."""
    _, rows, k, n = _unpack(g, field)
    return all(sum(1 for v in row if v) == n - k + 1 for row in rows)


def minimum_distance(g, field: FieldSpec | None = None) -> int:
    """Minimum weight over all nonzero codewords, by enumerating every message."""
    field, rows, k, n = _unpack(g, field)
    q = field.order
    if q ** k > CODEWORD_LIMIT:
        raise TooLarge(f"q^k = {q}^{k} codewords exceeds {CODEWORD_LIMIT}")
    add = np.asarray(field.add_table(), dtype=np.int64)
    mul = np.asarray(field.mul_table(), dtype=np.int64)
    gm = np.asarray(rows, dtype=np.int64)
    # messages: all k-digit base-q strings, row 0 is the zero message
    msgs = np.indices((q,) * k).reshape(k, -1).T
    code = np.zeros((msgs.shape[0], n), dtype=np.int64)
    for i in range(k):
        code = add[code, mul[msgs[:, i][:, None], gm[i][None, :]]]
    weights = np.count_nonzero(code[1:], axis=1)
    return int(weights.min()) if weights.size else n + 1


def is_mds_by_distance(g, field: FieldSpec | None = None) -> bool:
    _, rows, k, n = _unpack(g, field)
    return minimum_distance(g, field) == n - k + 1
