"""Zero patterns, the MDS Condition, and support reduction.

Columns are 1-based in every public view (supports, zero sets, witnesses).
Internally each row is an int bitmask whose bit ``j - 1`` is set when
column ``j`` may hold a nonzero entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DimensionMismatch, InputError, PreconditionViolated, TooLarge

MAX_ROWS = 20


def _mask(cols) -> int:
    m = 0
    for c in cols:
        m |= 1 << (c - 1)
    return m


def _cols(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


@dataclass(frozen=True)
class ZeroPattern:
    """A k x n binary matrix; row i may be nonzero exactly on its support."""

    k: int
    n: int
    masks: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise InputError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if len(self.masks) != self.k:
            raise DimensionMismatch(f"expected {self.k} rows, got {len(self.masks)}")
        full = (1 << self.n) - 1
        for m in self.masks:
            if m < 0 or m & ~full:
                raise DimensionMismatch(f"row mask {m:#x} exceeds {self.n} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ZeroPattern":
        if not rows:
            raise InputError("pattern has no rows")
        n = len(rows[0])
        masks = []
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch("ragged pattern rows")
            if any(v not in (0, 1) for v in row):
                raise InputError(f"pattern entries must be 0 or 1: {list(row)}")
            masks.append(_mask(j + 1 for j, v in enumerate(row) if v))
        return cls(len(rows), n, tuple(masks))

    @classmethod
    def from_supports(cls, n: int, supports) -> "ZeroPattern":
        supports = [set(s) for s in supports]
        for s in supports:
            if any(not 1 <= c <= n for c in s):
                raise InputError(f"support {sorted(s)} not inside [1, {n}]")
        return cls(len(supports), n, tuple(_mask(s) for s in supports))

    @classmethod
    def from_zeros(cls, n: int, zeros) -> "ZeroPattern":
        full = set(range(1, n + 1))
        zeros = [set(z) for z in zeros]
        for z in zeros:
            if not z <= full:
                raise InputError(f"zero set {sorted(z)} not inside [1, {n}]")
        return cls.from_supports(n, [full - z for z in zeros])

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def rows(self) -> list[list[int]]:
        return [[(m >> j) & 1 for j in range(self.n)] for m in self.masks]

    @property
    def supports(self) -> list[tuple[int, ...]]:
        return [_cols(m) for m in self.masks]

    @property
    def zeros(self) -> list[tuple[int, ...]]:
        return [_cols(self.full_mask & ~m) for m in self.masks]

    def row_weights(self) -> list[int]:
        return [bin(m).count("1") for m in self.masks]

    def is_reduced(self) -> bool:
        return all(w == self.n - self.k + 1 for w in self.row_weights())

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "rows": self.rows}

    @classmethod
    def from_json(cls, doc: dict) -> "ZeroPattern":
        if not isinstance(doc, dict):
            raise InputError("pattern document must be an object")
        has_rows, has_zeros = "rows" in doc, "zeros" in doc
        if has_rows == has_zeros:
            raise InputError('pattern needs exactly one of "rows" or "zeros"')
        try:
            if has_rows:
                pat = cls.from_rows(doc["rows"])
                n = doc.get("n", pat.n)
            else:
                n = int(doc["n"])
                pat = cls.from_zeros(n, doc["zeros"])
        except (TypeError, KeyError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad pattern document: {exc}") from exc
        if doc.get("k", pat.k) != pat.k or n != pat.n:
            raise DimensionMismatch("declared k/n disagree with the pattern body")
        return pat


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    witness: tuple[int, ...] | None = None
    union_size: int | None = None

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if not self.holds:
            out["witness"] = list(self.witness)
            out["union_size"] = self.union_size
        return out


def _subsets_lex(k: int) -> Iterator[tuple[int, ...]]:
    """Nonempty subsets of range(k) as sorted tuples, in lexicographic order."""
    stack = [(i,) for i in reversed(range(k))]
    while stack:
        s = stack.pop()
        yield s
        stack.extend(s + (j,) for j in reversed(range(s[-1] + 1, k)))


def _first_union_violation(masks: Sequence[int], bound_for) -> tuple[tuple[int, ...], int] | None:
    """DFS in subset-lex order over unions of ``masks``.

    Returns the first ``I`` (0-based) with ``popcount(union) < bound_for(|I|)``.
    """
    k = len(masks)
    if k > MAX_ROWS:
        raise TooLarge(f"exhaustive subset check capped at {MAX_ROWS} rows, got {k}")
    stack = [((i,), masks[i]) for i in reversed(range(k))]
    while stack:
        idx, union = stack.pop()
        size = bin(union).count("1")
        if size < bound_for(len(idx)):
            return idx, size
        stack.extend((idx + (j,), union | masks[j]) for j in reversed(range(idx[-1] + 1, k)))
    return None


def check_mds_condition(pat: ZeroPattern) -> ConditionReport:
    """Check |union of supports over I| >= n - k + |I| for every nonempty I.

    The witness is the lexicographically smallest violating I (1-based).
    """
    slack = pat.n - pat.k
    hit = _first_union_violation(pat.masks, lambda size: slack + size)
    if hit is None:
        return ConditionReport(True)
    idx, size = hit
    return ConditionReport(False, tuple(i + 1 for i in idx), size)


def intersection_violation(zmasks: Sequence[int], k: int, n: int) -> tuple[tuple[int, ...], int] | None:
    """First I in subset-lex order with |intersection of zero sets over I| > k - |I|.

    Returns ``(I, common)`` with I 0-based, or None when no I violates.
    """
    if len(zmasks) > MAX_ROWS:
        raise TooLarge(f"exhaustive subset check capped at {MAX_ROWS} rows, got {len(zmasks)}")
    full = (1 << n) - 1
    for idx in _subsets_lex(len(zmasks)):
        inter = full
        for i in idx:
            inter &= zmasks[i]
        common = bin(inter).count("1")
        if common > k - len(idx):
            return idx, common
    return None


def check_mds_condition_zeros(pat: ZeroPattern) -> ConditionReport:
    """Dual form: |intersection of zero sets over I| <= k - |I| for every nonempty I."""
    zmasks = [pat.full_mask & ~m for m in pat.masks]
    hit = intersection_violation(zmasks, pat.k, pat.n)
    if hit is None:
        return ConditionReport(True)
    idx, common = hit
    return ConditionReport(False, tuple(i + 1 for i in idx), pat.n - common)


def _holds(masks: Sequence[int], n: int) -> bool:
    slack = n - len(masks)
    return _first_union_violation(masks, lambda size: slack + size) is None


def reduce_supports(pat: ZeroPattern) -> ZeroPattern:
    """Shrink every support to exactly n - k + 1 columns, keeping the MDS Condition.

    While some row r has weight >= n - k + 2, take its two smallest columns
    a < b: drop a if the condition survives, otherwise drop b (one of the
    two always works).  Rows are scanned from the top after every removal.
    """
    report = check_mds_condition(pat)
    if not report.holds:
        raise PreconditionViolated(
            "pattern fails the MDS Condition", report.witness, report.union_size
        )
    target = pat.n - pat.k + 1
    masks = list(pat.masks)
    while True:
        r = next((i for i, m in enumerate(masks) if bin(m).count("1") > target), None)
        if r is None:
            break
        low = masks[r] & -masks[r]
        rest = masks[r] & ~low
        second = rest & -rest
        masks[r] &= ~low
        if not _holds(masks, pat.n):
            masks[r] = (masks[r] | low) & ~second
            assert _holds(masks, pat.n), "neither removal kept the MDS Condition"
    return ZeroPattern(pat.k, pat.n, tuple(masks))


def fits(candidate, pat: ZeroPattern) -> bool:
    """True when every entry forced to zero by ``pat`` is zero in the candidate.

    ``candidate`` is a GeneratorMatrix or a plain list of rows.
    """
    matrix = getattr(candidate, "entries", candidate)
    if len(matrix) != pat.k or any(len(row) != pat.n for row in matrix):
        raise DimensionMismatch(
            f"matrix is {len(matrix)}x{len(matrix[0]) if matrix else 0}, pattern is {pat.k}x{pat.n}"
        )
    for row, mask in zip(matrix, pat.masks):
        for j, g in enumerate(row):
            if g and not (mask >> j) & 1:
                return False
    return True
