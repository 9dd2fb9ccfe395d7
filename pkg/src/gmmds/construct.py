"""Generalized Reed-Solomon generator matrices that fit a zero pattern.

For a reduced pattern (every row weight n - k + 1) with zero sets Z_i, row
i of G evaluates f_i(x) = prod_{t in Z_i} (x - alpha_t) at the points
alpha_1..alpha_n.  Writing A for the k x k matrix of the f_i coefficients
and V for the k x n Vandermonde matrix, G = A V, so G has full rank exactly
when det(A) != 0.  The work here is finding points where that happens.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass
from typing import Sequence

from . import gf as gflib
from .errors import (
    BadSubsetSize,
    ConditionViolated,
    DuplicateAlphas,
    FieldTooSmall,
    IdenticallyZero,
    InputError,
    NotFound,
    NotReduced,
    TooLarge,
)
from .gf import FieldSpec
from .pattern import ZeroPattern, check_mds_condition, fits, reduce_supports
from .symdet import symbolic_det

log = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 10**7
# symbolic det(A) is only expanded for the zero test below this many terms
SYMBOLIC_LIMIT = 200_000


@dataclass(frozen=True)
class GeneratorMatrix:
    field: FieldSpec
    alphas: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]
    pattern: ZeroPattern | None = None
    verified_mds: bool = False

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "k": self.k,
            "n": self.n,
            "alphas": list(self.alphas),
            "matrix": self.rows,
            "verified_mds": self.verified_mds,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "GeneratorMatrix":
        try:
            field = FieldSpec.from_json(doc["field"])
            entries = tuple(tuple(int(v) for v in row) for row in doc["matrix"])
            alphas = tuple(int(a) for a in doc.get("alphas", ()))
            k, n = int(doc.get("k", len(entries))), int(doc.get("n", len(entries[0])))
            verified = bool(doc.get("verified_mds", False))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad generator matrix document: {exc}") from exc
        if len(entries) != k or any(len(r) != n for r in entries):
            raise InputError("matrix shape disagrees with declared k, n")
        for v in itertools.chain(alphas, *entries):
            field.element(v)
        return cls(field, alphas, entries, None, verified)


def _horner(gf: FieldSpec, coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = gf.add(gf.mul(acc, x), c)
    return acc


def build_row_polynomial(gf: FieldSpec, zero_set: Sequence[int], alphas: Sequence[int],
                         k: int | None = None) -> list[int]:
    """Coefficients (low degree first) of prod_{t in zero_set} (x - alpha_t).

    ``alphas[t - 1]`` is the point of column t.
    """
    if k is not None and len(zero_set) != k - 1:
        raise BadSubsetSize(f"zero set {list(zero_set)} has size {len(zero_set)}, expected {k - 1}")
    coeffs = [1]
    for t in zero_set:
        root = gf.neg(alphas[t - 1])
        # multiply by (x + root)
        nxt = [0] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] = gf.add(nxt[d + 1], c)
            nxt[d] = gf.add(nxt[d], gf.mul(c, root))
        coeffs = nxt
    return coeffs


def coefficient_matrix(gf: FieldSpec, pat: ZeroPattern, alphas: Sequence[int]) -> list[list[int]]:
    return [build_row_polynomial(gf, z, alphas, pat.k) for z in pat.zeros]


def vandermonde(gf: FieldSpec, alphas: Sequence[int], k: int) -> list[list[int]]:
    return [[gf.pow(a, d) for a in alphas] for d in range(k)]


def _check_points(gf: FieldSpec, pat: ZeroPattern, alphas: Sequence[int]) -> None:
    if len(alphas) != pat.n:
        raise InputError(f"need {pat.n} evaluation points, got {len(alphas)}")
    for a in alphas:
        gf.element(a)
    if len(set(alphas)) != len(alphas):
        raise DuplicateAlphas(f"evaluation points are not distinct: {list(alphas)}")


def assemble(pat: ZeroPattern, gf: FieldSpec, alphas: Sequence[int]):
    """Return ``(A, G)`` for a reduced pattern at the given points.

    G is computed by evaluating each row polynomial directly and again as
    A V; the two must agree.
    """
    if not pat.is_reduced():
        raise NotReduced(f"row weights {pat.row_weights()} are not all n - k + 1 = {pat.n - pat.k + 1}")
    _check_points(gf, pat, alphas)
    a = coefficient_matrix(gf, pat, alphas)
    direct = [[_horner(gf, row, x) for x in alphas] for row in a]
    product = gflib.matmul(gf, a, vandermonde(gf, alphas, pat.k))
    assert direct == product, "direct evaluation and A*V disagree"
    g = GeneratorMatrix(gf, tuple(alphas), tuple(tuple(r) for r in direct), pat)
    return a, g


def det_coefficient_matrix(gf: FieldSpec, pat: ZeroPattern, alphas: Sequence[int]) -> int:
    return gflib.det(gf, coefficient_matrix(gf, pat, alphas))


def selection_count(k: int) -> int:
    """Number of (permutation, subset choice) terms in the expansion of det(A)."""
    return math.factorial(k) * math.prod(math.comb(k - 1, d) for d in range(k)) if k else 1


def _resolve_field(q, n: int, k: int) -> FieldSpec:
    if q is None:
        return gflib.smallest_field_at_least(n + k - 1)
    if isinstance(q, FieldSpec):
        return q
    pm = gflib.prime_power(int(q))
    if pm is None:
        raise InputError(f"q = {q} is not a prime power")
    return gflib.field_new(*pm)


def find_evaluation_points(pat: ZeroPattern, gf: FieldSpec, strategy: str = "random",
                           seed: int = 0, max_tries: int | None = None,
                           zero_test: bool = True) -> tuple[int, ...]:
    """Distinct points alpha_1..alpha_n with det(A) != 0.

    ``random`` draws uniformly random distinct n-tuples from a generator
    seeded with ``seed``; ``exhaustive`` walks the distinct n-tuples in
    lexicographic order.
    """
    n, k = pat.n, pat.k
    if gf.order < n + k - 1:
        raise FieldTooSmall(f"{gf} is below n + k - 1 = {n + k - 1}")
    if not pat.is_reduced():
        raise NotReduced("find_evaluation_points needs a reduced pattern")
    if zero_test and selection_count(k) <= SYMBOLIC_LIMIT:
        if symbolic_det(pat.zeros, n).is_zero():
            raise IdenticallyZero(f"det(A) vanishes identically for zero sets {pat.zeros}")
    if strategy == "random":
        tries = max_tries if max_tries is not None else 10 * (n + k)
        rng = random.Random(seed)
        pool = list(gf.elements())
        for _ in range(tries):
            alphas = tuple(rng.sample(pool, n))
            if det_coefficient_matrix(gf, pat, alphas):
                return alphas
        raise NotFound(f"no good points in {tries} random draws over {gf}")
    if strategy == "exhaustive":
        if gf.order ** n > EXHAUSTIVE_LIMIT:
            raise TooLarge(f"exhaustive search over {gf}^{n} exceeds {EXHAUSTIVE_LIMIT}")
        for alphas in itertools.permutations(gf.elements(), n):
            if det_coefficient_matrix(gf, pat, alphas):
                return alphas
        raise NotFound(f"no distinct points over {gf} make det(A) nonzero")
    raise InputError(f"unknown strategy {strategy!r}")


def construct_mds(pat: ZeroPattern, q=None, strategy: str = "random", seed: int = 0,
                  max_tries: int | None = None, fallback: bool = True) -> GeneratorMatrix:
    """End-to-end: check, reduce, pick F_q, find points, assemble, verify.

    ``q`` may be None (smallest prime power >= n + k - 1), an integer
    prime power, or a FieldSpec.  With ``fallback`` a failed random search
    is retried exhaustively when that is feasible.
    """
    from .verify import MDS_MINOR_LIMIT, is_mds

    report = check_mds_condition(pat)
    if not report.holds:
        raise ConditionViolated(
            f"pattern fails the MDS Condition on rows {list(report.witness)}",
            report.witness, report.union_size,
        )
    reduced = reduce_supports(pat)
    gf = _resolve_field(q, pat.n, pat.k)
    if gf.order < pat.n + pat.k - 1:
        raise FieldTooSmall(f"{gf} is below n + k - 1 = {pat.n + pat.k - 1}")
    try:
        alphas = find_evaluation_points(reduced, gf, strategy, seed, max_tries)
    except NotFound:
        if not (fallback and strategy == "random" and gf.order ** pat.n <= EXHAUSTIVE_LIMIT):
            raise
        log.info("random search failed, falling back to exhaustive")
        alphas = find_evaluation_points(reduced, gf, "exhaustive", zero_test=False)
    _, g = assemble(reduced, gf, alphas)
    assert fits(g, pat), "constructed matrix does not fit the input pattern"
    if math.comb(pat.n, pat.k) <= MDS_MINOR_LIMIT:
        verdict = is_mds(g)
        assert verdict.is_mds, f"singular minor on columns {verdict.failing_columns}"
        g = GeneratorMatrix(gf, g.alphas, g.entries, reduced, True)
    return g
