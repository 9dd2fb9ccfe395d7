"""Symbolic det(A) as a sparse integer polynomial in alpha_1..alpha_n.

A monomial alpha_1^p_1 ... alpha_n^p_n is keyed by its multiset of variable
indices, stored as a sorted tuple (``(3, 4, 4)`` is alpha_3 * alpha_4^2).
Those keys are exactly the multiset unions examined by
:mod:`gmmds.multiset`, which is what makes the two modules comparable.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import BadSubsetSize, MissingVariable
from .gf import FieldSpec

Multiset = tuple[int, ...]


def permutation_sign(perm: Sequence[int]) -> int:
    """Sign of a permutation given in one-line notation (any labels)."""
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def coefficient_index_to_selection_size(k: int, sigma: Sequence[int]) -> tuple[int, ...]:
    """Map a determinant permutation to the selection-size permutation.

    Row i of det(A) takes column sigma(i), whose entry involves subsets of
    size k - sigma(i).  The selection problem asks for subsets of size
    tau(i) - 1, so tau(i) = k + 1 - sigma(i).  The map is an involution and
    changes sgn by the constant factor sgn of the reversal.
    """
    return tuple(k + 1 - s for s in sigma)


@dataclass
class SparsePolynomial:
    nvars: int
    terms: dict[Multiset, int] = field(default_factory=dict)

    def add_term(self, key: Multiset, coeff: int) -> None:
        c = self.terms.get(key, 0) + coeff
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def coefficient(self, key: Sequence[int]) -> int:
        return self.terms.get(tuple(sorted(key)), 0)

    def is_zero(self) -> bool:
        return not self.terms

    def total_degrees(self) -> set[int]:
        return {len(key) for key in self.terms}

    def variable_degree(self, t: int) -> int:
        return max((key.count(t) for key in self.terms), default=0)

    def evaluate(self, gf: FieldSpec, point: Mapping[int, int] | Sequence[int]) -> int:
        """Value at ``point`` (a 1-based mapping t -> element, or a sequence)."""
        if not isinstance(point, Mapping):
            point = {t + 1: v for t, v in enumerate(point)}
        total = 0
        for key, coeff in self.terms.items():
            term = gf.from_int(coeff)
            for t in key:
                try:
                    term = gf.mul(term, point[t])
                except KeyError:
                    raise MissingVariable(f"no value for alpha_{t}") from None
            total = gf.add(total, term)
        return total

    def sorted_terms(self) -> list[tuple[Multiset, int]]:
        return sorted(self.terms.items())

    def dump_lines(self) -> Iterator[str]:
        for key, coeff in self.sorted_terms():
            powers = " ".join(
                f"a{t}^{p}" for t, p in sorted(Counter(key).items())
            )
            yield f"{coeff} * {powers}" if powers else str(coeff)


def variable_degree(poly: SparsePolynomial, t: int) -> int:
    return poly.variable_degree(t)


def evaluate(poly: SparsePolynomial, gf: FieldSpec, point) -> int:
    return poly.evaluate(gf, point)


def symbolic_det(zeros: Sequence[Sequence[int]], n: int | None = None) -> SparsePolynomial:
    """Expand det(A), where row i of A holds the coefficients of prod_{t in Z_i}(x - alpha_t).

    Entry a_{i,j} (coefficient of x^{j-1}) is (-1)^{k-j} e_{k-j}(alpha_t : t in Z_i).
    Each permutation sigma and each choice T_i of a (k - sigma(i))-subset of
    Z_i contributes sgn(sigma) * (-1)^{k(k-1)/2} to the monomial keyed by the
    multiset union of the T_i.
    """
    zsets = [tuple(sorted(set(z))) for z in zeros]
    k = len(zsets)
    for z in zsets:
        if len(z) != k - 1:
            raise BadSubsetSize(f"zero set {list(z)} has size {len(z)}, expected {k - 1}")
    if n is None:
        n = max((t for z in zsets for t in z), default=0)
    poly = SparsePolynomial(n)
    global_sign = -1 if (k * (k - 1) // 2) % 2 else 1
    choices = [
        [list(itertools.combinations(z, d)) for d in range(k)] for z in zsets
    ]
    for sigma in itertools.permutations(range(1, k + 1)):
        sign = permutation_sign(sigma) * global_sign
        per_row = [choices[i][k - s] for i, s in enumerate(sigma)]
        for picks in itertools.product(*per_row):
            key = tuple(sorted(itertools.chain.from_iterable(picks)))
            poly.add_term(key, sign)
    return poly
