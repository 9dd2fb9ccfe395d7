"""The unique multiset union problem.

Given (k-1)-subsets Z_1..Z_k of [n], every permutation sigma of [k] and
every choice of (sigma(i) - 1)-subsets S_i of Z_i produces a multiset union
of the S_i.  The family *passes* when some union is produced by exactly one
such choice.  Passing forces det(A) to be a nonzero polynomial (the union
is a monomial with coefficient +-1).

Histograms are computed by dynamic programming over rows with state
``(values of sigma used so far, multiset so far)``; :func:`iter_outcomes`
is the literal enumeration and serves as its oracle.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import BadSubsetSize, InputError, InvalidFamily, TooLarge
from .pattern import intersection_violation
from .symdet import Multiset, symbolic_det

MAX_OUTCOMES = 10**8


@dataclass(frozen=True)
class ZFamily:
    k: int
    n: int
    zeros: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.k < 1 or len(self.zeros) != self.k:
            raise InputError(f"need k >= 1 zero sets, got {len(self.zeros)} for k={self.k}")
        for z in self.zeros:
            if len(set(z)) != self.k - 1:
                raise BadSubsetSize(f"zero set {list(z)} is not a {self.k - 1}-subset")
            if any(not 1 <= t <= self.n for t in z):
                raise InputError(f"zero set {list(z)} not inside [1, {self.n}]")

    @classmethod
    def of(cls, zeros: Iterable[Iterable[int]], n: int | None = None) -> "ZFamily":
        zs = tuple(tuple(sorted(z)) for z in zeros)
        if n is None:
            n = max((t for z in zs for t in z), default=0)
        return cls(len(zs), n, zs)

    @property
    def zmasks(self) -> list[int]:
        return [sum(1 << (t - 1) for t in z) for z in self.zeros]

    def violation(self) -> tuple[int, ...] | None:
        """First (1-based) I with |intersection of Z_i over I| > k - |I|."""
        hit = intersection_violation(self.zmasks, self.k, self.n)
        return None if hit is None else tuple(i + 1 for i in hit[0])

    def is_valid(self) -> bool:
        return self.violation() is None

    def to_json(self) -> dict:
        return {"k": self.k, "n": self.n, "zeros": [list(z) for z in self.zeros]}

    @classmethod
    def from_json(cls, doc: dict) -> "ZFamily":
        try:
            zeros = doc["zeros"]
            n = int(doc["n"]) if "n" in doc else None
            fam = cls.of(zeros, n)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad zero-set family document: {exc}") from exc
        if "k" in doc and int(doc["k"]) != fam.k:
            raise InputError("declared k disagrees with the number of zero sets")
        return fam


@dataclass(frozen=True)
class MultisetOutcome:
    sigma: tuple[int, ...]
    selections: tuple[tuple[int, ...], ...]
    union: Multiset


@dataclass
class UniquenessReport:
    total_outcomes: int
    histogram: dict[Multiset, int]
    unique_witnesses: list[Multiset]

    @property
    def holds(self) -> bool:
        return bool(self.unique_witnesses)

    @property
    def witness(self) -> Multiset | None:
        return self.unique_witnesses[0] if self.unique_witnesses else None

    def count(self, multiset: Iterable[int]) -> int:
        return self.histogram.get(tuple(sorted(multiset)), 0)

    def to_json(self) -> dict:
        return {
            "total_outcomes": self.total_outcomes,
            "holds": self.holds,
            "witness": list(self.witness) if self.holds else None,
            "unique_witnesses": [list(m) for m in self.unique_witnesses],
            "histogram": [
                {"multiset": list(m), "count": c} for m, c in sorted(self.histogram.items())
            ],
        }


def total_outcomes(k: int) -> int:
    """k! * prod_d C(k-1, d): every sigma uses each subset size 0..k-1 once."""
    return math.factorial(k) * math.prod(math.comb(k - 1, d) for d in range(k))


def _require_valid(fam: ZFamily, max_outcomes: int) -> None:
    bad = fam.violation()
    if bad is not None:
        raise InvalidFamily(f"zero sets {list(bad)} intersect in more than {fam.k - len(bad)} columns")
    if total_outcomes(fam.k) > max_outcomes:
        raise TooLarge(f"{total_outcomes(fam.k)} outcomes exceeds {max_outcomes}")


def iter_outcomes(fam: ZFamily) -> Iterator[MultisetOutcome]:
    """Every (sigma, S_1..S_k) choice: sigma in lexicographic one-line order,
    each S_i in combination order."""
    k = fam.k
    for sigma in itertools.permutations(range(1, k + 1)):
        per_row = [list(itertools.combinations(z, s - 1)) for z, s in zip(fam.zeros, sigma)]
        for picks in itertools.product(*per_row):
            union = tuple(sorted(itertools.chain.from_iterable(picks)))
            yield MultisetOutcome(sigma, picks, union)


def _code_width(k: int) -> int:
    return max(1, k.bit_length())


def _histogram_codes(fam: ZFamily) -> tuple[dict[int, int], int]:
    """Map packed multiset -> number of choices producing it.

    Column t occupies bits [w(t-1), wt) of the packed integer; its count
    never reaches 2^w because each row contributes t at most once.
    """
    k = fam.k
    w = _code_width(k)
    sizes = []
    for z in fam.zeros:
        by_size = []
        for d in range(k):
            by_size.append([sum(1 << (w * (t - 1)) for t in c) for c in itertools.combinations(z, d)])
        sizes.append(by_size)
    states: dict[tuple[int, int], int] = {(0, 0): 1}
    for i in range(k):
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        row = sizes[i]
        for (used, code), cnt in states.items():
            for v in range(k):
                bit = 1 << v
                if used & bit:
                    continue
                nu = used | bit
                for c in row[v]:
                    nxt[(nu, code + c)] += cnt
        states = nxt
    return {code: cnt for (_, code), cnt in states.items()}, w


def _decode(code: int, w: int) -> Multiset:
    out = []
    t = 1
    mask = (1 << w) - 1
    while code:
        out.extend([t] * (code & mask))
        code >>= w
        t += 1
    return tuple(out)


def enumerate_outcomes(fam: ZFamily, max_outcomes: int = MAX_OUTCOMES) -> UniquenessReport:
    """Exact histogram of multiset unions over all (sigma, selection) choices."""
    _require_valid(fam, max_outcomes)
    codes, w = _histogram_codes(fam)
    histogram = {_decode(c, w): cnt for c, cnt in codes.items()}
    unique = sorted(m for m, cnt in histogram.items() if cnt == 1)
    total = sum(histogram.values())
    assert total == total_outcomes(fam.k)
    return UniquenessReport(total, histogram, unique)


def check_conjecture(fam: ZFamily, max_outcomes: int = MAX_OUTCOMES) -> tuple[bool, Multiset | None]:
    """Whether some union is unique, with the lexicographically smallest such union."""
    _require_valid(fam, max_outcomes)
    codes, w = _histogram_codes(fam)
    unique = [_decode(c, w) for c, cnt in codes.items() if cnt == 1]
    if not unique:
        return False, None
    return True, min(unique)


def cross_check_with_symdet(fam: ZFamily, max_outcomes: int = MAX_OUTCOMES) -> bool:
    """Compare the selection histogram with the expansion of det(A).

    A unique union must appear in det(A) with coefficient +-1, and an
    identically zero det(A) must leave no union unique.
    """
    report = enumerate_outcomes(fam, max_outcomes)
    poly = symbolic_det(fam.zeros, fam.n)
    for m in report.unique_witnesses:
        if abs(poly.coefficient(m)) != 1:
            return False
    if poly.is_zero() and report.holds:
        return False
    return True


# -- symmetry reduction ---------------------------------------------------------
#
# Up to relabelling columns, a family is the multiset of column signatures
# (the set of i with t in Z_i, as a k-bit mask) over the columns it uses.
# Reordering the Z_i permutes signature bits.  The canonical key is the
# smallest sorted signature tuple over all k! bit permutations.

def _bit_permutations(k: int) -> list[list[int]]:
    tables = []
    for perm in itertools.permutations(range(k)):
        table = [0] * (1 << k)
        for s in range(1 << k):
            t = 0
            for i in range(k):
                if s >> i & 1:
                    t |= 1 << perm[i]
            table[s] = t
        tables.append(table)
    return tables


_PERM_CACHE: dict[int, list[list[int]]] = {}


def _perm_tables(k: int) -> list[list[int]]:
    if k not in _PERM_CACHE:
        _PERM_CACHE[k] = _bit_permutations(k)
    return _PERM_CACHE[k]


def signatures(fam: ZFamily) -> tuple[int, ...]:
    sig = [0] * (fam.n + 1)
    for i, z in enumerate(fam.zeros):
        for t in z:
            sig[t] |= 1 << i
    return tuple(sorted(s for s in sig[1:] if s))


def _canonical_key(sigs: Sequence[int], k: int) -> tuple[int, ...]:
    return min(tuple(sorted(table[s] for s in sigs)) for table in _perm_tables(k))


def canonical_key(fam: ZFamily) -> tuple[int, ...]:
    return _canonical_key(signatures(fam), fam.k)


def family_from_signatures(sigs: Sequence[int], k: int) -> ZFamily:
    """Columns 1..len(sigs) in the given order; Z_i collects the columns whose signature has bit i."""
    zeros = [[t for t, s in enumerate(sigs, start=1) if s >> i & 1] for i in range(k)]
    return ZFamily(k, len(sigs), tuple(tuple(z) for z in zeros))


def canonical_form(fam: ZFamily) -> ZFamily:
    return family_from_signatures(canonical_key(fam), fam.k)


def canonical_families(k: int, n_max: int | None = None) -> Iterator[ZFamily]:
    """One valid family per symmetry class, each using every column of its [n].

    Yielded in order of n, then canonical key.
    """
    if n_max is None:
        n_max = k * (k - 1)
    if k == 1:
        yield ZFamily(1, 0, ((),))
        return
    full = (1 << k) - 1
    # superset-closed counters: count[I] = columns whose signature contains I
    count = [0] * (1 << k)
    supersets_of = [[i for i in range(1, full + 1) if s & i == i] for s in range(full + 1)]
    limit = [k - bin(i).count("1") for i in range(full + 1)]
    singles = [1 << i for i in range(k)]
    found: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    seq: list[int] = []

    def extend(start: int) -> None:
        if all(count[b] == k - 1 for b in singles):
            if len(seq) <= n_max:
                key = tuple(seq)
                if _canonical_key(key, k) == key:
                    found[len(seq)].append(key)
            return
        if len(seq) >= n_max:
            return
        for s in range(start, full + 1):
            subs = supersets_of[s]
            if any(count[i] >= limit[i] for i in subs):
                continue
            for i in subs:
                count[i] += 1
            seq.append(s)
            extend(s)
            seq.pop()
            for i in subs:
                count[i] -= 1

    extend(1)
    for n in sorted(found):
        for key in sorted(found[n]):
            yield family_from_signatures(key, k)


def labeled_families(k: int, n: int) -> Iterator[ZFamily]:
    """Every valid ordered family of (k-1)-subsets of [n]."""
    subsets = list(itertools.combinations(range(1, n + 1), k - 1))
    for zs in itertools.product(subsets, repeat=k):
        fam = ZFamily(k, n, zs)
        if fam.is_valid():
            yield fam


def random_family(k: int, rng: random.Random, n: int | None = None,
                  n_max: int | None = None, max_attempts: int = 10_000) -> ZFamily:
    """A valid family drawn by rejection: n uniform in [k, n_max], each Z_i uniform."""
    if n_max is None:
        n_max = max(k, k * (k - 1))
    for _ in range(max_attempts):
        nn = n if n is not None else rng.randint(k, n_max)
        zs = tuple(tuple(sorted(rng.sample(range(1, nn + 1), k - 1))) for _ in range(k))
        fam = ZFamily(k, nn, zs)
        if fam.is_valid():
            return fam
    raise TooLarge(f"no valid family found in {max_attempts} draws (k={k}, n={n})")


# -- sweeps -----------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyResult:
    n: int
    zeros: tuple[tuple[int, ...], ...]
    holds: bool
    witness: Multiset | None
    outcomes: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "zeros": [list(z) for z in self.zeros],
            "holds": self.holds,
            "witness": list(self.witness) if self.witness is not None else None,
            "outcomes": self.outcomes,
        }


@dataclass
class SweepReport:
    k: int
    mode: str
    checked: int = 0
    passed: int = 0
    failed: int = 0
    per_n: dict[int, int] = field(default_factory=dict)
    counterexamples: list[FamilyResult] = field(default_factory=list)
    budget_exhausted: bool = False

    def add(self, res: FamilyResult) -> None:
        self.checked += 1
        self.per_n[res.n] = self.per_n.get(res.n, 0) + 1
        if res.holds:
            self.passed += 1
        else:
            self.failed += 1
            self.counterexamples.append(res)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "mode": self.mode,
            "checked": self.checked,
            "passed": self.passed,
            "failed": self.failed,
            "per_n": {str(n): c for n, c in sorted(self.per_n.items())},
            "counterexamples": [r.to_json() for r in self.counterexamples],
            "budget_exhausted": self.budget_exhausted,
        }


def check_family(fam: ZFamily) -> FamilyResult:
    holds, witness = check_conjecture(fam)
    return FamilyResult(fam.n, fam.zeros, holds, witness, total_outcomes(fam.k))


def _sampled(k: int, n_max: int, budget: int, seed: int, stats: dict) -> Iterator[ZFamily]:
    rng = random.Random(seed)
    for _ in range(budget):
        try:
            yield random_family(k, rng, n_max=n_max)
        except TooLarge:
            stats["exhausted"] = True
            return


def iter_sweep(k: int, n_max: int | None = None, canonicalize: bool = True,
               sample: int | None = None, seed: int = 0, workers: int | None = None,
               _stats: dict | None = None) -> Iterator[FamilyResult]:
    """Check families one by one, yielding results in a scheduling-independent order.

    ``sample`` switches to seeded random sampling of that many valid
    families; otherwise families are enumerated exhaustively, up to
    symmetry when ``canonicalize`` is set.
    """
    if n_max is None:
        n_max = k * (k - 1)
    stats = _stats if _stats is not None else {}
    if sample is not None:
        families: Iterable[ZFamily] = _sampled(k, n_max, sample, seed, stats)
    elif canonicalize:
        families = canonical_families(k, n_max)
    else:
        families = itertools.chain.from_iterable(
            labeled_families(k, n) for n in range(max(k - 1, 1), n_max + 1)
        )
    if workers is None:
        workers = default_workers()
    if workers <= 1:
        yield from map(check_family, families)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(check_family, families, chunksize=64)


def sweep_instances(k: int, n_max: int | None = None, canonicalize: bool = True,
                    sample: int | None = None, seed: int = 0,
                    workers: int | None = None) -> SweepReport:
    mode = "sampled" if sample is not None else ("canonical" if canonicalize else "labeled")
    report = SweepReport(k, mode)
    stats: dict = {}
    for res in iter_sweep(k, n_max, canonicalize, sample, seed, workers, stats):
        report.add(res)
    report.budget_exhausted = bool(stats.get("exhausted"))
    return report


def default_workers() -> int:
    env = os.environ.get("GMMDS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"GMMDS_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1
