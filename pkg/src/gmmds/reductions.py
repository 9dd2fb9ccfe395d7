"""Compile application instances into zero patterns.

Cooperative data exchange: client s holds packets H_s and sends b_s coded
packets; the k = sum(b_s) x n coding matrix has b_s rows supported on H_s.

Simple multiple access network: source i reaches relays supp(A_i) at rate
r_i with up to z adversarial errors; rows are repeated by rate and padded
with all-one rows up to k = n - 2z.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gf as gflib
from .construct import GeneratorMatrix, construct_mds
from .errors import CutConditionViolated, InputError, RateExceedsCapacity, TooLarge
from .pattern import ConditionReport, ZeroPattern, check_mds_condition, fits

MAX_PARTIES = 20


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _mask(cols) -> int:
    return sum(1 << (c - 1) for c in set(cols))


def _subsets(m: int):
    if m > MAX_PARTIES:
        raise TooLarge(f"exhaustive cut check capped at {MAX_PARTIES} parties, got {m}")
    for size in range(1, m + 1):
        yield from itertools.combinations(range(m), size)


@dataclass(frozen=True)
class CdeInstance:
    n: int
    has: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]

    def __post_init__(self):
        if len(self.has) != len(self.b) or not self.has:
            raise InputError("need one (has, b) pair per client and at least one client")
        for h in self.has:
            if any(not 1 <= c <= self.n for c in h):
                raise InputError(f"packet set {list(h)} not inside [1, {self.n}]")
            if len(set(h)) >= self.n:
                raise InputError(f"client already holds every packet: {list(h)}")
        if any(x < 0 for x in self.b):
            raise InputError("transmission counts must be >= 0")
        if self.k < 1:
            raise InputError("total transmissions k must be >= 1")

    @property
    def m(self) -> int:
        return len(self.has)

    @property
    def k(self) -> int:
        return sum(self.b)

    def to_json(self) -> dict:
        return {"n": self.n, "clients": [{"has": list(h), "b": b} for h, b in zip(self.has, self.b)]}

    @classmethod
    def from_json(cls, doc: dict) -> "CdeInstance":
        try:
            clients = doc["clients"]
            return cls(
                int(doc["n"]),
                tuple(tuple(sorted(int(c) for c in cl["has"])) for cl in clients),
                tuple(int(cl["b"]) for cl in clients),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad CDE document: {exc}") from exc


@dataclass(frozen=True)
class SmanInstance:
    n: int
    z: int
    relays: tuple[tuple[int, ...], ...]
    rates: tuple[int, ...]

    def __post_init__(self):
        if len(self.relays) != len(self.rates) or not self.relays:
            raise InputError("need one (relays, rate) pair per source and at least one source")
        for r in self.relays:
            if any(not 1 <= c <= self.n for c in r):
                raise InputError(f"relay set {list(r)} not inside [1, {self.n}]")
        if any(r < 1 for r in self.rates):
            raise InputError("rates must be >= 1")
        if self.z < 0:
            raise InputError("error budget z must be >= 0")

    @property
    def m(self) -> int:
        return len(self.relays)

    @property
    def total_rate(self) -> int:
        return sum(self.rates)

    @property
    def k(self) -> int:
        return self.n - 2 * self.z

    @property
    def adjacency(self) -> list[list[int]]:
        return [[1 if j in set(r) else 0 for j in range(1, self.n + 1)] for r in self.relays]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "z": self.z,
            "sources": [{"relays": list(r), "rate": x} for r, x in zip(self.relays, self.rates)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SmanInstance":
        try:
            sources = doc["sources"]
            return cls(
                int(doc["n"]),
                int(doc.get("z", 0)),
                tuple(tuple(sorted(int(c) for c in s["relays"])) for s in sources),
                tuple(int(s["rate"]) for s in sources),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"bad SMAN document: {exc}") from exc


def cde_cut_condition(inst: CdeInstance) -> ConditionReport:
    """|union of H_s over S| >= n - k + sum of b_s over S, for every nonempty S.

    Equivalently, the packets nobody in S holds number at most the
    transmissions from clients outside S.  The witness is 1-based.
    """
    masks = [_mask(h) for h in inst.has]
    for s in _subsets(inst.m):
        union = 0
        for i in s:
            union |= masks[i]
        size = _popcount(union)
        if size < inst.n - inst.k + sum(inst.b[i] for i in s):
            return ConditionReport(False, tuple(i + 1 for i in s), size)
    return ConditionReport(True)


def cde_to_pattern(inst: CdeInstance) -> ZeroPattern:
    report = cde_cut_condition(inst)
    if not report.holds:
        raise CutConditionViolated(
            f"cut-set bound fails for clients {list(report.witness)}", report.witness, report.union_size
        )
    if inst.k > inst.n:
        raise InputError(f"{inst.k} transmissions exceed the {inst.n} packets; no [n, k] code exists")
    supports = [h for h, b in zip(inst.has, inst.b) for _ in range(b)]
    pat = ZeroPattern.from_supports(inst.n, supports)
    assert check_mds_condition(pat).holds, "cut-set bound held but the pattern fails the MDS Condition"
    return pat


def sman_cut_condition(inst: SmanInstance) -> ConditionReport:
    """|union of relay sets over I| >= sum of rates over I + 2z, for every nonempty I."""
    masks = [_mask(r) for r in inst.relays]
    for s in _subsets(inst.m):
        union = 0
        for i in s:
            union |= masks[i]
        size = _popcount(union)
        if size < sum(inst.rates[i] for i in s) + 2 * inst.z:
            return ConditionReport(False, tuple(i + 1 for i in s), size)
    return ConditionReport(True)


def sman_to_pattern(inst: SmanInstance) -> tuple[ZeroPattern, ZeroPattern]:
    """Return ``(M, M')``: M' repeats source rows by rate, M pads M' to k = n - 2z rows."""
    if inst.k < inst.total_rate:
        raise RateExceedsCapacity(
            f"total rate {inst.total_rate} exceeds k = n - 2z = {inst.k}"
        )
    report = sman_cut_condition(inst)
    if not report.holds:
        raise CutConditionViolated(
            f"cut-set bound fails for sources {list(report.witness)}", report.witness, report.union_size
        )
    sub_supports = [r for r, x in zip(inst.relays, inst.rates) for _ in range(x)]
    full = range(1, inst.n + 1)
    sub = ZeroPattern.from_supports(inst.n, sub_supports)
    pat = ZeroPattern.from_supports(inst.n, sub_supports + [full] * (inst.k - inst.total_rate))
    assert check_mds_condition(pat).holds, "cut-set bound held but the pattern fails the MDS Condition"
    return pat, sub


@dataclass(frozen=True)
class SmanCode:
    generator: GeneratorMatrix
    sub_rows: tuple[tuple[int, ...], ...]
    pattern: ZeroPattern
    sub_pattern: ZeroPattern

    def to_json(self) -> dict:
        return {
            "pattern": self.pattern.to_json(),
            "sub_pattern": self.sub_pattern.to_json(),
            "code": self.generator.to_json(),
            "sub_matrix": [list(r) for r in self.sub_rows],
            "sub_rank": gflib.rank(self.generator.field, self.sub_rows),
        }


def sman_code(inst: SmanInstance, q=None, strategy: str = "random", seed: int = 0) -> SmanCode:
    """Full [n, k] code for M, and its first r_I rows spanning the sources' subspace."""
    pat, sub = sman_to_pattern(inst)
    g = construct_mds(pat, q, strategy, seed)
    sub_rows = g.entries[: inst.total_rate]
    assert fits(list(sub_rows), sub)
    return SmanCode(g, sub_rows, pat, sub)
