"""Seeded instance generators and brute-force oracles shared by the tests."""

import itertools
import random

from gmmds.multiset import ZFamily, random_family
from gmmds.pattern import ZeroPattern, check_mds_condition
from gmmds.reductions import CdeInstance, SmanInstance


def random_pattern(rng: random.Random, k: int, n: int, density: float | None = None) -> ZeroPattern:
    if density is None:
        density = rng.uniform(0.3, 1.0)
    rows = [[1 if rng.random() < density else 0 for _ in range(n)] for _ in range(k)]
    return ZeroPattern.from_rows(rows)


def satisfying_patterns(seed: int, count: int, k_max: int, n_max: int) -> list[ZeroPattern]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.randint(1, k_max)
        n = rng.randint(k, n_max)
        pat = random_pattern(rng, k, n)
        if check_mds_condition(pat).holds:
            out.append(pat)
    return out


def valid_families(seed: int, count: int, k_max: int, k_min: int = 1) -> list[ZFamily]:
    rng = random.Random(seed)
    return [random_family(rng.randint(k_min, k_max), rng) for _ in range(count)]


def brute_condition(pat: ZeroPattern):
    """All violating I (1-based, sorted tuples) straight from the definition."""
    sups = [set(s) for s in pat.supports]
    bad = []
    for size in range(1, pat.k + 1):
        for idx in itertools.combinations(range(pat.k), size):
            union = set().union(*(sups[i] for i in idx))
            if len(union) < pat.n - pat.k + size:
                bad.append((tuple(i + 1 for i in idx), len(union)))
    return sorted(bad)


def random_cde(rng: random.Random, m_max: int = 4, n_max: int = 8) -> CdeInstance:
    n = rng.randint(2, n_max)
    m = rng.randint(1, m_max)
    wild = rng.random() < 0.2
    has = []
    for _ in range(m):
        # clients usually miss only a couple of packets, otherwise the cut-set bound rarely holds
        size = rng.randint(0, n - 1) if wild else rng.randint(max(0, n - 2), n - 1)
        has.append(tuple(sorted(rng.sample(range(1, n + 1), size))))
    b = [rng.randint(0, 2) if wild else rng.randint(1, 2) for _ in range(m)]
    if sum(b) == 0:
        b[rng.randrange(m)] = 1
    return CdeInstance(n, tuple(has), tuple(b))


def random_sman(rng: random.Random, m_max: int = 3, n_max: int = 8, z_max: int = 2) -> SmanInstance:
    n = rng.randint(1, n_max)
    m = rng.randint(1, m_max)
    z = rng.randint(0, z_max)
    relays = tuple(
        tuple(sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))) for _ in range(m)
    )
    rates = tuple(rng.randint(1, 2) for _ in range(m))
    return SmanInstance(n, z, relays, rates)
