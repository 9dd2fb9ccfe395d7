"""Arithmetic over F_q for prime and prime-power q.

Elements are plain integers in ``[0, q)``.  The base-``p`` digits of an
element are the coefficients (low degree first) of a polynomial of degree
``< m`` over F_p, reduced modulo the field's defining polynomial.  For
``m = 1`` this is ordinary arithmetic mod ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DegreeMismatch,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    InputError,
    NotPrime,
    Reducible,
    UnsupportedFieldSize,
)

MAX_ORDER = 1 << 16
# full add/mul tables are cached for extension fields up to this order
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m``, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


# -- polynomials over F_p (coefficient lists, low degree first) -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monic_polys(p: int, d: int) -> Iterable[list[int]]:
    # lexicographic in the low-degree-first coefficient list
    for low in itertools.product(range(p), repeat=d):
        yield list(low) + [1]


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(list(poly))
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_rem(poly, g, p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m (low-degree-first order)."""
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_q with q = characteristic ** degree.

    ``modulus`` holds the monic defining polynomial including its leading
    one (length ``degree + 1``); it is empty for prime fields.
    """

    characteristic: int
    degree: int = 1
    modulus: tuple[int, ...] = ()
    _add: list | None = field(default=None, init=False, repr=False, compare=False)
    _mul: list | None = field(default=None, init=False, repr=False, compare=False)
    _inv: list | None = field(default=None, init=False, repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.characteristic ** self.degree

    @property
    def q(self) -> int:
        return self.order

    @property
    def is_prime_field(self) -> bool:
        return self.degree == 1

    def __str__(self) -> str:
        return f"F_{self.order}"

    # -- element encoding ---------------------------------------------------

    def digits(self, a: int) -> list[int]:
        p = self.characteristic
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.characteristic + d
        return v

    def element(self, value: int) -> int:
        """Validate an encoded element."""
        if not isinstance(value, int) or not 0 <= value < self.order:
            raise FieldMismatch(f"{value!r} is not an element of {self}")
        return value

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` under Z -> F_q (reduction mod p)."""
        return n % self.characteristic

    def elements(self) -> range:
        return range(self.order)

    # -- raw (table-free) arithmetic ------------------------------------------

    def _raw_add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.characteristic
        p = self.characteristic
        if p == 2:
            return a ^ b
        return self.from_digits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _raw_mul(self, a: int, b: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (a * b) % p
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_rem(prod, self.modulus, p)
        return self.from_digits(rem + [0] * (self.degree - len(rem)))

    def _tables(self) -> None:
        q = self.order
        add = [[self._raw_add(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._raw_mul(a, b) for b in range(q)] for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        object.__setattr__(self, "_add", add)
        object.__setattr__(self, "_mul", mul)
        object.__setattr__(self, "_inv", inv)

    def _use_tables(self) -> bool:
        if self.degree == 1 or self.order > TABLE_LIMIT:
            return False
        if self._mul is None:
            self._tables()
        return True

    # -- public arithmetic ----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a + b) % self.characteristic
        if self._use_tables():
            return self._add[a][b]
        return self._raw_add(a, b)

    def neg(self, a: int) -> int:
        p = self.characteristic
        if self.degree == 1:
            return (-a) % p
        if p == 2:
            return a
        return self.from_digits([(-x) % p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.degree == 1:
            return (a * b) % self.characteristic
        if self._use_tables():
            return self._mul[a][b]
        return self._raw_mul(a, b)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self.degree == 1:
            return pow(a, self.characteristic - 2, self.characteristic)
        if self._use_tables():
            return self._inv[a]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- tables for vectorised callers ----------------------------------------

    def add_table(self) -> list[list[int]]:
        if self._use_tables():
            return self._add
        q = self.order
        return [[self.add(a, b) for b in range(q)] for a in range(q)]

    def mul_table(self) -> list[list[int]]:
        if self._use_tables():
            return self._mul
        q = self.order
        return [[self.mul(a, b) for b in range(q)] for a in range(q)]

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        out = {"p": self.characteristic, "m": self.degree}
        if self.degree > 1:
            out["modulus"] = list(self.modulus)
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "FieldSpec":
        try:
            return field_new(int(doc["p"]), int(doc.get("m", 1)), doc.get("modulus"))
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad field document: {doc!r}") from exc


def field_new(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> FieldSpec:
    """Build and validate F_{p^m}.

    Without an explicit modulus the lexicographically smallest monic
    irreducible of degree m is used, so the result is a pure function of
    ``(p, m)``.
    """
    if not is_prime(p):
        raise NotPrime(f"characteristic {p} is not prime")
    if m < 1:
        raise DegreeMismatch(f"degree must be >= 1, got {m}")
    if p ** m > MAX_ORDER:
        raise UnsupportedFieldSize(f"q = {p}^{m} exceeds {MAX_ORDER}")
    if m == 1:
        if modulus:
            mod = _trim([c % p for c in modulus])
            if len(mod) != 2:
                raise DegreeMismatch(f"modulus {list(modulus)} has degree != 1")
        return FieldSpec(p, 1, ())
    if modulus is None:
        return FieldSpec(p, m, default_modulus(p, m))
    mod = _trim([int(c) % p for c in modulus])
    if len(mod) - 1 != m:
        raise DegreeMismatch(f"modulus {list(modulus)} does not have degree {m}")
    if mod[-1] != 1:
        raise InputError(f"modulus {list(modulus)} is not monic")
    if not is_irreducible(mod, p):
        raise Reducible(f"modulus {list(modulus)} is reducible over F_{p}")
    return FieldSpec(p, m, tuple(mod))


def smallest_field_at_least(bound: int) -> FieldSpec:
    q = max(bound, 2)
    while True:
        pm = prime_power(q)
        if pm is not None:
            return field_new(*pm)
        q += 1


# -- dense linear algebra over F_q --------------------------------------------

def _check_rect(matrix: Sequence[Sequence[int]]) -> int:
    width = len(matrix[0]) if matrix else 0
    for row in matrix:
        if len(row) != width:
            raise DimensionMismatch("ragged matrix")
    return width


def det(gf: FieldSpec, matrix: Sequence[Sequence[int]]) -> int:
    """Determinant by Gaussian elimination."""
    size = len(matrix)
    if _check_rect(matrix) != size:
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in matrix]
    result = 1
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            result = gf.neg(result)
        pv = rows[col][col]
        result = gf.mul(result, pv)
        pinv = gf.inv(pv)
        for r in range(col + 1, size):
            f = rows[r][col]
            if f:
                f = gf.mul(f, pinv)
                rows[r] = [gf.sub(x, gf.mul(f, y)) for x, y in zip(rows[r], rows[col])]
    return result


def rank(gf: FieldSpec, matrix: Sequence[Sequence[int]]) -> int:
    if not matrix:
        return 0
    width = _check_rect(matrix)
    rows = [list(r) for r in matrix]
    r = 0
    for col in range(width):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pinv = gf.inv(rows[r][col])
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            if f:
                f = gf.mul(f, pinv)
                rows[i] = [gf.sub(x, gf.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def matmul(gf: FieldSpec, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    inner = _check_rect(a)
    if inner != len(b):
        raise DimensionMismatch("inner dimensions differ")
    width = _check_rect(b)
    out = []
    for row in a:
        acc = [0] * width
        for x, brow in zip(row, b):
            if x:
                acc = [gf.add(s, gf.mul(x, y)) for s, y in zip(acc, brow)]
        out.append(acc)
    return out
