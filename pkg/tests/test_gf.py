import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_rem

from gmmds import gf as gflib
from gmmds.errors import DegreeMismatch, DivisionByZero, FieldMismatch, NotPrime, Reducible, UnsupportedFieldSize
from gmmds.gf import field_new, smallest_field_at_least


def _sympy_mul(field, a, b):
    """Independent product via sympy's dense F_p[x] arithmetic (high degree first)."""
    p = field.characteristic
    pa = list(reversed(field.digits(a)))
    pb = list(reversed(field.digits(b)))
    mod = list(reversed(field.modulus))
    rem = [int(c) for c in gf_rem(gf_mul(pa, pb, p, ZZ), mod, p, ZZ)]
    return field.from_digits(list(reversed(rem)))


def _sympy_add(field, a, b):
    p = field.characteristic
    s = [int(c) for c in gf_add(list(reversed(field.digits(a))), list(reversed(field.digits(b))), p, ZZ)]
    return field.from_digits(list(reversed(s)) + [0] * field.degree)


def test_prime_field_f2():
    f = field_new(2, 1)
    assert f.order == 2 and f.modulus == ()
    assert list(f.elements()) == [0, 1]


def test_f4_modulus_is_the_only_irreducible_quadratic():
    # monic quadratics over F_2 with no root in F_2
    rootless = [
        (c0, c1, 1)
        for c0, c1 in itertools.product(range(2), repeat=2)
        if all((c0 + c1 * x + x * x) % 2 for x in range(2))
    ]
    assert rootless == [(1, 1, 1)]
    f = field_new(2, 2)
    assert f.modulus == (1, 1, 1)
    assert f.order == 4


def test_composite_characteristic_rejected():
    with pytest.raises(NotPrime):
        field_new(4, 1)


def test_reducible_and_mismatched_modulus():
    with pytest.raises(Reducible):
        field_new(2, 2, [1, 0, 1])  # x^2 + 1 = (x + 1)^2
    with pytest.raises(DegreeMismatch):
        field_new(2, 3, [1, 1, 1])


def test_unsupported_size():
    with pytest.raises(UnsupportedFieldSize):
        field_new(2, 17)


def test_f4_product_of_x_and_x_plus_one():
    f = field_new(2, 2)
    # x * (x + 1) = x^2 + x = 1 mod x^2 + x + 1
    assert f.mul(2, 3) == 1


def test_f5_inverse_of_two():
    f = field_new(5)
    by_search = [b for b in range(1, 5) if (2 * b) % 5 == 1]
    assert by_search == [3]
    assert f.inv(2) == 3


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        field_new(7).inv(0)
    with pytest.raises(DivisionByZero):
        field_new(3, 2).inv(0)


@pytest.mark.parametrize("p, m, expected", [(2, 1, [0, 1]), (2, 2, [0, 1, 2, 3]), (7, 1, list(range(7)))])
def test_elements_order(p, m, expected):
    assert list(field_new(p, m).elements()) == expected


@pytest.mark.parametrize("bound, q", [(8, 8), (7, 7), (10, 11), (2, 2), (14, 16), (26, 27)])
def test_smallest_field_at_least(bound, q):
    assert smallest_field_at_least(bound).order == q


def test_prime_power_scan():
    expected = {q for q in range(2, 200) if any(q == p ** e for p in range(2, 200) if gflib.is_prime(p) for e in range(1, 8))}
    assert {q for q in range(2, 200) if gflib.prime_power(q)} == expected


def test_default_modulus_is_deterministic_and_smallest():
    for p, m in [(2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)]:
        f1, f2 = field_new(p, m), field_new(p, m)
        assert f1.modulus == f2.modulus
        smaller = [
            list(c) + [1]
            for c in itertools.product(range(p), repeat=m)
            if list(c) + [1] < list(f1.modulus)
        ]
        assert not any(gflib.is_irreducible(s, p) for s in smaller)


def test_irreducibility_against_root_count_for_cubics():
    # a cubic over F_p is irreducible iff it has no root
    for p in (2, 3, 5):
        for low in itertools.product(range(p), repeat=3):
            poly = list(low) + [1]
            has_root = any(sum(c * x**i for i, c in enumerate(poly)) % p == 0 for x in range(p))
            assert gflib.is_irreducible(poly, p) == (not has_root)


@pytest.mark.parametrize("p, m", [(2, 2), (2, 3), (2, 4), (3, 2), (5, 2), (2, 8), (3, 5), (2, 10)])
def test_arithmetic_matches_polynomial_reference(p, m):
    f = field_new(p, m)
    rng = random.Random(p * 100 + m)
    for _ in range(400):
        a, b = rng.randrange(f.order), rng.randrange(f.order)
        assert f.mul(a, b) == _sympy_mul(f, a, b)
        assert f.add(a, b) == _sympy_add(f, a, b)
        assert f.sub(f.add(a, b), b) == a


@given(st.sampled_from([(2, 3), (3, 2), (7, 1), (2, 5), (13, 1)]), st.data())
@settings(max_examples=60, deadline=None)
def test_pow_and_inverse(pm, data):
    f = field_new(*pm)
    a = data.draw(st.integers(1, f.order - 1))
    e = data.draw(st.integers(0, 3 * f.order))
    naive = 1
    for _ in range(e):
        naive = f.mul(naive, a)
    assert f.pow(a, e) == naive
    assert f.mul(f.inv(a), a) == 1
    assert f.pow(a, f.order - 1) == 1


def test_mul_identity_and_element_check():
    f = field_new(3, 2)
    for a in f.elements():
        assert f.mul(a, 1) == a
    with pytest.raises(FieldMismatch):
        f.element(9)


def test_json_round_trip():
    for f in (field_new(7), field_new(2, 4), field_new(3, 3)):
        doc = f.to_json()
        assert ("modulus" in doc) == (f.degree > 1)
        assert gflib.FieldSpec.from_json(doc) == f


def test_det_and_rank_small():
    f = field_new(5)
    assert gflib.det(f, [[3, 4], [0, 1]]) == 3
    assert gflib.det(f, [[1, 2], [2, 4]]) == 0
    assert gflib.rank(f, [[1, 2, 3], [2, 4, 2]]) == 2
    assert gflib.rank(f, [[1, 2, 3], [2, 4, 1]]) == 1  # 1 - 2*3 = -5
    assert gflib.rank(f, [[1, 2, 3], [2, 4, 6]]) == 1


@given(st.integers(1, 4), st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_det_matches_leibniz(size, seed):
    from gmmds.symdet import permutation_sign

    f = field_new(2, 3)
    rng = random.Random(seed)
    mat = [[rng.randrange(8) for _ in range(size)] for _ in range(size)]
    total = 0
    for perm in itertools.permutations(range(size)):
        term = 1
        for i, j in enumerate(perm):
            term = f.mul(term, mat[i][j])
        if permutation_sign(perm) < 0:
            term = f.neg(term)
        total = f.add(total, term)
    assert gflib.det(f, mat) == total
