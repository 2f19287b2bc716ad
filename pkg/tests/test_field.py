import pytest

from rtss import (
    FieldElement,
    FieldMismatchError,
    ParameterError,
    PrimeField,
    is_prime,
    smallest_prime_at_least,
)

SMALL_PRIMES = (2, 3, 5, 7, 11)


def _naive_is_prime(n):
    # independent oracle: literal definition
    return n >= 2 and all(n % d for d in range(2, n))


def test_add_examples(f7, f11):
    assert (f7(3) + f7(4)).value == 0
    assert (f11(6) + f11(6)).value == 1
    for x in f7.elements():
        assert f7.zero + x == x


def test_sub_neg_mul_pow(f7):
    assert (f7(2) - f7(5)).value == 4
    assert (-f7(3)).value == 4
    assert (f7(3) * f7(5)).value == 1
    assert (f7(3) ** 4).value == pow(3, 4, 7)
    assert (f7(3) ** -1) == f7(3).inv()


def test_inv_examples(f7):
    assert f7(1).inv() == f7(1)
    assert f7(3).inv() == f7(5)
    for q in (5, 7, 11, 251):
        field = PrimeField(q)
        for a in field.elements():
            if a.value == 0:
                continue
            assert a * a.inv() == field.one


def test_inv_of_zero_raises(f7):
    with pytest.raises(ZeroDivisionError):
        f7.zero.inv()
    with pytest.raises(ZeroDivisionError):
        f7(4) / f7.zero


def test_mismatched_fields_raise(f7, f11):
    with pytest.raises(FieldMismatchError):
        f7(1) + f11(1)
    with pytest.raises(FieldMismatchError):
        f7(2) * f11(3)
    with pytest.raises(TypeError):
        f7(1) + 1


def test_nonprime_modulus_rejected():
    for bad in (0, 1, 4, 9, 15, 100):
        with pytest.raises(ParameterError):
            PrimeField(bad)


def test_smallest_prime_at_least():
    assert smallest_prime_at_least(10) == 11
    assert smallest_prime_at_least(11) == 11
    assert smallest_prime_at_least(14) == 17
    with pytest.raises(ParameterError):
        smallest_prime_at_least(0)
    # cross-check against the naive oracle over a range
    for n in range(1, 300):
        expected = n if _naive_is_prime(n) or n < 2 else None
        candidate = smallest_prime_at_least(n)
        assert _naive_is_prime(candidate) and candidate >= n
        assert all(not _naive_is_prime(x) for x in range(max(n, 2), candidate))


def test_is_prime_matches_naive():
    for n in range(300):
        assert is_prime(n) == _naive_is_prime(n)


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_field_axioms_exhaustive(q):
    field = PrimeField(q)
    elems = list(field.elements())
    for a in elems:
        assert a + field.zero == a
        assert a * field.one == a
        assert a + (-a) == field.zero
        if a.value:
            assert a * a.inv() == field.one
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems:
                assert (a + b) + c == a + (b + c)
                assert (a * b) * c == a * (b * c)
                assert a * (b + c) == a * b + a * c


def test_fermat_exhaustive_up_to_251():
    for q in range(2, 252):
        if not is_prime(q):
            continue
        field = PrimeField(q)
        for a in field.elements():
            if a.value:
                assert a ** (q - 1) == field.one


def test_element_normalization_and_hash(f7):
    assert f7(9).value == 2
    assert f7(-1).value == 6
    assert hash(f7(3)) == hash(f7(10))
    assert int(f7(5)) == 5
    assert bool(f7(0)) is False and bool(f7(2)) is True
