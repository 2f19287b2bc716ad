"""Exact arithmetic in prime fields F_Q.

Everything that travels through a scheme or a protocol -- shares, subshares,
exchanged messages, polynomial coefficients -- is a FieldElement.  Moduli are
deliberately small (trial-division primality is enough): the auditors
enumerate entire sample spaces, so small state spaces are a feature, not a
limitation.
"""

from __future__ import annotations

from typing import Iterator

from .errors import FieldMismatchError, ParameterError


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate for desk-scale moduli."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def smallest_prime_at_least(n: int) -> int:
    """The least prime >= n.  Used to pick a default modulus."""
    if n < 1:
        raise ParameterError(f"need a positive bound, got {n}")
    candidate = max(n, 2)
    while not is_prime(candidate):
        candidate += 1
    return candidate


class PrimeField:
    """The field of integers modulo a prime Q."""

    __slots__ = ("modulus",)

    def __init__(self, modulus: int):
        if not is_prime(modulus):
            raise ParameterError(f"field modulus must be prime, got {modulus}")
        self.modulus = modulus

    def element(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self) -> Iterator[FieldElement]:
        """All Q elements, in value order (for exhaustive checks)."""
        return (FieldElement(v, self) for v in range(self.modulus))

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash(("PrimeField", self.modulus))

    def __repr__(self) -> str:
        return f"PrimeField({self.modulus})"


class FieldElement:
    """An element of F_Q; treat instances as immutable values.

    Binary operations require both operands to come from the same field;
    mixing moduli raises FieldMismatchError rather than guessing.
    """

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.value = value % field.modulus
        self.field = field

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field.modulus != self.field.modulus:
            raise FieldMismatchError(
                f"mixed moduli {self.field.modulus} and {other.field.modulus}"
            )

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.value + other.value, self.field)

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.value - other.value, self.field)

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.value * other.value, self.field)

    def __neg__(self) -> FieldElement:
        return FieldElement(-self.value, self.field)

    def __pow__(self, exponent: int) -> FieldElement:
        if exponent < 0:
            return self.inv() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.modulus), self.field)

    def inv(self) -> FieldElement:
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.field.modulus}")
        return FieldElement(pow(self.value, -1, self.field.modulus), self.field)

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self * other.inv()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldElement)
            and self.value == other.value
            and self.field.modulus == other.field.modulus
        )

    def __hash__(self) -> int:
        return hash((self.value, self.field.modulus))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.field.modulus})"
