"""Shamir and ramp secret sharing over a prime field.

A (k1, k2, n) ramp scheme hides a secret vector of length k2 - k1: any k2
shares recover it, any k1 shares say nothing about it.  k2 = k1 + 1 gives the
classical threshold scheme.  Shares are evaluations of a random polynomial
whose low-order coefficients are the secret; evaluation points are fixed to
x_i = i so that runs are reproducible (the points are public anyway).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    FieldMismatchError,
    InconsistentSharesError,
    InsufficientSharesError,
    ParameterError,
)
from .field import FieldElement, PrimeField

# A secret is a tuple of k2 - k1 field elements.
Secret = tuple


@dataclass(frozen=True)
class RampParams:
    """Thresholds (k1, k2) and player count n of a ramp scheme."""

    k1: int
    k2: int
    n: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.k1 < self.k2 <= self.n:
            raise ParameterError(
                f"need 0 <= k1 < k2 <= n, got k1={self.k1} k2={self.k2} n={self.n}"
            )
        if self.field.modulus < self.n + 1:
            raise ParameterError(
                f"field modulus {self.field.modulus} too small for n={self.n} players"
            )

    @property
    def secret_len(self) -> int:
        return self.k2 - self.k1

    @classmethod
    def threshold(cls, k: int, n: int, field: PrimeField) -> "RampParams":
        """The (k, n)-threshold scheme as the k2 = k1 + 1 ramp case."""
        return cls(k - 1, k, n, field)


@dataclass(frozen=True)
class Share:
    """One player's share: a public nonzero point x and the evaluation y."""

    x: FieldElement
    y: FieldElement

    def __post_init__(self):
        if self.x.value == 0:
            raise ParameterError("share point x must be nonzero")
        if self.x.field.modulus != self.y.field.modulus:
            raise FieldMismatchError("share x and y from different fields")


@dataclass(frozen=True)
class Polynomial:
    """Coefficients a_0..a_{t-1}, low order first (degree < t)."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ParameterError("polynomial needs at least one coefficient")

    def evaluate(self, x: FieldElement) -> FieldElement:
        """Horner evaluation at x."""
        q = x.field.modulus
        if self.coeffs[0].field.modulus != q:
            raise FieldMismatchError("evaluation point from a different field")
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x.value + c.value) % q
        return FieldElement(acc, x.field)


def lagrange_coeffs(
    xs: Sequence[FieldElement], target: FieldElement
) -> tuple:
    """Interpolation weights w with sum(w_i * f(x_i)) = f(target).

    Valid for every polynomial f of degree < len(xs).  The target may itself
    be one of the xs, in which case the weights are a standard basis vector.
    """
    if not xs:
        raise ParameterError("need at least one interpolation point")
    field = target.field
    for x in xs:
        if x.field.modulus != field.modulus:
            raise FieldMismatchError("interpolation points from different fields")
        if x.value == 0:
            raise ParameterError("interpolation points must be nonzero")
    if len({x.value for x in xs}) != len(xs):
        raise ParameterError("interpolation points must be distinct")
    weights = []
    for i, xi in enumerate(xs):
        num = field.one
        den = field.one
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = num * (target - xj)
            den = den * (xi - xj)
        weights.append(num / den)
    return tuple(weights)


def deal(params: RampParams, secret: Secret, rng) -> tuple:
    """Deal shares for the given secret; returns (shares, polynomial).

    The secret fills coefficients a_0..a_{lambda-1}; the remaining k1
    coefficients are drawn from rng.  Share i evaluates the polynomial at
    x = i for i = 1..n.
    """
    if len(secret) != params.secret_len:
        raise ParameterError(
            f"secret must have {params.secret_len} elements, got {len(secret)}"
        )
    for s in secret:
        if s.field.modulus != params.field.modulus:
            raise FieldMismatchError("secret element from a different field")
    coeffs = tuple(secret) + tuple(
        rng.element(params.field) for _ in range(params.k1)
    )
    poly = Polynomial(coeffs)
    shares = [
        evaluate_share(poly, params.field.element(i))
        for i in range(1, params.n + 1)
    ]
    return shares, poly


def evaluate_share(poly: Polynomial, x: FieldElement) -> Share:
    return Share(x, poly.evaluate(x))


def _interpolate_coeffs(xs: Sequence[int], ys: Sequence[int], q: int) -> list:
    """Coefficients of the unique polynomial of degree < len(xs) through
    the integer points (xs[i], ys[i]) mod q."""
    t = len(xs)
    master = [1]  # prod (X - x_i)
    for x in xs:
        nxt = [0] * (len(master) + 1)
        for j, c in enumerate(master):
            nxt[j + 1] = (nxt[j + 1] + c) % q
            nxt[j] = (nxt[j] - x * c) % q
        master = nxt
    coeffs = [0] * t
    for x, y in zip(xs, ys):
        # quotient of master by (X - x), then scale so it is y at x
        quot = [0] * t
        quot[t - 1] = master[t]
        for j in range(t - 1, 0, -1):
            quot[j - 1] = (master[j] + x * quot[j]) % q
        den = 0
        for c in reversed(quot):
            den = (den * x + c) % q
        scale = y * pow(den, -1, q) % q
        for j in range(t):
            coeffs[j] = (coeffs[j] + scale * quot[j]) % q
    return coeffs


def _eval_int(coeffs: Sequence[int], x: int, q: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % q
    return acc


def reconstruct(params: RampParams, shares: Sequence[Share]) -> Secret:
    """Recover the secret from at least k2 shares with distinct points.

    With more than k2 shares the extras are checked against the interpolated
    polynomial; a mismatch means some share is corrupted and raises
    InconsistentSharesError instead of silently ignoring it.
    """
    if len(shares) < params.k2:
        raise InsufficientSharesError(
            f"need at least {params.k2} shares, got {len(shares)}"
        )
    q = params.field.modulus
    for s in shares:
        if s.x.field.modulus != q:
            raise FieldMismatchError("share from a different field")
    xs = [s.x.value for s in shares]
    if len(set(xs)) != len(xs):
        raise ParameterError("shares must have distinct points")
    base = shares[: params.k2]
    coeffs = _interpolate_coeffs(
        [s.x.value for s in base], [s.y.value for s in base], q
    )
    for s in shares:
        if _eval_int(coeffs, s.x.value, q) != s.y.value:
            raise InconsistentSharesError(
                f"share at x={s.x.value} does not lie on the interpolated polynomial"
            )
    return tuple(FieldElement(c, params.field) for c in coeffs[: params.secret_len])
