"""Deterministic randomness sources.

Protocol code never touches a global RNG: every operation that draws random
field elements takes an explicit source, so a run is a pure function of its
inputs.  SeededRng is the ordinary source; ScriptedSource replays a chosen
sequence, which is how the auditors enumerate a protocol's entire randomness
space instead of sampling it.
"""

from __future__ import annotations

import random
from typing import Iterable

from .errors import ParameterError
from .field import FieldElement, PrimeField


class SeededRng:
    """Mersenne-Twister stream with an explicit seed; no crypto claims."""

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = random.Random(seed)

    def element(self, field: PrimeField) -> FieldElement:
        """A uniformly random element of the given field."""
        return field.element(self._rng.randrange(field.modulus))

    def __repr__(self) -> str:
        return f"SeededRng({self.seed})"


class ScriptedSource:
    """Replays a fixed sequence of integer values as field elements."""

    def __init__(self, values: Iterable[int]):
        self._values = iter(values)

    def element(self, field: PrimeField) -> FieldElement:
        try:
            value = next(self._values)
        except StopIteration:
            raise ParameterError("scripted randomness exhausted") from None
        return field.element(int(value))
