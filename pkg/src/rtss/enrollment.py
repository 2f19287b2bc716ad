"""Enrollment-style share repair for Shamir and ramp schemes.

k2 helpers jointly rebuild a lost share without the dealer.  Writing the lost
share as a weighted sum of the helpers' shares (public Lagrange weights),
each helper additively splits its weighted share into k2 pieces, one per
helper; every helper then sums the pieces addressed to it and forwards that
column sum to the player being repaired, who adds the column sums back
together.  The exchange costs k2*(k2-1) messages, the repair phase k2 more,
so a run transmits exactly k2^2 field elements in total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError
from .field import FieldElement
from .ramp import RampParams, Share, lagrange_coeffs
from .transcript import EXCHANGE, REPAIR, Message, Transcript


@dataclass(frozen=True)
class ExchangeMatrix:
    """The square matrix of split values from one repair run.

    entries[i][j] is the value helper i computed for helper j (the diagonal
    stays local, everything else is transmitted).  Row i sums to helper i's
    weighted share; column j sums to the value helper j forwards; the grand
    total is the repaired share.
    """

    entries: tuple
    helper_ids: tuple

    def __post_init__(self):
        d = len(self.helper_ids)
        if len(self.entries) != d or any(len(row) != d for row in self.entries):
            raise ParameterError("exchange matrix must be square over the helpers")

    @property
    def size(self) -> int:
        return len(self.helper_ids)

    def row_sums(self) -> tuple:
        field = self.entries[0][0].field
        return tuple(sum(row, field.zero) for row in self.entries)

    def grand_total(self) -> FieldElement:
        field = self.entries[0][0].field
        return sum((v for row in self.entries for v in row), field.zero)


def split_row(value: FieldElement, d: int, rng) -> tuple:
    """Split value into d addends: the first d-1 drawn from rng, the last
    constrained so the row sums to value."""
    if d < 1:
        raise ParameterError(f"need at least one addend, got d={d}")
    field = value.field
    free = [rng.element(field) for _ in range(d - 1)]
    last = value
    for part in free:
        last = last - part
    return tuple(free) + (last,)


def column_sums(matrix: ExchangeMatrix) -> tuple:
    """The per-column sums, i.e. what each helper forwards to the target."""
    field = matrix.entries[0][0].field
    d = matrix.size
    return tuple(
        sum((matrix.entries[i][j] for i in range(d)), field.zero) for j in range(d)
    )


def repair_share(
    params: RampParams, helper_shares, target_x: FieldElement, rng
) -> tuple:
    """Run the repair protocol; returns (repaired share, transcript, matrix).

    Helpers are sorted by their points before weights are computed so that
    transcripts are canonical.  Player ids in the transcript are the integer
    values of the share points; the diagonal of the matrix is computed but
    never transmitted.
    """
    d = params.k2
    if len(helper_shares) != d:
        raise ParameterError(f"need exactly {d} helpers, got {len(helper_shares)}")
    if target_x.value == 0:
        raise ParameterError("target point must be nonzero")
    if target_x.field.modulus != params.field.modulus:
        raise ParameterError("target point from a different field")
    xs = [s.x.value for s in helper_shares]
    if len(set(xs)) != len(xs):
        raise ParameterError("helper shares must have distinct points")
    if target_x.value in xs:
        raise ParameterError("target must not be one of the helpers")
    for s in helper_shares:
        if s.x.field.modulus != params.field.modulus:
            raise ParameterError("helper share from a different field")

    helpers = sorted(helper_shares, key=lambda s: s.x.value)
    ids = tuple(s.x.value for s in helpers)
    target_id = target_x.value
    weights = lagrange_coeffs([s.x for s in helpers], target_x)

    rows = tuple(
        split_row(w * s.y, d, rng) for w, s in zip(weights, helpers)
    )
    matrix = ExchangeMatrix(entries=rows, helper_ids=ids)

    messages = []
    for i in range(d):
        for j in range(d):
            if i == j:
                continue  # self-delivery, stays local
            messages.append(Message(EXCHANGE, ids[i], ids[j], (rows[i][j],)))

    sigmas = column_sums(matrix)
    for j in range(d):
        messages.append(Message(REPAIR, ids[j], target_id, (sigmas[j],)))

    repaired_y = sum(sigmas, params.field.zero)
    repaired = Share(target_x, repaired_y)
    return repaired, Transcript(tuple(messages)), matrix
