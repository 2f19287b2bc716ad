"""Expanded repairable schemes: a distribution design over a base ramp scheme.

Take a design whose every point lies in at least two blocks and whose union
profile at threshold k satisfies ell1 < ell2.  Deal an (ell1, ell2, m)-ramp
scheme, one subshare per design point, and hand player i the subshares of
block B_i.  Any k players pool at least ell2 points and reconstruct; any k-1
pool at most ell1 and learn nothing.  A lost share is rebuilt by having, for
each point of the lost block, some other block's owner resend that one
subshare -- d field elements in total, so the repair communication is
d / (ell2 - ell1) secret units.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .designs import (
    Design,
    DistributionProfile,
    compute_profile,
    is_repairable,
)
from .errors import (
    CorruptShareError,
    InsufficientSharesError,
    NotRepairableError,
    ParameterError,
    ProfileError,
)
from .field import PrimeField
from .ramp import RampParams, Secret, Share, deal, reconstruct
from .transcript import REPAIR, Message, Transcript

STRATEGIES = ("lowest-index", "spread")


@dataclass(frozen=True)
class ExpandedScheme:
    """A dealt expanded scheme; player i holds the subshares of block i.

    player_shares[i] is a tuple of base-scheme shares in block point order;
    point p corresponds to base evaluation point x = p + 1.
    """

    design: Design
    k: int
    profile: DistributionProfile
    base: RampParams
    player_shares: tuple

    @property
    def field(self) -> PrimeField:
        return self.base.field

    @property
    def n(self) -> int:
        return self.design.n

    def point_share(self, player: int, point: int) -> Share:
        for share in self.player_shares[player]:
            if share.x.value == point + 1:
                return share
        raise ParameterError(f"player {player} holds no subshare for point {point}")


@dataclass(frozen=True)
class RepairPlan:
    """Who resends which point to the player being repaired."""

    target: int
    assignments: tuple  # ((point, donor), ...) in point order

    @property
    def distinct_donors(self) -> int:
        return len({donor for _, donor in self.assignments})


def setup(
    design: Design,
    k: int,
    field: PrimeField,
    secret: Secret,
    rng,
    guard: int = 10**6,
) -> ExpandedScheme:
    """Deal the base ramp scheme and distribute subshares by block."""
    if not is_repairable(design):
        raise NotRepairableError(
            "design has a point in fewer than two blocks; it cannot repair"
        )
    profile = compute_profile(design, k, guard=guard)
    if not profile.usable:
        raise ProfileError(
            f"profile unusable: ell1={profile.ell1} >= ell2={profile.ell2}"
        )
    if field.modulus < design.m + 1:
        raise ParameterError(
            f"field modulus {field.modulus} too small for {design.m} points"
        )
    base = RampParams(k1=profile.ell1, k2=profile.ell2, n=design.m, field=field)
    subshares, _poly = deal(base, secret, rng)
    player_shares = tuple(
        tuple(subshares[p] for p in block) for block in design.blocks
    )
    return ExpandedScheme(
        design=design, k=k, profile=profile, base=base, player_shares=player_shares
    )


def plan_repair(
    scheme: ExpandedScheme, target: int, strategy: str = "lowest-index"
) -> RepairPlan:
    """Choose a donor block for every point of the target's block.

    "lowest-index" always picks the smallest donor index (deterministic);
    "spread" greedily prefers donors not yet used, to involve as many
    distinct players as possible.
    """
    if strategy not in STRATEGIES:
        raise ParameterError(f"unknown strategy {strategy!r}; use one of {STRATEGIES}")
    if not 0 <= target < scheme.n:
        raise ParameterError(f"target {target} out of range")
    block = scheme.design.blocks[target]
    candidates = {
        point: [
            i
            for i, other in enumerate(scheme.design.blocks)
            if i != target and point in other
        ]
        for point in block
    }
    assignments = {}
    if strategy == "lowest-index":
        for point in block:
            assignments[point] = candidates[point][0]
    else:
        used = set()
        # scarcest points first, so plentiful points don't squat on donors
        for point in sorted(block, key=lambda p: (len(candidates[p]), p)):
            fresh = [i for i in candidates[point] if i not in used]
            chosen = fresh[0] if fresh else candidates[point][0]
            assignments[point] = chosen
            used.add(chosen)
    return RepairPlan(
        target=target,
        assignments=tuple((point, assignments[point]) for point in block),
    )


def _validate_plan(scheme: ExpandedScheme, plan: RepairPlan) -> None:
    block = scheme.design.blocks[plan.target]
    points = [point for point, _ in plan.assignments]
    if sorted(points) != list(block):
        raise ParameterError("plan must cover each point of the target block once")
    for point, donor in plan.assignments:
        if donor == plan.target:
            raise ParameterError("target cannot donate to itself")
        if not 0 <= donor < scheme.n:
            raise ParameterError(f"donor {donor} out of range")
        if point not in scheme.design.blocks[donor]:
            raise ParameterError(f"donor {donor} does not hold point {point}")


def execute_repair(scheme: ExpandedScheme, plan: RepairPlan, rng=None) -> tuple:
    """Send the planned subshares; returns (restored shares, transcript).

    The protocol needs no randomness (rng is accepted for interface symmetry
    and ignored).  Each donor sends one message carrying all its assigned
    subshares, so the transcript totals exactly d field elements.
    """
    _validate_plan(scheme, plan)
    by_donor: dict = {}
    for point, donor in plan.assignments:
        by_donor.setdefault(donor, []).append(point)
    messages = []
    received = {}
    for donor in sorted(by_donor):
        payload = tuple(
            scheme.point_share(donor, point).y for point in by_donor[donor]
        )
        for point, value in zip(by_donor[donor], payload):
            received[point] = value
        messages.append(Message(REPAIR, donor, plan.target, payload))
    block = scheme.design.blocks[plan.target]
    restored = tuple(
        Share(scheme.field.element(point + 1), received[point]) for point in block
    )
    return restored, Transcript(tuple(messages))


def check_repair_transcript(
    scheme: ExpandedScheme, plan: RepairPlan, transcript: Transcript
) -> bool:
    """Structural secrecy check of one repair run.

    Every message must go to the repaired player, carry only subshares the
    sender already holds, and touch only points of the target's block -- so
    no coalition that excludes the target learns anything it did not hold.
    """
    expected = {}
    for point, donor in plan.assignments:
        expected.setdefault(donor, []).append(point)
    block = set(scheme.design.blocks[plan.target])
    seen_donors = []
    for msg in transcript.messages:
        if msg.phase != REPAIR or msg.receiver != plan.target:
            return False
        points = expected.get(msg.sender)
        if points is None:
            return False
        seen_donors.append(msg.sender)
        if len(msg.payload) != len(points):
            return False
        for point, value in zip(points, msg.payload):
            if point not in block:
                return False
            if scheme.point_share(msg.sender, point).y != value:
                return False
    return sorted(seen_donors) == sorted(expected)


def reconstruct_secret(scheme: ExpandedScheme, players: Sequence[int]) -> Secret:
    """Pool the players' subshares and run the base reconstruction."""
    ids = sorted(set(players))
    if len(ids) < scheme.k:
        raise InsufficientSharesError(
            f"need at least {scheme.k} players, got {len(ids)}"
        )
    pooled = {}
    for pid in ids:
        if not 0 <= pid < scheme.n:
            raise ParameterError(f"player {pid} out of range")
        for share in scheme.player_shares[pid]:
            old = pooled.get(share.x.value)
            if old is None:
                pooled[share.x.value] = share
            elif old.y != share.y:
                raise CorruptShareError(
                    f"conflicting subshares for point {share.x.value - 1}"
                )
    shares = [pooled[x] for x in sorted(pooled)]
    return reconstruct(scheme.base, shares)


def design_metrics(design: Design, k: int, guard: int = 10**6) -> dict:
    """Exact rate and repair-communication figures for a design at threshold k."""
    d = design.block_size()
    if d is None:
        raise ParameterError("metrics need a uniform design")
    profile = compute_profile(design, k, guard=guard)
    if not profile.usable:
        raise ProfileError(
            f"profile unusable: ell1={profile.ell1} >= ell2={profile.ell2}"
        )
    payload = profile.ell2 - profile.ell1
    return {
        "rho": Fraction(payload, d),
        "cc": Fraction(d, payload),
        "d": d,
        "k": k,
        "n": design.n,
        "ell1": profile.ell1,
        "ell2": profile.ell2,
    }


def scheme_metrics(scheme: ExpandedScheme) -> dict:
    d = scheme.design.block_size()
    if d is None:
        raise ParameterError("metrics need a uniform design")
    payload = scheme.profile.ell2 - scheme.profile.ell1
    return {
        "rho": Fraction(payload, d),
        "cc": Fraction(d, payload),
        "d": d,
        "k": scheme.k,
        "n": scheme.n,
        "ell1": scheme.profile.ell1,
        "ell2": scheme.profile.ell2,
    }
