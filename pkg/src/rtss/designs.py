"""Block designs used to distribute subshares among players.

A design is a point set {0..m-1} plus a list of blocks; each block becomes
one player's holding.  This module builds the classical families we need
(Steiner triple systems, the resolvable 9-point system, projective planes,
duals of complete graphs, complements), loads and saves designs as plain
text files, and verifies the combinatorial properties that the expanded
schemes rely on -- always by exhaustive scanning, never by trusting a
formula, so the known closed forms become checks of the code instead of
assumptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

from .errors import DesignParseError, ParameterError, TooLargeError
from .field import is_prime

PROFILE_GUARD = 10**6


@dataclass(frozen=True)
class Design:
    """m points (0-based) and a list of blocks (sorted point tuples)."""

    m: int
    blocks: tuple

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError(f"need at least one point, got m={self.m}")
        normalized = []
        for b, block in enumerate(self.blocks):
            points = tuple(sorted(block))
            if not points:
                raise ParameterError(f"block {b} is empty")
            if len(set(points)) != len(points):
                raise ParameterError(f"block {b} repeats a point")
            if points[0] < 0 or points[-1] >= self.m:
                raise ParameterError(f"block {b} has a point outside 0..{self.m - 1}")
            normalized.append(points)
        object.__setattr__(self, "blocks", tuple(normalized))

    @property
    def n(self) -> int:
        return len(self.blocks)

    def block_size(self) -> Optional[int]:
        """The common block size, or None if blocks vary."""
        sizes = {len(b) for b in self.blocks}
        return sizes.pop() if len(sizes) == 1 else None

    def replication(self) -> list:
        """How many blocks each point lies in."""
        counts = [0] * self.m
        for block in self.blocks:
            for p in block:
                counts[p] += 1
        return counts


@dataclass(frozen=True)
class DistributionProfile:
    """Union extremes of a design at threshold k: any k-1 blocks cover at
    most ell1 points, any k blocks cover at least ell2."""

    k: int
    ell1: int
    ell2: int

    @property
    def usable(self) -> bool:
        return self.ell1 < self.ell2


@dataclass(frozen=True)
class OneDesignParams:
    """A (v, b, r, d)-1-design: v points each in r blocks, b blocks of size d."""

    v: int
    b: int
    r: int
    d: int

    def __post_init__(self):
        if self.v * self.r != self.b * self.d:
            raise ParameterError(
                f"counting identity vr = bd fails: {self.v}*{self.r} != {self.b}*{self.d}"
            )


def _masks(design: Design) -> list:
    return [sum(1 << p for p in block) for block in design.blocks]


def compute_profile(design: Design, k: int, guard: int = PROFILE_GUARD) -> DistributionProfile:
    """Exhaustive union scan over all (k-1)- and k-subsets of blocks."""
    n = design.n
    if not 2 <= k <= n:
        raise ParameterError(f"need 2 <= k <= {n}, got k={k}")
    work = max(math.comb(n, k - 1), math.comb(n, k))
    if work > guard:
        raise TooLargeError(
            f"{work} block subsets exceed the guard of {guard}; pass a larger guard"
        )
    masks = _masks(design)
    ell1 = 0
    for combo in combinations(masks, k - 1):
        union = 0
        for mask in combo:
            union |= mask
        size = union.bit_count()
        if size > ell1:
            ell1 = size
    ell2 = design.m
    for combo in combinations(masks, k):
        union = 0
        for mask in combo:
            union |= mask
        size = union.bit_count()
        if size < ell2:
            ell2 = size
    return DistributionProfile(k=k, ell1=ell1, ell2=ell2)


def is_repairable(design: Design) -> bool:
    """True iff every point occurs in at least two blocks."""
    return min(design.replication()) >= 2


def find_basic_repairing_set(design: Design, seed: Sequence[int] = ()) -> Optional[list]:
    """A block subset covering every point at least twice, or None.

    Greedy: repeatedly add the block covering the most still-undercovered
    points (ties to the lowest index).  Not guaranteed minimum.  A seed of
    block indices is honored first, which lets known constructions (parallel
    classes, blocking sets) anchor the search.
    """
    coverage = [0] * design.m
    chosen: list = []
    for idx in dict.fromkeys(seed):
        if not 0 <= idx < design.n:
            raise ParameterError(f"seed block index {idx} out of range")
        chosen.append(idx)
        for p in design.blocks[idx]:
            coverage[p] += 1
    remaining = [i for i in range(design.n) if i not in set(chosen)]
    while any(c < 2 for c in coverage):
        best_idx = None
        best_gain = 0
        for i in remaining:
            gain = sum(1 for p in design.blocks[i] if coverage[p] < 2)
            if gain > best_gain:
                best_gain = gain
                best_idx = i
        if best_idx is None:
            return None  # some point cannot reach coverage 2
        chosen.append(best_idx)
        remaining.remove(best_idx)
        for p in design.blocks[best_idx]:
            coverage[p] += 1
    result = sorted(chosen)
    assert is_repairable(subdesign(design, result))
    return result


def subdesign(design: Design, block_indices: Sequence[int]) -> Design:
    """The design restricted to the given blocks (point set unchanged)."""
    indices = list(block_indices)
    if len(set(indices)) != len(indices):
        raise ParameterError("duplicate block indices")
    for i in indices:
        if not 0 <= i < design.n:
            raise ParameterError(f"block index {i} out of range")
    return Design(design.m, tuple(design.blocks[i] for i in indices))


def _check_pair_coverage(design: Design, expected: int = 1) -> None:
    counts = {}
    for block in design.blocks:
        for pair in combinations(block, 2):
            counts[pair] = counts.get(pair, 0) + 1
    all_pairs = math.comb(design.m, 2)
    assert len(counts) == all_pairs and set(counts.values()) == {expected}, (
        "pair coverage check failed"
    )


def sts_bose(m: int) -> Design:
    """A Steiner triple system on m points for m = 3 (mod 6), m >= 9.

    Points are (x, j) with x mod t and j mod 3, flattened to 3x + j; blocks
    are the t verticals {(x,0),(x,1),(x,2)} plus, for each x < y and each
    level j, the triple {(x,j), (y,j), ((x+y)/2, j+1)}.  Pair coverage is
    re-verified exhaustively after construction.
    """
    if m < 9 or m % 6 != 3:
        raise ParameterError(f"Bose construction needs m = 3 (mod 6), m >= 9, got {m}")
    t = m // 3
    half = (t + 1) // 2  # inverse of 2 mod odd t
    blocks = [(3 * x, 3 * x + 1, 3 * x + 2) for x in range(t)]
    for x in range(t):
        for y in range(x + 1, t):
            z = ((x + y) * half) % t
            for j in range(3):
                blocks.append(
                    tuple(sorted((3 * x + j, 3 * y + j, 3 * z + (j + 1) % 3)))
                )
    design = Design(m, tuple(blocks))
    assert design.n == m * (m - 1) // 6
    _check_pair_coverage(design)
    return design


def kirkman_sts9() -> tuple:
    """The classical resolvable 9-point triple system with its resolution.

    Returns (design, classes) where classes is four triples of block indices,
    each class partitioning the nine points.  The blocks are the lines of the
    3x3 grid: rows, columns, and the two diagonal directions.
    """
    blocks = (
        (0, 1, 2), (3, 4, 5), (6, 7, 8),   # rows
        (0, 3, 6), (1, 4, 7), (2, 5, 8),   # columns
        (0, 4, 8), (1, 5, 6), (2, 3, 7),   # diagonals
        (0, 5, 7), (1, 3, 8), (2, 4, 6),   # anti-diagonals
    )
    classes = ((0, 1, 2), (3, 4, 5), (6, 7, 8), (9, 10, 11))
    design = Design(9, blocks)
    _check_pair_coverage(design)
    for cls in classes:
        covered = sorted(p for b in cls for p in design.blocks[b])
        assert covered == list(range(9)), "parallel class is not a partition"
    return design, classes


def pg2(q: int) -> Design:
    """The projective plane of prime order q: points are the 1-dimensional
    subspaces of F_q^3, blocks the 2-dimensional ones.

    q^2 + q + 1 points and blocks, block size q + 1; any two blocks meet in
    exactly one point (re-verified exhaustively after construction).
    """
    if not is_prime(q):
        raise ParameterError(f"plane order must be prime here, got {q}")
    reps = (
        [(1, a, b) for a in range(q) for b in range(q)]
        + [(0, 1, a) for a in range(q)]
        + [(0, 0, 1)]
    )
    index = {rep: i for i, rep in enumerate(reps)}
    blocks = []
    for line in reps:
        block = tuple(
            sorted(
                index[p]
                for p in reps
                if (line[0] * p[0] + line[1] * p[1] + line[2] * p[2]) % q == 0
            )
        )
        blocks.append(block)
    design = Design(q * q + q + 1, tuple(blocks))
    assert design.n == design.m and design.block_size() == q + 1
    masks = _masks(design)
    for a, b in combinations(masks, 2):
        assert (a & b).bit_count() == 1, "two lines must meet in exactly one point"
    return design


def noncollinear_triple(design: Design) -> tuple:
    """Three points no block contains together (lowest indices first)."""
    blocks = [set(b) for b in design.blocks]
    for a in range(design.m):
        for b in range(a + 1, design.m):
            for c in range(b + 1, design.m):
                if not any({a, b, c} <= blk for blk in blocks):
                    return (a, b, c)
    raise ParameterError("every point triple is collinear")


def pg2_blocking_repairing_set(design: Design, points: Sequence[int]) -> list:
    """All blocks through at least one of three noncollinear points.

    For a projective plane of order q this is a basic repairing set of size
    3q; both the size and the coverage property are re-verified.
    """
    pts = tuple(points)
    if len(pts) != 3 or len(set(pts)) != 3:
        raise ParameterError("need three distinct points")
    for p in pts:
        if not 0 <= p < design.m:
            raise ParameterError(f"point {p} out of range")
    for block in design.blocks:
        if set(pts) <= set(block):
            raise ParameterError(f"points {pts} are collinear")
    chosen = [i for i, block in enumerate(design.blocks) if set(pts) & set(block)]
    d = design.block_size()
    assert d is not None
    q = d - 1
    assert len(chosen) == 3 * q
    assert is_repairable(subdesign(design, chosen))
    return chosen


def dual_complete_graph(n: int) -> Design:
    """The dual of the complete graph on n vertices: points are the
    n-choose-2 edges, and block x holds the edges incident to vertex x."""
    if n < 3:
        raise ParameterError(f"need n >= 3 vertices, got {n}")
    edges = list(combinations(range(n), 2))
    index = {e: i for i, e in enumerate(edges)}
    blocks = tuple(
        tuple(sorted(index[e] for e in edges if x in e)) for x in range(n)
    )
    return Design(len(edges), blocks)


def complement_design(design: Design) -> Design:
    """Replace every block by its complement in the point set."""
    if design.block_size() is None:
        raise ParameterError("complement needs a uniform design")
    everything = set(range(design.m))
    blocks = tuple(tuple(sorted(everything - set(b))) for b in design.blocks)
    return Design(design.m, blocks)


def as_1_design(design: Design) -> Optional[OneDesignParams]:
    """(v, b, r, d) parameters if replication and block size are constant."""
    d = design.block_size()
    if d is None:
        return None
    reps = set(design.replication())
    if len(reps) != 1:
        return None
    return OneDesignParams(v=design.m, b=design.n, r=reps.pop(), d=d)


def universal_repairability_1design(params: OneDesignParams) -> bool:
    """A (v, b, r, d)-1-design lets any d blocks repair any other block
    exactly when b < r + d."""
    return params.b < params.r + params.d


def universal_repairability_exhaustive(
    design: Design, d: int, guard: int = PROFILE_GUARD
) -> bool:
    """Ground truth by brute force: every block must be covered by the union
    of every d-subset of the remaining blocks."""
    if d < 1:
        raise ParameterError(f"repairing degree must be positive, got {d}")
    n = design.n
    work = design.n * math.comb(max(n - 1, 0), min(d, max(n - 1, 0)))
    if work > guard:
        raise TooLargeError(
            f"{work} subset checks exceed the guard of {guard}; pass a larger guard"
        )
    masks = _masks(design)
    for t, target in enumerate(masks):
        others = masks[:t] + masks[t + 1:]
        for combo in combinations(others, d):
            union = 0
            for mask in combo:
                union |= mask
            if target & ~union:
                return False
    return True


def contains_pasch(design: Design) -> bool:
    """Whether some four triples form a quadrilateral: six points, each in
    exactly two of the four blocks, any two blocks meeting in one point."""
    if design.block_size() != 3:
        raise ParameterError("quadrilateral scan needs blocks of size 3")
    masks = _masks(design)
    for quad in combinations(range(design.n), 4):
        union = 0
        for i in quad:
            union |= masks[i]
        if union.bit_count() != 6:
            continue
        if all(
            (masks[a] & masks[b]).bit_count() == 1 for a, b in combinations(quad, 2)
        ):
            return True
    return False


def load_design(text: str) -> Design:
    """Parse the plain-text design format.

    Line 1 (after comments) is "m n"; then n lines of space-separated
    0-based point indices, one block per line.  Lines starting with '#'
    and blank lines are ignored.  Errors carry 1-based line numbers.
    """
    data = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        data.append((lineno, line))
    if not data:
        raise DesignParseError("no data lines", line=1)
    head_no, head = data[0]
    fields = head.split()
    if len(fields) != 2:
        raise DesignParseError('header must be "m n"', line=head_no)
    try:
        m, n = int(fields[0]), int(fields[1])
    except ValueError:
        raise DesignParseError('header must be "m n" with integers', line=head_no) from None
    if m < 1 or n < 1:
        raise DesignParseError(f"need positive m and n, got m={m} n={n}", line=head_no)
    body = data[1:]
    if len(body) < n:
        raise DesignParseError(
            f"expected {n} block lines, found {len(body)}", line=data[-1][0]
        )
    if len(body) > n:
        raise DesignParseError(
            f"expected {n} block lines, found {len(body)}", line=body[n][0]
        )
    blocks = []
    for lineno, line in body:
        try:
            points = [int(tok) for tok in line.split()]
        except ValueError:
            raise DesignParseError("block line must be integers", line=lineno) from None
        if not points:
            raise DesignParseError("empty block", line=lineno)
        if len(set(points)) != len(points):
            raise DesignParseError("block repeats a point", line=lineno)
        for p in points:
            if not 0 <= p < m:
                raise DesignParseError(
                    f"point {p} out of range 0..{m - 1}", line=lineno
                )
        blocks.append(tuple(sorted(points)))
    return Design(m, tuple(blocks))


def save_design(design: Design) -> str:
    """Serialize in the format load_design reads; round-trips exactly."""
    lines = ["# block design: points are 0-based; header is 'm n', then one block per line"]
    lines.append(f"{design.m} {design.n}")
    for block in design.blocks:
        lines.append(" ".join(str(p) for p in block))
    return "\n".join(lines) + "\n"


_PASCH_DEMO = ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5))


def builtin_design(name: str) -> Design:
    """Named designs for the CLI and tests.

    Grammar: "sts9" (the resolvable 9-point system), "fano", "sts:M" (Bose),
    "pg2:Q", "dualk:N", "pasch" (one quadrilateral), and "complement:NAME".
    """
    if name == "sts9":
        return kirkman_sts9()[0]
    if name == "fano":
        return pg2(2)
    if name == "pasch":
        return Design(6, _PASCH_DEMO)
    if name.startswith("complement:"):
        return complement_design(builtin_design(name[len("complement:"):]))
    if ":" in name:
        kind, _, arg = name.partition(":")
        try:
            value = int(arg)
        except ValueError:
            raise ParameterError(f"bad design parameter {arg!r} in {name!r}") from None
        if kind == "sts":
            return sts_bose(value)
        if kind == "pg2":
            return pg2(value)
        if kind == "dualk":
            return dual_complete_graph(value)
    raise ParameterError(
        f"unknown builtin design {name!r}; try sts9, fano, pasch, sts:M, pg2:Q, "
        f"dualk:N, or complement:NAME"
    )
