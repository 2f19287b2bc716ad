"""Brute-force secrecy auditing and communication accounting.

The auditors do not sample: they enumerate every dealer polynomial and every
admissible protocol randomness, replay the run, collect exactly what a given
coalition would see, and count how often each observable view co-occurs with
each possible secret.  A scheme keeps its secret exactly when every realized
view is compatible with every secret equally often -- an integer statement,
checked with integer counts.

Protocol randomness is enumerated directly over the free split values (the
first d-1 entries of each row, matching split_row), not over PRNG seeds:
seeds cannot cover the sample space, and direct enumeration makes the
uniformity verdict exact rather than statistical.  The inner loop mirrors
the exchange arithmetic on plain integers for speed; the test suite checks
this mirror against repair_share exhaustively on small fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .designs import Design, compute_profile
from .errors import ParameterError, ProfileError, TooLargeError
from .field import PrimeField, is_prime
from .ramp import lagrange_coeffs, _eval_int
from .transcript import Transcript

DEFAULT_GUARD = 10**8

CASE_HELPERS_ONLY = "i"    # coalition drawn from the helpers
CASE_WITH_REPAIRED = "ii"  # coalition contains the repaired player


@dataclass
class SecrecyReport:
    """Outcome of one exhaustive audit.

    verdict is "uniform" when every realized coalition view is compatible
    with every secret the same number of times, else "leaky".
    consistent_min/max count, per view, how many secrets have nonzero count;
    count_min/max are the extreme nonzero per-(view, secret) counts.
    """

    protocol: str
    coalition: tuple
    params: dict
    secret_space: int
    total_runs: int
    view_count: int
    verdict: str
    consistent_min: int
    consistent_max: int
    count_min: int
    count_max: int
    counterexample: Optional[dict] = dataclass_field(default=None)

    @property
    def uniform(self) -> bool:
        return self.verdict == "uniform"

    def to_obj(self) -> dict:
        obj = {
            "protocol": self.protocol,
            "coalition": list(self.coalition),
            "params": self.params,
            "secret_space": self.secret_space,
            "total_runs": self.total_runs,
            "view_count": self.view_count,
            "verdict": self.verdict,
            "consistent_secrets_min": self.consistent_min,
            "consistent_secrets_max": self.consistent_max,
            "count_min": self.count_min,
            "count_max": self.count_max,
        }
        if self.counterexample is not None:
            obj["counterexample"] = self.counterexample
        return obj


def _summarize(
    protocol: str,
    coalition: Sequence[int],
    params: dict,
    secret_space: int,
    expected_total: int,
    counts: dict,
    describe_view,
) -> SecrecyReport:
    total = 0
    uniform = True
    consistent_min = secret_space
    consistent_max = 0
    count_min = None
    count_max = 0
    bad_key = None
    for key, vec in counts.items():
        total += sum(vec)
        nonzero = [c for c in vec if c]
        consistent_min = min(consistent_min, len(nonzero))
        consistent_max = max(consistent_max, len(nonzero))
        count_min = min(nonzero) if count_min is None else min(count_min, *nonzero)
        count_max = max(count_max, *nonzero)
        if min(vec) != max(vec):
            uniform = False
            if bad_key is None:
                bad_key = key
    assert total == expected_total, "enumeration lost or double-counted runs"
    counterexample = None
    if bad_key is not None:
        counterexample = {
            "view": describe_view(bad_key),
            "counts_per_secret": list(counts[bad_key]),
        }
    return SecrecyReport(
        protocol=protocol,
        coalition=tuple(coalition),
        params=params,
        secret_space=secret_space,
        total_runs=expected_total,
        view_count=len(counts),
        verdict="uniform" if uniform else "leaky",
        consistent_min=consistent_min,
        consistent_max=consistent_max,
        count_min=count_min or 0,
        count_max=count_max,
        counterexample=counterexample,
    )


@dataclass
class _EnrollmentSetup:
    """Fixed data of one enrollment audit: who repairs, who watches."""

    q: int
    n: int
    k1: int
    k2: int
    case: str
    coalition: tuple
    weights: tuple      # integer Lagrange weights, helper order 1..k2
    vis_share: tuple    # helper indices whose base share the coalition holds
    vis_delta: tuple    # (sender idx, receiver idx) split values it sees
    vis_sigma: tuple    # column indices whose forwarded sum it sees
    include_repaired: bool

    @property
    def lam(self) -> int:
        return self.k2 - self.k1


def _enrollment_setup(
    q: int,
    n: int,
    k1: int,
    k2: int,
    case: str,
    coalition: Optional[Sequence[int]],
) -> _EnrollmentSetup:
    if not is_prime(q):
        raise ParameterError(f"modulus {q} is not prime")
    if not 0 <= k1 < k2 <= n:
        raise ParameterError(f"need 0 <= k1 < k2 <= n, got {k1}, {k2}, {n}")
    if n < k2 + 1:
        raise ParameterError("no room for a repaired player: need n >= k2 + 1")
    if q < n + 1:
        raise ParameterError(f"modulus {q} too small for n={n}")
    if case not in (CASE_HELPERS_ONLY, CASE_WITH_REPAIRED):
        raise ParameterError(f'case must be "i" or "ii", got {case!r}')
    target = n
    helper_ids = tuple(range(1, k2 + 1))
    if coalition is None:
        if case == CASE_HELPERS_ONLY:
            coalition = helper_ids[:k1]
        else:
            coalition = (target,) + helper_ids[: max(k1 - 1, 0)]
    coal = tuple(sorted(set(int(c) for c in coalition)))
    for pid in coal:
        if pid != target and pid not in helper_ids:
            raise ParameterError(
                f"coalition member {pid} is neither a helper (1..{k2}) nor the target {target}"
            )
    fld = PrimeField(q)
    weights = tuple(
        w.value
        for w in lagrange_coeffs(
            [fld.element(i) for i in helper_ids], fld.element(target)
        )
    )
    in_coal = set(coal)
    vis_share = tuple(i for i in range(k2) if helper_ids[i] in in_coal)
    vis_delta = tuple(
        (i, j)
        for i in range(k2)
        for j in range(k2)
        if helper_ids[i] in in_coal or helper_ids[j] in in_coal
    )
    include_repaired = target in in_coal
    vis_sigma = tuple(
        j for j in range(k2) if helper_ids[j] in in_coal or include_repaired
    )
    return _EnrollmentSetup(
        q=q,
        n=n,
        k1=k1,
        k2=k2,
        case=case,
        coalition=coal,
        weights=weights,
        vis_share=vis_share,
        vis_delta=vis_delta,
        vis_sigma=vis_sigma,
        include_repaired=include_repaired,
    )


def _view_key(setup: _EnrollmentSetup, ys, rows, sigmas, repaired) -> int:
    """Pack the coalition-visible values of one run into one integer.

    The packed components, in order: coalition members' own shares, every
    split value they sent or received (the diagonal counts as held by its
    owner), every forwarded column sum they sent or -- via the repaired
    player -- received, and the rebuilt share itself.  Message order and
    timing are deliberately absent: a view is payload values only.
    """
    q = setup.q
    acc = 0
    for i in setup.vis_share:
        acc = acc * q + ys[i]
    for i, j in setup.vis_delta:
        acc = acc * q + rows[i][j]
    for j in setup.vis_sigma:
        acc = acc * q + sigmas[j]
    if setup.include_repaired:
        acc = acc * q + repaired
    return acc


def _describe_view(setup: _EnrollmentSetup, key: int) -> dict:
    parts = len(setup.vis_share) + len(setup.vis_delta) + len(setup.vis_sigma)
    parts += 1 if setup.include_repaired else 0
    values = []
    for _ in range(parts):
        key, v = divmod(key, setup.q)
        values.append(v)
    values.reverse()
    it = iter(values)
    out: dict = {}
    out["shares"] = {str(i + 1): next(it) for i in setup.vis_share}
    out["splits"] = {f"{i + 1}->{j + 1}": next(it) for i, j in setup.vis_delta}
    out["column_sums"] = {str(j + 1): next(it) for j in setup.vis_sigma}
    if setup.include_repaired:
        out["repaired"] = next(it)
    return out


def _count_enrollment_views(setup: _EnrollmentSetup) -> dict:
    """The exhaustive loop: dict packed-view -> per-secret run counts."""
    q, k1, k2, lam = setup.q, setup.k1, setup.k2, setup.lam
    free_width = k2 - 1
    weights = setup.weights
    helper_xs = tuple(range(1, k2 + 1))
    secret_space = q**lam
    counts: dict = {}
    krange = range(k2)
    for secret_idx, secret in enumerate(product(range(q), repeat=lam)):
        for dealer in product(range(q), repeat=k1):
            coeffs = secret + dealer
            ys = [_eval_int(coeffs, x, q) for x in helper_xs]
            row_totals = [(w * y) % q for w, y in zip(weights, ys)]
            repaired = sum(row_totals) % q
            for free in product(range(q), repeat=k2 * free_width):
                rows = []
                for i in krange:
                    seg = free[i * free_width:(i + 1) * free_width]
                    rows.append(seg + ((row_totals[i] - sum(seg)) % q,))
                sigmas = [0] * k2
                for row in rows:
                    for j in krange:
                        sigmas[j] += row[j]
                for j in krange:
                    sigmas[j] %= q
                key = _view_key(setup, ys, rows, sigmas, repaired)
                vec = counts.get(key)
                if vec is None:
                    vec = counts[key] = [0] * secret_space
                vec[secret_idx] += 1
    return counts


def audit_enrollment_secrecy(
    q: int,
    n: int,
    *,
    k: Optional[int] = None,
    k1: Optional[int] = None,
    k2: Optional[int] = None,
    case: str = CASE_HELPERS_ONLY,
    coalition: Optional[Sequence[int]] = None,
    guard: int = DEFAULT_GUARD,
) -> SecrecyReport:
    """Exhaustively audit the enrollment repair of a (k1, k2, n) scheme.

    Pass either a threshold k (meaning k1 = k - 1, k2 = k) or both ramp
    thresholds.  Helpers are players 1..k2 and the repaired player is n.
    Case "i" watches k1 helpers; case "ii" watches the repaired player plus
    k1 - 1 helpers; an explicit coalition overrides either shape.
    """
    if k is not None:
        if k1 is not None or k2 is not None:
            raise ParameterError("pass either k or (k1, k2), not both")
        k1, k2 = k - 1, k
    if k1 is None or k2 is None:
        raise ParameterError("pass either k or both k1 and k2")
    setup = _enrollment_setup(q, n, k1, k2, case, coalition)
    lam = setup.lam
    total = q**lam * q**k1 * q ** (k2 * (k2 - 1))
    if total > guard:
        raise TooLargeError(
            f"enumeration of {total} runs exceeds the guard of {guard}; "
            f"try a smaller modulus or raise the guard"
        )
    counts = _count_enrollment_views(setup)
    return _summarize(
        protocol="enrollment",
        coalition=setup.coalition,
        params={"q": q, "n": n, "k1": k1, "k2": k2, "case": case},
        secret_space=q**lam,
        expected_total=total,
        counts=counts,
        describe_view=lambda key: _describe_view(setup, key),
    )


def audit_rts_secrecy(
    design: Design,
    k: int,
    q: int,
    coalition: Sequence[int],
    guard: int = DEFAULT_GUARD,
) -> SecrecyReport:
    """Exhaustively audit an expanded scheme against one coalition.

    The coalition's view is the subshares on the union of its blocks; a
    repair adds nothing to players other than the target (the structural
    check lives in check_repair_transcript), so enumerating the dealer
    randomness of the base ramp scheme covers everything the coalition
    can ever hold.
    """
    if not is_prime(q):
        raise ParameterError(f"modulus {q} is not prime")
    if q < design.m + 1:
        raise ParameterError(f"modulus {q} too small for {design.m} points")
    profile = compute_profile(design, k)
    if not profile.usable:
        raise ProfileError(
            f"profile unusable: ell1={profile.ell1} >= ell2={profile.ell2}"
        )
    coal = tuple(sorted(set(int(c) for c in coalition)))
    for pid in coal:
        if not 0 <= pid < design.n:
            raise ParameterError(f"coalition member {pid} out of range")
    points = sorted({p for pid in coal for p in design.blocks[pid]})
    xs = [p + 1 for p in points]
    ell1, ell2 = profile.ell1, profile.ell2
    lam = ell2 - ell1
    total = q**ell2
    if total > guard:
        raise TooLargeError(
            f"enumeration of {total} dealings exceeds the guard of {guard}; "
            f"try a smaller modulus or raise the guard"
        )
    secret_space = q**lam
    counts: dict = {}
    for secret_idx, secret in enumerate(product(range(q), repeat=lam)):
        # per point: value = secret part + x^lam * (random part at x)
        secret_part = [_eval_int(secret, x, q) for x in xs]
        shift = [pow(x, lam, q) for x in xs]
        for dealer in product(range(q), repeat=ell1):
            acc = 0
            for base, mul, x in zip(secret_part, shift, xs):
                acc = acc * q + (base + mul * _eval_int(dealer, x, q)) % q
            vec = counts.get(acc)
            if vec is None:
                vec = counts[acc] = [0] * secret_space
            vec[secret_idx] += 1
    def describe(key: int) -> dict:
        values = []
        for _ in points:
            key, v = divmod(key, q)
            values.append(v)
        values.reverse()
        return {"subshares": {str(p): v for p, v in zip(points, values)}}
    return _summarize(
        protocol="rts",
        coalition=coal,
        params={
            "q": q,
            "k": k,
            "m": design.m,
            "n": design.n,
            "ell1": ell1,
            "ell2": ell2,
            "coalition_points": points,
        },
        secret_space=secret_space,
        expected_total=total,
        counts=counts,
        describe_view=describe,
    )


def count_communication(transcript: Transcript, secret_len: int) -> dict:
    """Messages, transmitted field elements, and their ratio to the secret size."""
    if secret_len < 1:
        raise ParameterError(f"secret length must be positive, got {secret_len}")
    elements = transcript.field_element_count
    return {
        "messages": transcript.message_count,
        "field_elements": elements,
        "cc": Fraction(elements, secret_len),
    }


def glf_bound(k: int, d: int, alpha: int, beta: int) -> Fraction:
    """Upper bound on the information rate of repair-bandwidth-optimal
    schemes with share size alpha and beta elements sent per helper.

    rho <= k(2d - k + 1) / (2dt) with t = sum_{i<k} min(alpha, (d - i) beta).
    """
    if not 1 <= k <= d:
        raise ParameterError(f"need 1 <= k <= d, got k={k} d={d}")
    if alpha < 1 or beta < 1:
        raise ParameterError(f"need alpha, beta >= 1, got {alpha}, {beta}")
    t = sum(min(alpha, (d - i) * beta) for i in range(k))
    return Fraction(k * (2 * d - k + 1), 2 * d * t)


def glf_bound_closed_form(k: int, d: int) -> Fraction:
    """The alpha = d, beta = 1 specialization in closed form:
    rho <= (2d - k + 1) / (2d (d - (k-1)/2))."""
    if not 1 <= k <= d:
        raise ParameterError(f"need 1 <= k <= d, got k={k} d={d}")
    return Fraction(2 * d - k + 1, 1) / (2 * d * (Fraction(d) - Fraction(k - 1, 2)))


def comparison_rows(entries, guard: int = 10**6) -> list:
    """One table row per (label, design, k): our exact rate and repair cost
    next to the bound for bandwidth-optimal schemes with the same k and d."""
    from .expanded import design_metrics

    rows = []
    for label, design, k in entries:
        metrics = design_metrics(design, k, guard=guard)
        d = metrics["d"]
        rows.append(
            {
                "scheme": label,
                "k": k,
                "d": d,
                "n": metrics["n"],
                "rho_ours": metrics["rho"],
                "rho_glf_bound": glf_bound(k, d, d, 1),
                "cc_ours": metrics["cc"],
            }
        )
    return rows


def comparison_corpus() -> list:
    """The designs the comparison table reports on by default."""
    from .designs import builtin_design

    entries = []
    for name, ks in (
        ("sts9", (2,)),
        ("pg2:2", (2,)),
        ("pg2:3", (2, 3)),
        ("pg2:5", (2, 3, 4)),
        ("dualk:4", (2, 3)),
        ("dualk:5", (2, 3)),
        ("complement:fano", (2,)),
    ):
        design = builtin_design(name)
        for k in ks:
            entries.append((name, design, k))
    return entries
