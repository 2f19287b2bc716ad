from itertools import combinations

import pytest

from rtss import (
    EXCHANGE,
    REPAIR,
    Message,
    ParameterError,
    PrimeField,
    RampParams,
    ScriptedSource,
    SeededRng,
    Share,
    Transcript,
    column_sums,
    deal,
    lagrange_coeffs,
    repair_share,
    split_row,
)
from rtss.enrollment import ExchangeMatrix


def test_split_row_forced_single(f7):
    assert split_row(f7(0), 1, SeededRng(0)) == (f7(0),)
    assert split_row(f7(4), 1, SeededRng(0)) == (f7(4),)
    with pytest.raises(ParameterError):
        split_row(f7(4), 0, SeededRng(0))


def test_split_row_sums(f7):
    for value in f7.elements():
        for d in range(1, 5):
            for seed in range(50):
                parts = split_row(value, d, SeededRng(seed))
                assert len(parts) == d
                assert sum(parts, f7.zero) == value


def test_split_row_first_coordinate_uniform(f5):
    # enumerate the randomness directly: each forced first value shows up once
    seen = []
    for forced in range(5):
        parts = split_row(f5(3), 2, ScriptedSource([forced]))
        assert parts[0].value == forced
        assert (parts[0] + parts[1]).value == 3
        seen.append(parts[0].value)
    assert sorted(seen) == list(range(5))


def test_column_sums_examples(f7):
    ids = (1, 2, 3)
    zero_rows = tuple((f7(0),) * 3 for _ in range(3))
    assert [v.value for v in column_sums(ExchangeMatrix(zero_rows, ids))] == [0, 0, 0]
    diag = tuple(
        tuple(f7(v) if i == j else f7(0) for j in range(3)) for i, v in enumerate((1, 2, 3))
    )
    assert [v.value for v in column_sums(ExchangeMatrix(diag, ids))] == [1, 2, 3]


def _run(params, shares, helper_ids, target, seed):
    helpers = [shares[i - 1] for i in helper_ids]
    return repair_share(params, helpers, params.field.element(target), SeededRng(seed))


def test_repair_share_exact_k2_n4(f11):
    params = RampParams.threshold(2, 4, f11)
    secret = (f11(6),)
    shares, _ = deal(params, secret, SeededRng(12))
    for target in range(1, 5):
        others = [i for i in range(1, 5) if i != target]
        for helper_ids in combinations(others, 2):
            for seed in range(100):
                repaired, transcript, _ = _run(params, shares, helper_ids, target, seed)
                assert repaired == shares[target - 1]
                assert transcript.field_element_count == 4


def test_repair_share_message_counts(f11):
    for k in (2, 3):
        params = RampParams.threshold(k, k + 1, f11)
        shares, _ = deal(params, (f11(5),), SeededRng(0))
        repaired, transcript, _ = _run(
            params, shares, tuple(range(1, k + 1)), k + 1, 7
        )
        assert len(transcript.in_phase(EXCHANGE)) == k * (k - 1)
        assert len(transcript.in_phase(REPAIR)) == k
        assert transcript.field_element_count == k * k
        assert repaired == shares[k]


def test_matrix_identities_across_grid(f11):
    for k in range(2, 6):
        for n in range(k + 1, 7):
            params = RampParams.threshold(k, n, f11)
            shares, _ = deal(params, (f11(3),), SeededRng(n))
            helper_ids = tuple(range(1, k + 1))
            target = n
            for seed in range(5):
                repaired, transcript, matrix = _run(params, shares, helper_ids, target, seed)
                weights = lagrange_coeffs(
                    [shares[i - 1].x for i in helper_ids], params.field.element(target)
                )
                row_sums = matrix.row_sums()
                for w, i, row_sum in zip(weights, helper_ids, row_sums):
                    assert row_sum == w * shares[i - 1].y
                sigmas = column_sums(matrix)
                repair_msgs = transcript.in_phase(REPAIR)
                assert tuple(m.payload[0] for m in repair_msgs) == sigmas
                assert matrix.grand_total() == repaired.y == shares[target - 1].y
                assert sum(sigmas, params.field.zero) == repaired.y


def test_exchange_messages_match_matrix(f11):
    params = RampParams.threshold(3, 5, f11)
    shares, _ = deal(params, (f11(2),), SeededRng(3))
    _, transcript, matrix = _run(params, shares, (1, 2, 3), 5, 11)
    by_pair = {
        (m.sender, m.receiver): m.payload[0] for m in transcript.in_phase(EXCHANGE)
    }
    ids = matrix.helper_ids
    for i in range(3):
        for j in range(3):
            if i == j:
                assert (ids[i], ids[j]) not in by_pair  # self-delivery stays local
            else:
                assert by_pair[(ids[i], ids[j])] == matrix.entries[i][j]


def test_ramp_repair_reconstructs_share(f11):
    params = RampParams(k1=1, k2=3, n=5, field=f11)
    shares, _ = deal(params, (f11(4), f11(9)), SeededRng(21))
    repaired, transcript, _ = _run(params, shares, (1, 2, 3), 4, 5)
    assert repaired == shares[3]
    assert transcript.field_element_count == 9


def test_helpers_sorted_for_canonical_transcripts(f11):
    params = RampParams.threshold(2, 4, f11)
    shares, _ = deal(params, (f11(1),), SeededRng(2))
    a = repair_share(params, [shares[0], shares[2]], f11(4), SeededRng(9))
    b = repair_share(params, [shares[2], shares[0]], f11(4), SeededRng(9))
    assert a == b


def test_repair_share_validation(f11):
    params = RampParams.threshold(2, 4, f11)
    shares, _ = deal(params, (f11(1),), SeededRng(2))
    with pytest.raises(ParameterError):
        repair_share(params, shares[:1], f11(4), SeededRng(0))
    with pytest.raises(ParameterError):
        repair_share(params, [shares[0], shares[0]], f11(4), SeededRng(0))
    with pytest.raises(ParameterError):
        repair_share(params, shares[:2], f11(2), SeededRng(0))
    with pytest.raises(ParameterError):
        repair_share(params, shares[:2], f11(0), SeededRng(0))


def test_transcript_rejects_duplicate_messages(f7):
    msg = Message(EXCHANGE, 1, 2, (f7(3),))
    with pytest.raises(ParameterError):
        Transcript((msg, Message(EXCHANGE, 1, 2, (f7(4),))))


def test_transcript_serialization_roundtrip(f11):
    params = RampParams.threshold(2, 4, f11)
    shares, _ = deal(params, (f11(8),), SeededRng(4))
    _, transcript, _ = _run(params, shares, (1, 2), 3, 6)
    obj = transcript.to_obj()
    assert obj[0].keys() == {"phase", "from", "to", "payload"}
    assert Transcript.from_obj(obj, f11) == transcript
