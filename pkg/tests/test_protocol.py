from collections import Counter

import numpy as np
import pytest

from analysis.tables import BasisConfig, joint_distribution_closed_form
from devices.encoder import EncoderAction
from optics.fock import MixedBasisSymbol
from protocol.channel import ideal_transition_matrix
from protocol.session import (
    BasisChoice,
    RoundKind,
    RoundPlan,
    RoundRecord,
    SessionConfig,
    derive_seed,
    round_rng,
    run_round,
    run_rounds,
    run_session,
)
from protocol.sifting import control_check, is_bitflip, sift
from utils.error_handler import ContractViolationError, ValidationError

CHI1, CHI2, CHI3, CHI4 = MixedBasisSymbol
PLAIN, HADAMARD = BasisChoice.PLAIN, BasisChoice.HADAMARD


def _record(alice_symbol, bob_outcome, alice_basis=PLAIN, bob_basis=HADAMARD, round_id=0):
    return RoundRecord(
        round_id=round_id,
        bob_basis=bob_basis,
        alice_basis=alice_basis,
        alice_action=EncoderAction.for_symbol(alice_symbol),
        alice_symbol=alice_symbol,
        eve_active=False,
        eve_symbol=None,
        eve_resent=None,
        bob_outcome=bob_outcome,
    )


def _planned(config, n, plan, start=0):
    return run_rounds(config, range(start, start + n), [plan] * n)


def test_round_kind_follows_bases():
    assert _record(CHI1, CHI1, PLAIN, PLAIN).kind == RoundKind.SAME_BASIS
    assert _record(CHI1, CHI2, PLAIN, HADAMARD).kind == RoundKind.DIFFERENT_BASIS


def test_record_requires_consistent_eve_fields():
    with pytest.raises(ContractViolationError):
        RoundRecord(0, PLAIN, PLAIN, EncoderAction.IDENTITY, CHI1, True, None, None, CHI1)
    with pytest.raises(ContractViolationError):
        RoundRecord(0, PLAIN, PLAIN, EncoderAction.IDENTITY, CHI1, False, CHI1, CHI1, CHI1)


def test_record_dict_uses_stable_labels():
    record = RoundRecord(7, HADAMARD, PLAIN, EncoderAction.MEASURE_REPLACE, CHI3, True, CHI3, CHI4, CHI2)
    data = record.to_dict()
    assert data == {
        'round_id': 7,
        'bob_basis': 'hadamard',
        'alice_basis': 'plain',
        'alice_action': 'measure_replace',
        'alice_symbol': 'chi3',
        'eve_active': True,
        'eve_symbol': 'chi3',
        'eve_resent': 'chi4',
        'bob_outcome': 'chi2',
        'kind': 'different_basis',
    }
    assert RoundRecord.from_dict(data) == record


def test_record_from_dict_rejects_inconsistent_kind():
    data = _record(CHI1, CHI1, PLAIN, PLAIN).to_dict()
    data['kind'] = 'different_basis'
    with pytest.raises(ValidationError):
        RoundRecord.from_dict(data)


@pytest.mark.parametrize("kwargs", [
    dict(n_rounds=-1),
    dict(n_rounds=10, eve_presence=1.5),
    dict(n_rounds=10, symbol_priors=(0.5, 0.5, 0.5, 0.0)),
    dict(n_rounds=10, seed=-3),
])
def test_session_config_validation(kwargs):
    with pytest.raises(ValidationError):
        SessionConfig(**kwargs)


def test_session_config_action_weights():
    config = SessionConfig(n_rounds=1, symbol_priors=(0.1, 0.2, 0.3, 0.4))
    assert config.action_weights == pytest.approx((0.1, 0.2, 0.7))


def test_no_eve_same_plain_basis_chi2():
    config = SessionConfig(n_rounds=0, eve_presence=0.0, seed=1)
    plan = RoundPlan(bob_basis=PLAIN, alice_basis=PLAIN, action=EncoderAction.HWP0)
    for record in _planned(config, 200, plan):
        assert record.alice_symbol == record.bob_outcome == CHI2
        assert not record.eve_active


def test_no_eve_hadamard_bases_are_transparent():
    config = SessionConfig(n_rounds=0, eve_presence=0.0, seed=2, bob_basis=HADAMARD, alice_basis=HADAMARD)
    records = run_rounds(config, range(3000))
    assert {r.alice_symbol for r in records} == set(MixedBasisSymbol)
    assert all(r.bob_outcome == r.alice_symbol for r in records)


def test_attack_disabled_ignores_presence():
    config = SessionConfig(n_rounds=500, eve_presence=1.0, attack_enabled=False, seed=3)
    transcript = run_session(config)
    assert not any(r.eve_active for r in transcript)
    assert all(r.bob_outcome == r.alice_symbol for r in transcript if r.kind == RoundKind.SAME_BASIS)


def test_full_eve_splits_chi3_on_plain_bases():
    config = SessionConfig(n_rounds=0, eve_presence=1.0, seed=4)
    plan = RoundPlan(bob_basis=PLAIN, alice_basis=PLAIN, action=EncoderAction.MEASURE_REPLACE)
    outcomes = Counter(r.bob_outcome for r in _planned(config, 20000, plan) if r.alice_symbol == CHI3)
    n = sum(outcomes.values())
    assert set(outcomes) <= {CHI3, CHI4}
    assert outcomes[CHI3] / n == pytest.approx(0.5, abs=0.02)


def test_empty_session():
    assert run_session(SessionConfig(n_rounds=0, seed=1)) == []


def test_session_is_deterministic():
    config = SessionConfig(n_rounds=300, eve_presence=0.5, seed=99)
    first = [r.to_dict() for r in run_session(config)]
    second = [r.to_dict() for r in run_session(config)]
    other = [r.to_dict() for r in run_session(SessionConfig(n_rounds=300, eve_presence=0.5, seed=100))]
    assert first == second
    assert first != other
    assert [r['round_id'] for r in first] == list(range(300))


def test_round_streams_depend_only_on_seed_and_round():
    config = SessionConfig(n_rounds=50, eve_presence=0.5, seed=8)
    transcript = run_session(config)
    again = run_round(config, 37, round_rng(8, 37))
    assert again == transcript[37]


def test_derive_seed_is_stable_and_distinct():
    assert derive_seed(1, 0) == derive_seed(1, 0)
    assert derive_seed(1, 0) != derive_seed(1, 1)
    assert 0 <= derive_seed(1, 2) < 2 ** 64


def test_priors_pin_the_action():
    config = SessionConfig(n_rounds=200, symbol_priors=(1.0, 0.0, 0.0, 0.0), seed=6)
    assert {r.alice_action for r in run_session(config)} == {EncoderAction.IDENTITY}


def test_same_basis_fraction_without_eve():
    transcript = run_session(SessionConfig(n_rounds=20000, eve_presence=0.0, seed=12))
    same = sum(r.kind == RoundKind.SAME_BASIS for r in transcript)
    assert same / len(transcript) == pytest.approx(0.5, abs=0.015)


def test_ideal_channel_matrices():
    for basis in BasisChoice:
        assert np.allclose(ideal_transition_matrix(basis, basis), np.eye(4), atol=1e-12)
    for alice, bob in ((PLAIN, HADAMARD), (HADAMARD, PLAIN)):
        matrix = ideal_transition_matrix(alice, bob)
        assert np.allclose(matrix.sum(axis=1), 1.0, atol=1e-12)
        zeros = {(j + 1, m + 1) for j in range(4) for m in range(4) if matrix[j, m] < 1e-12}
        assert zeros == {(1, 1), (2, 2), (3, 4), (4, 3)}


def test_control_check_empty():
    report = control_check([])
    assert (report.eve_detected, report.bitflip_count) == (False, 0)


def test_chi3_to_chi4_flip_is_flagged():
    report = control_check([_record(CHI3, CHI4, round_id=5), _record(CHI3, CHI3, round_id=6)])
    assert report.eve_detected
    assert report.bitflip_count == 1
    assert report.flagged_round_ids == [5]
    assert report.per_symbol_stats[CHI3].records == 2
    assert report.per_symbol_stats[CHI3].flips == 1


def test_allowed_control_transitions_are_not_flagged():
    assert not is_bitflip(_record(CHI3, CHI1))
    assert not is_bitflip(_record(CHI1, CHI2))
    assert not is_bitflip(_record(CHI4, CHI2, alice_basis=HADAMARD, bob_basis=PLAIN))


def test_sift_partitions_transcript():
    transcript = run_session(SessionConfig(n_rounds=2000, eve_presence=0.3, seed=21))
    result = sift(transcript)
    assert len(result.key_symbols) + len(result.control_records) == len(transcript)
    assert all(r.kind == RoundKind.DIFFERENT_BASIS for r in result.control_records)


def test_sift_all_same_basis():
    config = SessionConfig(n_rounds=300, eve_presence=1.0, seed=22, bob_basis=PLAIN, alice_basis=PLAIN)
    result = sift(run_session(config))
    assert result.control_records == []
    assert not result.eve_detected
    assert len(result.key_symbols) == 300


def test_sift_without_eve_is_clean():
    result = sift(run_session(SessionConfig(n_rounds=20000, eve_presence=0.0, seed=23)))
    assert result.bitflip_count == 0
    assert not result.eve_detected
    assert result.key_error_rate == 0.0
    counts = Counter(result.key_symbols)
    n = len(result.key_symbols)
    for symbol in MixedBasisSymbol:
        assert counts[symbol] / n == pytest.approx(0.25, abs=0.025)


def test_key_error_rate_is_none_without_key():
    config = SessionConfig(n_rounds=20, seed=1, bob_basis=PLAIN, alice_basis=HADAMARD)
    assert sift(run_session(config)).key_error_rate is None


def test_flip_rate_on_product_states_with_full_eve():
    config = SessionConfig(n_rounds=0, eve_presence=1.0, seed=24)
    plan = RoundPlan(bob_basis=HADAMARD, alice_basis=PLAIN, action=EncoderAction.MEASURE_REPLACE)
    records = _planned(config, 8000, plan)
    report = control_check(records)
    assert report.bitflip_count / len(records) == pytest.approx(0.25, abs=0.02)


@pytest.mark.slow
@pytest.mark.parametrize("basis_config", list(BasisConfig))
@pytest.mark.parametrize("x", [0.0, 0.5, 1.0])
def test_same_basis_marginal_converges(x, basis_config, simulated_joint):
    empirical = simulated_joint(x, basis_config, 100000).distribution.bob_marginal()
    expected = joint_distribution_closed_form(x, basis_config).bob_marginal()
    assert 0.5 * np.abs(empirical - expected).sum() < 0.01
