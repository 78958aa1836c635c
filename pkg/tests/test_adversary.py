from collections import Counter

import numpy as np
import pytest

from adversary.eve import (
    EveState,
    eve_intercept_round,
    eve_presence_gate,
    eve_read,
    eve_reencode,
    reencode_distribution,
)
from analysis.oracle import exact_reading_distribution
from devices.discriminator import discrimination_probabilities
from devices.encoder import EncoderAction, encode, hadamard_on_travel
from optics.fock import MixedBasisSymbol, TwoPhotonState, mixed_basis_state
from optics.measurement import overlap_probability
from protocol.session import BasisChoice, RoundPlan, SessionConfig, round_rng, run_round
from utils.error_handler import ValidationError

CHI1, CHI2, CHI3, CHI4 = MixedBasisSymbol


def _intercept_until(predicate, action, alice_hadamard, seed=11, attempts=200):
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        result = eve_intercept_round(mixed_basis_state(CHI1), action, alice_hadamard, rng)
        if predicate(result):
            return result
    pytest.fail("没有抽到所需的截获分支")


def test_presence_gate_extremes(rng):
    assert not any(eve_presence_gate(0.0, rng) for _ in range(2000))
    assert all(eve_presence_gate(1.0, rng) for _ in range(2000))


def test_presence_gate_frequency(rng):
    n = 100000
    hits = sum(eve_presence_gate(0.5, rng) for _ in range(n))
    assert hits / n == pytest.approx(0.5, abs=0.0065)


@pytest.mark.parametrize("x", [-0.1, 1.5])
def test_presence_gate_rejects_bad_x(x, rng):
    with pytest.raises(ValidationError):
        eve_presence_gate(x, rng)


def test_eve_reads_plain_chi2(rng):
    encoded, _ = encode(EncoderAction.HWP0, mixed_basis_state(CHI1), rng)
    assert all(eve_read(encoded, rng) == CHI2 for _ in range(500))


def test_reading_distributions_under_alice_hadamard():
    assert np.allclose(exact_reading_distribution(CHI1), (0.0, 0.5, 0.25, 0.25), atol=1e-12)
    chi3 = exact_reading_distribution(CHI3)
    assert chi3[0] == pytest.approx(0.25, abs=1e-12)
    assert chi3[1] == pytest.approx(0.25, abs=1e-12)
    assert chi3[2] + chi3[3] == pytest.approx(0.5, abs=1e-12)


def test_sampled_reading_of_hadamard_chi1(rng):
    state = hadamard_on_travel(mixed_basis_state(CHI1))
    n = 40000
    counts = Counter(eve_read(state, rng) for _ in range(n))
    assert counts[CHI1] == 0
    for symbol, p in ((CHI2, 0.5), (CHI3, 0.25), (CHI4, 0.25)):
        assert counts[symbol] / n == pytest.approx(p, abs=0.012)


@pytest.mark.parametrize("read", [CHI1, CHI2])
def test_bell_readings_are_resent_faithfully(read, rng):
    for _ in range(100):
        state, resent = eve_reencode(mixed_basis_state(CHI1), read, rng)
        assert resent == read
        assert overlap_probability(state, mixed_basis_state(read)) == pytest.approx(1.0, abs=1e-12)


def test_product_readings_are_resent_half_the_time(rng):
    n = 20000
    counts = Counter(eve_reencode(mixed_basis_state(CHI1), CHI3, rng)[1] for _ in range(n))
    assert counts[CHI3] / n == pytest.approx(0.5, abs=0.015)
    assert counts[CHI4] / n == pytest.approx(0.5, abs=0.015)


def test_reencode_distribution():
    assert reencode_distribution(CHI1) == {CHI1: 1.0}
    assert reencode_distribution(CHI2) == {CHI2: 1.0}
    for read in (CHI3, CHI4):
        assert reencode_distribution(read) == pytest.approx({CHI3: 0.5, CHI4: 0.5})


def test_resend_of_scrambled_chi1_is_uniform_over_products():
    readings = exact_reading_distribution(CHI1)
    resent = Counter()
    for read, p_read in zip(MixedBasisSymbol, readings):
        for symbol, p in reencode_distribution(read).items():
            resent[symbol] += p_read * p
    assert resent[CHI3] == pytest.approx(0.25, abs=1e-12)
    assert resent[CHI4] == pytest.approx(0.25, abs=1e-12)
    assert resent[CHI2] == pytest.approx(0.5, abs=1e-12)


def test_intercept_without_hadamards_is_invisible_for_chi1(rng):
    result = eve_intercept_round(mixed_basis_state(CHI1), EncoderAction.IDENTITY, False, rng)
    assert result.alice_symbol == result.read_symbol == result.resent_symbol == CHI1
    assert overlap_probability(result.state_to_bob, mixed_basis_state(CHI1)) == pytest.approx(1.0, abs=1e-12)


def test_intercept_records_reading_on_eve_state(rng):
    for _ in range(50):
        result = eve_intercept_round(mixed_basis_state(CHI1), EncoderAction.MEASURE_REPLACE, True, rng)
        assert result.eve_state.read_symbol == result.read_symbol
        assert result.eve_state.read_symbol is not None
        assert overlap_probability(result.eve_state.delayed_pair, mixed_basis_state(CHI1)) == pytest.approx(1.0)


def test_intercept_with_hadamards_chi1_read_as_chi2():
    result = _intercept_until(lambda r: r.read_symbol == CHI2, EncoderAction.IDENTITY, True)
    assert result.alice_symbol == CHI1
    bob = discrimination_probabilities(hadamard_on_travel(result.state_to_bob))
    assert bob[0] == pytest.approx(0.5, abs=1e-12)


def test_intercept_with_hadamards_chi3_read_and_resent_as_chi3():
    result = _intercept_until(
        lambda r: r.alice_symbol == CHI3 and r.read_symbol == CHI3 and r.resent_symbol == CHI3,
        EncoderAction.MEASURE_REPLACE, True,
    )
    bob = discrimination_probabilities(hadamard_on_travel(result.state_to_bob))
    assert bob[2] == pytest.approx(0.5, abs=1e-12)


def test_eve_state_requires_normalized_pairs():
    chi1 = mixed_basis_state(CHI1)
    EveState(delayed_pair=chi1, substitute_pair=chi1)
    with pytest.raises(ValidationError):
        EveState(delayed_pair=TwoPhotonState(2 * chi1.amplitudes), substitute_pair=chi1)


def test_plain_bases_hide_eve_on_bell_messages():
    config = SessionConfig(n_rounds=0, eve_presence=1.0, seed=5)
    for round_id in range(2000):
        action = EncoderAction.IDENTITY if round_id % 2 else EncoderAction.HWP0
        plan = RoundPlan(bob_basis=BasisChoice.PLAIN, alice_basis=BasisChoice.PLAIN, action=action)
        record = run_round(config, round_id, round_rng(5, round_id), plan)
        assert record.eve_active
        assert record.bob_outcome == record.alice_symbol == record.eve_symbol
