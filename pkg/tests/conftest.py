from functools import lru_cache

import numpy as np
import pytest

from analysis.estimators import simulate_joint_estimate
from optics.fock import FOCK_DIM, MixedBasisSymbol, TwoPhotonState, mixed_basis_state
from optics.measurement import overlap_probability


def mixed_basis_probabilities(state: TwoPhotonState) -> np.ndarray:
    return np.array([overlap_probability(mixed_basis_state(s), state) for s in MixedBasisSymbol])


@pytest.fixture
def rng():
    return np.random.default_rng(20170607)


@pytest.fixture
def random_state():
    gen = np.random.default_rng(7)
    amplitudes = gen.normal(size=FOCK_DIM) + 1j * gen.normal(size=FOCK_DIM)
    return TwoPhotonState(amplitudes / np.linalg.norm(amplitudes))


@pytest.fixture
def mixed_probs():
    return mixed_basis_probabilities


ACCEPTANCE_SEED = 20170607


@lru_cache(maxsize=None)
def _cached_joint_estimate(x, basis_config, n_rounds):
    return simulate_joint_estimate(x, basis_config, n_rounds, seed=ACCEPTANCE_SEED)


@pytest.fixture(scope="session")
def simulated_joint():
    """大样本模拟在多个测试之间共享，同一 (x, 配置, 轮数) 只跑一次"""
    return _cached_joint_estimate
