"""无窃听理想信道的转移矩阵"""
from functools import lru_cache

import numpy as np

from devices.discriminator import discrimination_probabilities
from devices.encoder import hadamard_on_travel
from optics.fock import MixedBasisSymbol, mixed_basis_state

from .session import BasisChoice

IMPOSSIBLE_TOLERANCE = 1e-12


@lru_cache(maxsize=None)
def ideal_transition_matrix(alice_basis: BasisChoice, bob_basis: BasisChoice) -> np.ndarray:
    """p(bob = m | alice = j)，行 j、列 m，下标 0..3 对应 χ¹..χ⁴"""
    matrix = np.zeros((4, 4))
    for symbol in MixedBasisSymbol:
        state = mixed_basis_state(symbol)
        if alice_basis == BasisChoice.HADAMARD:
            state = hadamard_on_travel(state)
        if bob_basis == BasisChoice.HADAMARD:
            state = hadamard_on_travel(state)
        matrix[symbol - 1] = discrimination_probabilities(state)
    matrix.setflags(write=False)
    return matrix


def is_impossible_without_eve(alice_basis: BasisChoice, bob_basis: BasisChoice,
                              alice_symbol: MixedBasisSymbol, bob_outcome: MixedBasisSymbol) -> bool:
    return ideal_transition_matrix(alice_basis, bob_basis)[alice_symbol - 1, bob_outcome - 1] < IMPOSSIBLE_TOLERANCE
