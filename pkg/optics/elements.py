"""线性光学元件的模式矩阵"""
from functools import lru_cache

import numpy as np

from .fock import ModeUnitary, OpticalMode, Polarization, Side

HADAMARD_ANGLE = np.pi / 8


@lru_cache(maxsize=None)
def beam_splitter_unitary() -> ModeUnitary:
    """50:50 保偏分束器（实数约定）：Side1 → (Side1+Side2)/√2，Side2 → (Side1−Side2)/√2"""
    matrix = np.zeros((4, 4))
    for pol in Polarization:
        one = OpticalMode.of(Side.SIDE1, pol)
        two = OpticalMode.of(Side.SIDE2, pol)
        matrix[one, one] = matrix[two, one] = 1 / np.sqrt(2)
        matrix[one, two] = 1 / np.sqrt(2)
        matrix[two, two] = -1 / np.sqrt(2)
    return ModeUnitary(matrix)


def jones_half_wave_plate(angle: float) -> np.ndarray:
    c, s = np.cos(2 * angle), np.sin(2 * angle)
    return np.array([[c, s], [s, -c]])


@lru_cache(maxsize=None)
def half_wave_plate_unitary(side: Side, angle: float) -> ModeUnitary:
    """快轴角 angle 的半波片；0 → diag(1, −1)，π/8 → Hadamard"""
    return ModeUnitary.on_side(Side(side), jones_half_wave_plate(angle))


def hadamard_unitary(side: Side) -> ModeUnitary:
    return half_wave_plate_unitary(side, HADAMARD_ANGLE)
