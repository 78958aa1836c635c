"""双光子线性光学引擎"""
from .elements import HADAMARD_ANGLE, beam_splitter_unitary, hadamard_unitary, half_wave_plate_unitary
from .fock import (
    FOCK_BASIS,
    HOME_SIDE,
    TRAVEL_SIDE,
    FockBasisElement,
    MixedBasisSymbol,
    ModeUnitary,
    OpticalMode,
    Polarization,
    Side,
    TwoPhotonState,
    apply_mode_unitary,
    mixed_basis_state,
)
from .measurement import (
    measure_polarization,
    overlap_probability,
    polarization_probabilities,
    project_polarization,
    require_single_photon,
    replace_photon,
)

__all__ = [
    'HADAMARD_ANGLE',
    'beam_splitter_unitary',
    'hadamard_unitary',
    'half_wave_plate_unitary',
    'FOCK_BASIS',
    'HOME_SIDE',
    'TRAVEL_SIDE',
    'FockBasisElement',
    'MixedBasisSymbol',
    'ModeUnitary',
    'OpticalMode',
    'Polarization',
    'Side',
    'TwoPhotonState',
    'apply_mode_unitary',
    'mixed_basis_state',
    'measure_polarization',
    'overlap_probability',
    'polarization_probabilities',
    'project_polarization',
    'require_single_photon',
    'replace_photon',
]
