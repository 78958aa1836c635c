"""安全分析：联合概率表、互信息、检测概率与估计器"""
from .detection import (
    PER_CHARACTER_CONSTANT,
    DetectionReport,
    EscapeEstimate,
    character_escape_sifted_model,
    character_report,
    cycle_report,
    detection_escape_per_character,
    detection_escape_probability,
    simulate_character_escape,
    simulate_control_cycles,
)
from .estimators import (
    JointEstimate,
    MutualInformationReport,
    estimate_joint_from_transcript,
    estimate_mi_from_transcript,
    simulate_joint_estimate,
    simulate_mi_estimate,
)
from .information import (
    consistency_report,
    crossover,
    disturbance,
    h_e_closed_form,
    iab_closed_form,
    iab_from_tables,
    iae_closed_form,
    iae_from_tables,
    iae_peak,
    mutual_information,
    partial_entropy,
    shannon_entropy,
)
from .oracle import exact_joint_distribution, exact_reading_distribution
from .tables import BasisConfig, JointDistribution, joint_distribution_closed_form, table_rows

__all__ = [
    'PER_CHARACTER_CONSTANT',
    'DetectionReport',
    'EscapeEstimate',
    'character_escape_sifted_model',
    'character_report',
    'cycle_report',
    'detection_escape_per_character',
    'detection_escape_probability',
    'simulate_character_escape',
    'simulate_control_cycles',
    'JointEstimate',
    'MutualInformationReport',
    'estimate_joint_from_transcript',
    'estimate_mi_from_transcript',
    'simulate_joint_estimate',
    'simulate_mi_estimate',
    'consistency_report',
    'crossover',
    'disturbance',
    'h_e_closed_form',
    'iab_closed_form',
    'iab_from_tables',
    'iae_closed_form',
    'iae_from_tables',
    'iae_peak',
    'mutual_information',
    'partial_entropy',
    'shannon_entropy',
    'exact_joint_distribution',
    'exact_reading_distribution',
    'BasisConfig',
    'JointDistribution',
    'joint_distribution_closed_form',
    'table_rows',
]
