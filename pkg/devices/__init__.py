"""判别器与编码器"""
from .discriminator import (
    DetectionPattern,
    Detector,
    classify_pattern,
    discriminate,
    discrimination_probabilities,
    pattern_probabilities,
)
from .encoder import EncoderAction, encode, encode_branches, hadamard_on_travel

__all__ = [
    'DetectionPattern',
    'Detector',
    'classify_pattern',
    'discriminate',
    'discrimination_probabilities',
    'pattern_probabilities',
    'EncoderAction',
    'encode',
    'encode_branches',
    'hadamard_on_travel',
]
