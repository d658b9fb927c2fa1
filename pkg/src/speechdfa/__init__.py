"""Detrended fluctuation analysis of speech and synthetic signals."""

from .classify import (
    EmotionBand,
    ModeLabel,
    PhaseDifference,
    classify_emotion,
    classify_mode,
    compare_phases,
    emotion_bands,
)
from .dfa import (
    FluctuationCurve,
    ScaleGrid,
    ScalingReport,
    box_fluctuation,
    default_grid,
    dfa,
    fit_scaling_exponent,
    fluctuation_function,
    integrate_profile,
    split_scaling_exponents,
)
from .estimators import DFA, EmotionClassifier, ModeClassifier
from .synth import GeneratorSpec, generate
from .timeseries import Segment, TimeSeries, mean, segment

__version__ = "0.1.0"
