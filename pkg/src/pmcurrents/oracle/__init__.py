"""Numerical oracle: pairings, regularized limits, pushforwards, BM currents."""

from .profiles import SmoothBump, PolyBump, CallableProfile, ChiStep, \
    InverseStepProfile, OneMinusStepProfile
from .testforms import TestForm, TFComponent, random_test_form
from .pairing import (
    OracleConfig,
    DEFAULT_CONFIG,
    pair,
    pair_report,
    calibrate_residue_constants,
    CalibrationError,
)
from .regularized import RegularizationSpec, RadialWeight, PairingReport, pair_regularized
from .lambda_reg import pair_lambda, PoleError
from .pushforward import MonomialMap, pushforward_pair, ChartSupportError
from .bochner import bm_pair
from .kernels import HAVE_COMPILED, IMPLEMENTATION

__all__ = [
    "SmoothBump",
    "PolyBump",
    "CallableProfile",
    "ChiStep",
    "InverseStepProfile",
    "OneMinusStepProfile",
    "TestForm",
    "TFComponent",
    "random_test_form",
    "OracleConfig",
    "DEFAULT_CONFIG",
    "pair",
    "pair_report",
    "calibrate_residue_constants",
    "CalibrationError",
    "RegularizationSpec",
    "RadialWeight",
    "PairingReport",
    "pair_regularized",
    "pair_lambda",
    "PoleError",
    "MonomialMap",
    "pushforward_pair",
    "ChartSupportError",
    "bm_pair",
    "HAVE_COMPILED",
    "IMPLEMENTATION",
]
