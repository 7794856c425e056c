"""Formal abductive (AXp) and contrastive (CXp) explanations for monotonic
classifiers. Feature indices are 1-based throughout."""

from ._core import (
    AppendixCnfClassifier,
    CallableOracle,
    ClassifierSpec,
    ClassOrder,
    EnumerationReport,
    Explanation,
    ExternalProcessOracle,
    FeatureDomain,
    FeatureSpace,
    GradeClassifier,
    InconsistentOracle,
    InputError,
    LinearThresholdClassifier,
    MonotoneDnfClassifier,
    MonoxpError,
    NoCxpExists,
    Oracle,
    OracleError,
    SeedBreaksInvariant,
    SpecError,
    brute_force,
    check_duality,
    check_explanation,
    enumerate,
    find_axp,
    find_cxp,
    load_spec,
    probe_monotonicity,
    verify_axp,
    verify_cxp,
)

__all__ = [name for name in dir() if not name.startswith("_")]
