"""Random instance generators and the property-suite runner."""

from flowrank.verify.generators import GeneratorSpec, generate
from flowrank.verify.properties import REGISTRY, Property, SuiteConfig, Trial
from flowrank.verify.runner import (
    Failure,
    PropertyReport,
    replay,
    run_suite,
    suite_passed,
)
from flowrank.verify.sufficiency import fb_check, fb_sufficient, fbhat_sufficient

__all__ = [
    "REGISTRY",
    "Failure",
    "GeneratorSpec",
    "Property",
    "PropertyReport",
    "SuiteConfig",
    "Trial",
    "fb_check",
    "fb_sufficient",
    "fbhat_sufficient",
    "generate",
    "replay",
    "run_suite",
    "suite_passed",
]
