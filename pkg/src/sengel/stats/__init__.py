from sengel.stats.types import Check, PhiFunction, PhiKind, VerificationReport, Verdict
from sengel.stats.limits import clt_check, lil_smoke, lln_check
from sengel.stats.zero_one import borel_bernstein_check, ratio_limsup_check
from sengel.stats.laws import empirical_pmf_check, kernel_check, repeat_check, yn_uniformity_check
from sengel.stats.sampling import random_decimal_balls, random_decimal_text
from sengel.stats.suites import SUITES, VerificationSuite, create_suite, run_all, write_raw_csv

__all__ = [
    "Check",
    "PhiFunction",
    "PhiKind",
    "VerificationReport",
    "Verdict",
    "clt_check",
    "lil_smoke",
    "lln_check",
    "borel_bernstein_check",
    "ratio_limsup_check",
    "empirical_pmf_check",
    "kernel_check",
    "repeat_check",
    "yn_uniformity_check",
    "random_decimal_balls",
    "random_decimal_text",
    "SUITES",
    "VerificationSuite",
    "create_suite",
    "run_all",
    "write_raw_csv",
]
