"""Pass/fail reports over converged solver runs."""
from hamsys.verification.checks import CHECKS, cross_framework_report, default_checks, verify_solution
from hamsys.verification.models import Check, VerificationReport

__all__ = ["CHECKS", "Check", "VerificationReport", "cross_framework_report", "default_checks", "verify_solution"]
