"""Example registry, check runner and command line entry point."""
from .checks import CHECKS, CheckReport, run_checks
from .recipes import Bundle, build_example
from .registry import PRIMES, REGISTRY, get

__all__ = ["CHECKS", "CheckReport", "run_checks", "Bundle", "build_example", "PRIMES", "REGISTRY", "get"]
