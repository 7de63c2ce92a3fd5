"""Verification reports, case runner, instances and suites."""
