"""Benchmarking utilities for lambda_equiv."""

from lambda_equiv.profiling.benchmark import run_benchmark

__all__ = ["run_benchmark"]
