#!/usr/bin/env python
"""Quick performance benchmark for regression testing.

Times the decision procedure, the certificate checker and the completeness
translation on a fixed, seeded workload. Run before and after changes to the
core modules.
"""

import random
import time
from collections.abc import Callable

from lambda_equiv.algo import check_tm_eq, decide_tm_eq
from lambda_equiv.decl import gen_decl
from lambda_equiv.logrel import completeness
from lambda_equiv.sampling import random_ctx, random_type, random_typed_term

SEED = 20240611


def create_workload(size: int = 40):
    """Seeded equality problems: (ctx, left, right, type) with left ≡ right."""
    rng = random.Random(SEED)
    problems = []
    for _ in range(size):
        ctx = random_ctx(rng, max_len=3)
        tp = random_type(rng, 2)
        term = random_typed_term(rng, ctx, tp, 8)
        problems.append((ctx, term, term, tp))
    return problems


def create_derivations(size: int = 20):
    return [gen_decl(SEED + n, 5) for n in range(size)]


def benchmark_operation(name: str, operation: Callable[[], object], iterations: int = 10):
    """Benchmark a single operation."""
    # Warmup
    for _ in range(2):
        operation()

    start = time.perf_counter()
    for _ in range(iterations):
        operation()
    end = time.perf_counter()

    total_time = (end - start) * 1_000  # milliseconds
    avg_time = total_time / iterations

    print(f"  {name:<36} {avg_time:>9.3f}ms/op  ({iterations} iterations)")
    return avg_time


def run_benchmark(iterations: int = 10) -> dict[str, float]:
    """Run all benchmarks and return the average milliseconds per operation."""
    print("=" * 80)
    print("LAMBDA-EQUIV PERFORMANCE BENCHMARK")
    print("=" * 80)

    problems = create_workload()
    derivations = create_derivations()
    certificates = [
        (ctx, decide_tm_eq(ctx, left, right, tp), left, right, tp)
        for ctx, left, right, tp in problems
    ]
    print(f"\n{len(problems)} equality problems, {len(derivations)} derivations\n")

    print("Running benchmarks...")
    print("-" * 80)

    results = {
        "decide": benchmark_operation(
            "decide_tm_eq (workload)",
            lambda: [decide_tm_eq(ctx, m, n, tp) for ctx, m, n, tp in problems],
            iterations,
        ),
        "check": benchmark_operation(
            "check_tm_eq (workload)",
            lambda: [check_tm_eq(*cert) for cert in certificates],
            iterations,
        ),
        "completeness": benchmark_operation(
            "completeness (generated derivations)",
            lambda: [completeness(ctx, d) for ctx, d, *_ in derivations],
            iterations,
        ),
    }

    print("-" * 80)
    print("Benchmark complete!")
    return results


def main():
    """CLI entry point."""
    run_benchmark()


if __name__ == "__main__":
    main()
