"""Benchmark the compiled stepping kernels against the pure-Python fallback.

Runs both backends on the two hot loops -- repeated channel application and
the fixed-step RK4 integrator -- checks they agree, and reports timings.

Usage:  python3 benchmarks/bench_kernels.py [--steps N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from kraussim import _kernels_py
from kraussim.kraus import differential_kraus
from kraussim.model import initial_state, make_params

try:
    from kraussim import _kernels
except ImportError:
    _kernels = None


def _time_best(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=100_000, help="inner-loop step count")
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions (best kept)")
    args = parser.parse_args()

    params = make_params(2.0, 4.0, 2.0)
    rho0 = np.ascontiguousarray(initial_state(np.pi / 4))
    tau = 1.0 / args.steps
    ops = np.ascontiguousarray(np.stack(differential_kraus(params, tau).operators))

    backends = [("pure-python", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    else:
        print("compiled extension not built; timing the fallback only")

    if _kernels is not None:
        rho_c, _, _ = _kernels.apply_channel_steps(ops, rho0, args.steps, False)
        rho_p, _, _ = _kernels_py.apply_channel_steps(ops, rho0, args.steps, False)
        rk_c = _kernels.rk4_lindblad(params.kappa, params.rabi, params.omega, rho0, 1.0, args.steps)
        rk_p = _kernels_py.rk4_lindblad(params.kappa, params.rabi, params.omega, rho0, 1.0, args.steps)
        agree = max(np.abs(rho_c - rho_p).max(), np.abs(rk_c - rk_p).max())
        print(f"backend agreement: {agree:.3e}")
        if agree > 1e-12:
            print("ERROR: backends disagree beyond 1e-12")
            return 1

    results: dict[str, dict[str, float]] = {}
    for name, mod in backends:
        channel = _time_best(
            lambda m=mod: m.apply_channel_steps(ops, rho0, args.steps, False), args.repeat
        )
        rk4 = _time_best(
            lambda m=mod: m.rk4_lindblad(
                params.kappa, params.rabi, params.omega, rho0, 1.0, args.steps
            ),
            args.repeat,
        )
        results[name] = {"channel": channel, "rk4": rk4}

    print(f"\n{args.steps} steps, best of {args.repeat}:")
    print(f"{'backend':>14} {'channel (s)':>14} {'rk4 (s)':>14}")
    for name, row in results.items():
        print(f"{name:>14} {row['channel']:>14.4f} {row['rk4']:>14.4f}")
    if len(results) == 2:
        c = results["pure-python"]["channel"] / results["compiled"]["channel"]
        r = results["pure-python"]["rk4"] / results["compiled"]["rk4"]
        print(f"\nspeedup compiled vs pure: channel {c:.1f}x, rk4 {r:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
