#!/usr/bin/env python3
"""Replay every exhaustive desk-scale campaign and print one line per claim.

Usage:
    python3 scripts/replay_theorems.py [--orders 4 5] [--jobs N]

Covers the spanning-cycle claim, the pre-hamiltonian-or-bipartite claim, and
the paired-low-degree property, each over every labeled digraph of the chosen
orders, plus the order-5 tournament bypass scan.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from hamlab.harness import CampaignSpec, run_campaign, run_sharded


@dataclass(frozen=True)
class ReplayConfig:
    orders: tuple[int, ...] = (4, 5)
    jobs: int = 1


def replay(config: ReplayConfig) -> int:
    failures = 0
    for claim in ("thm15", "thm110", "lemma35"):
        for n in config.orders:
            spec = CampaignSpec(claim=claim, n=n)
            start = time.monotonic()
            if config.jobs > 1:
                result = run_sharded(spec, config.jobs, allow_long=n > 5)
            else:
                result = run_campaign(spec, allow_long=n > 5)
            elapsed = time.monotonic() - start
            status = "ok" if not result.counterexamples else "FAIL"
            print(
                f"{claim:<8} n={n}: scanned {result.scanned}, strong {result.strong}, "
                f"hits {result.hypothesis_hits}, counterexamples "
                f"{len(result.counterexamples)} [{status}] ({elapsed:.1f}s)"
            )
            failures += len(result.counterexamples)

    spec = CampaignSpec(claim="bypass_claim", n=5)
    result = run_campaign(spec)
    print(
        f"bypass   n=5: scanned {result.scanned}, strong {result.strong}, "
        f"exception classes {len(result.exceptions)} "
        f"({result.detail['exception_members']} labeled members)"
    )
    for exc in result.exceptions:
        print("  exceptional tournament:")
        for line in exc.digraph.strip().splitlines():
            print(f"    {line}")
    return 1 if failures else 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--orders", type=int, nargs="+", default=[4, 5])
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)
    return replay(ReplayConfig(orders=tuple(args.orders), jobs=args.jobs))


if __name__ == "__main__":
    sys.exit(main())
