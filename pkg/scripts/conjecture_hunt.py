#!/usr/bin/env python3
"""Hunt for pancyclicity-conjecture candidates on sampled strong digraphs.

Usage:
    python3 scripts/conjecture_hunt.py [--n 6 7 8] [--samples 1000000]
        [--seed 42] [--arc-prob 0.5] [--jobs 4]

A candidate is a strong digraph that satisfies the slack-3 triple condition
yet misses some cycle length; each one is printed in full with its missing
lengths and the stream seed that regenerates it.  Exit code 1 signals that at
least one candidate was found (worth publishing, not a bug).
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from hamlab.harness import CampaignSpec, run_campaign, run_sharded


@dataclass(frozen=True)
class HuntConfig:
    orders: tuple[int, ...] = (6, 7)
    samples: int = 1_000_000
    seed: int = 42
    arc_prob: float = 0.5
    jobs: int = 1


def hunt(config: HuntConfig) -> int:
    total_candidates = 0
    for n in config.orders:
        spec = CampaignSpec(
            claim="conj19",
            n=n,
            mode="sample",
            samples=config.samples,
            arc_prob=config.arc_prob,
            seed=config.seed,
        )
        start = time.monotonic()
        if config.jobs > 1:
            result = run_sharded(spec, config.jobs)
        else:
            result = run_campaign(spec)
        elapsed = time.monotonic() - start
        print(
            f"n={n}: {result.scanned} samples, {result.hypothesis_hits} slack-3 hits, "
            f"{len(result.counterexamples)} candidates ({elapsed:.1f}s)"
        )
        for cex in result.counterexamples:
            print(f"  candidate at sample {cex.detail.get('sample', cex.index)}:")
            print(f"    missing lengths: {cex.detail['missing_lengths']}")
            print(f"    stream seed: {cex.detail.get('stream_seed')}")
            for line in cex.digraph.strip().splitlines():
                print(f"    {line}")
        total_candidates += len(result.counterexamples)
    return 1 if total_candidates else 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=[6, 7])
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--arc-prob", type=float, default=0.5)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)
    return hunt(
        HuntConfig(
            orders=tuple(args.n),
            samples=args.samples,
            seed=args.seed,
            arc_prob=args.arc_prob,
            jobs=args.jobs,
        )
    )


if __name__ == "__main__":
    sys.exit(main())
