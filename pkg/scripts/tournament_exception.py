#!/usr/bin/env python3
"""Exhibit the unique strong order-5 tournament with no spanning chord path.

Usage:
    python3 scripts/tournament_exception.py [--n 5]

Enumerates all tournaments of the chosen order, keeps the strong ones (on a
tournament the triple condition is vacuous, so strength is the whole
hypothesis), and groups the bypass-free survivors into isomorphism classes.
For each class the script prints the member count, the arcs, degrees, and the
cycle spectrum.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from hamlab.cycles import cycle_spectrum, hamiltonian_bypass
from hamlab.digraph import Digraph, degrees, is_strong, isomorphic_small, serialize
from hamlab.generators import enum_tournaments


@dataclass(frozen=True)
class ScanConfig:
    n: int = 5


def scan(config: ScanConfig) -> int:
    classes: list[tuple[Digraph, int]] = []
    strong_count = 0
    total = 0
    for t in enum_tournaments(config.n):
        total += 1
        if not is_strong(t):
            continue
        strong_count += 1
        if hamiltonian_bypass(t) is not None:
            continue
        for i, (rep, count) in enumerate(classes):
            if isomorphic_small(rep, t):
                classes[i] = (rep, count + 1)
                break
        else:
            classes.append((t, 1))

    print(f"order {config.n}: {total} tournaments, {strong_count} strong, "
          f"{len(classes)} bypass-free classes")
    for rep, count in classes:
        print(f"\nclass with {count} labeled members:")
        for line in serialize(rep).strip().splitlines():
            print(f"  {line}")
        degs = ", ".join(
            f"v{v}: out {degrees(rep, v)[0]} in {degrees(rep, v)[1]}" for v in range(rep.n)
        )
        print(f"  degrees: {degs}")
        print(f"  cycle lengths: {list(cycle_spectrum(rep).present)}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=5)
    args = parser.parse_args(argv)
    return scan(ScanConfig(n=args.n))


if __name__ == "__main__":
    sys.exit(main())
