"""Run configuration: budgets, caps, primes, and the sampling seed.

Config files are plain key=value lines (# comments allowed).  The
NICHOLS_SEED environment variable pins every randomized sample in the
property-test helpers.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace


@dataclass
class RunConfig:
    degree_cap: int = 20
    tuple_budget: int = 10**8
    direct_budget: int = 4 * 10**6
    memo_cap: int = 2**24
    primes: list[int] | None = None
    workers: int = 1
    seed: int = 0

    @staticmethod
    def from_file(path: str) -> "RunConfig":
        cfg = RunConfig()
        with open(path) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line {line!r}")
                key, _, val = line.partition("=")
                key = key.strip().replace("-", "_")
                val = val.strip()
                if key == "primes":
                    cfg.primes = [int(t) for t in val.replace(",", " ").split()]
                elif key in ("degree_cap", "tuple_budget", "direct_budget", "memo_cap",
                             "workers", "seed"):
                    setattr(cfg, key, int(val))
                else:
                    raise ValueError(f"unknown config key {key!r}")
        return cfg


def env_seed(default: int = 0) -> int:
    try:
        return int(os.environ.get("NICHOLS_SEED", default))
    except ValueError:
        return default
