"""Shared test utilities: deterministic random instance generation."""

from __future__ import annotations

import random

import twinselmer as ts


def random_instances(seed: int, count: int, prime_bound: int = 300, max_n: int = 3):
    """Deterministic list of valid family parameters under the given bounds."""
    rng = random.Random(seed)
    twins = [t for t in ts.arith.twin_pairs_up_to(prime_bound) if t[1] < prime_bound]
    pool = [r for r in ts.arith.primes_up_to(prime_bound) if r >= 3]
    out = []
    for _ in range(count):
        eps = rng.choice([1, -1])
        p, q = rng.choice(twins)
        n = rng.randint(1, max_n)
        ds = rng.sample([r for r in pool if r not in (p, q)], n)
        out.append(ts.validate_params(eps, p, q, ds))
    return out
