"""Constructive instance search: sieve for catalog hypotheses, stack primes for large groups.

Candidates are scanned smallest-first and deterministically: twin pairs
ascending, then D primes by backtracking over an ascending pool.  Every hit
is revalidated through verify_theorem before it is returned.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache

from .arith import legendre_symbol, primes_up_to, twin_pairs_up_to
from .family import PHI, PHI_HAT, FamilyParams, validate_params
from .selmer import compute_selmer
from .theorems import verify_theorem

_TWIN_LIMIT = 10**6


class _Deadline:
    """Cooperative time budget; checked between candidates, never mid-verdict."""

    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self.start = time.monotonic()

    def expired(self) -> bool:
        return self.seconds is not None and time.monotonic() - self.start >= self.seconds

    def remaining(self) -> float | None:
        if self.seconds is None:
            return None
        return max(0.0, self.seconds - (time.monotonic() - self.start))


@dataclass(frozen=True)
class ConstraintSet:
    """Sieving constraints extracted from one catalog entry's hypotheses."""

    epsilon: int
    theorem_id: str
    p_mod8: tuple[int, ...] | None = None
    d_mod: tuple[int, tuple[int, ...]] | None = None  # (modulus, allowed) for every D_i
    d_mod8_exists: tuple[int, ...] | None = None  # some D_i must land here mod 8
    symbol_rule: str | None = None  # "d-qr" | "pq-qr" | "opposite"
    pairwise_one: bool = False
    d_mod8_by_p: tuple[tuple[int, tuple[int, ...]], ...] | None = None
    p_minus_d_mod8: tuple[int, ...] | None = None


CONSTRAINTS: dict[str, ConstraintSet] = {
    "1.2A": ConstraintSet(1, "1.2A", d_mod=(4, (1,)), symbol_rule="d-qr", pairwise_one=True),
    "1.2B": ConstraintSet(
        1, "1.2B", d_mod=(4, (1,)), d_mod8_exists=(5,), symbol_rule="d-qr", pairwise_one=True
    ),
    "1.2C": ConstraintSet(
        1, "1.2C", p_mod8=(7,), d_mod=(8, (1,)), symbol_rule="d-qr", pairwise_one=True
    ),
    "1.4ex": ConstraintSet(1, "1.4ex", p_mod8=(3, 7), d_mod=(8, (1,)), symbol_rule="opposite"),
    "1.5A": ConstraintSet(
        1,
        "1.5A",
        d_mod=(4, (1,)),
        d_mod8_exists=(5,),
        symbol_rule="d-qr",
        pairwise_one=True,
        p_minus_d_mod8=(0, 2),
    ),
    "1.5B": ConstraintSet(
        1, "1.5B", p_mod8=(7,), d_mod=(8, (1,)), symbol_rule="d-qr", pairwise_one=True
    ),
    "1.7A": ConstraintSet(-1, "1.7A", symbol_rule="pq-qr", pairwise_one=True),
    "1.7B": ConstraintSet(
        -1,
        "1.7B",
        symbol_rule="pq-qr",
        pairwise_one=True,
        d_mod8_by_p=((7, (1, 7)), (1, (1, 3))),
    ),
    "1.9ex": ConstraintSet(-1, "1.9ex", d_mod=(8, (1,)), symbol_rule="opposite"),
    "1.10A": ConstraintSet(
        -1,
        "1.10A",
        d_mod=(4, (1,)),
        d_mod8_exists=(5,),
        symbol_rule="d-qr",
        pairwise_one=True,
        p_minus_d_mod8=(2, 4),
    ),
    "1.10B": ConstraintSet(
        -1, "1.10B", p_mod8=(1, 7), d_mod=(8, (1,)), symbol_rule="pq-qr", pairwise_one=True
    ),
}


@lru_cache(maxsize=4)
def _twin_table(limit: int) -> tuple[tuple[int, int], ...]:
    return tuple(twin_pairs_up_to(limit))


def _note(progress, msg: str) -> None:
    if progress is not None:
        progress(msg)


def _symbols_ok(cand: int, p: int, q: int, rule: str | None) -> bool:
    if rule is None:
        return True
    if rule == "d-qr":
        return legendre_symbol(cand, p) == 1 and legendre_symbol(cand, q) == 1
    if rule == "pq-qr":
        return legendre_symbol(p, cand) == 1 and legendre_symbol(q, cand) == 1
    if rule == "opposite":
        return legendre_symbol(cand, p) + legendre_symbol(cand, q) == 0
    raise ValueError(f"unknown symbol rule {rule!r}")


def _pair_ok(a: int, b: int) -> bool:
    return legendre_symbol(a, b) == 1 and legendre_symbol(b, a) == 1


def _combos(pool, n, pairwise, chosen=(), start=0):
    if len(chosen) == n:
        yield chosen
        return
    for idx in range(start, len(pool)):
        cand = pool[idx]
        if not pairwise or all(_pair_ok(cand, c) for c in chosen):
            yield from _combos(pool, n, pairwise, chosen + (cand,), idx + 1)


def find_family(
    epsilon: int,
    corollary_id: str,
    n: int,
    bound: int,
    *,
    twin_limit: int = _TWIN_LIMIT,
    time_budget: float | None = None,
    progress=None,
) -> FamilyParams | None:
    """Smallest admissible instance of a catalog entry's hypotheses, or None.

    All D_i are kept <= bound; twin pairs are scanned ascending from the
    fixed table below twin_limit.
    """
    cs = CONSTRAINTS.get(corollary_id)
    if cs is None:
        raise ValueError(
            f"no mechanizable constraint set for {corollary_id!r}; known: {sorted(CONSTRAINTS)}"
        )
    if cs.epsilon != epsilon:
        raise ValueError(f"{corollary_id} applies to epsilon={cs.epsilon}, got {epsilon}")
    if n < 1:
        raise ValueError("n must be >= 1")
    deadline = _Deadline(time_budget)
    base_pool = [r for r in primes_up_to(bound) if r % 2 == 1]
    tested = 0
    for p, q in _twin_table(twin_limit):
        if deadline.expired():
            _note(progress, f"time budget exhausted after {tested} candidate sets")
            return None
        if cs.p_mod8 is not None and p % 8 not in cs.p_mod8:
            continue
        allowed8 = None
        if cs.d_mod8_by_p is not None:
            table = dict(cs.d_mod8_by_p)
            if p % 8 not in table:
                continue
            allowed8 = table[p % 8]
        pool = []
        for r in base_pool:
            if r in (p, q):
                continue
            if cs.d_mod is not None and r % cs.d_mod[0] not in cs.d_mod[1]:
                continue
            if allowed8 is not None and r % 8 not in allowed8:
                continue
            if not _symbols_ok(r, p, q, cs.symbol_rule):
                continue
            pool.append(r)
        if len(pool) < n:
            continue
        for combo in _combos(pool, n, cs.pairwise_one):
            tested += 1
            if deadline.expired():
                _note(progress, f"time budget exhausted after {tested} candidate sets")
                return None
            if cs.d_mod8_exists is not None and not any(
                r % 8 in cs.d_mod8_exists for r in combo
            ):
                continue
            D = 1
            for r in combo:
                D *= r
            if cs.p_minus_d_mod8 is not None and (p - D) % 8 not in cs.p_minus_d_mod8:
                continue
            params = validate_params(epsilon, p, q, combo)
            report = verify_theorem(params, cs.theorem_id)
            if report.verdict != "not-applicable":
                _note(progress, f"hit {params.label()} after {tested} candidate sets")
                return params
    _note(progress, f"bound exhausted after {tested} candidate sets")
    return None


# Per (epsilon, kind): catalog entry to stack primes under, and the dimension
# it guarantees as n + gain.
_STACKING = {
    (1, PHI_HAT): ("1.4ex", 3),
    (-1, PHI_HAT): ("1.9ex", 2),
    (1, PHI): ("1.2A", 0),
    (-1, PHI): ("1.7A", 0),
}


def demonstrate_large_selmer(
    epsilon: int,
    kind: str,
    target_dim: int,
    bound: int = 10**4,
    time_budget: float | None = None,
    progress=None,
) -> FamilyParams | None:
    """Instance with oracle-verified dim2 >= target_dim, built by prime stacking."""
    if target_dim < 0:
        raise ValueError("target_dim must be >= 0")
    key = (epsilon, kind)
    if key not in _STACKING:
        raise ValueError(f"unsupported (epsilon, kind) = {key}")
    corollary_id, gain = _STACKING[key]
    n = max(1, target_dim - gain)
    deadline = _Deadline(time_budget)
    while not deadline.expired():
        _note(progress, f"searching with n={n} under bound {bound}")
        params = find_family(
            epsilon,
            corollary_id,
            n,
            bound,
            time_budget=deadline.remaining(),
            progress=progress,
        )
        if params is None:
            _note(progress, f"no instance with n={n} under bound {bound}")
            return None
        group = compute_selmer(params, kind)
        _note(progress, f"{params.label()} gives dim2={group.dim2}")
        if group.dim2 >= target_dim:
            return params
        n += 1
    _note(progress, "time budget exhausted")
    return None
