"""Independent exhaustive local-solvability check for validating the digit-search oracle.

Level-wise refinement over residue classes mod l^k with exact integer
arithmetic: a class is excluded once its value carries a determined
non-square class, accepted once the value is a determined square or a
liftable root shows up, and split one digit deeper otherwise.  Squares mod
l are detected by table lookup, not Legendre symbols; no code is shared
with the package oracle.
"""

from __future__ import annotations


def _val(m: int, l: int) -> int:
    v = 0
    m = abs(m)
    while m % l == 0:
        m //= l
        v += 1
    return v


def brute_padic_solvable(space, l: int, stats: dict | None = None, hard_limit: int = 48) -> bool:
    """Exhaustive verdict for d*w^2 = g(z) over Q_l; intended for small l."""
    d = space.d
    squares = {x * x % l for x in range(1, l)}
    need = 3 if l == 2 else 1
    patches = [
        # (value polynomial coeffs (c0, c2, c4), quartic for lifting, frontier, start level)
        ((d * space.u0, d * space.u2, d * space.u4), (space.u0, space.u2, space.u4), list(range(l)), 1),
        ((d * space.u4, d * space.u2, d * space.u0), (space.u4, space.u2, space.u0), [0], 1),
    ]
    deepest = 0
    try:
        for coeffs, (g0, g2, g4), frontier, k in patches:
            # the constant power of l dividing every value is a parity offset,
            # not information the refinement can ever improve on
            shift = min(_val(c, l) for c in coeffs if c != 0)
            n0, n2, n4 = (c // l**shift for c in coeffs)
            while frontier:
                if k > hard_limit:
                    raise RuntimeError(f"brute refinement ran away at l={l} on {space}")
                deepest = max(deepest, k)
                nxt = []
                for r in frontier:
                    r2 = r * r
                    value = n0 + n2 * r2 + n4 * r2 * r2
                    if value == 0:
                        return True
                    v = _val(value, l)
                    if k - v >= need:
                        if (shift + v) % 2 == 0:
                            unit = value // l**v
                            if (unit % 8 == 1) if l == 2 else (unit % l in squares):
                                return True
                        continue
                    gval = g0 + g2 * r2 + g4 * r2 * r2
                    gder = (2 * g2 + 4 * g4 * r2) * r
                    if gval != 0 and gder != 0 and _val(gval, l) > 2 * _val(gder, l):
                        return True
                    step = l**k
                    nxt.extend(r + j * step for j in range(l))
                frontier = nxt
                k += 1
        return False
    finally:
        if stats is not None:
            stats["depth"] = max(stats.get("depth", 0), deepest)
