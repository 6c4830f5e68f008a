"""Local solvability oracle for descent quartics d*w^2 = g(z).

The real place is decided exactly by sign analysis of the quadratic in
s = z^2.  A finite place l is decided by a digit-by-digit search over two
integral patches (z in Z_l, and t = 1/z with v_l(t) >= 1):

  * a node fixes the coordinate mod l^k; once the valuation of d*g is
    constant on the node's class with at least one determined unit digit
    (three digits when l = 2), the square class of d*g is constant there,
    so the node either certifies solvability (valuation even, unit a
    square) or kills its subtree;
  * otherwise the node is tested for a liftable root of the quartic
    (valuation of the value exceeding twice that of the derivative), which
    certifies a w = 0 point nearby;
  * otherwise the search refines by one more digit.

For odd l the refinement is done by re-centering, z = s + l*y, dividing
out the content of the transformed polynomial; units mod l then decide
immediately and the tree stays narrow even when d*g has large constant
valuation.  At l = 2 a plain binary residue tree is used (unit classes
need three digits, and the trees are small).

Every subtree dies or certifies at bounded depth because g is separable;
the hard cap below is generous, and hitting it raises instead of guessing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .arith import _int_valuation, padic_valuation, unit_square_class
from .family import INF_PLACE, HomogeneousSpace

_DEPTH_MARGIN = 8


class OracleUndecidedError(RuntimeError):
    """Digit search hit its depth cap without a verdict."""


@dataclass(frozen=True)
class LocalVerdict:
    """Solvability at one place, with a witness or the exhausted search depth."""

    place: object
    solvable: bool
    witness: dict | None
    search_depth: int


@dataclass(frozen=True)
class QlSquareClass:
    valuation: int
    unit_tag: int
    is_square: bool


def square_class_qp(x: int | Fraction, l: int) -> QlSquareClass:
    """Square class of a nonzero rational in Q_l: valuation parity plus unit class."""
    v = padic_valuation(x, l)
    unit = Fraction(x) / Fraction(l) ** v
    cls = unit_square_class(unit, l)
    return QlSquareClass(v, cls.tag, v % 2 == 0 and cls.is_square)


def _rational_square_root(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _rational_witness(space: HomogeneousSpace, z: Fraction, w: Fraction) -> dict:
    assert space.d * w * w == space.g(z), "witness must satisfy the curve exactly"
    return {"type": "rational", "z": z, "w": w}


def real_solvable(space: HomogeneousSpace) -> LocalVerdict:
    """Exact real verdict: does d*g(z) >= 0 happen for some real z?

    g has positive leading coefficient, so d > 0 always works; for d < 0 the
    minimum of the s-quadratic over s = z^2 >= 0 decides.
    """
    d = space.d
    # cheap exact points first, so visible rational points become witnesses
    for z in (0, 1, -1):
        gz = space.g(z)
        if gz == 0:
            return LocalVerdict(INF_PLACE, True, _rational_witness(space, Fraction(z), Fraction(0)), 0)
        w = _rational_square_root(Fraction(gz, d))
        if w is not None:
            return LocalVerdict(INF_PLACE, True, _rational_witness(space, Fraction(z), w), 0)
    if d > 0:
        return LocalVerdict(INF_PLACE, True, {"type": "real_sign", "s": Fraction(0)}, 0)
    # d < 0: need g(s) <= 0 somewhere on s >= 0; vertex must be right of 0
    if space.u2 < 0 and space.u2 * space.u2 >= 4 * space.u4 * space.u0:
        s = Fraction(-space.u2, 2 * space.u4)
        gmin = space.u4 * s * s + space.u2 * s + space.u0
        assert d * gmin >= 0
        return LocalVerdict(INF_PLACE, True, {"type": "real_sign", "s": s}, 0)
    return LocalVerdict(INF_PLACE, False, None, 0)


def _unit_is_square(u: int, l: int) -> bool:
    if l == 2:
        return u % 8 == 1
    return pow(u % l, (l - 1) >> 1, l) == 1


def _content_valuation(coeffs, l: int) -> int:
    return min(_int_valuation(c, l) for c in coeffs if c != 0)


def _taylor_shift_scale(coeffs: list[int], s: int, l: int) -> list[int]:
    """Coefficients (ascending) of P(s + l*y) given those of P."""
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += s * c[j + 1]
    power = 1
    for j in range(1, n):
        power *= l
        c[j] *= power
    return c


def _eval_poly(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


class _DigitSearch:
    """Shared state for the two-patch digit search at one finite place."""

    def __init__(self, space: HomogeneousSpace, l: int):
        self.space = space
        self.l = l
        self.cap = (
            _int_valuation(space.disc(), l)
            + _int_valuation(4 * space.u4 * space.d, l)
            + _DEPTH_MARGIN
        )
        self.max_depth = 0
        d = space.d
        # d*g as ascending coefficient lists for both patches
        self.patch_coeffs = {
            1: [d * space.u0, 0, d * space.u2, 0, d * space.u4],
            2: [d * space.u4, 0, d * space.u2, 0, d * space.u0],
        }

    def run(self) -> dict | None:
        if self.l == 2:
            w = self._node_two(1, 0, 0)
            if w is not None:
                return w
            return self._node_two(2, 0, 1)
        qr = bytearray(self.l)
        for x in range(1, self.l):
            qr[x * x % self.l] = 1
        self.qr = qr
        for patch, start_k in ((1, 0), (2, 1)):
            coeffs = list(self.patch_coeffs[patch])
            if patch == 2:
                # the patch substitutes t = l*x up front
                power = 1
                for j in range(1, len(coeffs)):
                    power *= self.l
                    coeffs[j] *= power
            content = _content_valuation(coeffs, self.l)
            scale_down = self.l**content
            coeffs = [c // scale_down for c in coeffs]
            w = self._descend(patch, coeffs, content, start_k, 0, self.l**start_k)
            if w is not None:
                return w
        return None

    # ---- odd l: re-centering descent ----

    def _descend(self, patch, coeffs, val, k, base, scale):
        """Decide d*g = l^val * P(y) for y in Z_l; coordinate = base + scale*y."""
        l = self.l
        if k + 1 > self.max_depth:
            self.max_depth = k + 1
        if k >= self.cap:
            raise OracleUndecidedError(
                f"depth cap {self.cap} exceeded at l={l} on {self.space}"
            )
        cmod = [c % l for c in coeffs]
        parity_ok = val % 2 == 0
        for s in range(l):
            u = 0
            for c in reversed(cmod):
                u = (u * s + c) % l
            if u != 0:
                # unit on the whole class: square class decided
                if parity_ok and self.qr[u]:
                    return {
                        "type": "square_class",
                        "patch": patch,
                        "residue": base + scale * s,
                        "modulus": scale * l,
                        "valuation": val,
                    }
                continue
            exact = _eval_poly(coeffs, s)
            if exact == 0:
                return self._root_witness(patch, base + scale * s)
            deriv = _eval_poly([j * coeffs[j] for j in range(1, len(coeffs))], s)
            if deriv != 0 and _int_valuation(exact, l) > 2 * _int_valuation(deriv, l):
                return {
                    "type": "hensel_root",
                    "patch": patch,
                    "residue": base + scale * s,
                    "modulus": scale * l,
                }
            shifted = _taylor_shift_scale(coeffs, s, l)
            content = _content_valuation(shifted, l)
            scale_down = l**content
            shifted = [c // scale_down for c in shifted]
            w = self._descend(patch, shifted, val + content, k + 1, base + scale * s, scale * l)
            if w is not None:
                return w
        return None

    def _root_witness(self, patch, coord: int) -> dict:
        if patch == 1:
            return _rational_witness(self.space, Fraction(coord), Fraction(0))
        assert coord != 0
        return _rational_witness(self.space, Fraction(1, coord), Fraction(0))

    # ---- l = 2: plain binary residue tree ----

    def _node_two(self, patch, r, k) -> dict | None:
        if k > self.max_depth:
            self.max_depth = k
        coeffs = self.patch_coeffs[patch]
        Fr = _eval_poly(coeffs, r)
        if Fr == 0:
            return self._root_witness(patch, r)
        v = _int_valuation(Fr, 2)
        if k - v >= 3:
            # unit part known mod 8 on the whole class
            if v % 2 == 0 and (Fr >> v) % 8 == 1:
                return {
                    "type": "square_class",
                    "patch": patch,
                    "residue": r,
                    "modulus": 1 << k,
                    "valuation": v,
                }
            return None
        gr = self.space.g(r) if patch == 1 else _eval_poly([self.space.u4, 0, self.space.u2, 0, self.space.u0], r)
        gd = (
            self.space.g_deriv(r)
            if patch == 1
            else (4 * self.space.u0 * r * r + 2 * self.space.u2) * r
        )
        if gr != 0 and gd != 0 and _int_valuation(gr, 2) > 2 * _int_valuation(gd, 2):
            return {
                "type": "hensel_root",
                "patch": patch,
                "residue": r,
                "modulus": 1 << k,
            }
        if k >= self.cap:
            raise OracleUndecidedError(
                f"depth cap {self.cap} exceeded at l=2 on {self.space}"
            )
        step = 1 << k
        w = self._node_two(patch, r, k + 1)
        if w is not None:
            return w
        return self._node_two(patch, r + step, k + 1)


def padic_solvable(space: HomogeneousSpace, l: int) -> LocalVerdict:
    """Decide existence of Q_l-points on d*w^2 = g(z) by two-patch digit search."""
    if l < 2:
        raise ValueError(f"not a prime: {l}")
    search = _DigitSearch(space, l)
    witness = search.run()
    return LocalVerdict(l, witness is not None, witness, search.max_depth)


def local_verdict(space: HomogeneousSpace, place) -> LocalVerdict:
    """Dispatch on the place: infinity or a finite prime."""
    if place == INF_PLACE:
        return real_solvable(space)
    return padic_solvable(space, place)
