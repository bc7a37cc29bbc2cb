"""Real-root isolation for the caustic and invariant polynomials.

Roots are isolated with an exact Sturm sequence (coefficients are converted to
``Fraction`` so no sign count is ever wrong), then refined in floating point
with Brent's method and a Newton polish.  Everything works on a copy of the
polynomial normalised by its largest coefficient: the coefficients produced
from ``(a, b)`` span twenty-odd orders of magnitude.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from scipy.optimize import brentq


EPS = sys.float_info.epsilon


class PolyError(ValueError):
    pass


class IllConditionedError(PolyError):
    pass


class NoRootError(PolyError):
    """No real root satisfies the query (typically: the orbit family does not exist)."""


@dataclass(frozen=True)
class Poly:
    """Real polynomial, coefficients in ascending degree."""

    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Sequence[float]):
        c = [float(x) for x in coeffs]
        while c and c[-1] == 0.0:
            c.pop()
        if not c:
            raise PolyError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_descending(cls, coeffs: Sequence[float]) -> "Poly":
        return cls(list(coeffs)[::-1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv(self) -> "Poly":
        if self.degree == 0:
            raise PolyError("derivative of a constant is the zero polynomial")
        return Poly([i * c for i, c in enumerate(self.coeffs) if i > 0])

    def normalized(self) -> "Poly":
        m = max(abs(c) for c in self.coeffs)
        return Poly([c / m for c in self.coeffs])

    def abs_eval(self, x: float) -> float:
        """Sum |c_i| |x|^i: the natural scale for a relative residual."""
        ax = abs(x)
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * ax + abs(c)
        return acc

    def relative_residual(self, x: float) -> float:
        scale = self.abs_eval(x)
        # scale is 0 only when every term vanishes, i.e. x = 0 is an exact root
        return abs(self(x)) / scale if scale > 0 else 0.0


@dataclass(frozen=True)
class RealRoot:
    value: float
    multiplicity: int = 1


# ------------------------------------------------------------ exact Sturm


def _frac_eval(coeffs: tuple[Fraction, ...], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _frac_rem(num: list[Fraction], den: list[Fraction]) -> list[Fraction]:
    r = list(num)
    dn = len(den) - 1
    lead = den[-1]
    while len(r) - 1 >= dn and any(r):
        q = r[-1] / lead
        shift = len(r) - 1 - dn
        for i, d in enumerate(den):
            r[shift + i] -= q * d
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _sturm_chain(coeffs: tuple[Fraction, ...]) -> list[tuple[Fraction, ...]]:
    p0 = list(coeffs)
    p1 = [i * c for i, c in enumerate(p0) if i > 0]
    chain = [p0, p1]
    while True:
        r = _frac_rem(chain[-2], chain[-1])
        if not r:
            break
        # make monic-ish to keep numbers small; only signs matter
        scale = abs(r[-1])
        chain.append([-c / scale for c in r])
    return [tuple(p) for p in chain]


def _sign_changes(chain, x: Fraction) -> int:
    count, prev = 0, 0
    for p in chain:
        v = _frac_eval(p, x)
        s = (v > 0) - (v < 0)
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _cauchy_bound(coeffs: tuple[Fraction, ...]) -> Fraction:
    lead = abs(coeffs[-1])
    m = max(abs(c) for c in coeffs[:-1]) if len(coeffs) > 1 else Fraction(0)
    # round up to a power of two keeps the bisection points dyadic and short
    bound = 1 + m / lead
    return Fraction(2) ** math.ceil(math.log2(float(bound)) + 1e-12)


def _isolate(coeffs: tuple[Fraction, ...], min_width: Fraction):
    """Yield (lo, hi, count) with count distinct roots in (lo, hi]."""
    chain = _sturm_chain(coeffs)
    bound = _cauchy_bound(coeffs)
    lo, hi = -bound, bound
    stack = [(lo, hi, _sign_changes(chain, lo), _sign_changes(chain, hi))]
    out = []
    while stack:
        lo, hi, vlo, vhi = stack.pop()
        n = vlo - vhi
        if n == 0:
            continue
        # a root exactly at the excluded end lo belongs to the left neighbour;
        # keep splitting so refinement cannot land on it
        lo_is_root = _frac_eval(coeffs, lo) == 0
        if (n == 1 and not lo_is_root) or hi - lo < min_width:
            out.append((lo, hi, n))
            continue
        mid = (lo + hi) / 2
        vmid = _sign_changes(chain, mid)
        stack.append((lo, mid, vlo, vmid))
        stack.append((mid, hi, vmid, vhi))
    out.sort()
    return out


# ------------------------------------------------------------ public API


def _exact_sign(coeffs: tuple[Fraction, ...], x: float) -> int:
    v = _frac_eval(coeffs, Fraction(x))
    return (v > 0) - (v < 0)


def _float_sign_ok(p: Poly, x: float) -> bool:
    """True when the float value of p(x) is larger than its Horner rounding error."""
    return abs(p(x)) > 4 * (p.degree + 1) * EPS * p.abs_eval(x)


def _refine(p: Poly, exact: tuple[Fraction, ...], lo: float, hi: float) -> float:
    """Root of ``p`` in the isolating interval (lo, hi]."""
    slo, shi = _exact_sign(exact, lo), _exact_sign(exact, hi)
    if shi == 0:
        return hi
    if slo * shi > 0:
        # even-multiplicity cluster: no sign change to bracket
        x = 0.5 * (lo + hi)
    else:
        # narrow on exact signs until float evaluation is trustworthy at both ends
        while not (_float_sign_ok(p, lo) and _float_sign_ok(p, hi)):
            mid = 0.5 * (lo + hi)
            if not lo < mid < hi:
                break
            sm = _exact_sign(exact, mid)
            if sm == 0:
                return mid
            if sm == slo:
                lo = mid
            else:
                hi = mid
        if p(lo) * p(hi) < 0:
            x = brentq(p, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=500, disp=False)
        else:
            x = hi
    dp = p.deriv()
    for _ in range(3):
        d = dp(x)
        if d == 0:
            break
        step = p(x) / d
        xn = x - step
        if not lo < xn <= hi or abs(p(xn)) >= abs(p(x)):
            break
        x = xn
    return x


@lru_cache(maxsize=4096)
def _real_roots_cached(coeffs: tuple[float, ...], merge: float) -> tuple[RealRoot, ...]:
    p = Poly(coeffs).normalized()
    if p.degree < 1:
        raise PolyError("need degree >= 1")
    if abs(p.coeffs[-1]) < 1e-15:
        raise IllConditionedError(
            f"leading coefficient {p.coeffs[-1]:.3e} is negligible relative to the others"
        )
    exact = tuple(Fraction(c) for c in p.coeffs)
    bound = float(_cauchy_bound(exact))
    min_width = Fraction(merge) * Fraction(max(1.0, bound)) / 4
    roots: list[RealRoot] = []
    for lo, hi, count in _isolate(exact, min_width):
        x = _refine(p, exact, float(lo), float(hi))
        roots.append(RealRoot(x, count))
    # merge near-coincident roots
    merged: list[RealRoot] = []
    for r in roots:
        if merged:
            prev = merged[-1]
            scale = max(1.0, abs(prev.value), abs(r.value))
            if abs(r.value - prev.value) < merge * scale:
                w = prev.multiplicity + r.multiplicity
                v = (prev.value * prev.multiplicity + r.value * r.multiplicity) / w
                merged[-1] = RealRoot(v, w)
                continue
        merged.append(r)
    return tuple(merged)


def real_roots_with_multiplicity(p: Poly, merge: float = 1e-8) -> list[RealRoot]:
    """All real roots of ``p``, ascending, with (cluster) multiplicities."""
    return list(_real_roots_cached(p.coeffs, merge))


def real_roots(p: Poly | Sequence[float], tol: float = 1e-12) -> list[float]:
    """Sorted distinct real roots of ``p`` (ascending coefficients).

    ``tol`` bounds the relative residual |p(r)| / sum |c_i r^i| of each root;
    failing that raises ``PolyError``.
    """
    if not isinstance(p, Poly):
        p = Poly(p)
    roots = real_roots_with_multiplicity(p)
    pn = p.normalized()
    for r in roots:
        if r.multiplicity == 1 and pn.relative_residual(r.value) > tol:
            raise PolyError(f"root {r.value!r} refined only to {pn.relative_residual(r.value):.2e}")
    return [r.value for r in roots]


@dataclass(frozen=True)
class Select:
    """Pick the ``rank``-th root (0 = smallest, -1 = largest) inside (lo, hi)."""

    lo: float = -math.inf
    hi: float = math.inf
    rank: int = 0

    def choose(self, roots: Sequence[float]) -> float:
        pool = [r for r in roots if self.lo < r < self.hi]
        try:
            return pool[self.rank]
        except IndexError:
            raise NoRootError(f"no real root matches {self}") from None


def largest_negative() -> Select:
    return Select(hi=0.0, rank=-1)


def smallest_positive() -> Select:
    return Select(lo=0.0, rank=0)


def largest_positive() -> Select:
    return Select(lo=0.0, rank=-1)


def smallest_greater_than(x: float) -> Select:
    return Select(lo=x, rank=0)


def largest_greater_than(x: float) -> Select:
    return Select(lo=x, rank=-1)


def kth_smallest(k: int) -> Select:
    return Select(rank=k)


def in_interval(lo: float, hi: float, rank: int = 0) -> Select:
    return Select(lo=lo, hi=hi, rank=rank)


@dataclass(frozen=True)
class RootQuery:
    poly: Poly
    predicate: Select


def select_root(q: RootQuery) -> float:
    return q.predicate.choose(real_roots(q.poly))
