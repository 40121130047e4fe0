"""(*)- and (**)-functions and the boundary curves phi and psi.

A (*)-function is

    h_k^(a)(x) = 1 - x - ... - x^(k-1) + a x^k + x^(k+1)/(1-x),

and a (**)-function is

    H_{k,l}^(a,b)(x) = 1 - sum_{i<k} x^i + a x^k + sum_{k<i<l} x^i + b x^l - x^(l+1)/(1-x).

Both are evaluated in closed form as combinations of g_j(x) = x^j / (1 - x).
``phi(gamma)`` is the smallest second zero over series with coefficients in
[-1, 1] vanishing at gamma; ``psi(gamma)`` is the smallest third zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .series import (
    DEFAULT_TOL,
    PowerSeries,
    SeriesDomainError,
    bisect,
    newton_polish,
)

ENDPOINT_GUARD = 1e-9
RIGHT_LIMIT = 1.0 - 1e-6
K_WINDOW = 32
L_WINDOW = 64
PSI_BISECT_ITERS = 60
ALPHA2_APPROX = 0.649138
ALPHA3_APPROX = 0.727883


class StarDomainError(ValueError):
    """Argument outside the open interval where phi / psi are defined."""


class NoSecondZeroError(RuntimeError):
    """The (*)-function does not dip below zero after its minimum."""


class WindowExhaustedError(RuntimeError):
    """No admissible (k, l) pair in the search window."""


class BracketError(RuntimeError):
    """Bisection bracket for psi does not enclose the target."""


def _g(j, x, order=0):
    # derivatives of x**j / (1 - x)
    w = 1.0 - x
    if order == 0:
        return x**j / w
    if order == 1:
        return j * x ** (j - 1) / w + x**j / w**2
    return j * (j - 1) * x ** (j - 2) / w + 2 * j * x ** (j - 1) / w**2 + 2 * x**j / w**3


def _mono(j, x, order=0):
    if order == 0:
        return x**j
    if order == 1:
        return j * x ** (j - 1)
    return j * (j - 1) * x ** (j - 2)


@dataclass(frozen=True)
class StarFn:
    k: int
    a: float

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def _eval(self, x, order):
        k = self.k
        const = 1.0 if order == 0 else 0.0
        return const + self.a * _mono(k, x, order) - _g(1, x, order) + _g(k, x, order) + _g(k + 1, x, order)

    def __call__(self, x):
        return self._eval(x, 0)

    def d1(self, x):
        return self._eval(x, 1)

    def d2(self, x):
        return self._eval(x, 2)

    @property
    def series(self) -> PowerSeries:
        return PowerSeries((1.0,) + (-1.0,) * (self.k - 1) + (self.a,), 1.0)

    def sign_pattern(self) -> list[float]:
        return self.series.sign_pattern()


@dataclass(frozen=True)
class DoubleStarFn:
    k: int
    l: int
    a: float
    b: float

    def __post_init__(self):
        if not 1 <= self.k < self.l:
            raise ValueError("need 1 <= k < l")

    def _eval(self, x, order):
        k, l = self.k, self.l
        const = 1.0 if order == 0 else 0.0
        return (const + self.a * _mono(k, x, order) + self.b * _mono(l, x, order)
                - _g(1, x, order) + _g(k, x, order) + _g(k + 1, x, order)
                - _g(l, x, order) - _g(l + 1, x, order))

    def __call__(self, x):
        return self._eval(x, 0)

    def d1(self, x):
        return self._eval(x, 1)

    def d2(self, x):
        return self._eval(x, 2)

    @property
    def series(self) -> PowerSeries:
        k, l = self.k, self.l
        prefix = (1.0,) + (-1.0,) * (k - 1) + (self.a,) + (1.0,) * (l - k - 1) + (self.b,)
        return PowerSeries(prefix, -1.0)

    def sign_pattern(self) -> list[float]:
        return self.series.sign_pattern()


@dataclass(frozen=True)
class PhiResult:
    gamma: float
    lam: float
    witness: StarFn

    @property
    def k_used(self) -> int:
        return self.witness.k


@dataclass(frozen=True)
class PsiResult:
    gamma: float
    lam: float
    witness: DoubleStarFn


def solve_a(k: int, gamma: float) -> float:
    """The coefficient a with h_k^(a)(gamma) = 0."""
    g = gamma
    return (2 * g - 1 - g**k - g ** (k + 1)) / ((1 - g) * g**k)


def second_zero(h: StarFn, gamma: float, tol: float = DEFAULT_TOL) -> float:
    """Larger positive zero of a (*)-function vanishing at ``gamma``.

    The derivative has one coefficient sign change, so h has a single critical
    point m; the second zero is the sign change of h on [m, 1).
    """
    lo = min(1e-9, gamma / 2)
    if h.d1(lo) >= 0 or h.d1(RIGHT_LIMIT) <= 0:
        raise NoSecondZeroError(f"{h} has no interior minimum")
    m = bisect(h.d1, lo, RIGHT_LIMIT)
    hm = h(m)
    if abs(hm) <= tol:
        return m
    if hm > 0:
        raise NoSecondZeroError(f"{h} stays positive (min {hm:.3e} at {m:.9f})")
    r = bisect(h, m, RIGHT_LIMIT)
    return newton_polish(h, h.d1, r, m, RIGHT_LIMIT)


def alpha2() -> float:
    """Smallest double zero: the root of 2x^5 - 8x^2 + 11x - 4 in (0.5, 0.7)."""
    return bisect(lambda x: 2 * x**5 - 8 * x**2 + 11 * x - 4, 0.5, 0.7, width=1e-15)


def _check_open(x: float, lo: float, hi: float, name: str):
    if not (lo + ENDPOINT_GUARD <= x <= hi - ENDPOINT_GUARD):
        raise StarDomainError(f"{name} must lie in ({lo}, {hi}), got {x!r}")


def phi(gamma: float, k_max: int = 512) -> PhiResult:
    """Lower boundary of the region admitting [-1,1]-coefficient series zeros at gamma and lambda."""
    _check_open(gamma, 0.5, alpha2(), "gamma")
    for k in range(1, k_max + 1):
        a = solve_a(k, gamma)
        if -1.0 <= a <= 1.0:
            h = StarFn(k, a)
            return PhiResult(gamma, second_zero(h, gamma), h)
    raise StarDomainError(f"no admissible k <= {k_max} for gamma={gamma!r}")


def _base_and_slope(k, l, x):
    """H_{k,l}^(0,0) and its derivative; k, l may be arrays."""
    B = 1.0 - _g(1, x) + _g(k, x) + _g(k + 1, x) - _g(l, x) - _g(l + 1, x)
    dB = -_g(1, x, 1) + _g(k, x, 1) + _g(k + 1, x, 1) - _g(l, x, 1) - _g(l + 1, x, 1)
    return B, dB


def solve_ab(k, l, lam):
    """Coefficients (a, b) giving H_{k,l}^(a,b) a double zero at ``lam``."""
    B, dB = _base_and_slope(k, l, lam)
    a = (lam * dB - l * B) / ((l - k) * lam**k)
    b = (k * B - lam * dB) / ((l - k) * lam**l)
    return a, b


@lru_cache(maxsize=1)
def _window():
    k, l = np.meshgrid(np.arange(1, K_WINDOW + 1), np.arange(1, L_WINDOW + 1), indexing="ij")
    keep = l > k
    return k[keep].astype(float), l[keep].astype(float)


def _smallest_zero_before(H: DoubleStarFn, lam: float) -> float | None:
    # Exactly one sign change on (0, lam) when lam is a local maximum of H at level 0.
    for delta in (1e-3, 1e-4, 1e-5, 1e-6, 1e-7):
        right = lam - delta
        if right > 0 and H(right) < 0:
            r = bisect(H, min(1e-9, right / 2), right)
            return newton_polish(H, H.d1, r, 0.0, right)
    return None


def psi_inverse(lam: float) -> PsiResult:
    """The gamma whose optimal (**)-function has its double zero at ``lam``."""
    a3 = alpha3()
    _check_open(lam, a3, 1.0, "lambda")
    ks, ls = _window()
    a, b = solve_ab(ks, ls, lam)
    ok = np.nonzero((np.abs(a) <= 1.0) & (np.abs(b) <= 1.0))[0]
    for i in ok:
        H = DoubleStarFn(int(ks[i]), int(ls[i]), float(a[i]), float(b[i]))
        if H.d2(lam) >= 0:
            continue
        gamma = _smallest_zero_before(H, lam)
        if gamma is not None:
            return PsiResult(gamma, lam, H)
    raise WindowExhaustedError(
        f"no admissible (k, l) with k <= {K_WINDOW}, l <= {L_WINDOW} at lambda={lam!r}")


def psi(gamma: float) -> PsiResult:
    """Smallest possible third zero, obtained by inverting :func:`psi_inverse`."""
    a3 = alpha3()
    _check_open(gamma, 0.5, a3, "gamma")
    lo = a3 + ENDPOINT_GUARD
    if psi_inverse(lo).gamma <= gamma:
        raise BracketError(f"gamma={gamma!r} not below psi^-1 at the bracket end [{lo!r}]")
    hi = None
    for cand in (0.8, 0.9, 0.95, 0.97, 0.98, 0.99):
        try:
            if psi_inverse(cand).gamma < gamma:
                hi = cand
                break
        except WindowExhaustedError:
            break
        lo = cand
    if hi is None:
        raise BracketError(f"no bracket for gamma={gamma!r} within [{lo!r}, 0.99]")
    for _ in range(PSI_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if psi_inverse(mid).gamma > gamma:
            lo = mid
        else:
            hi = mid
    return psi_inverse(0.5 * (lo + hi))


@lru_cache(maxsize=1)
def alpha3() -> float:
    """Smallest triple zero: where the (4, 10) double-zero family acquires H'' = 0."""

    def curvature(lam):
        a, b = solve_ab(4, 10, lam)
        return DoubleStarFn(4, 10, a, b).d2(lam)

    return bisect(curvature, 0.70, 0.76, width=1e-15)


def alpha_constants() -> tuple[float, float]:
    return alpha2(), alpha3()


def switching_points_star(k: int) -> tuple[float, float]:
    """Endpoints of {gamma : |solve_a(k, gamma)| <= 1}; the coefficient equals -1 at both."""
    f = lambda g: solve_a(k, g) + 1.0
    xs = np.linspace(0.3, 0.99, 7000)
    vals = f(xs)
    idx = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
    roots = [bisect(f, xs[i], xs[i + 1], width=1e-15) for i in idx]
    if len(roots) != 2:
        raise RuntimeError(f"expected two switching points for k={k}, found {roots}")
    return roots[0], roots[1]


def switching_points_double(k: int, l: int) -> dict[str, list[float]]:
    """Where the (**)-coefficients a, b cross +-1 along the double-zero family."""
    xs = np.linspace(0.5, 0.99, 4901)
    out = {}
    for name, idx in (("a", 0), ("b", 1)):
        for target in (-1.0, 1.0):
            f = lambda lam: solve_ab(k, l, lam)[idx] - target
            vals = f(xs)
            cross = np.nonzero(vals[:-1] * vals[1:] < 0)[0]
            out[f"{name}={target:+g}"] = [bisect(f, xs[i], xs[i + 1], width=1e-15) for i in cross]
    return out


def phi_table(gammas) -> list[PhiResult]:
    return [phi(g) for g in gammas]


def psi_table(gammas) -> list[PsiResult]:
    return [psi(g) for g in gammas]


__all__ = [
    "StarFn", "DoubleStarFn", "PhiResult", "PsiResult", "solve_a", "second_zero", "phi",
    "solve_ab", "psi_inverse", "psi", "alpha2", "alpha3", "alpha_constants",
    "switching_points_star", "switching_points_double", "SeriesDomainError",
]
