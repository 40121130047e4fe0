"""Power series with eventually constant coefficients and their positive zeros.

Every series handled explicitly here has the form

    p(x) + t * x**L / (1 - x),

where ``p`` is a polynomial of degree ``L - 1`` (the prefix) and ``t`` is the
tail coefficient repeated forever. Evaluation on (0, 1) is exact in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

DEFAULT_TOL = 1e-12
DEFAULT_RIGHT_END = 1.0 - 1e-6
GRID_STEP = 1e-3
BISECT_WIDTH = 1e-14
MAX_MULTIPLICITY = 3


class SeriesDomainError(ValueError):
    """Evaluation point outside the open unit interval."""


class UnresolvedClusterError(RuntimeError):
    """Zeros could not be separated at the requested tolerance."""

    def __init__(self, message: str, bracket: tuple[float, float]):
        super().__init__(f"unresolved cluster in [{bracket[0]:.15g}, {bracket[1]:.15g}]: {message}")
        self.bracket = bracket


def _check_domain(x):
    arr = np.asarray(x, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise SeriesDomainError(f"evaluation point outside (0, 1): {x!r}")


def _horner(coeffs: Sequence[float], x):
    acc = 0.0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _geom_tail(L: int, x, order: int = 0):
    """k-th derivative of x**L / (1 - x)."""
    w = 1.0 - x
    if order == 0:
        return x**L / w
    if order == 1:
        return L * x ** (L - 1) / w + x**L / w**2
    if order == 2:
        first = L * (L - 1) * x ** (L - 2) / w if L >= 2 else 0.0 * x
        middle = 2 * L * x ** (L - 1) / w**2 if L >= 1 else 0.0 * x
        return first + middle + 2 * x**L / w**3
    raise ValueError("order must be 0, 1 or 2")


@dataclass(frozen=True)
class PowerSeries:
    """``sum(prefix[i] x**i) + tail * x**len(prefix) / (1 - x)`` with real coefficients."""

    prefix: tuple[float, ...]
    tail: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(float(c) for c in self.prefix))
        object.__setattr__(self, "tail", float(self.tail))
        if len(self.prefix) < 1:
            raise ValueError("prefix must contain at least the constant term")

    def __len__(self) -> int:
        return len(self.prefix)

    def coefficient(self, n: int) -> float:
        return self.prefix[n] if n < len(self.prefix) else self.tail

    def coefficients(self, n: int) -> list[float]:
        """First ``n`` coefficients."""
        return [self.coefficient(i) for i in range(n)]

    def sign_pattern(self) -> list[float]:
        """Prefix followed by one copy of the tail: enough for sign counting."""
        return list(self.prefix) + [self.tail]

    def _derivative_prefix(self, order: int) -> list[float]:
        c = list(self.prefix)
        for _ in range(order):
            c = [i * c[i] for i in range(1, len(c))] or [0.0]
        return c

    def __call__(self, x):
        _check_domain(x)
        return _horner(self.prefix, x) + self.tail * _geom_tail(len(self.prefix), x)

    def d1(self, x):
        _check_domain(x)
        return _horner(self._derivative_prefix(1), x) + self.tail * _geom_tail(len(self.prefix), x, 1)

    def d2(self, x):
        _check_domain(x)
        return _horner(self._derivative_prefix(2), x) + self.tail * _geom_tail(len(self.prefix), x, 2)

    def truncate(self, n: int) -> "PowerSeries":
        """Degree-``n`` polynomial part (tail dropped)."""
        return PowerSeries(tuple(self.coefficients(n + 1)), 0.0)


@dataclass(frozen=True)
class TernarySeries(PowerSeries):
    """Member of the class 1 + sum b_n x^n with b_n in {-1, 0, 1}, eventually constant."""

    def __post_init__(self):
        super().__post_init__()
        digits = self.prefix + (self.tail,)
        if any(d not in (-1.0, 0.0, 1.0) for d in digits):
            raise ValueError(f"digits must lie in {{-1, 0, 1}}: {digits}")
        if self.prefix[0] != 1.0:
            raise ValueError("constant coefficient must be +1")

    @classmethod
    def from_digits(cls, digits: Sequence[int], tail: int = 0) -> "TernarySeries":
        return cls(tuple(digits), tail)

    @property
    def digits(self) -> tuple[int, ...]:
        return tuple(int(d) for d in self.prefix)

    def truncate(self, n: int) -> "TernarySeries":
        return TernarySeries(tuple(self.coefficients(max(n, 0) + 1)), 0)


def eval_series(s: PowerSeries, x):
    return s(x)


def eval_d1(s: PowerSeries, x):
    return s.d1(x)


def eval_d2(s: PowerSeries, x):
    return s.d2(x)


def sign_changes(coeffs: Sequence[float]) -> int:
    """Number of strict sign alternations in ``coeffs``, zeros skipped."""
    count = 0
    last = 0.0
    for c in coeffs:
        if c == 0:
            continue
        if last != 0 and (c > 0) != (last > 0):
            count += 1
        last = c
    return count


def root_product_bound(k: int) -> float:
    """Lower bound on |a_1 ... a_k| for zeros in the unit disk of any ternary series."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return (1.0 + 1.0 / k) ** (-k / 2.0) * (k + 1) ** -0.5


@dataclass(frozen=True)
class Zero:
    location: float
    multiplicity: int = 1


@dataclass(frozen=True)
class ZeroList:
    zeros: tuple[Zero, ...]
    exhaustive_up_to: float

    def __len__(self) -> int:
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    @property
    def locations(self) -> list[float]:
        return [z.location for z in self.zeros]

    @property
    def count(self) -> int:
        """Number of zeros counted with multiplicity."""
        return sum(z.multiplicity for z in self.zeros)

    def xi(self, k: int) -> float:
        """k-th positive zero with multiplicity, or 1.0 when there are fewer than k."""
        seen = 0
        for z in self.zeros:
            seen += z.multiplicity
            if seen >= k:
                return z.location
        return 1.0


def bisect(f: Callable[[float], float], lo: float, hi: float, width: float = BISECT_WIDTH,
           max_iter: int = 200) -> float:
    """Root of ``f`` in [lo, hi]; requires a strict sign change."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(max_iter):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def newton_polish(f, df, x: float, lo: float, hi: float, steps: int = 3) -> float:
    # Newton steps that leave the bracket are rejected.
    for _ in range(steps):
        d = df(x)
        if d == 0.0 or not math.isfinite(d):
            break
        nx = x - f(x) / d
        if not (lo <= nx <= hi):
            break
        if abs(f(nx)) > abs(f(x)):
            break
        x = nx
    return x


def _strict_change(a: float, b: float) -> bool:
    return (a > 0 and b < 0) or (a < 0 and b > 0)


def _bracketed_roots(g, xs, vals) -> list[float]:
    return [bisect(g, float(xs[i]), float(xs[i + 1])) for i in np.nonzero(vals[:-1] * vals[1:] < 0)[0]]


def positive_zeros(f, right_end: float = DEFAULT_RIGHT_END, tol: float = DEFAULT_TOL,
                   df: Callable | None = None, d2f: Callable | None = None) -> ZeroList:
    """All zeros of ``f`` on (0, right_end], with multiplicities up to 3.

    ``f`` is either a :class:`PowerSeries`-like object exposing ``d1`` and ``d2``
    or a plain callable with explicit ``df`` and ``d2f``. When ``f`` exposes a
    ``sign_pattern`` the zero count is checked against Descartes' rule.
    """
    if df is None:
        df = f.d1
    if d2f is None:
        d2f = f.d2
    if not 0.0 < right_end < 1.0:
        raise SeriesDomainError(f"right_end must lie in (0, 1): {right_end!r}")
    if tol <= 0:
        raise ValueError("tol must be positive")

    n = max(int(math.ceil(right_end / GRID_STEP)), 2)
    xs = np.linspace(right_end / n, right_end, n)
    xs = np.concatenate(([min(1e-9, xs[0] / 2)], xs))
    dv = np.asarray(df(xs), dtype=float)
    d2v = np.asarray(d2f(xs), dtype=float)

    # Breakpoints split (0, right_end] into pieces on which f is monotone.
    crits = _bracketed_roots(df, xs, dv)
    infl = _bracketed_roots(d2f, xs, d2v)

    zeros: list[Zero] = []
    even_pts = []
    for m in crits:
        if abs(f(m)) <= tol:
            mult = 2 if abs(d2f(m)) > math.sqrt(tol) else MAX_MULTIPLICITY
            even_pts.append(m)
            zeros.append(Zero(m, mult))
    triple_pts = []
    for m in infl:
        if abs(f(m)) <= tol and abs(df(m)) <= math.sqrt(tol):
            if all(abs(m - e) > 1e-6 for e in even_pts):
                triple_pts.append(m)
                zeros.append(Zero(m, 3))

    pts = sorted(set(xs.tolist()) | set(crits))
    vals = dict(zip(pts, np.asarray(f(np.array(pts)), dtype=float).tolist()))
    for p in even_pts + triple_pts:
        vals[min(pts, key=lambda q: abs(q - p))] = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        flo, fhi = vals[lo], vals[hi]
        if not _strict_change(flo, fhi):
            continue
        if any(lo - 1e-5 <= t <= hi + 1e-5 for t in triple_pts):
            continue
        r = bisect(f, lo, hi)
        r = newton_polish(f, df, r, lo, hi)
        mult = 1
        if abs(df(r)) <= math.sqrt(tol):
            if abs(d2f(r)) <= math.sqrt(tol):
                mult = 3
            else:
                raise UnresolvedClusterError("sign change at a critical point", (lo, hi))
        zeros.append(Zero(r, mult))

    zeros.sort(key=lambda z: z.location)
    for a, b in zip(zeros[:-1], zeros[1:]):
        if b.location - a.location <= tol:
            raise UnresolvedClusterError("zeros closer than tol", (a.location, b.location))
    result = ZeroList(tuple(zeros), right_end)
    pattern = getattr(f, "sign_pattern", None)
    if pattern is not None:
        bound = sign_changes(pattern())
        if result.count > bound:
            raise UnresolvedClusterError(
                f"{result.count} zeros exceed Descartes bound {bound}",
                (zeros[0].location, zeros[-1].location))
    return result
