"""Cusp corners of the locus at pairs of zeros of eventually-(+1) ternary series.

Near a corner (gamma0, lambda0) every locus point comes from a perturbation
f = h - x^N R of the unique witness h, and the displaced zeros satisfy

    C1 (gamma0 - g)^alpha < l - lambda0 < C2 (gamma0 - g)^alpha,
    alpha = log(lambda0) / log(gamma0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .series import PowerSeries, TernarySeries, bisect, newton_polish, positive_zeros


class NotCornerWitness(ValueError):
    pass


class NTooSmall(RuntimeError):
    pass


class ResolutionLimit(RuntimeError):
    """Displacement of the perturbed zeros is below double-precision resolution."""


# smallest zero displacement that double precision still resolves reliably
MIN_DISPLACEMENT = 1e-14


@dataclass(frozen=True)
class CornerEnvelope:
    gamma0: float
    lambda0: float
    alpha: float
    c1: float
    c2: float
    h: TernarySeries
    uniqueness_assumed: bool = True


def star_parameters(h: PowerSeries) -> tuple[int, float] | None:
    """(k, a) if ``h`` is a (*)-function 1 - x - ... - x^(k-1) + a x^k + x^(k+1)/(1-x)."""
    if h.tail != 1.0:
        return None
    c = list(h.prefix)
    while len(c) > 1 and c[-1] == 1.0:
        c.pop()
    # c is now 1, -1, ..., -1, a  (with a != 1) or just [1]
    if len(c) == 1:
        return 1, 1.0
    body, a = c[1:-1], c[-1]
    if c[0] != 1.0 or any(x != -1.0 for x in body):
        return None
    return len(c) - 1, a


def _refine(f, df, lo, hi):
    r = bisect(f, lo, hi, width=1e-15)
    return newton_polish(f, df, r, lo, hi)


def corner_envelope(h: TernarySeries, bracket_gamma: tuple[float, float],
                    bracket_lambda: tuple[float, float]) -> CornerEnvelope:
    if h.tail != 1.0:
        raise NotCornerWitness("witness must have eventual coefficients +1")
    try:
        g0 = _refine(h, h.d1, *bracket_gamma)
        l0 = _refine(h, h.d1, *bracket_lambda)
    except ValueError as exc:
        raise NotCornerWitness(f"bracket does not isolate a zero: {exc}") from None
    dg, dl = h.d1(g0), h.d1(l0)
    if not (dg < 0 < dl) or not (0.5 < g0 < l0 < 1.0):
        raise NotCornerWitness(f"need h'(gamma0) < 0 < h'(lambda0); got {dg:.6g}, {dl:.6g}")
    alpha = math.log(l0) / math.log(g0)
    c1 = 2 * abs(dg) ** alpha * (1 - g0) ** alpha / (2**alpha * 3 * dl)
    c2 = 3**alpha * 2 * abs(dg) ** alpha / (2**alpha * (1 - l0) * dl)
    params = star_parameters(h)
    unique = params is not None and params[1] in (-1.0, 0.0, 1.0)
    return CornerEnvelope(g0, l0, alpha, c1, c2, h, uniqueness_assumed=not unique)


def envelope_from_series(h: TernarySeries, half_width: float = 5e-3) -> CornerEnvelope:
    """Envelope at the first two positive zeros of ``h``, bracketed automatically."""
    zs = positive_zeros(h).locations
    if len(zs) < 2:
        raise NotCornerWitness(f"witness has fewer than two positive zeros: {zs}")
    g0, l0 = zs[0], zs[1]
    w = min(half_width, (l0 - g0) / 3)
    return corner_envelope(h, (g0 - w, g0 + w), (l0 - w, l0 + w))


def _perturbed(h: PowerSeries, N: int, R: PowerSeries):
    def f(x):
        return h(x) - x**N * R(x)

    def df(x):
        return h.d1(x) - N * x ** (N - 1) * R(x) - x**N * R.d1(x)

    return f, df


def sandwich_bounds(env: CornerEnvelope, N: int, R: PowerSeries):
    """Two-sided bounds on gamma0 - g and l - lambda0 for f = h - x^N R."""
    g0, l0, h = env.gamma0, env.lambda0, env.h
    pg = g0**N * R(g0) / abs(h.d1(g0))
    pl = l0**N * R(l0) / h.d1(l0)
    return (2 * pg / 3, 2 * pg), (2 * pl / 3, 2 * pl)


def perturbed_zeros(h: TernarySeries | CornerEnvelope, N: int, R: PowerSeries) -> tuple[float, float]:
    """Zeros of h - x^N R adjacent to the corner, one on each outer side."""
    env = h if isinstance(h, CornerEnvelope) else envelope_from_series(h)
    if all(c == 0 for c in R.sign_pattern()):
        raise ValueError("R must not vanish identically")
    if any(c not in (0.0, 1.0) for c in R.sign_pattern()):
        raise ValueError("R must have digits in {0, 1}")
    g0, l0 = env.gamma0, env.lambda0
    f, df = _perturbed(env.h, N, R)
    (lg, ug), (ll, ul) = sandwich_bounds(env, N, R)
    if min(lg, ll) < MIN_DISPLACEMENT:
        raise ResolutionLimit(f"N={N}: displacement below {MIN_DISPLACEMENT:g} is not resolvable")
    room = (l0 - g0) / 4
    wg = min(3 * ug, room, g0 - 0.5)
    wl = min(3 * ul, room, (1 - l0) / 2)
    if not (f(g0) < 0 < f(g0 - wg)) or not (f(l0) < 0 < f(l0 + wl)):
        raise NTooSmall(f"N={N} too small: displaced zeros not in one-sided brackets")
    return _refine(f, df, g0 - wg, g0), _refine(f, df, l0, l0 + wl)


@dataclass
class CornerRow:
    N: int
    R_id: str
    gamma_tilde: float
    lambda_tilde: float
    ratio: float
    c1: float
    c2: float
    sandwich_ok: bool

    @property
    def passed(self) -> bool:
        return self.c1 <= self.ratio <= self.c2

    def as_tuple(self):
        return (self.N, self.R_id, self.gamma_tilde, self.lambda_tilde, self.ratio,
                self.c1, self.c2, self.passed)


@dataclass
class CornerReport:
    envelope: CornerEnvelope
    rows: list[CornerRow] = field(default_factory=list)
    # first N skipped for lack of floating-point resolution, if any
    resolution_stop: int | None = None

    @property
    def ok(self) -> bool:
        return all(r.passed and r.sandwich_ok for r in self.rows)

    @property
    def failures(self) -> list[tuple[int, str]]:
        return [(r.N, r.R_id) for r in self.rows if not (r.passed and r.sandwich_ok)]


GEOMETRIC = TernarySeries((1,), 1)
STANDARD_R = {
    "geom": GEOMETRIC,
    "one": TernarySeries((1,), 0),
    "one_plus_x": TernarySeries((1, 1), 0),
}


def corner_membership_check(env: CornerEnvelope, n_range: tuple[int, int],
                            r_samples: dict[str, PowerSeries],
                            stop_at_resolution: bool = False) -> CornerReport:
    """Perturbed zeros for every N in ``n_range`` and every R, checked against both envelopes.

    With ``stop_at_resolution`` the scan ends quietly at the first N whose
    displacement double precision cannot resolve; otherwise that raises.
    """
    report = CornerReport(env)
    for N in range(n_range[0], n_range[1] + 1):
        for rid, R in r_samples.items():
            try:
                gt, lt = perturbed_zeros(env, N, R)
            except ResolutionLimit:
                if not stop_at_resolution:
                    raise
                report.resolution_stop = N
                report.rows = [r for r in report.rows if r.N < N]
                return report
            (lg, ug), (ll, ul) = sandwich_bounds(env, N, R)
            dg, dl = env.gamma0 - gt, lt - env.lambda0
            ok = lg <= dg <= ug and ll <= dl <= ul
            report.rows.append(CornerRow(N, rid, gt, lt, dl / dg**env.alpha, env.c1, env.c2, ok))
    return report


# The five most outward corners, all zero pairs of (*)-functions in the ternary class.
CORNER_WITNESSES = {
    "h4_0": TernarySeries((1, -1, -1, -1, 0), 1),
    "h4_m1": TernarySeries((1, -1, -1, -1, -1), 1),
    "h5_0": TernarySeries((1, -1, -1, -1, -1, 0), 1),
    "h5_m1": TernarySeries((1, -1, -1, -1, -1, -1), 1),
    "h6_0": TernarySeries((1, -1, -1, -1, -1, -1, 0), 1),
}
