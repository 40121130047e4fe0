"""Certified exclusion from the connectedness locus and bitmap rendering.

A pair (gamma, lambda) lies in the locus when some series 1 + sum b_n x^n with
b_n in {-1, 0, 1} vanishes at both points. Any continuation of a prefix P_n
changes its value at x by at most x^(n+1)/(1-x), so a prefix whose value at
either point exceeds that bound cannot be extended to a common zero. The
search keeps all prefixes passing both bounds, level by level; an empty level
certifies the pair is outside.

Prefixes whose value pairs fall in the same cell of width 2^-45 are merged.
Rounding and merging error is absorbed by an additive slack of 2^-40 * n on
both bounds, so the test can only err towards "not excluded".

For a whole box around the sample point, any series with coefficients in
[-1, 1] moves by at most r / (1 - x_hi)^2 over a half-width r, so adding that
constant to the bounds excludes the entire box (conservative pixels).
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field

import numba
import numpy as np

SLACK_UNIT = 2.0**-40
CELL = 2.0**-45
DEFAULT_CAP = 2_000_000
RENDER_CAP = 10_000
DEFAULT_RENDER_DEPTH = 40
ZOOM_RENDER_DEPTH = 64

_OUTSIDE, _UNDECIDED, _OVERFLOW, _TRIVIAL = 0, 1, 2, 3


class Verdict(enum.Enum):
    TrivialInside = "TrivialInside"
    CertifiedOutside = "CertifiedOutside"
    Undecided = "Undecided"


class FrontierOverflow(RuntimeError):
    def __init__(self, gamma, lam, depth, surviving, cap):
        super().__init__(
            f"frontier overflow at ({gamma!r}, {lam!r}): {surviving} prefixes alive "
            f"at depth {depth} exceed cap {cap}")
        self.depth = depth
        self.surviving = surviving


@dataclass(frozen=True)
class MembershipVerdict:
    kind: Verdict
    depth: int
    surviving: int

    def __post_init__(self):
        if (self.kind is Verdict.CertifiedOutside) != (self.surviving == 0):
            raise ValueError("CertifiedOutside iff no surviving prefixes")

    def __str__(self):
        if self.kind is Verdict.TrivialInside:
            return self.kind.value
        return f"{self.kind.value} depth={self.depth} surviving={self.surviving}"


def trivial_inside(gamma: float, lam: float) -> bool:
    return gamma * lam >= 0.5


@numba.njit(cache=True)
def _search(g, l, max_depth, cap, eg=0.0, el=0.0):
    """Prefix branch-and-bound. Returns (status, depth, surviving).

    ``eg``, ``el`` widen the bounds to cover a neighbourhood of each point.
    """
    # level 0: the constant term 1 against the full tail bound
    if g / (1.0 - g) + eg < 1.0 or l / (1.0 - l) + el < 1.0:
        return _OUTSIDE, 0, 0
    pg = np.ones(1)
    pl = np.ones(1)
    m = 1
    xg = 1.0
    xl = 1.0
    for n in range(1, max_depth + 1):
        xg *= g
        xl *= l
        slack = SLACK_UNIT * n
        bg = xg * g / (1.0 - g) + slack + eg
        bl = xl * l / (1.0 - l) + slack + el
        size = 1
        while size < 6 * m:
            size *= 2
        mask = size - 1
        used = np.zeros(size, dtype=np.bool_)
        kgs = np.empty(size, dtype=np.int64)
        kls = np.empty(size, dtype=np.int64)
        ng = np.empty(3 * m)
        nl = np.empty(3 * m)
        cnt = 0
        for i in range(m):
            for d in (-1.0, 0.0, 1.0):
                vg = pg[i] + d * xg
                if abs(vg) > bg:
                    continue
                vl = pl[i] + d * xl
                if abs(vl) > bl:
                    continue
                kg = np.int64(np.floor(vg / CELL))
                kl = np.int64(np.floor(vl / CELL))
                h = (kg * np.int64(-7046029254386353131) + kl * np.int64(0x9E3779B1)) & mask
                while used[h] and not (kgs[h] == kg and kls[h] == kl):
                    h = (h + 1) & mask
                if used[h]:
                    continue
                used[h] = True
                kgs[h] = kg
                kls[h] = kl
                ng[cnt] = vg
                nl[cnt] = vl
                cnt += 1
        if cnt == 0:
            return _OUTSIDE, n, 0
        if cnt > cap:
            return _OVERFLOW, n, cnt
        pg = ng[:cnt].copy()
        pl = nl[:cnt].copy()
        m = cnt
    return _UNDECIDED, max_depth, m


@numba.njit(cache=True)
def _box_slack(x, r):
    if r == 0.0:
        return 0.0
    hi = x + r
    if hi >= 1.0:
        return np.inf
    return r / (1.0 - hi) ** 2


@numba.njit(parallel=True, cache=True)
def _search_grid(gs, ls, max_depth, cap, rg, rl):
    n = gs.size
    status = np.empty(n, dtype=np.int64)
    depth = np.empty(n, dtype=np.int64)
    alive = np.empty(n, dtype=np.int64)
    for i in numba.prange(n):
        g, l = gs[i], ls[i]
        if g * l >= 0.5:
            status[i], depth[i], alive[i] = _TRIVIAL, 0, 1
        else:
            status[i], depth[i], alive[i] = _search(
                g, l, max_depth, cap, _box_slack(g, rg), _box_slack(l, rl))
    return status, depth, alive


def _check_point(gamma, lam):
    if not (0.0 < gamma < 1.0 and 0.0 < lam < 1.0):
        raise ValueError(f"point must lie in (0,1)^2: ({gamma!r}, {lam!r})")


def certify_outside(gamma: float, lam: float, max_depth: int, cap: int = DEFAULT_CAP) -> MembershipVerdict:
    """Tri-state verdict; raises :class:`FrontierOverflow` when the frontier exceeds ``cap``."""
    _check_point(gamma, lam)
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if trivial_inside(gamma, lam):
        return MembershipVerdict(Verdict.TrivialInside, 0, 1)
    g, l = sorted((float(gamma), float(lam)))
    status, depth, alive = _search(g, l, int(max_depth), int(cap))
    if status == _OVERFLOW:
        raise FrontierOverflow(gamma, lam, depth, alive, cap)
    if status == _OUTSIDE:
        return MembershipVerdict(Verdict.CertifiedOutside, int(depth), 0)
    return MembershipVerdict(Verdict.Undecided, int(depth), int(alive))


def find_witness(gamma: float, lam: float, depth: int, cap: int = DEFAULT_CAP) -> list[int] | None:
    """Best surviving coefficient prefix (b_0, ..., b_depth), or None if the pair is excluded.

    Uses the same pruning and merging rules as :func:`certify_outside`, keeping
    the digits of each representative.
    """
    _check_point(gamma, lam)
    g, l = float(gamma), float(lam)
    pg = np.ones(1)
    pl = np.ones(1)
    digits = np.ones((1, 1), dtype=np.int8)
    xg = xl = 1.0
    steps = np.array([-1.0, 0.0, 1.0])
    for n in range(1, depth + 1):
        xg *= g
        xl *= l
        slack = SLACK_UNIT * n
        cg = (pg[:, None] + steps * xg).ravel()
        cl = (pl[:, None] + steps * xl).ravel()
        cd = np.concatenate([np.repeat(digits, 3, axis=0),
                             np.tile(steps.astype(np.int8), len(pg))[:, None]], axis=1)
        keep = (np.abs(cg) <= xg * g / (1 - g) + slack) & (np.abs(cl) <= xl * l / (1 - l) + slack)
        cg, cl, cd = cg[keep], cl[keep], cd[keep]
        if cg.size == 0:
            return None
        keys = np.stack([np.floor(cg / CELL), np.floor(cl / CELL)], axis=1)
        _, first = np.unique(keys, axis=0, return_index=True)
        first.sort()
        pg, pl, digits = cg[first], cl[first], cd[first]
        if pg.size > cap:
            raise FrontierOverflow(gamma, lam, n, pg.size, cap)
    score = np.maximum(np.abs(pg) * (1 - g) / (xg * g), np.abs(pl) * (1 - l) / (xl * l))
    return [int(d) for d in digits[int(np.argmin(score))]]


DEFAULT_PALETTE = {
    Verdict.CertifiedOutside: 255,
    Verdict.Undecided: 0,
    Verdict.TrivialInside: 128,
}


@dataclass(frozen=True)
class GridSpec:
    gamma_range: tuple[float, float]
    lambda_range: tuple[float, float]
    width: int
    height: int
    depth: int = DEFAULT_RENDER_DEPTH
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    cap: int = RENDER_CAP
    # white only when the whole pixel square is excluded, not just its center
    conservative: bool = False

    def __post_init__(self):
        for lo, hi in (self.gamma_range, self.lambda_range):
            if not 0.0 < lo < hi < 1.0:
                raise ValueError(f"range must be a subinterval of (0,1): {(lo, hi)}")
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be positive")
        if self.depth < 1:
            raise ValueError("depth must be positive")

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Pixel-center coordinates; row 0 is the top (largest lambda)."""
        g0, g1 = self.gamma_range
        l0, l1 = self.lambda_range
        gs = g0 + (np.arange(self.width) + 0.5) * (g1 - g0) / self.width
        ls = l1 - (np.arange(self.height) + 0.5) * (l1 - l0) / self.height
        return gs, ls


@dataclass
class Rendering:
    grid: GridSpec
    status: np.ndarray
    depth: np.ndarray
    surviving: np.ndarray

    def verdict(self, row: int, col: int) -> Verdict:
        return _STATUS_VERDICT[int(self.status[row, col])]

    def image(self) -> np.ndarray:
        pal = self.grid.palette
        lut = np.array([pal[_STATUS_VERDICT[s]] for s in range(4)], dtype=np.uint8)
        return lut[self.status]

    def rows(self):
        """(gamma, lambda, verdict, depth, surviving) per pixel, row-major."""
        gs, ls = self.grid.centers()
        for i, lam in enumerate(ls):
            for j, g in enumerate(gs):
                s = int(self.status[i, j])
                alive = 0 if s == _OUTSIDE else int(self.surviving[i, j])
                yield float(g), float(lam), _STATUS_VERDICT[s].value, int(self.depth[i, j]), alive


# Overflowed pixels are not excluded, so they render as Undecided.
_STATUS_VERDICT = {
    _OUTSIDE: Verdict.CertifiedOutside,
    _UNDECIDED: Verdict.Undecided,
    _OVERFLOW: Verdict.Undecided,
    _TRIVIAL: Verdict.TrivialInside,
}


def _configure_threads():
    want = os.environ.get("LOCUSKIT_THREADS")
    if want:
        numba.set_num_threads(max(1, min(int(want), numba.config.NUMBA_NUM_THREADS)))


def render(grid: GridSpec) -> Rendering:
    _configure_threads()
    gs, ls = grid.centers()
    G, L = np.meshgrid(gs, ls)
    rg = rl = 0.0
    if grid.conservative:
        # half-widths of a pixel, slightly inflated
        rg = 0.5 * (grid.gamma_range[1] - grid.gamma_range[0]) / grid.width * (1 + 1e-9)
        rl = 0.5 * (grid.lambda_range[1] - grid.lambda_range[0]) / grid.height * (1 + 1e-9)
    status, depth, alive = _search_grid(G.ravel().copy(), L.ravel().copy(), grid.depth, grid.cap, rg, rl)
    shape = (grid.height, grid.width)
    return Rendering(grid, status.reshape(shape), depth.reshape(shape), alive.reshape(shape))
