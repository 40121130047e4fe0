"""Attractors of {Tx, Tx + b} for the three planar normal forms of T.

The attractor is the set of sums sum_n a_n T^n b with a_n in {0, 1}; a depth-d
point cloud keeps the first d digits. It is connected iff TE meets TE + b,
which :func:`hata_gap` probes at finite resolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .membership import FrontierOverflow, Verdict, certify_outside

MAX_DEPTH = 24


class InconsistentVerdict(RuntimeError):
    """Geometric and algebraic tests disagree in a way that signals a bug."""


@dataclass(frozen=True)
class AffinePair:
    form: str
    params: tuple[float, ...]
    b_vec: tuple[float, float]

    def __post_init__(self):
        T = self.matrix
        if self.form == "rotation":
            a, b = self.params
            ok = a * a + b * b < 1
        elif self.form == "diagonal":
            g, l = self.params
            ok = abs(g) < 1 and abs(l) < 1 and g != l
        elif self.form == "jordan":
            ok = abs(self.params[0]) < 1
        else:
            raise ValueError(f"unknown normal form {self.form!r}")
        if not ok:
            raise ValueError(f"{self.form}{self.params} is not an admissible contraction")
        b = np.asarray(self.b_vec, dtype=float)
        if abs(np.linalg.det(np.column_stack([b, T @ b]))) < 1e-14:
            raise ValueError(f"b={self.b_vec} is not cyclic for T")

    @classmethod
    def rotation(cls, a: float, b: float, b_vec=(1.0, 0.0)):
        return cls("rotation", (a, b), tuple(b_vec))

    @classmethod
    def diagonal(cls, gamma: float, lam: float, b_vec=(1.0, 1.0)):
        return cls("diagonal", (gamma, lam), tuple(b_vec))

    @classmethod
    def jordan(cls, lam: float, b_vec=(0.0, 1.0)):
        return cls("jordan", (lam,), tuple(b_vec))

    @property
    def matrix(self) -> np.ndarray:
        if self.form == "rotation":
            a, b = self.params
            return np.array([[a, b], [-b, a]])
        if self.form == "diagonal":
            g, l = self.params
            return np.array([[g, 0.0], [0.0, l]])
        (l,) = self.params
        return np.array([[l, 1.0], [0.0, l]])

    def orbit_norm(self, n: int) -> float:
        """||T^n b|| in closed form."""
        b1, b2 = self.b_vec
        if self.form == "rotation":
            a, b = self.params
            return math.hypot(a, b) ** n * math.hypot(b1, b2)
        if self.form == "diagonal":
            g, l = self.params
            return math.hypot(g**n * b1, l**n * b2)
        (l,) = self.params
        first = l**n * b1 + (n * l ** (n - 1) * b2 if n else 0.0)
        return math.hypot(first, l**n * b2)

    def tail_radius(self, depth: int) -> float:
        """sum_{n >= depth} ||T^n b||; terms below 1e-22 past the Jordan hump are dropped."""
        rho = float(max(abs(np.linalg.eigvals(self.matrix))))
        hump = 1.0 / (1.0 - rho)
        total, n = 0.0, depth
        while True:
            term = self.orbit_norm(n)
            total += term
            n += 1
            if term < 1e-22 and n > hump:
                return total


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray
    depth: int
    tail_radius: float


def attractor_points(pair: AffinePair, depth: int) -> PointCloud:
    """All 2**depth partial sums; point i carries digit a_n = bit n of i."""
    if not 0 <= depth <= MAX_DEPTH:
        raise ValueError(f"depth must lie in [0, {MAX_DEPTH}], got {depth}")
    T = pair.matrix
    pts = np.zeros((1, 2))
    v = np.asarray(pair.b_vec, dtype=float)
    for _ in range(depth):
        pts = np.concatenate([pts, pts + v])
        v = T @ v
    return PointCloud(pts, depth, pair.tail_radius(depth))


def _snap(points: np.ndarray, cell: float) -> np.ndarray:
    return np.unique(np.round(points / cell), axis=0) * cell


def hata_gap(pair: AffinePair, depth: int) -> float:
    """Certified positive separation of TE and TE + b, or 0 when inconclusive.

    Both depth-d approximations are snapped to a grid of a quarter tail radius
    before the nearest-pair search; the snapping error is subtracted as well.
    """
    cloud = attractor_points(pair, depth)
    tail = cloud.tail_radius
    cell = tail / 4 if tail > 0 else 1e-12
    left = _snap(cloud.points @ pair.matrix.T, cell)
    right = _snap(left + np.asarray(pair.b_vec, dtype=float), cell)
    slack = 2 * tail + cell * math.sqrt(2)
    tree = cKDTree(right)
    # unbounded nearest-neighbour queries are slow when the pieces are far apart
    radius = max(4 * slack, 1e-12)
    while True:
        dist, _ = tree.query(left, k=1, distance_upper_bound=radius)
        if np.isfinite(dist).any():
            return max(0.0, float(dist.min()) - slack)
        radius *= 4


@dataclass(frozen=True)
class CrossCheck:
    gamma: float
    lam: float
    verdict: Verdict
    gap: float
    note: str = ""

    @property
    def consistent(self) -> bool:
        return not (self.gap > 0 and self.verdict is Verdict.TrivialInside)


def connectivity_cross_check(gamma: float, lam: float, depth: int) -> CrossCheck:
    """Compare the algebraic exclusion test with the geometric Hata probe."""
    if gamma == lam:
        raise ValueError("gamma and lambda must differ")
    note = ""
    try:
        verdict = certify_outside(gamma, lam, max(depth, 1)).kind
    except FrontierOverflow as exc:
        verdict, note = Verdict.Undecided, str(exc)
    gap = hata_gap(AffinePair.diagonal(gamma, lam), depth)
    check = CrossCheck(gamma, lam, verdict, gap, note)
    if not check.consistent:
        raise InconsistentVerdict(f"positive gap {gap:.3e} at trivially connected ({gamma}, {lam})")
    if verdict is Verdict.CertifiedOutside and gap == 0.0:
        check = CrossCheck(gamma, lam, verdict, gap, "gap below finite-depth resolution")
    return check


def raster(cloud: PointCloud, width: int, height: int) -> np.ndarray:
    """Binary image (0 = point present, 255 = empty) of the cloud's bounding box."""
    pts = cloud.points
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    col = np.minimum(((pts[:, 0] - lo[0]) / span[0] * width).astype(int), width - 1)
    row = np.minimum(((hi[1] - pts[:, 1]) / span[1] * height).astype(int), height - 1)
    img = np.full((height, width), 255, dtype=np.uint8)
    img[row, col] = 0
    return img
