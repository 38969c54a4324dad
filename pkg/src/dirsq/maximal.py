"""Directional, strong, and collection-indexed maximal operators, the
two-weight directional constant, and the truncated directional singular
integral. All radius / truncation suprema run over dyadic ladders; line
integrals along non-lattice directions use periodic bilinear interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import Parallelogram, ParallelogramCollection
from .spectral import Grid, GridFunction


@dataclass(frozen=True)
class DirectionSet:
    vectors: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        if not self.vectors:
            raise ValueError("direction set must be nonempty")
        units = []
        for v in self.vectors:
            nrm = math.hypot(v[0], v[1])
            if nrm == 0:
                raise ValueError("zero direction")
            units.append((v[0] / nrm, v[1] / nrm))
        if len({(round(a, 12), round(b, 12)) for a, b in units}) != len(units):
            raise ValueError("directions must be distinct")
        object.__setattr__(self, "vectors", tuple(units))

    @staticmethod
    def equispaced(n: int) -> "DirectionSet":
        return DirectionSet(tuple((math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n))
                                  for j in range(n)))

    @staticmethod
    def from_slopes(slopes: Sequence[float]) -> "DirectionSet":
        return DirectionSet(tuple((1.0, float(s)) for s in slopes))

    def __len__(self):
        return len(self.vectors)


def _shift(values: np.ndarray, grid: Grid, t: float, v: Tuple[float, float]) -> np.ndarray:
    """Periodic bilinear sample of f(x + t v)."""
    o1 = t * v[0] / grid.cell
    o2 = t * v[1] / grid.cell
    i1, a1 = int(np.floor(o1)), o1 - np.floor(o1)
    i2, a2 = int(np.floor(o2)), o2 - np.floor(o2)
    base = np.roll(values, (-i1, -i2), axis=(0, 1))
    r1 = np.roll(base, -1, axis=0)
    r2 = np.roll(base, -1, axis=1)
    r12 = np.roll(r1, -1, axis=1)
    return ((1 - a1) * (1 - a2) * base + a1 * (1 - a2) * r1
            + (1 - a1) * a2 * r2 + a1 * a2 * r12)


def _ladder_radii(grid: Grid, refine: int = 1) -> List[float]:
    """Dyadic radii from one cell to half the (periodic) domain width."""
    radii = []
    r = grid.cell / refine
    while r <= grid.L / 2:
        radii.append(r)
        r *= 2
    return radii


def directional_max(f: GridFunction, v: Tuple[float, float], refine: int = 1) -> GridFunction:
    """M_v f: sup over dyadic radii of segment averages of |f| along v.

    The ladder includes the zero-radius limit, so M_v f >= |f| pointwise.
    """
    nrm = math.hypot(v[0], v[1])
    if nrm == 0:
        raise ValueError("zero direction")
    v = (v[0] / nrm, v[1] / nrm)
    g = np.abs(f.values).astype(float)
    out = g.copy()
    radii = _ladder_radii(f.grid, refine)
    # one-sided averages over [0, r] built by dyadic doubling
    h = radii[0]
    one_sided = 0.5 * (g + _shift(g, f.grid, h, v))
    for r in radii:
        two_sided = 0.5 * (one_sided + _shift(one_sided, f.grid, -r, v))
        np.maximum(out, two_sided, out=out)
        one_sided = 0.5 * (one_sided + _shift(one_sided, f.grid, r, v))
    return GridFunction(f.grid, out)


def max_over_directions(f: GridFunction, dirs: DirectionSet, refine: int = 1) -> GridFunction:
    out = np.zeros((f.grid.n, f.grid.n))
    for v in dirs.vectors:
        np.maximum(out, directional_max(f, v, refine).values.real, out=out)
    return GridFunction(f.grid, out)


def collection_max(f: GridFunction, collection: ParallelogramCollection) -> GridFunction:
    """M_C f: max over R containing x of the average of |f| over R
    (rasterized membership on f's grid)."""
    members = collection.members() if isinstance(collection, ParallelogramCollection) else list(collection)
    if not members:
        raise ValueError("empty collection")
    g = np.abs(f.values).astype(float)
    out = np.zeros_like(g)
    grid = f.grid
    x0 = -grid.L / 2
    xs = x0 + np.arange(grid.n) * grid.cell
    for p in members:
        b = p.box()
        cols = np.nonzero((xs >= float(b.x0)) & (xs < float(b.x1)))[0]
        if len(cols) == 0:
            continue
        base = float(b.s) * xs[cols]
        r0 = np.clip(np.ceil((base + float(b.y0) - x0) / grid.cell).astype(int), 0, grid.n)
        r1 = np.clip(np.ceil((base + float(b.y1) - x0) / grid.cell).astype(int), 0, grid.n)
        total = 0.0
        count = 0
        for c, a0, a1 in zip(cols, r0, r1):
            if a1 > a0:
                total += g[c, a0:a1].sum()
                count += a1 - a0
        if count == 0:
            continue
        avg = total / count
        for c, a0, a1 in zip(cols, r0, r1):
            if a1 > a0:
                np.maximum(out[c, a0:a1], avg, out=out[c, a0:a1])
    return GridFunction(f.grid, out)


def strong_composition(f: GridFunction, dirs: DirectionSet, refine: int = 1) -> GridFunction:
    """M_{S;2} f = M_V (M_(0,1) f)."""
    vertical = directional_max(f, (0.0, 1.0), refine)
    return max_over_directions(vertical, dirs, refine)


def two_weight_constant(w: GridFunction, u: GridFunction, dirs: DirectionSet) -> float:
    """[w, u]_S = sup over grid points of M_{S;2} w / u (inf if u vanishes
    where the numerator is positive)."""
    num = strong_composition(w, dirs).values.real
    den = u.values.real
    bad = (den <= 0) & (num > 0)
    if bad.any():
        return math.inf
    ratio = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return float(ratio.max())


def a1_series_weight(g: GridFunction, dirs: DirectionSet, terms: int = 8,
                     norm_bound: Optional[float] = None, refine: int = 1) -> Tuple[GridFunction, float]:
    """w = sum_l M_{S;2}^[l] g / (2^l c^l): satisfies [w, w]_S <= 2 c by
    construction for any c >= 1 that keeps the series summable. Returns
    (w, c); c defaults to the measured one-step L^4 growth of the iterates."""
    iterates = [GridFunction(g.grid, np.abs(g.values).astype(float))]
    for _ in range(terms):
        iterates.append(strong_composition(iterates[-1], dirs, refine))
    if norm_bound is None:
        growth = max(iterates[l + 1].norm(4) / max(iterates[l].norm(4), 1e-300)
                     for l in range(terms))
        norm_bound = max(1.0, growth)
    acc = np.zeros_like(iterates[0].values.real)
    for l in range(terms + 1):
        acc += iterates[l].values.real / ((2.0 * norm_bound) ** l)
    return GridFunction(g.grid, acc), norm_bound


def weak_level_ratio(field: GridFunction, level: float, weight: Optional[GridFunction] = None) -> float:
    """w({field > level}) with Riemann cell weights."""
    mask = field.values.real > level
    if weight is None:
        return float(mask.sum() * field.grid.cell_area)
    return float((weight.values.real * mask).sum() * field.grid.cell_area)


def truncated_directional_sio(f: GridFunction, v: Tuple[float, float],
                              kernel: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                              substeps: int = 16) -> GridFunction:
    """T_v f = sup over the dyadic truncation ladder of
    |int_{eps<|t|<1/eps} f(x+tv) K(t) dt|, K odd (default 1/(pi t))."""
    nrm = math.hypot(v[0], v[1])
    if nrm == 0:
        raise ValueError("zero direction")
    v = (v[0] / nrm, v[1] / nrm)
    if kernel is None:
        kernel = lambda t: 1.0 / (math.pi * t)
    g = f.values.astype(complex)
    grid = f.grid
    radii = _ladder_radii(grid)
    blocks = []
    for r in radii:
        acc = np.zeros_like(g)
        dt = r / substeps
        for i in range(substeps):
            t = r + (i + 0.5) * dt
            acc += _shift(g, grid, t, v) * kernel(np.array(t)) * dt
            acc += _shift(g, grid, -t, v) * kernel(np.array(-t)) * dt
        blocks.append(acc)
    out = np.zeros((grid.n, grid.n))
    # truncation pairs (eps, 1/eps): blocks with eps <= 2^j r0 and 2^{j+1} r0 <= 1/eps
    for i0 in range(len(radii)):
        eps = radii[i0]
        if 1.0 / eps <= eps:
            continue
        acc = np.zeros_like(g)
        for j in range(i0, len(radii)):
            if 2 * radii[j] <= 1.0 / eps:
                acc += blocks[j]
        np.maximum(out, np.abs(acc), out=out)
    return GridFunction(grid, out)


def maximal_truncated_sio(f: GridFunction, dirs: DirectionSet, **kw) -> GridFunction:
    out = np.zeros((f.grid.n, f.grid.n))
    for v in dirs.vectors:
        np.maximum(out, truncated_directional_sio(f, v, **kw).values.real, out=out)
    return GridFunction(f.grid, out)


def ladder_comparability(f: GridFunction, v: Tuple[float, float]) -> float:
    """Max pointwise ratio of the refined-ladder M_v to the plain one.

    Refining the dyadic radius ladder by x2 changes M_v by at most a factor 2;
    this returns the measured factor (>= 1)."""
    coarse = directional_max(f, v, refine=1).values.real
    fine = directional_max(f, v, refine=2).values.real
    floor = 1e-9 * max(float(fine.max()), 1e-300)
    return float(np.max(fine / np.maximum(coarse, floor)))
