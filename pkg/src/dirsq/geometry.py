"""Exact computational geometry for sheared dyadic grids.

Parallelograms here are images A_s(I x J) of half-open boxes under the
unit-determinant shear (x, y) -> (x, s*x + y), with dyadic-rational slope s.
All predicates (partial order, containment, intersection areas, shadow
areas) run in exact rational arithmetic; only maximal-function level sets
(journe_heights) are rasterized.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np
from scipy import ndimage

Rat = Fraction

JOURNE_THRESHOLD = Fraction(1, 64)


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x).limit_denominator(1 << 40)
    return Fraction(x)


@dataclass(frozen=True, order=True)
class DyadicInterval:
    """Half-open dyadic interval [m * 2^-k, (m+1) * 2^-k)."""

    scale: int
    position: int

    @property
    def lo(self) -> Fraction:
        return Fraction(self.position, 1 << self.scale) if self.scale >= 0 else Fraction(self.position * (1 << -self.scale))

    @property
    def hi(self) -> Fraction:
        p = self.position + 1
        return Fraction(p, 1 << self.scale) if self.scale >= 0 else Fraction(p * (1 << -self.scale))

    @property
    def length(self) -> Fraction:
        return Fraction(1, 1 << self.scale) if self.scale >= 0 else Fraction(1 << -self.scale)

    @staticmethod
    def containing(scale: int, x: Fraction) -> "DyadicInterval":
        """The dyadic interval of the given scale containing x."""
        q = _rat(x) * (1 << scale) if scale >= 0 else _rat(x) / (1 << -scale)
        return DyadicInterval(scale, int(q.__floor__()))

    def to_json(self) -> dict:
        return {"scale": self.scale, "position": self.position}

    @staticmethod
    def from_json(d: Mapping) -> "DyadicInterval":
        return DyadicInterval(int(d["scale"]), int(d["position"]))


@dataclass(frozen=True, order=True)
class Slope:
    """Dyadic-rational slope s = numerator * 2^-log_denominator, |s| <= 1."""

    numerator: int
    log_denominator: int

    def __post_init__(self):
        p, q = self.numerator, self.log_denominator
        if q < 0:
            raise ValueError("log_denominator must be >= 0")
        while p != 0 and p % 2 == 0 and q > 0:
            p //= 2
            q -= 1
        if p == 0:
            q = 0
        object.__setattr__(self, "numerator", p)
        object.__setattr__(self, "log_denominator", q)
        if abs(self.value) > 1:
            raise ValueError("slope must lie in [-1, 1]")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.log_denominator)

    @staticmethod
    def from_fraction(f: Fraction) -> "Slope":
        f = _rat(f)
        den = f.denominator
        q = den.bit_length() - 1
        if (1 << q) != den:
            raise ValueError(f"slope denominator {den} is not a power of two")
        return Slope(f.numerator, q)

    def __str__(self) -> str:
        return f"{self.numerator}/2^{self.log_denominator}"

    @staticmethod
    def parse(s: str) -> "Slope":
        p, q = s.split("/2^")
        return Slope(int(p), int(q))


@dataclass(frozen=True)
class _Box:
    """Internal sheared box: {(x, s*x + y): x in [x0,x1), y in [y0,y1)}.

    Endpoints are arbitrary rationals so that tripled / dilated boxes from
    the embedding machinery stay exact; no |I| >= |J| constraint here.
    """

    s: Fraction
    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    @property
    def area(self) -> Fraction:
        return (self.x1 - self.x0) * (self.y1 - self.y0)

    def contains_point(self, x, y) -> bool:
        x, y = _rat(x), _rat(y)
        return self.x0 <= x < self.x1 and self.y0 <= y - self.s * x < self.y1

    def vertices(self) -> List[Tuple[Fraction, Fraction]]:
        s = self.s
        return [
            (self.x0, s * self.x0 + self.y0),
            (self.x1, s * self.x1 + self.y0),
            (self.x1, s * self.x1 + self.y1),
            (self.x0, s * self.x0 + self.y1),
        ]

    def pi2(self) -> Tuple[Fraction, Fraction]:
        a, b = self.s * self.x0, self.s * self.x1
        return (min(a, b) + self.y0, max(a, b) + self.y1)


@dataclass(frozen=True, order=True)
class Parallelogram:
    """Sheared dyadic box A_s(I x J) with |I| >= |J|."""

    slope: Slope
    base: DyadicInterval
    vert: DyadicInterval

    def __post_init__(self):
        if self.base.length < self.vert.length:
            raise ValueError("long side must be horizontal: |I| >= |J|")

    @property
    def area(self) -> Fraction:
        return self.base.length * self.vert.length

    def box(self) -> _Box:
        return _Box(self.slope.value, self.base.lo, self.base.hi, self.vert.lo, self.vert.hi)

    def contains_point(self, x, y) -> bool:
        return self.box().contains_point(x, y)

    def center(self) -> Tuple[Fraction, Fraction]:
        cx = (self.base.lo + self.base.hi) / 2
        cy = self.slope.value * cx + (self.vert.lo + self.vert.hi) / 2
        return cx, cy

    def dilate(self, factor: Fraction) -> _Box:
        """Concentric dilation about the center, slope preserved."""
        factor = _rat(factor)
        cx = (self.base.lo + self.base.hi) / 2
        cy = (self.vert.lo + self.vert.hi) / 2
        hx = (self.base.hi - self.base.lo) / 2 * factor
        hy = (self.vert.hi - self.vert.lo) / 2 * factor
        return _Box(self.slope.value, cx - hx, cx + hx, cy - hy, cy + hy)

    def to_json(self) -> dict:
        return {"slope": str(self.slope), "base": self.base.to_json(), "vert": self.vert.to_json()}

    @staticmethod
    def from_json(d: Mapping) -> "Parallelogram":
        return Parallelogram(Slope.parse(d["slope"]), DyadicInterval.from_json(d["base"]),
                             DyadicInterval.from_json(d["vert"]))


class ParallelogramCollection:
    """Finite collection R = union_s R_s, grouped by slope."""

    def __init__(self, members: Iterable[Parallelogram] = ()):
        self.groups: Dict[Slope, List[Parallelogram]] = {}
        for p in members:
            self.groups.setdefault(p.slope, []).append(p)

    def add(self, p: Parallelogram) -> None:
        self.groups.setdefault(p.slope, []).append(p)

    def members(self) -> List[Parallelogram]:
        return [p for g in self.groups.values() for p in g]

    def slopes(self) -> List[Slope]:
        return sorted(self.groups.keys())

    def restrict(self, keep: Iterable[Parallelogram]) -> "ParallelogramCollection":
        return ParallelogramCollection(keep)

    def __len__(self) -> int:
        return sum(len(g) for g in self.groups.values())

    def __iter__(self):
        return iter(self.members())

    def __contains__(self, p: Parallelogram) -> bool:
        return p in self.groups.get(p.slope, ())

    def to_json(self) -> str:
        return json.dumps([p.to_json() for p in sorted(self.members())])

    @staticmethod
    def from_json(s: str) -> "ParallelogramCollection":
        return ParallelogramCollection(Parallelogram.from_json(d) for d in json.loads(s))


# ---------------------------------------------------------------------------
# core operations


def shear(s: Slope, point: Tuple) -> Tuple:
    """Apply the measure-preserving shear (x, y) -> (x, s*x + y)."""
    x, y = point
    if isinstance(x, (int, Fraction)) and isinstance(y, (int, Fraction)):
        return (x, s.value * x + y)
    return (x, float(s.value) * x + y)


def projections(p: Parallelogram) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """Horizontal and vertical projections (pi1, pi2) as half-open intervals."""
    b = p.box()
    return ((b.x0, b.x1), b.pi2())


def _pi1_subset(q: _Box, r: _Box) -> bool:
    return r.x0 <= q.x0 and q.x1 <= r.x1


def leq(q, r) -> bool:
    """Partial order: Q <= R iff Q and R overlap in positive area and pi1(Q) sub pi1(R).

    Half-open convention: boundary touching does not count as intersection.
    """
    qb = q.box() if isinstance(q, Parallelogram) else q
    rb = r.box() if isinstance(r, Parallelogram) else r
    if not _pi1_subset(qb, rb):
        return False
    return _box_pair_area(qb, rb) > 0


def contained_in(q, t) -> bool:
    """Closure containment Q subset T, exact via vertex tests."""
    qb = q.box() if isinstance(q, Parallelogram) else q
    tb = t.box() if isinstance(t, Parallelogram) else t
    for (x, y) in qb.vertices():
        if not (tb.x0 <= x <= tb.x1):
            return False
        u = y - tb.s * x
        if not (tb.y0 <= u <= tb.y1):
            return False
    return True


def _box_pair_area(a: _Box, b: _Box) -> Fraction:
    x0 = max(a.x0, b.x0)
    x1 = min(a.x1, b.x1)
    if x0 >= x1:
        return Fraction(0)
    if a.s == b.s:
        w = min(a.y1, b.y1) - max(a.y0, b.y0)
        if w <= 0:
            return Fraction(0)
        return w * (x1 - x0)
    ds = a.s - b.s
    # candidate breakpoints where the overlap profile changes slope
    xs = {x0, x1}
    for ca in (a.y0, a.y1):
        for cb in (b.y0, b.y1):
            xc = (cb - ca) / ds
            if x0 < xc < x1:
                xs.add(xc)
    pts = sorted(xs)
    total = Fraction(0)
    for lo, hi in zip(pts[:-1], pts[1:]):
        xm = (lo + hi) / 2
        lo_y = max(a.s * xm + a.y0, b.s * xm + b.y0)
        hi_y = min(a.s * xm + a.y1, b.s * xm + b.y1)
        if hi_y > lo_y:
            total += (hi_y - lo_y) * (hi - lo)
    return total


def intersect_area(p, q) -> Fraction:
    """Exact area of the intersection of two sheared boxes."""
    pb = p.box() if isinstance(p, Parallelogram) else p
    qb = q.box() if isinstance(q, Parallelogram) else q
    return _box_pair_area(pb, qb)


def _boxes(collection) -> List[_Box]:
    if isinstance(collection, ParallelogramCollection):
        items = collection.members()
    else:
        items = list(collection)
    return [p.box() if isinstance(p, Parallelogram) else p for p in items]


def shadow_area(collection) -> Fraction:
    """Exact measure of the shadow (union) via an x-sweep.

    Between consecutive x-events (interval endpoints and pairwise crossings
    of the boundary lines) the union cross-section length is linear in x, so
    sampling at the two third-points of each slab integrates it exactly.
    """
    boxes = [b for b in _boxes(collection) if b.x1 > b.x0 and b.y1 > b.y0]
    if not boxes:
        return Fraction(0)
    events = set()
    for b in boxes:
        events.add(b.x0)
        events.add(b.x1)
    n = len(boxes)
    for i in range(n):
        bi = boxes[i]
        for j in range(i + 1, n):
            bj = boxes[j]
            if bi.s == bj.s:
                continue
            lo = max(bi.x0, bj.x0)
            hi = min(bi.x1, bj.x1)
            if lo >= hi:
                continue
            ds = bi.s - bj.s
            for ci in (bi.y0, bi.y1):
                for cj in (bj.y0, bj.y1):
                    xc = (cj - ci) / ds
                    if lo < xc < hi:
                        events.add(xc)
    pts = sorted(events)
    total = Fraction(0)
    for lo, hi in zip(pts[:-1], pts[1:]):
        w = hi - lo
        l1 = _union_len_at(boxes, lo + w / 3)
        l2 = _union_len_at(boxes, lo + 2 * w / 3)
        total += w * (l1 + l2) / 2
    return total


def _union_len_at(boxes: Sequence[_Box], x: Fraction) -> Fraction:
    ivals = []
    for b in boxes:
        if b.x0 <= x < b.x1:
            base = b.s * x
            ivals.append((base + b.y0, base + b.y1))
    if not ivals:
        return Fraction(0)
    ivals.sort()
    total = Fraction(0)
    cur_lo, cur_hi = ivals[0]
    for lo, hi in ivals[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    total += cur_hi - cur_lo
    return total


# ---------------------------------------------------------------------------
# column-rasterization oracles (float, midpoint rule in x, exact in y)


def raster_shadow_area(collection, resolution: int = 1 << 12, bbox=None) -> float:
    """Rasterization oracle for the shadow: `resolution` columns, exact y-union."""
    cols = _column_intervals(collection, resolution, bbox)
    if cols is None:
        return 0.0
    col, lo, hi, dx = cols
    order = np.lexsort((lo, col))
    col, lo, hi = col[order], lo[order], hi[order]
    total = 0.0
    # vectorized merge: running max of hi within each column group
    new_col = np.empty(len(col), dtype=bool)
    new_col[0] = True
    new_col[1:] = col[1:] != col[:-1]
    run_hi = -np.inf
    # python loop kept simple; interval counts stay small
    for i in range(len(col)):
        if new_col[i]:
            run_hi = -np.inf
        a, b = lo[i], hi[i]
        if a > run_hi:
            total += b - a
            run_hi = b
        elif b > run_hi:
            total += b - run_hi
            run_hi = b
    return total * dx


def raster_balayage_moment(collection, weights: Sequence[float], power: float,
                           resolution: int = 1 << 12, bbox=None) -> float:
    """Oracle integral of (sum_R w_R 1_R)^power, column raster, exact in y."""
    cols = _column_intervals(collection, resolution, bbox, np.asarray(weights, dtype=float))
    if cols is None:
        return 0.0
    col, lo, hi, dx, w = cols
    ys = np.concatenate([lo, hi])
    cs = np.concatenate([col, col])
    dw = np.concatenate([w, -w])
    order = np.lexsort((ys, cs))
    ys, cs, dw = ys[order], cs[order], dw[order]
    # every column's net weight is zero, so a single global cumsum restarts
    # from zero at each column boundary
    level = np.cumsum(dw)
    seg_len = np.zeros(len(ys))
    same = cs[1:] == cs[:-1]
    seg_len[:-1][same] = (ys[1:] - ys[:-1])[same]
    vals = np.abs(level) ** power
    return float(np.sum(vals * seg_len) * dx)


def _column_intervals(collection, resolution, bbox, weights=None):
    items = collection.members() if isinstance(collection, ParallelogramCollection) else list(collection)
    boxes = [p.box() if isinstance(p, Parallelogram) else p for p in items]
    if not boxes:
        return None
    if bbox is None:
        x0 = min(float(b.x0) for b in boxes)
        x1 = max(float(b.x1) for b in boxes)
    else:
        x0, x1 = bbox
    dx = (x1 - x0) / resolution
    if dx <= 0:
        return None
    cols_all, lo_all, hi_all, w_all = [], [], [], []
    for idx, b in enumerate(boxes):
        c0 = int(np.ceil((float(b.x0) - x0) / dx - 0.5))
        c1 = int(np.floor((float(b.x1) - x0) / dx - 0.5))
        if c1 < c0:
            continue
        cols = np.arange(max(c0, 0), min(c1, resolution - 1) + 1)
        if len(cols) == 0:
            continue
        xmid = x0 + (cols + 0.5) * dx
        base = float(b.s) * xmid
        cols_all.append(cols)
        lo_all.append(base + float(b.y0))
        hi_all.append(base + float(b.y1))
        if weights is not None:
            w_all.append(np.full(len(cols), weights[idx]))
    if not cols_all:
        return None
    col = np.concatenate(cols_all)
    lo = np.concatenate(lo_all)
    hi = np.concatenate(hi_all)
    if weights is None:
        return col, lo, hi, dx
    return col, lo, hi, dx, np.concatenate(w_all)


# ---------------------------------------------------------------------------
# cell rasters (shared by carleson / maximal level-set machinery)


@dataclass
class RasterWindow:
    """Uniform cell grid over [x0, x0 + nx*cell) x [y0, y0 + ny*cell)."""

    x0: float
    y0: float
    cell: float
    nx: int
    ny: int

    @staticmethod
    def cover(collection, n: int = 512, pad: float = 0.0) -> "RasterWindow":
        boxes = _boxes(collection)
        xs0 = min(float(b.x0) for b in boxes)
        xs1 = max(float(b.x1) for b in boxes)
        p2 = [b.pi2() for b in boxes]
        ys0 = min(float(a) for a, _ in p2)
        ys1 = max(float(a) for _, a in p2)
        xs0 -= pad
        xs1 += pad
        ys0 -= pad
        ys1 += pad
        w = max(xs1 - xs0, ys1 - ys0, 1e-9)
        cell = w / n
        nx = int(np.ceil((xs1 - xs0) / cell))
        ny = int(np.ceil((ys1 - ys0) / cell))
        return RasterWindow(xs0, ys0, cell, nx, ny)

    @property
    def cell_area(self) -> float:
        return self.cell * self.cell

    def centers_x(self) -> np.ndarray:
        return self.x0 + (np.arange(self.nx) + 0.5) * self.cell

    def centers_y(self) -> np.ndarray:
        return self.y0 + (np.arange(self.ny) + 0.5) * self.cell

    def membership(self, p) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Column indices and per-column row ranges [r0, r1) of cells inside p."""
        b = p.box() if isinstance(p, Parallelogram) else p
        xs = self.centers_x()
        cols = np.nonzero((xs >= float(b.x0)) & (xs < float(b.x1)))[0]
        if len(cols) == 0:
            return cols, cols, cols
        base = float(b.s) * xs[cols]
        ylo = base + float(b.y0)
        yhi = base + float(b.y1)
        r0 = np.ceil((ylo - self.y0) / self.cell - 0.5).astype(int)
        r1 = np.ceil((yhi - self.y0) / self.cell - 0.5).astype(int)
        r0 = np.clip(r0, 0, self.ny)
        r1 = np.clip(r1, 0, self.ny)
        return cols, r0, r1

    def membership_strict(self, p) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Like membership, but only cells wholly contained in p."""
        b = p.box() if isinstance(p, Parallelogram) else p
        xs = self.centers_x()
        h = self.cell / 2
        cols = np.nonzero((xs - h >= float(b.x0)) & (xs + h <= float(b.x1)))[0]
        if len(cols) == 0:
            return cols, cols, cols
        s = float(b.s)
        base = s * xs[cols]
        sag = abs(s) * h
        ylo = base + float(b.y0) + sag
        yhi = base + float(b.y1) - sag
        # cell row r spans [y0 + r cell, y0 + (r+1) cell]
        r0 = np.ceil((ylo - self.y0) / self.cell).astype(int)
        r1 = np.floor((yhi - self.y0) / self.cell - 1.0).astype(int) + 1
        r0 = np.clip(r0, 0, self.ny)
        r1 = np.clip(np.maximum(r1, r0), 0, self.ny)
        return cols, r0, r1

    def field(self, collection, weights=None) -> np.ndarray:
        """Sum of w_R 1_R sampled on cell centers; shape (ny, nx)."""
        items = collection.members() if isinstance(collection, ParallelogramCollection) else list(collection)
        diff = np.zeros((self.ny + 1, self.nx))
        for idx, p in enumerate(items):
            cols, r0, r1 = self.membership(p)
            if len(cols) == 0:
                continue
            w = 1.0 if weights is None else float(weights[idx])
            np.add.at(diff, (r0, cols), w)
            np.add.at(diff, (r1, cols), -w)
        return np.cumsum(diff[:-1], axis=0)


# ---------------------------------------------------------------------------
# Journe-type dilation heights


def _ladder(limit: int, ratio: float) -> List[int]:
    sizes = [1]
    while sizes[-1] < limit:
        sizes.append(min(max(sizes[-1] + 1, int(round(sizes[-1] * ratio))), limit))
    return sizes


def _strong_max_raster(mask: np.ndarray, ladder_ratio: float = 1.6,
                       prune_below: float = 0.0) -> np.ndarray:
    """Approximate sup over axis-parallel boxes (w >= h in cells) of the box
    average of `mask`, maximizing over all box placements containing each cell.

    Underestimates the true maximal function by at most the ladder-ratio^2
    area quantization; never overestimates it. Box sizes whose best possible
    average is below `prune_below` are skipped (sound when only the level set
    above that threshold is consumed).
    """
    f = mask.astype(np.float64)
    ny, nx = f.shape
    total = float(f.sum())
    sizes = _ladder(max(nx, ny), ladder_ratio)
    out = np.zeros_like(f)
    cy = np.vstack([np.zeros((1, nx)), np.cumsum(f, axis=0)])
    for h in (s for s in sizes if s <= ny):
        if prune_below > 0 and total / h < prune_below:
            continue
        rows = (cy[h:, :] - cy[:-h, :]) / h  # start-indexed row sums / h
        cx = np.hstack([np.zeros((rows.shape[0], 1)), np.cumsum(rows, axis=1)])
        for w in (s for s in sizes if h <= s <= nx):
            if prune_below > 0 and total / (h * w) < prune_below:
                continue
            avg = (cx[:, w:] - cx[:, :-w]) / w  # value at (row start, col start)
            full = np.full((ny, nx), -np.inf)
            full[: avg.shape[0], : avg.shape[1]] = avg
            # max over starts in the trailing window [i-size+1, i] of each axis
            full = ndimage.maximum_filter1d(full, size=h, axis=0, mode="constant",
                                            cval=-np.inf, origin=(h - 1) // 2)
            full = ndimage.maximum_filter1d(full, size=w, axis=1, mode="constant",
                                            cval=-np.inf, origin=(w - 1) // 2)
            np.maximum(out, full, out=out)
    return out


def journe_heights(collection: ParallelogramCollection, threshold: Fraction = JOURNE_THRESHOLD,
                   raster_n: int = 512, ladder_ratio: float = 1.6) -> Dict[Parallelogram, int]:
    """Dilation heights u_R for a fixed-slope pairwise-incomparable family.

    Computes the level set sh* = {M 1_sh > threshold} of the slope-aligned
    maximal operator on a raster (in unsheared coordinates, where members are
    axis-parallel boxes), then for each R the least u with 2^u R not inside sh*.
    """
    slopes = collection.slopes()
    if len(slopes) > 1:
        raise ValueError("journe requires fixed slope")
    members = collection.members()
    if not members:
        return {}
    thr = float(threshold)
    boxes = [(float(p.base.lo), float(p.base.hi), float(p.vert.lo), float(p.vert.hi)) for p in members]
    bx0 = min(b[0] for b in boxes)
    bx1 = max(b[1] for b in boxes)
    by0 = min(b[2] for b in boxes)
    by1 = max(b[3] for b in boxes)
    cx, cy = (bx0 + bx1) / 2, (by0 + by1) / 2
    half = max(bx1 - bx0, by1 - by0) / 2
    result: Dict[Parallelogram, int] = {}
    pending = {p: 1 for p in members}
    level_half = half * 2.0
    max_half = half * (8.0 / thr)
    while pending and level_half <= 4 * max_half:
        win = _JourneRaster(cx, cy, level_half, raster_n)
        mask = win.rasterize(boxes)
        mval = _strong_max_raster(mask, ladder_ratio, prune_below=thr)
        level_set = mval > thr
        prefix = np.zeros((level_set.shape[0] + 1, level_set.shape[1] + 1), dtype=np.int64)
        prefix[1:, 1:] = np.cumsum(np.cumsum(level_set, axis=0), axis=1)
        for p in list(pending):
            u = pending[p]
            while True:
                d = p.dilate(Fraction(1 << u))
                if 2.0 * max(float(d.x1 - d.x0), float(d.y1 - d.y0)) > level_half:
                    pending[p] = u
                    break
                if win.box_filled(prefix, d):
                    u += 1
                else:
                    result[p] = u
                    del pending[p]
                    break
        level_half *= 4.0
    for p, u in pending.items():
        result[p] = u
    return result


class _JourneRaster:
    def __init__(self, cx: float, cy: float, half: float, n: int):
        self.x0 = cx - half
        self.y0 = cy - half
        self.cell = 2 * half / n
        self.n = n

    def rasterize(self, boxes) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=bool)
        for (x0, x1, y0, y1) in boxes:
            c0 = int(np.ceil((x0 - self.x0) / self.cell - 0.5))
            c1 = int(np.ceil((x1 - self.x0) / self.cell - 0.5))
            r0 = int(np.ceil((y0 - self.y0) / self.cell - 0.5))
            r1 = int(np.ceil((y1 - self.y0) / self.cell - 0.5))
            c0, c1 = max(c0, 0), min(c1, self.n)
            r0, r1 = max(r0, 0), min(r1, self.n)
            if c1 > c0 and r1 > r0:
                m[r0:r1, c0:c1] = True
        return m

    def box_filled(self, prefix: np.ndarray, d: _Box) -> bool:
        c0 = int(np.ceil((float(d.x0) - self.x0) / self.cell - 0.5))
        c1 = int(np.ceil((float(d.x1) - self.x0) / self.cell - 0.5))
        r0 = int(np.ceil((float(d.y0) - self.y0) / self.cell - 0.5))
        r1 = int(np.ceil((float(d.y1) - self.y0) / self.cell - 0.5))
        c0, c1 = max(c0, 0), min(c1, self.n)
        r0, r1 = max(r0, 0), min(r1, self.n)
        if c1 <= c0 or r1 <= r0:
            return True
        count = prefix[r1, c1] - prefix[r0, c1] - prefix[r1, c0] + prefix[r0, c0]
        return count == (r1 - r0) * (c1 - c0)


def remove_comparable(members: Iterable[Parallelogram]) -> List[Parallelogram]:
    """Drop members contained in another member (keeps a pairwise-incomparable family)."""
    ms = sorted(members, key=lambda p: -p.area)
    kept: List[Parallelogram] = []
    for p in ms:
        if not any(contained_in(p, q) or contained_in(q, p) for q in kept):
            kept.append(p)
    return kept
