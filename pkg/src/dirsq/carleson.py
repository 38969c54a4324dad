"""Carleson sequences on sheared dyadic parallelograms: balayages, mass
norms, the U_p functional, iterative embedding decomposition, stratified
shadow decay, and the weighted variant.

The universal Carleson condition is split (per the way it is used) into a
constructor that guarantees it (disjoint-set sequences) and a falsifier over
supplied covers. All pairwise quantities (mass_2, B-values) run in exact
rational arithmetic through the geometry kernels.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    Parallelogram,
    ParallelogramCollection,
    RasterWindow,
    Slope,
    _Box,
    contained_in,
    intersect_area,
    leq,
    raster_balayage_moment,
    shadow_area,
)
from .spectral import Grid, GridFunction


@dataclass
class CarlesonSequence:
    """Nonnegative weights a_R on parallelograms; total = sum a_R cached."""

    entries: Dict[Parallelogram, float]
    total: float = field(init=False)

    def __post_init__(self):
        for v in self.entries.values():
            if v < 0:
                raise ValueError("Carleson weights must be nonnegative")
        self.total = float(sum(self.entries.values()))

    def value(self, p: Parallelogram) -> float:
        return self.entries.get(p, 0.0)

    def restrict(self, members: Iterable[Parallelogram]) -> "CarlesonSequence":
        return CarlesonSequence({p: self.entries[p] for p in members if p in self.entries})

    def scale(self, c: float) -> "CarlesonSequence":
        return CarlesonSequence({p: c * v for p, v in self.entries.items()})

    def to_json(self) -> str:
        items = sorted(self.entries.items())
        return json.dumps([{"parallelogram": p.to_json(), "value": v} for p, v in items])

    @staticmethod
    def from_json(s: str) -> "CarlesonSequence":
        return CarlesonSequence({Parallelogram.from_json(d["parallelogram"]): float(d["value"])
                                 for d in json.loads(s)})


@dataclass
class Weight:
    """Nonnegative weight: sampled on a grid, or the constant-1 marker."""

    samples: Optional[GridFunction] = None

    def __post_init__(self):
        if self.samples is not None and np.any(self.samples.values.real < 0):
            raise ValueError("weight must be nonnegative")

    @property
    def is_one(self) -> bool:
        return self.samples is None


@dataclass
class EmbeddingConfig:
    gamma: float = 1.0
    lam: Optional[float] = None  # iteration threshold; None = Lemma recipe
    p: float = 1.5
    max_iterations: int = 64
    recipe_constant: float = 8.0

    def __post_init__(self):
        if not (1.0 < self.p <= 2.0):
            raise ValueError("p must lie in (1, 2]")
        if self.gamma < 0:
            raise ValueError("gamma must be nonnegative")
        if self.lam is not None and self.lam < 1:
            raise ValueError("lambda must be >= 1")


@dataclass
class MassReport:
    mass1: float
    mass2: float
    mass_p: float
    p: float
    u2: float
    per_stratum: Dict[Tuple[str, int], float]
    bound_scale: float
    fitted_constant: float

    def to_json(self) -> str:
        d = {
            "mass1": self.mass1,
            "mass2": self.mass2,
            "massP": self.mass_p,
            "p": self.p,
            "u2": self.u2,
            "boundScale": self.bound_scale,
            "fittedConstant": self.fitted_constant,
            "perStratum": [{"slope": s, "k": k, "shadow": v}
                           for (s, k), v in sorted(self.per_stratum.items())],
        }
        return json.dumps(d)

    def stratum_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["slope", "k", "shadow"])
        for (s, k), v in sorted(self.per_stratum.items()):
            w.writerow([s, k, repr(v)])
        return buf.getvalue()


# ---------------------------------------------------------------------------
# balayage and mass norms


def balayage_at(collection: ParallelogramCollection, a: CarlesonSequence, x) -> float:
    """T_C(a)(x) = sum a_R 1_R(x) / |R| with exact membership tests."""
    total = 0.0
    for p in collection:
        v = a.value(p)
        if v > 0 and p.contains_point(x[0], x[1]):
            total += v / float(p.area)
    return total


def pairwise_mass2_squared(members: Sequence[Parallelogram], a: CarlesonSequence) -> Fraction:
    """Exact sum_{Q,R} a_Q a_R |Q cap R| / (|Q||R|) via rational pair areas."""
    ms = [p for p in members if a.value(p) > 0]
    total = Fraction(0)
    for i, p in enumerate(ms):
        ap = Fraction(a.value(p)).limit_denominator(1 << 48)
        total += ap * ap / p.area
        for q in ms[i + 1:]:
            aq = Fraction(a.value(q)).limit_denominator(1 << 48)
            inter = intersect_area(p, q)
            if inter:
                total += 2 * ap * aq * inter / (p.area * q.area)
    return total


def mass_p(collection: ParallelogramCollection, a: CarlesonSequence, p: float,
           tol: float = 1e-2) -> float:
    """Balayage norm ||T_C(a)||_p.

    p = 1 is the exact weight sum; p = 2 uses the exact pairwise-intersection
    formula; other p integrate the rasterized balayage, refining the column
    resolution x2 from 2^10 until successive values agree within tol
    (capped at 2^13).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    members = collection.members()
    if p == 1:
        return float(sum(a.value(m) for m in members))
    if p == 2:
        return math.sqrt(float(pairwise_mass2_squared(members, a)))
    weights = [a.value(m) / float(m.area) for m in members]
    res = 1 << 10
    prev = None
    while True:
        val = raster_balayage_moment(members, weights, p, resolution=res) ** (1.0 / p)
        if prev is not None and abs(val - prev) <= tol * max(abs(val), 1e-300):
            return val
        if res >= (1 << 13):
            return val
        prev = val
        res *= 2


def u2_ratio(collection: ParallelogramCollection, a: CarlesonSequence) -> float:
    """Empirical lower estimate of U_2: mass_2 / sqrt(mass_1) for this family."""
    m1 = mass_p(collection, a, 1)
    if m1 <= 0:
        return 0.0
    return mass_p(collection, a, 2) / math.sqrt(m1)


# ---------------------------------------------------------------------------
# constructor and falsifier for the Carleson property


def from_disjoint_sets(collection: ParallelogramCollection, mask: np.ndarray,
                       window: RasterWindow) -> CarlesonSequence:
    """Sequence a_R = |cells of E claimed by R|, each raster cell of E claimed
    by at most one member (area-descending, then lexicographic order).

    Claims only raster cells wholly inside R, so the sets F_R are pairwise
    disjoint subsets of R and the output satisfies the Carleson definition
    exactly, not just up to raster error.
    """
    if mask.shape != (window.ny, window.nx):
        raise ValueError("mask shape must match the raster window")
    unclaimed = mask.astype(bool).copy()
    order = sorted(collection.members(), key=lambda p: (-p.area, p.slope, p.base, p.vert))
    entries: Dict[Parallelogram, float] = {}
    for p in order:
        cols, r0, r1 = window.membership_strict(p)
        claimed = 0
        for c, b0, b1 in zip(cols, r0, r1):
            if b1 > b0:
                seg = unclaimed[b0:b1, c]
                claimed += int(seg.sum())
                seg[:] = False
        entries[p] = claimed * window.cell_area
    return CarlesonSequence(entries)


@dataclass
class CoverReport:
    worst_ratio: float
    violations: List[Tuple[int, float]]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_carleson(collection: ParallelogramCollection, a: CarlesonSequence,
                    covers: Sequence[Tuple[Slope, ParallelogramCollection]],
                    slack: float = 1e-9) -> CoverReport:
    """Falsifier: for each single-slope cover T check
    sum_{R subordinate to T} a_R <= |sh(T)|. Reports the worst ratio."""
    worst = 0.0
    violations: List[Tuple[int, float]] = []
    for idx, (slope, cover) in enumerate(covers):
        for t in cover:
            if t.slope != slope:
                raise ValueError("cover must have a single slope")
        tops = cover.members()
        sub = [p for p in collection
               if a.value(p) > 0 and any(contained_in(p, t) for t in tops)]
        num = sum(a.value(p) for p in sub)
        if num == 0:
            continue
        den = float(shadow_area(cover))
        ratio = num / den if den > 0 else math.inf
        worst = max(worst, ratio)
        if ratio > 1 + slack:
            violations.append((idx, ratio))
    return CoverReport(worst, violations)


# ---------------------------------------------------------------------------
# B-values, stratification, iteration


def b_value(r: Parallelogram, sub: Iterable[Parallelogram], a: CarlesonSequence) -> float:
    """B_R^L = (1/|R|) sum_{Q in L, Q <= R} a_Q |Q cap R| / |Q|."""
    total = Fraction(0)
    rb = r.box()
    for q in sub:
        aq = a.value(q)
        if aq <= 0:
            continue
        qb = q.box()
        if not (rb.x0 <= qb.x0 and qb.x1 <= rb.x1):
            continue
        inter = intersect_area(qb, rb)
        if inter > 0:
            total += Fraction(aq).limit_denominator(1 << 48) * inter / q.area
    return float(total / r.area)


def _b_value_box(tbox: _Box, sub: Sequence[Tuple[_Box, float, Fraction]]) -> float:
    total = Fraction(0)
    for (qb, aq, qarea) in sub:
        if not (tbox.x0 <= qb.x0 and qb.x1 <= tbox.x1):
            continue
        inter = intersect_area(qb, tbox)
        if inter > 0:
            total += Fraction(aq).limit_denominator(1 << 48) * inter / qarea
    return float(total / tbox.area)


def stratify(collection: ParallelogramCollection, a: CarlesonSequence, lam: float
             ) -> Dict[Tuple[Slope, int], List[Parallelogram]]:
    """Strata R_{s,k} = {R in C_s : lam*k <= B_R^C < lam*(k+1)} (left-closed)."""
    if lam < 1:
        raise ValueError("lambda must be >= 1")
    strata: Dict[Tuple[Slope, int], List[Parallelogram]] = {}
    members = collection.members()
    for r in members:
        b = b_value(r, members, a)
        k = int(b // lam)
        strata.setdefault((r.slope, k), []).append(r)
    return strata


class IterationError(RuntimeError):
    def __init__(self, msg, diagnostics):
        super().__init__(msg)
        self.diagnostics = diagnostics


@dataclass
class IterationDiagnostics:
    lam: float
    mass_before: float
    mass_after: float
    halving_ok: bool
    kappa: float
    n_exceeding: int


def estimate_ap(collection: ParallelogramCollection, a: CarlesonSequence, p: float,
                raster_n: int = 256) -> float:
    """Crude per-slope weak-(p,p) estimate for M_{C_s}, probed on the
    balayage raster of the sequence itself."""
    best = 1.0
    members = [m for m in collection if a.value(m) > 0]
    if not members:
        return 1.0
    window = RasterWindow.cover(members, raster_n, pad=0.5)
    weights = [a.value(m) / float(m.area) for m in members]
    f = window.field(members, weights)
    fnorm_p = (np.sum(np.abs(f) ** p) * window.cell_area) ** (1.0 / p)
    if fnorm_p <= 0:
        return 1.0
    for slope in collection.slopes():
        group = [m for m in collection.groups[slope] if a.value(m) > 0]
        if not group:
            continue
        # max over R in the group of its average against the level measure
        for lam_level in (0.25, 0.5, 1.0, 2.0):
            level = lam_level * float(np.max(f)) / 2
            if level <= 0:
                continue
            measure = 0.0
            for m in group:
                cols, r0, r1 = window.membership(m)
                avg = 0.0
                count = 0
                for c, b0, b1 in zip(cols, r0, r1):
                    if b1 > b0:
                        avg += f[b0:b1, c].sum()
                        count += b1 - b0
                if count and avg / count > level:
                    measure += float(m.area)
            if measure > 0:
                best = max(best, level * measure ** (1.0 / p) / fnorm_p)
    return best


def lemma_lambda(collection: ParallelogramCollection, a: CarlesonSequence,
                 config: EmbeddingConfig) -> float:
    """Iteration threshold lam = C max(1, A_p U_2^{2/p'}), A_p and U_2
    estimated empirically; overridden by config.lam when supplied."""
    if config.lam is not None:
        return config.lam
    u2 = u2_ratio(collection, a)
    pprime = config.p / (config.p - 1.0)
    ap = estimate_ap(collection, a, config.p)
    return config.recipe_constant * max(1.0, ap * u2 ** (2.0 / pprime))


def iterate_decomposition(collection: ParallelogramCollection, sub: Sequence[Parallelogram],
                          a: CarlesonSequence, config: EmbeddingConfig
                          ) -> Tuple[List[Parallelogram], IterationDiagnostics]:
    """One inside/outside splitting step of the iterative embedding.

    For every R in the ambient collection with B_R^L > lam, grows the maximal
    tripled interval K_R whose outside average still exceeds lam, and collects
    the inside families; returns their union L_1 together with halving and
    kappa diagnostics.
    """
    lam = lemma_lambda(ParallelogramCollection(sub) if sub else collection, a, config) \
        if config.lam is None else config.lam
    sub = list(sub)
    sub_data = [(q.box(), a.value(q), q.area) for q in sub if a.value(q) > 0]
    members = collection.members()
    mass_before = sum(a.value(q) for q in sub)

    exceeding: List[Parallelogram] = []
    b_before: Dict[Parallelogram, float] = {}
    for r in members:
        b = _b_value_box(r.box(), sub_data)
        if b > lam:
            exceeding.append(r)
            b_before[r] = b

    chosen: Dict[Parallelogram, None] = {}
    for r in exceeding:
        s = r.slope.value
        i0, i1 = r.base.lo, r.base.hi
        l0, l1 = r.vert.lo, r.vert.hi

        def out_b(k0: Fraction, k1: Fraction) -> float:
            tbox = _Box(s, i0, i1, k0, k1)
            total = Fraction(0)
            for (qb, aq, qarea) in sub_data:
                if not (i0 <= qb.x0 and qb.x1 <= i1):
                    continue
                if _pi2_inside_3k(qb, s, k0, k1):
                    continue
                inter = intersect_area(qb, tbox)
                if inter > 0:
                    total += Fraction(aq).limit_denominator(1 << 48) * inter / qarea
            return float(total / tbox.area)

        k0, k1 = l0, l1
        if out_b(k0, k1) > lam:
            its = 0
            while True:
                its += 1
                if its > config.max_iterations:
                    diag = IterationDiagnostics(lam, mass_before, math.nan, False, math.nan,
                                                len(exceeding))
                    raise IterationError("K_R search did not converge", diag)
                c = (k0 + k1) / 2
                h = (k1 - k0) * 3 / 2
                n0, n1 = c - h, c + h
                if out_b(n0, n1) > lam:
                    k0, k1 = n0, n1
                else:
                    break
        # inside family for the final K_R (or L_R when R was not in R_0^star)
        c = (k0 + k1) / 2
        h = (k1 - k0) * 3 / 2
        t3 = (c - h, c + h)
        tbox = _Box(s, i0, i1, k0, k1)
        for q in sub:
            if a.value(q) <= 0 or q in chosen:
                continue
            qb = q.box()
            if not (i0 <= qb.x0 and qb.x1 <= i1):
                continue
            if not _pi2_inside_3k(qb, s, k0, k1):
                continue
            if intersect_area(qb, tbox) > 0:
                chosen[q] = None

    l1_members = list(chosen)
    mass_after = sum(a.value(q) for q in l1_members)
    l1_data = [(q.box(), a.value(q), q.area) for q in l1_members if a.value(q) > 0]
    kappa = 0.0
    for r in exceeding:
        b_after = _b_value_box(r.box(), l1_data)
        kappa = max(kappa, (b_before[r] - b_after) / lam)
    diag = IterationDiagnostics(lam, mass_before, mass_after,
                                mass_after <= 0.5 * mass_before + 1e-12, kappa,
                                len(exceeding))
    return l1_members, diag


def _pi2_inside_3k(qb: _Box, s: Fraction, k0: Fraction, k1: Fraction) -> bool:
    """pi2 of the -s sheared copy of Q inside the tripled interval 3K."""
    ds = qb.s - s
    a, b = ds * qb.x0, ds * qb.x1
    lo = min(a, b) + qb.y0
    hi = max(a, b) + qb.y1
    c = (k0 + k1) / 2
    h = (k1 - k0) * 3 / 2
    return c - h <= lo and hi <= c + h


def shadow_decay_profile(collection: ParallelogramCollection, a: CarlesonSequence,
                         lam: float) -> Dict[Tuple[Slope, int], float]:
    """Exact shadow measure per stratum R_{s,k}."""
    strata = stratify(collection, a, lam)
    return {key: float(shadow_area(group)) for key, group in strata.items()}


def embedding_experiment(collection: ParallelogramCollection, a: CarlesonSequence,
                         config: EmbeddingConfig, n_dirs: Optional[int] = None) -> MassReport:
    """mass_1, mass_2, the reverse-Holder ratio, and per-stratum shadows,
    compared against the sqrt(log N (loglog N)^gamma) shape."""
    m1 = mass_p(collection, a, 1)
    m2 = mass_p(collection, a, 2)
    mp = mass_p(collection, a, config.p) if config.p not in (1.0, 2.0) else m2
    u2 = m2 / math.sqrt(m1) if m1 > 0 else 0.0
    n = n_dirs if n_dirs is not None else max(1, len(collection.slopes()))
    log_n = max(1.0, math.log2(max(2, n)))
    loglog = max(1.0, math.log2(log_n))
    scale = math.sqrt(log_n * (max(1.0, config.gamma * loglog)) ** config.gamma)
    lam = lemma_lambda(collection, a, config)
    per_stratum = {(str(s), k): v for (s, k), v in shadow_decay_profile(collection, a, lam).items()}
    fitted = u2 / scale if scale > 0 else 0.0
    return MassReport(m1, m2, mp, config.p, u2, per_stratum, scale, fitted)


# ---------------------------------------------------------------------------
# weighted variant


def grid_field(members: Sequence[Parallelogram], weights: Sequence[float], grid: Grid) -> np.ndarray:
    """sum w_R 1_R sampled at the grid's sample points, (x, y)-indexed."""
    out = np.zeros((grid.n, grid.n))
    x0 = -grid.L / 2
    xs = x0 + grid.cell * np.arange(grid.n)
    for w, p in zip(weights, members):
        b = p.box()
        cols = np.nonzero((xs >= float(b.x0)) & (xs < float(b.x1)))[0]
        if len(cols) == 0:
            continue
        base = float(b.s) * xs[cols]
        r0 = np.clip(np.ceil((base + float(b.y0) - x0) / grid.cell).astype(int), 0, grid.n)
        r1 = np.clip(np.ceil((base + float(b.y1) - x0) / grid.cell).astype(int), 0, grid.n)
        for c, b0, b1 in zip(cols, r0, r1):
            if b1 > b0:
                out[c, b0:b1] += w
    return out


def weighted_mass2(collection: ParallelogramCollection, a: CarlesonSequence,
                   u: Weight, grid: Optional[Grid] = None) -> float:
    """(int |T_C(a)(x)|^2 / M_C u(x) dx)^{1/2} on the weight's grid."""
    from .maximal import collection_max

    if u.is_one:
        if grid is None:
            raise ValueError("constant weight needs an explicit grid")
        g = grid
        mcu = np.ones((g.n, g.n))
    else:
        g = u.samples.grid
        mcu = collection_max(u.samples, collection).values.real
    members = [m for m in collection if a.value(m) > 0]
    weights = [a.value(m) / float(m.area) for m in members]
    bal = grid_field(members, weights, g)
    pos = bal > 0
    if not u.is_one and np.any(pos & (mcu <= 0)):
        raise ValueError("degenerate weight")
    with np.errstate(divide="ignore", invalid="ignore"):
        integrand = np.where(mcu > 0, bal ** 2 / np.where(mcu > 0, mcu, 1.0), 0.0)
    return math.sqrt(float(integrand.sum() * g.cell_area))
