"""Periodic 2D FFT engine and the directional Fourier multiplier catalog.

Functions live on a periodic square grid of n x n samples over
[-L/2, L/2)^2; frequencies are the exact lattice points xi = 2*pi*k/L with
signed integer k in [-n/2, n/2). Multipliers are evaluated pointwise on that
lattice, so multiplier algebra (sums, products, idempotents) is exact up to
floating roundoff.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# grid plumbing


@dataclass(frozen=True)
class Grid:
    """Periodic n x n sampling of [-L/2, L/2)^2, n a power of two."""

    n: int
    L: float = 2.0 * math.pi

    def __post_init__(self):
        if self.n <= 0 or (self.n & (self.n - 1)) != 0:
            raise ValueError("n must be a power of two")
        if self.L <= 0:
            raise ValueError("L must be positive")

    @property
    def cell(self) -> float:
        return self.L / self.n

    @property
    def cell_area(self) -> float:
        return (self.L / self.n) ** 2

    def coords(self) -> Tuple[np.ndarray, np.ndarray]:
        x = -self.L / 2 + self.cell * np.arange(self.n)
        return np.meshgrid(x, x, indexing="ij")

    def freqs(self) -> Tuple[np.ndarray, np.ndarray]:
        xi = TWO_PI * np.fft.fftfreq(self.n, d=self.cell)
        return np.meshgrid(xi, xi, indexing="ij")

    @property
    def freq_max(self) -> float:
        return TWO_PI * (self.n / 2) / self.L

    @property
    def freq_step(self) -> float:
        return TWO_PI / self.L


@dataclass
class GridFunction:
    """Complex samples on a Grid; norms are Riemann sums with weight (L/n)^2."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.grid.n, self.grid.n):
            raise ValueError("sample array must be n x n")

    def norm(self, p: float = 2.0) -> float:
        a = np.abs(self.values)
        if p == np.inf:
            return float(a.max())
        return float((np.sum(a ** p) * self.grid.cell_area) ** (1.0 / p))

    def inner(self, other: "GridFunction") -> complex:
        self._check(other)
        return complex(np.vdot(other.values, self.values) * self.grid.cell_area)

    def _check(self, other: "GridFunction") -> None:
        if other.grid != self.grid:
            raise ValueError("grid mismatch")

    def __add__(self, other):
        self._check(other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        self._check(other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        return GridFunction(self.grid, self.values * c)

    def save(self, path) -> None:
        with open(path, "wb") as fh:
            fh.write(b"DSQF")
            fh.write(struct.pack("<IQd", 1, self.grid.n, self.grid.L))
            fh.write(self.values.astype("<c16").tobytes(order="C"))

    @staticmethod
    def load(path) -> "GridFunction":
        with open(path, "rb") as fh:
            if fh.read(4) != b"DSQF":
                raise ValueError("bad magic")
            version, n, L = struct.unpack("<IQd", fh.read(struct.calcsize("<IQd")))
            if version != 1:
                raise ValueError(f"unsupported version {version}")
            vals = np.frombuffer(fh.read(16 * n * n), dtype="<c16").reshape(n, n)
            return GridFunction(Grid(int(n), float(L)), vals.copy())


def forward(f: GridFunction) -> GridFunction:
    """Unitary DFT; frequency samples live on xi = 2*pi*k/L in fft order."""
    return GridFunction(f.grid, np.fft.fft2(f.values, norm="ortho"))


def inverse(fhat: GridFunction) -> GridFunction:
    return GridFunction(fhat.grid, np.fft.ifft2(fhat.values, norm="ortho"))


# ---------------------------------------------------------------------------
# the smooth bump and radial Littlewood-Paley profile


def _theta(t: np.ndarray) -> np.ndarray:
    """Smooth step: 0 for t <= 0, 1 for t >= 1, C^inf in between."""
    t = np.asarray(t, dtype=float)
    a = np.zeros_like(t)
    pos = t > 0
    np.exp(np.divide(-1.0, t, out=a, where=pos), out=a, where=pos)
    b = np.zeros_like(t)
    neg = t < 1
    np.exp(np.divide(-1.0, 1.0 - t, out=b, where=neg), out=b, where=neg)
    with np.errstate(invalid="ignore"):
        out = a / (a + b)
    out[t <= 0] = 0.0
    out[t >= 1] = 1.0
    return out


def bump(x: np.ndarray) -> np.ndarray:
    """Even bump: 1 on |x| <= 1/2, 0 on |x| >= 1, smooth transition between."""
    ax = np.abs(np.asarray(x, dtype=float))
    return _theta(2.0 * (1.0 - ax))


def lp_profile(r: np.ndarray) -> np.ndarray:
    """Radial profile: 1 on [1, 2], supported on [1/2, 4]."""
    r = np.asarray(r, dtype=float)
    rise = _theta(2.0 * r - 1.0)
    fall = _theta((4.0 - r) / 2.0)
    return np.minimum(rise, fall)


def _angle_wrap(a: np.ndarray) -> np.ndarray:
    """Wrap to [-pi, pi)."""
    return (a + math.pi) % TWO_PI - math.pi


# ---------------------------------------------------------------------------
# symbol specs


class SymbolSpec:
    """Base for declarative multiplier symbols. eval() is vectorized."""

    kind = "abstract"

    def eval(self, xi1: np.ndarray, xi2: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError


def _unit(v: Sequence[float]) -> Tuple[float, float]:
    vx, vy = float(v[0]), float(v[1])
    nrm = math.hypot(vx, vy)
    if nrm == 0:
        raise ValueError("zero direction vector")
    return vx / nrm, vy / nrm


def _interval(tau: Sequence[float]) -> Tuple[float, float]:
    lo, hi = float(tau[0]), float(tau[1])
    if not (hi > lo) or hi - lo >= TWO_PI:
        raise ValueError("empty or full angular interval")
    return lo, hi


@dataclass(frozen=True)
class ConeRough(SymbolSpec):
    """Indicator of the frequency cone over the angular interval tau (open)."""

    tau: Tuple[float, float]
    kind = "cone_rough"

    def eval(self, xi1, xi2):
        lo, hi = _interval(self.tau)
        ang = np.arctan2(xi2, xi1)
        d = (ang - lo) % TWO_PI
        inside = (d > 0) & (d < hi - lo) & ((xi1 != 0) | (xi2 != 0))
        return inside.astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "tau": list(self.tau)}


@dataclass(frozen=True)
class ConeSmooth(SymbolSpec):
    """Smooth cone: bump((theta - c_tau)/(|tau|/2)), 1 on the middle half."""

    tau: Tuple[float, float]
    kind = "cone_smooth"

    def eval(self, xi1, xi2):
        lo, hi = _interval(self.tau)
        c = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        ang = np.arctan2(xi2, xi1)
        out = bump(_angle_wrap(ang - c) / half)
        out = np.where((xi1 == 0) & (xi2 == 0), 0.0, out)
        return out.astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "tau": list(self.tau)}


@dataclass(frozen=True)
class LittlewoodPaley(SymbolSpec):
    """psi(2^-k |xi|) with psi = lp_profile."""

    k: int
    kind = "littlewood_paley"

    def eval(self, xi1, xi2):
        r = np.hypot(xi1, xi2) * (2.0 ** (-self.k))
        return lp_profile(r).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "k": self.k}


@dataclass(frozen=True)
class HalfPlane(SymbolSpec):
    """Indicator of the open half-plane xi . v > 0."""

    v: Tuple[float, float]
    kind = "half_plane"

    def eval(self, xi1, xi2):
        vx, vy = _unit(self.v)
        return (xi1 * vx + xi2 * vy > 0).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "v": list(self.v)}


@dataclass(frozen=True)
class AnalyticProj(SymbolSpec):
    """Frequency projection onto xi . v > 0 (Meyer's H_v^+)."""

    v: Tuple[float, float]
    kind = "analytic_proj"

    def eval(self, xi1, xi2):
        vx, vy = _unit(self.v)
        return (xi1 * vx + xi2 * vy > 0).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "v": list(self.v)}


@dataclass(frozen=True)
class Hilbert(SymbolSpec):
    """Directional Hilbert transform: -i sgn(xi . v), 0 on the singular line."""

    v: Tuple[float, float]
    kind = "hilbert"

    def eval(self, xi1, xi2):
        vx, vy = _unit(self.v)
        return -1j * np.sign(xi1 * vx + xi2 * vy).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "v": list(self.v)}


@dataclass(frozen=True)
class FreqRect:
    """Rectangle in frequency with sides along (v, v_perp)."""

    direction: Tuple[float, float]
    center: Tuple[float, float]
    halfwidths: Tuple[float, float]

    def __post_init__(self):
        _unit(self.direction)
        if self.halfwidths[0] <= 0 or self.halfwidths[1] <= 0:
            raise ValueError("halfwidths must be positive")

    def local_coords(self, xi1, xi2):
        vx, vy = _unit(self.direction)
        dx = xi1 - self.center[0]
        dy = xi2 - self.center[1]
        return dx * vx + dy * vy, -dx * vy + dy * vx


@dataclass(frozen=True)
class RectRough(SymbolSpec):
    rect: FreqRect
    kind = "rect_rough"

    def eval(self, xi1, xi2):
        u1, u2 = self.rect.local_coords(xi1, xi2)
        h1, h2 = self.rect.halfwidths
        return ((np.abs(u1) < h1) & (np.abs(u2) < h2)).astype(np.complex128)

    def to_json(self):
        r = self.rect
        return {"kind": self.kind, "direction": list(r.direction), "center": list(r.center),
                "halfwidths": list(r.halfwidths)}


@dataclass(frozen=True)
class RectSmooth(SymbolSpec):
    """Product bump supported in the rectangle, 1 on its middle half."""

    rect: FreqRect
    kind = "rect_smooth"

    def eval(self, xi1, xi2):
        u1, u2 = self.rect.local_coords(xi1, xi2)
        h1, h2 = self.rect.halfwidths
        return (bump(u1 / h1) * bump(u2 / h2)).astype(np.complex128)

    def to_json(self):
        r = self.rect
        return {"kind": self.kind, "direction": list(r.direction), "center": list(r.center),
                "halfwidths": list(r.halfwidths)}


@dataclass(frozen=True)
class Polygon(SymbolSpec):
    """Indicator of the closed regular N-gon with vertices exp(2*pi*i*j/N)."""

    n_sides: int
    kind = "polygon"

    def __post_init__(self):
        if self.n_sides < 3:
            raise ValueError("polygon needs at least three sides")

    def eval(self, xi1, xi2):
        n = self.n_sides
        inr = math.cos(math.pi / n)
        worst = np.full(np.shape(xi1), -np.inf)
        for j in range(n):
            phi = TWO_PI * (j + 0.5) / n
            worst = np.maximum(worst, xi1 * math.cos(phi) + xi2 * math.sin(phi))
        return (worst <= inr).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "n_sides": self.n_sides}


def poly_kappa(n_sides: int) -> int:
    """kappa with 2^(kappa-1) < N <= 2^kappa."""
    return max(1, (n_sides - 1).bit_length())


@dataclass(frozen=True)
class RadialAnnulusPiece(SymbolSpec):
    """Radial piece m_k: supported on the annulus A_k, 1 on the core a_k."""

    k: int
    kappa: int
    kind = "radial_annulus_piece"

    def radii(self) -> Tuple[float, float, float, float]:
        s = 2.0 ** (-2 * self.kappa)
        r1 = 1.0 - 2.0 ** (-self.k - 1) * s
        r2 = 1.0 - 2.0 ** (-self.k - 2) * s
        r3 = 1.0 - 2.0 ** (-self.k - 4) * s
        r4 = 1.0 - 2.0 ** (-self.k - 5) * s
        return r1, r2, r3, r4

    def eval(self, xi1, xi2):
        r1, r2, r3, r4 = self.radii()
        r = np.hypot(xi1, xi2)
        rise = _theta((r - r1) / (r2 - r1))
        fall = _theta((r4 - r) / (r4 - r3))
        return np.minimum(rise, fall).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "k": self.k, "kappa": self.kappa}


@dataclass(frozen=True)
class RadialCircle(SymbolSpec):
    """m_P: radial bump on the 2^(-2 kappa - 3) neighborhood of the unit circle."""

    n_sides: int
    kind = "radial_circle"

    def eval(self, xi1, xi2):
        kappa = poly_kappa(self.n_sides)
        w = 2.0 ** (-2 * kappa - 3)
        r = np.hypot(xi1, xi2)
        return bump((r - 1.0) / w).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "n_sides": self.n_sides}


@dataclass(frozen=True)
class RadialLow(SymbolSpec):
    """m_0: residual (1 - m_kappa - m_P) inside the polygon, so that the
    three-piece polygon decomposition is an exact lattice identity."""

    n_sides: int
    kind = "radial_low"

    def eval(self, xi1, xi2):
        kappa = poly_kappa(self.n_sides)
        pol = Polygon(self.n_sides).eval(xi1, xi2).real
        mk = annular_sum(kappa).eval(xi1, xi2).real
        mp = RadialCircle(self.n_sides).eval(xi1, xi2).real
        return (pol * (1.0 - mk - mp)).astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "n_sides": self.n_sides}


@dataclass(frozen=True)
class AngularBump(SymbolSpec):
    """beta_j of the circle partition: centered at angle 2*pi*j/N, supported on
    a window of half-width 2*pi/N, normalized so the family sums to 1."""

    j: int
    n_dirs: int
    kind = "angular_bump"

    def eval(self, xi1, xi2):
        ang = np.arctan2(xi2, xi1)
        num = _raw_angular(ang, self.j, self.n_dirs)
        den = _angular_partition_sum(ang, self.n_dirs)
        out = np.where(den > 0, num / np.maximum(den, 1e-300), 0.0)
        return out.astype(np.complex128)

    def to_json(self):
        return {"kind": self.kind, "j": self.j, "n_dirs": self.n_dirs}


def _raw_angular(ang: np.ndarray, j: int, n: int) -> np.ndarray:
    spacing = TWO_PI / n
    return bump(_angle_wrap(ang - j * spacing) / spacing)


def _angular_partition_sum(ang: np.ndarray, n: int) -> np.ndarray:
    # only the nearest center and its two neighbors can contribute
    spacing = TWO_PI / n
    j0 = np.round(ang / spacing)
    total = np.zeros_like(ang)
    for dj in (-1.0, 0.0, 1.0):
        total = total + bump(_angle_wrap(ang - (j0 + dj) * spacing) / spacing)
    return total


@dataclass(frozen=True)
class Product(SymbolSpec):
    parts: Tuple[SymbolSpec, ...]
    kind = "product"

    def eval(self, xi1, xi2):
        out = np.ones(np.shape(xi1), dtype=np.complex128)
        for p in self.parts:
            out = out * p.eval(xi1, xi2)
        return out

    def to_json(self):
        return {"kind": self.kind, "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Sum(SymbolSpec):
    parts: Tuple[SymbolSpec, ...]
    kind = "sum"

    def eval(self, xi1, xi2):
        out = np.zeros(np.shape(xi1), dtype=np.complex128)
        for p in self.parts:
            out = out + p.eval(xi1, xi2)
        return out

    def to_json(self):
        return {"kind": self.kind, "parts": [p.to_json() for p in self.parts]}


def annular_sum(kappa: int) -> Sum:
    """m_kappa = sum of m_k over -2*kappa <= k <= 0."""
    return Sum(tuple(RadialAnnulusPiece(k, kappa) for k in range(-2 * kappa, 1)))


_KINDS = {}
for _cls in (ConeRough, ConeSmooth, LittlewoodPaley, HalfPlane, AnalyticProj, Hilbert,
             RectRough, RectSmooth, Polygon, RadialAnnulusPiece, RadialCircle, RadialLow,
             AngularBump, Product, Sum):
    _KINDS[_cls.kind] = _cls


def spec_from_json(d: dict) -> SymbolSpec:
    kind = d["kind"]
    if kind in ("product", "sum"):
        parts = tuple(spec_from_json(p) for p in d["parts"])
        return Product(parts) if kind == "product" else Sum(parts)
    if kind in ("rect_rough", "rect_smooth"):
        rect = FreqRect(tuple(d["direction"]), tuple(d["center"]), tuple(d["halfwidths"]))
        return _KINDS[kind](rect)
    args = {k: v for k, v in d.items() if k != "kind"}
    for key in ("tau", "v"):
        if key in args:
            args[key] = tuple(args[key])
    return _KINDS[kind](**args)


def spec_to_json_str(spec: SymbolSpec) -> str:
    return json.dumps(spec.to_json())


# ---------------------------------------------------------------------------
# operator application


def eval_symbol(spec: SymbolSpec, xi: Tuple[float, float]) -> complex:
    """Symbol value at a single frequency point."""
    out = spec.eval(np.asarray([xi[0]]), np.asarray([xi[1]]))
    return complex(out[0])


def apply(spec: SymbolSpec, f: GridFunction) -> GridFunction:
    xi1, xi2 = f.grid.freqs()
    sym = spec.eval(xi1, xi2)
    fhat = np.fft.fft2(f.values, norm="ortho")
    return GridFunction(f.grid, np.fft.ifft2(sym * fhat, norm="ortho"))


def square_function(specs: Sequence[SymbolSpec], f: GridFunction, p: float) -> Tuple[float, GridFunction]:
    """Pointwise l2 aggregate over the multiplier family and its L^p norm."""
    if not specs:
        raise ValueError("need at least one symbol")
    if p < 1:
        raise ValueError("p must be >= 1")
    xi1, xi2 = f.grid.freqs()
    fhat = np.fft.fft2(f.values, norm="ortho")
    acc = np.zeros((f.grid.n, f.grid.n))
    for spec in specs:
        piece = np.fft.ifft2(spec.eval(xi1, xi2) * fhat, norm="ortho")
        acc += np.abs(piece) ** 2
    amp = GridFunction(f.grid, np.sqrt(acc))
    return amp.norm(p), amp


# ---------------------------------------------------------------------------
# polygon decomposition and the Cordoba overlap count


def polygon_decomposition(n_sides: int, f: GridFunction) -> Tuple[GridFunction, GridFunction, GridFunction]:
    """Split the polygon restriction into low / annular / edge pieces.

    All three pieces are cut by the polygon indicator on the lattice, with the
    low piece defined as the in-polygon residual, so T_P = T_0 + T_k + O_P
    holds exactly on lattice points.
    """
    if n_sides < 3:
        raise ValueError("polygon needs at least three sides")
    kappa = poly_kappa(n_sides)
    xi1, xi2 = f.grid.freqs()
    pol = Polygon(n_sides).eval(xi1, xi2).real
    mk = annular_sum(kappa).eval(xi1, xi2).real
    mp = RadialCircle(n_sides).eval(xi1, xi2).real
    fhat = np.fft.fft2(f.values, norm="ortho")

    def piece(sym):
        return GridFunction(f.grid, np.fft.ifft2(sym * fhat, norm="ortho"))

    t0 = piece(pol * (1.0 - mk - mp))
    tk = piece(pol * mk)
    op = piece(pol * mp)
    return t0, tk, op


def _sector_params(n_dirs: int, k: int) -> Tuple[float, float, float]:
    kappa = poly_kappa(n_dirs)
    if not (-2 * kappa <= k <= 0):
        raise ValueError("k out of range")
    s = 2.0 ** (-2 * kappa)
    r0 = 1.0 - 2.0 ** (-k - 1) * s
    r1 = 1.0 - 2.0 ** (-k - 5) * s
    half_arc = math.pi / n_dirs
    return r0, r1, half_arc


def _sector_member(n_dirs, k, j, x, y) -> bool:
    r0, r1, half = _sector_params(n_dirs, k)
    r = math.hypot(x, y)
    if not (r0 < r < r1):
        return False
    d = (math.atan2(y, x) - TWO_PI * j / n_dirs + math.pi) % TWO_PI - math.pi
    return abs(d) < half


_RADIAL_MESH = np.linspace(0.0, 1.0, 7)


def _sumset_member(n_dirs, k, j, jp, x, y) -> bool:
    """xi in Omega_{j,k} + Omega_{j',k}.

    Solved exactly by fixing the two radii on a fine mesh of the (thin)
    annulus and recovering both angles from the triangle with sides
    (r, r', |xi|); membership then only asks the angles to land in the two
    (fat) arcs, so no thin feature can be missed.
    """
    r0, r1, half = _sector_params(n_dirs, k)
    rho = math.hypot(x, y)
    a0 = TWO_PI * j / n_dirs
    b0 = TWO_PI * jp / n_dirs
    if rho < 1e-12:
        # only exactly antipodal pairs reach the origin (r = r', th' = th + pi)
        d = (a0 + math.pi - b0 + math.pi) % TWO_PI - math.pi
        return abs(d) < 2 * half
    if rho >= 2 * r1:
        return False
    phi = math.atan2(y, x)
    for r in r0 + (r1 - r0) * _RADIAL_MESH:
        for rp in r0 + (r1 - r0) * _RADIAL_MESH:
            if rho > r + rp or rho < abs(r - rp):
                continue
            ca = (rho * rho + r * r - rp * rp) / (2 * rho * r)
            cb = (rho * rho + rp * rp - r * r) / (2 * rho * rp)
            alpha = math.acos(max(-1.0, min(1.0, ca)))
            beta = math.acos(max(-1.0, min(1.0, cb)))
            for sgn in (1.0, -1.0):
                th = phi + sgn * alpha
                tp = phi - sgn * beta
                da = (th - a0 + math.pi) % TWO_PI - math.pi
                db = (tp - b0 + math.pi) % TWO_PI - math.pi
                if abs(da) < half and abs(db) < half:
                    return True
    return False


def cordoba_overlap(n_dirs: int, k: int) -> int:
    """Max multiplicity of the sumsets Omega_{j,k} + Omega_{j',k} over probes
    near every pairwise sum center, counting ordered pairs with both indices
    in the half-circle family j, j' in [0, N/2).

    The half-circle restriction is the classical reduction: over the full
    vertex set every antipodal pair's sumset contains the origin, so the
    count at 0 would grow like N instead of staying bounded.
    """
    half_n = max(1, n_dirs // 2)
    r0, r1, half = _sector_params(n_dirs, k)
    rmid = 0.5 * (r0 + r1)
    angles = TWO_PI * np.arange(half_n) / n_dirs
    ex, ey = np.cos(angles), np.sin(angles)
    cxs = rmid * (ex[:, None] + ex[None, :])
    cys = rmid * (ey[:, None] + ey[None, :])
    diam = 2.0 * ((r1 - r0) + 2.0 * r1 * half)
    step = TWO_PI / n_dirs
    probes = []
    for d in range(half_n):
        probes.append((cxs[0, d], cys[0, d]))
        # sums of two arc-boundary directions: the multiplicity corners
        for b1 in (0.5 * step, -0.5 * step):
            b2 = (d + 0.5) * step
            probes.append((rmid * (math.cos(b1) + math.cos(b2)),
                           rmid * (math.sin(b1) + math.sin(b2))))
    jit = (-0.02, 0.0, 0.02)
    best = 0
    for (cx, cy) in probes:
        for ax in jit:
            for ay in jit:
                px, py = cx + ax * diam, cy + ay * diam
                near = (cxs - px) ** 2 + (cys - py) ** 2 <= (1.3 * diam) ** 2
                js, jps = np.nonzero(near)
                if len(js) <= best:
                    continue
                count = 0
                for jj, jjp in zip(js, jps):
                    if _sumset_member(n_dirs, k, int(jj), int(jjp), px, py):
                        count += 1
                best = max(best, count)
    return best
