"""Periodic-grid field containers and the shared numerics.

Everything downstream (solvers, dataset construction, evaluation) works on
scalar fields living on a 2D periodic grid. This module provides the grid and
field types plus the handful of operations they all share: circular padding,
cyclic shifts, conservative resampling, spectral derivatives, azimuthally
averaged power spectra and their cosine similarity.

Conventions
-----------
Arrays are indexed ``[row, col] = [y, x]``: x varies along axis 1, y along
axis 0. Grid samples sit at ``x_j = j * dx`` (no duplicated endpoint), which
is the layout assumed by the FFT-based operators.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class Grid2D:
    """Uniform periodic grid: cell counts and physical edge lengths."""

    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self):
        if self.nx < 4 or self.ny < 4:
            raise ValueError(f"grid must be at least 4x4, got {self.nx}x{self.ny}")
        if self.lx <= 0 or self.ly <= 0:
            raise ValueError("edge lengths must be positive")

    @property
    def dx(self) -> float:
        return self.lx / self.nx

    @property
    def dy(self) -> float:
        return self.ly / self.ny

    @property
    def cell_area(self) -> float:
        return self.dx * self.dy

    @property
    def area(self) -> float:
        return self.lx * self.ly

    def coords(self):
        """Return (x, y) meshes of sample positions, each shaped [ny, nx]."""
        x = np.arange(self.nx) * self.dx
        y = np.arange(self.ny) * self.dy
        return np.meshgrid(x, y)


@lru_cache(maxsize=64)
def wavenumbers(grid: Grid2D):
    """Angular wavenumber meshes (kx, ky) with exact values 2*pi*k/l."""
    kx1 = 2.0 * np.pi * np.fft.fftfreq(grid.nx, d=grid.dx)
    ky1 = 2.0 * np.pi * np.fft.fftfreq(grid.ny, d=grid.dy)
    kx, ky = np.meshgrid(kx1, ky1)
    kx.setflags(write=False)
    ky.setflags(write=False)
    return kx, ky


@lru_cache(maxsize=64)
def _psd_bins(nx: int, ny: int):
    """Radial bin index per Fourier mode, plus per-bin mode counts.

    Modes are binned by round(|k|) in integer-index units; radii beyond
    k_max = floor(min(nx, ny)/2) fold into the last bin so that every mode
    is counted exactly once (keeps the Parseval identity exact).
    """
    ix = np.rint(np.fft.fftfreq(nx) * nx).astype(int)
    iy = np.rint(np.fft.fftfreq(ny) * ny).astype(int)
    ixm, iym = np.meshgrid(ix, iy)
    r = np.sqrt(ixm.astype(float) ** 2 + iym.astype(float) ** 2)
    k_max = min(nx, ny) // 2
    which = np.minimum(np.rint(r).astype(int), k_max)
    counts = np.bincount(which.ravel(), minlength=k_max + 1)
    which.setflags(write=False)
    counts.setflags(write=False)
    return which, counts


@dataclass
class Field:
    """A scalar state on a periodic grid."""

    grid: Grid2D
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.ny, self.grid.nx):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.ny}, {self.grid.nx})"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")

    def copy(self) -> "Field":
        return Field(self.grid, self.values.copy())


@dataclass
class FieldSequence:
    """A trajectory of scalar fields, frames shaped [T, ny, nx]."""

    grid: Grid2D
    frames: np.ndarray
    dt_between_saves: float

    def __post_init__(self):
        self.frames = np.asarray(self.frames, dtype=float)
        if self.frames.ndim != 3 or self.frames.shape[0] < 1:
            raise ValueError("frames must be [T, ny, nx] with T >= 1")
        if self.frames.shape[1:] != (self.grid.ny, self.grid.nx):
            raise ValueError("frame shape does not match grid")
        if not np.all(np.isfinite(self.frames)):
            raise ValueError("frames must be finite")

    def __len__(self) -> int:
        return self.frames.shape[0]

    def field(self, t: int) -> Field:
        return Field(self.grid, self.frames[t])


@dataclass
class RadialSpectrum:
    """Azimuthally averaged power per integer radial wavenumber bin."""

    bins: np.ndarray
    power: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        self.bins = np.asarray(self.bins, dtype=int)
        self.power = np.asarray(self.power, dtype=float)
        self.counts = np.asarray(self.counts, dtype=int)
        if not (self.bins.shape == self.power.shape == self.counts.shape):
            raise ValueError("bins, power and counts must have equal length")
        if np.any(self.power < 0):
            raise ValueError("spectral power must be nonnegative")


def circular_pad(f: Field, p: int) -> np.ndarray:
    """Pad a field periodically by p cells on every side.

    padded[i, j] = values[(i - p) mod ny, (j - p) mod nx]
    """
    if p < 0 or p > min(f.grid.nx, f.grid.ny):
        raise ValueError(f"pad width {p} outside [0, {min(f.grid.nx, f.grid.ny)}]")
    if p == 0:
        return f.values.copy()
    return np.pad(f.values, p, mode="wrap")


def cyclic_shift(f: Field, sx: int, sy: int) -> Field:
    """Shift a field by (sx, sy) cells on the torus.

    out[i, j] = f[(i - sy) mod ny, (j - sx) mod nx]
    """
    return Field(f.grid, np.roll(f.values, shift=(sy, sx), axis=(0, 1)))


def _overlap_weights(n_src: int, n_dst: int) -> np.ndarray:
    """1D conservative restriction/prolongation matrix, rows sum to 1.

    W[i, j] is the fraction of destination cell i covered by source cell j
    when both partitions span the same interval. Resampling with these
    weights preserves the integral (hence the mean) exactly.
    """
    src_edges = np.arange(n_src + 1) / n_src
    dst_edges = np.arange(n_dst + 1) / n_dst
    lo = np.maximum(dst_edges[:-1, None], src_edges[None, :-1])
    hi = np.minimum(dst_edges[1:, None], src_edges[None, 1:])
    return np.clip(hi - lo, 0.0, None) * n_dst


def resample_area(f: Field, target_n: int) -> Field:
    """Resample to a target_n x target_n grid by exact area averaging.

    Each output cell is the average of the piecewise-constant input over
    the output cell's footprint, so the spatial mean is preserved for any
    size ratio (integer or not).
    """
    if target_n < 4:
        raise ValueError("target_n must be at least 4")
    wy = _overlap_weights(f.grid.ny, target_n)
    wx = _overlap_weights(f.grid.nx, target_n)
    out = wy @ f.values @ wx.T
    return Field(Grid2D(target_n, target_n, f.grid.lx, f.grid.ly), out)


def azimuthal_psd(f: Field) -> RadialSpectrum:
    """Azimuthally averaged power spectral density.

    power[k] is the mean of |FFT|^2 over all discrete wavevectors whose
    rounded radial index equals k, for k = 0 .. floor(min(nx, ny)/2).
    """
    which, counts = _psd_bins(f.grid.nx, f.grid.ny)
    p = np.abs(np.fft.fft2(f.values)) ** 2
    sums = np.bincount(which.ravel(), weights=p.ravel(), minlength=counts.size)
    power = sums / counts
    return RadialSpectrum(np.arange(counts.size), power, counts.copy())


def psd_cosine_similarity(p: RadialSpectrum, q: RadialSpectrum) -> float:
    """Cosine similarity of two radial spectra, in [0, 1].

    A zero spectrum has no direction; that case returns 0 with a warning
    rather than NaN so that averages over many frames stay finite.
    """
    if p.power.shape != q.power.shape:
        raise ValueError("spectra must have the same number of bins")
    np_, nq = np.linalg.norm(p.power), np.linalg.norm(q.power)
    if np_ == 0.0 or nq == 0.0:
        warnings.warn("cosine similarity of a zero spectrum defined as 0", RuntimeWarning)
        return 0.0
    return float(min(np.dot(p.power, q.power) / (np_ * nq), 1.0))


def integrate(f: Field) -> float:
    """Spatial integral: sum of values times cell area."""
    return float(f.values.sum() * f.grid.cell_area)


def spectral_grad(f: Field) -> tuple[Field, Field]:
    """FFT-based (d/dx, d/dy) with exact wavenumbers 2*pi*k/l."""
    kx, ky = wavenumbers(f.grid)
    fh = np.fft.fft2(f.values)
    dfx = np.real(np.fft.ifft2(1j * kx * fh))
    dfy = np.real(np.fft.ifft2(1j * ky * fh))
    return Field(f.grid, dfx), Field(f.grid, dfy)


def spectral_laplacian(f: Field) -> Field:
    """FFT-based Laplacian."""
    kx, ky = wavenumbers(f.grid)
    fh = np.fft.fft2(f.values)
    return Field(f.grid, np.real(np.fft.ifft2(-(kx**2 + ky**2) * fh)))
