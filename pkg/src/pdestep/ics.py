"""Random initial-condition generators for every PDE family.

All generators take a ``numpy.random.Generator`` so that dataset creation
is reproducible from a single seed. Distances are always computed with
periodic wrapping, so structures placed near an edge continue smoothly on
the opposite side.
"""

from __future__ import annotations

import numpy as np

from pdestep.errors import ConfigError
from pdestep.fields import Field, Grid2D
from pdestep.solvers.cdd import CDDParams, CDDState


def _wrapped_offsets(grid: Grid2D, x0: float, y0: float):
    """Signed periodic offsets (dx, dy) from (x0, y0) to every grid sample."""
    xx, yy = grid.coords()
    dx = (xx - x0 + grid.lx / 2.0) % grid.lx - grid.lx / 2.0
    dy = (yy - y0 + grid.ly / 2.0) % grid.ly - grid.ly / 2.0
    return dx, dy


def gaussian_blob(grid: Grid2D, x0: float, y0: float, a: float) -> np.ndarray:
    """exp(-a * d^2) with d the wrapped distance to (x0, y0)."""
    dx, dy = _wrapped_offsets(grid, x0, y0)
    return np.exp(-a * (dx**2 + dy**2))


def gen_blob_ic(
    grid: Grid2D,
    rng: np.random.Generator,
    n_range: tuple[int, int] = (1, 10),
    a: float = 10.0,
) -> Field:
    """Sum of N Gaussian blobs, N uniform in the inclusive range, centers uniform."""
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    values = np.zeros((grid.ny, grid.nx))
    for _ in range(n):
        x0 = rng.uniform(0.0, grid.lx)
        y0 = rng.uniform(0.0, grid.ly)
        values += gaussian_blob(grid, x0, y0, a)
    return Field(grid, values)


def _annulus(grid: Grid2D, x0: float, y0: float, r0: float, sigma: float) -> np.ndarray:
    """Gaussian ring of radius r0 whose cross-section integrates to 1."""
    dx, dy = _wrapped_offsets(grid, x0, y0)
    r = np.hypot(dx, dy)
    return np.exp(-((r - r0) ** 2) / (2.0 * sigma**2)) / (sigma * np.sqrt(2.0 * np.pi))


def add_loop(
    rho: np.ndarray,
    gnd_s: np.ndarray,
    gnd_e: np.ndarray,
    q: np.ndarray,
    grid: Grid2D,
    x0: float,
    y0: float,
    r0: float,
    sigma: float,
):
    """Accumulate one counter-clockwise circular loop into the density fields.

    The ring adds r0-circumference worth of line length to rho_t, a tangential
    GND contribution, and 2 pi worth of curvature to q_t.
    """
    dx, dy = _wrapped_offsets(grid, x0, y0)
    r = np.maximum(np.hypot(dx, dy), 1e-12)
    ring = np.exp(-((r - r0) ** 2) / (2.0 * sigma**2)) / (sigma * np.sqrt(2.0 * np.pi))
    rho += ring
    # CCW unit tangent at angle theta is (-sin, cos) = (-dy, dx) / r
    gnd_s += ring * (-dy / r)
    gnd_e += ring * (dx / r)
    q += ring / r0


def add_line(
    rho: np.ndarray,
    gnd_s: np.ndarray,
    gnd_e: np.ndarray,
    grid: Grid2D,
    offset: float,
    horizontal: bool,
    sigma: float,
    sign: float = 1.0,
):
    """Accumulate one straight Gaussian ridge (zero curvature) into the fields."""
    xx, yy = grid.coords()
    if horizontal:
        d = (yy - offset + grid.ly / 2.0) % grid.ly - grid.ly / 2.0
        tangent = (sign, 0.0)
    else:
        d = (xx - offset + grid.lx / 2.0) % grid.lx - grid.lx / 2.0
        tangent = (0.0, sign)
    ridge = np.exp(-(d**2) / (2.0 * sigma**2)) / (sigma * np.sqrt(2.0 * np.pi))
    rho += ridge
    gnd_s += ridge * tangent[0]
    gnd_e += ridge * tangent[1]


def _loop_state(grid: Grid2D, p: CDDParams, centers) -> CDDState:
    sigma = 2.0 * grid.dx
    rho = np.zeros((grid.ny, grid.nx))
    gs = np.zeros_like(rho)
    ge = np.zeros_like(rho)
    q = np.zeros_like(rho)
    for x0, y0 in centers:
        add_loop(rho, gs, ge, q, grid, x0, y0, p.r0, sigma)
    return CDDState(Field(grid, rho), (Field(grid, gs), Field(grid, ge)), Field(grid, q))


def gen_loop_ic(grid: Grid2D, p: CDDParams, rng: np.random.Generator) -> CDDState:
    """Random population of circular loops, count uniform in p.n_loops_range."""
    n = int(rng.integers(p.n_loops_range[0], p.n_loops_range[1] + 1))
    centers = [(rng.uniform(0, grid.lx), rng.uniform(0, grid.ly)) for _ in range(n)]
    return _loop_state(grid, p, centers)


def gen_turbulence_ic(
    grid: Grid2D,
    rng: np.random.Generator,
    k_peak: float = 4.0,
    max_speed: float = 3.0,
) -> Field:
    """Zero-mean random vorticity with an annular spectrum peaked near k_peak.

    The field is rescaled so the reconstructed velocity has max speed
    ``max_speed``, which fixes the advective CFL scale of the flow.
    """
    from pdestep.solvers.kolmogorov import velocity_from_vorticity

    noise = rng.standard_normal((grid.ny, grid.nx))
    nh = np.fft.fft2(noise)
    ix = np.fft.fftfreq(grid.nx) * grid.nx
    iy = np.fft.fftfreq(grid.ny) * grid.ny
    kk = np.hypot(*np.meshgrid(ix, iy))
    envelope = (kk / k_peak) ** 2 * np.exp(-((kk / k_peak) ** 2))
    envelope[0, 0] = 0.0  # zero-mean vorticity
    omega = np.real(np.fft.ifft2(nh * envelope))
    ux, uy = velocity_from_vorticity(Field(grid, omega))
    speed = max(np.abs(ux.values).max(), np.abs(uy.values).max())
    return Field(grid, omega * (max_speed / speed))


def gen_gray_scott_ic(
    grid: Grid2D,
    rng: np.random.Generator,
    n_range: tuple[int, int],
    a: float | None = None,
) -> tuple[Field, Field]:
    """Gaussian-blob perturbations of the trivial (u, v) = (1, 0) background."""
    if a is None:
        a = 160.0 * (2.5 / grid.lx) ** 2  # blob radius ~ 3% of the domain
    s = gen_blob_ic(grid, rng, n_range=n_range, a=a).values
    s = np.minimum(s, 1.0)
    u = 1.0 - 0.5 * s
    v = 0.25 * s
    return Field(grid, u), Field(grid, v)


def _gs_perturbation_fields(grid: Grid2D, mask: np.ndarray) -> tuple[Field, Field]:
    mask = np.clip(mask, 0.0, 1.0)
    return Field(grid, 1.0 - 0.5 * mask), Field(grid, 0.25 * mask)


OOD_KINDS = {
    "cdd": ("sparse_loops", "lines_plus_loops"),
    "gray_scott": ("lines", "blobs"),
}


def gen_ood_ic(family: str, kind: str, grid: Grid2D, params, rng: np.random.Generator):
    """Out-of-distribution initial states: same PDE, different IC geometry.

    family "cdd" accepts kinds "sparse_loops" (2-5 loops) and
    "lines_plus_loops" (three straight ridges plus one loop); family
    "gray_scott" accepts "lines" (3-6 parallel stripes, 2 cells wide) and
    "blobs" (1-10 disks of radius 4 cells). Returns a CDDState for cdd and
    an (u, v) field pair for gray_scott.
    """
    if family not in OOD_KINDS or kind not in OOD_KINDS[family]:
        raise ConfigError(f"OOD kind {kind!r} is not defined for family {family!r}")

    if family == "cdd":
        p: CDDParams = params
        sigma = 2.0 * grid.dx
        if kind == "sparse_loops":
            n = int(rng.integers(2, 6))
            centers = [(rng.uniform(0, grid.lx), rng.uniform(0, grid.ly)) for _ in range(n)]
            return _loop_state(grid, p, centers)
        state = _loop_state(grid, p, [(rng.uniform(0, grid.lx), rng.uniform(0, grid.ly))])
        rho, gs, ge = state.rho_t.values, state.gnd[0].values, state.gnd[1].values
        for _ in range(3):
            horizontal = bool(rng.integers(0, 2))
            extent = grid.ly if horizontal else grid.lx
            add_line(rho, gs, ge, grid, rng.uniform(0, extent), horizontal, sigma,
                     sign=1.0 if rng.integers(0, 2) else -1.0)
        return CDDState(
            Field(grid, rho), (Field(grid, gs), Field(grid, ge)), state.q_t
        )

    if kind == "lines":
        n_lines = int(rng.integers(3, 7))
        horizontal = bool(rng.integers(0, 2))
        width = 2  # cells
        mask = np.zeros((grid.ny, grid.nx))
        n_cells = grid.ny if horizontal else grid.nx
        spacing = n_cells / n_lines
        phase = rng.uniform(0, spacing)
        for i in range(n_lines):
            c = int(phase + i * spacing) % n_cells
            rows = [(c + w) % n_cells for w in range(width)]
            if horizontal:
                mask[rows, :] = 1.0
            else:
                mask[:, rows] = 1.0
        return _gs_perturbation_fields(grid, mask)

    # blobs: hard disks of radius 4 cells
    n_blobs = int(rng.integers(1, 11))
    radius = 4.0 * grid.dx
    mask = np.zeros((grid.ny, grid.nx))
    for _ in range(n_blobs):
        dx, dy = _wrapped_offsets(grid, rng.uniform(0, grid.lx), rng.uniform(0, grid.ly))
        mask[np.hypot(dx, dy) <= radius] = 1.0
    return _gs_perturbation_fields(grid, mask)
