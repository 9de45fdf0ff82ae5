"""Radar point extraction: BFAR thresholding per azimuth, centroid peaks over
contiguous detection runs, and conversion to a Cartesian point cloud.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class BfarParams:
    """Detector settings.

    The threshold for a cell is scale_a * mean(training cells) + offset_b,
    where the training cells are `window` cells on each side of the cell with
    `guard` cells skipped next to it. Cells below min_range_bin never fire
    (they are the sensor's own returns).
    """

    window: int = 40
    guard: int = 4
    scale_a: float = 1.1
    offset_b: float = 0.9
    min_range_bin: int = 10

    def __post_init__(self):
        if self.guard < 0 or self.window <= self.guard:
            raise ValueError("require window > guard >= 0")
        if self.scale_a <= 0:
            raise ValueError("scale_a must be positive")


@dataclass(frozen=True)
class PolarScan:
    """One radar rotation: power grid indexed (azimuth, range bin)."""

    power: np.ndarray               # (A, B), non-negative
    azimuth_angles: np.ndarray      # (A,), strictly increasing in [0, 2pi)
    azimuth_timestamps: np.ndarray  # (A,), strictly increasing
    range_resolution: float         # meters per bin

    def __post_init__(self):
        a, b = self.power.shape
        if self.azimuth_angles.shape != (a,) or self.azimuth_timestamps.shape != (a,):
            raise ValueError("azimuth arrays must match power grid rows")
        if np.any(np.diff(self.azimuth_angles) <= 0):
            raise ValueError("azimuth angles must strictly increase")
        if self.azimuth_angles[0] < 0 or self.azimuth_angles[-1] >= 2 * np.pi:
            raise ValueError("azimuth angles must lie in [0, 2pi)")
        if np.any(np.diff(self.azimuth_timestamps) <= 0):
            raise ValueError("azimuth timestamps must strictly increase")
        if self.range_resolution <= 0:
            raise ValueError("range resolution must be positive")

    @property
    def azimuth_count(self) -> int:
        return self.power.shape[0]

    @property
    def range_bins(self) -> int:
        return self.power.shape[1]

    @property
    def mid_timestamp(self) -> float:
        return float(self.azimuth_timestamps[self.azimuth_count // 2])


@dataclass(frozen=True)
class RadarPointCloud:
    """Sensor-frame 2D points with per-point timestamps and peak powers."""

    xs: np.ndarray
    ys: np.ndarray
    timestamps: np.ndarray
    powers: np.ndarray

    def __post_init__(self):
        n = len(self.xs)
        for arr in (self.ys, self.timestamps, self.powers):
            if len(arr) != n:
                raise ValueError("cloud columns must have equal length")

    def __len__(self) -> int:
        return len(self.xs)

    def points(self) -> np.ndarray:
        return np.column_stack([self.xs, self.ys])

    @staticmethod
    def empty() -> "RadarPointCloud":
        z = np.zeros(0)
        return RadarPointCloud(z, z.copy(), z.copy(), z.copy())


def _training_mean(power: np.ndarray, params: BfarParams) -> np.ndarray:
    """Mean over the (possibly truncated) leading+trailing training windows,
    vectorized over a whole (A, B) grid or a single row."""
    single = power.ndim == 1
    grid = power[None, :] if single else power
    a, b = grid.shape
    w, g = params.window, params.guard
    csum = np.zeros((a, b + 1))
    np.cumsum(grid, axis=1, out=csum[:, 1:])

    idx = np.arange(b)
    # Leading window [i-g-w, i-g-1], trailing [i+g+1, i+g+w], clipped to the row.
    lo_l = np.clip(idx - g - w, 0, b)
    hi_l = np.clip(idx - g, 0, b)
    lo_r = np.clip(idx + g + 1, 0, b)
    hi_r = np.clip(idx + g + 1 + w, 0, b)
    total = (csum[:, hi_l] - csum[:, lo_l]) + (csum[:, hi_r] - csum[:, lo_r])
    count = (hi_l - lo_l) + (hi_r - lo_r)
    mean = total / np.maximum(count, 1)
    return mean[0] if single else mean


def bfar_mask(power: np.ndarray, params: BfarParams) -> np.ndarray:
    """Detection mask for a (A, B) grid or a single row."""
    b = power.shape[-1]
    if b < 2 * (params.window + params.guard) + 1:
        raise ValueError(f"row of {b} bins too short for window={params.window} guard={params.guard}")
    mean = _training_mean(power, params)
    mask = power > params.scale_a * mean + params.offset_b
    mask[..., : params.min_range_bin] = False
    return mask


def bfar_detect(row: np.ndarray, params: BfarParams) -> np.ndarray:
    """Per-azimuth BFAR detection mask for one range row."""
    row = np.asarray(row, dtype=float)
    if row.ndim != 1:
        raise ValueError("bfar_detect expects a single row")
    return bfar_mask(row, params)


def extract_peaks(mask: np.ndarray, row: np.ndarray, params: BfarParams | None = None) -> list[tuple[float, float]]:
    """Collapse each maximal run of detections to its power-weighted centroid.

    Returns (centroid_bin, run_max_power) per run.
    """
    mask = np.asarray(mask, dtype=bool)
    row = np.asarray(row, dtype=float)
    if mask.shape != row.shape:
        raise ValueError("mask and row must have the same length")
    if not mask.any():
        return []
    padded = np.concatenate([[False], mask, [False]])
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    starts, ends = edges[0::2], edges[1::2]
    peaks = []
    for s, e in zip(starts, ends):
        bins = np.arange(s, e)
        p = row[s:e]
        total = p.sum()
        centroid = float(bins.mean()) if total <= 0 else float((bins * p).sum() / total)
        peaks.append((centroid, float(p.max())))
    return peaks


def scan_to_cloud(scan: PolarScan, params: BfarParams) -> RadarPointCloud:
    """Full extraction: BFAR mask, centroid peaks, then polar to Cartesian."""
    mask = bfar_mask(np.asarray(scan.power, dtype=float), params)
    if not mask.any():
        return RadarPointCloud.empty()

    a, b = mask.shape
    power = np.asarray(scan.power, dtype=float)
    # Runs never span rows: flatten with a forced break after each row.
    flat = np.column_stack([mask, np.zeros((a, 1), dtype=bool)]).ravel()
    padded = np.concatenate([[False], flat, [False]])
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    starts, ends = edges[0::2], edges[1::2]

    width = b + 1
    az = starts // width
    pflat = np.column_stack([power, np.zeros((a, 1))]).ravel()
    csum_p = np.concatenate([[0.0], np.cumsum(pflat)])
    csum_bp = np.concatenate([[0.0], np.cumsum(pflat * (np.arange(a * width) % width))])
    totals = csum_p[ends] - csum_p[starts]
    weighted = csum_bp[ends] - csum_bp[starts]
    centroid = np.where(totals > 0, weighted / np.maximum(totals, 1e-300),
                        0.5 * (starts + ends - 1) - az * width)

    # Runs are separated by at least one gap cell, so the interleaved
    # boundaries are strictly increasing and [start, end) slices come out
    # at the even positions.
    bounds = np.empty(2 * len(starts), dtype=np.intp)
    bounds[0::2], bounds[1::2] = starts, ends
    peak_power = np.maximum.reduceat(pflat, bounds)[0::2]
    rng = centroid * scan.range_resolution
    ang = scan.azimuth_angles[az]
    return RadarPointCloud(
        xs=rng * np.cos(ang),
        ys=rng * np.sin(ang),
        timestamps=scan.azimuth_timestamps[az].astype(float),
        powers=peak_power,
    )


def save_cloud_csv(cloud: RadarPointCloud, path) -> None:
    """Debug dump with fixed column order x, y, t, power."""
    with open(path, "w") as f:
        f.write("x,y,t,power\n")
        for i in range(len(cloud)):
            f.write(f"{cloud.xs[i]:.9g},{cloud.ys[i]:.9g},"
                    f"{cloud.timestamps[i]:.9g},{cloud.powers[i]:.9g}\n")


def load_cloud_csv(path) -> RadarPointCloud:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.size == 0:
        return RadarPointCloud.empty()
    return RadarPointCloud(data[:, 0], data[:, 1], data[:, 2], data[:, 3])
