"""Attractor sampling, cloud distances, and one-parameter scans."""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.spatial.distance import cdist

from .errors import DynamicsError, EmptyCloud
from .pwlmap import BcnfParams, PwlMap, bcnf, orbit

__all__ = [
    "AttractorCloud",
    "ScanResult",
    "attractor",
    "default_x0",
    "hausdorff",
    "scan",
]

# Fixed nudge off the first coordinate axis, keeping the default start away
# from measure-zero invariant lines of the normal form.
X0_OFFSET = 1e-3

_CHUNK = 2048


@dataclass(frozen=True)
class AttractorCloud:
    """Post-transient orbit samples plus the settings that generated them."""

    points: np.ndarray
    escaped: bool
    escape_index: int | None
    x0: np.ndarray
    n_transient: int
    n_keep: int


def default_x0(pwl: PwlMap) -> np.ndarray:
    x0 = pwl.b.copy()
    x0[1] += X0_OFFSET
    return x0


def attractor(
    pwl: PwlMap,
    x0,
    n_transient: int = 1000,
    n_keep: int = 3000,
    escape_radius: float = 1e12,
) -> AttractorCloud:
    """Sample the attractor reached from ``x0``; empty only when the orbit escapes."""
    orb = orbit(pwl, x0, n_transient, n_keep, escape_radius)
    return AttractorCloud(
        points=orb.points,
        escaped=orb.escaped,
        escape_index=orb.escape_index,
        x0=np.asarray(x0, dtype=float),
        n_transient=n_transient,
        n_keep=n_keep,
    )


def _cloud_points(obj) -> np.ndarray:
    pts = np.asarray(getattr(obj, "points", obj), dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    return pts


def hausdorff(a, b) -> float:
    """Hausdorff distance between two finite point clouds (brute force)."""
    A = _cloud_points(a)
    B = _cloud_points(b)
    if A.shape[0] == 0 or B.shape[0] == 0:
        raise EmptyCloud("both clouds must contain at least one point")
    best_ab = np.empty(A.shape[0])
    best_ba = np.full(B.shape[0], np.inf)
    for i in range(0, A.shape[0], _CHUNK):
        d = cdist(A[i : i + _CHUNK], B)
        best_ab[i : i + _CHUNK] = d.min(axis=1)
        np.minimum(best_ba, d.min(axis=0), out=best_ba)
    return float(max(best_ab.max(), best_ba.max()))


@dataclass(frozen=True)
class ScanResult:
    parameter: str
    values: tuple[float, ...]
    clouds: tuple[AttractorCloud | None, ...]
    consecutive_hausdorff: tuple[float, ...]
    errors: tuple[str | None, ...]


def scan(
    base: BcnfParams,
    parameter: str,
    values,
    x0=None,
    n_transient: int = 1000,
    n_keep: int = 3000,
    escape_radius: float = 1e12,
) -> ScanResult:
    """Attractor clouds along a one-parameter family of normal-form maps.

    One cloud per value; a failed orbit (non-finite iterate) is recorded as
    an error string with a None cloud instead of aborting the scan.  The
    consecutive Hausdorff column gets NaN wherever either neighbour is empty.
    """
    allowed = {"tl", "dl", "tr", "dr"} | ({"sl", "sr"} if base.dim == 3 else set())
    if parameter not in allowed:
        raise ValueError(f"unknown scan parameter {parameter!r} for dimension {base.dim}")
    vals = tuple(float(v) for v in values)
    clouds: list[AttractorCloud | None] = []
    errors: list[str | None] = []
    for v in vals:
        pwl = bcnf(replace(base, **{parameter: v}))
        start = default_x0(pwl) if x0 is None else np.asarray(x0, dtype=float)
        try:
            cloud = attractor(pwl, start, n_transient, n_keep, escape_radius)
        except DynamicsError as exc:
            clouds.append(None)
            errors.append(f"{type(exc).__name__}: {exc}")
        else:
            clouds.append(cloud)
            errors.append(None)
    dists: list[float] = []
    for left, right in zip(clouds, clouds[1:]):
        if (
            left is None
            or right is None
            or left.points.shape[0] == 0
            or right.points.shape[0] == 0
        ):
            dists.append(float("nan"))
        else:
            dists.append(hausdorff(left, right))
    return ScanResult(
        parameter=parameter,
        values=vals,
        clouds=tuple(clouds),
        consecutive_hausdorff=tuple(dists),
        errors=tuple(errors),
    )
