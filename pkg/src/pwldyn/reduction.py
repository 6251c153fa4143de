"""Dimension reductions for continuous piecewise-linear maps.

Three scenarios are covered.  When both pieces share a simple eigenvalue the
map leaves an affine hyperplane invariant and restricts to a piecewise-linear
map of one dimension less.  When the left piece is singular its whole
half-space maps onto an affine hyperplane in one step, and the first-return
map induced on that plane is piecewise-linear with expanding pieces.  When an
eigenvalue sits on the unit circle the map is classified by the matching
boundary-crossing type.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    Escaped,
    HypothesisViolated,
    IllConditioned,
    MultipleZero,
    NoFixedPoint,
    NonFinite,
    NonTransversal,
    NoReturn,
    NotSingular,
    SingularMatrix,
)
from .pwlmap import LEFT, RIGHT, OrbitData, PwlMap, fixed_points, validate_continuity

__all__ = [
    "AffineHyperplane",
    "Chart",
    "InducedMapResult",
    "InducedSample",
    "ReducedPwlMap",
    "SharedEigReduction",
    "UnitModulusReport",
    "classify_unit_modulus",
    "detect_shared_eigenvalue",
    "induced_map",
    "plane_chart",
    "reduced_orbit",
    "restrict_to_manifold",
    "sample_induced",
    "zero_eig_reduction",
]

MEMBERSHIP_TOL = 1e-9
ESCAPE_RADIUS = 1e12
J_MAX = 10**6


@dataclass(frozen=True)
class AffineHyperplane:
    """Hyperplane ``{x : normal . x = offset}`` with a distinguished base point.

    The normal is stored unit length with its first significant component
    positive, so the membership test ``|normal . x - offset| <= tol (1 + |x|)``
    does not depend on any eigenvector scaling.
    """

    normal: np.ndarray
    base_point: np.ndarray
    offset: float

    @classmethod
    def from_normal_point(cls, normal, point) -> "AffineHyperplane":
        w = np.asarray(normal, dtype=float)
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            raise ValueError("hyperplane normal is zero")
        w = w / nrm
        for comp in w:
            if abs(comp) > 1e-12:
                if comp < 0.0:
                    w = -w
                break
        p = np.array(point, dtype=float)
        w.setflags(write=False)
        p.setflags(write=False)
        return cls(normal=w, base_point=p, offset=float(w @ p))

    def signed_distance(self, x) -> float:
        return float(self.normal @ np.asarray(x, dtype=float)) - self.offset

    def distances(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.normal - self.offset

    def contains(self, x, tol: float = MEMBERSHIP_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        return abs(self.signed_distance(x)) <= tol * (1.0 + float(np.linalg.norm(x)))


@dataclass(frozen=True)
class Chart:
    """Orthonormal coordinates on an affine hyperplane."""

    base: np.ndarray
    basis: np.ndarray  # (n, n-1), orthonormal columns

    def lift(self, xi) -> np.ndarray:
        return self.base + self.basis @ np.asarray(xi, dtype=float)

    def lift_many(self, Xi) -> np.ndarray:
        return np.asarray(Xi, dtype=float) @ self.basis.T + self.base

    def project(self, x) -> np.ndarray:
        return self.basis.T @ (np.asarray(x, dtype=float) - self.base)

    def project_many(self, X) -> np.ndarray:
        return (np.asarray(X, dtype=float) - self.base) @ self.basis


def plane_chart(plane: AffineHyperplane) -> Chart:
    return Chart(base=plane.base_point, basis=linalg.hyperplane_basis(plane.normal))


# ---------------------------------------------------------------------------
# shared eigenvalue


@dataclass(frozen=True)
class ReducedPwlMap:
    """Restriction of a map to an invariant hyperplane, in chart coordinates.

    The left piece applies where ``switch_normal . xi + switch_offset < 0``,
    mirroring the ambient switching rule exactly.
    """

    matrix_left: np.ndarray
    offset_left: np.ndarray
    matrix_right: np.ndarray
    offset_right: np.ndarray
    switch_normal: np.ndarray
    switch_offset: float
    chart: Chart

    @property
    def dimension(self) -> int:
        return self.matrix_left.shape[0]

    def side(self, xi) -> str:
        margin = float(self.switch_normal @ np.asarray(xi, dtype=float)) + self.switch_offset
        return LEFT if margin < 0.0 else RIGHT

    def __call__(self, xi) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        if self.side(xi) == LEFT:
            return self.matrix_left @ xi + self.offset_left
        return self.matrix_right @ xi + self.offset_right

    def slopes(self) -> tuple[float, float] | None:
        """Piece slopes for one-dimensional restrictions, else None."""
        if self.dimension != 1:
            return None
        return float(self.matrix_left[0, 0]), float(self.matrix_right[0, 0])


@dataclass(frozen=True)
class SharedEigReduction:
    """Invariant-plane data for an eigenvalue shared by both pieces.

    ``left``/``right`` are the adjugate-scaled eigenvectors of the right
    piece; :meth:`deviation` is the affine functional that vanishes on the
    invariant plane and is multiplied by ``value`` under one map step.
    """

    pwl: PwlMap
    value: float
    left: np.ndarray
    right: np.ndarray
    offset: float
    manifold: AffineHyperplane
    transversal: bool
    restricted: ReducedPwlMap | None
    other_shared: tuple[float, ...] = ()

    def deviation(self, x) -> float:
        return float(self.left @ np.asarray(x, dtype=float)) - self.offset

    def deviation_many(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.left - self.offset


def detect_shared_eigenvalue(pwl: PwlMap, tol: float = 1e-9) -> SharedEigReduction | None:
    """Find a simple real eigenvalue common to both pieces and build the reduction.

    Eigenvalues of the two pieces are matched at relative tolerance ``tol``.
    Returns None when nothing matches.  When matches exist but every one of
    them violates a hypothesis (eigenvalue one, multiplicity above one, or
    the right eigenvector orthogonal to the switching normal) raises
    HypothesisViolated naming the failure.  With several usable matches the
    smallest in absolute value wins and the rest are listed in
    ``other_shared``.
    """
    validate_continuity(pwl)
    spec_l = linalg.real_eigen(pwl.A_L, tol)
    spec_r = linalg.real_eigen(pwl.A_R, tol)
    cands = []
    for tr in spec_r.real:
        best = None
        for tl in spec_l.real:
            if abs(tl.value - tr.value) <= tol * (1.0 + abs(tl.value)):
                if best is None or abs(tl.value - tr.value) < abs(best.value - tr.value):
                    best = tl
        if best is not None:
            cands.append((tr, best))
    if not cands:
        return None
    cands.sort(key=lambda pair: (abs(pair[0].value), pair[0].value))
    chosen = None
    first_failure = None
    for tr, tl in cands:
        failure = _hypothesis_failure(pwl, tr, tl, tol)
        if failure is None:
            chosen = (tr, tl)
            break
        if first_failure is None:
            first_failure = (tr.value, failure)
    if chosen is None:
        val, failure = first_failure
        raise HypothesisViolated(f"shared eigenvalue {val:.6g}: {failure}")
    tr, _ = chosen
    lam, u, v = tr.value, tr.left, tr.right
    offset = float(u @ pwl.b) / (1.0 - lam)
    fp = fixed_points(pwl)
    if fp.right.point is not None:
        base = fp.right.point
    else:  # 1 in the right spectrum: any zero of the deviation functional works
        base = u * (offset / float(u @ u))
    manifold = AffineHyperplane.from_normal_point(u, base)
    transversal = _transversal(u, pwl.c, tol)
    restricted = _build_restricted(pwl, u, base) if transversal else None
    others = tuple(t.value for t, _ in cands if t is not tr)
    return SharedEigReduction(
        pwl=pwl,
        value=lam,
        left=u,
        right=v,
        offset=offset,
        manifold=manifold,
        transversal=transversal,
        restricted=restricted,
        other_shared=others,
    )


def _hypothesis_failure(pwl: PwlMap, tr, tl, tol: float) -> str | None:
    if tr.multiplicity > 1 or tl.multiplicity > 1 or not tr.canonical:
        return "algebraic multiplicity exceeds one"
    if abs(1.0 - tr.value) <= tol * (1.0 + abs(tr.value)):
        return "the shared eigenvalue equals one"
    cv = abs(float(pwl.c @ tr.right))
    if cv <= tol * float(np.linalg.norm(pwl.c)) * float(np.linalg.norm(tr.right)):
        return "the right eigenvector is orthogonal to the switching normal"
    return None


def _transversal(u: np.ndarray, c: np.ndarray, tol: float) -> bool:
    rej = u - c * (float(u @ c) / float(c @ c))
    return float(np.linalg.norm(rej)) > tol * float(np.linalg.norm(u))


def _build_restricted(pwl: PwlMap, u: np.ndarray, base: np.ndarray) -> ReducedPwlMap:
    B = linalg.hyperplane_basis(u)
    chart = Chart(base=np.array(base, dtype=float), basis=B)
    m_l = B.T @ pwl.A_L @ B
    d_l = B.T @ (pwl.A_L @ base + pwl.b - base)
    m_r = B.T @ pwl.A_R @ B
    d_r = B.T @ (pwl.A_R @ base + pwl.b - base)
    return ReducedPwlMap(
        matrix_left=m_l,
        offset_left=d_l,
        matrix_right=m_r,
        offset_right=d_r,
        switch_normal=B.T @ pwl.c,
        switch_offset=float(pwl.c @ base),
        chart=chart,
    )


def restrict_to_manifold(red: SharedEigReduction) -> ReducedPwlMap:
    """Chart-coordinate restriction of the map to the invariant plane."""
    if not red.transversal:
        raise NonTransversal(
            "the invariant-plane normal is parallel to the switching normal; "
            "the two pieces then share every eigenvalue and the plane never "
            "crosses the switching boundary transversally"
        )
    if red.restricted is not None:
        return red.restricted
    return _build_restricted(red.pwl, red.left, red.manifold.base_point)


def reduced_orbit(
    rmap: ReducedPwlMap,
    xi0,
    n_transient: int = 1000,
    n_keep: int = 3000,
    escape_radius: float = ESCAPE_RADIUS,
) -> OrbitData:
    """Orbit of a restricted map in chart coordinates, same contract as ``orbit``."""
    if n_transient < 0 or n_keep < 1 or not escape_radius > 0.0:
        raise ValueError("invalid orbit settings")
    xi = np.asarray(xi0, dtype=float).copy()
    d = rmap.dimension
    if xi.shape != (d,):
        raise ValueError(f"xi0 must be a vector of length {d}")
    pts = np.empty((n_keep, d))
    its = np.empty(n_keep, dtype="<U1")
    kept = 0
    escaped = False
    escape_index = None
    for k in range(n_transient + n_keep):
        r = float(np.linalg.norm(xi))
        if r > escape_radius:
            escaped = True
            escape_index = k
            break
        if not np.isfinite(r):
            raise NonFinite(f"reduced orbit iterate {k} is not finite")
        sym = rmap.side(xi)
        if k >= n_transient:
            pts[kept] = xi
            its[kept] = sym
            kept += 1
        if sym == LEFT:
            xi = rmap.matrix_left @ xi + rmap.offset_left
        else:
            xi = rmap.matrix_right @ xi + rmap.offset_right
    discarded = n_transient if not escaped else min(n_transient, escape_index)
    return OrbitData(pts[:kept].copy(), its[:kept].copy(), discarded, escaped, escape_index)


# ---------------------------------------------------------------------------
# zero eigenvalue


def zero_eig_reduction(pwl: PwlMap, tol: float = 1e-9) -> AffineHyperplane:
    """Hyperplane carrying the range of the left piece.

    Requires the left matrix to be singular with a simple zero eigenvalue and
    1 outside its spectrum.  The returned plane passes through the left
    piece's fixed point with the left null vector as normal; every point of
    the left half-space maps onto it in one step.
    """
    det_l = linalg.determinant(pwl.A_L)
    if abs(det_l) > tol:
        raise NotSingular(f"det A_L = {det_l:.3e} exceeds the tolerance {tol:.1e}")
    spec_l = linalg.real_eigen(pwl.A_L, tol)
    zeros = [t for t in spec_l.real if abs(t.value) <= tol]
    if not zeros:
        raise NotSingular("no real eigenvalue of A_L within tolerance of zero")
    if len(zeros) > 1 or zeros[0].multiplicity > 1:
        raise MultipleZero("zero is an eigenvalue of A_L with multiplicity above one")
    w = zeros[0].left
    try:
        y = linalg.solve(np.eye(pwl.n) - pwl.A_L, pwl.b)
    except SingularMatrix as exc:
        raise NoFixedPoint("1 is an eigenvalue of A_L, the left piece has no fixed point") from exc
    plane = AffineHyperplane.from_normal_point(w, y)
    # planarity of the range: w A_L ~ 0 and w . (b - y) ~ 0
    r1 = float(np.linalg.norm(plane.normal @ pwl.A_L)) / (1.0 + float(np.linalg.norm(pwl.A_L)))
    r2 = abs(float(plane.normal @ pwl.b) - plane.offset) / (1.0 + float(np.linalg.norm(pwl.b)))
    if max(r1, r2) > 1e3 * tol:
        raise IllConditioned("the range of the left piece is not planar within tolerance")
    return plane


@dataclass(frozen=True)
class InducedMapResult:
    image: np.ndarray
    return_time: int
    itinerary: tuple[str, ...]


def induced_map(
    pwl: PwlMap,
    plane: AffineHyperplane,
    x,
    j_max: int = J_MAX,
    escape_radius: float = ESCAPE_RADIUS,
    membership_tol: float = MEMBERSHIP_TOL,
    absorb_side: str | None = LEFT,
) -> InducedMapResult:
    """First return to ``plane`` of the orbit starting at ``x`` (on the plane).

    A step taken with the ``absorb_side`` piece lands on the plane by
    construction when the plane is that piece's range, so such steps return
    immediately without a tolerance test; any other step returns when the
    membership test ``|normal . y - offset| <= tol (1 + |y|)`` passes.  Pass
    ``absorb_side=None`` to rely on the tolerance test alone.
    """
    y = np.asarray(x, dtype=float).copy()
    if not plane.contains(y, membership_tol):
        raise ValueError("start point is not on the section")
    syms: list[str] = []
    for j in range(1, j_max + 1):
        sym = pwl.side(y)
        syms.append(sym)
        y = pwl(y)
        r = float(np.linalg.norm(y))
        if r > escape_radius:
            raise Escaped(f"excursion left |x| <= {escape_radius:g} after {j} steps")
        if not np.isfinite(r):
            raise NonFinite(f"excursion iterate {j} is not finite")
        if (absorb_side is not None and sym == absorb_side) or plane.contains(y, membership_tol):
            return InducedMapResult(image=y, return_time=j, itinerary=tuple(syms))
    raise NoReturn(f"no return to the section within {j_max} iterations")


@dataclass(frozen=True)
class InducedSample:
    point: np.ndarray
    image: np.ndarray | None
    return_time: int | None
    itinerary: tuple[str, ...] | None
    status: str  # "ok" | "no_return" | "escaped" | "non_finite"


def sample_induced(
    pwl: PwlMap,
    plane: AffineHyperplane,
    grid,
    chart: Chart | None = None,
    j_max: int = J_MAX,
    escape_radius: float = ESCAPE_RADIUS,
    membership_tol: float = MEMBERSHIP_TOL,
) -> list[InducedSample]:
    """Evaluate the induced return map on chart-coordinate grid points.

    Failures are recorded per sample instead of aborting the sweep.
    """
    if chart is None:
        chart = plane_chart(plane)
    pts = np.asarray(grid, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != pwl.n - 1:
        raise ValueError(f"grid points must have {pwl.n - 1} chart coordinates")
    out: list[InducedSample] = []
    for xi in pts:
        x = chart.lift(xi)
        try:
            res = induced_map(pwl, plane, x, j_max, escape_radius, membership_tol)
        except NoReturn:
            out.append(InducedSample(xi.copy(), None, None, None, "no_return"))
        except Escaped:
            out.append(InducedSample(xi.copy(), None, None, None, "escaped"))
        except NonFinite:
            out.append(InducedSample(xi.copy(), None, None, None, "non_finite"))
        else:
            out.append(
                InducedSample(
                    point=xi.copy(),
                    image=chart.project(res.image),
                    return_time=res.return_time,
                    itinerary=res.itinerary,
                    status="ok",
                )
            )
    return out


# ---------------------------------------------------------------------------
# unit-modulus classification


RESONANT_ANGLES = (2.0 * np.pi / 3.0, np.pi / 2.0)


@dataclass(frozen=True)
class UnitModulusReport:
    """One eigenvalue of one piece sitting on the unit circle.

    ``kind`` is "SN" for an eigenvalue at +1, "PD" for -1 and "NS" for a
    complex pair; for "NS" the rotation angle ``theta`` lies in (0, pi) and
    ``resonant`` marks angles at which the standard invariant-curve picture
    breaks down (2 pi / 3 and pi / 2).
    """

    side: str
    kind: str
    value: float | None
    theta: float | None
    resonant: bool


def classify_unit_modulus(pwl: PwlMap, tol: float = 1e-9) -> list[UnitModulusReport]:
    """Report every eigenvalue of either piece within ``tol`` of modulus one."""
    out: list[UnitModulusReport] = []
    for side, A in ((LEFT, pwl.A_L), (RIGHT, pwl.A_R)):
        spec = linalg.real_eigen(A, tol)
        for t in spec.real:
            if abs(abs(t.value) - 1.0) <= tol:
                kind = "SN" if t.value > 0.0 else "PD"
                out.append(UnitModulusReport(side, kind, value=t.value, theta=None, resonant=False))
        for pr in spec.complex_pairs:
            if abs(pr.modulus - 1.0) <= tol:
                theta = float(np.arctan2(pr.imag, pr.real))
                resonant = any(abs(theta - ang) <= tol for ang in RESONANT_ANGLES)
                out.append(UnitModulusReport(side, "NS", value=None, theta=theta, resonant=resonant))
    return out
