"""Finite-difference Riemannian calculus on a chart.

Derivatives of the metric use central differences with step H1; the outer
derivatives of the Christoffel symbols in the curvature use H2 scaled by
the chart's characteristic length.  Geodesics integrate with fixed-step
RK4.  Everything is batched over points so the probes can drive tens of
thousands of rays through numpy at once.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import LeftDomain, OutOfDomain, SingularMetric
from .charts import MetricChart

H1 = 1e-5
H2 = 1e-3


def metric_jet(chart: MetricChart, points: np.ndarray, h: float = H1):
    """Metric and its first derivatives: g (N,d,d) and dg (N,d,d,d) with
    dg[:, a, i, j] = d g_ij / d x_a.  One batched metric call evaluates the
    whole stencil."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = pts.shape
    stencil = [pts]
    for a in range(d):
        step = np.zeros(d)
        step[a] = h
        stencil.append(pts + step)
        stencil.append(pts - step)
    g_all = chart.metric(np.concatenate(stencil, axis=0))
    g = g_all[:n]
    dg = np.empty((n, d, d, d))
    for a in range(d):
        plus = g_all[(1 + 2 * a) * n:(2 + 2 * a) * n]
        minus = g_all[(2 + 2 * a) * n:(3 + 2 * a) * n]
        dg[:, a] = (plus - minus) / (2.0 * h)
    return g, dg


def christoffel_many(chart: MetricChart, points: np.ndarray,
                     h: float = H1) -> np.ndarray:
    """Gamma[:, k, i, j] = Gamma^k_ij at each point."""
    g, dg = metric_jet(chart, points, h)
    # dg[:, a, i, j] = d_a g_ij; lower symbol: (d_i g_jl + d_j g_il - d_l g_ij)/2
    lower = 0.5 * (np.einsum("nijl->nlij", dg)
                   + np.einsum("njil->nlij", dg)
                   - dg)
    return np.einsum("nkl,nlij->nkij", np.linalg.inv(g), lower)


def christoffel(chart: MetricChart, p, h: float = H1) -> np.ndarray:
    """Christoffel symbols at a single point, shape (d, d, d)."""
    return christoffel_many(chart, [p], h)[0]


@dataclass(frozen=True)
class CurvatureData:
    """Curvature tensors at one or more points.

    `riem_up[:, m, c, a, b]` holds the components of R(e_a, e_b) e_c along
    e_m; `riemann` is the fully lowered (0,4) tensor with the same index
    order; `ricci[:, x, y] = sum_m riem_up[:, m, y, m, x]`; `scalar` is the
    g-trace of ricci."""

    riem_up: np.ndarray
    riemann: np.ndarray
    ricci: np.ndarray
    scalar: np.ndarray


def curvature_many(chart: MetricChart, points: np.ndarray,
                   h2: float | None = None, h1: float = H1) -> CurvatureData:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    n, d = pts.shape
    if h2 is None:
        h2 = H2 * chart.scale
    # Christoffels on the outer stencil in one batch
    stencil = [pts]
    for a in range(d):
        step = np.zeros(d)
        step[a] = h2
        stencil.append(pts + step)
        stencil.append(pts - step)
    gam_all = christoffel_many(chart, np.concatenate(stencil, axis=0), h1)
    gam = gam_all[:n]
    dgam = np.empty((n, d, d, d, d))
    for a in range(d):
        plus = gam_all[(1 + 2 * a) * n:(2 + 2 * a) * n]
        minus = gam_all[(2 + 2 * a) * n:(3 + 2 * a) * n]
        dgam[:, a] = (plus - minus) / (2.0 * h2)
    # R^m_{c a b} = d_a Gamma^m_bc - d_b Gamma^m_ac
    #              + Gamma^l_bc Gamma^m_al - Gamma^l_ac Gamma^m_bl
    riem_up = (np.einsum("nambc->nmcab", dgam)
               - np.einsum("nbmac->nmcab", dgam)
               + np.einsum("nlbc,nmal->nmcab", gam, gam)
               - np.einsum("nlac,nmbl->nmcab", gam, gam))
    g = chart.metric(pts)
    riemann = np.einsum("ndm,nmcab->ndcab", g, riem_up)
    ricci = np.einsum("nmcmb->nbc", riem_up)
    scalar = np.einsum("nxy,nxy->n", np.linalg.inv(g), ricci)
    return CurvatureData(riem_up, riemann, ricci, scalar)


def curvature_at(chart: MetricChart, p, h2: float | None = None,
                 h1: float = H1) -> CurvatureData:
    """Curvature at a single point (leading batch axis dropped)."""
    data = curvature_many(chart, [p], h2, h1)
    return CurvatureData(data.riem_up[0], data.riemann[0], data.ricci[0],
                         float(data.scalar[0]))


# ------------------------------------------------------------------ geodesics

@dataclass(frozen=True)
class GeodesicState:
    """Position and velocity in chart coordinates."""

    position: np.ndarray
    velocity: np.ndarray


@dataclass(frozen=True)
class ShootResult:
    state: GeodesicState
    speed_drift: float
    steps: int
    h: float


def g_norms(chart: MetricChart, points, vectors) -> np.ndarray:
    g = chart.metric(points)
    return np.sqrt(np.einsum("nij,ni,nj->n", g,
                             np.atleast_2d(vectors), np.atleast_2d(vectors)))


def _geodesic_rhs(chart, x, v, h1):
    """x' = v, v' = -Gamma(v, v) without forming the symbols: with
    P_l = v^i v^j d_i g_jl and Q_l = v^i v^j d_l g_ij the geodesic equation
    reads g v' = -(P - Q/2)."""
    g, dg = metric_jet(chart, x, h1)
    vv = v[:, :, None] * v[:, None, :]
    p = np.einsum("nijl,nij->nl", dg, vv)
    q = np.einsum("nlij,nij->nl", dg, vv)
    acc = -np.linalg.solve(g, (p - 0.5 * q)[..., None])[..., 0]
    return v, acc


def geodesic_shoot_many(chart: MetricChart, x0, v0, length: float,
                        h: float, h1: float = H1, record: bool = False):
    """Integrate x'' = -Gamma(x', x') with fixed-step RK4, batched over rays.

    Returns (x, v) arrays, or with record=True the full trajectory arrays
    of shape (steps+1, N, d)."""
    x = np.atleast_2d(np.asarray(x0, dtype=float)).copy()
    v = np.atleast_2d(np.asarray(v0, dtype=float)).copy()
    steps = max(1, int(round(length / h)))
    dt = length / steps
    xs = [x.copy()] if record else None
    vs = [v.copy()] if record else None
    try:
        for _ in range(steps):
            k1x, k1v = _geodesic_rhs(chart, x, v, h1)
            k2x, k2v = _geodesic_rhs(chart, x + 0.5 * dt * k1x,
                                     v + 0.5 * dt * k1v, h1)
            k3x, k3v = _geodesic_rhs(chart, x + 0.5 * dt * k2x,
                                     v + 0.5 * dt * k2v, h1)
            k4x, k4v = _geodesic_rhs(chart, x + dt * k3x, v + dt * k3v, h1)
            x = x + (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            v = v + (dt / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            if record:
                xs.append(x.copy())
                vs.append(v.copy())
    except OutOfDomain as exc:
        raise LeftDomain(f"geodesic left the domain of {chart.name}",
                         exit_point=exc.point) from exc
    if record:
        return np.stack(xs), np.stack(vs)
    return x, v


def geodesic_shoot(chart: MetricChart, state: GeodesicState, length: float,
                   h: float | None = None) -> ShootResult:
    """Shoot one geodesic; reports the relative g-speed drift."""
    if h is None:
        h = length / 256.0
    x0 = np.atleast_2d(np.asarray(state.position, dtype=float))
    v0 = np.atleast_2d(np.asarray(state.velocity, dtype=float))
    speed0 = g_norms(chart, x0, v0)[0]
    x, v = geodesic_shoot_many(chart, x0, v0, length, h)
    speed1 = g_norms(chart, x, v)[0]
    drift = abs(speed1 - speed0) / max(speed0, 1e-300)
    steps = max(1, int(round(length / h)))
    return ShootResult(GeodesicState(x[0], v[0]), drift, steps, h)


# ---------------------------------------------------------------- w1 frames

def frame_gram_det(chart: MetricChart, p) -> float:
    """Gram-Schmidt the coordinate frame against g at p and return the
    determinant of the resulting Gram matrix (1 for an exact orthonormal
    frame)."""
    g = chart.metric([p])[0]
    d = chart.dim
    frame = np.eye(d)
    for k in range(d):
        v = frame[:, k].copy()
        for j in range(k):
            v -= (v @ g @ frame[:, j]) * frame[:, j]
        norm2 = v @ g @ v
        if not np.isfinite(norm2) or norm2 <= 0:
            raise SingularMetric(f"{chart.name}: frame collapsed at {p}")
        frame[:, k] = v / np.sqrt(norm2)
    return float(np.linalg.det(frame.T @ g @ frame))


def frame_det_w1(chart: MetricChart, p) -> int:
    """The determinant cochain value: det of the orthonormalized Gram
    matrix, asserted to be 1 within 1e-10, reduced mod 2."""
    det = frame_gram_det(chart, p)
    if abs(det - 1.0) > 1e-10:
        raise SingularMetric(
            f"{chart.name}: Gram determinant {det} drifted from 1 at {p}")
    return round(det) % 2


# ------------------------------------------------------------ Gauss equation

def restricted_chart(chart3: MetricChart) -> MetricChart:
    """The induced chart on the plane x3 = 0 of a 3-dimensional chart.

    Valid when the plane is totally geodesic and g(e_i, e_3) = 0 on it,
    which holds for all built-in generic charts by reflection symmetry."""
    def metric_fn(pts2):
        pts3 = np.concatenate([pts2, np.zeros((len(pts2), 1))], axis=1)
        return chart3.metric(pts3)[:, :2, :2]

    def domain_fn(pts2):
        pts3 = np.concatenate([pts2, np.zeros((len(pts2), 1))], axis=1)
        return chart3.contains(pts3)

    return MetricChart(chart3.name + "|x3=0", 2, metric_fn, domain_fn,
                       scale=chart3.scale)


def gauss_equation_check(model, p, x=None, y=None,
                         h2: float | None = None) -> float:
    """Residual of the Gauss equation relating intrinsic and extrinsic
    Ricci tensors on the totally geodesic plane x3 = 0:

        r_sub(X, Y) = r_amb(X, Y) - g(R(v, X) Y, v)

    for the unit normal v.  X, Y are tangent 2-vectors (default: the
    residual is maximized over the coordinate pairs)."""
    chart3 = model.chart("generic")
    if chart3.dim != 3:
        raise OutOfDomain(f"{model.name}: Gauss equation check needs a "
                          "3-dimensional model")
    sub = restricted_chart(chart3)
    p2 = np.asarray(p, dtype=float).reshape(2)
    p3 = np.array([p2[0], p2[1], 0.0])

    g3 = chart3.metric([p3])[0]
    if abs(g3[0, 2]) > 1e-12 or abs(g3[1, 2]) > 1e-12:
        raise OutOfDomain(f"{model.name}: normal direction not orthogonal "
                          f"at {p3}; plane is not a metric slice")
    normal = np.array([0.0, 0.0, 1.0]) / np.sqrt(g3[2, 2])

    amb = curvature_at(chart3, p3, h2)
    intr = curvature_at(sub, p2, h2)

    pairs = ([(np.asarray(x, dtype=float), np.asarray(y, dtype=float))]
             if x is not None and y is not None
             else [(np.eye(2)[i], np.eye(2)[j])
                   for i in range(2) for j in range(2)])
    residual = 0.0
    for xv, yv in pairs:
        x3 = np.array([xv[0], xv[1], 0.0])
        y3 = np.array([yv[0], yv[1], 0.0])
        lhs = xv @ intr.ricci @ yv
        # ricci[b, c] pairs X with the b slot and Y with the c slot
        amb_term = x3 @ amb.ricci @ y3
        # g(R(v, X) Y, v) = R_low[d, c, a, b] v^d Y^c v^a X^b
        extr = np.einsum("dcab,d,c,a,b->", amb.riemann, normal, y3,
                         normal, x3)
        residual = max(residual, abs(lhs - (amb_term - extr)))
    return residual
