"""Closed-form solution machinery for normalized data.

Along each characteristic the quantities z = u_x +- rho obey the scalar
Riccati equation dz/dt = -z^2/2 - 2c, solved by z = 2 w'(t)/w(t) where
w'' = -c w, w(0) = 1, w'(0) = z0/2.  The Jacobian of the flow map
factorizes over the two branches, phi_x = w_p w_q with initial slopes
p0 = u0x + rho0 and q0 = u0x - rho0, which reduces breakdown detection
to root-finding for a scalar factor per node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

from .data import InitialData, normalized_class
from .errors import BlowupReached, NotInvertible, Singular
from .grid import Grid, GridFunction, antiderivative_from_zero, derivative, integrate

SINGULAR_TOL = 1e-12
INVERT_TOL = 1e-8
NEWTON_SLOPE = 1e-3


def riccati(z0, c: int, t: float):
    """Characteristic slope at time t, by the closed form for c in {1, 0, -1}.

    Accepts scalar or array z0; raises Singular when the denominator
    vanishes (finite-time blow-up of the slope).
    """
    z0 = np.asarray(z0, dtype=float)
    if c == 1:
        # rational in tan t, written over sin/cos so no spurious poles
        num = 2.0 * z0 * np.cos(t) - 4.0 * np.sin(t)
        den = z0 * np.sin(t) + 2.0 * np.cos(t)
    elif c == 0:
        num = 2.0 * z0
        den = 2.0 + z0 * t
    elif c == -1:
        e2t = math.exp(2.0 * t)
        num = 2.0 * (z0 - 2.0 + e2t * (2.0 + z0))
        den = 2.0 - z0 + e2t * (2.0 + z0)
    else:
        raise ValueError(f"c must be one of 1, 0, -1, got {c}")
    if np.any(np.abs(den) < SINGULAR_TOL):
        raise Singular(f"slope denominator vanished at t = {t}")
    out = num / den
    return float(out) if out.ndim == 0 else out


def factor(z0, c: int, t):
    """Characteristic factor w and its time derivative.

    For c = -1 the factor is evaluated in exponential form,
    w = ((z0+2) e^t + (2-z0) e^-t)/4, which avoids the catastrophic
    cancellation of cosh t + (z0/2) sinh t at large t. t may be a
    scalar or an array broadcastable against z0.
    """
    z0 = np.asarray(z0, dtype=float)
    if c == 1:
        w = np.cos(t) + 0.5 * z0 * np.sin(t)
        wt = -np.sin(t) + 0.5 * z0 * np.cos(t)
    elif c == 0:
        w = 1.0 + 0.5 * z0 * t
        wt = 0.5 * z0 * np.ones_like(w)
    elif c == -1:
        ep = np.exp(t)
        a, b = (z0 + 2.0) * ep, (2.0 - z0) / ep
        w = 0.25 * (a + b)
        wt = 0.25 * (a - b)
    else:
        raise ValueError(f"c must be one of 1, 0, -1, got {c}")
    return w, wt


BORDER_TOL = 1e-12


def factor_root_times(z0, c: int) -> np.ndarray:
    """First positive zero of the characteristic factor, +inf where none.

    Slopes within BORDER_TOL of the breakdown threshold are treated as
    borderline (no root): presets sitting exactly on the global-existence
    boundary would otherwise report spurious huge root times from
    rounding noise in the sampled slopes.
    """
    z0 = np.asarray(z0, dtype=float)
    out = np.full(z0.shape, np.inf)
    if c == 1:
        out = np.pi / 2.0 + np.arctan(0.5 * z0)
    elif c == 0:
        neg = z0 < -BORDER_TOL
        out[neg] = -2.0 / z0[neg]
    elif c == -1:
        past = z0 < -2.0 - BORDER_TOL
        out[past] = 0.5 * np.log((z0[past] - 2.0) / (z0[past] + 2.0))
    else:
        raise ValueError(f"c must be one of 1, 0, -1, got {c}")
    return out


def _branch_slopes(d: InitialData) -> tuple[np.ndarray, np.ndarray]:
    u0x = d.u0x.values
    r0 = d.rho0.values
    return u0x + r0, u0x - r0


def blowup_time(d: InitialData) -> float:
    """First time the flow map loses injectivity (min phi_x hits zero).

    Computed as the earliest factor root over both characteristic
    branches and all nodes; +inf when no factor ever vanishes.
    """
    c = normalized_class(d)
    p0, q0 = _branch_slopes(d)
    roots = np.minimum(factor_root_times(p0, c), factor_root_times(q0, c))
    return float(roots.min())


def singular_time_literal(d: InitialData) -> float:
    """Literal transcription of the breakdown-time formula, for comparison.

    This takes the infimum of the branch slopes *inside* the outer
    concave map. For c = -1 that map (arccoth) is decreasing, so the
    expression picks the last per-node root rather than the first and
    can disagree with blowup_time; both are reported by the CLI.
    """
    c = normalized_class(d)
    p0, q0 = _branch_slopes(d)
    vals = []
    if c == 1:
        for z0 in (p0, q0):
            vals.append(np.pi / 2.0 + math.atan(0.5 * float(z0.min())))
    elif c == 0:
        for z0 in (p0, q0):
            neg = z0[z0 < -BORDER_TOL]
            if neg.size:
                vals.append(float((-2.0 / neg).min()))
    else:
        for z0 in (p0, q0):
            y = -0.5 * z0[z0 < -2.0 - BORDER_TOL]  # y > 1 on the breaking set
            if y.size:
                ymin = float(y.min())
                vals.append(0.5 * math.log((ymin + 1.0) / (ymin - 1.0)))
    return min(vals) if vals else math.inf


def blowup_time_bisect(d: InitialData, t_max: float = 20.0, step: float = 1e-3) -> float:
    """Breakdown time located by scan and bisection, +inf if none found.

    Scans each characteristic factor separately for a sign change and
    refines the earliest bracket by bisection. Factor roots are always
    simple (the factor solves a linear second-order equation with unit
    initial value), so this detects breakdown even where the two
    branches coincide and min phi_x only touches zero. Independent of
    the closed-form root expressions used by blowup_time. Slopes within
    BORDER_TOL of the breakdown threshold are dropped, same as there.
    """
    c = normalized_class(d)
    p0, q0 = _branch_slopes(d)
    z = np.concatenate([p0, q0])
    if c == 0:
        z = z[z < -BORDER_TOL]
    elif c == -1:
        z = z[z < -2.0 - BORDER_TOL]
    if z.size == 0:
        return math.inf
    t = 0.0
    w_prev = factor(z, c, 0.0)[0]
    while t < t_max:
        t2 = min(t + step, t_max)
        w2 = factor(z, c, t2)[0]
        hit = (w_prev > 0.0) & (w2 <= 0.0)
        if hit.any():
            zz = z[hit]
            lo = np.full(zz.shape, t)
            hi = np.full(zz.shape, t2)
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                neg = factor(zz, c, mid)[0] <= 0.0
                hi = np.where(neg, mid, hi)
                lo = np.where(neg, lo, mid)
            return float(hi.min())
        w_prev = w2
        t = t2
    return math.inf


def is_global(d: InitialData) -> bool:
    """Whether the normalized flow exists for all time.

    Only the c = -1 class admits global solutions; the criterion is the
    pointwise bound |rho0| <= u0x + 2 (both branch slopes stay >= -2).
    """
    if normalized_class(d) != -1:
        return False
    u0x = d.u0x.values
    return bool(np.all(np.abs(d.rho0.values) <= u0x + 2.0 + 1e-12))


@dataclass(frozen=True)
class LagrangianFields:
    """Solution snapshot in label coordinates.

    ux and rho are the Eulerian velocity gradient and density evaluated
    along the flow map; phi is the flow map itself (phi(0) = 0, and
    phi - x is periodic).
    """

    t: float
    ux: GridFunction
    rho: GridFunction
    phi: GridFunction
    phi_x: GridFunction


def _require_before_blowup(d: InitialData, t: float) -> int:
    c = normalized_class(d)
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    tstar = blowup_time(d)
    if t >= tstar:
        raise BlowupReached(f"t = {t} is not below the breakdown time {tstar:.6g}")
    return c

def lagrangian_fields(d: InitialData, t: float) -> LagrangianFields:
    """Closed-form solution along the flow at time t (normalized data)."""
    c = _require_before_blowup(d, t)
    u0x = d.u0x.values
    r0 = d.rho0.values
    if c == -1:
        den = (2.0 * math.cosh(t) + u0x * math.sinh(t)) ** 2 - r0**2 * math.sinh(t) ** 2
        ux = (4.0 * math.cosh(2 * t) * u0x + math.sinh(2 * t) * (u0x**2 - r0**2 + 4.0)) / den
    elif c == 0:
        den = (2.0 + u0x * t) ** 2 - r0**2 * t**2
        ux = (4.0 * u0x + 2.0 * t * (u0x**2 - r0**2)) / den
    else:
        den = (u0x * math.sin(t) + 2.0 * math.cos(t)) ** 2 - r0**2 * math.sin(t) ** 2
        ux = (4.0 * math.cos(2 * t) * u0x + math.sin(2 * t) * (u0x**2 - r0**2 - 4.0)) / den
    rho = 4.0 * r0 / den
    grid = d.grid
    p0, q0 = _branch_slopes(d)
    wp, _ = factor(p0, c, t)
    wq, _ = factor(q0, c, t)
    phi_x = GridFunction(grid, wp * wq)
    phi = antiderivative_from_zero(phi_x)
    return LagrangianFields(t, GridFunction(grid, ux), GridFunction(grid, rho), phi, phi_x)


def flow_velocity(d: InitialData, t: float) -> tuple[GridFunction, GridFunction]:
    """Flow map and its time derivative (velocity along the labels)."""
    c = _require_before_blowup(d, t)
    p0, q0 = _branch_slopes(d)
    wp, wtp = factor(p0, c, t)
    wq, wtq = factor(q0, c, t)
    phi = antiderivative_from_zero(GridFunction(d.grid, wp * wq))
    phi_t = antiderivative_from_zero(GridFunction(d.grid, wtp * wq + wp * wtq))
    return phi, phi_t


def compose_with_inverse(phi: np.ndarray, samples: np.ndarray, grid: Grid, wrap: int = 8) -> np.ndarray:
    """Samples of s(phi^{-1}(y)) at the grid nodes.

    phi must be nondecreasing with phi(0) = 0 and unit winding
    (phi(x+1) = phi(x) + 1); samples are the values of s at the same
    label nodes. Where the map is uniformly nondegenerate the inverse
    labels are found by Newton iteration on the trigonometric
    interpolant of phi - x, so smooth band-limited inputs compose with
    spectral accuracy. Otherwise (small or vanishing phi_x, or a map
    too rough for the iteration to converge) monotone cubic
    interpolation of the extended graph is used instead; it keeps the
    composition monotone where s is, and plateau nodes (degenerate
    phi_x) are dropped so the abscissae stay strictly increasing.
    """
    bump = GridFunction(grid, phi - grid.x)
    slope = GridFunction(grid, 1.0 + derivative(bump).values)
    if slope.values.min() >= NEWTON_SLOPE:
        xi = grid.x.copy()
        for _ in range(50):
            res = xi + bump.eval_at(xi) - grid.x
            if np.abs(res).max() < 1e-13:
                break
            xi = xi - res / slope.eval_at(xi)
        if np.abs(res).max() < 1e-10:
            return GridFunction(grid, samples).eval_at(xi)
    xs = np.concatenate([phi[-wrap:] - 1.0, phi, phi[:wrap] + 1.0])
    ys = np.concatenate([samples[-wrap:], samples, samples[:wrap]])
    keep = np.concatenate([[True], np.diff(xs) > 1e-13])
    return PchipInterpolator(xs[keep], ys[keep])(grid.x)


def eulerian_solution(d: InitialData, t: float) -> tuple[GridFunction, GridFunction]:
    """(u, rho) on the fixed spatial grid, by inverting the flow map."""
    lf = lagrangian_fields(d, t)
    if lf.phi_x.min() < INVERT_TOL:
        raise NotInvertible(f"min phi_x = {lf.phi_x.min():.3e} below {INVERT_TOL:.0e} at t = {t}")
    _, phi_t = flow_velocity(d, t)
    grid = d.grid
    u = compose_with_inverse(lf.phi.values, phi_t.values, grid)
    rho = compose_with_inverse(lf.phi.values, lf.rho.values, grid)
    u[0] = 0.0  # phi(0) = 0 and phi_t(0) = 0 pin the value exactly
    return GridFunction(grid, u), GridFunction(grid, rho)


def flow_map_positive_kappa(d: InitialData, t: float):
    """Flow map for the kappa = +1 coupling, normalized to c = 1.

    phi_x = (cos t + (u0x/2) sin t)^2 + (rho0^2/4) sin^2 t; the Jacobian
    never factorizes here, but for c = 1 it stays positive and the map
    is global. Returns (phi, phi_t, phi_x).
    """
    if d.kappa != 1:
        raise ValueError("this flow map is the kappa = +1 branch")
    c = 0.25 * integrate(d.u0x * d.u0x + d.rho0 * d.rho0)
    if abs(c - 1.0) > 1e-9:
        raise ValueError(f"data is not normalized (c = {c:.6g}); call normalize() first")
    u0x = d.u0x.values
    r0 = d.rho0.values
    a = np.cos(t) + 0.5 * u0x * np.sin(t)
    at = -np.sin(t) + 0.5 * u0x * np.cos(t)
    phi_x = a**2 + 0.25 * r0**2 * np.sin(t) ** 2
    phi_xt = 2.0 * a * at + 0.5 * r0**2 * np.sin(t) * np.cos(t)
    grid = d.grid
    phi = antiderivative_from_zero(GridFunction(grid, phi_x))
    phi_t = antiderivative_from_zero(GridFunction(grid, phi_xt))
    return phi, phi_t, GridFunction(grid, phi_x)


def blowup_time_positive_kappa(d: InitialData) -> float:
    """First degeneracy of the kappa = +1 flow map, +inf if none.

    phi_x = (cos t + (u0x/2) sin t)^2 + (rho0^2/4) sin^2 t only vanishes
    at nodes where the density is zero, through the root of the cosine
    factor; everywhere else the density term keeps the Jacobian
    positive.
    """
    if d.kappa != 1:
        raise ValueError("this breakdown time is the kappa = +1 branch")
    u0x = d.u0x.values
    bare = np.abs(d.rho0.values) <= BORDER_TOL
    if not bare.any():
        return math.inf
    return float(factor_root_times(u0x[bare], 1).min())


def eulerian_positive_kappa(d: InitialData, t: float) -> tuple[GridFunction, GridFunction]:
    """(u, rho) for kappa = +1 via the flow map and mass transport.

    The continuity equation gives rho along the flow as rho0/phi_x
    regardless of the coupling sign.
    """
    phi, phi_t, phi_x = flow_map_positive_kappa(d, t)
    grid = d.grid
    u = compose_with_inverse(phi.values, phi_t.values, grid)
    u[0] = 0.0
    rho = compose_with_inverse(phi.values, d.rho0.values / phi_x.values, grid)
    return GridFunction(grid, u), GridFunction(grid, rho)
