"""Global weak flow for the timelike class and its conservative solutions.

On the admissible set (unit negative energy constant, slopes bounded
below by the breakdown threshold) the flow map degenerates at isolated
points but never folds, and the closed-form factor fields continue it
past every classical breakdown. Pushing the Lagrangian velocity through
the flow map then yields density-velocity pairs that solve the system
weakly for all time while conserving the indefinite energy.
"""

import math
from dataclasses import dataclass

import numpy as np

from .data import InitialData, casimir
from .engine import blowup_time, compose_with_inverse, lagrangian_fields
from .errors import BlowupReached, NotAdmissible
from .geometry import TangentPair, christoffel
from .grid import (
    GridFunction,
    antiderivative_from_zero,
    derivative,
    integrate,
)
from .sphere import GroupElement

CASIMIR_TOL = 1e-9
SLOPE_TOL = 1e-12
DEGENERATE_NODE_TOL = 1e-14


@dataclass(frozen=True)
class AdmissibilityReport:
    """Node-wise admissibility diagnosis for the global weak flow."""

    c_value: float
    condition_A: bool
    condition_B: bool
    violating_nodes: list

    @property
    def admissible(self) -> bool:
        return self.condition_A and self.condition_B


def admissibility(d: InitialData) -> AdmissibilityReport:
    """Check the two hypotheses of the global flow.

    (A) the energy constant equals -1; (B) |rho0| <= u0x + 2 node-wise,
    with a 1e-12 tolerance so data sitting exactly on the breakdown
    threshold is accepted.
    """
    c = casimir(d)
    cond_a = abs(c + 1.0) <= CASIMIR_TOL
    slack = d.u0x.values + 2.0 - np.abs(d.rho0.values)
    bad = np.nonzero(slack < -SLOPE_TOL)[0]
    return AdmissibilityReport(c, cond_a, bad.size == 0, bad.tolist())


@dataclass(frozen=True)
class WeakState:
    """Flow-map snapshot (phi, alpha) with its factor fields and rates.

    f1 and f2 are the two components of the geodesic on the
    pseudosphere; phi_x = f1^2 - f2^2 is the flow-map derivative,
    stored explicitly because the invariants and the energy quadrature
    live on it.
    """

    t: float
    f1: GridFunction
    f2: GridFunction
    phi: GridFunction
    alpha: GridFunction
    phi_t: GridFunction
    alpha_t: GridFunction
    phi_x: GridFunction

    def __post_init__(self):
        if abs(self.phi.values[0]) > 1e-9:
            raise ValueError("phi(0) must vanish")
        if abs(integrate(self.phi_x) - 1.0) > 1e-9:
            raise ValueError("phi must have unit winding")
        if np.diff(self.phi.values).min() < -1e-12:
            raise ValueError("phi must be nondecreasing")
        floor = math.exp(-2.0 * self.t)
        if self.phi_x.values.min() < floor - 1e-9:
            raise ValueError("phi_x fell below the admissible lower bound")


def _factor_pieces(d: InitialData):
    """Nonnegative half-slopes (1 + z0/2) of the two factor branches.

    Values within the admissibility tolerance of zero are snapped to
    exactly zero. The closed forms are exponentially sensitive to the
    distinction between critical and nearly critical slopes, and
    rounding noise in the sampled gradient would otherwise masquerade
    as an interior datum and pollute the conserved quantities with
    terms growing like sinh^2 t.
    """
    u0x = d.u0x.values
    rho0 = d.rho0.values
    sp = 1.0 + 0.5 * (u0x + rho0)
    sq = 1.0 + 0.5 * (u0x - rho0)
    sp = np.where(np.abs(sp) <= SLOPE_TOL, 0.0, sp)
    sq = np.where(np.abs(sq) <= SLOPE_TOL, 0.0, sq)
    return np.maximum(sp, 0.0), np.maximum(sq, 0.0)


def _closed_fields(d: InitialData, t: float):
    """Nodal building blocks of the flow state at time t.

    The mean of the product of the half-slopes is the defect of the
    energy constant from -1; it vanishes identically on admissible data,
    so the measured float residue is projected out before the
    quadratically grown term enters phi_x.
    """
    sp, sq = _factor_pieces(d)
    em = math.exp(-t)
    sh = math.sinh(t)
    ch = math.cosh(t)
    r = sp * sq
    r0 = r - r.mean()
    ssum = sp + sq
    em2 = em * em
    phi_x = em2 + ssum * (em * sh) + r0 * (sh * sh)
    phi_tx = -2.0 * em2 + ssum * em2 + r0 * (2.0 * sh * ch)
    phi_ttx = 4.0 * em2 - 2.0 * ssum * em2 + r0 * (2.0 * math.cosh(2.0 * t))
    return sp, sq, em, sh, phi_x, phi_tx, phi_ttx


def weak_state(d: InitialData, t: float) -> WeakState:
    """Closed-form global flow state at time t >= 0.

    Assembled from the factor half-slopes in exponential form, which is
    stable for arbitrarily large t. alpha_t is rho0 / phi_x exactly:
    the Wronskian of the two factor branches is constant in time and
    equals rho0.
    """
    report = admissibility(d)
    if not report.admissible:
        raise NotAdmissible(
            f"data is not admissible for the global weak flow: "
            f"c = {report.c_value:.6g}, "
            f"{len(report.violating_nodes)} node(s) violate the slope bound"
        )
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    gr = d.grid
    sp, sq, em, sh, phi_x, phi_tx, _ = _closed_fields(d, t)
    wp = em + sp * sh
    wq = em + sq * sh
    f1 = gr.function(0.5 * (wp + wq))
    f2 = gr.function(0.5 * (wp - wq))
    phi = antiderivative_from_zero(gr.function(phi_x))
    alpha = gr.function(np.log(wp) - np.log(wq))
    phi_t = antiderivative_from_zero(gr.function(phi_tx))
    alpha_t = gr.function(d.rho0.values / phi_x)
    return WeakState(t, f1, f2, phi, alpha, phi_t, alpha_t, gr.function(phi_x))


def energy(s: WeakState) -> float:
    """Conserved indefinite energy int (phi_tx^2 / phi_x - alpha_t^2 phi_x).

    Quadrature skips degenerate nodes (phi_x below 1e-14): the
    integrand extends by zero across the degeneracy set. Equals -4 for
    every admissible datum at every time.
    """
    phi_tx = derivative(s.phi_t).values
    px = s.phi_x.values
    keep = px > DEGENERATE_NODE_TOL
    vals = phi_tx[keep] ** 2 / px[keep] - s.alpha_t.values[keep] ** 2 * px[keep]
    return float(vals.sum() / px.size)


def geodesic_residual(d: InitialData, t: float) -> float:
    """Sup-norm defect of the geodesic equation at time t.

    Compares the closed-form second time derivatives of (phi, alpha)
    with the Christoffel quadratic form evaluated at the current flow
    state. Zero up to quadrature error for admissible data.
    """
    s = weak_state(d, t)
    gr = d.grid
    _, _, _, _, phi_x, phi_tx, phi_ttx = _closed_fields(d, t)
    phi_tt = antiderivative_from_zero(gr.function(phi_ttx))
    alpha_tt = gr.function(-d.rho0.values * phi_tx / phi_x**2)

    base = GroupElement(s.phi, s.alpha)
    vel = TangentPair(s.phi_t, s.alpha_t, base=base)
    gam = christoffel(vel, vel, at=base)
    return max((gam.u1 - phi_tt).sup_norm(), (gam.u2 - alpha_tt).sup_norm())


def weak_solution(d: InitialData, t: float) -> tuple[GridFunction, GridFunction]:
    """Eulerian fields (u, rho) of the global conservative weak solution.

    The Lagrangian rates (phi_t, alpha_t) are the solution values along
    the flow map, so everything reduces to inverting the nondecreasing
    phi; degenerate plateaus collapse to single Eulerian points.
    """
    s = weak_state(d, t)
    gr = d.grid
    u = compose_with_inverse(s.phi.values, s.phi_t.values, gr)
    rho = compose_with_inverse(s.phi.values, s.alpha_t.values, gr)
    return gr.function(u), gr.function(rho)


def weak_residual(d: InitialData, t: float, dt: float = 1e-4) -> float:
    """L2 residual of the integrated evolution equation for u.

    u_t is formed by central differences of the Eulerian field across
    t +- dt; the right-hand side is the antisymmetrized double
    integral of u_x^2 - rho^2. Small for admissible data at any time,
    including past the classical breakdown of neighboring data.
    """
    if t - dt < 0.0:
        raise ValueError("t - dt must be nonnegative")
    gr = d.grid
    up, _ = weak_solution(d, t + dt)
    um, _ = weak_solution(d, t - dt)
    u, rho = weak_solution(d, t)
    u_t = (up - um) * (0.5 / dt)
    ux = derivative(u)
    g = ux * ux - rho * rho
    rhs = 0.5 * (antiderivative_from_zero(g) - gr.function(gr.x) * integrate(g))
    return (u_t + u * ux - rhs).l2_norm()


def lagrangian_snapshot(d: InitialData, t: float) -> GridFunction:
    """Velocity gradient along the flow map, u_x(t, phi(t, x)).

    Admissible data uses the global weak flow; anything else falls back
    to the classical closed form and is refused past its breakdown
    time.
    """
    if admissibility(d).admissible:
        s = weak_state(d, t)
        return derivative(s.phi_t) / s.phi_x
    if t >= blowup_time(d):
        raise BlowupReached(
            "data is not admissible for the weak flow and t is past breakdown"
        )
    return lagrangian_fields(d, t).ux
