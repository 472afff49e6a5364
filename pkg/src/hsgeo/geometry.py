"""Right-invariant geometry on the circle-map-and-twist configuration space.

Tangent vectors are pairs (u1, u2): a velocity field with u1(0) = 0 and
a periodic density component. The indefinite metric

    G_kappa(U, V) = 1/4 int (U1' V1' + kappa U2 V2) dx

is extended right-invariantly to an arbitrary base point (phi, alpha),
where it reads 1/4 int (U1' V1' / phi_x + kappa U2 V2 phi_x) dx. The
quotient by constant twists carries the related split-signature metric
G_K (kappa = -1 with the sign of the density block flipped), an almost
para-complex structure J and a symplectic form omega; together these
make the quotient a para-Kaehler manifold of constant para-holomorphic
sectional curvature.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePlane
from .grid import (
    GridFunction,
    a_inverse,
    antiderivative_from_zero,
    derivative,
    integrate,
    mean_zero_project,
)
from .sphere import GroupElement

DEGENERATE_TOL = 1e-12


@dataclass(frozen=True)
class TangentPair:
    """Tangent vector (u1, u2), optionally attached to a base point.

    base = None means the identity. u1 is anchored by u1(0) = 0, the
    gauge that makes the chart map to the pseudosphere injective.
    """

    u1: GridFunction
    u2: GridFunction
    base: GroupElement | None = None

    def __post_init__(self):
        if self.u1.grid != self.u2.grid:
            raise ValueError("components live on different grids")
        if self.base is not None and self.base.grid != self.u1.grid:
            raise ValueError("base point lives on a different grid")
        if abs(self.u1.values[0]) > 1e-9:
            raise ValueError("u1(0) must vanish")

    @property
    def grid(self):
        return self.u1.grid


@dataclass(frozen=True)
class KTangent:
    """Tangent vector to the quotient by constant twists.

    The density slot is a class modulo constants, stored as its
    mean-zero representative.
    """

    u1: GridFunction
    u2_class: GridFunction

    def __post_init__(self):
        if self.u1.grid != self.u2_class.grid:
            raise ValueError("components live on different grids")
        if abs(self.u1.values[0]) > 1e-9:
            raise ValueError("u1(0) must vanish")
        if abs(integrate(self.u2_class)) > 1e-10:
            raise ValueError("u2_class must have zero mean")

    def as_pair(self) -> TangentPair:
        return TangentPair(self.u1, self.u2_class)

    @property
    def grid(self):
        return self.u1.grid


def _same_base(a: GroupElement | None, b: GroupElement | None) -> bool:
    if a is b:
        return True
    if a is None or b is None:
        return False
    return (
        a.grid == b.grid
        and np.array_equal(a.phi.values, b.phi.values)
        and np.array_equal(a.alpha.values, b.alpha.values)
    )


def _check_pair(U: TangentPair, V: TangentPair) -> None:
    if U.grid != V.grid:
        raise ValueError("tangent vectors live on different grids")
    if not _same_base(U.base, V.base):
        raise ValueError("tangent vectors sit at different base points")


def _check_identity(*pairs: TangentPair) -> None:
    for p in pairs:
        if p.base is not None:
            raise ValueError("operation is defined at the identity")


def _check_kappa(kappa: int) -> None:
    if kappa not in (-1, 1):
        raise ValueError("kappa must be +1 or -1")


def metric_G(U: TangentPair, V: TangentPair, kappa: int = -1) -> float:
    """Right-invariant metric, signature depending on kappa."""
    _check_pair(U, V)
    _check_kappa(kappa)
    du = derivative(U.u1)
    dv = derivative(V.u1)
    if U.base is None:
        return 0.25 * integrate(du * dv + kappa * (U.u2 * V.u2))
    px = U.base.phi_x
    return 0.25 * integrate(du * dv / px + kappa * (U.u2 * V.u2 * px))


def bracket(u: TangentPair, v: TangentPair) -> TangentPair:
    """Lie bracket on the algebra (identity base).

    Commutator of the right-invariant extensions: the velocity slots
    compose by the vector-field bracket, the density slots are advected.
    """
    _check_pair(u, v)
    _check_identity(u, v)
    u1x = derivative(u.u1)
    v1x = derivative(v.u1)
    first = v1x * u.u1 - u1x * v.u1
    second = derivative(v.u2) * u.u1 - derivative(u.u2) * v.u1
    return TangentPair(first, second)


def b_operator(u: TangentPair, v: TangentPair, kappa: int = -1) -> TangentPair:
    """Metric adjoint of the bracket: G(B(u, v), w) = G(u, [v, w]).

    The first slot needs the inverse of -d2/dx2, which on the circle
    only exists for zero-mean input, so the source is projected. The
    discarded constant changes G(B(u, v), w) by
    -1/4 mean(source) int w1 dx; the adjoint identity is exact whenever
    int w1 dx = 0 and curvature code that needs the pairing against a
    general w evaluates the right-hand side instead.
    """
    _check_pair(u, v)
    _check_identity(u, v)
    _check_kappa(kappa)
    u1xx = derivative(derivative(u.u1))
    h1 = u1xx * derivative(v.u1) + derivative(u1xx * v.u1) - kappa * (
        u.u2 * derivative(v.u2)
    )
    first = a_inverse(h1, demean=True)
    second = -derivative(u.u2 * v.u1)
    return TangentPair(first, second)


def arnold_curvature(u: TangentPair, v: TangentPair, kappa: int = -1) -> float:
    """Unnormalized sectional curvature G(R(u, v)v, u) at the identity.

    Structure-constant formula for a right-invariant metric,

        K = G(d, d) + G([u, v], b) - 3/4 G([u, v], [u, v])
            - G(B(u, u), B(v, v)),

    with d and b the symmetric and antisymmetric parts of B(u, v).
    The pairing G([u, v], b) is expanded through the adjoint identity,
    1/2 (G(u, [v, w]) - G(v, [u, w])) with w = [u, v], because the
    projected first slot of B misrepresents exactly this term (the
    bracket's velocity slot has nonzero mean in general, see
    b_operator). The symmetric terms are safe: their projected sources
    pair against mean-zero velocity slots.
    """
    w = bracket(u, v)
    buv = b_operator(u, v, kappa)
    bvu = b_operator(v, u, kappa)
    delta = TangentPair(0.5 * (buv.u1 + bvu.u1), 0.5 * (buv.u2 + bvu.u2))
    beta_term = 0.5 * (
        metric_G(u, bracket(v, w), kappa) - metric_G(v, bracket(u, w), kappa)
    )
    return (
        metric_G(delta, delta, kappa)
        + beta_term
        - 0.75 * metric_G(w, w, kappa)
        - metric_G(b_operator(u, u, kappa), b_operator(v, v, kappa), kappa)
    )


def christoffel(
    U: TangentPair, V: TangentPair, at: GroupElement | None = None
) -> TangentPair:
    """Geodesic quadratic form of the kappa = -1 metric.

    A geodesic through `at` with velocity U satisfies
    (phi_tt, alpha_tt) = christoffel((phi_t, alpha_t), same, at).
    Symmetric in U, V. The first slot vanishes at x = 0, matching the
    anchoring of phi.
    """
    if U.base is not None and not _same_base(U.base, at):
        raise ValueError("U is not tangent at the requested base point")
    if V.base is not None and not _same_base(V.base, at):
        raise ValueError("V is not tangent at the requested base point")
    _check_pair(U, V)
    gr = U.grid
    du = derivative(U.u1)
    dv = derivative(V.u1)
    if at is None:
        px = gr.constant(1.0)
        phi = gr.function(gr.x)
    else:
        px = at.phi_x
        phi = at.phi
    h = du * dv / px - U.u2 * V.u2 * px
    F = antiderivative_from_zero(h)
    first = 0.5 * (F - phi * integrate(h))
    second = -0.5 * (du * V.u2 + dv * U.u2) / px
    return TangentPair(first, second, base=at)


def metric_K(u: KTangent, v: KTangent, at: GroupElement | None = None) -> float:
    """Quotient metric: the kappa = -1 pairing with the density sign flipped.

    At a general base the class representatives are re-centered in the
    measure phi_x dx before pairing.
    """
    du = derivative(u.u1)
    dv = derivative(v.u1)
    if at is None:
        return 0.25 * integrate(du * dv - u.u2_class * v.u2_class)
    px = at.phi_x
    pu = u.u2_class - integrate(u.u2_class * px)
    pv = v.u2_class - integrate(v.u2_class * px)
    return 0.25 * integrate(du * dv / px - pu * pv * px)


def j_tensor(U: TangentPair) -> TangentPair:
    """Almost para-complex structure of the quotient, J^2 = identity.

    Swaps the roles of the two slots: the new velocity integrates the
    re-centered density, the new density is the negative velocity
    gradient. Acts on classes, so the density slot of the result is
    returned mean-zero.
    """
    if U.base is None:
        integrand = mean_zero_project(U.u2)
        second = mean_zero_project(-derivative(U.u1))
    else:
        px = U.base.phi_x
        integrand = (U.u2 - integrate(U.u2 * px)) * px
        second = mean_zero_project(-derivative(U.u1) / px)
    first = -antiderivative_from_zero(integrand)
    return TangentPair(first, second, base=U.base)


def omega_form(U: TangentPair, V: TangentPair) -> float:
    """Symplectic form of the para-Kaehler structure, omega = G_K(J., .).

    The integrand does not involve the base point at all, which is the
    coordinate expression of omega being parallel.
    """
    _check_pair(U, V)
    return 0.25 * integrate(derivative(U.u2) * V.u1 - derivative(V.u2) * U.u1)


def k_curvature(u: KTangent, v: KTangent) -> float:
    """Sectional curvature of the quotient metric for span(u, v).

    Constant and equal to 1 on nondegenerate J-invariant planes; the
    general value is 1 + 3 omega(u, v)^2 / (G(u, u) G(v, v) - G(u, v)^2)
    with the opposite sign convention absorbed in the quotient formula
    (N - 3 omega^2) / N. Degenerate planes have no sectional curvature.
    """
    guu = metric_K(u, u)
    gvv = metric_K(v, v)
    guv = metric_K(u, v)
    den = guu * gvv - guv * guv
    if abs(den) < DEGENERATE_TOL:
        raise DegeneratePlane("plane is degenerate for the quotient metric")
    w = omega_form(u.as_pair(), v.as_pair())
    return (den - 3.0 * w * w) / den


def nijenhuis(u: TangentPair, v: TangentPair) -> TangentPair:
    """Integrability tensor of J at the identity,

        N(u, v) = [u, v] + [Ju, Jv] - J[Ju, v] - J[u, Jv].

    Vanishes identically: J comes from an integrable para-complex
    structure. The density slot is reduced to its mean-zero
    representative, as everywhere on the quotient.
    """
    _check_pair(u, v)
    _check_identity(u, v)
    ju = j_tensor(u)
    jv = j_tensor(v)
    a = bracket(u, v)
    b = bracket(ju, jv)
    c = j_tensor(bracket(ju, v))
    d = j_tensor(bracket(u, jv))
    first = a.u1 + b.u1 - c.u1 - d.u1
    second = mean_zero_project(a.u2 + b.u2 - c.u2 - d.u2)
    return TangentPair(first, second)
