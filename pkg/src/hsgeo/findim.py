"""Finite-dimensional model of the quotient geometry.

The quadric S = {sum x_i^2 - sum y_i^2 = 1} in R^{2(n+1)} carries the
flat split-signature metric and a one-parameter isometry group of block
hyperbolic rotations whose orbits are the integral curves of the
timelike field V = J(x, y) = (-y, -x).  Splitting tangent vectors into
vertical and horizontal parts and applying O'Neill's formula to the
(flat) ambient curvature gives the quotient sectional curvature in
closed form; planes spanned by X and JX always have curvature 4, all
planes do when n = 1, and for n >= 2 the quotient curvature is not
constant.  This mirrors, in finitely many dimensions, how the quotient
of the solution manifold acquires curvature from a flat total space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePlane

SURFACE_TOL = 1e-12
TANGENT_TOL = 1e-12
HORIZONTAL_TOL = 1e-9


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = np.array(x, dtype=float)
    y = np.array(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise ValueError("x and y must be vectors of equal length")
    if x.size < 2:
        raise ValueError("dimension parameter must be >= 1")
    for v in (x, y):
        if not np.all(np.isfinite(v)):
            raise ValueError("components must be finite")
        v.setflags(write=False)
    return x, y


@dataclass(frozen=True)
class FinPoint:
    """Point of the quadric sum(x^2) - sum(y^2) = 1."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x, y = _pair(self.x, self.y)
        r = float(x @ x - y @ y)
        scale = max(1.0, float(x @ x + y @ y))
        if abs(r - 1.0) > SURFACE_TOL * scale:
            raise ValueError(f"point is off the quadric by {r - 1.0:.3e}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.size - 1


@dataclass(frozen=True)
class FinTangent:
    """Tangent vector to the quadric, stored with its base point."""

    x: np.ndarray
    y: np.ndarray
    base: FinPoint

    def __post_init__(self):
        x, y = _pair(self.x, self.y)
        if x.shape != self.base.x.shape:
            raise ValueError("tangent and base dimensions differ")
        pairing = float(x @ self.base.x - y @ self.base.y)
        scale = max(1.0, float(np.abs(x).max() + np.abs(y).max()))
        if abs(pairing) > TANGENT_TOL * scale:
            raise ValueError(f"vector is not tangent (pairing {pairing:.3e})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.size - 1

    def norm(self) -> float:
        return float(np.abs(self.x).max(initial=0.0) + np.abs(self.y).max(initial=0.0))


def _same_base(t: FinTangent, s: FinTangent) -> None:
    if not (np.array_equal(t.base.x, s.base.x) and np.array_equal(t.base.y, s.base.y)):
        raise ValueError("tangent vectors live at different base points")


def fin_metric(t: FinTangent, s: FinTangent) -> float:
    """Split-signature inner product sum(x x') - sum(y y')."""
    _same_base(t, s)
    return float(t.x @ s.x - t.y @ s.y)


def vertical_field(p: FinPoint) -> FinTangent:
    """Generator of the hyperbolic rotation orbit through p; g(V, V) = -1."""
    return FinTangent(-p.y, -p.x, p)


def split(t: FinTangent) -> tuple[FinTangent, FinTangent]:
    """Vertical and horizontal parts of a tangent vector.

    The vertical line is timelike, so the projection carries a sign:
    the vertical part is -g(T, V) V and the horizontal remainder is
    g-orthogonal to V.
    """
    v = vertical_field(t.base)
    c = fin_metric(t, v)
    vert = FinTangent(-c * v.x, -c * v.y, t.base)
    horiz = FinTangent(t.x + c * v.x, t.y + c * v.y, t.base)
    return vert, horiz


def is_horizontal(t: FinTangent) -> bool:
    v = vertical_field(t.base)
    return abs(fin_metric(t, v)) <= HORIZONTAL_TOL * max(1.0, t.norm())


def j_action(t: FinTangent) -> FinTangent:
    """Block swap-and-negate (x, y) -> (-y, -x).

    On the ambient space J is defined everywhere, but it maps tangent
    vectors to tangent vectors only on the horizontal subspace; for a
    non-horizontal input the tangency check of the result fires.
    """
    return FinTangent(-t.y, -t.x, t.base)


def fin_omega(t: FinTangent, s: FinTangent) -> float:
    """Fundamental two-form g(JT, S); antisymmetric, g(JT, T) = 0."""
    _same_base(t, s)
    return float(-t.y @ s.x + t.x @ s.y)


def boost_point(beta: float, p: FinPoint) -> FinPoint:
    """Block hyperbolic rotation of a point; an isometry of the quadric."""
    ch, sh = np.cosh(beta), np.sinh(beta)
    return FinPoint(ch * p.x + sh * p.y, sh * p.x + ch * p.y)


def boost_tangent(beta: float, t: FinTangent) -> FinTangent:
    """Differential of the hyperbolic rotation; commutes with J."""
    ch, sh = np.cosh(beta), np.sinh(beta)
    return FinTangent(ch * t.x + sh * t.y, sh * t.x + ch * t.y, boost_point(beta, t.base))


def quotient_sec(x: FinTangent, y: FinTangent) -> float:
    """Sectional curvature of the quotient plane spanned by x and y.

    Both vectors must be horizontal.  O'Neill's formula applied to the
    flat ambient space gives
    (g(x,x) g(y,y) - g(x,y)^2 - 3 omega(x,y)^2) / (g(x,x) g(y,y) - g(x,y)^2);
    the denominator is the signed squared area of the plane and must be
    nondegenerate.
    """
    _same_base(x, y)
    if not (is_horizontal(x) and is_horizontal(y)):
        raise ValueError("both vectors must be horizontal")
    gxx = fin_metric(x, x)
    gyy = fin_metric(y, y)
    gxy = fin_metric(x, y)
    den = gxx * gyy - gxy * gxy
    scale = max(x.norm(), 1.0) ** 2 * max(y.norm(), 1.0) ** 2
    if abs(den) < 1e-12 * scale:
        raise DegeneratePlane(f"plane area^2 = {den:.3e}")
    om = fin_omega(x, y)
    return (den - 3.0 * om * om) / den


def standard_base(n: int) -> FinPoint:
    """The point (1, 0, ..., 0; 0, ..., 0)."""
    x = np.zeros(n + 1)
    x[0] = 1.0
    return FinPoint(x, np.zeros(n + 1))


def random_point(n: int, rng: np.random.Generator) -> FinPoint:
    """Random point of the quadric (rejection sampling on the sign of g)."""
    while True:
        x = rng.standard_normal(n + 1)
        y = rng.standard_normal(n + 1)
        r = x @ x - y @ y
        if r > 0.1:
            return FinPoint(x / np.sqrt(r), y / np.sqrt(r))


def random_horizontal(p: FinPoint, rng: np.random.Generator) -> FinTangent:
    """Random horizontal tangent vector at p, O(1) in size."""
    while True:
        w = rng.standard_normal(2 * (p.n + 1))
        wx, wy = w[: p.n + 1], w[p.n + 1 :]
        c = wx @ p.x - wy @ p.y
        t = FinTangent(wx - c * p.x, wy - c * p.y, p)
        h = split(t)[1]
        if h.norm() > 0.1:
            return h


def _field_value(v0: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Horizontal extension of a constant ambient vector, evaluated at q.

    q need not lie on the quadric: projecting with the q-dependent
    normalization makes the field tangent to every level set of
    g(q, q), so finite differences of it compute an honest bracket of
    vector fields on the quadric.
    """
    m = q.size // 2
    eta = np.concatenate([np.ones(m), -np.ones(m)])
    gq = float(q @ (eta * q))
    w = v0 - (float(v0 @ (eta * q)) / gq) * q
    jq = np.concatenate([-q[m:], -q[:m]])
    w = w + (float(w @ (eta * jq)) / gq) * jq
    return w


def vertical_bracket_defect(x: FinTangent, y: FinTangent, h: float = 1e-5) -> float:
    """Deviation from (1/2)[X, Y]^vert = g(Y, JX) V.

    X and Y are extended to horizontal fields near the base point and
    their Lie bracket [X, Y] = D_X Y - D_Y X is formed by central
    finite differences with step h; the reported number is the
    sup-norm gap between the two sides, small for any horizontal pair.
    The sign pins down the orientation conventions: linearizing the
    extension at the base gives D_a(bbar) = -g(b, a) base + g(b, Ja) V,
    so the bracket is 2 g(Ja, b) V, vertical already.
    """
    _same_base(x, y)
    p = np.concatenate([x.base.x, x.base.y])
    x0 = np.concatenate([x.x, x.y])
    y0 = np.concatenate([y.x, y.y])
    xv = _field_value(x0, p)
    yv = _field_value(y0, p)
    dy_along_x = (_field_value(y0, p + h * xv) - _field_value(y0, p - h * xv)) / (2 * h)
    dx_along_y = (_field_value(x0, p + h * yv) - _field_value(x0, p - h * yv)) / (2 * h)
    br = dy_along_x - dx_along_y
    m = p.size // 2
    v = vertical_field(x.base)
    vvec = np.concatenate([v.x, v.y])
    eta = np.concatenate([np.ones(m), -np.ones(m)])
    half_vert = -0.5 * float(br @ (eta * vvec)) * vvec
    rhs = fin_metric(y, j_action(x)) * vvec
    return float(np.abs(half_vert - rhs).max())


def horizontal_basis(p: FinPoint) -> list[FinTangent]:
    """Orthogonal horizontal basis obtained from the ambient axes.

    Projects each coordinate direction and drops the two that collapse
    (the normal and the vertical); at the standard base point these are
    exactly the remaining coordinate directions.
    """
    m = p.n + 1
    out = []
    for k in range(2 * m):
        w = np.zeros(2 * m)
        w[k] = 1.0
        wx, wy = w[:m], w[m:]
        c = wx @ p.x - wy @ p.y
        t = FinTangent(wx - c * p.x, wy - c * p.y, p)
        hpart = split(t)[1]
        if hpart.norm() > 1e-8:
            out.append(hpart)
    return out


def plane_scan(n: int) -> list[tuple[str, str, float]]:
    """Sectional curvature of every coordinate-pair plane at the standard base.

    Labels follow the ambient axes: x2..x(n+1) and y2..y(n+1).  The
    scan exhibits non-constant curvature for n >= 2 and the constant
    value 4 for n = 1.
    """
    p = standard_base(n)
    basis = horizontal_basis(p)
    labels = [f"x{k}" for k in range(2, n + 2)] + [f"y{k}" for k in range(2, n + 2)]
    rows = []
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            rows.append((labels[i], labels[j], quotient_sec(basis[i], basis[j])))
    return rows
