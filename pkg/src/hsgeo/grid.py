"""Spectral primitives for real periodic functions on the unit circle.

Functions are sampled on the uniform grid x_j = j/n (period 1, n even).
Differentiation, antidifferentiation and quadrature are exact for
band-limited data, which is what every other module feeds in here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NonZeroMean

MEAN_TOL = 1e-10


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid with n nodes on [0, 1)."""

    n: int

    def __post_init__(self):
        if self.n < 8 or self.n % 2 != 0:
            raise ValueError(f"grid size must be even and >= 8, got {self.n}")

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n) / self.n

    @property
    def h(self) -> float:
        return 1.0 / self.n

    def sample(self, fn) -> "GridFunction":
        """Sample a callable at the nodes."""
        return GridFunction(self, np.asarray(fn(self.x), dtype=float))

    def function(self, values) -> "GridFunction":
        return GridFunction(self, values)

    def zero(self) -> "GridFunction":
        return GridFunction(self, np.zeros(self.n))

    def constant(self, value: float) -> "GridFunction":
        return GridFunction(self, np.full(self.n, float(value)))


@dataclass(frozen=True)
class GridFunction:
    """Real function known by its samples on a periodic grid.

    Values are stored read-only; all operations return new instances.
    """

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)  # defensive copy
        if v.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("samples must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    # -- pointwise algebra ------------------------------------------------

    def _lift(self, other) -> np.ndarray:
        if isinstance(other, GridFunction):
            if other.grid != self.grid:
                raise ValueError("grid mismatch")
            return other.values
        return np.asarray(other, dtype=float)

    def __add__(self, other):
        return GridFunction(self.grid, self.values + self._lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.grid, self.values - self._lift(other))

    def __rsub__(self, other):
        return GridFunction(self.grid, self._lift(other) - self.values)

    def __mul__(self, other):
        return GridFunction(self.grid, self.values * self._lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GridFunction(self.grid, self.values / self._lift(other))

    def __neg__(self):
        return GridFunction(self.grid, -self.values)

    def __pow__(self, p):
        return GridFunction(self.grid, self.values**p)

    # -- reductions --------------------------------------------------------

    def min(self) -> float:
        return float(self.values.min())

    def max(self) -> float:
        return float(self.values.max())

    def sup_norm(self) -> float:
        return float(np.abs(self.values).max())

    def l2_norm(self) -> float:
        return float(np.sqrt(np.mean(self.values**2)))

    # -- nonuniform evaluation ----------------------------------------------

    def eval_at(self, pts) -> np.ndarray:
        """Evaluate the trigonometric interpolant at arbitrary points.

        Exact for band-limited data; points may lie outside [0, 1) since
        the interpolant is periodic.
        """
        n = self.grid.n
        y = np.atleast_1d(np.asarray(pts, dtype=float))
        c = np.fft.rfft(self.values) / n
        ang = 2.0 * np.pi * np.outer(y, np.arange(1, n // 2))
        out = np.full(y.shape, c[0].real)
        out += 2.0 * (np.cos(ang) @ c[1 : n // 2].real - np.sin(ang) @ c[1 : n // 2].imag)
        out += c[n // 2].real * np.cos(np.pi * n * y)
        return out if np.ndim(pts) else float(out[0])


def integrate(f: GridFunction) -> float:
    """Quadrature over one period (rectangle rule, spectrally exact)."""
    return float(f.values.mean())


def mean_zero_project(f: GridFunction) -> GridFunction:
    """Remove the mean. Idempotent."""
    return GridFunction(f.grid, f.values - f.values.mean())


def _wavenumbers(n: int) -> np.ndarray:
    # integer frequencies 0..n/2 of the real FFT
    return np.fft.rfftfreq(n, d=1.0 / n)


def derivative(f: GridFunction) -> GridFunction:
    """Spectral derivative. The Nyquist mode is annihilated to keep it real."""
    n = f.grid.n
    ik = 2j * np.pi * _wavenumbers(n)
    ik[-1] = 0.0
    return GridFunction(f.grid, np.fft.irfft(ik * np.fft.rfft(f.values), n))


def antiderivative_from_zero(f: GridFunction) -> GridFunction:
    """Antiderivative F with F(0) = 0.

    The mean of f appears as a linear-in-x term, the rest is integrated
    spectrally, so F(x) - mean(f) * x is periodic.
    """
    n = f.grid.n
    fh = np.fft.rfft(f.values)
    mean = fh[0].real / n
    fh[0] = 0.0
    ik = 2j * np.pi * _wavenumbers(n)
    ik[0] = 1.0  # dummy, mode already zeroed
    gh = fh / ik
    gh[-1] = 0.0  # Nyquist antiderivative samples to zero on the nodes
    periodic = np.fft.irfft(gh, n)
    vals = periodic - periodic[0] + mean * f.grid.x
    return GridFunction(f.grid, vals)


def a_inverse(f: GridFunction, demean: bool = False) -> GridFunction:
    """Invert the periodic operator -d2/dx2 with the normalization g(0) = 0.

    g(x) = -int_0^x int_0^y f dz dy + x * int_{S^1} int_0^y f dz dy.

    The input must have zero mean (tolerance 1e-10); pass demean=True to
    project it first.
    """
    if demean:
        f = mean_zero_project(f)
    elif abs(integrate(f)) > MEAN_TOL:
        raise NonZeroMean(f"mean {integrate(f):.3e} exceeds {MEAN_TOL:.0e}")
    first = antiderivative_from_zero(f)
    second = antiderivative_from_zero(first)
    return GridFunction(f.grid, -second.values + f.grid.x * integrate(first))


def write_csv(f: GridFunction, path) -> None:
    """Serialize as CSV with header ``x,value`` at 17 significant digits."""
    with open(path, "w") as fh:
        fh.write("x,value\n")
        for x, v in zip(f.grid.x, f.values):
            fh.write(f"{x:.17g},{v:.17g}\n")


def read_csv(path) -> GridFunction:
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    if data.ndim != 2 or data.shape[1] != 2:
        raise ValueError(f"expected two columns in {path}")
    n = data.shape[0]
    grid = Grid(n)
    if not np.allclose(data[:, 0], grid.x, atol=1e-12):
        raise ValueError("node column is not the uniform grid on [0, 1)")
    return GridFunction(grid, data[:, 1])
