"""Finitely supported Fourier series on the d-torus and uniform grid samples.

Transform convention, fixed once for the whole package:

    c_k = integral over T^d of f(theta) exp(-2 pi i k.theta) dtheta,
    f(theta) = sum_k c_k exp(+2 pi i k.theta),

so c_0 is the mean of f.  A real function satisfies c_{-k} = conj(c_k).
Grids are uniform with power-of-two sizes per axis, theta_j = j / size,
which makes analyze/synthesize exact inverses on band-limited data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

COEFF_FLOOR = 1e-15          # analyze() drops coefficients below this
REAL_SYMMETRY_TOL = 1e-12    # Hermitian-symmetry tolerance for declared_real
IMAG_RESIDUE_TOL = 1e-10     # evaluate() error threshold on imaginary residue

Lattice = tuple[int, ...]


class NonRealSeriesError(ValueError):
    """A series declared real violates Hermitian symmetry, or an
    evaluation left an imaginary residue above tolerance."""


class AliasingError(ValueError):
    """Series support does not fit the Nyquist box of the requested grid."""


def _as_key(k, dim: int) -> Lattice:
    if isinstance(k, (int, np.integer)):
        k = (int(k),)
    key = tuple(int(v) for v in k)
    if len(key) != dim:
        raise ValueError(f"lattice point {key} has length {len(key)}, expected {dim}")
    return key


@dataclass(frozen=True)
class FourierSeries:
    """Finite map from Z^d to complex coefficients; absent keys are zero."""

    dim: int
    coeffs: Mapping[Lattice, complex]
    declared_real: bool = True

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        clean = {}
        for k, c in self.coeffs.items():
            key = _as_key(k, self.dim)
            c = complex(c)
            if not (np.isfinite(c.real) and np.isfinite(c.imag)):
                raise ValueError(f"non-finite coefficient at {key}")
            if c != 0:
                clean[key] = c
        object.__setattr__(self, "coeffs", clean)
        if self.declared_real:
            self._check_real_symmetry()

    def _check_real_symmetry(self):
        for k, c in self.coeffs.items():
            mirror = self.coeffs.get(tuple(-v for v in k), 0.0)
            if abs(c - np.conj(mirror)) > REAL_SYMMETRY_TOL * max(1.0, abs(c)):
                raise NonRealSeriesError(f"coefficient at {k} breaks Hermitian symmetry")
        c0 = self.coeffs.get((0,) * self.dim)
        if c0 is not None and abs(c0.imag) > REAL_SYMMETRY_TOL:
            raise NonRealSeriesError("constant coefficient is not real")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(dim: int) -> "FourierSeries":
        return FourierSeries(dim, {})

    @staticmethod
    def constant(dim: int, value: float) -> "FourierSeries":
        return FourierSeries(dim, {(0,) * dim: complex(value)})

    @staticmethod
    def from_mode(k, coeff: complex, dim: int | None = None) -> "FourierSeries":
        """Real series c * e(k.theta) + conj(c) * e(-k.theta)."""
        if dim is None:
            dim = 1 if isinstance(k, (int, np.integer)) else len(k)
        key = _as_key(k, dim)
        if key == (0,) * dim:
            return FourierSeries.constant(dim, 2 * complex(coeff).real)
        neg = tuple(-v for v in key)
        return FourierSeries(dim, {key: complex(coeff), neg: np.conj(complex(coeff))})

    @staticmethod
    def cosine(k, dim: int | None = None) -> "FourierSeries":
        """cos(2 pi k.theta)"""
        return FourierSeries.from_mode(k, 0.5, dim)

    @staticmethod
    def sine(k, dim: int | None = None) -> "FourierSeries":
        """sin(2 pi k.theta)"""
        return FourierSeries.from_mode(k, -0.5j, dim)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "FourierSeries") -> "FourierSeries":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0.0) + c
        return FourierSeries(self.dim, out, self.declared_real and other.declared_real)

    def __sub__(self, other: "FourierSeries") -> "FourierSeries":
        return self + other.scale(-1.0)

    def scale(self, a: float) -> "FourierSeries":
        real = self.declared_real and abs(complex(a).imag) == 0
        return FourierSeries(self.dim, {k: a * c for k, c in self.coeffs.items()}, real)

    def plus_constant(self, value: float) -> "FourierSeries":
        out = dict(self.coeffs)
        z = (0,) * self.dim
        out[z] = out.get(z, 0.0) + value
        return FourierSeries(self.dim, out, self.declared_real)

    # -- queries -----------------------------------------------------------

    @property
    def mean(self) -> float:
        return self.coeffs.get((0,) * self.dim, 0j).real

    def coeff(self, k) -> complex:
        return complex(self.coeffs.get(_as_key(k, self.dim), 0.0))

    def support_radius(self) -> int:
        """max |k|_inf over the support (0 for the zero/constant series)."""
        if not self.coeffs:
            return 0
        return max(max(abs(v) for v in k) for k in self.coeffs)

    def sorted_keys(self) -> list[Lattice]:
        return sorted(self.coeffs)

    def sup_norm(self, sizes=None) -> float:
        """max |f| over a grid (defaults to 4x the support per axis)."""
        if sizes is None:
            n = _next_pow2(4 * (self.support_radius() + 1))
            sizes = (n,) * self.dim
        return float(np.max(np.abs(synthesize(self, sizes).samples)))

    # -- shift / derivative (exact, coefficientwise) ------------------------

    def shift(self, alpha) -> "FourierSeries":
        """Pullback by the rotation theta -> theta + alpha:
        coefficient at k picks up e(k.alpha)."""
        alpha = np.asarray(alpha, dtype=float).reshape(self.dim)
        out = {}
        for k, c in self.coeffs.items():
            out[k] = c * np.exp(2j * np.pi * float(np.dot(k, alpha)))
        return FourierSeries(self.dim, out, self.declared_real)

    def directional_derivative(self, alpha) -> "FourierSeries":
        """Derivative along the constant field alpha: factor 2 pi i (k.alpha)."""
        alpha = np.asarray(alpha, dtype=float).reshape(self.dim)
        out = {}
        for k, c in self.coeffs.items():
            out[k] = c * 2j * np.pi * float(np.dot(k, alpha))
        return FourierSeries(self.dim, out, self.declared_real)

    def partial_derivative(self, axis: int) -> "FourierSeries":
        e = [0.0] * self.dim
        e[axis] = 1.0
        return self.directional_derivative(e)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, theta) -> float:
        """Pointwise sum over lexicographically sorted keys.

        Requires declared_real; an imaginary residue above tolerance means
        the stored coefficients are not a real series.
        """
        if not self.declared_real:
            raise NonRealSeriesError("evaluate requires a declared-real series")
        theta = np.asarray(theta, dtype=float).reshape(self.dim)
        total = 0.0 + 0.0j
        for k in self.sorted_keys():
            total += self.coeffs[k] * np.exp(2j * np.pi * float(np.dot(k, theta)))
        if abs(total.imag) > IMAG_RESIDUE_TOL * max(1.0, abs(total.real)):
            raise NonRealSeriesError(f"imaginary residue {total.imag:.3e} in evaluation")
        return float(total.real)

    def sample_points(self, thetas) -> np.ndarray:
        """Vectorized evaluation at an (n, d) array of points."""
        if not self.declared_real:
            raise NonRealSeriesError("sample_points requires a declared-real series")
        thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
        if not self.coeffs:
            return np.zeros(thetas.shape[0])
        keys = np.array(self.sorted_keys(), dtype=float)
        cvec = np.array([self.coeffs[tuple(int(v) for v in k)] for k in keys])
        phases = np.exp(2j * np.pi * thetas @ keys.T)
        vals = phases @ cvec
        worst = float(np.max(np.abs(vals.imag)))
        if worst > IMAG_RESIDUE_TOL * max(1.0, float(np.max(np.abs(vals.real)))):
            raise NonRealSeriesError(f"imaginary residue {worst:.3e} in evaluation")
        return vals.real

    # -- JSON interchange ------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "real": self.declared_real,
            "coeffs": [
                {"k": list(k), "re": self.coeffs[k].real, "im": self.coeffs[k].imag}
                for k in self.sorted_keys()
            ],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "FourierSeries":
        dim = int(obj["dim"])
        coeffs = {}
        for entry in obj["coeffs"]:
            key = _as_key(entry["k"], dim)
            coeffs[key] = coeffs.get(key, 0.0) + complex(float(entry["re"]), float(entry["im"]))
        return FourierSeries(dim, coeffs, bool(obj.get("real", True)))


@dataclass(frozen=True)
class GridFunction:
    """Real samples on the uniform grid theta_j = j / size, sizes powers of two."""

    sizes: tuple[int, ...]
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        for s in sizes:
            if s < 2 or (s & (s - 1)) != 0:
                raise ValueError(f"grid size {s} is not a power of two >= 2")
        samples = np.asarray(self.samples, dtype=float)
        if samples.shape != sizes:
            raise ValueError(f"samples shape {samples.shape} != sizes {sizes}")
        if not np.all(np.isfinite(samples)):
            raise ValueError("non-finite samples")
        object.__setattr__(self, "samples", samples)

    @property
    def dim(self) -> int:
        return len(self.sizes)

    @staticmethod
    def from_callable(fn, sizes) -> "GridFunction":
        sizes = tuple(int(s) for s in sizes)
        axes = np.meshgrid(*[np.arange(s) / s for s in sizes], indexing="ij")
        return GridFunction(sizes, fn(*axes))


def _next_pow2(n: int) -> int:
    p = 2
    while p < n:
        p *= 2
    return p


def analyze(g: GridFunction, coeff_floor: float = COEFF_FLOOR) -> FourierSeries:
    """Discrete Fourier analysis of real grid samples.

    Returns coefficients inside the Nyquist box; any energy sitting exactly
    on a Nyquist index s/2 is split evenly between +s/2 and -s/2 so the
    result keeps Hermitian symmetry.  Coefficients with magnitude below
    coeff_floor are dropped.
    """
    spec = np.fft.fftn(g.samples) / g.samples.size
    freqs = [np.fft.fftfreq(s, d=1.0 / s).astype(int) for s in g.sizes]
    coeffs: dict[Lattice, complex] = {}
    it = np.nditer(spec, flags=["multi_index"])
    for val in it:
        c = complex(val)
        if abs(c) <= coeff_floor:
            continue
        idx = it.multi_index
        k = tuple(int(freqs[ax][idx[ax]]) for ax in range(g.dim))
        nyq_axes = [ax for ax in range(g.dim) if idx[ax] == g.sizes[ax] // 2]
        if not nyq_axes:
            coeffs[k] = coeffs.get(k, 0.0) + c
            continue
        # split folded Nyquist energy over the 2^m sign choices
        share = c / (2 ** len(nyq_axes))
        for signs in np.ndindex(*([2] * len(nyq_axes))):
            kk = list(k)
            for ax, s in zip(nyq_axes, signs):
                kk[ax] = (1 if s else -1) * (g.sizes[ax] // 2)
            key = tuple(kk)
            coeffs[key] = coeffs.get(key, 0.0) + share
    coeffs = {k: c for k, c in coeffs.items() if abs(c) > coeff_floor}
    return FourierSeries(g.dim, coeffs, declared_real=True)


def synthesize(s: FourierSeries, sizes) -> GridFunction:
    """Inverse transform onto the grid; exact for band-limited series.

    Support must satisfy |k_i| <= sizes[i] / 2 per axis, otherwise the
    sampled function would alias.
    """
    sizes = tuple(int(v) for v in sizes)
    if len(sizes) != s.dim:
        raise ValueError("sizes length != series dim")
    spec = np.zeros(sizes, dtype=complex)
    for k, c in s.coeffs.items():
        idx = []
        for ax, ki in enumerate(k):
            half = sizes[ax] // 2
            if abs(ki) > half:
                raise AliasingError(f"mode {k} exceeds Nyquist box for sizes {sizes}")
            idx.append(ki % sizes[ax])
        spec[tuple(idx)] += c
    samples = np.fft.ifftn(spec) * spec.size
    worst = float(np.max(np.abs(samples.imag))) if samples.size else 0.0
    scale = max(1.0, float(np.max(np.abs(samples.real))))
    if s.declared_real and worst > IMAG_RESIDUE_TOL * scale:
        raise NonRealSeriesError(f"imaginary residue {worst:.3e} in synthesis")
    return GridFunction(sizes, samples.real)


def decay_profile(s: FourierSeries) -> list[tuple[int, float]]:
    """(radius, max |c_k| on the shell |k|_inf = radius), radii 0..support."""
    radius = s.support_radius()
    shells = [0.0] * (radius + 1)
    for k, c in s.coeffs.items():
        r = max(abs(v) for v in k)
        shells[r] = max(shells[r], abs(c))
    return [(r, shells[r]) for r in range(radius + 1)]
