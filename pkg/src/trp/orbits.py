"""Points of the triple reduced product.

A reduced point is a pair (Y, Z) of su(3) matrices on fixed adjoint orbits
such that X = -(Y+Z) lies on a third fixed orbit; that is the zero level of
the moment map X+Y+Z for simultaneous conjugation.  The solver below finds
such pairs by projected gradient descent on the product of the two orbits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import mat3
from .errors import DegenerateA, Infeasible

SPECTRUM_TOL = mat3.TOL_STRUCTURAL

# Minimum eigenvalue spacing of -i(Y-Z) for the diagonalizing gauge;
# downstream divisor formulas divide by this gap.
TOL_GAP = 1e-6

_DEFAULT_RESTARTS = 32
_MAX_ITER = 20000
_STALL_GRAD = 1e-12


def check_spectrum(s, tol: float = SPECTRUM_TOL) -> np.ndarray:
    s = np.asarray(s, dtype=float).reshape(3)
    if not (s[0] >= s[1] >= s[2]):
        raise ValueError(f"spectrum {s} is not sorted descending")
    if abs(float(s.sum())) > tol:
        raise ValueError(f"spectrum {s} does not sum to zero within {tol:.1e}")
    return s


@dataclass(frozen=True, eq=False)
class OrbitSpec:
    """The three orbit labels: spectra of -iX, -iY, -iZ (wire names lambda/mu/nu)."""

    lam: np.ndarray
    mu: np.ndarray
    nu: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lam", check_spectrum(self.lam))
        object.__setattr__(self, "mu", check_spectrum(self.mu))
        object.__setattr__(self, "nu", check_spectrum(self.nu))


@dataclass(frozen=True, eq=False)
class ReducedPoint:
    """One representative (Y, Z) of a class in the triple reduced product."""

    Y: np.ndarray
    Z: np.ndarray
    spec: OrbitSpec
    moment_residual: float
    seed: int = 0

    @property
    def X(self) -> np.ndarray:
        return -(self.Y + self.Z)

    def spectra(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Measured descending spectra of (-iX, -iY, -iZ)."""
        return (
            mat3.su3_spectrum(self.X),
            mat3.su3_spectrum(self.Y),
            mat3.su3_spectrum(self.Z),
        )

    def spectral_deviation(self) -> float:
        """Max deviation of the measured spectra from the orbit labels."""
        wx, wy, wz = self.spectra()
        return float(
            max(
                np.max(np.abs(wx - self.spec.lam)),
                np.max(np.abs(wy - self.spec.mu)),
                np.max(np.abs(wz - self.spec.nu)),
            )
        )


def haar_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-like 3x3 unitary (QR of a complex Gaussian, phases fixed)."""
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def special_unitary(rng: np.random.Generator) -> np.ndarray:
    u = haar_unitary(rng)
    return u / mat3.det3(u) ** (1.0 / 3.0)


def sample_orbit(spectrum, rng_seed: int) -> np.ndarray:
    """Random element of the adjoint orbit with spectrum(-i*result) = spectrum."""
    s = check_spectrum(spectrum)
    rng = np.random.default_rng(rng_seed)
    u = haar_unitary(rng)
    m = u @ np.diag(1j * s) @ mat3.dagger(u)
    return 0.5 * (m - mat3.dagger(m))


def moment_residual_of(Y: np.ndarray, Z: np.ndarray, lam: np.ndarray) -> float:
    """|| sorted eig(-i * -(Y+Z)) - lambda ||_2."""
    k = 1j * (Y + Z)
    w = mat3.eig_hermitian(0.5 * (k + mat3.dagger(k)))[0]
    return float(np.linalg.norm(w - lam))


def point_from_pair(Y: np.ndarray, Z: np.ndarray, seed: int = 0) -> ReducedPoint:
    """Wrap an arbitrary su(3) pair as the reduced point of its own orbit triple."""
    Y = 0.5 * (Y - mat3.dagger(Y))
    Z = 0.5 * (Z - mat3.dagger(Z))
    spec = OrbitSpec(
        mat3.su3_spectrum(-(Y + Z)), mat3.su3_spectrum(Y), mat3.su3_spectrum(Z)
    )
    return ReducedPoint(Y, Z, spec, moment_residual_of(Y, Z, spec.lam), seed=seed)


def _objective(Y, Z, lam):
    """f = ||eig(i(Y+Z)) - lam||^2 with its Riemannian gradient pair.

    The gradient of f under Y -> exp(t W) Y exp(-t W) is <W, i[Y, G]> with
    G = sum_k 2 r_k P_k over eigenprojectors of i(Y+Z); same G for Z.
    """
    k = 1j * (Y + Z)
    k = 0.5 * (k + mat3.dagger(k))
    w, v = mat3.eig_hermitian(k)
    r = w - lam
    f = float(r @ r)
    g = (v * (2.0 * r)) @ mat3.dagger(v)
    gy = 1j * (Y @ g - g @ Y)
    gz = 1j * (Z @ g - g @ Z)
    g2 = mat3.frob(gy) ** 2 + mat3.frob(gz) ** 2
    return f, gy, gz, g2


def _descend(Y, Z, lam, f_target):
    """Projected gradient descent on the orbit pair (retraction by expm)."""
    f, gy, gz, g2 = _objective(Y, Z, lam)
    step = 0.1 / (1.0 + np.sqrt(g2))
    for _ in range(_MAX_ITER):
        if f <= f_target:
            return Y, Z, f
        if g2 < _STALL_GRAD**2:
            return Y, Z, f
        accepted = False
        s = step
        while s > 1e-18:
            ey = mat3.expm_antihermitian(-s * gy)
            ez = mat3.expm_antihermitian(-s * gz)
            Yn = ey @ Y @ mat3.dagger(ey)
            Zn = ez @ Z @ mat3.dagger(ez)
            fn, gyn, gzn, g2n = _objective(Yn, Zn, lam)
            if fn <= f - 1e-4 * s * g2:
                Y, Z, f, gy, gz, g2 = Yn, Zn, fn, gyn, gzn, g2n
                step = s * 2.0
                accepted = True
                break
            s *= 0.5
        if not accepted:
            return Y, Z, f
    return Y, Z, f


def _snap_to_orbit(m: np.ndarray, spectrum: np.ndarray) -> np.ndarray:
    """Replace m by the nearest-in-gauge element with the exact spectrum."""
    _, u = mat3.eig_hermitian(-1j * m)
    return u @ np.diag(1j * spectrum) @ mat3.dagger(u)


def solve_moment(
    spec: OrbitSpec,
    rng_seed: int,
    tol: float = 1e-10,
    max_restarts: int = _DEFAULT_RESTARTS,
) -> ReducedPoint:
    """Find (Y, Z) on the orbits of (mu, nu) with eig(-iX) = lambda, X = -(Y+Z).

    Runs up to max_restarts descents from fresh Haar samples and returns the
    first that reaches moment_residual <= tol (restart order is fixed, so the
    output is deterministic in (spec, rng_seed)).  Raises Infeasible when all
    restarts stall above tol.
    """
    lam, mu, nu = spec.lam, spec.mu, spec.nu
    children = np.random.SeedSequence(rng_seed).spawn(max_restarts)
    best = np.inf
    f_target = (0.5 * tol) ** 2
    for child in children:
        rng = np.random.default_rng(child)
        Y0 = sample_like(mu, rng)
        Z0 = sample_like(nu, rng)
        Y, Z, f = _descend(Y0, Z0, lam, f_target)
        Y = _snap_to_orbit(Y, mu)
        Z = _snap_to_orbit(Z, nu)
        resid = moment_residual_of(Y, Z, lam)
        best = min(best, resid)
        if resid <= tol:
            return ReducedPoint(Y, Z, spec, resid, seed=rng_seed)
    raise Infeasible(best)


def sample_like(spectrum: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Orbit sample drawn from an existing generator (for solver restarts)."""
    u = haar_unitary(rng)
    m = u @ np.diag(1j * spectrum) @ mat3.dagger(u)
    return 0.5 * (m - mat3.dagger(m))


def gauge_transform(p: ReducedPoint, u: np.ndarray) -> ReducedPoint:
    """Conjugate Y and Z by one common unitary; stays in the same class."""
    Y = mat3.conjugate(p.Y, u)
    Z = mat3.conjugate(p.Z, u)
    return ReducedPoint(Y, Z, p.spec, moment_residual_of(Y, Z, p.spec.lam), seed=p.seed)


def random_gauge(p: ReducedPoint, rng_seed: int) -> ReducedPoint:
    """Conjugate by a random special-unitary matrix (gauge-invariance testing)."""
    rng = np.random.default_rng(rng_seed)
    return gauge_transform(p, special_unitary(rng))


def gauge_diagonalize_A(
    p: ReducedPoint, tol_gap: float = TOL_GAP
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Gauge in which Y-Z is diagonal.

    Returns (V, alpha_hat, S_gauged) with V^dagger (Y-Z) V = i diag(alpha_hat),
    alpha_hat real descending, and S_gauged = V^dagger (Y+Z) V.  Raises
    DegenerateA when the eigenvalue spacing of -i(Y-Z) is below tol_gap,
    which happens exactly as |H| approaches the admissible-interval boundary.
    """
    a = p.Y - p.Z
    alpha_hat, v = mat3.eig_hermitian(-1j * a)
    gap = min(alpha_hat[0] - alpha_hat[1], alpha_hat[1] - alpha_hat[2])
    if gap <= tol_gap:
        raise DegenerateA(f"eigenvalue gap {gap:.3e} of -i(Y-Z) is below {tol_gap:.1e}")
    s_gauged = mat3.dagger(v) @ (p.Y + p.Z) @ v
    return v, alpha_hat, s_gauged
