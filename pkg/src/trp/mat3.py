"""Fixed-shape 3x3 complex matrix algebra.

Everything downstream works with plain numpy arrays of shape (3, 3) and
dtype complex128.  The eigensolver is closed form (trigonometric roots of
the characteristic cubic) with one inverse-iteration refinement per
eigenpair, which is fast and accurate enough at this fixed size.
"""

from __future__ import annotations

import numpy as np

from .errors import NotHermitian, NotUnitary

# Absolute entrywise tolerance for structural predicates (hermiticity,
# unitarity, tracelessness): an order of magnitude above double-precision
# accumulation for 3x3 work.
TOL_STRUCTURAL = 1e-10

EYE3 = np.eye(3, dtype=complex)
ZERO3 = np.zeros((3, 3), dtype=complex)


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def frob(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def hermitian_residual(m: np.ndarray) -> float:
    return max_abs(m - dagger(m))


def antihermitian_residual(m: np.ndarray) -> float:
    return max_abs(m + dagger(m))


def unitary_residual(u: np.ndarray) -> float:
    return max_abs(u @ dagger(u) - EYE3)


def is_su3(m: np.ndarray, tol: float = TOL_STRUCTURAL) -> bool:
    """True iff m is anti-hermitian and traceless within tol."""
    return antihermitian_residual(m) <= tol and abs(complex(np.trace(m))) <= tol


def det3(m: np.ndarray) -> complex:
    """Determinant by cofactor expansion (fixed operation order, no LU)."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return complex(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))


def conjugate(m: np.ndarray, u: np.ndarray, tol: float = TOL_STRUCTURAL) -> np.ndarray:
    """Adjoint action u m u^dagger; u must be unitary within tol."""
    if unitary_residual(u) > tol:
        raise NotUnitary(f"unitarity residual {unitary_residual(u):.3e} exceeds {tol:.1e}")
    return u @ m @ dagger(u)


def _eigvals3(a: np.ndarray) -> np.ndarray:
    """Descending real eigenvalues of a hermitian 3x3, trigonometric form."""
    q = np.trace(a).real / 3.0
    p1 = abs(a[0, 1]) ** 2 + abs(a[0, 2]) ** 2 + abs(a[1, 2]) ** 2
    d0 = a[0, 0].real - q
    d1 = a[1, 1].real - q
    d2 = a[2, 2].real - q
    p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1
    if p2 == 0.0:
        return np.array([q, q, q])
    p = np.sqrt(p2 / 6.0)
    b = (a - q * EYE3) / p
    r = det3(b).real / 2.0
    r = min(1.0, max(-1.0, r))
    phi = np.arccos(r) / 3.0
    e1 = q + 2.0 * p * np.cos(phi)
    e3 = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    e2 = 3.0 * q - e1 - e3
    return np.array([e1, e2, e3])


def _project_out(v: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    for u in basis:
        v = v - u * (u.conj() @ v)
    return v


def _start_vector(shifted: np.ndarray, scale: float, avoid: list[np.ndarray]) -> np.ndarray:
    """Deterministic starting vector for inverse iteration on `shifted`.

    Candidates, in order of reliability: cross products of row pairs (exact
    null vector when the rank is 2), complements of the largest row (rank 1),
    bare basis vectors (rank 0).  The first candidate that survives
    projection against `avoid` with enough norm wins.
    """
    rows = [shifted[0], shifted[1], shifted[2]]
    cands: list[np.ndarray] = []
    crosses = [np.cross(rows[i], rows[j]) for i, j in ((0, 1), (0, 2), (1, 2))]
    floor = 1e-12 * scale * scale
    for c in sorted(crosses, key=lambda c: -float(np.linalg.norm(c))):
        n = float(np.linalg.norm(c))
        if n > floor:
            cands.append(c / n)
    row_norms = [float(np.linalg.norm(r)) for r in rows]
    k = int(np.argmax(row_norms))
    if row_norms[k] > 1e-12 * scale:
        u = rows[k].conj() / row_norms[k]
        for m in np.argsort(np.abs(u)):
            e = np.zeros(3, dtype=complex)
            e[m] = 1.0
            w = e - u * (u.conj() @ e)
            n = float(np.linalg.norm(w))
            if n > 1e-3:
                cands.append(w / n)
    for m in range(3):
        e = np.zeros(3, dtype=complex)
        e[m] = 1.0
        cands.append(e)
    for c in cands:
        w = _project_out(c, avoid)
        n = float(np.linalg.norm(w))
        if n > 1e-3:
            return w / n
    return cands[-1]


def _phase_fix(v: np.ndarray) -> np.ndarray:
    j = int(np.argmax(np.abs(v)))
    ph = v[j] / abs(v[j])
    return v * ph.conjugate()


def eig_hermitian(m: np.ndarray, tol: float = TOL_STRUCTURAL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a hermitian 3x3 matrix.

    Returns (w, u) with w the real eigenvalues sorted descending and u
    unitary with u @ diag(w) @ u^dagger reconstructing m.  Degenerate
    eigenvalues get an arbitrary orthonormal basis of their eigenspace.

    Raises NotHermitian if the symmetry residual exceeds tol.
    """
    m = np.asarray(m, dtype=complex)
    scale = max_abs(m)
    if hermitian_residual(m) > tol * (1.0 + scale):
        raise NotHermitian(
            f"hermitian residual {hermitian_residual(m):.3e} exceeds {tol:.1e}"
        )
    if scale == 0.0:
        return np.zeros(3), EYE3.copy()
    a = 0.5 * (m + dagger(m))
    w = _eigvals3(a)
    cluster = 1e-8 * (1.0 + scale)
    target = 5e-13 * (1.0 + frob(a))

    u = None
    for _sweep in range(3):
        cols: list[np.ndarray] = []
        for k in range(3):
            if u is None:
                shifted = a - w[k] * EYE3
                avoid = [cols[j] for j in range(k) if abs(w[j] - w[k]) <= cluster]
                v = _start_vector(shifted, scale, avoid)
            else:
                v = u[:, k]
                avoid = [cols[j] for j in range(k) if abs(w[j] - w[k]) <= cluster]
            eps = 1e-14 * (1.0 + scale)
            for _try in range(3):
                try:
                    y = np.linalg.solve(a - (w[k] + eps) * EYE3, v)
                    break
                except np.linalg.LinAlgError:
                    eps *= 1000.0
            else:
                y = v
            v = y / np.linalg.norm(y)
            v = _project_out(v, avoid)
            n = float(np.linalg.norm(v))
            if n < 1e-3:
                v = _start_vector(a - w[k] * EYE3, scale, avoid)
            else:
                v = v / n
            cols.append(v)
        # modified Gram-Schmidt clean-up, then Rayleigh-quotient eigenvalues
        for k in range(3):
            cols[k] = _project_out(cols[k], cols[:k])
            cols[k] = cols[k] / np.linalg.norm(cols[k])
        u = np.column_stack([_phase_fix(v) for v in cols])
        w = np.array([float((u[:, k].conj() @ (a @ u[:, k])).real) for k in range(3)])
        order = np.argsort(-w, kind="stable")
        w = w[order]
        u = u[:, order]
        if max_abs(a - (u * w) @ dagger(u)) <= target:
            break
    return w, u


def expm_antihermitian(om: np.ndarray) -> np.ndarray:
    """Matrix exponential of an anti-hermitian 3x3 via eigendecomposition."""
    h = 0.5 * (om - dagger(om))
    w, u = eig_hermitian(-1j * h)
    return (u * np.exp(1j * w)) @ dagger(u)


def su3_spectrum(m: np.ndarray, tol: float = TOL_STRUCTURAL) -> np.ndarray:
    """Descending real spectrum of -i*m for anti-hermitian m."""
    return eig_hermitian(-1j * m, tol=tol)[0]
