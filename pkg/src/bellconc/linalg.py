"""Small dense linear algebra for 2x2 and 4x4 complex matrices.

Basis order is |00>, |01>, |10>, |11> with qubit A the left (most
significant) Kronecker factor.

Eigenvalue cleanup policy, used everywhere a PSD spectrum is consumed:

- below ``-NEG_TOL`` the matrix is rejected,
- in ``[-NEG_TOL, ZERO_SNAP]`` the eigenvalue is set to exactly 0.

Snapping round-off eigenvalues to zero keeps square roots of rank-deficient
states exact; ``sqrt(1e-17)`` would otherwise inject ~3e-9 errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NEG_TOL = 1e-10
HERM_TOL = 1e-10
ZERO_SNAP = 1e-14

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SX, SY, SZ)
SY_SY = np.kron(SY, SY)


class NotHermitianError(ValueError):
    pass


class NotPSDError(ValueError):
    pass


@dataclass(frozen=True)
class EigenResult:
    """Eigenvalues in non-increasing order, eigenvectors as matching columns."""

    values: np.ndarray
    vectors: np.ndarray | None = None


def kron(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"kron expects two 2x2 matrices, got {a.shape} and {b.shape}")
    return np.kron(a, b)


def max_asymmetry(h: np.ndarray) -> float:
    return float(np.max(np.abs(h - h.conj().T)))


def _check_square(h) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    return h


def _check_hermitian(h) -> np.ndarray:
    h = _check_square(h)
    asym = max_asymmetry(h)
    if asym > HERM_TOL:
        raise NotHermitianError(f"matrix is not Hermitian: max |H - H^dag| = {asym:.3e}")
    return h


def hermitian_eig(h, want_vectors: bool = False) -> EigenResult:
    """Spectrum of a Hermitian matrix, largest eigenvalue first.

    Backed by LAPACK (``numpy.linalg.eigh``); :func:`jacobi_eigh` is the
    dependency-free equivalent and is cross-checked against it in the tests.
    """
    h = _check_hermitian(h)
    h = 0.5 * (h + h.conj().T)
    if not want_vectors:
        return EigenResult(np.linalg.eigvalsh(h)[::-1].copy())
    w, v = np.linalg.eigh(h)
    return EigenResult(w[::-1].copy(), v[:, ::-1].copy())


def jacobi_eigh(h, tol: float = 1e-13, max_sweeps: int = 100) -> EigenResult:
    """Cyclic Jacobi diagonalization of a complex Hermitian matrix.

    Each (p, q) rotation first removes the phase of ``a[p, q]`` and then applies
    the real symmetric Jacobi rotation. Iterates until the largest off-diagonal
    modulus drops below ``tol * max(1, ||h||_max)``.
    """
    a = _check_hermitian(h).copy()
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    q_acc = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(a))))
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a)))
        if off.max(initial=0.0) < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = abs(a[p, q])
                if g < 1e-300:
                    continue
                phase = a[p, q] / g
                theta = 0.5 * math.atan2(2.0 * g, a[p, p].real - a[q, q].real)
                c, s = math.cos(theta), math.sin(theta)
                rot = np.array([[c, -s], [phase.conjugate() * s, phase.conjugate() * c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                q_acc[:, idx] = q_acc[:, idx] @ rot
    values = np.diag(a).real
    order = np.argsort(-values, kind="stable")
    return EigenResult(values[order], q_acc[:, order])


def _clean_psd_spectrum(values: np.ndarray) -> np.ndarray:
    lowest = float(values.min())
    if lowest < -NEG_TOL:
        raise NotPSDError(f"matrix has eigenvalue {lowest:.3e} below -{NEG_TOL:g}")
    return np.where(values <= ZERO_SNAP, 0.0, values)


def psd_factor(m) -> np.ndarray:
    """Return ``W = V sqrt(D)`` with ``m = W W^dag``."""
    eig = hermitian_eig(m, want_vectors=True)
    d = _clean_psd_spectrum(eig.values)
    return eig.vectors * np.sqrt(d)


def psd_sqrt(m) -> np.ndarray:
    """Hermitian PSD square root."""
    eig = hermitian_eig(m, want_vectors=True)
    d = _clean_psd_spectrum(eig.values)
    s = (eig.vectors * np.sqrt(d)) @ eig.vectors.conj().T
    return 0.5 * (s + s.conj().T)


def spin_flip(rho) -> np.ndarray:
    """(sy x sy) rho* (sy x sy)."""
    rho = np.asarray(rho, dtype=complex)
    return SY_SY @ rho.conj() @ SY_SY


def wootters_singular_values(rho) -> np.ndarray:
    """Square roots of the eigenvalues of rho * spin_flip(rho), descending.

    With ``rho = W W^dag`` the matrix ``tau = W^T (sy x sy) W`` satisfies
    ``tau^dag tau ~ rho rho~`` (similar), so its singular values are the
    ``sqrt(lambda_n)`` directly, at full absolute precision.
    """
    w = psd_factor(rho)
    tau = w.T @ SY_SY @ w
    return np.linalg.svd(tau, compute_uv=False)


def wootters_lambdas(rho) -> np.ndarray:
    """Eigenvalues of the non-Hermitian ``rho * spin_flip(rho)``, descending.

    Equal to the spectrum of the Hermitian ``sqrt(rho) rho~ sqrt(rho)``.
    """
    s = wootters_singular_values(rho)
    return s * s
