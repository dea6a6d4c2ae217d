"""Two-qubit states: named states, the Werner family, random sampling, JSON I/O.

States are plain ``numpy`` arrays: density matrices are 4x4 complex, pure
states are length-4 complex vectors. :func:`check_density` enforces the
density-matrix invariants (Hermitian, unit trace, PSD, all at 1e-10).

Random sampling goes through :class:`RngStream`: numpy's PCG64 bit generator
seeded from ``SeedSequence(seed, spawn_key=(stream,))``; uniforms come from
``Generator.random`` (53-bit doubles) and Gaussians from Box-Muller, so every
sample is a fixed function of ``(seed, stream)``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from bellconc.linalg import HERM_TOL, I2, NEG_TOL, SX, SY, SZ, hermitian_eig, kron, max_asymmetry

TRACE_TOL = 1e-10
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10


class InvalidStateError(ValueError):
    """A matrix or vector failed a state invariant; the message names it."""


class RngStream:
    """Deterministic random stream identified by ``(seed, stream)``.

    A stream is single-owner. Parallel workers use one stream each.
    """

    def __init__(self, seed: int, stream: int = 0):
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        if stream < 0:
            raise ValueError(f"stream index must be non-negative, got {stream}")
        self.seed = int(seed)
        self.stream = int(stream)
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def uniform(self, n: int | None = None):
        """Uniform doubles in [0, 1)."""
        return self._gen.random(n)

    def complex_normal(self, shape) -> np.ndarray:
        """Independent complex Gaussians, real and imaginary parts each N(0, 1)."""
        n = int(np.prod(shape))
        u = self._gen.random(2 * n)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))  # 1 - u in (0, 1]
        angle = 2.0 * np.pi * u[1::2]
        z = radius * (np.cos(angle) + 1j * np.sin(angle))
        return z.reshape(shape)


# --- validation -------------------------------------------------------------


def check_density(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"density matrix must be 4x4, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise InvalidStateError("density matrix has non-finite entries")
    asym = max_asymmetry(rho)
    if asym > HERM_TOL:
        raise InvalidStateError(f"Hermiticity violated: max |rho - rho^dag| = {asym:.3e}")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"unit trace violated: Tr(rho) = {tr!r}")
    lowest = hermitian_eig(rho).values[-1]
    if lowest < -NEG_TOL:
        raise InvalidStateError(f"positivity violated: min eigenvalue = {lowest:.3e}")
    return rho


def check_pure(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (4,):
        raise InvalidStateError(f"pure state must have 4 amplitudes, got shape {psi.shape}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise InvalidStateError(f"unit norm violated: |psi| = {norm!r}")
    return psi


def check_unitary(u, dim: int | None = None) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or (dim is not None and u.shape[0] != dim):
        raise ValueError(f"expected a {dim}x{dim} unitary, got shape {u.shape}")
    err = float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
    if err > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary: max |U^dag U - 1| = {err:.3e}")
    return u


# --- named states -----------------------------------------------------------


def bell_phi_plus() -> np.ndarray:
    return np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def bell_basis() -> np.ndarray:
    """Columns phi+, phi-, psi+, psi- built from phi+ by Paulis on qubit A."""
    phi = bell_phi_plus()
    cols = [phi, kron(SZ, I2) @ phi, kron(SX, I2) @ phi, -1j * (kron(SY, I2) @ phi)]
    return np.column_stack(cols)


def basis_state(bits: str) -> np.ndarray:
    """Computational basis vector, e.g. ``basis_state("01")``."""
    if len(bits) != 2 or set(bits) - {"0", "1"}:
        raise ValueError(f"expected two bits like '01', got {bits!r}")
    psi = np.zeros(4, dtype=complex)
    psi[int(bits, 2)] = 1.0
    return psi


def pure_density(psi) -> np.ndarray:
    psi = check_pure(psi)
    return np.outer(psi, psi.conj())


def maximally_mixed() -> np.ndarray:
    return np.eye(4, dtype=complex) / 4


def werner(p: float) -> np.ndarray:
    """p |phi+><phi+| + (1 - p) 1/4."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight p must lie in [0, 1], got {p}")
    return p * pure_density(bell_phi_plus()) + (1.0 - p) * maximally_mixed()


def purity(rho) -> float:
    rho = check_density(rho)
    return float(np.real(np.vdot(rho.conj().T, rho)))


# --- random sampling --------------------------------------------------------


def random_pure(rng: RngStream) -> np.ndarray:
    """Haar-random pure state: normalized complex Gaussian 4-vector."""
    while True:
        z = rng.complex_normal(4)
        norm = np.linalg.norm(z)
        if norm >= 1e-12:
            return z / norm


def random_mixed(rank: int, rng: RngStream) -> np.ndarray:
    """Induced-measure random state G G^dag / Tr(G G^dag), G a 4 x rank Ginibre matrix.

    rank=4 is the Hilbert-Schmidt measure; rank=1 gives Haar pure states.
    """
    if rank not in (1, 2, 3, 4):
        raise ValueError(f"rank must be 1, 2, 3 or 4, got {rank}")
    g = rng.complex_normal((4, rank))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_unitary(dim: int, rng: RngStream) -> np.ndarray:
    """Haar-random unitary via QR of a Ginibre matrix with R's phases divided out."""
    if dim not in (2, 4):
        raise ValueError(f"dim must be 2 or 4, got {dim}")
    z = rng.complex_normal((dim, dim)) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def apply_local_unitary(rho, ua, ub) -> np.ndarray:
    rho = check_density(rho)
    u = kron(check_unitary(ua, 2), check_unitary(ub, 2))
    out = u @ rho @ u.conj().T
    return 0.5 * (out + out.conj().T)


# --- JSON -------------------------------------------------------------------


def state_to_json(rho) -> dict:
    rho = check_density(rho)
    return {"matrix": [[[float(z.real), float(z.imag)] for z in row] for row in rho]}


def state_from_json(obj) -> np.ndarray:
    """Parse ``{"matrix": 4x4 of [re, im]}`` and validate it as a density matrix."""
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise InvalidStateError('state JSON must be an object with a "matrix" field')
    rows = obj["matrix"]
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidStateError(f"matrix entries must be [re, im] number pairs: {exc}") from None
    if arr.shape != (4, 4, 2):
        raise InvalidStateError(f"matrix must be 4 rows x 4 columns of [re, im], got shape {arr.shape}")
    return check_density(arr[..., 0] + 1j * arr[..., 1])


def save_state(rho, path) -> None:
    Path(path).write_text(json.dumps(state_to_json(rho), indent=2) + "\n")


def load_state(path) -> np.ndarray:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidStateError(f"malformed JSON: {exc}") from None
    return state_from_json(obj)
