"""Concurrence, CHSH nonlocality and the inequality linking them.

All square roots of the form ``sqrt(max{0, x})`` go through :func:`clamped_sqrt`,
which treats radicands at or below ``RADICAND_FLOOR`` as exact zeros. Near the
onset of a square-root kink a round-off of 1e-16 in ``x`` would otherwise
become a 1e-8 error in the result, and two mathematically identical routes
(closed form vs direct evolution) could disagree at that level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from bellconc.linalg import PAULIS, hermitian_eig, wootters_singular_values
from bellconc.states import bell_basis, check_density, check_pure

RADICAND_FLOOR = 1e-14
VIOLATION_TOL = 1e-9
BELL_DIAGONAL_TOL = 1e-8
CHSH_FORM_TOL = 1e-10


def clamped_sqrt(x: float) -> float:
    """sqrt(max{0, x}) with radicands <= RADICAND_FLOOR mapped to 0."""
    return math.sqrt(x) if x > RADICAND_FLOOR else 0.0


# --- concurrence ------------------------------------------------------------


def concurrence_pure(psi) -> float:
    """|<psi|psi~>| = 2 |a00 a11 - a01 a10|."""
    a = check_pure(psi)
    return min(1.0, 2.0 * abs(a[0] * a[3] - a[1] * a[2]))


def concurrence(rho) -> float:
    """Wootters concurrence max{0, s1 - s2 - s3 - s4}, s_n = sqrt(lambda_n)."""
    return _concurrence(check_density(rho))


def _concurrence(rho) -> float:
    s = wootters_singular_values(rho)
    return float(min(1.0, max(0.0, s[0] - s[1] - s[2] - s[3])))


class NotBellDiagonalError(ValueError):
    pass


def concurrence_bell_diagonal(rho) -> float:
    """max{0, 2 lambda_max - 1}, valid only for states diagonal in the Bell basis."""
    rho = check_density(rho)
    b = bell_basis()
    in_bell = b.conj().T @ rho @ b
    off = float(np.max(np.abs(in_bell - np.diag(np.diag(in_bell)))))
    if off > BELL_DIAGONAL_TOL:
        raise NotBellDiagonalError(f"state is not Bell-diagonal: max off-diagonal in Bell basis = {off:.3e}")
    lam_max = hermitian_eig(rho).values[0]
    return float(max(0.0, 2.0 * lam_max - 1.0))


# --- correlations and CHSH --------------------------------------------------


def correlation_matrix(rho) -> np.ndarray:
    """T[m, n] = Tr(rho sigma_m x sigma_n), m, n over (x, y, z)."""
    return _correlation_matrix(check_density(rho))


def _correlation_matrix(rho) -> np.ndarray:
    t = np.empty((3, 3))
    for m, sm in enumerate(PAULIS):
        for n, sn in enumerate(PAULIS):
            # Tr(rho O) = sum_ij rho_ij O_ji
            t[m, n] = np.sum(rho * np.kron(sm, sn).T).real
    return t


def m_value(rho) -> float:
    """Sum of the two largest eigenvalues of T^T T."""
    return _m_value(check_density(rho))


def _m_value(rho) -> float:
    t = _correlation_matrix(rho)
    u = hermitian_eig(t.T @ t).values
    return float(max(0.0, u[0] + u[1]))


def nonlocality_from_m(m: float) -> float:
    return clamped_sqrt(m - 1.0)


def bell_nonlocality(rho) -> float:
    """sqrt(max{0, M - 1}); positive iff the CHSH inequality can be violated."""
    return min(1.0, nonlocality_from_m(m_value(rho)))


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (3,) or abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError(f"{name} must be a real unit 3-vector, got {v!r}")
    return v


@dataclass(frozen=True)
class ChshSetting:
    """Measurement directions (Bloch vectors) for A, A' and B, B'."""

    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            object.__setattr__(self, name, _unit(getattr(self, name), name))


def _dot_sigma(v) -> np.ndarray:
    return v[0] * PAULIS[0] + v[1] * PAULIS[1] + v[2] * PAULIS[2]


def chsh_operator(s: ChshSetting) -> np.ndarray:
    return np.kron(_dot_sigma(s.a), _dot_sigma(s.b + s.b_prime)) + np.kron(
        _dot_sigma(s.a_prime), _dot_sigma(s.b - s.b_prime)
    )


def chsh_value(rho, s: ChshSetting) -> float:
    """<B_CHSH>, evaluated as Tr(rho B) and cross-checked against the T form."""
    rho = check_density(rho)
    direct = float(np.sum(rho * chsh_operator(s).T).real)
    t = correlation_matrix(rho)
    via_t = float(s.a @ t @ (s.b + s.b_prime) + s.a_prime @ t @ (s.b - s.b_prime))
    if abs(direct - via_t) > CHSH_FORM_TOL:
        raise RuntimeError(f"CHSH trace form {direct!r} and correlation form {via_t!r} disagree")
    return direct


def _direction(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta)], axis=-1)


def _angles(d):
    return np.arccos(np.clip(d[..., 2], -1.0, 1.0)), np.arctan2(d[..., 1], d[..., 0])


def _best_a_value(t: np.ndarray, x: np.ndarray):
    """CHSH value for b, b' given as angles x[..., 4], with a and a' chosen optimally.

    For fixed ``b, b'`` the value ``a.T(b+b') + a'.T(b-b')`` is linear in each of
    ``a`` and ``a'``, so the best unit vectors are ``T(b+-b') / |T(b+-b')|``
    (Cauchy-Schwarz) and the value is ``|T(b+b')| + |T(b-b')|``.
    """
    d = _direction(x[..., 0::2], x[..., 1::2])  # (..., 2, 3)
    b, bp = d[..., 0, :], d[..., 1, :]
    return np.linalg.norm((b + bp) @ t.T, axis=-1) + np.linalg.norm((b - bp) @ t.T, axis=-1)


def _rotation(axis: int, angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    i, j = [k for k in range(3) if k != axis]
    r = np.eye(3)
    r[i, i], r[i, j], r[j, i], r[j, j] = c, -s, s, c
    return r


_STENCIL = np.array([(i, j) for i in (-1, 0, 1) for j in (-1, 0, 1) if i or j], dtype=float)


def _neighbours(x: np.ndarray, step: float) -> np.ndarray:
    """Trial (b, b') around x: each direction alone on its 8-point (polar, azimuth)
    stencil, plus rigid rotations of the pair about the x, y and z axes.

    The rigid moves matter when two singular values of T nearly coincide: the
    optimum then sits at the end of a flat ridge along which b and b' must
    turn together, and single-direction moves stall on it.
    """
    trials = []
    for v in range(2):
        az_step = step / max(abs(math.sin(x[2 * v])), math.sin(step))
        block = np.repeat(x[None, :], len(_STENCIL), axis=0)
        block[:, 2 * v] += _STENCIL[:, 0] * step
        block[:, 2 * v + 1] += _STENCIL[:, 1] * az_step
        trials.append(block)
    dirs = _direction(x[0::2], x[1::2])
    for axis in range(3):
        for sign in (1.0, -1.0):
            theta, phi = _angles(dirs @ _rotation(axis, sign * step).T)
            trials.append(np.column_stack([theta, phi]).reshape(1, 4))
    return np.concatenate(trials)


def chsh_brute_max(rho, coarse_steps: int = 12, refine_rounds: int = 6, starts: int = 4) -> float:
    """Maximize |<B_CHSH>| by direct search over the measurement directions.

    The value is ``a.T(b+b') + a'.T(b-b')``; for fixed ``b, b'`` the best ``a``
    and ``a'`` follow from Cauchy-Schwarz (see :func:`_best_a_value`), so only
    ``b, b'`` are searched. The coarse stage scans all pairs from a grid of
    ``coarse_steps`` polar x ``coarse_steps`` azimuthal directions; the best
    ``starts`` pairs are then refined by steepest-ascent pattern search (see
    :func:`_neighbours`), halving the step each round. No eigen-decomposition
    is involved, so the result is an independent check of the closed-form
    maximum ``2 sqrt(M)``. The returned value is attained by an explicit
    setting, so it never exceeds the true maximum.
    """
    if coarse_steps < 8:
        raise ValueError("coarse_steps must be >= 8")
    if refine_rounds < 2:
        raise ValueError("refine_rounds must be >= 2")
    t = correlation_matrix(rho)

    # midpoint polar grid: uniform over [0, pi] and avoids the poles
    thetas = (np.arange(coarse_steps) + 0.5) * (np.pi / coarse_steps)
    phis = np.arange(coarse_steps) * (2.0 * np.pi / coarse_steps)
    th_grid, ph_grid = np.meshgrid(thetas, phis, indexing="ij")
    angles = np.column_stack([th_grid.ravel(), ph_grid.ravel()])
    k = len(angles)
    pairs = np.concatenate([np.repeat(angles, k, axis=0), np.tile(angles, (k, 1))], axis=1)
    total = _best_a_value(t, pairs)
    order = np.argsort(-total, kind="stable")[:starts]

    overall = -math.inf
    for flat in order:
        x, best = pairs[flat], float(total[flat])
        step = np.pi / coarse_steps
        for _ in range(refine_rounds):
            for _iter in range(1000):
                trials = _neighbours(x, step)
                vals = _best_a_value(t, trials)
                j = int(np.argmax(vals))
                if vals[j] <= best + 1e-15:
                    break
                x, best = trials[j], float(vals[j])
            step *= 0.5
        overall = max(overall, best)
    return abs(overall)


# --- the inequality ---------------------------------------------------------


def inequality_bounds(c: float) -> tuple[float, float]:
    """(sqrt(max{0, 2c^2 - 1}), c): the admissible range of N at concurrence c."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    return clamped_sqrt(2.0 * c * c - 1.0), c


@dataclass(frozen=True)
class CorrelationReport:
    concurrence: float
    m_value: float
    nonlocality: float
    lower_bound: float
    upper_bound: float
    violates_inequality: bool

    @property
    def lower_margin(self) -> float:
        return self.nonlocality - self.lower_bound

    @property
    def upper_margin(self) -> float:
        return self.upper_bound - self.nonlocality


def analyze(rho) -> CorrelationReport:
    rho = check_density(rho)
    c = _concurrence(rho)
    m = _m_value(rho)
    n = min(1.0, nonlocality_from_m(m))
    lo, hi = inequality_bounds(c)
    violates = n < lo - VIOLATION_TOL or n > hi + VIOLATION_TOL
    return CorrelationReport(c, m, n, lo, hi, violates)
