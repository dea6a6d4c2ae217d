"""Phase- and amplitude-damping channels acting on qubit A.

Both channels share ``K0 = |0><0| + eps |1><1|``; they differ in ``K1``:
``sqrt(1 - eps^2) |1><1|`` (phase damping) or ``sqrt(1 - eps^2) |0><1|``
(amplitude damping). ``eps = 1`` is the identity channel in both cases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from bellconc.linalg import I2
from bellconc.measures import clamped_sqrt
from bellconc.states import bell_phi_plus, check_density, maximally_mixed, pure_density, werner

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True)
class KrausChannel:
    kraus: tuple[np.ndarray, ...]
    label: str
    epsilon: float

    def __post_init__(self):
        ops = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if any(k.shape != (2, 2) for k in ops):
            raise ValueError("Kraus operators must be 2x2")
        total = sum(k.conj().T @ k for k in ops)
        err = float(np.max(np.abs(total - I2)))
        if err > COMPLETENESS_TOL:
            raise ValueError(f"Kraus completeness violated: max |sum K^dag K - 1| = {err:.3e}")
        object.__setattr__(self, "kraus", ops)


def _check_eps(eps: float) -> float:
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"channel parameter eps must lie in [0, 1], got {eps}")
    return float(eps)


def _check_p(p: float) -> float:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight p must lie in [0, 1], got {p}")
    return float(p)


def pd_channel(eps: float) -> KrausChannel:
    eps = _check_eps(eps)
    k0 = np.array([[1, 0], [0, eps]], dtype=complex)
    k1 = np.array([[0, 0], [0, math.sqrt(1.0 - eps * eps)]], dtype=complex)
    return KrausChannel((k0, k1), "pd", eps)


def ad_channel(eps: float) -> KrausChannel:
    eps = _check_eps(eps)
    k0 = np.array([[1, 0], [0, eps]], dtype=complex)
    k1 = np.array([[0, math.sqrt(1.0 - eps * eps)], [0, 0]], dtype=complex)
    return KrausChannel((k0, k1), "ad", eps)


CHANNELS = {"pd": pd_channel, "ad": ad_channel}


def apply_on_a(ch: KrausChannel, rho) -> np.ndarray:
    """sum_i (K_i x 1) rho (K_i x 1)^dag."""
    rho = check_density(rho)
    out = np.zeros((4, 4), dtype=complex)
    for k in ch.kraus:
        big = np.kron(k, I2)
        out += big @ rho @ big.conj().T
    return 0.5 * (out + out.conj().T)


def evolved_werner(kind: str, p: float, eps: float) -> np.ndarray:
    """Werner state with qubit A sent through the named channel."""
    if kind not in CHANNELS:
        raise ValueError(f"unknown channel kind {kind!r}; expected one of {sorted(CHANNELS)}")
    return apply_on_a(CHANNELS[kind](eps), werner(_check_p(p)))


def pd_closed_form(p: float, eps: float) -> tuple[float, float]:
    """(C, N) of the phase-damped Werner state."""
    p, eps = _check_p(p), _check_eps(eps)
    c = max(0.0, p * eps - (1.0 - p) / 2.0)
    n = clamped_sqrt(p * p * (1.0 + eps * eps) - 1.0)
    return c, n


def ad_closed_form(p: float, eps: float) -> tuple[float, float]:
    """(C, N) of the amplitude-damped Werner state."""
    p, eps = _check_p(p), _check_eps(eps)
    root = math.sqrt((1.0 - p) * (2.0 - eps * eps - p * eps * eps))
    c = max(0.0, p * eps - 0.5 * eps * root)
    n = clamped_sqrt(2.0 * p * p * eps * eps - 1.0)
    return c, n


def mnms(eps: float) -> np.ndarray:
    """Phase-damped Bell state; N = C = eps (upper edge of the inequality)."""
    return apply_on_a(pd_channel(eps), pure_density(bell_phi_plus()))


def mnes(eps: float) -> np.ndarray:
    """Amplitude-damped Bell state; C = eps, N on the lower edge of the inequality."""
    return apply_on_a(ad_channel(eps), pure_density(bell_phi_plus()))


def ncms(eps: float) -> np.ndarray:
    """Amplitude-damped maximally mixed state; its correlation matrix vanishes."""
    return apply_on_a(ad_channel(eps), maximally_mixed())


def ad_diagonal_boundary_excess(steps: int = 201, curve_points: int = 20001) -> tuple[float, float, float]:
    """Largest N of an AD grid point above the p = eps curve at equal concurrence.

    Returns ``(excess, p, eps)`` for the worst grid point. An excess of ~0 would
    mean the p = eps slice bounds the AD region from above.
    """
    t = np.linspace(0.0, 1.0, curve_points)
    curve = np.array([ad_closed_form(x, x) for x in t])
    grid = np.linspace(0.0, 1.0, steps)
    best = (-math.inf, math.nan, math.nan)
    for p in grid:
        for eps in grid:
            c, n = ad_closed_form(p, eps)
            excess = n - float(np.interp(c, curve[:, 0], curve[:, 1]))
            if excess > best[0]:
                best = (excess, float(p), float(eps))
    return best
