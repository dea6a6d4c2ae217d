"""Werner states under a global unitary: rho_WU = U rho_W U^dag.

With ``|phi> = U |phi+>`` the rotated state is ``p |phi><phi| + (1 - p) 1/4``,
so its concurrence and nonlocality depend on ``U`` only through ``C(|phi>)``:

    N(rho_WU) = sqrt(max{0, p^2 (1 + C(|phi>)^2) - 1})
    C(rho_WU) = max{0, p C(|phi>) - (1 - p) / 2}
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from bellconc.linalg import wootters_lambdas
from bellconc.measures import clamped_sqrt, concurrence_pure, correlation_matrix
from bellconc.states import (
    bell_phi_plus,
    check_density,
    check_pure,
    check_unitary,
    maximally_mixed,
    pure_density,
    werner,
)

EIGEN_TOL = 1e-9
CASE_TOL = 1e-12


def werner_closed_form(p: float) -> tuple[float, float]:
    """(C, N) of the Werner state with weight p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight p must lie in [0, 1], got {p}")
    return max(0.0, (3.0 * p - 1.0) / 2.0), clamped_sqrt(2.0 * p * p - 1.0)


def werner_n_of_c(c: float) -> float:
    """Nonlocality of the Werner state expressed through its concurrence."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    return clamped_sqrt(8.0 * c + 8.0 * c * c - 7.0) / 3.0


def violation_threshold_c(p: float) -> float:
    """Concurrence above which rho_WU violates CHSH, for fixed weight p > 1/sqrt(2)."""
    if not 1.0 / math.sqrt(2.0) < p <= 1.0:
        raise ValueError(f"no CHSH violation is possible for p <= 1/sqrt(2); got p = {p}")
    return math.sqrt(1.0 - p * p) - (1.0 - p) / 2.0


@dataclass(frozen=True)
class WernerUnitaryCase:
    p: float
    u: np.ndarray
    phi: np.ndarray
    rho_wu: np.ndarray


def make_case(p: float, u) -> WernerUnitaryCase:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight p must lie in [0, 1], got {p}")
    u = check_unitary(u, 4)
    phi = u @ bell_phi_plus()
    rho = u @ werner(p) @ u.conj().T
    rho = check_density(0.5 * (rho + rho.conj().T))
    mixture = p * np.outer(phi, phi.conj()) + (1.0 - p) * maximally_mixed()
    dev = float(np.max(np.abs(rho - mixture)))
    if dev > CASE_TOL:
        raise RuntimeError(f"U rho_W U^dag differs from p|phi><phi| + (1-p)/4 by {dev:.3e}")
    return WernerUnitaryCase(float(p), u, phi, rho)


def property1_predicted_n(case: WernerUnitaryCase) -> float:
    n_phi = concurrence_pure(case.phi)  # N = C for pure states
    return clamped_sqrt(case.p**2 * (1.0 + n_phi**2) - 1.0)


def property2_predicted_c(case: WernerUnitaryCase) -> float:
    return max(0.0, case.p * concurrence_pure(case.phi) - (1.0 - case.p) / 2.0)


def correlation_scaling_deviation(case: WernerUnitaryCase) -> float:
    """max |T(rho_WU) - p T(|phi><phi|)|."""
    t_mixed = correlation_matrix(case.rho_wu)
    t_pure = correlation_matrix(pure_density(case.phi))
    return float(np.max(np.abs(t_mixed - case.p * t_pure)))


@dataclass
class EigenstructureReport:
    lambdas: np.ndarray
    lambda_34_expected: float
    sum_12_expected: float
    product_12_expected: float
    deviations: dict[str, float] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_proof_eigenstructure(case: WernerUnitaryCase, tol: float = EIGEN_TOL) -> EigenstructureReport:
    """Verify the spectrum of rho_WU rho_WU~ against its predicted structure.

    Two eigenvalues equal ``(1-p)^2/16``; the other two have sum
    ``p^2 C^2 + (1+3p)(1-p)/8`` and product ``[(1+3p)(1-p)/16]^2``.
    Failing identities are listed by name in ``failures``.
    """
    p = case.p
    lam = wootters_lambdas(case.rho_wu)
    c_phi = concurrence_pure(case.phi)
    l34 = (1.0 - p) ** 2 / 16.0
    s12 = p * p * c_phi * c_phi + (1.0 + 3.0 * p) * (1.0 - p) / 8.0
    p12 = ((1.0 + 3.0 * p) * (1.0 - p) / 16.0) ** 2
    report = EigenstructureReport(lam, l34, s12, p12)
    report.deviations = {
        "lambda3": abs(lam[2] - l34),
        "lambda4": abs(lam[3] - l34),
        "lambda1+lambda2": abs(lam[0] + lam[1] - s12),
        "lambda1*lambda2": abs(lam[0] * lam[1] - p12),
    }
    report.failures = [name for name, dev in report.deviations.items() if not dev <= tol]
    return report


# --- constructing U with a prescribed |phi> ---------------------------------


def schmidt_state(c: float) -> np.ndarray:
    """cos(t)|00> + sin(t)|11> with sin(2t) = c, so its concurrence is c."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c}")
    t = 0.5 * math.asin(c)
    return np.array([math.cos(t), 0, 0, math.sin(t)], dtype=complex)


def _complete_basis(v: np.ndarray) -> np.ndarray:
    """Unitary whose first column is v (Gram-Schmidt over v, e0..e3)."""
    cols = [v]
    for e in np.eye(4, dtype=complex):
        w = e - sum(np.vdot(c, e) * c for c in cols)
        norm = np.linalg.norm(w)
        if norm > 1e-8:
            cols.append(w / norm)
        if len(cols) == 4:
            break
    return np.column_stack(cols)


def unitary_mapping_bell_to(phi) -> np.ndarray:
    """A 4x4 unitary U with U|phi+> = |phi>."""
    phi = check_pure(phi)
    src = _complete_basis(bell_phi_plus())
    dst = _complete_basis(phi)
    return dst @ src.conj().T
