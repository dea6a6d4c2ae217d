import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bellconc.channels import evolved_werner
from bellconc.measures import (
    ChshSetting,
    NotBellDiagonalError,
    analyze,
    bell_nonlocality,
    chsh_brute_max,
    chsh_value,
    clamped_sqrt,
    concurrence,
    concurrence_bell_diagonal,
    concurrence_pure,
    correlation_matrix,
    inequality_bounds,
    m_value,
)
from bellconc.states import (
    RngStream,
    apply_local_unitary,
    basis_state,
    bell_basis,
    bell_phi_plus,
    maximally_mixed,
    pure_density,
    random_mixed,
    random_pure,
    random_unitary,
    werner,
)

from conftest import eigvals_oracle, mixed_states, seeds

BELL = pure_density(bell_phi_plus())
PRODUCT = pure_density(basis_state("00"))
X, Y, Z = np.eye(3)


def test_concurrence_pure_examples():
    assert concurrence_pure(bell_phi_plus()) == pytest.approx(1.0, abs=1e-15)
    assert concurrence_pure(basis_state("00")) == 0.0
    t = math.pi / 6
    psi = np.array([math.cos(t), 0, 0, math.sin(t)])
    # 2 cos t sin t = sin(pi/3)
    assert concurrence_pure(psi) == pytest.approx(0.8660254037844386, abs=1e-15)


@given(seeds)
def test_concurrence_pure_matches_overlap_definition(seed):
    psi = random_pure(RngStream(seed))
    flipped = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]]) @ psi.conj()
    assert concurrence_pure(psi) == pytest.approx(abs(np.vdot(psi, flipped)), abs=1e-14)


def test_concurrence_examples():
    assert concurrence(werner(0.8)) == pytest.approx(0.7, abs=1e-14)
    assert concurrence(maximally_mixed()) == 0.0
    assert concurrence(werner(1 / 3)) == pytest.approx(0.0, abs=1e-15)


@given(mixed_states())
def test_concurrence_matches_general_eigenvalue_route(rho):
    s = eigvals_oracle(rho)
    assert concurrence(rho) == pytest.approx(max(0.0, s[0] - s[1:].sum()), abs=1e-6)


def test_concurrence_bell_diagonal_examples():
    assert concurrence_bell_diagonal(werner(0.8)) == pytest.approx(0.7, abs=1e-14)
    assert concurrence_bell_diagonal(maximally_mixed()) == 0.0
    rho = evolved_werner("pd", 0.9, 0.5)
    assert concurrence_bell_diagonal(rho) == pytest.approx(concurrence(rho), abs=1e-12)


def test_concurrence_bell_diagonal_rejects_other_states():
    with pytest.raises(NotBellDiagonalError):
        concurrence_bell_diagonal(random_mixed(4, RngStream(4)))


@given(seeds)
def test_bell_diagonal_cross_path(seed):
    w = RngStream(seed).uniform(4)
    w /= w.sum()
    b = bell_basis()
    rho = (b * w) @ b.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    assert abs(concurrence_bell_diagonal(rho) - concurrence(rho)) <= 1e-9


def test_correlation_matrix_bell_by_hand():
    # <XX> = 1, <YY> = -1, <ZZ> = 1 for (|00> + |11>)/sqrt(2); all cross terms vanish
    np.testing.assert_allclose(correlation_matrix(BELL), np.diag([1.0, -1.0, 1.0]), atol=1e-15)


@given(mixed_states())
def test_correlation_matrix_invariants(rho):
    t = correlation_matrix(rho)
    assert np.all(np.abs(t) <= 1 + 1e-10)
    assert np.linalg.eigvalsh(t.T @ t).min() >= -1e-10


def test_m_value_examples():
    assert m_value(werner(0.9)) == pytest.approx(2 * 0.81, abs=1e-14)
    assert m_value(maximally_mixed()) == 0.0


@given(seeds)
def test_m_value_pure(seed):
    psi = random_pure(RngStream(seed))
    assert m_value(pure_density(psi)) == pytest.approx(1 + concurrence_pure(psi) ** 2, abs=1e-10)


def test_bell_nonlocality_examples():
    assert bell_nonlocality(BELL) == pytest.approx(1.0, abs=1e-15)
    assert bell_nonlocality(werner(1 / math.sqrt(2))) == 0.0
    assert m_value(PRODUCT) == 1.0
    assert bell_nonlocality(PRODUCT) == 0.0


def test_clamped_sqrt():
    assert clamped_sqrt(-1.0) == 0.0
    assert clamped_sqrt(5e-15) == 0.0
    assert clamped_sqrt(0.25) == 0.5


TSIRELSON = ChshSetting(Z, X, (Z + X) / math.sqrt(2), (Z - X) / math.sqrt(2))


def test_chsh_value_examples():
    # Tr(rho B) with T = diag(1,-1,1): z.T(b+b') + x.T(b-b') = 2/sqrt(2) + 2/sqrt(2)
    assert chsh_value(BELL, TSIRELSON) == pytest.approx(2 * math.sqrt(2), abs=1e-10)
    rho = random_mixed(3, RngStream(5))
    assert chsh_value(rho, ChshSetting(Z, Z, Z, Z)) == pytest.approx(2 * correlation_matrix(rho)[2, 2], abs=1e-14)
    assert chsh_value(maximally_mixed(), TSIRELSON) == pytest.approx(0.0, abs=1e-15)


def test_chsh_setting_rejects_nonunit():
    with pytest.raises(ValueError):
        ChshSetting(2 * X, X, X, X)


unit_vectors = st.tuples(st.floats(0, math.pi), st.floats(0, 2 * math.pi)).map(
    lambda a: np.array([math.sin(a[0]) * math.cos(a[1]), math.sin(a[0]) * math.sin(a[1]), math.cos(a[0])])
)


@given(mixed_states(), unit_vectors, unit_vectors, unit_vectors, unit_vectors)
def test_chsh_value_bounded_by_horodecki(rho, a, ap, b, bp):
    val = chsh_value(rho, ChshSetting(a, ap, b, bp))
    assert abs(val) <= 2 * math.sqrt(m_value(rho)) + 1e-9


def test_chsh_brute_max_examples():
    assert chsh_brute_max(BELL) == pytest.approx(2 * math.sqrt(2), abs=1e-3)
    assert chsh_brute_max(werner(0.5)) == pytest.approx(2 * math.sqrt(2 * 0.25), abs=1e-3)
    assert chsh_brute_max(PRODUCT) == pytest.approx(2.0, abs=1e-3)


def test_chsh_brute_max_argument_checks():
    with pytest.raises(ValueError):
        chsh_brute_max(BELL, coarse_steps=4)
    with pytest.raises(ValueError):
        chsh_brute_max(BELL, refine_rounds=1)


def test_chsh_brute_max_is_deterministic():
    rho = random_mixed(2, RngStream(6))
    assert chsh_brute_max(rho) == chsh_brute_max(rho)


def test_chsh_brute_max_near_degenerate_singular_values():
    # T has singular values ~(0.985, 0.583, 0.577): the optimum sits at the end of
    # a flat ridge that single-direction pattern moves used to stall on.
    rng = RngStream(2)
    for i in range(46):
        rho = random_mixed(2 + i % 3, rng)
    target = 2 * math.sqrt(m_value(rho))
    brute = chsh_brute_max(rho)
    assert brute <= target + 1e-9
    assert target - brute < 1e-4


def test_inequality_bounds_examples():
    assert inequality_bounds(1.0) == (1.0, 1.0)
    lo, hi = inequality_bounds(1 / math.sqrt(2))
    assert lo == pytest.approx(0.0, abs=1e-7) and hi == pytest.approx(0.70710678, abs=1e-8)
    lo, hi = inequality_bounds(0.9)
    assert lo == pytest.approx(math.sqrt(0.62), abs=1e-15) and hi == 0.9
    with pytest.raises(ValueError):
        inequality_bounds(1.2)


def test_analyze_examples():
    rep = analyze(werner(0.95))
    assert rep.concurrence == pytest.approx(0.925, abs=1e-14)
    assert rep.nonlocality == pytest.approx(math.sqrt(2 * 0.9025 - 1), abs=1e-14)
    assert not rep.violates_inequality
    rep = analyze(BELL)
    assert (rep.concurrence, rep.nonlocality) == pytest.approx((1.0, 1.0), abs=1e-14)
    assert (rep.lower_bound, rep.upper_bound) == pytest.approx((1.0, 1.0), abs=1e-14)
    rep = analyze(maximally_mixed())
    assert (rep.concurrence, rep.m_value, rep.nonlocality, rep.lower_bound, rep.upper_bound) == (0, 0, 0, 0, 0)


@given(mixed_states())
def test_report_invariants_and_inequality(rho):
    rep = analyze(rho)
    assert rep.nonlocality == pytest.approx(math.sqrt(max(0.0, rep.m_value - 1)), abs=1e-7)
    assert rep.lower_bound == pytest.approx(math.sqrt(max(0.0, 2 * rep.concurrence**2 - 1)), abs=1e-7)
    assert rep.upper_bound == rep.concurrence
    assert not rep.violates_inequality


@given(mixed_states(), seeds)
def test_local_unitary_invariance(rho, seed):
    rng = RngStream(seed)
    out = apply_local_unitary(rho, random_unitary(2, rng), random_unitary(2, rng))
    assert concurrence(out) == pytest.approx(concurrence(rho), abs=1e-9)
    assert m_value(out) == pytest.approx(m_value(rho), abs=1e-9)
    assert bell_nonlocality(out) == pytest.approx(bell_nonlocality(rho), abs=1e-9)


def test_werner_monotone_in_p():
    ps = np.linspace(0, 1, 101)
    cs = [concurrence(werner(p)) for p in ps]
    ns = [bell_nonlocality(werner(p)) for p in ps]
    assert np.all(np.diff(cs) >= -1e-15)
    assert np.all(np.diff(ns) >= -1e-15)
