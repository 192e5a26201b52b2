"""Numerical oracle: Gaussian states driven by numerically evaluated maps.

Means and covariances transform affinely and exactly, so this module gives a
cheap independent check of every compiled transformation: probabilities (all
moments of quadratic observables) must be invariant when state and observable
are transformed together.

Conventions: a compiled map stores the conjugation action v -> S v S^dagger.
Transforming the state rho -> S rho S^dagger therefore uses the inverse
matrix: solve M [mu'; 1] = [mu; 1].  Delta-like position kets are modeled as
narrow Gaussians (covariance eps * identity); their means carry all the
physics used here, and the narrow covariance intentionally ignores the
uncertainty bound, which `uncertainty_ok` can check for honest states.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qrf, scalar, weyl
from .weyl import WeylPoly

__all__ = [
    "GaussianError",
    "NotQuadraticObservable",
    "SymplecticDefect",
    "GaussianState",
    "delta_state",
    "NumericCanonicalMap",
    "numeric_compile",
    "evolve",
    "expectation",
    "conjugate_quadratic",
    "random_state",
    "random_quadratic",
    "invariance_check",
    "finite_difference_derivative_check",
    "DEFAULT_EPSILON",
]

DEFAULT_EPSILON = 1e-4
SYMPLECTIC_DEFECT_TOL = 1e-9


class GaussianError(Exception):
    pass


class NotQuadraticObservable(GaussianError):
    pass


class SymplecticDefect(GaussianError):
    pass


@dataclass
class GaussianState:
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=float).reshape(4)
        self.cov = np.asarray(self.cov, dtype=float).reshape(4, 4)
        if not np.allclose(self.cov, self.cov.T, atol=1e-12):
            raise GaussianError("covariance must be symmetric")

    def uncertainty_ok(self, omega: np.ndarray, tol: float = 1e-12) -> bool:
        """cov + (i/2) Omega positive semidefinite (up to tol)."""
        h = self.cov + 0.5j * omega
        eigs = np.linalg.eigvalsh((h + h.conj().T) / 2)
        return bool(eigs.min() >= -tol)


def delta_state(position_a: float, position_b: float, epsilon: float = DEFAULT_EPSILON) -> GaussianState:
    """Narrow Gaussian standing in for |a>|b> in a source chart."""
    return GaussianState(
        np.array([position_a, 0.0, position_b, 0.0]), epsilon * np.eye(4)
    )


def _numeric_omega(rows, bindings) -> np.ndarray:
    out = np.zeros((4, 4))
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            v = e.evaluate(bindings)
            out[i, j] = v.real
    return out


@dataclass
class NumericCanonicalMap:
    """Float conjugation matrix with its chart forms and precomputed inverse."""

    matrix: np.ndarray
    omega_src: np.ndarray
    omega_tgt: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=float).reshape(5, 5)
        self.linear = self.matrix[:4, :4]
        self.affine = self.matrix[:4, 4]
        self.linear_inv = np.linalg.inv(self.linear)

    @property
    def symplectic_defect(self) -> float:
        return float(
            np.abs(self.linear @ self.omega_tgt @ self.linear.T - self.omega_src).max()
        )


def numeric_compile(compiled, bindings: dict) -> NumericCanonicalMap:
    """Evaluate a compiled map entrywise; reject symplectic defects.

    Accepts a qrf.CompiledMap (chart forms derived from its charts) or a bare
    CanonicalMap (weighted forms built from the hbar/kappa bindings).
    """
    if isinstance(compiled, qrf.CompiledMap):
        rows = compiled.chart_rows.rows
        omega_src = _numeric_omega(compiled.source.omega(), bindings)
        omega_tgt = _numeric_omega(compiled.target.omega(), bindings)
    else:
        rows = compiled.rows
        from .canon import weighted_omega

        omega_src = _numeric_omega(weighted_omega(), bindings)
        omega_tgt = omega_src
    matrix = np.zeros((5, 5))
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            v = e.evaluate(bindings)
            if abs(v.imag) > 1e-12:
                raise GaussianError(f"entry ({i},{j}) evaluates to complex {v}")
            matrix[i, j] = v.real
    nmap = NumericCanonicalMap(matrix, omega_src, omega_tgt)
    if nmap.symplectic_defect > SYMPLECTIC_DEFECT_TOL:
        raise SymplecticDefect(f"defect {nmap.symplectic_defect:.3e}")
    return nmap


def evolve(state: GaussianState, nmap: NumericCanonicalMap) -> GaussianState:
    """rho -> S rho S^dagger: means solve M [mu'; 1] = [mu; 1]."""
    mean = nmap.linear_inv @ (state.mean - nmap.affine)
    cov = nmap.linear_inv @ state.cov @ nmap.linear_inv.T
    return GaussianState(mean, cov)


def _quadratic_form(obs: WeylPoly, bindings: dict):
    """Symmetrized (A, b, c, normal-order correction) of a quadratic WeylPoly."""
    if obs.degree() > 2:
        raise NotQuadraticObservable(f"degree {obs.degree()} observable")
    a = np.zeros((4, 4), dtype=complex)
    b = np.zeros(4, dtype=complex)
    c = 0j
    for mono, coeff in obs.terms.items():
        v = coeff.evaluate(bindings)
        idxs = [i for i, e in enumerate(mono) for _ in range(e)]
        if len(idxs) == 0:
            c += v
        elif len(idxs) == 1:
            b[idxs[0]] += v
        else:
            i, j = idxs  # normal-ordered: i <= j
            a[i, j] += v / 2
            a[j, i] += v / 2
            if i != j:
                # normal-ordered product = symmetrized + half the commutator
                c += v * 0.5 * _commutator_value(i, j, bindings)
    return a, b, c


def _commutator_value(i: int, j: int, bindings: dict) -> complex:
    """[v_i, v_j] as a number; nonzero only within a canonical pair."""
    if (i, j) == (0, 1):
        return 1j * complex(bindings["kappa"])
    if (i, j) == (1, 0):
        return -1j * complex(bindings["kappa"])
    if (i, j) == (2, 3):
        return 1j * complex(bindings["hbar"])
    if (i, j) == (3, 2):
        return -1j * complex(bindings["hbar"])
    return 0j


def expectation(state: GaussianState, obs: WeylPoly, bindings: dict) -> complex:
    """<obs> on a Gaussian state: tr(A Sigma) + mu^T A mu + b^T mu + c."""
    a, b, c = _quadratic_form(obs, bindings)
    mu = state.mean
    return complex(np.trace(a @ state.cov) + mu @ a @ mu + b @ mu + c)


def conjugate_quadratic(nmap: NumericCanonicalMap, a, b, c):
    """Transform a symmetrized quadratic form through v -> M v + gamma."""
    m, g = nmap.linear, nmap.affine
    a2 = m.T @ a @ m
    b2 = m.T @ (2 * a @ g + b)
    c2 = g @ a @ g + b @ g + c
    return a2, b2, c2


def random_state(rng: np.random.Generator, scale_floor: float = 1.5) -> GaussianState:
    mean = rng.uniform(-2.0, 2.0, size=4)
    factor = rng.uniform(-0.7, 0.7, size=(4, 4))
    cov = factor @ factor.T + scale_floor * np.eye(4)
    return GaussianState(mean, cov)


def random_quadratic(rng: np.random.Generator):
    a = rng.uniform(-1.0, 1.0, size=(4, 4))
    a = (a + a.T) / 2
    b = rng.uniform(-1.0, 1.0, size=4)
    c = float(rng.uniform(-1.0, 1.0))
    return a, b, c


def _gaussian_expect_form(state: GaussianState, a, b, c) -> float:
    mu = state.mean
    return float(np.trace(a @ state.cov) + mu @ a @ mu + b @ mu + c)


@dataclass
class InvarianceReport:
    trials: int
    seed: int
    max_deviation: float


def invariance_check(n_trials: int = 1000, seed: int = 7041) -> InvarianceReport:
    """Random states and quadratic observables against all compiled words.

    For each trial: draw masses, a state rho and an observable O; check
    <O>_rho == <S O S^dagger>_{S rho S^dagger} for the four reference-frame
    words at kappa = hbar = 1.
    """
    compiled = [
        qrf.compile_word(w).substitute(qrf.EQUAL_CONSTANTS)
        for w in qrf.standard_words()
    ]
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_trials):
        bindings = {
            "hbar": 1.0,
            "kappa": 1.0,
            "m_A": rng.uniform(0.5, 3.0),
            "m_B": rng.uniform(0.5, 3.0),
            "m_C": rng.uniform(0.5, 3.0),
            "t": rng.uniform(-1.5, 1.5),
        }
        state = random_state(rng)
        a, b, c = random_quadratic(rng)
        before = _gaussian_expect_form(state, a, b, c)
        for cm in compiled:
            nmap = numeric_compile(cm, bindings)
            after = _gaussian_expect_form(
                evolve(state, nmap), *conjugate_quadratic(nmap, a, b, c)
            )
            worst = max(worst, abs(after - before))
    return InvarianceReport(n_trials, seed, worst)


def finite_difference_derivative_check(
    word=None,
    bindings: dict = None,
    t0: float = 0.7,
    step: float = 1e-5,
) -> float:
    """Central finite difference of the compiled map against the symbolic
    derivative term (dS/dt) S^dagger.

    d/dt (S v S^dagger) = [(dS/dt) S^dagger, S v S^dagger]; returns the
    largest coefficient deviation over all phase variables.
    """
    word = word or qrf.make_ST("C", "A")
    bindings = dict(
        bindings
        or {"hbar": 1.0, "kappa": 1.0, "m_A": 1.3, "m_B": 2.1, "m_C": 0.8}
    )
    compiled = qrf.compile_word(word)
    w_term = qrf.derivative_term(word)
    worst = 0.0
    for idx in range(4):
        image = compiled.slot_map.image_of_variable(idx)
        bracket = weyl.commutator(w_term, image)
        plus = dict(bindings, t=t0 + step)
        minus = dict(bindings, t=t0 - step)
        at_t0 = dict(bindings, t=t0)
        monos = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (0, 0, 0, 0)]
        for mono in monos:
            fd = (
                image.coefficient(mono).evaluate(plus)
                - image.coefficient(mono).evaluate(minus)
            ) / (2 * step)
            sym = bracket.coefficient(mono).evaluate(at_t0)
            worst = max(worst, abs(fd - sym))
    return worst
