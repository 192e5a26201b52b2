"""Affine canonical transformations of the two-pair quantum phase space.

A :class:`CanonicalMap` stores the conjugation action U v U^{-1} of a phase
variable column (x_A, p_A, x_B, p_B, 1): row i holds the expansion of the
image of variable i over the target variables, with the affine part in the
last column.  Maps compose in application order, M_first * M_second, matching
nested operator conjugation.

The preserved bilinear form is the weighted symplectic matrix
Omega = blockdiag(kappa*J, hbar*J), which keeps the two commutator constants
visible and makes the kappa->0 degeneration inspectable.
"""

from __future__ import annotations

from math import factorial

from . import linalg, scalar, weyl
from .linalg import identity, is_zero_matrix, mat_inv, mat_mul, mat_sub
from .scalar import ONE, ZERO, I, Scalar
from .weyl import WeylPoly

__all__ = [
    "CanonError",
    "NotQuadratic",
    "UnsupportedAdjoint",
    "CanonicalMap",
    "weighted_omega",
    "adjoint_matrix",
    "exp_adjoint",
    "compose",
    "check_symplectic",
    "is_symplectic",
    "table_of_one_parameter_actions",
]

DIM = 5


class CanonError(Exception):
    pass


class NotQuadratic(CanonError):
    pass


class UnsupportedAdjoint(CanonError):
    pass


def weighted_omega(kappa: Scalar = scalar.KAPPA, hbar: Scalar = scalar.HBAR):
    """blockdiag(kappa*J, hbar*J) with J = [[0, 1], [-1, 0]]."""
    return (
        (ZERO, kappa, ZERO, ZERO),
        (-kappa, ZERO, ZERO, ZERO),
        (ZERO, ZERO, ZERO, hbar),
        (ZERO, ZERO, -hbar, ZERO),
    )


_LAST_ROW = (ZERO, ZERO, ZERO, ZERO, ONE)


class CanonicalMap:
    """5x5 Scalar matrix with fixed last row (0, 0, 0, 0, 1)."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != DIM or any(len(r) != DIM for r in rows):
            raise CanonError("canonical map must be 5x5")
        if rows[4] != _LAST_ROW:
            raise CanonError("last row must be (0, 0, 0, 0, 1)")
        self.rows = rows

    @staticmethod
    def identity() -> "CanonicalMap":
        return CanonicalMap(identity(DIM))

    def __eq__(self, other):
        if not isinstance(other, CanonicalMap):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def linear_block(self):
        return tuple(r[:4] for r in self.rows[:4])

    def affine_column(self):
        return tuple(r[4] for r in self.rows[:4])

    def inverse(self) -> "CanonicalMap":
        return CanonicalMap(mat_inv(self.rows))

    def substitute(self, bindings: dict) -> "CanonicalMap":
        return CanonicalMap(
            tuple(tuple(e.substitute(bindings) for e in row) for row in self.rows)
        )

    def image_of_variable(self, idx: int) -> WeylPoly:
        """The affine WeylPoly image of one phase variable."""
        row = self.rows[idx]
        out = WeylPoly.from_scalar(row[4])
        for j in range(4):
            out = out + WeylPoly.variable(j).scale(row[j])
        return out

    def apply(self, p: WeylPoly) -> WeylPoly:
        """Conjugate an operator: substitute variable images, renormal-order."""
        images = [self.image_of_variable(i) for i in range(4)]
        out = weyl.zero()
        for mono, coeff in p.terms.items():
            term = weyl.one()
            for idx, e in enumerate(mono):
                for _ in range(e):
                    term = weyl.multiply(term, images[idx])
            out = out + term.scale(coeff)
        return out

    def __repr__(self):
        body = "; ".join(
            "[" + ", ".join(str(e) for e in row) + "]" for row in self.rows
        )
        return f"<CanonicalMap {body}>"


def compose(*maps: CanonicalMap) -> CanonicalMap:
    """Product in application order: compose(M1, M2) applies M1 first."""
    out = identity(DIM)
    for m in maps:
        out = mat_mul(out, m.rows)
    return CanonicalMap(out)


def adjoint_matrix(generator: WeylPoly, prefactor: Scalar):
    """Matrix N with row v holding the expansion of [i*prefactor*X, v].

    The generator must have degree <= 2 so the bracket with a phase variable
    stays affine; the last row is zero.
    """
    if generator.degree() > 2:
        raise NotQuadratic(f"adjoint of degree-{generator.degree()} generator")
    prefactor = prefactor if isinstance(prefactor, Scalar) else scalar.integer(prefactor)
    rows = []
    for idx in range(4):
        bracket = weyl.commutator(generator, WeylPoly.variable(idx)).scale(I * prefactor)
        if bracket.degree() > 1:  # pragma: no cover - excluded by degree check
            raise NotQuadratic("adjoint action is not affine")
        row = [bracket.coefficient((1, 0, 0, 0)), bracket.coefficient((0, 1, 0, 0)),
               bracket.coefficient((0, 0, 1, 0)), bracket.coefficient((0, 0, 0, 1)),
               bracket.coefficient((0, 0, 0, 0))]
        rows.append(tuple(row))
    rows.append((ZERO,) * DIM)
    return tuple(rows)


def _diag_part(n):
    return tuple(
        tuple(n[i][j] if i == j else ZERO for j in range(DIM)) for i in range(DIM)
    )


def exp_adjoint(generator: WeylPoly, prefactor: Scalar) -> CanonicalMap:
    """Exponentiate the adjoint action into a CanonicalMap.

    Supported when the adjoint matrix splits into commuting diagonal plus
    nilpotent parts (always the case for the seven named generators).  The
    nilpotent part is summed exactly; each nonzero diagonal entry c becomes
    the formal exponential unit exp_of(c), so opposite entries are exact
    inverses and later substitution can fix their values.
    """
    n = adjoint_matrix(generator, prefactor)
    diag = _diag_part(n)
    nilp = mat_sub(n, diag)
    if not is_zero_matrix(mat_sub(mat_mul(diag, nilp), mat_mul(nilp, diag))):
        raise UnsupportedAdjoint("diagonal and nilpotent parts do not commute")
    power = nilp
    series = identity(DIM)
    for k in range(1, DIM + 1):
        if is_zero_matrix(power):
            break
        series = tuple(
            tuple(
                s + p * scalar.rational(1, factorial(k))
                for s, p in zip(srow, prow)
            )
            for srow, prow in zip(series, power)
        )
        power = mat_mul(power, nilp)
    else:
        raise UnsupportedAdjoint("nilpotent part does not terminate")
    exp_diag = tuple(
        tuple(scalar.exp_of(diag[i][i]) if i == j else ZERO for j in range(DIM))
        for i in range(DIM)
    )
    return CanonicalMap(mat_mul(exp_diag, series))


def check_symplectic(map_: CanonicalMap, omega_src=None, omega_tgt=None):
    """Residual M Omega_tgt M^T - Omega_src of the linear block (zero = pass)."""
    omega_src = omega_src or weighted_omega()
    omega_tgt = omega_tgt or omega_src
    m = map_.linear_block()
    lhs = mat_mul(mat_mul(m, omega_tgt), linalg.transpose(m))
    return mat_sub(lhs, omega_src)


def is_symplectic(map_: CanonicalMap, omega_src=None, omega_tgt=None) -> bool:
    return is_zero_matrix(check_symplectic(map_, omega_src, omega_tgt))


def table_of_one_parameter_actions():
    """The seven one-parameter subgroup actions with their standard prefactors.

    Returns a list of (label, generator, prefactor, CanonicalMap).  Parameters
    alpha and beta are free symbols; the translation and boost rows use the
    fixed prefactor 1/hbar.
    """
    alpha = scalar.symbol("alpha")
    beta = scalar.symbol("beta")
    entries = [
        ("U_P", weyl.pair_translation(), ONE / scalar.HBAR),
        ("U_G", weyl.pair_boost(scalar.M_A, scalar.M_B, scalar.T), ONE / scalar.HBAR),
        ("D_A", weyl.dilation_generator(0), alpha / scalar.KAPPA),
        ("D_B", weyl.dilation_generator(1), beta / scalar.HBAR),
        ("Q_A", weyl.kinetic(0, scalar.M_A), alpha / scalar.KAPPA),
        ("Q_B", weyl.kinetic(1, scalar.M_B), alpha / scalar.HBAR),
        ("T", weyl.momentum_product(), alpha / scalar.HBAR),
    ]
    return [
        (label, gen, pref, exp_adjoint(gen, pref)) for label, gen, pref in entries
    ]
