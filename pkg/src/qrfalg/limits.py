"""Classical reference-frame limit: kappa -> 0 with the hbar pair untouched.

In the limit the frame-carrier pair becomes a pair of commuting functions.
They are represented by the coefficient symbols ``cx_A`` and ``cp_A`` living
in the Scalar field, so a "classical" element is a WeylPoly supported on the
observed pair only, with coefficients rational in the frame-carrier phase
space values.  Divisions such as m_A / cp_A are then exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lie, scalar, tables, weyl
from .scalar import I, KAPPA, ONE, PoleAtKappaZero, Scalar, ZERO
from .weyl import WeylPoly

__all__ = [
    "CX_A",
    "CP_A",
    "classical_limit",
    "quantize",
    "poisson_bracket",
    "galilei_recovery",
    "GalileiRecovery",
    "su11_limit_table",
]

CX_A = scalar.symbol("cx_A")
CP_A = scalar.symbol("cp_A")

_CX_IDX = scalar.register_symbol("cx_A")
_CP_IDX = scalar.register_symbol("cp_A")


def classical_limit(p: WeylPoly) -> WeylPoly:
    """kappa -> 0 on coefficients, frame-pair variables demoted to functions."""
    out = weyl.zero()
    for (a, b, c, d), coeff in p.terms.items():
        value = coeff.kappa_zero_limit() * CX_A**a * CP_A**b
        out = out + WeylPoly({(0, 0, c, d): value})
    return out


def _scalar_monomials(s: Scalar):
    if not s.den.is_one():
        raise scalar.ScalarError(f"{s} is not polynomial")
    for mono, c in s.num.terms.items():
        yield mono, c


def quantize(f: Scalar, anti_normal: bool = False) -> WeylPoly:
    """Map a polynomial in cx_A, cp_A back to operators on the frame pair.

    Normal order x^a p^b by default; anti_normal uses p^b x^a instead (the
    Poisson bracket below is checked to be independent of this choice).
    """
    out = weyl.zero()
    for mono, c in _scalar_monomials(f):
        a = mono[_CX_IDX] if _CX_IDX < len(mono) else 0
        b = mono[_CP_IDX] if _CP_IDX < len(mono) else 0
        rest = list(mono)
        for idx in (_CX_IDX, _CP_IDX):
            if idx < len(rest):
                rest[idx] = 0
        coeff = Scalar(scalar.Poly({scalar._mono_strip(rest): c}), scalar._P_ONE)
        if anti_normal:
            term = weyl.multiply(weyl.p_A() ** b, weyl.x_A() ** a)
        else:
            term = WeylPoly({(a, b, 0, 0): ONE})
        out = out + term.scale(coeff)
    return out


def poisson_bracket(f: Scalar, g: Scalar) -> Scalar:
    """{f, g} as the kappa -> 0 limit of the quantized commutator over i kappa."""
    values = []
    for anti in (False, True):
        bracket = weyl.commutator(quantize(f, anti), quantize(g, anti))
        limited = classical_limit(bracket.scale(ONE / (I * KAPPA)))
        if not limited.is_scalar():
            raise scalar.ScalarError("poisson bracket left the classical sector")
        values.append(limited.scalar_part())
    if values[0] != values[1]:  # pragma: no cover - ordering independence
        raise scalar.ScalarError("poisson bracket depends on quantization order")
    return values[0]


@dataclass(frozen=True)
class GalileiRecovery:
    basis: lie.LieBasis
    table_matches: bool
    casimir: WeylPoly
    rep_matches: bool

    @property
    def passed(self) -> bool:
        return self.table_matches and self.casimir.is_zero() and self.rep_matches


def galilei_recovery(time: Scalar = scalar.T) -> GalileiRecovery:
    """Recover the centrally extended Galilei representation from the limit.

    The limits of the pair translation, pair boost and observed-pair kinetic
    generator are rescaled by the now-commuting frame phase space values; the
    result must reproduce the one-particle representation, its bracket table
    and the vanishing Casimir 2 M P0 - P^2.
    """
    p_c = classical_limit(weyl.pair_translation())
    k_c = classical_limit(weyl.pair_boost(scalar.M_A, scalar.M_B, time))
    q_c = classical_limit(weyl.kinetic(1, scalar.M_B))
    basis = lie.LieBasis(
        ("G", "P0", "P", "M"),
        (
            k_c.scale(scalar.M_A / CP_A),
            q_c,
            -p_c.scale(ONE / CX_A),
            weyl.one().scale(scalar.M_B),
        ),
    )
    table_matches = lie.structure_constants(basis).table() == tables.galilei_table()
    casimir = lie.casimir_eval(
        (
            (scalar.integer(2), ("M", "P0")),
            (-ONE, ("P", "P")),
        ),
        basis,
    )
    rep_matches = basis.elements == lie.galilei_rep(time).elements
    return GalileiRecovery(basis, table_matches, casimir, rep_matches)


def su11_limit_table() -> dict:
    """kappa -> 0 limit of the computed su(1,1) structure constants."""
    sc = lie.structure_constants(lie.su11_with_dilation())
    out = {}
    for (pair, entry) in sc.table().items():
        limited = {
            name: c.kappa_zero_limit() for name, c in entry.items()
        }
        out[pair] = {name: c for name, c in limited.items() if not c.is_zero()}
    return out
