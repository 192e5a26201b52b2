"""Expected-value fixtures: the published bracket tables and action tables.

Everything here is comparison data for the verification layer; the engine
derives its own tables independently via :mod:`qrfalg.lie` and
:mod:`qrfalg.canon`.
"""

from __future__ import annotations

from . import scalar
from .scalar import HBAR, I, KAPPA, M_A, M_B, M_C, ONE, RT, T, ZERO

__all__ = [
    "r4_table",
    "su11_table",
    "d7_table",
    "six_dim_table",
    "poincare_table",
    "galilei_table",
    "h3_limit_table",
    "poincare_change_of_basis",
    "poincare_inverse_change_of_basis",
    "one_parameter_actions",
    "sx_action",
    "st_action",
    "sb_action",
    "sd_action",
]

_MB_OVER_MA = M_B / M_A


def r4_table() -> dict:
    """Brackets of {P_AB, K_AB, D_A, D_B} at frozen time."""
    return {
        ("P_AB", "K_AB"): {
            "D_A": I * HBAR * _MB_OVER_MA,
            "D_B": -I * KAPPA * _MB_OVER_MA,
        },
        ("P_AB", "D_A"): {"P_AB": I * KAPPA},
        ("P_AB", "D_B"): {"P_AB": -I * HBAR},
        ("K_AB", "D_A"): {"K_AB": -I * KAPPA},
        ("K_AB", "D_B"): {"K_AB": I * HBAR},
        ("D_A", "D_B"): {},
    }


def su11_table() -> dict:
    """Brackets of {P_AB, K_AB, D} with the merged dilation generator."""
    c = 2 * I * KAPPA * HBAR * _MB_OVER_MA
    return {
        ("P_AB", "K_AB"): {"D": -I * ONE},
        ("P_AB", "D"): {"P_AB": -c},
        ("K_AB", "D"): {"K_AB": c},
    }


def h3_limit_table() -> dict:
    """kappa->0 limit of the su(1,1) table: a Heisenberg-Weyl triple."""
    return {
        ("P_AB", "K_AB"): {"D": -I * ONE},
        ("P_AB", "D"): {},
        ("K_AB", "D"): {},
    }


def d7_table(time=T) -> dict:
    """The seven-generator bracket table, time symbolic by default."""
    return {
        ("P_AB", "K_AB"): {
            "D_A": I * HBAR * _MB_OVER_MA,
            "D_B": -I * KAPPA * _MB_OVER_MA,
            "Q_B": 2 * I * KAPPA * _MB_OVER_MA * time,
        },
        ("P_AB", "D_A"): {"P_AB": I * KAPPA},
        ("P_AB", "D_B"): {"P_AB": -I * HBAR},
        ("P_AB", "Q_A"): {"T": I * KAPPA / M_A},
        ("P_AB", "Q_B"): {},
        ("P_AB", "T"): {"Q_B": 2 * I * KAPPA * M_B},
        ("K_AB", "D_A"): {"K_AB": -I * KAPPA},
        ("K_AB", "D_B"): {"K_AB": I * HBAR, "T": -2 * I * (HBAR / M_A) * time},
        ("K_AB", "Q_A"): {},
        ("K_AB", "Q_B"): {"T": -I * HBAR / M_A},
        ("K_AB", "T"): {"Q_A": -2 * I * HBAR * M_B},
        ("D_A", "D_B"): {},
        ("D_A", "Q_A"): {"Q_A": 2 * I * KAPPA},
        ("D_A", "Q_B"): {},
        ("D_A", "T"): {"T": I * KAPPA},
        ("D_B", "Q_A"): {},
        ("D_B", "Q_B"): {"Q_B": 2 * I * HBAR},
        ("D_B", "T"): {"T": I * HBAR},
        ("Q_A", "Q_B"): {},
        ("Q_A", "T"): {},
        ("Q_B", "T"): {},
    }


def six_dim_table() -> dict:
    """Frozen-time six-generator table with the merged dilation."""
    c = 2 * I * KAPPA * HBAR * _MB_OVER_MA
    return {
        ("P_AB", "K_AB"): {"D": -I * ONE},
        ("P_AB", "D"): {"P_AB": -c},
        ("K_AB", "D"): {"K_AB": c},
        ("P_AB", "Q_A"): {"T": I * KAPPA / M_A},
        ("P_AB", "T"): {"Q_B": 2 * I * KAPPA * M_B},
        ("P_AB", "Q_B"): {},
        ("K_AB", "Q_A"): {},
        ("K_AB", "Q_B"): {"T": -I * HBAR / M_A},
        ("K_AB", "T"): {"Q_A": -2 * I * HBAR * M_B},
        ("D", "Q_A"): {"Q_A": -c},
        ("D", "Q_B"): {"Q_B": c},
        ("D", "T"): {},
        ("Q_A", "Q_B"): {},
        ("Q_A", "T"): {},
        ("Q_B", "T"): {},
    }


def poincare_table() -> dict:
    """(2+1) Poincare brackets in the basis {J, K1, K2, P0, P1, P2}.

    Conventions: epsilon_12 = +1, [P_i, K_j] = -i delta_ij P0,
    [P0, K_i] = -i P_i, [K_1, K_2] = -i J.
    """
    return {
        ("J", "K1"): {"K2": I * ONE},
        ("J", "K2"): {"K1": -I * ONE},
        ("J", "P0"): {},
        ("J", "P1"): {"P2": I * ONE},
        ("J", "P2"): {"P1": -I * ONE},
        ("K1", "K2"): {"J": -I * ONE},
        ("K1", "P0"): {"P1": I * ONE},
        ("K1", "P1"): {"P0": I * ONE},
        ("K1", "P2"): {},
        ("K2", "P0"): {"P2": I * ONE},
        ("K2", "P1"): {},
        ("K2", "P2"): {"P0": I * ONE},
        ("P0", "P1"): {},
        ("P0", "P2"): {},
        ("P1", "P2"): {},
    }


def galilei_table() -> dict:
    """Centrally extended (1+1) Galilei brackets over {G, P0, P, M}."""
    return {
        ("G", "P0"): {"P": I * HBAR},
        ("G", "P"): {"M": I * HBAR},
        ("G", "M"): {},
        ("P0", "P"): {},
        ("P0", "M"): {},
        ("P", "M"): {},
    }


def poincare_change_of_basis():
    """Rows of {J, K1, K2, P0, P1, P2} over {P_AB, K_AB, D, Q_A, Q_B, T}."""
    half_rt = ONE / (2 * RT)
    return (
        (half_rt, half_rt * (M_A / M_B), ZERO, ZERO, ZERO, ZERO),
        (half_rt, -half_rt * (M_A / M_B), ZERO, ZERO, ZERO, ZERO),
        (ZERO, ZERO, M_A / (2 * KAPPA * HBAR * M_B), ZERO, ZERO, ZERO),
        (ZERO, ZERO, ZERO, HBAR * M_A, KAPPA * M_B, ZERO),
        (ZERO, ZERO, ZERO, ZERO, ZERO, RT),
        (ZERO, ZERO, ZERO, -HBAR * M_A, KAPPA * M_B, ZERO),
    )


def poincare_inverse_change_of_basis():
    """Rows of {P_AB, K_AB, D, Q_A, Q_B, T} over {J, K1, K2, P0, P1, P2}."""
    mb_ma = M_B / M_A
    return (
        (RT, RT, ZERO, ZERO, ZERO, ZERO),
        (RT * mb_ma, -RT * mb_ma, ZERO, ZERO, ZERO, ZERO),
        (ZERO, ZERO, 2 * KAPPA * HBAR * mb_ma, ZERO, ZERO, ZERO),
        (ZERO, ZERO, ZERO, ONE / (2 * HBAR * M_A), ZERO, -ONE / (2 * HBAR * M_A)),
        (ZERO, ZERO, ZERO, ONE / (2 * KAPPA * M_B), ZERO, ONE / (2 * KAPPA * M_B)),
        (ZERO, ZERO, ZERO, ZERO, ONE / RT, ZERO),
    )


# ---------------------------------------------------------------------------
# phase-space action fixtures (entries keyed by coordinate names; "1" is the
# affine part)

def one_parameter_actions() -> dict:
    """Expected images for the seven one-parameter subgroup actions."""
    alpha = scalar.symbol("alpha")
    beta = scalar.symbol("beta")
    e_alpha = scalar.exp_of(alpha)
    e_beta = scalar.exp_of(beta)
    k_over_h = KAPPA / HBAR
    return {
        "U_P": {
            "x_A": {"x_A": ONE},
            "p_A": {"p_A": ONE, "p_B": -k_over_h},
            "x_B": {"x_B": ONE, "x_A": ONE},
            "p_B": {"p_B": ONE},
        },
        "U_G": {
            "x_A": {"x_A": ONE, "p_B": k_over_h * T / M_A, "x_B": -k_over_h * M_B / M_A},
            "p_A": {"p_A": ONE},
            "x_B": {"x_B": ONE, "p_A": T / M_A},
            "p_B": {"p_B": ONE, "p_A": M_B / M_A},
        },
        "D_A": {
            "x_A": {"x_A": e_alpha},
            "p_A": {"p_A": ONE / e_alpha},
            "x_B": {"x_B": ONE},
            "p_B": {"p_B": ONE},
        },
        "D_B": {
            "x_A": {"x_A": ONE},
            "p_A": {"p_A": ONE},
            "x_B": {"x_B": e_beta},
            "p_B": {"p_B": ONE / e_beta},
        },
        "Q_A": {
            "x_A": {"x_A": ONE, "p_A": alpha / M_A},
            "p_A": {"p_A": ONE},
            "x_B": {"x_B": ONE},
            "p_B": {"p_B": ONE},
        },
        "Q_B": {
            "x_A": {"x_A": ONE},
            "p_A": {"p_A": ONE},
            "x_B": {"x_B": ONE, "p_B": alpha / M_B},
            "p_B": {"p_B": ONE},
        },
        "T": {
            "x_A": {"x_A": ONE, "p_B": alpha * KAPPA / HBAR},
            "p_A": {"p_A": ONE},
            "x_B": {"x_B": ONE, "p_A": alpha},
            "p_B": {"p_B": ONE},
        },
    }


def sx_action() -> dict:
    """Relative-position word C->A: images over chart-(A) coordinates."""
    k_over_h = KAPPA / HBAR
    return {
        "x_A": {"x_C": -ONE},
        "p_A": {"p_C": -ONE, "p_B": -k_over_h},
        "x_B": {"x_B": ONE, "x_C": -ONE},
        "p_B": {"p_B": ONE},
    }


def st_action() -> dict:
    """Superposed-translation word C->A."""
    k_over_h = KAPPA / HBAR
    return {
        "x_A": {
            "x_C": -ONE,
            "p_C": T * (ONE / M_C - ONE / M_A),
            "p_B": -k_over_h * T / M_A,
        },
        "p_A": {"p_C": -ONE, "p_B": -k_over_h},
        "x_B": {"x_B": ONE, "x_C": -ONE, "p_C": T / M_C},
        "p_B": {"p_B": ONE},
    }


def sb_action() -> dict:
    """Superposed-boost word C->A."""
    k_over_h = KAPPA / HBAR
    return {
        "x_A": {
            "x_C": -M_C / M_A,
            "p_C": T * (ONE / M_A - ONE / M_C),
            "p_B": k_over_h * T / M_A,
            "x_B": -k_over_h * M_B / M_A,
        },
        "p_A": {"p_C": -M_A / M_C},
        "x_B": {"x_B": ONE, "p_C": -T / M_C},
        "p_B": {"p_B": ONE, "p_C": -M_B / M_C},
    }


def sd_action() -> dict:
    """Composed word C->A (boost after translation) at kappa = hbar."""
    return {
        "x_A": {
            "x_B": -M_B / M_A,
            "x_C": -(M_A + M_C) / M_A,
            "p_B": T * (ONE / M_A - ONE / M_B),
            "p_C": T * (ONE / M_A + ONE / M_C),
        },
        "p_A": {"p_B": -M_A / M_B},
        "x_B": {
            "x_C": -ONE,
            "p_C": T * (ONE / M_C - ONE / M_B),
            "p_B": ((M_C + M_A) / M_B) * T / M_B,
        },
        "p_B": {"p_C": -ONE, "p_B": (M_A + M_C) / M_B},
    }
