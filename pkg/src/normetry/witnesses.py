"""Hand-computed witness table for every checker.

Each entry is a small fixed instance with a known outcome: either an exact
equality (|min margin| must be within tolerance) or a strict pass.  The
verify command runs this table alongside the random campaigns, and the
equality entries double as a guard against checkers reporting spurious
slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import checks, scalarfn
from .norms import Verdict

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)
_D10 = np.diag([1.0, 0.0]).astype(complex)
_D01 = np.diag([0.0, 1.0]).astype(complex)
_PSD_A = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
_PSD_B = np.array([[3.0, -1.0], [-1.0, 1.0]], dtype=complex)
_HERM = np.array([[1.0, 2.0], [2.0, -1.0]], dtype=complex)
_GEN = np.array([[1.0, 2.0 + 1.0j], [0.5j, -1.0]], dtype=complex)
_UNITARY = np.array([[0.0, -1.0], [1.0, 0.0]], dtype=complex)
_CONTRACTION = np.diag([0.6, 0.3]).astype(complex)


@dataclass(frozen=True)
class Witness:
    check_id: str
    description: str
    run: Callable[[], Verdict]
    equality: bool  # min margin must be ~0, not merely >= -tol


def _one_by_one(v: float) -> np.ndarray:
    return np.array([[v]], dtype=complex)


WITNESSES: tuple[Witness, ...] = (
    Witness(
        "thm1.1", "sqrt on complementary projections (equality)",
        lambda: checks.check_thm_1_1(scalarfn.sqrt_fn(), [_D10, _D01]), True,
    ),
    Witness(
        "thm1.1", "sqrt on A=B=I",
        lambda: checks.check_thm_1_1(scalarfn.sqrt_fn(), [_I2, _I2]), False,
    ),
    Witness(
        "thm1.2", "t^2 on complementary projections (equality)",
        lambda: checks.check_thm_1_2(scalarfn.power_m_fn(2), _D10, _D01), True,
    ),
    Witness(
        "thm1.2", "t^2 on A=B=I",
        lambda: checks.check_thm_1_2(scalarfn.power_m_fn(2), _I2, _I2), False,
    ),
    Witness(
        "davis-hansen", "Z=I (equality)",
        lambda: checks.check_davis_hansen(scalarfn.sqrt_fn(), _PSD_A, _I2), True,
    ),
    Witness(
        "davis-hansen", "f=t with a strict contraction (equality)",
        lambda: checks.check_davis_hansen(
            scalarfn.identity_fn(), _PSD_A, _CONTRACTION
        ), True,
    ),
    Witness(
        "pinching-eq2", "sqrt on A=B=I",
        lambda: checks.check_pinching_eq2(scalarfn.sqrt_fn(), _I2, _I2), False,
    ),
    Witness(
        "pinching-eq2", "f=t makes both sides A+B (equality)",
        lambda: checks.check_pinching_eq2(
            scalarfn.identity_fn(), _PSD_A, _PSD_B + 2 * _I2
        ), True,
    ),
    Witness(
        "prop2.1", "1/sqrt(t) with A+B=4I (equality)",
        lambda: checks.check_prop_2_1(
            scalarfn.inv_sqrt_fn(),
            np.diag([3.0, 1.0]).astype(complex),
            np.diag([1.0, 3.0]).astype(complex),
        ), True,
    ),
    Witness(
        "prop2.1", "constant g makes both sides A+B (equality)",
        lambda: checks.check_prop_2_1(scalarfn.constant_fn(1.0), _PSD_A, _PSD_B),
        True,
    ),
    Witness(
        "thm2.4", "Z=sqrt(2) I, A=I, f=sqrt",
        lambda: checks.check_thm_2_4(
            scalarfn.sqrt_fn(), _I2, np.sqrt(2.0) * _I2
        ), False,
    ),
    Witness(
        "thm2.4", "Z=I (equality)",
        lambda: checks.check_thm_2_4(scalarfn.sqrt_fn(), _PSD_A, _I2), True,
    ),
    Witness(
        "eigen-sum", "f=t, j=k=0 is Weyl subadditivity",
        lambda: checks.check_eigen_sum(
            scalarfn.identity_fn(), _PSD_A, _PSD_B, 0, 0
        ), False,
    ),
    Witness(
        "eigen-sum", "sqrt on disjoint diagonals, j=k=0",
        lambda: checks.check_eigen_sum(
            scalarfn.sqrt_fn(), 4 * _D10, 4 * _D01, 0, 0
        ), False,
    ),
    Witness(
        "cs-lemma", "single identity term (equality)",
        lambda: checks.check_cs_lemma(_I2, _Z2, _I2, _Z2, _I2, _I2), True,
    ),
    Witness(
        "cs-lemma", "A_i=B_i with identity contractions (equality)",
        lambda: checks.check_cs_lemma(
            _PSD_A, _PSD_B, _PSD_A, _PSD_B, _I2, _I2
        ), True,
    ),
    Witness(
        "ineq4", "A=B=I (equality)",
        lambda: checks.check_ineq_4(_I2, _I2), True,
    ),
    Witness(
        "ineq4", "B=-A gives zero LHS",
        lambda: checks.check_ineq_4(_GEN, -_GEN), False,
    ),
    Witness(
        "thm3.1", "scalar all-ones blocks",
        lambda: checks.check_thm_3_1(
            _one_by_one(1), _one_by_one(1), _one_by_one(1), _one_by_one(1)
        ), False,
    ),
    Witness(
        "thm3.1", "B=C=0 reduces to the block-diagonal fact",
        lambda: checks.check_thm_3_1(_PSD_A, _Z2, _Z2, _PSD_B), False,
    ),
    Witness(
        "thm3.2", "scalar all-ones blocks (equality)",
        lambda: checks.check_thm_3_2(
            _one_by_one(1), _one_by_one(1), _one_by_one(1), _one_by_one(1)
        ), True,
    ),
    Witness(
        "thm3.2", "B=C=D=0 (equality)",
        lambda: checks.check_thm_3_2(_HERM, _Z2, _Z2, _Z2), True,
    ),
    Witness(
        "cor3.3", "A=B=0 reaches the top singular value (equality)",
        lambda: checks.check_cor_3_3(_Z2, _Z2, _GEN), True,
    ),
    Witness(
        "cor3.3", "X=0 (equality)",
        lambda: checks.check_cor_3_3(_HERM, _PSD_A - 2 * _I2, _Z2), True,
    ),
    Witness(
        "prop3.4", "A=I, B=-I gives zero LHS",
        lambda: checks.check_prop_3_4(_I2, -_I2), False,
    ),
    Witness(
        "prop3.4", "A=B unitary (equality at every Ky Fan k)",
        lambda: checks.check_prop_3_4(_UNITARY, _UNITARY), True,
    ),
    Witness(
        "prop3.5", "S=T=diag(1,-1), j=k=0 (equality)",
        lambda: checks.check_prop_3_5_eigen(
            np.diag([1.0, -1.0]).astype(complex),
            np.diag([1.0, -1.0]).astype(complex), 0, 0,
        ), True,
    ),
    Witness(
        "prop3.5", "T=0, j=k=0 (equality)",
        lambda: checks.check_prop_3_5_eigen(_HERM, _Z2, 0, 0), True,
    ),
    Witness(
        "ineq5", "real positive z (equality)",
        lambda: checks.check_ineq_5(_PSD_A, _PSD_B, 0.7, 2), True,
    ),
    Witness(
        "ineq5", "z=-1, m=1 on complementary projections (equality)",
        lambda: checks.check_ineq_5(_D10, _D01, -1.0, 1), True,
    ),
    Witness(
        "identity6", "m=1 is exact",
        lambda: checks.identity_6_verdict(_PSD_A, _PSD_B, 1, tol=1e-12), True,
    ),
    Witness(
        "identity6", "m=2 expands algebraically",
        lambda: checks.identity_6_verdict(_PSD_A, _PSD_B, 2, tol=1e-12), True,
    ),
)


def witnesses_for(check_ids) -> list[Witness]:
    wanted = set(check_ids)
    return [w for w in WITNESSES if w.check_id in wanted]
