"""Executable checkers, one per inequality or identity.

Each checker builds the two sides of its statement and delegates to the
Fan-dominance verdict, a Loewner-order comparison, or a direct scalar
comparison on the norm grid.  Hypotheses are validated up front (shape
class of the scalar function, contraction/expansive/normal predicates);
the falsifier can switch validation off to probe broken hypotheses.
"""

from __future__ import annotations

import numpy as np

from . import linalg, norms, scalarfn
from .errors import (
    BadSpec,
    DimensionMismatch,
    IndexOutOfRange,
    NotAContraction,
    NotExpansive,
    NotNormal,
    NotPositiveDefinite,
    ShapeValidationFailed,
)
from .norms import ComparisonRecord, Verdict, scaled_margin

DEFAULT_TOL = 1e-9
PREDICATE_TOL = 1e-8  # slack for hypothesis predicates on generated inputs


def _require_tag(f: scalarfn.ScalarFn, tag: str, enforce: bool) -> None:
    if enforce and tag not in f.tags:
        raise ShapeValidationFailed(f"{f.kind} lacks required class {tag}")


def _loewner_verdict(check_id: str, lhs, rhs, tol: float) -> Verdict:
    """Verdict for lhs <= rhs in the Loewner order.

    Margin is lambda_min(rhs - lhs) scaled by max(1, ||rhs - lhs||_op),
    recorded as a single comparison row.
    """
    ml, mr = linalg.as_square(lhs), linalg.as_square(rhs)
    if ml.shape != mr.shape:
        raise DimensionMismatch(f"{ml.shape} vs {mr.shape}")
    d = linalg.hermitian_part(mr - ml)
    w = linalg.eigvalsh_desc(d)
    lam_min = float(w[-1]) if w.size else 0.0
    lam_max = float(w[0]) if w.size else 0.0
    scale = max(1.0, max(abs(lam_min), abs(lam_max)))
    margin = lam_min / scale
    rec = ComparisonRecord(label="loewner", lhs=-lam_min, rhs=0.0, margin=margin)
    return Verdict(
        check_id=check_id, records=[rec], passed=margin >= -tol, tol=tol
    )


def _scalar_grid_verdict(check_id, lhs_mat, rhs_fn, tol) -> Verdict:
    """Per-norm comparison ||lhs|| <= rhs(spec) over the standard norm grid."""
    sl = norms.singular_values(lhs_mat)
    records = []
    for spec in norms.norm_grid(sl.size):
        vl = norms.norm_from_sv(sl, spec)
        vr = rhs_fn(spec)
        records.append(
            ComparisonRecord(spec.label(), vl, vr, scaled_margin(vl, vr))
        )
    passed = min(r.margin for r in records) >= -tol
    return Verdict(check_id=check_id, records=records, passed=passed, tol=tol)


def check_thm_1_1(f, operands, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """||f(sum A_i)|| <= ||sum f(A_i)|| for concave f >= 0 and PSD A_i."""
    if len(operands) < 2:
        raise BadSpec("need at least two operands")
    _require_tag(f, scalarfn.CONCAVE_NONNEG, enforce)
    mats = [linalg.as_square(a) for a in operands]
    total = sum(mats[1:], start=mats[0])
    lhs = linalg.spectral_apply(f, total)
    rhs = sum(linalg.spectral_apply(f, a) for a in mats)
    return norms.dominance_verdict(lhs, rhs, tol=tol, check_id="thm1.1")


def check_thm_1_2(g, a, b, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """||g(A) + g(B)|| <= ||g(A+B)|| for convex g with g(0)=0, A,B PSD."""
    _require_tag(g, scalarfn.CONVEX_VANISHING, enforce)
    a, b = linalg.as_square(a), linalg.as_square(b)
    lhs = linalg.spectral_apply(g, a) + linalg.spectral_apply(g, b)
    rhs = linalg.spectral_apply(g, a + b)
    return norms.dominance_verdict(lhs, rhs, tol=tol, check_id="thm1.2")


def check_davis_hansen(f, a, z, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """Z* f(A) Z <= f(Z* A Z) for operator concave f, f(0) >= 0, ||Z|| <= 1.

    The compression case (Z an orthogonal projection followed by a subspace
    embedding) is the classical inequality for compressions.
    """
    _require_tag(f, scalarfn.OPERATOR_CONCAVE, enforce)
    a, z = linalg.as_square(a), linalg.as_square(z)
    if enforce and not linalg.is_contraction(z, tol=PREDICATE_TOL):
        raise NotAContraction("Z*Z has an eigenvalue above 1")
    lhs = z.conj().T @ linalg.spectral_apply(f, a) @ z
    rhs = linalg.spectral_apply(f, linalg.hermitian_part(z.conj().T @ a @ z))
    return _loewner_verdict("davis-hansen", lhs, rhs, tol)


def _require_pd(m, name: str) -> None:
    w = linalg.eigvalsh_desc(linalg.hermitian_part(m))
    if w[-1] <= 1e-12 * max(1.0, float(w[0])):
        raise NotPositiveDefinite(f"{name} is not positive definite")


def check_pinching_eq2(f, a, b, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """A^(1/2) phi(A+B) A^(1/2) + B^(1/2) phi(A+B) B^(1/2) <= f(A) + f(B)

    with phi(t) = f(t)/t, for operator concave f and A, B > 0.
    """
    _require_tag(f, scalarfn.OPERATOR_CONCAVE, enforce)
    a, b = linalg.as_square(a), linalg.as_square(b)
    if enforce:
        _require_pd(a, "A")
        _require_pd(b, "B")
    spec = linalg.eigh(a + b)
    w = spec.eigenvalues
    if np.any(w <= 0):
        raise NotPositiveDefinite("A+B is not positive definite")
    phi_w = f(w) / w
    v = spec.frame
    phi = linalg.hermitize((v * phi_w) @ v.conj().T, check=False)
    ra = linalg.spectral_apply(np.sqrt, a)
    rb = linalg.spectral_apply(np.sqrt, b)
    lhs = ra @ phi @ ra + rb @ phi @ rb
    rhs = linalg.spectral_apply(f, a) + linalg.spectral_apply(f, b)
    return _loewner_verdict("pinching-eq2", lhs, rhs, tol)


def check_prop_2_1(g, a, b, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """||(A+B) g(A+B)|| <= ||A^(1/2) g(A+B) A^(1/2) + B^(1/2) g(A+B) B^(1/2)||

    for g decreasing with t*g(t) increasing, A, B >= 0 (A+B > 0 when g is
    singular at 0).
    """
    _require_tag(g, scalarfn.DECREASING_TG_INCREASING, enforce)
    a, b = linalg.as_square(a), linalg.as_square(b)
    spec = linalg.eigh(a + b)
    w = np.maximum(spec.eigenvalues, 0.0)
    if g.singular_at_zero and np.any(w <= 0):
        raise NotPositiveDefinite("A+B must be positive definite for singular g")
    v = spec.frame
    gw = np.asarray(g(w), dtype=float)
    g_sum = linalg.hermitize((v * gw) @ v.conj().T, check=False)
    lhs = linalg.hermitize((v * (w * gw)) @ v.conj().T, check=False)
    ra = linalg.spectral_apply(np.sqrt, a)
    rb = linalg.spectral_apply(np.sqrt, b)
    rhs = ra @ g_sum @ ra + rb @ g_sum @ rb
    return norms.dominance_verdict(lhs, rhs, tol=tol, check_id="prop2.1")


def check_thm_2_4(f, a, z, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """||f(Z* A Z)|| <= ||Z* f(A) Z|| for concave f >= 0, A >= 0, Z expansive."""
    _require_tag(f, scalarfn.CONCAVE_NONNEG, enforce)
    a, z = linalg.as_square(a), linalg.as_square(z)
    if enforce and not linalg.is_expansive(z, tol=PREDICATE_TOL):
        raise NotExpansive("Z*Z has an eigenvalue below 1")
    lhs = linalg.spectral_apply(f, linalg.hermitian_part(z.conj().T @ a @ z))
    rhs = z.conj().T @ linalg.spectral_apply(f, a) @ z
    return norms.dominance_verdict(lhs, rhs, tol=tol, check_id="thm2.4")


def _f_eigs_desc(f, m) -> np.ndarray:
    """Descending eigenvalues of f(M) for M PSD-ish and f on [0, inf)."""
    w = np.maximum(linalg.eigvalsh_desc(m), 0.0)
    return np.sort(np.asarray(f(w), dtype=float))[::-1]


def check_eigen_sum(f, a, b, j, k, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """lambda_{j+k+1}(f(S)) <= lambda_{j+1}(f(A')) + lambda_{k+1}(f(B')).

    For PSD A, B this uses S = A+B, A' = A, B' = B; otherwise the absolute
    values |A+B|, |A|, |B| are used (triangle-inequality form).
    """
    _require_tag(f, scalarfn.CONCAVE_NONNEG, enforce)
    a, b = linalg.as_square(a), linalg.as_square(b)
    n = a.shape[0]
    if j < 0 or k < 0 or j + k + 1 > n:
        raise IndexOutOfRange(f"need j,k >= 0 and j+k+1 <= n, got {j},{k},{n}")
    psd_mode = linalg.is_psd(a, tol=PREDICATE_TOL) and linalg.is_psd(
        b, tol=PREDICATE_TOL
    )
    if psd_mode:
        s_mat, a_mat, b_mat = a + b, a, b
    else:
        s_mat = linalg.matrix_abs(a + b)
        a_mat, b_mat = linalg.matrix_abs(a), linalg.matrix_abs(b)
    lhs = float(_f_eigs_desc(f, s_mat)[j + k])
    rhs = float(_f_eigs_desc(f, a_mat)[j]) + float(_f_eigs_desc(f, b_mat)[k])
    rec = ComparisonRecord(f"lambda-j{j}-k{k}", lhs, rhs, scaled_margin(lhs, rhs))
    return Verdict(
        check_id="eigen-sum", records=[rec], passed=rec.margin >= -tol, tol=tol
    )


def check_cs_lemma(a1, a2, b1, b2, c1, c2, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """||A1 C1 B1 + A2 C2 B2|| <= ||A1^2+A2^2||^(1/2) ||B1^2+B2^2||^(1/2)

    per symmetric norm, for PSD A_i, B_i and contractions C_i.
    """
    a1, a2 = linalg.as_square(a1), linalg.as_square(a2)
    b1, b2 = linalg.as_square(b1), linalg.as_square(b2)
    c1, c2 = linalg.as_square(c1), linalg.as_square(c2)
    if enforce:
        for name, c in (("C1", c1), ("C2", c2)):
            if not linalg.is_contraction(c, tol=PREDICATE_TOL):
                raise NotAContraction(f"{name} is not a contraction")
    lhs_mat = a1 @ c1 @ b1 + a2 @ c2 @ b2
    sa = norms.singular_values(a1 @ a1 + a2 @ a2)
    sb = norms.singular_values(b1 @ b1 + b2 @ b2)

    def rhs(spec):
        return float(
            np.sqrt(norms.norm_from_sv(sa, spec) * norms.norm_from_sv(sb, spec))
        )

    return _scalar_grid_verdict("cs-lemma", lhs_mat, rhs, tol)


def check_ineq_4(a, b, tol=DEFAULT_TOL) -> Verdict:
    """||A+B|| <= || |A|+|B| ||^(1/2) || |A*|+|B*| ||^(1/2) per symmetric norm."""
    a, b = linalg.as_square(a), linalg.as_square(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    pa, pb = linalg.polar(a), linalg.polar(b)
    s_abs = norms.singular_values(pa.abs + pb.abs)
    s_abs_star = norms.singular_values(pa.abs_star + pb.abs_star)

    def rhs(spec):
        return float(
            np.sqrt(
                norms.norm_from_sv(s_abs, spec) * norms.norm_from_sv(s_abs_star, spec)
            )
        )

    return _scalar_grid_verdict("ineq4", a + b, rhs, tol)


def _require_normal(enforce, **named) -> None:
    if not enforce:
        return
    for name, m in named.items():
        if not linalg.is_normal(m, tol=PREDICATE_TOL):
            raise NotNormal(f"{name} is not normal")


def _block2(a, b, c, d) -> np.ndarray:
    shapes = {m.shape for m in (a, b, c, d)}
    if len(shapes) != 1:
        raise DimensionMismatch(f"blocks differ in size: {shapes}")
    return np.block([[a, b], [c, d]])


def check_thm_3_1(a, b, c, d, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """|| [[A,B],[C,D]] || <= || |A|+|B|+|C|+|D| || for normal blocks."""
    a, b = linalg.as_square(a), linalg.as_square(b)
    c, d = linalg.as_square(c), linalg.as_square(d)
    _require_normal(enforce, A=a, B=b, C=c, D=d)
    block = _block2(a, b, c, d)
    rhs = (
        linalg.matrix_abs(a)
        + linalg.matrix_abs(b)
        + linalg.matrix_abs(c)
        + linalg.matrix_abs(d)
    )
    v = norms.dominance_verdict(block, rhs, tol=tol, check_id="thm3.1", pad=True)
    return v


def _thm_3_2_bound(a, b, c, d) -> float:
    pa, pb = linalg.matrix_abs(a), linalg.matrix_abs(b)
    pc, pd_ = linalg.matrix_abs(c), linalg.matrix_abs(d)
    return max(
        linalg.opnorm(pa + pb),
        linalg.opnorm(pc + pd_),
        linalg.opnorm(pa + pc),
        linalg.opnorm(pb + pd_),
    )


def check_thm_3_2(a, b, c, d, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """Operator norm of [[A,B],[C,D]] bounded by the max of the four
    row/column absolute-value sums, for normal blocks."""
    a, b = linalg.as_square(a), linalg.as_square(b)
    c, d = linalg.as_square(c), linalg.as_square(d)
    _require_normal(enforce, A=a, B=b, C=c, D=d)
    lhs = linalg.opnorm(_block2(a, b, c, d))
    rhs = _thm_3_2_bound(a, b, c, d)
    rec = ComparisonRecord("operator", lhs, rhs, scaled_margin(lhs, rhs))
    return Verdict(
        check_id="thm3.2", records=[rec], passed=rec.margin >= -tol, tol=tol
    )


def check_cor_3_3(a, b, x, tol=DEFAULT_TOL) -> Verdict:
    """|| [[A,X*],[X,B]] ||_op <= max(|| |A|+|X| ||_op, || |B|+|X*| ||_op)

    for Hermitian A, B.  Also replays the 4x4-block embedding device and
    requires the block theorem to pass on it.
    """
    a = linalg.hermitize(a)
    b = linalg.hermitize(b)
    x = linalg.as_square(x)
    if a.shape != b.shape or a.shape != x.shape:
        raise DimensionMismatch("A, B, X must share a dimension")
    n = a.shape[0]
    block = np.block([[a, x.conj().T], [x, b]])
    px = linalg.matrix_abs(x)
    px_star = linalg.matrix_abs(x.conj().T)
    lhs = linalg.opnorm(block)
    rhs = max(linalg.opnorm(linalg.matrix_abs(a) + px),
              linalg.opnorm(linalg.matrix_abs(b) + px_star))
    rec = ComparisonRecord("operator", lhs, rhs, scaled_margin(lhs, rhs))

    # embedding device: 2n-sized normal blocks feeding the block theorem
    z = np.zeros((n, n), dtype=complex)
    big_a = np.block([[z, z], [z, a]])
    big_d = np.block([[b, z], [z, z]])
    big_x = np.block([[z, x], [x.conj().T, z]])
    embedded = check_thm_3_2(big_a, big_x, big_x, big_d, tol=tol)
    records = [rec] + [
        ComparisonRecord("embed-" + r.label, r.lhs, r.rhs, r.margin)
        for r in embedded.records
    ]
    passed = rec.margin >= -tol and embedded.passed
    return Verdict(check_id="cor3.3", records=records, passed=passed, tol=tol)


def check_prop_3_4(a, b, tol=DEFAULT_TOL, enforce=True) -> Verdict:
    """||A+B|| <= || |A|+|B| || for normal A, B (triangle inequality)."""
    a, b = linalg.as_square(a), linalg.as_square(b)
    _require_normal(enforce, A=a, B=b)
    rhs = linalg.matrix_abs(a) + linalg.matrix_abs(b)
    return norms.dominance_verdict(a + b, rhs, tol=tol, check_id="prop3.4")


def check_prop_3_5_eigen(s, t, j, k, tol=DEFAULT_TOL) -> Verdict:
    """lambda_{j+k+1}(|S+T|) <= (lambda_{j+1}(M) + lambda_{k+1}(M))/2

    with M = |S|+|T|, for Hermitian S, T (eigenvalue consequence of the
    unitary-mixture triangle inequality).
    """
    s = linalg.hermitize(s)
    t = linalg.hermitize(t)
    n = s.shape[0]
    if j < 0 or k < 0 or j + k + 1 > n:
        raise IndexOutOfRange(f"need j,k >= 0 and j+k+1 <= n, got {j},{k},{n}")
    w_sum = linalg.eigvalsh_desc(linalg.matrix_abs(s + t))
    m = linalg.matrix_abs(s) + linalg.matrix_abs(t)
    w_m = linalg.eigvalsh_desc(m)
    lhs = float(w_sum[j + k])
    rhs = 0.5 * (float(w_m[j]) + float(w_m[k]))
    rec = ComparisonRecord(f"lambda-j{j}-k{k}", lhs, rhs, scaled_margin(lhs, rhs))
    return Verdict(
        check_id="prop3.5", records=[rec], passed=rec.margin >= -tol, tol=tol
    )


def check_ineq_5(a, b, z, m, tol=DEFAULT_TOL) -> Verdict:
    """||(A + zB)^m|| <= ||(A + |z|B)^m|| for PSD A, B and complex z."""
    a, b = linalg.as_square(a), linalg.as_square(b)
    m = int(m)
    if m < 1:
        raise BadSpec(f"power m must be >= 1, got {m}")
    z = complex(z)
    lhs = linalg.matrix_power(a + z * b, m)
    rhs = linalg.matrix_power(a + abs(z) * b, m)
    return norms.dominance_verdict(lhs, rhs, tol=tol, check_id="ineq5")


def check_identity_6(a, b, m) -> float:
    """Relative residual of A^m + B^m = (1/m) sum_j (A + w^j B)^m,

    w = exp(2*pi*i/m).  (The root-of-unity average kills every mixed word
    in the expansion; only the pure A^m and B^m words survive.)
    """
    a, b = linalg.as_square(a), linalg.as_square(b)
    m = int(m)
    if m < 1:
        raise BadSpec(f"power m must be >= 1, got {m}")
    w = np.exp(2j * np.pi / m)
    avg = sum(linalg.matrix_power(a + (w**j) * b, m) for j in range(m)) / m
    target = linalg.matrix_power(a, m) + linalg.matrix_power(b, m)
    return linalg.opnorm(target - avg) / max(1.0, linalg.opnorm(target))


def identity_6_verdict(a, b, m, tol: float = 1e-10) -> Verdict:
    """Identity residual wrapped as a Verdict (pass iff residual <= tol)."""
    residual = check_identity_6(a, b, m)
    rec = ComparisonRecord("residual", residual, 0.0, -residual)
    return Verdict(
        check_id="identity6", records=[rec], passed=residual <= tol, tol=tol
    )


CHECK_IDS = (
    "thm1.1",
    "thm1.2",
    "davis-hansen",
    "pinching-eq2",
    "prop2.1",
    "thm2.4",
    "eigen-sum",
    "cs-lemma",
    "ineq4",
    "thm3.1",
    "thm3.2",
    "cor3.3",
    "prop3.4",
    "prop3.5",
    "ineq5",
    "identity6",
)
