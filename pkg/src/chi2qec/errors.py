"""Error-operator families and Knill-Laflamme verification.

kl_check implements the general correctability criterion
P E_u^dag E_v P = alpha_uv P with Hermitian (not necessarily diagonal)
alpha.  For photon-loss/gain sets the off-diagonal alpha entries vanish
automatically (photon-number bookkeeping); for dephasing sets they are
allowed, which is exactly the projection-correctability relaxation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
import itertools
import json
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from .codes import CodeSpec
from .fock import (
    BasisIndex,
    LinearOperator,
    ModeLayout,
    StateVector,
    TruncationOverflow,
    adjoint,
    apply,
    compose,
    embed,
    enumerate_truncated_space,
    ladder,
    number_operator,
)

DEFAULT_KL_TOL = 1e-9


class KLViolation(RuntimeError):
    """Recovery requested for an error set that fails the KL condition."""


@dataclass
class ErrorOperator:
    label: str
    operator: LinearOperator
    order: int
    kind: str  # loss | gain | dephasing | identity | kraus


@dataclass
class KLReport:
    labels: List[str]
    alpha: np.ndarray
    max_offdiag_residual: float
    max_distortion_residual: float
    verdict: bool
    tolerance: float

    def to_json_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "alpha": [
                [[float(z.real), float(z.imag)] for z in row] for row in self.alpha
            ],
            "max_offdiag_residual": self.max_offdiag_residual,
            "max_distortion_residual": self.max_distortion_residual,
            "verdict": bool(self.verdict),
            "tolerance": self.tolerance,
        }

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


def _mode_tag(layout: ModeLayout, mode: int) -> str:
    label, group = layout.modes[mode]
    short = {"signal": "s", "idler": "i", "pump": "p"}[label]
    return short if layout.n_groups == 1 else "%s%d" % (short, group)


def enclosing_basis(layout: ModeLayout, headroom: int = 0) -> BasisIndex:
    """Truncated product basis with per-mode caps enlarged by `headroom`
    so gain monomials up to that order stay inside the space."""
    return enumerate_truncated_space(
        layout.with_caps([c + headroom for c in layout.caps])
    )


def _monomial(basis, layout, exponents, kind) -> LinearOperator:
    op = LinearOperator.identity(basis)
    for mode, power in enumerate(exponents):
        for _ in range(power):
            if kind == "loss":
                step = ladder(mode, "lower", basis)
            elif kind == "gain":
                step = ladder(mode, "raise", basis)
            else:
                step = number_operator(mode, basis)
            op = compose(step, op)
    return op


def _monomial_label(layout, exponents, kind) -> str:
    stem = {"loss": "a_%s", "gain": "adag_%s", "dephasing": "n_%s"}[kind]
    parts = []
    for mode, power in enumerate(exponents):
        if power == 0:
            continue
        term = stem % _mode_tag(layout, mode)
        if power > 1:
            term += "^%d" % power
        parts.append(term)
    return " ".join(parts) if parts else "I"


def _compositions(total: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def xi_set(m: int, layout: ModeLayout, basis: Optional[BasisIndex] = None) -> List[ErrorOperator]:
    """Order-m error set: all loss monomials of total degree m, their
    adjoints (gain), and dephasing monomials of total degree m-1, plus the
    identity.  Degree-0 dephasing coincides with the identity and is
    deduplicated."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if basis is None:
        basis = enclosing_basis(layout, headroom=m)
    ops: List[ErrorOperator] = [
        ErrorOperator("I", LinearOperator.identity(basis), 0, "identity")
    ]
    if m == 0:
        return ops
    nm = layout.n_modes
    for kind in ("loss", "gain"):
        for exps in _compositions(m, nm):
            ops.append(
                ErrorOperator(
                    _monomial_label(layout, exps, kind),
                    _monomial(basis, layout, exps, kind),
                    m,
                    kind,
                )
            )
    if m >= 2:
        for exps in _compositions(m - 1, nm):
            ops.append(
                ErrorOperator(
                    _monomial_label(layout, exps, "dephasing"),
                    _monomial(basis, layout, exps, "dephasing"),
                    m,
                    "dephasing",
                )
            )
    return ops


def lowest_order_loss_kraus(
    gamma: float, layout: ModeLayout, basis: Optional[BasisIndex] = None
) -> List[ErrorOperator]:
    """Lowest-order photon-loss Kraus family: E_l = sqrt(gamma) a_l per mode
    and the no-jump operator E_0 = (I - gamma sum_l n_l)^(1/2).

    E_0 agrees with the first-order expansion I - sum gamma n_l/2 at the
    order the family is valid to, and makes sum E^dag E = I exact on any
    constant-total-photon subspace with gamma < 1/(total photons); the
    square-root argument is clamped at zero beyond that.
    """
    if not 0 <= gamma < 1:
        raise ValueError("gamma must satisfy 0 <= gamma < 1")
    if basis is None:
        basis = enumerate_truncated_space(layout)
    totals = np.array([sum(s) for s in basis.states], dtype=float)
    diag = np.sqrt(np.clip(1.0 - gamma * totals, 0.0, None))
    e0 = LinearOperator(basis, basis, sp.diags(diag.astype(complex), format="csr"))
    out = [ErrorOperator("E_0", e0, 0, "kraus")]
    if gamma > 0:
        for mode in range(layout.n_modes):
            op = ladder(mode, "lower", basis)
            op = LinearOperator(basis, basis, math.sqrt(gamma) * op.matrix)
            out.append(
                ErrorOperator("sqrt(gamma) a_%s" % _mode_tag(layout, mode), op, 1, "kraus")
            )
    return out


def loss_kraus_completeness_residual(
    kraus: Sequence[ErrorOperator], on: BasisIndex
) -> float:
    """Max-entry deviation of sum E^dag E from the identity, restricted to
    the given sub-basis of the Kraus domain."""
    basis = kraus[0].operator.domain
    total = None
    for e in kraus:
        term = adjoint(e.operator).matrix.dot(e.operator.matrix)
        total = term if total is None else total + term
    idx = [basis.index_of(s) for s in on.states]
    dense = total.toarray()[np.ix_(idx, idx)]
    return float(np.max(np.abs(dense - np.eye(len(idx)))))


def amplitude_damping_kraus(
    gamma: float, m: int, mode: int, basis: BasisIndex
) -> ErrorOperator:
    """A(m) = sum_{n>=m} sqrt(C(n,m)) gamma^{m/2} (1-gamma)^{(n-m)/2} |n-m><n|
    on one mode of a truncated product basis.  Summing A(m)^dag A(m) over
    m up to the cap resolves the identity exactly on the truncated space."""
    if not 0 <= gamma < 1:
        raise ValueError("gamma must satisfy 0 <= gamma < 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    rows, cols, vals = [], [], []
    for j, s in enumerate(basis.states):
        n = s[mode]
        if n < m:
            continue
        target = s[:mode] + (n - m,) + s[mode + 1:]
        coeff = math.sqrt(math.comb(n, m)) * gamma ** (m / 2.0) * (1 - gamma) ** (
            (n - m) / 2.0
        )
        rows.append(basis.index_of(target))
        cols.append(j)
        vals.append(coeff)
    mat = sp.csr_matrix(
        (vals, (rows, cols)), shape=(basis.dimension, basis.dimension), dtype=complex
    )
    return ErrorOperator("A_%d(mode %d)" % (m, mode), LinearOperator(basis, basis, mat), m, "kraus")


def ad_product_set(gamma: float, m: int, basis: BasisIndex, modes: Sequence[int]) -> List[ErrorOperator]:
    """All products of per-mode amplitude-damping Kraus operators with total
    loss order m over the given modes."""
    out = []
    for exps in _compositions(m, len(modes)):
        op = LinearOperator.identity(basis)
        parts = []
        for mode, k in zip(modes, exps):
            a = amplitude_damping_kraus(gamma, k, mode, basis)
            op = compose(a.operator, op)
            parts.append("A_%s(%d)" % (str(mode), k))
        out.append(ErrorOperator(" ".join(parts), op, m, "kraus"))
    return out


def kl_check(
    code: CodeSpec, errors: Sequence[ErrorOperator], tol: float = DEFAULT_KL_TOL
) -> KLReport:
    """Evaluate <a~|E_u^dag E_v|b~> for all error pairs and logical pairs.

    alpha_uv is the mean of the logical-diagonal entries; the verdict is
    true iff (i) every a != b entry vanishes within tol and (ii) every
    logical-diagonal entry matches alpha_uv within tol.
    """
    basis = errors[0].operator.domain
    n_modes = len(basis.states[0])
    caps = [max(s[mode] for s in basis.states) for mode in range(n_modes)]
    max_occ = [
        max(s[mode] for psi in code.logical_states for s, _ in psi.support())
        for mode in range(n_modes)
    ]
    for e in errors:
        if e.operator.domain != basis:
            raise ValueError("error operators must share a basis")
        if e.kind == "gain" and any(
            occ + e.order > cap for occ, cap in zip(max_occ, caps)
        ):
            raise TruncationOverflow(
                "gain operator %r needs more headroom in the enclosing basis" % e.label
            )
    words = [embed(psi, basis) for psi in code.logical_states]
    images = np.column_stack(
        [apply(e.operator, w).amplitudes for e in errors for w in words]
    )
    K = len(errors)
    L = len(words)
    gram = images.conjugate().transpose() @ images  # (K*L) x (K*L)
    M = gram.reshape(K, L, K, L).transpose(0, 2, 1, 3)  # [u, v, a, b]

    alpha = M.trace(axis1=2, axis2=3) / L
    diag = np.einsum("uvaa->uva", M)
    off = M.copy()
    for a in range(L):
        off[:, :, a, a] = 0.0
    max_off = float(np.max(np.abs(off))) if off.size else 0.0
    max_dist = float(np.max(np.abs(diag - alpha[:, :, None])))
    return KLReport(
        labels=[e.label for e in errors],
        alpha=alpha,
        max_offdiag_residual=max_off,
        max_distortion_residual=max_dist,
        verdict=bool(max_off <= tol and max_dist <= tol),
        tolerance=tol,
    )


# ---------------------------------------------------------------------------
# Exact binomial-code moment sums.


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
        if out == 0:
            return 0
    return out


def _rising(n: int, k: int) -> int:
    out = 1
    for t in range(1, k + 1):
        out *= n + t
    return out


def _bc_occupations(N: int, side: str):
    """(weight, n_s, n_p) per branch of the requested codeword; n_i = n_s."""
    M = 2 * N - 1
    for j in range(N):
        if side == "zero":
            yield math.comb(M, 2 * j), 2 * j, M - 2 * j
        else:
            yield math.comb(M, 2 * j + 1), 2 * j + 1, M - 2 * j - 1


def bc_moment_numerator(N: int, h: int, g: int, m: int, side: str, kind: str) -> int:
    """Exact integer 2^{2N-2} <side| E^dag E |side> for the binomial code.

    kind "loss": E = a_s^h a_i^g a_p^{m-h-g} (0 <= h+g <= m <= N);
    kind "gain": the adjoint monomial of the same exponents;
    kind "dephasing": E = n_s^h n_i^g n_p^{m-1-h-g} (h+g <= m-1).
    """
    if side not in ("zero", "one"):
        raise ValueError("side must be 'zero' or 'one'")
    if kind not in ("loss", "gain", "dephasing"):
        raise ValueError("unknown kind %r" % kind)
    if h < 0 or g < 0 or m < 0:
        raise ValueError("negative exponent")
    if kind == "dephasing":
        if m < 1 or h + g > m - 1:
            raise ValueError("dephasing requires 1 <= m and h+g <= m-1")
        lp = m - 1 - h - g
    else:
        if h + g > m or m > N:
            raise ValueError("require h+g <= m <= N")
        lp = m - h - g
    total = 0
    for w, ns, npump in _bc_occupations(N, side):
        if kind == "loss":
            term = _falling(ns, h) * _falling(ns, g) * _falling(npump, lp)
        elif kind == "gain":
            term = _rising(ns, h) * _rising(ns, g) * _rising(npump, lp)
        else:
            term = ns ** (2 * h) * ns ** (2 * g) * npump ** (2 * lp)
        total += w * term
    return total


def bc_moment_sum(N: int, h: int, g: int, m: int, side: str, kind: str) -> Fraction:
    """Exact rational <side| E^dag E |side> (numerator over 4^{N-1})."""
    return Fraction(bc_moment_numerator(N, h, g, m, side, kind), 4 ** (N - 1))


# ---------------------------------------------------------------------------
# Canonical recovery.


def canonical_recovery(
    code: CodeSpec, errors: Sequence[ErrorOperator], tol: float = DEFAULT_KL_TOL
) -> List[LinearOperator]:
    """Standard KL recovery: diagonalize alpha, orthonormalize the error
    subspaces and return the projector-conjugated isometries as Kraus
    elements.  Requires the error set to pass kl_check."""
    report = kl_check(code, errors, tol)
    if not report.verdict:
        raise KLViolation(
            "error set fails KL (offdiag %.3e, distortion %.3e)"
            % (report.max_offdiag_residual, report.max_distortion_residual)
        )
    basis = errors[0].operator.domain
    words = [embed(psi, basis).amplitudes for psi in code.logical_states]
    W = np.column_stack(words)  # dim x L isometry onto the code space
    alpha = (report.alpha + report.alpha.conjugate().transpose()) / 2
    evals, U = np.linalg.eigh(alpha)
    kraus = []
    for k in range(len(errors)):
        d = evals[k]
        if d <= tol:
            continue
        # F_k restricted to the code space: dim x L.
        FkW = sum(
            U[u, k] * errors[u].operator.matrix.dot(W) for u in range(len(errors))
        )
        Vk = FkW / math.sqrt(d)  # isometry from code space into error sector
        Rk = W @ Vk.conjugate().transpose()  # maps error sector back to code space
        kraus.append(LinearOperator.from_dense(basis, basis, Rk))
    return kraus


def recovery_fidelity(
    code: CodeSpec,
    recovery: Sequence[LinearOperator],
    error: ErrorOperator,
    logical_amplitudes: np.ndarray,
) -> float:
    """Channel fidelity of error-then-recovery on one logical state."""
    basis = recovery[0].domain
    words = [embed(psi, basis).amplitudes for psi in code.logical_states]
    psi = sum(c * w for c, w in zip(logical_amplitudes, words))
    psi = psi / np.linalg.norm(psi)
    corrupted = error.operator.matrix.dot(psi)
    nc = np.linalg.norm(corrupted)
    if nc == 0:
        raise ValueError("error annihilates the state")
    corrupted /= nc
    fid_sq = sum(abs(np.vdot(psi, R.matrix.dot(corrupted))) ** 2 for R in recovery)
    return float(math.sqrt(min(fid_sq, 1.0)))
