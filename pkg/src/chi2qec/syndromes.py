"""Parity-vector schemes, syndrome tables, decoding and recovery pipelines.

A parity scheme is a list of components; each component is a signed sum of
mode occupations reduced by a modulus.  Signed coefficients are needed
because the binomial code's first component is n_s - n_i.

The generalized parity of the binomial code is recorded as the net
total-photon-number *change* modulo 6N-3 (-m for an m-loss, +m for an
m-gain): the absolute total is not ket-definite on the binomial codewords
(branch totals 2j + 2N-1 vary with j), while the change is, and it is
exactly the loss-versus-gain discriminator the table needs.
"""

from dataclasses import dataclass
import io
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .codes import CodeSpec, build_bc, build_eecc, build_pcc
from .errors import ErrorOperator, _compositions, _monomial, _monomial_label, enclosing_basis
from .fock import (
    BasisIndex,
    LinearOperator,
    StateVector,
    apply,
    embed,
    enumerate_irreducible_subspace,
    enumerate_truncated_space,
    ladder,
    project,
    tensor_basis,
    three_mode_layout,
)
from .gates import (
    canonical_to_v,
    cnot2_21,
    cnot2p_12,
    cnot2pp_12,
    evolve,
    lambda21_h,
    lambda21_h_bar,
    v_to_canonical,
)


class IndefiniteParity(ValueError):
    """Support kets disagree on a parity component — the state is not in a
    single syndrome sector."""


class UnknownSyndrome(KeyError):
    """(p, q) pair absent from the code's syndrome table."""


@dataclass(frozen=True)
class ParityScheme:
    name: str
    components: Tuple[Tuple[Tuple[Tuple[int, int], ...], int], ...]
    # components: ((mode, coefficient), ...), modulus

    def __post_init__(self):
        for terms, modulus in self.components:
            if modulus < 2:
                raise ValueError("modulus must be >= 2")


@dataclass
class SyndromeRecord:
    error_label: str
    p: Tuple[int, ...]
    q: Tuple[int, ...]


def _pair_scheme(name, pairs, modulus):
    return ParityScheme(
        name, tuple((tuple(terms), modulus) for terms in pairs)
    )


def p3_scheme() -> ParityScheme:
    return _pair_scheme("p3", [((0, 1), (1, 1)), ((0, 1), (2, 1)), ((1, 1), (2, 1))], 2)


def p12_scheme() -> ParityScheme:
    pairs = []
    for base in (0, 3):
        s, i, p = base, base + 1, base + 2
        pairs += [((s, 1), (i, 1)), ((s, 1), (p, 1)), ((i, 1), (p, 1))]
    return _pair_scheme("p12", pairs, 2)


def q12_scheme() -> ParityScheme:
    return _pair_scheme("q12", [((0, 1), (1, 1), (2, 1)), ((3, 1), (4, 1), (5, 1))], 3)


def q_eecc_scheme() -> ParityScheme:
    return _pair_scheme("qEECC", [((0, 1), (1, 1), (2, 1))], 3)


def p_bc_scheme(N: int) -> ParityScheme:
    return _pair_scheme(
        "pBC", [((0, 1), (1, -1)), ((0, 1), (2, 1)), ((1, 1), (2, 1))], 2 * N - 1
    )


def q_bc_scheme(N: int) -> ParityScheme:
    return _pair_scheme("qBC", [((0, 1), (1, 1), (2, 1))], 6 * N - 3)


def measure_parity(state: StateVector, scheme: ParityScheme, tol: float = 1e-12) -> Tuple[int, ...]:
    """Common modular value of each component over the state's support."""
    support = [s for s, _ in state.support(tol)]
    if not support:
        raise ValueError("empty state")
    out = []
    for terms, modulus in scheme.components:
        values = {
            sum(coeff * ket[mode] for mode, coeff in terms) % modulus
            for ket in support
        }
        if len(values) != 1:
            raise IndefiniteParity(
                "component %r of %s has mixed values %r"
                % (terms, scheme.name, sorted(values))
            )
        out.append(values.pop())
    return tuple(out)


def _single_mode_errors(code: CodeSpec):
    """(label, operator, group, net photon change) per single loss/gain."""
    basis = enclosing_basis(code.layout, headroom=1)
    short = {"signal": "s", "idler": "i", "pump": "p"}
    out = []
    for delta, prefix, kind in ((-1, "a", "lower"), (+1, "adag", "raise")):
        for mode, (label, group) in enumerate(code.layout.modes):
            tag = short[label] + (str(group) if code.layout.n_groups > 1 else "")
            out.append(("%s_%s" % (prefix, tag), ladder(mode, kind, basis), group, delta))
    return basis, out


def _measure_consistent(states, scheme):
    values = {measure_parity(s, scheme) for s in states}
    if len(values) != 1:
        raise IndefiniteParity(
            "codewords disagree on %s: %r" % (scheme.name, sorted(values))
        )
    return values.pop()


def syndrome_table(code: CodeSpec, monitored_order: Optional[int] = None) -> List[SyndromeRecord]:
    """Apply each declared single-error operator to every codeword and
    measure the code's parity schemes.

    PCC: 12 rows (single loss + single gain on 6 modes) with (p12, q12).
    EECC: 6 rows with (p3, qEECC).  BC: homogeneous loss and gain monomials
    of each order m (default: all m <= N) with (pBC, net-change qBC).
    """
    records: List[SyndromeRecord] = []
    if code.name in ("PCC", "EECC"):
        # p is measured on the error images; the generalized parity q is the
        # net photon-number change per group mod 3 (a single ladder operator
        # shifts every ket's group total by exactly +-1, while the absolute
        # group totals are not ket-definite on these codewords).
        basis, errs = _single_mode_errors(code)
        p_scheme = p12_scheme() if code.name == "PCC" else p3_scheme()
        words = [embed(w, basis) for w in code.logical_states]
        for label, op, group, delta in errs:
            images = [apply(op, w) for w in words]
            images = [im.normalized() for im in images if im.norm() > 1e-12]
            p = _measure_consistent(images, p_scheme)
            q = [0] * code.layout.n_groups
            q[group - 1] = delta % 3
            records.append(SyndromeRecord(label, p, tuple(q)))
        return records
    if code.name == "BC":
        N = code.parameters["N"]
        orders = [monitored_order] if monitored_order else range(1, N + 1)
        for m in orders:
            basis = enclosing_basis(code.layout, headroom=m)
            words = [embed(w, basis) for w in code.logical_states]
            pb = p_bc_scheme(N)
            for kind, sign in (("loss", -1), ("gain", +1)):
                for exps in _compositions(m, 3):
                    op = _monomial(basis, code.layout, exps, kind)
                    label = _monomial_label(code.layout, exps, kind)
                    images = [apply(op, w) for w in words]
                    images = [im.normalized() for im in images if im.norm() > 1e-12]
                    p = _measure_consistent(images, pb)
                    q = (sign * m % (6 * N - 3),)
                    records.append(SyndromeRecord(label, p, q))
        return records
    raise ValueError("no syndrome table for code %r" % code.name)


def bc_configuration_count_ok(N: int, m: int) -> bool:
    """(m+2)(m+1)/2 distinct loss configurations fit inside the (2N-1)^3
    possible parity vectors."""
    return (m + 2) * (m + 1) // 2 <= (2 * N - 1) ** 3


def decode_syndrome(
    code: CodeSpec,
    p: Sequence[int],
    q: Sequence[int],
    monitored_order: Optional[int] = None,
) -> str:
    """Unique error hypothesis for a measured (p, q) pair."""
    p = tuple(p)
    q = tuple(q)
    if all(v == 0 for v in p) and all(v == 0 for v in q):
        return "no error"
    if code.name == "BC":
        N = code.parameters["N"]
        if monitored_order is not None and not bc_configuration_count_ok(N, monitored_order):
            raise UnknownSyndrome("syndrome space too small for order %d" % monitored_order)
    table = syndrome_table(code, monitored_order=monitored_order)
    matches = [r.error_label for r in table if r.p == p and r.q == q]
    if not matches:
        raise UnknownSyndrome((p, q))
    if len(set(matches)) > 1:
        raise UnknownSyndrome("ambiguous syndrome %r" % ((p, q),))
    return matches[0]


# ---------------------------------------------------------------------------
# Restoration isometries and full recovery pipelines.

_RESTORATION_MAPS = {
    # Per-qutrit basis-state maps realized by the restoration circuits.
    "pcc_signal_loss": {(1, 2, 0): (0, 0, 2), (0, 1, 1): (2, 2, 0)},
    "pcc_pump_loss": {(0, 0, 1): (0, 0, 2), (1, 1, 0): (2, 2, 0)},
    "eecc_signal_loss": {(1, 2, 0): (0, 0, 2), (0, 1, 1): (2, 2, 0)},
    "eecc_pump_loss": {(0, 0, 1): (0, 0, 2), (1, 1, 0): (2, 2, 0)},
}


def restoration_isometry(case: str, basis: BasisIndex) -> LinearOperator:
    """Partial isometry on a three-mode (group-1) truncated basis mapping
    the corrupted kets back into H_2; zero outside its declared domain."""
    try:
        mapping = _RESTORATION_MAPS[case]
    except KeyError:
        raise KeyError("unknown restoration case %r" % case)
    dim = basis.dimension
    mat = np.zeros((dim, dim), dtype=complex)
    width = len(basis.states[0])
    for src, dst in mapping.items():
        for j, st in enumerate(basis.states):
            if st[:3] == src:
                target = dst + st[3:]
                mat[basis.index_of(target), j] = 1.0
    return LinearOperator.from_dense(basis, basis, mat)


def _eecc_recovery_gates() -> List[np.ndarray]:
    """Generator-built gates completing the embedded-qubit recovery:
    e^{-i pi G5/6} then e^{i pi G7/3} (the printed sign on the first
    exponent maps beta |220> to -beta |111>; the oracle-selected sign is
    implemented)."""
    g1 = v_to_canonical(evolve([(5, -np.pi / 6)]))
    g2 = v_to_canonical(evolve([(7, np.pi / 3)]))
    return [g1, g2]


_PCC_SEQUENCES = {
    "a_s1": ("pcc_signal_loss",
             lambda: [cnot2_21().unitary, lambda21_h().unitary,
                      lambda21_h_bar().unitary, cnot2p_12().unitary]),
    "a_p1": ("pcc_pump_loss",
             lambda: [lambda21_h().unitary, lambda21_h_bar().unitary,
                      cnot2_21().unitary, cnot2pp_12().unitary]),
}

_EECC_SEQUENCES = {
    "a_s": "eecc_signal_loss",
    "a_p": "eecc_pump_loss",
}


def full_recovery(code: CodeSpec, error_label: str, state: StateVector):
    """Apply the error, the restoration isometry and the published gate
    sequence; returns (output StateVector on the code basis, fidelity)."""
    if error_label == "none":
        return state, 1.0
    if code.name == "PCC" and code.parameters["N"] == 3:
        if error_label not in _PCC_SEQUENCES:
            raise KeyError("unsupported PCC error %r" % error_label)
        case, gate_seq = _PCC_SEQUENCES[error_label]
        mode = 0 if error_label == "a_s1" else 2
        layout = three_mode_layout(2, groups=2)
        big = enumerate_truncated_space(layout)
        corrupted = apply(ladder(mode, "lower", big), embed(state, big)).normalized()
        restored = apply(restoration_isometry(case, big), corrupted)
        pair = project(restored, code.basis)
        out = pair.amplitudes
        for U in gate_seq():
            out = U @ out
        result = StateVector(code.basis, out)
    elif code.name == "EECC" and code.parameters["N"] == 2:
        if error_label not in _EECC_SEQUENCES:
            raise KeyError("unsupported EECC error %r" % error_label)
        case = _EECC_SEQUENCES[error_label]
        mode = 0 if error_label == "a_s" else 2
        layout = three_mode_layout(2, groups=1)
        big = enumerate_truncated_space(layout)
        corrupted = apply(ladder(mode, "lower", big), embed(state, big)).normalized()
        restored = apply(restoration_isometry(case, big), corrupted)
        h2 = project(restored, code.basis)
        out = h2.amplitudes
        for U in _eecc_recovery_gates():
            out = U @ out
        result = StateVector(code.basis, out)
    else:
        raise ValueError("full_recovery supports qutrit PCC and qubit EECC")
    fidelity = abs(np.vdot(state.amplitudes, result.amplitudes))
    return result, float(fidelity)


def random_logical_state(code: CodeSpec, rng: np.random.Generator) -> StateVector:
    coeffs = rng.normal(size=len(code.logical_states)) + 1j * rng.normal(
        size=len(code.logical_states)
    )
    coeffs /= np.linalg.norm(coeffs)
    amps = sum(c * w.amplitudes for c, w in zip(coeffs, code.logical_states))
    return StateVector(code.basis, amps)


def to_csv(records: Sequence[SyndromeRecord]) -> str:
    """CSV with columns error_label, p, q (vectors space-separated)."""
    buf = io.StringIO()
    buf.write("error_label,p,q\n")
    for r in records:
        buf.write(
            "%s,%s,%s\n"
            % (r.error_label, " ".join(map(str, r.p)), " ".join(map(str, r.q)))
        )
    return buf.getvalue()
