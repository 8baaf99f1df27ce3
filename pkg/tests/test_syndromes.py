"""Parity measurement, syndrome tables, decoding and full recovery."""

import numpy as np
import pytest

from chi2qec.codes import build_bc, build_eecc, build_pcc
from chi2qec.fock import (
    StateVector,
    adjoint,
    enumerate_irreducible_subspace,
    enumerate_truncated_space,
    three_mode_layout,
)
from chi2qec.syndromes import (
    IndefiniteParity,
    SyndromeRecord,
    UnknownSyndrome,
    bc_configuration_count_ok,
    decode_syndrome,
    full_recovery,
    measure_parity,
    p3_scheme,
    p_bc_scheme,
    q_bc_scheme,
    random_logical_state,
    restoration_isometry,
    syndrome_table,
    to_csv,
)


def test_measure_parity_definite():
    basis = enumerate_irreducible_subspace(2)
    psi = StateVector.from_terms(basis, {(2, 2, 0): 0.6, (0, 0, 2): 0.8})
    assert measure_parity(psi, p3_scheme()) == (0, 0, 0)


def test_measure_parity_indefinite_raises():
    # All H_2 kets share even pairwise sums, so mix in a ket from the
    # enclosing truncated space with odd n_s + n_i.
    basis = enumerate_truncated_space(three_mode_layout(2))
    psi = StateVector.from_terms(basis, {(0, 0, 2): 0.6, (1, 0, 1): 0.8})
    with pytest.raises(IndefiniteParity):
        measure_parity(psi, p3_scheme())


def test_measure_parity_rejects_empty_state():
    basis = enumerate_irreducible_subspace(1)
    psi = StateVector(basis, np.zeros(2))
    with pytest.raises(ValueError):
        measure_parity(psi, p3_scheme())


def test_parity_scheme_rejects_bad_modulus():
    from chi2qec.syndromes import ParityScheme

    with pytest.raises(ValueError):
        ParityScheme("bad", ((((0, 1),), 1),))


def test_pcc_table_has_12_distinct_rows():
    table = syndrome_table(build_pcc(3))
    assert len(table) == 12
    pairs = [(r.p, r.q) for r in table]
    assert len(set(pairs)) == 12
    rows = {r.error_label: (r.p, r.q) for r in table}
    assert rows["a_s1"] == ((1, 1, 0, 0, 0, 0), (2, 0))
    assert rows["adag_p2"] == ((0, 0, 0, 0, 1, 1), (0, 1))


def test_eecc_table_has_6_distinct_rows():
    table = syndrome_table(build_eecc(2))
    assert len(table) == 6
    pairs = [(r.p, r.q) for r in table]
    assert len(set(pairs)) == 6
    rows = {r.error_label: (r.p, r.q) for r in table}
    assert rows["a_s"] == ((1, 1, 0), (2,))
    assert rows["a_i"] == ((1, 0, 1), (2,))
    assert rows["adag_p"] == ((0, 1, 1), (1,))


def test_bc_table_net_change_parities():
    N = 2
    table = syndrome_table(build_bc(N), monitored_order=1)
    assert len(table) == 6
    for r in table:
        if r.error_label.startswith("adag"):
            assert r.q == (1 % (6 * N - 3),)
        else:
            assert r.q == (-1 % (6 * N - 3),)
    rows = {r.error_label: r.p for r in table}
    # a_s shifts n_s by -1: components (n_s-n_i, n_s+n_p, n_i+n_p) mod 3.
    assert rows["a_s"] == (2, 2, 0)
    assert rows["a_p"] == (0, 2, 2)


def test_bc_configuration_count():
    assert bc_configuration_count_ok(2, 2)
    assert bc_configuration_count_ok(3, 3)
    assert not bc_configuration_count_ok(1, 1)


def test_decode_round_trip():
    for spec in (build_pcc(3), build_eecc(2)):
        for r in syndrome_table(spec):
            assert decode_syndrome(spec, r.p, r.q) == r.error_label


def test_decode_no_error_and_unknown():
    spec = build_eecc(2)
    assert decode_syndrome(spec, (0, 0, 0), (0,)) == "no error"
    with pytest.raises(UnknownSyndrome):
        decode_syndrome(spec, (1, 1, 1), (0,))


def test_decode_bc_order_guard():
    spec = build_bc(1)
    with pytest.raises(UnknownSyndrome):
        decode_syndrome(spec, (1, 0, 0), (1,), monitored_order=1)


def test_restoration_isometry_maps_and_partial_isometry():
    big = enumerate_truncated_space(three_mode_layout(2, groups=1))
    R = restoration_isometry("eecc_signal_loss", big)
    src = big.index_of((1, 2, 0))
    dst = big.index_of((0, 0, 2))
    assert R.matrix[dst, src] == 1.0
    # R^dag R is a projector onto the declared domain.
    P = adjoint(R).matrix.dot(R.matrix).toarray()
    assert np.allclose(P @ P, P)
    assert np.trace(P).real == pytest.approx(2.0)
    with pytest.raises(KeyError):
        restoration_isometry("nope", big)


@pytest.mark.parametrize(
    "builder,N,labels",
    [(build_pcc, 3, ("a_s1", "a_p1")), (build_eecc, 2, ("a_s", "a_p"))],
)
def test_full_recovery_unit_fidelity(builder, N, labels):
    spec = builder(N)
    rng = np.random.default_rng(5)
    for label in labels:
        for _ in range(10):
            psi = random_logical_state(spec, rng)
            out, fid = full_recovery(spec, label, psi)
            assert fid == pytest.approx(1.0, abs=1e-10)
            overlap = abs(np.vdot(psi.amplitudes, out.amplitudes))
            assert overlap == pytest.approx(1.0, abs=1e-10)


def test_full_recovery_identity_case_and_errors():
    spec = build_eecc(2)
    psi = spec.logical_states[0]
    out, fid = full_recovery(spec, "none", psi)
    assert fid == 1.0
    with pytest.raises(KeyError):
        full_recovery(spec, "a_i", psi)
    with pytest.raises(ValueError):
        full_recovery(build_bc(2), "a_s", build_bc(2).logical_states[0])


def test_random_logical_state_is_normalized():
    spec = build_pcc(3)
    rng = np.random.default_rng(0)
    psi = random_logical_state(spec, rng)
    assert psi.norm() == pytest.approx(1.0)


def test_to_csv_layout():
    records = [SyndromeRecord("a_s", (1, 1, 0), (2,))]
    assert to_csv(records) == "error_label,p,q\na_s,1 1 0,2\n"
