"""Acceptance gate: one test per verification criterion.

Each test prints one PASS/FAIL line under `pytest -v`.  Criterion 7 is
split per gate identity; the four decomposition identities documented in
gates.verify_gates as not holding (XP_two_factor, Hprime_full,
H_chain_full, H_chain_code_block) are asserted as stated and fail here by
design — see the module docstring of chi2qec.gates for the analysis.
"""

import pytest

from chi2qec import cli, gates


def _run(criterion):
    result = criterion()
    assert result["passed"], "%s: %s" % (result["name"], result["detail"])


def test_criterion_1_kl_alpha_matrices():
    _run(cli.criterion_kl_alpha)


def test_criterion_2_symmetry_synthesis():
    _run(cli.criterion_symmetry_synthesis)


def test_criterion_3_bc_kl_and_moment_identities():
    _run(cli.criterion_bc_kl_and_moments)


def test_criterion_4_two_mode_bc_amplitude_damping():
    _run(cli.criterion_two_mode_bc)


def test_criterion_5_syndrome_tables():
    _run(cli.criterion_syndrome_tables)


def test_criterion_6_recovery_fidelity():
    _run(cli.criterion_recovery)


_GATE_CHECKS = gates.verify_gates()


@pytest.mark.parametrize(
    "check", _GATE_CHECKS, ids=[c["name"] for c in _GATE_CHECKS]
)
def test_criterion_7_gate_identities(check):
    assert check["passed"], (
        "%s (%s): max deviation %.3e"
        % (check["name"], check["decomposition"], check["max_deviation"])
    )


def test_criterion_8_hamming_bounds():
    _run(cli.criterion_bounds)


def test_criterion_9_rates_and_photon_numbers():
    _run(cli.criterion_metadata)
