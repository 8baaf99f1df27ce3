"""Truncated Fock-space algebra."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chi2qec.fock import (
    BasisIndex,
    DimensionMismatch,
    LinearOperator,
    MissingBasisState,
    StateVector,
    TruncationOverflow,
    adjoint,
    apply,
    compose,
    embed,
    enumerate_irreducible_subspace,
    enumerate_truncated_space,
    expectation,
    inner_product,
    ladder,
    number_operator,
    project,
    state_label,
    tensor,
    tensor_basis,
    three_mode_layout,
    total_number_operator,
    two_mode_layout,
)


def test_irreducible_subspace_states():
    basis = enumerate_irreducible_subspace(2)
    assert basis.states == ((0, 0, 2), (1, 1, 1), (2, 2, 0))
    pair = enumerate_irreducible_subspace(1, groups=2)
    assert pair.dimension == 4
    assert pair.states[0] == (0, 0, 1, 0, 0, 1)


def test_truncated_space_enumeration_and_overflow():
    layout = three_mode_layout(2)
    basis = enumerate_truncated_space(layout)
    assert basis.dimension == 27
    assert basis.states[0] == (0, 0, 0)
    assert basis.states[-1] == (2, 2, 2)
    with pytest.raises(TruncationOverflow):
        enumerate_truncated_space(three_mode_layout(200))


def test_ladder_matrix_elements():
    basis = enumerate_truncated_space(three_mode_layout(3))
    a = ladder(0, "lower", basis)
    src = basis.index_of((2, 0, 0))
    dst = basis.index_of((1, 0, 0))
    assert a.matrix[dst, src] == pytest.approx(math.sqrt(2))
    araise = ladder(0, "raise", basis)
    assert araise.matrix[src, dst] == pytest.approx(math.sqrt(2))
    # Raising out of the truncated space drops the element and flags it.
    assert araise.truncated
    top = basis.index_of((3, 0, 0))
    assert abs(araise.matrix[:, top]).sum() == 0


def test_number_operator_expectation():
    basis = enumerate_irreducible_subspace(2)
    psi = StateVector.from_terms(basis, {(1, 1, 1): 1.0})
    assert expectation(number_operator(2, basis), psi) == pytest.approx(1.0)
    assert expectation(total_number_operator(basis), psi) == pytest.approx(3.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_ladder_adjoint_is_inner_product_transpose(mode, coeffs):
    basis = enumerate_truncated_space(three_mode_layout(1))
    dim = basis.dimension
    x = np.zeros(dim, dtype=complex)
    y = np.zeros(dim, dtype=complex)
    x[: len(coeffs) // 2] = coeffs[: len(coeffs) // 2]
    y[: len(coeffs) - len(coeffs) // 2] = coeffs[len(coeffs) // 2:]
    a = ladder(mode, "lower", basis)
    sx = StateVector(basis, x)
    sy = StateVector(basis, y)
    lhs = inner_product(sx, apply(a, sy))
    rhs = inner_product(apply(adjoint(a), sx), sy)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_compose_and_tensor():
    basis = enumerate_truncated_space(three_mode_layout(2))
    n0 = number_operator(0, basis)
    a = ladder(0, "lower", basis)
    ar = ladder(0, "raise", basis)
    # a^dag a = n on the full truncated space.
    prod = compose(ar, a)
    assert np.allclose(prod.dense(), n0.dense())
    small = enumerate_irreducible_subspace(1)
    t = tensor(LinearOperator.identity(small), LinearOperator.identity(small))
    assert t.domain == tensor_basis(small, small)
    assert np.allclose(t.dense(), np.eye(4))


def test_embed_project_round_trip():
    small = enumerate_irreducible_subspace(2)
    big = enumerate_truncated_space(three_mode_layout(2))
    psi = StateVector.from_terms(small, {(0, 0, 2): 0.6, (2, 2, 0): 0.8})
    back = project(embed(psi, big), small)
    assert np.allclose(back.amplitudes, psi.amplitudes)


def test_embed_missing_state_raises():
    small = enumerate_irreducible_subspace(2)
    other = enumerate_irreducible_subspace(1)
    psi = StateVector.from_terms(small, {(2, 2, 0): 1.0})
    with pytest.raises(MissingBasisState):
        embed(psi, other)


def test_apply_dimension_mismatch():
    b1 = enumerate_irreducible_subspace(1)
    b2 = enumerate_irreducible_subspace(2)
    op = LinearOperator.identity(b1)
    psi = StateVector.from_terms(b2, {(1, 1, 1): 1.0})
    with pytest.raises(DimensionMismatch):
        apply(op, psi)


def test_state_label():
    assert state_label((1, 0, 2)) == "1,0,2"


def test_two_mode_layout():
    layout = two_mode_layout(3)
    assert layout.n_modes == 2
    basis = enumerate_truncated_space(layout)
    assert basis.dimension == 16
