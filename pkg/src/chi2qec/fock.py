"""Multi-mode Fock-space foundation.

Basis enumeration for the three-wave-mixing irreducible subspaces
H_N = Span{|n,n,N-n> : 0 <= n <= N} and for capped product spaces,
plus ladder/number operators and a small operator/state algebra.

Conventions (part of the public contract):
  * irreducible bases are ordered by ascending n per qudit group, with
    multi-group bases being lexicographic tensor products;
  * truncated product bases are lexicographic in the occupation tuple;
  * operators are sparse (CSR), states are dense complex vectors;
  * the text form of a basis state is "n1,n2,...,nk".
"""

from dataclasses import dataclass, field
import itertools
import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

MODE_LABELS = ("signal", "idler", "pump")

# A Fock basis state is simply a tuple of occupation numbers.
FockBasisState = Tuple[int, ...]


class DimensionMismatch(ValueError):
    """Operands are defined over incompatible bases."""


class MissingBasisState(KeyError):
    """A state's support is absent from the target basis."""


class TruncationOverflow(RuntimeError):
    """A raising operator hit a photon-number cap; enlarge the space."""


@dataclass(frozen=True)
class ModeLayout:
    """Ordered mode declaration: (label, qudit-group) pairs plus photon caps.

    Labels come from MODE_LABELS; group indices are contiguous from 1 and
    labels are unique within a group.
    """

    modes: Tuple[Tuple[str, int], ...]
    caps: Tuple[int, ...]

    def __post_init__(self):
        if len(self.modes) != len(self.caps):
            raise ValueError("one cap per mode required")
        groups = sorted({g for _, g in self.modes})
        if groups != list(range(1, len(groups) + 1)):
            raise ValueError("group indices must be contiguous from 1")
        for label, group in self.modes:
            if label not in MODE_LABELS:
                raise ValueError("unknown mode label %r" % (label,))
        for g in groups:
            labels = [lab for lab, gg in self.modes if gg == g]
            if len(labels) != len(set(labels)):
                raise ValueError("duplicate label in group %d" % g)
        if any(c < 0 for c in self.caps):
            raise ValueError("caps must be nonnegative")

    @property
    def n_modes(self) -> int:
        return len(self.modes)

    @property
    def n_groups(self) -> int:
        return max(g for _, g in self.modes)

    def index_of(self, label: str, group: int = 1) -> int:
        for i, (lab, g) in enumerate(self.modes):
            if lab == label and g == group:
                return i
        raise KeyError((label, group))

    def with_caps(self, caps: Sequence[int]) -> "ModeLayout":
        return ModeLayout(self.modes, tuple(int(c) for c in caps))


def three_mode_layout(cap: int, groups: int = 1) -> ModeLayout:
    """Standard (signal, idler, pump) x groups layout with a uniform cap."""
    modes = []
    for g in range(1, groups + 1):
        for lab in MODE_LABELS:
            modes.append((lab, g))
    return ModeLayout(tuple(modes), (cap,) * (3 * groups))


def two_mode_layout(cap: int) -> ModeLayout:
    """(signal, pump) layout used by the two-mode bosonic encoding."""
    return ModeLayout((("signal", 1), ("pump", 1)), (cap, cap))


class BasisIndex:
    """Ordered list of Fock basis states with O(1) reverse lookup."""

    def __init__(self, states: Iterable[FockBasisState]):
        self.states: Tuple[FockBasisState, ...] = tuple(
            tuple(int(n) for n in s) for s in states
        )
        self._lookup = {s: i for i, s in enumerate(self.states)}
        if len(self._lookup) != len(self.states):
            raise ValueError("duplicate basis states")

    @property
    def dimension(self) -> int:
        return len(self.states)

    def index_of(self, state: FockBasisState) -> int:
        try:
            return self._lookup[tuple(state)]
        except KeyError:
            raise MissingBasisState(tuple(state))

    def __contains__(self, state) -> bool:
        return tuple(state) in self._lookup

    def __iter__(self):
        return iter(self.states)

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        return isinstance(other, BasisIndex) and self.states == other.states

    def __hash__(self):
        return hash(self.states)

    def __repr__(self):
        return "BasisIndex(%d states, first=%r)" % (
            self.dimension,
            self.states[0] if self.states else None,
        )


def state_label(state: FockBasisState) -> str:
    """Canonical text form "n1,n2,...,nk" used by all reports."""
    return ",".join(str(n) for n in state)


@dataclass
class StateVector:
    """Dense complex amplitudes over an ordered basis."""

    basis: BasisIndex
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.basis.dimension,):
            raise DimensionMismatch(
                "amplitude vector length %d != basis dimension %d"
                % (self.amplitudes.size, self.basis.dimension)
            )

    @classmethod
    def from_terms(cls, basis: BasisIndex, terms) -> "StateVector":
        """Build from {state tuple: amplitude} (or iterable of pairs)."""
        amps = np.zeros(basis.dimension, dtype=complex)
        items = terms.items() if hasattr(terms, "items") else terms
        for state, amp in items:
            amps[basis.index_of(state)] += amp
        return cls(basis, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.basis, self.amplitudes / n)

    def support(self, tol: float = 1e-12):
        return [
            (self.basis.states[i], self.amplitudes[i])
            for i in np.flatnonzero(np.abs(self.amplitudes) > tol)
        ]


@dataclass
class LinearOperator:
    """Sparse complex matrix with explicit domain/codomain bases."""

    domain: BasisIndex
    codomain: BasisIndex
    matrix: sp.csr_matrix
    truncated: bool = False  # a raising entry was dropped at a cap

    def __post_init__(self):
        self.matrix = sp.csr_matrix(self.matrix, dtype=complex)
        if self.matrix.shape != (self.codomain.dimension, self.domain.dimension):
            raise DimensionMismatch(
                "matrix shape %r vs bases (%d, %d)"
                % (self.matrix.shape, self.codomain.dimension, self.domain.dimension)
            )

    @classmethod
    def from_dense(cls, domain, codomain, dense, **kw) -> "LinearOperator":
        return cls(domain, codomain, sp.csr_matrix(np.asarray(dense, dtype=complex)), **kw)

    @classmethod
    def identity(cls, basis: BasisIndex) -> "LinearOperator":
        return cls(basis, basis, sp.identity(basis.dimension, dtype=complex, format="csr"))

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


def apply(op: LinearOperator, state: StateVector) -> StateVector:
    if op.domain != state.basis:
        raise DimensionMismatch("operator domain does not match state basis")
    return StateVector(op.codomain, op.matrix.dot(state.amplitudes))


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """Operator product a.b (apply b first)."""
    if b.codomain != a.domain:
        raise DimensionMismatch("compose: inner bases differ")
    return LinearOperator(
        b.domain, a.codomain, a.matrix.dot(b.matrix),
        truncated=a.truncated or b.truncated,
    )


def tensor(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    dom = BasisIndex(sa + sb for sa in a.domain for sb in b.domain)
    cod = BasisIndex(sa + sb for sa in a.codomain for sb in b.codomain)
    return LinearOperator(
        dom, cod, sp.kron(a.matrix, b.matrix, format="csr"),
        truncated=a.truncated or b.truncated,
    )


def tensor_basis(a: BasisIndex, b: BasisIndex) -> BasisIndex:
    return BasisIndex(sa + sb for sa in a for sb in b)


def tensor_state(x: StateVector, y: StateVector) -> StateVector:
    return StateVector(
        tensor_basis(x.basis, y.basis), np.kron(x.amplitudes, y.amplitudes)
    )


def adjoint(op: LinearOperator) -> LinearOperator:
    return LinearOperator(
        op.codomain, op.domain, op.matrix.conjugate().transpose().tocsr(),
        truncated=op.truncated,
    )


def inner_product(x: StateVector, y: StateVector) -> complex:
    if x.basis != y.basis:
        raise DimensionMismatch("inner product over different bases")
    return complex(np.vdot(x.amplitudes, y.amplitudes))


def expectation(op: LinearOperator, state: StateVector) -> complex:
    return inner_product(state, apply(op, state))


def embed(state: StateVector, into: BasisIndex) -> StateVector:
    """Re-express a state in a larger basis; amplitudes are preserved exactly.

    Raises MissingBasisState if any support state is absent from `into`.
    """
    amps = np.zeros(into.dimension, dtype=complex)
    for s, amp in zip(state.basis.states, state.amplitudes):
        if amp != 0:
            amps[into.index_of(s)] = amp
    return StateVector(into, amps)


def project(state: StateVector, onto: BasisIndex) -> StateVector:
    """Restrict a state to a sub-basis, dropping amplitudes outside it."""
    amps = np.zeros(onto.dimension, dtype=complex)
    for i, s in enumerate(onto.states):
        if s in state.basis:
            amps[i] = state.amplitudes[state.basis.index_of(s)]
    return StateVector(onto, amps)


def enumerate_irreducible_subspace(N: int, groups: int = 1) -> BasisIndex:
    """Ordered basis of H_N^{x groups}, H_N = Span{|n,n,N-n>: 0 <= n <= N}.

    Within one group states are listed by ascending n; multiple groups are
    combined as a lexicographic tensor product.
    """
    if N < 0 or groups < 1:
        raise ValueError("require N >= 0 and groups >= 1")
    single = [(n, n, N - n) for n in range(N + 1)]
    states = [
        tuple(itertools.chain.from_iterable(combo))
        for combo in itertools.product(single, repeat=groups)
    ]
    return BasisIndex(states)


_MAX_TRUNCATED_DIM = 2_000_000


def enumerate_truncated_space(layout: ModeLayout) -> BasisIndex:
    """Full product basis up to per-mode caps, lexicographic order."""
    total = 1
    for c in layout.caps:
        total *= c + 1
        if total > _MAX_TRUNCATED_DIM:
            raise TruncationOverflow(
                "truncated space would exceed %d states" % _MAX_TRUNCATED_DIM
            )
    return BasisIndex(itertools.product(*[range(c + 1) for c in layout.caps]))


def ladder(mode: int, kind: str, basis: BasisIndex) -> LinearOperator:
    """Annihilation ("lower") or creation ("raise") operator on one mode.

    Matrix elements are sqrt(n) for |n-1><n| and sqrt(n+1) for |n+1><n|.
    Raising entries whose target state is outside the basis are dropped and
    the returned operator is flagged `truncated` (callers that need exact
    adjoint pairs must enlarge the space).
    """
    if kind not in ("lower", "raise"):
        raise ValueError("kind must be 'lower' or 'raise'")
    rows, cols, vals = [], [], []
    truncated = False
    for j, s in enumerate(basis.states):
        n = s[mode]
        if kind == "lower":
            if n == 0:
                continue
            target = s[:mode] + (n - 1,) + s[mode + 1:]
            coeff = math.sqrt(n)
        else:
            target = s[:mode] + (n + 1,) + s[mode + 1:]
            coeff = math.sqrt(n + 1)
        if target in basis:
            rows.append(basis.index_of(target))
            cols.append(j)
            vals.append(coeff)
        elif kind == "raise":
            truncated = True
        else:
            truncated = True
    mat = sp.csr_matrix(
        (vals, (rows, cols)), shape=(basis.dimension, basis.dimension), dtype=complex
    )
    return LinearOperator(basis, basis, mat, truncated=truncated)


def number_operator(mode: int, basis: BasisIndex) -> LinearOperator:
    diag = np.array([s[mode] for s in basis.states], dtype=complex)
    return LinearOperator(basis, basis, sp.diags(diag, format="csr"))


def total_number_operator(basis: BasisIndex) -> LinearOperator:
    diag = np.array([sum(s) for s in basis.states], dtype=complex)
    return LinearOperator(basis, basis, sp.diags(diag, format="csr"))
