"""Pure states, inner products, Gram matrices and unitary completion.

Everything here works on small dense complex vectors (dimension <= 64).
Matrices are returned as plain ``numpy`` arrays; only pure states get a
wrapper type because their normalization is an invariant worth enforcing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegeneracyError, DomainError, InfeasibleMapError

NORM_ATOL = 1e-12
GRAM_ATOL = 1e-9
UNITARY_ATOL = 1e-10
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized complex amplitude vector.

    The amplitudes are copied into a read-only ``complex128`` array on
    construction, so instances are safe to share.
    """

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size < 1:
            raise DomainError("a state needs at least one amplitude")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_ATOL:
            raise DomainError(f"state is not normalized (norm={norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_unnormalized(cls, vector) -> "PureState":
        v = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise DomainError("cannot normalize the zero vector")
        return cls(v / norm)

    @classmethod
    def basis(cls, index: int, dim: int) -> "PureState":
        if not 0 <= index < dim:
            raise DomainError(f"basis index {index} outside dimension {dim}")
        v = np.zeros(dim, dtype=np.complex128)
        v[index] = 1.0
        return cls(v)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.amplitudes
        return self.amplitudes.astype(dtype)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"PureState({np.array2string(self.amplitudes, precision=4)})"


def make_state_pair(overlap: float, dim: int = 2) -> tuple[PureState, PureState]:
    """Two real states in ``dim`` dimensions with a prescribed overlap.

    The pair lives in the first two coordinates: ``a = e1`` and
    ``b = overlap*e1 + sqrt(1 - overlap**2)*e2``.
    """
    if not 0.0 <= overlap <= 1.0:
        raise DomainError(f"overlap must lie in [0, 1], got {overlap!r}")
    if dim < 2:
        raise DomainError(f"dimension must be at least 2, got {dim!r}")
    a = np.zeros(dim)
    b = np.zeros(dim)
    a[0] = 1.0
    b[0] = overlap
    b[1] = np.sqrt(1.0 - overlap * overlap)
    return PureState(a), PureState(b)


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>``, antilinear in the first argument."""
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def tensor(a: PureState, b: PureState) -> PureState:
    return PureState.from_unnormalized(np.kron(a.amplitudes, b.amplitudes))


def tensor_power(a: PureState, copies: int) -> PureState:
    """``a`` tensored with itself ``copies`` times (``copies >= 1``)."""
    if copies < 1:
        raise DomainError(f"need at least one copy, got {copies!r}")
    out = a
    for _ in range(copies - 1):
        out = tensor(out, a)
    return out


def gram_matrix(states: Sequence[PureState]) -> np.ndarray:
    """Matrix of pairwise inner products, entry ``(i, j) = <s_i|s_j>``."""
    if len(states) == 0:
        raise DomainError("need at least one state")
    dims = {s.dim for s in states}
    if len(dims) != 1:
        raise DomainError(f"states have mixed dimensions {sorted(dims)}")
    mat = np.stack([s.amplitudes for s in states], axis=1)
    return mat.conj().T @ mat


def min_eigenvalue(matrix: np.ndarray) -> float:
    """Smallest eigenvalue of the Hermitian part of ``matrix``."""
    m = np.asarray(matrix, dtype=np.complex128)
    herm = 0.5 * (m + m.conj().T)
    return float(np.linalg.eigvalsh(herm)[0])


def is_unitary(matrix: np.ndarray, atol: float = UNITARY_ATOL) -> bool:
    return unitarity_residual(matrix) <= atol


def unitarity_residual(matrix: np.ndarray) -> float:
    """Operator norm of ``U^dagger U - I``."""
    u = np.asarray(matrix, dtype=np.complex128)
    resid = u.conj().T @ u - np.eye(u.shape[0])
    return float(np.linalg.norm(resid, ord=2))


def _extend_to_basis(columns: np.ndarray) -> np.ndarray:
    # Gram-Schmidt the coordinate vectors e_1, e_2, ... in order against the
    # given orthonormal columns; twice-orthogonalized for stability.
    dim, k = columns.shape
    basis = [columns[:, j] for j in range(k)]
    for idx in range(dim):
        if len(basis) == dim:
            break
        v = np.zeros(dim, dtype=np.complex128)
        v[idx] = 1.0
        for _ in range(2):
            for q in basis:
                v = v - np.vdot(q, v) * q
        norm = np.linalg.norm(v)
        if norm > 1e-8:
            basis.append(v / norm)
    return np.stack(basis, axis=1)


def _inv_sqrt_pd(gram: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(gram)
    return (vecs / np.sqrt(vals)) @ vecs.conj().T


def complete_to_unitary(
    prescribed_inputs: Sequence[PureState],
    prescribed_outputs: Sequence[PureState],
) -> np.ndarray:
    """Extend the partial map ``input_j -> output_j`` to a full unitary.

    The inputs must be linearly independent and have the same Gram matrix
    as the outputs. The span of the inputs is mapped by the unique linear
    extension; the orthogonal complements are paired up in coordinate order,
    so the result is deterministic.

    Raises:
        DomainError: list lengths or dimensions differ, or lists are empty.
        InfeasibleMapError: Gram matrices differ by more than ``1e-9``.
        DegeneracyError: the inputs are linearly dependent.
    """
    if len(prescribed_inputs) != len(prescribed_outputs):
        raise DomainError("input and output lists differ in length")
    if len(prescribed_inputs) == 0:
        raise DomainError("need at least one prescribed pair")
    g_in = gram_matrix(prescribed_inputs)
    g_out = gram_matrix(prescribed_outputs)
    dim = prescribed_inputs[0].dim
    if prescribed_outputs[0].dim != dim:
        raise DomainError(
            f"input dimension {dim} differs from output dimension "
            f"{prescribed_outputs[0].dim}; pad the smaller space first"
        )
    mismatch = np.max(np.abs(g_in - g_out))
    if mismatch > GRAM_ATOL:
        raise InfeasibleMapError(f"Gram matrices differ by {mismatch:.3e}")

    a = np.stack([s.amplitudes for s in prescribed_inputs], axis=1)
    b = np.stack([s.amplitudes for s in prescribed_outputs], axis=1)
    if np.linalg.svd(a, compute_uv=False)[-1] < RANK_TOL:
        raise DegeneracyError("prescribed inputs are linearly dependent")

    # Symmetric orthonormalization with the shared Gram matrix: W and V are
    # isometries and U W = V reproduces U a_j = b_j up to Gram rounding.
    inv_root = _inv_sqrt_pd(0.5 * (g_in + g_in.conj().T))
    w = a @ inv_root
    v = b @ inv_root
    # When g_out != g_in within tolerance, v is only nearly an isometry;
    # snap it to the closest one (polar factor).
    x, _, yh = np.linalg.svd(v, full_matrices=False)
    v = x @ yh
    w_full = _extend_to_basis(w)
    v_full = _extend_to_basis(v)
    return v_full @ w_full.conj().T
