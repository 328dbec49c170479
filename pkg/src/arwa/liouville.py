"""Superoperator algebra for Lindblad dynamics.

Operators are plain complex ``numpy`` arrays in the eigenbasis of the bare
Hamiltonian.  Superoperators are sparse ``D^2 x D^2`` matrices acting on
column-stacked vectorizations: ``vec(rho)[i + j*D] = rho[i, j]``, so that
``vec(A @ X @ B) == kron(B.T, A) @ vec(X)``.

All angular frequencies and rates are rad/s.
"""

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, lsqr, onenormest, splu

from .config import DEFAULT_SOLVER, SolverConfig
from .errors import NonUniqueSteadyStateError, SolverFailureError

__all__ = [
    "vectorize",
    "devectorize",
    "frobenius_norm",
    "is_hermitian",
    "is_density_matrix",
    "trace_vector",
    "hamiltonian_superop",
    "dissipator_superop",
    "liouvillian",
    "solve_steady_state",
    "solve_shifted",
    "ShiftedSolver",
]


def vectorize(op: np.ndarray) -> np.ndarray:
    """Column-stack a D x D operator into a length-D^2 vector."""
    op = np.asarray(op)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {op.shape}")
    return op.reshape(-1, order="F")


def devectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`."""
    vec = np.asarray(vec)
    dim = int(round(np.sqrt(vec.size)))
    if dim * dim != vec.size:
        raise ValueError(f"vector length {vec.size} is not a perfect square")
    return vec.reshape((dim, dim), order="F")


def frobenius_norm(op: np.ndarray) -> float:
    """sqrt(sum |op_ij|^2)."""
    return float(np.linalg.norm(op))


def is_hermitian(op: np.ndarray, tol: float = 1e-12) -> bool:
    scale = max(np.abs(op).max(), 1.0) if op.size else 1.0
    return bool(np.abs(op - op.conj().T).max() <= tol * scale)


def is_density_matrix(rho: np.ndarray, trace_tol: float = 1e-10,
                      eig_tol: float = 1e-10) -> bool:
    if not is_hermitian(rho, tol=1e-10):
        return False
    if abs(np.trace(rho) - 1.0) > trace_tol:
        return False
    return bool(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() >= -eig_tol)


def trace_vector(dim: int) -> np.ndarray:
    """Row vector t with t @ vec(rho) == trace(rho)."""
    return vectorize(np.eye(dim, dtype=complex))


def hamiltonian_superop(h: np.ndarray) -> sp.csr_matrix:
    """Matrix form of rho -> -i [h, rho]."""
    h = np.asarray(h, dtype=complex)
    dim = h.shape[0]
    eye = sp.identity(dim, dtype=complex, format="csr")
    hs = sp.csr_matrix(h)
    return (-1j * (sp.kron(eye, hs) - sp.kron(hs.T, eye))).tocsr()


def dissipator_superop(a: np.ndarray, rate: float) -> sp.csr_matrix:
    """Matrix form of rate * (A rho A+ - {A+ A, rho} / 2)."""
    if rate <= 0:
        raise ValueError(f"dissipation rate must be positive, got {rate}")
    a = np.asarray(a, dtype=complex)
    dim = a.shape[0]
    if a.shape != (dim, dim):
        raise ValueError(f"collapse operator must be square, got {a.shape}")
    eye = sp.identity(dim, dtype=complex, format="csr")
    asp = sp.csr_matrix(a)
    ada = sp.csr_matrix(a.conj().T @ a)
    out = sp.kron(asp.conj(), asp) \
        - 0.5 * sp.kron(eye, ada) \
        - 0.5 * sp.kron(ada.T, eye)
    return (rate * out).tocsr()


def liouvillian(h: np.ndarray, channels) -> sp.csr_matrix:
    """Generator of rho -> -i [h, rho] + sum_c rate_c D[A_c] rho.

    ``channels`` iterates over ``(A, rate)`` pairs; model-level ``Channel``
    objects work too.
    """
    h = np.asarray(h, dtype=complex)
    dim = h.shape[0]
    out = hamiltonian_superop(h)
    for chan in channels:
        a, rate = (chan.op, chan.rate) if hasattr(chan, "op") else chan
        if np.shape(a)[0] != dim:
            raise ValueError(
                f"collapse operator dimension {np.shape(a)[0]} != {dim}")
        out = out + dissipator_superop(a, rate)
    return out.tocsr()


def _condition_estimate(a_csc, lu) -> float:
    inv = LinearOperator(a_csc.shape, matvec=lu.solve,
                         rmatvec=lambda v: lu.solve(v, trans="H"),
                         dtype=complex)
    try:
        return onenormest(a_csc) * onenormest(inv)
    except Exception:
        return np.inf


def _steady_state_svd(dense_l, config: SolverConfig) -> np.ndarray:
    _, sigma, vh = np.linalg.svd(dense_l)
    scale = max(sigma[0], 1.0)
    thresh = config.degenerate_nullspace_tol * scale
    if sigma.size >= 2 and sigma[-2] <= thresh:
        raise NonUniqueSteadyStateError(sigma[-1], sigma[-2])
    rho = devectorize(vh[-1].conj())
    rho = 0.5 * (rho + rho.conj().T)
    tr = np.trace(rho)
    if abs(tr) < 1e-14:
        raise NonUniqueSteadyStateError(sigma[-1], sigma[-2])
    return rho / tr


def solve_steady_state(lind: sp.spmatrix,
                       config: SolverConfig = DEFAULT_SOLVER) -> np.ndarray:
    """Solve L rho = 0 with trace(rho) = 1.

    The row of L addressing rho_00 is replaced by the trace constraint
    (that row is linearly dependent on the other diagonal rows because L is
    trace preserving) and the square system is LU-factorized.  Falls back to
    dense SVD nullspace extraction when the replaced system is singular or
    ill-conditioned, and raises :class:`NonUniqueSteadyStateError` when the
    nullspace is found to be degenerate.
    """
    n = lind.shape[0]
    dim = int(round(np.sqrt(n)))
    lind = lind.tocsr()
    scale = sp.linalg.norm(lind) if lind.nnz else 0.0
    if scale == 0.0:
        raise NonUniqueSteadyStateError(0.0, 0.0)

    replaced = sp.vstack(
        [sp.csr_matrix(trace_vector(dim)), lind[1:]], format="csc")
    rhs = np.zeros(n, dtype=complex)
    rhs[0] = 1.0

    rho = None
    try:
        lu = splu(replaced)
        if _condition_estimate(replaced, lu) <= config.condition_limit:
            rho = devectorize(lu.solve(rhs))
    except RuntimeError:  # exactly singular factorization
        rho = None

    if rho is not None:
        rho = 0.5 * (rho + rho.conj().T)
        rho = rho / np.trace(rho).real
        residual = np.linalg.norm(lind @ vectorize(rho))
        if residual <= config.steady_state_residual * scale:
            return rho

    return _steady_state_svd(lind.toarray(), config)


class ShiftedSolver:
    """Solves (L - i * shift * 1) x = vec(rhs) for many right-hand sides.

    For nonzero shift the operator is invertible and a single sparse LU is
    reused across solves.  For zero shift the minimum-norm least-squares
    solution is computed with LSQR and then shifted by a multiple of the
    steady state to be traceless (the steady state spans the nullspace, so
    the shift does not change the residual).
    """

    def __init__(self, lind: sp.spmatrix, shift: float,
                 steady_state: np.ndarray | None = None,
                 config: SolverConfig = DEFAULT_SOLVER):
        self.shift = float(shift)
        self.config = config
        self._dim = int(round(np.sqrt(lind.shape[0])))
        if self.shift != 0.0:
            n = lind.shape[0]
            op = (lind - 1j * self.shift *
                  sp.identity(n, dtype=complex, format="csr"))
            self._lu = splu(op.tocsc())
            self._lind = None
        else:
            self._lu = None
            self._lind = lind.tocsr()
            if steady_state is None:
                steady_state = solve_steady_state(lind, config)
            self._rho_s = steady_state

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        rhs = np.asarray(rhs, dtype=complex)
        if rhs.shape != (self._dim, self._dim):
            raise ValueError(
                f"rhs shape {rhs.shape} != ({self._dim}, {self._dim})")
        b = vectorize(rhs)
        if not np.any(b):
            return np.zeros_like(rhs)
        if self._lu is not None:
            return devectorize(self._lu.solve(b))

        cfg = self.config
        iter_lim = cfg.lstsq_iter_factor * self._dim ** 2
        result = lsqr(self._lind, b, atol=cfg.lstsq_atol, btol=cfg.lstsq_btol,
                      iter_lim=iter_lim)
        x, istop, _, r1norm = result[0], result[1], result[2], result[3]
        if istop == 7:
            scale = np.linalg.norm(b)
            if r1norm > max(1e-8 * scale, 1e3 * cfg.lstsq_atol * scale):
                raise SolverFailureError(
                    f"least-squares solve hit the iteration limit ({iter_lim})",
                    residual=r1norm)
        out = devectorize(x)
        return out - np.trace(out) * self._rho_s


def solve_shifted(lind: sp.spmatrix, shift: float, rhs: np.ndarray,
                  steady_state: np.ndarray | None = None,
                  config: SolverConfig = DEFAULT_SOLVER) -> np.ndarray:
    """One-shot convenience wrapper around :class:`ShiftedSolver`."""
    solver = ShiftedSolver(lind, shift, steady_state=steady_state,
                           config=config)
    return solver.solve(rhs)
