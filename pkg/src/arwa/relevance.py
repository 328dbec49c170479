"""Relevance parameters for drive terms.

The relevance of a drive term is the Frobenius norm of the first-order
correction it induces on the current steady state.  At bootstrap (diagonal
Hamiltonian, thermal state) the correction has a single nonzero matrix
element and a closed form; in later iterations it requires a shifted
Liouvillian solve per term.
"""

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_SOLVER, SolverConfig
from .liouville import ShiftedSolver, frobenius_norm, liouvillian
from .model import INCLUDED, LindbladModel, thermal_state, total_rates

__all__ = [
    "RankedTerm",
    "Ranking",
    "bootstrap_relevance",
    "drive_commutator",
    "iterative_relevance",
    "RelevanceSolver",
    "rank",
]


@dataclass(frozen=True)
class RankedTerm:
    n: int
    m: int
    delta: float


@dataclass(frozen=True)
class Ranking:
    """Drive terms in descending relevance order; zero entries omitted."""

    entries: tuple
    iteration: int = 0

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def pairs(self):
        return [(e.n, e.m) for e in self.entries]


def bootstrap_relevance(model: LindbladModel, term, populations=None,
                        rates=None) -> float:
    """Closed-form relevance against the thermal state.

    sqrt(2) |V_nm| |p_m - p_n| / |omega_mn - omega_d + i (G_n + G_m) / 2|
    with thermal populations p and total decoherence rates G.
    """
    if populations is None:
        populations = np.diag(thermal_state(model)).real
    if rates is None:
        rates = total_rates(model)
    n, m = term.n, term.m
    pop_diff = abs(populations[m] - populations[n])
    if pop_diff == 0.0:
        return 0.0
    omega_mn = model.energies[m] - model.energies[n]
    denom = abs(omega_mn - model.drive_frequency
                + 0.5j * (rates[n] + rates[m]))
    return math.sqrt(2.0) * abs(term.amplitude) * pop_diff / denom


def drive_commutator(term, rho: np.ndarray) -> np.ndarray:
    """-i [V_nm |n><m|, rho] without building the full matrix product."""
    out = np.zeros_like(rho)
    out[term.n, :] -= 1j * term.amplitude * rho[term.m, :]
    out[:, term.m] += 1j * term.amplitude * rho[:, term.n]
    return out


class RelevanceSolver:
    """Shared shifted-Liouvillian solves for one iteration.

    Terms with equal frame shifts reuse a single LU factorization; the
    zero-shift least-squares path shares the steady state.
    """

    def __init__(self, lind, rho_s, omega_d,
                 config: SolverConfig = DEFAULT_SOLVER):
        self._lind = lind
        self._rho_s = rho_s
        self._omega_d = omega_d
        self._config = config
        self._solvers = {}

    def solve(self, k_shift: int, rhs: np.ndarray) -> np.ndarray:
        if k_shift not in self._solvers:
            self._solvers[k_shift] = ShiftedSolver(
                self._lind, k_shift * self._omega_d,
                steady_state=self._rho_s, config=self._config)
        return self._solvers[k_shift].solve(rhs)


def iterative_relevance(model: LindbladModel, h: np.ndarray,
                        rho_s: np.ndarray, term, status: str | None = None,
                        solver: RelevanceSolver | None = None,
                        config: SolverConfig = DEFAULT_SOLVER) -> float:
    """Relevance of one term against the current rotating-frame steady state.

    Solves ``(L0 - i k_nm omega_d) x = s * L_nm rho_s`` with the sign taken
    negative for terms already part of the effective Hamiltonian and
    positive otherwise, then returns ``sqrt(2) ||x||_F``.
    """
    if term.amplitude == 0:
        return 0.0
    if solver is None:
        lind = liouvillian(h, model.channels)
        solver = RelevanceSolver(lind, rho_s, model.drive_frequency,
                                 config=config)
    if status is None:
        status = term.status
    sign = -1.0 if status == INCLUDED else 1.0
    rhs = sign * drive_commutator(term, rho_s)
    correction = solver.solve(term.k_shift, rhs)
    return math.sqrt(2.0) * frobenius_norm(correction)


def rank(values, iteration: int = 0,
         floor: float = DEFAULT_SOLVER.relevance_floor) -> Ranking:
    """Descending ranking with lexicographic (n, m) tie-break.

    ``values`` iterates over ``(n, m, delta)`` triples.  Entries below
    ``floor * max(delta)`` are treated as zero and omitted.
    """
    triples = [(int(n), int(m), float(d)) for n, m, d in values]
    if any(d < 0 for _, _, d in triples):
        raise ValueError("relevance values must be nonnegative")
    top = max((d for _, _, d in triples), default=0.0)
    cut = floor * top
    kept = [t for t in triples if t[2] > cut]
    kept.sort(key=lambda t: (-t[2], t[0], t[1]))
    return Ranking(tuple(RankedTerm(n, m, d) for n, m, d in kept), iteration)
