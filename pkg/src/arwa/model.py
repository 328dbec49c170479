"""Driven open-system model in the eigenbasis of the bare Hamiltonian.

A model is the bare spectrum (rad/s, ascending), a set of lowering drive
terms ``V_nm |n><m|`` with ``n < m``, collapse channels that are
eigenoperators of the bare Hamiltonian, a bath temperature in kelvin, and
the drive frequency.  Instances are immutable after construction and safe
to share across threads.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import hbar, k as k_B

__all__ = [
    "DriveTerm",
    "Channel",
    "ObservableSpec",
    "LindbladModel",
    "thermal_state",
    "total_rates",
]

INCLUDED = "included"
EXCLUDED = "excluded"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class DriveTerm:
    """One lowering drive term ``amplitude * |n><m|`` with its bookkeeping.

    ``relevance``, ``status`` and ``k_shift`` describe the term's role in the
    current rotating frame; the iteration driver works on updated copies and
    never mutates the model's own list.
    """

    n: int
    m: int
    amplitude: complex
    relevance: float = 0.0
    status: str = UNDECIDED
    k_shift: int = 1


@dataclass(frozen=True, eq=False)
class Channel:
    """Collapse operator with rate (rad/s) and transition label omega.

    ``omega = E_source - E_dest``: positive for decay, negative for thermal
    excitation, zero for pure dephasing.
    """

    op: np.ndarray
    rate: float
    omega: float = 0.0


@dataclass(eq=False)
class ObservableSpec:
    op: np.ndarray
    label: str


@dataclass(frozen=True, eq=False)
class LindbladModel:
    energies: np.ndarray
    drives: tuple
    channels: tuple
    temperature: float
    drive_frequency: float
    observables: tuple = ()

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=float)
        object.__setattr__(self, "energies", energies)
        object.__setattr__(self, "drives", tuple(self.drives))
        object.__setattr__(self, "channels", tuple(self.channels))
        object.__setattr__(self, "observables", tuple(self.observables))
        _validate(self)

    @property
    def dim(self) -> int:
        return self.energies.size

    def hamiltonian(self) -> np.ndarray:
        """Bare Hamiltonian, diagonal in its own eigenbasis."""
        return np.diag(self.energies.astype(complex))

    def drive_operator(self) -> np.ndarray:
        """Lowering drive operator V = sum_{n<m} V_nm |n><m|."""
        v = np.zeros((self.dim, self.dim), dtype=complex)
        for term in self.drives:
            v[term.n, term.m] += term.amplitude
        return v

    def with_drive_frequency(self, omega_d: float) -> "LindbladModel":
        return replace(self, drive_frequency=omega_d)

    def observable(self, label: str) -> ObservableSpec:
        for obs in self.observables:
            if obs.label == label:
                return obs
        raise KeyError(f"no observable labeled {label!r}")


def _validate(model: LindbladModel):
    energies = model.energies
    dim = energies.size
    if dim < 2:
        raise ValueError("model needs at least two levels")
    if np.any(np.diff(energies) < 0):
        raise ValueError("energies must be sorted ascending")
    if model.temperature < 0:
        raise ValueError("temperature must be nonnegative")
    if model.drive_frequency <= 0:
        raise ValueError("drive frequency must be positive")

    seen = set()
    for term in model.drives:
        if not (0 <= term.n < term.m < dim):
            raise ValueError(
                f"drive term ({term.n}, {term.m}) is not a lowering pair "
                f"with indices below {dim}")
        if (term.n, term.m) in seen:
            raise ValueError(f"duplicate drive term ({term.n}, {term.m})")
        seen.add((term.n, term.m))

    scale = max(float(energies[-1] - energies[0]), model.drive_frequency)
    for chan in model.channels:
        op = np.asarray(chan.op)
        if op.shape != (dim, dim):
            raise ValueError(
                f"channel operator shape {op.shape} != ({dim}, {dim})")
        if chan.rate <= 0:
            raise ValueError(f"channel rate must be positive, got {chan.rate}")
        mags = np.abs(op)
        floor = 1e-14 * max(mags.max(), 1.0)
        rows, cols = np.nonzero(mags > floor)
        freqs = energies[cols] - energies[rows]
        tol = 1e-6 * max(abs(chan.omega), scale)
        if np.any(np.abs(freqs - chan.omega) > tol):
            raise ValueError(
                "channel is not an eigenoperator: entries do not all match "
                f"the transition label {chan.omega:.6e}")


def thermal_state(model: LindbladModel) -> np.ndarray:
    """Equilibrium state exp(-H0 / k_B T) / Z, diagonal, trace one.

    Energies are angular frequencies, so the Boltzmann exponent is
    ``hbar * (E_n - E_0) / (k_B T)``.  At ``T == 0`` all weight sits on the
    (possibly degenerate) ground level.
    """
    energies = model.energies - model.energies[0]
    if model.temperature == 0.0:
        weights = (energies == 0.0).astype(float)
    else:
        beta = hbar / (k_B * model.temperature)
        weights = np.exp(-beta * energies)
    weights = weights / weights.sum()
    return np.diag(weights.astype(complex))


def total_rates(model: LindbladModel) -> np.ndarray:
    """Total decoherence rate per state.

    State ``n`` accumulates ``rate * (A+ A)_nn`` from each channel, i.e. the
    rates of all channels moving population or coherence out of ``n``,
    weighted by their matrix elements.
    """
    gamma = np.zeros(model.dim)
    for chan in model.channels:
        op = np.asarray(chan.op)
        gamma += chan.rate * np.einsum("ij,ij->j", op.conj(), op).real
    return gamma


def boltzmann_factor(omega: float, temperature: float) -> float:
    """exp(-hbar * omega / k_B T) with a hard zero at T == 0."""
    if temperature <= 0.0:
        return 0.0
    x = hbar * omega / (k_B * temperature)
    if x > 700.0:
        return 0.0
    return float(np.exp(-x))
