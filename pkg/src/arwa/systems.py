"""Builders for the standard driven circuit-QED model systems.

Coupled qubit-resonator systems are constructed in the product basis,
diagonalized, truncated to the lowest dressed levels, and returned with the
drive re-expressed in the dressed eigenbasis (keeping only the lowering
part).  Collapse operators are decomposed into eigenoperators of the
dressed Hamiltonian, one channel per transition frequency, with
detailed-balance thermal partners added for positive-frequency channels at
nonzero temperature.
"""

import numpy as np

from .model import (Channel, DriveTerm, LindbladModel, ObservableSpec,
                    boltzmann_factor)

__all__ = [
    "destroy",
    "dressed_frame",
    "drive_terms_from_matrix",
    "secular_channels",
    "driven_oscillator",
    "transmon_resonator",
    "three_level",
    "fluxonium_resonator",
]

AMPLITUDE_FLOOR = 1e-12


def destroy(dim: int) -> np.ndarray:
    """Truncated bosonic lowering operator."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def dressed_frame(h: np.ndarray, keep: int | None = None):
    """Eigenbasis of a coupled Hamiltonian with deterministic conventions.

    Returns ``(energies, basis)`` with energies ascending and ``basis``
    columns the kept eigenvectors.  Within a degenerate group, states are
    ordered by the index of their dominant product-basis component, and each
    vector's phase is fixed so its dominant component is real positive.
    """
    evals, evecs = np.linalg.eigh(h)
    scale = max(abs(evals[0]), abs(evals[-1]), 1.0)
    tol = 1e-9 * scale

    order = np.arange(evals.size)
    start = 0
    while start < evals.size:
        stop = start + 1
        while stop < evals.size and evals[stop] - evals[start] <= tol:
            stop += 1
        if stop - start > 1:
            block = order[start:stop]
            dominant = [int(np.argmax(np.abs(evecs[:, i]))) for i in block]
            order[start:stop] = block[np.argsort(dominant, kind="stable")]
        start = stop
    evals = evals[order]
    evecs = evecs[:, order]

    for i in range(evecs.shape[1]):
        j = int(np.argmax(np.abs(evecs[:, i])))
        phase = evecs[j, i] / abs(evecs[j, i])
        evecs[:, i] = evecs[:, i] / phase

    if keep is not None:
        evals = evals[:keep]
        evecs = evecs[:, :keep]
    return evals, evecs


def drive_terms_from_matrix(v: np.ndarray,
                            floor: float = AMPLITUDE_FLOOR) -> tuple:
    """Lowering drive terms from the upper triangle of a drive matrix.

    Entries below ``floor * max|v|`` are dropped so that numerical noise
    does not seed zero-weight graph edges.
    """
    vmax = np.abs(v).max() if v.size else 0.0
    if vmax == 0.0:
        return ()
    cut = floor * vmax
    terms = []
    dim = v.shape[0]
    for n in range(dim):
        for m in range(n + 1, dim):
            if abs(v[n, m]) > cut:
                terms.append(DriveTerm(n, m, complex(v[n, m])))
    return tuple(terms)


def secular_channels(op: np.ndarray, energies: np.ndarray, rate: float,
                     temperature: float = 0.0,
                     floor: float = AMPLITUDE_FLOOR) -> list:
    """Split a collapse operator into eigenoperator channels.

    Nonzero entries are grouped by transition frequency ``E_col - E_row``;
    each group becomes one channel at the given rate.  For positive
    frequencies and ``temperature > 0`` the Hermitian conjugate is added at
    the detailed-balance rate.
    """
    energies = np.asarray(energies, dtype=float)
    mags = np.abs(op)
    cut = floor * max(mags.max(), 1e-300)
    rows, cols = np.nonzero(mags > cut)
    if rows.size == 0:
        return []
    freqs = energies[cols] - energies[rows]
    order = np.argsort(freqs, kind="stable")
    scale = max(energies[-1] - energies[0], 1.0)
    gap = 1e-9 * scale

    channels = []
    start = 0
    while start < order.size:
        stop = start + 1
        while (stop < order.size
               and freqs[order[stop]] - freqs[order[stop - 1]] <= gap):
            stop += 1
        members = order[start:stop]
        omega = float(freqs[members].mean())
        a = np.zeros_like(op, dtype=complex)
        a[rows[members], cols[members]] = op[rows[members], cols[members]]
        channels.append(Channel(a, rate, omega))
        if omega > gap and temperature > 0.0:
            factor = boltzmann_factor(omega, temperature)
            if factor > 0.0:
                channels.append(Channel(a.conj().T, rate * factor, -omega))
        start = stop
    return channels


def driven_oscillator(omega_r: float, zeta: float, omega_d: float,
                      n_max: int, kappa: float,
                      temperature: float = 0.0) -> LindbladModel:
    """Linearly driven, damped harmonic oscillator truncated to n_max levels.

    Photon decay at rate kappa; at nonzero temperature a thermal excitation
    channel is added at the detailed-balance rate.
    """
    if n_max < 2:
        raise ValueError("need at least two oscillator levels")
    energies = omega_r * np.arange(n_max, dtype=float)
    a = destroy(n_max)
    drives = drive_terms_from_matrix(zeta * a)
    channels = [Channel(a, kappa, omega_r)]
    if temperature > 0.0:
        factor = boltzmann_factor(omega_r, temperature)
        if factor > 0.0:
            channels.append(Channel(a.conj().T, kappa * factor, -omega_r))
    return LindbladModel(
        energies=energies,
        drives=drives,
        channels=tuple(channels),
        temperature=temperature,
        drive_frequency=omega_d,
        observables=(ObservableSpec(a, "a"),),
    )


def _coupled_model(h_prod, a_prod, qubit_lowering, zeta, omega_d, keep,
                   kappa, temperature, qubit_decay):
    energies, basis = dressed_frame(h_prod, keep)
    a_d = basis.conj().T @ a_prod @ basis
    drives = drive_terms_from_matrix(zeta * a_d)

    channels = secular_channels(a_d, energies, kappa, temperature)
    if qubit_decay is not None and qubit_decay > 0.0:
        b_d = basis.conj().T @ qubit_lowering @ basis
        channels += secular_channels(b_d, energies, qubit_decay, temperature)

    return LindbladModel(
        energies=energies,
        drives=drives,
        channels=tuple(channels),
        temperature=temperature,
        drive_frequency=omega_d,
        observables=(ObservableSpec(a_d, "a"),),
    )


def transmon_resonator(omega_r: float, qubit_energies, couplings,
                       zeta: float, omega_d: float, *, n_photon: int,
                       keep: int | None = None, kappa: float,
                       temperature: float = 0.0,
                       qubit_decay: float | None = None) -> LindbladModel:
    """Ladder qubit coupled to a resonator with nearest-neighbor coupling.

    ``qubit_energies`` lists the bare qubit levels (rad/s), ``couplings[j]``
    the strength of the ``a |j+1><j| + h.c.`` term.  The product space
    (photon number times qubit level) is cut at ``n_photon`` photons,
    diagonalized, and the lowest ``keep`` dressed states are retained.
    """
    qubit_energies = np.asarray(qubit_energies, dtype=float)
    nq = qubit_energies.size
    couplings = np.asarray(couplings, dtype=float)
    if couplings.size != nq - 1:
        raise ValueError(f"need {nq - 1} couplings, got {couplings.size}")

    a = destroy(n_photon)
    eye_q = np.eye(nq, dtype=complex)
    eye_p = np.eye(n_photon, dtype=complex)
    raise_q = np.zeros((nq, nq), dtype=complex)
    for j in range(nq - 1):
        raise_q[j + 1, j] = couplings[j]

    h_prod = (omega_r * np.kron(a.conj().T @ a, eye_q)
              + np.kron(eye_p, np.diag(qubit_energies).astype(complex)))
    coupling = np.kron(a, raise_q)
    h_prod = h_prod + coupling + coupling.conj().T

    a_prod = np.kron(a, eye_q)
    b_low = np.kron(eye_p, destroy(nq))
    return _coupled_model(h_prod, a_prod, b_low, zeta, omega_d, keep,
                          kappa, temperature, qubit_decay)


def fluxonium_resonator(qubit_energies, charge_matrix, omega_r: float,
                        g: float, zeta: float, omega_d: float, *,
                        n_photon: int, keep: int | None = None,
                        kappa: float, temperature: float = 0.0,
                        qubit_decay: float | None = None) -> LindbladModel:
    """Qubit with arbitrary charge matrix elements coupled to a resonator.

    The coupling pairs photon annihilation with every qubit-raising matrix
    element ``g <j|N|j'> a |j><j'|, j > j'`` plus Hermitian conjugate, so a
    nearest-neighbor charge matrix reduces exactly to
    :func:`transmon_resonator`.  Without selection rules the dressed drive
    is generally dense above the diagonal.
    """
    qubit_energies = np.asarray(qubit_energies, dtype=float)
    nq = qubit_energies.size
    n_mat = np.asarray(charge_matrix, dtype=complex)
    if n_mat.shape != (nq, nq):
        raise ValueError(
            f"charge matrix shape {n_mat.shape} != ({nq}, {nq})")
    if np.abs(n_mat - n_mat.conj().T).max() > 1e-10 * max(
            np.abs(n_mat).max(), 1.0):
        raise ValueError("charge matrix must be Hermitian")

    a = destroy(n_photon)
    eye_q = np.eye(nq, dtype=complex)
    eye_p = np.eye(n_photon, dtype=complex)
    raise_q = np.tril(n_mat, -1)

    h_prod = (omega_r * np.kron(a.conj().T @ a, eye_q)
              + np.kron(eye_p, np.diag(qubit_energies).astype(complex)))
    coupling = g * np.kron(a, raise_q)
    h_prod = h_prod + coupling + coupling.conj().T

    a_prod = np.kron(a, eye_q)
    b_low = np.kron(eye_p, destroy(nq))
    return _coupled_model(h_prod, a_prod, b_low, zeta, omega_d, keep,
                          kappa, temperature, qubit_decay)


def three_level(energies, v01: complex, v02: complex, v12: complex,
                decays, omega_d: float,
                temperature: float = 0.0) -> LindbladModel:
    """Three-level system with all three lowering drive terms.

    ``decays`` lists ``(n, m, rate)`` decay channels ``|n><m|``; thermal
    excitation partners are added automatically at nonzero temperature.
    """
    energies = np.asarray(energies, dtype=float)
    if energies.size != 3:
        raise ValueError("need exactly three energies")
    amps = {(0, 1): v01, (0, 2): v02, (1, 2): v12}
    v = np.zeros((3, 3), dtype=complex)
    for (n, m), amp in amps.items():
        v[n, m] = amp
    drives = drive_terms_from_matrix(v)

    channels = []
    for n, m, rate in decays:
        op = np.zeros((3, 3), dtype=complex)
        op[n, m] = 1.0
        omega = float(energies[m] - energies[n])
        channels.append(Channel(op, rate, omega))
        if temperature > 0.0 and omega > 0.0:
            factor = boltzmann_factor(omega, temperature)
            if factor > 0.0:
                channels.append(Channel(op.conj().T, rate * factor, -omega))

    return LindbladModel(
        energies=energies,
        drives=drives,
        channels=tuple(channels),
        temperature=temperature,
        drive_frequency=omega_d,
        observables=(ObservableSpec(v, "drive"),),
    )
