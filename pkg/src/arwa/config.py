"""Default numerical tolerances and run settings.

All values are library defaults; every entry point accepts a config object
so callers can override them without touching module state.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class SolverConfig:
    """Settings for the adaptive steady-state solver."""

    # iteration driver
    max_iterations: int = 20
    # graph construction: which component moves when two are merged;
    # "up" shifts the component of the higher-indexed endpoint, "down"
    # the other one.  Both give equivalent physics.
    merge_policy: str = "up"
    # relevance ranking: values below floor * max(values) are treated as zero
    relevance_floor: float = 1e-14
    # steady-state solve: LU on the trace-replaced system, SVD fallback
    condition_limit: float = 1e12
    steady_state_residual: float = 1e-9
    degenerate_nullspace_tol: float = 1e-10
    # shifted solves (zero shift goes through LSQR)
    lstsq_atol: float = 1e-13
    lstsq_btol: float = 1e-13
    lstsq_iter_factor: int = 40  # iteration limit = factor * D**2
    # parallel sweep rows
    workers: int = 1

    def with_overrides(self, **kwargs) -> "SolverConfig":
        return replace(self, **kwargs)


@dataclass(frozen=True)
class OracleConfig:
    """Settings for direct time integration and long-time averaging."""

    rtol: float = 1e-8
    atol: float = 1e-12
    samples_per_period: int = 64
    # transient skip defaults to factor * max(1/gamma_min, 1/omega_d);
    # transient_time overrides it when set (seconds)
    transient_factor: float = 10.0
    transient_time: float | None = None
    average_periods: int = 100
    stationarity_rtol: float = 1e-3
    # positivity monitor runs every this many samples (expensive: full eigh)
    eig_check_stride: int = 64
    max_steps: int = 200_000_000
    # kernel selection: None picks the compiled kernel when available
    force_python: bool = False
    # cross-check long-time averages from ground and thermal initial states
    cross_check_initial_states: bool = False
    cross_check_rtol: float = 1e-3

    def with_overrides(self, **kwargs) -> "OracleConfig":
        return replace(self, **kwargs)


DEFAULT_SOLVER = SolverConfig()
DEFAULT_ORACLE = OracleConfig()
