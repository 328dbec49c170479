"""Exception types raised by the solver and the time-domain oracle."""


class ArwaError(Exception):
    """Base class for all library-specific failures."""


class NonUniqueSteadyStateError(ArwaError):
    """The Liouvillian nullspace is not one-dimensional.

    Carries the two smallest singular values found.
    """

    def __init__(self, sigma_last, sigma_second):
        self.sigma_last = sigma_last
        self.sigma_second = sigma_second
        super().__init__(
            f"steady state is not unique: two smallest singular values "
            f"{sigma_last:.3e}, {sigma_second:.3e}"
        )


class SolverFailureError(ArwaError):
    """An iterative linear solve did not converge within its budget."""

    def __init__(self, message, residual=None):
        self.residual = residual
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)


class StiffnessError(ArwaError):
    """Step-size underflow in the time integrator.

    Usually means the model mixes vastly different time scales; the
    rotating-frame steady-state solver is the intended tool for that regime.
    """


class NonStationaryError(ArwaError):
    """The long-time averaging window has not reached the periodic asymptote."""

    def __init__(self, label, first_half, second_half):
        self.label = label
        self.first_half = first_half
        self.second_half = second_half
        super().__init__(
            f"observable {label!r} not stationary over averaging window: "
            f"first half {first_half:.6e}, second half {second_half:.6e}"
        )
