"""Exception taxonomy for the triple-reduced-product toolkit.

Exit-code mapping used by the CLI: 0 ok, 1 input error, 2 infeasible,
3 no-return/fixed-point, 4 invariant failure.
"""


class TrpError(Exception):
    """Base class for all library errors."""


class NotHermitian(TrpError):
    """Matrix fails the hermitian symmetry check."""


class NotUnitary(TrpError):
    """Matrix fails the unitarity check."""


class Infeasible(TrpError):
    """The zero-moment solve stalled on every restart.

    Carries the best residual achieved across restarts.
    """

    def __init__(self, best_residual: float, message: str = ""):
        self.best_residual = float(best_residual)
        text = message or f"moment solve infeasible; best residual {best_residual:.3e}"
        super().__init__(text)


class DegenerateA(TrpError):
    """Y-Z has a (near-)repeated eigenvalue; the diagonalizing gauge is undefined."""


class DivisorUndefined(TrpError):
    """Every cofactor column has a pivot below tolerance; no divisor point."""


class StepUnderflow(TrpError):
    """Adaptive step size collapsed below the resolvable scale."""


class NoReturn(TrpError):
    """The divisor pair never returned to its start within the time budget."""


class ConsistencyFailure(TrpError):
    """Two independent computation routes disagree beyond tolerance."""


class LoopThroughPole(TrpError):
    """The divisor loop passes too close to z = 0 or z = +-1 where zeta is singular."""
