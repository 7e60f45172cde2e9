"""Exception hierarchy shared across the package."""


class CurvePhaseError(Exception):
    """Base class for all package-specific failures."""


class DegenerateFrame(CurvePhaseError):
    """Frenet frame undefined: |R' x R''| below tolerance at some sample."""


class GridMismatch(CurvePhaseError):
    """Operands sampled on different grids were combined."""


class GapCollapse(CurvePhaseError):
    """Spectral gap below the threshold for the perturbative/adiabatic regime."""


class ConvergenceFailure(CurvePhaseError):
    """Eigensolver iteration cap exceeded; input is pathological."""


class OverlapTooSmall(CurvePhaseError):
    """Consecutive loop states overlap too weakly; refine the loop."""


class NonUnitarizable(CurvePhaseError):
    """Transport overlap matrix nearly singular; no meaningful unitary part."""


class NormDrift(CurvePhaseError):
    """Propagated state norm drifted beyond tolerance."""


class AdiabaticityLoss(CurvePhaseError):
    """Instantaneous ground-state population dropped below the floor."""


class ConfigError(CurvePhaseError):
    """Invalid or unknown configuration content."""
