"""Exception hierarchy shared by all modules."""


class AnsatzError(Exception):
    """Base class for every error raised by harmonic_ansatz."""


class PoleError(AnsatzError):
    """Evaluation point coincides with a pole of a super-potential or field."""


class BranchCutError(AnsatzError):
    """Evaluation point lies on the branch cut of a multivalued potential."""


class OrderUnsupported(AnsatzError):
    """Requested derivative order exceeds what the jet machinery provides."""


class NotSymmetric(AnsatzError):
    """A field or potential expected to be SO(3)-invariant is not."""


class AxisError(AnsatzError):
    """A symmetric lift was requested on the axis r = 0."""


class SingularGauge(AnsatzError):
    """A gauge map is (numerically) zero and cannot be normalised."""


class DegenerateGauge(AnsatzError):
    """exp(2i chi) equals 1, so the gauge-pair logarithms are undefined."""


class QuadratureNotConverged(AnsatzError):
    """Adaptive quadrature failed to meet its tolerance.

    The best available estimate is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class NoConvergence(AnsatzError):
    """Newton iteration did not converge from a seed."""


class InvalidData(AnsatzError, ValueError):
    """Parameters violate a construction's non-degeneracy conditions."""
