"""Harmonic-function ansatz for self-dual instantons and hyperbolic vortices."""

from ._kernels import BACKEND
from .errors import (AnsatzError, AxisError, BranchCutError, DegenerateGauge,
                     InvalidData, NoConvergence, NotSymmetric, OrderUnsupported,
                     PoleError, QuadratureNotConverged, SingularGauge)

__version__ = "0.1.0"
