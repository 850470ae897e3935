from solvflow.lib.integrate.exceptions import (
    IntegrationError,
    NotCaptured,
    TrajectoryFormatError,
    UnsupportedMethod,
)
from solvflow.lib.integrate.integrator import integrate
from solvflow.lib.integrate.monitors import (
    OmegaReport,
    PhiMonitor,
    monitor_omega,
    monitor_phi,
    phi_integrand,
)
from solvflow.lib.integrate.options import IntegratorOptions
from solvflow.lib.integrate.quadrature import cumulative_integral
from solvflow.lib.integrate.trajectory import (
    DenseOutput,
    Event,
    IntegratorStats,
    Trajectory,
)
from solvflow.lib.integrate.trajectory_io import (
    read_trajectory_csv,
    trajectory_columns,
    write_trajectory_csv,
)

__all__ = [
    "DenseOutput",
    "Event",
    "IntegrationError",
    "IntegratorOptions",
    "IntegratorStats",
    "NotCaptured",
    "OmegaReport",
    "PhiMonitor",
    "Trajectory",
    "TrajectoryFormatError",
    "UnsupportedMethod",
    "cumulative_integral",
    "integrate",
    "monitor_omega",
    "monitor_phi",
    "phi_integrand",
    "read_trajectory_csv",
    "trajectory_columns",
    "write_trajectory_csv",
]
