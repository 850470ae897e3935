from enum import Enum

# Integrator defaults, overridable from the [INTEGRATOR] config section.
DEFAULT_RTOL = 1e-10
DEFAULT_ATOL = 1e-12
DEFAULT_NORM_CAP = 1e6
DEFAULT_CAPTURE_RADIUS = 1e-8
DEFAULT_METHOD = "DOP853"
EXPLICIT_METHODS = ("DOP853", "RK45", "RK23")

# Shooting defaults
DEFAULT_DELTA = 1e-6
DEFAULT_S_FORWARD = 100.0
DEFAULT_S_BACKWARD = -60.0
# A backward leg is captured once it is within this fraction of δ of γ^S.
BACKWARD_CAPTURE_FRACTION = 0.25
DEFAULT_NOSCAL_S_FORWARD = 200.0
DEFAULT_EINSTEIN_S_FORWARD = 200.0
DEFAULT_SWEEP_COUNT = 9
SWEEP_MARGIN_FRACTION = 0.05

# Algebraic tolerances
ANTISYMMETRY_TOL = 1e-12
JACOBI_TOL = 1e-12
UNIMODULAR_TOL = 1e-12
SOLITON_FIT_TOL = 1e-8
DERIVATION_TOL = 1e-10
EIGENSPACE_RANK_TOL = 1e-8
REGION_TOL = 1e-12

# Asymptotics
RATE_WINDOW_FRACTION = 0.1
RATE_WINDOW_SAMPLES = 101
Z_LIMIT_AMBIGUITY = 0.25

SIGNIFICANT_DIGITS = 17


class SystemKind(str, Enum):
    FULL = "full"
    EINSTEIN = "einstein"
    NOSCAL = "noscal"


class EventKind(str, Enum):
    OMEGA_EXIT = "omega-exit"
    W_MINUS_NX_SIGN_CHANGE = "w-minus-nx-sign-change"
    BLOWUP = "blowup"
    CAPTURED = "captured"
    MAX_TIME = "max-time"
    STEP_SIZE_UNDERFLOW = "step-size-underflow"
