from solvflow.lib.asymptotics.cone import (
    ConeReport,
    HyperbolicRate,
    cone_profile,
    hyperbolic_rate,
)
from solvflow.lib.asymptotics.exceptions import (
    AmbiguousZLimit,
    AsymptoticsError,
    NonPositiveW,
    WindowTooShort,
)
from solvflow.lib.asymptotics.limits import (
    ZLimit,
    asymptotic_origin,
    classify_z_limit,
    origin_for,
)
from solvflow.lib.asymptotics.rates import (
    COMPENSATED_COLUMNS,
    NOSCAL_H_SPREAD,
    NOSCAL_Y_RATE,
    SIGMA_TAU_RATE,
    V_TAU_RATE,
    W_RATE,
    X_RATE,
    X_TAU_RATE,
    Y_RATE,
    Y_TAU_RATE,
    Z_RATE,
    RateFit,
    alpha_from_fits,
    compensated_table,
    fit_rates,
    fits_by_name,
    noscal_rates,
)
from solvflow.lib.asymptotics.tau import (
    CentreVars,
    centre_coords,
    centre_manifold_slope,
    tau_system_field,
    tau_time,
)
from solvflow.lib.asymptotics.windows import Window, origin_window, rate_windows

__all__ = [
    "COMPENSATED_COLUMNS",
    "NOSCAL_H_SPREAD",
    "NOSCAL_Y_RATE",
    "SIGMA_TAU_RATE",
    "V_TAU_RATE",
    "W_RATE",
    "X_RATE",
    "X_TAU_RATE",
    "Y_RATE",
    "Y_TAU_RATE",
    "Z_RATE",
    "AmbiguousZLimit",
    "AsymptoticsError",
    "CentreVars",
    "ConeReport",
    "HyperbolicRate",
    "NonPositiveW",
    "RateFit",
    "Window",
    "WindowTooShort",
    "ZLimit",
    "alpha_from_fits",
    "asymptotic_origin",
    "centre_coords",
    "centre_manifold_slope",
    "classify_z_limit",
    "compensated_table",
    "cone_profile",
    "fit_rates",
    "fits_by_name",
    "hyperbolic_rate",
    "noscal_rates",
    "origin_for",
    "origin_window",
    "rate_windows",
    "tau_system_field",
    "tau_time",
]
