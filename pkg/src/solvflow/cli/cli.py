import logging
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
import typer
from rich.console import Console
from rich.table import Table
from typing_extensions import Annotated

from solvflow import __version__
from solvflow.lib.asymptotics import (
    COMPENSATED_COLUMNS,
    alpha_from_fits,
    asymptotic_origin,
    classify_z_limit,
    compensated_table,
    fit_rates,
    hyperbolic_rate,
    noscal_rates,
)
from solvflow.lib.constants import DEFAULT_DELTA, DEFAULT_SWEEP_COUNT
from solvflow.lib.construct import (
    ShotConfig,
    alphas_distinct,
    emerge,
    is_admissible,
    reconstruct,
    shoot_einstein,
    shoot_family,
    shoot_noscal,
    soliton_residual,
    sweep,
)
from solvflow.lib.core import (
    LieAlgebraData,
    SolvsolitonParams,
    UnknownPreset,
    preset,
)
from solvflow.lib.env_config import is_verbose_env_vars
from solvflow.lib.flow import (
    FullSystem,
    closed_form_eigenvalues,
    jacobian,
    stationary_points,
    unstable_eigendata,
)
from solvflow.lib.integrate import (
    IntegratorOptions,
    Trajectory,
    monitor_omega,
    read_trajectory_csv,
    write_trajectory_csv,
)
from solvflow.lib.logger import configure_logging, set_not_verbose
from solvflow.lib.outputs import (
    event_record,
    plot_trajectory,
    write_columns,
    write_json,
    write_profile,
    write_sweep_csv,
)
from solvflow.lib.utils import system_run
from solvflow.lib.verify import run_suite

LOG = logging.getLogger(__name__)


def version_callback(value: bool) -> None:
    if value:
        typer.echo(f"solvflow: {__version__}")
        raise typer.Exit()


def load_preset(name: str) -> Tuple[LieAlgebraData, SolvsolitonParams]:
    try:
        return preset(name)
    except UnknownPreset as e:
        raise typer.BadParameter(str(e)) from None


def trajectory_summary(t: Trajectory) -> dict:
    return {
        "samples": len(t),
        "s_start": t.times[0],
        "s_end": t.times[-1],
        "initial_state": t.initial_state,
        "final_state": t.final_state,
        "events": [event_record(e) for e in t.events],
        "stats": t.stats,
    }


def write_artifacts(
    t: Trajectory,
    params: Optional[SolvsolitonParams],
    dump: Optional[Path],
    plot: Optional[Path],
    phi: Optional[np.ndarray] = None,
    title: Optional[str] = None,
) -> None:
    if dump is not None:
        write_trajectory_csv(dump, t, params=params, phi=phi)
        LOG.info(f"Wrote {len(t)} samples to {dump}")
    if plot is not None:
        plot_trajectory(plot, t, title)


app = typer.Typer()


@app.callback()
def default(
    version: Annotated[
        Optional[bool],
        typer.Option(
            "--version",
            callback=version_callback,
            is_eager=True,
            help="Show application version",
        ),
    ] = None,
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Increase logging verbosity")
    ] = False,
) -> None:
    if (not verbose) and (not is_verbose_env_vars()):
        # Neither --verbose flag nor the environment variable is set.
        set_not_verbose()


@app.command(name="preset")
def preset_command(
    name: Annotated[str, typer.Argument(help="Preset name or JSON preset file")],
    json: Annotated[
        bool, typer.Option("--json", help="Dump the normalized parameters as JSON")
    ] = False,
) -> None:
    """Show the normalized solvsoliton data of a preset."""
    with system_run():
        alg, params = load_preset(name)
        if json:
            write_json({"name": name, "dim": alg.dim, "params": params.as_dict()})
            return
        table = Table("Quantity", "Value", title=name)
        for key, value in params.as_dict().items():
            table.add_row(key, repr(value))
        Console().print(table)


@app.command()
def stationary(
    name: Annotated[str, typer.Argument(help="Preset name or JSON preset file")],
    table: Annotated[
        bool, typer.Option("--table", help="Print a table instead of JSON")
    ] = False,
) -> None:
    """List the stationary points of the flow with their linearization."""
    with system_run():
        _, params = load_preset(name)
        eps_plus, eps_minus = closed_form_eigenvalues(params)
        eig = unstable_eigendata(params)
        points = stationary_points(params)
        eigenvalues = {
            point_name: np.sort(np.linalg.eigvals(jacobian(point, params)).real)
            for point_name, point in zip(points._fields, points)
        }
    if not table:
        records = {
            point_name: {
                "state": point.as_array(),
                "eigenvalues": eigenvalues[point_name],
            }
            for point_name, point in zip(points._fields, points)
        }
        write_json(
            {
                "preset": name,
                "points": records,
                "eigen": {
                    "eps_plus": eps_plus,
                    "eps_minus": eps_minus,
                    "w0": eig.w0,
                    "w1": eig.w1,
                    "theta0": eig.theta0,
                },
            }
        )
        return
    rich_table = Table("Point", "x", "y", "z", "w", "Eigenvalues")
    for point_name, point in zip(points._fields, points):
        rich_table.add_row(
            point_name,
            *(f"{v:.10g}" for v in point),
            ", ".join(f"{v:.6g}" for v in eigenvalues[point_name]),
        )
    console = Console()
    console.print(rich_table)
    console.print(f"ε₊ = {eps_plus!r}, ε₋ = {eps_minus!r}, θ₀ = {eig.theta0!r}")


@app.command()
def shoot(
    name: Annotated[str, typer.Argument(help="Preset name or JSON preset file")],
    theta: Annotated[
        float, typer.Option(help="Emergence angle θ", rich_help_panel="Shot")
    ],
    delta: Annotated[
        float, typer.Option(help="Offset from γ^S", rich_help_panel="Shot")
    ] = DEFAULT_DELTA,
    smax: Annotated[
        Optional[float],
        typer.Option(help="End of the forward leg", rich_help_panel="Shot"),
    ] = None,
    rtol: Annotated[
        Optional[float],
        typer.Option(help="Relative tolerance", rich_help_panel="Integrator"),
    ] = None,
    atol: Annotated[
        Optional[float],
        typer.Option(help="Absolute tolerance", rich_help_panel="Integrator"),
    ] = None,
    capture_radius: Annotated[
        Optional[float],
        typer.Option(
            help="Radius of the stationary-point capture balls",
            rich_help_panel="Integrator",
        ),
    ] = None,
    norm_cap: Annotated[
        Optional[float],
        typer.Option(
            help="Stop as blow-up once the state norm exceeds this",
            rich_help_panel="Integrator",
        ),
    ] = None,
    monitor: Annotated[
        bool,
        typer.Option(
            help="Detect Ω exits and w − nx sign changes as events",
            rich_help_panel="Integrator",
        ),
    ] = True,
    samples: Annotated[
        int,
        typer.Option(
            help="Resample the dump evenly (0 keeps the integrator steps)",
            rich_help_panel="Output",
        ),
    ] = 0,
    dump: Annotated[
        Optional[Path],
        typer.Option(help="Write the trajectory as CSV", rich_help_panel="Output"),
    ] = None,
    profile: Annotated[
        Optional[Path],
        typer.Option(
            help="Write the reconstructed metric (CSV for a .csv path, else JSON)",
            rich_help_panel="Output",
        ),
    ] = None,
    plot: Annotated[
        Optional[Path],
        typer.Option(help="Plot the trajectory to a PNG", rich_help_panel="Output"),
    ] = None,
) -> None:
    """Shoot one member of the family from the Einstein solvmanifold point."""
    with system_run():
        _, params = load_preset(name)
        options = IntegratorOptions.from_config(
            rtol=rtol,
            atol=atol,
            capture_radius=capture_radius,
            norm_cap=norm_cap,
            monitor_events=monitor,
        )
        config = ShotConfig(theta=theta, delta=delta, s_forward=smax, options=options)
        eig = unstable_eigendata(params)
        report = {"preset": name, "theta": theta, "delta": delta}
        report["theta0"] = eig.theta0
        report["admissible"] = is_admissible(theta, eig)
        phi = None
        if report["admissible"]:
            shot = shoot_family(theta, params, config)
            t = shot.trajectory
            phi = shot.profile.phi
            report["soliton_residual"] = soliton_residual(shot.profile, t, params).sup
            report["l_positive"] = shot.profile.l_positive
            if profile is not None:
                write_profile(profile, shot.profile)
        else:
            LOG.warning(
                f"θ = {theta!r} is outside (−π/2, {eig.theta0!r}); "
                "reporting events without guarantees"
            )
            t = emerge(params, config, eig)
            if profile is not None:
                LOG.warning("No metric profile is written for this θ")
        forward = t.restricted(0.0, float(t.times[-1]))
        omega = monitor_omega(forward, params)
        report["omega_clean"] = omega.clean
        report["minimum_margins"] = omega.minimum_margins
        report["trajectory"] = trajectory_summary(t)
        write_json(report)
        if samples:
            t = t.resampled(samples)
            phi = reconstruct(t, params).phi if phi is not None else None
        write_artifacts(t, params, dump, plot, phi, f"{name}, θ = {theta:.6g}")


@app.command(name="sweep")
def sweep_command(
    name: Annotated[str, typer.Argument(help="Preset name or JSON preset file")],
    count: Annotated[
        int, typer.Option(help="Number of angles in the sweep")
    ] = DEFAULT_SWEEP_COUNT,
    smax: Annotated[
        Optional[float], typer.Option(help="End of the forward legs")
    ] = None,
    output: Annotated[
        Optional[Path], typer.Option(help="Write the sweep table as CSV")
    ] = None,
) -> None:
    """Shoot a grid of angles and compare the asymptotic cone constants α."""
    with system_run():
        _, params = load_preset(name)
        rows = sweep(params, count, ShotConfig(s_forward=smax))
    table = Table("θ", "α", "α (previous window)", "sup x", "s capture", "Ω-clean")
    for row in rows:
        table.add_row(
            f"{row.theta:.6f}",
            f"{row.alpha:.8g}",
            f"{row.alpha_previous:.8g}",
            f"{row.sup_x:.6g}",
            f"{row.s_capture:.6g}",
            "yes" if row.omega_clean else "no",
        )
    Console().print(table)
    if output is not None:
        write_sweep_csv(output, rows)
    if not (all(row.omega_clean for row in rows) and alphas_distinct(rows)):
        LOG.error("Sweep rows are not all Ω-clean with pairwise distinct α")
        raise typer.Exit(code=1)


@app.command()
def einstein(
    name: Annotated[str, typer.Argument(help="Preset name or JSON preset file")],
    dump: Annotated[
        Optional[Path], typer.Option(help="Write the embedded trajectory as CSV")
    ] = None,
    plot: Annotated[
        Optional[Path], typer.Option(help="Plot the Einstein trajectory to a PNG")
    ] = None,
) -> None:
    """Connect γ^S to γ^H inside the Einstein set."""
    with system_run():
        _, params = load_preset(name)
        shot = shoot_einstein(params)
        rate = hyperbolic_rate(reconstruct(shot.embedded, params), params)
        write_json(
            {
                "preset": name,
                "capture_distance": shot.capture_distance,
                "z_drift": shot.z_drift,
                "hyperbolic_rate": rate,
                "trajectory": trajectory_summary(shot.trajectory),
            }
        )
        write_artifacts(shot.embedded, params, dump, plot, title=f"{name}, Einstein")


@app.command()
def noscal(
    lam: Annotated[
        float, typer.Option("--lambda", help="λ of the no-scal subsystem, in (−1, 0)")
    ],
    smax: Annotated[Optional[float], typer.Option(help="End of the shot")] = None,
    dump: Annotated[
        Optional[Path], typer.Option(help="Write the trajectory as CSV")
    ] = None,
) -> None:
    """Shoot the scalar-curvature-free subsystem from (1, 1)."""
    with system_run():
        t = shoot_noscal(lam, ShotConfig(s_forward=smax))
        write_json(
            {
                "lambda": lam,
                "rates": noscal_rates(t, lam),
                "trajectory": trajectory_summary(t),
            }
        )
        write_artifacts(t, None, dump, None)


@app.command(name="verify")
def verify_command(
    name: Annotated[str, typer.Argument(help="Preset name or JSON preset file")],
) -> None:
    """Run the property suite and exit 1 if any check fails."""
    with system_run():
        alg, params = load_preset(name)
        results = run_suite(alg, params)
    table = Table("Check", "Result", "Value", "Threshold", "Detail", title=name)
    for result in results:
        table.add_row(
            result.name,
            "[green]pass[/green]" if result.passed else "[red]FAIL[/red]",
            f"{result.value:.3e}",
            f"{result.threshold:.3e}",
            result.detail,
        )
    Console().print(table)
    if not all(result.passed for result in results):
        raise typer.Exit(code=1)


@app.command()
def asymptotics(
    path: Annotated[Path, typer.Argument(help="Trajectory CSV written by --dump")],
    name: Annotated[
        str, typer.Option("--preset", help="Preset the trajectory was shot for")
    ],
    table: Annotated[
        bool, typer.Option("--table", help="Print a table instead of JSON")
    ] = False,
    compensated: Annotated[
        Optional[Path],
        typer.Option(help="Write the compensated quantities as a gnuplot table"),
    ] = None,
) -> None:
    """Fit the forward asymptotic rates of a dumped trajectory."""
    with system_run():
        _, params = load_preset(name)
        t = read_trajectory_csv(path, FullSystem(params))
        fits = fit_rates(t, params)
        alpha, alpha_previous = alpha_from_fits(fits)
        z_limit = classify_z_limit(t, params)
        origin = asymptotic_origin(t, params)
        if compensated is not None:
            rows = compensated_table(t, params, origin)
            write_columns(compensated, COMPENSATED_COLUMNS, rows)
    if not table:
        write_json(
            {
                "preset": name,
                "origin": origin,
                "alpha": alpha,
                "alpha_previous": alpha_previous,
                "z_limit": z_limit,
                "fits": fits,
            }
        )
        return
    rich_table = Table("Quantity", "Limit", "Fitted", "Previous", "Error")
    for fit in fits:
        limit = "?" if fit.predicted_limit is None else f"{fit.predicted_limit:g}"
        rich_table.add_row(
            fit.quantity,
            limit,
            f"{fit.fitted_value:.8g}",
            f"{fit.previous_value:.8g}",
            f"{fit.relative_error:.3e}",
        )
    console = Console()
    console.print(rich_table)
    console.print(f"s_∞ = {origin!r}, α = {alpha!r}, z → {z_limit.z0!r}")


def main() -> None:
    configure_logging()
    app()


if __name__ == "__main__":
    main()
