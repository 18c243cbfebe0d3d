use weakval::scenarios::twoslit::{
    even_planes, extrapolated_intensity, fringe_spacing, ks_distance, quantile_starts, reconstruct_trajectories,
    twoslit_build, twoslit_pointer_check, Grid,
};

use crate::config::RunConfig;
use crate::report::{col, Check, Report, Table, Value};
use crate::CliError;

/// Lengths in units of the slit width `s`.
pub const SLIT_WIDTH: f64 = 1.0;
pub const SLIT_SEPARATION: f64 = 8.0;
pub const WAVENUMBER: f64 = 50.0;
/// Final plane in units of `k s²`.
pub const FAR_PLANE: f64 = 20.0;
/// Plane of the grid pointer check, in units of `k s²`.
pub const CHECK_PLANE: f64 = 1.0;
pub const POINTER_SAMPLES: [f64; 10] = [-5.0, -3.0, -1.0, 0.0, 1.0, 2.0, 3.0, 5.0, 6.0, 7.0];

fn phase_gradient(field: &weakval::scenarios::twoslit::TwoSlitField, xi: f64, z: f64, h: f64) -> f64 {
    let d = |h: f64| (field.psi(xi + h, z) / field.psi(xi - h, z)).arg() / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let zr = WAVENUMBER * SLIT_WIDTH * SLIT_WIDTH;
    let z_far = FAR_PLANE * zr;
    let field = twoslit_build(SLIT_SEPARATION, SLIT_WIDTH, WAVENUMBER, &even_planes(z_far, cfg.planes))?;
    let mut report = Report::default();

    let norm = field
        .planes()
        .iter()
        .map(|&z| (field.norm_by_quadrature(z, 20_000) - 1.0).abs())
        .fold(0.0, f64::max);
    report.checks.push(Check::upper("normalized_on_every_plane", norm, 1e-8));

    // trajectories from |ψ|²-quantile starts
    let starts = quantile_starts(&field, cfg.starts);
    let bundle = reconstruct_trajectories(&field, &starts, field.planes())?;
    let mut traj = Table::new(
        "trajectories",
        vec![
            col("start", "trajectory index, ordered by start position"),
            col("z", "propagation distance (units of s)"),
            col("xi", "transverse position (units of s)"),
        ],
    );
    for (j, path) in bundle.paths.iter().enumerate() {
        for (p, xi) in path.iter().enumerate() {
            traj.push(vec![j.into(), bundle.planes[p].into(), (*xi).into()]);
        }
    }
    report.tables.push(traj);
    let mut stopped = Table::new(
        "terminated",
        vec![
            col("start", "trajectory index"),
            col("reason", "why the trajectory stopped before the last plane"),
        ],
    );
    for (j, t) in bundle.terminated.iter().enumerate() {
        if let Some(e) = t {
            stopped.push(vec![j.into(), Value::text(e.to_string())]);
        }
    }
    report.tables.push(stopped);
    report
        .checks
        .push(Check::upper("trajectories_non_crossing", (-bundle.min_ordered_gap()).max(0.0), 0.0));
    report.checks.push(Check::upper(
        "trajectories_completed",
        (starts.len() - bundle.completed()) as f64,
        0.0,
    ));
    let cdf = field.intensity_cdf(z_far, 1 << 16);
    let ks = ks_distance(&bundle.endpoints(), |x| cdf.eval(x));
    report.checks.push(Check::upper("endpoint_ks_distance", ks, 0.05));

    // weak momentum and intensity at the last plane
    let mut profile = Table::new(
        "profile",
        vec![
            col("xi", "transverse position at the last plane"),
            col("intensity", "|psi|^2"),
            col("weak_momentum", "Re of the momentum weak value post-selected at xi (empty at a node)"),
            col("phase_gradient", "finite-difference phase gradient (empty at a node)"),
            col("flag", "node when |psi| is too small for a weak value"),
        ],
    );
    let l = field.slit_separation() / 2.0 + 3.0 * field.envelope_width(z_far);
    let mut fd_worst = 0.0_f64;
    let h = 1e-4 * field.envelope_width(z_far);
    for i in 0..=400 {
        let xi = -l + 2.0 * l * i as f64 / 400.0;
        match field.weak_momentum(xi, z_far) {
            Ok(p) => {
                let fd = phase_gradient(&field, xi, z_far, h);
                fd_worst = fd_worst.max((p - fd).abs());
                profile.push(vec![xi.into(), field.intensity(xi, z_far).into(), p.into(), fd.into(), "".into()]);
            }
            Err(_) => profile.push(vec![
                xi.into(),
                field.intensity(xi, z_far).into(),
                Value::Missing,
                Value::Missing,
                "node".into(),
            ]),
        }
    }
    report.tables.push(profile);
    report.checks.push(Check::upper("weak_momentum_vs_phase_gradient", fd_worst, 1e-8));

    let want = 2.0 * std::f64::consts::PI * z_far / (WAVENUMBER * SLIT_SEPARATION);
    let spacing = fringe_spacing(&field, z_far)?;
    let mut fringes = Table::new(
        "fringes",
        vec![col("quantity", "far-field fringe quantity"), col("value", "value (units of s)")],
    );
    fringes.push(vec!["z".into(), z_far.into()]);
    fringes.push(vec!["measured_spacing".into(), spacing.into()]);
    fringes.push(vec!["far_field_spacing_2pi_z_over_kd".into(), want.into()]);
    report.tables.push(fringes);
    report
        .checks
        .push(Check::upper("fringe_spacing_relative_error", (spacing - want).abs() / want, 0.02));

    // grid surrogate of the momentum back-action relation
    let pointer = cfg.pointer()?;
    let z_check = CHECK_PLANE * zr;
    let grid = Grid {
        points: 401,
        half_width: 16.0 * SLIT_WIDTH,
    };
    let coupling = cfg.kappa * 0.1;
    let rows = twoslit_pointer_check(&field, pointer, coupling, &POINTER_SAMPLES, z_check, grid)?;
    let mut pc = Table::new(
        "pointer_check",
        vec![
            col("xi", "post-selected position (snapped to the coarse grid)"),
            col("analytic", "Im(dpsi/psi) from the closed form"),
            col("grid_weak_value", "Re of the momentum weak value on the coarse grid"),
            col("grid_ratio", "(x0/kappa)(post-selection probability change)/(probability), coarse grid"),
            col("refined_ratio", "same ratio on the grid with half the step"),
            col("grid_change", "|refined - coarse| relative to max(|refined|, 1/s)"),
            col("analytic_error", "|refined - analytic| relative to max(|analytic|, 1/s)"),
            col("relation_residual", "weak value vs probability ratio residual, coarse grid"),
            col("flag", "node when the sample sits next to a node and was skipped"),
        ],
    );
    let (mut change, mut err, mut rel) = (0.0_f64, 0.0_f64, 0.0_f64);
    for r in &rows {
        let flag = if r.rejected.is_some() { "node" } else { "" };
        pc.push(vec![
            r.xi.into(),
            r.analytic.into(),
            r.grid_weak_value.into(),
            r.grid_ratio.into(),
            r.refined_ratio.into(),
            r.grid_change.into(),
            r.analytic_error.into(),
            r.relation_residual.into(),
            flag.into(),
        ]);
        if r.rejected.is_none() {
            change = change.max(r.grid_change);
            err = err.max(r.analytic_error);
            rel = rel.max(r.relation_residual);
        }
    }
    report.tables.push(pc);
    report.checks.push(Check::upper("pointer_relation_on_grid", rel, 1e-10));
    report.checks.push(Check::upper("pointer_grid_convergence", change, 0.01));
    report.checks.push(Check::upper("pointer_grid_vs_analytic", err, 0.01));

    let small = Grid {
        points: 201,
        half_width: 16.0 * SLIT_WIDTH,
    };
    let (extrapolated, base) = extrapolated_intensity(&field, pointer, (coupling, 2.0 * coupling), z_check, small)?;
    let mut ip = Table::new(
        "intensity_extrapolation",
        vec![
            col("xi", "grid position"),
            col("unperturbed", "|<xi|I>|^2 / h"),
            col("extrapolated", "post-selected intensity extrapolated linearly to zero coupling"),
        ],
    );
    let mut worst = 0.0_f64;
    for (j, (e, b)) in extrapolated.iter().zip(&base).enumerate() {
        ip.push(vec![small.x(j).into(), (*b).into(), (*e).into()]);
        worst = worst.max((e - b).abs());
    }
    report.tables.push(ip);
    report.checks.push(Check::upper("interference_recovered_at_zero_coupling", worst, 1e-6));
    Ok(report)
}
