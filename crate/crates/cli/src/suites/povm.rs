use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weakval::hilbert::random;
use weakval::povm::{
    backaction_decomposition, ratio_expansions, uniform_bin_edges, BinnedPointerFamily, PovmFamily,
    WeakPovmExpansion,
};
use weakval::{Ket, LinOp};

use crate::config::RunConfig;
use crate::report::{col, Check, Report, Table};
use crate::CliError;

/// Finite-difference step in the coupling for slopes.
const STEP: f64 = 1e-4;

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let pointer = cfg.pointer()?;
    let edges = uniform_bin_edges(&pointer, cfg.bins, 1.5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Report::default();

    let mut table = Table::new(
        "slopes",
        vec![
            col("trial", "random instance index"),
            col("outcome", "final projective outcome n"),
            col("zeroth", "conditional expectation of the first-stage labels at g = 0"),
            col("slope", "d/dg of the conditional expectation at g = 0 (finite difference)"),
            col("weak_value_re", "Re of the weak value of A' between I and outcome n"),
            col("slope_residual", "|slope - weak_value_re|"),
        ],
    );
    let (mut slope, mut eprime, mut closure, mut calibration) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for t in 0..cfg.trials {
        let obs = random::hermitian(&mut rng, cfg.dim);
        let family = BinnedPointerFamily::new(&obs, pointer, &edges)?;
        let i = random::ket(&mut rng, cfg.dim);
        let finals = random::rank_one_partition(&mut rng, cfg.dim);
        let expansion = family.expansion();
        let numerical = WeakPovmExpansion::numerical(&family, STEP)?;
        eprime = eprime.max(expansion.eprime_sum_residual()).max(numerical.eprime_sum_residual());
        calibration = calibration.max(expansion.aprime().max_diff(&obs)?);
        closure = closure.max(family.at(cfg.kappa)?.closure_residual());
        for n in 0..finals.len() {
            let d = backaction_decomposition(&i, &family, &expansion, &finals, n, STEP)?;
            table.push(vec![
                t.into(),
                n.into(),
                d.zeroth.into(),
                d.first_slope.into(),
                d.weakvalue_re.into(),
                d.slope_residual().into(),
            ]);
            slope = slope.max(d.slope_residual());
        }
    }
    report.tables.push(table);
    report.checks.push(Check::upper("slope_equals_weak_value", slope, 1e-6));
    report.checks.push(Check::upper("eprime_sum_vanishes", eprime, 1e-10));
    report.checks.push(Check::upper("labels_calibrated_to_observable", calibration, 1e-10));
    report.checks.push(Check::upper("effects_resolve_identity", closure, 1e-10));

    // a nearly orthogonal pre/post pair makes the first-order ratio negative
    let sigma_z = LinOp::diagonal(&[1.0, -1.0])?;
    let family = BinnedPointerFamily::new(&sigma_z, pointer, &uniform_bin_edges(&pointer, 2, 1.0)?)?;
    let i = Ket::from_real(&[1.0, 1.0])?.normalize()?;
    let f = Ket::from_real(&[1.0, -0.98])?.normalize()?;
    let finals = vec![f.outer(&f), LinOp::identity(2)?.sub(&f.outer(&f))?];
    let g = 0.05 * pointer.sigma();
    let (rows, min_pr) = ratio_expansions(&i, &family, &finals, 0, g, STEP / 10.0)?;
    let mut neg = Table::new(
        "negativity",
        vec![
            col("outcome", "first-stage outcome m"),
            col("zeroth", "Pr(n,m)/sum_m Pr(n,m) at g = 0"),
            col("slope", "d/dg of the ratio at g = 0"),
            col("first_order", "zeroth + g * slope"),
            col("exact", "ratio evaluated exactly at g"),
        ],
    );
    for r in &rows {
        neg.push(vec![
            r.outcome.into(),
            r.zeroth.into(),
            r.slope.into(),
            r.first_order.into(),
            r.exact.into(),
        ]);
    }
    report.tables.push(neg);
    let most_negative = rows.iter().map(|r| r.first_order).fold(f64::INFINITY, f64::min);
    let min_exact = rows.iter().map(|r| r.exact).fold(f64::INFINITY, f64::min);
    report
        .checks
        .push(Check::lower("first_order_ratio_goes_negative", -most_negative, 0.0));
    report
        .checks
        .push(Check::upper("joint_probabilities_non_negative", (-min_pr.min(min_exact)).max(0.0), 0.0));
    Ok(report)
}
