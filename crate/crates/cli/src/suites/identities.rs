use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weakval::hilbert::random;
use weakval::pointer::{backaction_relation, completeness_backaction, WeakSetup};
use weakval::weakvalue::{
    completeness_sum, decompose_expectation, decomposition_sum, squared_weakvalue_identity, zero_or_one_check,
};
use weakval::{Complex64, LinOp};

use crate::config::RunConfig;
use crate::report::{col, Check, Report, Table};
use crate::CliError;

pub const TOLERANCE: f64 = 1e-10;

const IDENTITIES: [&str; 6] = [
    "expectation_decomposition",
    "weak_value_completeness",
    "completeness_backaction",
    "squared_weak_value",
    "zero_or_one",
    "backaction_relation",
];

fn trial(rng: &mut ChaCha8Rng, dim: usize, cfg: &RunConfig) -> Result<[f64; 6], CliError> {
    let a = random::hermitian(rng, dim);
    let i = random::ket(rng, dim);
    let f = random::ket(rng, dim);
    let basis = random::basis(rng, dim);

    let terms = decompose_expectation(&a, &i, &basis)?;
    let decomposition = (decomposition_sum(&terms) - a.expectation(&i)?).norm();

    let partition = random::rank_one_partition(rng, dim);
    let completeness = (completeness_sum(&partition, &i, &f)? - Complex64::new(1.0, 0.0)).norm();
    let pointer = cfg.pointer()?;
    let completeness_ba = (completeness_backaction(&partition, &i, &f, &pointer, cfg.kappa)? - 1.0).abs();

    let squared = squared_weakvalue_identity(&partition[0], &i, &f)?.max_residual();

    let rank = rng.random_range(1..dim);
    let ai = basis[..rank]
        .iter()
        .try_fold(LinOp::zeros(dim)?, |acc, k| acc.add(&k.outer(k)))?;
    let z = zero_or_one_check(&ai, &basis, &i)?;
    let zero_one = z.max_binary_deviation().max(z.sum_rule_residual());

    let setup = WeakSetup::new(i, a, pointer, cfg.kappa)?;
    let relation = backaction_relation(&setup, &f)?.residual();
    Ok([decomposition, completeness, completeness_ba, squared, zero_one, relation])
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut table = Table::new(
        "instances",
        vec![
            col("trial", "random instance index"),
            col("identity", "identity checked on this instance"),
            col("residual", "absolute residual"),
        ],
    );
    let mut worst = [0.0_f64; 6];
    for t in 0..cfg.trials {
        let r = trial(&mut rng, cfg.dim, cfg)?;
        for (k, name) in IDENTITIES.iter().enumerate() {
            table.push(vec![t.into(), (*name).into(), r[k].into()]);
            worst[k] = if r[k].is_nan() { f64::NAN } else { worst[k].max(r[k]) };
        }
    }
    let mut report = Report::default();
    report.tables.push(table);
    for (k, name) in IDENTITIES.iter().enumerate() {
        report.checks.push(Check::upper(*name, worst[k], TOLERANCE));
    }
    Ok(report)
}
