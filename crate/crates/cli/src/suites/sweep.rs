use std::f64::consts::FRAC_1_SQRT_2;

use weakval::convergence::{fit_order, geometric, Order};
use weakval::pointer::{
    backaction_relation, evolve_exact, first_order_pointer_mean, postselect_pointer_mean, readout_probability_exact,
    WeakSetup,
};
use weakval::scenarios::hardy::hardy_build;
use weakval::{Ket, LinOp};

use crate::config::RunConfig;
use crate::report::{col, Check, Report, Table, Value};
use crate::CliError;

/// Half-width of the accepted band around the expected order.
pub const ORDER_BAND: f64 = 0.2;

/// One quantity whose first-order prediction is swept against κ.
pub struct SweepIdentity {
    pub name: String,
    /// `None` when the first-order prediction should be exact.
    pub expected_order: Option<f64>,
    pub error: Box<dyn Fn(f64) -> Result<f64, CliError>>,
}

fn pointer_mean_error(setup: WeakSetup, f: Ket) -> Box<dyn Fn(f64) -> Result<f64, CliError>> {
    Box::new(move |k| {
        let s = setup.with_coupling(k)?;
        let exact = postselect_pointer_mean(&evolve_exact(&s)?, &f)?;
        Ok((exact - first_order_pointer_mean(&s, &f)?).abs())
    })
}

fn probability_error(setup: WeakSetup, f: Ket) -> Box<dyn Fn(f64) -> Result<f64, CliError>> {
    Box::new(move |k| {
        let s = setup.with_coupling(k)?;
        let first = backaction_relation(&s, &f)?.first_order_probability;
        Ok((readout_probability_exact(&s, &f)? - first).abs())
    })
}

fn identities(cfg: &RunConfig) -> Result<Vec<SweepIdentity>, CliError> {
    let pointer = cfg.pointer()?;
    let theta: f64 = 0.35;
    let i = Ket::from_real(&[theta.cos(), theta.sin()])?;
    let f = Ket::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2])?;
    let sz = LinOp::diagonal(&[1.0, -1.0])?;
    let qubit = WeakSetup::new(i.clone(), sz, pointer, 0.0)?;
    let trivial = WeakSetup::new(i, LinOp::identity(2)?, pointer, 0.0)?;

    // the pointer-mean error is odd in κ, so its leading term is κ³
    let mut out = vec![
        SweepIdentity {
            name: "identity_pointer_mean".into(),
            expected_order: None,
            error: pointer_mean_error(trivial, f.clone()),
        },
        SweepIdentity {
            name: "qubit_pointer_mean".into(),
            expected_order: Some(3.0),
            error: pointer_mean_error(qubit.clone(), f.clone()),
        },
        SweepIdentity {
            name: "qubit_backaction".into(),
            expected_order: Some(2.0),
            error: probability_error(qubit, f),
        },
    ];
    let ws = hardy_build();
    for op in ws.rank_one() {
        let setup = WeakSetup::new(ws.phi.clone(), op.op.clone(), pointer, 0.0)?;
        out.push(SweepIdentity {
            name: format!("hardy_backaction_{}", op.name),
            expected_order: Some(2.0),
            error: probability_error(setup, ws.psi.clone()),
        });
    }
    Ok(out)
}

/// Fits `error ∝ κ^p` for every identity over `kappas`.
///
/// Needs at least three couplings in geometric progression.
pub fn sweep_coupling(cfg: &RunConfig, kappas: &[f64]) -> Result<Report, CliError> {
    if kappas.len() < 3 {
        return Err(CliError::Config {
            field: "kappa",
            reason: format!("a sweep needs at least three couplings, got {}", kappas.len()),
        });
    }
    let ratio = kappas[1] / kappas[0];
    let geometric_ok = kappas.iter().all(|k| *k > 0.0 && k.is_finite())
        && kappas.windows(2).all(|w| ((w[1] / w[0]) / ratio - 1.0).abs() < 1e-9)
        && ratio != 1.0;
    if !geometric_ok {
        return Err(CliError::Config {
            field: "kappa",
            reason: "sweep couplings must be positive and in geometric progression".into(),
        });
    }

    let mut sweep = Table::new(
        "sweep",
        vec![
            col("identity", "first-order prediction being swept"),
            col("kappa", "coupling strength g*t"),
            col("error", "|exact - first order|"),
        ],
    );
    let mut orders = Table::new(
        "orders",
        vec![
            col("identity", "first-order prediction being swept"),
            col("expected_order", "expected power of kappa in the error (empty when exact)"),
            col("fitted_order", "least-squares slope of ln error against ln kappa (empty when exact)"),
            col("exact", "1 when every error vanished"),
        ],
    );
    let mut report = Report::default();
    for id in identities(cfg)? {
        let errors = kappas.iter().map(|&k| (id.error)(k)).collect::<Result<Vec<_>, _>>()?;
        for (k, e) in kappas.iter().zip(&errors) {
            sweep.push(vec![Value::text(id.name.clone()), (*k).into(), (*e).into()]);
        }
        let order = fit_order(kappas, &errors)?;
        let is_exact = matches!(order, Order::Exact);
        orders.push(vec![
            Value::text(id.name.clone()),
            id.expected_order.map_or(Value::Missing, Value::num),
            order.fitted().map_or(Value::Missing, Value::num),
            usize::from(is_exact).into(),
        ]);
        match id.expected_order {
            None => {
                let worst = errors.iter().fold(0.0_f64, |a, e| a.max(*e));
                report.checks.push(Check::upper(format!("{}_exact", id.name), worst, 1e-12));
            }
            // a vanishing error also satisfies an order bound
            Some(p) => {
                let deviation = order.fitted().map_or(0.0, |q| (q - p).abs());
                let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
                report
                    .checks
                    .push(Check::upper(format!("{}_order", id.name), deviation, ORDER_BAND));
            }
        }
    }
    report.tables.push(sweep);
    report.tables.push(orders);
    Ok(report)
}

pub fn run(cfg: &RunConfig) -> Result<Report, CliError> {
    sweep_coupling(cfg, &geometric(cfg.kappa, 0.5, 4))
}
