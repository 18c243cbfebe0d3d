//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Reference values come from oracles written here against plain complex
//! arithmetic (matrix products, a Jacobi eigensolver, Simpson quadrature), not
//! from the library's own code paths.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weakval::convergence::{fit_order, Order};
use weakval::hilbert::random;
use weakval::pointer::{backaction_relation, completeness_backaction, GaussianPointer, WeakSetup};
use weakval::povm::{
    backaction_decomposition, ratio_expansions, sequential_probability, uniform_bin_edges, BinnedPointerFamily,
    PovmFamily, WeakPovmExpansion,
};
use weakval::scenarios::hardy::{hardy_build, hardy_noncommutativity, hardy_weak_values};
use weakval::scenarios::twoslit::{
    even_planes, fringe_spacing, ks_distance, quantile_starts, reconstruct_trajectories, twoslit_build,
};
use weakval::weakvalue::{
    completeness_sum, decompose_expectation, decomposition_sum, squared_weakvalue_identity, zero_or_one_check,
    Classification,
};
use weakval::{Complex64, Ket, LinOp};

type C = Complex64;

mod oracle {
    use super::*;

    pub type Mat = Vec<Vec<C>>;

    pub fn mat(a: &LinOp) -> Mat {
        (0..a.dim()).map(|r| (0..a.dim()).map(|c| a.entry(r, c)).collect()).collect()
    }

    pub fn vec(k: &Ket) -> Vec<C> {
        k.amplitudes().to_vec()
    }

    pub fn mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        (0..n)
            .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
            .collect()
    }

    pub fn apply(a: &Mat, v: &[C]) -> Vec<C> {
        a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
    }

    /// `Σ conj(a_i) b_i`
    pub fn dot(a: &[C], b: &[C]) -> C {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    }

    pub fn outer(a: &[C], b: &[C]) -> Mat {
        a.iter().map(|x| b.iter().map(|y| x * y.conj()).collect()).collect()
    }

    pub fn adjoint(a: &Mat) -> Mat {
        let n = a.len();
        (0..n).map(|r| (0..n).map(|c| a[c][r].conj()).collect()).collect()
    }

    pub fn trace(a: &Mat) -> C {
        (0..a.len()).map(|i| a[i][i]).sum()
    }

    pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(a: &Mat, s: f64) -> Mat {
        a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
    }

    pub fn sub(a: &Mat, b: &Mat) -> Mat {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
    }

    /// Cyclic Jacobi on a real symmetric matrix; returns eigenvalues and
    /// eigenvectors (as columns `v[.][j]`).
    fn jacobi(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = a.len();
        let mut v = vec![vec![0.0; n]; n];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i][j] * a[i][j])
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (akp, akq) = (a[k][p], a[k][q]);
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let (apk, aqk) = (a[p][k], a[q][k]);
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for row in v.iter_mut() {
                        let (vp, vq) = (row[p], row[q]);
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }
        ((0..n).map(|i| a[i][i]).collect(), v)
    }

    /// `Σ_j f(λ_j) |z_j⟩⟨z_j|` for Hermitian `a`, through the real embedding
    /// `[[X, −Y], [Y, X]]` whose eigenvectors `(u, v)` pair up into `u + iv`.
    pub fn matrix_function(a: &Mat, f: impl Fn(f64) -> C) -> Mat {
        let n = a.len();
        let mut big = vec![vec![0.0; 2 * n]; 2 * n];
        for r in 0..n {
            for c in 0..n {
                big[r][c] = a[r][c].re;
                big[r + n][c + n] = a[r][c].re;
                big[r][c + n] = -a[r][c].im;
                big[r + n][c] = a[r][c].im;
            }
        }
        let (vals, vecs) = jacobi(big);
        let mut out = vec![vec![C::new(0.0, 0.0); n]; n];
        for (j, lam) in vals.iter().enumerate() {
            let z: Vec<C> = (0..n).map(|i| C::new(vecs[i][j], vecs[i + n][j])).collect();
            let w = f(*lam) * 0.5;
            for r in 0..n {
                for c in 0..n {
                    out[r][c] += w * z[r] * z[c].conj();
                }
            }
        }
        out
    }

    pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut acc = f(a) + f(b);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + h * i as f64);
        }
        acc * h / 3.0
    }

    /// `x0⁻¹ ∫ φ(x) x φ(x − κa) dx` for the real Gaussian pointer with
    /// `|φ|²` of mean `x0` and standard deviation `σ`.
    pub fn readout_factor(x0: f64, sigma: f64, kappa: f64, a: f64) -> f64 {
        let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25);
        let phi = |x: f64| norm * (-(x - x0).powi(2) / (4.0 * sigma * sigma)).exp();
        let lo = x0 - 14.0 * sigma - kappa.abs() * a.abs();
        let hi = x0 + 14.0 * sigma + kappa.abs() * a.abs();
        simpson(|x| phi(x) * x * phi(x - kappa * a), lo, hi, 4000) / x0
    }
}

struct Outcome {
    residual: f64,
    tolerance: f64,
    pass: bool,
    note: String,
}

impl Outcome {
    fn bound(residual: f64, tolerance: f64, extra_ok: bool, note: impl Into<String>) -> Self {
        Outcome {
            residual,
            tolerance,
            pass: residual <= tolerance && extra_ok,
            note: note.into(),
        }
    }
}

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let elapsed = t.elapsed();
    let pass = out.pass && elapsed < limit;
    println!(
        "criterion {id} {} {name}: residual {:.3e} tol {:.1e} time {:.2}s (limit {}s) {}",
        if pass { "PASS" } else { "FAIL" },
        out.residual,
        out.tolerance,
        elapsed.as_secs_f64(),
        limit.as_secs(),
        out.note
    );
    pass
}

fn hardy_exact_values() -> Outcome {
    let ws = hardy_build();
    let table = hardy_weak_values(&ws).unwrap();
    let expected = [
        ("Npe_O_O", 0.0),
        ("Npe_O_NO", 1.0),
        ("Npe_NO_O", 1.0),
        ("Npe_NO_NO", -1.0),
        ("Np_O", 1.0),
        ("Ne_O", 1.0),
        ("Np_NO", 0.0),
        ("Ne_NO", 0.0),
    ];
    let mut residual = (ws.overlap_sqr() - 1.0 / 12.0).abs();
    // independent overlap from the amplitudes
    let ov = oracle::dot(&oracle::vec(&ws.psi), &oracle::vec(&ws.phi)).norm_sqr();
    residual = residual.max((ov - 1.0 / 12.0).abs());
    let mut all_back_action = true;
    for (name, want) in expected {
        let row = table.iter().find(|r| r.name == name).unwrap();
        residual = residual.max((row.report.value - C::new(want, 0.0)).norm());
        all_back_action &= row.report.classification == Classification::BackActionIndicator;
    }
    Outcome::bound(residual, 1e-12, all_back_action, "(overlap 1/12, weak values 0 1 1 -1 1 0)")
}

fn hardy_operator_identities() -> Outcome {
    let ws = hardy_build();
    let n = oracle::mat(ws.n_no_no());
    let psi_hat = oracle::outer(&oracle::vec(&ws.psi), &oracle::vec(&ws.psi));
    let phi_hat = oracle::outer(&oracle::vec(&ws.phi), &oracle::vec(&ws.phi));
    let sandwich = |p: &oracle::Mat, c: f64| {
        let pn = oracle::mul(p, &n);
        oracle::max_diff(&oracle::mul(&pn, &pn), &oracle::scale(&pn, c))
    };
    let r_psi = sandwich(&psi_hat, 0.25);
    let r_phi = sandwich(&phi_hat, 1.0 / 3.0);

    let comm = oracle::sub(&oracle::mul(&psi_hat, &n), &oracle::mul(&n, &psi_hat));
    let phi = oracle::vec(&ws.phi);
    let expectation = oracle::dot(&phi, &oracle::apply(&comm, &phi)).norm();
    let comm_max = comm.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max);

    let lib = hardy_noncommutativity(&ws).unwrap();
    let lib_residual = (lib.psi_factor - 0.25)
        .abs()
        .max((lib.phi_factor - 1.0 / 3.0).abs())
        .max(lib.psi_residual)
        .max(lib.phi_residual)
        .max(lib.commutator_expectation.norm());
    let residual = r_psi.max(r_phi).max(expectation).max(lib_residual);
    let noncommuting = comm_max > 0.1 && lib.commutators.iter().all(|c| c.max_entry > 0.1);
    Outcome::bound(
        residual,
        1e-12,
        noncommuting && lib.power_limit_max == 0.0,
        format!("(max |[Psi,N]| = {comm_max:.3}, (Psi N)^n -> 0 after {} squarings)", lib.squarings),
    )
}

fn sum_rules() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pointer = GaussianPointer::new(2.0, 1.0).unwrap();
    let mut worst = 0.0_f64;
    let mut count = 0;
    for dim in 2..=8 {
        for _ in 0..1000 {
            let a = random::hermitian(&mut rng, dim);
            let i = random::ket(&mut rng, dim);
            let basis = random::basis(&mut rng, dim);
            let terms = decompose_expectation(&a, &i, &basis).unwrap();
            let iv = oracle::vec(&i);
            let direct = oracle::dot(&iv, &oracle::apply(&oracle::mat(&a), &iv));
            worst = worst.max((decomposition_sum(&terms) - direct).norm());

            let partition = random::rank_one_partition(&mut rng, dim);
            let f = random::ket(&mut rng, dim);
            worst = worst.max((completeness_sum(&partition, &i, &f).unwrap() - C::new(1.0, 0.0)).norm());
            let ratio = completeness_backaction(&partition, &i, &f, &pointer, 1e-3).unwrap();
            worst = worst.max((ratio - 1.0).abs());
            count += 1;
        }
    }
    Outcome::bound(worst, 1e-10, true, format!("({count} instances x 3 rules, dims 2..8)"))
}

fn squared_and_binary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0_f64;
    for t in 0..1000 {
        let dim = 2 + t % 7;
        let basis = random::basis(&mut rng, dim);
        let v = oracle::vec(&basis[0]);
        let ai = basis[0].outer(&basis[0]);
        let i = random::ket(&mut rng, dim);
        let f = random::ket(&mut rng, dim);
        let r = squared_weakvalue_identity(&ai, &i, &f).unwrap();
        // oracle: |⟨f|a⟩⟨a|i⟩|² / |⟨f|i⟩|²
        let (iv, fv) = (oracle::vec(&i), oracle::vec(&f));
        let want = (oracle::dot(&fv, &v) * oracle::dot(&v, &iv)).norm_sqr() / oracle::dot(&fv, &iv).norm_sqr();
        worst = worst.max(r.max_residual()).max((r.lhs - want).abs());
    }
    let mut binary = 0.0_f64;
    for t in 0..1000 {
        let dim = 2 + t % 7;
        let basis = random::basis(&mut rng, dim);
        let rank = rng.random_range(1..dim);
        let ai = basis[..rank]
            .iter()
            .fold(LinOp::zeros(dim).unwrap(), |acc, k| acc.add(&k.outer(k)).unwrap());
        let i = random::ket(&mut rng, dim);
        let rep = zero_or_one_check(&ai, &basis, &i).unwrap();
        binary = binary.max(rep.max_binary_deviation()).max(rep.sum_rule_residual());
    }
    Outcome::bound(
        worst.max(binary),
        1e-10,
        true,
        format!("(three-way {worst:.1e}, zero-or-one {binary:.1e}; 1000 + 1000 instances)"),
    )
}

/// Exact post-selection probability after the position readout, via the oracle.
fn exact_readout_probability(a: &LinOp, i: &Ket, f: &Ket, x0: f64, sigma: f64, kappa: f64) -> f64 {
    let fm = oracle::matrix_function(&oracle::mat(a), |lam| C::new(oracle::readout_factor(x0, sigma, kappa, lam), 0.0));
    let fv = oracle::vec(&f.normalize().unwrap());
    oracle::dot(&fv, &oracle::apply(&fm, &oracle::vec(i))).norm_sqr()
}

fn main_result() -> Outcome {
    let (x0, sigma) = (2.0, 1.0);
    let pointer = GaussianPointer::new(x0, sigma).unwrap();
    let kappas = [1e-2 * sigma, 5e-3 * sigma, 2.5e-3 * sigma];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<(String, LinOp, Ket, Ket)> = Vec::new();
    for t in 0..120 {
        let dim = 2 + t % 2;
        cases.push((
            format!("random {t}"),
            random::hermitian(&mut rng, dim),
            random::ket(&mut rng, dim),
            random::ket(&mut rng, dim),
        ));
    }
    let ws = hardy_build();
    for op in ws.rank_one() {
        cases.push((op.name.to_string(), op.op.clone(), ws.phi.clone(), ws.psi.clone()));
    }

    let mut relation = 0.0_f64;
    let mut bad_orders = Vec::new();
    let (mut lo, mut hi, mut exact) = (f64::INFINITY, f64::NEG_INFINITY, 0);
    for (name, a, i, f) in &cases {
        let errors: Vec<f64> = kappas
            .iter()
            .map(|&k| {
                let setup = WeakSetup::new(i.clone(), a.clone(), pointer, k).unwrap();
                let rel = backaction_relation(&setup, f).unwrap();
                if k == kappas[0] {
                    relation = relation.max(rel.residual());
                }
                (exact_readout_probability(a, i, f, x0, sigma, k) - rel.first_order_probability).abs()
            })
            .collect();
        let order = fit_order(&kappas, &errors).unwrap();
        match order {
            Order::Exact => exact += 1,
            Order::Fitted { order, .. } => {
                lo = lo.min(order);
                hi = hi.max(order);
            }
        }
        if !order.within(1.8, 2.2) {
            bad_orders.push(format!("{name}: {:?}", order.fitted()));
        }
    }
    Outcome::bound(
        relation,
        1e-10,
        bad_orders.is_empty(),
        format!(
            "({} cases; fitted orders in [{lo:.3}, {hi:.3}], {exact} exact; out of [1.8, 2.2]: {:?})",
            cases.len(),
            bad_orders
        ),
    )
}

fn povm_layer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pointer = GaussianPointer::new(2.0, 1.0).unwrap();
    let (mut born, mut slope, mut eprime) = (0.0_f64, 0.0_f64, 0.0_f64);
    for t in 0..60 {
        let dim = 2 + t % 3;
        let bins = 2 + t % 5;
        let obs = random::hermitian(&mut rng, dim);
        let family = BinnedPointerFamily::new(&obs, pointer, &uniform_bin_edges(&pointer, bins, 1.5).unwrap()).unwrap();
        let i = random::ket(&mut rng, dim);
        let finals = random::rank_one_partition(&mut rng, dim);

        for g in [0.0, 0.05, 0.3, 1.0] {
            let set = family.at(g).unwrap();
            let pr = sequential_probability(&i, &set, &finals).unwrap();
            // two-stage Born rule on density matrices
            let rho = oracle::outer(&oracle::vec(&i), &oracle::vec(&i));
            for (m, k) in set.kraus_ops().iter().enumerate() {
                let km = oracle::mat(k);
                let after = oracle::mul(&oracle::mul(&km, &rho), &oracle::adjoint(&km));
                for (n, p) in finals.iter().enumerate() {
                    let want = oracle::trace(&oracle::mul(&oracle::mat(p), &after)).re;
                    born = born.max((pr[n][m] - want).abs());
                }
            }
        }

        let expansion = family.expansion();
        let numerical = WeakPovmExpansion::numerical(&family, 1e-3).unwrap();
        eprime = eprime.max(expansion.eprime_sum_residual()).max(numerical.eprime_sum_residual());
        let iv = oracle::vec(&i);
        let am = oracle::mat(&obs);
        for (n, p) in finals.iter().enumerate() {
            let d = backaction_decomposition(&i, &family, &expansion, &finals, n, 1e-3).unwrap();
            // labels are calibrated so that A′ = A: slope = Re⟨I|P_n A|I⟩ / ⟨I|P_n|I⟩
            let pm = oracle::mat(p);
            let num = oracle::dot(&iv, &oracle::apply(&oracle::mul(&pm, &am), &iv)).re;
            let den = oracle::dot(&iv, &oracle::apply(&pm, &iv)).re;
            slope = slope.max((d.first_slope - num / den).abs()).max(d.slope_residual());
        }
    }
    let residual = (born / 1e-12).max(slope / 1e-6).max(eprime / 1e-10);
    Outcome::bound(
        residual,
        1.0,
        true,
        format!("(normalized; Born {born:.1e} <= 1e-12, slope {slope:.1e} <= 1e-6, sum E' {eprime:.1e} <= 1e-10)"),
    )
}

fn double_slit() -> Outcome {
    let (s, k, d) = (1.0, 50.0, 8.0);
    let z_far = 20.0 * k * s * s;
    let field = twoslit_build(d, s, k, &even_planes(z_far, 41)).unwrap();

    // weak momentum against a Richardson phase-gradient finite difference
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fd = 0.0_f64;
    let fd_at = |xi: f64, z: f64, h: f64| (field.psi(xi + h, z) / field.psi(xi - h, z)).arg() / (2.0 * h);
    for _ in 0..1000 {
        let z = rng.random_range(0.0..z_far);
        let half = d / 2.0 + 3.0 * field.envelope_width(z);
        let xi = rng.random_range(-half..half);
        let h = 1e-4 * field.envelope_width(z);
        let want = (4.0 * fd_at(xi, z, h / 2.0) - fd_at(xi, z, h)) / 3.0;
        fd = fd.max((field.weak_momentum(xi, z).unwrap() - want).abs());
    }

    // endpoints of |ψ(·,0)|²-quantile starts against |ψ(·,z_far)|²
    let starts = quantile_starts(&field, 10_000);
    let bundle = reconstruct_trajectories(&field, &starts, field.planes()).unwrap();
    let l = field.support_half_width(z_far);
    let cells = 200_000;
    let h = 2.0 * l / cells as f64;
    let mut cdf = vec![0.0];
    for c in 0..cells {
        let a = -l + h * c as f64;
        let piece = oracle::simpson(|x| field.intensity(x, z_far), a, a + h, 2);
        cdf.push(cdf[c] + piece);
    }
    let ks = ks_distance(&bundle.endpoints(), |x| {
        let u = ((x + l) / h).clamp(0.0, cells as f64 - 1e-9);
        let c = u.floor() as usize;
        cdf[c] + (u - c as f64) * (cdf[c + 1] - cdf[c])
    });

    let small = reconstruct_trajectories(&field, &quantile_starts(&field, 80), field.planes()).unwrap();
    let non_crossing = bundle.is_non_crossing() && small.is_non_crossing() && bundle.completed() == starts.len();

    let want = 2.0 * std::f64::consts::PI * z_far / (k * d);
    let fringe = (fringe_spacing(&field, z_far).unwrap() - want).abs() / want;

    let residual = (fd / 1e-8).max(ks / 0.05).max(fringe / 0.02);
    Outcome::bound(
        residual,
        1.0,
        non_crossing,
        format!(
            "(normalized; momentum-vs-FD {fd:.1e} <= 1e-8, KS {ks:.1e} <= 0.05, fringe {:.2}% <= 2%, non-crossing {non_crossing}, min gap {:.2e})",
            100.0 * fringe,
            bundle.min_ordered_gap()
        ),
    )
}

fn negativity() -> Outcome {
    // nearly orthogonal pre- and post-selection give a large weak value of σz
    let pointer = GaussianPointer::new(2.0, 1.0).unwrap();
    let sigma_z = LinOp::diagonal(&[1.0, -1.0]).unwrap();
    let family = BinnedPointerFamily::new(&sigma_z, pointer, &uniform_bin_edges(&pointer, 2, 1.0).unwrap()).unwrap();
    let i = Ket::from_real(&[1.0, 1.0]).unwrap().normalize().unwrap();
    let f = Ket::from_real(&[1.0, -0.98]).unwrap().normalize().unwrap();
    let finals = vec![f.outer(&f), LinOp::identity(2).unwrap().sub(&f.outer(&f)).unwrap()];
    let g = 0.05;
    let (rows, min_pr) = ratio_expansions(&i, &family, &finals, 0, g, 1e-4).unwrap();
    let worst = rows.iter().map(|r| r.first_order).fold(f64::INFINITY, f64::min);
    let witness = rows.iter().find(|r| r.first_order < 0.0);
    let exact_ok = rows.iter().all(|r| r.exact >= 0.0) && min_pr >= 0.0;
    Outcome {
        residual: worst,
        tolerance: 0.0,
        pass: witness.is_some() && exact_ok,
        note: match witness {
            Some(r) => format!(
                "(g = {g}: outcome {} first-order ratio {:.4} < 0, exact ratio {:.4}, min Pr(n,m) {:.3e} >= 0)",
                r.outcome, r.first_order, r.exact, min_pr
            ),
            None => "(no negative first-order ratio found)".into(),
        },
    }
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        run(1, "Hardy overlap and weak values", s(1), hardy_exact_values),
        run(2, "Hardy operator identities", s(1), hardy_operator_identities),
        run(3, "sum rules", s(30), sum_rules),
        run(4, "squared weak value and zero-or-one", s(30), squared_and_binary),
        run(5, "first-order back-action relation and convergence", s(60), main_result),
        run(6, "POVM layer", s(60), povm_layer),
        run(7, "double slit", s(300), double_slit),
        run(8, "negativity of first-order ratio", s(60), negativity),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
