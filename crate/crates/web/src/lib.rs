//! WebAssembly bindings for a static page. Each exported function returns a
//! flat `Float64Array`; the layout is given on the function. The `*_rows`
//! functions do the work and are what the native tests exercise.

use wasm_bindgen::prelude::*;
use weakval::pointer::{evolve_exact, first_order_pointer_mean, postselect_pointer_mean, GaussianPointer, WeakSetup};
use weakval::scenarios::hardy::{hardy_backaction_experiment, hardy_build};
use weakval::scenarios::twoslit::{even_planes, quantile_starts, reconstruct_trajectories, twoslit_build};
use weakval::{Ket, LinOp};

const WAVENUMBER: f64 = 50.0;
const SLIT_WIDTH: f64 = 1.0;

fn js(e: weakval::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// `planes` z values, then `starts` rows of `planes` ξ values.
/// A trajectory stopped at a node is padded with NaN.
pub fn trajectory_rows(separation: f64, far_plane: f64, starts: usize, planes: usize) -> weakval::Result<Vec<f64>> {
    let z_far = far_plane * WAVENUMBER * SLIT_WIDTH * SLIT_WIDTH;
    let zs = even_planes(z_far, planes);
    let field = twoslit_build(separation, SLIT_WIDTH, WAVENUMBER, &zs)?;
    let bundle = reconstruct_trajectories(&field, &quantile_starts(&field, starts), &zs)?;
    let mut out = zs.clone();
    for path in &bundle.paths {
        out.extend(path.iter().copied().chain(std::iter::repeat(f64::NAN)).take(zs.len()));
    }
    Ok(out)
}

/// Bohmian-style paths through the double slit, with `separation` in slit
/// widths and `far_plane` in units of `k s²`.
#[wasm_bindgen]
pub fn trajectories(separation: f64, far_plane: f64, starts: usize, planes: usize) -> Result<Vec<f64>, JsError> {
    trajectory_rows(separation, far_plane, starts, planes).map_err(js)
}

/// Rows of `(κ, exact mean, first-order mean, weak value)` for a σ_z pointer
/// on `cos θ|0⟩ + sin θ|1⟩` post-selected on `|+⟩`, at `n` couplings up to `kappa_max`.
pub fn pointer_mean_rows(theta: f64, x0: f64, sigma: f64, kappa_max: f64, n: usize) -> weakval::Result<Vec<f64>> {
    let i = Ket::from_real(&[theta.cos(), theta.sin()])?;
    let f = Ket::from_real(&[1.0, 1.0])?.normalize()?;
    let sz = LinOp::diagonal(&[1.0, -1.0])?;
    let base = WeakSetup::new(i.clone(), sz.clone(), GaussianPointer::new(x0, sigma)?, 0.0)?;
    let wv = weakval::weakvalue::weak_value(&sz, &i, &f)?.real_part;
    let mut out = Vec::with_capacity(4 * n);
    for j in 1..=n {
        let k = kappa_max * j as f64 / n as f64;
        let s = base.with_coupling(k)?;
        out.extend([
            k,
            postselect_pointer_mean(&evolve_exact(&s)?, &f)?,
            first_order_pointer_mean(&s, &f)?,
            wv,
        ]);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn pointer_mean(theta: f64, x0: f64, sigma: f64, kappa_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    pointer_mean_rows(theta, x0, sigma, kappa_max, n).map_err(js)
}

/// Operators reported by [`hardy_shifts`], in column order.
pub const HARDY_OPERATORS: [&str; 4] = ["Npe_O_O", "Npe_O_NO", "Npe_NO_O", "Npe_NO_NO"];

/// Rows of `κ` followed by `(first-order shift, exact shift)` for each of
/// [`HARDY_OPERATORS`], at `n` couplings up to `kappa_max ≤ σ/10`.
pub fn hardy_shift_rows(x0: f64, sigma: f64, kappa_max: f64, n: usize) -> weakval::Result<Vec<f64>> {
    let ws = hardy_build();
    let pointer = GaussianPointer::new(x0, sigma)?;
    let mut out = Vec::with_capacity(9 * n);
    for j in 1..=n {
        let k = kappa_max * j as f64 / n as f64;
        let rows = hardy_backaction_experiment(&ws, pointer, k)?;
        out.push(k);
        for name in HARDY_OPERATORS {
            let r = rows.iter().find(|r| r.name == name).expect("rank-one operator present");
            out.extend([r.first_order_shift, r.exact_shift]);
        }
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn hardy_shifts(x0: f64, sigma: f64, kappa_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    hardy_shift_rows(x0, sigma, kappa_max, n).map_err(js)
}

#[wasm_bindgen]
pub fn hardy_operator_names() -> String {
    HARDY_OPERATORS.join(",")
}
