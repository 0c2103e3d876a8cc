//! Independent brute-force oracles on model domains: the reproducing kernel
//! of the unit ball by series with numerically integrated monomial norms, a
//! validation-gated closed form, a finite-difference commutator route to the
//! Levi form, the asymptotic-vs-exact comparison driver, and the
//! harmonic-sum limit for Euler's constant.

use crate::error::{Error, Result};
use crate::heat::homog_exponents;
use crate::levi::{frame_at_with_pivots, frame_with_pivots, levi_form, realify};
use crate::linalg::gauss_legendre;
use crate::phase::{bergman_a_coeffs, bergman_leading, bergman_phase_jet};
use crate::surface::{
    contact_form, normalize_defining, DefiningFunctionSpec, MetricSpec, Tolerances,
};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Central-difference step used by the commutator route.
pub const DEFAULT_BRACKET_STEP: f64 = 1e-5;

fn beta_memo() -> &'static Mutex<HashMap<(u32, u32), f64>> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32), f64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `∫₀¹ t^a (1-t)^b dt` by 64-node Gauss quadrature (exact for the
/// polynomial integrand when `a+b ≤ 127`), memoized.
fn power_product_integral(a: u32, b: u32) -> f64 {
    if let Some(v) = beta_memo().lock().unwrap().get(&(a, b)) {
        return *v;
    }
    let rule = gauss_legendre(64);
    let mut total = 0.0;
    for &(node, weight) in &rule {
        let t = 0.5 * (node + 1.0);
        total += 0.5 * weight * t.powi(a as i32) * (1.0 - t).powi(b as i32);
    }
    beta_memo().lock().unwrap().insert((a, b), total);
    total
}

/// Squared L² norm of the monomial `ζ^α` over the unit ball of ℂⁿ, computed
/// by peeling the simplex integral into memoized 1-D integrals: after the
/// angular factors, `‖ζ^α‖² = πⁿ·Π_k ∫₀¹ t^{α_k}(1-t)^{d_k} dt` with `d_k`
/// the homogeneity degree of the remaining factors.
pub fn ball_monomial_norm_sq(alpha: &[u32]) -> f64 {
    let n = alpha.len();
    let mut value = std::f64::consts::PI.powi(n as i32);
    for k in 0..n {
        let rest_degree: u32 = alpha[k + 1..].iter().map(|&a| a + 1).sum();
        value *= power_product_integral(alpha[k], rest_degree);
    }
    value
}

fn check_inside_ball(z: &[Complex64], n: usize) -> Result<()> {
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    let norm_sq: f64 = z.iter().map(|v| v.norm_sqr()).sum();
    if norm_sq >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "point lies outside the open unit ball (|z|² = {norm_sq})"
        )));
    }
    Ok(())
}

/// Truncated reproducing-kernel series
/// `Σ_{|α| ≤ N} z^α·conj(w)^α / ‖ζ^α‖²` on the unit ball, with every norm
/// computed by numeric integration.  This is the ground-truth route.
pub fn ball_bergman_series(z: &[Complex64], w: &[Complex64], n: usize, max_degree: u32) -> Result<Complex64> {
    check_inside_ball(z, n)?;
    check_inside_ball(w, n)?;
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..=max_degree {
        for alpha in homog_exponents(n, m) {
            let mut term = Complex64::new(1.0, 0.0);
            for j in 0..n {
                term *= z[j].powi(alpha[j] as i32) * w[j].conj().powi(alpha[j] as i32);
            }
            total += term / ball_monomial_norm_sq(&alpha);
        }
    }
    Ok(total)
}

/// Series truncation used when the closed-form kernel is validated against
/// the monomial-norm series on the interior grid.
pub const GATE_TRUNCATION: u32 = 40;

fn closed_form_gate() -> &'static Mutex<HashMap<usize, bool>> {
    static GATE: OnceLock<Mutex<HashMap<usize, bool>>> = OnceLock::new();
    GATE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn validate_closed_form(n: usize) -> Result<()> {
    if let Some(&ok) = closed_form_gate().lock().unwrap().get(&n) {
        return if ok {
            Ok(())
        } else {
            Err(Error::Domain(
                "closed-form ball kernel previously failed series validation".into(),
            ))
        };
    }
    let mut points: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::new();
    let e1 = |s: f64| {
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[0] = Complex64::new(s, 0.0);
        v
    };
    for &r in &[0.0, 0.25, 0.5] {
        points.push((e1(r), e1(r)));
    }
    points.push((e1(0.4), e1(0.25)));
    if n >= 2 {
        let mut mixed = vec![Complex64::new(0.0, 0.0); n];
        mixed[0] = Complex64::new(0.3, 0.1);
        mixed[1] = Complex64::new(-0.2, 0.25);
        points.push((mixed.clone(), mixed));
    }
    let mut ok = true;
    for (z, w) in &points {
        let series = ball_bergman_series(z, w, n, GATE_TRUNCATION)?;
        let closed = closed_form_value(z, w, n)?;
        if (series - closed).norm() > 1e-6 * closed.norm().max(1e-12) {
            ok = false;
            break;
        }
    }
    closed_form_gate().lock().unwrap().insert(n, ok);
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(
            "closed-form ball kernel disagrees with the series ground truth".into(),
        ))
    }
}

fn closed_form_value(z: &[Complex64], w: &[Complex64], n: usize) -> Result<Complex64> {
    let pairing: Complex64 = z.iter().zip(w.iter()).map(|(a, b)| a * b.conj()).sum();
    let denom = Complex64::new(1.0, 0.0) - pairing;
    if denom.norm() == 0.0 {
        return Err(Error::Domain(
            "closed-form kernel singular at ⟨z, w̄⟩ = 1".into(),
        ));
    }
    let factorial: f64 = (1..=n).map(|j| j as f64).product();
    Ok(factorial * std::f64::consts::PI.powi(-(n as i32)) * denom.powi(-(n as i32) - 1))
}

/// Closed-form ball kernel `n!·π^{-n}·(1-⟨z,w̄⟩)^{-(n+1)}`.  On the first use
/// for a given dimension it is checked against the series route on a
/// validation grid and rejected permanently if they disagree.
pub fn ball_bergman_closed(z: &[Complex64], w: &[Complex64], n: usize) -> Result<Complex64> {
    if z.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len().max(w.len()),
        });
    }
    validate_closed_form(n)?;
    closed_form_value(z, w, n)
}

/// Levi matrix by numerically differentiated Lie brackets: the tangent frame
/// is extended off the base point by replaying the pivot selection, the
/// bracket `[Z_j, conj(Z_k)]` is formed from central differences with step
/// `h`, and the result is paired with the contact covector at the base point.
pub fn levi_brute_force(
    f: &DefiningFunctionSpec,
    metric: &MetricSpec,
    p: &[f64],
    tols: &Tolerances,
    h: f64,
) -> Result<DMatrix<Complex64>> {
    if !(h > 0.0) {
        return Err(Error::InvalidInput("bracket step must be positive".into()));
    }
    let normalized = normalize_defining(f, metric, p, tols)?;
    let scale = normalized.scale;
    let omega0 = contact_form(&normalized.jet);
    let (frame_p, pivots) = frame_with_pivots(&normalized.jet, metric, p)?;
    let m = frame_p.len();
    let d = p.len();
    let poly = f.to_polynomial();

    // Real-coordinate coefficients of each frame field at a displaced point.
    let fields_at = |x: &[f64]| -> Result<Vec<DVector<Complex64>>> {
        let jet = poly.jet(x)?.scaled(scale);
        let frame = frame_at_with_pivots(&jet, metric, x, &pivots)?;
        Ok(frame.iter().map(realify).collect())
    };

    let base: Vec<DVector<Complex64>> = frame_p.iter().map(realify).collect();
    // partials[l][j] = ∂_l of field j (componentwise central difference).
    let mut partials: Vec<Vec<DVector<Complex64>>> = Vec::with_capacity(d);
    for l in 0..d {
        let mut plus = p.to_vec();
        plus[l] += h;
        let mut minus = p.to_vec();
        minus[l] -= h;
        let fp = fields_at(&plus)?;
        let fm = fields_at(&minus)?;
        partials.push(
            fp.iter()
                .zip(fm.iter())
                .map(|(a, b)| (a - b).map(|v| v / (2.0 * h)))
                .collect(),
        );
    }

    let one_over_2i = Complex64::new(0.0, -0.5);
    let mut levi = DMatrix::<Complex64>::zeros(m, m);
    for j in 0..m {
        for k in 0..m {
            // [A, B]^i = Σ_l A^l ∂_l B^i − B^l ∂_l A^i with B = conj(field k).
            let mut paired = Complex64::new(0.0, 0.0);
            for i in 0..d {
                let mut comm = Complex64::new(0.0, 0.0);
                for l in 0..d {
                    comm += base[j][l] * partials[l][k][i].conj();
                    comm -= base[k][l].conj() * partials[l][j][i];
                }
                paired += comm * omega0[i];
            }
            levi[(j, k)] = one_over_2i * paired;
        }
    }
    Ok(levi)
}

/// Exact-vs-asymptotic comparison along an inward normal path to the ball
/// boundary.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub model: String,
    pub q: usize,
    /// Path parameters, strictly decreasing; the point is `z = (1-ε)p`.
    pub path_eps: Vec<f64>,
    /// Diagonal singularity variable `-iφ(z,z)` along the path.
    pub minus_i_phi: Vec<f64>,
    /// Ground-truth kernel values, as `[re, im]`.
    pub exact: Vec<(f64, f64)>,
    /// Leading-term predictions, as `[re, im]`.
    pub asymptotic: Vec<(f64, f64)>,
    /// Per-point ratio exact/asymptotic.
    pub ratio: Vec<f64>,
    /// Fitted slope of log|exact| against log(-iφ).
    pub slope: f64,
    pub slope_target: f64,
    pub final_ratio: f64,
    /// `2ⁿ`, the determinant factor between the doubled inner product's
    /// volume normalization and the euclidean one.
    pub volume_factor: f64,
    /// `final_ratio / volume_factor`; a value near 1 attributes the constant
    /// offset to that volume normalization.
    pub convention_gap: f64,
    pub slope_tol: f64,
    pub ratio_tol: f64,
    pub slope_pass: bool,
    pub ratio_cauchy_pass: bool,
    pub pass: bool,
    pub note: String,
}

impl ComparisonReport {
    /// Flat table of the per-point columns.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("eps,minus_i_phi,exact_re,exact_im,asymptotic_re,asymptotic_im,ratio\n");
        for i in 0..self.path_eps.len() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.path_eps[i],
                self.minus_i_phi[i],
                self.exact[i].0,
                self.exact[i].1,
                self.asymptotic[i].0,
                self.asymptotic[i].1,
                self.ratio[i]
            ));
        }
        out
    }
}

/// Default path schedule for the boundary approach.
pub fn default_eps_schedule() -> Vec<f64> {
    vec![1e-1, 3e-2, 1e-2, 3e-3, 1e-3]
}

/// Compare the exact ball kernel against its predicted leading singularity
/// along `z = (1-ε)·p` for the boundary point `p = e₁`: exact values come
/// from the validated closed form (ground-truthed by the series), the
/// prediction is `n!·a₀·(-iφ(z,z))^{-(n+1)}` built end-to-end from the
/// pipeline's own Levi eigenvalues and phase jet.  The report carries the
/// fitted blowup slope and the constant ratio with its convention analysis.
pub fn compare_bergman_asymptotics(
    n: usize,
    q: usize,
    eps_schedule: &[f64],
) -> Result<ComparisonReport> {
    if n == 0 {
        return Err(Error::InvalidInput("ambient dimension must be >= 1".into()));
    }
    if eps_schedule.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two path points to assess convergence".into(),
        ));
    }
    for pair in eps_schedule.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(Error::InvalidInput(
                "path parameters must be strictly decreasing".into(),
            ));
        }
    }
    if eps_schedule[0] >= 1.0 || *eps_schedule.last().unwrap() <= 0.0 {
        return Err(Error::InvalidInput(
            "path parameters must lie in (0, 1)".into(),
        ));
    }

    let f = DefiningFunctionSpec::builtin(n, "sphere", &[])?;
    let metric = MetricSpec::euclidean(n)?;
    let tols = Tolerances::default();
    let mut p = vec![0.0; 2 * n];
    p[0] = 1.0;

    let levi = levi_form(&f, &metric, &p, &tols)?;
    let (n_minus, n_plus) = levi.signature;
    if q != n_minus {
        return Err(Error::WrongDegree {
            q,
            n_minus,
            n_plus,
        });
    }
    let normalized = normalize_defining(&f, &metric, &p, &tols)?;
    let grad = normalized.jet.gradient.clone();
    let omega0 = contact_form(&normalized.jet);
    let grad_norm = metric.cotangent_norm(&p, &grad)?;
    let omega_norm = metric.cotangent_norm(&p, &omega0)?;
    let dbar_norm_sq = 0.25 * (grad_norm * grad_norm + omega_norm * omega_norm);

    let leading = bergman_leading(&levi.eigenvalues, q, dbar_norm_sq)?;
    let a0 = leading.a0.entries()[(0, 0)];
    let a_coeffs = bergman_a_coeffs(&f, &metric, &p, &tols)?;
    let jet = bergman_phase_jet(&levi.eigenvalues, &a_coeffs)?;
    let d = 2 * n;

    let factorial: f64 = (1..=n).map(|j| j as f64).product();
    let mut minus_i_phi = Vec::new();
    let mut exact = Vec::new();
    let mut asymptotic = Vec::new();
    let mut ratio = Vec::new();
    for &eps in eps_schedule {
        // Ambient displacement down the inward normal, mapped to the model
        // chart: the normal coordinate reads (dr̃·v)/√2, the contact
        // coordinate (ω₀·v)/√2, and the tangential components vanish on a
        // radial path.
        let v_ambient: Vec<f64> = p.iter().map(|c| -eps * c).collect();
        let dr_v: f64 = grad.iter().zip(v_ambient.iter()).map(|(a, b)| a * b).sum();
        let om_v: f64 = omega0
            .iter()
            .zip(v_ambient.iter())
            .map(|(a, b)| a * b)
            .sum();
        let mut side = vec![0.0f64; d];
        side[d - 1] = dr_v / std::f64::consts::SQRT_2;
        side[d - 2] = om_v / std::f64::consts::SQRT_2;
        let phi = jet.eval(&side, &side)?;
        let u = Complex64::new(phi.im, -phi.re); // -i·φ
        let z: Vec<Complex64> = (0..n)
            .map(|jj| Complex64::new((1.0 - eps) * p[2 * jj], (1.0 - eps) * p[2 * jj + 1]))
            .collect();
        let k_exact = ball_bergman_closed(&z, &z, n)?;
        let k_pred = factorial * a0 * u.powf(-(n as f64) - 1.0);
        minus_i_phi.push(u.re);
        exact.push((k_exact.re, k_exact.im));
        asymptotic.push((k_pred.re, k_pred.im));
        ratio.push(k_exact.re / k_pred.re);
    }

    // Least-squares slope of log|exact| against log(-iφ), fitted on the
    // finest path points: the exponent is a limit along the path, and the
    // coarse points carry the subleading corrections.
    let tail = minus_i_phi.len().saturating_sub(3).min(minus_i_phi.len() - 2);
    let xs: Vec<f64> = minus_i_phi[tail..].iter().map(|u| u.ln()).collect();
    let ys: Vec<f64> = exact[tail..]
        .iter()
        .map(|(re, im)| Complex64::new(*re, *im).norm().ln())
        .collect();
    let count = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let cov: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = xs.iter().map(|x| (x - mean_x) * (x - mean_x)).sum();
    let slope = cov / var;
    let slope_target = -(n as f64) - 1.0;

    let final_ratio = *ratio.last().unwrap();
    let prev_ratio = ratio[ratio.len() - 2];
    let slope_tol = 0.01;
    let ratio_tol = 0.05;
    let slope_pass = (slope - slope_target).abs() <= slope_tol * slope_target.abs();
    let ratio_cauchy_pass = (final_ratio - prev_ratio).abs() <= ratio_tol * prev_ratio.abs();
    let volume_factor = 2f64.powi(n as i32);
    let convention_gap = final_ratio / volume_factor;
    Ok(ComparisonReport {
        model: format!("ball-{n}"),
        q,
        path_eps: eps_schedule.to_vec(),
        minus_i_phi,
        exact,
        asymptotic,
        ratio,
        slope,
        slope_target,
        final_ratio,
        volume_factor,
        convention_gap,
        slope_tol,
        ratio_tol,
        slope_pass,
        ratio_cauchy_pass,
        pass: slope_pass && ratio_cauchy_pass,
        note: "constant ratio is reported against the doubled-metric volume factor 2^n \
               rather than silently absorbed; convention_gap near 1 attributes the \
               offset to that normalization"
            .into(),
    })
}

/// Euler's constant as the Richardson-accelerated limit of `H_M - log M`
/// along `M = 10·2^i`.
pub fn euler_constant_limit() -> f64 {
    let levels = 9;
    let mut table: Vec<f64> = (0..levels)
        .map(|i| {
            let m = 10u64 << i;
            // Compensated summation of the harmonic numbers, small terms first.
            let mut sum = 0.0f64;
            let mut carry = 0.0f64;
            for j in (1..=m).rev() {
                let term = 1.0 / j as f64 - carry;
                let next = sum + term;
                carry = (next - sum) - term;
                sum = next;
            }
            sum - (m as f64).ln()
        })
        .collect();
    let mut order = 1i32;
    while table.len() > 1 {
        let factor = 2f64.powi(order);
        table = table
            .windows(2)
            .map(|w| (factor * w[1] - w[0]) / (factor - 1.0))
            .collect();
        order += 1;
    }
    table[0]
}
