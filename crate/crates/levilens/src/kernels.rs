//! Singularity expansions and their numeric cross-checks: Laplace moments of
//! oscillatory integrals, assembly and evaluation of the power/log expansion,
//! an independent quadrature oracle, and the stationary-phase composition
//! check for the boundary leading symbol.

use crate::error::{Error, Result};
use crate::forms::FormOperator;
use crate::linalg::gauss_legendre;
use crate::phase::{leading_scale, szego_phase_jet, szego_leading_symbol, PhaseKind};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

/// Euler's constant, validated at runtime by the harmonic-sum limit oracle.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default regularization used to realize boundary values of powers and logs.
pub const DEFAULT_EPSILON: f64 = 1e-9;

fn factorial(m: usize) -> f64 {
    (1..=m).map(|j| j as f64).product()
}

fn harmonic(m: usize) -> f64 {
    (1..=m).map(|j| 1.0 / j as f64).sum()
}

/// Moment `∫₀^∞ e^{-tx} t^m dt` in the half plane `Re x ≥ 0`, with the
/// negative orders continued through their logarithmic finite part:
/// `m ≥ 0` gives `m!·x^{-m-1}`; `m < 0` gives
/// `((-1)^m/(-m-1)!)·x^{-m-1}(log x + γ - Σ_{j=1}^{-m-1} 1/j)`.
pub fn laplace_moment(m: i32, x: Complex64) -> Result<Complex64> {
    if x.norm() == 0.0 {
        return Err(Error::InvalidInput("moment undefined at x = 0".into()));
    }
    if x.re < 0.0 {
        return Err(Error::InvalidInput(format!(
            "moment requires Re x >= 0, got {}",
            x.re
        )));
    }
    if m >= 0 {
        let m = m as usize;
        Ok(factorial(m) * x.powi(-(m as i32) - 1))
    } else {
        let k = (-m) as usize; // x^{-m-1} = x^{k-1}
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let front = sign / factorial(k - 1) * x.powi(k as i32 - 1);
        Ok(front * (x.ln() + EULER_GAMMA - harmonic(k - 1)))
    }
}

/// `e^u` minus its Taylor polynomial through degree `k-1`, divided by `t^k`
/// where `u = s·t`; stable down to `t = 0`.
fn exp_tail_over_tk(s: Complex64, t: f64, k: usize) -> Complex64 {
    let u = s * t;
    if u.norm() <= 0.8 {
        // Σ_{j≥k} s^j t^{j-k} / j!, entirely cancellation-free.
        let mut term = s.powi(k as i32) / factorial(k);
        let mut total = term;
        let mut j = k;
        loop {
            j += 1;
            term = term * s * t / j as f64;
            total += term;
            if term.norm() <= 1e-20 * total.norm().max(1e-300) {
                return total;
            }
        }
    }
    let mut poly = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for j in 0..k {
        poly += term;
        term = term * u / (j as f64 + 1.0);
    }
    (u.exp() - poly) / t.powi(k as i32)
}

fn integrate_panels_complex<F: Fn(f64) -> Complex64>(
    rule: &[(f64, f64)],
    a: f64,
    b: f64,
    panels: usize,
    f: &F,
) -> Complex64 {
    let width = (b - a) / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for &(node, weight) in rule {
            total += weight * half * f(mid + half * node);
        }
    }
    total
}

fn refine_to_tolerance<F: Fn(f64) -> Complex64>(
    a: f64,
    b: f64,
    rel_tol: f64,
    f: &F,
) -> Complex64 {
    let rule = gauss_legendre(16);
    let mut panels = 8;
    let mut prev = integrate_panels_complex(&rule, a, b, panels, f);
    loop {
        panels *= 2;
        let next = integrate_panels_complex(&rule, a, b, panels, f);
        let scale = next.norm().max(1e-30);
        if (next - prev).norm() <= rel_tol * scale || panels >= 2048 {
            return next;
        }
        prev = next;
    }
}

/// Negative-order moment computed as a numeric limit instead of the closed
/// form: convergent pieces on `[1, ∞)` and `[0, 1]` (with the Taylor head of
/// the exponential removed) plus the exactly integrated head, whose divergent
/// boundary contributions at 0 are dropped.  Requires `Re x > 0`.
pub fn laplace_moment_limit(m: i32, x: Complex64) -> Result<Complex64> {
    if m >= 0 {
        return Err(Error::InvalidInput(
            "limit construction applies to negative orders only".into(),
        ));
    }
    if !(x.re > 0.0) {
        return Err(Error::InvalidInput(format!(
            "limit construction requires Re x > 0, got {}",
            x.re
        )));
    }
    let k = (-m) as usize;
    let s = -x;
    // Tail over [1, 1+L]: integrand decays like e^{-t Re x}.
    let span = 40.0 / x.re;
    let tail = refine_to_tolerance(1.0, 1.0 + span, 1e-11, &|t: f64| {
        (s * t).exp() / t.powi(k as i32)
    });
    // Head over [0, 1] with the first k Taylor terms of the exponential removed.
    let head = refine_to_tolerance(0.0, 1.0, 1e-11, &|t: f64| exp_tail_over_tk(s, t, k));
    // Exactly integrated Taylor head, keeping only the finite boundary values:
    // ∫₀¹ t^{j-k} dt → 1/(j-k+1) for j < k-1; the j = k-1 term leaves nothing.
    let mut exact = Complex64::new(0.0, 0.0);
    for j in 0..k.saturating_sub(1) {
        exact += s.powi(j as i32) / (factorial(j) * (j as f64 - k as f64 + 1.0));
    }
    Ok(tail + head + exact)
}

/// Moments `∫₀^∞ e^{iφt} t^m dt` for each requested degree, by composite
/// Gauss panels after the substitution `t = s / Im φ`.  Requires `Im φ > 0`.
///
/// Accuracy note: along the real direction the integrand's envelope exceeds
/// the integral by a factor `(|φ|/Im φ)^{m+1}`, and floating-point summation
/// cannot recover below machine epsilon times that factor.  Keep
/// `|Re φ| / Im φ` moderate (≤ 3 or so) when a 1e-9 relative target matters.
pub fn oscillatory_quadrature(phi: Complex64, degrees: &[u32]) -> Result<Vec<Complex64>> {
    if !(phi.im > 0.0) {
        return Err(Error::InvalidInput(format!(
            "oscillatory integral requires Im phi > 0, got {}",
            phi.im
        )));
    }
    let b = phi.im;
    let ratio = phi.re / b;
    let m_max = degrees.iter().copied().max().unwrap_or(0);
    let upper = 45.0 + 3.0 * m_max as f64;
    let rule = gauss_legendre(16);
    let mut results = vec![Complex64::new(0.0, 0.0); degrees.len()];
    let mut panels = 8;
    let mut prev: Option<Vec<Complex64>> = None;
    loop {
        let mut current = Vec::with_capacity(degrees.len());
        for &m in degrees {
            let value = integrate_panels_complex(&rule, 0.0, upper, panels, &|sv: f64| {
                (Complex64::new(-sv, ratio * sv)).exp() * sv.powi(m as i32)
            });
            current.push(value * b.powi(-(m as i32) - 1));
        }
        let converged = match &prev {
            Some(p) => p
                .iter()
                .zip(current.iter())
                .all(|(a, c)| (a - c).norm() <= 1e-10 * c.norm().max(1e-30)),
            None => false,
        };
        if converged || panels >= 4096 {
            results.copy_from_slice(&current);
            return Ok(results);
        }
        prev = Some(current);
        panels *= 2;
    }
}

/// Truncated power/log expansion of a boundary kernel near its singularity:
/// `Σ_j F[j]·u^{j-k} + Σ_j G[j]·u^j·log u` in the variable `u = -i(φ+i0)`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularityExpansion {
    order: usize,
    f_coeffs: Vec<FormOperator>,
    g_coeffs: Vec<FormOperator>,
    truncation: usize,
}

impl SingularityExpansion {
    pub fn new(
        order: usize,
        f_coeffs: Vec<FormOperator>,
        g_coeffs: Vec<FormOperator>,
        truncation: usize,
    ) -> Result<Self> {
        let mut shape: Option<(usize, usize, usize)> = None;
        for op in f_coeffs.iter().chain(g_coeffs.iter()) {
            let s = (op.m(), op.q_in(), op.q_out());
            match &shape {
                None => shape = Some(s),
                Some(existing) if *existing != s => {
                    return Err(Error::InvalidInput(
                        "expansion coefficients must share one operator shape".into(),
                    ));
                }
                _ => {}
            }
        }
        if order == 0 {
            return Err(Error::InvalidInput("expansion order must be >= 1".into()));
        }
        Ok(SingularityExpansion {
            order,
            f_coeffs,
            g_coeffs,
            truncation,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn f_coeffs(&self) -> &[FormOperator] {
        &self.f_coeffs
    }

    pub fn g_coeffs(&self) -> &[FormOperator] {
        &self.g_coeffs
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }
}

/// Assemble the expansion from the symbol coefficients `s⁰..s^N`: the power
/// part takes `F[j] = (k-1-j)!·s^j` for `j < k` and the log part takes
/// `G[j] = ((-1)^{j+1}/j!)·s^{k+j}`, with `k = n` on the boundary branch and
/// `k = n+1` on the interior branch.  Smooth remainders are dropped; the
/// truncation order is recorded.
pub fn assemble_expansion(
    s_coeffs: &[FormOperator],
    n: usize,
    kind: PhaseKind,
) -> Result<SingularityExpansion> {
    if s_coeffs.is_empty() {
        return Err(Error::InvalidInput("need at least one coefficient".into()));
    }
    let k = match kind {
        PhaseKind::Szego => n,
        PhaseKind::Bergman => n + 1,
    };
    if k == 0 {
        return Err(Error::InvalidInput("expansion order must be >= 1".into()));
    }
    let truncation = s_coeffs.len() - 1;
    let mut f_coeffs = Vec::new();
    for (j, s) in s_coeffs.iter().enumerate().take(k) {
        f_coeffs.push(s.scaled_re(factorial(k - 1 - j)));
    }
    let mut g_coeffs = Vec::new();
    for (j, s) in s_coeffs.iter().enumerate().skip(k) {
        let jj = j - k;
        let sign = if jj % 2 == 0 { -1.0 } else { 1.0 };
        g_coeffs.push(s.scaled_re(sign / factorial(jj)));
    }
    SingularityExpansion::new(k, f_coeffs, g_coeffs, truncation)
}

/// Evaluate the expansion at phase value `φ` with `+i0` realized as `+iε`:
/// `u = -i(φ+iε)`, principal powers and logarithm.
pub fn evaluate_expansion(
    exp: &SingularityExpansion,
    phi: Complex64,
    epsilon: f64,
) -> Result<FormOperator> {
    let u = Complex64::new(phi.im + epsilon, -phi.re);
    if u.norm() == 0.0 {
        return Err(Error::InvalidInput(
            "expansion singular at phi + i*eps = 0".into(),
        ));
    }
    let first = exp
        .f_coeffs
        .first()
        .or_else(|| exp.g_coeffs.first())
        .ok_or_else(|| Error::InvalidInput("empty expansion".into()))?;
    let mut total = FormOperator::zero(first.m(), first.q_in(), first.q_out());
    let k = exp.order as i32;
    for (j, f) in exp.f_coeffs.iter().enumerate() {
        total = total.add(&f.scaled(u.powi(j as i32 - k)))?;
    }
    let log_u = u.ln();
    for (j, g) in exp.g_coeffs.iter().enumerate() {
        total = total.add(&g.scaled(u.powi(j as i32) * log_u))?;
    }
    Ok(total)
}

/// Stationary-phase composition data at a diagonal point.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionReport {
    pub n: usize,
    pub q: usize,
    /// `det(H/i)` of the assembled phase Hessian, as `[re, im]`.
    pub hessian_det: (f64, f64),
    /// Real part of the numeric determinant.
    pub lhs: f64,
    /// Predicted value `2^{4n-3}·Π|λ_j|²`.
    pub rhs: f64,
    pub det_error: f64,
    /// Largest entry deviation between the stationary-phase route to the
    /// composed leading coefficient and the leading symbol itself.
    pub projection_gap: f64,
    /// Largest entry deviation in the rescaled self-composition identity.
    pub idempotency_gap: f64,
    pub pass: bool,
}

/// Composition check at a diagonal point of the model: assembles the full
/// phase Hessian of the stationary-phase variables (corner entries `√2`
/// against the contact slot, tangent block from the sum of the two pure
/// second-derivative blocks of the phase jet), compares its determinant to
/// `2^{4n-3}·Π|λ_j|²`, and re-derives the leading coefficient through the
/// stationary-phase constant `(det(H/2πi))^{-1/2}·√h` with the model density
/// `√h = 2^{(2n-1)/2}`, which must reproduce the leading symbol.
pub fn composition_check(lambda: &[f64], q: usize) -> Result<CompositionReport> {
    composition_check_with_perturbation(lambda, q, 0.0)
}

/// Same check with the predicted determinant constant multiplied by
/// `1 + perturbation` — a hook for verifying that the check actually fails
/// when the constant is wrong.
pub fn composition_check_with_perturbation(
    lambda: &[f64],
    q: usize,
    perturbation: f64,
) -> Result<CompositionReport> {
    let leading = szego_leading_symbol(lambda, q)?;
    let n = lambda.len() + 1;
    let d = 2 * n - 1;
    let jet = szego_phase_jet(lambda, &vec![Complex64::new(0.0, 0.0); lambda.len()])?;
    let h = jet.hessian();

    // Stationary-phase variables (σ, w): zero corner over σ, √2 in the
    // contact slot, and the sum of the xx and yy blocks on the tangent slots.
    let mut big = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    let rt2 = Complex64::new(std::f64::consts::SQRT_2, 0.0);
    big[(0, d)] = rt2;
    big[(d, 0)] = rt2;
    for i in 0..d {
        for j in 0..d {
            big[(1 + i, 1 + j)] = h[(i, j)] + h[(d + i, d + j)];
        }
    }
    let det_over_i = big.map(|z| z / Complex64::i()).determinant();
    let lhs = det_over_i.re;
    let amp: f64 = lambda.iter().map(|l| l * l).product();
    let rhs = 2f64.powi(4 * n as i32 - 3) * (1.0 + perturbation) * amp;
    let det_error = (lhs - rhs).abs() / rhs.abs().max(1e-300);

    // Stationary-phase constant route to the composed leading coefficient.
    let det_2pi = det_over_i / (2.0 * std::f64::consts::PI).powi(2 * n as i32);
    let constant = det_2pi.powf(-0.5) * 2f64.powf((2.0 * n as f64 - 1.0) / 2.0);
    let composed = leading.s0.compose(&leading.s0)?;
    let a0_route = composed.scaled(constant);
    let projection_gap = a0_route.sub(&leading.s0)?.max_abs();

    // The projection algebra gives (s⁰)² a single redundant copy of the
    // overall scale; dividing it out must reproduce s⁰ exactly.
    let scale = leading_scale(lambda);
    let idempotent = composed.scaled_re(2.0 / scale);
    let idempotency_gap = idempotent.sub(&leading.s0)?.max_abs();

    let norm = leading.s0.max_abs().max(1e-300);
    let pass = det_error <= 1e-8
        && det_over_i.im.abs() <= 1e-8 * rhs.abs()
        && projection_gap <= 1e-8 * norm
        && idempotency_gap <= 1e-12 * norm;
    Ok(CompositionReport {
        n,
        q,
        hessian_det: (det_over_i.re, det_over_i.im),
        lhs,
        rhs,
        det_error,
        projection_gap,
        idempotency_gap,
        pass,
    })
}
