//! Canonical quadratic phase jets for the two kernel families, their leading
//! symbols, and the metric-derived linear correction coefficients.
//!
//! A phase jet is a complex-valued quadratic polynomial in a doubled set of
//! real variables `(x, y)`, stored as a linear part and a complex-symmetric
//! Hessian, both anchored at the origin.  The boundary family uses `2n - 1`
//! variables per side, the interior family `2n`.  Complex pairings follow the
//! convention `z_j = x_{2j-1} + i x_{2j}` (and `w_j` likewise on the second
//! slot).

use crate::error::{Error, Result};
use crate::forms::{projection_operator, scaled_wedge_pair, FormOperator};
use crate::jet::Polynomial;
use crate::surface::{
    contact_form, eval_jet2, normalize_defining, DefiningFunctionSpec, MetricSpec, Tolerances,
};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::f64::consts::{PI, SQRT_2};

/// Which kernel family a phase jet belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseKind {
    /// Boundary family: `2n - 1` variables per side.
    Szego,
    /// Interior family: `2n` variables per side.
    Bergman,
}

impl PhaseKind {
    pub fn side_dim(self, n: usize) -> usize {
        match self {
            PhaseKind::Szego => 2 * n - 1,
            PhaseKind::Bergman => 2 * n,
        }
    }
}

/// Second-order jet of a phase function at the base point `(0, 0)`.
///
/// The represented function is `φ(v) = l·v + v·H v / 2` with `v = (x, y)`
/// real, `l` complex, and `H` complex symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseJet2 {
    n: usize,
    kind: PhaseKind,
    linear: DVector<Complex64>,
    hessian: DMatrix<Complex64>,
}

/// First-order Wirtinger directions on either slot of a phase jet.
///
/// Indices are 1-based; `Z`/`ZBar` act on the first slot, `W`/`WBar` on the
/// second, and `X`/`Y` are plain real coordinate derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WirtingerVar {
    Z(usize),
    ZBar(usize),
    W(usize),
    WBar(usize),
    X(usize),
    Y(usize),
}

impl PhaseJet2 {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PhaseKind {
        self.kind
    }

    /// Number of real variables per slot.
    pub fn side_dim(&self) -> usize {
        self.kind.side_dim(self.n)
    }

    pub fn linear(&self) -> &DVector<Complex64> {
        &self.linear
    }

    pub fn hessian(&self) -> &DMatrix<Complex64> {
        &self.hessian
    }

    fn check_sides(&self, x: &[f64], y: &[f64]) -> Result<()> {
        let d = self.side_dim();
        if x.len() != d || y.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: x.len().max(y.len()),
            });
        }
        Ok(())
    }

    fn stacked(&self, x: &[f64], y: &[f64]) -> DVector<Complex64> {
        DVector::from_iterator(
            2 * self.side_dim(),
            x.iter().chain(y.iter()).map(|&t| Complex64::new(t, 0.0)),
        )
    }

    /// Value of the quadratic jet at `(x, y)`.
    pub fn eval(&self, x: &[f64], y: &[f64]) -> Result<Complex64> {
        self.check_sides(x, y)?;
        let v = self.stacked(x, y);
        let lin = self.linear.dot(&v);
        let quad = (v.transpose() * &self.hessian * &v)[(0, 0)];
        Ok(lin + 0.5 * quad)
    }

    /// Gradient of the jet at `(x, y)`, stacked as `(∂x, ∂y)`.
    pub fn gradient(&self, x: &[f64], y: &[f64]) -> Result<DVector<Complex64>> {
        self.check_sides(x, y)?;
        let v = self.stacked(x, y);
        Ok(&self.linear + &self.hessian * v)
    }

    /// Gradient with respect to the first slot.
    pub fn gradient_x(&self, x: &[f64], y: &[f64]) -> Result<DVector<Complex64>> {
        let d = self.side_dim();
        Ok(self.gradient(x, y)?.rows(0, d).into_owned())
    }

    /// Gradient with respect to the second slot.
    pub fn gradient_y(&self, x: &[f64], y: &[f64]) -> Result<DVector<Complex64>> {
        let d = self.side_dim();
        Ok(self.gradient(x, y)?.rows(d, d).into_owned())
    }

    fn wirtinger_weights(&self, var: WirtingerVar) -> Result<Vec<(usize, Complex64)>> {
        let d = self.side_dim();
        let half = Complex64::new(0.5, 0.0);
        let half_i = Complex64::new(0.0, 0.5);
        let out = match var {
            WirtingerVar::Z(j) | WirtingerVar::ZBar(j) | WirtingerVar::W(j)
            | WirtingerVar::WBar(j) => {
                if j == 0 || 2 * j > d {
                    return Err(Error::InvalidInput(format!(
                        "complex index {j} out of range for side dimension {d}"
                    )));
                }
                let (offset, sign) = match var {
                    WirtingerVar::Z(_) => (0, -1.0),
                    WirtingerVar::ZBar(_) => (0, 1.0),
                    WirtingerVar::W(_) => (d, -1.0),
                    WirtingerVar::WBar(_) => (d, 1.0),
                    _ => unreachable!(),
                };
                vec![
                    (offset + 2 * j - 2, half),
                    (offset + 2 * j - 1, half_i * sign),
                ]
            }
            WirtingerVar::X(k) | WirtingerVar::Y(k) => {
                if k == 0 || k > d {
                    return Err(Error::InvalidInput(format!(
                        "real index {k} out of range for side dimension {d}"
                    )));
                }
                let offset = if matches!(var, WirtingerVar::X(_)) { 0 } else { d };
                vec![(offset + k - 1, Complex64::new(1.0, 0.0))]
            }
        };
        Ok(out)
    }

    /// Mixed second derivative of the jet in two Wirtinger directions.
    pub fn second_wirtinger(&self, a: WirtingerVar, b: WirtingerVar) -> Result<Complex64> {
        let wa = self.wirtinger_weights(a)?;
        let wb = self.wirtinger_weights(b)?;
        let mut total = Complex64::new(0.0, 0.0);
        for &(ia, ca) in &wa {
            for &(ib, cb) in &wb {
                total += ca * cb * self.hessian[(ia, ib)];
            }
        }
        Ok(total)
    }

    /// Largest deviation from the antisymmetry `φ(x, y) = -conj(φ(y, x))`,
    /// measured on the linear part and the Hessian.
    pub fn antisymmetry_deviation(&self) -> f64 {
        let d = self.side_dim();
        let swap = |i: usize| if i < d { i + d } else { i - d };
        let mut worst: f64 = 0.0;
        for i in 0..2 * d {
            let reflected = -self.linear[swap(i)].conj();
            worst = worst.max((reflected - self.linear[i]).norm());
        }
        for r in 0..2 * d {
            for c in 0..2 * d {
                let reflected = -self.hessian[(swap(r), swap(c))].conj();
                worst = worst.max((reflected - self.hessian[(r, c)]).norm());
            }
        }
        worst
    }

    /// Imaginary part of the quadratic form, as a real symmetric matrix.
    pub fn imaginary_quadratic(&self) -> DMatrix<f64> {
        self.hessian.map(|e| e.im)
    }
}

fn check_lambda(lambda: &[f64]) -> Result<()> {
    for (i, &l) in lambda.iter().enumerate() {
        if !l.is_finite() {
            return Err(Error::InvalidInput(format!(
                "eigenvalue {} is not finite",
                i + 1
            )));
        }
        if l == 0.0 {
            return Err(Error::ZeroEigenvalue { index: i + 1 });
        }
    }
    Ok(())
}

/// Canonical phase jet for the boundary family.
///
/// `lambda` holds the `n - 1` nonzero curvature eigenvalues and `c` the same
/// number of complex frame coefficients.  The jet vanishes identically on the
/// diagonal, its first-slot differential at the base point is the contact
/// covector `sqrt(2)·dx_{2n-1}`, and its mixed Wirtinger blocks encode the
/// eigenvalue signs.
pub fn szego_phase_jet(lambda: &[f64], c: &[Complex64]) -> Result<PhaseJet2> {
    check_lambda(lambda)?;
    if c.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            got: c.len(),
        });
    }
    let n = lambda.len() + 1;
    let d = 2 * n - 1;
    let mut linear = DVector::zeros(2 * d);
    let mut hessian = DMatrix::zeros(2 * d, 2 * d);
    let x = |k: usize| k - 1; // 1-based real coordinate on the first slot
    let y = |k: usize| d + k - 1;

    // sqrt(2) (x_{2n-1} - y_{2n-1})
    linear[x(d)] += Complex64::new(SQRT_2, 0.0);
    linear[y(d)] -= Complex64::new(SQRT_2, 0.0);

    let add_sym = |h: &mut DMatrix<Complex64>, a: usize, b: usize, v: Complex64| {
        h[(a, b)] += v;
        if a != b {
            h[(b, a)] += v;
        }
    };

    for j in 1..n {
        let lam = lambda[j - 1];
        let abs = lam.abs();
        let (re_idx, im_idx) = (2 * j - 1, 2 * j);
        // i |λ_j| |z_j - w_j|^2
        for &(u, v, s) in &[
            (x(re_idx), x(re_idx), 1.0),
            (y(re_idx), y(re_idx), 1.0),
            (x(im_idx), x(im_idx), 1.0),
            (y(im_idx), y(im_idx), 1.0),
        ] {
            add_sym(&mut hessian, u, v, Complex64::new(0.0, 2.0 * abs * s));
        }
        add_sym(
            &mut hessian,
            x(re_idx),
            y(re_idx),
            Complex64::new(0.0, -2.0 * abs),
        );
        add_sym(
            &mut hessian,
            x(im_idx),
            y(im_idx),
            Complex64::new(0.0, -2.0 * abs),
        );
        // i λ_j (z_j conj(w_j) - conj(z_j) w_j)
        //   = 2 λ_j (x_{2j-1} y_{2j} - x_{2j} y_{2j-1})
        add_sym(
            &mut hessian,
            x(re_idx),
            y(im_idx),
            Complex64::new(2.0 * lam, 0.0),
        );
        add_sym(
            &mut hessian,
            x(im_idx),
            y(re_idx),
            Complex64::new(-2.0 * lam, 0.0),
        );
        // c_j (z_j x_{2n-1} - w_j y_{2n-1}) + conj dual:
        //   2 Re(c_j z_j) x_{2n-1} - 2 Re(c_j w_j) y_{2n-1}
        let cj = c[j - 1];
        add_sym(&mut hessian, x(re_idx), x(d), Complex64::new(2.0 * cj.re, 0.0));
        add_sym(&mut hessian, x(im_idx), x(d), Complex64::new(-2.0 * cj.im, 0.0));
        add_sym(&mut hessian, y(re_idx), y(d), Complex64::new(-2.0 * cj.re, 0.0));
        add_sym(&mut hessian, y(im_idx), y(d), Complex64::new(2.0 * cj.im, 0.0));
    }

    Ok(PhaseJet2 {
        n,
        kind: PhaseKind::Szego,
        linear,
        hessian,
    })
}

/// Canonical phase jet for the interior family.
///
/// `lambda` holds the `n - 1` curvature eigenvalues and `a` the `2n` complex
/// linear correction coefficients.  Products of the height function with the
/// correction form are truncated at total degree two.
pub fn bergman_phase_jet(lambda: &[f64], a: &[Complex64]) -> Result<PhaseJet2> {
    check_lambda(lambda)?;
    let n = lambda.len() + 1;
    if a.len() != 2 * n {
        return Err(Error::DimensionMismatch {
            expected: 2 * n,
            got: a.len(),
        });
    }
    let d = 2 * n;
    let mut linear = DVector::zeros(2 * d);
    let mut hessian = DMatrix::zeros(2 * d, 2 * d);
    let x = |k: usize| k - 1;
    let y = |k: usize| d + k - 1;

    let add_sym = |h: &mut DMatrix<Complex64>, u: usize, v: usize, val: Complex64| {
        h[(u, v)] += val;
        if u != v {
            h[(v, u)] += val;
        }
    };

    // -sqrt(2) x_{2n-1} + sqrt(2) y_{2n-1}
    linear[x(d - 1)] -= Complex64::new(SQRT_2, 0.0);
    linear[y(d - 1)] += Complex64::new(SQRT_2, 0.0);

    let minus_i = Complex64::new(0.0, -1.0);
    // -i r (1 + Σ_{k<2n} a_k t_k + a_{2n} t_{2n} / 2) on each slot, with
    // r = sqrt(2) t_{2n} + Σ λ_j (t_{2j-1}^2 + t_{2j}^2), degree > 2 dropped.
    for slot in 0..2 {
        let idx = |k: usize| if slot == 0 { x(k) } else { y(k) };
        let coeff = |k: usize| if slot == 0 { a[k - 1] } else { a[k - 1].conj() };
        linear[idx(d)] += minus_i * SQRT_2;
        for j in 1..n {
            let lam = lambda[j - 1];
            add_sym(&mut hessian, idx(2 * j - 1), idx(2 * j - 1), minus_i * 2.0 * lam);
            add_sym(&mut hessian, idx(2 * j), idx(2 * j), minus_i * 2.0 * lam);
        }
        for k in 1..d {
            add_sym(&mut hessian, idx(d), idx(k), minus_i * SQRT_2 * coeff(k));
        }
        add_sym(&mut hessian, idx(d), idx(d), minus_i * SQRT_2 * coeff(d));
    }

    for j in 1..n {
        let lam = lambda[j - 1];
        let abs = lam.abs();
        let (re_idx, im_idx) = (2 * j - 1, 2 * j);
        // i |λ_j| |z_j - w_j|^2
        for &(u, _) in &[(re_idx, ()), (im_idx, ())] {
            add_sym(&mut hessian, x(u), x(u), Complex64::new(0.0, 2.0 * abs));
            add_sym(&mut hessian, y(u), y(u), Complex64::new(0.0, 2.0 * abs));
            add_sym(&mut hessian, x(u), y(u), Complex64::new(0.0, -2.0 * abs));
        }
        // i λ_j (conj(z_j) w_j - z_j conj(w_j))
        //   = -2 λ_j (x_{2j-1} y_{2j} - x_{2j} y_{2j-1})
        add_sym(
            &mut hessian,
            x(re_idx),
            y(im_idx),
            Complex64::new(-2.0 * lam, 0.0),
        );
        add_sym(
            &mut hessian,
            x(im_idx),
            y(re_idx),
            Complex64::new(2.0 * lam, 0.0),
        );
    }

    Ok(PhaseJet2 {
        n,
        kind: PhaseKind::Bergman,
        linear,
        hessian,
    })
}

/// Combined scale `Π |λ_j| · π^{-n}` shared by the leading symbols.
pub fn leading_scale(lambda: &[f64]) -> f64 {
    let n = lambda.len() + 1;
    let prod: f64 = lambda.iter().map(|l| l.abs()).product();
    prod * PI.powi(-(n as i32))
}

fn signed_partition(lambda: &[f64], positives_first: bool) -> (Vec<usize>, Vec<f64>) {
    let mut first: Vec<usize> = Vec::new();
    let mut second: Vec<usize> = Vec::new();
    for (i, &l) in lambda.iter().enumerate() {
        let is_first = if positives_first { l > 0.0 } else { l < 0.0 };
        if is_first {
            first.push(i);
        } else {
            second.push(i);
        }
    }
    first.extend(second);
    let sorted = first.iter().map(|&i| lambda[i]).collect();
    (first, sorted)
}

/// Leading symbol data for the boundary family.
#[derive(Clone, Debug, Serialize)]
pub struct SzegoLeading {
    /// Half-scaled projection onto the coframe slots carrying positive
    /// eigenvalues (listed first after reordering).
    pub s0: FormOperator,
    /// Diagonal leading coefficient of the kernel expansion: `(n-1)! · s0`.
    pub f_diag: FormOperator,
    /// Eigenvalues after the stable sign reordering.
    pub eigenvalues: Vec<f64>,
    /// `permutation[k]` is the original 0-based slot of reordered slot `k`.
    pub permutation: Vec<usize>,
    pub q: usize,
}

/// Leading symbol of the boundary kernel on degree-`q` forms.
///
/// Requires `q` to equal the number of positive eigenvalues; the eigenvalues
/// are stably reordered positives-first and the returned permutation records
/// the reordering.
pub fn szego_leading_symbol(lambda: &[f64], q: usize) -> Result<SzegoLeading> {
    check_lambda(lambda)?;
    let n = lambda.len() + 1;
    let n_plus = lambda.iter().filter(|&&l| l > 0.0).count();
    let n_minus = lambda.len() - n_plus;
    if q != n_plus {
        return Err(Error::WrongDegree {
            q,
            n_minus,
            n_plus,
        });
    }
    let (permutation, eigenvalues) = signed_partition(lambda, true);
    let subset: Vec<usize> = (1..=n_plus).collect();
    let proj = projection_operator(&subset, n - 1, q)?;
    let scale = leading_scale(lambda);
    let s0 = proj.scaled_re(0.5 * scale);
    let mut factorial = 1.0f64;
    for k in 2..n {
        factorial *= k as f64;
    }
    let f_diag = s0.scaled_re(factorial);
    Ok(SzegoLeading {
        s0,
        f_diag,
        eigenvalues,
        permutation,
        q,
    })
}

/// Leading symbol data for the interior family.
#[derive(Clone, Debug, Serialize)]
pub struct BergmanLeading {
    /// Boundary-coframe symbol: half-scaled projection onto the slots with
    /// negative eigenvalues (listed first after reordering).
    pub b0: FormOperator,
    /// Ambient symbol: `4·b0` composed with contraction-then-wedge against
    /// the normalized boundary-defining covector.
    pub a0: FormOperator,
    /// Diagonal leading coefficient of the kernel expansion: `n! · a0`.
    pub f_diag: FormOperator,
    pub eigenvalues: Vec<f64>,
    pub permutation: Vec<usize>,
    pub q: usize,
}

/// Leading symbol of the interior kernel on degree-`q` forms.
///
/// Requires `q` to equal the number of negative eigenvalues.  The ambient
/// coframe lists the `n - 1` boundary slots first and the normal slot last;
/// `dbar_r_norm_sq` is the squared length of the antiholomorphic differential
/// of the defining function (one half in the normalized convention).
pub fn bergman_leading(lambda: &[f64], q: usize, dbar_r_norm_sq: f64) -> Result<BergmanLeading> {
    check_lambda(lambda)?;
    if !(dbar_r_norm_sq.is_finite() && dbar_r_norm_sq > 0.0) {
        return Err(Error::InvalidInput(
            "squared normal length must be positive".into(),
        ));
    }
    let n = lambda.len() + 1;
    let n_plus = lambda.iter().filter(|&&l| l > 0.0).count();
    let n_minus = lambda.len() - n_plus;
    if q != n_minus {
        return Err(Error::WrongDegree {
            q,
            n_minus,
            n_plus,
        });
    }
    let (permutation, eigenvalues) = signed_partition(lambda, false);
    let subset: Vec<usize> = (1..=n_minus).collect();
    let scale = leading_scale(lambda);
    let b0 = projection_operator(&subset, n - 1, q)?.scaled_re(0.5 * scale);

    // Ambient side: same projection read over the enlarged coframe, then the
    // contraction/wedge factor for the normal covector.
    let proj_ambient = projection_operator(&subset, n, q)?;
    let mut normal = vec![Complex64::new(0.0, 0.0); n];
    normal[n - 1] = Complex64::new(dbar_r_norm_sq.sqrt(), 0.0);
    let pair = scaled_wedge_pair(&normal, q)?;
    let contract_wedge = pair.interior.compose(&pair.wedge)?;
    let a0 = proj_ambient
        .compose(&contract_wedge)?
        .scaled_re(4.0 * (0.5 * scale));
    let mut factorial = 1.0f64;
    for k in 2..=n {
        factorial *= k as f64;
    }
    let f_diag = a0.scaled_re(factorial);
    Ok(BergmanLeading {
        b0,
        a0,
        f_diag,
        eigenvalues,
        permutation,
        q,
    })
}

/// Direct route to the ambient leading symbol used for cross-checking: the
/// full scale applied to the projection composed with the contraction/wedge
/// factor.  Built from the same shared pieces as [`bergman_leading`], so the
/// two must agree bit for bit.
pub fn bergman_a0_direct(lambda: &[f64], q: usize, dbar_r_norm_sq: f64) -> Result<FormOperator> {
    check_lambda(lambda)?;
    let n = lambda.len() + 1;
    let n_plus = lambda.iter().filter(|&&l| l > 0.0).count();
    let n_minus = lambda.len() - n_plus;
    if q != n_minus {
        return Err(Error::WrongDegree {
            q,
            n_minus,
            n_plus,
        });
    }
    let subset: Vec<usize> = (1..=n_minus).collect();
    let scale = leading_scale(lambda);
    let proj_ambient = projection_operator(&subset, n, q)?;
    let mut normal = vec![Complex64::new(0.0, 0.0); n];
    normal[n - 1] = Complex64::new(dbar_r_norm_sq.sqrt(), 0.0);
    let pair = scaled_wedge_pair(&normal, q)?;
    let contract_wedge = pair.interior.compose(&pair.wedge)?;
    Ok(proj_ambient
        .compose(&contract_wedge)?
        .scaled_re(2.0 * scale))
}

/// Linear correction coefficients for the interior phase, derived from the
/// first-order variation of the principal symbol of the metric Laplacian.
///
/// At a boundary point `p` the covector `ζ = -ω₀ - i·dr` is inserted into the
/// bilinear symbol `σ(x, ζ) = Σ h^{jk}(x) ζ_j ζ_k / 2` built from the inverse
/// real metric, and `a_l = ∂σ/∂x_l / 2`.
pub fn bergman_a_coeffs(
    f: &DefiningFunctionSpec,
    metric: &MetricSpec,
    p: &[f64],
    tols: &Tolerances,
) -> Result<Vec<Complex64>> {
    let raw = eval_jet2(f, p)?;
    let normalized = normalize_defining(f, metric, p, tols)?;
    if (normalized.scale * raw.value).abs() > tols.tol_surface {
        return Err(Error::NotOnBoundary {
            value: normalized.scale * raw.value,
            tol: tols.tol_surface,
        });
    }
    let omega0 = contact_form(&normalized.jet);
    let dr = &normalized.jet.gradient;
    let dim = p.len();
    let zeta = DVector::from_fn(dim, |l, _| Complex64::new(-omega0[l], -dr[l]));

    let (g, g_partials) = metric.real_form_with_partials(p)?;
    let hinv = g
        .clone()
        .try_inverse()
        .ok_or(Error::MetricNotInvertible)?;
    let hinv_partials: Vec<DMatrix<f64>> = g_partials
        .iter()
        .map(|dg| -(&hinv * dg * &hinv))
        .collect();
    Ok(a_coeffs_from_parts(&hinv_partials, &zeta))
}

/// Assemble the correction coefficients from precomputed partials of the
/// inverse real metric: `a_l = ζ·(∂_l h^{-1})·ζ / 4`.
pub fn a_coeffs_from_parts(
    hinv_partials: &[DMatrix<f64>],
    zeta: &DVector<Complex64>,
) -> Vec<Complex64> {
    hinv_partials
        .iter()
        .map(|dh| {
            let mut total = Complex64::new(0.0, 0.0);
            for r in 0..dh.nrows() {
                for c in 0..dh.ncols() {
                    total += zeta[r] * zeta[c] * dh[(r, c)];
                }
            }
            0.25 * total
        })
        .collect()
}

/// Largest deviation across the displayed base-point identities tying the
/// mixed Wirtinger second derivatives of a boundary phase jet to the
/// eigenvalue data.  Indices are partitioned by eigenvalue sign, so the input
/// order of `lambda` is arbitrary.
pub fn szego_identity_deviation(jet: &PhaseJet2, lambda: &[f64], c: &[Complex64]) -> Result<f64> {
    if jet.kind() != PhaseKind::Szego {
        return Err(Error::InvalidInput(
            "identity table applies to the boundary family".into(),
        ));
    }
    let n = jet.n();
    if lambda.len() != n - 1 || c.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: lambda.len().min(c.len()),
        });
    }
    use WirtingerVar::{WBar, X, Y, Z, ZBar, W};
    let d = jet.side_dim();
    let i = Complex64::i();
    let mut worst: f64 = 0.0;
    let mut push = |v: Complex64| {
        let n = v.norm();
        if n > worst {
            worst = n;
        }
    };
    let pos: Vec<usize> = (1..n).filter(|&j| lambda[j - 1] > 0.0).collect();
    let neg: Vec<usize> = (1..n).filter(|&j| lambda[j - 1] < 0.0).collect();

    for &j in &pos {
        let lam = lambda[j - 1];
        let cj = c[j - 1];
        for k in 1..n {
            let delta = if j == k { 1.0 } else { 0.0 };
            push(jet.second_wirtinger(Z(j), Z(k))?);
            push(jet.second_wirtinger(Z(j), ZBar(k))? - i * lam * delta);
            push(jet.second_wirtinger(Z(j), W(k))?);
            push(jet.second_wirtinger(Z(j), WBar(k))?);
            push(
                jet.second_wirtinger(ZBar(j), ZBar(k))?
                    + jet.second_wirtinger(ZBar(j), WBar(k))?,
            );
            push(
                jet.second_wirtinger(ZBar(j), Z(k))?
                    + jet.second_wirtinger(ZBar(j), W(k))?
                    + i * lam * delta,
            );
        }
        push(
            jet.second_wirtinger(Z(j), X(d))? + jet.second_wirtinger(Z(j), Y(d))? - cj,
        );
        push(
            jet.second_wirtinger(ZBar(j), X(d))? + jet.second_wirtinger(ZBar(j), Y(d))?
                - cj.conj(),
        );
        for &k in &pos {
            let delta = if j == k { 1.0 } else { 0.0 };
            push(jet.second_wirtinger(ZBar(j), ZBar(k))?);
            push(jet.second_wirtinger(ZBar(j), W(k))? + 2.0 * i * lam * delta);
        }
        for &k in &neg {
            push(jet.second_wirtinger(ZBar(j), Z(k))?);
        }
    }

    for &j in &neg {
        let lam = lambda[j - 1];
        let cj = c[j - 1];
        for k in 1..n {
            let delta = if j == k { 1.0 } else { 0.0 };
            push(jet.second_wirtinger(ZBar(j), ZBar(k))?);
            push(jet.second_wirtinger(ZBar(j), Z(k))? + i * lam * delta);
            push(jet.second_wirtinger(ZBar(j), W(k))?);
            push(jet.second_wirtinger(ZBar(j), WBar(k))?);
            push(
                jet.second_wirtinger(Z(j), Z(k))? + jet.second_wirtinger(Z(j), W(k))?,
            );
            push(
                jet.second_wirtinger(Z(j), ZBar(k))? + jet.second_wirtinger(Z(j), WBar(k))?
                    - i * lam * delta,
            );
        }
        push(
            jet.second_wirtinger(ZBar(j), X(d))? + jet.second_wirtinger(ZBar(j), Y(d))?
                - cj.conj(),
        );
        push(
            jet.second_wirtinger(Z(j), X(d))? + jet.second_wirtinger(Z(j), Y(d))? - cj,
        );
        for &k in &neg {
            let delta = if j == k { 1.0 } else { 0.0 };
            push(jet.second_wirtinger(Z(j), Z(k))?);
            push(jet.second_wirtinger(Z(j), WBar(k))? - 2.0 * i * lam * delta);
        }
    }

    // Diagonal closure on the distinguished real coordinate.
    push(
        jet.second_wirtinger(X(d), X(d))?
            + 2.0 * jet.second_wirtinger(X(d), Y(d))?
            + jet.second_wirtinger(Y(d), Y(d))?,
    );
    Ok(worst)
}

/// Quadric defining polynomial matching a boundary phase jet's eigenvalues:
/// `sqrt(2) t_{2n} + Σ λ_j (t_{2j-1}^2 + t_{2j}^2)`.
pub fn model_defining_polynomial(lambda: &[f64]) -> Polynomial {
    let n = lambda.len() + 1;
    let dim = 2 * n;
    let mut terms = Vec::new();
    let mut exps = vec![0u32; dim];
    exps[dim - 1] = 1;
    terms.push((exps, SQRT_2));
    for (j, &lam) in lambda.iter().enumerate() {
        for off in 0..2 {
            let mut e = vec![0u32; dim];
            e[2 * j + off] = 2;
            terms.push((e, lam));
        }
    }
    Polynomial::new(dim, terms).expect("well-formed model polynomial")
}

#[derive(Serialize, Deserialize)]
struct PhaseJetJson {
    n: usize,
    kind: PhaseKind,
    linear: Vec<(f64, f64)>,
    hessian: Vec<(f64, f64)>,
}

impl Serialize for PhaseJet2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let linear = self.linear.iter().map(|z| (z.re, z.im)).collect();
        let mut hessian = Vec::with_capacity(self.hessian.len());
        for r in 0..self.hessian.nrows() {
            for c in 0..self.hessian.ncols() {
                let e = self.hessian[(r, c)];
                hessian.push((e.re, e.im));
            }
        }
        PhaseJetJson {
            n: self.n,
            kind: self.kind,
            linear,
            hessian,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PhaseJet2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PhaseJetJson::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(D::Error::custom("side dimension requires n >= 1"));
        }
        let d = raw.kind.side_dim(raw.n);
        if raw.linear.len() != 2 * d {
            return Err(D::Error::custom(format!(
                "linear part has length {}, expected {}",
                raw.linear.len(),
                2 * d
            )));
        }
        if raw.hessian.len() != 4 * d * d {
            return Err(D::Error::custom(format!(
                "hessian has {} entries, expected {}",
                raw.hessian.len(),
                4 * d * d
            )));
        }
        let linear = DVector::from_iterator(
            2 * d,
            raw.linear.iter().map(|&(re, im)| Complex64::new(re, im)),
        );
        let hessian = DMatrix::from_fn(2 * d, 2 * d, |r, c| {
            let (re, im) = raw.hessian[r * 2 * d + c];
            Complex64::new(re, im)
        });
        Ok(PhaseJet2 {
            n: raw.n,
            kind: raw.kind,
            linear,
            hessian,
        })
    }
}
