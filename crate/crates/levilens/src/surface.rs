//! Defining functions, Hermitian metrics, and the contact form.
//!
//! Real coordinates are `(x₁, …, x_{2n})` with `z_j = x_{2j−1} + i·x_{2j}`.
//! A hypersurface is the zero set of a real defining function `r`; the
//! convention `‖dr‖ = 1` (in the metric-induced cotangent norm) is installed
//! by [`normalize_defining`], and the contact form is `ω₀ = Jᵗ(dr)`.
//!
//! A Hermitian metric `g = Σ g_{jk} dz_j ⊗ dz̄_k` acts on real tangent
//! vectors through its real form, whose blocks are
//! `[[2·Re g_{jk}, 2·Im g_{jk}], [−2·Im g_{jk}, 2·Re g_{jk}]]`; euclidean `g`
//! therefore gives coordinate fields squared length 2 and coordinate
//! covectors squared length ½.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::jet::{Jet2, Polynomial};

/// Numerical tolerances used across the geometric pipeline.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Below this, an eigenvalue or gradient norm counts as zero.
    pub tol_zero: f64,
    /// Allowed deviation from Hermitian symmetry.
    pub tol_herm: f64,
    /// Allowed distance of a queried point from the zero set.
    pub tol_surface: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_zero: 1e-9,
            tol_herm: 1e-10,
            tol_surface: 1e-8,
        }
    }
}

/// Functional form of a defining function.
#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceForm {
    /// Arbitrary real polynomial in the 2n real coordinates.
    Polynomial(Polynomial),
    /// Named model surface with real parameters.
    Builtin { name: String, params: Vec<f64> },
}

/// A hypersurface `{r = 0}` in complex dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DefiningFunctionSpec {
    n: usize,
    form: SurfaceForm,
}

impl DefiningFunctionSpec {
    pub fn polynomial(n: usize, poly: Polynomial) -> Result<Self> {
        check_n(n)?;
        if poly.dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                got: poly.dim(),
            });
        }
        Ok(DefiningFunctionSpec {
            n,
            form: SurfaceForm::Polynomial(poly),
        })
    }

    /// Model surfaces: `"quadric"` with params λ₁..λ_{n−1}
    /// (r = √2·x_{2n} + Σ λ_j(x_{2j−1}² + x_{2j}²)), `"sphere"`
    /// (r = |z|² − 1), and `"shell"` (r = 1 − |z|², the inner branch).
    pub fn builtin(n: usize, name: &str, params: &[f64]) -> Result<Self> {
        check_n(n)?;
        match name {
            "quadric" => {
                if params.len() != n - 1 {
                    return Err(Error::InvalidInput(format!(
                        "quadric in dimension n = {n} needs {} eigenvalue parameters, got {}",
                        n - 1,
                        params.len()
                    )));
                }
            }
            "sphere" | "shell" => {
                if !params.is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "builtin '{name}' takes no parameters"
                    )));
                }
            }
            _ => {
                return Err(Error::InvalidInput(format!(
                    "unknown builtin surface '{name}' (expected quadric, sphere, or shell)"
                )))
            }
        }
        Ok(DefiningFunctionSpec {
            n,
            form: SurfaceForm::Builtin {
                name: name.to_string(),
                params: params.to_vec(),
            },
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &SurfaceForm {
        &self.form
    }

    /// Expand to an explicit polynomial (builtins are polynomial models,
    /// so their jets are exact).
    pub fn to_polynomial(&self) -> Polynomial {
        let d = 2 * self.n;
        match &self.form {
            SurfaceForm::Polynomial(p) => p.clone(),
            SurfaceForm::Builtin { name, params } => {
                let mut terms = vec![];
                match name.as_str() {
                    "quadric" => {
                        let mut lin = vec![0u32; d];
                        lin[d - 1] = 1;
                        terms.push((lin, std::f64::consts::SQRT_2));
                        for (j, lam) in params.iter().enumerate() {
                            for k in [2 * j, 2 * j + 1] {
                                let mut mi = vec![0u32; d];
                                mi[k] = 2;
                                terms.push((mi, *lam));
                            }
                        }
                    }
                    "sphere" => {
                        terms.push((vec![0u32; d], -1.0));
                        for k in 0..d {
                            let mut mi = vec![0u32; d];
                            mi[k] = 2;
                            terms.push((mi, 1.0));
                        }
                    }
                    "shell" => {
                        terms.push((vec![0u32; d], 1.0));
                        for k in 0..d {
                            let mut mi = vec![0u32; d];
                            mi[k] = 2;
                            terms.push((mi, -1.0));
                        }
                    }
                    _ => unreachable!("builtin names are validated on construction"),
                }
                Polynomial::new(d, terms).expect("builtin terms are well-formed")
            }
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput(
            "complex dimension n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Functional form of a Hermitian metric on Λ^{1,0}.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricForm {
    /// g_{jk} = δ_{jk}.
    Euclidean,
    /// Full n×n matrix of complex polynomial entries, stored as
    /// (real part, imaginary part) pairs.
    Hermitian(Vec<Vec<(Polynomial, Polynomial)>>),
}

/// Hermitian metric `g = Σ g_{jk}(x) dz_j ⊗ dz̄_k` with polynomial entries.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpec {
    n: usize,
    form: MetricForm,
}

impl MetricSpec {
    pub fn euclidean(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(MetricSpec {
            n,
            form: MetricForm::Euclidean,
        })
    }

    /// Build from upper-triangle entries `(j, k, re, im)` with 1-based
    /// `j ≤ k`; the lower triangle is filled by conjugation and missing
    /// entries default to δ_{jk}.
    pub fn hermitian(n: usize, upper: Vec<(usize, usize, Polynomial, Polynomial)>) -> Result<Self> {
        check_n(n)?;
        let d = 2 * n;
        let zero = || Polynomial::zero(d);
        let delta = |j: usize, k: usize| {
            if j == k {
                Polynomial::new(d, vec![(vec![0u32; d], 1.0)]).unwrap()
            } else {
                zero()
            }
        };
        let mut entries: Vec<Vec<(Polynomial, Polynomial)>> = (0..n)
            .map(|j| (0..n).map(|k| (delta(j, k), zero())).collect())
            .collect();
        for (j, k, re, im) in upper {
            if j == 0 || k == 0 || j > n || k > n || j > k {
                return Err(Error::InvalidInput(format!(
                    "metric entry indices must satisfy 1 ≤ j ≤ k ≤ n, got ({j}, {k})"
                )));
            }
            if re.dim() != d || im.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: re.dim().max(im.dim()),
                });
            }
            if j == k && !im.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "diagonal metric entry g_{{{j}{j}}} must be real"
                )));
            }
            let neg_im = Polynomial::new(
                d,
                im.terms().iter().map(|(mi, c)| (mi.clone(), -c)).collect(),
            )
            .unwrap();
            entries[j - 1][k - 1] = (re.clone(), im);
            entries[k - 1][j - 1] = (re, neg_im);
        }
        Ok(MetricSpec {
            n,
            form: MetricForm::Hermitian(entries),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_euclidean(&self) -> bool {
        matches!(self.form, MetricForm::Euclidean)
    }

    /// Complex n×n metric matrix at `x`, with a positive-definiteness check.
    pub fn complex_at(&self, x: &[f64]) -> Result<DMatrix<Complex64>> {
        self.check_point(x)?;
        let n = self.n;
        let g = match &self.form {
            MetricForm::Euclidean => DMatrix::<Complex64>::identity(n, n),
            MetricForm::Hermitian(entries) => DMatrix::from_fn(n, n, |j, k| {
                let (re, im) = &entries[j][k];
                Complex64::new(re.eval(x).unwrap(), im.eval(x).unwrap())
            }),
        };
        let min_eig = SymmetricEigen::new(g.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig <= 0.0 {
            return Err(Error::MetricNotPositive { min_eig });
        }
        Ok(g)
    }

    /// Real 2n×2n form of the metric at `x` (acts on real tangent vectors).
    pub fn real_form_at(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        let g = self.complex_at(x)?;
        Ok(real_form_from_complex(&g))
    }

    /// Real form together with all coordinate partials `∂G/∂x_l` at `x`,
    /// by exact differentiation of the polynomial entries.
    pub fn real_form_with_partials(&self, x: &[f64]) -> Result<(DMatrix<f64>, Vec<DMatrix<f64>>)> {
        self.check_point(x)?;
        let n = self.n;
        let d = 2 * n;
        let g = self.real_form_at(x)?;
        let mut partials = vec![DMatrix::<f64>::zeros(d, d); d];
        if let MetricForm::Hermitian(entries) = &self.form {
            for j in 0..n {
                for k in 0..n {
                    let (re, im) = &entries[j][k];
                    let jet_re = re.jet(x)?;
                    let jet_im = im.jet(x)?;
                    for l in 0..d {
                        let dre = jet_re.gradient[l];
                        let dim_ = jet_im.gradient[l];
                        partials[l][(2 * j, 2 * k)] += 2.0 * dre;
                        partials[l][(2 * j, 2 * k + 1)] += 2.0 * dim_;
                        partials[l][(2 * j + 1, 2 * k)] += -2.0 * dim_;
                        partials[l][(2 * j + 1, 2 * k + 1)] += 2.0 * dre;
                    }
                }
            }
        }
        Ok((g, partials))
    }

    /// Cotangent norm `√(ξᵗ G⁻¹ ξ)` of a real covector at `x`.
    pub fn cotangent_norm(&self, x: &[f64], xi: &DVector<f64>) -> Result<f64> {
        let ginv = self.inverse_real_at(x)?;
        if xi.len() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: xi.len(),
            });
        }
        Ok((xi.transpose() * ginv * xi)[(0, 0)].max(0.0).sqrt())
    }

    /// Inverse of the real form at `x`.
    pub fn inverse_real_at(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        let g = self.real_form_at(x)?;
        g.try_inverse().ok_or(Error::MetricNotInvertible)
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != 2 * self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                got: x.len(),
            });
        }
        Ok(())
    }
}

fn real_form_from_complex(g: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = g.nrows();
    let mut out = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for j in 0..n {
        for k in 0..n {
            let re = g[(j, k)].re;
            let im = g[(j, k)].im;
            out[(2 * j, 2 * k)] = 2.0 * re;
            out[(2 * j, 2 * k + 1)] = 2.0 * im;
            out[(2 * j + 1, 2 * k)] = -2.0 * im;
            out[(2 * j + 1, 2 * k + 1)] = 2.0 * re;
        }
    }
    out
}

/// Exact second-order jet of a defining function at `p`.
pub fn eval_jet2(f: &DefiningFunctionSpec, p: &[f64]) -> Result<Jet2> {
    f.to_polynomial().jet(p)
}

/// A defining-function jet rescaled to unit cotangent norm at the base
/// point, together with the scaling constant that was applied.
#[derive(Debug, Clone)]
pub struct NormalizedDefining {
    pub jet: Jet2,
    pub scale: f64,
}

/// Rescale `r` by the constant `1/‖dr(p)‖` (norm taken in the metric's
/// cotangent inner product, frozen at `p`).
pub fn normalize_defining(
    f: &DefiningFunctionSpec,
    metric: &MetricSpec,
    p: &[f64],
    tols: &Tolerances,
) -> Result<NormalizedDefining> {
    let jet = eval_jet2(f, p)?;
    let norm = metric.cotangent_norm(p, &jet.gradient)?;
    if norm <= tols.tol_zero {
        return Err(Error::DegenerateBoundary { norm });
    }
    let scale = 1.0 / norm;
    Ok(NormalizedDefining {
        jet: jet.scaled(scale),
        scale,
    })
}

/// Contact form `ω₀ = Jᵗ(dr)` at the jet's base point, with
/// `Jᵗ(dx_{2j−1}) = −dx_{2j}` and `Jᵗ(dx_{2j}) = dx_{2j−1}`:
/// `(ω₀)_{2j−1} = (dr)_{2j}` and `(ω₀)_{2j} = −(dr)_{2j−1}`.
pub fn contact_form(jet: &Jet2) -> DVector<f64> {
    apply_jt(&jet.gradient)
}

/// Apply `Jᵗ` to a real covector.
pub fn apply_jt(xi: &DVector<f64>) -> DVector<f64> {
    let d = xi.len();
    let mut out = DVector::zeros(d);
    for j in 0..d / 2 {
        out[2 * j] = xi[2 * j + 1];
        out[2 * j + 1] = -xi[2 * j];
    }
    out
}

#[derive(Serialize, Deserialize)]
struct DefJson {
    n: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<(Vec<u32>, f64)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<Vec<f64>>,
}

impl Serialize for DefiningFunctionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match &self.form {
            SurfaceForm::Polynomial(p) => DefJson {
                n: self.n,
                kind: "polynomial".into(),
                terms: Some(p.terms().to_vec()),
                name: None,
                params: None,
            },
            SurfaceForm::Builtin { name, params } => DefJson {
                n: self.n,
                kind: "builtin".into(),
                terms: None,
                name: Some(name.clone()),
                params: Some(params.clone()),
            },
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DefiningFunctionSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = DefJson::deserialize(deserializer)?;
        let spec = match json.kind.as_str() {
            "polynomial" => {
                let terms = json
                    .terms
                    .ok_or_else(|| D::Error::custom("polynomial spec needs a 'terms' field"))?;
                let poly = Polynomial::new(2 * json.n, terms)
                    .map_err(|e| D::Error::custom(e.to_string()))?;
                DefiningFunctionSpec::polynomial(json.n, poly)
            }
            "builtin" => {
                let name = json
                    .name
                    .ok_or_else(|| D::Error::custom("builtin spec needs a 'name' field"))?;
                DefiningFunctionSpec::builtin(json.n, &name, &json.params.unwrap_or_default())
            }
            other => Err(Error::InvalidInput(format!(
                "unknown defining-function kind '{other}'"
            ))),
        }
        .map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(spec)
    }
}

type MetricEntryJson = (usize, usize, Vec<(Vec<u32>, f64)>, Vec<(Vec<u32>, f64)>);

#[derive(Serialize, Deserialize)]
struct MetricJson {
    n: usize,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<MetricEntryJson>>,
}

impl Serialize for MetricSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let json = match &self.form {
            MetricForm::Euclidean => MetricJson {
                n: self.n,
                kind: "euclidean".into(),
                entries: None,
            },
            MetricForm::Hermitian(entries) => {
                let mut upper = vec![];
                for j in 0..self.n {
                    for k in j..self.n {
                        let (re, im) = &entries[j][k];
                        upper.push((j + 1, k + 1, re.terms().to_vec(), im.terms().to_vec()));
                    }
                }
                MetricJson {
                    n: self.n,
                    kind: "hermitian".into(),
                    entries: Some(upper),
                }
            }
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MetricSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = MetricJson::deserialize(deserializer)?;
        let spec = match json.kind.as_str() {
            "euclidean" => MetricSpec::euclidean(json.n),
            "hermitian" => {
                let d = 2 * json.n;
                let mut upper = vec![];
                for (j, k, re, im) in json.entries.unwrap_or_default() {
                    let re = Polynomial::new(d, re).map_err(|e| D::Error::custom(e.to_string()))?;
                    let im = Polynomial::new(d, im).map_err(|e| D::Error::custom(e.to_string()))?;
                    upper.push((j, k, re, im));
                }
                MetricSpec::hermitian(json.n, upper)
            }
            other => Err(Error::InvalidInput(format!("unknown metric kind '{other}'"))),
        }
        .map_err(|e| D::Error::custom(e.to_string()))?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn quadric_jet_at_origin() {
        let f = DefiningFunctionSpec::builtin(2, "quadric", &[1.0]).unwrap();
        let jet = eval_jet2(&f, &[0.0; 4]).unwrap();
        assert_eq!(jet.value, 0.0);
        assert_eq!(
            jet.gradient.as_slice(),
            &[0.0, 0.0, 0.0, std::f64::consts::SQRT_2]
        );
        assert_eq!(jet.hessian[(0, 0)], 2.0);
        assert_eq!(jet.hessian[(1, 1)], 2.0);
        assert_eq!(jet.hessian[(2, 2)], 0.0);
        assert_eq!(jet.hessian[(3, 3)], 0.0);
    }

    #[test]
    fn normalize_linear_function() {
        // r = 2·x₄ has ‖dr‖ = 2·‖dx₄‖ = 2/√2 = √2 in the euclidean real
        // form, so the scale is 1/√2 and the normalized gradient is √2·e₄.
        let poly = Polynomial::new(4, vec![(vec![0, 0, 0, 1], 2.0)]).unwrap();
        let f = DefiningFunctionSpec::polynomial(2, poly).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let norm = normalize_defining(&f, &metric, &[0.0; 4], &Tolerances::default()).unwrap();
        assert_relative_eq!(norm.scale, 1.0 / 2f64.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(
            norm.jet.gradient[3],
            2f64.sqrt(),
            max_relative = 1e-14
        );
        let check = metric
            .cotangent_norm(&[0.0; 4], &norm.jet.gradient)
            .unwrap();
        assert_relative_eq!(check, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn quadric_is_already_normalized() {
        let f = DefiningFunctionSpec::builtin(3, "quadric", &[2.0, -3.0]).unwrap();
        let metric = MetricSpec::euclidean(3).unwrap();
        let norm = normalize_defining(&f, &metric, &[0.0; 6], &Tolerances::default()).unwrap();
        assert_relative_eq!(norm.scale, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn normalize_sphere_point() {
        let f = DefiningFunctionSpec::builtin(2, "sphere", &[]).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let p = [1.0, 0.0, 0.0, 0.0];
        let norm = normalize_defining(&f, &metric, &p, &Tolerances::default()).unwrap();
        let check = metric.cotangent_norm(&p, &norm.jet.gradient).unwrap();
        assert_relative_eq!(check, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn critical_point_is_degenerate() {
        let poly = Polynomial::new(4, vec![(vec![2, 0, 0, 0], 1.0)]).unwrap();
        let f = DefiningFunctionSpec::polynomial(2, poly).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let err = normalize_defining(&f, &metric, &[0.0; 4], &Tolerances::default());
        assert!(matches!(err, Err(Error::DegenerateBoundary { .. })));
    }

    #[test]
    fn contact_form_component_swaps() {
        let jet = Jet2 {
            value: 0.0,
            gradient: DVector::from_vec(vec![0.0, 0.0, 0.0, 1.0]),
            hessian: DMatrix::zeros(4, 4),
        };
        assert_eq!(contact_form(&jet).as_slice(), &[0.0, 0.0, 1.0, 0.0]);
        let jet = Jet2 {
            value: 0.0,
            gradient: DVector::from_vec(vec![1.0, 0.0, 0.0, 0.0]),
            hessian: DMatrix::zeros(4, 4),
        };
        assert_eq!(contact_form(&jet).as_slice(), &[0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn contact_form_preserves_norm_and_is_orthogonal() {
        let mut rng = StdRng::seed_from_u64(7);
        let metric = MetricSpec::euclidean(3).unwrap();
        for _ in 0..20 {
            let dr = DVector::from_fn(6, |_, _| rng.gen_range(-1.0..1.0));
            let omega = apply_jt(&dr);
            let p = [0.0; 6];
            let n1 = metric.cotangent_norm(&p, &dr).unwrap();
            let n2 = metric.cotangent_norm(&p, &omega).unwrap();
            assert_relative_eq!(n1, n2, max_relative = 1e-12);
            let ginv = metric.inverse_real_at(&p).unwrap();
            let pairing = (omega.transpose() * ginv * &dr)[(0, 0)];
            assert!(pairing.abs() < 1e-10);
        }
    }

    #[test]
    fn json_round_trips() {
        let f = DefiningFunctionSpec::builtin(3, "quadric", &[2.0, -3.0]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"kind\":\"builtin\""));
        let back: DefiningFunctionSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);

        let poly = Polynomial::new(4, vec![(vec![1, 0, 2, 0], -0.5)]).unwrap();
        let f = DefiningFunctionSpec::polynomial(2, poly).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: DefiningFunctionSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(f, back);

        let m = MetricSpec::euclidean(2).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: MetricSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn hermitian_metric_real_form_and_partials() {
        // g₁₁ = 1 + x₁ (real polynomial perturbation), others euclidean.
        let d = 4;
        let re = Polynomial::new(
            d,
            vec![(vec![0; 4], 1.0), (vec![1, 0, 0, 0], 1.0)],
        )
        .unwrap();
        let im = Polynomial::zero(d);
        let m = MetricSpec::hermitian(2, vec![(1, 1, re, im)]).unwrap();
        let x = [0.25, 0.0, 0.0, 0.0];
        let (g, partials) = m.real_form_with_partials(&x).unwrap();
        assert_relative_eq!(g[(0, 0)], 2.5, max_relative = 1e-14);
        assert_relative_eq!(g[(1, 1)], 2.5, max_relative = 1e-14);
        assert_relative_eq!(g[(2, 2)], 2.0, max_relative = 1e-14);
        assert_relative_eq!(partials[0][(0, 0)], 2.0, max_relative = 1e-14);
        assert_eq!(partials[1][(0, 0)], 0.0);
    }

    #[test]
    fn non_positive_metric_is_rejected() {
        let d = 2;
        let re = Polynomial::new(d, vec![(vec![0, 0], -1.0)]).unwrap();
        let im = Polynomial::zero(d);
        let m = MetricSpec::hermitian(1, vec![(1, 1, re, im)]).unwrap();
        assert!(matches!(
            m.complex_at(&[0.0, 0.0]),
            Err(Error::MetricNotPositive { .. })
        ));
    }
}
