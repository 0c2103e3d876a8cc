//! Levi form, signature, and the solvability conditions Y(q) and Z(q).
//!
//! The Levi matrix is computed from the normalized defining jet as the
//! pairing `L[j,k] = −(1/2i)·⟨Z_j ∧ Z̄_k, dω₀(p)⟩` over an h-orthonormal
//! frame of the holomorphic tangent space, with `dω₀` read off the Hessian
//! of the normalized defining function. Its generalized eigenvalues against
//! the frame Gram matrix drive the signature `(n₋, n₊)` and the conditions.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::linalg::{eigh_generalized, hermitian_deviation};
use crate::surface::{
    contact_form, eval_jet2, normalize_defining, DefiningFunctionSpec, MetricSpec, Tolerances,
};

/// Levi data of a hypersurface at a point: frame, Levi matrix, Gram matrix,
/// eigenvalues (sorted descending), signature, and the contact covector.
#[derive(Debug, Clone)]
pub struct LeviData {
    /// h-orthonormal frame of the holomorphic tangent space, as complex
    /// coefficient vectors over ∂/∂z_1..∂/∂z_n.
    pub frame: Vec<DVector<Complex64>>,
    pub levi_matrix: DMatrix<Complex64>,
    pub gram: DMatrix<Complex64>,
    /// Generalized eigenvalues of (levi_matrix, gram), sorted descending.
    pub eigenvalues: Vec<f64>,
    /// Counts (n₋, n₊) of eigenvalues below −tol_zero / above +tol_zero.
    pub signature: (usize, usize),
    pub omega0: DVector<f64>,
}

/// Holomorphic tangent frame at the jet's base point: the coordinate fields
/// ∂/∂z_j projected off the ∂r direction and orthonormalized by
/// deterministic Gram–Schmidt in index order. Returns the frame and its
/// (identity, by construction) Gram matrix.
pub fn holomorphic_tangent_frame(
    jet: &Jet2,
    metric: &MetricSpec,
    p: &[f64],
) -> Result<(Vec<DVector<Complex64>>, DMatrix<Complex64>)> {
    let (frame, _) = frame_with_pivots(jet, metric, p)?;
    let gram = frame_gram(metric, p, &frame)?;
    Ok((frame, gram))
}

/// Frame construction that also reports which coordinate indices survived
/// the Gram–Schmidt sweep, so the same selection can be replayed at nearby
/// points.
pub(crate) fn frame_with_pivots(
    jet: &Jet2,
    metric: &MetricSpec,
    p: &[f64],
) -> Result<(Vec<DVector<Complex64>>, Vec<usize>)> {
    let n = p.len() / 2;
    let g = metric.complex_at(p)?;
    let dbar = holomorphic_differential(&jet.gradient);
    frame_from_parts(&g, &dbar, n, None)
}

/// Replay a previous pivot selection at a nearby point (used by the
/// brute-force Levi oracle to extend the frame to a neighborhood).
pub(crate) fn frame_at_with_pivots(
    jet: &Jet2,
    metric: &MetricSpec,
    p: &[f64],
    pivots: &[usize],
) -> Result<Vec<DVector<Complex64>>> {
    let n = p.len() / 2;
    let g = metric.complex_at(p)?;
    let dbar = holomorphic_differential(&jet.gradient);
    let (frame, _) = frame_from_parts(&g, &dbar, n, Some(pivots))?;
    Ok(frame)
}

/// Coefficients of ∂r over dz_j, i.e. `(∂r)_j = ½(∂r/∂x_{2j−1} − i·∂r/∂x_{2j})`.
fn holomorphic_differential(gradient: &DVector<f64>) -> DVector<Complex64> {
    let n = gradient.len() / 2;
    DVector::from_fn(n, |j, _| {
        Complex64::new(0.5 * gradient[2 * j], -0.5 * gradient[2 * j + 1])
    })
}

fn frame_from_parts(
    g: &DMatrix<Complex64>,
    dbar: &DVector<Complex64>,
    n: usize,
    pivots: Option<&[usize]>,
) -> Result<(Vec<DVector<Complex64>>, Vec<usize>)> {
    let inner = |a: &DVector<Complex64>, b: &DVector<Complex64>| -> Complex64 {
        (b.adjoint() * (g * a))[(0, 0)]
    };
    // The h-gradient direction ν satisfies ⟨u, ∂r⟩ = (u|ν) for all u.
    let chol = nalgebra::Cholesky::new(g.clone())
        .ok_or_else(|| Error::Domain("metric matrix is not positive definite".into()))?;
    let nu = chol.solve(dbar).map(|x| x.conj());
    let nu_norm2 = inner(&nu, &nu).re;
    if nu_norm2 <= 0.0 {
        return Err(Error::DegenerateBoundary { norm: 0.0 });
    }
    let mut frame: Vec<DVector<Complex64>> = vec![];
    let mut kept: Vec<usize> = vec![];
    let candidates: Vec<usize> = match pivots {
        Some(idx) => idx.to_vec(),
        None => (0..n).collect(),
    };
    for j in candidates {
        let mut v = DVector::<Complex64>::zeros(n);
        v[j] = Complex64::new(1.0, 0.0);
        let coef = inner(&v, &nu) / nu_norm2;
        v -= nu.map(|x| x * coef);
        for w in &frame {
            let c = inner(&v, w);
            v -= w.map(|x| x * c);
        }
        let norm = inner(&v, &v).re.max(0.0).sqrt();
        if pivots.is_none() && norm < 1e-8 {
            continue;
        }
        frame.push(v.map(|x| x / Complex64::new(norm, 0.0)));
        kept.push(j);
        if pivots.is_none() && frame.len() == n.saturating_sub(1) {
            break;
        }
    }
    Ok((frame, kept))
}

fn frame_gram(
    metric: &MetricSpec,
    p: &[f64],
    frame: &[DVector<Complex64>],
) -> Result<DMatrix<Complex64>> {
    let g = metric.complex_at(p)?;
    let m = frame.len();
    Ok(DMatrix::from_fn(m, m, |j, k| {
        (frame[k].adjoint() * (&g * &frame[j]))[(0, 0)]
    }))
}

/// Coefficient matrix Ω of `dω₀` at the base point (`dω₀ = Σ_{a<b} Ω[a,b]
/// dx_a ∧ dx_b`), from the Jacobian of the contact form of the jet.
pub(crate) fn contact_two_form(jet: &Jet2) -> DMatrix<f64> {
    let d = jet.dim();
    // ω₀(x) = P·dr(x), so ∂ω₀/∂x = P·H and Ω = (PH)ᵗ − PH.
    let mut ph = DMatrix::<f64>::zeros(d, d);
    for j in 0..d / 2 {
        for b in 0..d {
            ph[(2 * j, b)] = jet.hessian[(2 * j + 1, b)];
            ph[(2 * j + 1, b)] = -jet.hessian[(2 * j, b)];
        }
    }
    ph.transpose() - ph
}

/// Real-coordinate components (complex coefficients) of a (1,0) vector
/// given over ∂/∂z_j: `∂/∂z_j = ½(∂/∂x_{2j−1} − i·∂/∂x_{2j})`.
pub(crate) fn realify(v: &DVector<Complex64>) -> DVector<Complex64> {
    let n = v.len();
    let mut out = DVector::<Complex64>::zeros(2 * n);
    for j in 0..n {
        out[2 * j] = 0.5 * v[j];
        out[2 * j + 1] = Complex64::new(0.0, -0.5) * v[j];
    }
    out
}

/// Levi data at a boundary point `p` of `{r = 0}`.
pub fn levi_form(
    f: &DefiningFunctionSpec,
    metric: &MetricSpec,
    p: &[f64],
    tols: &Tolerances,
) -> Result<LeviData> {
    let raw = eval_jet2(f, p)?;
    let normalized = normalize_defining(f, metric, p, tols)?;
    let jet = &normalized.jet;
    let r_at_p = normalized.scale * raw.value;
    if r_at_p.abs() > tols.tol_surface {
        return Err(Error::NotOnBoundary {
            value: r_at_p,
            tol: tols.tol_surface,
        });
    }
    let omega0 = contact_form(jet);
    let (frame, gram) = holomorphic_tangent_frame(jet, metric, p)?;
    let omega_jac = contact_two_form(jet);
    let omega_c = omega_jac.map(|x| Complex64::new(x, 0.0));
    let m = frame.len();
    let minus_inv_2i = Complex64::new(0.0, 0.5); // −1/(2i) = i/2
    let levi = DMatrix::from_fn(m, m, |j, k| {
        let zj = realify(&frame[j]);
        let zk = realify(&frame[k]).conjugate();
        let pairing = (zj.transpose() * (&omega_c * zk))[(0, 0)];
        minus_inv_2i * pairing
    });
    let dev = hermitian_deviation(&levi);
    let scale = levi.iter().map(|x| x.norm()).fold(1.0, f64::max);
    if dev > tols.tol_herm * scale {
        return Err(Error::Domain(format!(
            "Levi matrix failed the Hermitian symmetry check (deviation {dev:.3e})"
        )));
    }
    let mut eigenvalues = eigh_generalized(&levi, &gram)?;
    eigenvalues.reverse();
    let n_minus = eigenvalues.iter().filter(|l| **l < -tols.tol_zero).count();
    let n_plus = eigenvalues.iter().filter(|l| **l > tols.tol_zero).count();
    Ok(LeviData {
        frame,
        levi_matrix: levi,
        gram,
        eigenvalues,
        signature: (n_minus, n_plus),
        omega0,
    })
}

fn require_nondegenerate(eigenvalues: &[f64], tols: &Tolerances) -> Result<()> {
    let min_abs = eigenvalues
        .iter()
        .map(|l| l.abs())
        .fold(f64::INFINITY, f64::min);
    if min_abs <= tols.tol_zero {
        return Err(Error::DegenerateLevi { min_abs });
    }
    Ok(())
}

fn signature_of(eigenvalues: &[f64], tols: &Tolerances) -> (usize, usize) {
    let n_minus = eigenvalues.iter().filter(|l| **l < -tols.tol_zero).count();
    let n_plus = eigenvalues.iter().filter(|l| **l > tols.tol_zero).count();
    (n_minus, n_plus)
}

/// Condition Y(q): for every q-element index set J,
/// `|Σ_{j∉J} λ_j − Σ_{j∈J} λ_j| < Σ_j |λ_j|`. Equivalent (non-degenerate
/// case) to `q ∉ {n₋, n₊}`; both readings are computed and cross-checked.
pub fn condition_y(eigenvalues: &[f64], q: usize, tols: &Tolerances) -> Result<bool> {
    require_nondegenerate(eigenvalues, tols)?;
    let m = eigenvalues.len();
    if q > m {
        return Err(Error::InvalidInput(format!(
            "form degree q = {q} exceeds the number of Levi eigenvalues {m}"
        )));
    }
    let total: f64 = eigenvalues.iter().map(|l| l.abs()).sum();
    let mut holds = true;
    for subset in (0..m).combinations(q) {
        let mut signed = 0.0;
        for (j, l) in eigenvalues.iter().enumerate() {
            if subset.contains(&j) {
                signed -= l;
            } else {
                signed += l;
            }
        }
        if !(signed.abs() < total) {
            holds = false;
            break;
        }
    }
    let (n_minus, n_plus) = signature_of(eigenvalues, tols);
    assert_eq!(
        holds,
        q != n_minus && q != n_plus,
        "subset enumeration disagrees with the signature reading of Y({q})"
    );
    Ok(holds)
}

/// Condition Z(q): at least `n−q` positive or at least `q+1` negative Levi
/// eigenvalues (with `n` the ambient complex dimension, so the list has
/// length `n−1`). Equivalent to `q ≠ n₋`; cross-checked.
pub fn condition_z(eigenvalues: &[f64], q: usize, tols: &Tolerances) -> Result<bool> {
    require_nondegenerate(eigenvalues, tols)?;
    let m = eigenvalues.len();
    let n = m + 1;
    if q > m {
        return Err(Error::InvalidInput(format!(
            "form degree q = {q} exceeds the number of Levi eigenvalues {m}"
        )));
    }
    let (n_minus, n_plus) = signature_of(eigenvalues, tols);
    let holds = n_plus >= n - q || n_minus >= q + 1;
    assert_eq!(
        holds,
        q != n_minus,
        "count rule disagrees with the signature reading of Z({q})"
    );
    Ok(holds)
}

/// Whether `p` lies in Γ_q, the locus where Z(q) fails.
pub fn gamma_q_membership(
    f: &DefiningFunctionSpec,
    metric: &MetricSpec,
    p: &[f64],
    q: usize,
    tols: &Tolerances,
) -> Result<bool> {
    let data = levi_form(f, metric, p, tols)?;
    Ok(!condition_z(&data.eigenvalues, q, tols)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Polynomial;
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn quadric_eigenvalues_recover_parameters() {
        let f = DefiningFunctionSpec::builtin(2, "quadric", &[1.0]).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let data = levi_form(&f, &metric, &[0.0; 4], &tols()).unwrap();
        assert_eq!(data.eigenvalues.len(), 1);
        assert_relative_eq!(data.eigenvalues[0], 1.0, max_relative = 1e-12);
        assert_eq!(data.signature, (0, 1));
        assert_relative_eq!(data.omega0[2], 2f64.sqrt(), max_relative = 1e-14);

        let f = DefiningFunctionSpec::builtin(3, "quadric", &[2.0, -3.0]).unwrap();
        let metric = MetricSpec::euclidean(3).unwrap();
        let data = levi_form(&f, &metric, &[0.0; 6], &tols()).unwrap();
        assert_relative_eq!(data.eigenvalues[0], 2.0, max_relative = 1e-12);
        assert_relative_eq!(data.eigenvalues[1], -3.0, max_relative = 1e-12);
        assert_eq!(data.signature, (1, 1));
    }

    #[test]
    fn quadric_frame_is_coordinate_frame() {
        let f = DefiningFunctionSpec::builtin(3, "quadric", &[1.0, 2.0]).unwrap();
        let metric = MetricSpec::euclidean(3).unwrap();
        let jet = eval_jet2(&f, &[0.0; 6]).unwrap();
        let (frame, gram) = holomorphic_tangent_frame(&jet, &metric, &[0.0; 6]).unwrap();
        assert_eq!(frame.len(), 2);
        for (j, v) in frame.iter().enumerate() {
            assert_relative_eq!(v[j].norm(), 1.0, max_relative = 1e-12);
        }
        assert!((gram - DMatrix::<Complex64>::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn sphere_frame_is_orthogonal_to_dbar_r() {
        let f = DefiningFunctionSpec::builtin(2, "sphere", &[]).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let p = [1.0, 0.0, 0.0, 0.0];
        let norm = normalize_defining(&f, &metric, &p, &tols()).unwrap();
        let (frame, _) = holomorphic_tangent_frame(&norm.jet, &metric, &p).unwrap();
        assert_eq!(frame.len(), 1);
        let dbar = super::holomorphic_differential(&norm.jet.gradient);
        let pairing: Complex64 = frame[0].iter().zip(dbar.iter()).map(|(a, b)| a * b).sum();
        assert!(pairing.norm() < 1e-12);
    }

    #[test]
    fn sphere_eigenvalues_equal_and_rotation_invariant() {
        let f = DefiningFunctionSpec::builtin(3, "sphere", &[]).unwrap();
        let metric = MetricSpec::euclidean(3).unwrap();
        let expected = 1.0 / 2f64.sqrt();
        let points: [[f64; 6]; 3] = [
            [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.6, 0.0, 0.8, 0.0],
            [0.5, 0.5, 0.5, 0.3, 0.2, 0.34641016151377546],
        ];
        for p in &points {
            let r2: f64 = p.iter().map(|x| x * x).sum();
            assert!((r2 - 1.0).abs() < 1e-8, "test point must sit on the sphere");
            let data = levi_form(&f, &metric, p, &tols()).unwrap();
            assert_eq!(data.eigenvalues.len(), 2);
            for l in &data.eigenvalues {
                assert_relative_eq!(*l, expected, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn shell_eigenvalues_are_negative() {
        let f = DefiningFunctionSpec::builtin(2, "shell", &[]).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let data = levi_form(&f, &metric, &[0.0, 0.0, 1.0, 0.0], &tols()).unwrap();
        assert_eq!(data.eigenvalues.len(), 1);
        assert_relative_eq!(data.eigenvalues[0], -1.0 / 2f64.sqrt(), max_relative = 1e-10);
        assert_eq!(data.signature, (1, 0));
    }

    #[test]
    fn rescaled_defining_function_gives_same_eigenvalues() {
        let base = DefiningFunctionSpec::builtin(3, "quadric", &[1.5, -0.5]).unwrap();
        let scaled_poly = Polynomial::new(
            6,
            base.to_polynomial()
                .terms()
                .iter()
                .map(|(mi, c)| (mi.clone(), 3.0 * c))
                .collect(),
        )
        .unwrap();
        let scaled = DefiningFunctionSpec::polynomial(3, scaled_poly).unwrap();
        let metric = MetricSpec::euclidean(3).unwrap();
        let a = levi_form(&base, &metric, &[0.0; 6], &tols()).unwrap();
        let b = levi_form(&scaled, &metric, &[0.0; 6], &tols()).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(b.eigenvalues.iter()) {
            assert_relative_eq!(x, y, max_relative = 1e-8);
        }
    }

    #[test]
    fn ellipsoid_gram_is_positive_definite() {
        let mut terms = vec![(vec![0u32; 6], -1.0)];
        let coeffs = [1.0, 1.0, 2.0, 2.0, 0.5, 0.5];
        for (k, c) in coeffs.iter().enumerate() {
            let mut mi = vec![0u32; 6];
            mi[k] = 2;
            terms.push((mi, *c));
        }
        let poly = Polynomial::new(6, terms).unwrap();
        let f = DefiningFunctionSpec::polynomial(3, poly).unwrap();
        let metric = MetricSpec::euclidean(3).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let dir: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let qval: f64 = dir
                .iter()
                .zip(coeffs.iter())
                .map(|(x, c)| c * x * x)
                .sum();
            let p: Vec<f64> = dir.iter().map(|x| x / qval.sqrt()).collect();
            let jet = eval_jet2(&f, &p).unwrap();
            let (_, gram) = holomorphic_tangent_frame(&jet, &metric, &p).unwrap();
            let min_eig = nalgebra::SymmetricEigen::new(gram)
                .eigenvalues
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            assert!(min_eig > 1e-6);
        }
    }

    #[test]
    fn condition_y_and_z_examples() {
        let t = tols();
        assert!(!condition_y(&[1.0, 1.0], 0, &t).unwrap());
        assert!(!condition_z(&[1.0, 1.0], 0, &t).unwrap());
        assert!(!condition_y(&[1.0, -1.0], 1, &t).unwrap());
        assert!(!condition_z(&[1.0, -1.0], 1, &t).unwrap());
        assert!(condition_y(&[1.0, 1.0, -1.0], 0, &t).unwrap());
        assert!(condition_z(&[1.0, 1.0, -1.0], 0, &t).unwrap());
        assert!(condition_y(&[1.0, 1.0], 1, &t).unwrap());
        assert!(condition_z(&[1.0, 1.0], 1, &t).unwrap());
    }

    #[test]
    fn conditions_match_signature_reading_on_random_samples() {
        let mut rng = StdRng::seed_from_u64(3);
        let t = tols();
        for _ in 0..200 {
            let m = rng.gen_range(1..=5);
            let eig: Vec<f64> = (0..m)
                .map(|_| {
                    let mag = rng.gen_range(0.1..10.0);
                    if rng.gen_bool(0.5) {
                        mag
                    } else {
                        -mag
                    }
                })
                .collect();
            let n_minus = eig.iter().filter(|l| **l < 0.0).count();
            let n_plus = m - n_minus;
            for q in 0..=m {
                let y = condition_y(&eig, q, &t).unwrap();
                assert_eq!(y, q != n_minus && q != n_plus);
                let z = condition_z(&eig, q, &t).unwrap();
                assert_eq!(z, q != n_minus);
            }
        }
    }

    #[test]
    fn degenerate_eigenvalues_are_rejected() {
        let t = tols();
        assert!(matches!(
            condition_y(&[1.0, 0.0], 1, &t),
            Err(Error::DegenerateLevi { .. })
        ));
        assert!(matches!(
            condition_z(&[1e-12], 0, &t),
            Err(Error::DegenerateLevi { .. })
        ));
    }

    #[test]
    fn gamma_membership_examples() {
        let t = tols();
        let metric2 = MetricSpec::euclidean(2).unwrap();
        let quad = DefiningFunctionSpec::builtin(2, "quadric", &[-1.0]).unwrap();
        assert!(gamma_q_membership(&quad, &metric2, &[0.0; 4], 1, &t).unwrap());
        let sphere2 = DefiningFunctionSpec::builtin(2, "sphere", &[]).unwrap();
        let p2 = [1.0, 0.0, 0.0, 0.0];
        assert!(gamma_q_membership(&sphere2, &metric2, &p2, 0, &t).unwrap());
        let metric3 = MetricSpec::euclidean(3).unwrap();
        let sphere3 = DefiningFunctionSpec::builtin(3, "sphere", &[]).unwrap();
        let p3 = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        assert!(!gamma_q_membership(&sphere3, &metric3, &p3, 1, &t).unwrap());
    }

    #[test]
    fn off_boundary_point_is_rejected() {
        let f = DefiningFunctionSpec::builtin(2, "sphere", &[]).unwrap();
        let metric = MetricSpec::euclidean(2).unwrap();
        let err = levi_form(&f, &metric, &[0.5, 0.0, 0.0, 0.0], &tols());
        assert!(matches!(err, Err(Error::NotOnBoundary { .. })));
    }
}
