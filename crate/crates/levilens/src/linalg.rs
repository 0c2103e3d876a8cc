//! Small dense linear-algebra helpers: matrix exponential, generalized
//! Hermitian eigenvalues, complex spectra, and Gauss–Legendre rules.

use nalgebra::{Cholesky, DMatrix, Dyn, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Matrix exponential by scaling and squaring with a Taylor series tail,
/// accurate to ~1e−13 for the moderate dimensions used here.
pub fn expm(a: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let d = a.nrows();
    assert_eq!(d, a.ncols(), "expm needs a square matrix");
    let norm = a.norm();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let b = a.map(|x| x / 2f64.powi(s as i32));
    let mut result = DMatrix::<Complex64>::identity(d, d);
    let mut term = DMatrix::<Complex64>::identity(d, d);
    for k in 1..=60 {
        term = (&term * &b) / Complex64::new(k as f64, 0.0);
        result += &term;
        if term.norm() < 1e-16 * result.norm().max(1.0) {
            break;
        }
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

/// Largest entrywise deviation from Hermitian symmetry.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let adj = m.adjoint();
    (m - adj).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Eigenvalues (ascending) of the Hermitian pencil `A v = λ B v` with `B`
/// positive definite, via a Cholesky reduction to a standard problem.
pub fn eigh_generalized(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let d = a.nrows();
    if a.ncols() != d || b.nrows() != d || b.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: b.nrows(),
        });
    }
    if d == 0 {
        return Ok(vec![]);
    }
    let herm = a.map_with_location(|i, j, x| (x + a[(j, i)].conj()) * 0.5);
    let chol: Cholesky<Complex64, Dyn> = Cholesky::new(b.clone())
        .ok_or_else(|| Error::Domain("Gram matrix is not positive definite".into()))?;
    let l = chol.l();
    // C = L⁻¹ A L⁻ᴴ, computed with two triangular solves.
    let x = l
        .solve_lower_triangular(&herm)
        .ok_or(Error::MetricNotInvertible)?;
    let y = l
        .solve_lower_triangular(&x.adjoint())
        .ok_or(Error::MetricNotInvertible)?;
    let c = y.adjoint();
    let sym = SymmetricEigen::new(c);
    let mut eigs: Vec<f64> = sym.eigenvalues.iter().copied().collect();
    eigs.sort_by(|p, q| p.partial_cmp(q).unwrap());
    Ok(eigs)
}

/// Eigenvalues of a complex square matrix, obtained from the real Schur
/// form of its 2d×2d real embedding (which carries the spectrum of the
/// matrix together with its conjugates).
pub fn complex_spectrum(a: &DMatrix<Complex64>) -> Vec<Complex64> {
    let d = a.nrows();
    let mut real = DMatrix::<f64>::zeros(2 * d, 2 * d);
    for i in 0..d {
        for j in 0..d {
            real[(i, j)] = a[(i, j)].re;
            real[(i, j + d)] = -a[(i, j)].im;
            real[(i + d, j)] = a[(i, j)].im;
            real[(i + d, j + d)] = a[(i, j)].re;
        }
    }
    let eigs = real.complex_eigenvalues();
    // The embedding doubles the spectrum into conjugate pairs; keep one
    // representative per pair by pairing off conjugates greedily.
    let mut pool: Vec<Complex64> = eigs.iter().map(|e| Complex64::new(e.re, e.im)).collect();
    let mut out = vec![];
    while let Some(e) = pool.pop() {
        out.push(e);
        if let Some(pos) = pool
            .iter()
            .position(|f| (f - e.conj()).norm() < 1e-8 * (1.0 + e.norm()))
        {
            pool.swap_remove(pos);
        }
    }
    out.sort_by(|p, q| (p.re, p.im).partial_cmp(&(q.re, q.im)).unwrap());
    out
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [−1, 1],
/// computed by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((-x, w));
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// ∫ f over [a, b] with a fixed Gauss–Legendre rule.
pub fn integrate_gl<F: Fn(f64) -> f64>(rule: &[(f64, f64)], a: f64, b: f64, f: F) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.iter().map(|&(x, w)| w * f(mid + half * x)).sum::<f64>() * half
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cm(rows: usize, cols: usize, data: &[(f64, f64)]) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(
            rows,
            cols,
            &data.iter().map(|&(r, i)| Complex64::new(r, i)).collect::<Vec<_>>(),
        )
    }

    #[test]
    fn expm_diagonal_and_nilpotent() {
        let d = cm(2, 2, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-2.0, 0.0)]);
        let e = expm(&d);
        assert_relative_eq!(e[(0, 0)].re, 1f64.exp(), max_relative = 1e-13);
        assert_relative_eq!(e[(1, 1)].re, (-2f64).exp(), max_relative = 1e-13);
        let n = cm(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let en = expm(&n);
        assert_relative_eq!(en[(0, 1)].re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(en[(0, 0)].re, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn expm_inverse_pairs_to_identity() {
        let a = cm(
            2,
            2,
            &[(0.3, 0.1), (-0.8, 0.4), (1.2, -0.2), (0.5, 0.0)],
        );
        let prod = expm(&a) * expm(&a.map(|x| -x));
        let id = DMatrix::<Complex64>::identity(2, 2);
        assert!((prod - id).norm() < 1e-12);
    }

    #[test]
    fn generalized_eigenvalues_against_hand_values() {
        let a = cm(2, 2, &[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-3.0, 0.0)]);
        let b = cm(2, 2, &[(2.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]);
        let eigs = eigh_generalized(&a, &b).unwrap();
        assert_relative_eq!(eigs[0], -3.0, max_relative = 1e-12);
        assert_relative_eq!(eigs[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn hermitian_pencil_with_offdiagonal_entries() {
        // A has eigenpairs relative to B=I: eigenvalues of [[1, i],[−i, 1]] are 0 and 2.
        let a = cm(2, 2, &[(1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 0.0)]);
        let b = DMatrix::<Complex64>::identity(2, 2);
        let eigs = eigh_generalized(&a, &b).unwrap();
        assert_relative_eq!(eigs[0], 0.0, epsilon = 1e-12);
        assert_relative_eq!(eigs[1], 2.0, max_relative = 1e-12);
    }

    #[test]
    fn complex_spectrum_of_rotation_and_complex_matrix() {
        let rot = cm(2, 2, &[(0.0, 0.0), (-1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]);
        let eigs = complex_spectrum(&rot);
        assert_eq!(eigs.len(), 2);
        for e in &eigs {
            assert!(e.re.abs() < 1e-10);
            assert_relative_eq!(e.im.abs(), 1.0, max_relative = 1e-10);
        }
        let m = cm(1, 1, &[(0.5, 2.0)]);
        let eigs = complex_spectrum(&m);
        assert_eq!(eigs.len(), 1);
        assert_relative_eq!(eigs[0].re, 0.5, max_relative = 1e-10);
        assert_relative_eq!(eigs[0].im.abs(), 2.0, max_relative = 1e-10);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = gauss_legendre(16);
        let val = integrate_gl(&rule, 0.0, 1.0, |x| x.powi(19));
        assert_relative_eq!(val, 1.0 / 20.0, max_relative = 1e-13);
        let val = integrate_gl(&rule, -1.0, 2.0, |x| 3.0 * x * x - x + 0.5);
        assert_relative_eq!(val, 9.0, max_relative = 1e-13);
    }
}
