//! Second-order jets of real polynomials via forward-mode dual arithmetic.
//!
//! A [`Jet2`] stores the exact value, gradient, and Hessian of a scalar
//! function at a point. Evaluation propagates truncated Taylor data
//! (value + gradient + Hessian) through the expression tree, so the results
//! carry no finite-difference error.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Value, gradient, and symmetric Hessian of a real function at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub gradient: DVector<f64>,
    pub hessian: DMatrix<f64>,
}

impl Jet2 {
    pub fn dim(&self) -> usize {
        self.gradient.len()
    }

    /// Jet of the constant-rescaled function `c·f`.
    pub fn scaled(&self, c: f64) -> Jet2 {
        Jet2 {
            value: c * self.value,
            gradient: c * &self.gradient,
            hessian: c * &self.hessian,
        }
    }
}

/// Truncated second-order Taylor value used during evaluation.
#[derive(Clone)]
struct Dual2 {
    val: f64,
    grad: DVector<f64>,
    hess: DMatrix<f64>,
}

impl Dual2 {
    fn constant(c: f64, dim: usize) -> Dual2 {
        Dual2 {
            val: c,
            grad: DVector::zeros(dim),
            hess: DMatrix::zeros(dim, dim),
        }
    }

    fn variable(i: usize, value: f64, dim: usize) -> Dual2 {
        let mut grad = DVector::zeros(dim);
        grad[i] = 1.0;
        Dual2 {
            val: value,
            grad,
            hess: DMatrix::zeros(dim, dim),
        }
    }

    fn mul(&self, other: &Dual2) -> Dual2 {
        let grad = &self.grad * other.val + &other.grad * self.val;
        let hess = &self.hess * other.val
            + &other.hess * self.val
            + &self.grad * other.grad.transpose()
            + &other.grad * self.grad.transpose();
        Dual2 {
            val: self.val * other.val,
            grad,
            hess,
        }
    }

    fn add_assign(&mut self, other: &Dual2) {
        self.val += other.val;
        self.grad += &other.grad;
        self.hess += &other.hess;
    }

    fn scale_assign(&mut self, c: f64) {
        self.val *= c;
        self.grad *= c;
        self.hess *= c;
    }
}

/// Real polynomial in `dim` variables, stored as (multi-index, coefficient)
/// terms. Multi-indices list one exponent per variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    dim: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl Polynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<u32>, f64)>) -> Result<Polynomial> {
        for (mi, c) in &terms {
            if mi.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: mi.len(),
                });
            }
            if !c.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "non-finite polynomial coefficient {c}"
                )));
            }
        }
        Ok(Polynomial { dim, terms })
    }

    pub fn zero(dim: usize) -> Polynomial {
        Polynomial { dim, terms: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(_, c)| *c == 0.0)
    }

    /// Plain value at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let mut acc = 0.0;
        for (mi, c) in &self.terms {
            let mut t = *c;
            for (xi, &e) in x.iter().zip(mi.iter()) {
                t *= xi.powi(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact second-order jet at `x` by dual-number propagation.
    pub fn jet(&self, x: &[f64]) -> Result<Jet2> {
        self.check_dim(x)?;
        let dim = self.dim;
        let mut acc = Dual2::constant(0.0, dim);
        for (mi, c) in &self.terms {
            let mut term = Dual2::constant(1.0, dim);
            for (i, &e) in mi.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = Dual2::variable(i, x[i], dim);
                for _ in 0..e {
                    term = term.mul(&v);
                }
            }
            term.scale_assign(*c);
            acc.add_assign(&term);
        }
        Ok(Jet2 {
            value: acc.val,
            gradient: acc.grad,
            hessian: acc.hess,
        })
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn fd_jet(p: &Polynomial, x: &[f64], h: f64) -> (DVector<f64>, DMatrix<f64>) {
        let d = x.len();
        let f = |y: &[f64]| p.eval(y).unwrap();
        let mut grad = DVector::zeros(d);
        let mut hess = DMatrix::zeros(d, d);
        for i in 0..d {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[i] += h;
            xm[i] -= h;
            grad[i] = (f(&xp) - f(&xm)) / (2.0 * h);
            for j in 0..d {
                let mut xpp = x.to_vec();
                let mut xpm = x.to_vec();
                let mut xmp = x.to_vec();
                let mut xmm = x.to_vec();
                xpp[i] += h;
                xpp[j] += h;
                xpm[i] += h;
                xpm[j] -= h;
                xmp[i] -= h;
                xmp[j] += h;
                xmm[i] -= h;
                xmm[j] -= h;
                hess[(i, j)] = (f(&xpp) - f(&xpm) - f(&xmp) + f(&xmm)) / (4.0 * h * h);
            }
        }
        (grad, hess)
    }

    #[test]
    fn monomial_square_jet() {
        let p = Polynomial::new(4, vec![(vec![2, 0, 0, 0], 1.0)]).unwrap();
        let jet = p.jet(&[3.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(jet.value, 9.0);
        assert_eq!(jet.gradient.as_slice(), &[6.0, 0.0, 0.0, 0.0]);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == 0 && j == 0 { 2.0 } else { 0.0 };
                assert_eq!(jet.hessian[(i, j)], want);
            }
        }
    }

    #[test]
    fn random_cubics_match_central_differences() {
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..20 {
            let dim = rng.gen_range(2..=6);
            let mut terms = vec![];
            for _ in 0..12 {
                let mut mi = vec![0u32; dim];
                for _ in 0..rng.gen_range(0..=3) {
                    mi[rng.gen_range(0..dim)] += 1;
                }
                terms.push((mi, rng.gen_range(-2.0..2.0)));
            }
            let p = Polynomial::new(dim, terms).unwrap();
            let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let jet = p.jet(&x).unwrap();
            let (grad, hess) = fd_jet(&p, &x, 1e-4);
            let gscale = jet.gradient.norm().max(1.0);
            assert!((&jet.gradient - &grad).norm() / gscale < 1e-6);
            let hscale = jet.hessian.norm().max(1.0);
            assert!((&jet.hessian - &hess).norm() / hscale < 1e-6);
        }
    }

    #[test]
    fn hessian_is_exactly_symmetric() {
        let p = Polynomial::new(
            3,
            vec![
                (vec![1, 1, 0], 2.5),
                (vec![0, 1, 2], -1.25),
                (vec![3, 0, 0], 0.75),
            ],
        )
        .unwrap();
        let jet = p.jet(&[0.3, -0.7, 1.1]).unwrap();
        assert_eq!(jet.hessian, jet.hessian.transpose());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = Polynomial::new(3, vec![(vec![1, 0, 0], 1.0)]).unwrap();
        assert!(matches!(
            p.jet(&[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }
}
