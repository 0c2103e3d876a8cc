//! Exterior algebra over an orthonormal complex coframe.
//!
//! Degree-`q` antisymmetric tensors are expanded in the lexicographic basis of
//! `q`-element subsets of `{1, …, m}`.  The module provides wedge and interior
//! (contraction) operators for single coframe elements and for weighted
//! covectors, subset projections, and the anticommutator bracket that ties
//! wedge and contraction together.

use crate::error::{Error, Result};
use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Binomial coefficient `C(m, q)` computed exactly in integer arithmetic.
pub fn binomial(m: usize, q: usize) -> usize {
    if q > m {
        return 0;
    }
    let q = q.min(m - q);
    let mut acc: usize = 1;
    for i in 0..q {
        // Exact at every step: after processing i the accumulator is C(m, i+1).
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// Lexicographically ordered basis of degree-`q` forms over an `m`-element
/// coframe.  Subsets are stored with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormBasis {
    m: usize,
    q: usize,
    subsets: Vec<Vec<usize>>,
}

impl FormBasis {
    /// All `q`-element subsets of `{1, …, m}` in lexicographic order.
    pub fn new(m: usize, q: usize) -> Result<Self> {
        if q > m {
            return Err(Error::InvalidInput(format!(
                "form degree {q} exceeds coframe size {m}"
            )));
        }
        let subsets: Vec<Vec<usize>> = (1..=m).combinations(q).collect();
        Ok(FormBasis { m, q, subsets })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.q
    }

    pub fn dimension(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    /// Position of a sorted subset in the lexicographic enumeration.
    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.subsets
            .binary_search_by(|s| s.as_slice().cmp(subset))
            .ok()
    }
}

/// Linear map between form spaces, stored as a dense matrix over the
/// lexicographic bases: rows index the output degree, columns the input.
#[derive(Clone, Debug, PartialEq)]
pub struct FormOperator {
    m: usize,
    q_in: usize,
    q_out: usize,
    entries: DMatrix<Complex64>,
}

impl FormOperator {
    pub fn new(m: usize, q_in: usize, q_out: usize, entries: DMatrix<Complex64>) -> Result<Self> {
        let rows = binomial(m, q_out);
        let cols = binomial(m, q_in);
        if entries.nrows() != rows || entries.ncols() != cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.nrows() * entries.ncols(),
            });
        }
        Ok(FormOperator {
            m,
            q_in,
            q_out,
            entries,
        })
    }

    pub fn zero(m: usize, q_in: usize, q_out: usize) -> Self {
        FormOperator {
            m,
            q_in,
            q_out,
            entries: DMatrix::zeros(binomial(m, q_out), binomial(m, q_in)),
        }
    }

    pub fn identity(m: usize, q: usize) -> Self {
        FormOperator {
            m,
            q_in: q,
            q_out: q,
            entries: DMatrix::identity(binomial(m, q), binomial(m, q)),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q_in(&self) -> usize {
        self.q_in
    }

    pub fn q_out(&self) -> usize {
        self.q_out
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &FormOperator) -> Result<FormOperator> {
        if self.m != other.m || self.q_in != other.q_out {
            return Err(Error::DimensionMismatch {
                expected: self.q_in,
                got: other.q_out,
            });
        }
        Ok(FormOperator {
            m: self.m,
            q_in: other.q_in,
            q_out: self.q_out,
            entries: &self.entries * &other.entries,
        })
    }

    pub fn add(&self, other: &FormOperator) -> Result<FormOperator> {
        if self.m != other.m || self.q_in != other.q_in || self.q_out != other.q_out {
            return Err(Error::DimensionMismatch {
                expected: self.q_in,
                got: other.q_in,
            });
        }
        Ok(FormOperator {
            m: self.m,
            q_in: self.q_in,
            q_out: self.q_out,
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &FormOperator) -> Result<FormOperator> {
        Ok(self.add(&other.scaled(Complex64::new(-1.0, 0.0)))?)
    }

    pub fn scaled(&self, s: Complex64) -> FormOperator {
        FormOperator {
            m: self.m,
            q_in: self.q_in,
            q_out: self.q_out,
            entries: self.entries.map(|e| e * s),
        }
    }

    pub fn scaled_re(&self, s: f64) -> FormOperator {
        FormOperator {
            m: self.m,
            q_in: self.q_in,
            q_out: self.q_out,
            entries: self.entries.map(|e| e * s),
        }
    }

    /// Conjugate transpose, with input and output degrees swapped.
    pub fn adjoint(&self) -> FormOperator {
        FormOperator {
            m: self.m,
            q_in: self.q_out,
            q_out: self.q_in,
            entries: self.entries.adjoint(),
        }
    }

    pub fn trace(&self) -> Result<Complex64> {
        if self.q_in != self.q_out {
            return Err(Error::DimensionMismatch {
                expected: self.q_in,
                got: self.q_out,
            });
        }
        Ok(self.entries.trace())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &FormOperator, tol: f64) -> bool {
        self.m == other.m
            && self.q_in == other.q_in
            && self.q_out == other.q_out
            && (&self.entries - &other.entries)
                .iter()
                .all(|e| e.norm() <= tol)
    }
}

#[derive(Serialize, Deserialize)]
struct FormOperatorJson {
    m: usize,
    q_in: usize,
    q_out: usize,
    entries: Vec<(f64, f64)>,
}

impl Serialize for FormOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for r in 0..self.entries.nrows() {
            for c in 0..self.entries.ncols() {
                let e = self.entries[(r, c)];
                entries.push((e.re, e.im));
            }
        }
        FormOperatorJson {
            m: self.m,
            q_in: self.q_in,
            q_out: self.q_out,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FormOperatorJson::deserialize(deserializer)?;
        let rows = binomial(raw.m, raw.q_out);
        let cols = binomial(raw.m, raw.q_in);
        if raw.entries.len() != rows * cols {
            return Err(D::Error::custom(format!(
                "operator entry list has length {}, expected {}",
                raw.entries.len(),
                rows * cols
            )));
        }
        let entries = DMatrix::from_fn(rows, cols, |r, c| {
            let (re, im) = raw.entries[r * cols + c];
            Complex64::new(re, im)
        });
        FormOperator::new(raw.m, raw.q_in, raw.q_out, entries).map_err(D::Error::custom)
    }
}

fn check_coframe_index(j: usize, m: usize) -> Result<()> {
    if j == 0 || j > m {
        return Err(Error::InvalidInput(format!(
            "coframe index {j} out of range 1..={m}"
        )));
    }
    Ok(())
}

/// Left wedge with the `j`-th coframe element, mapping degree `q` to `q + 1`.
///
/// The column of a subset `J` with `j ∉ J` holds the sign `(-1)^k` where `k`
/// counts the elements of `J` below `j`; columns with `j ∈ J` vanish.
pub fn wedge_op(j: usize, m: usize, q: usize) -> Result<FormOperator> {
    check_coframe_index(j, m)?;
    let basis_in = FormBasis::new(m, q)?;
    let basis_out = FormBasis::new(m, q + 1)?;
    let mut entries = DMatrix::zeros(basis_out.dimension(), basis_in.dimension());
    for (col, subset) in basis_in.subsets().iter().enumerate() {
        if subset.contains(&j) {
            continue;
        }
        let crossings = subset.iter().filter(|&&i| i < j).count();
        let sign = if crossings % 2 == 0 { 1.0 } else { -1.0 };
        let mut target = subset.clone();
        target.push(j);
        target.sort_unstable();
        let row = basis_out
            .position(&target)
            .expect("augmented subset is in the target basis");
        entries[(row, col)] = Complex64::new(sign, 0.0);
    }
    FormOperator::new(m, q, q + 1, entries)
}

/// Contraction with the `j`-th coframe element, mapping degree `q` to `q - 1`:
/// the adjoint of the corresponding wedge.
pub fn interior_op(j: usize, m: usize, q: usize) -> Result<FormOperator> {
    if q == 0 {
        return Err(Error::InvalidInput(
            "contraction needs input degree at least 1".into(),
        ));
    }
    Ok(wedge_op(j, m, q - 1)?.adjoint())
}

/// Diagonal projection onto the basis forms whose subset contains `s`.
pub fn projection_operator(s: &[usize], m: usize, q: usize) -> Result<FormOperator> {
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != s.len() {
        return Err(Error::InvalidInput(
            "projection subset has repeated indices".into(),
        ));
    }
    for &j in &sorted {
        check_coframe_index(j, m)?;
    }
    let basis = FormBasis::new(m, q)?;
    let dim = basis.dimension();
    let mut entries = DMatrix::zeros(dim, dim);
    for (i, subset) in basis.subsets().iter().enumerate() {
        if sorted.iter().all(|j| subset.contains(j)) {
            entries[(i, i)] = Complex64::new(1.0, 0.0);
        }
    }
    FormOperator::new(m, q, q, entries)
}

/// Wedge with the covector `w = Σ c_j e_j`, mapping degree `q` to `q + 1`.
/// The coframe size is `c.len()`.
pub fn weighted_wedge(c: &[Complex64], q: usize) -> Result<FormOperator> {
    let m = c.len();
    if m == 0 {
        return Err(Error::InvalidInput("empty coframe".into()));
    }
    let basis_in = FormBasis::new(m, q)?;
    let basis_out = FormBasis::new(m, q + 1)?;
    let mut entries = DMatrix::zeros(basis_out.dimension(), basis_in.dimension());
    for (col, subset) in basis_in.subsets().iter().enumerate() {
        for j in 1..=m {
            if subset.contains(&j) {
                continue;
            }
            let crossings = subset.iter().filter(|&&i| i < j).count();
            let sign = if crossings % 2 == 0 { 1.0 } else { -1.0 };
            let mut target = subset.clone();
            target.push(j);
            target.sort_unstable();
            let row = basis_out
                .position(&target)
                .expect("augmented subset is in the target basis");
            entries[(row, col)] += c[j - 1] * sign;
        }
    }
    FormOperator::new(m, q, q + 1, entries)
}

/// Contraction with the covector `w`, mapping degree `q` to `q - 1`.  Depends
/// anti-linearly on `w` (it is the adjoint of the weighted wedge).
pub fn weighted_interior(c: &[Complex64], q: usize) -> Result<FormOperator> {
    if q == 0 {
        return Err(Error::InvalidInput(
            "contraction needs input degree at least 1".into(),
        ));
    }
    Ok(weighted_wedge(c, q - 1)?.adjoint())
}

/// Anticommutator `{w^∧, v^{∧,*}}` acting on degree-`q` forms.  For an
/// orthonormal coframe this equals `(w|v)·Id` with `(w|v) = Σ w_j conj(v_j)`.
pub fn anticommutator(w: &[Complex64], v: &[Complex64], q: usize) -> Result<FormOperator> {
    let m = w.len();
    if v.len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: v.len(),
        });
    }
    if q > m {
        return Err(Error::InvalidInput(format!(
            "form degree {q} exceeds coframe size {m}"
        )));
    }
    let dim = binomial(m, q);
    let mut total = DMatrix::zeros(dim, dim);
    if q < m {
        let w_up = weighted_wedge(w, q)?;
        let v_up = weighted_wedge(v, q)?;
        total += v_up.entries().adjoint() * w_up.entries();
    }
    if q > 0 {
        let w_down = weighted_wedge(w, q - 1)?;
        let v_down = weighted_wedge(v, q - 1)?;
        total += w_down.entries() * v_down.entries().adjoint();
    }
    FormOperator::new(m, q, q, total)
}

/// Wedge and contraction for a single weighted covector, together with their
/// anticommutator on degree-`q` forms and the squared coefficient norm.
#[derive(Clone, Debug)]
pub struct WedgePair {
    /// `w^∧` mapping degree `q` to `q + 1`.
    pub wedge: FormOperator,
    /// `w^{∧,*}` mapping degree `q + 1` to `q`.
    pub interior: FormOperator,
    /// `{w^∧, w^{∧,*}}` acting on degree `q`.
    pub anticommutator: FormOperator,
    /// `Σ |c_j|²`.
    pub norm_sq: f64,
}

/// Build the wedge/contraction pair for the covector with coefficients `c`
/// over an orthonormal coframe of size `c.len()`.
pub fn scaled_wedge_pair(c: &[Complex64], q: usize) -> Result<WedgePair> {
    let wedge = weighted_wedge(c, q)?;
    let interior = wedge.adjoint();
    let anti = anticommutator(c, c, q)?;
    let norm_sq = c.iter().map(|z| z.norm_sqr()).sum();
    Ok(WedgePair {
        wedge,
        interior,
        anticommutator: anti,
        norm_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent sign oracle: parity of the permutation sorting the word
    /// `[j, J…]`, counted by explicit inversion counting.
    fn oracle_sign(j: usize, subset: &[usize]) -> Option<f64> {
        if subset.contains(&j) {
            return None;
        }
        let mut word = vec![j];
        word.extend_from_slice(subset);
        let mut inversions = 0usize;
        for a in 0..word.len() {
            for b in (a + 1)..word.len() {
                if word[a] > word[b] {
                    inversions += 1;
                }
            }
        }
        Some(if inversions % 2 == 0 { 1.0 } else { -1.0 })
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(8, 4), 70);
    }

    #[test]
    fn basis_lexicographic_order() {
        let basis = FormBasis::new(4, 2).unwrap();
        let expected: Vec<Vec<usize>> = vec![
            vec![1, 2],
            vec![1, 3],
            vec![1, 4],
            vec![2, 3],
            vec![2, 4],
            vec![3, 4],
        ];
        assert_eq!(basis.subsets(), expected.as_slice());
        assert_eq!(basis.dimension(), 6);
        assert_eq!(basis.position(&[2, 4]), Some(4));
        assert_eq!(basis.position(&[2, 2]), None);
    }

    #[test]
    fn wedge_on_scalars_and_one_forms() {
        // Degree 0 -> 1: wedging the vacuum with e1 produces e1.
        let w1 = wedge_op(1, 2, 0).unwrap();
        assert_eq!(w1.entries()[(0, 0)], c(1.0, 0.0));
        assert_eq!(w1.entries()[(1, 0)], c(0.0, 0.0));

        // Left multiplication: e2 ∧ e1 = -(e1 ∧ e2), and e2 ∧ e2 = 0.
        let w2 = wedge_op(2, 2, 1).unwrap();
        assert_eq!(w2.entries()[(0, 0)], c(-1.0, 0.0));
        assert_eq!(w2.entries()[(0, 1)], c(0.0, 0.0));

        // Size 3 coframe: e2 ∧ e3 = +(e2 ∧ e3) while e2 ∧ e1 = -(e1 ∧ e2).
        let w = wedge_op(2, 3, 1).unwrap();
        let basis1 = FormBasis::new(3, 1).unwrap();
        let basis2 = FormBasis::new(3, 2).unwrap();
        let col3 = basis1.position(&[3]).unwrap();
        let row23 = basis2.position(&[2, 3]).unwrap();
        assert_eq!(w.entries()[(row23, col3)], c(1.0, 0.0));
        let col1 = basis1.position(&[1]).unwrap();
        let row12 = basis2.position(&[1, 2]).unwrap();
        assert_eq!(w.entries()[(row12, col1)], c(-1.0, 0.0));
    }

    #[test]
    fn wedge_matches_permutation_sign_oracle() {
        for m in 1..=4 {
            for q in 0..m {
                let basis_in = FormBasis::new(m, q).unwrap();
                let basis_out = FormBasis::new(m, q + 1).unwrap();
                for j in 1..=m {
                    let op = wedge_op(j, m, q).unwrap();
                    for (col, subset) in basis_in.subsets().iter().enumerate() {
                        for (row, target) in basis_out.subsets().iter().enumerate() {
                            let expected = match oracle_sign(j, subset) {
                                Some(sign) => {
                                    let mut merged = subset.clone();
                                    merged.push(j);
                                    merged.sort_unstable();
                                    if &merged == target {
                                        sign
                                    } else {
                                        0.0
                                    }
                                }
                                None => 0.0,
                            };
                            assert_eq!(
                                op.entries()[(row, col)],
                                c(expected, 0.0),
                                "m={m} q={q} j={j} col={subset:?} row={target:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn interior_contracts_two_forms() {
        // e1 contraction of e1∧e2 leaves e2; e2 contraction leaves -e1.
        let i1 = interior_op(1, 2, 2).unwrap();
        assert_eq!(i1.q_out(), 1);
        assert_eq!(i1.entries()[(0, 0)], c(0.0, 0.0));
        assert_eq!(i1.entries()[(1, 0)], c(1.0, 0.0));
        let i2 = interior_op(2, 2, 2).unwrap();
        assert_eq!(i2.entries()[(0, 0)], c(-1.0, 0.0));
        assert_eq!(i2.entries()[(1, 0)], c(0.0, 0.0));
        assert!(interior_op(1, 2, 0).is_err());
    }

    #[test]
    fn car_relations_exhaustive() {
        // {e_j ∧, e_k ⌟} = δ_jk Id on every degree, for coframes up to size 4.
        for m in 1..=4 {
            for q in 0..=m {
                for j in 1..=m {
                    for k in 1..=m {
                        let mut ej = vec![c(0.0, 0.0); m];
                        ej[j - 1] = c(1.0, 0.0);
                        let mut ek = vec![c(0.0, 0.0); m];
                        ek[k - 1] = c(1.0, 0.0);
                        let anti = anticommutator(&ej, &ek, q).unwrap();
                        let expected = if j == k {
                            FormOperator::identity(m, q)
                        } else {
                            FormOperator::zero(m, q, q)
                        };
                        assert_eq!(
                            anti.entries(),
                            expected.entries(),
                            "m={m} q={q} j={j} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        let p = projection_operator(&[1], 4, 2).unwrap();
        let diag: Vec<f64> = (0..6).map(|i| p.entries()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(p.trace().unwrap(), c(3.0, 0.0));

        let full = projection_operator(&[], 3, 2).unwrap();
        assert_eq!(full.entries(), FormOperator::identity(3, 2).entries());

        assert!(projection_operator(&[1, 1], 3, 1).is_err());
        assert!(projection_operator(&[4], 3, 1).is_err());
    }

    #[test]
    fn projection_idempotent_selfadjoint_trace() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let m = rng.gen_range(1..=5usize);
            let q = rng.gen_range(0..=m);
            let size = rng.gen_range(0..=q.min(m));
            let mut all: Vec<usize> = (1..=m).collect();
            let mut s = Vec::new();
            for _ in 0..size {
                let idx = rng.gen_range(0..all.len());
                s.push(all.remove(idx));
            }
            let p = projection_operator(&s, m, q).unwrap();
            let p2 = p.compose(&p).unwrap();
            assert_eq!(p2.entries(), p.entries());
            assert_eq!(p.adjoint().entries(), p.entries());
            let expected = if s.len() <= q {
                binomial(m - s.len(), q - s.len())
            } else {
                0
            };
            assert_eq!(p.trace().unwrap(), c(expected as f64, 0.0));
        }
    }

    #[test]
    fn weighted_anticommutator_gives_inner_product() {
        let mut rng = StdRng::seed_from_u64(11);
        for m in 1..=3 {
            for q in 0..=m {
                let w: Vec<Complex64> = (0..m)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let pair = scaled_wedge_pair(&w, q.min(m - 1)).unwrap();
                assert!(pair.norm_sq >= 0.0);
                let anti = anticommutator(&w, &w, q).unwrap();
                let norm_sq: f64 = w.iter().map(|z| z.norm_sqr()).sum();
                let expected = FormOperator::identity(m, q).scaled(c(norm_sq, 0.0));
                assert!(
                    anti.approx_eq(&expected, 1e-12),
                    "m={m} q={q} deviation {}",
                    anti.sub(&expected).unwrap().max_abs()
                );
            }
        }
    }

    #[test]
    fn orthogonal_covectors_anticommute_to_zero() {
        // (w|v) = w1 conj(v1) + w2 conj(v2) = 1·(-i) + i·1 = 0.
        let w = vec![c(1.0, 0.0), c(0.0, 1.0)];
        let v = vec![c(0.0, 1.0), c(1.0, 0.0)];
        for q in 0..=2 {
            let anti = anticommutator(&w, &v, q).unwrap();
            assert!(anti.max_abs() <= 1e-15, "q={q}");
        }
    }

    #[test]
    fn unit_normal_pair_halves_identity() {
        // Covector supported on the last coframe slot with coefficient 1/sqrt(2):
        // the anticommutator is (1/2)·Id in every degree.
        let m = 4;
        let mut coeffs = vec![c(0.0, 0.0); m];
        coeffs[m - 1] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for q in 0..m {
            let pair = scaled_wedge_pair(&coeffs, q).unwrap();
            let expected = FormOperator::identity(m, q).scaled_re(0.5);
            assert!(pair.anticommutator.approx_eq(&expected, 1e-15), "q={q}");
            assert!((pair.norm_sq - 0.5).abs() <= 1e-15);
            // The pair really is wedge + its adjoint.
            assert_eq!(pair.interior.entries(), pair.wedge.adjoint().entries());
        }
    }

    #[test]
    fn compose_and_dimension_guards() {
        let w = wedge_op(1, 3, 0).unwrap();
        let i = interior_op(1, 3, 1).unwrap();
        let round = i.compose(&w).unwrap();
        assert_eq!(round.entries(), FormOperator::identity(3, 0).entries());
        assert!(w.compose(&w).is_err());
        assert!(w.add(&i).is_err());
        assert!(w.trace().is_err());
    }

    #[test]
    fn operator_json_roundtrip() {
        let op = wedge_op(2, 3, 1).unwrap();
        let text = serde_json::to_string(&op).unwrap();
        let back: FormOperator = serde_json::from_str(&text).unwrap();
        assert_eq!(back, op);
        // Row-major layout with explicit degrees.
        assert!(text.contains("\"m\":3"));
        assert!(text.contains("\"q_in\":1"));
        assert!(text.contains("\"q_out\":2"));
        let bad = r#"{"m":3,"q_in":1,"q_out":2,"entries":[[1.0,0.0]]}"#;
        assert!(serde_json::from_str::<FormOperator>(bad).is_err());
    }
}
