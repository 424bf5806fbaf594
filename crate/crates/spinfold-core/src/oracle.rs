//! Dense Kronecker-product backend for brute-force cross-checks.
//!
//! Every operator sum can be rendered as an explicit matrix on the full
//! tensor-product space (basis ordered ↑ before ↓ per site, slot order = the
//! canonical site order). Intended for small chains only; the default cap is
//! 14 sites.

use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::pauli::{Gen, PauliString};
use crate::scalar::Scalar;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hard cap on tensor-product sites accepted by [`to_matrix`].
pub const DEFAULT_SITE_CAP: usize = 14;

/// A dense complex matrix over the chain's full state space.
#[derive(Clone, Debug)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
    /// Canonical slot order used to build the Kronecker layout.
    pub slots: Vec<crate::chain::Site>,
}

impl DenseOperator {
    pub fn zeros(dim: usize, slots: Vec<crate::chain::Site>) -> Self {
        DenseOperator {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
            slots,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn at_mut(&mut self, row: usize, col: usize) -> &mut Complex64 {
        &mut self.data[row * self.dim + col]
    }

    pub fn matmul(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = DenseOperator::zeros(n, self.slots.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    *out.at_mut(i, j) += a * rhs.at(k, j);
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        out
    }

    pub fn conj_transpose(&self) -> DenseOperator {
        let n = self.dim;
        let mut out = DenseOperator::zeros(n, self.slots.clone());
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of a hermitian matrix via cyclic complex Jacobi sweeps.
    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        let n = self.dim;
        let mut m = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        for _sweep in 0..100 {
            let mut off = 0.0;
            for i in 0..n {
                for j in (i + 1)..n {
                    off += m[idx(i, j)].norm_sqr();
                }
            }
            if off < 1e-24 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = m[idx(p, q)];
                    if apq.norm() < 1e-18 {
                        continue;
                    }
                    let app = m[idx(p, p)].re;
                    let aqq = m[idx(q, q)].re;
                    // Unitary 2x2 rotation zeroing the (p,q) element.
                    let phase = apq / apq.norm();
                    let theta = 0.5 * (2.0 * apq.norm()).atan2(aqq - app);
                    let (c, s) = (theta.cos(), theta.sin());
                    let s_ph = phase * s;
                    for k in 0..n {
                        let mkp = m[idx(k, p)];
                        let mkq = m[idx(k, q)];
                        m[idx(k, p)] = mkp * c - mkq * s_ph.conj();
                        m[idx(k, q)] = mkp * s_ph + mkq * c;
                    }
                    for k in 0..n {
                        let mpk = m[idx(p, k)];
                        let mqk = m[idx(q, k)];
                        m[idx(p, k)] = mpk * c - mqk * s_ph;
                        m[idx(q, k)] = mpk * s_ph.conj() + mqk * c;
                    }
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|i| m[idx(i, i)].re).collect();
        eig.sort_by(f64::total_cmp);
        eig
    }

    /// Fixed-width ASCII dump; intended for dimension ≤ 16.
    pub fn ascii_dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let c = self.at(i, j);
                    format!("({:>7.3},{:>7.3})", c.re, c.im)
                })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Action of a generator on a basis state (0 = ↑, 1 = ↓):
/// returns (out_state_bit, amplitude) or None when annihilated.
fn gen_action(g: Gen, bit: u8) -> Option<(u8, f64)> {
    match (g, bit) {
        (Gen::Plus, 1) => Some((0, 1.0)),
        (Gen::Plus, 0) => None,
        (Gen::Minus, 0) => Some((1, 1.0)),
        (Gen::Minus, 1) => None,
        (Gen::Z, 0) => Some((0, 1.0)),
        (Gen::Z, 1) => Some((1, -1.0)),
        _ => unreachable!(),
    }
}

/// Render an operator as a dense matrix. Fails above `DEFAULT_SITE_CAP` sites.
pub fn to_matrix<S: Scalar>(op: &OperatorSum<S>) -> Result<DenseOperator> {
    to_matrix_capped(op, DEFAULT_SITE_CAP)
}

pub fn to_matrix_capped<S: Scalar>(op: &OperatorSum<S>, cap: usize) -> Result<DenseOperator> {
    let slots = op.chain().sites();
    if slots.len() > cap {
        return Err(Error::MatrixCapExceeded {
            slots: slots.len(),
            cap,
        });
    }
    let n_slots = slots.len();
    let dim = 1usize << n_slots;
    let slot_of = |site: crate::chain::Site| slots.binary_search(&site).expect("site in chain");
    let mut m = DenseOperator::zeros(dim, slots.clone());
    for (string, coeff) in op.terms() {
        let (re, im) = coeff.approx();
        let c = Complex64::new(re, im);
        // Strings are 1-sparse per column: walk the basis.
        'col: for col in 0..dim {
            let mut row = col;
            let mut amp = 1.0;
            for &(site, g) in string.entries() {
                let slot = slot_of(site);
                let shift = n_slots - 1 - slot;
                let bit = ((col >> shift) & 1) as u8;
                match gen_action(g, bit) {
                    None => continue 'col,
                    Some((nb, a)) => {
                        amp *= a;
                        row = (row & !(1 << shift)) | ((nb as usize) << shift);
                    }
                }
            }
            *m.at_mut(row, col) += c * amp;
        }
    }
    Ok(m)
}

/// Reproducible pseudo-random operator for property tests.
pub fn random_operator(
    chain: ChainSpec,
    seed: u64,
    n_terms: usize,
    max_support: usize,
) -> OperatorSum<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sites = chain.sites();
    let mut op = OperatorSum::zero(chain);
    for _ in 0..n_terms {
        let support = rng.gen_range(1..=max_support.min(sites.len()));
        let chosen: Vec<_> = sites.choose_multiple(&mut rng, support).copied().collect();
        let entries: Vec<_> = chosen
            .into_iter()
            .map(|s| {
                (
                    s,
                    *[Gen::Plus, Gen::Minus, Gen::Z].choose(&mut rng).unwrap(),
                )
            })
            .collect();
        let coeff = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        op.add_term(PauliString::from_entries(entries), coeff)
            .unwrap();
    }
    op
}

/// Exact-field variant with small integer coefficients.
pub fn random_operator_exact(
    chain: ChainSpec,
    seed: u64,
    n_terms: usize,
    max_support: usize,
) -> OperatorSum<crate::scalar::Exact> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sites = chain.sites();
    let mut op = OperatorSum::zero(chain);
    for _ in 0..n_terms {
        let support = rng.gen_range(1..=max_support.min(sites.len()));
        let chosen: Vec<_> = sites.choose_multiple(&mut rng, support).copied().collect();
        let entries: Vec<_> = chosen
            .into_iter()
            .map(|s| {
                (
                    s,
                    *[Gen::Plus, Gen::Minus, Gen::Z].choose(&mut rng).unwrap(),
                )
            })
            .collect();
        let coeff = crate::scalar::Exact::ratio(rng.gen_range(-6i64..=6), rng.gen_range(1i64..=4));
        op.add_term(PauliString::from_entries(entries), coeff)
            .unwrap();
    }
    op
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleOp {
    Product,
    Commutator,
}

/// Max |entry| difference between the symbolic result rendered densely and the
/// same operation done on dense matrices.
pub fn oracle_equiv<S: Scalar>(
    a: &OperatorSum<S>,
    b: &OperatorSum<S>,
    op: OracleOp,
) -> Result<f64> {
    let symbolic = match op {
        OracleOp::Product => a.multiply(b)?,
        OracleOp::Commutator => a.commutator(b)?,
    };
    let ma = to_matrix(a)?;
    let mb = to_matrix(b)?;
    let dense = match op {
        OracleOp::Product => ma.matmul(&mb),
        OracleOp::Commutator => ma.matmul(&mb).sub(&mb.matmul(&ma)),
    };
    Ok(to_matrix(&symbolic)?.sub(&dense).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainSpec, Site};
    use crate::scalar::Exact;

    #[test]
    fn single_site_matrices() {
        let chain =
            ChainSpec::new(1, crate::chain::Geometry::HalfLine, crate::chain::Rows::One).unwrap(); // one site (index 0)
        let z = OperatorSum::from_terms(
            chain,
            vec![(
                PauliString::single(Site::single(0), Gen::Z),
                Exact::from_int(1),
            )],
        )
        .unwrap();
        let m = to_matrix(&z).unwrap();
        assert_eq!(m.at(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(m.at(1, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(m.at(0, 1), Complex64::new(0.0, 0.0));

        // σ+σ- = diag(1,0)
        let p = OperatorSum::from_terms(
            chain,
            vec![(
                PauliString::single(Site::single(0), Gen::Plus),
                Exact::from_int(1),
            )],
        )
        .unwrap();
        let mi = OperatorSum::from_terms(
            chain,
            vec![(
                PauliString::single(Site::single(0), Gen::Minus),
                Exact::from_int(1),
            )],
        )
        .unwrap();
        let pm = to_matrix(&p.multiply(&mi).unwrap()).unwrap();
        assert_eq!(pm.at(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(pm.at(1, 1), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn random_operator_is_reproducible() {
        let chain = ChainSpec::full(3);
        let a = random_operator(chain, 42, 5, 3);
        let b = random_operator(chain, 42, 5, 3);
        assert_eq!(a, b);
        assert!(a.n_terms() <= 5);
        assert!(a.terms().all(|(s, _)| s.len() <= 3));
        let c = random_operator(chain, 43, 5, 3);
        assert_ne!(a, c);
    }

    #[test]
    fn oracle_identity_product() {
        let chain = ChainSpec::full(2);
        let a = random_operator(chain, 7, 6, 3);
        let id = OperatorSum::identity(chain);
        assert!(oracle_equiv(&a, &id, OracleOp::Product).unwrap() < 1e-15);
    }

    #[test]
    fn cap_is_enforced() {
        let chain = ChainSpec::full_two_row(4); // 16 slots
        let op = OperatorSum::<Exact>::identity(chain);
        assert!(matches!(
            to_matrix(&op),
            Err(Error::MatrixCapExceeded { .. })
        ));
    }

    #[test]
    fn jacobi_eigenvalues_of_sigma_z_pair() {
        let chain = ChainSpec::full(1); // sites 0,1
        let mut op = OperatorSum::<Exact>::zero(chain);
        op.add_term(
            PauliString::from_entries(vec![
                (Site::single(0), Gen::Plus),
                (Site::single(1), Gen::Minus),
            ]),
            Exact::from_int(1),
        )
        .unwrap();
        op.add_term(
            PauliString::from_entries(vec![
                (Site::single(0), Gen::Minus),
                (Site::single(1), Gen::Plus),
            ]),
            Exact::from_int(1),
        )
        .unwrap();
        // σ+σ- + σ-σ+ on two sites has eigenvalues {-1, 0, 0, 1}
        let eig = to_matrix(&op).unwrap().eigenvalues_hermitian();
        let expect = [-1.0, 0.0, 0.0, 1.0];
        for (a, b) in eig.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{eig:?}");
        }
    }
}
