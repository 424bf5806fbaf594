//! The hyperbolic long-range chain: sinh⁻² hopping kernel, coth-kernel
//! level-1 charges, folded boundary operators and the long-range boundary
//! charges X_κ and G_κ.
//!
//! All builders work in double precision; the kernels are transcendental.

use crate::chain::{ChainSpec, Geometry, Rows, Site};
use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::pauli::{Gen, PauliString};
use crate::xxx::Level1Variant;
use num_complex::Complex64;

pub type OpF = OperatorSum<Complex64>;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Couplings of the long-range model.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct InoParams {
    pub lambda: f64,
    pub kappa: f64,
    pub mu: f64,
}

impl InoParams {
    pub fn new(lambda: f64, kappa: f64, mu: f64) -> Result<Self> {
        if lambda == 0.0 {
            return Err(Error::InvalidParameter("lambda must be nonzero".into()));
        }
        if kappa.is_nan() || kappa <= 0.0 {
            return Err(Error::InvalidParameter("kappa must be positive".into()));
        }
        Ok(InoParams { lambda, kappa, mu })
    }

    pub fn kernels(&self) -> KernelSet {
        KernelSet { kappa: self.kappa }
    }
}

/// Which kernel to evaluate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kernel {
    P,
    W,
    WPrime,
    WDoublePrime,
}

/// The hopping and Yangian kernels at inverse length scale κ:
/// p(z) = sinh²κ / sinh²(κz), w(z) = −coth(κz) (0 at z = 0), and the
/// w = w' + w'' split with w'(z) = e^{−κz}/(e^{−κz}−e^{κz}).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct KernelSet {
    pub kappa: f64,
}

impl KernelSet {
    /// p(z); undefined at z = 0.
    ///
    /// Evaluated as (e^{κ(1−|z|)} (1−e^{−2κ}) / (1−e^{−2κ|z|}))² so large
    /// κ|z| underflows to 0 instead of overflowing sinh.
    pub fn p(&self, z: i64) -> f64 {
        debug_assert!(z != 0, "p kernel evaluated at z = 0");
        let az = z.unsigned_abs() as f64;
        let k = self.kappa;
        let ratio = (k * (1.0 - az)).exp() * (-(-2.0 * k).exp_m1()) / (-(-2.0 * k * az).exp_m1());
        ratio * ratio
    }

    pub fn w(&self, z: i64) -> f64 {
        if z == 0 {
            0.0
        } else {
            -1.0 / (self.kappa * z as f64).tanh()
        }
    }

    /// w'(z) = e^{−κz}/(e^{−κz}−e^{κz}) = 1/(1−e^{2κz}).
    pub fn w_prime(&self, z: i64) -> f64 {
        if z == 0 {
            0.0
        } else {
            -1.0 / (2.0 * self.kappa * z as f64).exp_m1()
        }
    }

    /// w''(z) = e^{κz}/(e^{−κz}−e^{κz}) = 1/(e^{−2κz}−1).
    pub fn w_double_prime(&self, z: i64) -> f64 {
        if z == 0 {
            0.0
        } else {
            1.0 / (-2.0 * self.kappa * z as f64).exp_m1()
        }
    }

    /// Checked evaluation, for the CLI kernel dump.
    pub fn eval(&self, which: Kernel, z: i64) -> Result<f64> {
        match which {
            Kernel::P if z == 0 => Err(Error::InvalidParameter(
                "p kernel is undefined at z = 0".into(),
            )),
            Kernel::P => Ok(self.p(z)),
            Kernel::W => Ok(self.w(z)),
            Kernel::WPrime => Ok(self.w_prime(z)),
            Kernel::WDoublePrime => Ok(self.w_double_prime(z)),
        }
    }

    fn variant(&self, v: Level1Variant) -> impl Fn(i64) -> f64 + '_ {
        move |z| match v {
            Level1Variant::Full => self.w(z),
            Level1Variant::Prime => self.w_prime(z),
            Level1Variant::DoublePrime => self.w_double_prime(z),
        }
    }
}

fn require_single_row(chain: ChainSpec) -> Result<()> {
    if chain.rows != Rows::One {
        return Err(Error::WrongGeometry {
            expected: "a single-row chain",
            got: chain,
        });
    }
    Ok(())
}

fn require_half(chain: ChainSpec) -> Result<()> {
    if chain.geometry != Geometry::HalfLine || chain.rows != Rows::One {
        return Err(Error::WrongGeometry {
            expected: "a single-row half line",
            got: chain,
        });
    }
    Ok(())
}

/// Long-range Hamiltonian −(λ/2) Σ_{i≠j} p(i−j)(σ⁺σ⁻ + σ⁻σ⁺ + ½σᶻσᶻ).
pub fn h_kappa(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    require_single_row(chain)?;
    let k = p.kernels();
    let mut op = OpF::zero(chain);
    let range: Vec<i32> = chain.index_range().collect();
    for &i in &range {
        for &j in &range {
            if i == j {
                continue;
            }
            let c = -0.5 * p.lambda * k.p((i - j) as i64);
            let (si, sj) = (Site::single(i), Site::single(j));
            op.add_term(
                PauliString::from_entries(vec![(si, Gen::Plus), (sj, Gen::Minus)]),
                re(c),
            )?;
            op.add_term(
                PauliString::from_entries(vec![(si, Gen::Minus), (sj, Gen::Plus)]),
                re(c),
            )?;
            op.add_term(
                PauliString::from_entries(vec![(si, Gen::Z), (sj, Gen::Z)]),
                re(0.5 * c),
            )?;
        }
    }
    Ok(op)
}

/// Level-1 charge with the coth kernel (or its w'/w'' half):
/// E±_{κ,1} = ±(λ/2) Σ_{i,j} w(i−j) σ±ᵢσᶻⱼ, Eᶻ_{κ,1} = λ Σ_{i,j} w(i−j) σ⁻ᵢσ⁺ⱼ.
pub fn e1_kappa(chain: ChainSpec, p: &InoParams, a: Gen, variant: Level1Variant) -> Result<OpF> {
    require_single_row(chain)?;
    let kernels = p.kernels();
    let kern = kernels.variant(variant);
    let mut op = OpF::zero(chain);
    let range: Vec<i32> = chain.index_range().collect();
    for &i in &range {
        for &j in &range {
            if i == j {
                continue;
            }
            let w = kern((i - j) as i64);
            let (si, sj) = (Site::single(i), Site::single(j));
            let (entries, c) = match a {
                Gen::Plus => (vec![(si, Gen::Plus), (sj, Gen::Z)], 0.5 * p.lambda * w),
                Gen::Minus => (vec![(si, Gen::Minus), (sj, Gen::Z)], -0.5 * p.lambda * w),
                Gen::Z => (vec![(si, Gen::Minus), (sj, Gen::Plus)], p.lambda * w),
            };
            op.add_term(PauliString::from_entries(entries), re(c))?;
        }
    }
    Ok(op)
}

/// Through-the-boundary hopping (λ/2) Σ_{i≠j≤0} p(i+j−1)(σ⁺σ⁻ + σ⁻σ⁺ + ½σᶻσᶻ).
pub fn h_lo(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    require_half(chain)?;
    let k = p.kernels();
    let mut op = OpF::zero(chain);
    let range: Vec<i32> = chain.index_range().collect();
    for &i in &range {
        for &j in &range {
            if i == j {
                continue;
            }
            let c = 0.5 * p.lambda * k.p((i + j - 1) as i64);
            let (si, sj) = (Site::single(i), Site::single(j));
            op.add_term(
                PauliString::from_entries(vec![(si, Gen::Plus), (sj, Gen::Minus)]),
                re(c),
            )?;
            op.add_term(
                PauliString::from_entries(vec![(si, Gen::Minus), (sj, Gen::Plus)]),
                re(c),
            )?;
            op.add_term(
                PauliString::from_entries(vec![(si, Gen::Z), (sj, Gen::Z)]),
                re(0.5 * c),
            )?;
        }
    }
    Ok(op)
}

/// Long-range magnetic boundary operator
/// −(λ/2) Σ_{i≠j≤0} p(i+j−1) σᶻσᶻ + μ Σ_{i≤0} p(2i−1) σᶻᵢ.
pub fn m_mu(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    require_half(chain)?;
    let k = p.kernels();
    let mut op = OpF::zero(chain);
    let range: Vec<i32> = chain.index_range().collect();
    for &i in &range {
        for &j in &range {
            if i == j {
                continue;
            }
            let c = -0.5 * p.lambda * k.p((i + j - 1) as i64);
            op.add_term(
                PauliString::from_entries(vec![
                    (Site::single(i), Gen::Z),
                    (Site::single(j), Gen::Z),
                ]),
                re(c),
            )?;
        }
        op.add_term(
            PauliString::single(Site::single(i), Gen::Z),
            re(p.mu * k.p((2 * i - 1) as i64)),
        )?;
    }
    Ok(op)
}

/// Full magnetic Hamiltonian H⁻_κ + H^lo_κ + M^μ_κ.
pub fn h_magnetic_kappa(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    let h = h_kappa(chain, p)?;
    h.add(&h_lo(chain, p)?)?.add(&m_mu(chain, p)?)
}

/// Open-boundary Hamiltonian H⁻_κ − H^lo_κ.
///
/// The sign of the through-the-boundary hopping depends on the boundary: the
/// magnetic table (k(0,±) = −1) folds the bulk onto +H^lo, the all-ones table
/// onto −H^lo. The open-boundary charges G_κ commute with this operator up to
/// far-edge terms; with +H^lo a near-boundary residual of order e^{−2κ}
/// survives.
pub fn h_open_kappa(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    h_kappa(chain, p)?.sub(&h_lo(chain, p)?)
}

/// Boundary charge candidate for arbitrary μ ≠ 0:
/// (E±_{κ,1})⁻ ± (λ/2) Σ_{i≠j≤0} w(i+j−1) σ±σᶻ ∓ (λ²/2μ) Σ_{i≤0} w(2i−1) σ±ᵢ.
pub fn x_kappa_candidate(chain: ChainSpec, p: &InoParams, a: Gen) -> Result<OpF> {
    require_half(chain)?;
    if p.mu == 0.0 {
        return Err(Error::InvalidParameter("x_kappa needs mu != 0".into()));
    }
    let sign = match a {
        Gen::Plus => 1.0,
        Gen::Minus => -1.0,
        Gen::Z => {
            return Err(Error::InvalidParameter(
                "the X charges carry only ± components".into(),
            ))
        }
    };
    let k = p.kernels();
    let mut op = e1_kappa(chain, p, a, Level1Variant::Full)?;
    let range: Vec<i32> = chain.index_range().collect();
    for &i in &range {
        for &j in &range {
            if i == j {
                continue;
            }
            let c = sign * 0.5 * p.lambda * k.w((i + j - 1) as i64);
            op.add_term(
                PauliString::from_entries(vec![(Site::single(i), a), (Site::single(j), Gen::Z)]),
                re(c),
            )?;
        }
        let c = -sign * 0.5 * p.lambda * p.lambda / p.mu * k.w((2 * i - 1) as i64);
        op.add_term(PauliString::single(Site::single(i), a), re(c))?;
    }
    Ok(op)
}

/// Boundary charge X±_κ; defined only at the integrable points μ = ±λ.
pub fn x_kappa(chain: ChainSpec, p: &InoParams, a: Gen) -> Result<OpF> {
    if p.mu != p.lambda && p.mu != -p.lambda {
        return Err(Error::InvalidParameter(format!(
            "x_kappa requires mu = ±lambda (got mu = {}, lambda = {})",
            p.mu, p.lambda
        )));
    }
    x_kappa_candidate(chain, p, a)
}

/// Level-2 charge from the coth-kernel level-1 charges.
pub fn e2_kappa(chain: ChainSpec, p: &InoParams, a: Gen) -> Result<OpF> {
    require_single_row(chain)?;
    match a {
        Gen::Z => {
            let ep = e1_kappa(chain, p, Gen::Plus, Level1Variant::Full)?;
            let em = e1_kappa(chain, p, Gen::Minus, Level1Variant::Full)?;
            ep.commutator(&em)
        }
        Gen::Plus | Gen::Minus => {
            let ez = e1_kappa(chain, p, Gen::Z, Level1Variant::Full)?;
            let ea = e1_kappa(chain, p, a, Level1Variant::Full)?;
            let half = if a == Gen::Plus { 0.5 } else { -0.5 };
            Ok(ez.commutator(&ea)?.scale(&re(half)))
        }
    }
}

fn e0f(chain: ChainSpec, a: Gen) -> Result<OpF> {
    crate::xxx::e0::<Complex64>(chain, a)
}

/// Long-range analogue of the corrected level-2 charge Ẽ2ᵃ.
pub fn e2_tilde_kappa(chain: ChainSpec, p: &InoParams, a: Gen) -> Result<OpF> {
    require_single_row(chain)?;
    let base = e2_kappa(chain, p, a)?;
    let lam2 = p.lambda * p.lambda;
    let zp = e1_kappa(chain, p, Gen::Z, Level1Variant::Prime)?;
    let zpp = e1_kappa(chain, p, Gen::Z, Level1Variant::DoublePrime)?;
    match a {
        Gen::Plus => {
            let pp = e1_kappa(chain, p, Gen::Plus, Level1Variant::Prime)?;
            let ppp = e1_kappa(chain, p, Gen::Plus, Level1Variant::DoublePrime)?;
            let bracket = zp
                .commutator(&ppp)?
                .add(&zpp.commutator(&pp)?)?
                .scale(&re(1.0 / 3.0));
            let ep = e0f(chain, Gen::Plus)?;
            let em = e0f(chain, Gen::Minus)?;
            let cubic = ep
                .multiply(&em)?
                .multiply(&ep)?
                .sub(&ep.scale(&re(2.25)))?
                .scale(&re(lam2 / 3.0));
            base.add(&bracket)?.add(&cubic)
        }
        Gen::Minus => {
            let mp = e1_kappa(chain, p, Gen::Minus, Level1Variant::Prime)?;
            let mpp = e1_kappa(chain, p, Gen::Minus, Level1Variant::DoublePrime)?;
            let bracket = zp
                .commutator(&mp)?
                .add(&zpp.commutator(&mpp)?)?
                .scale(&re(-1.0 / 3.0));
            let ep = e0f(chain, Gen::Plus)?;
            let em = e0f(chain, Gen::Minus)?;
            let cubic = em
                .multiply(&ep)?
                .multiply(&em)?
                .sub(&em.scale(&re(2.25)))?
                .scale(&re(lam2 / 3.0));
            base.add(&bracket)?.add(&cubic)
        }
        Gen::Z => {
            let pp = e1_kappa(chain, p, Gen::Plus, Level1Variant::Prime)?;
            let mp = e1_kappa(chain, p, Gen::Minus, Level1Variant::Prime)?;
            let ppp = e1_kappa(chain, p, Gen::Plus, Level1Variant::DoublePrime)?;
            let mpp = e1_kappa(chain, p, Gen::Minus, Level1Variant::DoublePrime)?;
            let bracket = pp
                .commutator(&mp)?
                .add(&ppp.commutator(&mpp)?)?
                .scale(&re(2.0 / 3.0));
            let ez = e0f(chain, Gen::Z)?;
            let cubic = ez
                .multiply(&ez)?
                .multiply(&ez)?
                .sub(&ez.scale(&re(3.5)))?
                .scale(&re(lam2 / 6.0));
            base.add(&bracket)?.add(&cubic)
        }
    }
}

/// Three-index weight of the folded level-2 charge's 3-site part.
pub fn a_ijk(k: &KernelSet, i: i64, j: i64, kk: i64) -> f64 {
    let w = |z| k.w(z);
    2.0 - w(i - j) * (w(j - kk) + w(i + kk - 1) - w(i - kk) - w(j + kk - 1))
        - w(i + j - 1) * (w(i - kk) + w(j - kk) + w(i + kk - 1) + w(j + kk - 1))
}

/// Pair weight entering the one-site part of the folded level-2 charge.
pub fn b_pair(k: &KernelSet, i: i64, j: i64) -> f64 {
    let w = |z| k.w(z);
    0.5 + w(i - j) * w(i - j) - w(i + j - 1) * w(i + j - 1) + w(i - j) * w(i + j - 1)
        - 0.25 * (w(i - j) - w(i + j - 1)) * w(1 - 2 * j)
        - 0.75 * (w(i - j) + w(i + j - 1)) * w(1 - 2 * i)
}

/// One-site weight β_i = Σ_{j≤0} b(i,j) − ½ − ½w(1−2i)².
pub fn beta(k: &KernelSet, chain: ChainSpec, i: i64) -> f64 {
    let mut s = -0.5 - 0.5 * k.w(1 - 2 * i) * k.w(1 - 2 * i);
    for j in chain.index_range() {
        s += b_pair(k, i, j as i64);
    }
    s
}

/// Open-boundary charge Gᵃ_κ, built directly from its explicit kernel sums:
/// (3/8)[(16/3)(E2ᵃ_κ)⁻ + (λ²/3) Σ_{i,j,k distinct} a_ijk (σᶻσᶻσᵃ + 4σ⁺σ⁻σᵃ)
/// + (2λ²/3) Σ_i β_i σᵃᵢ]. Must agree with (3/8)·fold(Ẽ2ᵃ_κ).
pub fn g_kappa(chain: ChainSpec, p: &InoParams, a: Gen) -> Result<OpF> {
    require_half(chain)?;
    let kernels = p.kernels();
    let lam2 = p.lambda * p.lambda;
    let mut op = e2_kappa(chain, p, a)?.scale(&re(16.0 / 3.0));
    let range: Vec<i32> = chain.index_range().collect();
    // 3-site part; same-index triples reduce on the fly via multiply.
    let mut three = OpF::zero(chain);
    for &i in &range {
        for &j in &range {
            if j == i {
                continue;
            }
            for &kk in &range {
                if kk == i || kk == j {
                    continue;
                }
                let cw = a_ijk(&kernels, i as i64, j as i64, kk as i64);
                three.add_term(
                    PauliString::from_entries(vec![
                        (Site::single(i), Gen::Z),
                        (Site::single(j), Gen::Z),
                        (Site::single(kk), a),
                    ]),
                    re(cw),
                )?;
                three.add_term(
                    PauliString::from_entries(vec![
                        (Site::single(i), Gen::Plus),
                        (Site::single(j), Gen::Minus),
                        (Site::single(kk), a),
                    ]),
                    re(4.0 * cw),
                )?;
            }
        }
    }
    op = op.add(&three.scale(&re(lam2 / 3.0)))?;
    for &i in &range {
        op.add_term(
            PauliString::single(Site::single(i), a),
            re(2.0 * lam2 / 3.0 * beta(&kernels, chain, i as i64)),
        )?;
    }
    Ok(op.scale(&re(3.0 / 8.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::max_abs_diff;
    use crate::scalar::{Exact, Scalar};
    use crate::xxx::{self, XxxParams};

    fn pars(lambda: f64, kappa: f64, mu: f64) -> InoParams {
        InoParams::new(lambda, kappa, mu).unwrap()
    }

    #[test]
    fn kernel_values() {
        let k = KernelSet { kappa: 1.0 };
        assert!((k.p(1) - 1.0).abs() < 1e-15);
        // sinh²(1)/sinh²(2), frozen from direct evaluation
        assert!((k.p(2) - 0.104_993_585_403_506_5).abs() < 1e-14);
        assert!((k.w(3) + k.w(-3)).abs() < 1e-15);
        for z in [-4i64, -1, 1, 2, 5] {
            assert!((k.w_prime(z) + k.w_double_prime(z) - k.w(z)).abs() < 1e-14);
            // p(z) = sinh²κ (coth²(κz) − 1)
            let coth = 1.0 / (1.0f64 * z as f64).tanh();
            let p_alt = 1.0f64.sinh().powi(2) * (coth * coth - 1.0);
            assert!((k.p(z) - p_alt).abs() < 1e-12);
        }
        assert!(k.eval(Kernel::P, 0).is_err());
        assert!(k.eval(Kernel::W, 0).unwrap() == 0.0);

        // stable at arguments where sinh/exp would overflow
        let big = KernelSet { kappa: 100.0 };
        assert_eq!(big.p(400), 0.0);
        assert!((big.w_prime(-400) - 1.0).abs() < 1e-15);
        assert!((big.w_double_prime(400) + 1.0).abs() < 1e-15);
        assert!(big.w_double_prime(-400).abs() < 1e-15);
        assert!(big.p(7).is_finite());
    }

    #[test]
    fn xxx_limit_of_bulk_operators() {
        let p = pars(1.0, 20.0, 0.0);
        let xp = XxxParams::new(Exact::from_int(1), Exact::from_int(0)).unwrap();
        let chain = ChainSpec::full(3);
        let h = h_kappa(chain, &p).unwrap();
        let h_nn = xxx::h_xxx(chain, &xp).unwrap().to_float();
        assert!(max_abs_diff(&h, &h_nn).unwrap() < 1e-12);
        for a in Gen::ALL {
            for v in [
                Level1Variant::Full,
                Level1Variant::Prime,
                Level1Variant::DoublePrime,
            ] {
                let lr = e1_kappa(chain, &p, a, v).unwrap();
                let nn = xxx::e1(chain, &xp, a, v).unwrap().to_float();
                assert!(max_abs_diff(&lr, &nn).unwrap() < 1e-9, "a={a:?} v={v:?}");
            }
        }
    }

    #[test]
    fn bulk_lie_symmetry() {
        let p = pars(1.0, 1.0, 0.0);
        let chain = ChainSpec::full(3);
        let h = h_kappa(chain, &p).unwrap();
        for a in Gen::ALL {
            let e = xxx::e0::<Complex64>(chain, a).unwrap();
            assert!(h.commutator(&e).unwrap().max_abs() < 1e-13);
        }
        assert!(max_abs_diff(&h.adjoint(), &h).unwrap() < 1e-15);
    }

    #[test]
    fn boundary_operators_vanish_in_nn_limit() {
        let chain = ChainSpec::half(3);
        let p = pars(1.0, 20.0, 1.0);
        assert!(h_lo(chain, &p).unwrap().max_abs() < 1e-12);
        let m = m_mu(chain, &p).unwrap();
        let mut sz0 = OpF::zero(chain);
        sz0.add_term(PauliString::single(Site::single(0), Gen::Z), re(1.0))
            .unwrap();
        assert!(max_abs_diff(&m, &sz0).unwrap() < 1e-12);
    }

    #[test]
    fn m_mu_site_coefficients() {
        let chain = ChainSpec::half(3);
        let p = pars(1.0, 1.0, 1.0);
        let m = m_mu(chain, &p).unwrap();
        let at = |i: i32| {
            m.coeff(&PauliString::single(Site::single(i), Gen::Z))
                .map(|c| c.re)
                .unwrap_or(0.0)
        };
        assert!((at(0) - 1.0).abs() < 1e-15); // μ·p(−1) = μ
                                              // μ·p(−3) = sinh²(1)/sinh²(3), frozen from direct evaluation
        assert!((at(-1) - 0.013_761_736_476_765_69).abs() < 1e-14);
    }

    #[test]
    fn h_lo_boundary_hopping_coefficient() {
        let chain = ChainSpec::half(3);
        let p = pars(1.0, 1.0, 0.0);
        let lo = h_lo(chain, &p).unwrap();
        let c = lo
            .coeff(&PauliString::from_entries(vec![
                (Site::single(-1), Gen::Plus),
                (Site::single(0), Gen::Minus),
            ]))
            .unwrap();
        // Both orderings of the (−1, 0) pair land on this string: the
        // canonical coefficient is 2·(λ/2)·p(−2) = sinh²(1)/sinh²(2).
        assert!((c.re - 0.104_993_585_403_506_5).abs() < 1e-14);
    }

    #[test]
    fn x_kappa_gate_and_limit() {
        let half = ChainSpec::half(3);
        assert!(x_kappa(half, &pars(1.0, 1.0, 0.6), Gen::Plus).is_err());
        assert!(x_kappa(half, &pars(1.0, 1.0, 1.0), Gen::Plus).is_ok());
        assert!(x_kappa_candidate(half, &pars(1.0, 1.0, 0.0), Gen::Plus).is_err());
        // κ→∞: candidate at generic μ matches the nearest-neighbour X
        let p = pars(1.0, 20.0, 1.5);
        let xp = XxxParams::new(Exact::from_int(1), Exact::ratio(3, 2)).unwrap();
        for a in [Gen::Plus, Gen::Minus] {
            let lr = x_kappa_candidate(half, &p, a).unwrap();
            let nn = xxx::x(half, &xp, a, Level1Variant::Full)
                .unwrap()
                .to_float();
            assert!(max_abs_diff(&lr, &nn).unwrap() < 1e-9);
        }
    }

    #[test]
    fn ladder_automorphism_maps_x_plus_to_x_minus() {
        // θ: σ± → σ∓, σz → −σz sends X±_κ(μ) to X∓_κ(−μ).
        let half = ChainSpec::half(3);
        let p = pars(1.0, 1.0, 1.0);
        let p_neg = pars(1.0, 1.0, -1.0);
        let xp = x_kappa(half, &p, Gen::Plus).unwrap();
        let xm = x_kappa(half, &p_neg, Gen::Minus).unwrap();
        let mut mapped = OpF::zero(half);
        for (s, c) in xp.terms() {
            let mut sign = 1.0;
            let entries = s
                .entries()
                .iter()
                .map(|&(site, g)| {
                    let ng = match g {
                        Gen::Plus => Gen::Minus,
                        Gen::Minus => Gen::Plus,
                        Gen::Z => {
                            sign = -sign;
                            Gen::Z
                        }
                    };
                    (site, ng)
                })
                .collect();
            mapped
                .add_term(PauliString::from_entries(entries), c * re(sign))
                .unwrap();
        }
        assert!(max_abs_diff(&mapped, &xm).unwrap() < 1e-14);
    }

    #[test]
    fn g_kappa_limit_is_nn_charge() {
        let half = ChainSpec::half(3);
        let p = pars(1.0, 20.0, 0.0);
        let xp = XxxParams::new(Exact::from_int(1), Exact::from_int(0)).unwrap();
        for a in Gen::ALL {
            let lr = g_kappa(half, &p, a).unwrap();
            let nn = xxx::g(half, &xp, a).unwrap().to_float();
            assert!(max_abs_diff(&lr, &nn).unwrap() < 1e-8, "a={a:?}");
        }
    }

    #[test]
    fn e2_tilde_kappa_limit() {
        let chain = ChainSpec::full(3);
        let p = pars(1.0, 20.0, 0.0);
        let xp = XxxParams::new(Exact::from_int(1), Exact::from_int(0)).unwrap();
        for a in Gen::ALL {
            let lr = e2_tilde_kappa(chain, &p, a).unwrap();
            let nn = xxx::e2_tilde(chain, &xp, a).unwrap().to_float();
            assert!(max_abs_diff(&lr, &nn).unwrap() < 1e-8, "a={a:?}");
        }
    }
}
