//! Operator builders for the nearest-neighbour chain: bulk Hamiltonian, Lie
//! and level-1/level-2 nonlocal charges, boundary Hamiltonians and the
//! boundary charges X and G.
//!
//! Level-1 z-components are built as E1'ᶻ = λ Σ_{i<j} σ⁻ᵢσ⁺ⱼ and
//! E1''ᶻ = −λ Σ_{i<j} σ⁺ᵢσ⁻ⱼ. This is the convention under which the level-1
//! charges close the Yangian relations together with E0, fold consistently
//! with the boundary charges, and arise as limits of the long-range kernels.

use crate::chain::{ChainSpec, Geometry, Rows, Site};
use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::pauli::{Gen, PauliString};
use crate::scalar::Scalar;

/// Couplings of the nearest-neighbour model: bulk coupling λ and boundary
/// field strength μ (0 for bulk/open settings).
#[derive(Clone, PartialEq, Debug)]
pub struct XxxParams<S: Scalar> {
    pub lambda: S,
    pub mu: S,
}

impl<S: Scalar> XxxParams<S> {
    pub fn new(lambda: S, mu: S) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidParameter("lambda must be nonzero".into()));
        }
        Ok(XxxParams { lambda, mu })
    }

    fn require_mu(&self) -> Result<&S> {
        if self.mu.is_zero() {
            return Err(Error::InvalidParameter(
                "this operator is undefined at mu = 0 (the open boundary uses the G charges)"
                    .into(),
            ));
        }
        Ok(&self.mu)
    }
}

/// Which piece of a level-1 charge to build.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Level1Variant {
    Full,
    Prime,
    DoublePrime,
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

/// Lie generator E0ᵃ = Σᵢ σᵃᵢ.
pub fn e0<S: Scalar>(chain: ChainSpec, a: Gen) -> Result<OperatorSum<S>> {
    require_single_row(chain)?;
    let mut op = OperatorSum::zero(chain);
    for i in chain.index_range() {
        op.add_term(PauliString::single(Site::single(i), a), S::one())?;
    }
    Ok(op)
}

/// Bulk Hamiltonian −λ Σ (σ⁺ᵢσ⁻ᵢ₊₁ + σ⁻ᵢσ⁺ᵢ₊₁ + ½σᶻᵢσᶻᵢ₊₁) over in-range links.
pub fn h_xxx<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>) -> Result<OperatorSum<S>> {
    require_single_row(chain)?;
    if chain.l < 2 {
        return Err(Error::InvalidParameter("h_xxx needs L >= 2".into()));
    }
    let mut op = OperatorSum::zero(chain);
    let neg_lambda = p.lambda.neg();
    let neg_half_lambda = neg_lambda.mul(&S::from_ratio(1, 2));
    for i in chain.index_range() {
        if i + 1 > chain.max_index() {
            break;
        }
        let (s0, s1) = (Site::single(i), Site::single(i + 1));
        op.add_term(
            PauliString::from_entries(vec![(s0, Gen::Plus), (s1, Gen::Minus)]),
            neg_lambda.clone(),
        )?;
        op.add_term(
            PauliString::from_entries(vec![(s0, Gen::Minus), (s1, Gen::Plus)]),
            neg_lambda.clone(),
        )?;
        op.add_term(
            PauliString::from_entries(vec![(s0, Gen::Z), (s1, Gen::Z)]),
            neg_half_lambda.clone(),
        )?;
    }
    Ok(op)
}

/// Level-1 charge E1ᵃ (or its primed / double-primed half).
pub fn e1<S: Scalar>(
    chain: ChainSpec,
    p: &XxxParams<S>,
    a: Gen,
    variant: Level1Variant,
) -> Result<OperatorSum<S>> {
    require_single_row(chain)?;
    if variant == Level1Variant::Full {
        let prime = e1(chain, p, a, Level1Variant::Prime)?;
        let dprime = e1(chain, p, a, Level1Variant::DoublePrime)?;
        return prime.add(&dprime);
    }
    let mut op = OperatorSum::zero(chain);
    let half = S::from_ratio(1, 2);
    let range: Vec<i32> = chain.index_range().collect();
    for (ii, &i) in range.iter().enumerate() {
        for &j in &range[ii + 1..] {
            let (si, sj) = (Site::single(i), Site::single(j));
            let (pair, coeff) = match (variant, a) {
                (Level1Variant::Prime, Gen::Plus) => {
                    (vec![(si, Gen::Plus), (sj, Gen::Z)], p.lambda.mul(&half))
                }
                (Level1Variant::Prime, Gen::Minus) => (
                    vec![(si, Gen::Minus), (sj, Gen::Z)],
                    p.lambda.mul(&half).neg(),
                ),
                (Level1Variant::Prime, Gen::Z) => {
                    (vec![(si, Gen::Minus), (sj, Gen::Plus)], p.lambda.clone())
                }
                (Level1Variant::DoublePrime, Gen::Plus) => (
                    vec![(si, Gen::Z), (sj, Gen::Plus)],
                    p.lambda.mul(&half).neg(),
                ),
                (Level1Variant::DoublePrime, Gen::Minus) => {
                    (vec![(si, Gen::Z), (sj, Gen::Minus)], p.lambda.mul(&half))
                }
                (Level1Variant::DoublePrime, Gen::Z) => {
                    (vec![(si, Gen::Plus), (sj, Gen::Minus)], p.lambda.neg())
                }
                (Level1Variant::Full, _) => unreachable!(),
            };
            op.add_term(PauliString::from_entries(pair), coeff)?;
        }
    }
    Ok(op)
}

/// Half-line Hamiltonian with boundary field: H⁻ + μσᶻ₀.
pub fn h_magnetic<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>) -> Result<OperatorSum<S>> {
    require_half(chain)?;
    let mut op = h_xxx(chain, p)?;
    op.add_term(PauliString::single(Site::single(0), Gen::Z), p.mu.clone())?;
    Ok(op)
}

/// Boundary charge Xᵃ of the magnetic chain (or its primed pieces).
/// Undefined at μ = 0.
pub fn x<S: Scalar>(
    chain: ChainSpec,
    p: &XxxParams<S>,
    a: Gen,
    variant: Level1Variant,
) -> Result<OperatorSum<S>> {
    require_half(chain)?;
    let mu = p.require_mu()?.clone();
    let sign = match a {
        Gen::Plus => S::one(),
        Gen::Minus => S::from_int(-1),
        Gen::Z => {
            return Err(Error::InvalidParameter(
                "the X charges carry only ± components".into(),
            ))
        }
    };
    let half_lambda = p.lambda.mul(&S::from_ratio(1, 2));
    let lam_over_mu = p.lambda.div(&mu);
    let e0a = e0::<S>(chain, a)?;
    match variant {
        Level1Variant::Full => {
            // (E1±)⁻ ± (λ/2)(E0±)(E0z) + (λ/2)(1 ∓ λ/μ)(E0±)
            let t1 = e1(chain, p, a, Level1Variant::Full)?;
            let t2 = e0a
                .multiply(&e0::<S>(chain, Gen::Z)?)?
                .scale(&half_lambda.mul(&sign));
            let c = half_lambda.mul(&S::one().sub(&sign.mul(&lam_over_mu)));
            let t3 = e0a.scale(&c);
            t1.add(&t2)?.add(&t3)
        }
        Level1Variant::Prime => {
            // (E1'±)⁻ ∓ (λ²/4μ)(E0±)
            let t1 = e1(chain, p, a, Level1Variant::Prime)?;
            let c = p
                .lambda
                .mul(&lam_over_mu)
                .mul(&S::from_ratio(1, 4))
                .mul(&sign)
                .neg();
            t1.add(&e0a.scale(&c))
        }
        Level1Variant::DoublePrime => {
            // (E1''±)⁻ ± (λ/2)(E0±)(E0z) + (λ/2)(1 ∓ λ/2μ)(E0±)
            let t1 = e1(chain, p, a, Level1Variant::DoublePrime)?;
            let t2 = e0a
                .multiply(&e0::<S>(chain, Gen::Z)?)?
                .scale(&half_lambda.mul(&sign));
            let c =
                half_lambda.mul(&S::one().sub(&sign.mul(&lam_over_mu).mul(&S::from_ratio(1, 2))));
            let t3 = e0a.scale(&c);
            t1.add(&t2)?.add(&t3)
        }
    }
}

/// Level-2 charge: E2± = ±½[E1ᶻ,E1±], E2ᶻ = [E1⁺,E1⁻].
pub fn e2<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>, a: Gen) -> Result<OperatorSum<S>> {
    require_single_row(chain)?;
    match a {
        Gen::Z => {
            let ep = e1(chain, p, Gen::Plus, Level1Variant::Full)?;
            let em = e1(chain, p, Gen::Minus, Level1Variant::Full)?;
            ep.commutator(&em)
        }
        Gen::Plus | Gen::Minus => {
            let ez = e1(chain, p, Gen::Z, Level1Variant::Full)?;
            let ea = e1(chain, p, a, Level1Variant::Full)?;
            let half = if a == Gen::Plus {
                S::from_ratio(1, 2)
            } else {
                S::from_ratio(-1, 2)
            };
            Ok(ez.commutator(&ea)?.scale(&half))
        }
    }
}

/// Corrected level-2 charge Ẽ2ᵃ whose fold gives the open-boundary charges.
pub fn e2_tilde<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>, a: Gen) -> Result<OperatorSum<S>> {
    require_single_row(chain)?;
    let base = e2(chain, p, a)?;
    let third = S::from_ratio(1, 3);
    let lam2 = p.lambda.mul(&p.lambda);
    let zp = e1(chain, p, Gen::Z, Level1Variant::Prime)?;
    let zpp = e1(chain, p, Gen::Z, Level1Variant::DoublePrime)?;
    match a {
        Gen::Plus => {
            let pp = e1(chain, p, Gen::Plus, Level1Variant::Prime)?;
            let ppp = e1(chain, p, Gen::Plus, Level1Variant::DoublePrime)?;
            let bracket = zp
                .commutator(&ppp)?
                .add(&zpp.commutator(&pp)?)?
                .scale(&third);
            let ep = e0::<S>(chain, Gen::Plus)?;
            let em = e0::<S>(chain, Gen::Minus)?;
            let cubic = ep
                .multiply(&em)?
                .multiply(&ep)?
                .sub(&ep.scale(&S::from_ratio(9, 4)))?
                .scale(&lam2.mul(&third));
            base.add(&bracket)?.add(&cubic)
        }
        Gen::Minus => {
            let mp = e1(chain, p, Gen::Minus, Level1Variant::Prime)?;
            let mpp = e1(chain, p, Gen::Minus, Level1Variant::DoublePrime)?;
            let bracket = zp
                .commutator(&mp)?
                .add(&zpp.commutator(&mpp)?)?
                .scale(&third.neg());
            let ep = e0::<S>(chain, Gen::Plus)?;
            let em = e0::<S>(chain, Gen::Minus)?;
            let cubic = em
                .multiply(&ep)?
                .multiply(&em)?
                .sub(&em.scale(&S::from_ratio(9, 4)))?
                .scale(&lam2.mul(&third));
            base.add(&bracket)?.add(&cubic)
        }
        Gen::Z => {
            let pp = e1(chain, p, Gen::Plus, Level1Variant::Prime)?;
            let mp = e1(chain, p, Gen::Minus, Level1Variant::Prime)?;
            let ppp = e1(chain, p, Gen::Plus, Level1Variant::DoublePrime)?;
            let mpp = e1(chain, p, Gen::Minus, Level1Variant::DoublePrime)?;
            let bracket = pp
                .commutator(&mp)?
                .add(&ppp.commutator(&mpp)?)?
                .scale(&S::from_ratio(2, 3));
            let ez = e0::<S>(chain, Gen::Z)?;
            let cubic = ez
                .multiply(&ez)?
                .multiply(&ez)?
                .sub(&ez.scale(&S::from_ratio(7, 2)))?
                .scale(&lam2.mul(&S::from_ratio(1, 6)));
            base.add(&bracket)?.add(&cubic)
        }
    }
}

/// Open-boundary charge Gᵃ on the half line.
pub fn g<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>, a: Gen) -> Result<OperatorSum<S>> {
    require_half(chain)?;
    let lam = &p.lambda;
    let lam2_quarter = lam.mul(lam).mul(&S::from_ratio(1, 4));
    match a {
        Gen::Z => {
            // (E2z)⁻ − λ((E1⁺)(E0⁻) − (E0⁺)(E1⁻)) − (λ²/4)(E0z)
            let t1 = e2(chain, p, Gen::Z)?;
            let e1p = e1(chain, p, Gen::Plus, Level1Variant::Full)?;
            let e1m = e1(chain, p, Gen::Minus, Level1Variant::Full)?;
            let e0p = e0::<S>(chain, Gen::Plus)?;
            let e0m = e0::<S>(chain, Gen::Minus)?;
            let t2 = e1p
                .multiply(&e0m)?
                .sub(&e0p.multiply(&e1m)?)?
                .scale(&lam.neg());
            let t3 = e0::<S>(chain, Gen::Z)?.scale(&lam2_quarter.neg());
            t1.add(&t2)?.add(&t3)
        }
        Gen::Plus | Gen::Minus => {
            // (E2±)⁻ ∓ (λ/2)((E1z)(E0±) − (E0z)(E1±)) − (λ²/4)(E0±)
            let sign = if a == Gen::Plus {
                S::one()
            } else {
                S::from_int(-1)
            };
            let t1 = e2(chain, p, a)?;
            let e1z = e1(chain, p, Gen::Z, Level1Variant::Full)?;
            let e1a = e1(chain, p, a, Level1Variant::Full)?;
            let e0a = e0::<S>(chain, a)?;
            let e0z = e0::<S>(chain, Gen::Z)?;
            let t2 = e1z
                .multiply(&e0a)?
                .sub(&e0z.multiply(&e1a)?)?
                .scale(&lam.mul(&S::from_ratio(1, 2)).mul(&sign).neg());
            let t3 = e0a.scale(&lam2_quarter.neg());
            t1.add(&t2)?.add(&t3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    type Op = OperatorSum<Exact>;

    fn params(lambda: i64, mu_num: i64, mu_den: i64) -> XxxParams<Exact> {
        XxxParams::new(Exact::from_int(lambda), Exact::ratio(mu_num, mu_den)).unwrap()
    }

    #[test]
    fn e0_structure_and_sl2() {
        let chain = ChainSpec::full(2);
        let ez: Op = e0(chain, Gen::Z).unwrap();
        assert_eq!(ez.n_terms(), 4); // sites -1..=2
        let ep: Op = e0(chain, Gen::Plus).unwrap();
        let em: Op = e0(chain, Gen::Minus).unwrap();
        assert_eq!(ep.commutator(&em).unwrap(), ez);
        assert_eq!(ez.commutator(&ep).unwrap(), ep.scale(&Exact::from_int(2)));
        let half: Op = e0(ChainSpec::half(2), Gen::Plus).unwrap();
        assert_eq!(half.n_terms(), 2);
    }

    #[test]
    fn h_xxx_structure() {
        let p = params(1, 0, 1);
        let chain = ChainSpec::full(2);
        let h: Op = h_xxx(chain, &p).unwrap();
        assert_eq!(h.n_terms(), 9); // 3 links x 3 strings
        assert_eq!(h.adjoint(), h);
        for a in Gen::ALL {
            assert!(h.commutator(&e0(chain, a).unwrap()).unwrap().is_zero());
        }
        assert!(h_xxx::<Exact>(ChainSpec::full(1), &p).is_err());
    }

    #[test]
    fn e1_split_and_magnetic_commutant() {
        let p = params(1, 3, 2);
        let chain = ChainSpec::full(3);
        for a in Gen::ALL {
            let full: Op = e1(chain, &p, a, Level1Variant::Full).unwrap();
            let split = e1(chain, &p, a, Level1Variant::Prime)
                .unwrap()
                .add(&e1(chain, &p, a, Level1Variant::DoublePrime).unwrap())
                .unwrap();
            assert_eq!(full, split);
        }
        let half = ChainSpec::half(3);
        let hm: Op = h_magnetic(half, &p).unwrap();
        assert!(hm.commutator(&e0(half, Gen::Z).unwrap()).unwrap().is_zero());
        assert_eq!(hm.adjoint(), hm);
        // mu = 0 gives back the open Hamiltonian
        let open = params(1, 0, 1);
        assert_eq!(
            h_magnetic(half, &open).unwrap(),
            h_xxx(half, &open).unwrap()
        );
    }

    #[test]
    fn x_splits_and_rejects_mu_zero() {
        let p = params(1, 3, 2);
        let half = ChainSpec::half(3);
        for a in [Gen::Plus, Gen::Minus] {
            let full: Op = x(half, &p, a, Level1Variant::Full).unwrap();
            let split = x(half, &p, a, Level1Variant::Prime)
                .unwrap()
                .add(&x(half, &p, a, Level1Variant::DoublePrime).unwrap())
                .unwrap();
            assert_eq!(full, split);
        }
        let open = params(1, 0, 1);
        assert!(x::<Exact>(half, &open, Gen::Plus, Level1Variant::Full).is_err());
        assert!(x::<Exact>(half, &p, Gen::Z, Level1Variant::Full).is_err());
    }

    #[test]
    fn e2_z_is_level1_bracket() {
        let p = params(1, 0, 1);
        let chain = ChainSpec::full(3);
        let lhs: Op = e2(chain, &p, Gen::Z).unwrap();
        let rhs = e1(chain, &p, Gen::Plus, Level1Variant::Full)
            .unwrap()
            .commutator(&e1(chain, &p, Gen::Minus, Level1Variant::Full).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn g_is_hermitian_for_real_coupling() {
        let p = params(1, 0, 1);
        let half = ChainSpec::half(3);
        let gz: Op = g(half, &p, Gen::Z).unwrap();
        assert_eq!(gz.adjoint(), gz);
        let gp: Op = g(half, &p, Gen::Plus).unwrap();
        let gm: Op = g(half, &p, Gen::Minus).unwrap();
        assert_eq!(gp.adjoint(), gm);
    }

    #[test]
    fn g_ladder_relations() {
        // [E0z⁻, G±] = ±2 G±
        let p = params(1, 0, 1);
        let half = ChainSpec::half(3);
        let ez: Op = e0(half, Gen::Z).unwrap();
        for (a, s) in [(Gen::Plus, 2), (Gen::Minus, -2)] {
            let ga = g(half, &p, a).unwrap();
            assert_eq!(ez.commutator(&ga).unwrap(), ga.scale(&Exact::from_int(s)));
        }
    }
}
