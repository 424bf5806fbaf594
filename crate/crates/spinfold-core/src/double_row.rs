//! Two-row chains: uncoupled pair Hamiltonians, the A/B combinations of
//! row-tagged charges, diagonal-boundary Hamiltonians and the boundary
//! charges Y (nearest-neighbour and long-range).

use crate::chain::{ChainSpec, Geometry, Row, Rows, Site};
use crate::error::{Error, Result};
use crate::ino::{InoParams, OpF};
use crate::operator::OperatorSum;
use crate::pauli::{Gen, PauliString};
use crate::scalar::Scalar;
use crate::xxx::{self, Level1Variant, XxxParams};
use num_complex::Complex64;

/// Which of the two linear combinations of row charges.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Combo {
    /// Sum of the rows (the surviving diagonal symmetry).
    A,
    /// Difference of the rows.
    B,
}

fn require_two_row(chain: ChainSpec) -> Result<()> {
    if chain.rows != Rows::Two {
        return Err(Error::WrongGeometry {
            expected: "a two-row chain",
            got: chain,
        });
    }
    Ok(())
}

fn require_two_row_half(chain: ChainSpec) -> Result<()> {
    if chain.rows != Rows::Two || chain.geometry != Geometry::HalfLine {
        return Err(Error::WrongGeometry {
            expected: "a two-row half line",
            got: chain,
        });
    }
    Ok(())
}

fn single_row_of(chain: ChainSpec) -> ChainSpec {
    ChainSpec {
        l: chain.l,
        geometry: chain.geometry,
        rows: Rows::One,
    }
}

/// Re-tag a single-row operator onto one row of a two-row chain.
pub fn embed_row<S: Scalar>(
    op: &OperatorSum<S>,
    target: ChainSpec,
    row: Row,
) -> Result<OperatorSum<S>> {
    require_two_row(target)?;
    let mut out = OperatorSum::zero(target);
    for (s, c) in op.terms() {
        let entries = s
            .entries()
            .iter()
            .map(|&(site, g)| {
                (
                    Site {
                        index: site.index,
                        row,
                    },
                    g,
                )
            })
            .collect();
        out.add_term(PauliString::from_entries(entries), c.clone())?;
    }
    Ok(out)
}

/// Uncoupled pair of nearest-neighbour chains.
pub fn h_double_xxx<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>) -> Result<OperatorSum<S>> {
    require_two_row(chain)?;
    let h = xxx::h_xxx(single_row_of(chain), p)?;
    embed_row(&h, chain, Row::Circle)?.add(&embed_row(&h, chain, Row::Bullet)?)
}

/// Uncoupled pair of long-range chains.
pub fn h_double_ino(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    require_two_row(chain)?;
    let h = crate::ino::h_kappa(single_row_of(chain), p)?;
    embed_row(&h, chain, Row::Circle)?.add(&embed_row(&h, chain, Row::Bullet)?)
}

/// Aᵃ_n / Bᵃ_n for the nearest-neighbour pair.
pub fn ab_xxx<S: Scalar>(
    chain: ChainSpec,
    p: &XxxParams<S>,
    a: Gen,
    level: u8,
    which: Combo,
) -> Result<OperatorSum<S>> {
    require_two_row(chain)?;
    let row_chain = single_row_of(chain);
    let base = match level {
        0 => xxx::e0::<S>(row_chain, a)?,
        1 => xxx::e1(row_chain, p, a, Level1Variant::Full)?,
        _ => {
            return Err(Error::InvalidParameter(
                "row charges exist at levels 0 and 1".into(),
            ))
        }
    };
    let circle = embed_row(&base, chain, Row::Circle)?;
    let bullet = embed_row(&base, chain, Row::Bullet)?;
    match which {
        Combo::A => circle.add(&bullet),
        Combo::B => circle.sub(&bullet),
    }
}

/// Aᵃ_n / Bᵃ_n for the long-range pair.
pub fn ab_ino(chain: ChainSpec, p: &InoParams, a: Gen, level: u8, which: Combo) -> Result<OpF> {
    require_two_row(chain)?;
    let row_chain = single_row_of(chain);
    let base = match level {
        0 => xxx::e0::<Complex64>(row_chain, a)?,
        1 => crate::ino::e1_kappa(row_chain, p, a, Level1Variant::Full)?,
        _ => {
            return Err(Error::InvalidParameter(
                "row charges exist at levels 0 and 1".into(),
            ))
        }
    };
    let circle = embed_row(&base, chain, Row::Circle)?;
    let bullet = embed_row(&base, chain, Row::Bullet)?;
    match which {
        Combo::A => circle.add(&bullet),
        Combo::B => circle.sub(&bullet),
    }
}

/// The diagonal boundary term −λ(σ⁺₀∘σ⁻₀• + σ⁻₀∘σ⁺₀• + ½σᶻ₀∘σᶻ₀•).
fn diagonal_boundary<S: Scalar>(chain: ChainSpec, lambda: &S) -> Result<OperatorSum<S>> {
    let mut op = OperatorSum::zero(chain);
    let neg = lambda.neg();
    op.add_term(
        PauliString::from_entries(vec![
            (Site::circle(0), Gen::Plus),
            (Site::bullet(0), Gen::Minus),
        ]),
        neg.clone(),
    )?;
    op.add_term(
        PauliString::from_entries(vec![
            (Site::circle(0), Gen::Minus),
            (Site::bullet(0), Gen::Plus),
        ]),
        neg.clone(),
    )?;
    op.add_term(
        PauliString::from_entries(vec![(Site::circle(0), Gen::Z), (Site::bullet(0), Gen::Z)]),
        neg.mul(&S::from_ratio(1, 2)),
    )?;
    Ok(op)
}

/// Long-range diagonal boundary operator D_κ: cross-row through-the-boundary
/// hopping with the p(i+j−1) kernel; the i = j cross-row terms are included.
pub fn d_kappa(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    require_two_row_half(chain)?;
    let k = p.kernels();
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut op = OpF::zero(chain);
    for (ra, rb) in [(Row::Circle, Row::Bullet), (Row::Bullet, Row::Circle)] {
        for i in chain.index_range() {
            for j in chain.index_range() {
                let c = -0.5 * p.lambda * k.p((i + j - 1) as i64);
                let si = Site { index: i, row: ra };
                let sj = Site { index: j, row: rb };
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
    }
    Ok(op)
}

/// Double-row Hamiltonian with a diagonal boundary (nearest-neighbour).
pub fn h_delta_xxx<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>) -> Result<OperatorSum<S>> {
    require_two_row_half(chain)?;
    h_double_xxx(chain, p)?.add(&diagonal_boundary(chain, &p.lambda)?)
}

/// Double-row Hamiltonian with a diagonal boundary (long-range).
pub fn h_delta_ino(chain: ChainSpec, p: &InoParams) -> Result<OpF> {
    require_two_row_half(chain)?;
    h_double_ino(chain, p)?.add(&d_kappa(chain, p)?)
}

/// Boundary charge Yᵃ of the diagonal model (nearest-neighbour):
/// Y± = (B±₁)⁻ ± (λ/4)(B±₀A ᶻ₀ − A±₀Bᶻ₀), Yᶻ = (Bᶻ₁)⁻ − (λ/2)(B⁺₀A⁻₀ − A⁺₀B⁻₀).
pub fn y_xxx<S: Scalar>(chain: ChainSpec, p: &XxxParams<S>, a: Gen) -> Result<OperatorSum<S>> {
    require_two_row_half(chain)?;
    let b1 = ab_xxx(chain, p, a, 1, Combo::B)?;
    match a {
        Gen::Z => {
            let t = ab_xxx(chain, p, Gen::Plus, 0, Combo::B)?
                .multiply(&ab_xxx(chain, p, Gen::Minus, 0, Combo::A)?)?
                .sub(&ab_xxx(chain, p, Gen::Plus, 0, Combo::A)?.multiply(&ab_xxx(
                    chain,
                    p,
                    Gen::Minus,
                    0,
                    Combo::B,
                )?)?)?;
            b1.add(&t.scale(&p.lambda.mul(&S::from_ratio(-1, 2))))
        }
        Gen::Plus | Gen::Minus => {
            let sign = if a == Gen::Plus {
                S::from_ratio(1, 4)
            } else {
                S::from_ratio(-1, 4)
            };
            let t = ab_xxx(chain, p, a, 0, Combo::B)?
                .multiply(&ab_xxx(chain, p, Gen::Z, 0, Combo::A)?)?
                .sub(&ab_xxx(chain, p, a, 0, Combo::A)?.multiply(&ab_xxx(
                    chain,
                    p,
                    Gen::Z,
                    0,
                    Combo::B,
                )?)?)?;
            b1.add(&t.scale(&p.lambda.mul(&sign)))
        }
    }
}

/// Boundary charge Yᵃ_κ of the long-range diagonal model.
pub fn y_ino(chain: ChainSpec, p: &InoParams, a: Gen) -> Result<OpF> {
    require_two_row_half(chain)?;
    let k = p.kernels();
    let re = |x: f64| Complex64::new(x, 0.0);
    let mut op = ab_ino(chain, p, a, 1, Combo::B)?;
    for i in chain.index_range() {
        for j in chain.index_range() {
            let w = k.w((i + j - 1) as i64);
            match a {
                Gen::Z => {
                    op.add_term(
                        PauliString::from_entries(vec![
                            (Site::circle(i), Gen::Plus),
                            (Site::bullet(j), Gen::Minus),
                        ]),
                        re(-p.lambda * w),
                    )?;
                    op.add_term(
                        PauliString::from_entries(vec![
                            (Site::bullet(j), Gen::Plus),
                            (Site::circle(i), Gen::Minus),
                        ]),
                        re(p.lambda * w),
                    )?;
                }
                Gen::Plus | Gen::Minus => {
                    let sign = if a == Gen::Plus { 1.0 } else { -1.0 };
                    op.add_term(
                        PauliString::from_entries(vec![
                            (Site::circle(i), a),
                            (Site::bullet(j), Gen::Z),
                        ]),
                        re(sign * 0.5 * p.lambda * w),
                    )?;
                    op.add_term(
                        PauliString::from_entries(vec![
                            (Site::bullet(j), a),
                            (Site::circle(i), Gen::Z),
                        ]),
                        re(-sign * 0.5 * p.lambda * w),
                    )?;
                }
            }
        }
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::max_abs_diff;
    use crate::scalar::Exact;

    fn xxx_params() -> XxxParams<Exact> {
        XxxParams::new(Exact::from_int(1), Exact::from_int(0)).unwrap()
    }

    #[test]
    fn double_hamiltonian_is_uncoupled() {
        let chain = ChainSpec::full_two_row(2);
        let h = h_double_xxx(chain, &xxx_params()).unwrap();
        for (s, _) in h.terms() {
            let rows: std::collections::BTreeSet<_> = s.support().map(|x| x.row).collect();
            assert_eq!(rows.len(), 1, "cross-row term in uncoupled Hamiltonian");
        }
        let circle = embed_row(
            &xxx::h_xxx(ChainSpec::full(2), &xxx_params()).unwrap(),
            chain,
            Row::Circle,
        )
        .unwrap();
        let bullet = embed_row(
            &xxx::h_xxx(ChainSpec::full(2), &xxx_params()).unwrap(),
            chain,
            Row::Bullet,
        )
        .unwrap();
        assert_eq!(h, circle.add(&bullet).unwrap());
    }

    #[test]
    fn row_swap_symmetry() {
        // swapping rows fixes A and negates B
        let chain = ChainSpec::full_two_row(2);
        let p = xxx_params();
        for a in Gen::ALL {
            for level in [0u8, 1u8] {
                let aa = ab_xxx(chain, &p, a, level, Combo::A).unwrap();
                let bb = ab_xxx(chain, &p, a, level, Combo::B).unwrap();
                let swap = |op: &OperatorSum<Exact>| {
                    let mut out = OperatorSum::zero(chain);
                    for (s, c) in op.terms() {
                        let entries = s
                            .entries()
                            .iter()
                            .map(|&(site, g)| {
                                let row = match site.row {
                                    Row::Circle => Row::Bullet,
                                    Row::Bullet => Row::Circle,
                                    Row::Single => Row::Single,
                                };
                                (
                                    Site {
                                        index: site.index,
                                        row,
                                    },
                                    g,
                                )
                            })
                            .collect();
                        out.add_term(PauliString::from_entries(entries), c.clone())
                            .unwrap();
                    }
                    out
                };
                assert_eq!(swap(&aa), aa);
                assert_eq!(swap(&bb), bb.scale(&Exact::from_int(-1)));
            }
        }
        let hd = h_delta_xxx(ChainSpec::half_two_row(3), &p).unwrap();
        assert_eq!(hd.adjoint(), hd);
    }

    #[test]
    fn h_delta_commutes_with_a0_only() {
        let chain = ChainSpec::half_two_row(3);
        let p = xxx_params();
        let hd = h_delta_xxx(chain, &p).unwrap();
        for a in Gen::ALL {
            let a0 = ab_xxx(chain, &p, a, 0, Combo::A).unwrap();
            assert!(hd.commutator(&a0).unwrap().is_zero());
            let b0 = ab_xxx(chain, &p, a, 0, Combo::B).unwrap();
            assert!(!hd.commutator(&b0).unwrap().is_zero());
        }
    }

    #[test]
    fn ino_double_matches_xxx_in_limit() {
        let chain = ChainSpec::full_two_row(2);
        let p = InoParams::new(1.0, 20.0, 0.0).unwrap();
        let lr = h_double_ino(chain, &p).unwrap();
        let nn = h_double_xxx(chain, &xxx_params()).unwrap().to_float();
        assert!(max_abs_diff(&lr, &nn).unwrap() < 1e-12);

        let half = ChainSpec::half_two_row(2);
        let d = d_kappa(half, &p).unwrap();
        let bnd = diagonal_boundary(half, &Exact::from_int(1))
            .unwrap()
            .to_float();
        assert!(max_abs_diff(&d, &bnd).unwrap() < 1e-12);

        for a in Gen::ALL {
            let y_lr = y_ino(half, &p, a).unwrap();
            let y_nn = y_xxx(half, &xxx_params(), a).unwrap().to_float();
            assert!(max_abs_diff(&y_lr, &y_nn).unwrap() < 1e-9, "a={a:?}");
        }
    }
}
