//! Multiplicative folding maps.
//!
//! `fold` identifies site i > 0 of a full line with site 1−i and multiplies
//! the merged generator pair, weighted by a folding constant k(a,b); the
//! two-row variant `fold_double` additionally swaps the rows of the mirrored
//! half. Constant tables are total over {+,−,z,0}²; entries that can never
//! act (k(±,±)) default to 1 so tables stay total.

use crate::chain::{Geometry, Rows, Site};
use crate::error::{Error, Result};
use crate::operator::OperatorSum;
use crate::pauli::{site_product, Gen, PauliString};
use crate::scalar::{parse_rational, Exact, Scalar};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Table index for a generator-or-identity.
fn gi(g: Option<Gen>) -> usize {
    match g {
        Some(Gen::Plus) => 0,
        Some(Gen::Minus) => 1,
        Some(Gen::Z) => 2,
        None => 3,
    }
}

const KEY_LABELS: [&str; 4] = ["+", "-", "z", "0"];

/// The table k(a,b) of folding constants, a,b ∈ {+,−,z,0}.
#[derive(Clone, PartialEq, Debug)]
pub struct FoldingConstants<S: Scalar> {
    k: [[S; 4]; 4],
}

/// Built-in constant tables.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum FoldPreset {
    /// Magnetic-boundary table for coupling λ and boundary field μ:
    /// k(±,0)=1, k(0,±)=−1, k(z,0)=k(0,z)=k(z,z)=1, the symmetric split
    /// k(+,−)=−2μ/λ, k(−,+)=2μ/λ, and k(z,±)=k(±,z)=±λ/μ.
    XxxMagnetic,
    /// Every entry 1 (open boundary, diagonal double row).
    AllOnes,
    /// The long-range magnetic table: k(+,−)=−k(−,+)=±2 and
    /// k(z,−)=−k(z,+)=∓1/2 on top of the common constraints.
    InoMagnetic,
}

impl<S: Scalar> FoldingConstants<S> {
    /// All-ones table.
    pub fn all_ones() -> Self {
        FoldingConstants {
            k: std::array::from_fn(|_| std::array::from_fn(|_| S::one())),
        }
    }

    /// Magnetic-boundary table; fails on λ = 0 or μ = 0.
    pub fn xxx_magnetic(lambda: &S, mu: &S) -> Result<Self> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::InvalidParameter(
                "xxx-magnetic folding constants need nonzero lambda and mu".into(),
            ));
        }
        let mut t = Self::all_ones();
        let two = S::from_int(2);
        let ratio_ml = mu.div(lambda); // μ/λ
        let ratio_lm = lambda.div(mu); // λ/μ
        t.set(None, Some(Gen::Plus), S::from_int(-1));
        t.set(None, Some(Gen::Minus), S::from_int(-1));
        t.set(Some(Gen::Plus), Some(Gen::Minus), two.mul(&ratio_ml).neg());
        t.set(Some(Gen::Minus), Some(Gen::Plus), two.mul(&ratio_ml));
        t.set(Some(Gen::Z), Some(Gen::Plus), ratio_lm.clone());
        t.set(Some(Gen::Plus), Some(Gen::Z), ratio_lm.clone());
        t.set(Some(Gen::Z), Some(Gen::Minus), ratio_lm.neg());
        t.set(Some(Gen::Minus), Some(Gen::Z), ratio_lm.neg());
        Ok(t)
    }

    /// Long-range magnetic table; `plus` picks the sign branch.
    pub fn ino_magnetic(plus: bool) -> Self {
        let sgn: i64 = if plus { 1 } else { -1 };
        let mut t = Self::all_ones();
        t.set(None, Some(Gen::Plus), S::from_int(-1));
        t.set(None, Some(Gen::Minus), S::from_int(-1));
        t.set(Some(Gen::Plus), Some(Gen::Minus), S::from_int(2 * sgn));
        t.set(Some(Gen::Minus), Some(Gen::Plus), S::from_int(-2 * sgn));
        t.set(Some(Gen::Z), Some(Gen::Plus), S::from_ratio(sgn, 2));
        t.set(Some(Gen::Plus), Some(Gen::Z), S::from_ratio(sgn, 2));
        t.set(Some(Gen::Z), Some(Gen::Minus), S::from_ratio(-sgn, 2));
        t.set(Some(Gen::Minus), Some(Gen::Z), S::from_ratio(-sgn, 2));
        t
    }

    pub fn get(&self, a: Option<Gen>, b: Option<Gen>) -> &S {
        &self.k[gi(a)][gi(b)]
    }

    /// Override one entry. Setting k(0,0) ≠ 1 is rejected: folding a fully
    /// trivial pair must be the identity.
    pub fn set(&mut self, a: Option<Gen>, b: Option<Gen>, v: S) {
        if a.is_none() && b.is_none() {
            assert!(v == S::one(), "k(0,0) must stay 1");
        }
        self.k[gi(a)][gi(b)] = v;
    }

    /// JSON object with one `[re,im]` pair per key "+0", "0+", "+-", …;
    /// exact tables store rational strings, float tables plain numbers.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (ia, la) in KEY_LABELS.iter().enumerate() {
            for (ib, lb) in KEY_LABELS.iter().enumerate() {
                let (re, im) = self.k[ia][ib].json_parts();
                map.insert(format!("{la}{lb}"), serde_json::Value::Array(vec![re, im]));
            }
        }
        serde_json::Value::Object(map)
    }
}

fn key_to_gen(c: char) -> Result<Option<Gen>> {
    match c {
        '+' => Ok(Some(Gen::Plus)),
        '-' => Ok(Some(Gen::Minus)),
        'z' => Ok(Some(Gen::Z)),
        '0' => Ok(None),
        _ => Err(Error::Parse(format!(
            "bad folding-table key character `{c}`"
        ))),
    }
}

fn parse_entry_exact(v: &serde_json::Value) -> Result<Exact> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| Error::Parse("folding-table entry must be a [re,im] pair".into()))?;
    let part = |x: &serde_json::Value| -> Result<num_rational::BigRational> {
        match x {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => {
                let f = n
                    .as_f64()
                    .ok_or_else(|| Error::Parse("bad table number".into()))?;
                num_rational::BigRational::from_float(f)
                    .ok_or_else(|| Error::Parse(format!("non-finite table entry {f}")))
            }
            _ => Err(Error::Parse(
                "folding-table entry parts must be numbers or `p/q` strings".into(),
            )),
        }
    };
    Ok(Exact::new(part(&arr[0])?, part(&arr[1])?))
}

/// Parse a table from the JSON object produced by [`FoldingConstants::to_json`]
/// (exact mode also accepts rational strings like `"3/2"`). Missing keys
/// default to 1; `"00"` must be 1 when present.
pub fn table_from_json_exact(v: &serde_json::Value) -> Result<FoldingConstants<Exact>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("folding table must be a JSON object".into()))?;
    let mut t = FoldingConstants::<Exact>::all_ones();
    for (key, val) in obj {
        let mut chars = key.chars();
        let (a, b) = match (chars.next(), chars.next(), chars.next()) {
            (Some(a), Some(b), None) => (key_to_gen(a)?, key_to_gen(b)?),
            _ => return Err(Error::Parse(format!("bad folding-table key `{key}`"))),
        };
        let entry = parse_entry_exact(val)?;
        if a.is_none() && b.is_none() && entry != Exact::from_int(1) {
            return Err(Error::Parse("folding-table entry `00` must be 1".into()));
        }
        t.set(a, b, entry);
    }
    Ok(t)
}

pub fn table_from_json_float(v: &serde_json::Value) -> Result<FoldingConstants<Complex64>> {
    let exact = table_from_json_exact(v)?;
    let mut t = FoldingConstants::<Complex64>::all_ones();
    for a in [Some(Gen::Plus), Some(Gen::Minus), Some(Gen::Z), None] {
        for b in [Some(Gen::Plus), Some(Gen::Minus), Some(Gen::Z), None] {
            let (re, im) = exact.get(a, b).approx();
            t.set(a, b, Complex64::new(re, im));
        }
    }
    Ok(t)
}

/// Fold a single-row full-line operator onto the half line.
///
/// Per monomial, the generator at site i > 0 is brought to site 1−i; each
/// half-line site then carries the ordered pair (a_i, a_{1−i}), contributing
/// the factor k(a_i, a_{1−i}) and the reduced product σ^{a_i}σ^{a_{1−i}}.
pub fn fold<S: Scalar>(a: &OperatorSum<S>, k: &FoldingConstants<S>) -> Result<OperatorSum<S>> {
    let chain = a.chain();
    if chain.geometry != Geometry::FullLine || chain.rows != Rows::One {
        return Err(Error::WrongGeometry {
            expected: "a single-row full line",
            got: chain,
        });
    }
    let target = chain.folded();
    let mut out = OperatorSum::zero(target);
    for (string, coeff) in a.terms() {
        // Collect the (left, mirrored) generator pair per half-line site.
        let mut pairs: BTreeMap<i32, (Option<Gen>, Option<Gen>)> = BTreeMap::new();
        for &(site, gen) in string.entries() {
            if site.index <= 0 {
                pairs.entry(site.index).or_default().0 = Some(gen);
            } else {
                pairs.entry(1 - site.index).or_default().1 = Some(gen);
            }
        }
        let mut stack: Vec<(Vec<(Site, Gen)>, S)> = vec![(Vec::new(), coeff.clone())];
        for (index, (ga, gb)) in pairs {
            let weight = k.get(ga, gb).clone();
            let branches = site_product(ga, gb);
            if branches.is_empty() || weight.is_zero() {
                stack.clear();
                break;
            }
            let site = Site::single(index);
            let mut next = Vec::with_capacity(stack.len() * branches.len());
            for (entries, c) in stack {
                let cw = c.mul(&weight);
                for &(num, den, g) in branches {
                    let mut e2 = entries.clone();
                    if let Some(g) = g {
                        e2.push((site, g));
                    }
                    next.push((e2, cw.mul(&S::from_ratio(num, den))));
                }
            }
            stack = next;
        }
        for (entries, c) in stack {
            out.add_term(PauliString::from_entries(entries), c)?;
        }
    }
    Ok(out)
}

/// Fold a two-row full-line operator onto the two-row half line.
///
/// Site i ≤ 0 receives, on the circle row, the pair (a_i, b_{1−i}) and, on the
/// bullet row, the pair (b_i, a_{1−i}); the scalar factor is
/// k(a_i, b_{1−i}) · k(b_i, a_{1−i}).
pub fn fold_double<S: Scalar>(
    a: &OperatorSum<S>,
    k: &FoldingConstants<S>,
) -> Result<OperatorSum<S>> {
    let chain = a.chain();
    if chain.geometry != Geometry::FullLine || chain.rows != Rows::Two {
        return Err(Error::WrongGeometry {
            expected: "a two-row full line",
            got: chain,
        });
    }
    let target = chain.folded();
    let mut out = OperatorSum::zero(target);
    for (string, coeff) in a.terms() {
        // (circle_left, bullet_left, circle_right, bullet_right) per site.
        #[derive(Default)]
        struct SiteGens {
            a: Option<Gen>,
            b: Option<Gen>,
            a_mir: Option<Gen>,
            b_mir: Option<Gen>,
        }
        let mut pairs: BTreeMap<i32, SiteGens> = BTreeMap::new();
        for &(site, gen) in string.entries() {
            let circle = site.row == crate::chain::Row::Circle;
            if site.index <= 0 {
                let e = pairs.entry(site.index).or_default();
                if circle {
                    e.a = Some(gen);
                } else {
                    e.b = Some(gen);
                }
            } else {
                let e = pairs.entry(1 - site.index).or_default();
                if circle {
                    e.a_mir = Some(gen);
                } else {
                    e.b_mir = Some(gen);
                }
            }
        }
        let mut stack: Vec<(Vec<(Site, Gen)>, S)> = vec![(Vec::new(), coeff.clone())];
        for (index, gens) in pairs {
            let weight = k.get(gens.a, gens.b_mir).mul(k.get(gens.b, gens.a_mir));
            let circle_branches = site_product(gens.a, gens.b_mir);
            let bullet_branches = site_product(gens.b, gens.a_mir);
            if circle_branches.is_empty() || bullet_branches.is_empty() || weight.is_zero() {
                stack.clear();
                break;
            }
            let mut next =
                Vec::with_capacity(stack.len() * circle_branches.len() * bullet_branches.len());
            for (entries, c) in stack {
                let cw = c.mul(&weight);
                for &(n0, d0, g0) in circle_branches {
                    for &(n1, d1, g1) in bullet_branches {
                        let mut e2 = entries.clone();
                        if let Some(g) = g0 {
                            e2.push((Site::circle(index), g));
                        }
                        if let Some(g) = g1 {
                            e2.push((Site::bullet(index), g));
                        }
                        let w2 = S::from_ratio(n0, d0).mul(&S::from_ratio(n1, d1));
                        next.push((e2, cw.mul(&w2)));
                    }
                }
            }
            stack = next;
        }
        for (entries, c) in stack {
            out.add_term(PauliString::from_entries(entries), c)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainSpec;
    use crate::scalar::Exact;

    type Op = OperatorSum<Exact>;

    fn e0(chain: ChainSpec, g: Gen) -> Op {
        let mut op = Op::zero(chain);
        for s in chain.sites() {
            op.add_term(PauliString::single(s, g), Exact::from_int(1))
                .unwrap();
        }
        op
    }

    #[test]
    fn fold_projects_lie_generators() {
        let chain = ChainSpec::full(3);
        let k = FoldingConstants::xxx_magnetic(&Exact::from_int(1), &Exact::from_int(1)).unwrap();
        // f(Σσz) = 2 Σ_{i≤0} σz, f(Σσ±) = 0
        let fz = fold(&e0(chain, Gen::Z), &k).unwrap();
        assert_eq!(fz, e0(chain.folded(), Gen::Z).scale(&Exact::from_int(2)));
        assert!(fold(&e0(chain, Gen::Plus), &k).unwrap().is_zero());
        assert!(fold(&e0(chain, Gen::Minus), &k).unwrap().is_zero());
    }

    #[test]
    fn fold_constants_preset_values() {
        // k(z,±) = ±λ/μ (λ=1, μ=1), k(−,+) − k(+,−) = 4μ/λ
        let k = FoldingConstants::xxx_magnetic(&Exact::from_int(1), &Exact::from_int(1)).unwrap();
        assert_eq!(k.get(Some(Gen::Z), Some(Gen::Plus)), &Exact::from_int(1));
        assert_eq!(k.get(Some(Gen::Z), Some(Gen::Minus)), &Exact::from_int(-1));
        let diff = k
            .get(Some(Gen::Minus), Some(Gen::Plus))
            .sub(k.get(Some(Gen::Plus), Some(Gen::Minus)));
        assert_eq!(diff, Exact::from_int(4));
        assert!(FoldingConstants::xxx_magnetic(&Exact::from_int(1), &Exact::from_int(0)).is_err());

        let all = FoldingConstants::<Exact>::all_ones();
        assert_eq!(all.get(Some(Gen::Plus), None), &Exact::from_int(1));

        let ino = FoldingConstants::<Exact>::ino_magnetic(true);
        assert_eq!(
            ino.get(Some(Gen::Plus), Some(Gen::Minus)),
            &Exact::from_int(2)
        );
        assert_eq!(
            ino.get(Some(Gen::Minus), Some(Gen::Plus)),
            &Exact::from_int(-2)
        );
        assert_eq!(
            ino.get(Some(Gen::Z), Some(Gen::Minus)),
            &Exact::ratio(-1, 2)
        );
        assert_eq!(ino.get(Some(Gen::Z), Some(Gen::Plus)), &Exact::ratio(1, 2));
    }

    #[test]
    fn fold_requires_full_line() {
        let k = FoldingConstants::<Exact>::all_ones();
        let half = Op::identity(ChainSpec::half(2));
        assert!(matches!(fold(&half, &k), Err(Error::WrongGeometry { .. })));
    }

    #[test]
    fn fold_double_projects_a0() {
        let chain = ChainSpec::full_two_row(2);
        let k = FoldingConstants::<Exact>::all_ones();
        let mut a0 = Op::zero(chain);
        for s in chain.sites() {
            a0.add_term(PauliString::single(s, Gen::Z), Exact::from_int(1))
                .unwrap();
        }
        let folded = fold_double(&a0, &k).unwrap();
        let mut expect = Op::zero(chain.folded());
        for s in chain.folded().sites() {
            expect
                .add_term(PauliString::single(s, Gen::Z), Exact::from_int(2))
                .unwrap();
        }
        assert_eq!(folded, expect);
    }

    #[test]
    fn json_round_trip() {
        let k = FoldingConstants::xxx_magnetic(&Exact::from_int(1), &Exact::ratio(3, 2)).unwrap();
        let json = k.to_json();
        let back = table_from_json_exact(&json).unwrap();
        // approx-level round trip (JSON stores f64 pairs)
        for a in [Some(Gen::Plus), Some(Gen::Minus), Some(Gen::Z), None] {
            for b in [Some(Gen::Plus), Some(Gen::Minus), Some(Gen::Z), None] {
                let (r0, i0) = k.get(a, b).approx();
                let (r1, i1) = back.get(a, b).approx();
                assert!((r0 - r1).abs() < 1e-12 && (i0 - i1).abs() < 1e-12);
            }
        }
        // rational strings accepted
        let v: serde_json::Value = serde_json::from_str(r#"{"+-": ["-4/3", "0"]}"#).unwrap();
        let t = table_from_json_exact(&v).unwrap();
        assert_eq!(
            t.get(Some(Gen::Plus), Some(Gen::Minus)),
            &Exact::ratio(-4, 3)
        );
        let bad: serde_json::Value = serde_json::from_str(r#"{"00": ["2", "0"]}"#).unwrap();
        assert!(table_from_json_exact(&bad).is_err());
    }
}
