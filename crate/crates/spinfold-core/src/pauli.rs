//! Pauli generators and canonical Pauli strings.
//!
//! The single-site algebra is generated by σ⁺, σ⁻, σᶻ; the identity σ⁰ is
//! represented by the absence of an entry. Products of two generators on one
//! site reduce via [`site_product`]:
//!
//! σ±σᶻ = ∓σ±, σᶻσ± = ±σ±, σᶻσᶻ = σ⁰, σ±σ± = 0, σ±σ∓ = ½(σ⁰ ± σᶻ).

use crate::chain::Site;
use std::fmt;

/// Non-identity single-site generator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    Plus,
    Minus,
    Z,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::Plus, Gen::Minus, Gen::Z];

    /// σ⁺ ↔ σ⁻ under conjugate transpose; σᶻ fixed.
    pub fn dagger(self) -> Gen {
        match self {
            Gen::Plus => Gen::Minus,
            Gen::Minus => Gen::Plus,
            Gen::Z => Gen::Z,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Gen::Plus => "+",
            Gen::Minus => "-",
            Gen::Z => "z",
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One branch of a single-site product: rational weight `num/den` times a
/// generator (`None` = identity).
pub type ProductTerm = (i64, i64, Option<Gen>);

/// Expansion of σᵃσᵇ in the basis {σ⁰, σ±, σᶻ}; at most two terms.
pub fn site_product(a: Option<Gen>, b: Option<Gen>) -> &'static [ProductTerm] {
    use Gen::*;
    match (a, b) {
        (None, None) => &[(1, 1, None)],
        (None, Some(Plus)) | (Some(Plus), None) => &[(1, 1, Some(Plus))],
        (None, Some(Minus)) | (Some(Minus), None) => &[(1, 1, Some(Minus))],
        (None, Some(Z)) | (Some(Z), None) => &[(1, 1, Some(Z))],
        (Some(Plus), Some(Plus)) | (Some(Minus), Some(Minus)) => &[],
        (Some(Plus), Some(Minus)) => &[(1, 2, None), (1, 2, Some(Z))],
        (Some(Minus), Some(Plus)) => &[(1, 2, None), (-1, 2, Some(Z))],
        (Some(Plus), Some(Z)) => &[(-1, 1, Some(Plus))],
        (Some(Z), Some(Plus)) => &[(1, 1, Some(Plus))],
        (Some(Minus), Some(Z)) => &[(1, 1, Some(Minus))],
        (Some(Z), Some(Minus)) => &[(-1, 1, Some(Minus))],
        (Some(Z), Some(Z)) => &[(1, 1, None)],
    }
}

/// A basis monomial: product of generators over distinct sites, kept sorted in
/// canonical (index, row) order. The empty string is the identity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PauliString {
    entries: Vec<(Site, Gen)>,
}

impl PauliString {
    /// The identity monomial ∏σ⁰.
    pub fn identity() -> Self {
        PauliString::default()
    }

    /// Single-generator string σᵃ_site.
    pub fn single(site: Site, gen: Gen) -> Self {
        PauliString {
            entries: vec![(site, gen)],
        }
    }

    /// Build from entries; sorts them. Panics if a site repeats (a monomial
    /// holds at most one generator per site).
    pub fn from_entries(mut entries: Vec<(Site, Gen)>) -> Self {
        entries.sort_by_key(|&(s, _)| s);
        for w in entries.windows(2) {
            assert!(
                w[0].0 != w[1].0,
                "duplicate site {} in Pauli string",
                w[0].0
            );
        }
        PauliString { entries }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Site, Gen)] {
        &self.entries
    }

    pub fn gen_at(&self, site: Site) -> Option<Gen> {
        self.entries
            .binary_search_by_key(&site, |&(s, _)| s)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// Sites carrying a non-identity generator.
    pub fn support(&self) -> impl Iterator<Item = Site> + '_ {
        self.entries.iter().map(|&(s, _)| s)
    }

    pub fn min_index(&self) -> Option<i32> {
        self.entries.first().map(|&(s, _)| s.index)
    }

    pub fn max_index(&self) -> Option<i32> {
        self.entries.last().map(|&(s, _)| s.index)
    }

    /// σ⁺ ↔ σ⁻ swapped on every site (the string part of the adjoint).
    pub fn dagger(&self) -> Self {
        PauliString {
            entries: self.entries.iter().map(|&(s, g)| (s, g.dagger())).collect(),
        }
    }

    /// Render as e.g. `s+_{-2} sz_{0}` (identity renders as `1`).
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "1".to_string();
        }
        self.entries
            .iter()
            .map(|(s, g)| format!("s{}_{{{}}}", g, s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Site;

    #[test]
    fn site_product_relations() {
        // σ+σ- = ½(σ0 + σz)
        assert_eq!(
            site_product(Some(Gen::Plus), Some(Gen::Minus)),
            &[(1, 2, None), (1, 2, Some(Gen::Z))]
        );
        // σ±σ± = 0
        assert!(site_product(Some(Gen::Plus), Some(Gen::Plus)).is_empty());
        // identity cases
        assert_eq!(site_product(None, Some(Gen::Z)), &[(1, 1, Some(Gen::Z))]);
        // σ+σz = -σ+, σzσ+ = +σ+
        assert_eq!(
            site_product(Some(Gen::Plus), Some(Gen::Z)),
            &[(-1, 1, Some(Gen::Plus))]
        );
        assert_eq!(
            site_product(Some(Gen::Z), Some(Gen::Plus)),
            &[(1, 1, Some(Gen::Plus))]
        );
    }

    #[test]
    fn string_canonical_order_and_support() {
        let s = PauliString::from_entries(vec![
            (Site::single(0), Gen::Z),
            (Site::single(-3), Gen::Plus),
        ]);
        assert_eq!(s.min_index(), Some(-3));
        assert_eq!(s.render(), "s+_{-3} sz_{0}");
        assert_eq!(
            s.support().collect::<Vec<_>>(),
            vec![Site::single(-3), Site::single(0)]
        );
        assert!(PauliString::identity().support().next().is_none());
    }

    #[test]
    fn two_row_support_render() {
        let s =
            PauliString::from_entries(vec![(Site::bullet(0), Gen::Z), (Site::circle(0), Gen::Z)]);
        assert_eq!(s.render(), "sz_{0,o} sz_{0,b}");
    }

    #[test]
    #[should_panic(expected = "duplicate site")]
    fn duplicate_site_rejected() {
        PauliString::from_entries(vec![
            (Site::single(0), Gen::Z),
            (Site::single(0), Gen::Plus),
        ]);
    }
}
