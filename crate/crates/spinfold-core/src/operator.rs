//! Linear combinations of Pauli strings with exact or float coefficients.
//!
//! An [`OperatorSum`] is always canonical: strings are unique map keys in the
//! fixed (index, row) order and zero coefficients are dropped as they arise.
//! Float coefficients are never pruned by magnitude during algebra; reports
//! apply their own thresholds.

use crate::chain::{ChainSpec, Geometry, Site};
use crate::error::{Error, Result};
use crate::pauli::{site_product, Gen, PauliString};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Debug)]
pub struct OperatorSum<S: Scalar> {
    chain: ChainSpec,
    terms: BTreeMap<PauliString, S>,
}

impl<S: Scalar> OperatorSum<S> {
    /// The zero operator. Carries the chain so mismatches stay detectable.
    pub fn zero(chain: ChainSpec) -> Self {
        OperatorSum {
            chain,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity ∏σ⁰.
    pub fn identity(chain: ChainSpec) -> Self {
        let mut op = Self::zero(chain);
        op.terms.insert(PauliString::identity(), S::one());
        op
    }

    /// A scalar multiple of the identity.
    pub fn constant(chain: ChainSpec, c: S) -> Self {
        let mut op = Self::zero(chain);
        if !c.is_zero() {
            op.terms.insert(PauliString::identity(), c);
        }
        op
    }

    pub fn chain(&self) -> ChainSpec {
        self.chain
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &S)> {
        self.terms.iter()
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &PauliString) -> Option<&S> {
        self.terms.get(s)
    }

    /// Coefficient of the identity string, if present.
    pub fn constant_part(&self) -> Option<&S> {
        self.terms.get(&PauliString::identity())
    }

    /// True if the operator is `c·1` for some nonzero `c`.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.contains_key(&PauliString::identity())
    }

    /// Add `coeff · string`, merging and dropping exact zeros.
    pub fn add_term(&mut self, string: PauliString, coeff: S) -> Result<()> {
        for site in string.support() {
            if !self.chain.contains(site) {
                return Err(Error::SiteOutOfRange {
                    site,
                    chain: self.chain,
                });
            }
        }
        self.merge_unchecked(string, coeff);
        Ok(())
    }

    fn merge_unchecked(&mut self, string: PauliString, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(string) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(&coeff);
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
        }
    }

    pub fn from_terms(chain: ChainSpec, terms: Vec<(PauliString, S)>) -> Result<Self> {
        let mut op = Self::zero(chain);
        for (s, c) in terms {
            op.add_term(s, c)?;
        }
        Ok(op)
    }

    fn check_chain(&self, other: &Self) -> Result<()> {
        if self.chain != other.chain {
            return Err(Error::ChainMismatch(self.chain, other.chain));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_chain(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.merge_unchecked(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_chain(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.merge_unchecked(s.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.chain);
        }
        let mut out = Self::zero(self.chain);
        for (s, a) in &self.terms {
            out.merge_unchecked(s.clone(), a.mul(c));
        }
        out
    }

    /// Canonical sum `Σ cᵢ Aᵢ` with coefficients merged per string.
    pub fn linear_combine(pairs: &[(S, &Self)]) -> Result<Self> {
        let first = pairs.first().ok_or_else(|| {
            Error::InvalidParameter("linear_combine needs at least one term".into())
        })?;
        let mut out = Self::zero(first.1.chain);
        for (c, op) in pairs {
            out.check_chain(op)?;
            for (s, a) in &op.terms {
                out.merge_unchecked(s.clone(), a.mul(c));
            }
        }
        Ok(out)
    }

    /// Product of two basis strings, expanded over same-site reductions.
    fn string_product(into: &mut Self, sa: &PauliString, sb: &PauliString, coeff: S) {
        // Merge-join the sorted entry lists; overlapping sites branch via
        // site_product, everything else passes through.
        let mut stack: Vec<(Vec<(Site, Gen)>, S)> = vec![(Vec::new(), coeff)];
        let (ea, eb) = (sa.entries(), sb.entries());
        let (mut i, mut j) = (0, 0);
        while i < ea.len() || j < eb.len() {
            let take_a = j >= eb.len() || (i < ea.len() && ea[i].0 < eb[j].0);
            let take_b = i >= ea.len() || (j < eb.len() && eb[j].0 < ea[i].0);
            if take_a {
                for (entries, _) in stack.iter_mut() {
                    entries.push(ea[i]);
                }
                i += 1;
            } else if take_b {
                for (entries, _) in stack.iter_mut() {
                    entries.push(eb[j]);
                }
                j += 1;
            } else {
                let site = ea[i].0;
                let branches = site_product(Some(ea[i].1), Some(eb[j].1));
                i += 1;
                j += 1;
                if branches.is_empty() {
                    return; // whole product vanishes (σ±σ± = 0)
                }
                if branches.len() == 1 {
                    let (num, den, g) = branches[0];
                    let w = S::from_ratio(num, den);
                    for (entries, c) in stack.iter_mut() {
                        if let Some(g) = g {
                            entries.push((site, g));
                        }
                        *c = c.mul(&w);
                    }
                } else {
                    let mut next = Vec::with_capacity(stack.len() * branches.len());
                    for (entries, c) in stack {
                        for &(num, den, g) in branches {
                            let mut e2 = entries.clone();
                            if let Some(g) = g {
                                e2.push((site, g));
                            }
                            next.push((e2, c.mul(&S::from_ratio(num, den))));
                        }
                    }
                    stack = next;
                }
            }
        }
        for (entries, c) in stack {
            into.merge_unchecked(PauliString::from_entries(entries), c);
        }
    }

    /// Canonical product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_chain(other)?;
        let mut out = Self::zero(self.chain);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                Self::string_product(&mut out, sa, sb, ca.mul(cb));
            }
        }
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.sub(&ba)
    }

    /// Conjugate transpose: coefficients conjugated, σ⁺ ↔ σ⁻ per site.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.chain);
        for (s, c) in &self.terms {
            out.merge_unchecked(s.dagger(), c.conj());
        }
        out
    }

    /// Split into (edge_part, interior_part) for edge window `w`.
    ///
    /// Edge sites are the `w` sites next to the truncation edge `-L+1`; on a
    /// full line both ends are truncation artifacts, so the window covers
    /// `L-w+1 ..= L` as well. A term is edge if its support intersects the
    /// window; the identity term always lands in the interior.
    pub fn edge_partition(&self, edge_window: u32) -> (Self, Self) {
        let lo = self.chain.min_index() + edge_window as i32 - 1;
        let hi_edge = match self.chain.geometry {
            Geometry::FullLine => Some(self.chain.max_index() - edge_window as i32 + 1),
            Geometry::HalfLine => None,
        };
        let mut edge = Self::zero(self.chain);
        let mut interior = Self::zero(self.chain);
        for (s, c) in &self.terms {
            let is_edge = match (s.min_index(), s.max_index()) {
                (Some(min), Some(max)) => min <= lo || hi_edge.is_some_and(|h| max >= h),
                _ => false,
            };
            let target = if is_edge { &mut edge } else { &mut interior };
            target.merge_unchecked(s.clone(), c.clone());
        }
        (edge, interior)
    }

    /// Largest coefficient modulus (0 for the zero operator).
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).fold(0.0, f64::max)
    }

    /// Largest coefficient modulus over non-identity strings.
    pub fn max_abs_non_identity(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(s, _)| !s.is_identity())
            .map(|(_, c)| c.abs())
            .fold(0.0, f64::max)
    }

    /// The non-identity term of largest modulus, if any.
    pub fn dominant_non_identity(&self) -> Option<(&PauliString, &S)> {
        self.terms
            .iter()
            .filter(|(s, _)| !s.is_identity())
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
    }

    /// True if every coefficient is exactly zero after removing the identity
    /// component (exact field) — used by classification on exact operators.
    pub fn is_constant_or_zero(&self) -> bool {
        self.terms.keys().all(|s| s.is_identity())
    }

    /// Line-oriented text dump: one `(re,im) * string` per line, sorted
    /// canonically. Coefficients below `suppress` are skipped.
    pub fn render(&self, suppress: f64) -> String {
        let mut lines = Vec::new();
        for (s, c) in &self.terms {
            if c.abs() < suppress {
                continue;
            }
            lines.push(format!("{} * {}", c.render(), s.render()));
        }
        if lines.is_empty() {
            lines.push("0".to_string());
        }
        lines.join("\n")
    }
}

impl OperatorSum<crate::scalar::Exact> {
    /// Convert exact coefficients to double precision.
    pub fn to_float(&self) -> OperatorSum<num_complex::Complex64> {
        let mut out = OperatorSum::zero(self.chain);
        for (s, c) in &self.terms {
            let (re, im) = c.approx();
            out.merge_unchecked(s.clone(), num_complex::Complex64::new(re, im));
        }
        out
    }
}

/// Max coefficient modulus of `a − b`.
pub fn max_abs_diff<S: Scalar>(a: &OperatorSum<S>, b: &OperatorSum<S>) -> Result<f64> {
    Ok(a.sub(b)?.max_abs())
}
