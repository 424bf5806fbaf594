//! Lattice geometry: chains, rows and site labels.
//!
//! A full line of size `L` carries sites `-L+1 ..= L`; the half line obtained
//! by folding carries `-L+1 ..= 0`. Two-row chains duplicate every site into a
//! circle row and a bullet row.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Row tag of a site. Single-row chains use [`Row::Single`] throughout.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Row {
    Single,
    /// First row of a two-row chain (∘).
    Circle,
    /// Second row of a two-row chain (•).
    Bullet,
}

/// A lattice site. Ordered by index first, then row (circle before bullet),
/// fixing both the canonical string order and the Kronecker slot layout.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Site {
    pub index: i32,
    pub row: Row,
}

impl Site {
    pub fn single(index: i32) -> Self {
        Site {
            index,
            row: Row::Single,
        }
    }

    pub fn circle(index: i32) -> Self {
        Site {
            index,
            row: Row::Circle,
        }
    }

    pub fn bullet(index: i32) -> Self {
        Site {
            index,
            row: Row::Bullet,
        }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Row::Single => write!(f, "{}", self.index),
            Row::Circle => write!(f, "{},o", self.index),
            Row::Bullet => write!(f, "{},b", self.index),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    /// Sites `-L+1 ..= L`.
    FullLine,
    /// Sites `-L+1 ..= 0`.
    HalfLine,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rows {
    One,
    Two,
}

/// Chain shape: size parameter, geometry and row count.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ChainSpec {
    pub l: u32,
    pub geometry: Geometry,
    pub rows: Rows,
}

impl ChainSpec {
    pub fn new(l: u32, geometry: Geometry, rows: Rows) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidParameter(
                "chain size L must be positive".into(),
            ));
        }
        Ok(ChainSpec { l, geometry, rows })
    }

    pub fn full(l: u32) -> Self {
        ChainSpec {
            l,
            geometry: Geometry::FullLine,
            rows: Rows::One,
        }
    }

    pub fn half(l: u32) -> Self {
        ChainSpec {
            l,
            geometry: Geometry::HalfLine,
            rows: Rows::One,
        }
    }

    pub fn full_two_row(l: u32) -> Self {
        ChainSpec {
            l,
            geometry: Geometry::FullLine,
            rows: Rows::Two,
        }
    }

    pub fn half_two_row(l: u32) -> Self {
        ChainSpec {
            l,
            geometry: Geometry::HalfLine,
            rows: Rows::Two,
        }
    }

    /// Smallest site index (`-L+1`).
    pub fn min_index(&self) -> i32 {
        1 - self.l as i32
    }

    /// Largest site index (`L` on the full line, `0` on the half line).
    pub fn max_index(&self) -> i32 {
        match self.geometry {
            Geometry::FullLine => self.l as i32,
            Geometry::HalfLine => 0,
        }
    }

    pub fn index_range(&self) -> std::ops::RangeInclusive<i32> {
        self.min_index()..=self.max_index()
    }

    /// Sites per row.
    pub fn sites_per_row(&self) -> usize {
        (self.max_index() - self.min_index() + 1) as usize
    }

    /// Total site count (slots of the tensor product).
    pub fn n_slots(&self) -> usize {
        let rows = match self.rows {
            Rows::One => 1,
            Rows::Two => 2,
        };
        self.sites_per_row() * rows
    }

    pub fn contains(&self, site: Site) -> bool {
        let row_ok = match self.rows {
            Rows::One => site.row == Row::Single,
            Rows::Two => site.row == Row::Circle || site.row == Row::Bullet,
        };
        row_ok && self.index_range().contains(&site.index)
    }

    /// All sites in canonical (index, row) order.
    pub fn sites(&self) -> Vec<Site> {
        let mut out = Vec::with_capacity(self.n_slots());
        for index in self.index_range() {
            match self.rows {
                Rows::One => out.push(Site::single(index)),
                Rows::Two => {
                    out.push(Site::circle(index));
                    out.push(Site::bullet(index));
                }
            }
        }
        out
    }

    /// The half-line chain this full-line chain folds onto.
    pub fn folded(&self) -> ChainSpec {
        ChainSpec {
            l: self.l,
            geometry: Geometry::HalfLine,
            rows: self.rows,
        }
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let geom = match self.geometry {
            Geometry::FullLine => "full",
            Geometry::HalfLine => "half",
        };
        let rows = match self.rows {
            Rows::One => "",
            Rows::Two => ",two-row",
        };
        write!(f, "[L={},{}{}]", self.l, geom, rows)
    }
}
