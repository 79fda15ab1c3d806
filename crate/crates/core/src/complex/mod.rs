//! Filtered chain complexes of knots and the invariants read off them.
//!
//! A [`FilteredKnotComplex`] is a finite model of the hat complex of the
//! three-sphere together with the Alexander filtration induced by a knot.
//! Generators carry a (Maslov, Alexander) bigrading and the differential
//! never raises the Alexander grading, so the generators with Alexander
//! grading at most `j` span the subcomplex `F(K, j)`.

mod companion;

pub use companion::CompanionData;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    chain_homology, euler_poly, grading, GradedGroup, Grading, IntegerMatrix,
    LaurentPoly,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub maslov: i64,
    pub alexander: i64,
}

impl Generator {
    pub fn new(maslov: i64, alexander: i64) -> Self {
        Generator { maslov, alexander }
    }
}

/// The first invariant a complex fails, with witness indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape { rows: usize, cols: usize, generators: usize },
    NotSquareZero { row: usize, col: usize },
    WrongDegree { row: usize, col: usize },
    RaisesFiltration { row: usize, col: usize },
    TotalHomology(GradedGroup),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape {
                rows,
                cols,
                generators,
            } => write!(
                f,
                "differential is {rows}x{cols} but there are {generators} generators"
            ),
            Violation::NotSquareZero { row, col } => {
                write!(f, "d^2 has nonzero entry at ({row}, {col})")
            }
            Violation::WrongDegree { row, col } => write!(
                f,
                "boundary of generator {col} hits generator {row} outside Maslov degree -1"
            ),
            Violation::RaisesFiltration { row, col } => write!(
                f,
                "boundary of generator {col} hits generator {row} at higher Alexander grading"
            ),
            Violation::TotalHomology(h) => {
                write!(f, "total homology is {h}, expected Z_(0)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredKnotComplex {
    pub name: String,
    generators: Vec<Generator>,
    differential: IntegerMatrix,
}

impl FilteredKnotComplex {
    /// Builds and validates a complex. Column `j` of `differential` is the
    /// boundary of generator `j`.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        differential: IntegerMatrix,
    ) -> Result<Self> {
        let c = Self::from_parts(name, generators, differential);
        c.validate().map_err(Error::Validation)?;
        Ok(c)
    }

    /// Builds a complex without checking any invariant.
    pub fn from_parts(
        name: impl Into<String>,
        generators: Vec<Generator>,
        differential: IntegerMatrix,
    ) -> Self {
        FilteredKnotComplex {
            name: name.into(),
            generators,
            differential,
        }
    }

    /// Convenience constructor from `(maslov, alexander)` pairs and `(source, target, coeff)` arrows.
    pub fn from_arrows(
        name: impl Into<String>,
        generators: &[(i64, i64)],
        arrows: &[(usize, usize, i64)],
    ) -> Result<Self> {
        let n = generators.len();
        let mut d = IntegerMatrix::zeros(n, n);
        for &(src, dst, c) in arrows {
            if src >= n || dst >= n {
                return Err(Error::Dimension(format!(
                    "arrow {src}->{dst} outside {n} generators"
                )));
            }
            d.set(dst, src, d.get(dst, src) + c);
        }
        let gens = generators.iter().map(|&(m, a)| Generator::new(m, a)).collect();
        Self::new(name, gens, d)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn differential(&self) -> &IntegerMatrix {
        &self.differential
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.generators.len();
        let d = &self.differential;
        if d.rows() != n || d.cols() != n {
            return Err(Violation::Shape {
                rows: d.rows(),
                cols: d.cols(),
                generators: n,
            });
        }
        let sq = d.mul(d).expect("square");
        if let Some((row, col, _)) = sq.nonzero_entries().next() {
            return Err(Violation::NotSquareZero { row, col });
        }
        for (row, col, _) in d.nonzero_entries() {
            let (src, dst) = (self.generators[col], self.generators[row]);
            if dst.maslov != src.maslov - 1 {
                return Err(Violation::WrongDegree { row, col });
            }
            if dst.alexander > src.alexander {
                return Err(Violation::RaisesFiltration { row, col });
            }
        }
        let total = self.total_homology();
        if total != GradedGroup::z(0) {
            return Err(Violation::TotalHomology(total));
        }
        Ok(())
    }

    fn homology_on(&self, keep: impl Fn(&Generator) -> bool) -> GradedGroup {
        let idx: Vec<usize> = (0..self.generators.len())
            .filter(|&i| keep(&self.generators[i]))
            .collect();
        let gradings: Vec<Grading> = idx
            .iter()
            .map(|&i| grading(self.generators[i].maslov))
            .collect();
        let sub = self.differential.select(&idx, &idx);
        chain_homology(&gradings, &sub).expect("restriction of a valid differential")
    }

    pub fn total_homology(&self) -> GradedGroup {
        self.homology_on(|_| true)
    }

    /// `H_*(F(K, j))`: generators with Alexander grading at most `j`.
    pub fn sublevel_homology(&self, j: i64) -> GradedGroup {
        self.homology_on(|g| g.alexander <= j)
    }

    /// `H_*(CF / F(K, j))`: generators with Alexander grading above `j`.
    pub fn quotient_homology(&self, j: i64) -> GradedGroup {
        self.homology_on(|g| g.alexander > j)
    }

    /// Knot Floer homology in Alexander grading `j`.
    pub fn hfk(&self, j: i64) -> GradedGroup {
        self.homology_on(|g| g.alexander == j)
    }

    fn alexander_span(&self) -> Option<(i64, i64)> {
        let lo = self.generators.iter().map(|g| g.alexander).min()?;
        let hi = self.generators.iter().map(|g| g.alexander).max()?;
        Some((lo, hi))
    }

    /// Largest |Alexander grading| carrying nonzero knot Floer homology.
    pub fn genus(&self) -> u32 {
        let Some((lo, hi)) = self.alexander_span() else {
            return 0;
        };
        let supported = (lo..=hi)
            .filter(|&j| !self.hfk(j).is_zero())
            .map(|j| j.unsigned_abs())
            .max();
        let fallback = || lo.unsigned_abs().max(hi.unsigned_abs());
        supported.unwrap_or_else(fallback) as u32
    }

    /// Smallest `j` for which `H_*(F(K, j)) -> H_*(CF) = Z_(0)` is nonzero.
    ///
    /// With `Z` the grading-0 cycles supported in `F(K, j)` and `B` the
    /// grading-0 boundaries, the map is nonzero exactly when
    /// `dim Z > dim (B ∩ F(K, j))`, and the right side is
    /// `rank d_1 - rank` of the rows of `d_1` outside `F(K, j)`.
    pub fn tau(&self) -> i64 {
        let Some((lo, hi)) = self.alexander_span() else {
            return 0;
        };
        let idx_at = |m: i64| -> Vec<usize> {
            (0..self.generators.len())
                .filter(|&i| self.generators[i].maslov == m)
                .collect()
        };
        let deg0 = idx_at(0);
        let deg1 = idx_at(1);
        let degm1 = idx_at(-1);
        let boundary_rank = self.differential.select(&deg0, &deg1).rank();

        for j in lo..=hi {
            let (inside, outside): (Vec<usize>, Vec<usize>) = deg0
                .iter()
                .partition(|&&i| self.generators[i].alexander <= j);
            if inside.is_empty() {
                continue;
            }
            let cycles = inside.len() - self.differential.select(&degm1, &inside).rank();
            let trapped = boundary_rank - self.differential.select(&outside, &deg1).rank();
            if cycles > trapped {
                return j;
            }
        }
        hi
    }

    /// `sum_j chi(HFK(K, j)) T^j`.
    pub fn alexander_polynomial(&self) -> LaurentPoly {
        let Some((lo, hi)) = self.alexander_span() else {
            return LaurentPoly::zero();
        };
        let groups: Vec<(i64, GradedGroup)> = (lo..=hi).map(|j| (j, self.hfk(j))).collect();
        euler_poly(groups.iter().map(|(j, g)| (*j, g))).expect("integer gradings")
    }

    pub fn to_companion(&self) -> Result<CompanionData> {
        self.validate().map_err(Error::Validation)?;
        let g = self.genus();
        let gi = g as i64;
        let data = CompanionData {
            name: self.name.clone(),
            genus: g,
            tau: self.tau(),
            sub_homology: (-gi..gi).map(|i| (i, self.sublevel_homology(i))).collect(),
            quot_homology: (-gi..gi).map(|i| (i, self.quotient_homology(i))).collect(),
        };
        data.validate()?;
        Ok(data.pruned())
    }

    /// The reflected knot: gradings negated, differential transposed.
    pub fn mirror(&self) -> FilteredKnotComplex {
        FilteredKnotComplex {
            name: mirror_name(&self.name),
            generators: self
                .generators
                .iter()
                .map(|g| Generator::new(-g.maslov, -g.alexander))
                .collect(),
            differential: self.differential.transpose(),
        }
    }

    /// Same complex with generators permuted into a canonical order, for
    /// comparisons that ignore generator labelling.
    pub fn canonical_generators(&self) -> Vec<Generator> {
        let mut g = self.generators.clone();
        g.sort();
        g
    }
}

pub(crate) fn mirror_name(name: &str) -> String {
    match name {
        "unknot" => "unknot".into(),
        "figure8" => "figure8".into(),
        "trefoil_rh" => "trefoil_lh".into(),
        "trefoil_lh" => "trefoil_rh".into(),
        _ => match name.strip_prefix("mirror(").and_then(|s| s.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("mirror({name})"),
        },
    }
}
