//! Finitely generated abelian groups graded by a rational Maslov grading.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::{smith_normal_form, IntegerMatrix};
use crate::error::{Error, Result};

/// Maslov grading. Integral for knots in the three-sphere, rational after surgery.
pub type Grading = num_rational::Rational64;

pub fn grading(n: i64) -> Grading {
    Grading::from_integer(n)
}

/// Parses `"3"`, `"-1/6"` and similar.
pub fn parse_grading(s: &str) -> Option<Grading> {
    s.trim().parse().ok()
}

/// Free rank and invariant factors at a single grading.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Summand {
    pub free: u64,
    /// Invariant factors, each at least 2 and dividing the next.
    pub torsion: Vec<u64>,
}

impl Summand {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

/// Sparse map from grading to summand. Zero summands are never stored, so
/// structural equality is group isomorphism.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    entries: BTreeMap<Grading, Summand>,
}

impl GradedGroup {
    pub fn zero() -> Self {
        GradedGroup::default()
    }

    /// `Z^rank` concentrated in one grading.
    pub fn free(at: Grading, rank: u64) -> Self {
        let mut g = GradedGroup::zero();
        g.add_free(at, rank);
        g
    }

    /// `Z_(d)` for an integer grading `d`.
    pub fn z(d: i64) -> Self {
        Self::free(grading(d), 1)
    }

    /// Builds a free group from `(grading, rank)` pairs; repeated gradings accumulate.
    pub fn from_free_ranks<I: IntoIterator<Item = (Grading, u64)>>(ranks: I) -> Self {
        let mut g = GradedGroup::zero();
        for (d, r) in ranks {
            g.add_free(d, r);
        }
        g
    }

    /// Adds torsion summands `Z/n` at a grading; the result is renormalised
    /// into invariant factors. Factors 0 and 1 are ignored.
    pub fn with_torsion(mut self, at: Grading, factors: &[u64]) -> Self {
        let entry = self.entries.entry(at).or_default();
        let mut all = entry.torsion.clone();
        all.extend(factors.iter().copied().filter(|&f| f > 1));
        entry.torsion = normalize_torsion(&all);
        if entry.is_zero() {
            self.entries.remove(&at);
        }
        self
    }

    fn add_free(&mut self, at: Grading, rank: u64) {
        if rank == 0 {
            return;
        }
        self.entries.entry(at).or_default().free += rank;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Grading, &Summand)> {
        self.entries.iter()
    }

    pub fn gradings(&self) -> impl Iterator<Item = Grading> + '_ {
        self.entries.keys().copied()
    }

    pub fn summand(&self, at: Grading) -> Option<&Summand> {
        self.entries.get(&at)
    }

    /// Free rank at a grading.
    pub fn rank_at(&self, at: Grading) -> u64 {
        self.entries.get(&at).map_or(0, |s| s.free)
    }

    /// Free rank at an integer grading.
    pub fn rank_in(&self, d: i64) -> u64 {
        self.rank_at(grading(d))
    }

    /// Total free rank.
    pub fn rank(&self) -> u64 {
        self.entries.values().map(|s| s.free).sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.entries.values().any(|s| !s.torsion.is_empty())
    }

    pub fn first_torsion_grading(&self) -> Option<Grading> {
        self.entries
            .iter()
            .find(|(_, s)| !s.torsion.is_empty())
            .map(|(d, _)| *d)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.keys().all(|d| d.is_integer())
    }

    /// Free rank as a map from integer grading; fails on fractional gradings.
    pub fn integral_ranks(&self) -> Result<BTreeMap<i64, u64>> {
        let mut out = BTreeMap::new();
        for (d, s) in &self.entries {
            if !d.is_integer() {
                return Err(Error::NonIntegralGrading(*d));
            }
            if s.free > 0 {
                out.insert(d.to_integer(), s.free);
            }
        }
        Ok(out)
    }

    /// Every grading moved up by `by`: the group written `H_{*-by}` in the usual notation.
    pub fn shifted(&self, by: Grading) -> Self {
        GradedGroup {
            entries: self.entries.iter().map(|(d, s)| (d + by, s.clone())).collect(),
        }
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> Self {
        let mut out = self.clone();
        for (d, s) in &other.entries {
            let e = out.entries.entry(*d).or_default();
            e.free += s.free;
            if !s.torsion.is_empty() {
                let mut all = e.torsion.clone();
                all.extend_from_slice(&s.torsion);
                e.torsion = normalize_torsion(&all);
            }
        }
        out
    }

    /// `count` copies of `self`.
    pub fn repeated(&self, count: u64) -> Self {
        if count == 0 {
            return GradedGroup::zero();
        }
        let mut out = GradedGroup::zero();
        for (d, s) in &self.entries {
            let mut torsion = Vec::new();
            for _ in 0..count {
                torsion.extend_from_slice(&s.torsion);
            }
            out.entries.insert(
                *d,
                Summand {
                    free: s.free * count,
                    torsion: normalize_torsion(&torsion),
                },
            );
        }
        out
    }

    /// Adds (`k > 0`) or removes (`k < 0`) free summands at grading `at`.
    ///
    /// Removal is the quotient by a rank-`|k|` free subgroup supported at `at`
    /// and never eats into torsion.
    pub fn adjust_free(&self, at: Grading, k: i64) -> Result<Self> {
        let mut out = self.clone();
        if k >= 0 {
            out.add_free(at, k as u64);
            return Ok(out);
        }
        let needed = k.unsigned_abs();
        let available = self.rank_at(at);
        if available < needed {
            return Err(Error::InsufficientRank {
                grading: at,
                needed,
                available,
            });
        }
        let e = out.entries.get_mut(&at).expect("rank checked above");
        e.free -= needed;
        if e.is_zero() {
            out.entries.remove(&at);
        }
        Ok(out)
    }

    /// The grading-negated group, as appears under mirroring. Torsion-free only.
    pub fn dual_negate(&self) -> Result<Self> {
        if let Some(d) = self.first_torsion_grading() {
            return Err(Error::TorsionUnsupported(d));
        }
        Ok(GradedGroup {
            entries: self.entries.iter().map(|(d, s)| (-d, s.clone())).collect(),
        })
    }

    /// `sum_m (-1)^m rank_m`, torsion ignored.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let mut chi = 0i64;
        for (d, s) in &self.entries {
            if !d.is_integer() {
                return Err(Error::NonIntegralGrading(*d));
            }
            let sign = if d.to_integer().is_even() { 1 } else { -1 };
            chi += sign * s.free as i64;
        }
        Ok(chi)
    }

    /// Denominators of the stored gradings.
    pub fn grading_denominators(&self) -> impl Iterator<Item = i64> + '_ {
        self.entries.keys().map(|d| *d.denom())
    }

    /// Poincaré-polynomial rendering in descending grading, e.g. `q^1 + 3 + q^-1`.
    pub fn poincare_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (d, s) in self.entries.iter().rev() {
            if s.free > 0 {
                terms.push(if d.is_zero() {
                    s.free.to_string()
                } else if s.free == 1 {
                    format!("q^{d}")
                } else {
                    format!("{}q^{d}", s.free)
                });
            }
            for t in &s.torsion {
                terms.push(if d.is_zero() {
                    format!("(Z/{t})")
                } else {
                    format!("(Z/{t})q^{d}")
                });
            }
        }
        terms.join(" + ")
    }
}

/// Direct sum of `group` shifted by `shift`, repeated `multiplicity` times, over all terms.
pub fn combine<'a, I>(terms: I) -> GradedGroup
where
    I: IntoIterator<Item = (&'a GradedGroup, Grading, u64)>,
{
    terms
        .into_iter()
        .fold(GradedGroup::zero(), |acc, (g, shift, mult)| {
            acc.direct_sum(&g.shifted(shift).repeated(mult))
        })
}

impl Add for GradedGroup {
    type Output = GradedGroup;

    fn add(self, rhs: GradedGroup) -> GradedGroup {
        self.direct_sum(&rhs)
    }
}

impl<'a> Add<&'a GradedGroup> for &'a GradedGroup {
    type Output = GradedGroup;

    fn add(self, rhs: &GradedGroup) -> GradedGroup {
        self.direct_sum(rhs)
    }
}

impl std::iter::Sum for GradedGroup {
    fn sum<I: Iterator<Item = GradedGroup>>(iter: I) -> Self {
        iter.fold(GradedGroup::zero(), |a, b| a + b)
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, s) in self.entries.iter().rev() {
            if s.free > 0 {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                if s.free == 1 {
                    write!(f, "Z_({d})")?;
                } else {
                    write!(f, "Z_({d})^{}", s.free)?;
                }
            }
            for t in &s.torsion {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "(Z/{t})_({d})")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedGroup[{self}]")
    }
}

/// Re-expresses a list of cyclic orders as invariant factors `d_1 | d_2 | ...`.
fn normalize_torsion(factors: &[u64]) -> Vec<u64> {
    let diag: Vec<i64> = factors.iter().filter(|&&f| f > 1).map(|&f| f as i64).collect();
    if diag.len() <= 1 {
        return diag.into_iter().map(|f| f as u64).collect();
    }
    let m = IntegerMatrix::diagonal(diag.len(), diag.len(), &diag);
    smith_normal_form(&m)
        .invariant_factors()
        .into_iter()
        .map(|x| x.abs() as u64)
        .filter(|&x| x > 1)
        .collect()
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    grading: String,
    free: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    torsion: Vec<u64>,
}

impl Serialize for GradedGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let recs: Vec<EntryRecord> = self
            .entries
            .iter()
            .rev()
            .map(|(d, e)| EntryRecord {
                grading: d.to_string(),
                free: e.free,
                torsion: e.torsion.clone(),
            })
            .collect();
        recs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let recs = Vec::<EntryRecord>::deserialize(d)?;
        let mut g = GradedGroup::zero();
        for r in recs {
            let at = parse_grading(&r.grading)
                .ok_or_else(|| D::Error::custom(format!("bad grading '{}'", r.grading)))?;
            if r.torsion.iter().any(|&t| t < 2) {
                return Err(D::Error::custom("torsion orders must be at least 2"));
            }
            g.add_free(at, r.free);
            g = g.with_torsion(at, &r.torsion);
        }
        Ok(g)
    }
}
