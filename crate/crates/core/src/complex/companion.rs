use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{grading, GradedGroup};
use crate::error::{Error, Result};

/// The invariants of a companion knot that the doubling formulas consume:
/// genus, tau, and the homologies of the filtration levels `F(K, i)` and of
/// the quotients `CF / F(K, i)` for `-g <= i < g`.
///
/// Levels outside that window follow from the adjunction inequality:
/// `H(F(K, i)) = Z_(0)` for `i >= g` and `0` for `i < -g`, and dually for the
/// quotients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionData {
    pub name: String,
    pub genus: u32,
    pub tau: i64,
    #[serde(with = "level_map")]
    pub sub_homology: BTreeMap<i64, GradedGroup>,
    #[serde(with = "level_map")]
    pub quot_homology: BTreeMap<i64, GradedGroup>,
}

impl CompanionData {
    pub fn unknot(name: impl Into<String>) -> Self {
        CompanionData {
            name: name.into(),
            genus: 0,
            tau: 0,
            sub_homology: BTreeMap::new(),
            quot_homology: BTreeMap::new(),
        }
    }

    fn g(&self) -> i64 {
        self.genus as i64
    }

    /// `H_*(F(K, i))` with the out-of-window conventions applied.
    pub fn sub(&self, i: i64) -> GradedGroup {
        if i >= self.g() {
            GradedGroup::z(0)
        } else if i < -self.g() {
            GradedGroup::zero()
        } else {
            self.sub_homology.get(&i).cloned().unwrap_or_default()
        }
    }

    /// `H_*(CF(S^3) / F(K, i))` with the out-of-window conventions applied.
    pub fn quot(&self, i: i64) -> GradedGroup {
        if i >= self.g() {
            GradedGroup::zero()
        } else if i < -self.g() {
            GradedGroup::z(0)
        } else {
            self.quot_homology.get(&i).cloned().unwrap_or_default()
        }
    }

    /// `sum_{i=-g}^{g} H_*(F(K, i))`.
    pub fn sub_sum(&self) -> GradedGroup {
        (-self.g()..=self.g()).map(|i| self.sub(i)).sum()
    }

    /// `sum_{i=-g}^{g} H_*(CF / F(K, i))`.
    pub fn quot_sum(&self) -> GradedGroup {
        (-self.g()..=self.g()).map(|i| self.quot(i)).sum()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.sub_homology
            .values()
            .chain(self.quot_homology.values())
            .all(|g| !g.has_torsion())
    }

    /// Drops explicitly stored zero groups so that equality is canonical.
    pub(crate) fn pruned(mut self) -> Self {
        self.sub_homology.retain(|_, g| !g.is_zero());
        self.quot_homology.retain(|_, g| !g.is_zero());
        self
    }

    /// Checks the tau bound, the stored window, integrality and the rank
    /// relations forced by the long exact sequence of
    /// `0 -> F(K, i) -> CF(S^3) -> CF / F(K, i) -> 0` with `H(CF(S^3)) = Z_(0)`.
    pub fn validate(&self) -> Result<()> {
        let g = self.g();
        if self.tau < -g || self.tau > g {
            return Err(Error::Companion(format!(
                "tau {} outside [-{g}, {g}]",
                self.tau
            )));
        }
        for (what, map) in [("sub", &self.sub_homology), ("quot", &self.quot_homology)] {
            if let Some(i) = map.keys().find(|&&i| i < -g || i >= g) {
                return Err(Error::Companion(format!(
                    "{what}_homology stores level {i} outside [-{g}, {})",
                    g
                )));
            }
        }
        for i in -g..g {
            let sub = self.sub(i).integral_ranks()?;
            let quot = self.quot(i).integral_ranks()?;
            let hit = i64::from(i >= self.tau);
            let missed = i64::from(i < self.tau);
            let mut degrees: Vec<i64> = quot.keys().copied().collect();
            degrees.extend(sub.keys().map(|m| m + 1));
            degrees.extend([0, 1]);
            degrees.sort_unstable();
            degrees.dedup();
            for m in degrees {
                let q = *quot.get(&m).unwrap_or(&0) as i64;
                let f_prev = *sub.get(&(m - 1)).unwrap_or(&0) as i64;
                let expected = match m {
                    1 => f_prev - hit,
                    0 => f_prev + missed,
                    _ => f_prev,
                };
                if q != expected {
                    return Err(Error::Companion(format!(
                        "level {i}: rank of H_{m}(CF/F) is {q}, long exact sequence requires {expected}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Data of the reflected knot. Torsion-free input only.
    ///
    /// Duality exchanges sublevels and quotients:
    /// `H_*(F(K̄, i)) = H_{-*}(CF / F(K, -i-1))`.
    pub fn mirror(&self) -> Result<CompanionData> {
        let g = self.g();
        let mut sub_homology = BTreeMap::new();
        let mut quot_homology = BTreeMap::new();
        for i in -g..g {
            sub_homology.insert(i, self.quot(-i - 1).dual_negate()?);
            quot_homology.insert(i, self.sub(-i - 1).dual_negate()?);
        }
        let out = CompanionData {
            name: super::mirror_name(&self.name),
            genus: self.genus,
            tau: -self.tau,
            sub_homology,
            quot_homology,
        }
        .pruned();
        out.validate()?;
        Ok(out)
    }

    /// Free rank of `H_m(F(K, i))`; convenience for rank bookkeeping.
    pub fn sub_rank(&self, i: i64, m: i64) -> u64 {
        self.sub(i).rank_at(grading(m))
    }
}

mod level_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::algebra::GradedGroup;

    #[derive(Serialize, Deserialize)]
    struct Level {
        level: i64,
        group: GradedGroup,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<i64, GradedGroup>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<Level> = map
            .iter()
            .map(|(&level, g)| Level {
                level,
                group: g.clone(),
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<i64, GradedGroup>, D::Error> {
        let v = Vec::<Level>::deserialize(d)?;
        Ok(v.into_iter()
            .filter(|l| !l.group.is_zero())
            .map(|l| (l.level, l.group))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rht() -> CompanionData {
        CompanionData {
            name: "trefoil_rh".into(),
            genus: 1,
            tau: 1,
            sub_homology: [(-1, GradedGroup::z(-2))].into(),
            quot_homology: [(-1, GradedGroup::z(0) + GradedGroup::z(-1)), (0, GradedGroup::z(0))]
                .into(),
        }
    }

    #[test]
    fn conventions_outside_window() {
        let k = rht();
        assert_eq!(k.sub(1), GradedGroup::z(0));
        assert_eq!(k.sub(-2), GradedGroup::zero());
        assert_eq!(k.quot(1), GradedGroup::zero());
        assert_eq!(k.quot(-2), GradedGroup::z(0));
        assert_eq!(k.sub_sum(), GradedGroup::z(-2) + GradedGroup::z(0));
    }

    #[test]
    fn validation_catches_bad_tau() {
        let mut k = rht();
        assert!(k.validate().is_ok());
        k.tau = 0;
        assert!(matches!(k.validate(), Err(Error::Companion(_))));
        k.tau = 2;
        assert!(matches!(k.validate(), Err(Error::Companion(_))));
    }

    #[test]
    fn mirror_is_an_involution() {
        let k = rht();
        let m = k.mirror().unwrap();
        assert_eq!(m.tau, -1);
        assert_eq!(m.sub(-1), GradedGroup::z(0));
        assert_eq!(m.sub(0), GradedGroup::z(0) + GradedGroup::z(1));
        assert_eq!(m.quot(-1), GradedGroup::zero());
        assert_eq!(m.quot(0), GradedGroup::z(2));
        assert_eq!(m.mirror().unwrap(), k);
        let u = CompanionData::unknot("unknot");
        assert_eq!(u.mirror().unwrap(), u);
    }

    #[test]
    fn serde_round_trip() {
        let k = rht();
        let text = serde_json::to_string(&k).unwrap();
        let back: CompanionData = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k);
    }
}
