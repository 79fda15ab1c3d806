//! Knot Floer homology of the meridian in `t`-surgery on a companion.
//!
//! For `|t|` large, `HFK(S³_t(K), μ_K, s_m)` is a sum of two filtration
//! homologies with rational grading shifts, and the total over all `|t|`
//! Spin^c structures has the rank of the top group of `D_+(K, t)`.

use num_rational::Rational64;
use serde::Serialize;

use crate::algebra::{combine, grading, GradedGroup, Grading};
use crate::complex::CompanionData;
use crate::doubling::{double_hfk, hfk_top_stable, Clasp};
use crate::error::{Error, Result};

/// `d_±(m) = (t - (2m ± t)^2) / 4t` for `t > 0`.
pub fn d_correction(m: i64, t: i64, sign: Clasp) -> Result<Grading> {
    if t <= 0 {
        return Err(Error::InvalidArgument(format!(
            "correction term needs t > 0, got {t}"
        )));
    }
    let s = match sign {
        Clasp::Positive => 2 * m + t,
        Clasp::Negative => 2 * m - t,
    };
    Ok(Rational64::new(t - s * s, 4 * t))
}

/// Spin^c labels `floor(-|t|/2) + 1 ..= floor(|t|/2)`.
pub fn spin_c_range(t: i64) -> std::ops::RangeInclusive<i64> {
    let a = t.abs();
    ((-a).div_euclid(2) + 1)..=a.div_euclid(2)
}

/// Smallest `|t|` at which every filtration level in the Spin^c range has stabilized.
pub fn guard(k: &CompanionData) -> i64 {
    2 * k.genus as i64 + 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianGroup {
    pub m: i64,
    pub t: i64,
    pub group: GradedGroup,
    /// False when `|t|` is below [`guard`] and the formula is not known to apply.
    pub within_guard: bool,
}

pub fn hfk_meridian(k: &CompanionData, t: i64, m: i64) -> Result<MeridianGroup> {
    if t == 0 {
        return Err(Error::InvalidArgument("meridian groups need t != 0".into()));
    }
    if !spin_c_range(t).contains(&m) {
        return Err(Error::InvalidArgument(format!(
            "Spin^c label {m} outside {:?} for t = {t}",
            spin_c_range(t)
        )));
    }
    let a = t.abs();
    let twice_m = grading(2 * m);
    let group = if t > 0 {
        let d = d_correction(m, a, Clasp::Negative)?;
        combine([
            (&k.sub(m), -d, 1),
            (&k.sub(-m - 1), twice_m - d, 1),
        ])
    } else {
        let d = d_correction(m, a, Clasp::Positive)?;
        combine([
            (&k.quot(m), d, 1),
            (&k.quot(-m - 1), twice_m + d, 1),
        ])
    };
    Ok(MeridianGroup {
        m,
        t,
        group,
        within_guard: a >= guard(k),
    })
}

pub fn meridian_groups(k: &CompanionData, t: i64) -> Result<Vec<MeridianGroup>> {
    if t == 0 {
        return Err(Error::InvalidArgument("meridian groups need t != 0".into()));
    }
    spin_c_range(t).map(|m| hfk_meridian(k, t, m)).collect()
}

/// The unshifted sum over Spin^c structures: `sum_m H(F(m)) + H(F(-m-1))`
/// moved up by one for `t > 0`, and the same with quotients for `t < 0`.
pub fn stripped_sum(k: &CompanionData, t: i64) -> GradedGroup {
    spin_c_range(t)
        .map(|m| {
            if t > 0 {
                (k.sub(m) + k.sub(-m - 1)).shifted(grading(1))
            } else {
                k.quot(m) + k.quot(-m - 1)
            }
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeridianReport {
    pub t: i64,
    pub within_guard: bool,
    pub groups: Vec<MeridianGroup>,
    pub meridian_rank: u64,
    pub top: GradedGroup,
    pub stripped_sum: GradedGroup,
    pub stable_top: GradedGroup,
    pub failures: Vec<String>,
}

impl MeridianReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares the Spin^c-summed meridian ranks with the top group of
/// `D_+(K, t)`, and the unshifted sum with it as graded groups.
pub fn meridian_sum_check(k: &CompanionData, t: i64) -> Result<MeridianReport> {
    let groups = meridian_groups(k, t)?;
    let meridian_rank = groups.iter().map(|g| g.group.rank()).sum();
    let top = double_hfk(k, t, Clasp::Positive)?.top;
    let sign = if t > 0 { Clasp::Positive } else { Clasp::Negative };
    let stable_top = hfk_top_stable(k, t.abs(), sign)?;
    let stripped = stripped_sum(k, t);

    let mut failures = Vec::new();
    for g in &groups {
        let unshifted = if t > 0 {
            k.sub(g.m).rank() + k.sub(-g.m - 1).rank()
        } else {
            k.quot(g.m).rank() + k.quot(-g.m - 1).rank()
        };
        if g.group.rank() != unshifted {
            failures.push(format!("m = {}: rank {} but pieces have {unshifted}", g.m, g.group.rank()));
        }
        if let Some(bad) = g.group.grading_denominators().find(|den| (4 * t.abs()) % den != 0) {
            failures.push(format!("m = {}: grading denominator {bad} does not divide {}", g.m, 4 * t.abs()));
        }
    }
    if meridian_rank != top.rank() {
        failures.push(format!(
            "Spin^c total rank {meridian_rank} differs from top rank {}",
            top.rank()
        ));
    }
    if stripped != top {
        failures.push(format!("unshifted sum {stripped} differs from top group {top}"));
    }
    if stripped != stable_top {
        failures.push(format!("unshifted sum {stripped} differs from stable formula {stable_top}"));
    }
    Ok(MeridianReport {
        t,
        within_guard: t.abs() >= guard(k),
        groups,
        meridian_rank,
        top,
        stripped_sum: stripped,
        stable_top,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot_db;

    fn companion(key: &str) -> CompanionData {
        knot_db::load(key).unwrap().companion.unwrap()
    }

    fn q(n: i64, d: i64) -> Grading {
        Rational64::new(n, d)
    }

    #[test]
    fn correction_examples() {
        assert_eq!(d_correction(0, 1, Clasp::Negative).unwrap(), q(0, 1));
        assert_eq!(d_correction(0, 4, Clasp::Negative).unwrap(), q(-3, 4));
        assert_eq!(d_correction(2, 4, Clasp::Negative).unwrap(), q(1, 4));
        assert!(d_correction(0, 0, Clasp::Negative).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(spin_c_range(3), -1..=1);
        assert_eq!(spin_c_range(-4), -1..=2);
        assert_eq!(spin_c_range(5).count(), 5);
        for t in 1..=50 {
            assert_eq!(spin_c_range(t).count() as i64, t);
        }
    }

    #[test]
    fn lens_space_gradings() {
        let u = companion("unknot");
        let gradings = |t: i64| -> Vec<GradedGroup> {
            meridian_groups(&u, t).unwrap().into_iter().map(|g| g.group).collect()
        };
        let one = |n, d| GradedGroup::free(q(n, d), 1);
        assert_eq!(gradings(3), vec![one(-1, 6), one(1, 2), one(-1, 6)]);
        assert_eq!(
            gradings(5),
            vec![one(-1, 5), one(1, 5), one(1, 1), one(1, 5), one(-1, 5)]
        );
    }

    #[test]
    fn stabilized_structures_are_rank_one() {
        let k = companion("trefoil_rh");
        for g in meridian_groups(&k, 10).unwrap() {
            if g.m.abs() >= 2 {
                assert_eq!(g.group.rank(), 1, "m = {}", g.m);
            }
        }
        assert!(matches!(hfk_meridian(&k, 10, 6), Err(Error::InvalidArgument(_))));
        assert!(!hfk_meridian(&k, 3, 0).unwrap().within_guard);
        assert!(matches!(meridian_groups(&k, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn sum_checks() {
        let k = companion("trefoil_rh");
        let r = meridian_sum_check(&k, 10).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.meridian_rank, 10);
        let r = meridian_sum_check(&k, -10).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.meridian_rank, 14);
        let r = meridian_sum_check(&companion("unknot"), 5).unwrap();
        assert!(r.passed());
        assert_eq!(r.meridian_rank, 5);
    }
}
