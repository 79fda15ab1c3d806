//! Knot Floer homology of twisted Whitehead doubles.
//!
//! A double `D_±(K, t)` has genus at most one, so its knot Floer homology is
//! three groups at Alexander levels `1, 0, -1`. The positive-clasp groups are
//! closed formulas in the companion's filtration homologies; the negative
//! clasp is always obtained from `D_-(K, t) = mirror(D_+(K̄, -t))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{combine, euler_poly, grading, GradedGroup, LaurentPoly};
use crate::complex::{mirror_name, CompanionData};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clasp {
    Positive,
    Negative,
}

impl Clasp {
    pub fn flipped(self) -> Clasp {
        match self {
            Clasp::Positive => Clasp::Negative,
            Clasp::Negative => Clasp::Positive,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Clasp::Positive => "+",
            Clasp::Negative => "-",
        }
    }
}

impl fmt::Display for Clasp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Clasp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "positive" => Ok(Clasp::Positive),
            "-" | "minus" | "negative" => Ok(Clasp::Negative),
            _ => Err(Error::InvalidArgument(format!(
                "clasp must be + or -, got '{s}'"
            ))),
        }
    }
}

impl Serialize for Clasp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Clasp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The knot Floer homology of a genus-at-most-one double.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusOneHFK {
    pub companion: String,
    pub t: i64,
    pub clasp: Clasp,
    pub tau: i64,
    pub top: GradedGroup,
    pub mid: GradedGroup,
    pub bot: GradedGroup,
    /// The higher differential `d_2` vanishes.
    pub d2_zero: bool,
    /// `d_1^0: HFK(0) -> HFK(-1)` is onto.
    pub d1_0_surjective: bool,
}

impl GenusOneHFK {
    /// Group at Alexander level `i`; zero outside `[-1, 1]`.
    pub fn level(&self, i: i64) -> GradedGroup {
        match i {
            1 => self.top.clone(),
            0 => self.mid.clone(),
            -1 => self.bot.clone(),
            _ => GradedGroup::zero(),
        }
    }

    pub fn name(&self) -> String {
        format!("D{}({},{})", self.clasp, self.companion, self.t)
    }

    pub fn total_rank(&self) -> u64 {
        self.top.rank() + self.mid.rank() + self.bot.rank()
    }

    pub fn euler_poly(&self) -> Result<LaurentPoly> {
        euler_poly([(1, &self.top), (0, &self.mid), (-1, &self.bot)])
    }

    /// The reflected knot: levels and gradings negated.
    pub fn mirror(&self) -> Result<GenusOneHFK> {
        let tau = -self.tau;
        Ok(GenusOneHFK {
            companion: mirror_name(&self.companion),
            t: -self.t,
            clasp: self.clasp.flipped(),
            tau,
            top: self.bot.dual_negate()?,
            mid: self.mid.dual_negate()?,
            bot: self.top.dual_negate()?,
            d2_zero: true,
            d1_0_surjective: tau != -1,
        })
    }

    /// Integrality, the level symmetry, the rank identity tying `mid` to
    /// `top`, `bot` and tau, and the Alexander polynomial.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Invariant(format!("{}: {msg}", self.name())));
        for g in [&self.top, &self.mid, &self.bot] {
            if !g.is_integral() {
                return fail(format!("non-integral grading in {g}"));
            }
        }
        let top = self.top.integral_ranks()?;
        let bot = self.bot.integral_ranks()?;
        let shifted_bot: std::collections::BTreeMap<i64, u64> =
            bot.iter().map(|(d, r)| (d + 2, *r)).collect();
        if top != shifted_bot {
            return fail(format!(
                "top {} is not bottom {} shifted up by two",
                self.top, self.bot
            ));
        }
        let (t, m, b) = (
            self.top.rank() as i64,
            self.mid.rank() as i64,
            self.bot.rank() as i64,
        );
        let expected = match self.tau {
            0 => t + b + 1,
            1 | -1 => t + b - 1,
            other => return fail(format!("tau {other} outside [-1, 1]")),
        };
        if m != expected {
            return fail(format!(
                "rank of level 0 is {m}, tau {} requires {expected}",
                self.tau
            ));
        }
        let chi = self.euler_poly()?;
        let expected = alexander_of_double(self.t, self.clasp);
        if chi != expected {
            return fail(format!(
                "graded Euler characteristic {chi} differs from {expected}"
            ));
        }
        Ok(())
    }
}

/// Which display of the positive-clasp formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `t >= 2 tau(K)`.
    Stable,
    /// `t < 2 tau(K)`.
    Low,
}

impl Branch {
    pub fn for_twist(k: &CompanionData, t: i64) -> Branch {
        if t >= 2 * k.tau {
            Branch::Stable
        } else {
            Branch::Low
        }
    }
}

/// Applies signed free exponents `(grading, k)` to `base`, all additions
/// before any removal.
fn with_free_terms(base: GradedGroup, terms: &[(i64, i64)]) -> Result<GradedGroup> {
    let mut ordered = terms.to_vec();
    ordered.sort_by_key(|&(_, k)| k < 0);
    ordered
        .into_iter()
        .try_fold(base, |g, (d, k)| g.adjust_free(grading(d), k))
}

/// One Alexander level of the positive-clasp double, evaluated with the
/// formulas of `branch` regardless of whether they apply to `t`.
pub fn branch_level(k: &CompanionData, t: i64, branch: Branch, level: i64) -> Result<GradedGroup> {
    let g = k.genus as i64;
    let tau = k.tau;
    let sigma = k.sub_sum();
    let (shift, mult) = match level {
        1 => (1, 2),
        0 => (0, 4),
        -1 => (-1, 2),
        _ => return Ok(GradedGroup::zero()),
    };
    let base = combine([(&sigma, grading(shift), mult)]);
    let terms: Vec<(i64, i64)> = match (branch, level) {
        (Branch::Stable, 1) => vec![(1, t - 2 * g - 2)],
        (Branch::Stable, 0) => vec![(0, 2 * t - 4 * g - 3)],
        (Branch::Stable, _) => vec![(-1, t - 2 * g - 2)],
        (Branch::Low, 1) => vec![(1, 2 * tau - 2 * g - 2), (0, 2 * tau - t)],
        (Branch::Low, 0) => vec![(0, 4 * tau - 4 * g - 4), (-1, 4 * tau - 2 * t - 1)],
        (Branch::Low, _) => vec![(-1, 2 * tau - 2 * g - 2), (-2, 2 * tau - t)],
    };
    with_free_terms(base, &terms)
}

fn double_positive(k: &CompanionData, t: i64) -> Result<GenusOneHFK> {
    let branch = Branch::for_twist(k, t);
    let out = GenusOneHFK {
        companion: k.name.clone(),
        t,
        clasp: Clasp::Positive,
        tau: tau_double(k, t, Clasp::Positive),
        top: branch_level(k, t, branch, 1)?,
        mid: branch_level(k, t, branch, 0)?,
        bot: branch_level(k, t, branch, -1)?,
        d2_zero: true,
        d1_0_surjective: true,
    };
    out.check_invariants()?;
    Ok(out)
}

/// `HFK(D_±(K, t))`.
pub fn double_hfk(k: &CompanionData, t: i64, clasp: Clasp) -> Result<GenusOneHFK> {
    match clasp {
        Clasp::Positive => double_positive(k, t),
        Clasp::Negative => {
            let out = double_positive(&mirror_companion(k)?, -t)?.mirror()?;
            out.check_invariants()?;
            Ok(out)
        }
    }
}

/// `tau(D_±(K, t))`.
pub fn tau_double(k: &CompanionData, t: i64, clasp: Clasp) -> i64 {
    fn positive(tau: i64, t: i64) -> i64 {
        i64::from(t < 2 * tau)
    }
    match clasp {
        Clasp::Positive => positive(k.tau, t),
        Clasp::Negative => -positive(-k.tau, -t),
    }
}

pub fn mirror_companion(k: &CompanionData) -> Result<CompanionData> {
    k.mirror()
}

/// Recovers the filtration data of a double from its three groups, so that
/// it can be doubled again.
///
/// Uses that `d_2 = 0` and that `d_1^0` is onto: the sublevel `F(0)` is the
/// kernel of `d_1^0`, and the quotient by `F(-1)` is computed from the
/// cokernel of `d_1^1`, which misses one class exactly when tau is one.
pub fn double_to_companion(d: &GenusOneHFK) -> Result<CompanionData> {
    if d.clasp == Clasp::Negative {
        let reflected = double_to_companion(&d.mirror()?)?;
        let mut out = mirror_companion(&reflected)?;
        out.name = d.name();
        return Ok(out);
    }
    if d.top.is_zero() {
        return Ok(CompanionData::unknot(d.name()));
    }
    let top = d.top.integral_ranks()?;
    let mid = d.mid.integral_ranks()?;
    let bot = d.bot.integral_ranks()?;
    let rank = |map: &std::collections::BTreeMap<i64, u64>, m: i64| *map.get(&m).unwrap_or(&0) as i64;

    let build = |level: i64,
                 degrees: Vec<i64>,
                 f: &dyn Fn(i64) -> i64|
     -> Result<GradedGroup> {
        let mut ranks = Vec::new();
        for m in degrees {
            let r = f(m);
            if r < 0 {
                return Err(Error::NegativeRank {
                    level,
                    grading: grading(m),
                });
            }
            ranks.push((grading(m), r as u64));
        }
        Ok(GradedGroup::from_free_ranks(ranks))
    };

    let mut kernel_degrees: Vec<i64> = mid.keys().copied().collect();
    kernel_degrees.extend(bot.keys().map(|m| m + 1));
    kernel_degrees.sort_unstable();
    kernel_degrees.dedup();
    let sub0 = build(0, kernel_degrees, &|m| rank(&mid, m) - rank(&bot, m - 1))?;

    let survivor = i64::from(d.tau == 1);
    let mut coker_degrees: Vec<i64> = mid.keys().copied().collect();
    coker_degrees.extend(top.keys().map(|m| m - 1));
    coker_degrees.push(-1);
    coker_degrees.sort_unstable();
    coker_degrees.dedup();
    let coker = build(-1, coker_degrees, &|m| {
        rank(&mid, m) - rank(&top, m + 1) + survivor * i64::from(m == -1)
    })?;
    let quot_minus = coker.adjust_free(grading(0), survivor)?;

    let out = CompanionData {
        name: d.name(),
        genus: 1,
        tau: d.tau,
        sub_homology: [(-1, d.bot.clone()), (0, sub0)].into(),
        quot_homology: [(-1, quot_minus), (0, d.top.clone())].into(),
    }
    .pruned();
    out.validate()?;
    Ok(out)
}

/// `n` successive doubles with fixed twist and clasp; entry `k` is the
/// `(k+1)`-fold double of `K`.
pub fn iterate_double(
    k: &CompanionData,
    n: usize,
    t: i64,
    clasp: Clasp,
) -> Result<Vec<GenusOneHFK>> {
    let mut out = Vec::with_capacity(n);
    let mut current = k.clone();
    for _ in 0..n {
        let d = double_hfk(&current, t, clasp)?;
        current = double_to_companion(&d)?;
        out.push(d);
    }
    Ok(out)
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k as u64).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Closed form for the `n`-fold untwisted positive double of the
/// figure-eight knot (`n = 0` is the figure-eight itself).
pub fn figure8_iterated(n: u32) -> GenusOneHFK {
    let scale = 1u64 << n;
    let level = |offset: i64, mult: u64| {
        GradedGroup::from_free_ranks(
            (0..=n).map(|k| (grading(offset - k as i64), mult * binomial(n, k))),
        )
    };
    GenusOneHFK {
        companion: match n {
            0 => "unknot".into(),
            _ => (1..n).fold("figure8".to_string(), |c, _| format!("D+({c},0)")),
        },
        t: if n == 0 { 1 } else { 0 },
        clasp: Clasp::Positive,
        tau: 0,
        top: level(1, scale),
        mid: level(0, 2 * scale).adjust_free(grading(0), 1).expect("addition"),
        bot: level(-1, scale),
        d2_zero: true,
        d1_0_surjective: true,
    }
}

/// Top group of `D_+(K, t)` (`sign` +) or of `D_+(K, -t)` (`sign` -) for
/// large `t > 0`, written without reference to tau.
pub fn hfk_top_stable(k: &CompanionData, t: i64, sign: Clasp) -> Result<GradedGroup> {
    if t <= 0 {
        return Err(Error::InvalidArgument(format!(
            "stable top group needs t > 0, got {t}"
        )));
    }
    let g = k.genus as i64;
    match sign {
        Clasp::Positive => with_free_terms(
            combine([(&k.sub_sum(), grading(1), 2)]),
            &[(1, t - 2 * g - 2)],
        ),
        Clasp::Negative => with_free_terms(
            combine([(&k.quot_sum(), grading(0), 2)]),
            &[(0, t - 2 * g)],
        ),
    }
}

/// Alexander polynomial of `D_±(K, t)`; independent of `K`.
pub fn alexander_of_double(t: i64, clasp: Clasp) -> LaurentPoly {
    let s = match clasp {
        Clasp::Positive => t,
        Clasp::Negative => -t,
    };
    LaurentPoly::from_terms([(-s, 1), (2 * s + 1, 0), (-s, -1)])
}
