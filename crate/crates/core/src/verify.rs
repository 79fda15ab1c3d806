//! The invariant suite behind `verify`: every cross-check between the
//! doubling formulas, the skein simulator, the meridian sums and surgery.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::FilteredKnotComplex;
use crate::doubling::{
    alexander_of_double, branch_level, double_hfk, double_to_companion, hfk_top_stable,
    mirror_companion, tau_double, Branch, Clasp,
};
use crate::error::Result;
use crate::knot_db::KnotRecord;
use crate::meridian::{guard, meridian_sum_check};
use crate::skein::skein_interpolate;
use crate::surgery::{hf_plus_one, hf_plus_one_branch};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub knot: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

struct Collector {
    knot: String,
    out: Vec<CheckOutcome>,
}

impl Collector {
    /// Records a check; an `Err` counts as a failure carrying the error text.
    fn record(&mut self, check: &str, result: Result<std::result::Result<(), String>>) {
        let (passed, detail) = match result {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(msg)) => (false, msg),
            Err(e) => (false, e.to_string()),
        };
        self.out.push(CheckOutcome {
            knot: self.knot.clone(),
            check: check.to_string(),
            passed,
            detail,
        });
    }
}

fn first_failure<I: IntoIterator<Item = Option<String>>>(items: I) -> std::result::Result<(), String> {
    match items.into_iter().flatten().next() {
        Some(msg) => Err(msg),
        None => Ok(()),
    }
}

fn complex_checks(c: &FilteredKnotComplex, col: &mut Collector) {
    col.record(
        "complex is valid",
        Ok(c.validate().map_err(|v| v.to_string())),
    );
    let p = c.alexander_polynomial();
    col.record(
        "Alexander polynomial symmetric with value 1 at T = 1",
        Ok(if p.is_symmetric() && p.eval_at_one() == 1 {
            Ok(())
        } else {
            Err(format!("got {p}"))
        }),
    );
    let m = c.mirror();
    col.record(
        "mirror negates tau",
        Ok(if m.tau() == -c.tau() {
            Ok(())
        } else {
            Err(format!("tau {} but mirror has {}", c.tau(), m.tau()))
        }),
    );
    let g = c.genus() as i64;
    col.record(
        "mirror negates Alexander and Maslov gradings of HFK",
        (-g..=g)
            .map(|j| -> Result<Option<String>> {
                let expected = c.hfk(-j).dual_negate()?;
                let got = m.hfk(j);
                Ok((got != expected).then(|| format!("level {j}: {got} vs {expected}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(first_failure),
    );
}

fn knot_checks(record: &KnotRecord, t_range: (i64, i64)) -> Vec<CheckOutcome> {
    let mut col = Collector {
        knot: record.key.clone(),
        out: Vec::new(),
    };
    complex_checks(&record.complex, &mut col);
    let k = match record.companion() {
        Ok(k) => k,
        Err(e) => {
            col.record("companion data", Err(e));
            return col.out;
        }
    };
    col.record("companion data satisfies exact sequences", k.validate().map(Ok));
    col.record(
        "mirror of companion data is an involution",
        mirror_companion(&k)
            .and_then(|m| mirror_companion(&m))
            .map(|mm| if mm.name == k.name && mm == k { Ok(()) } else { Err("differs".into()) }),
    );
    let (lo, hi) = t_range;
    let g = k.genus as i64;

    for clasp in [Clasp::Positive, Clasp::Negative] {
        col.record(
            &format!("{clasp} doubles satisfy symmetry, rank and Alexander identities"),
            (lo..=hi)
                .map(|t| -> Result<Option<String>> {
                    let d = double_hfk(&k, t, clasp)?;
                    d.check_invariants()?;
                    let chi = d.euler_poly()?;
                    let expected = alexander_of_double(t, clasp);
                    Ok((chi != expected).then(|| format!("t = {t}: {chi} vs {expected}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(first_failure),
        );
        col.record(
            &format!("{clasp} doubles convert back to valid companion data"),
            (lo..=hi)
                .map(|t| double_to_companion(&double_hfk(&k, t, clasp)?).map(|_| None))
                .collect::<Result<Vec<Option<String>>>>()
                .map(first_failure),
        );
    }

    col.record(
        "tau of + doubles is 1 below 2 tau and 0 from there on",
        Ok(first_failure((lo..=hi).map(|t| {
            let tau = tau_double(&k, t, Clasp::Positive);
            let expected = i64::from(t < 2 * k.tau);
            (tau != expected).then(|| format!("t = {t}: {tau}"))
        }))),
    );
    col.record(
        "tau of + doubles steps by at most one as t decreases",
        Ok(first_failure((lo..hi).map(|t| {
            let (below, above) = (
                tau_double(&k, t, Clasp::Positive),
                tau_double(&k, t + 1, Clasp::Positive),
            );
            (!(above <= below && below <= above + 1)).then(|| format!("t = {t}: {above} -> {below}"))
        }))),
    );
    col.record(
        "top and bottom groups agree across branches at t = 2 tau",
        [1, -1]
            .into_iter()
            .map(|level| -> Result<Option<String>> {
                let t = 2 * k.tau;
                let a = branch_level(&k, t, Branch::Stable, level)?;
                let b = branch_level(&k, t, Branch::Low, level)?;
                Ok((a != b).then(|| format!("level {level}: {a} vs {b}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(first_failure),
    );
    col.record(
        "top group matches the stable formulas for |t| >= 2g + 2",
        (lo..=hi)
            .filter(|t| t.abs() >= guard(&k))
            .map(|t| -> Result<Option<String>> {
                let top = double_hfk(&k, t, Clasp::Positive)?.top;
                let sign = if t > 0 { Clasp::Positive } else { Clasp::Negative };
                let stable = hfk_top_stable(&k, t.abs(), sign)?;
                Ok((top != stable).then(|| format!("t = {t}: {top} vs {stable}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(first_failure),
    );

    let t_high = 2 * g + 6;
    col.record(
        "skein trajectory reproduces top groups and tau",
        skein_interpolate(&k, t_high).and_then(|states| {
            states
                .iter()
                .map(|s| -> Result<Option<String>> {
                    let d = double_hfk(&k, s.t, Clasp::Positive)?;
                    Ok((d.top != s.top || d.tau != s.tau_current).then(|| {
                        format!("t = {}: skein {} (tau {}) vs {} (tau {})", s.t, s.top, s.tau_current, d.top, d.tau)
                    }))
                })
                .collect::<Result<Vec<_>>>()
                .map(first_failure)
        }),
    );
    col.record(
        "skein endpoints match the stable formulas",
        skein_interpolate(&k, t_high).and_then(|states| {
            let first = &states[0].top;
            let last = &states[states.len() - 1].top;
            let plus = hfk_top_stable(&k, t_high, Clasp::Positive)?;
            let minus = hfk_top_stable(&k, t_high, Clasp::Negative)?;
            Ok(if *first == plus && *last == minus {
                Ok(())
            } else {
                Err(format!("{first} / {last} vs {plus} / {minus}"))
            })
        }),
    );

    col.record(
        "meridian groups sum to the top group",
        (guard(&k)..=guard(&k) + 6)
            .flat_map(|a| [a, -a])
            .map(|t| {
                meridian_sum_check(&k, t)
                    .map(|r| r.failures.first().map(|f| format!("t = {t}: {f}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(first_failure),
    );

    col.record(
        "+1 surgery has Euler characteristic 1 and odd rank",
        (lo..=hi)
            .map(|t| -> Result<Option<String>> {
                let h = hf_plus_one(&k, t)?;
                Ok((h.rank() % 2 == 0).then(|| format!("t = {t}: even rank {}", h.rank())))
            })
            .collect::<Result<Vec<_>>>()
            .map(first_failure),
    );
    col.record(
        "+1 surgery branches agree at t = 2 tau",
        (|| {
            let t = 2 * k.tau;
            let a = hf_plus_one_branch(&k, t, Branch::Stable)?;
            let b = hf_plus_one_branch(&k, t, Branch::Low)?;
            Ok(if a == b { Ok(()) } else { Err(format!("{a} vs {b}")) })
        })(),
    );
    col.out
}

/// Runs the suite for each record over `t_range`, knots in parallel;
/// output order follows `records`.
pub fn run_suite(records: &[KnotRecord], t_range: (i64, i64)) -> Vec<CheckOutcome> {
    records
        .par_iter()
        .map(|r| knot_checks(r, t_range))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
