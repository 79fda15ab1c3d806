//! Rank bookkeeping along the skein sequence from `D_+(K, t)` to `D_+(K, t-1)`.
//!
//! Each crossing change sits in an exact triangle with the Hopf link, whose
//! top group has rank one in grading one-half. Depending on whether the map
//! out of the Hopf group vanishes, the top group either loses a summand in
//! grading one or gains one in grading zero. Nothing here consults the
//! closed formula for doubles.

use serde::Serialize;

use crate::algebra::{grading, GradedGroup};
use crate::complex::CompanionData;
use crate::doubling::{hfk_top_stable, Clasp};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkeinState {
    pub t: i64,
    pub top: GradedGroup,
    pub tau_current: i64,
}

/// One crossing change, lowering `t` by one.
pub fn skein_step(s: &SkeinState, f2_trivial: bool) -> Result<SkeinState> {
    let (top, tau_current) = if f2_trivial {
        (s.top.adjust_free(grading(1), -1)?, 0)
    } else {
        (s.top.adjust_free(grading(0), 1)?, 1)
    };
    Ok(SkeinState {
        t: s.t - 1,
        top,
        tau_current,
    })
}

/// States for every `t` from `t_high` down to `-t_high`, starting from the
/// stable top group. The Hopf map is trivial for the first `t_high - 2 tau`
/// steps and nontrivial afterwards; the last state must match the stable
/// formula for large negative twisting.
pub fn skein_interpolate(k: &CompanionData, t_high: i64) -> Result<Vec<SkeinState>> {
    let floor = (2 * k.tau).max(2 * k.genus as i64 + 2);
    if t_high < floor {
        return Err(Error::InvalidArgument(format!(
            "t_high = {t_high} below {floor}"
        )));
    }
    let trivial_steps = t_high - 2 * k.tau;
    let mut states = Vec::with_capacity(2 * t_high as usize + 1);
    let mut s = SkeinState {
        t: t_high,
        top: hfk_top_stable(k, t_high, Clasp::Positive)?,
        tau_current: 0,
    };
    for step in 0..2 * t_high {
        let next = skein_step(&s, step < trivial_steps)?;
        states.push(s);
        s = next;
    }
    let expected = hfk_top_stable(k, t_high, Clasp::Negative)?;
    if s.top != expected {
        return Err(Error::TerminalMismatch {
            found: s.top.to_string(),
            expected: expected.to_string(),
        });
    }
    states.push(s);
    Ok(states)
}
