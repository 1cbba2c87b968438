//! Per-level sampling exponents for the recursive deciders.
//!
//! A schedule stores `δ_0..δ_{L-1}` and the suffix sums `t_0..t_L` with
//! `t_i = δ_i + t_{i+1}`. Level `i` samples about `n^(1-δ_i) log n`
//! vertices and branches over the `⌈n^δ_i⌉` vertices nearest the pivot.

use serde::Serialize;

use crate::error::{KCenterError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScheduleMode {
    /// Every level at 1/2 (one shared sample).
    Combinatorial,
    Omega2,
    Tradeoff,
    OmegaGeneral,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaSchedule {
    pub deltas: Vec<f64>,
    /// One entry longer than `deltas`; the last entry is the base case.
    pub t_values: Vec<f64>,
    pub mode: ScheduleMode,
}

impl DeltaSchedule {
    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn t0(&self) -> f64 {
        self.t_values[0]
    }

    /// Builds a schedule from deltas and the base value `t_L`.
    fn from_deltas(deltas: Vec<f64>, base: f64, mode: ScheduleMode) -> Self {
        let mut t_values = vec![0.0; deltas.len() + 1];
        t_values[deltas.len()] = base;
        for i in (0..deltas.len()).rev() {
            t_values[i] = deltas[i] + t_values[i + 1];
        }
        Self { deltas, t_values, mode }
    }
}

fn need_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(KCenterError::InvalidParams("k must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Fills `δ_{k-i}` for `i = 1..=k` given the first few fixed values and a
/// rule for the rest; `t_k = base`.
fn backward(k: usize, base: f64, fixed: &[f64], rule: impl Fn(usize, f64) -> f64, mode: ScheduleMode) -> DeltaSchedule {
    let mut deltas = vec![0.0; k];
    let mut t_next = base;
    for i in 1..=k {
        let d = if i <= fixed.len() { fixed[i - 1] } else { rule(i, t_next) };
        deltas[k - i] = d;
        t_next += d;
    }
    DeltaSchedule::from_deltas(deltas, base, mode)
}

pub fn plan_deltas_combinatorial(k: usize) -> Result<DeltaSchedule> {
    need_k(k)?;
    Ok(DeltaSchedule::from_deltas(vec![0.5; k], 1.0, ScheduleMode::Combinatorial))
}

/// `δ_{k-1} = δ_{k-2} = 1/3`, `δ_{k-3} = 4/9`, then
/// `δ_{k-i} = (i - t_{k-i+1}) / (i + 1)`, with `t_k = 1`. Smaller `k`
/// truncate the fixed prefix.
pub fn plan_deltas_omega2(k: usize) -> Result<DeltaSchedule> {
    need_k(k)?;
    let fixed = [1.0 / 3.0, 1.0 / 3.0, 4.0 / 9.0];
    Ok(backward(
        k,
        1.0,
        &fixed,
        |i, t| (i as f64 - t) / (i as f64 + 1.0),
        ScheduleMode::Omega2,
    ))
}

/// The same recursion for a general exponent `ω`; the `(ω - 2)` correction
/// applies for `4 <= i <= 13`.
pub fn plan_deltas_omega_general(k: usize, omega: f64) -> Result<DeltaSchedule> {
    need_k(k)?;
    if !(2.0..=3.0).contains(&omega) {
        return Err(KCenterError::InvalidParams(format!("omega must lie in [2, 3], got {omega}")));
    }
    let w = omega;
    let fixed = [
        (2.0 * w - 3.0) / (3.0 * w - 3.0),
        (w * w - 3.0 * w + 3.0) / (3.0 * w - 3.0),
        2.0 * w / (3.0 * w + 3.0),
    ];
    Ok(backward(
        k,
        1.0,
        &fixed,
        |i, t| {
            let c = if i <= 13 { w - 2.0 } else { 0.0 };
            (i as f64 - t + c) / (i as f64 + 1.0)
        },
        ScheduleMode::OmegaGeneral,
    ))
}

/// Schedule for `l` guided levels out of `k`: `t_l = k - l + 1` and
/// `δ_{k-i} = (i - t_{k-i+1} + 1) / (i + 1)` for `k - l + 1 <= i <= k`.
pub fn plan_deltas_tradeoff(k: usize, l: usize) -> Result<DeltaSchedule> {
    need_k(k)?;
    if l == 0 || l > k {
        return Err(KCenterError::InvalidParams(format!("need 1 <= l <= k, got l = {l}, k = {k}")));
    }
    let base = (k - l + 1) as f64;
    let mut deltas = vec![0.0; l];
    let mut t_next = base;
    for i in (k - l + 1)..=k {
        let d = (i as f64 - t_next + 1.0) / (i as f64 + 1.0);
        deltas[k - i] = d;
        t_next += d;
    }
    Ok(DeltaSchedule::from_deltas(deltas, base, ScheduleMode::Tradeoff))
}
