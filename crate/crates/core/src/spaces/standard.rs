use super::pointset::{PointSet, MAX_POINTS};
use super::space::FiniteClosureSpace;
use crate::error::{Error, Result};

/// The standard finite spaces. For the interval families the parameter `m`
/// gives the points `{0, .., m}`; for `Discrete`, `Indiscrete` and `Cycle`
/// it is the number of points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardKind {
    /// `J_{m,⊥}`: discrete on `{0..m}`.
    JBot,
    /// `J_{m,⊤}`: indiscrete on `{0..m}`.
    JTop,
    /// `J_m`: `c(i) = { j : |i − j| ≤ 1 }`.
    Path,
    /// `J₊`: `c(0) = {0,1}`, `c(1) = {1}`.
    JPlus,
    /// `J₋`: `c(0) = {0}`, `c(1) = {0,1}`.
    JMinus,
    /// `J_{m,k}`: the i-th rightmost bit of `k` orients the edge `{i−1, i}`.
    Jmk,
    /// `J_{m,≤}`: `c(i) = { j : i ≤ j }`.
    JLe,
    Discrete,
    Indiscrete,
    /// Reflexive symmetric cycle on `m ≥ 3` points.
    Cycle,
}

impl StandardKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "jbot" | "j_bot" => StandardKind::JBot,
            "jtop" | "j_top" => StandardKind::JTop,
            "path" | "jm" | "j_m" => StandardKind::Path,
            "jplus" | "j+" => StandardKind::JPlus,
            "jminus" | "j-" => StandardKind::JMinus,
            "jmk" | "j_mk" => StandardKind::Jmk,
            "jle" | "j_le" => StandardKind::JLe,
            "discrete" => StandardKind::Discrete,
            "indiscrete" => StandardKind::Indiscrete,
            "cycle" => StandardKind::Cycle,
            other => return Err(Error::input(format!("unknown standard space `{other}`"))),
        })
    }
}

/// Constructs one of the standard spaces.
pub fn standard_space(kind: StandardKind, m: usize, k: u64) -> Result<FiniteClosureSpace> {
    use StandardKind::*;
    let size = match kind {
        JPlus | JMinus => 2,
        Discrete | Indiscrete | Cycle => m,
        _ => m + 1,
    };
    if size > MAX_POINTS {
        return Err(Error::resource("points in a space", MAX_POINTS));
    }
    match kind {
        JPlus => FiniteClosureSpace::from_fn(2, |x, y| x == 0 && y == 1),
        JMinus => FiniteClosureSpace::from_fn(2, |x, y| x == 1 && y == 0),
        JBot | Discrete => FiniteClosureSpace::from_fn(size, |_, _| false),
        JTop | Indiscrete => FiniteClosureSpace::from_fn(size, |_, _| true),
        Path => FiniteClosureSpace::from_fn(size, |x, y| x.abs_diff(y) <= 1),
        JLe => FiniteClosureSpace::from_fn(size, |x, y| x <= y),
        Cycle => {
            if m < 3 {
                return Err(Error::input("a cycle needs at least 3 points"));
            }
            FiniteClosureSpace::from_fn(size, |x, y| {
                let d = x.abs_diff(y);
                d <= 1 || d == m - 1
            })
        }
        Jmk => {
            if m == 0 || m >= 63 || k >= 1u64 << m {
                return Err(Error::input(format!(
                    "J_{{m,k}} needs 0 ≤ k ≤ 2^m − 1 (m = {m}, k = {k})"
                )));
            }
            let mut closure: Vec<PointSet> = (0..size).map(PointSet::singleton).collect();
            for i in 1..=m {
                if k >> (i - 1) & 1 == 1 {
                    closure[i - 1].insert(i);
                } else {
                    closure[i].insert(i - 1);
                }
            }
            FiniteClosureSpace::from_relation(closure)
        }
    }
}

/// The one-point space.
pub fn point() -> FiniteClosureSpace {
    FiniteClosureSpace::from_relation(vec![PointSet::singleton(0)]).expect("one point is valid")
}
