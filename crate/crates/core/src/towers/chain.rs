use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coalg::{Quiver, Window, WindowRef};
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::repcat::Rep;

/// How a chain exhausts its ambient quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainRule {
    /// Symmetric segments `[-k, k]` of the doubly infinite line, maxlen `2k`.
    AInfinity,
    /// `0, 0', 1, ..., k+1` with maxlen `k+1`.
    DInfinity,
    /// The one-loop quiver with maxlen `k`.
    Loop,
    /// An explicit list.
    User,
}

impl fmt::Display for ChainRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainRule::AInfinity => "ainf",
            ChainRule::DInfinity => "dinf",
            ChainRule::Loop => "loop",
            ChainRule::User => "user",
        })
    }
}

impl FromStr for ChainRule {
    type Err = ArsError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ainf" => Ok(ChainRule::AInfinity),
            "dinf" => Ok(ChainRule::DInfinity),
            "loop" => Ok(ChainRule::Loop),
            other => Err(ArsError::Precondition(format!("unknown chain rule `{other}`"))),
        }
    }
}

/// A finite prefix `w_0 ⊆ w_1 ⊆ ... ⊆ w_N` of an ascending chain of windows.
#[derive(Clone, Debug)]
pub struct WindowChain {
    pub rule: ChainRule,
    pub windows: Vec<WindowRef>,
}

impl WindowChain {
    /// Checks that consecutive windows are nested.
    pub fn new(rule: ChainRule, windows: Vec<WindowRef>) -> Result<Self> {
        if windows.is_empty() {
            return Err(ArsError::Precondition("empty chain".into()));
        }
        for (i, pair) in windows.windows(2).enumerate() {
            if !pair[0].is_sub_window_of(&pair[1]) {
                return Err(ArsError::NotSubWindow(format!(
                    "window {i} is not contained in window {}",
                    i + 1
                )));
            }
        }
        Ok(WindowChain { rule, windows })
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn last(&self) -> &WindowRef {
        self.windows.last().expect("nonempty chain")
    }

    /// The suffix starting at the first window over which `m` lives.
    pub fn containing<S: Scalar>(&self, m: &Rep<S>) -> Result<WindowChain> {
        let start = self
            .windows
            .iter()
            .position(|w| m.coefficients_within(w) && m.rewindow(w).is_ok())
            .ok_or_else(|| {
                ArsError::Precondition("no window of the chain contains the coefficients".into())
            })?;
        Ok(WindowChain {
            rule: self.rule,
            windows: self.windows[start..].to_vec(),
        })
    }
}

/// The first `depth` windows of a built-in chain.
pub fn chain(rule: ChainRule, depth: usize) -> Result<WindowChain> {
    if depth == 0 {
        return Err(ArsError::Precondition("chain depth must be positive".into()));
    }
    let windows = (1..=depth)
        .map(|k| match rule {
            ChainRule::AInfinity => Ok(Window::new(
                Quiver::line_segment(-(k as i64), k as i64),
                2 * k,
            )),
            ChainRule::DInfinity => Ok(Window::new(Quiver::d_infinity_truncated(k + 1), k + 1)),
            ChainRule::Loop => Ok(Window::new(Quiver::single_loop(), k)),
            ChainRule::User => Err(ArsError::Precondition(
                "user chains are built with WindowChain::new".into(),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    WindowChain::new(rule, windows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn built_in_chains() {
        let c = chain(ChainRule::Loop, 4).unwrap();
        let lens: Vec<usize> = c.windows.iter().map(|w| w.maxlen()).collect();
        assert_eq!(lens, vec![1, 2, 3, 4]);
        let c = chain(ChainRule::AInfinity, 3).unwrap();
        let shape: Vec<(usize, usize)> = c.windows.iter().map(|w| (w.vertex_count(), w.maxlen())).collect();
        assert_eq!(shape, vec![(3, 2), (5, 4), (7, 6)]);
        assert_eq!(c.windows[0].vertex_label(0), "-1");
        let c = chain(ChainRule::DInfinity, 3).unwrap();
        assert_eq!(c.last().vertex_count(), 6);
        assert_eq!(c.last().maxlen(), 4);
        let bad = WindowChain::new(ChainRule::User, vec![c.windows[1].clone(), c.windows[0].clone()]);
        assert!(bad.is_err());
    }
}
