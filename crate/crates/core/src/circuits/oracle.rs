use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::netcore::Budget;

use super::Circuit;

/// Answer of the iterated-circuit reachability question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reach {
    /// `C^t(x)_i = 1` for this first `t >= 1`.
    Yes { t: usize },
    /// `C^transient(x) = C^(transient + period)(x)` with coordinate `i` zero throughout.
    No { transient: usize, period: usize },
}

impl Reach {
    pub fn is_yes(&self) -> bool {
        matches!(self, Reach::Yes { .. })
    }
}

/// Brute-force ground truth: iterate `C` from `x` until coordinate `i` is 1
/// or a state repeats.
///
/// Requires `x_i = 0`, matching the prediction problems, which ask about an
/// initially inactive coordinate.
pub fn reach_oracle(c: &Circuit, x: &[bool], i: usize, budget: &Budget) -> Result<Reach> {
    c.require_iterable()?;
    if i >= c.n() {
        return Err(Error::VertexOutOfRange { vertex: i, n: c.n() });
    }
    if x.len() != c.n() {
        return Err(Error::SizeMismatch {
            what: "circuit input",
            got: x.len(),
            expected: c.n(),
        });
    }
    if x[i] {
        return Err(Error::Precondition(format!("coordinate {i} must start at 0")));
    }
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut cur = x.to_vec();
    let mut t = 0;
    loop {
        if cur[i] {
            return Ok(Reach::Yes { t });
        }
        if let Some(&t1) = seen.get(&cur) {
            return Ok(Reach::No {
                transient: t1,
                period: t - t1,
            });
        }
        if seen.len() >= budget.max_configs {
            return Err(Error::Budget(format!("no repeat within {} iterations", budget.max_configs)));
        }
        let next = c.evaluate(&cur)?;
        seen.insert(std::mem::replace(&mut cur, next), t);
        t += 1;
    }
}
