use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::netcore::{explore, explore_auto, trajectory, Budget, Configuration, CycleReport, Exploration, Network};

/// Why a verdict holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// The condition holds at `x(t)`, shown as `config`.
    Reached { t: usize, config: Configuration },
    /// The limit cycle reached from the start, which settles the question.
    Cycle(CycleReport),
}

/// Answer to a prediction question with checkable evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub evidence: Evidence,
    /// Global steps simulated to reach the verdict.
    pub steps: usize,
    /// For conditional prediction, the completed initial configuration the
    /// verdict is about (the first YES completion, or the first completion
    /// for NO).
    pub completion: Option<Configuration>,
}

impl Verdict {
    /// Witnessing time of a YES verdict.
    pub fn time(&self) -> Option<usize> {
        match (&self.evidence, self.answer) {
            (Evidence::Reached { t, .. }, true) => Some(*t),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.evidence {
            Evidence::Reached { t, .. } => write!(f, "{} t={t}", if self.answer { "YES" } else { "NO" }),
            Evidence::Cycle(c) if self.answer => write!(f, "YES t={} period={}", c.transient, c.period),
            Evidence::Cycle(c) => write!(f, "NO transient={} period={}", c.transient, c.period),
        }
    }
}

fn check_target(net: &Network, x: &Configuration, v: usize) -> Result<()> {
    net.check_config(x)?;
    if v >= net.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: net.n() });
    }
    if x.get(v) {
        return Err(Error::Precondition(format!("target {v} must start inactive")));
    }
    Ok(())
}

fn from_exploration(e: Exploration) -> Verdict {
    match e {
        Exploration::Stopped { t, config } => Verdict {
            answer: true,
            evidence: Evidence::Reached { t, config },
            steps: t,
            completion: None,
        },
        Exploration::Cycle(c) => Verdict {
            answer: false,
            steps: c.transient + c.period,
            evidence: Evidence::Cycle(c),
            completion: None,
        },
    }
}

/// Is there a `t` with `x(t)_v = 1`? Requires `x_v = 0`.
pub fn predict_once(net: &Network, x: &Configuration, v: usize, budget: &Budget) -> Result<Verdict> {
    check_target(net, x, v)?;
    Ok(from_exploration(explore_auto(net, x, budget, |_, c| c.get(v))?))
}

/// Is `x(t)_v = 1` for all large `t`? Requires `x_v = 0`.
///
/// YES evidence is the limit cycle; [`Verdict::time`] is not set, the
/// displayed `t` is the first time from which `v` stays active.
pub fn predict_eventual(net: &Network, x: &Configuration, v: usize, budget: &Budget) -> Result<Verdict> {
    check_target(net, x, v)?;
    let c = match explore_auto(net, x, budget, |_, _| false)? {
        Exploration::Cycle(c) => c,
        Exploration::Stopped { .. } => unreachable!("predicate never fires"),
    };
    let answer = c.cycle_configs.iter().all(|y| y.get(v));
    let steps = c.transient + c.period;
    let evidence = if answer {
        // walk back from the cycle to the last inactive time
        let traj = trajectory(net, x, c.transient);
        let last_off = traj.iter().rposition(|y| !y.get(v)).expect("x_v = 0");
        Evidence::Cycle(CycleReport { transient: last_off + 1, ..c })
    } else {
        Evidence::Cycle(c)
    };
    Ok(Verdict { answer, evidence, steps, completion: None })
}

/// Is the all-active configuration ever reached?
pub fn predict_full(net: &Network, x: &Configuration, budget: &Budget) -> Result<Verdict> {
    net.check_config(x)?;
    Ok(from_exploration(explore(net, x, budget, |_, c| c.is_all_ones())?))
}

/// Is there an initial configuration agreeing with `y` outside `free` from
/// which `v` becomes active? `y`'s values on `free` are ignored.
///
/// Completions are enumerated in lexicographic order of the free vertices'
/// states (in the order given); the first YES completion wins. With no free
/// vertex this is exactly [`predict_once`].
pub fn predict_conditional(
    net: &Network,
    y: &Configuration,
    free: &[usize],
    v: usize,
    budget: &Budget,
) -> Result<Verdict> {
    net.check_config(y)?;
    if free.is_empty() {
        return predict_once(net, y, v, budget);
    }
    let mut seen = vec![false; net.n()];
    for &u in free {
        if u >= net.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: net.n() });
        }
        if std::mem::replace(&mut seen[u], true) {
            return Err(Error::Precondition(format!("free vertex {u} listed twice")));
        }
    }
    if seen[v] {
        return Err(Error::Precondition(format!("target {v} must have a fixed value")));
    }
    check_target(net, y, v)?;
    let f = free.len();
    if f > budget.exhaustive_bound || f >= 63 {
        return Err(Error::Budget(format!(
            "{f} free vertices exceed the enumeration bound {}",
            budget.exhaustive_bound
        )));
    }
    let complete = |k: u64| {
        let mut x = y.clone();
        for (j, &u) in free.iter().enumerate() {
            x.set(u, (k >> (f - 1 - j)) & 1 == 1);
        }
        x
    };
    let run = |k: u64| -> Result<Verdict> {
        let x = complete(k);
        let mut verdict = predict_once(net, &x, v, budget)?;
        verdict.completion = Some(x);
        Ok(verdict)
    };
    let hit = (0..1u64 << f).into_par_iter().find_map_first(|k| match run(k) {
        Ok(verdict) if !verdict.answer => None,
        other => Some(other),
    });
    match hit {
        Some(result) => result,
        None => run(0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netcore::{Graph, UpdateScheme};

    fn star(scheme: UpdateScheme) -> Network {
        let g = Graph::new(9, (1..9).map(|l| (0, l))).unwrap();
        Network::majority(g, scheme).unwrap()
    }

    fn leaves_on() -> Configuration {
        let mut x = Configuration::ones(9);
        x.set(0, false);
        x
    }

    fn center_on() -> Configuration {
        let mut x = Configuration::zeros(9);
        x.set(0, true);
        x
    }

    #[test]
    fn center_first_star_dies() {
        let scheme = UpdateScheme::from_raw(&[1, 2, 2, 2, 2, 2, 2, 2, 2]).unwrap();
        let verdict = predict_once(&star(scheme), &center_on(), 4, &Budget::default()).unwrap();
        assert!(!verdict.answer);
    }

    #[test]
    fn leaves_first_star_lights_every_leaf() {
        let order = [1, 2, 3, 4, 5, 6, 7, 8, 0];
        let net = star(UpdateScheme::sequential_order(&order).unwrap());
        let verdict = predict_once(&net, &center_on(), 4, &Budget::default()).unwrap();
        assert_eq!(verdict.time(), Some(1));
        assert_eq!(verdict.to_string(), "YES t=1");
    }

    #[test]
    fn all_zero_is_no() {
        let verdict = predict_once(&star(UpdateScheme::synchronous(9)), &Configuration::zeros(9), 3, &Budget::default()).unwrap();
        assert_eq!(verdict.to_string(), "NO transient=0 period=1");
        assert!(!predict_full(&star(UpdateScheme::synchronous(9)), &Configuration::zeros(9), &Budget::default()).unwrap().answer);
    }

    #[test]
    fn oscillating_center_is_not_eventually_active() {
        let verdict = predict_eventual(&star(UpdateScheme::synchronous(9)), &leaves_on(), 0, &Budget::default()).unwrap();
        assert!(!verdict.answer);
        assert_eq!(verdict.to_string(), "NO transient=0 period=2");
    }

    #[test]
    fn all_ones_is_full_at_zero() {
        let v = predict_full(&star(UpdateScheme::synchronous(9)), &Configuration::ones(9), &Budget::default()).unwrap();
        assert_eq!(v.to_string(), "YES t=0");
    }

    #[test]
    fn conditional_on_a_path() {
        // 0 - 1 - 2, target 0, vertex 1 free, vertex 2 active
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let net = Network::majority(g, UpdateScheme::synchronous(3)).unwrap();
        let y = Configuration::from_bits(&[false, false, true]);
        let v = predict_conditional(&net, &y, &[1], 0, &Budget::default()).unwrap();
        assert!(v.answer);
        assert_eq!(v.completion.unwrap().to_bits(), vec![false, true, true]);
        let none_free = predict_conditional(&net, &y, &[], 0, &Budget::default()).unwrap();
        assert_eq!(none_free, predict_once(&net, &y, 0, &Budget::default()).unwrap());
    }

    #[test]
    fn active_target_is_rejected() {
        let net = star(UpdateScheme::synchronous(9));
        assert!(predict_once(&net, &Configuration::ones(9), 0, &Budget::default()).is_err());
    }
}
