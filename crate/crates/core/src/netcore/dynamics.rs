use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::{Configuration, Network};

/// Default cap on stored configurations during cycle detection.
pub const DEFAULT_MAX_CONFIGS: usize = 1 << 22;

/// Default vertex bound for exhaustive enumeration.
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 20;

/// Explicit resource limits. Exceeding one is an error, never a silent answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of configurations stored by the visited set.
    pub max_configs: usize,
    /// Maximum number of free vertices (or total vertices) for exhaustive enumeration.
    pub exhaustive_bound: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_configs: DEFAULT_MAX_CONFIGS,
            exhaustive_bound: DEFAULT_EXHAUSTIVE_BOUND,
        }
    }
}

impl Budget {
    pub fn with_max_configs(max_configs: usize) -> Self {
        Budget {
            max_configs,
            ..Budget::default()
        }
    }
}

/// Transient, period and contents of the limit cycle reached from one start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    pub transient: usize,
    pub period: usize,
    /// `x(transient), ..., x(transient + period - 1)`.
    pub cycle_configs: Vec<Configuration>,
}

/// `(x, F(x), ..., F^steps(x))`, with step `t` using clock phase `t mod 3`.
pub fn trajectory(net: &Network, cfg: &Configuration, steps: usize) -> Vec<Configuration> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = cfg.clone();
    let mut scratch = Vec::new();
    out.push(cur.clone());
    for t in 0..steps {
        net.step_in_place(&mut cur, t, &mut scratch);
        out.push(cur.clone());
    }
    out
}

/// Result of walking a trajectory under a stopping predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exploration {
    /// The predicate fired on `x(t)`.
    Stopped { t: usize, config: Configuration },
    /// A repeat was found before the predicate fired.
    Cycle(CycleReport),
}

/// Visited-set store keyed by (configuration, phase class).
struct Visited {
    history: Vec<Configuration>,
    index: HashMap<u64, Vec<usize>>,
    phase_classes: usize,
    max: usize,
}

impl Visited {
    fn new(net: &Network, max: usize) -> Self {
        Visited {
            history: Vec::new(),
            index: HashMap::new(),
            phase_classes: if net.is_clocked() { 3 } else { 1 },
            max,
        }
    }

    fn key(&self, t: usize, cfg: &Configuration) -> u64 {
        let mut h = DefaultHasher::new();
        cfg.hash(&mut h);
        (t % self.phase_classes).hash(&mut h);
        h.finish()
    }

    /// Records `x(t)`; returns the first-seen time if it is a repeat.
    fn insert(&mut self, t: usize, cfg: &Configuration) -> Result<Option<usize>> {
        let key = self.key(t, cfg);
        let classes = self.phase_classes;
        if let Some(times) = self.index.get(&key) {
            if let Some(&t1) = times
                .iter()
                .find(|&&t1| t1 % classes == t % classes && self.history[t1] == *cfg)
            {
                return Ok(Some(t1));
            }
        }
        if self.history.len() >= self.max {
            return Err(Error::Budget(format!(
                "no repeat within {} stored configurations",
                self.max
            )));
        }
        self.index.entry(key).or_default().push(t);
        self.history.push(cfg.clone());
        Ok(None)
    }
}

/// Simulates from `cfg`, storing every configuration, until `stop(t, x(t))`
/// holds or a configuration repeats.
pub fn explore<F>(net: &Network, cfg: &Configuration, budget: &Budget, mut stop: F) -> Result<Exploration>
where
    F: FnMut(usize, &Configuration) -> bool,
{
    net.check_config(cfg)?;
    let mut visited = Visited::new(net, budget.max_configs);
    let mut cur = cfg.clone();
    let mut scratch = Vec::new();
    let mut t = 0;
    loop {
        if let Some(t1) = visited.insert(t, &cur)? {
            let cycle_configs = visited.history[t1..t].to_vec();
            return Ok(Exploration::Cycle(CycleReport {
                transient: t1,
                period: t - t1,
                cycle_configs,
            }));
        }
        if stop(t, &cur) {
            return Ok(Exploration::Stopped { t, config: cur });
        }
        net.step_in_place(&mut cur, t, &mut scratch);
        t += 1;
    }
}

/// Like [`explore`], but for unclocked synchronous or sequential networks it
/// first runs with constant memory, comparing each configuration with the
/// two before it. Those schemes only admit fixed points and 2-cycles, so
/// this detects the attractor exactly. If no such repeat shows up within
/// `4n^2 + 16` steps the search restarts with the visited set.
pub fn explore_auto<F>(net: &Network, cfg: &Configuration, budget: &Budget, mut stop: F) -> Result<Exploration>
where
    F: FnMut(usize, &Configuration) -> bool,
{
    let structured = !net.is_clocked() && (net.scheme().is_synchronous() || net.scheme().is_sequential());
    if !structured {
        return explore(net, cfg, budget, stop);
    }
    net.check_config(cfg)?;
    let n = net.n();
    let limit = 4 * n * n + 16;
    let mut prev2: Option<Configuration> = None;
    let mut prev1: Option<Configuration> = None;
    let mut cur = cfg.clone();
    let mut scratch = Vec::new();
    for t in 0..=limit {
        if prev1.as_ref() == Some(&cur) {
            return Ok(Exploration::Cycle(CycleReport {
                transient: t - 1,
                period: 1,
                cycle_configs: vec![cur],
            }));
        }
        if prev2.as_ref() == Some(&cur) {
            let other = prev1.take().unwrap();
            return Ok(Exploration::Cycle(CycleReport {
                transient: t - 2,
                period: 2,
                cycle_configs: vec![cur, other],
            }));
        }
        if stop(t, &cur) {
            return Ok(Exploration::Stopped { t, config: cur });
        }
        let mut next = cur.clone();
        net.step_in_place(&mut next, t, &mut scratch);
        prev2 = prev1.replace(cur);
        cur = next;
    }
    explore(net, cfg, budget, stop)
}

/// Visited-set cycle detection from `cfg`.
pub fn find_limit_cycle(net: &Network, cfg: &Configuration, budget: &Budget) -> Result<CycleReport> {
    match explore(net, cfg, budget, |_, _| false)? {
        Exploration::Cycle(report) => Ok(report),
        Exploration::Stopped { .. } => unreachable!("predicate never fires"),
    }
}

/// `tau_S(A)`: the maximum transient over all `2^n` configurations.
///
/// Builds the functional graph of `F_S` (on `(configuration, phase)` pairs
/// for clocked networks) and measures every node's distance to its cycle.
pub fn transient_length_network(net: &Network, budget: &Budget) -> Result<usize> {
    let n = net.n();
    if n > budget.exhaustive_bound || n > 30 {
        return Err(Error::Budget(format!(
            "exhaustive transient needs n <= {}, got {n}",
            budget.exhaustive_bound.min(30)
        )));
    }
    let phases: usize = if net.is_clocked() { 3 } else { 1 };
    let configs = 1usize << n;
    let total = configs * phases;
    let succ: Vec<u32> = (0..total)
        .into_par_iter()
        .map(|node| {
            let (x, ph) = (node % configs, node / configs);
            let cfg = Configuration::from_index(x as u64, n);
            let next = net.global_step(&cfg, ph);
            (((ph + 1) % phases) * configs + next.to_index() as usize) as u32
        })
        .collect();

    const UNSEEN: u32 = u32::MAX;
    const ON_PATH: u32 = u32::MAX - 1;
    let mut dist = vec![UNSEEN; total];
    let mut path = Vec::new();
    for start in 0..total {
        if dist[start] != UNSEEN {
            continue;
        }
        path.clear();
        let mut u = start;
        while dist[u] == UNSEEN {
            dist[u] = ON_PATH;
            path.push(u);
            u = succ[u] as usize;
        }
        let mut base = if dist[u] == ON_PATH {
            // closed a new cycle: everything from u onward is on it
            let pos = path.iter().position(|&p| p == u).unwrap();
            for &c in &path[pos..] {
                dist[c] = 0;
            }
            path.truncate(pos);
            0
        } else {
            dist[u]
        };
        for &p in path.iter().rev() {
            base += 1;
            dist[p] = base;
        }
    }
    Ok(dist[..configs].iter().copied().max().unwrap_or(0) as usize)
}
