use crate::error::{Error, Result};

use super::{ClockSymbol, Configuration, Graph, Rule, UpdateScheme};

/// An automata network: graph, local rule and block-sequential scheme.
///
/// Immutable after construction. The constructor precomputes neighbor lists
/// as runs of consecutive ids so that amplified gadgets (whose copies are
/// laid out contiguously) are counted with a few popcounts per vertex.
#[derive(Debug, Clone)]
pub struct Network {
    graph: Graph,
    rule: Rule,
    scheme: UpdateScheme,
    run_offsets: Vec<u32>,
    runs: Vec<(u32, u32)>,
}

impl PartialEq for Network {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.rule == other.rule && self.scheme == other.scheme
    }
}

impl Eq for Network {}

impl Network {
    pub fn new(graph: Graph, rule: Rule, scheme: UpdateScheme) -> Result<Self> {
        let n = graph.n();
        if scheme.n() != n {
            return Err(Error::SizeMismatch {
                what: "update scheme",
                got: scheme.n(),
                expected: n,
            });
        }
        if let Some(clocks) = rule.clocks() {
            if clocks.len() != n {
                return Err(Error::SizeMismatch {
                    what: "clock words",
                    got: clocks.len(),
                    expected: n,
                });
            }
        }
        let mut run_offsets = Vec::with_capacity(n + 1);
        let mut runs: Vec<(u32, u32)> = Vec::new();
        run_offsets.push(0);
        for v in 0..n {
            let mut current: Option<(u32, u32)> = None;
            for &w in graph.neighbors(v) {
                let w = w as u32;
                current = match current {
                    Some((s, l)) if s + l == w => Some((s, l + 1)),
                    Some(run) => {
                        runs.push(run);
                        Some((w, 1))
                    }
                    None => Some((w, 1)),
                };
            }
            runs.extend(current);
            run_offsets.push(runs.len() as u32);
        }
        Ok(Network {
            graph,
            rule,
            scheme,
            run_offsets,
            runs,
        })
    }

    pub fn majority(graph: Graph, scheme: UpdateScheme) -> Result<Self> {
        Self::new(graph, Rule::majority(), scheme)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn scheme(&self) -> &UpdateScheme {
        &self.scheme
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn is_clocked(&self) -> bool {
        self.rule.is_clocked()
    }

    pub fn with_scheme(&self, scheme: UpdateScheme) -> Result<Network> {
        Network::new(self.graph.clone(), self.rule.clone(), scheme)
    }

    pub fn with_rule(&self, rule: Rule) -> Result<Network> {
        Network::new(self.graph.clone(), rule, self.scheme.clone())
    }

    #[inline]
    fn active_neighbors(&self, cfg: &Configuration, v: usize) -> u64 {
        let lo = self.run_offsets[v] as usize;
        let hi = self.run_offsets[v + 1] as usize;
        self.runs[lo..hi]
            .iter()
            .map(|&(s, l)| cfg.count_range(s as usize, l as usize) as u64)
            .sum()
    }

    /// The local rule of `v` read against `cfg` at global step `phase`.
    ///
    /// A forcing clock letter wins; otherwise the vertex activates iff
    /// `b * active > a * degree`. Ties and isolated vertices give 0.
    #[inline]
    pub fn local_rule(&self, cfg: &Configuration, v: usize, phase: usize) -> bool {
        if let Some(clocks) = self.rule.clocks() {
            if let Some(forced) = clocks[v].at(phase).forced() {
                return forced;
            }
        }
        let active = self.active_neighbors(cfg, v);
        self.rule
            .threshold()
            .exceeded(active, self.graph.degree(v) as u64)
    }

    /// One global step `F_S`: blocks in order, each reading the configuration
    /// left by the previous blocks.
    pub fn global_step(&self, cfg: &Configuration, phase: usize) -> Configuration {
        let mut next = cfg.clone();
        self.step_in_place(&mut next, phase, &mut Vec::new());
        next
    }

    /// In-place variant of [`Network::global_step`]; `scratch` is reused
    /// between calls to avoid allocation.
    pub fn step_in_place(&self, cfg: &mut Configuration, phase: usize, scratch: &mut Vec<bool>) {
        debug_assert_eq!(cfg.len(), self.n());
        for block in self.scheme.blocks() {
            if let [v] = block.as_slice() {
                let b = self.local_rule(cfg, *v, phase);
                cfg.set(*v, b);
            } else {
                scratch.clear();
                scratch.extend(block.iter().map(|&v| self.local_rule(cfg, v, phase)));
                for (&v, &b) in block.iter().zip(scratch.iter()) {
                    cfg.set(v, b);
                }
            }
        }
    }

    /// True when some vertex has a clock letter that is not `U`.
    pub fn has_forcing_clocks(&self) -> bool {
        self.rule
            .clocks()
            .is_some_and(|c| c.iter().any(|w| w.0.iter().any(|s| *s != ClockSymbol::U)))
    }

    pub fn check_config(&self, cfg: &Configuration) -> Result<()> {
        if cfg.len() != self.n() {
            return Err(Error::SizeMismatch {
                what: "configuration",
                got: cfg.len(),
                expected: self.n(),
            });
        }
        Ok(())
    }
}
