use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circuits::{reach_oracle, Circuit, TmConfig, TmLayout, TuringMachine};
use crate::error::{Error, Result};
use crate::gadgets::{label_bit, AnswerMode, Claim, CompiledKind, SourceKind, Witness};
use crate::netcore::{Budget, Configuration, Network};

use super::{predict_eventual, predict_full, predict_once};

/// What a witness claims to simulate.
#[derive(Debug, Clone, Copy)]
pub enum SourceObject<'a> {
    /// A circuit evaluated once; observations at `u = 1` index its outputs.
    Circuit(&'a Circuit),
    /// An iterable circuit.
    IteratedCircuit(&'a Circuit),
    Network(&'a Network),
    /// The clock schedule: coordinate `s` equals `s_{t mod 3}` at step `t`.
    Clock,
    /// A machine on a bounded tape, in the given bit layout.
    Tm(&'a TuringMachine, TmLayout),
}

impl SourceObject<'_> {
    fn kind(&self) -> SourceKind {
        match self {
            SourceObject::Circuit(_) => SourceKind::Circuit,
            SourceObject::IteratedCircuit(_) => SourceKind::IteratedCircuit,
            SourceObject::Network(_) => SourceKind::Network,
            SourceObject::Clock => SourceKind::Clock,
            SourceObject::Tm(..) => SourceKind::TuringMachine,
        }
    }

    fn size(&self) -> usize {
        match self {
            SourceObject::Circuit(c) | SourceObject::IteratedCircuit(c) => c.n(),
            SourceObject::Network(net) => net.n(),
            SourceObject::Clock => 8,
            SourceObject::Tm(_, layout) => layout.len(),
        }
    }
}

/// What the witness compiled to.
#[derive(Debug, Clone, Copy)]
pub enum CompiledObject<'a> {
    Network(&'a Network),
    /// An iterable circuit, one application per step.
    Circuit(&'a Circuit),
}

impl CompiledObject<'_> {
    fn kind(&self) -> CompiledKind {
        match self {
            CompiledObject::Network(_) => CompiledKind::Network,
            CompiledObject::Circuit(_) => CompiledKind::Circuit,
        }
    }

    fn size(&self) -> usize {
        match self {
            CompiledObject::Network(net) => net.n(),
            CompiledObject::Circuit(c) => c.n(),
        }
    }

    fn step(&self, x: &[bool], t: usize) -> Result<Vec<bool>> {
        match self {
            CompiledObject::Network(net) => Ok(net.global_step(&Configuration::from_bits(x), t).to_bits()),
            CompiledObject::Circuit(c) => c.evaluate(x),
        }
    }
}

/// Sampling parameters for [`verify_witness`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub samples: usize,
    /// Compiled steps simulated per sample.
    pub steps: usize,
    pub seed: u64,
    pub budget: Budget,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 32,
            steps: 60,
            seed: 0,
            budget: Budget::default(),
        }
    }
}

/// First observation that disagrees with the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub sample: usize,
    /// Compiled step.
    pub t: usize,
    pub vertex: usize,
    pub literal: String,
    pub expected: bool,
    pub got: bool,
    pub source_state: Vec<bool>,
    pub compiled_state: Vec<bool>,
}

fn bitstring(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "sample {} diverges at t={}: vertex {} should equal {} = {}, got {}",
            self.sample, self.t, self.vertex, self.literal, self.expected as u8, self.got as u8
        )?;
        writeln!(f, "source   {}", bitstring(&self.source_state))?;
        write!(f, "compiled {}", bitstring(&self.compiled_state))
    }
}

/// Outcome of one sampled initial state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub index: usize,
    pub initial: Vec<bool>,
    /// Observations compared.
    pub checks: usize,
    pub divergence: Option<Divergence>,
    /// `(source answer, compiled answer)` for answer claims.
    pub answers: Option<(bool, bool)>,
}

impl SampleOutcome {
    pub fn passed(&self) -> bool {
        self.divergence.is_none() && self.answers.is_none_or(|(a, b)| a == b)
    }
}

/// Result of [`verify_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub outcomes: Vec<SampleOutcome>,
    /// Measured properties of the compiled object.
    pub stats: Vec<(String, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(SampleOutcome::passed)
    }

    pub fn checks(&self) -> usize {
        self.outcomes.iter().map(|o| o.checks).sum()
    }

    pub fn first_divergence(&self) -> Option<&Divergence> {
        self.outcomes.iter().find_map(|o| o.divergence.as_ref())
    }

    pub fn first_failure(&self) -> Option<&SampleOutcome> {
        self.outcomes.iter().find(|o| !o.passed())
    }
}

fn random_source(src: &SourceObject<'_>, rng: &mut ChaCha8Rng) -> Vec<bool> {
    match src {
        SourceObject::Clock => Vec::new(),
        SourceObject::Tm(m, layout) => {
            let cfg = TmConfig {
                tape: (0..layout.cells).map(|_| rng.gen_range(0..m.symbols().len())).collect(),
                head: rng.gen_range(0..layout.cells),
                state: rng.gen_range(0..m.states()),
                halted: rng.gen(),
            };
            layout.encode(&cfg)
        }
        other => (0..other.size()).map(|_| rng.gen()).collect(),
    }
}

fn source_step(src: &SourceObject<'_>, x: &[bool], u: usize) -> Result<Vec<bool>> {
    match src {
        SourceObject::Circuit(c) | SourceObject::IteratedCircuit(c) => c.evaluate(x),
        SourceObject::Network(net) => Ok(net.global_step(&Configuration::from_bits(x), u).to_bits()),
        SourceObject::Clock => Ok(x.to_vec()),
        SourceObject::Tm(m, layout) => Ok(layout.encode(&layout.decode(x)?.step(m))),
    }
}

fn clock_state(t: usize) -> Vec<bool> {
    (0..8).map(|s| label_bit(s, t)).collect()
}

fn source_answer(src: &SourceObject<'_>, x: &[bool], i: usize, budget: &Budget) -> Result<bool> {
    match src {
        SourceObject::IteratedCircuit(c) => Ok(reach_oracle(c, x, i, budget)?.is_yes()),
        SourceObject::Network(net) => Ok(predict_once(net, &Configuration::from_bits(x), i, budget)?.answer),
        other => Err(Error::InvalidWitness(format!(
            "answer claims need an iterated circuit or a network source, not {}",
            other.kind().name()
        ))),
    }
}

fn compiled_answer(cmp: &CompiledObject<'_>, w: &Witness, mode: AnswerMode, y: &[bool], budget: &Budget) -> Result<bool> {
    let CompiledObject::Network(net) = cmp else {
        return Err(Error::InvalidWitness("answer claims need a compiled network".into()));
    };
    let x = Configuration::from_bits(y);
    let target = || w.target.ok_or_else(|| Error::InvalidWitness("answer claim without a target".into()));
    Ok(match mode {
        AnswerMode::Once => predict_once(net, &x, target()?, budget)?.answer,
        AnswerMode::Eventual => predict_eventual(net, &x, target()?, budget)?.answer,
        AnswerMode::Full => predict_full(net, &x, budget)?.answer,
    })
}

fn run_sample(
    src: &SourceObject<'_>,
    cmp: &CompiledObject<'_>,
    w: &Witness,
    opts: &VerifyOptions,
    index: usize,
) -> Result<SampleOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(index as u64);
    let mut x = random_source(src, &mut rng);
    let answer_target = match w.claim {
        Claim::Answer(_) => w.source_target,
        Claim::StateEquality => None,
    };
    if let Some(i) = answer_target {
        x[i] = false;
    }

    let one_shot = matches!(src, SourceObject::Circuit(_));
    let clock = matches!(src, SourceObject::Clock);
    let mut source = if clock { clock_state(0) } else { x.clone() };
    let mut u = 0;
    let mut y = w.lift_state(&x);
    let mut checks = 0;
    let mut divergence = None;
    let mut t = 0;
    loop {
        let due = if clock {
            source = clock_state(t);
            true
        } else if t >= w.phase && (t - w.phase).is_multiple_of(w.period) {
            let want = (t - w.phase) / w.period;
            while u < want {
                source = source_step(src, &source, u)?;
                u += 1;
            }
            !one_shot || u == 1
        } else {
            false
        };
        if due {
            for &(v, lit) in &w.observe {
                checks += 1;
                let expected = lit.eval(&source);
                if y[v] != expected {
                    divergence = Some(Divergence {
                        sample: index,
                        t,
                        vertex: v,
                        literal: lit.to_string(),
                        expected,
                        got: y[v],
                        source_state: source.clone(),
                        compiled_state: y.clone(),
                    });
                    break;
                }
            }
        }
        if divergence.is_some() || t >= opts.steps || (one_shot && u >= 1 && due) {
            break;
        }
        y = cmp.step(&y, t)?;
        t += 1;
    }

    let answers = match (w.claim, answer_target) {
        (Claim::Answer(mode), Some(i)) => {
            let a = source_answer(src, &x, i, &opts.budget)?;
            let b = compiled_answer(cmp, w, mode, &w.lift_state(&x), &opts.budget)?;
            Some((a, b))
        }
        _ => None,
    };
    Ok(SampleOutcome {
        index,
        initial: x,
        checks,
        divergence,
        answers,
    })
}

/// Simulates source and compiled objects side by side from random initial
/// states and checks every observation of the witness.
///
/// Observations are compared at compiled steps `u P + r` against the source
/// after `u` steps (only `u = 1` for a one-shot circuit, every step for the
/// clock). Answer claims additionally compare the two prediction answers,
/// with the source target forced inactive. Samples run in parallel; each
/// draws from its own stream of the seeded generator, so reports do not
/// depend on scheduling.
pub fn verify_witness(
    src: SourceObject<'_>,
    cmp: CompiledObject<'_>,
    w: &Witness,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    w.validate()?;
    if w.source != src.kind() {
        return Err(Error::InvalidWitness(format!(
            "witness source is {}, got {}",
            w.source.name(),
            src.kind().name()
        )));
    }
    if w.compiled != cmp.kind() {
        return Err(Error::InvalidWitness(format!(
            "witness compiles to {}, got {}",
            w.compiled.name(),
            cmp.kind().name()
        )));
    }
    if w.source_size != src.size() || w.compiled_size != cmp.size() {
        return Err(Error::InvalidWitness(format!(
            "witness sizes {} -> {} do not match objects {} -> {}",
            w.source_size,
            w.compiled_size,
            src.size(),
            cmp.size()
        )));
    }
    if let CompiledObject::Circuit(c) = cmp {
        c.require_iterable()?;
    }
    let samples = if matches!(src, SourceObject::Clock) { opts.samples.min(1) } else { opts.samples };
    let outcomes = (0..samples)
        .into_par_iter()
        .map(|i| run_sample(&src, &cmp, w, opts, i))
        .collect::<Result<Vec<_>>>()?;

    let mut stats = Vec::new();
    match cmp {
        CompiledObject::Network(net) => {
            stats.push(("n".to_string(), net.n().to_string()));
            stats.push(("max_degree".to_string(), net.graph().max_degree().to_string()));
            stats.push(("num_blocks".to_string(), net.scheme().num_blocks().to_string()));
            stats.push(("max_block_size".to_string(), net.scheme().max_block_size().to_string()));
        }
        CompiledObject::Circuit(c) => {
            stats.push(("gates".to_string(), (c.len() - c.n()).to_string()));
            stats.push(("max_gate_degree".to_string(), c.max_gate_degree().to_string()));
            stats.push(("depth".to_string(), c.depth().to_string()));
        }
    }
    Ok(VerifyReport { outcomes, stats })
}
