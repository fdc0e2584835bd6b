use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// What a compiler started from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceKind {
    /// A circuit evaluated once: observations compare against `C(x)`.
    Circuit,
    /// An iterable circuit: observations compare against `C^u(x)`.
    IteratedCircuit,
    /// An automata network (majority, portion or clocked).
    Network,
    /// The clock schedule: label `s` reads `s_{t mod 3}` at step `t`.
    Clock,
    /// A bounded Turing machine run on a fixed word.
    TuringMachine,
}

impl SourceKind {
    pub fn name(self) -> &'static str {
        match self {
            SourceKind::Circuit => "circuit",
            SourceKind::IteratedCircuit => "iterated-circuit",
            SourceKind::Network => "network",
            SourceKind::Clock => "clock",
            SourceKind::TuringMachine => "turing-machine",
        }
    }
}

impl FromStr for SourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "circuit" => SourceKind::Circuit,
            "iterated-circuit" => SourceKind::IteratedCircuit,
            "network" => SourceKind::Network,
            "clock" => SourceKind::Clock,
            "turing-machine" => SourceKind::TuringMachine,
            other => return Err(Error::parse(0, format!("unknown source kind {other:?}"))),
        })
    }
}

/// What a compiler produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompiledKind {
    Network,
    Circuit,
}

impl CompiledKind {
    pub fn name(self) -> &'static str {
        match self {
            CompiledKind::Network => "network",
            CompiledKind::Circuit => "circuit",
        }
    }
}

impl FromStr for CompiledKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "network" => Ok(CompiledKind::Network),
            "circuit" => Ok(CompiledKind::Circuit),
            other => Err(Error::parse(0, format!("unknown compiled kind {other:?}"))),
        }
    }
}

/// Which prediction question the compiled instance answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnswerMode {
    Once,
    Eventual,
    Full,
}

/// What the witness asserts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    /// Observed compiled states equal the mapped source states at every
    /// observation time `u P + r`.
    StateEquality,
    /// The compiled instance answers `mode` for the compiled target exactly
    /// when the source answers one-vertex prediction for the source target.
    Answer(AnswerMode),
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::StateEquality => "state",
            Claim::Answer(AnswerMode::Once) => "answer-once",
            Claim::Answer(AnswerMode::Eventual) => "answer-eventual",
            Claim::Answer(AnswerMode::Full) => "answer-full",
        }
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "state" => Claim::StateEquality,
            "answer-once" => Claim::Answer(AnswerMode::Once),
            "answer-eventual" => Claim::Answer(AnswerMode::Eventual),
            "answer-full" => Claim::Answer(AnswerMode::Full),
            other => return Err(Error::parse(0, format!("unknown claim {other:?}"))),
        })
    }
}

/// A Boolean expression over one source coordinate, or a constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Literal {
    Zero,
    One,
    Pos(usize),
    Neg(usize),
}

impl Literal {
    pub fn constant(b: bool) -> Self {
        if b {
            Literal::One
        } else {
            Literal::Zero
        }
    }

    pub fn eval(self, state: &[bool]) -> bool {
        match self {
            Literal::Zero => false,
            Literal::One => true,
            Literal::Pos(i) => state[i],
            Literal::Neg(i) => !state[i],
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Literal::Zero => Literal::One,
            Literal::One => Literal::Zero,
            Literal::Pos(i) => Literal::Neg(i),
            Literal::Neg(i) => Literal::Pos(i),
        }
    }

    /// Replaces the coordinate reference by `inner[coordinate]`.
    pub fn substitute(self, inner: &[Literal]) -> Literal {
        match self {
            Literal::Zero | Literal::One => self,
            Literal::Pos(i) => inner[i],
            Literal::Neg(i) => inner[i].negate(),
        }
    }

    pub fn coordinate(self) -> Option<usize> {
        match self {
            Literal::Pos(i) | Literal::Neg(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Zero => write!(f, "0"),
            Literal::One => write!(f, "1"),
            Literal::Pos(i) => write!(f, "x{i}"),
            Literal::Neg(i) => write!(f, "!x{i}"),
        }
    }
}

impl FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("bad literal {s:?}"));
        match s {
            "0" => Ok(Literal::Zero),
            "1" => Ok(Literal::One),
            _ => {
                let (neg, rest) = match s.strip_prefix('!') {
                    Some(r) => (true, r),
                    None => (false, s),
                };
                let i = rest.strip_prefix('x').ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Ok(if neg { Literal::Neg(i) } else { Literal::Pos(i) })
            }
        }
    }
}

/// Machine-checkable record of a reduction.
///
/// `lift[v]` gives the initial state of compiled vertex `v` as a function of
/// the source's initial state. Each `(v, lit)` in `observe` asserts that
/// compiled vertex `v` at step `u P + r` equals `lit` evaluated on the source
/// state after `u` iterations. For a one-shot circuit source the only
/// observation time is `u = 1` and literals index the outputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub source: SourceKind,
    pub compiled: CompiledKind,
    pub claim: Claim,
    pub source_size: usize,
    pub compiled_size: usize,
    pub period: usize,
    pub phase: usize,
    pub lift: Vec<Literal>,
    pub observe: Vec<(usize, Literal)>,
    pub target: Option<usize>,
    pub source_target: Option<usize>,
    pub notes: Vec<String>,
    pub stats: Vec<(String, String)>,
}

impl Witness {
    /// A state-equality witness with `P = 1`, `r = 0` and empty maps.
    pub fn new(source: SourceKind, compiled: CompiledKind, source_size: usize, compiled_size: usize) -> Self {
        Witness {
            source,
            compiled,
            claim: Claim::StateEquality,
            source_size,
            compiled_size,
            period: 1,
            phase: 0,
            lift: vec![Literal::Zero; compiled_size],
            observe: Vec::new(),
            target: None,
            source_target: None,
            notes: Vec::new(),
            stats: Vec::new(),
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn stat(&mut self, key: &str, value: impl fmt::Display) {
        self.stats.retain(|(k, _)| k != key);
        self.stats.push((key.to_string(), value.to_string()));
    }

    pub fn get_stat(&self, key: &str) -> Option<&str> {
        self.stats.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Compiled initial configuration for a source initial state.
    pub fn lift_state(&self, source: &[bool]) -> Vec<bool> {
        self.lift.iter().map(|l| l.eval(source)).collect()
    }

    /// Compiled vertices observing source coordinate `i` positively.
    pub fn observers_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.observe
            .iter()
            .filter(move |(_, l)| *l == Literal::Pos(i))
            .map(|(v, _)| *v)
    }

    /// Structural checks: sizes, ranges, `0 <= r < P`, and injective observation.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWitness(m));
        if self.period == 0 || self.phase >= self.period {
            return bad(format!("need 0 <= r < P, got P={} r={}", self.period, self.phase));
        }
        if self.lift.len() != self.compiled_size {
            return bad(format!("lift has {} entries for {} vertices", self.lift.len(), self.compiled_size));
        }
        let in_range = |l: &Literal| l.coordinate().is_none_or(|i| i < self.source_size);
        if !self.lift.iter().all(in_range) {
            return bad("lift names a missing source coordinate".into());
        }
        if !matches!(self.source, SourceKind::Circuit) && !self.observe.iter().all(|(_, l)| in_range(l)) {
            return bad("observation names a missing source coordinate".into());
        }
        let mut seen = vec![false; self.compiled_size];
        for &(v, _) in &self.observe {
            if v >= self.compiled_size {
                return bad(format!("observed vertex {v} out of range"));
            }
            if std::mem::replace(&mut seen[v], true) {
                return bad(format!("vertex {v} observed twice"));
            }
        }
        if self.target.is_some_and(|t| t >= self.compiled_size) {
            return bad("target out of range".into());
        }
        if self.source_target.is_some_and(|t| t >= self.source_size) {
            return bad("source target out of range".into());
        }
        Ok(())
    }

    /// Chains `self: A -> B` with `next: B -> C` into `A -> C`.
    ///
    /// Lifts substitute, observations join on the shared middle coordinate
    /// (an observation of `B` coordinate `b` by `next` picks up whatever `self`
    /// says `b` equals), `P` multiplies and `r = r1 P2 + r2`.
    pub fn compose(&self, next: &Witness) -> Result<Witness> {
        if next.source_size != self.compiled_size {
            return Err(Error::InvalidWitness(format!(
                "cannot compose: middle sizes {} and {} differ",
                self.compiled_size, next.source_size
            )));
        }
        let mut mid_obs: Vec<Option<Literal>> = vec![None; self.compiled_size];
        for &(b, lit) in &self.observe {
            mid_obs[b] = Some(lit);
        }
        let observe = next
            .observe
            .iter()
            .filter_map(|&(c, lit)| match lit {
                Literal::Zero | Literal::One => Some((c, lit)),
                Literal::Pos(b) => mid_obs[b].map(|l| (c, l)),
                Literal::Neg(b) => mid_obs[b].map(|l| (c, l.negate())),
            })
            .collect();
        let lift = next.lift.iter().map(|l| l.substitute(&self.lift)).collect();
        let target = next.target;
        let source_target = self.source_target;
        let mut notes = self.notes.clone();
        notes.extend(next.notes.iter().cloned());
        let mut stats = self.stats.clone();
        for (k, v) in &next.stats {
            stats.retain(|(k2, _)| k2 != k);
            stats.push((k.clone(), v.clone()));
        }
        Ok(Witness {
            source: self.source,
            compiled: next.compiled,
            claim: next.claim,
            source_size: self.source_size,
            compiled_size: next.compiled_size,
            period: self.period * next.period,
            phase: self.phase * next.period + next.phase,
            lift,
            observe,
            target,
            source_target,
            notes,
            stats,
        })
    }
}
