use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Activation threshold `a/b` as a reduced rational with `0 < a/b < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Threshold {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Threshold {
    pub const HALF: Threshold = Threshold { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::InvalidThreshold { num, den });
        }
        let g = gcd(num, den);
        Ok(Threshold {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_half(self) -> bool {
        self == Self::HALF
    }

    /// Strict test `active > (a/b) * degree`, in exact integer arithmetic.
    #[inline]
    pub fn exceeded(self, active: u64, degree: u64) -> bool {
        self.den * active > self.num * degree
    }

    /// `floor((a/b) * x)`.
    pub fn floor_mul(self, x: u64) -> u64 {
        self.num * x / self.den
    }

    /// `ceil(b/a)`, i.e. the ceiling of the threshold's reciprocal.
    pub fn ceil_recip(self) -> u64 {
        self.den.div_ceil(self.num)
    }

    /// The threshold `1 - a/b`.
    pub fn complement(self) -> Threshold {
        Threshold::new(self.den - self.num, self.den).expect("complement of a valid threshold")
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::parse(0, format!("expected a/b, got {s:?}")))?;
        let a = a.trim().parse().map_err(|_| Error::parse(0, format!("bad numerator in {s:?}")))?;
        let b = b.trim().parse().map_err(|_| Error::parse(0, format!("bad denominator in {s:?}")))?;
        Threshold::new(a, b)
    }
}

/// One letter of a clock word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClockSymbol {
    /// Update normally.
    U,
    Zero,
    One,
}

impl ClockSymbol {
    pub fn forced(self) -> Option<bool> {
        match self {
            ClockSymbol::U => None,
            ClockSymbol::Zero => Some(false),
            ClockSymbol::One => Some(true),
        }
    }

    fn to_char(self) -> char {
        match self {
            ClockSymbol::U => 'U',
            ClockSymbol::Zero => '0',
            ClockSymbol::One => '1',
        }
    }
}

/// Three-letter clock word; letter `t mod 3` applies at global step `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClockWord(pub [ClockSymbol; 3]);

impl ClockWord {
    pub const FREE: ClockWord = ClockWord([ClockSymbol::U; 3]);

    pub fn constant(value: bool) -> Self {
        let s = if value { ClockSymbol::One } else { ClockSymbol::Zero };
        ClockWord([s; 3])
    }

    pub fn is_free(self) -> bool {
        self == Self::FREE
    }

    #[inline]
    pub fn at(self, phase: usize) -> ClockSymbol {
        self.0[phase % 3]
    }

    /// Replace every `U` by `fill`, giving a label in `{0,1}^3`.
    pub fn resolve(self, fill: bool) -> [bool; 3] {
        self.0.map(|s| s.forced().unwrap_or(fill))
    }
}

impl fmt::Display for ClockWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for ClockWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.len() != 3 {
            return Err(Error::parse(0, format!("clock word must have 3 letters, got {s:?}")));
        }
        let mut word = [ClockSymbol::U; 3];
        for (slot, c) in word.iter_mut().zip(chars) {
            *slot = match c {
                'U' | 'u' => ClockSymbol::U,
                '0' => ClockSymbol::Zero,
                '1' => ClockSymbol::One,
                other => return Err(Error::parse(0, format!("invalid clock letter {other:?}"))),
            };
        }
        Ok(ClockWord(word))
    }
}

/// Network-wide local rule: a threshold plus optional per-vertex clock words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    threshold: Threshold,
    clocks: Option<Vec<ClockWord>>,
}

impl Rule {
    pub fn majority() -> Self {
        Rule {
            threshold: Threshold::HALF,
            clocks: None,
        }
    }

    pub fn portion(threshold: Threshold) -> Self {
        Rule {
            threshold,
            clocks: None,
        }
    }

    /// Attaches clock words. An all-`U` assignment is stored as unclocked.
    pub fn with_clocks(mut self, clocks: Vec<ClockWord>) -> Self {
        self.clocks = if clocks.iter().all(|c| c.is_free()) {
            None
        } else {
            Some(clocks)
        };
        self
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn is_majority(&self) -> bool {
        self.threshold.is_half()
    }

    pub fn is_clocked(&self) -> bool {
        self.clocks.is_some()
    }

    pub fn clocks(&self) -> Option<&[ClockWord]> {
        self.clocks.as_deref()
    }

    #[inline]
    pub fn clock(&self, v: usize) -> ClockWord {
        match &self.clocks {
            Some(c) => c[v],
            None => ClockWord::FREE,
        }
    }
}
