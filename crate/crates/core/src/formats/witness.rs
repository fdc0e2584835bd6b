use std::fmt::Write;

use super::{at, num};
use crate::error::{Error, Result};
use crate::gadgets::{Literal, Witness};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Lift,
    Observe,
    Notes,
    Stats,
}

/// Text table: header lines, then `[lift]`, `[observe]`, `[notes]` and
/// `[stats]` sections. Lift entries are written for every vertex.
pub fn write_witness(w: &Witness) -> String {
    let mut s = String::new();
    writeln!(s, "kind {}", w.source.name()).unwrap();
    writeln!(s, "compiled {}", w.compiled.name()).unwrap();
    writeln!(s, "claim {}", w.claim.name()).unwrap();
    writeln!(s, "sizes {} {}", w.source_size, w.compiled_size).unwrap();
    writeln!(s, "P={} r={}", w.period, w.phase).unwrap();
    if let Some(t) = w.target {
        writeln!(s, "target {t}").unwrap();
    }
    if let Some(t) = w.source_target {
        writeln!(s, "source-target {t}").unwrap();
    }
    s.push_str("[lift]\n");
    for (v, l) in w.lift.iter().enumerate() {
        writeln!(s, "{v} {l}").unwrap();
    }
    s.push_str("[observe]\n");
    for (v, l) in &w.observe {
        writeln!(s, "{v} {l}").unwrap();
    }
    s.push_str("[notes]\n");
    for n in &w.notes {
        writeln!(s, "{n}").unwrap();
    }
    s.push_str("[stats]\n");
    for (k, v) in &w.stats {
        writeln!(s, "{k} {v}").unwrap();
    }
    s
}

/// Inverse of [`write_witness`]. Lift entries not listed default to `0`.
/// The result is checked with [`Witness::validate`].
pub fn parse_witness(text: &str) -> Result<Witness> {
    let mut source = None;
    let mut compiled = None;
    let mut claim = None;
    let mut sizes = None;
    let mut timing = None;
    let mut target = None;
    let mut source_target = None;
    let mut lift: Vec<(usize, Literal, usize)> = Vec::new();
    let mut observe = Vec::new();
    let mut notes = Vec::new();
    let mut stats = Vec::new();
    let mut section = Section::Header;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        if section == Section::Notes && !raw.trim_start().starts_with('[') {
            if !raw.trim().is_empty() {
                notes.push(raw.trim().to_string());
            }
            continue;
        }
        let l = raw.split('#').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        section = match l {
            "[lift]" => Section::Lift,
            "[observe]" => Section::Observe,
            "[notes]" => Section::Notes,
            "[stats]" => Section::Stats,
            _ if l.starts_with('[') => return Err(Error::parse(line, format!("unknown section {l}"))),
            _ => section,
        };
        if l.starts_with('[') {
            continue;
        }
        let w: Vec<&str> = l.split_whitespace().collect();
        let pair = |w: &[&str]| -> Result<(usize, Literal)> {
            if w.len() != 2 {
                return Err(Error::parse(line, "expected `<vertex> <literal>`"));
            }
            Ok((num(line, w[0], "vertex")?, w[1].parse().map_err(|e| at(line, e))?))
        };
        match section {
            Section::Header => match w[0] {
                "kind" if w.len() == 2 => source = Some(w[1].parse().map_err(|e| at(line, e))?),
                "compiled" if w.len() == 2 => compiled = Some(w[1].parse().map_err(|e| at(line, e))?),
                "claim" if w.len() == 2 => claim = Some(w[1].parse().map_err(|e| at(line, e))?),
                "sizes" if w.len() == 3 => sizes = Some((num(line, w[1], "size")?, num(line, w[2], "size")?)),
                "target" if w.len() == 2 => target = Some(num(line, w[1], "target")?),
                "source-target" if w.len() == 2 => source_target = Some(num(line, w[1], "source target")?),
                p if p.starts_with("P=") && w.len() == 2 => {
                    let r = w[1]
                        .strip_prefix("r=")
                        .ok_or_else(|| Error::parse(line, "expected `P=<p> r=<r>`"))?;
                    timing = Some((num(line, &p[2..], "P")?, num(line, r, "r")?));
                }
                other => return Err(Error::parse(line, format!("unexpected header line starting {other:?}"))),
            },
            Section::Lift => {
                let (v, lit) = pair(&w)?;
                lift.push((v, lit, line));
            }
            Section::Observe => observe.push(pair(&w)?),
            Section::Stats => {
                if w.len() != 2 {
                    return Err(Error::parse(line, "expected `<key> <value>`"));
                }
                stats.push((w[0].to_string(), w[1].to_string()));
            }
            Section::Notes => unreachable!("handled above"),
        }
    }
    let missing = |what: &str| Error::parse(1, format!("missing `{what}` line"));
    let (source_size, compiled_size) = sizes.ok_or_else(|| missing("sizes"))?;
    let (period, phase) = timing.ok_or_else(|| missing("P=<p> r=<r>"))?;
    let mut w = Witness::new(
        source.ok_or_else(|| missing("kind"))?,
        compiled.ok_or_else(|| missing("compiled"))?,
        source_size,
        compiled_size,
    );
    w.claim = claim.ok_or_else(|| missing("claim"))?;
    w.period = period;
    w.phase = phase;
    for (v, lit, line) in lift {
        if v >= compiled_size {
            return Err(Error::parse(line, format!("lift vertex {v} out of range")));
        }
        w.lift[v] = lit;
    }
    w.observe = observe;
    w.target = target;
    w.source_target = source_target;
    w.notes = notes;
    w.stats = stats;
    w.validate()?;
    Ok(w)
}
