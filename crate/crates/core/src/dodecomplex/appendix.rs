//! Reader for covers printed as cycle tables plus surface listings, e.g.
//!
//! ```text
//! u = (1,2,14,20,3)(4,18,47,24,7)...
//! S1 = (u,⊙)_60, (x,⊙)_42, ...
//! ```
//!
//! The printed cycles describe a left action, so every permutation is
//! inverted on import. The printed disk names use the mirror face naming of
//! the relator display and are renamed v <-> z, w <-> y.

use std::fmt;

use serde::Serialize;

use super::Side;
use crate::cosets::{parse_cycles, PermutationAction};
use crate::error::{Error, Result};
use crate::fpgroup::{Generator, GENERATOR_COUNT};

pub const SPECIAL_COVER: &str = include_str!("../../fixtures/special_cover.txt");
pub const SIX_COVER: &str = include_str!("../../fixtures/six_cover.txt");

/// Pentagonal disk slot: the pentagon (generator, side) of one sheet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiskLabel {
    /// 0-indexed; printed 1-indexed.
    pub sheet: u32,
    pub generator: Generator,
    pub side: Side,
}

impl fmt::Display for DiskLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})_{}", self.generator, self.side.symbol(), self.sheet + 1)
    }
}

impl Serialize for DiskLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DiskLabel", 3)?;
        st.serialize_field("face", &self.generator.symbol().to_string())?;
        st.serialize_field("side", &self.side)?;
        st.serialize_field("sheet", &(self.sheet + 1))?;
        st.end()
    }
}

/// Letter renaming from printed disk names to ours.
pub fn printed_letter(g: Generator) -> Generator {
    const MAP: [usize; GENERATOR_COUNT] = [0, 5, 4, 3, 2, 1];
    Generator::new(MAP[g.index()])
}

#[derive(Clone, Debug)]
pub struct PrintedSurface {
    pub name: String,
    pub disks: Vec<DiskLabel>,
}

#[derive(Clone, Debug)]
pub struct PrintedCover {
    pub action: PermutationAction,
    pub surfaces: Vec<PrintedSurface>,
}

pub fn special_cover() -> PrintedCover {
    parse_printed_cover(SPECIAL_COVER).expect("bundled special cover")
}

pub fn six_cover() -> PrintedCover {
    parse_printed_cover(SIX_COVER).expect("bundled six-sheeted cover")
}

fn parse_disk(token: &str) -> Result<DiskLabel> {
    let bad = || Error::InvalidInput(format!("malformed disk label '{token}'"));
    let t = token.trim();
    let inner = t.strip_prefix('(').ok_or_else(bad)?;
    let (body, sheet) = inner.split_once(")_").ok_or_else(bad)?;
    let mut chars = body.chars();
    let g = chars.next().and_then(Generator::from_symbol).ok_or_else(bad)?;
    if chars.next() != Some(',') {
        return Err(bad());
    }
    let side = chars.next().and_then(Side::from_symbol).ok_or_else(bad)?;
    if chars.next().is_some() {
        return Err(bad());
    }
    let sheet: u32 = sheet.trim().parse().map_err(|_| bad())?;
    if sheet == 0 {
        return Err(bad());
    }
    Ok(DiskLabel { sheet: sheet - 1, generator: printed_letter(g), side })
}

fn max_point(cycles: &str) -> usize {
    cycles.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse::<usize>().ok()).max().unwrap_or(0)
}

pub fn parse_printed_cover(text: &str) -> Result<PrintedCover> {
    let mut cycles: [Option<&str>; GENERATOR_COUNT] = [None; GENERATOR_COUNT];
    let mut surfaces = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let (key, value) =
            line.split_once('=').ok_or_else(|| Error::InvalidInput(format!("expected 'name = value' in '{line}'")))?;
        let key = key.trim();
        let mut kc = key.chars();
        match (kc.next().and_then(Generator::from_symbol), kc.next()) {
            (Some(g), None) => cycles[g.index()] = Some(value.trim()),
            _ => {
                let disks =
                    value.split('(').skip(1).map(|t| parse_disk(&format!("({}", t.trim().trim_end_matches(','))));
                let disks = disks.collect::<Result<Vec<_>>>()?;
                surfaces.push(PrintedSurface { name: key.to_string(), disks });
            }
        }
    }
    let cycles: Vec<&str> = cycles
        .iter()
        .enumerate()
        .map(|(g, c)| c.ok_or_else(|| Error::InvalidInput(format!("missing permutation for {}", Generator::new(g)))))
        .collect::<Result<_>>()?;
    let degree = cycles.iter().map(|c| max_point(c)).max().unwrap_or(0);
    let mut printed = Vec::new();
    for c in &cycles {
        printed.push(parse_cycles(c, degree)?);
    }
    let mut perms = vec![Vec::new(); GENERATOR_COUNT];
    for (g, p) in printed.into_iter().enumerate() {
        let mut inv = vec![0u32; p.len()];
        for (i, &j) in p.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        perms[g] = inv;
    }
    let action = PermutationAction::new(perms)?;
    if let Some(d) = surfaces.iter().flat_map(|s| &s.disks).find(|d| d.sheet as usize >= degree) {
        return Err(Error::InvalidInput(format!("disk {d} beyond degree {degree}")));
    }
    Ok(PrintedCover { action, surfaces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{builtin_presentation, Space};

    #[test]
    fn bundled_covers_parse() {
        let s = special_cover();
        assert_eq!(s.action.degree(), 60);
        assert_eq!(s.surfaces.len(), 60);
        assert!(s.surfaces.iter().all(|x| x.disks.len() == 12));
        assert!(s.action.satisfies(&builtin_presentation(Space::Ws)));
        let c = six_cover();
        assert_eq!(c.action.degree(), 6);
        assert_eq!(c.surfaces.len(), 6);
        assert!(c.action.satisfies(&builtin_presentation(Space::Ws)));
    }

    #[test]
    fn disk_labels() {
        let d = parse_disk("(v,⊙)_12").unwrap();
        assert_eq!(d.to_string(), "(z,⊙)_12");
        assert!(parse_disk("(q,⊙)_1").is_err());
        assert!(parse_disk("(u,o)_1").is_err());
        assert!(parse_disk("(u,⊙)_0").is_err());
    }
}
