//! Free words over the six face generators and the presentations of the
//! three dodecahedral spaces.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub const GENERATOR_COUNT: usize = 6;
/// Number of directed letters (each generator and its inverse).
pub const LETTER_COUNT: usize = 2 * GENERATOR_COUNT;

const SYMBOLS: [char; GENERATOR_COUNT] = ['u', 'v', 'w', 'x', 'y', 'z'];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator(u8);

impl Generator {
    pub const ALL: [Generator; GENERATOR_COUNT] =
        [Generator(0), Generator(1), Generator(2), Generator(3), Generator(4), Generator(5)];

    pub fn new(index: usize) -> Generator {
        assert!(index < GENERATOR_COUNT, "generator index {index} out of range");
        Generator(index as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn symbol(self) -> char {
        SYMBOLS[self.index()]
    }

    pub fn from_symbol(c: char) -> Option<Generator> {
        SYMBOLS.iter().position(|&s| s == c).map(Generator::new)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A generator or its inverse, packed as `2 * generator + inverse`.
///
/// The packed value doubles as the column index of coset tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u8);

impl Letter {
    pub fn new(g: Generator, inverse: bool) -> Letter {
        Letter(2 * g.0 + inverse as u8)
    }

    pub fn from_index(i: usize) -> Letter {
        assert!(i < LETTER_COUNT);
        Letter(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn generator(self) -> Generator {
        Generator(self.0 >> 1)
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn exponent(self) -> i32 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "{}'", self.generator())
        } else {
            write!(f, "{}", self.generator())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn generator(g: Generator) -> Word {
        Word { letters: vec![Letter::new(g, false)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| p[0] != p[1].inverse())
    }

    /// Free reduction.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return self.clone();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Minimal representative among all rotations of the word and its inverse.
    pub fn cyclic_normal_form(&self) -> Word {
        let inv = self.invert();
        (0..self.len().max(1)).flat_map(|k| [self.rotate(k), inv.rotate(k)]).min().unwrap_or_default()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> [i64; GENERATOR_COUNT] {
        let mut sums = [0i64; GENERATOR_COUNT];
        for l in &self.letters {
            sums[l.generator().index()] += l.exponent() as i64;
        }
        sums
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `u v' w'`; whitespace between letters is optional and `1`
    /// denotes the empty word.
    fn from_str(s: &str) -> Result<Word, Error> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::identity());
        }
        let mut letters: Vec<Letter> = Vec::new();
        let mut primed = true;
        for c in s.chars() {
            if c.is_whitespace() {
                continue;
            }
            if c == '\'' {
                match letters.last_mut() {
                    Some(l) if !primed => {
                        *l = l.inverse();
                        primed = true;
                    }
                    _ => return Err(Error::MalformedWord(s.to_string())),
                }
                continue;
            }
            let g = Generator::from_symbol(c).ok_or_else(|| Error::MalformedWord(s.to_string()))?;
            letters.push(Letter::new(g, false));
            primed = false;
        }
        Ok(Word { letters })
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Word, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a whitespace or comma separated list of words, one per line or
/// separated by commas.
pub fn parse_word_list(text: &str) -> Result<Vec<Word>, Error> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(','))
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Ws,
    Phs,
    Rp3,
}

impl Space {
    pub const ALL: [Space; 3] = [Space::Ws, Space::Phs, Space::Rp3];

    pub fn tag(self) -> &'static str {
        match self {
            Space::Ws => "ws",
            Space::Phs => "phs",
            Space::Rp3 => "rp3",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Space, Error> {
        match s.to_ascii_lowercase().as_str() {
            "ws" => Ok(Space::Ws),
            "phs" => Ok(Space::Phs),
            "rp3" => Ok(Space::Rp3),
            _ => Err(Error::InvalidInput(format!("unknown space '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub label: String,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(label: impl Into<String>, relators: Vec<Word>) -> Result<Presentation, Error> {
        for r in &relators {
            if r.is_empty() || !r.is_reduced() {
                return Err(Error::InvalidInput(format!("relator '{r}' is empty or not reduced")));
            }
        }
        Ok(Presentation { label: label.into(), relators })
    }

    pub fn generator_count(&self) -> usize {
        GENERATOR_COUNT
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< u, v, w, x, y, z | ")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", r.to_string().replace(' ', ""))?;
        }
        write!(f, " >")
    }
}

const WS_RELATORS: [&str; 6] = ["uxy'v'w", "uyz'w'x", "uzv'x'y", "uvw'y'z", "uwx'z'v", "vxzwy"];

const PHS_RELATORS: [&str; 10] = ["uxz", "uyv", "uzw", "uvx", "uwy", "xy'z", "yz'v", "zv'w", "vw'x", "wx'y"];

// Edge cycles of the antipodally glued dodecahedron, frozen from
// `dodecomplex::derive_presentation(Space::Rp3)`.
const RP3_RELATORS: [&str; 15] =
    ["ux", "uw", "uv", "uz", "uy", "v'z", "v'w", "v'y'", "v'x'", "w'y'", "w'x", "w'z'", "z'x'", "z'y", "y'x"];

pub fn builtin_presentation(space: Space) -> Presentation {
    let rels: &[&str] = match space {
        Space::Ws => &WS_RELATORS,
        Space::Phs => &PHS_RELATORS,
        Space::Rp3 => &RP3_RELATORS,
    };
    let relators = rels.iter().map(|r| r.parse().expect("builtin relator")).collect();
    Presentation::new(space.tag(), relators).expect("builtin presentation")
}

/// True iff the relator multisets agree up to rotation and inversion of
/// each relator.
pub fn relators_equivalent(a: &Presentation, b: &Presentation) -> bool {
    let normal = |p: &Presentation| {
        let mut v: Vec<Word> = p.relators.iter().map(|r| r.reduce().cyclic_normal_form()).collect();
        v.sort();
        v
    };
    normal(a) == normal(b)
}

/// Signed generator permutations that map the relator set onto itself (up
/// to rotation and inversion), as maps on letter indices. The identity is
/// first.
pub fn relator_symmetries(p: &Presentation) -> Vec<[u8; LETTER_COUNT]> {
    let normal = |rels: &mut dyn Iterator<Item = Word>| {
        let mut v: Vec<Word> = rels.map(|r| r.reduce().cyclic_normal_form()).collect();
        v.sort();
        v
    };
    let target = normal(&mut p.relators.iter().cloned());
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..GENERATOR_COUNT).collect();
    let mut perms = Vec::new();
    permutations(&mut perm, 0, &mut perms);
    for perm in &perms {
        for signs in 0u32..1 << GENERATOR_COUNT {
            let mut map = [0u8; LETTER_COUNT];
            for g in 0..GENERATOR_COUNT {
                let img = 2 * perm[g] + (signs >> g & 1) as usize;
                map[2 * g] = img as u8;
                map[2 * g + 1] = (img ^ 1) as u8;
            }
            let image = p.relators.iter().map(|r| {
                Word::from_letters(r.letters().iter().map(|l| Letter::from_index(map[l.index()] as usize)).collect())
            });
            if normal(&mut image.into_iter()) == target {
                out.push(map);
            }
        }
    }
    out.sort_by_key(|m| m.iter().enumerate().any(|(i, &j)| i != j as usize));
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("u u'").reduce(), Word::identity());
        assert_eq!(w("uvw'y'z").reduce(), w("uvw'y'z"));
        assert_eq!(w("v v v'").reduce(), w("v"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("uvz").invert(), w("z'v'u'"));
        assert_eq!(Word::identity().invert(), Word::identity());
        assert_eq!(w("u'vz").invert(), w("z'v'u"));
    }

    #[test]
    fn printer_round_trips() {
        for s in ["u v' w'", "1", "z' z' y"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn malformed_words_are_rejected() {
        assert!("a".parse::<Word>().is_err());
        assert!("'u".parse::<Word>().is_err());
        assert!("u''".parse::<Word>().is_err());
    }

    #[test]
    fn equivalence_up_to_rotation_and_inversion() {
        let p = |r: &str| Presentation::new("t", vec![w(r)]).unwrap();
        assert!(relators_equivalent(&p("vxzwy"), &p("xzwyv")));
        assert!(relators_equivalent(&p("vxzwy"), &p("y'w'z'x'v'")));
        assert!(!relators_equivalent(&builtin_presentation(Space::Ws), &builtin_presentation(Space::Phs)));
    }

    #[test]
    fn symmetry_groups_have_order_sixty() {
        for s in [Space::Ws, Space::Phs] {
            let syms = relator_symmetries(&builtin_presentation(s));
            assert_eq!(syms.len(), 60);
            assert!(syms[0].iter().enumerate().all(|(i, &j)| i == j as usize));
        }
    }

    #[test]
    fn builtin_relator_lengths() {
        let lens = |s| builtin_presentation(s).relators.iter().map(Word::len).collect::<Vec<_>>();
        assert!(lens(Space::Ws).iter().all(|&l| l == 5));
        assert!(lens(Space::Phs).iter().all(|&l| l == 3));
        assert!(lens(Space::Rp3).iter().all(|&l| l == 2));
        assert_eq!(lens(Space::Phs).len(), 10);
        assert_eq!(lens(Space::Rp3).len(), 15);
    }
}
