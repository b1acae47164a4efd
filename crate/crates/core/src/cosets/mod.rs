//! Coset tables, permutation actions, coset enumeration, low-index
//! subgroups, normal cores and subgroup lattices of finite groups.

mod lattice;
mod lowindex;
mod permgroup;
mod todd_coxeter;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{Generator, Letter, Presentation, Word, GENERATOR_COUNT, LETTER_COUNT};

pub use lattice::{finite_subgroup_classes, LatticeSummary, SubgroupClass};
pub use lowindex::{low_index_classes, low_index_classes_with_jobs};
pub use permgroup::{catalog_name, core, image_order, image_summary, GroupSummary, PermGroup, DEFAULT_CLOSURE_BOUND};
pub use todd_coxeter::todd_coxeter;

pub(crate) const NONE: u32 = u32::MAX;

pub type Row = [u32; LETTER_COUNT];

/// Complete coset table; cosets are numbered from 0 internally and coset 0
/// is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetTable {
    rows: Vec<Row>,
}

impl CosetTable {
    /// Validates totality and mutual inverseness of the columns.
    pub fn from_rows(rows: Vec<Row>) -> Result<CosetTable> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::InvalidInput("empty coset table".into()));
        }
        for (c, row) in rows.iter().enumerate() {
            for (x, &d) in row.iter().enumerate() {
                if d as usize >= k || rows[d as usize][x ^ 1] as usize != c {
                    return Err(Error::InvalidInput(format!("coset table inconsistent at ({c}, {x})")));
                }
            }
        }
        Ok(CosetTable { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Row>) -> CosetTable {
        CosetTable { rows }
    }

    pub fn index(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn get(&self, coset: usize, l: Letter) -> usize {
        self.rows[coset][l.index()] as usize
    }

    /// Image of `start` under `w` read left to right.
    pub fn trace(&self, w: &Word, start: usize) -> usize {
        w.letters().iter().fold(start, |c, &l| self.get(c, l))
    }

    pub fn satisfies(&self, p: &Presentation) -> bool {
        (0..self.index()).all(|c| p.relators.iter().all(|r| self.trace(r, c) == c))
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.index()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(c) = stack.pop() {
            for &d in &self.rows[c] {
                if !seen[d as usize] {
                    seen[d as usize] = true;
                    count += 1;
                    stack.push(d as usize);
                }
            }
        }
        count == self.index()
    }

    /// Relabels cosets breadth-first from `base`, letters in column order.
    pub fn standardize(&self, base: usize) -> CosetTable {
        let k = self.index();
        let mut perm = vec![NONE; k];
        let mut order = Vec::with_capacity(k);
        perm[base] = 0;
        order.push(base);
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for &d in &self.rows[c] {
                if perm[d as usize] == NONE {
                    perm[d as usize] = order.len() as u32;
                    order.push(d as usize);
                }
            }
            i += 1;
        }
        let rows = order
            .iter()
            .map(|&c| {
                let mut row = [0u32; LETTER_COUNT];
                for x in 0..LETTER_COUNT {
                    row[x] = perm[self.rows[c][x] as usize];
                }
                row
            })
            .collect();
        CosetTable { rows }
    }

    /// Compares the table standardized from `base` with `self`, assuming
    /// `self` is standardized from coset 0; stops at the first difference.
    fn compare_rebased(&self, base: usize) -> Ordering {
        let k = self.index();
        let mut perm = vec![NONE; k];
        let mut order = Vec::with_capacity(k);
        perm[base] = 0;
        order.push(base);
        for row in 0..k {
            let c = order[row];
            for x in 0..LETTER_COUNT {
                let d = self.rows[c][x] as usize;
                if perm[d] == NONE {
                    perm[d] = order.len() as u32;
                    order.push(d);
                }
                match perm[d].cmp(&self.rows[row][x]) {
                    Ordering::Equal => {}
                    other => return other,
                }
            }
        }
        Ordering::Equal
    }

    /// Lexicographically minimal standardized table over all base points:
    /// the representative of the conjugacy class of the subgroup.
    pub fn canonical(&self) -> CosetTable {
        let mut best = self.standardize(0);
        for b in 1..self.index() {
            let cand = self.standardize(b);
            if cand.rows < best.rows {
                best = cand;
            }
        }
        best
    }

    /// True iff this (standardized) table is the class representative.
    pub fn is_canonical(&self) -> bool {
        (1..self.index()).all(|b| self.compare_rebased(b) != Ordering::Less)
    }

    /// Flattened entries, used as a deterministic sort key.
    pub fn flat(&self) -> Vec<u32> {
        self.rows.iter().flat_map(|r| r.iter().copied()).collect()
    }

    /// Cosets that are fixed by every element of the subgroup
    /// (the normalizer's cosets, as base points giving the same table).
    pub fn normalizer_cosets(&self) -> Vec<usize> {
        let std0 = self.standardize(0);
        (0..self.index()).filter(|&b| self.standardize(b) == std0).collect()
    }

    pub fn is_normal(&self) -> bool {
        self.normalizer_cosets().len() == self.index()
    }

    /// Words leading from coset 0 to every coset along a breadth-first
    /// spanning tree (letters in column order).
    pub fn transversal(&self) -> Vec<Word> {
        let k = self.index();
        let mut words: Vec<Option<Word>> = vec![None; k];
        words[0] = Some(Word::identity());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..LETTER_COUNT {
                let d = self.rows[c][x] as usize;
                if words[d].is_none() {
                    let mut w = words[c].clone().unwrap().letters().to_vec();
                    w.push(Letter::from_index(x));
                    words[d] = Some(Word::from_letters(w));
                    queue.push_back(d);
                }
            }
        }
        words.into_iter().map(|w| w.expect("transitive table")).collect()
    }

    /// Schreier generators of the subgroup as words, one per non-tree edge.
    pub fn schreier_generators(&self) -> Vec<Word> {
        let tree = spanning_tree(self);
        let trans = self.transversal();
        let mut out = Vec::new();
        for c in 0..self.index() {
            for g in 0..GENERATOR_COUNT {
                if !tree[c][g] {
                    let l = Letter::new(Generator::new(g), false);
                    let d = self.get(c, l);
                    let w = trans[c].concat(&Word::generator(Generator::new(g))).concat(&trans[d].invert());
                    out.push(w.reduce());
                }
            }
        }
        out
    }
}

/// `tree[c][g]` marks the forward edge c --g--> c·g as a spanning-tree edge
/// of the breadth-first tree from coset 0 (letters in alphabet order).
pub fn spanning_tree(t: &CosetTable) -> Vec<[bool; GENERATOR_COUNT]> {
    let k = t.index();
    let mut tree = vec![[false; GENERATOR_COUNT]; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..LETTER_COUNT {
            let d = t.rows[c][x] as usize;
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
                if x & 1 == 0 {
                    tree[c][x >> 1] = true;
                } else {
                    tree[d][x >> 1] = true;
                }
            }
        }
    }
    tree
}

/// Action of the six generators on sheets, as permutations (0-indexed
/// internally, 1-indexed in every external format). Right action: the
/// image of sheet `i` under the word `ab` is `(i^a)^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationAction {
    perms: Vec<Vec<u32>>,
}

impl PermutationAction {
    pub fn new(perms: Vec<Vec<u32>>) -> Result<PermutationAction> {
        if perms.len() != GENERATOR_COUNT {
            return Err(Error::InvalidInput(format!("expected 6 permutations, got {}", perms.len())));
        }
        let k = perms[0].len();
        for p in &perms {
            if p.len() != k {
                return Err(Error::InvalidInput("permutations of different degrees".into()));
            }
            let mut seen = vec![false; k];
            for &i in p {
                if i as usize >= k || std::mem::replace(&mut seen[i as usize], true) {
                    return Err(Error::InvalidInput("not a permutation".into()));
                }
            }
        }
        Ok(PermutationAction { perms })
    }

    pub fn identity(k: usize) -> PermutationAction {
        PermutationAction { perms: vec![(0..k as u32).collect(); GENERATOR_COUNT] }
    }

    pub fn degree(&self) -> usize {
        self.perms[0].len()
    }

    pub fn perm(&self, g: Generator) -> &[u32] {
        &self.perms[g.index()]
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn apply(&self, sheet: usize, l: Letter) -> usize {
        let p = &self.perms[l.generator().index()];
        if l.is_inverse() {
            p.iter().position(|&j| j as usize == sheet).unwrap()
        } else {
            p[sheet] as usize
        }
    }

    pub fn inverse_perm(&self, g: Generator) -> Vec<u32> {
        let p = &self.perms[g.index()];
        let mut inv = vec![0u32; p.len()];
        for (i, &j) in p.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        inv
    }

    pub fn satisfies(&self, p: &Presentation) -> bool {
        let t = self.as_table();
        t.satisfies(p)
    }

    pub fn is_transitive(&self) -> bool {
        self.as_table().is_transitive()
    }

    /// True iff some generator fixes some sheet (a pentagon glued to a
    /// pentagon of the same dodecahedron).
    pub fn has_fixed_point(&self) -> bool {
        self.perms.iter().any(|p| p.iter().enumerate().any(|(i, &j)| i == j as usize))
    }

    /// The action as a coset table on the current sheet numbering (no
    /// standardization, no transitivity check).
    pub fn as_table(&self) -> CosetTable {
        let k = self.degree();
        let inv: Vec<Vec<u32>> = Generator::ALL.iter().map(|&g| self.inverse_perm(g)).collect();
        let rows = (0..k)
            .map(|i| {
                let mut row = [0u32; LETTER_COUNT];
                for g in 0..GENERATOR_COUNT {
                    row[2 * g] = self.perms[g][i];
                    row[2 * g + 1] = inv[g][i];
                }
                row
            })
            .collect();
        CosetTable { rows }
    }

    /// Coset table of the stabilizer of `base`, standardized.
    pub fn to_table(&self, base: usize) -> Result<CosetTable> {
        let t = self.as_table();
        if !t.is_transitive() {
            return Err(Error::InvalidInput("action is not transitive".into()));
        }
        Ok(t.standardize(base))
    }

    /// Parses cycle notation per generator, e.g. `(1,2,14,20,3)(4,18)`.
    pub fn from_cycles(cycles: &[&str], degree: usize) -> Result<PermutationAction> {
        let perms = cycles.iter().map(|c| parse_cycles(c, degree)).collect::<Result<Vec<_>>>()?;
        PermutationAction::new(perms)
    }

    pub fn to_cycles(&self, g: Generator) -> String {
        format_cycles(&self.perms[g.index()])
    }

    pub fn inverse(&self) -> PermutationAction {
        PermutationAction { perms: Generator::ALL.iter().map(|&g| self.inverse_perm(g)).collect() }
    }
}

pub fn action_from_table(t: &CosetTable) -> PermutationAction {
    let perms = (0..GENERATOR_COUNT).map(|g| t.rows.iter().map(|r| r[2 * g]).collect()).collect();
    PermutationAction { perms }
}

/// Parses 1-indexed cycle notation into a 0-indexed one-line permutation.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Vec<u32>> {
    let mut p: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let bad = || Error::InvalidInput(format!("malformed cycle notation '{s}'"));
    for chunk in s.split('(').skip(1) {
        let body = chunk.split(')').next().ok_or_else(bad)?;
        let pts: Vec<usize> =
            body.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?;
        for (i, &a) in pts.iter().enumerate() {
            if a == 0 || a > degree || std::mem::replace(&mut seen[a - 1], true) {
                return Err(bad());
            }
            p[a - 1] = (pts[(i + 1) % pts.len()] - 1) as u32;
        }
    }
    Ok(p)
}

pub fn format_cycles(p: &[u32]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] as usize == i {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cyc.push((j + 1).to_string());
            j = p[j] as usize;
        }
        out.push('(');
        out.push_str(&cyc.join(","));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl Serialize for PermutationAction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, Vec<u32>> = Generator::ALL
            .iter()
            .map(|g| (g.symbol().to_string(), self.perms[g.index()].iter().map(|&i| i + 1).collect()))
            .collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermutationAction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<PermutationAction, D::Error> {
        let map = BTreeMap::<String, Vec<u32>>::deserialize(d)?;
        let mut perms = Vec::new();
        for g in Generator::ALL {
            let p = map
                .get(&g.symbol().to_string())
                .ok_or_else(|| serde::de::Error::custom(format!("missing generator {g}")))?;
            if p.contains(&0) {
                return Err(serde::de::Error::custom("sheets are 1-indexed"));
            }
            perms.push(p.iter().map(|&i| i - 1).collect());
        }
        PermutationAction::new(perms).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Enumerated,
    FromWords,
    CoreOf(String),
    Lattice,
    Imported(String),
}

#[derive(Clone, Debug)]
pub struct SubgroupRecord {
    pub table: CosetTable,
    pub generator_words: Option<Vec<Word>>,
    pub provenance: Provenance,
}

impl SubgroupRecord {
    pub fn degree(&self) -> usize {
        self.table.index()
    }

    pub fn action(&self) -> PermutationAction {
        action_from_table(&self.table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({
            "degree": self.degree(),
            "action": self.action(),
            "provenance": self.provenance,
        });
        if let Some(ws) = &self.generator_words {
            v["generator_words"] = serde_json::to_value(ws).unwrap();
        }
        v
    }
}

/// Two subgroups are conjugate iff their canonical tables coincide.
pub fn is_conjugate(s: &CosetTable, t: &CosetTable) -> bool {
    s.index() == t.index() && s.canonical() == t.canonical()
}

/// True iff the subgroup of `small` is contained in some conjugate of the
/// subgroup of `big`: there is a coset map from `small` onto `big` sending
/// coset 0 to some coset and commuting with all letters.
pub fn contained_in_conjugate(small: &CosetTable, big: &CosetTable) -> bool {
    (0..big.index()).any(|b| coset_map(small, big, b).is_some())
}

/// True iff the subgroup of `small` is contained in the subgroup of `big`.
pub fn contained_in(small: &CosetTable, big: &CosetTable) -> bool {
    coset_map(small, big, 0).is_some()
}

fn coset_map(small: &CosetTable, big: &CosetTable, base: usize) -> Option<Vec<u32>> {
    let mut map = vec![NONE; small.index()];
    map[0] = base as u32;
    let mut stack = vec![0usize];
    while let Some(c) = stack.pop() {
        let m = map[c] as usize;
        for x in 0..LETTER_COUNT {
            let d = small.rows[c][x] as usize;
            let e = big.rows[m][x];
            if map[d] == NONE {
                map[d] = e;
                stack.push(d);
            } else if map[d] != e {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{builtin_presentation, Space};

    #[test]
    fn cycles_round_trip() {
        let p = parse_cycles("(2,5,3,6,4)", 6).unwrap();
        assert_eq!(p, vec![0, 4, 5, 1, 2, 3]);
        assert_eq!(format_cycles(&p), "(2,5,3,6,4)");
        assert!(parse_cycles("(1,1)", 3).is_err());
    }

    #[test]
    fn identity_action_gives_index_one() {
        let a = PermutationAction::identity(1);
        let t = a.to_table(0).unwrap();
        assert_eq!(t.index(), 1);
        assert!(t.satisfies(&builtin_presentation(Space::Ws)));
        assert_eq!(t.trace(&Word::identity(), 0), 0);
    }
}
