use std::cmp::Ordering;
use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{CosetTable, Provenance, Row, SubgroupRecord, NONE};
use crate::error::{Error, Result};
use crate::fpgroup::{relator_symmetries, Presentation, LETTER_COUNT};

/// Backtracking search over partial coset tables. Cosets are always defined
/// at the first undefined entry (row-major), so every partial table is
/// standardized from coset 0 and canonicity can be tested on prefixes.
struct Search<'a> {
    /// Cyclic rotations of the relators and their inverses, bucketed by
    /// first letter.
    rotations: &'a [Vec<Vec<u8>>; LETTER_COUNT],
    /// Letter maps of the presentation's symmetries, identity first.
    symmetries: &'a [[u8; LETTER_COUNT]],
    max_index: usize,
    table: Vec<Row>,
    n: usize,
    undo: Vec<(u32, u8)>,
    pending: Vec<(u32, u8)>,
    found: Vec<CosetTable>,
    /// Row-major position of the entry that introduced each coset.
    defined_at: Vec<usize>,
    /// Stack of (symmetry, base) pairs whose rebased table still agrees
    /// with the current one on every decided entry; pairs that compared
    /// greater stay greater below, so each node only rechecks its parent's
    /// segment `open[open_start..]`.
    open: Vec<(u8, u8)>,
    open_start: usize,
    nodes: u64,
    node_limit: u64,
}

fn rotation_buckets(p: &Presentation) -> [Vec<Vec<u8>>; LETTER_COUNT] {
    let mut buckets: [Vec<Vec<u8>>; LETTER_COUNT] = Default::default();
    for r in &p.relators {
        let r = r.reduce();
        for w in [r.clone(), r.invert()] {
            for k in 0..w.len() {
                let rot: Vec<u8> = w.rotate(k).letters().iter().map(|l| l.index() as u8).collect();
                let first = rot[0] as usize;
                if !buckets[first].contains(&rot) {
                    buckets[first].push(rot);
                }
            }
        }
    }
    buckets
}

impl<'a> Search<'a> {
    fn new(
        rotations: &'a [Vec<Vec<u8>>; LETTER_COUNT],
        symmetries: &'a [[u8; LETTER_COUNT]],
        max_index: usize,
        node_limit: u64,
    ) -> Search<'a> {
        Search {
            rotations,
            symmetries,
            max_index,
            table: vec![[NONE; LETTER_COUNT]; max_index],
            n: 1,
            undo: Vec::new(),
            pending: Vec::new(),
            found: Vec::new(),
            defined_at: vec![0; max_index],
            open: Vec::new(),
            open_start: 0,
            nodes: 0,
            node_limit,
        }
    }

    /// Entry (c, x) may hold `d` only if `d` first appears no later than
    /// that position; this keeps every completion standardized.
    fn allowed(&self, c: usize, x: usize, d: usize) -> bool {
        self.defined_at[d] <= c * LETTER_COUNT + x && self.defined_at[c] <= d * LETTER_COUNT + (x ^ 1)
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c][x] = d as u32;
        self.table[d][x ^ 1] = c as u32;
        self.undo.push((c as u32, x as u8));
        self.undo.push((d as u32, (x ^ 1) as u8));
        self.pending.push((c as u32, x as u8));
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (c, x) = self.undo.pop().unwrap();
            self.table[c as usize][x as usize] = NONE;
        }
    }

    /// Scans one relator rotation from `c`, filling a single gap if one
    /// remains. Returns false on a contradiction.
    fn scan(&mut self, c: usize, r: &[u8]) -> bool {
        let len = r.len();
        let mut f = c;
        let mut i = 0;
        while i < len {
            let d = self.table[f][r[i] as usize];
            if d == NONE {
                break;
            }
            f = d as usize;
            i += 1;
        }
        if i == len {
            return f == c;
        }
        let mut b = c;
        let mut j = len;
        while j > i {
            let d = self.table[b][r[j - 1] as usize ^ 1];
            if d == NONE {
                break;
            }
            b = d as usize;
            j -= 1;
        }
        if j == i {
            // both scans met without a gap: impossible since entry i is undefined
            return false;
        }
        if j == i + 1 {
            let x = r[i] as usize;
            if self.table[b][x ^ 1] != NONE || !self.allowed(f, x, b) {
                return false;
            }
            self.set(f, x, b);
        }
        true
    }

    fn propagate(&mut self) -> bool {
        let rotations = self.rotations;
        while let Some((c, x)) = self.pending.pop() {
            let (c, x) = (c as usize, x as usize);
            let d = self.table[c][x] as usize;
            for r in &rotations[x] {
                if !self.scan(c, r) {
                    self.pending.clear();
                    return false;
                }
            }
            for r in &rotations[x ^ 1] {
                if !self.scan(d, r) {
                    self.pending.clear();
                    return false;
                }
            }
        }
        true
    }

    /// Compares the partial table rebased at `base`, with letters renamed by
    /// `map`, against the current one; `Less` proves no completion is the
    /// least table of its class.
    fn compare_rebased(&self, base: usize, map: &[u8; LETTER_COUNT]) -> Ordering {
        let n = self.n;
        let mut perm = [u8::MAX; 64];
        let mut order = [0u8; 64];
        let mut next = 1u8;
        perm[base] = 0;
        order[0] = base as u8;
        for row in 0..n {
            if row >= next as usize {
                return Ordering::Equal;
            }
            let c = order[row] as usize;
            for x in 0..LETTER_COUNT {
                let d = self.table[c][map[x] as usize];
                let cur = self.table[row][x];
                if d == NONE || cur == NONE {
                    return Ordering::Equal;
                }
                let d = d as usize;
                if perm[d] == u8::MAX {
                    perm[d] = next;
                    order[next as usize] = d as u8;
                    next += 1;
                }
                match (perm[d] as u32).cmp(&cur) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
        }
        Ordering::Equal
    }

    /// Seeds the comparison stack for a search starting with `n` cosets.
    fn seed(&mut self) {
        self.open.clear();
        self.open_start = 0;
        for b in 0..self.n {
            for m in 0..self.symmetries.len() {
                if m > 0 || b > 0 {
                    self.open.push((m as u8, b as u8));
                }
            }
        }
    }

    /// Rechecks the parent's open pairs (plus the pairs based at a newly
    /// introduced coset) and pushes the survivors as the child's segment.
    /// Returns the parent's segment start, or `None` if some rebased table
    /// is provably smaller.
    fn plausibly_canonical(&mut self, new_coset: Option<usize>) -> Option<usize> {
        let (lo, hi) = (self.open_start, self.open.len());
        let extra = new_coset.map_or(0, |_| self.symmetries.len());
        for k in 0..(hi - lo) + extra {
            let (m, b) =
                if k < hi - lo { self.open[lo + k] } else { ((k - (hi - lo)) as u8, new_coset.unwrap() as u8) };
            match self.compare_rebased(b as usize, &self.symmetries[m as usize]) {
                Ordering::Less => {
                    self.open.truncate(hi);
                    return None;
                }
                Ordering::Equal => self.open.push((m, b)),
                Ordering::Greater => {}
            }
        }
        self.open_start = hi;
        Some(lo)
    }

    fn first_gap(&self, from: usize) -> Option<(usize, usize)> {
        (from..self.n * LETTER_COUNT)
            .find(|&p| self.table[p / LETTER_COUNT][p % LETTER_COUNT] == NONE)
            .map(|p| (p / LETTER_COUNT, p % LETTER_COUNT))
    }

    fn try_value(&mut self, c: usize, x: usize, d: usize, from: usize, new_coset: bool) -> Result<()> {
        let mark = self.undo.len();
        self.set(c, x, d);
        if self.propagate() {
            if let Some(parent) = self.plausibly_canonical(new_coset.then_some(d)) {
                let r = self.run(from);
                self.open.truncate(self.open_start);
                self.open_start = parent;
                r?;
            }
        }
        self.rollback(mark);
        Ok(())
    }

    fn run(&mut self, from: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::ResourceLimit(format!(
                "low-index search exceeded {} nodes ({} classes found so far)",
                self.node_limit,
                self.found.len()
            )));
        }
        let Some((c, x)) = self.first_gap(from) else {
            let rows = self.table[..self.n].to_vec();
            self.found.push(CosetTable::from_rows_unchecked(rows));
            return Ok(());
        };
        let pos = c * LETTER_COUNT + x;
        let n = self.n;
        for d in 0..n {
            if self.table[d][x ^ 1] != NONE || !self.allowed(c, x, d) {
                continue;
            }
            self.try_value(c, x, d, pos + 1, false)?;
        }
        if n < self.max_index {
            self.n = n + 1;
            self.defined_at[n] = pos;
            self.try_value(c, x, n, pos + 1, true)?;
            self.n = n;
        }
        Ok(())
    }
}

/// One canonical coset table per conjugacy class of subgroups of index at
/// most `max_index`, sorted by (degree, flattened table).
pub fn low_index_classes(p: &Presentation, max_index: usize) -> Result<Vec<SubgroupRecord>> {
    low_index_classes_with_jobs(p, max_index, 1)
}

/// As [`low_index_classes`], exploring the subtrees below the first few
/// decisions on up to `jobs` threads; the result does not depend on `jobs`.
pub fn low_index_classes_with_jobs(p: &Presentation, max_index: usize, jobs: usize) -> Result<Vec<SubgroupRecord>> {
    if max_index == 0 {
        return Err(Error::InvalidInput("max_index must be at least 1".into()));
    }
    if max_index > 64 {
        return Err(Error::ResourceLimit("low-index search supports index at most 64".into()));
    }
    let rotations = rotation_buckets(p);
    let symmetries = relator_symmetries(p);
    let node_limit = u64::MAX;
    let tables = if jobs <= 1 {
        let mut s = Search::new(&rotations, &symmetries, max_index, node_limit);
        s.seed();
        s.run(0)?;
        s.found
    } else {
        // split on the value of the first entry (coset 0, letter 0)
        let branches: Vec<usize> = (0..=1.min(max_index - 1)).collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        let parts: Vec<Result<Vec<CosetTable>>> = pool.install(|| {
            branches
                .par_iter()
                .map(|&d| {
                    let mut s = Search::new(&rotations, &symmetries, max_index, node_limit);
                    if d == 1 {
                        s.n = 2;
                    }
                    s.seed();
                    s.set(0, 0, d);
                    if s.propagate() && s.plausibly_canonical(None).is_some() {
                        s.run(1)?;
                    }
                    Ok(s.found)
                })
                .collect()
        });
        let mut all = Vec::new();
        for part in parts {
            all.extend(part?);
        }
        all
    };
    // each table found is the least of its orbit under the symmetries
    let mut classes = BTreeSet::new();
    for t in &tables {
        for m in &symmetries {
            let rows = t.rows().iter().map(|r| std::array::from_fn(|x| r[m[x] as usize])).collect();
            classes.insert(CosetTable::from_rows_unchecked(rows).canonical());
        }
    }
    let mut tables: Vec<CosetTable> = classes.into_iter().collect();
    tables.sort_by(|a, b| a.index().cmp(&b.index()).then_with(|| a.rows().cmp(b.rows())));
    Ok(tables
        .into_iter()
        .map(|table| SubgroupRecord { table, generator_words: None, provenance: Provenance::Enumerated })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{builtin_presentation, Space};

    fn counts(p: &Presentation, n: usize) -> Vec<usize> {
        let recs = low_index_classes(p, n).unwrap();
        let mut c = vec![0; n + 1];
        for r in &recs {
            c[r.degree()] += 1;
            assert!(r.table.satisfies(p));
            assert!(r.table.is_canonical());
        }
        c
    }

    #[test]
    fn ws_has_38_classes_of_index_five() {
        assert_eq!(counts(&builtin_presentation(Space::Ws), 5), vec![0, 1, 0, 0, 0, 38]);
    }

    #[test]
    fn rp3_has_a_unique_double_cover() {
        assert_eq!(counts(&builtin_presentation(Space::Rp3), 3), vec![0, 1, 1, 0]);
    }

    #[test]
    fn jobs_do_not_change_the_result() {
        let p = builtin_presentation(Space::Ws);
        let a = low_index_classes_with_jobs(&p, 6, 1).unwrap();
        let b = low_index_classes_with_jobs(&p, 6, 2).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.table == y.table));
    }
}
