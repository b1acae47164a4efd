use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{todd_coxeter, CosetTable, Row};
use crate::error::{Error, Result};
use crate::fpgroup::{Letter, Presentation, LETTER_COUNT};

/// Subgroup of a small finite group as a bitset over its elements.
type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn members(b: &Bits, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| bit(b, i)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupClass {
    pub order: usize,
    pub index: usize,
    pub class_size: usize,
    pub normal: bool,
    /// Order of the image of the coset action (group order over core order).
    pub image_order: usize,
    #[serde(skip)]
    pub table: CosetTable,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSummary {
    pub group_order: usize,
    pub subgroup_count: usize,
    /// Sorted by decreasing index (increasing subgroup order).
    pub classes: Vec<SubgroupClass>,
}

struct FiniteGroup {
    n: usize,
    mul: Vec<Vec<u32>>,
    inv: Vec<u32>,
    /// Element represented by each directed letter.
    letter: [u32; LETTER_COUNT],
}

impl FiniteGroup {
    fn from_regular_table(t: &CosetTable) -> FiniteGroup {
        let n = t.index();
        let words = t.transversal();
        let mul: Vec<Vec<u32>> = (0..n).map(|a| words.iter().map(|w| t.trace(w, a) as u32).collect()).collect();
        let mut inv = vec![0u32; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a][b] == 0).unwrap() as u32;
        }
        let mut letter = [0u32; LETTER_COUNT];
        for (x, l) in letter.iter_mut().enumerate() {
            *l = t.get(0, Letter::from_index(x)) as u32;
        }
        FiniteGroup { n, mul, inv, letter }
    }

    fn words(&self) -> usize {
        self.n.div_ceil(64)
    }

    fn generated(&self, gens: &[usize]) -> Bits {
        let mut b = vec![0u64; self.words()];
        let mut list = vec![0usize];
        set_bit(&mut b, 0);
        let mut i = 0;
        while i < list.len() {
            for &g in gens {
                let p = self.mul[list[i]][g] as usize;
                if !bit(&b, p) {
                    set_bit(&mut b, p);
                    list.push(p);
                }
            }
            i += 1;
        }
        b
    }

    fn conjugate(&self, h: &Bits, g: usize) -> Bits {
        let mut out = vec![0u64; self.words()];
        let gi = self.inv[g] as usize;
        for a in members(h, self.n) {
            set_bit(&mut out, self.mul[self.mul[gi][a] as usize][g] as usize);
        }
        out
    }

    /// Right cosets Ha with the letters acting on the right.
    fn coset_table(&self, h: &Bits) -> CosetTable {
        let mut id = vec![u32::MAX; self.n];
        let mut count = 0u32;
        let hs = members(h, self.n);
        let mut reps = Vec::new();
        for a in 0..self.n {
            if id[a] == u32::MAX {
                for &x in &hs {
                    id[self.mul[x][a] as usize] = count;
                }
                reps.push(a);
                count += 1;
            }
        }
        let rows: Vec<Row> = reps
            .iter()
            .map(|&a| {
                let mut row = [0u32; LETTER_COUNT];
                for x in 0..LETTER_COUNT {
                    row[x] = id[self.mul[a][self.letter[x] as usize] as usize];
                }
                row
            })
            .collect();
        CosetTable::from_rows_unchecked(rows).standardize(0)
    }
}

/// All subgroups of a finite group given by a presentation, by joining
/// cyclic subgroups until closed, grouped into conjugacy classes.
pub fn finite_subgroup_classes(p: &Presentation, max_order: usize) -> Result<LatticeSummary> {
    let regular = todd_coxeter(p, &[], 64 * max_order)?;
    if regular.index() > max_order {
        return Err(Error::ResourceLimit(format!("group order {} exceeds {max_order}", regular.index())));
    }
    let g = FiniteGroup::from_regular_table(&regular);
    let n = g.n;
    let mut cyclic: BTreeSet<Bits> = BTreeSet::new();
    for a in 0..n {
        cyclic.insert(g.generated(&[a]));
    }
    let cyclic: Vec<Bits> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Bits> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Bits> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for c in &cyclic {
                if c.iter().zip(h).all(|(x, y)| x & !y == 0) {
                    continue;
                }
                let mut gens = members(h, n);
                gens.extend(members(c, n));
                let j = g.generated(&gens);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut classes: BTreeMap<Bits, Vec<Bits>> = BTreeMap::new();
    let mut seen: BTreeSet<Bits> = BTreeSet::new();
    for h in &all {
        if seen.contains(h) {
            continue;
        }
        let conj: BTreeSet<Bits> = (0..n).map(|a| g.conjugate(h, a)).collect();
        seen.extend(conj.iter().cloned());
        let rep = conj.iter().next().unwrap().clone();
        classes.insert(rep, conj.into_iter().collect());
    }
    let mut out: Vec<SubgroupClass> = classes
        .into_iter()
        .map(|(rep, conj)| {
            let order = members(&rep, n).len();
            let mut core = rep.clone();
            for c in &conj {
                for (x, y) in core.iter_mut().zip(c) {
                    *x &= y;
                }
            }
            let core_order = members(&core, n).len();
            SubgroupClass {
                order,
                index: n / order,
                class_size: conj.len(),
                normal: conj.len() == 1,
                image_order: n / core_order,
                table: g.coset_table(&rep).canonical(),
            }
        })
        .collect();
    out.sort_by(|a, b| b.index.cmp(&a.index).then_with(|| a.table.rows().cmp(b.table.rows())));
    Ok(LatticeSummary { group_order: n, subgroup_count: all.len(), classes: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::Word;

    #[test]
    fn trivial_group_has_one_subgroup() {
        let rels = ["u", "v", "w", "x", "y", "z"].iter().map(|s| s.parse::<Word>().unwrap()).collect();
        let p = Presentation::new("trivial", rels).unwrap();
        let l = finite_subgroup_classes(&p, 10).unwrap();
        assert_eq!((l.group_order, l.subgroup_count, l.classes.len()), (1, 1, 1));
    }

    #[test]
    fn s3_lattice() {
        let rels =
            ["u u", "v v", "u v u v u v", "w", "x", "y", "z"].iter().map(|s| s.parse::<Word>().unwrap()).collect();
        let p = Presentation::new("s3", rels).unwrap();
        let l = finite_subgroup_classes(&p, 10).unwrap();
        assert_eq!(l.group_order, 6);
        assert_eq!(l.subgroup_count, 6);
        assert_eq!(l.classes.len(), 4);
    }
}
