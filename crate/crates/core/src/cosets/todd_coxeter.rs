use super::{CosetTable, Row, NONE};
use crate::error::{Error, Result};
use crate::fpgroup::{Presentation, Word, LETTER_COUNT};

struct Enumeration {
    table: Vec<Row>,
    forward: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: Vec<usize>,
}

impl Enumeration {
    fn new(max_cosets: usize) -> Enumeration {
        Enumeration { table: vec![[NONE; LETTER_COUNT]], forward: vec![0], live: 1, max_cosets, queue: Vec::new() }
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.max_cosets {
            return Err(Error::ResourceLimit(format!(
                "coset enumeration exceeded {} cosets ({} live)",
                self.max_cosets, self.live
            )));
        }
        let n = self.table.len();
        self.table.push([NONE; LETTER_COUNT]);
        self.forward.push(n as u32);
        self.table[c][x] = n as u32;
        self.table[n][x ^ 1] = c as u32;
        self.live += 1;
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] as usize != r {
            r = self.forward[r] as usize;
        }
        let mut c = c;
        while self.forward[c] as usize != r {
            let next = self.forward[c] as usize;
            self.forward[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.forward[hi] = lo as u32;
        self.live -= 1;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..LETTER_COUNT {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                let f = f as usize;
                self.table[f][x ^ 1] = NONE;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x] as usize;
                    self.merge(f1, t);
                } else if self.table[f1][x ^ 1] != NONE {
                    let t = self.table[f1][x ^ 1] as usize;
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1 as u32;
                    self.table[f1][x ^ 1] = e1 as u32;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]] as usize;
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][w[j as usize] ^ 1] != NONE {
                b = self.table[b][w[j as usize] ^ 1] as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.table[f][w[i]] = b as u32;
                self.table[b][w[i] ^ 1] = f as u32;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn finish(self) -> CosetTable {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.is_live(c)).collect();
        let mut renum = vec![NONE; self.table.len()];
        for (i, &c) in live.iter().enumerate() {
            renum[c] = i as u32;
        }
        let rows = live
            .iter()
            .map(|&c| {
                let mut row = [0u32; LETTER_COUNT];
                for x in 0..LETTER_COUNT {
                    row[x] = renum[self.table[c][x] as usize];
                }
                row
            })
            .collect();
        CosetTable::from_rows_unchecked(rows).standardize(0)
    }
}

fn letters(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.index()).collect()
}

/// Relator-driven (HLT) coset enumeration of the subgroup generated by
/// `gens`, with at most `max_cosets` coset definitions.
pub fn todd_coxeter(p: &Presentation, gens: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let max_cosets = max_cosets.max(1);
    let rels: Vec<Vec<usize>> = p.relators.iter().map(|r| letters(&r.reduce())).collect();
    let mut e = Enumeration::new(max_cosets);
    for g in gens {
        e.scan_and_fill(0, &letters(&g.reduce()))?;
    }
    let mut c = 0;
    while c < e.table.len() {
        for r in &rels {
            if !e.is_live(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        if e.is_live(c) {
            for x in 0..LETTER_COUNT {
                if e.table[c][x] == NONE {
                    e.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    Ok(e.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpgroup::{builtin_presentation, Space};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn whole_group_has_index_one() {
        let p = builtin_presentation(Space::Ws);
        let gens: Vec<Word> = ["u", "v", "w", "x", "y", "z"].iter().map(|s| w(s)).collect();
        assert_eq!(todd_coxeter(&p, &gens, 100).unwrap().index(), 1);
    }

    #[test]
    fn s3_cosets_of_an_involution() {
        // <u, v | u^2, v^2, (uv)^3> with the other generators killed
        let p =
            Presentation::new("s3", ["u u", "v v", "u v u v u v", "w", "x", "y", "z"].iter().map(|s| w(s)).collect())
                .unwrap();
        let t = todd_coxeter(&p, &[w("u")], 100).unwrap();
        assert_eq!(t.index(), 3);
        assert!(t.satisfies(&p));
        assert_eq!(todd_coxeter(&p, &[], 100).unwrap().index(), 6);
    }

    #[test]
    fn phs_is_finite_of_order_120() {
        let p = builtin_presentation(Space::Phs);
        let t = todd_coxeter(&p, &[], 64 * 120).unwrap();
        assert_eq!(t.index(), 120);
        assert!(t.satisfies(&p));
    }

    #[test]
    fn bound_is_reported() {
        let p = builtin_presentation(Space::Phs);
        assert!(matches!(todd_coxeter(&p, &[], 10), Err(Error::ResourceLimit(_))));
    }
}
