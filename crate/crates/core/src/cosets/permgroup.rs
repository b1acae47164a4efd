use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::{CosetTable, PermutationAction, Provenance, SubgroupRecord};
use crate::error::{Error, Result};
use crate::fpgroup::{GENERATOR_COUNT, LETTER_COUNT};

pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: u64,
    pub transitive: bool,
    pub regular: bool,
    pub perfect: bool,
    pub catalog_name: Option<String>,
}

/// Names used for monodromy images; only orders where the name is forced
/// are listed.
pub fn catalog_name(order: u64, perfect: bool) -> Option<String> {
    match (order, perfect) {
        (60, true) => Some("A5".into()),
        (120, true) => Some("SL(2,5)".into()),
        (504, true) => Some("PSL(2,8)".into()),
        (1344, _) => Some("order 1344".into()),
        _ => None,
    }
}

/// A permutation group listed element by element, with the right regular
/// action of the generators.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    /// Elements as concatenated one-line permutations; element 0 is the identity.
    elements: Vec<u32>,
    /// `cayley[e][g]` is the index of `e * g`.
    cayley: Vec<[u32; GENERATOR_COUNT]>,
    gens: Vec<Vec<u32>>,
}

fn pack(p: &[u32]) -> u64 {
    p.iter().fold(0u64, |acc, &i| (acc << 4) | i as u64)
}

trait Index {
    fn find(&self, p: &[u32]) -> Option<u32>;
    fn insert(&mut self, p: &[u32], id: u32);
}

struct Packed(HashMap<u64, u32>);
struct Boxed(HashMap<Box<[u32]>, u32>);

impl Index for Packed {
    fn find(&self, p: &[u32]) -> Option<u32> {
        self.0.get(&pack(p)).copied()
    }
    fn insert(&mut self, p: &[u32], id: u32) {
        self.0.insert(pack(p), id);
    }
}

impl Index for Boxed {
    fn find(&self, p: &[u32]) -> Option<u32> {
        self.0.get(p).copied()
    }
    fn insert(&mut self, p: &[u32], id: u32) {
        self.0.insert(p.into(), id);
    }
}

fn new_index(degree: usize) -> Box<dyn Index> {
    if degree <= 16 {
        Box::new(Packed(HashMap::new()))
    } else {
        Box::new(Boxed(HashMap::new()))
    }
}

/// `a * b`: apply `a` first, then `b`.
fn compose(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.extend(a.iter().map(|&i| b[i as usize]));
}

impl PermGroup {
    /// Breadth-first closure of the group generated by `gens`.
    pub fn closure(gens: &[Vec<u32>], bound: usize) -> Result<PermGroup> {
        let degree = gens.first().map_or(0, Vec::len);
        if degree == 0 {
            return Err(Error::InvalidInput("permutation group of degree 0".into()));
        }
        let mut index = new_index(degree);
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut elements = identity.clone();
        index.insert(&identity, 0);
        let mut cayley: Vec<[u32; GENERATOR_COUNT]> = Vec::new();
        let mut buf = Vec::with_capacity(degree);
        let mut e = 0;
        while e * degree < elements.len() {
            let mut row = [0u32; GENERATOR_COUNT];
            for (g, gen) in gens.iter().enumerate() {
                compose(&elements[e * degree..(e + 1) * degree], gen, &mut buf);
                let id = match index.find(&buf) {
                    Some(id) => id,
                    None => {
                        let id = (elements.len() / degree) as u32;
                        if id as usize >= bound {
                            return Err(Error::ResourceLimit(format!(
                                "permutation group closure exceeded {bound} elements"
                            )));
                        }
                        index.insert(&buf, id);
                        elements.extend_from_slice(&buf);
                        id
                    }
                };
                row[g] = id;
            }
            cayley.push(row);
            e += 1;
        }
        Ok(PermGroup { degree, elements, cayley, gens: gens.to_vec() })
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.elements[i * self.degree..(i + 1) * self.degree]
    }

    pub fn right_multiply(&self, e: usize, g: usize) -> usize {
        self.cayley[e][g] as usize
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for g in &self.gens {
                let j = g[i] as usize;
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Order of the derived subgroup: the normal closure of the generator
    /// commutators.
    pub fn derived_order(&self, bound: usize) -> Result<usize> {
        let inv = |p: &[u32]| {
            let mut q = vec![0u32; p.len()];
            for (i, &j) in p.iter().enumerate() {
                q[j as usize] = i as u32;
            }
            q
        };
        let mul = |a: &[u32], b: &[u32]| a.iter().map(|&i| b[i as usize]).collect::<Vec<u32>>();
        let ginv: Vec<Vec<u32>> = self.gens.iter().map(|g| inv(g)).collect();
        let mut sub_gens: Vec<Vec<u32>> = Vec::new();
        for a in 0..self.gens.len() {
            for b in a + 1..self.gens.len() {
                let c = mul(&mul(&ginv[a], &ginv[b]), &mul(&self.gens[a], &self.gens[b]));
                sub_gens.push(c);
            }
        }
        let identity: Vec<u32> = (0..self.degree as u32).collect();
        sub_gens.retain(|c| *c != identity);
        loop {
            if sub_gens.is_empty() {
                return Ok(1);
            }
            let h = SubgroupClosure::new(&sub_gens, bound)?;
            let mut added = false;
            for s in sub_gens.clone() {
                for (g, gi) in self.gens.iter().zip(&ginv) {
                    let conj = mul(&mul(gi, &s), g);
                    if !h.contains(&conj) && !sub_gens.contains(&conj) {
                        sub_gens.push(conj);
                        added = true;
                    }
                }
            }
            if !added {
                return Ok(h.order());
            }
        }
    }

    pub fn summary(&self, bound: usize) -> Result<GroupSummary> {
        let order = self.order() as u64;
        let transitive = self.is_transitive();
        let perfect = self.derived_order(bound)? == self.order();
        Ok(GroupSummary {
            order,
            transitive,
            regular: transitive && order as usize == self.degree,
            perfect,
            catalog_name: catalog_name(order, perfect),
        })
    }

    /// Coset table of the trivial subgroup of the image: sheets are group
    /// elements, generators act by right multiplication.
    pub fn regular_table(&self) -> CosetTable {
        let n = self.order();
        let mut rows = vec![[0u32; LETTER_COUNT]; n];
        for e in 0..n {
            for g in 0..GENERATOR_COUNT {
                let f = self.cayley[e][g] as usize;
                rows[e][2 * g] = f as u32;
                rows[f][2 * g + 1] = e as u32;
            }
        }
        CosetTable::from_rows_unchecked(rows).standardize(0)
    }
}

/// Plain subgroup closure used for derived subgroups.
struct SubgroupClosure {
    index: HashMap<Vec<u32>, ()>,
}

impl SubgroupClosure {
    fn new<T: AsRef<[u32]> + Hash>(gens: &[T], bound: usize) -> Result<SubgroupClosure> {
        let degree = gens[0].as_ref().len();
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index = HashMap::new();
        let mut queue = vec![identity.clone()];
        index.insert(identity, ());
        let mut i = 0;
        while i < queue.len() {
            for g in gens {
                let p: Vec<u32> = queue[i].iter().map(|&j| g.as_ref()[j as usize]).collect();
                if !index.contains_key(&p) {
                    if index.len() >= bound {
                        return Err(Error::ResourceLimit(format!("subgroup closure exceeded {bound} elements")));
                    }
                    index.insert(p.clone(), ());
                    queue.push(p);
                }
            }
            i += 1;
        }
        Ok(SubgroupClosure { index })
    }

    fn contains(&self, p: &[u32]) -> bool {
        self.index.contains_key(p)
    }

    fn order(&self) -> usize {
        self.index.len()
    }
}

pub fn image_summary(a: &PermutationAction, bound: usize) -> Result<GroupSummary> {
    PermGroup::closure(a.perms(), bound)?.summary(bound)
}

/// Order of the monodromy image (no perfectness test).
pub fn image_order(a: &PermutationAction, bound: usize) -> Result<usize> {
    Ok(PermGroup::closure(a.perms(), bound)?.order())
}

/// Normal core of the subgroup: the kernel of its coset action, returned
/// with the regular action of the image as its coset table.
pub fn core(t: &CosetTable, bound: usize) -> Result<SubgroupRecord> {
    let a = super::action_from_table(t);
    let g = PermGroup::closure(a.perms(), bound)?;
    Ok(SubgroupRecord {
        table: g.regular_table(),
        generator_words: None,
        provenance: Provenance::CoreOf(format!("index-{} subgroup", t.index())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_from_two_generators() {
        // (1,2,3,4,5) and (1,2,3) generate A5
        let a = vec![1, 2, 3, 4, 0];
        let b = vec![1, 2, 0, 3, 4];
        let id: Vec<u32> = (0..5).collect();
        let gens = vec![a, b, id.clone(), id.clone(), id.clone(), id];
        let g = PermGroup::closure(&gens, 1000).unwrap();
        let s = g.summary(1000).unwrap();
        assert_eq!(s.order, 60);
        assert!(s.perfect && s.transitive && !s.regular);
        assert_eq!(s.catalog_name.as_deref(), Some("A5"));
    }

    #[test]
    fn s3_is_not_perfect() {
        let a = vec![1, 0, 2];
        let b = vec![1, 2, 0];
        let id: Vec<u32> = (0..3).collect();
        let g = PermGroup::closure(&[a, b, id.clone(), id.clone(), id.clone(), id], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.derived_order(100).unwrap(), 3);
    }

    #[test]
    fn bound_is_enforced() {
        let a = vec![1, 2, 3, 4, 0];
        let b = vec![1, 0, 2, 3, 4];
        let id: Vec<u32> = (0..5).collect();
        let r = PermGroup::closure(&[a, b, id.clone(), id.clone(), id.clone(), id], 100);
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }
}
