/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = self.parent[x] as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        true
    }

    /// Class index of every element, numbered by first occurrence.
    pub fn classes(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut id = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = count;
                count += 1;
            }
            out[x] = id[r];
        }
        (out, count)
    }
}

/// Union-find carrying a parity bit relative to the root; used for
/// consistent orientation propagation.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<u32>,
    parity: Vec<u8>,
    conflict: Vec<bool>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> ParityUnionFind {
        ParityUnionFind { parent: (0..n as u32).collect(), parity: vec![0; n], conflict: vec![false; n] }
    }

    /// Root and parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] as usize != r {
            path.push(r);
            r = self.parent[r] as usize;
        }
        // compress from the top so each parity is relative to the root
        for &node in path.iter().rev() {
            let p = self.parent[node] as usize;
            if p != r {
                self.parity[node] ^= self.parity[p];
            }
            self.parent[node] = r as u32;
        }
        (r, self.parity[x])
    }

    /// Records `side(a) xor side(b) = rel`; a contradiction marks the class.
    pub fn relate(&mut self, a: usize, b: usize, rel: u8) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != rel {
                self.conflict[ra] = true;
            }
            return;
        }
        self.parent[rb] = ra as u32;
        self.parity[rb] = pa ^ pb ^ rel;
        if self.conflict[rb] {
            self.conflict[ra] = true;
        }
    }

    pub fn has_conflict(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.conflict[r]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_detects_odd_cycle() {
        let mut p = ParityUnionFind::new(3);
        p.relate(0, 1, 1);
        p.relate(1, 2, 1);
        assert!(!p.has_conflict(0));
        assert_eq!(p.find(2).1 ^ p.find(0).1, 0);
        p.relate(2, 0, 1);
        assert!(p.has_conflict(1));
    }

    #[test]
    fn classes_number_by_first_occurrence() {
        let mut u = UnionFind::new(4);
        u.union(3, 1);
        let (ids, n) = u.classes();
        assert_eq!(n, 3);
        assert_eq!(ids, vec![0, 1, 2, 1]);
    }
}
