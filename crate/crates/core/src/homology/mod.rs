//! First homology of covers: Reidemeister–Schreier relation matrices,
//! exact Smith normal form, abelian invariants and mod-2 cocycles.

mod abelian;
mod smith;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cosets::{spanning_tree, CosetTable};
use crate::fpgroup::{Presentation, GENERATOR_COUNT};

pub use abelian::{AbelianGroup, PrimePower};
pub use smith::smith_normal_form;

/// Sparse integer matrix with arbitrary-precision entries; each row keeps
/// its nonzero entries sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, BigInt)>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntegerMatrix {
        IntegerMatrix { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntegerMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                if v != 0 {
                    m.entries[i].push((j, BigInt::from(v)));
                }
            }
        }
        m
    }

    pub fn with_cols(cols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(rows.len());
        for mut r in rows {
            r.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(r.len());
            for (c, v) in r {
                assert!(c < cols, "column out of range");
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            entries.push(merged);
        }
        IntegerMatrix { rows: entries.len(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.entries[i]
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries[i]
            .binary_search_by_key(&j, |e| e.0)
            .map_or_else(|_| BigInt::zero(), |k| self.entries[i][k].1.clone())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, r) in self.entries.iter().enumerate() {
            for (j, v) in r {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    /// Same matrix with rows and columns permuted: row `i` moves to
    /// `row_perm[i]`, column `j` to `col_perm[j]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntegerMatrix {
        let mut rows = vec![Vec::new(); self.rows];
        for (i, r) in self.entries.iter().enumerate() {
            rows[row_perm[i]] = r.iter().map(|(j, v)| (col_perm[*j], v.clone())).collect();
        }
        IntegerMatrix::with_cols(self.cols, rows)
    }

    /// Rank over the prime field GF(p).
    pub fn rank_mod(&self, p: u64) -> usize {
        let reduce = |v: &BigInt| {
            let r = (v % BigInt::from(p)).to_i64().unwrap();
            r.rem_euclid(p as i64) as u64
        };
        let mut dense: Vec<Vec<u64>> = vec![vec![0; self.cols]; self.rows];
        for (i, r) in self.entries.iter().enumerate() {
            for (j, v) in r {
                dense[i][*j] = reduce(v);
            }
        }
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| dense[i][col] != 0) else {
                continue;
            };
            dense.swap(rank, piv);
            let inv = mod_pow(dense[rank][col], p - 2, p);
            for j in col..self.cols {
                dense[rank][j] = dense[rank][j] * inv % p;
            }
            for i in 0..self.rows {
                if i != rank && dense[i][col] != 0 {
                    let f = dense[i][col];
                    for j in col..self.cols {
                        dense[i][j] = (dense[i][j] + p - f * dense[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Column index of each Schreier generator: `columns[c][g]` is `Some` for
/// every edge c --g--> c·g outside the breadth-first spanning tree.
pub fn schreier_columns(t: &CosetTable) -> (Vec<[Option<usize>; GENERATOR_COUNT]>, usize) {
    let tree = spanning_tree(t);
    let mut cols = vec![[None; GENERATOR_COUNT]; t.index()];
    let mut n = 0;
    for c in 0..t.index() {
        for g in 0..GENERATOR_COUNT {
            if !tree[c][g] {
                cols[c][g] = Some(n);
                n += 1;
            }
        }
    }
    (cols, n)
}

/// Exponent-sum matrix of the rewritten relators: one row per (coset,
/// relator), one column per Schreier generator.
pub fn abelian_relation_matrix(p: &Presentation, t: &CosetTable) -> IntegerMatrix {
    let (cols, n) = schreier_columns(t);
    let mut rows = Vec::with_capacity(t.index() * p.relators.len());
    for c in 0..t.index() {
        for r in &p.relators {
            let mut row: Vec<(usize, BigInt)> = Vec::new();
            let mut cur = c;
            for &l in r.letters() {
                let g = l.generator().index();
                if l.is_inverse() {
                    let prev = t.get(cur, l);
                    if let Some(j) = cols[prev][g] {
                        row.push((j, BigInt::from(-1)));
                    }
                    cur = prev;
                } else {
                    if let Some(j) = cols[cur][g] {
                        row.push((j, BigInt::from(1)));
                    }
                    cur = t.get(cur, l);
                }
            }
            rows.push(row);
        }
    }
    IntegerMatrix::with_cols(n, rows)
}

pub fn abelian_invariants(m: &IntegerMatrix) -> AbelianGroup {
    let d = smith_normal_form(m);
    AbelianGroup::from_divisors(m.cols() - d.len(), &d).expect("divisors factor into small primes")
}

/// First homology of the cover given by the coset table.
pub fn cover_homology(p: &Presentation, t: &CosetTable) -> AbelianGroup {
    abelian_invariants(&abelian_relation_matrix(p, t))
}

/// Homomorphism to Z/2 from the free group on the Schreier generators,
/// one bit per generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryCocycle {
    pub bits: Vec<bool>,
}

impl BinaryCocycle {
    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn add(&self, other: &BinaryCocycle) -> BinaryCocycle {
        BinaryCocycle { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() }
    }

    pub fn annihilates(&self, m: &IntegerMatrix) -> bool {
        (0..m.rows()).all(|i| {
            let s: BigInt = m.row(i).iter().filter(|(j, _)| self.bits[*j]).map(|(_, v)| v.clone()).sum();
            (s % 2u32).is_zero()
        })
    }
}

/// Basis of the GF(2) null space of `m`: the homomorphisms to Z/2 killing
/// every relation.
pub fn mod2_kernel_basis(m: &IntegerMatrix) -> Vec<BinaryCocycle> {
    let words = m.cols().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for i in 0..m.rows() {
        let mut r = vec![0u64; words];
        for (j, v) in m.row(i) {
            if v.is_odd_value() {
                r[j / 64] ^= 1 << (j % 64);
            }
        }
        if r.iter().any(|&w| w != 0) {
            rows.push(r);
        }
    }
    let get = |r: &[u64], j: usize| r[j / 64] >> (j % 64) & 1 == 1;
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| get(&rows[i], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && get(r, col) {
                for (a, b) in r.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; m.cols()];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut bits = vec![false; m.cols()];
            bits[f] = true;
            for (k, &p) in pivots.iter().enumerate() {
                if get(&rows[k], f) {
                    bits[p] = true;
                }
            }
            BinaryCocycle { bits }
        })
        .collect()
}

trait OddValue {
    fn is_odd_value(&self) -> bool;
}

impl OddValue for BigInt {
    fn is_odd_value(&self) -> bool {
        !(self.abs() % 2u32).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::PermutationAction;
    use crate::fpgroup::{builtin_presentation, Space};

    #[test]
    fn index_one_matrix_is_the_exponent_matrix() {
        let p = builtin_presentation(Space::Ws);
        let t = PermutationAction::identity(1).to_table(0).unwrap();
        let m = abelian_relation_matrix(&p, &t);
        assert_eq!((m.rows(), m.cols()), (6, 6));
        for (i, r) in p.relators.iter().enumerate() {
            let sums = r.exponent_sums();
            for (j, &s) in sums.iter().enumerate() {
                assert_eq!(m.get(i, j), BigInt::from(s));
            }
        }
        let d: Vec<i64> = smith_normal_form(&m).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 1, 1, 5, 5, 5]);
        assert_eq!(abelian_invariants(&m).to_string(), "Z5^3");
        assert!(mod2_kernel_basis(&m).is_empty());
    }

    #[test]
    fn rp3_abelianizes_to_z2() {
        let p = builtin_presentation(Space::Rp3);
        let t = PermutationAction::identity(1).to_table(0).unwrap();
        let m = abelian_relation_matrix(&p, &t);
        assert_eq!(abelian_invariants(&m).to_string(), "Z2");
        assert_eq!(mod2_kernel_basis(&m).len(), 1);
    }

    #[test]
    fn zero_rows_give_a_free_group() {
        let m = IntegerMatrix::zeros(0, 4);
        assert_eq!(abelian_invariants(&m).to_string(), "Z^4");
        assert_eq!(mod2_kernel_basis(&m).len(), 4);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = IntegerMatrix::from_dense(&[vec![2, 1, 1], vec![0, 3, 1]]);
        let basis = mod2_kernel_basis(&m);
        assert_eq!(basis.len(), 2);
        assert!(basis.iter().all(|c| c.annihilates(&m) && !c.is_zero()));
    }

    #[test]
    fn rank_mod_p() {
        let m = IntegerMatrix::from_dense(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(m.rank_mod(101), 1);
        let m = IntegerMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(m.rank_mod(2), 1);
        assert_eq!(m.rank_mod(5), 2);
    }
}
