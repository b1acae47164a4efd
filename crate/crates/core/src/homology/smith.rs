use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// Invariant factors d1 | d2 | ... | dr (all positive, r = rank).
///
/// Unit pivots are eliminated first on the sparse matrix (Markowitz-style
/// choice), then the remaining block is reduced densely with
/// minimal-absolute-value pivots.
pub fn smith_normal_form(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut s = Sparse::new(m);
    let mut units = s.eliminate_units();
    let dense = s.remaining_dense();
    let mut diag = dense_invariants(dense);
    units.append(&mut diag);
    divisor_chain(units)
}

struct Sparse {
    rows: Vec<Vec<(usize, BigInt)>>,
    alive: Vec<bool>,
    col_rows: Vec<HashSet<usize>>,
}

impl Sparse {
    fn new(m: &IntegerMatrix) -> Sparse {
        let rows: Vec<Vec<(usize, BigInt)>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut col_rows = vec![HashSet::new(); m.cols()];
        for (i, r) in rows.iter().enumerate() {
            for (j, _) in r {
                col_rows[*j].insert(i);
            }
        }
        let alive = rows.iter().map(|r| !r.is_empty()).collect();
        Sparse { rows, alive, col_rows }
    }

    fn find_unit_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in self.rows.iter().enumerate() {
            if !self.alive[i] {
                continue;
            }
            let rl = r.len() - 1;
            if let Some((_, _, cost)) = best {
                if rl == 0 && cost == 0 {
                    break;
                }
            }
            for (j, v) in r {
                if v.magnitude().is_one() {
                    let cost = rl * (self.col_rows[*j].len() - 1);
                    if best.is_none_or(|b| cost < b.2) {
                        best = Some((i, *j, cost));
                        if cost == 0 {
                            return Some((i, *j));
                        }
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn eliminate_units(&mut self) -> Vec<BigInt> {
        let mut out = Vec::new();
        while let Some((pr, pc)) = self.find_unit_pivot() {
            let pivot_row = std::mem::take(&mut self.rows[pr]);
            self.alive[pr] = false;
            for (j, _) in &pivot_row {
                self.col_rows[*j].remove(&pr);
            }
            let pv = &pivot_row.iter().find(|e| e.0 == pc).unwrap().1;
            let others: Vec<usize> = self.col_rows[pc].iter().copied().collect();
            for r in others {
                let a = self.rows[r].iter().find(|e| e.0 == pc).unwrap().1.clone();
                // row_r -= (a / pv) * pivot_row, exact since pv = ±1
                let f = &a * pv;
                let old = std::mem::take(&mut self.rows[r]);
                let merged = sub_scaled(&old, &pivot_row, &f);
                for (j, _) in &old {
                    self.col_rows[*j].remove(&r);
                }
                for (j, _) in &merged {
                    self.col_rows[*j].insert(r);
                }
                if merged.is_empty() {
                    self.alive[r] = false;
                }
                self.rows[r] = merged;
            }
            out.push(BigInt::one());
        }
        out
    }

    fn remaining_dense(&self) -> Vec<Vec<BigInt>> {
        let mut cols: Vec<usize> = (0..self.col_rows.len()).filter(|&j| !self.col_rows[j].is_empty()).collect();
        cols.sort_unstable();
        let mut pos = vec![usize::MAX; self.col_rows.len()];
        for (k, &j) in cols.iter().enumerate() {
            pos[j] = k;
        }
        self.rows
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(r, _)| {
                let mut d = vec![BigInt::zero(); cols.len()];
                for (j, v) in r {
                    d[pos[*j]] = v.clone();
                }
                d
            })
            .collect()
    }
}

/// `a - f * b` for sorted sparse rows.
fn sub_scaled(a: &[(usize, BigInt)], b: &[(usize, BigInt)], f: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Fraction-free elimination: the rank of `a` and the absolute value of a
/// nonzero minor of that size (1 for the zero matrix).
fn rank_and_minor(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let mut prev = BigInt::one();
    let mut rank = 0;
    let cols = a.first().map_or(0, Vec::len);
    for k in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][k].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            let f = row[k].clone();
            for j in k + 1..cols {
                let v = &row[j] * &pivot[k] - &f * &pivot[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = pivot[k].clone();
        rank += 1;
    }
    (rank, prev.abs())
}

/// Reduces into (-m/2, m/2].
fn reduce(x: &mut BigInt, m: &BigInt) {
    if x.bits() + 1 < m.bits() {
        return;
    }
    let mut r = x.mod_floor(m);
    if &r + &r > *m {
        r -= m;
    }
    *x = r;
}

/// Nonzero invariant factors of a dense matrix. All of them divide the
/// nonzero minor `d` of full rank, so the lattice may be enlarged by
/// `d Z^n` and the elimination carried out modulo `d`; this adds `n - rank`
/// factors equal to `d` at the top of the chain and keeps entries bounded.
fn dense_invariants(a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let (rank, d) = rank_and_minor(a.clone());
    if rank == 0 {
        return Vec::new();
    }
    if let Some(chain) = local_invariants(&a, rank, &d) {
        return chain;
    }
    let n = a[0].len();
    let mut diag: Vec<BigInt> = dense_diagonal(a, &d).into_iter().map(|x| x.gcd(&d)).collect();
    diag.resize(n, d.clone());
    let mut chain = divisor_chain(diag);
    chain.truncate(rank);
    chain
}

const TRIAL_BOUND: u64 = 1 << 16;

/// The same chain assembled one prime at a time, with word-sized
/// arithmetic modulo a power of each prime dividing `d`. None when `d` has
/// a prime factor beyond trial division or a valuation needs more precision.
fn local_invariants(a: &[Vec<BigInt>], rank: usize, d: &BigInt) -> Option<Vec<BigInt>> {
    let mut rest = d.magnitude().clone();
    let mut chain = vec![BigInt::one(); rank];
    let mut p = 2u64;
    while !rest.is_one() {
        if p > TRIAL_BOUND {
            return None;
        }
        let mut e = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            let vals = local_valuations(a, p, e, rank)?;
            // ascending valuations line up with the chain
            for (c, v) in chain.iter_mut().zip(vals) {
                *c *= BigInt::from(p).pow(v);
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Some(chain)
}

/// p-adic valuations of the `rank` invariant factors, ascending, given that
/// none exceeds `e`.
fn local_valuations(a: &[Vec<BigInt>], p: u64, e: u32, rank: usize) -> Option<Vec<u32>> {
    let mut k = 1u32;
    while k < e && p.checked_pow(k + 1).is_some_and(|q| q < 1 << 62) {
        k += 1;
    }
    let q = p.pow(k);
    let big_q = BigInt::from(q);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|x| u64::try_from(x.mod_floor(&big_q)).expect("residue fits")).collect())
        .collect();
    let val = |mut x: u64| {
        let mut v = 0;
        while x.is_multiple_of(p) {
            x /= p;
            v += 1;
        }
        v
    };
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;
    let mut found = Vec::new();
    loop {
        let mut best: Option<(usize, usize, u32)> = None;
        'scan: for (i, r) in m.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                if x != 0 {
                    let v = val(x);
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((i, j, v));
                        if v == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else {
            break;
        };
        found.push(v);
        let pivot = m.swap_remove(pi);
        let pv = p.pow(v);
        let inv = inverse_mod_u64(pivot[pj] / pv, q);
        for r in m.iter_mut() {
            if r[pj] == 0 {
                continue;
            }
            let f = mul(r[pj] / pv, inv);
            for (x, &y) in r.iter_mut().zip(&pivot) {
                if y != 0 {
                    *x = (*x + q - mul(f, y)) % q;
                }
            }
        }
        for r in m.iter_mut() {
            r.swap_remove(pj);
        }
        m.retain(|r| r.iter().any(|&x| x != 0));
    }
    // factors vanishing mod q have valuation at least k
    let missing = rank.checked_sub(found.len())?;
    if missing > 0 && k < e {
        return None;
    }
    found.extend(std::iter::repeat_n(k, missing));
    found.sort_unstable();
    Some(found)
}

fn inverse_mod_u64(x: u64, q: u64) -> u64 {
    let e = (x as i128).extended_gcd(&(q as i128));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(q as i128) as u64
}

/// Diagonalizes a dense matrix modulo `m` by unimodular row and column
/// operations and returns the diagonal entries nonzero mod `m` (not yet a
/// divisor chain).
fn dense_diagonal(mut a: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            reduce(x, m);
        }
    }
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    while let Some((pi, pj)) = min_entry(&a) {
        a.swap(0, pi);
        for row in a.iter_mut() {
            row.swap(0, pj);
        }
        loop {
            let mut dirty = false;
            let p = a[0][0].clone();
            for i in 1..a.len() {
                if a[i][0].is_zero() {
                    continue;
                }
                let q = a[i][0].div_floor(&p);
                let (head, tail) = a.split_at_mut(1);
                for (x, y) in tail[i - 1].iter_mut().zip(&head[0]) {
                    if !y.is_zero() {
                        *x -= &q * y;
                        reduce(x, m);
                    }
                }
                if !a[i][0].is_zero() {
                    dirty = true;
                }
            }
            for j in 1..a[0].len() {
                if a[0][j].is_zero() {
                    continue;
                }
                let q = a[0][j].div_floor(&p);
                for row in a.iter_mut() {
                    if !row[0].is_zero() {
                        let t = &q * &row[0];
                        row[j] -= t;
                        reduce(&mut row[j], m);
                    }
                }
                if !a[0][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest remaining entry of the pivot row/column to the corner
            let mut best = (0usize, 0usize);
            for i in 0..a.len() {
                if !a[i][0].is_zero() && a[i][0].magnitude() < a[best.0][best.1].magnitude() {
                    best = (i, 0);
                }
            }
            for j in 0..a[0].len() {
                if !a[0][j].is_zero() && a[0][j].magnitude() < a[best.0][best.1].magnitude() {
                    best = (0, j);
                }
            }
            a.swap(0, best.0);
            for row in a.iter_mut() {
                row.swap(0, best.1);
            }
        }
        out.push(a[0][0].abs());
        a.remove(0);
        for row in a.iter_mut() {
            row.remove(0);
        }
        a.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    out
}

fn min_entry(a: &[Vec<BigInt>]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, r) in a.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.magnitude() < a[bi][bj].magnitude()) {
                best = Some((i, j));
                if v.magnitude().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Turns a diagonal into the equivalent divisor chain by replacing pairs
/// with their gcd and lcm.
fn divisor_chain(mut d: Vec<BigInt>) -> Vec<BigInt> {
    let ones = d.iter().filter(|x| x.is_one()).count();
    d.retain(|x| !x.is_one());
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    let mut out = vec![BigInt::one(); ones];
    let (unit, rest): (Vec<BigInt>, Vec<BigInt>) = d.into_iter().partition(|x| x.is_one());
    out.extend(unit);
    out.extend(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntegerMatrix::from_dense(rows)).iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(snf(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert_eq!(snf(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(snf(&[vec![4, 6]]), vec![2]);
    }

    fn modular_chain(rows: &[Vec<i64>]) -> Vec<BigInt> {
        let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let (rank, d) = rank_and_minor(a.clone());
        let n = a[0].len();
        let mut diag: Vec<BigInt> = dense_diagonal(a, &d).into_iter().map(|x| x.gcd(&d)).collect();
        diag.resize(n, d.clone());
        let mut chain = divisor_chain(diag);
        chain.truncate(rank);
        chain
    }

    #[test]
    fn local_and_modular_paths_agree() {
        let mut s = 12345u64;
        for _ in 0..200 {
            let mut next = || {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (s >> 33) as i64
            };
            let (r, c) = (1 + next() as usize % 6, 1 + next() as usize % 6);
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| next() % 9 - 4).collect()).collect();
            let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            let (rank, d) = rank_and_minor(a.clone());
            if rank == 0 {
                continue;
            }
            let local = local_invariants(&a, rank, &d).expect("small primes");
            assert_eq!(local, modular_chain(&rows), "{rows:?}");
        }
    }

    #[test]
    fn fallbacks() {
        // prime factor beyond trial division
        let big = 65537i64 * 65539;
        assert_eq!(snf(&[vec![2 * big, 0], vec![0, 2]]), vec![2, 2 * big]);
        // valuation beyond word-sized precision
        let a = vec![vec![BigInt::from(2).pow(70)]];
        assert!(local_invariants(&a, 1, &BigInt::from(2).pow(70)).is_none());
        assert_eq!(
            smith_normal_form(&IntegerMatrix::with_cols(1, vec![vec![(0, BigInt::from(2).pow(70))]])),
            vec![BigInt::from(2).pow(70)]
        );
    }

    #[test]
    fn chain_from_diagonal() {
        let d = divisor_chain(vec![BigInt::from(4), BigInt::from(6), BigInt::from(1), BigInt::from(10)]);
        let d: Vec<i64> = d.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 2, 2, 60]);
    }
}
