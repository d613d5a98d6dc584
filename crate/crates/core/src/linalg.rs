//! Exact rank computations: sparse fraction-free elimination over `Z` and
//! Bareiss elimination over polynomial rings.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::polyring::{Int, Poly};

/// A sparse row, entries sorted by increasing column; the last entry leads.
pub type SparseRow = Vec<(u32, Int)>;

/// Echelon basis of a row space over `Q`, stored with integer rows whose
/// leading columns are pairwise distinct.
#[derive(Default)]
pub struct SparseEchelon {
    pivots: HashMap<u32, SparseRow>,
}

fn lead(r: &SparseRow) -> Option<(u32, &Int)> {
    r.last().map(|(c, v)| (*c, v))
}

/// `a * r - b * p`, dropping zeros.
fn combine(r: &SparseRow, a: &Int, p: &SparseRow, b: &Int) -> SparseRow {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = p.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        if ci < cj {
            out.push((ci, a * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &p[j].1)));
            j += 1;
        } else {
            let v = &(a * &r[i].1) - &(b * &p[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(r: &mut SparseRow) {
    let mut g = Int::zero();
    for (_, v) in r.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in r.iter_mut() {
            *v = v.div_exact(&g).expect("content divides");
        }
    }
    if let Some((_, v)) = r.last() {
        if v.is_negative() {
            for (_, v) in r.iter_mut() {
                *v = -v.clone();
            }
        }
    }
}

impl SparseEchelon {
    pub fn new() -> SparseEchelon {
        SparseEchelon::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Top-reduces `r` until it is zero or its leading column is not a pivot.
    pub fn reduce(&self, mut r: SparseRow) -> SparseRow {
        normalize(&mut r);
        while let Some((c, b)) = lead(&r) {
            let Some(p) = self.pivots.get(&c) else { break };
            let a = &p.last().expect("nonempty pivot").1;
            let g = a.gcd(b);
            let (a, b) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
            r = combine(&r, &a, p, &b);
            normalize(&mut r);
        }
        r
    }

    /// Adds `r` to the span; returns whether the rank grew.
    pub fn insert(&mut self, r: SparseRow) -> bool {
        let r = self.reduce(r);
        match lead(&r) {
            None => false,
            Some((c, _)) => {
                self.pivots.insert(c, r);
                true
            }
        }
    }

    pub fn contains(&self, r: SparseRow) -> bool {
        self.reduce(r).is_empty()
    }
}

/// Rank over `Q` of rows given as maps from arbitrary ordered column keys.
pub fn rank_of_rows<K: Ord + Clone>(rows: Vec<BTreeMap<K, Int>>) -> usize {
    let mut cols: BTreeMap<K, u32> = BTreeMap::new();
    for r in &rows {
        for k in r.keys() {
            let next = cols.len() as u32;
            cols.entry(k.clone()).or_insert(next);
        }
    }
    let mut ech = SparseEchelon::new();
    for r in rows {
        let mut row: SparseRow = r.into_iter().map(|(k, v)| (cols[&k], v)).filter(|e| !e.1.is_zero()).collect();
        row.sort_by_key(|e| e.0);
        ech.insert(row);
    }
    ech.rank()
}

/// Rank over the fraction field of `Z[vars]`, by Bareiss elimination with
/// exact polynomial division.
pub fn poly_matrix_rank(mut m: Vec<Vec<Poly>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = Poly::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pr);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let num = &(&m[rank][c] * &m[r][k]) - &(&m[r][c] * &m[rank][k]);
                m[r][k] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[r][c] = Poly::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(u32, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, Int::from(v))).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = SparseEchelon::new();
        assert!(e.insert(row(&[(0, 2), (2, 4)])));
        assert!(e.insert(row(&[(1, 3), (2, 6)])));
        assert!(!e.insert(row(&[(0, 1), (1, -1), (2, 0)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(row(&[(0, 3), (1, 3), (2, 12)])));
        assert!(!e.contains(row(&[(0, 1)])));
    }

    #[test]
    fn polynomial_rank() {
        let p = |s: &str| -> Poly { s.parse().unwrap() };
        let m = vec![vec![p("y1"), p("t")], vec![p("y1^2"), p("y1*t")]];
        assert_eq!(poly_matrix_rank(m), 1);
        let m = vec![
            vec![p("y1"), p("t"), p("1")],
            vec![p("y2"), p("y1*t"), p("0")],
            vec![p("1"), p("1"), p("y2")],
        ];
        assert_eq!(poly_matrix_rank(m), 3);
    }
}
