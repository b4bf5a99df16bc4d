//! Integral homology of specialized complexes via Smith normal form.

use crate::complex::ChainComplex;
use crate::ring::{LaurentPoly, Var};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        for r in &data {
            assert_eq!(r.len(), cols);
        }
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::new(
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }
}

/// Smith normal form: positive divisors `d_1 | d_2 | ... | d_k` and the rank.
///
/// Pivoting picks the entry of minimal absolute value, breaking ties by the
/// number of nonzero entries in its row and column, which keeps fill-in and
/// coefficient growth low on the sparse differentials that arise here.
/// Machine integers with checked arithmetic handle the common case; any
/// overflow reruns the computation with arbitrary precision.
pub fn smith_normal_form(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    if let Some(small) = try_small(m) {
        if let Some((divs, rank)) = snf_i64(small) {
            return (divs.into_iter().map(BigInt::from).collect(), rank);
        }
    }
    smith_normal_form_big(m)
}

fn try_small(m: &IntMatrix) -> Option<Vec<Vec<i64>>> {
    let mut out = Vec::with_capacity(m.rows);
    for row in &m.data {
        let mut r = Vec::with_capacity(m.cols);
        for v in row {
            r.push(i64::try_from(v).ok()?);
        }
        out.push(r);
    }
    Some(out)
}

fn snf_i64(mut a: Vec<Vec<i64>>) -> Option<(Vec<i64>, usize)> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut k = 0usize;
    while k < rows.min(cols) {
        let mut min_mag: Option<i64> = None;
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, &v) in row.iter().enumerate().skip(k) {
                if v == 0 {
                    continue;
                }
                let mag = v.checked_abs()?;
                match min_mag {
                    Some(m) if mag > m => {}
                    Some(m) if mag == m => candidates.push((i, j)),
                    _ => {
                        min_mag = Some(mag);
                        candidates.clear();
                        candidates.push((i, j));
                    }
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let (pi, pj) = candidates
            .into_iter()
            .min_by_key(|&(i, j)| {
                (k..rows).filter(|&r| a[r][j] != 0).count()
                    + (k..cols).filter(|&c| a[i][c] != 0).count()
            })
            .unwrap();
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k] == 0 {
                    continue;
                }
                let q = a[i][k] / a[k][k];
                if q != 0 {
                    for j in k..cols {
                        a[i][j] = a[i][j].checked_sub(q.checked_mul(a[k][j])?)?;
                    }
                }
                if a[i][k] != 0 {
                    a.swap(k, i);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            for j in k + 1..cols {
                if a[k][j] == 0 {
                    continue;
                }
                let q = a[k][j] / a[k][k];
                if q != 0 {
                    for i in k..rows {
                        a[i][j] = a[i][j].checked_sub(q.checked_mul(a[i][k])?)?;
                    }
                }
                if a[k][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if a[i][j] % a[k][k] == 0 {
                        continue;
                    }
                    for jj in k..cols {
                        a[k][jj] = a[k][jj].checked_add(a[i][jj])?;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
            if fixed {
                break;
            }
        }
        k += 1;
    }
    let mut divisors: Vec<i64> = (0..k).map(|i| a[i][i].abs()).collect();
    divisors.retain(|&d| d != 0);
    let rank = divisors.len();
    Some((divisors, rank))
}

fn smith_normal_form_big(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let mut a = m.data.clone();
    let rows = m.rows;
    let cols = m.cols;
    let mut k = 0usize;
    while k < rows.min(cols) {
        // Pivot search in the trailing submatrix: first the minimal absolute
        // value, then the least fill-in among entries achieving it.
        let mut min_mag: Option<BigInt> = None;
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, v) in row.iter().enumerate().skip(k) {
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                match &min_mag {
                    Some(m) if mag > *m => {}
                    Some(m) if mag == *m => candidates.push((i, j)),
                    _ => {
                        min_mag = Some(mag);
                        candidates.clear();
                        candidates.push((i, j));
                    }
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let pivot = candidates
            .into_iter()
            .min_by_key(|&(i, j)| {
                (k..rows).filter(|&r| !a[r][j].is_zero()).count()
                    + (k..cols).filter(|&c| !a[i][c].is_zero()).count()
            })
            .unwrap();
        let (pi, pj) = pivot;
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            // Clear the pivot column.
            let mut clean = true;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = &a[i][k] / &a[k][k];
                if !q.is_zero() {
                    for j in k..cols {
                        let sub = &q * &a[k][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][k].is_zero() {
                    a.swap(k, i);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Clear the pivot row.
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = &a[k][j] / &a[k][k];
                if !q.is_zero() {
                    for i in k..rows {
                        let sub = &q * &a[i][k];
                        a[i][j] -= sub;
                    }
                }
                if !a[k][j].is_zero() {
                    // Column swap brings the smaller remainder to the pivot.
                    for row in a.iter_mut() {
                        row.swap(k, j);
                    }
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: the pivot must divide the rest.
            let mut fixed = true;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if (&a[i][j] % &a[k][k]).is_zero() {
                        continue;
                    }
                    for jj in k..cols {
                        let add = a[i][jj].clone();
                        a[k][jj] += add;
                    }
                    fixed = false;
                    break 'scan;
                }
            }
            if fixed {
                break;
            }
        }
        k += 1;
    }
    let mut divisors: Vec<BigInt> = (0..k).map(|i| a[i][i].abs()).collect();
    divisors.retain(|d| !d.is_zero());
    let rank = divisors.len();
    (divisors, rank)
}

/// Homology groups per bigrading: free rank and torsion divisors in
/// divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyTable {
    pub groups: BTreeMap<(i64, i64), (usize, Vec<BigInt>)>,
}

impl HomologyTable {
    pub fn betti(&self, r: i64, q: i64) -> usize {
        self.groups.get(&(r, q)).map_or(0, |(b, _)| *b)
    }

    pub fn torsion(&self, r: i64, q: i64) -> &[BigInt] {
        self.groups.get(&(r, q)).map_or(&[], |(_, t)| t.as_slice())
    }

    pub fn total_rank(&self) -> usize {
        self.groups.values().map(|(b, _)| b).sum()
    }

    /// `Σ (-1)^r betti(r, q) q^q`.
    pub fn graded_euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero(Var::Q);
        for (&(r, q), (b, _)) in &self.groups {
            let sign = if r.rem_euclid(2) == 0 { 1i64 } else { -1 };
            p.add_term(q, BigInt::from(sign * *b as i64));
        }
        p
    }

    /// Lines `r q betti torsion...`, sorted by `(r, q)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (&(r, q), (b, tors)) in &self.groups {
            out.push_str(&format!("{} {} {}", r, q, b));
            for t in tors {
                out.push_str(&format!(" {}", t));
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .groups
            .iter()
            .map(|(&(r, q), (b, tors))| {
                json!({
                    "r": r,
                    "q": q,
                    "betti": b,
                    "torsion": tors.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!(rows)
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Compute the bigraded integral homology of an integer-specialized complex.
pub fn homology_table(complex: &ChainComplex) -> HomologyTable {
    use rayon::prelude::*;
    // Ranks and torsion per differential, computed blockwise in parallel.
    let dims = complex.block_dims();
    let keys: Vec<(i64, i64)> = dims.keys().copied().collect();
    let computed: Vec<((i64, i64), Vec<BigInt>, usize)> = keys
        .par_iter()
        .filter_map(|&(r, q)| {
            let d = complex.differential(r, q)?;
            if d.rows == 0 || d.cols == 0 {
                return None;
            }
            let m = IntMatrix::new(d.to_int_entries());
            let (divisors, rk) = smith_normal_form(&m);
            Some(((r, q), divisors, rk))
        })
        .collect();
    let mut rank: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut torsion: BTreeMap<(i64, i64), Vec<BigInt>> = BTreeMap::new();
    for ((r, q), divisors, rk) in computed {
        rank.insert((r, q), rk);
        let tors: Vec<BigInt> =
            divisors.into_iter().filter(|d| d.abs() > BigInt::from(1)).collect();
        if !tors.is_empty() {
            torsion.insert((r, q), tors);
        }
    }
    let mut groups: BTreeMap<(i64, i64), (usize, Vec<BigInt>)> = BTreeMap::new();
    let mut keys: Vec<(i64, i64)> = dims.keys().copied().collect();
    for &(r, q) in rank.keys() {
        keys.push((r + 1, q));
    }
    keys.sort_unstable();
    keys.dedup();
    for (r, q) in keys {
        let dim = dims.get(&(r, q)).copied().unwrap_or(0);
        let out_rank = rank.get(&(r, q)).copied().unwrap_or(0);
        let in_rank = rank.get(&(r - 1, q)).copied().unwrap_or(0);
        assert!(dim >= out_rank + in_rank, "d^2 = 0 violated");
        let betti = dim - out_rank - in_rank;
        let tors = torsion.get(&(r - 1, q)).cloned().unwrap_or_default();
        if betti > 0 || !tors.is_empty() {
            groups.insert((r, q), (betti, tors));
        }
    }
    HomologyTable { groups }
}

/// How to align two tables for comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableTransform {
    Identity,
    /// Free ranks dualize as `(r, q) -> (-r, -q)`; torsion shifts one
    /// homological degree: `tors_a(r, q) = tors_b(1 - r, -q)`.
    MirrorDual,
    Shift(i64, i64),
}

pub fn compare_tables(a: &HomologyTable, b: &HomologyTable, transform: TableTransform) -> bool {
    match transform {
        TableTransform::Identity => a == b,
        TableTransform::Shift(r0, q0) => {
            let keys: Vec<(i64, i64)> = a
                .groups
                .keys()
                .copied()
                .chain(b.groups.keys().map(|&(r, q)| (r - r0, q - q0)))
                .collect();
            keys.iter().all(|&(r, q)| {
                a.betti(r, q) == b.betti(r + r0, q + q0)
                    && a.torsion(r, q) == b.torsion(r + r0, q + q0)
            })
        }
        TableTransform::MirrorDual => {
            let keys: Vec<(i64, i64)> = a
                .groups
                .keys()
                .copied()
                .chain(b.groups.keys().map(|&(r, q)| (-r, -q)))
                .chain(b.groups.keys().map(|&(r, q)| (1 - r, -q)))
                .collect();
            keys.iter().all(|&(r, q)| {
                a.betti(r, q) == b.betti(-r, -q) && a.torsion(r, q) == b.torsion(1 - r, -q)
            })
        }
    }
}
