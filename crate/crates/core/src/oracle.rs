//! Brute-force ground truth over explicit permutation tables.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::fastforward::FastForwardForm;
use crate::ffring::{digits_of, MultCounter, PrimeModulus};
use crate::trigroup::{group_order, zeta_inv, TriangularPermutation};

pub const DEFAULT_TABLE_CAP: u128 = 1 << 20;
pub const DEFAULT_MATRIX_CAP: u128 = 4096;
pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

/// `table[zeta_inv(v)] = zeta_inv(σ(v))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationTable {
    pub p: u32,
    pub n: usize,
    pub table: Vec<u32>,
}

fn check_cap(what: &'static str, size: Option<u128>, cap: u128) -> Result<usize> {
    match size {
        Some(s) if s <= cap => Ok(s as usize),
        _ => Err(Error::ResourceLimit {
            what,
            size: size.unwrap_or(u128::MAX),
            cap,
        }),
    }
}

impl PermutationTable {
    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        PermutationTable {
            p: self.p,
            n: self.n,
            table: other
                .table
                .iter()
                .map(|j| self.table[*j as usize])
                .collect(),
        }
    }

    pub fn identity(p: u32, n: usize, len: usize) -> Self {
        PermutationTable {
            p,
            n,
            table: (0..len as u32).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, j)| i == *j as usize)
    }
}

pub fn to_table(sigma: &TriangularPermutation) -> Result<PermutationTable> {
    to_table_capped(sigma, DEFAULT_TABLE_CAP)
}

/// Evaluates `σ` point by point, independently of the value-table code.
pub fn to_table_capped(sigma: &TriangularPermutation, cap: u128) -> Result<PermutationTable> {
    let p = sigma.modulus();
    let n = sigma.n();
    let len = check_cap("permutation table", group_order(p, n), cap)?;
    let table = (0..len)
        .map(|i| {
            let w = sigma.apply(&digits_of(p, i, n)).expect("valid point");
            zeta_inv(p, &w).expect("digits below p") as u32
        })
        .collect();
    Ok(PermutationTable {
        p: p.get(),
        n,
        table,
    })
}

/// Table of `σ` given by a fast-forward form, via `m = 1`.
pub fn form_table(form: &FastForwardForm, cap: u128) -> Result<PermutationTable> {
    let p = form.modulus();
    let n = form.n();
    let len = check_cap("permutation table", form.order(), cap)?;
    let mut counter = MultCounter::new();
    let table = (0..len)
        .map(|i| {
            let w = form.eval_power(1, &digits_of(p, i, n), &mut counter)?;
            Ok(zeta_inv(p, &w)? as u32)
        })
        .collect::<Result<_>>()?;
    Ok(PermutationTable {
        p: p.get(),
        n,
        table,
    })
}

/// Cycle lengths, in ascending order.
pub fn cycle_type(t: &PermutationTable) -> Vec<usize> {
    let mut seen = vec![false; t.table.len()];
    let mut lengths = Vec::new();
    for start in 0..t.table.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = t.table[cur] as usize;
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

/// Rank of a dense matrix over `F_p` by Gaussian elimination.
fn rank_mod_p(p: PrimeModulus, mut rows: Vec<Vec<u32>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|r| rows[*r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = p.inv(rows[rank][col]).expect("nonzero pivot");
        let pivot_row: Vec<u32> = rows[rank].iter().map(|x| p.mul(*x, inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x = p.sub(*x, p.mul(f, *y));
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

pub fn star_kernel_dim(sigma: &TriangularPermutation) -> Result<usize> {
    star_kernel_dim_capped(sigma, DEFAULT_MATRIX_CAP)
}

/// `dim ker(f ↦ f∘σ - f)` on the reduced ring. Column `α` (mixed-radix
/// monomial order) holds the values of `x^α∘σ - x^α` at every point, which
/// represents the operator faithfully since a reduced polynomial is
/// determined by its values.
pub fn star_kernel_dim_capped(sigma: &TriangularPermutation, cap: u128) -> Result<usize> {
    let p = sigma.modulus();
    let n = sigma.n();
    let len = check_cap("operator matrix side", group_order(p, n), cap)?;
    let table = to_table_capped(sigma, cap)?;
    let mono = |alpha: &[u32], v: &[u32]| {
        alpha
            .iter()
            .zip(v)
            .fold(1u32, |acc, (e, x)| p.mul(acc, p.pow(*x, *e as u64)))
    };
    let alphas: Vec<Vec<u32>> = (0..len).map(|a| digits_of(p, a, n)).collect();
    let rows = (0..len)
        .map(|u| {
            let v = digits_of(p, u, n);
            let w = digits_of(p, table.table[u] as usize, n);
            alphas
                .iter()
                .map(|a| p.sub(mono(a, &w), mono(a, &v)))
                .collect()
        })
        .collect();
    Ok(len - rank_mod_p(p, rows))
}

/// Every element of the group on `F_p^n`.
pub fn enumerate(p: PrimeModulus, n: usize) -> Result<Vec<TriangularPermutation>> {
    TriangularPermutation::all(p, n)
}

/// Number of distinct permutations produced by [`enumerate`].
pub fn enumerate_count(p: PrimeModulus, n: usize) -> Result<u128> {
    let mut seen = HashSet::new();
    for sigma in enumerate(p, n)? {
        seen.insert(to_table(&sigma)?.table);
    }
    Ok(seen.len() as u128)
}

/// `p^((p^n - 1)/(p - 1))`, when representable.
pub fn group_size_formula(p: PrimeModulus, n: usize) -> Option<u128> {
    let q = p.get() as u128;
    let exp = (q.checked_pow(n as u32)? - 1) / (q - 1);
    q.checked_pow(u32::try_from(exp).ok()?)
}

fn cyclic_group(t: &PermutationTable) -> HashSet<Vec<u32>> {
    let mut out = HashSet::new();
    let mut cur = PermutationTable::identity(t.p, t.n, t.table.len());
    while out.insert(cur.table.clone()) {
        cur = t.compose(&cur);
    }
    out
}

/// `<σ> = <σ'>`, by listing both cyclic groups.
pub fn equivalence_check(a: &TriangularPermutation, b: &TriangularPermutation) -> Result<bool> {
    if a.modulus() != b.modulus() || a.n() != b.n() {
        return Ok(false);
    }
    let (ta, tb) = (to_table(a)?, to_table(b)?);
    Ok(cyclic_group(&ta).contains(&tb.table) && cyclic_group(&tb).contains(&ta.table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffring::ReducedPoly;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn tri(p: u64, comps: &[&[(&[u32], u32)]]) -> TriangularPermutation {
        let p = pm(p);
        let components = comps
            .iter()
            .enumerate()
            .map(|(i, ts)| {
                ReducedPoly::from_terms(p, i, ts.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
            })
            .collect();
        TriangularPermutation::new(p, components).unwrap()
    }

    #[test]
    fn tables() {
        let id = TriangularPermutation::identity(pm(3), 2).unwrap();
        assert!(to_table(&id).unwrap().is_identity());
        assert_eq!(to_table(&tri(2, &[&[(&[], 1)]])).unwrap().table, vec![1, 0]);
        let d = TriangularPermutation::delta_map(pm(2), 2).unwrap();
        assert_eq!(to_table(&d).unwrap().table, vec![1, 2, 3, 0]);
        assert!(matches!(
            to_table_capped(&d, 3),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn cycles_and_kernel() {
        let id = TriangularPermutation::identity(pm(2), 2).unwrap();
        assert_eq!(cycle_type(&to_table(&id).unwrap()), vec![1; 4]);
        assert_eq!(star_kernel_dim(&id).unwrap(), 4);
        let d = TriangularPermutation::delta_map(pm(2), 2).unwrap();
        assert_eq!(cycle_type(&to_table(&d).unwrap()), vec![4]);
        assert_eq!(star_kernel_dim(&d).unwrap(), 1);
        let s = tri(2, &[&[], &[(&[1], 1)]]);
        assert_eq!(cycle_type(&to_table(&s).unwrap()), vec![1, 1, 2]);
        assert_eq!(star_kernel_dim(&s).unwrap(), 3);
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_count(pm(2), 2).unwrap(), 8);
        assert_eq!(enumerate_count(pm(3), 1).unwrap(), 3);
        assert_eq!(enumerate_count(pm(2), 3).unwrap(), 128);
        assert_eq!(group_size_formula(pm(3), 2), Some(81));
        assert!(enumerate_count(pm(5), 3).is_err());
    }

    #[test]
    fn equivalence() {
        let a = tri(3, &[&[(&[], 1)]]);
        assert!(equivalence_check(&a, &a).unwrap());
        assert!(equivalence_check(&a, &tri(3, &[&[(&[], 2)]])).unwrap());
        let b = tri(2, &[&[(&[], 1)], &[]]);
        let c = tri(2, &[&[(&[], 1)], &[(&[1], 1)]]);
        assert!(!equivalence_check(&b, &c).unwrap());
    }
}
