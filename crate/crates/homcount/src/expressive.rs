//! Expressive graphs over the fixed connected enumeration: embedding
//! matrices, the inductive expressiveness decision, dependency and
//! column-combination coefficients, and the search for the next expressive
//! index. Coefficient vectors re-verify their defining identities on every
//! call.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::count::{aut, count, CountKind};
use crate::enumerate::CONNECTED_CAP;
use crate::error::{HomError, Result};
use crate::graph::Graph;
use crate::linalg::RationalMatrix;

/// Tag identifying the enumeration tie-break this ledger was computed under.
/// A cache file with a different tag is rejected.
pub const TIE_RULE_VERSION: &str = "order-v1-edges-then-canonical-bits";

/// Default budget: connected graphs through 6 vertices.
pub const DEFAULT_BUDGET: usize = 143;

/// Embedding matrix over enumeration indices: entry `(i, j)` is
/// `emb(F_{rows[i]}, F_{cols[j]})`.
pub fn emb_matrix(row_indices: &[usize], col_indices: &[usize]) -> Result<RationalMatrix> {
    let max = row_indices
        .iter()
        .chain(col_indices)
        .copied()
        .max()
        .unwrap_or(1);
    let graphs = connected_prefix_for(max)?;
    let rows: Vec<&Graph> = row_indices.iter().map(|&i| &graphs[i - 1]).collect();
    let cols: Vec<&Graph> = col_indices.iter().map(|&j| &graphs[j - 1]).collect();
    let values: Vec<Vec<num_bigint::BigUint>> = rows
        .iter()
        .map(|f| cols.iter().map(|g| count(CountKind::Emb, f, g)).collect())
        .collect();
    Ok(RationalMatrix::from_biguint_rows(&values))
}

fn connected_prefix_for(max_index: usize) -> Result<Vec<Graph>> {
    crate::enumerate::enumerate_connected_prefix(max_index)
}

/// Incrementally computed expressiveness flags, one per enumeration index.
#[derive(Debug, Clone)]
pub struct ExpressiveLedger {
    budget: usize,
    graphs: Vec<Graph>,
    flags: Vec<Option<bool>>,
}

impl ExpressiveLedger {
    /// A ledger over indices `1..=budget` of the connected enumeration.
    pub fn with_budget(budget: usize) -> Result<Self> {
        if budget == 0 {
            return Err(HomError::Invalid("ledger budget must be >= 1".into()));
        }
        let graphs = crate::enumerate::enumerate_connected_prefix(budget).map_err(|_| {
            HomError::EnumBudget(format!(
                "ledger budget {budget} exceeds the {CONNECTED_CAP}-vertex connected enumeration"
            ))
        })?;
        Ok(ExpressiveLedger {
            budget,
            graphs,
            flags: vec![None; budget + 1],
        })
    }

    pub fn with_default_budget() -> Result<Self> {
        Self::with_budget(DEFAULT_BUDGET)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn graph(&self, s: usize) -> Result<&Graph> {
        self.check_index(s)?;
        Ok(&self.graphs[s - 1])
    }

    fn check_index(&self, s: usize) -> Result<()> {
        if s == 0 {
            return Err(HomError::Invalid("enumeration indices are 1-based".into()));
        }
        if s > self.budget {
            return Err(HomError::Budget(format!(
                "index {s} beyond ledger budget {}",
                self.budget
            )));
        }
        Ok(())
    }

    /// Expressiveness per the inductive definition; fills every flag below.
    pub fn is_expressive(&mut self, s: usize) -> Result<bool> {
        self.check_index(s)?;
        for i in 1..=s {
            if self.flags[i].is_some() {
                continue;
            }
            let flag = if i == 1 {
                true
            } else {
                let below = self.expressive_below(i);
                let mut rows = vec![1usize];
                rows.extend(&below);
                let mut cols = below.clone();
                cols.push(i);
                let m = emb_matrix(&rows, &cols)?;
                m.rank() == rows.len()
            };
            self.flags[i] = Some(flag);
        }
        Ok(self.flags[s].unwrap())
    }

    fn expressive_below(&self, s: usize) -> Vec<usize> {
        (2..s)
            .filter(|&i| self.flags[i] == Some(true))
            .collect()
    }

    /// The index set `{ i | 2 <= i <= s-1, F_i expressive }`.
    pub fn index_set_below(&mut self, s: usize) -> Result<Vec<usize>> {
        self.check_index(s)?;
        if s >= 2 {
            self.is_expressive(s - 1)?;
        }
        Ok(self.expressive_below(s))
    }

    /// For non-expressive `F_s`: integers `(p_j)` over `I_{s-1} + {s}` with
    /// `p_s != 0` annihilating every row in `{1} + I_{s-1}`. Verified against
    /// freshly computed embedding values before returning.
    pub fn dependency_coefficients(&mut self, s: usize) -> Result<Vec<(usize, BigInt)>> {
        if self.is_expressive(s)? {
            return Err(HomError::Invalid(format!(
                "index {s} is expressive; dependency coefficients need a non-expressive index"
            )));
        }
        let below = self.index_set_below(s)?;
        let mut rows = vec![1usize];
        rows.extend(&below);
        let mut cols = below.clone();
        cols.push(s);
        let m = emb_matrix(&rows, &cols)?;
        let pivot = cols.len() - 1;
        let p = m.integer_nullspace_with_pivot(pivot)?;
        if p[pivot].is_zero() {
            return Err(HomError::NoSuchVector("pivot coefficient vanished".into()));
        }
        let check = m.mul_int_vec(&p);
        if check.iter().any(|x| !x.is_zero()) {
            return Err(HomError::Consistency(
                "dependency coefficients fail their defining identity".into(),
            ));
        }
        Ok(cols.into_iter().zip(p).collect())
    }

    /// For expressive `F_s`: integers `(p_j)` over `I_{s-1} + {s}` with
    /// `p_s != 0` annihilating rows in `I_{s-1}` only; the vertex-count row
    /// must then be nonzero, which is asserted rather than assumed.
    pub fn case1_coefficients(&mut self, s: usize) -> Result<Vec<(usize, BigInt)>> {
        if !self.is_expressive(s)? {
            return Err(HomError::Invalid(format!(
                "index {s} is not expressive; column coefficients need an expressive index"
            )));
        }
        let below = self.index_set_below(s)?;
        let mut cols = below.clone();
        cols.push(s);
        let pivot = cols.len() - 1;
        let p: Vec<BigInt> = if below.is_empty() {
            vec![BigInt::from(1)]
        } else {
            let m = emb_matrix(&below, &cols)?;
            let p = m.integer_nullspace_with_pivot(pivot)?;
            let check = m.mul_int_vec(&p);
            if check.iter().any(|x| !x.is_zero()) {
                return Err(HomError::Consistency(
                    "column coefficients fail their defining identity".into(),
                ));
            }
            p
        };
        if p[pivot].is_zero() {
            return Err(HomError::NoSuchVector("pivot coefficient vanished".into()));
        }
        // the K_1 row: sum over j of p_j |V(F_j)| must not vanish
        let mut k1_row = BigInt::zero();
        for (j, pj) in cols.iter().zip(&p) {
            let g = self.graph(*j)?.clone();
            k1_row += pj * BigInt::from(g.n());
        }
        if k1_row.is_zero() {
            return Err(HomError::Invariant(
                "vertex-count row vanished for an expressive index; the construction cannot pad sizes"
                    .into(),
            ));
        }
        Ok(cols.into_iter().zip(p).collect())
    }

    /// Least expressive index strictly greater than `s` within the budget.
    pub fn next_expressive_after(&mut self, s: usize) -> Result<usize> {
        for i in s + 1..=self.budget {
            if self.is_expressive(i)? {
                return Ok(i);
            }
        }
        Err(HomError::Budget(format!(
            "no expressive index in ({s}, {}]; raise the ledger budget",
            self.budget
        )))
    }

    /// Serializes computed flags with the tie-rule version tag.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut out = String::new();
        writeln!(out, "homcount-expressive-ledger {TIE_RULE_VERSION} budget={}", self.budget)
            .expect("string write");
        for (i, flag) in self.flags.iter().enumerate().skip(1) {
            if let Some(f) = flag {
                writeln!(out, "{i} {}", if *f { 1 } else { 0 }).expect("string write");
            }
        }
        std::fs::write(path, out).map_err(|e| HomError::Invalid(format!("ledger save: {e}")))
    }

    /// Loads cached flags; rejects caches from a different tie-rule version.
    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| HomError::Invalid(format!("ledger load: {e}")))?;
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        let mut parts = header.split_whitespace();
        if parts.next() != Some("homcount-expressive-ledger") {
            return Err(HomError::Invalid("not a ledger cache file".into()));
        }
        if parts.next() != Some(TIE_RULE_VERSION) {
            return Err(HomError::Invalid(
                "ledger cache was written under a different enumeration tie rule".into(),
            ));
        }
        let budget: usize = parts
            .next()
            .and_then(|s| s.strip_prefix("budget="))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| HomError::Invalid("missing budget in ledger header".into()))?;
        let mut ledger = Self::with_budget(budget)?;
        for line in lines {
            let mut it = line.split_whitespace();
            let (Some(idx), Some(val)) = (it.next(), it.next()) else {
                continue;
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| HomError::Invalid("bad ledger line".into()))?;
            if idx >= 1 && idx <= budget {
                ledger.flags[idx] = Some(val == "1");
            }
        }
        Ok(ledger)
    }
}

/// Diagonal positivity: `emb(F_i, F_i) = aut(F_i) > 0`.
pub fn diagonal_is_automorphism_count(s: usize) -> Result<bool> {
    let graphs = connected_prefix_for(s)?;
    let g = &graphs[s - 1];
    Ok(count(CountKind::Emb, g, g) == aut(g) && !aut(g).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn entry(m: &RationalMatrix, r: usize, c: usize) -> i64 {
        m.get(r, c).to_integer().to_i64().unwrap()
    }

    #[test]
    fn displayed_matrices() {
        let m = emb_matrix(&[1, 2], &[2, 3]).unwrap();
        assert_eq!(
            [[entry(&m, 0, 0), entry(&m, 0, 1)], [entry(&m, 1, 0), entry(&m, 1, 1)]],
            [[2, 3], [2, 4]]
        );
        let m = emb_matrix(&[1, 2, 3], &[2, 3, 4]).unwrap();
        let got: Vec<Vec<i64>> = (0..3)
            .map(|r| (0..3).map(|c| entry(&m, r, c)).collect())
            .collect();
        assert_eq!(got, vec![vec![2, 3, 3], vec![2, 4, 6], vec![0, 2, 6]]);
    }

    #[test]
    fn first_four_flags() {
        let mut ledger = ExpressiveLedger::with_budget(12).unwrap();
        assert!(ledger.is_expressive(1).unwrap());
        assert!(ledger.is_expressive(2).unwrap());
        assert!(ledger.is_expressive(3).unwrap());
        assert!(!ledger.is_expressive(4).unwrap());
    }

    #[test]
    fn dependency_for_triangle() {
        let mut ledger = ExpressiveLedger::with_budget(12).unwrap();
        let coeffs = ledger.dependency_coefficients(4).unwrap();
        let indices: Vec<usize> = coeffs.iter().map(|(j, _)| *j).collect();
        assert_eq!(indices, vec![2, 3, 4]);
        let values: Vec<i64> = coeffs.iter().map(|(_, p)| p.to_i64().unwrap()).collect();
        assert_eq!(values, vec![3, -3, 1]);
        assert!(ledger.dependency_coefficients(3).is_err());
    }

    #[test]
    fn case1_for_p3() {
        let mut ledger = ExpressiveLedger::with_budget(12).unwrap();
        let coeffs = ledger.case1_coefficients(3).unwrap();
        let values: Vec<i64> = coeffs.iter().map(|(_, p)| p.to_i64().unwrap()).collect();
        // 2 p_2 + 4 p_3 = 0, primitive, first positive
        assert_eq!(values, vec![2, -1]);
        // K_1 row: 2*2 - 1*3 = 1
        assert!(ledger.case1_coefficients(4).is_err());
        // s = 2: empty row set
        let coeffs = ledger.case1_coefficients(2).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[0].0, 2);
    }

    #[test]
    fn next_expressive_skips_triangle() {
        let mut ledger = ExpressiveLedger::with_budget(12).unwrap();
        assert_eq!(ledger.next_expressive_after(1).unwrap(), 2);
        let next = ledger.next_expressive_after(3).unwrap();
        assert!(next > 4, "triangle must be skipped, got {next}");
        assert!(ledger.is_expressive(next).unwrap());
    }

    #[test]
    fn ledger_cache_roundtrip() {
        let mut ledger = ExpressiveLedger::with_budget(10).unwrap();
        ledger.is_expressive(6).unwrap();
        let dir = std::env::temp_dir().join("homcount-ledger-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ledger.txt");
        ledger.save(&path).unwrap();
        let mut loaded = ExpressiveLedger::load(&path).unwrap();
        for i in 1..=6 {
            assert_eq!(
                loaded.is_expressive(i).unwrap(),
                ledger.is_expressive(i).unwrap()
            );
        }
        // recomputation from scratch reproduces loaded flags
        let mut fresh = ExpressiveLedger::with_budget(10).unwrap();
        for i in 1..=10 {
            assert_eq!(fresh.is_expressive(i).unwrap(), loaded.is_expressive(i).unwrap());
        }
    }

    #[test]
    fn diagonal_positive() {
        for s in 1..=10 {
            assert!(diagonal_is_automorphism_count(s).unwrap());
        }
    }

    #[test]
    fn expressive_square_matrix_is_upper_triangular() {
        let mut ledger = ExpressiveLedger::with_budget(12).unwrap();
        let below = ledger.index_set_below(10).unwrap();
        let m = emb_matrix(&below, &below).unwrap();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = m.get(r, c);
                if r == c {
                    assert!(*v > num_rational::BigRational::from_integer(0.into()));
                } else if r > c {
                    assert!(v.to_integer() == num_bigint::BigInt::from(0));
                }
            }
        }
    }
}
