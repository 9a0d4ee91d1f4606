//! Exact linear algebra over the integers and fields.

mod echelon;
mod snf;

pub use echelon::{intersect_spans, Echelon, Row};
pub use snf::snf;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{lv_of_group_order, LengthValue};
use crate::error::{Error, Result};
use crate::ring::{BaseRing, Coeffs, IntRing, LengthSpec, PrimeField};

/// Dense integer matrix, rows by columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(cols: usize, data: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some(r) = data.iter().find(|r| r.len() != cols) {
            return Err(Error::Shape(format!(
                "row of length {} in a matrix with {cols} columns",
                r.len()
            )));
        }
        Ok(IntMatrix { cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMatrix::new(cols, data).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.data.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.data.iter()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
    }

    fn sparse_rows(&self) -> impl Iterator<Item = Vec<(usize, BigInt)>> + '_ {
        self.data.iter().map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
    }
}

/// Structure of `L1 / L0` for nested lattices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeQuotientResult {
    pub free_rank_delta: usize,
    /// Torsion invariant factors, each at least 2, forming a divisibility chain.
    pub invariant_factors: Vec<BigInt>,
}

impl LatticeQuotientResult {
    /// Order of the torsion part.
    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }
}

/// `L1 / L0` where the lattices are the row spans of the arguments.
pub fn lattice_quotient(l1: &IntMatrix, l0: &IntMatrix) -> Result<LatticeQuotientResult> {
    if l1.cols() != l0.cols() {
        return Err(Error::Shape("lattices live in different ambient ranks".into()));
    }
    let mut basis = Echelon::new(IntRing, l1.cols());
    for row in l1.sparse_rows() {
        basis.insert(row);
    }
    let pivots: Vec<usize> = basis.rows().map(|r| r[0].0).collect();
    let r = pivots.len();
    // coordinates of each L0 row in the echelon basis of L1
    let mut coords = IntMatrix::zeros(0, r);
    for row in l0.sparse_rows() {
        let mut v: std::collections::BTreeMap<usize, BigInt> = row.into_iter().collect();
        let mut c = vec![BigInt::zero(); r];
        for (idx, &p) in pivots.iter().enumerate() {
            let Some(a) = v.get(&p).cloned() else {
                continue;
            };
            let b = basis.row(p).expect("pivot row");
            let piv = &b[0].1;
            if !(&a % piv).is_zero() {
                return Err(Error::NotContained);
            }
            let q = &a / piv;
            for (k, e) in b {
                let entry = v.entry(*k).or_insert_with(BigInt::zero);
                *entry -= &q * e;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            c[idx] = q;
        }
        if !v.is_empty() {
            return Err(Error::NotContained);
        }
        coords.push_row(c);
    }
    let (factors, rank0) = snf(&coords);
    Ok(LatticeQuotientResult {
        free_rank_delta: r - rank0,
        invariant_factors: factors.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

/// Length of the cokernel of `rel` (rows are relations on `rel.cols()` generators).
pub fn fp_module_length(rel: &IntMatrix, base: &BaseRing, spec: LengthSpec) -> Result<LengthValue> {
    base.check_length(spec)?;
    let g = rel.cols();
    match base {
        BaseRing::Rationals => {
            let (_, rank) = snf(rel);
            Ok(LengthValue::from_int((g - rank) as u64))
        }
        BaseRing::PrimeField(p) => {
            let f = PrimeField::new(*p);
            let mut e = Echelon::new(f, g);
            for row in rel.sparse_rows() {
                e.insert(row.into_iter().map(|(j, x)| {
                    (j, f.from_rational(&crate::arith::Rational::from_integer(x)).unwrap())
                }));
            }
            Ok(LengthValue::from_int((g - e.rank()) as u64))
        }
        BaseRing::Integers | BaseRing::IntegersModN(_) => {
            let mut m = rel.clone();
            if let BaseRing::IntegersModN(n) = base {
                let n = BigInt::from(n.clone());
                for i in 0..g {
                    let mut row = vec![BigInt::zero(); g];
                    row[i] = n.clone();
                    m.push_row(row);
                }
            }
            let (factors, rank) = snf(&m);
            match spec {
                LengthSpec::Rank => Ok(LengthValue::from_int((g - rank) as u64)),
                _ if rank < g => Ok(LengthValue::Infinite),
                _ => {
                    let order: BigUint = factors.iter().map(|d| d.abs().magnitude().clone()).product();
                    Ok(lv_of_group_order(&order))
                }
            }
        }
    }
}

/// Order of `Z^g / rowspan(rel)` when finite.
pub fn cokernel_order(rel: &IntMatrix) -> Option<BigInt> {
    let (factors, rank) = snf(rel);
    (rank == rel.cols()).then(|| factors.iter().product())
}

/// Order as a machine integer, for oracle comparisons.
pub fn cokernel_order_u64(rel: &IntMatrix) -> Option<u64> {
    cokernel_order(rel).and_then(|n| n.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quotient_examples() {
        let z2 = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        let l0 = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let q = lattice_quotient(&z2, &l0).unwrap();
        assert_eq!(q.free_rank_delta, 0);
        assert_eq!(q.invariant_factors, b(&[6]));
        assert_eq!(
            lattice_quotient(&z2, &z2).unwrap().invariant_factors,
            Vec::<BigInt>::new()
        );
        let zero = IntMatrix::zeros(0, 2);
        assert_eq!(lattice_quotient(&z2, &zero).unwrap().free_rank_delta, 2);
        assert_eq!(lattice_quotient(&l0, &z2), Err(Error::NotContained));
    }

    #[test]
    fn module_lengths() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(
            fp_module_length(&m, &BaseRing::Integers, LengthSpec::LogCard).unwrap(),
            lv_of_group_order(&BigUint::from(6u32))
        );
        let z = IntMatrix::from_i64(&[&[0]]);
        assert!(fp_module_length(&z, &BaseRing::Integers, LengthSpec::LogCard)
            .unwrap()
            .is_infinite());
        let q = IntMatrix::from_i64(&[&[1, 1]]);
        assert_eq!(
            fp_module_length(&q, &BaseRing::Rationals, LengthSpec::Dimension).unwrap(),
            LengthValue::from_int(1)
        );
        assert!(fp_module_length(&q, &BaseRing::PrimeField(3), LengthSpec::Rank).is_err());
        let free = IntMatrix::zeros(0, 1);
        assert_eq!(
            fp_module_length(&free, &BaseRing::zmod(12), LengthSpec::LogCard).unwrap(),
            lv_of_group_order(&BigUint::from(12u32))
        );
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
        })
    }

    proptest! {
        #[test]
        fn nested_quotients_multiply(m in arb_matrix(), s in proptest::collection::vec(1i64..4, 4)) {
            // L0 = scaled copy of L1 = rowspan(m) , L1 ⊆ L2 = Z^c
            let c = m[0].len();
            let l1 = IntMatrix::new(c, m.iter().map(|r| b(r)).collect()).unwrap();
            let l0 = IntMatrix::new(
                c,
                m.iter().enumerate().map(|(i, r)| r.iter().map(|&x| BigInt::from(x * s[i % 4])).collect()).collect(),
            ).unwrap();
            let mut id = IntMatrix::zeros(0, c);
            for i in 0..c {
                let mut row = vec![BigInt::zero(); c];
                row[i] = BigInt::one();
                id.push_row(row);
            }
            let a = lattice_quotient(&id, &l1).unwrap();
            let bq = lattice_quotient(&l1, &l0).unwrap();
            let ab = lattice_quotient(&id, &l0).unwrap();
            prop_assert_eq!(a.free_rank_delta + bq.free_rank_delta, ab.free_rank_delta);
            prop_assert_eq!(a.torsion_order() * bq.torsion_order(), ab.torsion_order());
            for w in ab.invariant_factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }
}
