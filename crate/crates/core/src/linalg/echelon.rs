//! Incremental row echelon form over a Euclidean ring.
//!
//! Column 0 is the leading column. Each stored row is keyed by its pivot
//! column, so the pivot ideals `I(β)` of the row span can be read directly.
//! Over the integers this is a Hermite-style echelon (no tail reduction), over
//! a field pivots are normalized to one.

use std::collections::BTreeMap;

use crate::ring::Ring;

/// A sparse row sorted by increasing column; the first entry is the pivot.
pub type Row<E> = Vec<(usize, E)>;

#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    ring: R,
    ncols: usize,
    rows: Vec<Option<Row<R::Elem>>>,
    rank: usize,
}

impl<R: Ring> Echelon<R> {
    pub fn new(ring: R, ncols: usize) -> Self {
        Echelon {
            ring,
            ncols,
            rows: vec![None; ncols],
            rank: 0,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pivot(&self, col: usize) -> Option<&R::Elem> {
        self.rows[col].as_ref().map(|r| &r[0].1)
    }

    pub fn row(&self, col: usize) -> Option<&Row<R::Elem>> {
        self.rows[col].as_ref()
    }

    /// Rows in increasing pivot-column order.
    pub fn rows(&self) -> impl Iterator<Item = &Row<R::Elem>> {
        self.rows.iter().flatten()
    }

    /// Add a vector to the span. Returns each column whose pivot changed,
    /// with the pivot it had before.
    pub fn insert<I>(&mut self, v: I) -> Vec<(usize, Option<R::Elem>)>
    where
        I: IntoIterator<Item = (usize, R::Elem)>,
    {
        let mut acc = self.accumulate(v);
        let mut changed = Vec::new();
        while let Some((&col, a)) = acc.iter().next() {
            let a = a.clone();
            let Some(row) = self.rows[col].take() else {
                let row = self.normalized(acc);
                self.rows[col] = Some(row);
                self.rank += 1;
                changed.push((col, None));
                break;
            };
            let c = row[0].1.clone();
            let (q, r) = self.ring.div_rem(&a, &c);
            if self.ring.is_zero(&r) {
                self.axpy(&mut acc, &self.ring.neg(&q), &row);
                self.rows[col] = Some(row);
                continue;
            }
            let (g, s, t) = self.ring.gcdext(&c, &a);
            let cg = self.ring.exact_div(&c, &g);
            let ag = self.ring.exact_div(&a, &g);
            // new pivot row s*row + t*acc, leading entry g
            let mut fresh = BTreeMap::new();
            self.axpy(&mut fresh, &s, &row);
            for (k, e) in &acc {
                add_entry(&self.ring, &mut fresh, *k, self.ring.mul(&t, e));
            }
            // remainder (c/g)*acc - (a/g)*row, zero at col
            let mut rest = BTreeMap::new();
            for (k, e) in &acc {
                add_entry(&self.ring, &mut rest, *k, self.ring.mul(&cg, e));
            }
            self.axpy(&mut rest, &self.ring.neg(&ag), &row);
            debug_assert!(!rest.contains_key(&col));
            self.rows[col] = Some(self.normalized(fresh));
            changed.push((col, Some(c)));
            acc = rest;
        }
        changed
    }

    /// Reduce `v` at pivot columns with canonical remainders. The result is
    /// zero exactly when `v` lies in the span.
    pub fn reduce<I>(&self, v: I) -> BTreeMap<usize, R::Elem>
    where
        I: IntoIterator<Item = (usize, R::Elem)>,
    {
        let mut acc = self.accumulate(v);
        let mut out = BTreeMap::new();
        while let Some((&col, a)) = acc.iter().next() {
            let a = a.clone();
            match &self.rows[col] {
                None => {
                    acc.remove(&col);
                    out.insert(col, a);
                }
                Some(row) => {
                    let (q, r) = self.ring.div_rem(&a, &row[0].1);
                    self.axpy(&mut acc, &self.ring.neg(&q), row);
                    if !self.ring.is_zero(&r) {
                        acc.remove(&col);
                        out.insert(col, r);
                    }
                }
            }
        }
        out
    }

    pub fn contains<I>(&self, v: I) -> bool
    where
        I: IntoIterator<Item = (usize, R::Elem)>,
    {
        self.reduce(v).is_empty()
    }

    fn accumulate<I>(&self, v: I) -> BTreeMap<usize, R::Elem>
    where
        I: IntoIterator<Item = (usize, R::Elem)>,
    {
        let mut acc = BTreeMap::new();
        for (k, e) in v {
            assert!(k < self.ncols, "column {k} out of range");
            add_entry(&self.ring, &mut acc, k, e);
        }
        acc
    }

    fn axpy(&self, acc: &mut BTreeMap<usize, R::Elem>, q: &R::Elem, row: &Row<R::Elem>) {
        if self.ring.is_zero(q) {
            return;
        }
        for (k, e) in row {
            add_entry(&self.ring, acc, *k, self.ring.mul(q, e));
        }
    }

    fn normalized(&self, acc: BTreeMap<usize, R::Elem>) -> Row<R::Elem> {
        let lead = acc.values().next().expect("nonzero row");
        let u = self.ring.normalizing_unit(lead);
        acc.into_iter()
            .map(|(k, e)| (k, self.ring.mul(&u, &e)))
            .collect()
    }
}

fn add_entry<R: Ring>(ring: &R, acc: &mut BTreeMap<usize, R::Elem>, k: usize, e: R::Elem) {
    if ring.is_zero(&e) {
        return;
    }
    match acc.remove(&k) {
        None => {
            acc.insert(k, e);
        }
        Some(old) => {
            let s = ring.add(&old, &e);
            if !ring.is_zero(&s) {
                acc.insert(k, s);
            }
        }
    }
}

/// Basis of the intersection of two row spans (Zassenhaus).
pub fn intersect_spans<R: Ring>(
    ring: &R,
    ncols: usize,
    a: &[Row<R::Elem>],
    b: &[Row<R::Elem>],
) -> Vec<Row<R::Elem>> {
    let mut ech = Echelon::new(ring.clone(), 2 * ncols);
    for row in a {
        let doubled = row
            .iter()
            .cloned()
            .chain(row.iter().map(|(k, e)| (k + ncols, e.clone())));
        ech.insert(doubled);
    }
    for row in b {
        ech.insert(row.iter().cloned());
    }
    ech.rows()
        .filter(|r| r[0].0 >= ncols)
        .map(|r| r.iter().map(|(k, e)| (k - ncols, e.clone())).collect())
        .collect()
}
