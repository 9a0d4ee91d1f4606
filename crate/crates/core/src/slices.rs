//! Length sequences of slices of finitely presented modules.
//!
//! Every sequence is read off one bounded window of the free module. The
//! window is the set of terms up to some degree `D`; the relation module
//! restricted to the window is seeded into an [`Echelon`], and a submodule
//! `V` is measured by the pivot ideals of `span(V) + N_D` against those of
//! `N_D`, one column at a time.
//!
//! Two ways of seeding `N_D` are available. The general one shifts strong
//! Groebner basis elements so that every window term with a divisible leading
//! term gets one row; since the order is degree compatible these rows span
//! `N` restricted to the window. For graded presentations the multiples
//! `x^b r_j` of the homogeneous relations already span each graded piece.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{LengthValue, LinComb, Rational};
use crate::error::{Error, Result};
use crate::groebner::{buchberger_strong, to_mvec, MVec, TermKey, DEFAULT_GB_BUDGET};
use crate::linalg::{Echelon, Row};
use crate::modrepr::{Presentation, SubmoduleGens};
use crate::poly::{monomials_of_degree, monomials_up_to, Monomial, Poly, TermOrder};
use crate::ring::{BaseRing, Coeffs, LengthSpec, Ring};
use crate::with_ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `λ(S_n V₀)`.
    Growth,
    /// `λ(M_n)` for a graded module.
    GradedSlice,
    /// `λ(S_{n+1} V₀ / S_n V₀)`.
    IntrinsicStep,
    /// `λ(M / I^{n+1} M)` with `I` the irrelevant ideal.
    Samuel,
    /// `λ(S_{≤m} V₀)` over boxes of block degrees.
    MultiBox,
}

/// How the relation window is built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlicePath {
    /// Homogeneous when the presentation is graded, Groebner otherwise.
    #[default]
    Auto,
    Groebner,
    Homogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceOptions {
    pub path: SlicePath,
    pub gb_budget: usize,
    /// Variable blocks for [`SeriesKind::MultiBox`]; singletons by default.
    pub blocks: Option<Vec<Vec<usize>>>,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions {
            path: SlicePath::Auto,
            gb_budget: DEFAULT_GB_BUDGET,
            blocks: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxValue {
    pub index: Vec<u64>,
    pub value: LengthValue,
}

/// A computed length sequence with the data needed to interpret it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub kind: SeriesKind,
    pub length: LengthSpec,
    pub base: String,
    pub weights: Vec<u32>,
    /// Values indexed by `n`; empty for a box series.
    pub values: Vec<LengthValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boxes: Vec<BoxValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub blocks: Vec<Vec<usize>>,
    pub path: SlicePath,
}

impl GrowthSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn box_value(&self, index: &[u64]) -> Option<&LengthValue> {
        self.boxes.iter().find(|b| b.index == index).map(|b| &b.value)
    }
}

/// Relations of the engine presentation: residue rings `Z/n` become `n·e_i`.
pub(crate) fn engine_relations<R: Ring>(ring: &R, m: &Presentation, weights: &[u32]) -> Result<Vec<MVec<R::Elem>>> {
    let mut rels = m
        .relations()
        .iter()
        .map(|r| to_mvec(ring, r, weights))
        .collect::<Result<Vec<_>>>()?;
    if let BaseRing::IntegersModN(n) = m.base() {
        let c = ring
            .from_rational(&Rational::from_integer(n.clone().into()))
            .expect("integer");
        let one = Monomial::one(m.k());
        for i in 0..m.gens() {
            rels.push(vec![(TermKey::new(&one, i, weights), c.clone())]);
        }
    }
    Ok(rels)
}

/// Column layout of a window with the relation span seeded.
#[derive(Clone, Debug)]
pub(crate) struct Ambient<R: Ring> {
    pub ring: R,
    pub weights: Vec<u32>,
    pub keys: Vec<TermKey>,
    index: HashMap<TermKey, usize>,
    pub base: Echelon<R>,
}

impl<R: Ring> Ambient<R> {
    fn with_keys(ring: R, weights: Vec<u32>, mut keys: Vec<TermKey>) -> Self {
        keys.sort_by(|a, b| b.cmp(a));
        let index = keys.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let base = Echelon::new(ring.clone(), keys.len());
        Ambient {
            ring,
            weights,
            keys,
            index,
            base,
        }
    }

    pub fn ncols(&self) -> usize {
        self.keys.len()
    }

    pub fn column(&self, t: &TermKey) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// `x^a · v` as a window row; `None` if a term falls outside.
    pub fn shifted_row(&self, v: &MVec<R::Elem>, a: &Monomial) -> Option<Row<R::Elem>> {
        let mut row = Vec::with_capacity(v.len());
        for (t, e) in v {
            row.push((self.column(&t.mul(a, &self.weights))?, e.clone()));
        }
        row.sort_by_key(|x| x.0);
        Some(row)
    }

    /// Length of `(V + N_D) / N_D` for an echelon that contains the base rows.
    pub fn excess(&self, cur: &Echelon<R>, spec: LengthSpec) -> Result<LengthValue> {
        let mut t = Tally::default();
        for col in 0..self.ncols() {
            if cur.pivot(col) != self.base.pivot(col) {
                t.add(&self.ring.ideal_quotient_length(cur.pivot(col), self.base.pivot(col), spec)?);
            }
        }
        Ok(t.value())
    }
}

/// Window of terms of weighted degree at most `d`, seeded from a strong basis.
pub(crate) fn groebner_ambient<R: Ring>(
    ring: R,
    m: &Presentation,
    weights: &[u32],
    d: u64,
    budget: usize,
) -> Result<Ambient<R>> {
    let rels = engine_relations(&ring, m, weights)?;
    let order = TermOrder::new(weights.to_vec());
    let gb = buchberger_strong(&ring, &order, m.k(), m.gens(), &rels, budget)?;
    let monos = monomials_up_to(m.k(), d, weights);
    let keys = (0..m.gens())
        .flat_map(|pos| monos.iter().map(move |mo| TermKey::new(mo, pos, weights)))
        .collect();
    let mut amb = Ambient::with_keys(ring, weights.to_vec(), keys);
    for col in 0..amb.ncols() {
        let t = amb.keys[col].clone();
        if let Some(g) = gb.reducer(&t) {
            let row = amb
                .shifted_row(g, &g[0].0.quotient(&t))
                .expect("degree compatible order keeps multiples in the window");
            debug_assert_eq!(row[0].0, col);
            amb.base.insert(row);
        }
    }
    Ok(amb)
}

/// Window of terms of graded degree at most `d`, seeded by relation multiples.
pub(crate) fn homogeneous_ambient<R: Ring>(ring: R, m: &Presentation, d: u64) -> Result<Ambient<R>> {
    let degs = m
        .gen_degrees()
        .ok_or_else(|| Error::Unsupported("the homogeneous path needs generator degrees".into()))?
        .to_vec();
    let weights = m.ring().weights.clone();
    let rels = engine_relations(&ring, m, &weights)?;
    let mut keys = Vec::new();
    for (pos, &g) in degs.iter().enumerate() {
        if g <= d {
            keys.extend(
                monomials_up_to(m.k(), d - g, &weights)
                    .iter()
                    .map(|mo| TermKey::new(mo, pos, &weights)),
            );
        }
    }
    let mut amb = Ambient::with_keys(ring, weights.clone(), keys);
    for r in &rels {
        let delta = r.iter().map(|(t, _)| t.degree() + degs[t.pos()]).max().unwrap_or(0);
        if delta > d {
            continue;
        }
        for b in monomials_up_to(m.k(), d - delta, &weights) {
            let row = amb.shifted_row(r, &b).expect("homogeneous multiple inside the window");
            amb.base.insert(row);
        }
    }
    Ok(amb)
}

/// Running sum of per-column lengths, tracking infinite columns separately.
#[derive(Clone, Debug, Default)]
struct Tally {
    finite: LinComb,
    infinite: usize,
}

impl Tally {
    fn add(&mut self, v: &LengthValue) {
        match v {
            LengthValue::Finite(c) => self.finite = &self.finite + c,
            LengthValue::Infinite => self.infinite += 1,
        }
    }

    fn remove(&mut self, v: &LengthValue) {
        match v {
            LengthValue::Finite(c) => self.finite = &self.finite - c,
            LengthValue::Infinite => self.infinite -= 1,
        }
    }

    fn value(&self) -> LengthValue {
        if self.infinite > 0 {
            LengthValue::Infinite
        } else {
            LengthValue::Finite(self.finite.clone())
        }
    }
}

struct Pass {
    values: Vec<LengthValue>,
    steps: Vec<LengthValue>,
}

/// One incremental sweep over `S_0 V₀ ⊆ S_1 V₀ ⊆ … ⊆ S_N V₀`.
fn growth_pass<R: Ring>(
    amb: &Ambient<R>,
    k: usize,
    v0: &[MVec<R::Elem>],
    n_max: u64,
    spec: LengthSpec,
    want_steps: bool,
) -> Result<Pass> {
    let ring = &amb.ring;
    let mut cur = amb.base.clone();
    let mut contrib: HashMap<usize, LengthValue> = HashMap::new();
    let mut tally = Tally::default();
    let mut values = Vec::new();
    let mut steps = Vec::new();
    for n in 0..=n_max {
        if !want_steps && matches!(values.last(), Some(LengthValue::Infinite)) {
            values.push(LengthValue::Infinite);
            continue;
        }
        let mut stage_old: HashMap<usize, Option<R::Elem>> = HashMap::new();
        for a in monomials_of_degree(k, n, &amb.weights) {
            for v in v0 {
                let row = amb.shifted_row(v, &a).expect("window covers S_N V₀");
                for (col, old) in cur.insert(row) {
                    stage_old.entry(col).or_insert(old);
                }
            }
        }
        let mut step = Tally::default();
        for (col, old) in &stage_old {
            let new = cur.pivot(*col);
            step.add(&ring.ideal_quotient_length(new, old.as_ref(), spec)?);
            let c = ring.ideal_quotient_length(new, amb.base.pivot(*col), spec)?;
            if let Some(prev) = contrib.insert(*col, c.clone()) {
                tally.remove(&prev);
            }
            tally.add(&c);
        }
        if n > 0 {
            steps.push(step.value());
        }
        values.push(tally.value());
    }
    Ok(Pass { values, steps })
}

fn resolve_path(m: &Presentation, opts: &SliceOptions) -> Result<SlicePath> {
    Ok(match opts.path {
        SlicePath::Auto if m.gen_degrees().is_some() => SlicePath::Homogeneous,
        SlicePath::Auto => SlicePath::Groebner,
        SlicePath::Homogeneous if m.gen_degrees().is_none() => {
            return Err(Error::Unsupported("presentation is not graded".into()))
        }
        p => p,
    })
}

/// Degree bound of a generating set in the window's own grading.
fn v0_degree(m: &Presentation, v0: &[crate::poly::FreeVec<Rational>], path: SlicePath) -> u64 {
    let w = &m.ring().weights;
    match (path, m.gen_degrees()) {
        (SlicePath::Homogeneous, Some(d)) => v0.iter().filter_map(|e| e.graded_degree(w, d)).max().unwrap_or(0),
        _ => v0.iter().filter_map(|e| e.weighted_degree(w)).max().unwrap_or(0),
    }
}

fn build_ambient<R: Ring>(ring: R, m: &Presentation, path: SlicePath, d: u64, budget: usize) -> Result<Ambient<R>> {
    match path {
        SlicePath::Homogeneous => homogeneous_ambient(ring, m, d),
        _ => groebner_ambient(ring, m, &m.ring().weights, d, budget),
    }
}

/// `M / cM` for `c` in the base ring, as a presentation over the same base.
fn quotient_by_constant(m: &Presentation, c: &BigUint) -> Result<Presentation> {
    if c.is_zero() {
        return Ok(m.clone());
    }
    let q = Rational::from_integer(c.clone().into());
    let extra: Vec<_> = (0..m.gens())
        .map(|i| m.vector(i, Poly::constant(m.base(), m.k(), q.clone())))
        .collect();
    m.with_relations(&extra)
}

fn run_pass(
    m: &Presentation,
    elements: &[crate::poly::FreeVec<Rational>],
    n_max: u64,
    spec: LengthSpec,
    opts: &SliceOptions,
    want_steps: bool,
) -> Result<(Pass, SlicePath)> {
    m.base().check_length(spec)?;
    let path = resolve_path(m, opts)?;
    let d = n_max + v0_degree(m, elements, path);
    let k = m.k();
    let w = m.ring().weights.clone();
    let pass = with_ring!(m.base(), |r| {
        let amb = build_ambient(r, m, path, d, opts.gb_budget)?;
        let v0 = elements
            .iter()
            .map(|e| to_mvec(&amb.ring, e, &w))
            .collect::<Result<Vec<_>>>()?;
        growth_pass(&amb, k, &v0, n_max, spec, want_steps)?
    });
    Ok((pass, path))
}

fn series_shell(m: &Presentation, kind: SeriesKind, spec: LengthSpec, path: SlicePath) -> GrowthSeries {
    GrowthSeries {
        kind,
        length: spec,
        base: m.base().to_string(),
        weights: m.ring().weights.clone(),
        values: Vec::new(),
        boxes: Vec::new(),
        blocks: Vec::new(),
        path,
    }
}

/// `λ(S_n V₀)` for `n = 0..=n_max`.
pub fn growth_series(
    m: &Presentation,
    v0: &SubmoduleGens,
    n_max: u64,
    spec: LengthSpec,
    opts: &SliceOptions,
) -> Result<GrowthSeries> {
    v0.check(m)?;
    if v0.plus_multiple.is_some() {
        return Err(Error::Unsupported(
            "growth of an infinitely generated starting submodule".into(),
        ));
    }
    let (pass, path) = run_pass(m, &v0.elements, n_max, spec, opts, false)?;
    let mut s = series_shell(m, SeriesKind::Growth, spec, path);
    s.values = pass.values;
    Ok(s)
}

/// `λ(S_{i+1} V₀ / S_i V₀)` for `i = 0..=n_max`.
///
/// With `plus_multiple = Some(c)` the steps of `R·V₀ + cM` are those of `V₀`
/// in `M / cM`, since `cM` is an `S`-submodule contained in every stage.
pub fn intrinsic_series(
    m: &Presentation,
    v0: &SubmoduleGens,
    n_max: u64,
    spec: LengthSpec,
    opts: &SliceOptions,
) -> Result<GrowthSeries> {
    v0.check(m)?;
    let reduced;
    let m = match &v0.plus_multiple {
        Some(c) => {
            reduced = quotient_by_constant(m, c)?;
            &reduced
        }
        None => m,
    };
    let (pass, path) = run_pass(m, &v0.elements, n_max + 1, spec, opts, true)?;
    let mut s = series_shell(m, SeriesKind::IntrinsicStep, spec, path);
    s.values = pass.steps;
    Ok(s)
}

/// `λ(M_n)` for `n = 0..=n_max` of a graded module.
pub fn graded_slice_series(m: &Presentation, n_max: u64, spec: LengthSpec) -> Result<GrowthSeries> {
    m.base().check_length(spec)?;
    let degs = m
        .gen_degrees()
        .ok_or_else(|| Error::Unsupported("graded slices need generator degrees".into()))?
        .to_vec();
    let values = with_ring!(m.base(), |r| {
        let amb = homogeneous_ambient(r, m, n_max)?;
        let one = amb.ring.one();
        let mut tallies = vec![Tally::default(); n_max as usize + 1];
        for (col, t) in amb.keys.iter().enumerate() {
            let g = t.degree() + degs[t.pos()];
            let v = amb.ring.ideal_quotient_length(Some(&one), amb.base.pivot(col), spec)?;
            tallies[g as usize].add(&v);
        }
        tallies.iter().map(Tally::value).collect::<Vec<_>>()
    });
    let mut s = series_shell(m, SeriesKind::GradedSlice, spec, SlicePath::Homogeneous);
    s.values = values;
    Ok(s)
}

fn samuel_at<R: Ring>(ring: &R, m: &Presentation, rels: &[MVec<R::Elem>], n: u64, spec: LengthSpec) -> Result<LengthValue> {
    let k = m.k();
    let w = vec![1; k];
    let monos = monomials_up_to(k, n, &w);
    let keys = (0..m.gens())
        .flat_map(|pos| monos.iter().map(move |mo| TermKey::new(mo, pos, &vec![1; k])))
        .collect();
    let mut amb = Ambient::with_keys(ring.clone(), w.clone(), keys);
    for r in rels {
        for a in &monos {
            let row: Row<R::Elem> = {
                let mut row: Vec<_> = r
                    .iter()
                    .filter_map(|(t, e)| amb.column(&t.mul(a, &w)).map(|c| (c, e.clone())))
                    .collect();
                row.sort_by_key(|x| x.0);
                row
            };
            if !row.is_empty() {
                amb.base.insert(row);
            }
        }
    }
    let one = ring.one();
    let mut t = Tally::default();
    for col in 0..amb.ncols() {
        t.add(&ring.ideal_quotient_length(Some(&one), amb.base.pivot(col), spec)?);
    }
    Ok(t.value())
}

/// `λ(M / I^{n+1} M)` for `n = 0..=n_max`, with `I` generated by the variables.
pub fn samuel_series(m: &Presentation, n_max: u64, spec: LengthSpec) -> Result<GrowthSeries> {
    m.base().check_length(spec)?;
    let w = vec![1; m.k()];
    let values = with_ring!(m.base(), |r| {
        let rels = engine_relations(&r, m, &w)?;
        (0..=n_max)
            .into_par_iter()
            .map(|n| samuel_at(&r, m, &rels, n, spec))
            .collect::<Result<Vec<_>>>()?
    });
    let mut s = series_shell(m, SeriesKind::Samuel, spec, SlicePath::Groebner);
    s.weights = w;
    s.values = values;
    Ok(s)
}

fn check_blocks(k: usize, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = vec![false; k];
    for &i in blocks.iter().flatten() {
        if i >= k || seen[i] {
            return Err(Error::InvalidInput(format!("blocks do not partition the {k} variables")));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidInput(format!("blocks do not partition the {k} variables")));
    }
    Ok(())
}

fn box_indices(max_box: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &b in max_box {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..=b).map(move |i| {
                    let mut q = p.clone();
                    q.push(i);
                    q
                })
            })
            .collect();
    }
    out
}

/// `λ(S_{≤m} V₀)` for every box `m ≤ max_box`, where `S_{≤m}` bounds the
/// degree in each variable block separately. The ring must be standard graded.
pub fn multibox_series(
    m: &Presentation,
    v0: &SubmoduleGens,
    blocks: &[Vec<usize>],
    max_box: &[u64],
    spec: LengthSpec,
    opts: &SliceOptions,
) -> Result<GrowthSeries> {
    v0.check(m)?;
    m.base().check_length(spec)?;
    if v0.plus_multiple.is_some() {
        return Err(Error::Unsupported("box growth of an infinitely generated submodule".into()));
    }
    if !m.ring().is_standard_graded() {
        return Err(Error::Unsupported("box growth needs unit weights".into()));
    }
    check_blocks(m.k(), blocks)?;
    if blocks.len() != max_box.len() {
        return Err(Error::Shape(format!("{} blocks but a box of rank {}", blocks.len(), max_box.len())));
    }
    let path = resolve_path(m, opts)?;
    let total: u64 = max_box.iter().sum();
    let d = total + v0_degree(m, &v0.elements, path);
    let k = m.k();
    let w = m.ring().weights.clone();
    let indices = box_indices(max_box);
    let boxes = with_ring!(m.base(), |r| {
        let amb = build_ambient(r, m, path, d, opts.gb_budget)?;
        let elems = v0
            .elements
            .iter()
            .map(|e| to_mvec(&amb.ring, e, &w))
            .collect::<Result<Vec<_>>>()?;
        let shifts = monomials_up_to(k, total, &w);
        indices
            .par_iter()
            .map(|idx| {
                let mut cur = amb.base.clone();
                for a in shifts
                    .iter()
                    .filter(|a| blocks.iter().zip(idx).all(|(b, &mj)| a.block_degree(b) <= mj))
                {
                    for v in &elems {
                        cur.insert(amb.shifted_row(v, a).expect("window covers the box"));
                    }
                }
                Ok(BoxValue {
                    index: idx.clone(),
                    value: amb.excess(&cur, spec)?,
                })
            })
            .collect::<Result<Vec<_>>>()?
    });
    let mut s = series_shell(m, SeriesKind::MultiBox, spec, path);
    s.boxes = boxes;
    s.blocks = blocks.to_vec();
    Ok(s)
}

/// Any sequence kind up to `n_max`. Box series use `opts.blocks` (singletons
/// when absent) and the cube of side `n_max`.
pub fn series(
    m: &Presentation,
    v0: &SubmoduleGens,
    n_max: u64,
    kind: SeriesKind,
    spec: LengthSpec,
    opts: &SliceOptions,
) -> Result<GrowthSeries> {
    match kind {
        SeriesKind::Growth => growth_series(m, v0, n_max, spec, opts),
        SeriesKind::IntrinsicStep => intrinsic_series(m, v0, n_max, spec, opts),
        SeriesKind::GradedSlice => graded_slice_series(m, n_max, spec),
        SeriesKind::Samuel => samuel_series(m, n_max, spec),
        SeriesKind::MultiBox => {
            let blocks = opts
                .blocks
                .clone()
                .unwrap_or_else(|| (0..m.k()).map(|i| vec![i]).collect());
            let cube = vec![n_max; blocks.len()];
            multibox_series(m, v0, &blocks, &cube, spec, opts)
        }
    }
}

pub fn growth_value(m: &Presentation, v0: &SubmoduleGens, n: u64, spec: LengthSpec) -> Result<LengthValue> {
    let s = growth_series(m, v0, n, spec, &SliceOptions::default())?;
    Ok(s.values[n as usize].clone())
}

pub fn intrinsic_step_value(m: &Presentation, v0: &SubmoduleGens, n: u64, spec: LengthSpec) -> Result<LengthValue> {
    let s = intrinsic_series(m, v0, n, spec, &SliceOptions::default())?;
    Ok(s.values[n as usize].clone())
}

pub fn samuel_value(m: &Presentation, n: u64, spec: LengthSpec) -> Result<LengthValue> {
    m.base().check_length(spec)?;
    let w = vec![1; m.k()];
    with_ring!(m.base(), |r| {
        let rels = engine_relations(&r, m, &w)?;
        samuel_at(&r, m, &rels, n, spec)
    })
}

/// `λ(S_{≤m} V₀)` for a single box.
pub fn multibox_value(
    m: &Presentation,
    v0: &SubmoduleGens,
    blocks: &[Vec<usize>],
    index: &[u64],
    spec: LengthSpec,
) -> Result<LengthValue> {
    let s = multibox_series(m, v0, blocks, index, spec, &SliceOptions::default())?;
    Ok(s.box_value(index).cloned().expect("requested box is computed"))
}
