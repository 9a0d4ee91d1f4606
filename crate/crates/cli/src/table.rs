//! The table of `μ_α`, `μ̂_α` and `μ_β` for quotients of `ℤ[x]`, plus `ℤ[x,y]/(xy)`.
//!
//! `α` is `log |·|`, `β` the rank. `μ_α` is the join of `μ[V₀]` over the
//! starting submodules `{1}, {x_i}`; families of infinite `α`-length are
//! skipped, so a torsion-free module comes out as `0`.

use std::fmt;

use hilbert_lambda::arith::{lv_of_group_order, LengthValue, MuMonomial};
use hilbert_lambda::hilbert::{mu, MuOptions};
use hilbert_lambda::modrepr::{from_ideal_quotient, Presentation, RingSpec, SubmoduleGens};
use hilbert_lambda::ring::{BaseRing, LengthSpec};
use hilbert_lambda::variants::{hat_mu_chain, mu_general_lower_bound, HatVerdict};
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::CliError;
use crate::parse::parse_poly;

/// A table entry: an exact monomial, or unbounded growth in a given degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Entry {
    Exact(MuMonomial),
    Unbounded(usize),
    Inconclusive(MuMonomial),
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Exact(m) => write!(f, "{m}"),
            Entry::Unbounded(d) => write!(f, "∞·t^{d}"),
            Entry::Inconclusive(m) => write!(f, ">= {m} (inconclusive)"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub ideal: String,
    pub column: String,
    pub expected: Entry,
    pub computed: Entry,
    pub ok: bool,
}

struct Case {
    label: String,
    k: usize,
    ideal: Vec<&'static str>,
    alpha: Entry,
    hat: Entry,
    beta: Entry,
}

fn lg(n: u64, e: u32) -> LengthValue {
    lv_of_group_order(&BigUint::from(n).pow(e))
}

fn term(c: LengthValue, d: usize) -> Entry {
    Entry::Exact(MuMonomial::new(c, d))
}

fn ints(n: u64, d: usize) -> Entry {
    term(LengthValue::from_int(n), d)
}

fn cases() -> Vec<Case> {
    let zero = || Entry::Exact(MuMonomial::Zero);
    let mut out = vec![
        Case {
            label: "0".into(),
            k: 1,
            ideal: vec![],
            alpha: zero(),
            hat: Entry::Unbounded(1),
            beta: ints(1, 1),
        },
        Case {
            label: "S".into(),
            k: 1,
            ideal: vec!["1"],
            alpha: zero(),
            hat: zero(),
            beta: zero(),
        },
    ];
    for (n, s) in [(2, "2"), (5, "5"), (6, "6")] {
        out.push(Case {
            label: format!("({n})"),
            k: 1,
            ideal: vec![s],
            alpha: term(lg(n, 1), 1),
            hat: term(lg(n, 1), 1),
            beta: zero(),
        });
    }
    for (p, deg) in [("x^2 - 2", 2), ("x^3 + x + 1", 3)] {
        out.push(Case {
            label: format!("({p})"),
            k: 1,
            ideal: vec![p],
            alpha: zero(),
            hat: Entry::Unbounded(0),
            beta: ints(deg, 0),
        });
    }
    for (p, deg, n, s) in [("x^2 + 1", 2, 3, "3"), ("x^3 + x + 1", 3, 2, "2"), ("x^2 - 2", 2, 5, "5")] {
        out.push(Case {
            label: format!("({p}, {n})"),
            k: 1,
            ideal: vec![p, s],
            alpha: term(lg(n, deg), 0),
            hat: term(lg(n, deg), 0),
            beta: zero(),
        });
    }
    out.push(Case {
        label: "Z[x,y]/(xy)".into(),
        k: 2,
        ideal: vec!["x*y"],
        alpha: zero(),
        hat: Entry::Unbounded(1),
        beta: ints(2, 1),
    });
    out
}

/// Starting submodules `{1}` and `{x_i}` of a cyclic module.
fn small_families(m: &Presentation) -> Vec<SubmoduleGens> {
    let mut fams = vec![m.all_generators()];
    for i in 0..m.k() {
        fams.push(SubmoduleGens::new(vec![m.vector(0, m.ring().var(i))]));
    }
    fams
}

fn hat_entry(m: &Presentation, chain: u64, opts: &MuOptions) -> Result<Entry, CliError> {
    let est = hat_mu_chain(m, chain, LengthSpec::LogCard, opts)?;
    Ok(match est.verdict {
        HatVerdict::Stabilized => Entry::Exact(est.sup),
        HatVerdict::UnboundedEvidence => Entry::Unbounded(est.sup.degree().unwrap_or(0)),
        HatVerdict::Inconclusive => Entry::Inconclusive(est.sup),
    })
}

/// Recompute every cell of the table.
pub fn paper_table(opts: &MuOptions, chain: u64) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::new();
    for c in cases() {
        let ring = RingSpec::new(BaseRing::Integers, c.k);
        let gens = c
            .ideal
            .iter()
            .map(|s| parse_poly(s, c.k).map_err(|e| CliError::Problem(format!("{s}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let m = from_ideal_quotient(ring, &gens)?;
        let alpha = Entry::Exact(mu_general_lower_bound(&m, &small_families(&m), LengthSpec::LogCard, opts)?);
        let hat = hat_entry(&m, chain, opts)?;
        let beta = Entry::Exact(mu(&m, &m.all_generators(), LengthSpec::Rank, opts)?);
        for (column, expected, computed) in [
            ("mu_alpha", c.alpha, alpha),
            ("mu_hat_alpha", c.hat, hat),
            ("mu_beta", c.beta, beta),
        ] {
            rows.push(TableRow {
                ideal: c.label.clone(),
                column: column.into(),
                ok: expected == computed,
                expected,
                computed,
            });
        }
    }
    Ok(rows)
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut lines = vec![format!(
        "{:<18} {:<13} {:<24} {:<24} ok",
        "I", "column", "expected", "computed"
    )];
    for r in rows {
        lines.push(format!(
            "{:<18} {:<13} {:<24} {:<24} {}",
            r.ideal,
            r.column,
            r.expected.to_string(),
            r.computed.to_string(),
            if r.ok { "✓" } else { "✗" }
        ));
    }
    lines.join("\n") + "\n"
}
