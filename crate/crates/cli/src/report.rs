//! Running `mu` variants and rendering results as text, CSV or JSON.

use std::fmt::Write as _;

use hilbert_lambda::arith::{LengthValue, MuMonomial};
use hilbert_lambda::hilbert::{entropy_d, lambda_degree, mu_fit, MuFit, MuOptions};
use hilbert_lambda::slices::{GrowthSeries, SeriesKind};
use hilbert_lambda::variants::{
    hat_entropy_of, hat_mu_chain, intrinsic_dimension, intrinsic_entropy_i, intrinsic_fit, module_length,
    samuel_fit, HatEstimate, HatVerdict, IntrinsicDimension,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::problem::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MuVariant {
    Plain,
    Hat,
    Intrinsic,
    Samuel,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntropyLine {
    pub d: usize,
    pub value: LengthValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<HatVerdict>,
}

/// Where a fitted polynomial was checked.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub n0: u64,
    pub samples: u64,
    pub guard: usize,
    pub degree_bound: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuReport {
    pub variant: MuVariant,
    pub mu: MuMonomial,
    pub dimension: Option<usize>,
    pub degree: LengthValue,
    pub entropies: Vec<EntropyLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hat: Option<HatEstimate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module_length: Option<LengthValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intrinsic_dimension: Option<IntrinsicDimension>,
    pub note: String,
}

fn certificate(fit: &MuFit) -> Certificate {
    Certificate {
        n0: fit.polynomial.n0.first().copied().unwrap_or(0),
        samples: fit.samples,
        guard: fit.polynomial.guard,
        degree_bound: fit.polynomial.degree_bound.first().copied().unwrap_or(0),
    }
}

fn plain_entropies(mu: &MuMonomial, k: usize) -> Vec<EntropyLine> {
    (0..=k)
        .map(|d| EntropyLine {
            d,
            value: entropy_d(mu, d),
            verdict: None,
        })
        .collect()
}

fn from_fit(variant: MuVariant, fit: &MuFit, k: usize, note: &str) -> MuReport {
    MuReport {
        variant,
        mu: fit.mu.clone(),
        dimension: fit.mu.degree(),
        degree: lambda_degree(&fit.mu),
        entropies: plain_entropies(&fit.mu, k),
        certificate: Some(certificate(fit)),
        hat: None,
        module_length: None,
        intrinsic_dimension: None,
        note: note.into(),
    }
}

/// Compute the requested invariant of a problem.
pub fn mu_report(p: &Problem, variant: MuVariant, opts: &MuOptions, chain: u64) -> Result<MuReport, CliError> {
    let k = p.module.k();
    Ok(match variant {
        MuVariant::Plain => {
            let fit = mu_fit(&p.module, &p.v0, p.length, opts)?;
            from_fit(variant, &fit, k, "h^(d) = d!·m for mu = m·t^d")
        }
        MuVariant::Samuel => {
            let fit = samuel_fit(&p.module, p.length, opts)?;
            from_fit(variant, &fit, k, "Samuel filtration by powers of (x1..xk); h^(d) = d!·m")
        }
        MuVariant::Hat => {
            let est = hat_mu_chain(&p.module, chain, p.length, opts)?;
            let entropies = (0..=k)
                .map(|d| {
                    let h = hat_entropy_of(&est, d);
                    EntropyLine {
                        d,
                        value: h.sup,
                        verdict: Some(h.verdict),
                    }
                })
                .collect();
            MuReport {
                variant,
                mu: est.sup.clone(),
                dimension: est.sup.degree(),
                degree: lambda_degree(&est.sup),
                entropies,
                certificate: None,
                hat: Some(est),
                module_length: None,
                intrinsic_dimension: None,
                note: "supremum over M/mM with m = lcm(1..j); a certified lower bound".into(),
            }
        }
        MuVariant::Intrinsic => {
            let fit = intrinsic_fit(&p.module, &p.v0, p.length, opts)?;
            let la = module_length(&p.module, p.length, opts)?;
            let entropies = (0..=k)
                .map(|i| EntropyLine {
                    d: i,
                    value: intrinsic_entropy_i(&fit.mu, i, &la),
                    verdict: None,
                })
                .collect();
            let mut r = from_fit(
                variant,
                &fit,
                k,
                "h~^(0) = lambda(M); h~^(d+1) = (d+1)!·s for mu~ = s·t^d",
            );
            r.entropies = entropies;
            if let Some(d) = fit.mu.degree() {
                r.degree = intrinsic_entropy_i(&fit.mu, d + 1, &la);
            }
            r.intrinsic_dimension = Some(intrinsic_dimension(&fit.mu, &la));
            r.module_length = Some(la);
            r
        }
    })
}

fn verdict_name(v: HatVerdict) -> &'static str {
    match v {
        HatVerdict::Stabilized => "stabilized",
        HatVerdict::UnboundedEvidence => "unbounded evidence",
        HatVerdict::Inconclusive => "inconclusive",
    }
}

fn dim_text(d: Option<usize>) -> String {
    d.map_or_else(|| "undefined".into(), |d| d.to_string())
}

fn unbounded_target(mu: &MuMonomial) -> String {
    format!("∞·t^{}", mu.degree().unwrap_or(0))
}

pub fn render_mu(r: &MuReport) -> String {
    let mut s = String::new();
    match (r.variant, &r.hat) {
        (MuVariant::Hat, Some(h)) => {
            match h.verdict {
                HatVerdict::UnboundedEvidence => writeln!(
                    s,
                    "mu_hat toward {} [{}]; dim {}",
                    unbounded_target(&h.sup),
                    verdict_name(h.verdict),
                    dim_text(r.dimension)
                ),
                v => writeln!(
                    s,
                    "mu_hat = {} [{}]; dim {}; degree {}",
                    h.sup,
                    verdict_name(v),
                    dim_text(r.dimension),
                    r.degree
                ),
            }
            .unwrap();
            for step in &h.chain {
                writeln!(s, "  m = {}: mu = {}, sup = {}", step.modulus, step.mu, step.sup).unwrap();
            }
            for e in &r.entropies {
                let v = e.verdict.expect("hat entropies carry verdicts");
                writeln!(s, "h_hat^({}) >= {} [{}]", e.d, e.value, verdict_name(v)).unwrap();
            }
        }
        (MuVariant::Intrinsic, _) => {
            writeln!(s, "mu~ = {}", r.mu).unwrap();
            if let (Some(la), Some(id)) = (&r.module_length, r.intrinsic_dimension) {
                writeln!(s, "lambda(M) = {la}; intrinsic dimension {id}").unwrap();
            }
            for e in &r.entropies {
                writeln!(s, "h~^({}) = {}", e.d, e.value).unwrap();
            }
        }
        (v, _) => {
            let name = if v == MuVariant::Samuel { "mu_bar" } else { "mu" };
            writeln!(s, "{name} = {}; dim {}; degree {}", r.mu, dim_text(r.dimension), r.degree).unwrap();
            for e in &r.entropies {
                writeln!(s, "h^({}) = {}", e.d, e.value).unwrap();
            }
        }
    }
    if let Some(c) = &r.certificate {
        writeln!(
            s,
            "certificate: polynomial of degree <= {} matches every sample for n >= {} ({} samples, guard {})",
            c.degree_bound, c.n0, c.samples, c.guard
        )
        .unwrap();
    }
    writeln!(s, "note: {}", r.note).unwrap();
    s
}

pub fn series_csv(s: &GrowthSeries) -> String {
    let mut out = String::new();
    if s.kind == SeriesKind::MultiBox {
        let header: Vec<String> = (1..=s.blocks.len()).map(|j| format!("n{j}")).collect();
        writeln!(out, "{},value", header.join(",")).unwrap();
        for b in &s.boxes {
            let idx: Vec<String> = b.index.iter().map(u64::to_string).collect();
            writeln!(out, "{},{}", idx.join(","), csv_field(&b.value)).unwrap();
        }
    } else {
        writeln!(out, "n,value").unwrap();
        for (n, v) in s.values.iter().enumerate() {
            writeln!(out, "{n},{}", csv_field(v)).unwrap();
        }
    }
    out
}

fn csv_field(v: &LengthValue) -> String {
    let t = v.to_string();
    if t.contains(',') || t.contains('"') {
        format!("\"{}\"", t.replace('"', "\"\""))
    } else {
        t
    }
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}
