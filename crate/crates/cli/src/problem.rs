//! JSON problem files.
//!
//! ```json
//! {"ring": {"base": "Z", "k": 1},
//!  "module": {"gens": 1, "relations": [["x1^2 - 2"]]},
//!  "V0": [["1"]],
//!  "length": "logcard"}
//! ```
//!
//! `module` defaults to the free module of rank one, `V0` to all generators
//! and `length` to `dim` over fields and `logcard` otherwise. `V0` may also be
//! `{"builtin": "Z_plus_nS", "n": 3}`.

use hilbert_lambda::arith::{is_probable_prime, Rational};
use hilbert_lambda::modrepr::{Presentation, RingSpec, SubmoduleGens};
use hilbert_lambda::poly::{FreeVec, Poly};
use hilbert_lambda::ring::{BaseRing, LengthSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::parse::parse_poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseName {
    Z,
    Zmod,
    Fp,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub base: BaseName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub gens: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gen_degrees: Option<Vec<u64>>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum V0File {
    Builtin { builtin: String, n: u64 },
    Elements(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: RingFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleFile>,
    #[serde(rename = "V0", default, skip_serializing_if = "Option::is_none")]
    pub v0: Option<V0File>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<LengthSpec>,
}

/// A validated problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub module: Presentation,
    pub v0: SubmoduleGens,
    pub length: LengthSpec,
}

const BUILTIN_Z_PLUS_NS: &str = "Z_plus_nS";

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Problem(msg.into())
}

/// Line and column (1-based) of byte offset `at` in `src`.
fn line_col(src: &str, at: usize) -> (usize, usize) {
    let before = &src[..at];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct PolyContext<'a> {
    source: Option<&'a str>,
    name: &'a str,
}

impl PolyContext<'_> {
    fn parse(&self, text: &str, k: usize, path: String) -> Result<Poly<Rational>, CliError> {
        parse_poly(text, k).map_err(|e| {
            // locate the string literal in the source to report a file position
            let (line, column) = self
                .source
                .and_then(|src| {
                    let quoted = serde_json::to_string(text).ok()?;
                    src.find(&quoted).map(|at| {
                        let (l, c) = line_col(src, at);
                        (l, c + e.column)
                    })
                })
                .unwrap_or((0, e.column));
            CliError::Parse {
                file: self.name.to_string(),
                line,
                column,
                msg: format!("{path}: {}", e.msg),
            }
        })
    }
}

impl ProblemFile {
    pub fn from_json(src: &str, name: &str) -> Result<ProblemFile, CliError> {
        serde_json::from_str(src).map_err(|e| CliError::Parse {
            file: name.to_string(),
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files serialize")
    }
}

impl Problem {
    /// Parse and validate a JSON problem file; `name` labels diagnostics.
    pub fn from_json(src: &str, name: &str) -> Result<Problem, CliError> {
        let file = ProblemFile::from_json(src, name)?;
        Problem::build(&file, PolyContext { source: Some(src), name })
    }

    pub fn from_file(file: &ProblemFile) -> Result<Problem, CliError> {
        Problem::build(file, PolyContext { source: None, name: "<problem>" })
    }

    fn build(file: &ProblemFile, ctx: PolyContext<'_>) -> Result<Problem, CliError> {
        let r = &file.ring;
        let base = match (r.base, r.n) {
            (BaseName::Z, None) => BaseRing::Integers,
            (BaseName::Q, None) => BaseRing::Rationals,
            (BaseName::Zmod, Some(n)) if n >= 2 => BaseRing::zmod(n),
            (BaseName::Fp, Some(p)) if is_prime(p) => BaseRing::PrimeField(p),
            (BaseName::Fp, Some(p)) => return Err(invalid(format!("ring.n = {p} is not prime"))),
            (BaseName::Zmod | BaseName::Fp, _) => return Err(invalid("ring.n must be given and at least 2")),
            (BaseName::Z | BaseName::Q, Some(_)) => return Err(invalid("ring.n only applies to Zmod and Fp")),
        };
        if r.k == 0 {
            return Err(invalid("ring.k must be at least 1"));
        }
        let ring = match &r.weights {
            None => RingSpec::new(base.clone(), r.k),
            Some(w) if w.len() == r.k => RingSpec::weighted(base.clone(), w.clone())?,
            Some(w) => return Err(invalid(format!("{} weights for k = {}", w.len(), r.k))),
        };
        let k = r.k;
        let default_module = ModuleFile {
            gens: 1,
            gen_degrees: None,
            relations: Vec::new(),
        };
        let mf = file.module.as_ref().unwrap_or(&default_module);
        if mf.gens == 0 {
            return Err(invalid("module.gens must be at least 1"));
        }
        let mut relations = Vec::with_capacity(mf.relations.len());
        for (i, rel) in mf.relations.iter().enumerate() {
            if rel.len() != mf.gens {
                return Err(invalid(format!(
                    "module.relations[{i}] has {} entries, expected {}",
                    rel.len(),
                    mf.gens
                )));
            }
            let comps = rel
                .iter()
                .enumerate()
                .map(|(j, s)| ctx.parse(s, k, format!("module.relations[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            relations.push(FreeVec::new(comps));
        }
        let module = match &mf.gen_degrees {
            Some(d) => Presentation::new(ring.clone(), mf.gens, Some(d.clone()), relations)?,
            // grade by zero generator degrees when every relation allows it
            None => match Presentation::new(ring.clone(), mf.gens, Some(vec![0; mf.gens]), relations.clone()) {
                Ok(m) => m,
                Err(hilbert_lambda::Error::Inhomogeneous(_)) => {
                    Presentation::new(ring.clone(), mf.gens, None, relations)?
                }
                Err(e) => return Err(e.into()),
            },
        };
        let v0 = match &file.v0 {
            None => module.all_generators(),
            Some(V0File::Builtin { builtin, n }) => {
                if builtin != BUILTIN_Z_PLUS_NS {
                    return Err(invalid(format!("unknown builtin V0 {builtin:?}")));
                }
                if base != BaseRing::Integers || module.gens() != 1 || *n < 1 {
                    return Err(invalid("Z_plus_nS needs base Z, one generator and n >= 1"));
                }
                SubmoduleGens::integers_plus_multiple(&module, *n)
            }
            Some(V0File::Elements(elems)) => {
                if elems.is_empty() {
                    return Err(invalid("V0 needs at least one element"));
                }
                let mut out = Vec::with_capacity(elems.len());
                for (i, e) in elems.iter().enumerate() {
                    if e.len() != module.gens() {
                        return Err(invalid(format!(
                            "V0[{i}] has {} entries, expected {}",
                            e.len(),
                            module.gens()
                        )));
                    }
                    let comps = e
                        .iter()
                        .enumerate()
                        .map(|(j, s)| ctx.parse(s, k, format!("V0[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()?;
                    out.push(module.element(comps)?);
                }
                SubmoduleGens::new(out)
            }
        };
        let length = file.length.unwrap_or(if base.is_field() {
            LengthSpec::Dimension
        } else {
            LengthSpec::LogCard
        });
        base.check_length(length)?;
        Ok(Problem { module, v0, length })
    }

    /// Canonical problem file: every default made explicit, polynomials in
    /// canonical form. Parsing the result gives back the same problem.
    pub fn to_file(&self) -> ProblemFile {
        let ring = self.module.ring();
        let (base, n) = match &ring.base {
            BaseRing::Integers => (BaseName::Z, None),
            BaseRing::Rationals => (BaseName::Q, None),
            BaseRing::PrimeField(p) => (BaseName::Fp, Some(*p)),
            BaseRing::IntegersModN(n) => (BaseName::Zmod, Some(u64::try_from(n).expect("moduli fit in u64"))),
        };
        let render = |v: &FreeVec<Rational>| -> Vec<String> {
            v.components.iter().map(|p| p.to_string()).collect()
        };
        let v0 = match &self.v0.plus_multiple {
            Some(n) => V0File::Builtin {
                builtin: BUILTIN_Z_PLUS_NS.into(),
                n: u64::try_from(n).expect("builtin multiple fits in u64"),
            },
            None => V0File::Elements(self.v0.elements.iter().map(render).collect()),
        };
        ProblemFile {
            ring: RingFile {
                base,
                n,
                k: ring.k,
                weights: (!ring.is_standard_graded()).then(|| ring.weights.clone()),
            },
            module: Some(ModuleFile {
                gens: self.module.gens(),
                gen_degrees: self.module.gen_degrees().map(<[u64]>::to_vec),
                relations: self.module.relations().iter().map(render).collect(),
            }),
            v0: Some(v0),
            length: Some(self.length),
        }
    }
}

fn is_prime(p: u64) -> bool {
    is_probable_prime(&num_bigint::BigUint::from(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_canonical_form() {
        let p = Problem::from_json(r#"{"ring":{"base":"Z","k":1},"module":{"gens":1,"relations":[["x^2-2"]]}}"#, "t").unwrap();
        assert_eq!(p.length, LengthSpec::LogCard);
        let f = p.to_file();
        assert_eq!(f.module.as_ref().unwrap().relations, vec![vec!["x1^2 - 2".to_string()]]);
        // x^2 - 2 is not homogeneous, so no grading is recorded
        assert_eq!(f.module.as_ref().unwrap().gen_degrees, None);
        let again = Problem::from_file(&f).unwrap().to_file();
        assert_eq!(f, again);
    }

    #[test]
    fn inhomogeneous_modules_stay_ungraded() {
        let p = Problem::from_json(r#"{"ring":{"base":"Q","k":2},"module":{"gens":1,"relations":[["x*y - 1"]]}}"#, "t").unwrap();
        assert!(p.module.gen_degrees().is_none());
        assert_eq!(p.length, LengthSpec::Dimension);
    }

    #[test]
    fn diagnostics_carry_positions() {
        let src = "{\"ring\":{\"base\":\"Z\",\"k\":1},\n \"module\":{\"gens\":1,\"relations\":[[\"x + q\"]]}}";
        match Problem::from_json(src, "f.json").unwrap_err() {
            CliError::Parse { line, column, msg, .. } => {
                assert_eq!(line, 2);
                // the literal's quote is at column 35, the bad token is its 5th character
                assert_eq!(column, 35 + 5);
                assert!(msg.contains("module.relations[0][0]"));
            }
            e => panic!("unexpected {e:?}"),
        }
        match Problem::from_json("{\"ring\": {\"base\": \"Z\",\n \"k\": }}", "f.json").unwrap_err() {
            CliError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn builtin_v0() {
        let p = Problem::from_json(r#"{"ring":{"base":"Z","k":2},"V0":{"builtin":"Z_plus_nS","n":3}}"#, "t").unwrap();
        assert_eq!(p.v0.plus_multiple, Some(3u32.into()));
        let f = p.to_file();
        assert_eq!(Problem::from_file(&f).unwrap().to_file(), f);
        assert!(Problem::from_json(r#"{"ring":{"base":"Q","k":1},"V0":{"builtin":"Z_plus_nS","n":3}}"#, "t").is_err());
    }
}
