//! Bundled example documents and the self-test over their declared verdicts.

use serde_json::{json, Value};

use super::input::{graded, parse_doc, InputDoc};
use crate::algebroid::{canonical_matched_pair, compute_tensors, realparts_liealgebra_check, yao_isomorphism_check};
use crate::cohomology::{betti, betti_oracle, Truncation};
use crate::error::{HpError, HpResult};
use crate::multivec::Multivector;
use crate::poisson::{decompose, is_holomorphic_poisson, pn_check, sharp_relation, EndoField};

/// `(file name, contents)` for every corpus document.
pub const FILES: &[(&str, &str)] = &[
    ("antiholomorphic.json", include_str!("../../corpus/antiholomorphic.json")),
    ("constant_symplectic.json", include_str!("../../corpus/constant_symplectic.json")),
    ("darboux_n1.json", include_str!("../../corpus/darboux_n1.json")),
    ("heisenberg.json", include_str!("../../corpus/heisenberg.json")),
    ("quadratic.json", include_str!("../../corpus/quadratic.json")),
    ("sl2.json", include_str!("../../corpus/sl2.json")),
    ("zero.json", include_str!("../../corpus/zero.json")),
];

pub fn load(name: &str) -> HpResult<InputDoc> {
    let (_, text) =
        FILES.iter().find(|(n, _)| *n == name).ok_or_else(|| HpError::Parse(format!("no corpus file `{name}`")))?;
    parse_doc(text)
}

/// Each declared verdict of one document as `(check name, passed)`.
pub fn check_doc(doc: &InputDoc) -> HpResult<Vec<(String, bool)>> {
    let Some(exp) = &doc.expect else { return Ok(Vec::new()) };
    let mut out = Vec::new();
    let pi = doc.bivector()?;
    if let Some(want) = exp.holomorphic_poisson {
        out.push(("holomorphic_poisson".into(), is_holomorphic_poisson(&pi)?.is_poisson() == want));
    }
    if exp.pi_r.is_some() || exp.pi_i.is_some() || exp.pn.is_some() {
        let pair = decompose(&pi)?;
        let real = pair.pi_r.chart();
        if let Some(t) = &exp.pi_r {
            out.push(("pi_r".into(), graded::<crate::multivec::Vectorial>(real, t)? == pair.pi_r));
        }
        if let Some(t) = &exp.pi_i {
            out.push(("pi_i".into(), graded::<crate::multivec::Vectorial>(real, t)? == pair.pi_i));
        }
        if let Some(want) = exp.pn {
            let j = EndoField::standard_j(real)?;
            let got = pn_check(&pair.pi_i, &j)?.all() && sharp_relation(&pair.pi_r, &pair.pi_i)?;
            out.push(("pn".into(), got == want));
        }
    }
    if let Some(want) = exp.matched_pair {
        out.push(("matched_pair".into(), matched(&pi)? == want));
    }
    if let Some(want) = exp.yao {
        out.push(("yao".into(), yao_isomorphism_check(&pi)?.all() == want));
    }
    if let Some(want) = exp.realparts {
        out.push(("realparts".into(), realparts_liealgebra_check(&doc.lie()?)?.ok() == want));
    }
    for b in &exp.cohomology {
        let (tr, label) = match (b.weight, b.max_degree) {
            (Some(w), None) => (Truncation::Weight(w), format!("betti_w{w}_h{}", b.degree)),
            (None, Some(d)) => (Truncation::TotalDegree(d), format!("betti_deg{d}_h{}", b.degree)),
            _ => return Err(HpError::Parse("cohomology expectation needs exactly one of weight, max_degree".into())),
        };
        let mp = canonical_matched_pair(&pi)?;
        let s = betti(&mp, tr)?;
        let o = betti_oracle(&mp, tr)?;
        let got = s.totals.get(b.degree).map(|t| t.betti);
        out.push((label, got == Some(b.betti) && s.totals == o.totals && s.bidegrees == o.bidegrees));
    }
    Ok(out)
}

fn matched(pi: &Multivector) -> HpResult<bool> {
    let mp = canonical_matched_pair(pi)?;
    Ok(compute_tensors(&mp).is_zero())
}

pub fn selftest() -> HpResult<(Value, bool)> {
    let mut files = Vec::new();
    let mut all = true;
    for (name, text) in FILES {
        let checks = parse_doc(text).and_then(|d| check_doc(&d));
        let entry = match checks {
            Ok(c) => {
                let ok = c.iter().all(|(_, p)| *p);
                all &= ok;
                let map: serde_json::Map<String, Value> = c.into_iter().map(|(k, p)| (k, json!(p))).collect();
                json!({ "file": name, "checks": map, "pass": ok })
            }
            Err(e) => {
                all = false;
                json!({ "file": name, "error": e.to_string(), "pass": false })
            }
        };
        files.push(entry);
    }
    Ok((json!({ "command": "selftest", "files": files, "verdict": all }), all))
}
