//! Command-line surface: JSON jobs in, deterministic JSON reports out.
//!
//! Exit codes: 0 on success, 2 when a check fails or the input is structurally
//! invalid (for example a non-Poisson bivector), 1 on malformed input.

pub mod corpus;
pub mod input;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebroid::{
    bowtie, canonical_matched_pair, check_representation, compute_tensors, cotangent_algebroid,
    cotangent_realparts_check, nijenhuis_torsion_algebroid, realify_liealgebra, realparts_liealgebra_check,
    verify_algebroid, yao_isomorphism_check, AlgebroidChart, EndoOnAlgebroid, MatchedPairData,
};
use crate::cohomology::{assemble_total, betti, betti_oracle, dump_matrices, BettiReport, Method, Truncation};
use crate::error::{HpError, HpResult};
use crate::poisson::{
    decompose, foliation_rank, is_holomorphic_poisson, koszul_bracket, nijenhuis_torsion, pn_check, sharp_relation,
    EndoField,
};
use input::{parse_doc, parse_point, section_strings, terms_of, InputDoc};

#[derive(Parser, Debug)]
#[command(name = "holopoisson", version, about = "Exact holomorphic Poisson and Lie algebroid checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Job {
    /// Input JSON document.
    pub input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Sparse,
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ∂̄π = 0 and [π, π] = 0 for a (2,0) bivector.
    CheckPoisson(Job),
    /// Real and imaginary parts π_R, π_I.
    Decompose(Job),
    /// Poisson–Nijenhuis conditions: (π_I, J) from a complex π, or (π, N) on a real chart.
    PnCheck(Job),
    /// Nijenhuis torsion of `endo`, or of j on a realified Lie algebra.
    Torsion(Job),
    /// Koszul bracket [α, β]_π.
    Koszul(Job),
    /// Cotangent algebroid of π and its real/imaginary parts.
    Cotangent(Job),
    /// Canonical matched pair T^{0,1} and (T^{1,0})*_π: representations and F, S, T.
    MatchedPair(Job),
    /// The algebroid A ⋈ B of the canonical matched pair.
    Bowtie(Job),
    /// The map onto the Dirac structure of 𝒥_{4π}.
    YaoCheck(Job),
    /// Lie–Poisson bivector of a complex Lie algebra.
    LiePoisson(Job),
    /// Real and imaginary parts of a complex Lie algebra.
    RealpartsCheck(Job),
    /// Ranks of π_R♯ and π_I♯ at a point.
    FoliationRank {
        #[command(flatten)]
        job: Job,
        /// Real coordinates x1..xn, y1..yn.
        #[arg(long)]
        point: String,
    },
    /// Betti numbers of the truncated total complex of the canonical matched pair.
    Cohomology {
        #[command(flatten)]
        job: Job,
        #[arg(long, value_enum, default_value = "sparse")]
        method: MethodArg,
        #[arg(long, conflicts_with = "max_degree")]
        weight: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long)]
        dump_matrices: Option<PathBuf>,
    },
    /// Run every bundled corpus file against its declared verdicts.
    Selftest {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &HpError) -> i32 {
    match e {
        HpError::Structure(_) => 2,
        _ => 1,
    }
}

/// Parse arguments and run; never exits the process.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let output = match &cli.command {
        Command::Selftest { output } => output.clone(),
        Command::FoliationRank { job, .. } | Command::Cohomology { job, .. } => job.output.clone(),
        Command::CheckPoisson(j)
        | Command::Decompose(j)
        | Command::PnCheck(j)
        | Command::Torsion(j)
        | Command::Koszul(j)
        | Command::Cotangent(j)
        | Command::MatchedPair(j)
        | Command::Bowtie(j)
        | Command::YaoCheck(j)
        | Command::LiePoisson(j)
        | Command::RealpartsCheck(j) => j.output.clone(),
    };
    let result = dispatch(&cli.command);
    let elapsed = format!("elapsed_ms: {}\n", start.elapsed().as_millis());
    match result {
        Ok((report, verdict)) => {
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            let code = if verdict { 0 } else { 2 };
            match output {
                Some(path) => match std::fs::write(&path, &text) {
                    Ok(()) => Outcome { code, stdout: String::new(), stderr: elapsed },
                    Err(e) => {
                        Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) }
                    }
                },
                None => Outcome { code, stdout: text, stderr: elapsed },
            }
        }
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn load(path: &std::path::Path) -> HpResult<InputDoc> {
    let text = std::fs::read_to_string(path).map_err(|e| HpError::Parse(format!("{}: {e}", path.display())))?;
    parse_doc(&text)
}

fn dispatch(cmd: &Command) -> HpResult<(Value, bool)> {
    match cmd {
        Command::Selftest { .. } => corpus::selftest(),
        Command::FoliationRank { job, point } => {
            let doc = load(&job.input)?;
            let pi = doc.bivector()?;
            let p = parse_point(point)?;
            let r = foliation_rank(&pi, &p)?;
            Ok((
                json!({ "command": "foliation-rank", "point": p.iter().map(|v| v.to_string()).collect::<Vec<_>>(), "report": r }),
                true,
            ))
        }
        Command::Cohomology { job, method, weight, max_degree, dump_matrices: dump } => {
            let doc = load(&job.input)?;
            let truncation = match (weight, max_degree) {
                (Some(w), _) => Truncation::Weight(*w),
                (None, Some(d)) => Truncation::TotalDegree(*d),
                (None, None) => return Err(HpError::Truncation("pass --weight or --max-degree".into())),
            };
            let method = match method {
                MethodArg::Sparse => Method::Sparse,
                MethodArg::Oracle => Method::Oracle,
            };
            let v = cohomology_report(&doc, truncation, method, dump.as_deref())?;
            Ok((v, true))
        }
        Command::CheckPoisson(j) => check_poisson(&load(&j.input)?),
        Command::Decompose(j) => decompose_cmd(&load(&j.input)?),
        Command::PnCheck(j) => pn_cmd(&load(&j.input)?),
        Command::Torsion(j) => torsion_cmd(&load(&j.input)?),
        Command::Koszul(j) => {
            let doc = load(&j.input)?;
            let pi = doc.bivector()?;
            let b = koszul_bracket(&pi, &doc.form("alpha")?, &doc.form("beta")?)?;
            Ok((json!({ "command": "koszul", "chart": pi.chart(), "bracket": terms_of(&b) }), true))
        }
        Command::Cotangent(j) => cotangent_cmd(&load(&j.input)?),
        Command::MatchedPair(j) => matched_cmd(&load(&j.input)?),
        Command::Bowtie(j) => {
            let doc = load(&j.input)?;
            let mp = canonical_matched_pair(&doc.bivector()?)?;
            let alg = bowtie(&mp)?;
            let rep = verify_algebroid(&alg);
            Ok((
                json!({ "command": "bowtie", "algebroid": algebroid_json(&alg), "verify": rep, "verdict": rep.ok() }),
                rep.ok(),
            ))
        }
        Command::YaoCheck(j) => {
            let doc = load(&j.input)?;
            let r = yao_isomorphism_check(&doc.bivector()?)?;
            Ok((json!({ "command": "yao-check", "report": r, "verdict": r.all() }), r.all()))
        }
        Command::LiePoisson(j) => {
            let doc = load(&j.input)?;
            let pi = crate::algebroid::lie_poisson(&doc.lie()?)?;
            let hp = is_holomorphic_poisson(&pi)?;
            Ok((
                json!({ "command": "lie-poisson", "chart": pi.chart(), "pi": terms_of(&pi), "holomorphic_poisson": hp }),
                true,
            ))
        }
        Command::RealpartsCheck(j) => {
            let doc = load(&j.input)?;
            let r = realparts_liealgebra_check(&doc.lie()?)?;
            Ok((json!({ "command": "realparts-check", "report": r, "verdict": r.ok() }), r.ok()))
        }
    }
}

fn check_poisson(doc: &InputDoc) -> HpResult<(Value, bool)> {
    let pi = doc.bivector()?;
    let r = is_holomorphic_poisson(&pi)?;
    let v = json!({
        "command": "check-poisson",
        "chart": pi.chart(),
        "pi": terms_of(&pi),
        "dbar_zero": r.dbar_zero,
        "schouten_zero": r.schouten_zero,
        "verdict": r.is_poisson(),
    });
    Ok((v, r.is_poisson()))
}

fn decompose_cmd(doc: &InputDoc) -> HpResult<(Value, bool)> {
    let pi = doc.bivector()?;
    let pair = decompose(&pi)?;
    let rel = sharp_relation(&pair.pi_r, &pair.pi_i)?;
    let v = json!({
        "command": "decompose",
        "chart": pair.pi_r.chart(),
        "pi_r": terms_of(&pair.pi_r),
        "pi_i": terms_of(&pair.pi_i),
        "sharp_relation": rel,
    });
    Ok((v, true))
}

fn pn_cmd(doc: &InputDoc) -> HpResult<(Value, bool)> {
    let pi = doc.bivector()?;
    if pi.chart().is_complex() {
        let pair = decompose(&pi)?;
        let j = EndoField::standard_j(pair.pi_i.chart())?;
        let r = pn_check(&pair.pi_i, &j)?;
        let rel = sharp_relation(&pair.pi_r, &pair.pi_i)?;
        let hp = is_holomorphic_poisson(&pi)?.is_poisson();
        let ok = r.all() && rel;
        let v = json!({
            "command": "pn-check",
            "mode": "pi_i_with_j",
            "report": r,
            "sharp_relation": rel,
            "holomorphic_poisson": hp,
            "verdict": ok,
        });
        return Ok((v, ok));
    }
    let n = match doc.endo()? {
        Some(n) => n,
        None => EndoField::standard_j(pi.chart())?,
    };
    let r = pn_check(&pi, &n)?;
    Ok((json!({ "command": "pn-check", "mode": "pi_with_endo", "report": r, "verdict": r.all() }), r.all()))
}

fn torsion_cmd(doc: &InputDoc) -> HpResult<(Value, bool)> {
    if doc.lie_algebra.is_some() {
        let alg = realify_liealgebra(&doc.lie()?)?;
        let j = EndoOnAlgebroid::standard_j(&alg)?;
        let t = nijenhuis_torsion_algebroid(&alg, &j)?;
        let values: Vec<Value> = t
            .values
            .iter()
            .filter(|(_, s)| !crate::algebroid::section::is_zero(s))
            .map(|((a, b), s)| json!({ "a": a, "b": b, "value": section_strings(s) }))
            .collect();
        let v = json!({ "command": "torsion", "mode": "realified_lie_algebra", "rank": alg.rank(), "nonzero": values, "torsion_zero": t.is_zero() });
        return Ok((v, true));
    }
    let n = doc.endo()?.ok_or_else(|| HpError::Parse("missing field `endo`".into()))?;
    let t = nijenhuis_torsion(&n);
    let chart = n.chart();
    let values: Vec<Value> = t
        .entries()
        .into_iter()
        .map(|(a, b, c, f)| json!({ "a": chart.var_name(a), "b": chart.var_name(b), "component": chart.var_name(c), "value": f.to_string() }))
        .collect();
    Ok((
        json!({ "command": "torsion", "mode": "endo", "chart": chart, "nonzero": values, "torsion_zero": t.is_zero() }),
        true,
    ))
}

fn algebroid_json(a: &AlgebroidChart) -> Value {
    let anchors: Vec<Value> = a.anchor().iter().map(|x| json!(terms_of(x))).collect();
    let mut brackets = Vec::new();
    for i in 0..a.rank() {
        for j in i + 1..a.rank() {
            let s = a.structure(i, j);
            if !crate::algebroid::section::is_zero(s) {
                brackets.push(json!({ "i": i, "j": j, "value": section_strings(s) }));
            }
        }
    }
    json!({ "chart": a.chart(), "rank": a.rank(), "anchor": anchors, "brackets": brackets })
}

fn cotangent_cmd(doc: &InputDoc) -> HpResult<(Value, bool)> {
    let pi = doc.bivector()?;
    let alg = cotangent_algebroid(&pi)?;
    let rep = verify_algebroid(&alg);
    let mut v = json!({ "command": "cotangent", "algebroid": algebroid_json(&alg), "verify": rep });
    let mut ok = rep.ok();
    if pi.chart().is_complex() {
        let r = cotangent_realparts_check(&pi)?;
        ok &= r.ok();
        v["realparts"] = json!(r);
    }
    v["verdict"] = json!(ok);
    Ok((v, ok))
}

fn matched_cmd(doc: &InputDoc) -> HpResult<(Value, bool)> {
    let pi = doc.bivector()?;
    let mp = canonical_matched_pair(&pi)?;
    let (v, ok) = matched_summary(&mp);
    Ok((v, ok))
}

fn matched_summary(mp: &MatchedPairData) -> (Value, bool) {
    let ab = check_representation(&mp.nabla_ab);
    let ba = check_representation(&mp.nabla_ba);
    let t = compute_tensors(mp);
    let ok = ab.ok() && ba.ok() && t.is_zero();
    let v = json!({
        "command": "matched-pair",
        "rank_a": mp.a.rank(),
        "rank_b": mp.b.rank(),
        "a_on_b": ab,
        "b_on_a": ba,
        "f_nonzero": t.f.len(),
        "s_nonzero": t.s.len(),
        "t_nonzero": t.t.len(),
        "verdict": ok,
    });
    (v, ok)
}

/// Betti report for the canonical matched pair of the document's bivector.
pub fn cohomology_report(
    doc: &InputDoc,
    truncation: Truncation,
    method: Method,
    dump: Option<&std::path::Path>,
) -> HpResult<Value> {
    let pi = doc.bivector()?;
    let mp = canonical_matched_pair(&pi)?;
    let report: BettiReport = match method {
        Method::Sparse => betti(&mp, truncation)?,
        Method::Oracle => betti_oracle(&mp, truncation)?,
    };
    let mut v = json!({ "command": "cohomology", "chart": pi.chart(), "report": report });
    if let Some(dir) = dump {
        let cx = assemble_total(&mp, truncation)?;
        let names = dump_matrices(&cx, dir).map_err(|e| HpError::Parse(format!("{}: {e}", dir.display())))?;
        v["matrices"] = json!(names);
    }
    Ok(v)
}
