//! JSON job documents and their conversion to library objects.

use serde::{Deserialize, Serialize};

use crate::algebroid::{lie_poisson, LieAlgebraData, Section};
use crate::error::{HpError, HpResult};
use crate::exactalg::{parse_gq, parse_poly, Chart, GQ};
use crate::multivec::{mask, Graded, Kind, Multivector};
use crate::poisson::EndoField;

/// One term `coeff · ∂_{frame}` (or `coeff · d frame` for forms); frame
/// entries are variable names such as `z1`, `zb2`, `x1`, `y1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub frame: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieSpec {
    pub rank: usize,
    /// `[i, j, k, c]`: `[e_i, e_j]` has `c` as its `e_k` coefficient (0-based).
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default)]
    pub j: Option<Vec<Vec<String>>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiExpect {
    #[serde(default)]
    pub weight: Option<u32>,
    #[serde(default)]
    pub max_degree: Option<u32>,
    pub degree: usize,
    pub betti: usize,
}

/// Verdicts a corpus file declares for `selftest`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    #[serde(default)]
    pub holomorphic_poisson: Option<bool>,
    #[serde(default)]
    pub pi_r: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub pi_i: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub pn: Option<bool>,
    #[serde(default)]
    pub matched_pair: Option<bool>,
    #[serde(default)]
    pub yao: Option<bool>,
    #[serde(default)]
    pub realparts: Option<bool>,
    #[serde(default)]
    pub cohomology: Vec<BettiExpect>,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub chart: Option<Chart>,
    #[serde(default)]
    pub pi: Option<Vec<TermSpec>>,
    /// Rows of a tangent endomorphism; column `j` is the image of `∂_j`.
    #[serde(default)]
    pub endo: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub alpha: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub beta: Option<Vec<TermSpec>>,
    #[serde(default)]
    pub lie_algebra: Option<LieSpec>,
    #[serde(default)]
    pub expect: Option<Expect>,
}

/// Parse a document; malformed JSON reports line and column.
pub fn parse_doc(text: &str) -> HpResult<InputDoc> {
    serde_json::from_str(text).map_err(|e| HpError::Parse(format!("invalid input: {e}")))
}

impl InputDoc {
    pub fn chart(&self) -> HpResult<Chart> {
        let c = self.chart.ok_or_else(|| HpError::Parse("missing field `chart`".into()))?;
        if c.n > crate::exactalg::chart::MAX_DIM {
            return Err(HpError::Chart(format!("chart dimension {} is too large", c.n)));
        }
        Ok(c)
    }

    /// `pi` on the declared chart, or the Lie–Poisson structure of `lie_algebra`.
    pub fn bivector(&self) -> HpResult<Multivector> {
        match (&self.pi, &self.lie_algebra) {
            (Some(t), None) => graded(self.chart()?, t),
            (None, Some(_)) => lie_poisson(&self.lie()?),
            (Some(_), Some(_)) => Err(HpError::Parse("give either `pi` or `lie_algebra`, not both".into())),
            (None, None) => Err(HpError::Parse("missing field `pi`".into())),
        }
    }

    pub fn form(&self, which: &str) -> HpResult<crate::multivec::Form> {
        let terms = match which {
            "alpha" => &self.alpha,
            _ => &self.beta,
        };
        let t = terms.as_ref().ok_or_else(|| HpError::Parse(format!("missing field `{which}`")))?;
        graded(self.chart()?, t)
    }

    pub fn endo(&self) -> HpResult<Option<EndoField>> {
        let Some(rows) = &self.endo else { return Ok(None) };
        let c = self.chart()?;
        let m = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_poly(c, s)).collect::<HpResult<Vec<_>>>())
            .collect::<HpResult<Vec<_>>>()?;
        Ok(Some(EndoField::new(c, m)?))
    }

    pub fn lie(&self) -> HpResult<LieAlgebraData> {
        let spec = self.lie_algebra.as_ref().ok_or_else(|| HpError::Parse("missing field `lie_algebra`".into()))?;
        let triples =
            spec.structure.iter().map(|(i, j, k, c)| Ok((*i, *j, *k, parse_gq(c)?))).collect::<HpResult<Vec<_>>>()?;
        let g = LieAlgebraData::from_triples(spec.rank, &triples)?;
        match &spec.j {
            None => Ok(g),
            Some(rows) => {
                let j = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_gq(s)).collect::<HpResult<Vec<GQ>>>())
                    .collect::<HpResult<Vec<_>>>()?;
                g.with_j(j)
            }
        }
    }
}

/// Build a multivector or form from term specs.
pub fn graded<K: Kind>(chart: Chart, terms: &[TermSpec]) -> HpResult<Graded<K>> {
    let mut out = Graded::<K>::zero(chart);
    for t in terms {
        let mut m = 0u32;
        let mut sign = 1i64;
        for name in &t.frame {
            let s = chart.var_index(name)?;
            match mask::wedge_sign(m, 1 << s) {
                Some(x) => sign *= x,
                None => return Err(HpError::Parse(format!("repeated frame entry `{name}`"))),
            }
            m |= 1 << s;
        }
        out.add_signed(m, sign, &parse_poly(chart, &t.coeff)?);
    }
    Ok(out)
}

/// Canonical term list, the inverse of [`graded`].
pub fn terms_of<K: Kind>(x: &Graded<K>) -> Vec<TermSpec> {
    let chart = x.chart();
    let mut keys: Vec<(u32, String)> = x.terms().map(|(m, f)| (m, f.to_string())).collect();
    keys.sort_by_key(|(m, _)| mask::canonical_key(*m));
    keys.into_iter()
        .map(|(m, coeff)| TermSpec { frame: mask::bits(m).map(|s| chart.var_name(s)).collect(), coeff })
        .collect()
}

/// Section components as strings.
pub fn section_strings(s: &Section) -> Vec<String> {
    s.iter().map(|f| f.to_string()).collect()
}

/// `a,b,…` as exact scalars.
pub fn parse_point(s: &str) -> HpResult<Vec<GQ>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| parse_gq(t.trim())).collect()
}
