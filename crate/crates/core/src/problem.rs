//! The `logfree-problem/1` JSON input format.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::criterion::{Block, Gamma, SequenceSpec};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{DetMethod, PolyMatrix};
use crate::parse::parse_poly;
use crate::poly::{MonomialOrder, Poly, Ring};

pub const PROBLEM_SCHEMA: &str = "logfree-problem/1";

/// Row-major grid of polynomial strings.
pub type Grid = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaSpec {
    Euler,
    /// Variable-name groups, one Euler column each.
    BlockEuler(Vec<Vec<String>>),
    Explicit(Grid),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    pub variables: Vec<String>,
    pub polys: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<MonomialOrder>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syzygy_degree_bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assume_independent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<DetMethod>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }

    /// `other` wins wherever it is set.
    pub fn overridden_by(&self, other: &Options) -> Options {
        Options {
            order: other.order.or(self.order),
            syzygy_degree_bound: other.syzygy_degree_bound.or(self.syzygy_degree_bound),
            assume_independent: other.assume_independent.or(self.assume_independent),
            method: other.method.or(self.method),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub schema: String,
    pub field: FieldSpec,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sequence: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<Grid>,
    /// Needed only when a column of `nu` is zero.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_column_degrees: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockSpec>>,
    /// Input of `divisor-of-map` and `syzygies`, in place of the Jacobian.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Grid>,
    /// Right factor for `divisor-of-map`: also reports `matrix · compose_with`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose_with: Option<Grid>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

fn strings<S: AsRef<str>>(xs: &[S]) -> Vec<String> {
    xs.iter().map(|s| s.as_ref().to_string()).collect()
}

pub fn grid_of(m: &PolyMatrix) -> Grid {
    m.to_strings()
}

impl Problem {
    pub fn new<S: AsRef<str>>(field: FieldSpec, variables: &[S]) -> Self {
        Problem {
            schema: PROBLEM_SCHEMA.to_string(),
            field,
            variables: strings(variables),
            sequence: Vec::new(),
            nu: None,
            nu_column_degrees: None,
            gamma: None,
            blocks: None,
            matrix: None,
            compose_with: None,
            options: Options::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Problem = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("problem file: {e}")))?;
        if p.schema != PROBLEM_SCHEMA {
            return Err(Error::InvalidInput(format!("unsupported schema `{}`", p.schema)));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem serializes")
    }

    pub fn ring(&self, opts: &Options) -> Result<Arc<Ring>> {
        let order = opts.order.unwrap_or_default();
        if matches!(order, MonomialOrder::Block { .. }) {
            return Err(Error::InvalidInput("block orders are internal".into()));
        }
        if let FieldSpec::PrimeField { p } = self.field {
            FieldSpec::prime(p)?;
        }
        let mut seen = std::collections::HashSet::new();
        for v in &self.variables {
            if !seen.insert(v) {
                return Err(Error::InvalidInput(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring::from_names(self.field, self.variables.clone(), order))
    }

    pub fn polys(&self, ring: &Arc<Ring>) -> Result<Vec<Poly>> {
        self.sequence.iter().map(|s| parse_poly(s, ring)).collect()
    }

    pub fn sequence(&self, ring: &Arc<Ring>) -> Result<SequenceSpec> {
        SequenceSpec::new(self.polys(ring)?)
    }

    pub fn nu(&self, ring: &Arc<Ring>) -> Result<Option<PolyMatrix>> {
        let Some(g) = &self.nu else { return Ok(None) };
        let m = PolyMatrix::parse(ring, g)?;
        Ok(Some(match &self.nu_column_degrees {
            Some(d) => {
                if d.len() != m.cols() {
                    return Err(Error::LengthMismatch { expected: m.cols(), got: d.len() });
                }
                let rows = m.rows();
                m.with_degrees(vec![0; rows], d.clone())?
            }
            None => m,
        }))
    }

    pub fn gamma(&self, ring: &Arc<Ring>) -> Result<Gamma> {
        Ok(match &self.gamma {
            None | Some(GammaSpec::Euler) => Gamma::Euler,
            Some(GammaSpec::BlockEuler(groups)) => Gamma::BlockEuler(
                groups
                    .iter()
                    .map(|g| {
                        g.iter().map(|v| ring.var_index(v).ok_or_else(|| Error::InvalidInput(format!("unknown variable `{v}`")))).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<_>>()?,
            ),
            Some(GammaSpec::Explicit(g)) => Gamma::Explicit(PolyMatrix::parse(ring, g)?),
        })
    }

    pub fn blocks(&self, ring: &Arc<Ring>) -> Result<Option<Vec<Block>>> {
        let Some(bs) = &self.blocks else { return Ok(None) };
        Ok(Some(
            bs.iter()
                .map(|b| Ok(Block { vars: b.variables.clone(), polys: b.polys.iter().map(|s| parse_poly(s, ring)).collect::<Result<_>>()? }))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn grid(&self, g: &Option<Grid>, ring: &Arc<Ring>) -> Result<Option<PolyMatrix>> {
        g.as_ref().map(|g| PolyMatrix::parse(ring, g)).transpose()
    }
}
