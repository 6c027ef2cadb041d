//! The JSON input document: a complex, a 1-cocycle and the coefficient field.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use super::form::{OneForm, Q};
use super::CoverError;
use crate::fieldlin::FieldSpec;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct ComplexDoc {
    pub vertices: Vec<u64>,
    /// Simplices keyed by dimension; vertex tuples use the labels above.
    pub simplices: BTreeMap<usize, Vec<Vec<u64>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeValue {
    pub edge: [u64; 2],
    pub value: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct Flags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_manifold: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct InputDoc {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub complex: ComplexDoc,
    pub form: Vec<EdgeValue>,
    #[serde(default)]
    pub flags: Flags,
}

/// A parsed input: labels map internal vertex indices back to the document.
#[derive(Clone, Debug)]
pub struct Input {
    pub field: FieldSpec,
    pub complex: SimplicialComplex,
    pub form: OneForm,
    pub closed_manifold: bool,
    pub labels: Vec<u64>,
}

/// Parse an exact rational written as `"n"` or `"n/d"`.
pub fn parse_rational(s: &str) -> Result<Q, CoverError> {
    let t = s.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(CoverError::BadInput(format!("`{s}` is not an exact rational")));
    }
    Q::from_str(t).map_err(|_| CoverError::BadInput(format!("`{s}` is not an exact rational")))
}

/// Always `num/den`, integers included.
pub fn format_rational(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

impl InputDoc {
    pub fn parse(text: &str) -> Result<Self, CoverError> {
        serde_json::from_str(text).map_err(|e| CoverError::BadInput(e.to_string()))
    }

    pub fn field_spec(&self) -> Result<FieldSpec, CoverError> {
        match self.field.to_ascii_lowercase().as_str() {
            "q" | "rationals" => Ok(FieldSpec::Rationals),
            "fp" => {
                let p = self
                    .p
                    .ok_or_else(|| CoverError::BadInput("field Fp needs a prime `p`".into()))?;
                crate::fieldlin::PrimeField::new(p)
                    .map(|_| FieldSpec::Prime(p))
                    .map_err(|e| CoverError::BadInput(e.to_string()))
            }
            other => other
                .parse::<FieldSpec>()
                .map_err(|e| CoverError::BadInput(e.to_string())),
        }
    }

    pub fn to_input(&self) -> Result<Input, CoverError> {
        let field = self.field_spec()?;
        let labels = self.complex.vertices.clone();
        let mut pos = BTreeMap::new();
        for (i, v) in labels.iter().enumerate() {
            if pos.insert(*v, i).is_some() {
                return Err(CoverError::BadInput(format!("duplicate vertex {v}")));
            }
        }
        let lookup = |v: &u64| {
            pos.get(v)
                .copied()
                .ok_or_else(|| CoverError::BadInput(format!("unknown vertex {v}")))
        };
        let mut simplices = Vec::new();
        for (d, list) in &self.complex.simplices {
            for s in list {
                if s.len() != d + 1 {
                    return Err(CoverError::BadInput(format!("simplex {s:?} listed in dimension {d}")));
                }
                simplices.push(s.iter().map(lookup).collect::<Result<Vec<_>, _>>()?);
            }
        }
        let complex = SimplicialComplex::new(labels.len(), simplices)?;
        let entries = self
            .form
            .iter()
            .map(|e| Ok(((lookup(&e.edge[0])?, lookup(&e.edge[1])?), parse_rational(&e.value)?)))
            .collect::<Result<Vec<_>, CoverError>>()?;
        let form = OneForm::from_oriented(&complex, &entries)?;
        Ok(Input {
            field,
            complex,
            form,
            closed_manifold: self.flags.closed_manifold.unwrap_or(false),
            labels,
        })
    }

    /// Document for a complex on vertices `0..n` with the given form.
    pub fn from_parts(field: FieldSpec, complex: &SimplicialComplex, form: &OneForm, closed_manifold: bool) -> Self {
        let (field, p) = match field {
            FieldSpec::Rationals => ("Q".to_string(), None),
            FieldSpec::Prime(p) => ("Fp".to_string(), Some(p)),
        };
        let mut simplices = BTreeMap::new();
        for d in 1..=complex.dim() {
            simplices.insert(
                d,
                complex
                    .simplices(d)
                    .iter()
                    .map(|s| s.iter().map(|&v| v as u64).collect())
                    .collect(),
            );
        }
        let form = complex
            .edges()
            .iter()
            .zip(&form.values)
            .map(|(e, x)| EdgeValue {
                edge: [e[0] as u64, e[1] as u64],
                value: format_rational(x),
            })
            .collect();
        InputDoc {
            field,
            p,
            complex: ComplexDoc {
                vertices: (0..complex.n_vertices() as u64).collect(),
                simplices,
            },
            form,
            flags: Flags {
                closed_manifold: closed_manifold.then_some(true),
            },
        }
    }
}
