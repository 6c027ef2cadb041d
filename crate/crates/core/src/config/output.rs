//! Configuration documents: JSON with exact rationals as strings, CSV of
//! the 1-D points, and multiset differences between documents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::covercomplex::{format_rational, parse_rational, Q};

use super::run::DegreeResult;
use super::scan::Configuration2D;
use super::{ConfigError, Kind, Variant};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub r: usize,
    pub kind: Kind,
    pub variant: Variant,
    pub period: String,
    pub points2d: Vec<(String, String, usize)>,
    pub points1d: Vec<(String, usize)>,
    pub total: usize,
    pub lambda: Vec<(String, usize)>,
}

impl ConfigDoc {
    pub fn new(conf: &Configuration2D, lambda: &Configuration2D) -> Self {
        let one = conf.project();
        ConfigDoc {
            r: conf.r,
            kind: conf.kind,
            variant: conf.variant,
            period: format_rational(&conf.period),
            points2d: conf
                .points
                .iter()
                .map(|((a, b), m)| (format_rational(a), format_rational(b), *m))
                .collect(),
            points1d: one.points.iter().map(|(t, m)| (format_rational(t), *m)).collect(),
            total: one.total,
            lambda: lambda
                .points
                .iter()
                .map(|((a, _), m)| (format_rational(a), *m))
                .collect(),
        }
    }

    /// The δ and γ documents of one degree.
    pub fn from_result(res: &DegreeResult) -> [ConfigDoc; 2] {
        let c = &res.configs;
        [ConfigDoc::new(&c.delta, &c.lambda), ConfigDoc::new(&c.gamma, &c.lambda)]
    }

    pub fn file_stem(&self) -> String {
        let kind = match self.kind {
            Kind::Delta => "delta",
            Kind::Gamma => "gamma",
            Kind::Lambda => "lambda",
        };
        let variant = match self.variant {
            Variant::Standard => "standard",
            Variant::Bm => "bm",
        };
        format!("{kind}_r{}_{variant}", self.r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let doc: ConfigDoc = serde_json::from_str(text).map_err(|e| ConfigError::BadInput(e.to_string()))?;
        for (t, _) in &doc.points1d {
            parse_rational(t)?;
        }
        Ok(doc)
    }

    /// `t,multiplicity` rows.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["t", "multiplicity"]).expect("in-memory write");
        for (t, m) in &self.points1d {
            w.write_record([t.as_str(), &m.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flushed")).expect("utf-8")
    }

    fn multiset(&self) -> Result<BTreeMap<Q, usize>, ConfigError> {
        let mut m = BTreeMap::new();
        for (t, k) in &self.points1d {
            *m.entry(parse_rational(t)?).or_default() += k;
        }
        Ok(m)
    }
}

/// Points present with higher multiplicity in one document than the other.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultisetDiff {
    pub only_left: Vec<(Q, usize)>,
    pub only_right: Vec<(Q, usize)>,
}

impl MultisetDiff {
    pub fn is_empty(&self) -> bool {
        self.only_left.is_empty() && self.only_right.is_empty()
    }

    /// Symmetric difference of the 1-D points of two documents of the same
    /// degree and kind.
    pub fn between(left: &ConfigDoc, right: &ConfigDoc) -> Result<Self, ConfigError> {
        if left.r != right.r || left.kind != right.kind {
            return Err(ConfigError::BadInput(format!(
                "cannot compare degree {} {:?} with degree {} {:?}",
                left.r, left.kind, right.r, right.kind
            )));
        }
        let (l, r) = (left.multiset()?, right.multiset()?);
        let mut d = MultisetDiff::default();
        for (t, m) in &l {
            let n = r.get(t).copied().unwrap_or(0);
            if *m > n {
                d.only_left.push((t.clone(), m - n));
            }
        }
        for (t, m) in &r {
            let n = l.get(t).copied().unwrap_or(0);
            if *m > n {
                d.only_right.push((t.clone(), m - n));
            }
        }
        Ok(d)
    }
}
