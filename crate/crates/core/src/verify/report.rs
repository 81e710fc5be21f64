use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Named parameters of one check, e.g. `{"q": 2, "t": 1}`.
pub type Params = BTreeMap<String, f64>;

/// Outcome of one identity check.
///
/// `pass` is `abs_err <= tol || rel_err <= tol` with
/// `rel_err = abs_err / max(1, |rhs|)`. Non-finite values serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: Params,
    #[serde(with = "nullable")]
    pub lhs: f64,
    #[serde(with = "nullable")]
    pub rhs: f64,
    #[serde(with = "nullable")]
    pub abs_err: f64,
    #[serde(with = "nullable")]
    pub rel_err: f64,
    pub tol: f64,
    pub pass: bool,
    pub notes: String,
}

impl CheckReport {
    pub fn new(
        check_id: impl Into<String>,
        params: Params,
        lhs: f64,
        rhs: f64,
        tol: f64,
        notes: impl Into<String>,
    ) -> Self {
        let abs_err = (lhs - rhs).abs();
        let rel_err = abs_err / rhs.abs().max(1.0);
        Self {
            check_id: check_id.into(),
            params,
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            pass: abs_err <= tol || rel_err <= tol,
            notes: notes.into(),
        }
    }

    /// A report for a check whose evaluation raised `err`.
    pub fn failed(check_id: impl Into<String>, params: Params, tol: f64, err: &Error) -> Self {
        Self {
            check_id: check_id.into(),
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol,
            pass: false,
            notes: err.to_string(),
        }
    }

    /// Marks the report failed with an explanation, keeping the numbers.
    pub(crate) fn fail_with(mut self, reason: impl AsRef<str>) -> Self {
        self.pass = false;
        if self.notes.is_empty() {
            self.notes = reason.as_ref().to_string();
        } else {
            self.notes = format!("{}; {}", self.notes, reason.as_ref());
        }
        self
    }

    /// Ordering by check id, then parameters.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.check_id
            .cmp(&other.check_id)
            .then_with(|| cmp_params(&self.params, &other.params))
    }
}

pub(crate) fn cmp_params(a: &Params, b: &Params) -> Ordering {
    let mut left = a.iter();
    let mut right = b.iter();
    loop {
        match (left.next(), right.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some((ka, va)), Some((kb, vb))) => {
                let ord = ka.cmp(kb).then_with(|| va.total_cmp(vb));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
        }
    }
}

mod nullable {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            ser.serialize_f64(*v)
        } else {
            ser.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(de)?.unwrap_or(f64::NAN))
    }
}
