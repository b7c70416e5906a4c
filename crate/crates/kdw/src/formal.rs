//! Formal integer combinations of invariant terms, with canonical
//! ordering and deterministic text/JSON rendering.
//!
//! A term is the zero element "o", a vector in transform coordinates, a
//! single quotient coordinate, or a triple of quotient coordinates (one
//! per exceptional fiber). Vectors whose entries are all zero collapse
//! to "o" on insertion.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigUint, Integer, One};
use serde_json::{json, Value};

use crate::cyclicrep::XiVector;
use crate::error::{Error, Result};
use crate::exactnum::ModOneOdd;
use crate::induction::QuotientCoord;

/// Renders entries over their common denominator: "(2,8,8)/9".
pub(crate) fn render_vector(entries: &[ModOneOdd]) -> String {
    let den = entries
        .iter()
        .fold(BigUint::one(), |acc, e| acc.lcm(e.denom()));
    let nums: Vec<String> = entries
        .iter()
        .map(|e| (e.numer() * (&den / e.denom())).to_string())
        .collect();
    format!("({})/{}", nums.join(","), den)
}

/// One summand of the invariant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Xi(XiVector),
    Quot(QuotientCoord),
    Triple([QuotientCoord; 3]),
}

impl Term {
    fn normalized(self) -> Term {
        let is_zero = match &self {
            Term::Zero => true,
            Term::Xi(v) => v.entries().iter().all(ModOneOdd::is_zero),
            Term::Quot(q) => q.entries().iter().all(ModOneOdd::is_zero),
            Term::Triple(t) => t
                .iter()
                .flat_map(|q| q.entries().iter())
                .all(ModOneOdd::is_zero),
        };
        if is_zero {
            Term::Zero
        } else {
            self
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Term::Zero => json!("o"),
            Term::Xi(v) => Value::Array(
                v.entries()
                    .iter()
                    .map(|e| Value::String(e.to_string()))
                    .collect(),
            ),
            Term::Quot(q) => q.to_json(),
            Term::Triple(t) => Value::Array(t.iter().map(QuotientCoord::to_json).collect()),
        }
    }

    /// Inverse of `to_json`, dispatching on the value's shape.
    pub fn from_json(v: &Value) -> Result<Term> {
        match v {
            Value::String(s) if s == "o" => Ok(Term::Zero),
            Value::Object(_) => Ok(Term::Quot(QuotientCoord::from_json(v)?)),
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_string) => {
                let entries = items
                    .iter()
                    .map(|i| i.as_str().unwrap().parse::<ModOneOdd>())
                    .collect::<Result<Vec<_>>>()?;
                Ok(Term::Xi(XiVector::from_entries(entries)?))
            }
            Value::Array(items) if items.len() == 3 => {
                let mut qs = items.iter().map(QuotientCoord::from_json);
                Ok(Term::Triple([
                    qs.next().unwrap()?,
                    qs.next().unwrap()?,
                    qs.next().unwrap()?,
                ]))
            }
            other => Err(Error::Parse(format!("unrecognized term shape: {other}"))),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Zero => write!(f, "o"),
            Term::Xi(v) => write!(f, "{}", render_vector(v.entries())),
            Term::Quot(q) => write!(f, "{q}"),
            Term::Triple(t) => write!(f, "({}, {}, {})", t[0], t[1], t[2]),
        }
    }
}

/// An integer-multiplicity multiset of terms — the invariant's value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Term, i64>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    /// Merges `coeff` copies of `term`; zero net multiplicities vanish.
    pub fn add_term(&mut self, term: Term, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let term = term.normalized();
        let entry = self.terms.entry(term).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            let term = self
                .terms
                .iter()
                .find(|(_, &c)| c == 0)
                .map(|(t, _)| t.clone())
                .expect("just inserted");
            self.terms.remove(&term);
        }
    }

    pub fn coeff(&self, term: &Term) -> i64 {
        self.terms.get(term).copied().unwrap_or(0)
    }

    /// Sum of all multiplicities — for invariants, |Hom(π₁, G)|.
    pub fn total_mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, i64)> {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.iter()
                .map(|(t, c)| json!({ "coeff": c, "term": t.to_json() }))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<FormalSum> {
        let Value::Array(items) = v else {
            return Err(Error::Parse("a formal sum must be a JSON array".into()));
        };
        let mut sum = FormalSum::new();
        for item in items {
            let coeff = item
                .get("coeff")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("missing integer `coeff`".into()))?;
            let term = item
                .get("term")
                .ok_or_else(|| Error::Parse("missing `term`".into()))?;
            sum.add_term(Term::from_json(term)?, coeff);
        }
        Ok(sum)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (term, coeff) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if coeff == 1 {
                write!(f, "{term}")?;
            } else {
                write!(f, "{coeff}*{term}")?;
            }
        }
        Ok(())
    }
}
