use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::normal::universal_form;
use super::syntax::{Formula, Term};
use crate::cube::{full_mask, FinSet, GroundSet, Neighborhood, Universe};
use crate::error::{Error, Result};
use crate::families::{family_count, FiniteFamily};

/// Largest universe a structure may have (its family fits in a `u64`).
pub const MAX_STRUCTURE_N: u8 = 6;

/// Largest universe for [`defined_class`].
pub const MAX_CLASS_N: u8 = 3;

/// The powerset algebra of `X_n` with `P` read as a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Structure {
    n: u8,
    /// Bit `s` set when the subset with mask `s` is in the family.
    family: u64,
}

impl Structure {
    pub fn new(family: &FiniteFamily) -> Result<Self> {
        match family.universe() {
            Universe::Finite(n) if n <= MAX_STRUCTURE_N => Ok(Structure {
                n,
                family: family.to_mask().expect("n is small"),
            }),
            Universe::Finite(n) => Err(Error::Resource(format!(
                "structures are limited to n <= {MAX_STRUCTURE_N}, got {n}"
            ))),
            Universe::Nat => Err(Error::Unsupported("structures are finite".into())),
        }
    }

    pub fn from_mask(n: u8, family: u64) -> Result<Self> {
        if n > MAX_STRUCTURE_N {
            return Err(Error::Resource(format!(
                "structures are limited to n <= {MAX_STRUCTURE_N}, got {n}"
            )));
        }
        if n < MAX_STRUCTURE_N && family >> (1u32 << n) != 0 {
            return Err(Error::Validation("family mask names subsets outside X_n".into()));
        }
        Ok(Structure { n, family })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn family_mask(&self) -> u64 {
        self.family
    }

    pub fn family(&self) -> FiniteFamily {
        FiniteFamily::from_mask(self.n, self.family)
    }

    fn has(&self, set: u32) -> bool {
        self.family >> set & 1 == 1
    }

    fn subsets(&self) -> u32 {
        1 << self.n
    }
}

/// Values for variables, as subsets of `X_n`.
pub type Assignment = Vec<(String, FinSet)>;

struct Env<'a> {
    s: &'a Structure,
    vars: Vec<(&'a str, u32)>,
}

impl<'a> Env<'a> {
    fn term(&self, t: &Term) -> Result<u32> {
        Ok(match t {
            Term::Var(v) => self
                .vars
                .iter()
                .rev()
                .find(|(name, _)| name == v)
                .map(|&(_, val)| val)
                .ok_or_else(|| Error::FreeVariable(v.clone()))?,
            Term::Zero => 0,
            Term::One => full_mask(self.s.n),
            Term::Meet(a, b) => self.term(a)? & self.term(b)?,
            Term::Join(a, b) => self.term(a)? | self.term(b)?,
            Term::Compl(a) => !self.term(a)? & full_mask(self.s.n),
        })
    }

    fn formula(&mut self, f: &'a Formula) -> Result<bool> {
        Ok(match f {
            Formula::Eq(a, b) => self.term(a)? == self.term(b)?,
            Formula::Leq(a, b) => {
                let a = self.term(a)?;
                a & self.term(b)? == a
            }
            Formula::P(t) => self.s.has(self.term(t)?),
            Formula::Not(a) => !self.formula(a)?,
            Formula::And(a, b) => self.formula(a)? && self.formula(b)?,
            Formula::Or(a, b) => self.formula(a)? || self.formula(b)?,
            Formula::Implies(a, b) => !self.formula(a)? || self.formula(b)?,
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let universal = matches!(f, Formula::Forall(..));
                let mut result = universal;
                for val in 0..self.s.subsets() {
                    self.vars.push((v, val));
                    let r = self.formula(a);
                    self.vars.pop();
                    if r? != universal {
                        result = !universal;
                        break;
                    }
                }
                result
            }
        })
    }
}

/// Truth of `f` in `s` under `assignment`, quantifiers ranging over every
/// subset of `X_n`.
pub fn eval(s: &Structure, f: &Formula, assignment: &Assignment) -> Result<bool> {
    if let Some((v, bad)) = assignment.iter().find(|(_, a)| a.n() != s.n) {
        return Err(Error::UniverseMismatch(format!(
            "`{v}` is assigned a subset of X_{}, structure is over X_{}",
            bad.n(),
            s.n
        )));
    }
    let mut env = Env {
        s,
        vars: assignment.iter().map(|(v, a)| (v.as_str(), a.mask())).collect(),
    };
    env.formula(f)
}

/// Truth of a sentence.
pub fn holds(s: &Structure, f: &Formula) -> Result<bool> {
    eval(s, f, &Vec::new())
}

/// Every family over `X_n` in which the sentence holds, in mask order.
pub fn defined_class(f: &Formula, n: u8) -> Result<Vec<FiniteFamily>> {
    Ok(defined_masks(f, n)?
        .into_iter()
        .map(|m| FiniteFamily::from_mask(n, m))
        .collect())
}

/// [`defined_class`] as family masks.
pub fn defined_masks(f: &Formula, n: u8) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_CLASS_N {
        return Err(Error::Resource(format!(
            "defined classes are enumerated for 1 <= n <= {MAX_CLASS_N}, got {n}"
        )));
    }
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::FreeVariable(v));
    }
    let hits: Result<Vec<Option<u64>>> = (0..family_count(n))
        .into_par_iter()
        .map(|m| {
            let s = Structure { n, family: m };
            Ok(holds(&s, f)?.then_some(m))
        })
        .collect();
    Ok(hits?.into_iter().flatten().collect())
}

/// A falsifying assignment for a universal sentence, and a neighborhood of
/// the family in which every member is falsified by the same assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub sentence: String,
    pub n: u8,
    pub family: FiniteFamily,
    pub assignment: Assignment,
    pub neighborhood: Neighborhood,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        let assignment: Map<String, Value> = self
            .assignment
            .iter()
            .map(|(v, a)| (v.clone(), json!(a.elements())))
            .collect();
        json!({
            "sentence": self.sentence,
            "n": self.n,
            "family": self.family.to_json(),
            "assignment": assignment,
            "neighborhood": self.neighborhood.to_json(),
        })
    }
}

/// Certifies that `s` lies outside the class defined by a universal
/// sentence.
///
/// The first falsifying assignment (variables in prefix order, each
/// running through subset masks) fixes the value `d` of every `P(t)` in
/// the matrix; `d` becomes a positive constraint when it is in the family
/// and a negative one otherwise. Any family meeting those constraints gives
/// every `P`-literal the same truth value, so it is falsified too.
pub fn certify_exclusion(f: &Formula, s: &Structure) -> Result<Certificate> {
    let form = universal_form(f)?;
    let matrix = form.matrix();
    let k = form.vars.len();
    let total = (s.subsets() as u64).pow(k as u32);
    let p_terms = form.p_terms();
    for idx in 0..total {
        let mut rest = idx;
        let mut vals = vec![0u32; k];
        for slot in vals.iter_mut().rev() {
            *slot = (rest % s.subsets() as u64) as u32;
            rest /= s.subsets() as u64;
        }
        let mut env = Env {
            s,
            vars: form.vars.iter().map(String::as_str).zip(vals.iter().copied()).collect(),
        };
        if env.formula(&matrix)? {
            continue;
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for t in &p_terms {
            let d = env.term(t)?;
            let set = GroundSet::Finite(FinSet::new(s.n, d)?);
            if s.has(d) {
                pos.push(set);
            } else {
                neg.push(set);
            }
        }
        let neighborhood = Neighborhood::new(Universe::Finite(s.n), pos, neg)?;
        let assignment = form
            .vars
            .iter()
            .zip(vals)
            .map(|(v, m)| Ok((v.clone(), FinSet::new(s.n, m)?)))
            .collect::<Result<Assignment>>()?;
        return Ok(Certificate {
            sentence: f.to_string(),
            n: s.n,
            family: s.family(),
            assignment,
            neighborhood,
        });
    }
    Err(Error::Precondition(format!("the sentence holds in the structure: {f}")))
}

/// Which sentences hold, and a certificate for each that fails.
#[derive(Debug, Clone, PartialEq)]
pub struct CollectionReport {
    pub satisfied: Vec<usize>,
    pub certificates: Vec<(usize, Certificate)>,
}

impl CollectionReport {
    /// True when the structure satisfies every sentence.
    pub fn in_class(&self) -> bool {
        self.certificates.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "satisfied": self.satisfied,
            "certificates": self.certificates.iter().map(|(i, c)| {
                let mut v = c.to_json();
                v["index"] = json!(i);
                v
            }).collect::<Vec<_>>(),
            "in_class": self.in_class(),
        })
    }
}

pub fn check_collection(sentences: &[Formula], s: &Structure) -> Result<CollectionReport> {
    let mut satisfied = Vec::new();
    let mut certificates = Vec::new();
    for (i, f) in sentences.iter().enumerate() {
        universal_form(f)?;
        if holds(s, f)? {
            satisfied.push(i);
        } else {
            certificates.push((i, certify_exclusion(f, s)?));
        }
    }
    Ok(CollectionReport {
        satisfied,
        certificates,
    })
}
