use std::collections::BTreeSet;

use indexmap::IndexSet;

use super::syntax::{Formula, Term};
use crate::error::{Error, Result};

/// An atom together with its sign.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    pub positive: bool,
    pub atom: Formula,
}

impl Literal {
    fn to_formula(&self) -> Formula {
        if self.positive {
            self.atom.clone()
        } else {
            Formula::not(self.atom.clone())
        }
    }
}

/// `∀ vars. ⋀ clauses`, each clause a disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalForm {
    pub vars: Vec<String>,
    pub clauses: Vec<Vec<Literal>>,
}

impl UniversalForm {
    /// The CNF matrix as a formula: left-nested conjunctions of left-nested
    /// disjunctions.
    pub fn matrix(&self) -> Formula {
        let clause = |c: &Vec<Literal>| {
            c.iter()
                .map(Literal::to_formula)
                .reduce(Formula::or)
                .expect("clauses are nonempty")
        };
        self.clauses
            .iter()
            .map(clause)
            .reduce(Formula::and)
            .unwrap_or_else(|| Formula::Eq(Term::Zero, Term::Zero))
    }

    pub fn to_formula(&self) -> Formula {
        self.vars
            .iter()
            .rev()
            .fold(self.matrix(), |body, v| Formula::forall(v, body))
    }

    /// Every `P(t)` occurring in the matrix, in order, without repeats.
    pub fn p_terms(&self) -> Vec<&Term> {
        let mut seen: IndexSet<&Term> = IndexSet::new();
        for lit in self.clauses.iter().flatten() {
            if let Formula::P(t) = &lit.atom {
                seen.insert(t);
            }
        }
        seen.into_iter().collect()
    }
}

/// Negation normal form without implications.
fn nnf(f: &Formula, negate: bool) -> Formula {
    match f {
        Formula::Eq(..) | Formula::Leq(..) | Formula::P(_) => {
            if negate {
                Formula::not(f.clone())
            } else {
                f.clone()
            }
        }
        Formula::Not(a) => nnf(a, !negate),
        Formula::And(a, b) if !negate => Formula::and(nnf(a, false), nnf(b, false)),
        Formula::And(a, b) => Formula::or(nnf(a, true), nnf(b, true)),
        Formula::Or(a, b) if !negate => Formula::or(nnf(a, false), nnf(b, false)),
        Formula::Or(a, b) => Formula::and(nnf(a, true), nnf(b, true)),
        Formula::Implies(a, b) if !negate => Formula::or(nnf(a, true), nnf(b, false)),
        Formula::Implies(a, b) => Formula::and(nnf(a, false), nnf(b, true)),
        Formula::Forall(v, a) if !negate => Formula::Forall(v.clone(), Box::new(nnf(a, false))),
        Formula::Forall(v, a) => Formula::Exists(v.clone(), Box::new(nnf(a, true))),
        Formula::Exists(v, a) if !negate => Formula::Exists(v.clone(), Box::new(nnf(a, false))),
        Formula::Exists(v, a) => Formula::Forall(v.clone(), Box::new(nnf(a, true))),
    }
}

fn rename_free(f: &Formula, from: &str, to: &str) -> Formula {
    let r = |f: &Formula| rename_free(f, from, to);
    match f {
        Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
        Formula::Leq(a, b) => Formula::Leq(a.rename(from, to), b.rename(from, to)),
        Formula::P(t) => Formula::P(t.rename(from, to)),
        Formula::Not(a) => Formula::not(r(a)),
        Formula::And(a, b) => Formula::and(r(a), r(b)),
        Formula::Or(a, b) => Formula::or(r(a), r(b)),
        Formula::Implies(a, b) => Formula::implies(r(a), r(b)),
        Formula::Forall(v, _) | Formula::Exists(v, _) if v == from => f.clone(),
        Formula::Forall(v, a) => Formula::Forall(v.clone(), Box::new(r(a))),
        Formula::Exists(v, a) => Formula::Exists(v.clone(), Box::new(r(a))),
    }
}

/// Pulls quantifiers of an NNF formula to the front, renaming a binder
/// whenever its name is already taken by an earlier one.
fn prenex(
    f: &Formula,
    used: &mut BTreeSet<String>,
    taken: &BTreeSet<String>,
    prefix: &mut Vec<(bool, String)>,
) -> Formula {
    match f {
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let universal = matches!(f, Formula::Forall(..));
            let (name, body) = if used.contains(v) {
                let fresh = (1..)
                    .map(|i| format!("{v}{i}"))
                    .find(|c| !used.contains(c) && !taken.contains(c))
                    .expect("an unused name exists");
                let body = rename_free(a, v, &fresh);
                (fresh, body)
            } else {
                (v.clone(), (**a).clone())
            };
            used.insert(name.clone());
            prefix.push((universal, name));
            prenex(&body, used, taken, prefix)
        }
        Formula::And(a, b) => {
            let a = prenex(a, used, taken, prefix);
            Formula::and(a, prenex(b, used, taken, prefix))
        }
        Formula::Or(a, b) => {
            let a = prenex(a, used, taken, prefix);
            Formula::or(a, prenex(b, used, taken, prefix))
        }
        other => other.clone(),
    }
}

fn cnf(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::And(a, b) => {
            let mut out = cnf(a);
            out.extend(cnf(b));
            out
        }
        Formula::Or(a, b) => {
            let (ca, cb) = (cnf(a), cnf(b));
            let mut out = Vec::with_capacity(ca.len() * cb.len());
            for x in &ca {
                for y in &cb {
                    let merged: IndexSet<Literal> = x.iter().chain(y).cloned().collect();
                    out.push(merged.into_iter().collect());
                }
            }
            out
        }
        Formula::Not(a) => vec![vec![Literal {
            positive: false,
            atom: (**a).clone(),
        }]],
        atom => vec![vec![Literal {
            positive: true,
            atom: atom.clone(),
        }]],
    }
}

fn occurs(v: &str, clauses: &[Vec<Literal>]) -> bool {
    clauses.iter().flatten().any(|l| l.atom.free_vars().contains(v))
}

/// Prenex form with a CNF matrix and only universal quantifiers.
///
/// Existentials whose variable does not occur in the matrix are dropped;
/// any other existential makes the sentence non-universal.
pub fn universal_form(f: &Formula) -> Result<UniversalForm> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::FreeVariable(v));
    }
    let mut taken = BTreeSet::new();
    f.all_names(&mut taken);
    let mut prefix = Vec::new();
    let matrix = prenex(&nnf(f, false), &mut BTreeSet::new(), &taken, &mut prefix);
    let mut seen: IndexSet<Vec<Literal>> = IndexSet::new();
    for c in cnf(&matrix) {
        seen.insert(c);
    }
    let clauses: Vec<Vec<Literal>> = seen.into_iter().collect();
    let mut vars = Vec::new();
    for (universal, v) in prefix {
        if !occurs(&v, &clauses) {
            continue;
        }
        if !universal {
            return Err(Error::NotUniversal(format!(
                "`{v}` is existentially quantified in {f}"
            )));
        }
        vars.push(v);
    }
    Ok(UniversalForm { vars, clauses })
}

/// [`universal_form`] as a formula.
pub fn to_universal(f: &Formula) -> Result<Formula> {
    Ok(universal_form(f)?.to_formula())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_sentence;

    fn u(s: &str) -> Result<String> {
        to_universal(&parse_sentence(s).unwrap()).map(|f| f.to_string())
    }

    #[test]
    fn distributes_quantifiers() {
        assert_eq!(
            u("forall x. P(x) and forall y. P(~y)").unwrap(),
            "forall x. forall y. P(x) and P(~y)"
        );
    }

    #[test]
    fn existential_rejected() {
        assert!(matches!(u("exists x. P(x)"), Err(Error::NotUniversal(_))));
        assert!(matches!(u("forall x. (forall y. P(y)) -> P(x)"), Err(Error::NotUniversal(_))));
    }

    #[test]
    fn duality() {
        assert_eq!(u("not exists x. P(x)").unwrap(), "forall x. not P(x)");
    }

    #[test]
    fn implication_becomes_clause() {
        assert_eq!(
            u("forall x. forall y. P(x) and P(y) -> P(x | y)").unwrap(),
            "forall x. forall y. not P(x) or not P(y) or P(x | y)"
        );
    }

    #[test]
    fn vacuous_existential_dropped() {
        assert_eq!(u("exists z. P(0)").unwrap(), "P(0)");
    }

    #[test]
    fn clashing_binders_renamed() {
        assert_eq!(
            u("(forall x. P(x)) and forall x. not P(~x)").unwrap(),
            "forall x. forall x1. P(x) and not P(~x1)"
        );
    }

    #[test]
    fn distribution_over_or() {
        assert_eq!(
            u("P(0) or P(1) and P(0)").unwrap(),
            "(P(0) or P(1)) and P(0)"
        );
    }
}
