use std::collections::BTreeSet;
use std::fmt;

/// A Boolean-algebra term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Compl(Box<Term>),
}

/// A formula of Boolean algebra with one unary predicate `P`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    /// `s <= t`, read as `s & t = s`.
    Leq(Term, Term),
    P(Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    pub fn meet(a: Term, b: Term) -> Self {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn join(a: Term, b: Term) -> Self {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn compl(a: Term) -> Self {
        Term::Compl(Box::new(a))
    }

    pub(crate) fn vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Zero | Term::One => {}
            Term::Meet(a, b) | Term::Join(a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
            Term::Compl(a) => a.vars_into(out),
        }
    }

    pub(crate) fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Meet(a, b) => Term::meet(a.rename(from, to), b.rename(from, to)),
            Term::Join(a, b) => Term::join(a.rename(from, to), b.rename(from, to)),
            Term::Compl(a) => Term::compl(a.rename(from, to)),
        }
    }
}

impl Formula {
    pub fn not(a: Formula) -> Self {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Self {
        Formula::Forall(v.to_string(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Self {
        Formula::Exists(v.to_string(), Box::new(body))
    }

    /// Variables with a free occurrence.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_into(&mut Vec::new(), &mut out);
        out
    }

    fn free_into(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term| {
            let mut vs = BTreeSet::new();
            t.vars_into(&mut vs);
            out.extend(vs.into_iter().filter(|v| !bound.contains(v)));
        };
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                term(a);
                term(b);
            }
            Formula::P(t) => term(t),
            Formula::Not(a) => a.free_into(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_into(bound, out);
                b.free_into(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v.clone());
                a.free_into(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name, bound or free.
    pub(crate) fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) | Formula::Leq(a, b) => {
                a.vars_into(out);
                b.vars_into(out);
            }
            Formula::P(t) => t.vars_into(out),
            Formula::Not(a) => a.all_names(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                out.insert(v.clone());
                a.all_names(out);
            }
        }
    }
}

fn write_term(t: &Term, min: u8, out: &mut String) {
    let (prec, paren) = match t {
        Term::Join(..) => (1, 1 < min),
        Term::Meet(..) => (2, 2 < min),
        _ => (3, false),
    };
    if paren {
        out.push('(');
    }
    match t {
        Term::Var(v) => out.push_str(v),
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Join(a, b) | Term::Meet(a, b) => {
            write_term(a, prec, out);
            out.push_str(if prec == 1 { " | " } else { " & " });
            write_term(b, prec + 1, out);
        }
        Term::Compl(a) => {
            out.push('~');
            write_term(a, 3, out);
        }
    }
    if paren {
        out.push(')');
    }
}

/// Formula precedence: `->` 1, `or` 2, `and` 3, `not` 4, atoms 5. A
/// quantifier body runs to the end of the enclosing group, so a quantifier
/// needs parentheses unless nothing follows it.
fn write_formula(f: &Formula, min: u8, rightmost: bool, out: &mut String) {
    let prec = match f {
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Forall(..) | Formula::Exists(..) => 0,
        _ => 5,
    };
    let paren = if prec == 0 { min > 0 && !rightmost } else { prec < min };
    let rightmost = rightmost || paren;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Eq(a, b) | Formula::Leq(a, b) => {
            write_term(a, 0, out);
            out.push_str(if matches!(f, Formula::Eq(..)) { " = " } else { " <= " });
            write_term(b, 0, out);
        }
        Formula::P(t) => {
            out.push_str("P(");
            write_term(t, 0, out);
            out.push(')');
        }
        Formula::Not(a) => {
            out.push_str("not ");
            write_formula(a, 4, rightmost, out);
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            write_formula(a, prec, false, out);
            out.push_str(if prec == 3 { " and " } else { " or " });
            write_formula(b, prec + 1, rightmost, out);
        }
        Formula::Implies(a, b) => {
            write_formula(a, 2, false, out);
            out.push_str(" -> ");
            write_formula(b, 1, rightmost, out);
        }
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            out.push_str(if matches!(f, Formula::Forall(..)) { "forall " } else { "exists " });
            out.push_str(v);
            out.push_str(". ");
            write_formula(a, 0, true, out);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_term(self, 0, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_formula(self, 0, true, &mut s);
        f.write_str(&s)
    }
}
