//! Reference computations written without the library's own algorithms.
//! Each one trades speed for obviousness.

use std::collections::HashSet;

use crate::cube::{GroundSet, Neighborhood};
use crate::functions::{FnFlavor, GraphItem};
use crate::logic::{Formula, Term};
use crate::upset::UpSet;

/// The stored fields of a set, unpacked for direct membership queries.
pub struct Fields {
    threshold: u64,
    transient: Vec<bool>,
    period: u64,
    residues: Vec<bool>,
}

impl Fields {
    pub fn of(s: &UpSet) -> Self {
        let flags = |len: u64, on: Vec<u64>| {
            let mut v = vec![false; len as usize];
            for i in on {
                v[i as usize] = true;
            }
            v
        };
        Fields {
            threshold: s.threshold(),
            transient: flags(s.threshold(), s.transient()),
            period: s.period(),
            residues: flags(s.period(), s.residues()),
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        if n < self.threshold {
            self.transient[n as usize]
        } else {
            self.residues[(n % self.period) as usize]
        }
    }
}

/// Number of preorders on `n` points, by testing every reflexive relation
/// for transitivity. Finite topologies correspond to preorders through
/// specialization.
pub fn count_preorders(n: u32) -> u64 {
    let off: Vec<(u32, u32)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0;
    for bits in 0u64..1 << off.len() {
        let mut rel = vec![vec![false; n as usize]; n as usize];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in off.iter().enumerate() {
            rel[i as usize][j as usize] = bits >> k & 1 == 1;
        }
        let transitive = (0..n as usize).all(|i| {
            (0..n as usize).all(|j| !rel[i][j] || (0..n as usize).all(|k| !rel[j][k] || rel[i][k]))
        });
        count += transitive as u64;
    }
    count
}

/// The topology generated by a subbase, as a family mask over `X_n`, by
/// repeated pairwise closure.
pub fn close_mask(n: u32, subbase: u64) -> u64 {
    let full = (1u32 << n) - 1;
    let mut fam = subbase | 1 | 1u64 << full;
    loop {
        let members: Vec<u32> = (0..=full).filter(|&s| fam >> s & 1 == 1).collect();
        let mut next = fam;
        for &a in &members {
            for &b in &members {
                next |= 1u64 << (a | b) | 1u64 << (a & b);
            }
        }
        if next == fam {
            return fam;
        }
        fam = next;
    }
}

/// Distinct topologies reached by closing every family of subsets of `X_n`.
pub fn count_topologies_by_subbase(n: u32) -> u64 {
    let total = 1u64 << (1u32 << n);
    let seen: HashSet<u64> = (0..total).map(|m| close_mask(n, m)).collect();
    seen.len() as u64
}

pub fn is_lattice_mask(n: u32, fam: u64) -> bool {
    let full = (1u32 << n) - 1;
    (0..=full).all(|a| {
        fam >> a & 1 == 0
            || (0..=full).all(|b| fam >> b & 1 == 0 || (fam >> (a | b) & 1 == 1 && fam >> (a & b) & 1 == 1))
    })
}

pub fn is_bounded_mask(n: u32, fam: u64) -> bool {
    fam & 1 == 1 && fam >> ((1u32 << n) - 1) & 1 == 1
}

/// A neighborhood over a finite universe as (required, forbidden) family masks.
pub fn nbhd_masks(n: &Neighborhood) -> (u64, u64) {
    let mask = |sets: &[GroundSet]| {
        sets.iter().fold(0u64, |acc, s| {
            acc | 1u64 << s.as_finite().expect("finite universe").mask()
        })
    };
    (mask(n.pos()), mask(n.neg()))
}

pub fn mask_in(fam: u64, (pos, neg): (u64, u64)) -> bool {
    fam & pos == pos && fam & neg == 0
}

/// Direct evaluation of a sentence in `(P(X_n), fam)`.
pub fn eval_sentence(f: &Formula, n: u32, fam: u64) -> bool {
    eval(f, n, fam, &mut Vec::new())
}

fn term(t: &Term, n: u32, env: &[(String, u32)]) -> u32 {
    let full = (1u32 << n) - 1;
    match t {
        Term::Var(v) => env.iter().rev().find(|(w, _)| w == v).expect("bound variable").1,
        Term::Zero => 0,
        Term::One => full,
        Term::Meet(a, b) => term(a, n, env) & term(b, n, env),
        Term::Join(a, b) => term(a, n, env) | term(b, n, env),
        Term::Compl(a) => !term(a, n, env) & full,
    }
}

fn eval(f: &Formula, n: u32, fam: u64, env: &mut Vec<(String, u32)>) -> bool {
    match f {
        Formula::Eq(a, b) => term(a, n, env) == term(b, n, env),
        Formula::Leq(a, b) => term(a, n, env) & !term(b, n, env) == 0,
        Formula::P(t) => fam >> term(t, n, env) & 1 == 1,
        Formula::Not(a) => !eval(a, n, fam, env),
        Formula::And(a, b) => eval(a, n, fam, env) && eval(b, n, fam, env),
        Formula::Or(a, b) => eval(a, n, fam, env) || eval(b, n, fam, env),
        Formula::Implies(a, b) => !eval(a, n, fam, env) || eval(b, n, fam, env),
        Formula::Forall(v, a) | Formula::Exists(v, a) => {
            let universal = matches!(f, Formula::Forall(..));
            for x in 0..1u32 << n {
                env.push((v.clone(), x));
                let r = eval(a, n, fam, env);
                env.pop();
                if r != universal {
                    return !universal;
                }
            }
            universal
        }
    }
}

/// Every member of the function space over `A = {0..a}` and `B = {0..b}`,
/// each as a bitmask over the grid `{0..=a} × {0..=b}` (pair `(x,y)` is
/// bit `x·(b+1) + y`).
pub fn fn_space_members(a: u64, b: u64, flavor: FnFlavor) -> Vec<u64> {
    let mut out = Vec::new();
    // Each x in A is either undefined (code b) or sent to a value below b.
    let total = (b + 1).pow(a as u32);
    for code in 0..total {
        let mut rest = code;
        let mut bits = 0u64;
        let mut values = Vec::new();
        for x in 0..a {
            let y = rest % (b + 1);
            rest /= b + 1;
            if y < b {
                bits |= 1 << (x * (b + 1) + y);
                values.push(y);
            }
        }
        let distinct: HashSet<u64> = values.iter().copied().collect();
        let keep = match flavor {
            FnFlavor::All | FnFlavor::FiniteOnly => true,
            FnFlavor::Injective => distinct.len() == values.len(),
            FnFlavor::Onto => distinct.len() as u64 == b,
        };
        if keep {
            out.push(bits);
        }
    }
    out
}

pub fn grid_pairs(a: u64, b: u64, bits: u64) -> Vec<(u64, u64)> {
    (0..=a)
        .flat_map(|x| (0..=b).map(move |y| (x, y)))
        .filter(|&(x, y)| bits >> (x * (b + 1) + y) & 1 == 1)
        .collect()
}

/// Does the pair set `bits` satisfy every constraint? Raw items are never
/// members of a set of pairs.
pub fn pairs_in(a: u64, b: u64, bits: u64, n: &Neighborhood<GraphItem>) -> bool {
    let has = |item: &GraphItem| match *item {
        GraphItem::Pair(x, y) => x <= a && y <= b && bits >> (x * (b + 1) + y) & 1 == 1,
        GraphItem::Raw(_) => false,
    };
    n.pos().iter().all(has) && !n.neg().iter().any(has)
}

/// Almost disjointness checked pair by pair.
pub fn pairwise_ad(sets: &[UpSet]) -> bool {
    sets.iter().all(UpSet::is_infinite)
        && sets.iter().enumerate().all(|(i, x)| {
            sets[i + 1..]
                .iter()
                .all(|y| x.intersect(y).expect("small periods").classify().is_finite())
        })
}

/// Meet closure followed by join closure of a symbolic family, with ∅ and ℕ.
pub fn symbolic_closure(gens: &[UpSet]) -> HashSet<UpSet> {
    let mut meets: HashSet<UpSet> = [UpSet::empty(), UpSet::naturals()].into();
    for g in gens {
        let add: Vec<UpSet> = meets.iter().map(|m| m.intersect(g).expect("small periods")).collect();
        meets.extend(add);
        meets.insert(g.clone());
    }
    let meets: Vec<UpSet> = meets.into_iter().collect();
    let mut joins: HashSet<UpSet> = meets.iter().cloned().collect();
    loop {
        let add: Vec<UpSet> = joins
            .iter()
            .flat_map(|j| meets.iter().map(move |m| j.union(m).expect("small periods")))
            .filter(|u| !joins.contains(u))
            .collect();
        if add.is_empty() {
            return joins;
        }
        joins.extend(add);
    }
}
