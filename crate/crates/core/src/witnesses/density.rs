use crate::cube::{Clopen, Neighborhood};
use crate::error::{Error, Result};
use crate::families::{topology_from_subbase, FiniteFamily};
use crate::functions::{fn_in_space, FnFlavor, FnSpace, GraphItem, PartialFn, Tail};
use crate::upset::{Cardinality, UpSet};

/// The topology generated by the positive constraints, provided it avoids
/// every negative one.
pub fn density_topology(n: &Clopen) -> Result<FiniteFamily> {
    let n = match n {
        Clopen::Basic(n) => n,
        Clopen::Empty { conflict } => {
            return Err(Error::NoTopologyInNeighborhood(format!(
                "{conflict} is required both in and out"
            )))
        }
    };
    let gens = FiniteFamily::new(n.universe(), n.pos().iter().cloned())?;
    let t = topology_from_subbase(&gens)?;
    if let Some(b) = n.neg().iter().find(|b| t.contains(b)) {
        return Err(Error::NoTopologyInNeighborhood(format!(
            "{b} is generated by the positive constraints"
        )));
    }
    Ok(t)
}

fn pos_pairs(n: &Neighborhood<GraphItem>) -> Option<Vec<(u64, u64)>> {
    n.pos().iter().map(GraphItem::as_pair).collect()
}

/// Restricts `f` to exactly the pairs the neighborhood demands.
pub fn density_finite_fn(f: &PartialFn, n: &Neighborhood<GraphItem>) -> Result<PartialFn> {
    if !n.contains(f) {
        return Err(Error::Precondition("the function is not in the neighborhood".into()));
    }
    let pairs = pos_pairs(n).expect("a function only contains pairs");
    PartialFn::finite(pairs)
}

fn neg_first_coordinates(n: &Neighborhood<GraphItem>) -> Result<UpSet> {
    UpSet::from_elements(n.neg().iter().filter_map(GraphItem::as_pair).map(|p| p.0))
}

/// An infinite function extending the finite `p` inside `n ∩ space`.
///
/// The tail runs over `A` minus the domain of `p` and minus every first
/// coordinate mentioned by a negative constraint. General and onto spaces
/// get a constant or covering tail; injective spaces enumerate values that
/// `p` does not use.
pub fn extend_infinite_fn(
    p: &PartialFn,
    n: &Neighborhood<GraphItem>,
    space: &FnSpace,
) -> Result<PartialFn> {
    if !p.is_finite() || p.tail().is_some() {
        return Err(Error::Precondition("the function to extend must be finite".into()));
    }
    if !n.contains(p) {
        return Err(Error::Precondition("the function is not in the neighborhood".into()));
    }
    if !fn_in_space(p, &space.with_flavor(FnFlavor::All)?)?.member {
        return Err(Error::Precondition("the function does not map A into B".into()));
    }
    let (a, b) = (space.domain(), space.codomain());
    if a.is_finite() {
        return Err(Error::CannotExtend("A is finite".into()));
    }
    if b.is_empty() {
        return Err(Error::CannotExtend("B is empty".into()));
    }
    let rest = a.difference(&p.domain()?)?.difference(&neg_first_coordinates(n)?)?;
    if rest.is_finite() {
        return Err(Error::CannotExtend("no infinite part of A is left free".into()));
    }
    let unused = b.difference(&p.image()?)?;
    let tail = match space.flavor() {
        FnFlavor::All => Tail::Const {
            domain: rest,
            value: b.nth(0)?,
        },
        FnFlavor::FiniteOnly => {
            return Err(Error::CannotExtend("the space holds only finite functions".into()))
        }
        FnFlavor::Injective => {
            if unused.is_finite() {
                return Err(Error::CannotExtend(
                    "too few unused values for an injective extension".into(),
                ));
            }
            Tail::Enumerate {
                domain: rest,
                codomain: unused,
            }
        }
        FnFlavor::Onto if unused.is_empty() => Tail::Const {
            domain: rest,
            value: b.nth(0)?,
        },
        FnFlavor::Onto => Tail::Enumerate {
            domain: rest,
            codomain: unused,
        },
    };
    PartialFn::new(p.pairs().iter().copied(), Some(tail))
}

/// A function from `A` onto `B` inside `n`: the demanded pairs plus a tail
/// that enumerates every value of `B` not yet hit.
pub fn density_onto(n: &Neighborhood<GraphItem>, a: &UpSet, b: &UpSet) -> Result<PartialFn> {
    if a.classify() < b.classify() {
        return Err(Error::Validation(format!(
            "onto needs |A| >= |B|, got {} < {}",
            a.classify(),
            b.classify()
        )));
    }
    if a.classify() != Cardinality::Infinite {
        return Err(Error::Precondition("A must be infinite".into()));
    }
    let no_fn = |why: String| Error::NoFunctionInNeighborhood(why);
    let pairs = pos_pairs(n).ok_or_else(|| no_fn("a demanded set is not a pair".into()))?;
    let head = PartialFn::new(pairs.iter().copied(), None).map_err(|e| no_fn(e.to_string()))?;
    if let Some(&(x, y)) = pairs.iter().find(|&&(x, y)| !a.contains(x) || !b.contains(y)) {
        return Err(no_fn(format!("demanded pair ({x},{y}) is outside A × B")));
    }
    let rest = a.difference(&head.domain()?)?.difference(&neg_first_coordinates(n)?)?;
    let unused = b.difference(&head.image()?)?;
    let tail = (!unused.is_empty()).then_some(Tail::Enumerate {
        domain: rest,
        codomain: unused,
    });
    PartialFn::new(pairs, tail)
}
