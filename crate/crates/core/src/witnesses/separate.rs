use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{Check, ClassTag, Rationale, SeparationCertificate};
use crate::cube::{FamilyOracle, GroundSet, Membership, Neighborhood, Universe};
use crate::error::{Error, Result};
use crate::families::{
    classify_family, lattice_failure, map_failure, ClassWitness, EndoMap, FiniteFamily,
    MapProperty,
};
use crate::functions::{FnFlavor, FnSpace, GraphItem, GraphPoint, Pairs};
use crate::upset::UpSet;

/// Separates a non-lattice from every lattice with `A⁺ ∩ B⁺ ∩ (A∪B)⁻`
/// (or the dual with `A∩B`).
pub fn separate_lattice(theta: &FiniteFamily) -> Result<SeparationCertificate> {
    let Some(w) = lattice_failure(theta)? else {
        return Err(Error::NotSeparable("the family is a lattice".into()));
    };
    lattice_certificate(theta, ClassTag::Lattice, w)
}

fn lattice_certificate(
    theta: &FiniteFamily,
    class: ClassTag,
    w: ClassWitness,
) -> Result<SeparationCertificate> {
    let u = theta.universe();
    let (a, b, missing, rationale, check) = match w {
        ClassWitness::MissingJoin(a, b) => {
            let j = a.union(&b)?;
            (a, b, j, Rationale::MissingJoin, "neg_is_union_of_pos")
        }
        ClassWitness::MissingMeet(a, b) => {
            let m = a.intersect(&b)?;
            (a, b, m, Rationale::MissingMeet, "neg_is_meet_of_pos")
        }
        ClassWitness::MissingTop | ClassWitness::MissingBottom => {
            unreachable!("lattice failures name a pair")
        }
    };
    let nbhd = Neighborhood::new(u, [a, b], [missing])?;
    let algebra = match rationale {
        Rationale::MissingJoin => nbhd.pos()[0].union(&nbhd.pos()[1])? == nbhd.neg()[0],
        _ => nbhd.pos()[0].intersect(&nbhd.pos()[1])? == nbhd.neg()[0],
    };
    let two = nbhd.pos().len() == 2;
    let inside = nbhd.contains(theta);
    Ok(SeparationCertificate::new(
        theta.to_json(),
        class,
        nbhd,
        rationale,
        inside,
        vec![Check::new(check, algebra && two)],
    ))
}

/// Separates a family from every bounded lattice: `X⁻` or `∅⁻` when a bound
/// is missing, otherwise the lattice certificate.
pub fn separate_lat_b(theta: &FiniteFamily) -> Result<SeparationCertificate> {
    let u = theta.universe();
    let bound = |set: GroundSet, rationale, name| {
        let nbhd = Neighborhood::minus(set.clone());
        let inside = nbhd.contains(theta);
        SeparationCertificate::new(
            theta.to_json(),
            ClassTag::BoundedLattice,
            nbhd,
            rationale,
            inside,
            vec![Check::new(name, true)],
        )
    };
    if !theta.contains(&GroundSet::top(u)) {
        return Ok(bound(GroundSet::top(u), Rationale::MissingTop, "neg_is_top"));
    }
    if !theta.contains(&GroundSet::bottom(u)) {
        return Ok(bound(GroundSet::bottom(u), Rationale::MissingBottom, "neg_is_bottom"));
    }
    let report = classify_family(theta)?;
    match report.witness {
        Some(w) => lattice_certificate(theta, ClassTag::BoundedLattice, w),
        None => Err(Error::NotSeparable("the family is a bounded lattice".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Separates `θ` from the down-set (subfamilies) or up-set (superfamilies)
/// of `φ`.
///
/// The up direction has to find a member of `φ` missing from `θ`, so it
/// needs `φ` listed; predicates are rejected.
pub fn separate_updown(
    direction: Direction,
    phi: &FamilyOracle,
    theta: &FiniteFamily,
) -> Result<SeparationCertificate> {
    if phi.oracle_universe() != theta.universe() {
        return Err(Error::UniverseMismatch(format!(
            "{} vs {}",
            phi.oracle_universe(),
            theta.universe()
        )));
    }
    match direction {
        Direction::Down => {
            let Some(b) = theta.iter().find(|b| !phi.contains(b)) else {
                return Err(Error::NotSeparable(format!(
                    "every member lies in {}",
                    phi.name()
                )));
            };
            let nbhd = Neighborhood::plus(b.clone());
            let outside = !phi.contains(b);
            Ok(SeparationCertificate::new(
                theta.to_json(),
                ClassTag::DownSet,
                nbhd.clone(),
                Rationale::MemberOutsideReference,
                nbhd.contains(theta),
                vec![Check::new("pos_outside_reference", outside)],
            ))
        }
        Direction::Up => {
            let members = phi.members().ok_or_else(|| {
                Error::Unsupported(format!(
                    "up-set separation needs a listed family, got {}",
                    phi.name()
                ))
            })?;
            let Some(b) = members.iter().find(|b| !theta.contains(b)) else {
                return Err(Error::NotSeparable("the family contains the reference".into()));
            };
            let nbhd = Neighborhood::minus(b.clone());
            Ok(SeparationCertificate::new(
                theta.to_json(),
                ClassTag::UpSet,
                nbhd.clone(),
                Rationale::ReferenceMemberMissing,
                nbhd.contains(theta),
                vec![Check::new("neg_in_reference", phi.contains(b))],
            ))
        }
    }
}

/// Largest search bound for [`separate_t1`]; the search visits `2^bound`
/// cofinite sets.
pub const MAX_T1_BOUND: u64 = 20;

/// Looks for a cofinite `A ∉ τ` whose complement lies in `{0..bound-1}`,
/// smallest complements first, and certifies with `A⁻`.
///
/// Running out of candidates is inconclusive, not a proof that τ is T1.
pub fn separate_t1(tau: &FamilyOracle, bound: u64) -> Result<SeparationCertificate> {
    if tau.oracle_universe() != Universe::Nat {
        return Err(Error::Precondition("the T1 search runs over ℕ".into()));
    }
    if bound > MAX_T1_BOUND {
        return Err(Error::Resource(format!("T1 search bound is capped at {MAX_T1_BOUND}")));
    }
    let mut masks: Vec<u32> = (0..1u32 << bound).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    for m in masks {
        let set = UpSet::cofinite((0..bound).filter(|i| m >> i & 1 == 1))?;
        let a = GroundSet::Symbolic(set);
        if !tau.contains(&a) {
            let cofinite = a.as_upset().is_some_and(|s| s.complement().is_finite());
            let nbhd = Neighborhood::minus(a);
            return Ok(SeparationCertificate::new(
                json!(tau.name()),
                ClassTag::T1,
                nbhd.clone(),
                Rationale::CofiniteSetMissing,
                nbhd.contains(tau),
                vec![Check::new("neg_is_cofinite", cofinite)],
            ));
        }
    }
    Err(Error::SearchBoundExceeded { bound })
}

/// Separates a topology from the topologies on which `f` has `kind`.
pub fn separate_map(
    kind: MapProperty,
    f: &EndoMap,
    rho: &FiniteFamily,
) -> Result<SeparationCertificate> {
    let Some(fail) = map_failure(kind, f, rho)? else {
        return Err(Error::NotSeparable(format!("the map is {kind:?}").to_lowercase()));
    };
    let (required, forbidden) = (GroundSet::Finite(fail.required), GroundSet::Finite(fail.forbidden));
    let expected = match kind {
        MapProperty::Continuous => f.preimage(fail.required),
        MapProperty::Open => f.image(fail.required),
        MapProperty::Closed => f.image(fail.required.complement()).complement(),
    };
    let (class, rationale, name) = match kind {
        MapProperty::Continuous => (ClassTag::Continuous, Rationale::PreimageNotOpen, "neg_is_preimage_of_pos"),
        MapProperty::Open => (ClassTag::Open, Rationale::ImageNotOpen, "neg_is_image_of_pos"),
        MapProperty::Closed => (ClassTag::Closed, Rationale::ImageNotClosed, "neg_is_closed_image_complement"),
    };
    let nbhd = Neighborhood::new(rho.universe(), [required], [forbidden])?;
    Ok(SeparationCertificate::new(
        json!({ "map": f, "family": rho.to_json() }),
        class,
        nbhd.clone(),
        rationale,
        nbhd.contains(rho),
        vec![Check::new(name, expected == fail.forbidden)],
    ))
}

fn function_class(flavor: FnFlavor) -> ClassTag {
    match flavor {
        FnFlavor::All => ClassTag::Functions,
        FnFlavor::Injective => ClassTag::InjectiveFunctions,
        FnFlavor::Onto => ClassTag::OntoFunctions,
        FnFlavor::FiniteOnly => ClassTag::FiniteFunctions,
    }
}

/// Separates a finite set of pairs (and other sets) from a function space.
///
/// Cases, in order: a member that is not a pair of `A × B`; two pairs with
/// one first coordinate; two pairs with one second coordinate (injective
/// spaces); and for onto spaces over a finite `A`, the point pinned down
/// exactly inside `A × B`. Onto spaces over an infinite `A` are dense, so
/// nothing separates there.
pub fn separate_function(
    p: &GraphPoint,
    space: &FnSpace,
) -> Result<SeparationCertificate<GraphItem>> {
    let (a_set, b_set) = (space.domain(), space.codomain());
    let in_product =
        |item: &GraphItem| matches!(*item, GraphItem::Pair(a, b) if a_set.contains(a) && b_set.contains(b));
    let class = function_class(space.flavor());
    let cert = |pos: Vec<GraphItem>, neg: Vec<GraphItem>, rationale, check: Check| {
        let nbhd = Neighborhood::new(Pairs, pos, neg)?;
        Ok(SeparationCertificate::new(
            p.to_json(),
            class,
            nbhd.clone(),
            rationale,
            nbhd.contains(p),
            vec![check],
        ))
    };

    if let Some(c) = p.items().find(|c| !in_product(c)) {
        let rationale = match c {
            GraphItem::Raw(_) => Rationale::NotAPair,
            GraphItem::Pair(..) => Rationale::OutsideProduct,
        };
        return cert(vec![c.clone()], vec![], rationale, Check::new("pos_outside_product", true));
    }
    let pairs: Vec<(u64, u64)> = p.pairs().collect();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if let Some(&(_, b2)) = pairs[i + 1..].iter().find(|&&(x, y)| x == a && y != b) {
            return cert(
                vec![GraphItem::Pair(a, b), GraphItem::Pair(a, b2)],
                vec![],
                Rationale::TwoValues,
                Check::new("pos_share_first_coordinate", b != b2),
            );
        }
    }
    match space.flavor() {
        FnFlavor::Injective => {
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if let Some(&(a2, _)) = pairs[i + 1..].iter().find(|&&(x, y)| y == b && x != a) {
                    return cert(
                        vec![GraphItem::Pair(a, b), GraphItem::Pair(a2, b)],
                        vec![],
                        Rationale::SharedValue,
                        Check::new("pos_share_second_coordinate", a != a2),
                    );
                }
            }
        }
        FnFlavor::Onto => {
            let hit = UpSet::from_elements(pairs.iter().map(|p| p.1))?;
            if !b_set.is_subset(&hit) {
                if a_set.is_infinite() {
                    return Err(Error::NotSeparable(
                        "onto functions from an infinite domain are dense".into(),
                    ));
                }
                let pos: Vec<GraphItem> = pairs.iter().map(|&(a, b)| GraphItem::Pair(a, b)).collect();
                let others: Vec<GraphItem> = a_set
                    .iter()
                    .flat_map(|a| b_set.iter().map(move |b| GraphItem::Pair(a, b)))
                    .filter(|item| !pos.contains(item))
                    .collect();
                return cert(pos, others, Rationale::PinnedNotOnto, Check::new("pos_not_onto", true));
            }
        }
        FnFlavor::All | FnFlavor::FiniteOnly => {}
    }
    Err(Error::NotSeparable("the point lies in the function space".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FiniteFamily;

    fn fam(n: u8, sets: &[&[u64]]) -> FiniteFamily {
        FiniteFamily::finite(n, sets).unwrap()
    }

    fn fin(n: u8, e: &[u64]) -> GroundSet {
        GroundSet::finite(n, e).unwrap()
    }

    fn sym(s: UpSet) -> GroundSet {
        GroundSet::Symbolic(s)
    }

    #[test]
    fn lattice_missing_join() {
        let c = separate_lattice(&fam(2, &[&[0], &[1]])).unwrap();
        assert_eq!(c.neighborhood.pos(), &[fin(2, &[0]), fin(2, &[1])]);
        assert_eq!(c.neighborhood.neg(), &[fin(2, &[0, 1])]);
        assert!(c.all_pass());
    }

    #[test]
    fn lattice_missing_meet_symbolic() {
        let theta = FiniteFamily::symbolic([UpSet::evens(), UpSet::odds(), UpSet::naturals()]);
        let c = separate_lattice(&theta).unwrap();
        assert_eq!(c.neighborhood.pos(), &[sym(UpSet::evens()), sym(UpSet::odds())]);
        assert_eq!(c.neighborhood.neg(), &[sym(UpSet::empty())]);
        assert_eq!(c.rationale, Rationale::MissingMeet);
    }

    #[test]
    fn lattice_not_separable() {
        let e = separate_lattice(&FiniteFamily::powerset(2).unwrap()).unwrap_err();
        assert!(matches!(e, Error::NotSeparable(_)));
    }

    #[test]
    fn lat_b_bounds() {
        let c = separate_lat_b(&fam(2, &[&[], &[0]])).unwrap();
        assert!(c.neighborhood.pos().is_empty());
        assert_eq!(c.neighborhood.neg(), &[fin(2, &[0, 1])]);
        let c = separate_lat_b(&fam(2, &[&[0], &[0, 1]])).unwrap();
        assert_eq!(c.neighborhood.neg(), &[fin(2, &[])]);
    }

    #[test]
    fn lat_b_discrete_is_a_member() {
        let e = separate_lat_b(&fam(2, &[&[0], &[1], &[], &[0, 1]])).unwrap_err();
        assert!(matches!(e, Error::NotSeparable(_)));
    }

    #[test]
    fn lat_b_delegates_to_lattice() {
        let c = separate_lat_b(&fam(3, &[&[], &[0], &[1], &[0, 1, 2]])).unwrap();
        assert_eq!(c.neighborhood.pos(), &[fin(3, &[0]), fin(3, &[1])]);
        assert_eq!(c.neighborhood.neg(), &[fin(3, &[0, 1])]);
        assert_eq!(c.class, ClassTag::BoundedLattice);
    }

    #[test]
    fn updown_cases() {
        let theta = FiniteFamily::symbolic([UpSet::evens()]);
        let c = separate_updown(Direction::Down, &FamilyOracle::cofinite_topology(), &theta).unwrap();
        assert_eq!(c.neighborhood.pos(), &[sym(UpSet::evens())]);

        let phi: FamilyOracle = FiniteFamily::symbolic([UpSet::empty(), UpSet::naturals()]).into();
        let c = separate_updown(Direction::Up, &phi, &FiniteFamily::symbolic([UpSet::empty()])).unwrap();
        assert_eq!(c.neighborhood.neg(), &[sym(UpSet::naturals())]);

        let sub = FiniteFamily::symbolic([UpSet::naturals()]);
        assert!(matches!(
            separate_updown(Direction::Down, &phi, &sub),
            Err(Error::NotSeparable(_))
        ));
        assert!(matches!(
            separate_updown(Direction::Up, &FamilyOracle::cofinite_topology(), &sub),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn t1_search() {
        let tau: FamilyOracle =
            FiniteFamily::symbolic([UpSet::empty(), UpSet::evens(), UpSet::naturals()]).into();
        let c = separate_t1(&tau, 1).unwrap();
        assert_eq!(c.neighborhood.neg(), &[sym(UpSet::cofinite([0]).unwrap())]);
        let indiscrete: FamilyOracle = FiniteFamily::symbolic([UpSet::empty(), UpSet::naturals()]).into();
        let c = separate_t1(&indiscrete, 1).unwrap();
        assert_eq!(c.neighborhood.neg(), &[sym(UpSet::cofinite([0]).unwrap())]);
        assert!(matches!(
            separate_t1(&FamilyOracle::cofinite_topology(), 6),
            Err(Error::SearchBoundExceeded { bound: 6 })
        ));
    }

    #[test]
    fn map_cases() {
        let rho = fam(2, &[&[], &[0], &[0, 1]]);
        let swap = EndoMap::new(vec![1, 0]).unwrap();
        let c = separate_map(MapProperty::Continuous, &swap, &rho).unwrap();
        assert_eq!(c.neighborhood.pos(), &[fin(2, &[0])]);
        assert_eq!(c.neighborhood.neg(), &[fin(2, &[1])]);
        assert!(matches!(
            separate_map(MapProperty::Continuous, &EndoMap::identity(2), &rho),
            Err(Error::NotSeparable(_))
        ));
        let rho1 = fam(2, &[&[], &[1], &[0, 1]]);
        let c = separate_map(MapProperty::Open, &EndoMap::constant(2, 0).unwrap(), &rho1).unwrap();
        assert_eq!(c.neighborhood.pos(), &[fin(2, &[1])]);
        assert_eq!(c.neighborhood.neg(), &[fin(2, &[0])]);
        assert!(c.all_pass());
    }

    fn nat_space(flavor: FnFlavor) -> FnSpace {
        FnSpace::new(UpSet::naturals(), UpSet::naturals(), flavor).unwrap()
    }

    #[test]
    fn function_cases() {
        let p = GraphPoint::from_pairs([(0, 1), (0, 2)]);
        let c = separate_function(&p, &nat_space(FnFlavor::All)).unwrap();
        assert_eq!(c.neighborhood.pos(), &[GraphItem::Pair(0, 1), GraphItem::Pair(0, 2)]);

        let p = GraphPoint::from_pairs([(0, 5), (2, 5)]);
        let c = separate_function(&p, &nat_space(FnFlavor::Injective)).unwrap();
        assert_eq!(c.neighborhood.pos(), &[GraphItem::Pair(0, 5), GraphItem::Pair(2, 5)]);
        assert!(separate_function(&p, &nat_space(FnFlavor::All)).is_err());

        let raw = GraphItem::raw([0, 1, 2]);
        let p = GraphPoint::new([GraphItem::Pair(0, 0), raw.clone()]);
        let c = separate_function(&p, &nat_space(FnFlavor::All)).unwrap();
        assert_eq!(c.neighborhood.pos(), &[raw]);
        assert_eq!(c.rationale, Rationale::NotAPair);

        let small = FnSpace::all(UpSet::from_elements([0, 1]).unwrap(), UpSet::evens());
        let c = separate_function(&GraphPoint::from_pairs([(0, 3)]), &small).unwrap();
        assert_eq!(c.rationale, Rationale::OutsideProduct);
    }

    #[test]
    fn onto_pinned_and_dense() {
        let two = UpSet::from_elements([0, 1]).unwrap();
        let s = FnSpace::new(two.clone(), two, FnFlavor::Onto).unwrap();
        let c = separate_function(&GraphPoint::from_pairs([(0, 0)]), &s).unwrap();
        assert_eq!(c.neighborhood.pos(), &[GraphItem::Pair(0, 0)]);
        assert_eq!(c.neighborhood.neg().len(), 3);
        let dense = FnSpace::new(UpSet::naturals(), UpSet::from_elements([0, 1]).unwrap(), FnFlavor::Onto).unwrap();
        assert!(matches!(
            separate_function(&GraphPoint::from_pairs([(0, 0)]), &dense),
            Err(Error::NotSeparable(_))
        ));
    }
}
