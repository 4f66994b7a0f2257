use rayon::prelude::*;
use serde_json::{json, Value};

use super::gen::Gen;
use super::oracle::{self, Fields};
use crate::cube::{Clopen, GroundSet, Neighborhood};
use crate::error::{Error, Result};
use crate::families::{classify_family, enumerate_classify, family_count, is_ad_family, AdBound, FiniteFamily};
use crate::functions::{fn_in_space, FnFlavor, FnSpace, GraphItem, GraphPoint, Pairs, PartialFn, Tail};
use crate::logic::{certify_exclusion, defined_masks, parse_corpus, universal_form, Structure, CORPUS};
use crate::upset::UpSet;
use crate::witnesses::{
    density_finite_fn, density_onto, density_topology, extend_ad, extend_infinite_fn,
    nontopology_lattice, separate_ad, separate_function, separate_lat_b, separate_lattice,
    AdExtension, Rationale,
};

/// Verdict and details of one criterion.
pub struct Outcome {
    pub pass: bool,
    pub detail: Value,
}

/// Counts cases and keeps the first failure, in case order.
#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, failure: Option<String>) {
        self.cases += 1;
        if let Some(f) = failure {
            self.failures += 1;
            self.first.get_or_insert(f);
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record((!ok).then(what));
    }

    fn extend(&mut self, results: Vec<Option<String>>) {
        for r in results {
            self.record(r);
        }
    }

    fn ok(&self) -> bool {
        self.failures == 0
    }

    fn json(&self) -> Value {
        json!({
            "cases": self.cases,
            "failures": self.failures,
            "first_failure": self.first,
        })
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

pub const UPSET_TRIPLES: usize = 10_000;

pub fn upset_algebra(seed: u64) -> Result<Outcome> {
    let mut g = Gen::new(seed, 1);
    let mut laws = Tally::default();
    let mut membership = Tally::default();
    for i in 0..UPSET_TRIPLES {
        let (a, b, c) = (g.upset(8, 10), g.upset(8, 10), g.upset(8, 10));
        let na = a.complement();
        let nb = b.complement();
        let ab_u = a.union(&b)?;
        let ab_i = a.intersect(&b)?;
        let checks = [
            ("union_commutes", ab_u == b.union(&a)?),
            ("intersection_commutes", ab_i == b.intersect(&a)?),
            ("union_associates", ab_u.union(&c)? == a.union(&b.union(&c)?)?),
            ("intersection_associates", ab_i.intersect(&c)? == a.intersect(&b.intersect(&c)?)?),
            (
                "intersection_distributes",
                a.intersect(&b.union(&c)?)? == ab_i.union(&a.intersect(&c)?)?,
            ),
            (
                "union_distributes",
                a.union(&b.intersect(&c)?)? == ab_u.intersect(&a.union(&c)?)?,
            ),
            ("de_morgan_union", ab_u.complement() == na.intersect(&nb)?),
            ("de_morgan_intersection", ab_i.complement() == na.union(&nb)?),
            ("double_complement", na.complement() == a),
            ("absorb_union", a.union(&ab_i)? == a),
            ("absorb_intersection", a.intersect(&ab_u)? == a),
        ];
        for (name, ok) in checks {
            laws.check(ok, || format!("triple {i}: {name} fails for a={a}, b={b}, c={c}"));
        }

        let t = a.threshold().max(b.threshold()).max(c.threshold());
        let l = lcm(lcm(a.period(), b.period()), c.period());
        let (fa, fb, fc) = (Fields::of(&a), Fields::of(&b), Fields::of(&c));
        let (fu, fi, fn_) = (Fields::of(&ab_u), Fields::of(&ab_i), Fields::of(&na));
        let bad = (0..=5 * (t + l)).find(|&n| {
            a.contains(n) != fa.contains(n)
                || b.contains(n) != fb.contains(n)
                || c.contains(n) != fc.contains(n)
                || fu.contains(n) != (fa.contains(n) || fb.contains(n))
                || fi.contains(n) != (fa.contains(n) && fb.contains(n))
                || fn_.contains(n) == fa.contains(n)
        });
        membership.check(bad.is_none(), || {
            format!("triple {i}: membership disagrees at {} for a={a}, b={b}", bad.unwrap_or(0))
        });
    }
    Ok(Outcome {
        pass: laws.ok() && membership.ok(),
        detail: json!({ "triples": UPSET_TRIPLES, "laws": laws.json(), "membership": membership.json() }),
    })
}

pub const TOPOLOGY_COUNTS: [u64; 4] = [1, 4, 29, 355];

pub fn topology_counts() -> Result<Outcome> {
    let mut enumerated = Vec::new();
    let mut preorders = Vec::new();
    let mut subbase = Vec::new();
    for n in 1..=4u8 {
        enumerated.push(enumerate_classify(n)?.topologies);
        preorders.push(oracle::count_preorders(n as u32));
        subbase.push(oracle::count_topologies_by_subbase(n as u32));
    }
    let pass = [&enumerated, &preorders, &subbase]
        .iter()
        .all(|v| v.as_slice() == TOPOLOGY_COUNTS);
    Ok(Outcome {
        pass,
        detail: json!({
            "expected": TOPOLOGY_COUNTS,
            "enumerated": enumerated,
            "preorders": preorders,
            "subbase_closures": subbase,
        }),
    })
}

pub fn lattice_separation() -> Result<Outcome> {
    let mut lat = Tally::default();
    let mut lat_b = Tally::default();
    for n in 1..=3u8 {
        let total = family_count(n);
        let n32 = n as u32;
        let lattices: Vec<u64> = (0..total).filter(|&m| oracle::is_lattice_mask(n32, m)).collect();
        let bounded: Vec<u64> =
            lattices.iter().copied().filter(|&m| oracle::is_bounded_mask(n32, m)).collect();
        let run = |mask: u64, class: &[u64], bounded_class: bool| -> Option<String> {
            let fam = FiniteFamily::from_mask(n, mask);
            let inside = class.binary_search(&mask).is_ok();
            let cert = if bounded_class {
                separate_lat_b(&fam)
            } else {
                separate_lattice(&fam)
            };
            match (inside, cert) {
                (true, Err(Error::NotSeparable(_))) => None,
                (true, other) => Some(format!("n={n} mask={mask:#x}: member got {other:?}")),
                (false, Ok(c)) => {
                    let nb = oracle::nbhd_masks(&c.neighborhood);
                    if !c.all_pass() || !oracle::mask_in(mask, nb) {
                        Some(format!("n={n} mask={mask:#x}: certificate misses the family"))
                    } else if let Some(m) = class.iter().find(|&&m| oracle::mask_in(m, nb)) {
                        Some(format!("n={n} mask={mask:#x}: certificate admits class member {m:#x}"))
                    } else {
                        None
                    }
                }
                (false, Err(e)) => Some(format!("n={n} mask={mask:#x}: {e}")),
            }
        };
        lat.extend((0..total).into_par_iter().map(|m| run(m, &lattices, false)).collect());
        lat_b.extend((0..total).into_par_iter().map(|m| run(m, &bounded, true)).collect());
    }
    Ok(Outcome {
        pass: lat.ok() && lat_b.ok(),
        detail: json!({ "lattice": lat.json(), "bounded_lattice": lat_b.json() }),
    })
}

pub const MIN_UNIVERSAL_SENTENCES: usize = 6;

pub fn universal_certificates() -> Result<Outcome> {
    let sentences: Vec<_> = parse_corpus(CORPUS)?
        .into_iter()
        .filter(|e| universal_form(&e.formula).is_ok())
        .collect();
    let mut tally = Tally::default();
    let mut agreement = Tally::default();
    for n in [2u8, 3] {
        let total = family_count(n);
        for e in &sentences {
            let class: Vec<u64> = (0..total)
                .filter(|&m| oracle::eval_sentence(&e.formula, n as u32, m))
                .collect();
            agreement.check(defined_masks(&e.formula, n)? == class, || {
                format!("n={n}: defined class of `{}` disagrees with direct evaluation", e.text)
            });
            let results: Vec<Option<String>> = (0..total)
                .into_par_iter()
                .filter(|m| class.binary_search(m).is_err())
                .map(|m| {
                    let s = Structure::from_mask(n, m).expect("n is small");
                    match certify_exclusion(&e.formula, &s) {
                        Ok(c) => {
                            let nb = oracle::nbhd_masks(&c.neighborhood);
                            if !oracle::mask_in(m, nb) {
                                Some(format!("`{}` n={n} mask={m:#x}: family outside", e.text))
                            } else if let Some(x) = class.iter().find(|&&x| oracle::mask_in(x, nb)) {
                                Some(format!("`{}` n={n} mask={m:#x}: admits {x:#x}", e.text))
                            } else {
                                None
                            }
                        }
                        Err(err) => Some(format!("`{}` n={n} mask={m:#x}: {err}", e.text)),
                    }
                })
                .collect();
            tally.extend(results);
        }
    }
    Ok(Outcome {
        pass: sentences.len() >= MIN_UNIVERSAL_SENTENCES && tally.ok() && agreement.ok(),
        detail: json!({
            "sentences": sentences.len(),
            "certificates": tally.json(),
            "class_agreement": agreement.json(),
        }),
    })
}

fn upsets(sets: &[GroundSet]) -> Vec<UpSet> {
    sets.iter().filter_map(GroundSet::as_upset).cloned().collect()
}

/// Draws consistent neighborhoods over ℕ whose positive sets generate a
/// topology avoiding every negative set. The generated topology is
/// computed by the reference closure.
fn topology_neighborhoods(g: &mut Gen, count: usize) -> (Vec<(Neighborhood, Vec<UpSet>)>, u64) {
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    while out.len() < count {
        let Clopen::Basic(nb) = g.nat_clopen(4, 4) else {
            skipped += 1;
            continue;
        };
        let closure = oracle::symbolic_closure(&upsets(nb.pos()));
        if upsets(nb.neg()).iter().any(|b| closure.contains(b)) {
            skipped += 1;
            continue;
        }
        let mut members: Vec<UpSet> = closure.into_iter().collect();
        members.sort_by_key(|s| s.to_string());
        out.push((nb, members));
    }
    (out, skipped)
}

pub const DENSITY_CASES: usize = 1000;

pub fn topology_density(seed: u64) -> Result<Outcome> {
    let mut g = Gen::new(seed, 5);
    let (cases, skipped) = topology_neighborhoods(&mut g, DENSITY_CASES);
    let mut tally = Tally::default();
    let results: Vec<Option<String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (nb, expected))| {
            let t = match density_topology(&Clopen::Basic(nb.clone())) {
                Ok(t) => t,
                Err(e) => return Some(format!("case {i}: {e}")),
            };
            let same = t.len() == expected.len()
                && expected.iter().all(|s| t.contains(&GroundSet::Symbolic(s.clone())));
            let is_topology = classify_family(&t).map(|r| r.is_topology).unwrap_or(false);
            if !same {
                Some(format!("case {i}: output differs from the generated topology"))
            } else if !is_topology || !nb.contains(&t) {
                Some(format!("case {i}: output is not a topology inside the neighborhood"))
            } else {
                None
            }
        })
        .collect();
    tally.extend(results);
    Ok(Outcome {
        pass: tally.ok(),
        detail: json!({ "neighborhoods": tally.json(), "draws_skipped": skipped }),
    })
}

pub const NONTOPOLOGY_CASES: usize = 500;
pub const NONTOPOLOGY_PARTS: u32 = 8;
pub const MAX_REJECTION_RATE: f64 = 0.2;

fn verify_nontopology(nb: &Neighborhood, m: u32) -> Result<std::result::Result<Option<String>, ()>> {
    let out = match nontopology_lattice(nb, m) {
        Ok(out) => out,
        Err(Error::Rejected(_)) => return Ok(Err(())),
        Err(e) => return Ok(Ok(Some(e.to_string()))),
    };
    let s = &out.s;
    let mut union = UpSet::empty();
    for p in &out.parts {
        union = union.union(p)?;
    }
    let disjoint = out
        .parts
        .iter()
        .enumerate()
        .all(|(i, p)| out.parts[i + 1..].iter().all(|q| p.intersect(q).map(|x| x.is_empty()).unwrap_or(false)));
    let mut traces = true;
    for a in upsets(nb.pos()).iter().chain(&upsets(nb.neg())) {
        let t = a.intersect(s)?;
        traces &= t.is_empty() || &t == s;
    }
    let has = |x: &UpSet| out.lattice.contains(&GroundSet::Symbolic(x.clone()));
    let failed = [
        ("s_infinite", s.is_infinite()),
        ("part_count", out.parts.len() == m as usize),
        (
            "parts_infinite_within_s",
            out.parts.iter().all(|p| p.is_infinite() && p.difference(s).map(|d| d.is_empty()).unwrap_or(false)),
        ),
        ("parts_disjoint", disjoint),
        (
            "partition_identity",
            union.union(&out.residual)? == *s && union.intersect(&out.residual)?.is_empty(),
        ),
        ("traces_empty_or_s", traces),
        ("pos_in_lattice", upsets(nb.pos()).iter().all(has)),
        ("neg_outside_lattice", !upsets(nb.neg()).iter().any(has)),
        ("s_outside_lattice", !has(s)),
        ("checks_reported", out.all_pass()),
    ]
    .into_iter()
    .find(|(_, ok)| !ok);
    Ok(Ok(failed.map(|(name, _)| name.to_string())))
}

pub fn nontopology(seed: u64) -> Result<Outcome> {
    let mut g = Gen::new(seed, 6);
    let (cases, _) = topology_neighborhoods(&mut g, NONTOPOLOGY_CASES);
    let verdicts: Vec<Result<std::result::Result<Option<String>, ()>>> = cases
        .par_iter()
        .map(|(nb, _)| verify_nontopology(nb, NONTOPOLOGY_PARTS))
        .collect();
    let mut accepted = Tally::default();
    let mut rejected = 0u64;
    for (i, v) in verdicts.into_iter().enumerate() {
        match v? {
            Ok(failure) => accepted.record(failure.map(|f| format!("case {i}: {f}"))),
            Err(()) => rejected += 1,
        }
    }
    let rate = rejected as f64 / NONTOPOLOGY_CASES as f64;
    Ok(Outcome {
        pass: accepted.ok() && rate < MAX_REJECTION_RATE,
        detail: json!({
            "instances": NONTOPOLOGY_CASES,
            "m": NONTOPOLOGY_PARTS,
            "accepted": accepted.json(),
            "rejected": rejected,
            "rejection_rate": rate,
        }),
    })
}

const FLAVORS: [FnFlavor; 4] = [FnFlavor::All, FnFlavor::Injective, FnFlavor::Onto, FnFlavor::FiniteOnly];

fn exhaustive_functions() -> Result<Tally> {
    let mut tally = Tally::default();
    for a in 0..=3u64 {
        for b in 0..=3u64 {
            let space_a = UpSet::from_elements(0..a)?;
            let space_b = UpSet::from_elements(0..b)?;
            let grid = (a + 1) * (b + 1);
            for flavor in FLAVORS {
                if flavor == FnFlavor::Onto && a < b {
                    continue;
                }
                let space = FnSpace::new(space_a.clone(), space_b.clone(), flavor)?;
                let mut members = oracle::fn_space_members(a, b, flavor);
                members.sort_unstable();
                let results: Vec<Option<String>> = (0..1u64 << grid)
                    .into_par_iter()
                    .map(|bits| {
                        let pairs = oracle::grid_pairs(a, b, bits);
                        let member = members.binary_search(&bits).is_ok();
                        let tag = || format!("A={a} B={b} {flavor:?} {pairs:?}");
                        let rel = PartialFn::relation(pairs.iter().copied(), None).ok()?;
                        match fn_in_space(&rel, &space) {
                            Ok(c) if c.member == member => {}
                            Ok(_) => return Some(format!("{}: membership disagrees", tag())),
                            Err(e) => return Some(format!("{}: {e}", tag())),
                        }
                        match (member, separate_function(&GraphPoint::from_pairs(pairs.iter().copied()), &space)) {
                            (true, Err(Error::NotSeparable(_))) => None,
                            (true, other) => Some(format!("{}: member got {other:?}", tag())),
                            (false, Ok(c)) => {
                                if !c.all_pass() || !oracle::pairs_in(a, b, bits, &c.neighborhood) {
                                    Some(format!("{}: certificate misses the point", tag()))
                                } else if let Some(m) =
                                    members.iter().find(|&&m| oracle::pairs_in(a, b, m, &c.neighborhood))
                                {
                                    Some(format!("{}: certificate admits member {m:#x}", tag()))
                                } else {
                                    None
                                }
                            }
                            (false, Err(e)) => Some(format!("{}: {e}", tag())),
                        }
                    })
                    .collect();
                tally.extend(results);
            }
        }
    }
    Ok(tally)
}

pub const FUNCTION_CASES: usize = 200;

fn random_pairs(g: &mut Gen, count: u64, avoid: &PartialFn) -> Vec<GraphItem> {
    (0..count)
        .map(|_| (g.below(16), g.below(16)))
        .filter(|&(x, y)| !avoid.contains_pair(x, y))
        .map(|(x, y)| GraphItem::Pair(x, y))
        .collect()
}

/// A functional finite map drawn from `a × b`, one value per chosen point.
fn finite_map(g: &mut Gen, a: &UpSet, b: &UpSet, size: u64) -> Result<Vec<(u64, u64)>> {
    let mut map = Vec::new();
    let bk = b.classify();
    for i in 0..size {
        let x = a.nth(i * 2 + g.below(2))?;
        if map.iter().any(|&(y, _)| y == x) || b.is_empty() {
            continue;
        }
        let j = match bk {
            crate::upset::Cardinality::Finite(k) => g.below(k),
            crate::upset::Cardinality::Infinite => g.below(6),
        };
        map.push((x, b.nth(j)?));
    }
    Ok(map)
}

fn finite_fn_case(g: &mut Gen, i: usize) -> Result<Option<String>> {
    let a = g.infinite_upset(4, 4);
    let b = g.infinite_upset(4, 4);
    let size = g.below(5);
    let map = finite_map(g, &a, &b, size)?;
    let taken = UpSet::from_elements(map.iter().map(|p| p.0))?;
    let tail = if g.chance(0.6) {
        let domain = g.infinite_upset(4, 4).difference(&taken)?;
        Some(if g.chance(0.5) {
            Tail::Const { domain, value: g.below(10) }
        } else {
            Tail::Enumerate { domain, codomain: g.infinite_upset(3, 3) }
        })
    } else {
        None
    };
    let f = PartialFn::new(map, tail)?;
    let graph = f.graph_prefix(12)?;
    let pos: Vec<GraphItem> = g.subset(&graph, 0.4).into_iter().map(|(x, y)| GraphItem::Pair(x, y)).collect();
    let neg = {
        let k = g.below(4);
        random_pairs(g, k, &f)
    };
    let nb = Neighborhood::new(Pairs, pos, neg)?;
    let h = density_finite_fn(&f, &nb)?;
    let ok = h.is_finite() && h.pairs().iter().all(|&(x, y)| f.contains_pair(x, y)) && nb.contains(&h);
    Ok((!ok).then(|| format!("density_finite_fn case {i}")))
}

fn extend_case(g: &mut Gen, i: usize) -> Result<Option<String>> {
    let a = g.infinite_upset(4, 4);
    let b = if g.chance(0.5) { g.infinite_upset(4, 4) } else { UpSet::from_elements(0..1 + g.below(4))? };
    let size = g.below(5);
    let map = finite_map(g, &a, &b, size)?;
    let p = PartialFn::finite(map.iter().copied())?;
    let injective = {
        let mut values: Vec<u64> = map.iter().map(|q| q.1).collect();
        values.sort_unstable();
        values.windows(2).all(|w| w[0] != w[1])
    };
    let flavor = match g.below(3) {
        1 if injective && b.is_infinite() => FnFlavor::Injective,
        2 => FnFlavor::Onto,
        _ => FnFlavor::All,
    };
    let space = FnSpace::new(a, b, flavor)?;
    let pos: Vec<GraphItem> = g.subset(&map, 0.5).into_iter().map(|(x, y)| GraphItem::Pair(x, y)).collect();
    let neg = {
        let k = g.below(4);
        random_pairs(g, k, &p)
    };
    let nb = Neighborhood::new(Pairs, pos, neg)?;
    let x = extend_infinite_fn(&p, &nb, &space)?;
    let ok = !x.cardinality().is_finite()
        && map.iter().all(|&(u, v)| x.contains_pair(u, v))
        && nb.contains(&x)
        && fn_in_space(&x, &space)?.member;
    Ok((!ok).then(|| format!("extend_infinite_fn case {i} ({flavor:?})")))
}

fn onto_case(g: &mut Gen, i: usize) -> Result<Option<String>> {
    let a = g.infinite_upset(4, 4);
    let b = match g.below(3) {
        0 => UpSet::from_elements(0..g.below(5))?,
        _ => g.infinite_upset(4, 4),
    };
    let size = g.below(5);
    let map = finite_map(g, &a, &b, size)?;
    let head = PartialFn::finite(map.iter().copied())?;
    let pos: Vec<GraphItem> = map.iter().map(|&(x, y)| GraphItem::Pair(x, y)).collect();
    let mut neg = {
        let k = g.below(4);
        random_pairs(g, k, &head)
    };
    if g.chance(0.2) {
        neg.push(GraphItem::raw([g.below(5), g.below(5), g.below(5)]));
    }
    let nb = Neighborhood::new(Pairs, pos, neg)?;
    let f = density_onto(&nb, &a, &b)?;
    let space = FnSpace::new(a, b, FnFlavor::Onto)?;
    let ok = nb.contains(&f) && fn_in_space(&f, &space)?.member;
    Ok((!ok).then(|| format!("density_onto case {i}")))
}

pub fn function_spaces(seed: u64) -> Result<Outcome> {
    let exhaustive = exhaustive_functions()?;
    let mut g = Gen::new(seed, 7);
    let mut symbolic = Vec::new();
    type Case = fn(&mut Gen, usize) -> Result<Option<String>>;
    let runs: [(&str, Case); 3] = [
        ("density_finite_fn", finite_fn_case),
        ("extend_infinite_fn", extend_case),
        ("density_onto", onto_case),
    ];
    let mut all_ok = exhaustive.ok();
    for (name, case) in runs {
        let mut t = Tally::default();
        for i in 0..FUNCTION_CASES {
            t.record(case(&mut g, i).unwrap_or_else(|e| Some(format!("{name} case {i}: {e}"))));
        }
        all_ok &= t.ok();
        symbolic.push((name, t.json()));
    }
    let symbolic: serde_json::Map<String, Value> =
        symbolic.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Ok(Outcome {
        pass: all_ok,
        detail: json!({ "exhaustive": exhaustive.json(), "symbolic": symbolic }),
    })
}

pub const AD_CASES: usize = 500;

fn ad_member(g: &mut Gen) -> Result<UpSet> {
    Ok(match g.below(10) {
        0 => g.finite_upset(20, 4),
        1 => g.upset(6, 6),
        2 => UpSet::residue_class(2 + g.below(11), 0)?.union(&g.finite_upset(20, 3))?,
        _ => {
            let p = 2 + g.below(11);
            UpSet::residue_class(p, g.below(p))?
        }
    })
}

fn ad_case(g: &mut Gen, i: usize) -> Result<(bool, Option<String>)> {
    let size = 1 + g.below(4);
    let sets: Vec<UpSet> = (0..size).map(|_| ad_member(g)).collect::<Result<_>>()?;
    let fam = FiniteFamily::symbolic(sets.iter().cloned());
    let members: Vec<UpSet> = fam.iter().filter_map(GroundSet::as_upset).cloned().collect();
    let expected = oracle::pairwise_ad(&members);
    let report = is_ad_family(&fam, AdBound::Omega)?;
    if report.is_ad != expected {
        return Ok((expected, Some(format!("case {i}: is_ad_family says {}", report.is_ad))));
    }
    if expected {
        return Ok((true, None));
    }
    let c = separate_ad(&fam, AdBound::Omega)?;
    let pos = upsets(c.neighborhood.pos());
    let excludes_class = match (c.rationale, pos.as_slice()) {
        (Rationale::SmallMember, [x]) => x.is_finite(),
        (Rationale::LargeIntersection, [x, y]) => x.intersect(y)?.is_infinite(),
        _ => false,
    };
    let ok = c.all_pass()
        && c.neighborhood.neg().is_empty()
        && pos.iter().all(|x| members.contains(x))
        && excludes_class;
    Ok((false, (!ok).then(|| format!("case {i}: invalid certificate"))))
}

pub fn almost_disjoint(seed: u64) -> Result<Outcome> {
    let mut g = Gen::new(seed, 8);
    let mut tally = Tally::default();
    let mut ad_count = 0u64;
    for i in 0..AD_CASES {
        let (is_ad, failure) = ad_case(&mut g, i)?;
        ad_count += is_ad as u64;
        tally.record(failure);
    }

    let mult4 = FiniteFamily::symbolic([UpSet::multiples_of(4)?]);
    let extension_ok = match extend_ad(&mult4)? {
        AdExtension::Extended(x) => {
            x.is_infinite() && !x.meets_infinitely(&UpSet::multiples_of(4)?)
        }
        AdExtension::NotExtendable => false,
    };
    let halves = FiniteFamily::symbolic([UpSet::evens(), UpSet::odds()]);
    let maximal_ok = extend_ad(&halves)? == AdExtension::NotExtendable;
    Ok(Outcome {
        pass: tally.ok() && extension_ok && maximal_ok,
        detail: json!({
            "families": tally.json(),
            "almost_disjoint": ad_count,
            "extend_multiples_of_4": extension_ok,
            "evens_odds_not_extendable": maximal_ok,
        }),
    })
}
