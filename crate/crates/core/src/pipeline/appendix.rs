use std::collections::BTreeSet;

use serde::Serialize;

use super::fixtures::{subgroup_table, subgroup_words, NamedSubgroup};
use super::record::CoverRecord;
use crate::cosets::{
    action_from_table, contained_in_conjugate, core, image_summary, is_conjugate, CosetTable, SubgroupRecord,
    DEFAULT_CLOSURE_BOUND,
};
use crate::cubecomplex::cubulate;
use crate::dodecomplex::appendix::{six_cover, special_cover, PrintedCover};
use crate::dodecomplex::DodecahedralComplex;
use crate::error::{Error, Result};
use crate::fpgroup::{builtin_presentation, Space};
use crate::homology::{cover_homology, AbelianGroup};
use crate::hypersurface::{specialness_of, DiskLabel, HyperplaneSystem};

/// One named check and its outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Computed disk sets equal the printed ones, as a set of sets.
fn listings_match(h: &HyperplaneSystem, printed: &PrintedCover) -> bool {
    let computed: BTreeSet<Vec<DiskLabel>> = h.components().iter().map(|s| s.disks.clone()).collect();
    let listed: BTreeSet<Vec<DiskLabel>> = printed
        .surfaces
        .iter()
        .map(|s| {
            let mut d = s.disks.clone();
            d.sort_unstable();
            d
        })
        .collect();
    computed.len() == h.components().len() && computed == listed
}

/// The degree-5 class with positive first Betti number.
pub fn hempel_class<'a>(classes: &'a [SubgroupRecord], records: &[CoverRecord]) -> Result<&'a SubgroupRecord> {
    let hits: Vec<usize> = (0..records.len()).filter(|&i| records[i].degree == 5 && records[i].betti > 0).collect();
    match hits[..] {
        [i] => Ok(&classes[i]),
        _ => Err(Error::Integrity(format!("{} degree-5 classes with positive Betti number", hits.len()))),
    }
}

/// The degree-60 cover from its printed permutations: relators, regularity,
/// homology, the surface properties, specialness and the disk listings.
/// `hempel` is the degree-5 cover with positive Betti number, when known.
pub fn verify_appendix(hempel: Option<&CosetTable>) -> Result<Verdict> {
    let printed = special_cover();
    let a = &printed.action;
    let p = builtin_presentation(Space::Ws);
    let mut checks = Vec::new();
    checks.push(Check::new("relators", a.satisfies(&p), "printed permutations satisfy every relator"));
    checks.push(Check::new("degree", a.degree() == 60, format!("degree {}", a.degree())));
    let img = image_summary(a, DEFAULT_CLOSURE_BOUND)?;
    checks.push(Check::new(
        "regular",
        img.regular && img.perfect && img.order == 60,
        format!("image order {}, perfect {}, regular {}", img.order, img.perfect, img.regular),
    ));
    let h1 = cover_homology(&p, &a.as_table());
    let want: AbelianGroup = "Z^41 + Z2^12".parse()?;
    checks.push(Check::new("homology", h1 == want, h1.to_string()));

    let c = cubulate(&DodecahedralComplex::cover(Space::Ws, a));
    let h = HyperplaneSystem::new(&c);
    let comps = h.components();
    checks.push(Check::new(
        "(a) components",
        comps.len() == 60 && comps.iter().all(|s| s.embedded && s.two_sided),
        format!("{} components, {} embedded", comps.len(), comps.iter().filter(|s| s.embedded).count()),
    ));
    checks.push(Check::new(
        "(b) disks",
        comps.iter().all(|s| s.disks.len() == 12),
        "12 pentagonal disks per component",
    ));
    checks.push(Check::new(
        "(c) distinct sheets",
        comps.iter().all(|s| s.sheet_multiplicity().len() == 12),
        "the 12 disks of each component lie in 12 distinct sheets",
    ));
    checks.push(Check::new(
        "(d) near vertices",
        comps.iter().all(|s| s.near.set.len() == 12),
        "each component is near 12 dodecahedral vertices",
    ));
    let r = specialness_of(&h);
    let pairs_ok = r.pairs.iter().all(|q| q.intersecting_disk_pairs == 3 && q.near_union == 21);
    checks.push(Check::new(
        "(e) crossing pairs",
        !r.pairs.is_empty() && pairs_ok,
        format!("{} crossing pairs", r.pairs.len()),
    ));
    checks.push(Check::new("special", r.special, "no self- or inter-osculation"));
    checks.push(Check::new("lemma", r.lemma_agrees, "disk-count lemmas agree with the direct tests"));
    checks.push(Check::new("listings", listings_match(&h, &printed), "computed disk sets equal the printed listings"));

    let s = a.as_table();
    let s_words = subgroup_table(NamedSubgroup::Special)?;
    checks.push(Check::new("words", is_conjugate(&s, &s_words), "published generators give this subgroup"));
    let c_table = subgroup_table(NamedSubgroup::SixCover)?;
    checks.push(Check::new(
        "below C",
        contained_in_conjugate(&s, &c_table),
        "subgroup lies in the six-sheeted cover's",
    ));
    if let Some(hm) = hempel {
        checks.push(Check::new(
            "below Hempel",
            contained_in_conjugate(&s, hm),
            "subgroup lies in the degree-5 cover's",
        ));
    }
    Ok(Verdict { checks })
}

/// The six-sheeted cover: the census class with six components against
/// the printed orbits and surface listings.
pub fn verify_six_cover(classes: &[SubgroupRecord], records: &[CoverRecord]) -> Result<Verdict> {
    let printed = six_cover();
    let p = builtin_presentation(Space::Ws);
    let mut checks = Vec::new();
    let hits: Vec<usize> =
        (0..records.len()).filter(|&i| records[i].degree == 6 && records[i].components == 6).collect();
    checks.push(Check::new("unique", hits.len() == 1, format!("{} degree-6 classes with 6 components", hits.len())));
    let table = match hits.first() {
        Some(&i) => classes[i].table.clone(),
        None => return Ok(Verdict { checks }),
    };
    checks.push(Check::new(
        "orbits",
        is_conjugate(&table, &printed.action.as_table()),
        "class matches the printed orbits up to relabeling sheets",
    ));
    let words = subgroup_words(NamedSubgroup::SixCover)?;
    let traced = (0..table.index()).any(|b| words.iter().all(|w| table.trace(w, b) == b));
    checks.push(Check::new("words", traced, "published generators trace into the subgroup"));
    let h1 = cover_homology(&p, &table);
    let want: AbelianGroup = "Z^5 + Z2^2 + Z5^3".parse()?;
    checks.push(Check::new("homology", h1 == want, h1.to_string()));

    let x = DodecahedralComplex::cover(Space::Ws, &printed.action);
    let g = x.pairing_graph();
    checks.push(Check::new(
        "pairing graph",
        (0..g.nodes).all(|v| g.edges.iter().filter(|e| e.0 == e.1 && e.0 as usize == v).count() == 1),
        format!("{} loops", g.loops()),
    ));
    let c = cubulate(&x);
    let h = HyperplaneSystem::new(&c);
    let comps = h.components();
    checks.push(Check::new(
        "surfaces",
        comps.len() == 6
            && comps.iter().all(|s| {
                s.embedded && s.orientable && s.genus() == 4 && s.disks.len() == 12 && {
                    let m = s.sheet_multiplicity();
                    m.len() == 6 && m.values().all(|&k| k == 2)
                }
            }),
        "six embedded genus-4 components, 12 disks meeting each sheet twice",
    ));
    let r = specialness_of(&h);
    checks.push(Check::new(
        "self-osculation",
        r.components.iter().all(|v| v.self_osculates == Some(true)) && r.lemma_agrees,
        "every component self-osculates",
    ));
    checks.push(Check::new("listings", listings_match(&h, &printed), "computed S1..S6 equal the printed listings"));
    checks.push(Check::new(
        "3-colorable",
        r.coloring.colors <= 3,
        format!("crossing graph has {} edges, chromatic number {}", r.crossing_graph.edges.len(), r.coloring.colors),
    ));
    Ok(Verdict { checks })
}

/// Cores of the small covers, and the special cover as the smallest regular
/// cover through both the six-sheeted cover and Hempel's.
pub fn verify_cores(classes: &[SubgroupRecord], records: &[CoverRecord]) -> Result<Verdict> {
    let mut checks = Vec::new();
    let mut bad = Vec::new();
    for (cl, r) in classes.iter().zip(records) {
        // normal subgroups are their own cores
        if (2..=6).contains(&r.degree) && !cl.table.is_normal() {
            let k = core(&cl.table, DEFAULT_CLOSURE_BOUND)?.degree();
            if k != 60 && k != 360 {
                bad.push((r.degree, k));
            }
        }
    }
    checks.push(Check::new("core indices", bad.is_empty(), format!("{bad:?} outside {{60, 360}}")));
    let hempel = hempel_class(classes, records)?;
    let c_table = subgroup_table(NamedSubgroup::SixCover)?;
    let s_table = special_cover().action.as_table();
    let core_h = core(&hempel.table, DEFAULT_CLOSURE_BOUND)?.table;
    let core_c = core(&c_table, DEFAULT_CLOSURE_BOUND)?.table;
    checks.push(Check::new(
        "cores agree",
        is_conjugate(&core_h, &s_table) && is_conjugate(&core_c, &s_table),
        format!("core indices {} and {}", core_h.index(), core_c.index()),
    ));
    // a normal subgroup inside a subgroup lies in its core, so any regular
    // cover through both has degree at least 60; confirm over the census
    let through_both: Vec<usize> = classes
        .iter()
        .filter(|cl| cl.table.is_normal())
        .filter(|cl| contained_in_conjugate(&cl.table, &c_table) && contained_in_conjugate(&cl.table, &hempel.table))
        .map(|cl| cl.degree())
        .collect();
    checks.push(Check::new(
        "smallest regular",
        through_both.is_empty() && contained_in_conjugate(&s_table, &hempel.table),
        format!("regular covers in the census through both: {through_both:?}"),
    ));
    let a = action_from_table(&core_c);
    checks.push(Check::new("degree 60", a.degree() == 60, format!("degree {}", a.degree())));
    Ok(Verdict { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::low_index_classes;
    use crate::cosets::Provenance;
    use crate::pipeline::cover_record;

    #[test]
    fn appendix_passes_without_hempel() {
        let v = verify_appendix(None).unwrap();
        assert!(v.passed(), "{:?}", v.failures().collect::<Vec<_>>());
    }

    #[test]
    fn small_classes() {
        let classes = low_index_classes(&builtin_presentation(Space::Ws), 6).unwrap();
        let records: Vec<CoverRecord> =
            classes.iter().map(|c| cover_record(Space::Ws, &c.action(), Provenance::Enumerated).unwrap()).collect();
        let v = verify_cores(&classes, &records).unwrap();
        assert!(v.passed(), "{:?}", v.failures().collect::<Vec<_>>());
        let six = verify_six_cover(&classes, &records).unwrap();
        let failed: Vec<&str> = six.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["3-colorable"]);
    }
}
