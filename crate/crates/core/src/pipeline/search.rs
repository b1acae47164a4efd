use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::fixtures::{subgroup_table, NamedSubgroup};
use super::tables::Census;
use super::with_jobs;
use crate::cosets::{core, image_summary, is_conjugate, CosetTable, PermutationAction};
use crate::cubecomplex::cubulate;
use crate::dodecomplex::{double_cover_action, DodecahedralComplex};
use crate::error::Result;
use crate::fpgroup::{builtin_presentation, Space};
use crate::homology::{abelian_relation_matrix, cover_homology, mod2_kernel_basis, AbelianGroup};
use crate::hypersurface::{disk_surfaces, specialness_of, HyperplaneSystem};

/// Closure bound for monodromy images; the largest image met below
/// degree ten is A9.
const IMAGE_BOUND: usize = 200_000;

/// Every connected double cover of the cover given by `a`, one per nonzero
/// homomorphism to Z/2, in Gray-code order.
pub fn double_cover_actions(space: Space, a: &PermutationAction) -> Result<Vec<PermutationAction>> {
    let basis = mod2_kernel_basis(&abelian_relation_matrix(&builtin_presentation(space), &a.as_table()));
    let r = basis.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity((1 << r) - 1);
    let mut c = basis[0].clone();
    out.push(double_cover_action(a, &c)?);
    for k in 2..1usize << r {
        // gray code k-1 -> k flips one basis element
        let flip = (k ^ (k >> 1)) ^ ((k - 1) ^ ((k - 1) >> 1));
        c = c.add(&basis[flip.trailing_zeros() as usize]);
        out.push(double_cover_action(a, &c)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRow {
    pub homology: AbelianGroup,
    pub components: usize,
    pub count: usize,
}

/// The double-cover towers over the six-sheeted cover.
#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub doubles: usize,
    pub doubles_fpf: usize,
    /// Fixed-point free doubles by homology and component count.
    pub table2: Vec<HomologyRow>,
    pub doubles_all_embedded: bool,
    pub second_doubles: usize,
    pub second_doubles_fpf: usize,
    /// Fixed-point free doubles of doubles by component count.
    pub table3: BTreeMap<usize, usize>,
    pub second_all_embedded: bool,
    /// The fixed-point free degree-24 covers with 24 components.
    pub e_candidates: usize,
    pub e_action: Option<PermutationAction>,
    pub e_homology: Option<AbelianGroup>,
    /// The subgroup generated by the published words is conjugate to it.
    pub e_matches_words: bool,
    pub e_disks_per_component: Vec<usize>,
    /// Present once the doubles of E have been enumerated.
    pub e_doubles: Option<EDoubles>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EDoubles {
    pub total: usize,
    pub fixed_point_free: usize,
    pub distribution: BTreeMap<usize, usize>,
    pub special: usize,
}

struct Level2 {
    total: usize,
    fpf: usize,
    comps: BTreeMap<usize, usize>,
    all_embedded: bool,
    e: Vec<PermutationAction>,
}

/// Runs the tower search; the doubles of E (131,071 covers of degree 48)
/// only when `with_e_doubles` is set.
pub fn search_towers(jobs: usize, with_e_doubles: bool) -> Result<TowerReport> {
    let c_table = subgroup_table(NamedSubgroup::SixCover)?;
    let c = crate::cosets::action_from_table(&c_table);
    let p = builtin_presentation(Space::Ws);
    let doubles = double_cover_actions(Space::Ws, &c)?;
    with_jobs(jobs, || {
        let first: Vec<(bool, AbelianGroup, usize, bool)> = doubles
            .par_iter()
            .map(|d| {
                let s = disk_surfaces(&DodecahedralComplex::cover(Space::Ws, d));
                (!d.has_fixed_point(), cover_homology(&p, &d.as_table()), s.count(), s.all_embedded())
            })
            .collect();
        let mut rows: BTreeMap<(AbelianGroup, usize), usize> = BTreeMap::new();
        for (fpf, h, n, _) in &first {
            if *fpf {
                *rows.entry((h.clone(), *n)).or_default() += 1;
            }
        }
        let level2: Vec<Level2> = doubles
            .par_iter()
            .map(|d| -> Result<Level2> {
                let mut l = Level2 { total: 0, fpf: 0, comps: BTreeMap::new(), all_embedded: true, e: Vec::new() };
                for dd in double_cover_actions(Space::Ws, d)? {
                    l.total += 1;
                    if dd.has_fixed_point() {
                        continue;
                    }
                    l.fpf += 1;
                    let s = disk_surfaces(&DodecahedralComplex::cover(Space::Ws, &dd));
                    l.all_embedded &= s.all_embedded();
                    *l.comps.entry(s.count()).or_default() += 1;
                    if s.count() == 24 {
                        l.e.push(dd);
                    }
                }
                Ok(l)
            })
            .collect::<Result<_>>()?;
        let mut table3 = BTreeMap::new();
        let mut e_all = Vec::new();
        for l in &level2 {
            for (k, n) in &l.comps {
                *table3.entry(*k).or_default() += n;
            }
            e_all.extend(l.e.iter().cloned());
        }
        // the same subgroup is reached from several intermediate covers
        let mut e_classes: Vec<CosetTable> = e_all.iter().map(|a| a.as_table().canonical()).collect();
        e_classes.sort();
        e_classes.dedup();
        let e_action = e_all.first().cloned();
        let mut report = TowerReport {
            doubles: doubles.len(),
            doubles_fpf: first.iter().filter(|f| f.0).count(),
            table2: rows
                .into_iter()
                .map(|((homology, components), count)| HomologyRow { homology, components, count })
                .collect(),
            doubles_all_embedded: first.iter().all(|f| f.3),
            second_doubles: level2.iter().map(|l| l.total).sum(),
            second_doubles_fpf: level2.iter().map(|l| l.fpf).sum(),
            table3,
            second_all_embedded: level2.iter().all(|l| l.all_embedded),
            e_candidates: e_classes.len(),
            e_homology: e_action.as_ref().map(|e| cover_homology(&p, &e.as_table())),
            e_matches_words: false,
            e_disks_per_component: Vec::new(),
            e_action,
            e_doubles: None,
        };
        if let Some(e) = &report.e_action {
            report.e_matches_words = is_conjugate(&e.as_table(), &subgroup_table(NamedSubgroup::TwentyFour)?);
            report.e_disks_per_component =
                disk_surfaces(&DodecahedralComplex::cover(Space::Ws, e)).disks.iter().map(Vec::len).collect();
            if with_e_doubles {
                report.e_doubles = Some(e_doubles(e)?);
            }
        }
        Ok(report)
    })?
}

fn e_doubles(e: &PermutationAction) -> Result<EDoubles> {
    let all = double_cover_actions(Space::Ws, e)?;
    let counted: Vec<Option<(usize, bool)>> = all
        .par_iter()
        .map(|d| {
            if d.has_fixed_point() {
                return None;
            }
            let x = DodecahedralComplex::cover(Space::Ws, d);
            let s = disk_surfaces(&x);
            // two disks of one component on a sheet already force self-osculation
            let candidate = s.all_embedded() && s.disks.iter().all(|d| d.windows(2).all(|w| w[0].sheet != w[1].sheet));
            let special = candidate && specialness_of(&HyperplaneSystem::new(&cubulate(&x))).special;
            Some((s.count(), special))
        })
        .collect();
    let mut distribution = BTreeMap::new();
    for (k, _) in counted.iter().flatten() {
        *distribution.entry(*k).or_default() += 1;
    }
    Ok(EDoubles {
        total: all.len(),
        fixed_point_free: counted.iter().flatten().count(),
        distribution,
        special: counted.iter().flatten().filter(|c| c.1).count(),
    })
}

/// One irregular cover of degree 7 to 9 and its normal core.
#[derive(Clone, Debug, Serialize)]
pub struct CoreRow {
    pub class: usize,
    pub degree: usize,
    pub homology: AbelianGroup,
    pub components: usize,
    pub class_size: usize,
    pub core_index: usize,
    /// Filled in for cores small enough to build.
    pub core_components: Option<usize>,
    pub core_embedded: Option<usize>,
}

/// A degree-504 regular cover from a degree-9 class whose surface has two
/// components.
#[derive(Clone, Debug, Serialize)]
pub struct LargeCore {
    pub class: usize,
    pub degree: usize,
    pub image: Option<String>,
    pub components: usize,
    pub all_embedded: bool,
    pub pentagons: Vec<usize>,
    pub genus: Vec<i64>,
    pub all_self_osculate: bool,
    pub lemma_agrees: bool,
    /// Same for all ten; computed once per distinct core.
    pub homology: Option<AbelianGroup>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreSearch {
    /// Number of classes per core index.
    pub index_classes: BTreeMap<usize, usize>,
    /// Number of subgroups (class sizes summed) per core index.
    pub index_subgroups: BTreeMap<usize, usize>,
    pub rows: Vec<CoreRow>,
    pub two_component_degree9: Vec<LargeCore>,
    pub distinct_degree9_cores: usize,
}

pub struct CoreSearchOptions {
    pub jobs: usize,
    /// Largest core index for which the cover is built.
    pub max_build: usize,
    /// Compute the homology of the degree-504 covers.
    pub homology: bool,
}

/// Normal cores of the irregular covers of degrees 7, 8 and 9.
pub fn search_cores(census: &Census, opts: &CoreSearchOptions) -> Result<CoreSearch> {
    let picked: Vec<usize> = (0..census.classes.len())
        .filter(|&i| (7..=9).contains(&census.records[i].degree) && !census.classes[i].table.is_normal())
        .collect();
    let p = builtin_presentation(Space::Ws);
    with_jobs(opts.jobs, || -> Result<CoreSearch> {
        let rows: Vec<(CoreRow, Option<PermutationAction>)> = picked
            .par_iter()
            .map(|&i| -> Result<_> {
                let (class, rec) = (&census.classes[i], &census.records[i]);
                let k = core(&class.table, IMAGE_BOUND)?;
                let core_action = k.action();
                let (mut core_components, mut core_embedded) = (None, None);
                if k.degree() <= opts.max_build {
                    let s = disk_surfaces(&DodecahedralComplex::cover(Space::Ws, &core_action));
                    core_components = Some(s.count());
                    core_embedded = Some(s.embedded.iter().filter(|&&b| b).count());
                }
                let row = CoreRow {
                    class: i,
                    degree: rec.degree,
                    homology: rec.homology.clone(),
                    components: rec.components,
                    class_size: rec.degree / class.table.normalizer_cosets().len(),
                    core_index: k.degree(),
                    core_components,
                    core_embedded,
                };
                let keep = rec.degree == 9 && rec.components == 2;
                Ok((row, keep.then_some(core_action)))
            })
            .collect::<Result<_>>()?;
        let mut index_classes = BTreeMap::new();
        let mut index_subgroups = BTreeMap::new();
        for (r, _) in &rows {
            *index_classes.entry(r.core_index).or_default() += 1;
            *index_subgroups.entry(r.core_index).or_default() += r.class_size;
        }
        let large: Vec<(usize, &PermutationAction)> =
            rows.iter().filter_map(|(r, a)| a.as_ref().map(|a| (r.class, a))).collect();
        let canon: Vec<CosetTable> = large.par_iter().map(|(_, a)| a.as_table().canonical()).collect();
        let distinct: BTreeSet<&CosetTable> = canon.iter().collect();
        let homology: BTreeMap<&CosetTable, AbelianGroup> = if opts.homology {
            let d: Vec<&CosetTable> = distinct.iter().copied().collect();
            d.par_iter().map(|t| (*t, cover_homology(&p, t))).collect()
        } else {
            BTreeMap::new()
        };
        let two_component_degree9 = large
            .par_iter()
            .zip(&canon)
            .map(|((class, a), t)| -> Result<LargeCore> {
                let x = DodecahedralComplex::cover(Space::Ws, a);
                let c = cubulate(&x);
                let h = HyperplaneSystem::new(&c);
                let sp = specialness_of(&h);
                let comps = h.components();
                Ok(LargeCore {
                    class: *class,
                    degree: a.degree(),
                    image: image_summary(a, IMAGE_BOUND)?.catalog_name,
                    components: comps.len(),
                    all_embedded: comps.iter().all(|s| s.embedded),
                    pentagons: comps.iter().map(|s| s.disks.len()).collect(),
                    genus: comps.iter().map(|s| s.genus()).collect(),
                    all_self_osculate: sp.components.iter().all(|v| v.self_osculates == Some(true)),
                    lemma_agrees: sp.lemma_agrees,
                    homology: homology.get(t).cloned(),
                })
            })
            .collect::<Result<_>>()?;
        Ok(CoreSearch {
            index_classes,
            index_subgroups,
            rows: rows.into_iter().map(|(r, _)| r).collect(),
            distinct_degree9_cores: distinct.len(),
            two_component_degree9,
        })
    })?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dodecomplex::appendix::six_cover;

    #[test]
    fn doubles_of_the_six_cover() {
        let d = double_cover_actions(Space::Ws, &six_cover().action).unwrap();
        assert_eq!(d.len(), 127);
        assert_eq!(d.iter().filter(|a| !a.has_fixed_point()).count(), 64);
        assert!(d.iter().all(|a| a.degree() == 12 && a.is_transitive()));
    }
}
