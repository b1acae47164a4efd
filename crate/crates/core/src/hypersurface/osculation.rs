use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::crossing::{chromatic_number, Coloring, CrossingGraph};
use super::{DiskLabel, HyperplaneSystem, SurfaceComponent};
use crate::cubecomplex::link::{corner_end, EdgeEnd};
use crate::cubecomplex::{other_axes, CubeComplex};
use crate::dodecomplex::canonical_dodecahedron;
use crate::error::{Error, Result};

/// Which pairs of edge-ends span a square corner.
struct LinkEdges(HashSet<(EdgeEnd, EdgeEnd)>);

impl LinkEdges {
    fn new(c: &CubeComplex) -> LinkEdges {
        let mut set = HashSet::new();
        for cube in c.cubes() {
            for corner in 0..8 {
                let ends: [EdgeEnd; 3] = std::array::from_fn(|a| corner_end(cube, a, corner));
                for k in 0..3 {
                    let (a, b) = other_axes(k);
                    set.insert((ends[a].min(ends[b]), ends[a].max(ends[b])));
                }
            }
        }
        LinkEdges(set)
    }

    fn joined(&self, p: EdgeEnd, q: EdgeEnd) -> bool {
        self.0.contains(&(p.min(q), p.max(q)))
    }
}

/// Osculation data for every component and pair of a hyperplane system.
pub struct Osculation {
    /// Per component: two distinct dual edges leave or enter one vertex
    /// without spanning a square corner there.
    self_direct: Vec<bool>,
    /// Pairs (s < t) with dual edges at a common vertex that do not span a
    /// square corner.
    touching: HashSet<(u32, u32)>,
    crossing: BTreeSet<(u32, u32)>,
}

impl Osculation {
    pub fn new(h: &HyperplaneSystem) -> Osculation {
        let c = h.complex();
        let link = LinkEdges::new(c);
        let mut at: Vec<Vec<(EdgeEnd, u32, bool)>> = vec![Vec::new(); c.vertex_count()];
        for e in 0..c.edge_count() {
            let comp = h.component_of_edge(e) as u32;
            let p = h.edge_parity[e];
            for (end, v) in c.edge_ends(e).into_iter().enumerate() {
                at[v as usize].push(((e as u32, end as u8), comp, end as u8 == p));
            }
        }
        let mut self_direct = vec![false; h.components().len()];
        let mut touching = HashSet::new();
        for ends in &at {
            for (i, &(p, s, p_init)) in ends.iter().enumerate() {
                for &(q, t, q_init) in &ends[i + 1..] {
                    if link.joined(p, q) || p.0 == q.0 {
                        continue;
                    }
                    if s == t {
                        if p_init == q_init {
                            self_direct[s as usize] = true;
                        }
                    } else {
                        touching.insert((s.min(t), s.max(t)));
                    }
                }
            }
        }
        let mut crossing = BTreeSet::new();
        for cube in c.cubes() {
            let comps: [u32; 3] = std::array::from_fn(|a| h.component_of_edge(cube.edges[a * 4] as usize) as u32);
            for a in 0..3 {
                for b in a + 1..3 {
                    let (s, t) = (comps[a], comps[b]);
                    if s != t {
                        crossing.insert((s.min(t), s.max(t)));
                    }
                }
            }
        }
        Osculation { self_direct, touching, crossing }
    }

    pub fn crosses(&self, s: usize, t: usize) -> bool {
        self.crossing.contains(&(s.min(t) as u32, s.max(t) as u32))
    }

    pub fn crossing_graph(&self, nodes: usize) -> CrossingGraph {
        CrossingGraph { nodes, edges: self.crossing.iter().copied().collect() }
    }
}

fn require_embedded(s: &SurfaceComponent) -> Result<()> {
    if s.embedded && s.two_sided {
        Ok(())
    } else {
        Err(Error::Precondition(format!("component {} is not embedded and 2-sided", s.id)))
    }
}

pub fn self_osculates_direct(h: &HyperplaneSystem, o: &Osculation, s: usize) -> Result<bool> {
    require_embedded(&h.components()[s])?;
    Ok(o.self_direct[s])
}

pub fn inter_osculates_direct(h: &HyperplaneSystem, o: &Osculation, s: usize, t: usize) -> Result<bool> {
    require_embedded(&h.components()[s])?;
    require_embedded(&h.components()[t])?;
    Ok(s != t && o.crosses(s, t) && o.touching.contains(&(s.min(t) as u32, s.max(t) as u32)))
}

/// Disk-count criterion: some sheet carries two disks, or the surface is
/// near fewer dodecahedral vertices than it has disks.
pub fn self_osculates_lemma(s: &SurfaceComponent) -> Result<bool> {
    if !s.embedded {
        return Err(Error::Precondition(format!("component {} is not embedded", s.id)));
    }
    if s.disks.is_empty() {
        return Err(Error::Precondition("component has no pentagonal disks".into()));
    }
    Ok(s.sheet_multiplicity().values().any(|&k| k > 1) || s.near.set.len() < s.disks.len())
}

/// Pairs of disks of `s` and `t` on one sheet whose pentagons share an
/// edge, and whether some sheet holds disks of both that do not.
fn disk_pairs(s: &SurfaceComponent, t: &SurfaceComponent) -> (usize, bool) {
    let m = canonical_dodecahedron();
    let mut by_sheet: BTreeMap<u32, Vec<&DiskLabel>> = BTreeMap::new();
    for d in &t.disks {
        by_sheet.entry(d.sheet).or_default().push(d);
    }
    let (mut intersecting, mut disjoint) = (0, false);
    for d in &s.disks {
        for e in by_sheet.get(&d.sheet).into_iter().flatten() {
            let f = m.face_of(d.generator, d.side);
            let g = m.face_of(e.generator, e.side);
            let adjacent = m.face_edges(f).iter().any(|&x| m.edge_faces(x).contains(&g));
            if adjacent {
                intersecting += 1;
            } else {
                disjoint = true;
            }
        }
    }
    (intersecting, disjoint)
}

/// Disk-count criterion for a crossing pair of embedded, non-self-osculating
/// components: disjoint disks of both on one sheet, or
/// |near(s) u near(t)| + #intersecting disk pairs < #disks(s) + #disks(t).
pub fn inter_osculates_lemma(s: &SurfaceComponent, t: &SurfaceComponent) -> Result<bool> {
    for x in [s, t] {
        if self_osculates_lemma(x)? {
            return Err(Error::Precondition(format!("component {} self-osculates", x.id)));
        }
    }
    let (intersecting, disjoint) = disk_pairs(s, t);
    if intersecting == 0 {
        return Ok(false);
    }
    let near = s.near.set.union(&t.near.set).count();
    Ok(disjoint || near + intersecting < s.disks.len() + t.disks.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentVerdict {
    pub id: usize,
    pub disks: usize,
    pub embedded: bool,
    pub two_sided: bool,
    /// None when the component is not embedded and 2-sided.
    pub self_osculates: Option<bool>,
    pub lemma_self_osculates: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairVerdict {
    pub s: usize,
    pub t: usize,
    pub intersecting_disk_pairs: usize,
    pub near_union: usize,
    pub inter_osculates: Option<bool>,
    pub lemma_inter_osculates: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialnessReport {
    pub components: Vec<ComponentVerdict>,
    /// Crossing pairs only.
    pub pairs: Vec<PairVerdict>,
    pub crossing_graph: CrossingGraph,
    pub coloring: Coloring,
    /// Direct and lemma tests agree wherever both apply.
    pub lemma_agrees: bool,
    pub special: bool,
}

impl SpecialnessReport {
    pub fn all_embedded(&self) -> bool {
        self.components.iter().all(|c| c.embedded)
    }
}

/// Checks the four conditions: every hyperplane embedded and 2-sided, none
/// self-osculates, no pair inter-osculates. The disk-count lemmas run
/// alongside wherever their preconditions hold.
pub fn specialness(c: &CubeComplex) -> SpecialnessReport {
    let h = HyperplaneSystem::new(c);
    specialness_of(&h)
}

pub fn specialness_of(h: &HyperplaneSystem) -> SpecialnessReport {
    let o = Osculation::new(h);
    let comps = h.components();
    let mut lemma_agrees = true;
    let components: Vec<ComponentVerdict> = comps
        .iter()
        .map(|s| {
            let direct = self_osculates_direct(h, &o, s.id).ok();
            let lemma = self_osculates_lemma(s).ok();
            if let (Some(a), Some(b)) = (direct, lemma) {
                lemma_agrees &= a == b;
            }
            ComponentVerdict {
                id: s.id,
                disks: s.disks.len(),
                embedded: s.embedded,
                two_sided: s.two_sided,
                self_osculates: direct,
                lemma_self_osculates: lemma,
            }
        })
        .collect();
    let mut pairs = Vec::new();
    for &(s, t) in &o.crossing {
        let (s, t) = (s as usize, t as usize);
        let (a, b) = (&comps[s], &comps[t]);
        let direct = inter_osculates_direct(h, &o, s, t).ok();
        let lemma = inter_osculates_lemma(a, b).ok();
        if let (Some(x), Some(y)) = (direct, lemma) {
            lemma_agrees &= x == y;
        }
        pairs.push(PairVerdict {
            s,
            t,
            intersecting_disk_pairs: disk_pairs(a, b).0,
            near_union: a.near.set.union(&b.near.set).count(),
            inter_osculates: direct,
            lemma_inter_osculates: lemma,
        });
    }
    let special = components.iter().all(|v| v.self_osculates == Some(false))
        && pairs.iter().all(|p| p.inter_osculates == Some(false));
    let crossing_graph = o.crossing_graph(comps.len());
    let coloring = chromatic_number(&crossing_graph);
    SpecialnessReport { components, pairs, crossing_graph, coloring, lemma_agrees, special }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubecomplex::cubulate;
    use crate::dodecomplex::appendix::{six_cover, special_cover};
    use crate::dodecomplex::{base_complex, DodecahedralComplex};
    use crate::fpgroup::Space;

    #[test]
    fn three_torus_is_special() {
        let r = specialness(&CubeComplex::three_torus());
        assert!(r.special);
        assert_eq!(r.pairs.len(), 3);
        assert_eq!(r.coloring.colors, 3);
    }

    #[test]
    fn ws_base_is_not_special() {
        let r = specialness(&cubulate(&base_complex(Space::Ws)));
        assert!(!r.special);
        assert!(!r.all_embedded());
    }

    #[test]
    fn six_cover_self_osculates() {
        let x = DodecahedralComplex::cover(Space::Ws, &six_cover().action);
        let r = specialness(&cubulate(&x));
        assert!(r.lemma_agrees);
        assert!(r.components.iter().all(|v| v.self_osculates == Some(true)));
        assert!(!r.special);
        // every pair of the six components crosses somewhere
        assert_eq!(r.crossing_graph.edges.len(), 15);
        assert_eq!(r.coloring.colors, 6);
    }

    #[test]
    fn special_cover_is_special() {
        let x = DodecahedralComplex::cover(Space::Ws, &special_cover().action);
        let c = cubulate(&x);
        let h = HyperplaneSystem::new(&c);
        assert_eq!(h.components().len(), 60);
        for s in h.components() {
            assert_eq!(s.near.set.len(), 12);
            assert_eq!(s.sheet_multiplicity().len(), 12);
        }
        let r = specialness_of(&h);
        assert!(r.lemma_agrees);
        assert!(r.special);
        for p in &r.pairs {
            assert_eq!((p.intersecting_disk_pairs, p.near_union), (3, 21));
        }
    }
}
