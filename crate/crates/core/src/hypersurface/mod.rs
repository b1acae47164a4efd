//! Hyperplanes of a cube complex (the canonical immersed surface built from
//! mid-squares), their pentagonal disks, osculation tests and the
//! specialness verdict.

mod crossing;
mod disks;
mod osculation;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cubecomplex::{edge_slot, other_axes, square_slot, CubeComplex, VertexRole};
use crate::dodecomplex::canonical_dodecahedron;
use crate::error::{Error, Result};
use crate::unionfind::ParityUnionFind;

pub use crate::dodecomplex::appendix::DiskLabel;
pub use crossing::{chromatic_number, Coloring, CrossingGraph};
pub use disks::{disk_surfaces, DiskSurfaces};
pub use osculation::{
    inter_osculates_direct, inter_osculates_lemma, self_osculates_direct, self_osculates_lemma, specialness,
    specialness_of, ComponentVerdict, Osculation, PairVerdict, SpecialnessReport,
};

/// The mid-square of a cube normal to one axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MidSquare {
    pub cube: u32,
    pub axis: u8,
}

/// Dodecahedral vertices at the far end of the vertex-to-midpoint dual
/// edges of a surface: the set, and each vertex with its multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NearVertices {
    pub set: BTreeSet<u32>,
    pub multiset: BTreeMap<u32, usize>,
    pub incidences: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceComponent {
    pub id: usize,
    pub mid_squares: Vec<MidSquare>,
    /// Distinct cube edges crossed by the surface, sorted.
    pub dual_edges: Vec<u32>,
    /// Sorted by (sheet, generator, side); empty unless the complex comes
    /// from a dodecahedral cubulation.
    pub disks: Vec<DiskLabel>,
    pub euler_characteristic: i64,
    pub two_sided: bool,
    pub orientable: bool,
    pub embedded: bool,
    pub near: NearVertices,
}

impl SurfaceComponent {
    /// Orientable genus, or the number of cross-caps for a nonorientable
    /// surface.
    pub fn genus(&self) -> i64 {
        if self.orientable {
            (2 - self.euler_characteristic) / 2
        } else {
            2 - self.euler_characteristic
        }
    }

    pub fn euler_genus(&self) -> (i64, bool, i64) {
        (self.euler_characteristic, self.orientable, self.genus())
    }

    pub fn is_sphere(&self) -> bool {
        self.orientable && self.euler_characteristic == 2
    }

    /// Number of disks on each sheet that carries any.
    pub fn sheet_multiplicity(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for d in &self.disks {
            *m.entry(d.sheet).or_default() += 1;
        }
        m
    }
}

/// The hyperplanes of a cube complex together with the per-edge data the
/// osculation tests need.
pub struct HyperplaneSystem<'a> {
    complex: &'a CubeComplex,
    /// Component of each cube edge.
    edge_component: Vec<u32>,
    /// Direction of each edge as a dual edge relative to its stored one.
    edge_parity: Vec<u8>,
    components: Vec<SurfaceComponent>,
}

impl<'a> HyperplaneSystem<'a> {
    pub fn new(c: &'a CubeComplex) -> HyperplaneSystem<'a> {
        let ne = c.edge_count();
        let mut pu = ParityUnionFind::new(ne);
        for cube in c.cubes() {
            for axis in 0..3 {
                let s0 = axis * 4;
                for k in 1..4 {
                    let rel = u8::from(cube.reversed[s0] ^ cube.reversed[s0 + k]);
                    pu.relate(cube.edges[s0] as usize, cube.edges[s0 + k] as usize, rel);
                }
            }
        }
        let mut root_id = BTreeMap::new();
        let mut raw = vec![0u32; ne];
        let mut edge_parity = vec![0u8; ne];
        for e in 0..ne {
            let (r, p) = pu.find(e);
            let next = root_id.len() as u32;
            raw[e] = *root_id.entry(r).or_insert(next);
            edge_parity[e] = p;
        }
        let n = root_id.len();
        let mut two_sided = vec![true; n];
        for (&r, &id) in &root_id {
            two_sided[id as usize] = !pu.has_conflict(r);
        }
        let mut mids = vec![Vec::new(); n];
        for (i, cube) in c.cubes().iter().enumerate() {
            for axis in 0..3 {
                mids[raw[cube.edges[axis * 4] as usize] as usize].push(MidSquare { cube: i as u32, axis: axis as u8 });
            }
        }
        let mut midlines = vec![0i64; n];
        let mut square_done = vec![false; c.square_count()];
        for cube in c.cubes() {
            for k in 0..3 {
                for side in 0..2 {
                    let sq = cube.squares[square_slot(k, side)] as usize;
                    if std::mem::replace(&mut square_done[sq], true) {
                        continue;
                    }
                    let (a, b) = other_axes(k);
                    for axis in [a, b] {
                        let e = cube.edges[edge_slot(axis, side << k)];
                        midlines[raw[e as usize] as usize] += 1;
                    }
                }
            }
        }
        let mut dual = vec![Vec::new(); n];
        for e in 0..ne {
            dual[raw[e] as usize].push(e as u32);
        }
        let mut components: Vec<SurfaceComponent> = (0..n)
            .map(|i| {
                let mid_squares = std::mem::take(&mut mids[i]);
                let mut per_cube = BTreeMap::new();
                for m in &mid_squares {
                    *per_cube.entry(m.cube).or_insert(0usize) += 1;
                }
                let dual_edges = std::mem::take(&mut dual[i]);
                let chi = dual_edges.len() as i64 - midlines[i] + mid_squares.len() as i64;
                let mut s = SurfaceComponent {
                    id: i,
                    near: near_vertices_of(c, &dual_edges),
                    disks: Vec::new(),
                    dual_edges,
                    euler_characteristic: chi,
                    two_sided: two_sided[i],
                    orientable: two_sided[i] && c.is_orientable(),
                    embedded: per_cube.values().all(|&k| k == 1),
                    mid_squares,
                };
                s.disks = pentagonal_disks(c, &s).unwrap_or_default();
                s
            })
            .collect();
        // order by smallest disk, then by smallest dual edge
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (components[i].disks.first().copied(), components[i].dual_edges[0]));
        let mut rank = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new as u32;
        }
        components.sort_by_key(|s| rank[s.id]);
        for (i, s) in components.iter_mut().enumerate() {
            s.id = i;
        }
        let edge_component = raw.iter().map(|&r| rank[r as usize]).collect();
        HyperplaneSystem { complex: c, edge_component, edge_parity, components }
    }

    pub fn complex(&self) -> &CubeComplex {
        self.complex
    }

    pub fn components(&self) -> &[SurfaceComponent] {
        &self.components
    }

    pub fn into_components(self) -> Vec<SurfaceComponent> {
        self.components
    }

    pub fn component_of_edge(&self, e: usize) -> usize {
        self.edge_component[e] as usize
    }

    pub fn component_of(&self, m: MidSquare) -> usize {
        let cube = &self.complex.cubes()[m.cube as usize];
        self.component_of_edge(cube.edges[m.axis as usize * 4] as usize)
    }
}

/// Hyperplanes of `c`, ordered by their smallest disk label (or smallest
/// dual edge when there are no disks).
pub fn extract_components(c: &CubeComplex) -> Vec<SurfaceComponent> {
    HyperplaneSystem::new(c).into_components()
}

fn near_vertices_of(c: &CubeComplex, dual_edges: &[u32]) -> NearVertices {
    let mut near = NearVertices::default();
    for &e in dual_edges {
        let ends = c.edge_ends(e as usize);
        let roles = ends.map(|v| c.vertex_role(v as usize));
        let d = match roles {
            [VertexRole::DodecahedralVertex, VertexRole::EdgeMidpoint] => ends[0],
            [VertexRole::EdgeMidpoint, VertexRole::DodecahedralVertex] => ends[1],
            _ => continue,
        };
        if let Some(v) = c.dodecahedral_vertex(d as usize) {
            near.set.insert(v);
            *near.multiset.entry(v).or_default() += 1;
            near.incidences += 1;
        }
    }
    near
}

/// Groups the mid-squares of `s` by the face-center-to-cell-center edge
/// they cross; each group of five is one pentagonal disk.
pub fn pentagonal_disks(c: &CubeComplex, s: &SurfaceComponent) -> Result<Vec<DiskLabel>> {
    let origins = c.origins();
    if origins.len() != c.cubes().len() {
        return Err(Error::Precondition("complex is not a dodecahedral cubulation".into()));
    }
    let model = canonical_dodecahedron();
    let mut groups: BTreeMap<u32, (usize, DiskLabel)> = BTreeMap::new();
    for m in &s.mid_squares {
        let cube = &c.cubes()[m.cube as usize];
        let axis = m.axis as usize;
        let center_edge = cube.edges[edge_slot(axis, 7)];
        let o = origins[m.cube as usize];
        let label = model.label(o.faces[axis] as usize);
        let disk = DiskLabel { sheet: o.sheet, generator: label.generator, side: label.side };
        let entry = groups.entry(center_edge).or_insert((0, disk));
        if entry.1 != disk {
            return Err(Error::Integrity(format!("disk {disk} and {} share a center", entry.1)));
        }
        entry.0 += 1;
    }
    let mut disks = Vec::with_capacity(groups.len());
    for (n, d) in groups.into_values() {
        if n != 5 {
            return Err(Error::Integrity(format!("disk {d} has {n} mid-squares")));
        }
        disks.push(d);
    }
    disks.sort_unstable();
    Ok(disks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubecomplex::cubulate;
    use crate::dodecomplex::{appendix::six_cover, base_complex, DodecahedralComplex};
    use crate::fpgroup::Space;

    #[test]
    fn three_torus_has_three_tori() {
        let comps = extract_components(&CubeComplex::three_torus());
        assert_eq!(comps.len(), 3);
        for s in &comps {
            assert_eq!(s.euler_characteristic, 0);
            assert!(s.two_sided && s.embedded);
            assert_eq!(s.genus(), 1);
        }
    }

    #[test]
    fn ws_base_surface() {
        let c = cubulate(&base_complex(Space::Ws));
        let comps = extract_components(&c);
        assert_eq!(comps.len(), 1);
        let s = &comps[0];
        assert_eq!(s.mid_squares.len(), 60);
        assert_eq!(s.disks.len(), 12);
        assert!(s.two_sided && s.orientable && !s.embedded);
        assert_eq!(s.genus(), 4);
        assert_eq!(s.near.incidences, 12);
    }

    #[test]
    fn small_bases() {
        let phs = extract_components(&cubulate(&base_complex(Space::Phs)));
        assert_eq!(phs.len(), 1);
        assert!(phs[0].is_sphere());
        let rp3 = extract_components(&cubulate(&base_complex(Space::Rp3)));
        assert_eq!(rp3.len(), 6);
        assert!(rp3.iter().all(|s| s.is_sphere() && s.embedded && s.disks.len() == 2));
    }

    #[test]
    fn six_cover_surfaces() {
        let printed = six_cover();
        let x = DodecahedralComplex::cover(Space::Ws, &printed.action);
        let comps = extract_components(&cubulate(&x));
        assert_eq!(comps.len(), 6);
        for s in &comps {
            assert!(s.embedded && s.orientable);
            assert_eq!(s.euler_characteristic, -6);
            assert_eq!(s.disks.len(), 12);
            assert!(s.sheet_multiplicity().values().all(|&k| k == 2));
        }
    }
}
