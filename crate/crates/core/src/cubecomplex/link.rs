use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use super::{edge_slot, other_axes, square_slot, Cube, CubeComplex, VertexRole};

/// An end of an edge: (edge, 0 for its start or 1 for its end).
pub(crate) type EdgeEnd = (u32, u8);

/// Summary of the link of one vertex. Link vertices are edge-ends at the
/// vertex, link edges come from square corners, triangles from cube corners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkVerdict {
    pub vertex: u32,
    pub role: VertexRole,
    pub link_vertices: usize,
    pub link_edges: usize,
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub simplicial: bool,
    /// Every 3-clique of the link graph spans a triangle.
    pub flag: bool,
}

impl LinkVerdict {
    pub fn passes(&self) -> bool {
        self.simplicial && self.flag
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NpcReport {
    pub min_edge_degree: usize,
    pub pseudomanifold: bool,
    pub links: Vec<LinkVerdict>,
    pub npc: bool,
}

impl NpcReport {
    pub fn failing_links(&self) -> impl Iterator<Item = &LinkVerdict> {
        self.links.iter().filter(|l| !l.passes())
    }
}

pub(crate) fn corner_end(cube: &Cube, axis: usize, corner: usize) -> EdgeEnd {
    let slot = edge_slot(axis, corner);
    let (p, _) = Cube::edge_corners(slot);
    let end = u8::from(corner != p) ^ u8::from(cube.reversed[slot]);
    (cube.edges[slot], end)
}

#[derive(Default)]
struct LinkData {
    /// Square corner occurrences keyed by (square, sorted edge-end pair).
    square_corners: HashMap<(u32, EdgeEnd, EdgeEnd), usize>,
    triangles: Vec<[EdgeEnd; 3]>,
}

fn judge(vertex: u32, role: VertexRole, data: &LinkData, ends: &[EdgeEnd]) -> LinkVerdict {
    let mut simplicial = true;
    let mut pair_count: HashMap<(EdgeEnd, EdgeEnd), usize> = HashMap::new();
    for (&(_, a, b), &n) in &data.square_corners {
        // each square corner is seen once from each of its two cubes
        if a == b || n % 2 != 0 {
            simplicial = false;
        }
        *pair_count.entry((a, b)).or_default() += n.div_ceil(2);
    }
    if pair_count.values().any(|&n| n > 1) {
        simplicial = false;
    }
    let mut tri_set = HashSet::new();
    for t in &data.triangles {
        let mut s = *t;
        s.sort_unstable();
        if s[0] == s[1] || s[1] == s[2] || !tri_set.insert(s) {
            simplicial = false;
        }
    }
    let mut adj: BTreeMap<EdgeEnd, Vec<EdgeEnd>> = ends.iter().map(|&e| (e, Vec::new())).collect();
    for &(a, b) in pair_count.keys() {
        if a != b {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
    }
    for nbrs in adj.values_mut() {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    let mut flag = true;
    'outer: for (&u, nu) in &adj {
        for &v in nu.iter().filter(|&&v| v > u) {
            let nv = &adj[&v];
            for &w in nu.iter().filter(|&&w| w > v) {
                if nv.binary_search(&w).is_ok() && !tri_set.contains(&[u, v, w]) {
                    flag = false;
                    break 'outer;
                }
            }
        }
    }
    let link_vertices = adj.len();
    let link_edges = pair_count.values().sum::<usize>();
    let triangles = data.triangles.len();
    LinkVerdict {
        vertex,
        role,
        link_vertices,
        link_edges,
        triangles,
        euler_characteristic: link_vertices as i64 - link_edges as i64 + triangles as i64,
        simplicial,
        flag,
    }
}

/// Checks the link condition at every vertex. The complex is nonpositively
/// curved when it is a closed pseudomanifold, every link is a flag simplicial
/// complex and no edge has degree below 4.
pub fn npc_report(c: &CubeComplex) -> NpcReport {
    let mut data: Vec<LinkData> = (0..c.vertex_count()).map(|_| LinkData::default()).collect();
    for cube in c.cubes() {
        for corner in 0..8 {
            let x = cube.corners[corner] as usize;
            let ends: [EdgeEnd; 3] = std::array::from_fn(|a| corner_end(cube, a, corner));
            for k in 0..3 {
                let (a, b) = other_axes(k);
                let sq = cube.squares[square_slot(k, (corner >> k) & 1)];
                let (p, q) = (ends[a].min(ends[b]), ends[a].max(ends[b]));
                *data[x].square_corners.entry((sq, p, q)).or_default() += 1;
            }
            data[x].triangles.push(ends);
        }
    }
    let mut ends_at: Vec<Vec<EdgeEnd>> = vec![Vec::new(); c.vertex_count()];
    for e in 0..c.edge_count() {
        let [a, b] = c.edge_ends(e);
        ends_at[a as usize].push((e as u32, 0));
        ends_at[b as usize].push((e as u32, 1));
    }
    let links: Vec<LinkVerdict> =
        (0..c.vertex_count()).map(|v| judge(v as u32, c.vertex_role(v), &data[v], &ends_at[v])).collect();
    let min_edge_degree = c.edge_degrees().into_iter().min().unwrap_or(0);
    let pseudomanifold = c.is_closed_pseudomanifold();
    let npc = pseudomanifold && min_edge_degree >= 4 && links.iter().all(LinkVerdict::passes);
    NpcReport { min_edge_degree, pseudomanifold, links, npc }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubecomplex::cubulate;
    use crate::dodecomplex::base_complex;
    use crate::fpgroup::Space;

    #[test]
    fn three_torus_is_npc() {
        let r = npc_report(&CubeComplex::three_torus());
        assert!(r.npc);
        let l = &r.links[0];
        assert_eq!((l.link_vertices, l.link_edges, l.triangles), (6, 12, 8));
        assert_eq!(l.euler_characteristic, 2);
    }

    #[test]
    fn base_spaces() {
        let ws = npc_report(&cubulate(&base_complex(Space::Ws)));
        assert!(ws.npc, "{:?}", ws.failing_links().next());
        assert!(ws.links.iter().all(|l| l.euler_characteristic == 2));
        let phs = npc_report(&cubulate(&base_complex(Space::Phs)));
        assert_eq!(phs.min_edge_degree, 3);
        assert!(!phs.npc);
        let rp3 = npc_report(&cubulate(&base_complex(Space::Rp3)));
        assert_eq!(rp3.min_edge_degree, 2);
        assert!(!rp3.npc);
    }
}
