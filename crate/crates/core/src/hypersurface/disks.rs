use serde::Serialize;

use super::DiskLabel;
use crate::dodecomplex::{DodecahedralComplex, FACES};
use crate::unionfind::UnionFind;

/// Surface components computed directly on pentagonal disks, without
/// building the cubulation. Disk `12 * sheet + f` is parallel to pentagon
/// `f` of that sheet.
#[derive(Clone, Debug, Serialize)]
pub struct DiskSurfaces {
    pub component_of: Vec<u32>,
    pub disks: Vec<Vec<DiskLabel>>,
    pub embedded: Vec<bool>,
}

impl DiskSurfaces {
    pub fn count(&self) -> usize {
        self.disks.len()
    }

    pub fn all_embedded(&self) -> bool {
        self.embedded.iter().all(|&b| b)
    }

    pub fn any_embedded(&self) -> bool {
        self.embedded.iter().any(|&b| b)
    }
}

/// Near the edge it shares with a neighbouring pentagon `g`, the disk
/// parallel to `f` runs into `g`; across `g` it continues as the disk
/// parallel to the pentagon next to the image of that edge.
pub fn disk_surfaces(x: &DodecahedralComplex) -> DiskSurfaces {
    let m = x.model();
    let k = x.degree();
    let mut uf = UnionFind::new(FACES * k);
    for s in 0..k {
        for f in 0..FACES {
            for e in m.face_edges(f) {
                let g = m.across(f, e);
                let pos = m.edge_position(g, e).expect("edge lies on both pentagons");
                let (t, h, j) = x.glue_edge(s, g, pos);
                let next = m.across(h, m.face_edges(h)[j]);
                uf.union(FACES * s + f, FACES * t + next);
            }
        }
    }
    let label = |i: usize| {
        let l = m.label(i % FACES);
        DiskLabel { sheet: (i / FACES) as u32, generator: l.generator, side: l.side }
    };
    let mut groups: Vec<(usize, Vec<DiskLabel>)> = Vec::new();
    let mut root_group = vec![usize::MAX; FACES * k];
    for i in 0..FACES * k {
        let r = uf.find(i);
        if root_group[r] == usize::MAX {
            root_group[r] = groups.len();
            groups.push((r, Vec::new()));
        }
        groups[root_group[r]].1.push(label(i));
    }
    for g in &mut groups {
        g.1.sort_unstable();
    }
    groups.sort_by_key(|g| g.1[0]);
    let mut component_of = vec![0u32; FACES * k];
    for (id, (r, _)) in groups.iter().enumerate() {
        root_group[*r] = id;
    }
    for (i, c) in component_of.iter_mut().enumerate() {
        *c = root_group[uf.find(i)] as u32;
    }
    let mut embedded = vec![true; groups.len()];
    for s in 0..k {
        for [f, g] in m.edges().iter().enumerate().map(|(e, _)| m.edge_faces(e)) {
            let (a, b) = (component_of[FACES * s + f], component_of[FACES * s + g]);
            if a == b {
                embedded[a as usize] = false;
            }
        }
    }
    DiskSurfaces { component_of, disks: groups.into_iter().map(|g| g.1).collect(), embedded }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubecomplex::cubulate;
    use crate::dodecomplex::{appendix::six_cover, base_complex};
    use crate::fpgroup::Space;
    use crate::hypersurface::extract_components;

    fn agrees(x: &DodecahedralComplex) {
        let fast = disk_surfaces(x);
        let slow = extract_components(&cubulate(x));
        assert_eq!(fast.count(), slow.len());
        for (i, s) in slow.iter().enumerate() {
            assert_eq!(fast.disks[i], s.disks);
            assert_eq!(fast.embedded[i], s.embedded);
        }
    }

    #[test]
    fn matches_cube_path() {
        for space in [Space::Ws, Space::Phs, Space::Rp3] {
            agrees(&base_complex(space));
        }
        agrees(&DodecahedralComplex::cover(Space::Ws, &six_cover().action));
    }
}
