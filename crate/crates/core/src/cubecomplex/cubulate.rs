use std::collections::HashMap;
use std::sync::OnceLock;

use super::{square_slot, Cube, CubeComplex, CubeOrigin, VertexRole};
use crate::dodecomplex::{canonical_dodecahedron, DodecahedralComplex, EDGES, FACES, VERTICES};
use crate::unionfind::{ParityUnionFind, UnionFind};

/// Cells of one subdivided dodecahedron. Local vertices: dodecahedral
/// vertex `v` is `v`, the midpoint of edge `e` is `20 + e`, the center of
/// pentagon `f` is `50 + f`, the cell center is `62`.
const LOCAL_VERTICES: usize = VERTICES + EDGES + FACES + 1;
const CENTER: u8 = 62;

fn edge_vertex(e: usize) -> u8 {
    (VERTICES + e) as u8
}

fn face_vertex(f: usize) -> u8 {
    (VERTICES + EDGES + f) as u8
}

struct TemplateCube {
    corners: [u8; 8],
    edges: [u8; 12],
    squares: [u8; 6],
    faces: [u8; 3],
}

struct Template {
    /// Edges run from the corner with fewer set bits to the one with more.
    edge_ends: Vec<[u8; 2]>,
    edge_id: HashMap<(u8, u8), u8>,
    square_id: HashMap<[u8; 4], u8>,
    square_count: usize,
    cubes: Vec<TemplateCube>,
    /// Template edges and squares lying in each pentagon.
    face_edges: Vec<Vec<u8>>,
    face_squares: Vec<Vec<(u8, [u8; 4])>>,
}

fn template() -> &'static Template {
    static T: OnceLock<Template> = OnceLock::new();
    T.get_or_init(build_template)
}

fn build_template() -> Template {
    let m = canonical_dodecahedron();
    let mut edge_ends = Vec::new();
    let mut edge_id = HashMap::new();
    let mut square_id = HashMap::new();
    let mut square_count = 0usize;
    let mut cubes = Vec::new();
    for v in 0..VERTICES {
        let mut axes: Vec<usize> = (0..EDGES).filter(|&e| m.edges()[e].contains(&(v as u8))).collect();
        axes.sort_unstable();
        let face_of = |a: usize, b: usize| {
            let fa = m.edge_faces(axes[a]);
            let fb = m.edge_faces(axes[b]);
            *fa.iter().find(|f| fb.contains(f)).expect("edges at a vertex share a pentagon")
        };
        let corners: [u8; 8] = std::array::from_fn(|x| match x {
            0 => v as u8,
            1 => edge_vertex(axes[0]),
            2 => edge_vertex(axes[1]),
            4 => edge_vertex(axes[2]),
            3 => face_vertex(face_of(0, 1)),
            5 => face_vertex(face_of(0, 2)),
            6 => face_vertex(face_of(1, 2)),
            _ => CENTER,
        });
        let mut edges = [0u8; 12];
        for (slot, e) in edges.iter_mut().enumerate() {
            let (p, q) = Cube::edge_corners(slot);
            let key = (corners[p], corners[q]);
            *e = *edge_id.entry(key).or_insert_with(|| {
                edge_ends.push([key.0, key.1]);
                (edge_ends.len() - 1) as u8
            });
        }
        let mut squares = [0u8; 6];
        for axis in 0..3 {
            for side in 0..2 {
                let mut key: Vec<u8> = (0..8).filter(|x| (x >> axis) & 1 == side).map(|x| corners[x]).collect();
                key.sort_unstable();
                let key: [u8; 4] = key.try_into().unwrap();
                squares[square_slot(axis, side)] = *square_id.entry(key).or_insert_with(|| {
                    square_count += 1;
                    (square_count - 1) as u8
                });
            }
        }
        let faces = [face_of(1, 2) as u8, face_of(0, 2) as u8, face_of(0, 1) as u8];
        cubes.push(TemplateCube { corners, edges, squares, faces });
    }
    let in_face = |f: usize, x: u8| {
        let x = x as usize;
        if x < VERTICES {
            m.face(f).contains(&(x as u8))
        } else if x < VERTICES + EDGES {
            m.face_edges(f).contains(&(x - VERTICES))
        } else {
            x == face_vertex(f) as usize
        }
    };
    let face_edges = (0..FACES)
        .map(|f| {
            (0..edge_ends.len()).filter(|&e| edge_ends[e].iter().all(|&x| in_face(f, x))).map(|e| e as u8).collect()
        })
        .collect();
    let face_squares = (0..FACES)
        .map(|f| square_id.iter().filter(|(k, _)| k.iter().all(|&x| in_face(f, x))).map(|(k, &s)| (s, *k)).collect())
        .collect();
    Template { edge_ends, edge_id, square_id, square_count, cubes, face_edges, face_squares }
}

/// Subdivides every dodecahedron into 20 cubes, one around each vertex,
/// with corners at the vertex, the three adjacent edge midpoints, the three
/// adjacent pentagon centers and the cell center. Cells on the boundary are
/// identified along the pentagon pairings.
pub fn cubulate(x: &DodecahedralComplex) -> CubeComplex {
    let m = canonical_dodecahedron();
    let t = template();
    let k = x.degree();
    let ne = t.edge_ends.len();
    let ns = t.square_count;
    let mut vu = UnionFind::new(LOCAL_VERTICES * k);
    let mut eu = ParityUnionFind::new(ne * k);
    let mut su = UnionFind::new(ns * k);
    for s in 0..k {
        for f in 0..FACES {
            let g = x.gluing(s, f);
            let (ts, h) = (g.sheet as usize, g.face as usize);
            let mut phi = [u8::MAX; LOCAL_VERTICES];
            for i in 0..5 {
                phi[m.face(f)[i] as usize] = m.face(h)[g.vmap[i] as usize];
                let (_, _, j) = x.glue_edge(s, f, i);
                phi[edge_vertex(m.face_edges(f)[i]) as usize] = edge_vertex(m.face_edges(h)[j]);
            }
            phi[face_vertex(f) as usize] = face_vertex(h);
            for (a, &b) in phi.iter().enumerate() {
                if b != u8::MAX {
                    vu.union(LOCAL_VERTICES * s + a, LOCAL_VERTICES * ts + b as usize);
                }
            }
            for &e in &t.face_edges[f] {
                let [p, q] = t.edge_ends[e as usize];
                let (p2, q2) = (phi[p as usize], phi[q as usize]);
                let (e2, rel) = match t.edge_id.get(&(p2, q2)) {
                    Some(&e2) => (e2, 0),
                    None => (t.edge_id[&(q2, p2)], 1),
                };
                eu.relate(ne * s + e as usize, ne * ts + e2 as usize, rel);
            }
            for &(sq, key) in &t.face_squares[f] {
                let mut img = key.map(|x| phi[x as usize]);
                img.sort_unstable();
                su.union(ns * s + sq as usize, ns * ts + t.square_id[&img] as usize);
            }
        }
    }
    let (vclass, nv) = vu.classes();
    let (sclass, _) = su.classes();
    let mut roles = vec![VertexRole::Other; nv];
    let mut dodeca = vec![u32::MAX; nv];
    let orbits = x.cell_orbits();
    for s in 0..k {
        for a in 0..LOCAL_VERTICES {
            let c = vclass[LOCAL_VERTICES * s + a];
            roles[c] = match a {
                _ if a < VERTICES => {
                    dodeca[c] = orbits.vertex_class[VERTICES * s + a];
                    VertexRole::DodecahedralVertex
                }
                _ if a < VERTICES + EDGES => VertexRole::EdgeMidpoint,
                _ if a < LOCAL_VERTICES - 1 => VertexRole::FaceCenter,
                _ => VertexRole::CellCenter,
            };
        }
    }
    // edge classes, each stored in the direction of its root
    let mut eclass = vec![u32::MAX; ne * k];
    let mut parity = vec![0u8; ne * k];
    let mut root_class: HashMap<usize, u32> = HashMap::new();
    let mut edge_ends = Vec::new();
    for i in 0..ne * k {
        let (r, p) = eu.find(i);
        let next = root_class.len() as u32;
        let c = *root_class.entry(r).or_insert_with(|| {
            let [a, b] = t.edge_ends[r % ne];
            let sheet = r / ne;
            edge_ends.push([
                vclass[LOCAL_VERTICES * sheet + a as usize] as u32,
                vclass[LOCAL_VERTICES * sheet + b as usize] as u32,
            ]);
            next
        });
        eclass[i] = c;
        parity[i] = p;
    }
    let mut cubes = Vec::with_capacity(20 * k);
    let mut origins = Vec::with_capacity(20 * k);
    for s in 0..k {
        for (v, tc) in t.cubes.iter().enumerate() {
            let corners = tc.corners.map(|a| vclass[LOCAL_VERTICES * s + a as usize] as u32);
            let edges = tc.edges.map(|e| eclass[ne * s + e as usize]);
            let reversed = std::array::from_fn(|slot| parity[ne * s + tc.edges[slot] as usize] == 1);
            let squares = tc.squares.map(|q| sclass[ns * s + q as usize] as u32);
            cubes.push(Cube { corners, edges, reversed, squares });
            origins.push(CubeOrigin { sheet: s as u32, vertex: v as u8, faces: tc.faces });
        }
    }
    let square_count = sclass.iter().copied().max().map_or(0, |c| c + 1);
    CubeComplex::from_cubes(roles, edge_ends, square_count, cubes, true)
        .expect("cubulation is consistent")
        .with_origins(origins, dodeca)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dodecomplex::base_complex;
    use crate::fpgroup::Space;

    #[test]
    fn template_counts() {
        let t = template();
        assert_eq!(t.edge_ends.len(), 132);
        assert_eq!(t.square_count, 90);
        assert!(t.face_edges.iter().all(|e| e.len() == 15));
        assert!(t.face_squares.iter().all(|s| s.len() == 5));
    }

    #[test]
    fn base_cubulations() {
        let c = cubulate(&base_complex(Space::Ws));
        assert_eq!(c.f_vector().as_tuple(), (14, 54, 60, 20));
        assert!(c.is_closed_pseudomanifold());
        let d = c.edge_degrees();
        assert_eq!(d.iter().sum::<usize>(), 12 * 20);
        assert!(*d.iter().min().unwrap() >= 4);
        let min = |s| *cubulate(&base_complex(s)).edge_degrees().iter().min().unwrap();
        assert_eq!(min(Space::Phs), 3);
        assert_eq!(min(Space::Rp3), 2);
    }
}
