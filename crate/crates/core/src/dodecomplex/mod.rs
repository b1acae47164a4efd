//! Dodecahedral complexes: the base spaces as one dodecahedron with
//! opposite pentagons glued, and their covers built from permutation
//! actions.

pub mod appendix;
mod model;

use serde::{Deserialize, Serialize};

use crate::cosets::PermutationAction;
use crate::error::{Error, Result};
use crate::fpgroup::{builtin_presentation, relators_equivalent, Generator, Letter, Presentation, Space, Word};
use crate::homology::{schreier_columns, BinaryCocycle};
use crate::unionfind::{ParityUnionFind, UnionFind};

pub use model::{canonical_dodecahedron, DodecahedronModel, FaceLabel, Side, EDGES, FACES, VERTICES};

/// How a tail pentagon is matched to its head pentagon: the antipodal map
/// followed by `offset` steps along the head pentagon's vertex cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistScheme {
    pub space: Space,
    pub offset: u8,
}

impl TwistScheme {
    pub fn for_space(space: Space) -> TwistScheme {
        let offset = match space {
            Space::Ws => 1,
            Space::Phs => 3,
            Space::Rp3 => 0,
        };
        TwistScheme { space, offset }
    }

    /// `map[i]` is the position in the partner pentagon of vertex `i` of
    /// pentagon `f`.
    pub fn vertex_map(&self, f: usize) -> [u8; 5] {
        let m = canonical_dodecahedron();
        let tail_map = |t: usize| -> [u8; 5] {
            let h = m.face_antipode(t);
            std::array::from_fn(|i| {
                let a = m.vertex_antipode(m.face(t)[i] as usize);
                ((m.position(h, a).unwrap() + self.offset as usize) % 5) as u8
            })
        };
        match m.label(f).side {
            Side::Tail => tail_map(f),
            Side::Head => {
                let fwd = tail_map(m.face_antipode(f));
                let mut inv = [0u8; 5];
                for (i, &j) in fwd.iter().enumerate() {
                    inv[j as usize] = i as u8;
                }
                inv
            }
        }
    }
}

/// Where a pentagon of some sheet is glued: the partner sheet and pentagon
/// and the matching of vertex positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub sheet: u32,
    pub face: u8,
    pub vmap: [u8; 5],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FVector {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub cells: usize,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64 - self.cells as i64
    }

    pub fn scaled(&self, k: usize) -> FVector {
        FVector { vertices: k * self.vertices, edges: k * self.edges, faces: k * self.faces, cells: k * self.cells }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.vertices, self.edges, self.faces, self.cells)
    }
}

impl std::fmt::Display for FVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.vertices, self.edges, self.faces, self.cells)
    }
}

/// Identification classes of the vertices and edges of all sheets.
#[derive(Clone, Debug)]
pub struct CellOrbits {
    /// Class of vertex `v` of sheet `s` at index `20 * s + v`.
    pub vertex_class: Vec<u32>,
    pub vertex_count: usize,
    /// Class of edge `e` of sheet `s` at index `30 * s + e`.
    pub edge_class: Vec<u32>,
    pub edge_count: usize,
}

/// `k` dodecahedra with every pentagon glued to a partner pentagon.
#[derive(Clone, Debug)]
pub struct DodecahedralComplex {
    scheme: TwistScheme,
    action: PermutationAction,
    pairing: Vec<[Gluing; FACES]>,
}

pub fn base_complex(space: Space) -> DodecahedralComplex {
    DodecahedralComplex::cover(space, &PermutationAction::identity(1))
}

/// The cover of `base` (a one-sheet complex) given by a permutation action:
/// sheet i's tail pentagon of g is glued to the head pentagon of sheet i^g.
pub fn cover_complex(base: &DodecahedralComplex, a: &PermutationAction) -> Result<DodecahedralComplex> {
    if base.degree() != 1 {
        return Err(Error::Precondition("covers are built over a one-sheet base complex".into()));
    }
    Ok(DodecahedralComplex::cover(base.space(), a))
}

/// The double cover given by a cocycle on the Schreier generators of `x`'s
/// action table (spanning tree from sheet 1, letters in alphabet order).
/// Sheet `i` of `x` lifts to sheets `i` and `i + k`.
pub fn double_cover(x: &DodecahedralComplex, c: &BinaryCocycle) -> Result<DodecahedralComplex> {
    let a = double_cover_action(x.action(), c)?;
    Ok(DodecahedralComplex::cover(x.space(), &a))
}

pub fn double_cover_action(a: &PermutationAction, c: &BinaryCocycle) -> Result<PermutationAction> {
    let t = a.as_table();
    let (cols, n) = schreier_columns(&t);
    if c.bits.len() != n {
        return Err(Error::Precondition(format!("cocycle has {} entries, expected {n}", c.bits.len())));
    }
    if c.is_zero() {
        return Err(Error::Precondition("the zero cocycle gives a disconnected double cover".into()));
    }
    let k = a.degree();
    let perms = Generator::ALL
        .iter()
        .map(|&g| {
            let p = a.perm(g);
            let mut q = vec![0u32; 2 * k];
            for i in 0..k {
                let flip = cols[i][g.index()].is_some_and(|j| c.bits[j]);
                let j = p[i] as usize;
                q[i] = (j + if flip { k } else { 0 }) as u32;
                q[i + k] = (j + if flip { 0 } else { k }) as u32;
            }
            q
        })
        .collect();
    PermutationAction::new(perms)
}

impl DodecahedralComplex {
    pub fn cover(space: Space, a: &PermutationAction) -> DodecahedralComplex {
        let m = canonical_dodecahedron();
        let scheme = TwistScheme::for_space(space);
        let maps: [[u8; 5]; FACES] = std::array::from_fn(|f| scheme.vertex_map(f));
        let inv: Vec<Vec<u32>> = Generator::ALL.iter().map(|&g| a.inverse_perm(g)).collect();
        let pairing = (0..a.degree())
            .map(|s| {
                std::array::from_fn(|f| {
                    let l = m.label(f);
                    let g = l.generator;
                    let sheet = match l.side {
                        Side::Tail => a.perm(g)[s],
                        Side::Head => inv[g.index()][s],
                    };
                    Gluing { sheet, face: m.face_antipode(f) as u8, vmap: maps[f] }
                })
            })
            .collect();
        DodecahedralComplex { scheme, action: a.clone(), pairing }
    }

    pub fn space(&self) -> Space {
        self.scheme.space
    }

    pub fn scheme(&self) -> TwistScheme {
        self.scheme
    }

    pub fn model(&self) -> &'static DodecahedronModel {
        canonical_dodecahedron()
    }

    pub fn degree(&self) -> usize {
        self.pairing.len()
    }

    pub fn action(&self) -> &PermutationAction {
        &self.action
    }

    pub fn gluing(&self, sheet: usize, face: usize) -> Gluing {
        self.pairing[sheet][face]
    }

    /// Where edge position `i` of pentagon `f` on `sheet` lands: (sheet,
    /// pentagon, edge position) on the other side. The edge is reversed.
    pub fn glue_edge(&self, sheet: usize, f: usize, i: usize) -> (usize, usize, usize) {
        let g = self.pairing[sheet][f];
        (g.sheet as usize, g.face as usize, g.vmap[(i + 1) % 5] as usize)
    }

    pub fn cell_orbits(&self) -> CellOrbits {
        let m = self.model();
        let k = self.degree();
        let mut vu = UnionFind::new(VERTICES * k);
        let mut eu = UnionFind::new(EDGES * k);
        for s in 0..k {
            for f in 0..FACES {
                let g = self.pairing[s][f];
                let (t, h) = (g.sheet as usize, g.face as usize);
                for i in 0..5 {
                    let v = m.face(f)[i] as usize;
                    let w = m.face(h)[g.vmap[i] as usize] as usize;
                    vu.union(VERTICES * s + v, VERTICES * t + w);
                    let (_, _, j) = self.glue_edge(s, f, i);
                    eu.union(EDGES * s + m.face_edges(f)[i], EDGES * t + m.face_edges(h)[j]);
                }
            }
        }
        let (vertex_class, vertex_count) = vu.classes();
        let (edge_class, edge_count) = eu.classes();
        CellOrbits {
            vertex_class: vertex_class.into_iter().map(|c| c as u32).collect(),
            vertex_count,
            edge_class: edge_class.into_iter().map(|c| c as u32).collect(),
            edge_count,
        }
    }

    pub fn f_vector(&self) -> FVector {
        let o = self.cell_orbits();
        FVector {
            vertices: o.vertex_count,
            edges: o.edge_count,
            faces: FACES * self.degree() / 2,
            cells: self.degree(),
        }
    }

    /// Number of dodecahedral edges (equivalently pentagon corners) in each
    /// edge class.
    pub fn edge_orbit_sizes(&self) -> Vec<usize> {
        let o = self.cell_orbits();
        let mut sizes = vec![0; o.edge_count];
        for &c in &o.edge_class {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Checks that the pairing is an involution and that no edge is glued
    /// to itself with reversed direction.
    pub fn check_integrity(&self) -> Result<()> {
        let m = self.model();
        let k = self.degree();
        for s in 0..k {
            for f in 0..FACES {
                let g = self.pairing[s][f];
                let back = self.pairing[g.sheet as usize][g.face as usize];
                let involutive = back.sheet as usize == s
                    && back.face as usize == f
                    && (0..5).all(|i| back.vmap[g.vmap[i] as usize] as usize == i);
                if !involutive {
                    return Err(Error::Integrity(format!(
                        "pairing of pentagon {f} on sheet {} is not involutive",
                        s + 1
                    )));
                }
            }
        }
        // orientation of each edge relative to its lowest vertex label
        let mut pu = ParityUnionFind::new(EDGES * k);
        for s in 0..k {
            for f in 0..FACES {
                let g = self.pairing[s][f];
                let h = g.face as usize;
                for i in 0..5 {
                    let (a, b) = (m.face(f)[i], m.face(f)[(i + 1) % 5]);
                    let e = m.face_edges(f)[i];
                    let a2 = m.face(h)[g.vmap[i] as usize];
                    let b2 = m.face(h)[g.vmap[(i + 1) % 5] as usize];
                    let e2 = m.edge_between(a2 as usize, b2 as usize).ok_or_else(|| {
                        Error::Integrity(format!("pentagon {f} on sheet {} glued across a non-edge", s + 1))
                    })?;
                    let rel = u8::from(a > b) ^ u8::from(a2 > b2);
                    pu.relate(EDGES * s + e, EDGES * g.sheet as usize + e2, rel);
                }
            }
        }
        if (0..EDGES * k).any(|x| pu.has_conflict(x)) {
            return Err(Error::Integrity("an edge is identified with its reverse".into()));
        }
        Ok(())
    }

    pub fn pairing_graph(&self) -> PairingGraph {
        let m = self.model();
        let mut edges = Vec::new();
        for s in 0..self.degree() {
            for g in Generator::ALL {
                let f = m.face_of(g, Side::Tail);
                edges.push((s as u32, self.pairing[s][f].sheet, g));
            }
        }
        PairingGraph { nodes: self.degree(), edges }
    }

    /// True iff some pentagon is glued to a pentagon of the same sheet.
    pub fn has_self_identification(&self) -> bool {
        self.action.has_fixed_point()
    }
}

/// One node per sheet and one edge per glued pentagon pair, colored by
/// generator; edges run from the tail sheet to the head sheet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingGraph {
    pub nodes: usize,
    pub edges: Vec<(u32, u32, Generator)>,
}

impl PairingGraph {
    pub fn loops(&self) -> usize {
        self.edges.iter().filter(|(a, b, _)| a == b).count()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.iter().map(|&(a, b, _)| (a as usize == node) as usize + (b as usize == node) as usize).sum()
    }

    pub fn is_connected(&self) -> bool {
        let mut u = UnionFind::new(self.nodes);
        for &(a, b, _) in &self.edges {
            u.union(a as usize, b as usize);
        }
        u.classes().1 == 1
    }
}

/// Reads off one relator per edge class of the base complex: walk around
/// the edge, recording the label of each pentagon crossed (inverse for head
/// pentagons), until the walk closes up.
pub fn derive_presentation(space: Space) -> Presentation {
    let m = canonical_dodecahedron();
    let base = base_complex(space);
    let mut seen = [[false; 5]; FACES];
    let mut edge_done = [false; EDGES];
    let mut relators = Vec::new();
    for f in 0..FACES {
        for i in 0..5 {
            if seen[f][i] {
                continue;
            }
            let (mut p, mut j) = (f, i);
            let mut letters = Vec::new();
            let mut edges = Vec::new();
            while !seen[p][j] {
                seen[p][j] = true;
                let l = m.label(p);
                letters.push(Letter::new(l.generator, l.side == Side::Head));
                let (_, h, k) = base.glue_edge(0, p, j);
                let e = m.face_edges(h)[k];
                edges.push(e);
                let q = m.across(h, e);
                (p, j) = (q, m.edge_position(q, e).unwrap());
            }
            if edges.iter().any(|&e| edge_done[e]) {
                continue;
            }
            for e in edges {
                edge_done[e] = true;
            }
            relators.push(Word::from_letters(letters));
        }
    }
    Presentation::new("derived", relators).expect("edge relators are reduced")
}

/// The build-time self-test tying the fixture labeling and twist offsets to
/// the published presentations.
pub fn check_calibration() -> Result<()> {
    for space in Space::ALL {
        let d = derive_presentation(space);
        if !relators_equivalent(&d, &builtin_presentation(space)) {
            return Err(Error::Calibration(format!("derived {space} presentation differs from the builtin one: {d}")));
        }
    }
    Ok(())
}

/// On-disk form of a cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverFile {
    pub space: Space,
    pub degree: usize,
    pub action: PermutationAction,
}

impl CoverFile {
    pub fn new(space: Space, action: PermutationAction) -> CoverFile {
        CoverFile { space, degree: action.degree(), action }
    }

    pub fn from_json(text: &str) -> Result<CoverFile> {
        let c: CoverFile = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("cover file: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.degree != self.action.degree() {
            return Err(Error::InvalidInput(format!(
                "degree {} but permutations of degree {}",
                self.degree,
                self.action.degree()
            )));
        }
        if !self.action.satisfies(&builtin_presentation(self.space)) {
            return Err(Error::InvalidInput("action does not satisfy the relators".into()));
        }
        if !self.action.is_transitive() {
            return Err(Error::InvalidInput("action is not transitive".into()));
        }
        Ok(())
    }

    pub fn complex(&self) -> DodecahedralComplex {
        DodecahedralComplex::cover(self.space, &self.action)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::low_index_classes;

    #[test]
    fn calibration_holds() {
        check_calibration().unwrap();
    }

    #[test]
    fn base_f_vectors() {
        let fv = |s| base_complex(s).f_vector().as_tuple();
        assert_eq!(fv(Space::Ws), (1, 6, 6, 1));
        assert_eq!(fv(Space::Phs), (5, 10, 6, 1));
        assert_eq!(fv(Space::Rp3), (10, 15, 6, 1));
    }

    #[test]
    fn derived_relator_lengths() {
        let lens = |s| {
            let mut v: Vec<usize> = derive_presentation(s).relators.iter().map(Word::len).collect();
            v.sort();
            v
        };
        assert_eq!(lens(Space::Ws), vec![5; 6]);
        assert_eq!(lens(Space::Phs), vec![3; 10]);
        assert_eq!(lens(Space::Rp3), vec![2; 15]);
    }

    #[test]
    fn base_complexes_are_consistent() {
        for s in Space::ALL {
            let b = base_complex(s);
            b.check_integrity().unwrap();
            assert_eq!(b.f_vector().euler_characteristic(), 0);
            assert!(b.has_self_identification());
            assert_eq!(b.pairing_graph().loops(), 6);
        }
    }

    #[test]
    fn degree_five_covers_multiply_f_vectors() {
        let p = builtin_presentation(Space::Ws);
        for r in low_index_classes(&p, 5).unwrap() {
            let x = DodecahedralComplex::cover(Space::Ws, &r.action());
            x.check_integrity().unwrap();
            assert_eq!(x.f_vector(), FVector { vertices: 1, edges: 6, faces: 6, cells: 1 }.scaled(r.degree()));
            assert!(x.edge_orbit_sizes().iter().all(|&n| n == 5));
            let g = x.pairing_graph();
            assert!(g.is_connected());
            assert!((0..g.nodes).all(|n| g.degree(n) == 12));
        }
    }

    #[test]
    fn cover_file_round_trip() {
        let c = CoverFile::new(Space::Ws, PermutationAction::identity(1));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(CoverFile::from_json(&text).unwrap(), c);
        assert!(CoverFile::from_json(
            r#"{"space":"ws","degree":2,"action":{"u":[1],"v":[1],"w":[1],"x":[1],"y":[1],"z":[1]}}"#
        )
        .is_err());
    }
}
