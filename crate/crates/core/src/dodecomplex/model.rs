use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpgroup::{Generator, GENERATOR_COUNT};

pub const VERTICES: usize = 20;
pub const EDGES: usize = 30;
pub const FACES: usize = 12;

/// Which pentagon of a generator pair: crossing a tail pentagon applies the
/// generator, crossing a head pentagon its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Tail,
    Head,
}

impl Side {
    pub fn symbol(self) -> char {
        match self {
            Side::Tail => '⊗',
            Side::Head => '⊙',
        }
    }

    pub fn from_symbol(c: char) -> Option<Side> {
        match c {
            '⊗' => Some(Side::Tail),
            '⊙' => Some(Side::Head),
            _ => None,
        }
    }

    pub fn flip(self) -> Side {
        match self {
            Side::Tail => Side::Head,
            Side::Head => Side::Tail,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceLabel {
    pub generator: Generator,
    pub side: Side,
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.generator, self.side.symbol())
    }
}

/// The combinatorial dodecahedron with its antipodal map and face labels.
/// Pentagons are vertex cycles, counterclockwise seen from outside.
#[derive(Clone, Debug)]
pub struct DodecahedronModel {
    faces: [[u8; 5]; FACES],
    vertex_antipode: [u8; VERTICES],
    face_antipode: [u8; FACES],
    labels: [FaceLabel; FACES],
    edges: Vec<[u8; 2]>,
    edge_id: [[u8; VERTICES]; VERTICES],
    edge_faces: [[u8; 2]; EDGES],
    face_edges: [[u8; 5]; FACES],
    vertex_faces: [[u8; 3]; VERTICES],
    face_by_label: [[u8; 2]; GENERATOR_COUNT],
}

#[derive(Deserialize)]
struct RawModel {
    faces: Vec<Vec<u8>>,
    vertex_antipode: Vec<u8>,
    face_antipode: Vec<u8>,
    labels: Vec<(String, Side)>,
}

const FIXTURE: &str = include_str!("../../fixtures/dodecahedron.json");

/// The bundled model, validated on first use.
pub fn canonical_dodecahedron() -> &'static DodecahedronModel {
    static MODEL: OnceLock<DodecahedronModel> = OnceLock::new();
    MODEL.get_or_init(|| DodecahedronModel::from_json(FIXTURE).expect("bundled dodecahedron fixture"))
}

impl DodecahedronModel {
    pub fn from_json(text: &str) -> Result<DodecahedronModel> {
        let raw: RawModel = serde_json::from_str(text).map_err(|e| Error::CorruptFixture(e.to_string()))?;
        let bad = |m: &str| Error::CorruptFixture(m.to_string());
        if raw.faces.len() != FACES || raw.vertex_antipode.len() != VERTICES || raw.face_antipode.len() != FACES {
            return Err(bad("wrong cell counts"));
        }
        let mut faces = [[0u8; 5]; FACES];
        for (f, face) in raw.faces.iter().enumerate() {
            if face.len() != 5 || face.iter().any(|&v| v as usize >= VERTICES) {
                return Err(bad("pentagons need 5 vertices in range"));
            }
            faces[f].copy_from_slice(face);
        }
        let mut labels = [FaceLabel { generator: Generator::new(0), side: Side::Tail }; FACES];
        if raw.labels.len() != FACES {
            return Err(bad("need 12 face labels"));
        }
        for (f, (g, side)) in raw.labels.iter().enumerate() {
            let mut chars = g.chars();
            let generator = match (chars.next().and_then(Generator::from_symbol), chars.next()) {
                (Some(g), None) => g,
                _ => return Err(bad("bad generator symbol")),
            };
            labels[f] = FaceLabel { generator, side: *side };
        }
        let mut m = DodecahedronModel {
            faces,
            vertex_antipode: raw.vertex_antipode.try_into().unwrap(),
            face_antipode: raw.face_antipode.try_into().unwrap(),
            labels,
            edges: Vec::new(),
            edge_id: [[u8::MAX; VERTICES]; VERTICES],
            edge_faces: [[u8::MAX; 2]; EDGES],
            face_edges: [[0; 5]; FACES],
            vertex_faces: [[u8::MAX; 3]; VERTICES],
            face_by_label: [[u8::MAX; 2]; GENERATOR_COUNT],
        };
        m.derive_incidence()?;
        m.validate()?;
        Ok(m)
    }

    fn derive_incidence(&mut self) -> Result<()> {
        let bad = |m: String| Error::CorruptFixture(m);
        for f in 0..FACES {
            for i in 0..5 {
                let (a, b) = (self.faces[f][i], self.faces[f][(i + 1) % 5]);
                let (lo, hi) = (a.min(b) as usize, a.max(b) as usize);
                if self.edge_id[lo][hi] == u8::MAX {
                    if self.edges.len() == EDGES {
                        return Err(bad("more than 30 edges".into()));
                    }
                    self.edge_id[lo][hi] = self.edges.len() as u8;
                    self.edge_id[hi][lo] = self.edges.len() as u8;
                    self.edges.push([lo as u8, hi as u8]);
                }
                let e = self.edge_id[lo][hi] as usize;
                self.face_edges[f][i] = e as u8;
                let slot = self.edge_faces[e].iter().position(|&x| x == u8::MAX);
                match slot {
                    Some(s) => self.edge_faces[e][s] = f as u8,
                    None => return Err(bad(format!("edge {lo}-{hi} in more than two pentagons"))),
                }
                let v = a as usize;
                match self.vertex_faces[v].iter().position(|&x| x == u8::MAX) {
                    Some(s) => self.vertex_faces[v][s] = f as u8,
                    None => return Err(bad(format!("vertex {v} in more than three pentagons"))),
                }
            }
        }
        if self.edges.len() != EDGES {
            return Err(bad(format!("{} edges instead of 30", self.edges.len())));
        }
        for (f, l) in self.labels.iter().enumerate() {
            let slot = &mut self.face_by_label[l.generator.index()][l.side as usize];
            if *slot != u8::MAX {
                return Err(bad(format!("label {l} used twice")));
            }
            *slot = f as u8;
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::CorruptFixture(m));
        for v in 0..VERTICES {
            if self.vertex_faces[v].contains(&u8::MAX) {
                return bad(format!("vertex {v} not of degree 3"));
            }
            let a = self.vertex_antipode[v] as usize;
            if a >= VERTICES || a == v || self.vertex_antipode[a] as usize != v {
                return bad(format!("vertex antipode not a free involution at {v}"));
            }
        }
        for e in 0..EDGES {
            let [f, g] = self.edge_faces[e];
            if g == u8::MAX {
                return bad(format!("edge {e} on one pentagon only"));
            }
            // consistent orientation: the two pentagons traverse the edge oppositely
            let [a, b] = self.edges[e];
            if self.traverses(f as usize, a, b) == self.traverses(g as usize, a, b) {
                return bad(format!("pentagons at edge {e} are not coherently oriented"));
            }
        }
        for f in 0..FACES {
            let h = self.face_antipode[f] as usize;
            if h >= FACES || h == f || self.face_antipode[h] as usize != f {
                return bad(format!("face antipode not a free involution at {f}"));
            }
            let mut img: Vec<u8> = self.faces[f].iter().map(|&v| self.vertex_antipode[v as usize]).collect();
            let mut target = self.faces[h].to_vec();
            // the antipodal map reverses orientation
            img.reverse();
            let k = target.iter().position(|&v| v == img[0]);
            match k {
                Some(k) => target.rotate_left(k),
                None => return bad(format!("antipode of pentagon {f} is not pentagon {h}")),
            }
            if img != target {
                return bad(format!("antipode of pentagon {f} is not pentagon {h} reversed"));
            }
            let (l, m) = (self.labels[f], self.labels[h]);
            if l.generator != m.generator || l.side == m.side {
                return bad(format!("pentagons {f} and {h} are antipodal but not a generator pair"));
            }
        }
        Ok(())
    }

    fn traverses(&self, f: usize, a: u8, b: u8) -> bool {
        (0..5).any(|i| self.faces[f][i] == a && self.faces[f][(i + 1) % 5] == b)
    }

    pub fn faces(&self) -> &[[u8; 5]; FACES] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &[u8; 5] {
        &self.faces[f]
    }

    pub fn vertex_antipode(&self, v: usize) -> usize {
        self.vertex_antipode[v] as usize
    }

    pub fn face_antipode(&self, f: usize) -> usize {
        self.face_antipode[f] as usize
    }

    pub fn label(&self, f: usize) -> FaceLabel {
        self.labels[f]
    }

    pub fn face_of(&self, g: Generator, side: Side) -> usize {
        self.face_by_label[g.index()][side as usize] as usize
    }

    pub fn edges(&self) -> &[[u8; 2]] {
        &self.edges
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        match self.edge_id[a][b] {
            u8::MAX => None,
            e => Some(e as usize),
        }
    }

    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e].map(|f| f as usize)
    }

    /// Edge `i` of a pentagon joins its vertices `i` and `i + 1`.
    pub fn face_edges(&self, f: usize) -> [usize; 5] {
        self.face_edges[f].map(|e| e as usize)
    }

    pub fn vertex_faces(&self, v: usize) -> [usize; 3] {
        self.vertex_faces[v].map(|f| f as usize)
    }

    /// The other pentagon on edge `e`.
    pub fn across(&self, f: usize, e: usize) -> usize {
        let [a, b] = self.edge_faces(e);
        if a == f {
            b
        } else {
            a
        }
    }

    pub fn position(&self, f: usize, v: usize) -> Option<usize> {
        self.faces[f].iter().position(|&x| x as usize == v)
    }

    /// Position of edge `e` in pentagon `f`.
    pub fn edge_position(&self, f: usize, e: usize) -> Option<usize> {
        self.face_edges[f].iter().position(|&x| x as usize == e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_valid() {
        let m = canonical_dodecahedron();
        assert_eq!(m.edges().len(), 30);
        for g in Generator::ALL {
            let t = m.face_of(g, Side::Tail);
            let h = m.face_of(g, Side::Head);
            assert_eq!(m.face_antipode(t), h);
        }
        for v in 0..VERTICES {
            assert_ne!(m.vertex_antipode(v), v);
        }
    }

    #[test]
    fn corrupt_fixtures_are_rejected() {
        let broken = FIXTURE.replacen("[4,8,0,9,15]", "[4,8,0,9,16]", 1);
        assert!(matches!(DodecahedronModel::from_json(&broken), Err(Error::CorruptFixture(_))));
        let swapped = FIXTURE.replacen("[\"u\",\"tail\"]", "[\"v\",\"tail\"]", 1);
        assert!(matches!(DodecahedronModel::from_json(&swapped), Err(Error::CorruptFixture(_))));
        assert!(DodecahedronModel::from_json("{}").is_err());
    }
}
