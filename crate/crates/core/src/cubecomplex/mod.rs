//! Cube complexes given corner-wise, the cubulation of dodecahedral
//! complexes (one cube around each dodecahedral vertex) and the link
//! condition.

mod cubulate;
pub(crate) mod link;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cubulate::cubulate;
pub use link::{npc_report, LinkVerdict, NpcReport};

/// Slot of the cube edge parallel to `axis` whose other two coordinates are
/// taken from `corner` (a 3-bit corner label).
pub fn edge_slot(axis: usize, corner: usize) -> usize {
    let (a, b) = other_axes(axis);
    axis * 4 + ((corner >> a) & 1) + 2 * ((corner >> b) & 1)
}

/// Slot of the cube face normal to `axis` on side `side`.
pub fn square_slot(axis: usize, side: usize) -> usize {
    2 * axis + side
}

pub fn other_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexRole {
    DodecahedralVertex,
    EdgeMidpoint,
    FaceCenter,
    CellCenter,
    Other,
}

/// One 3-cube: its corners by 3-bit label, its 12 edges by [`edge_slot`]
/// (with whether the cube's direction, 0 to 1 along the axis, runs against
/// the edge's stored direction) and its 6 faces by [`square_slot`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cube {
    pub corners: [u32; 8],
    pub edges: [u32; 12],
    pub reversed: [bool; 12],
    pub squares: [u32; 6],
}

impl Cube {
    /// The two corners of an edge slot in the cube's own direction.
    pub fn edge_corners(slot: usize) -> (usize, usize) {
        let axis = slot / 4;
        let (a, b) = other_axes(axis);
        let base = ((slot & 1) << a) | (((slot >> 1) & 1) << b);
        (base, base | 1 << axis)
    }
}

/// Where a cube of a cubulated dodecahedral complex sits: its sheet, the
/// dodecahedral vertex it surrounds, and for each axis the pentagon that
/// the mid-square normal to that axis is parallel to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeOrigin {
    pub sheet: u32,
    pub vertex: u8,
    pub faces: [u8; 3],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeFVector {
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub cubes: usize,
}

impl CubeFVector {
    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.vertices, self.edges, self.squares, self.cubes)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubeComplex {
    vertex_roles: Vec<VertexRole>,
    /// Stored direction of each edge: (start, end).
    edge_ends: Vec<[u32; 2]>,
    square_count: usize,
    cubes: Vec<Cube>,
    #[serde(default)]
    origins: Vec<CubeOrigin>,
    /// Whether the ambient 3-manifold is orientable; supplied by the
    /// constructor.
    orientable: bool,
    /// Vertex of the base dodecahedral complex under each dodecahedral
    /// vertex (empty for generic complexes).
    #[serde(default)]
    dodecahedral_vertex: Vec<u32>,
}

impl CubeComplex {
    /// Builds a complex from corner-wise incidence and validates it.
    pub fn from_cubes(
        vertex_roles: Vec<VertexRole>,
        edge_ends: Vec<[u32; 2]>,
        square_count: usize,
        cubes: Vec<Cube>,
        orientable: bool,
    ) -> Result<CubeComplex> {
        let c = CubeComplex {
            vertex_roles,
            edge_ends,
            square_count,
            cubes,
            origins: Vec::new(),
            orientable,
            dodecahedral_vertex: Vec::new(),
        };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn with_origins(mut self, origins: Vec<CubeOrigin>, dodecahedral_vertex: Vec<u32>) -> CubeComplex {
        self.origins = origins;
        self.dodecahedral_vertex = dodecahedral_vertex;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let nv = self.vertex_roles.len() as u32;
        for (e, ends) in self.edge_ends.iter().enumerate() {
            if ends.iter().any(|&v| v >= nv) {
                return Err(Error::Integrity(format!("edge {e} has an endpoint out of range")));
            }
        }
        let mut square_seen = vec![false; self.square_count];
        for (i, cube) in self.cubes.iter().enumerate() {
            if cube.corners.iter().any(|&v| v >= nv) {
                return Err(Error::Integrity(format!("cube {i} has a corner out of range")));
            }
            for slot in 0..12 {
                let e = cube.edges[slot] as usize;
                if e >= self.edge_ends.len() {
                    return Err(Error::Integrity(format!("cube {i} has an edge out of range")));
                }
                let (p, q) = Cube::edge_corners(slot);
                let (p, q) = if cube.reversed[slot] { (q, p) } else { (p, q) };
                if [cube.corners[p], cube.corners[q]] != self.edge_ends[e] {
                    return Err(Error::Integrity(format!("cube {i}: edge slot {slot} disagrees with its corners")));
                }
            }
            for &s in &cube.squares {
                match square_seen.get_mut(s as usize) {
                    Some(seen) => *seen = true,
                    None => return Err(Error::Integrity(format!("cube {i} has a square out of range"))),
                }
            }
        }
        if let Some(s) = square_seen.iter().position(|&b| !b) {
            return Err(Error::Integrity(format!("square {s} lies in no cube")));
        }
        Ok(())
    }

    /// One cube whose opposite faces are identified by translations.
    pub fn three_torus() -> CubeComplex {
        let cube = Cube {
            corners: [0; 8],
            edges: std::array::from_fn(|slot| (slot / 4) as u32),
            reversed: [false; 12],
            squares: std::array::from_fn(|slot| (slot / 2) as u32),
        };
        CubeComplex::from_cubes(vec![VertexRole::Other], vec![[0, 0]; 3], 3, vec![cube], true)
            .expect("three-torus fixture")
    }

    pub fn f_vector(&self) -> CubeFVector {
        CubeFVector {
            vertices: self.vertex_roles.len(),
            edges: self.edge_ends.len(),
            squares: self.square_count,
            cubes: self.cubes.len(),
        }
    }

    pub fn vertex_role(&self, v: usize) -> VertexRole {
        self.vertex_roles[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_roles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_ends.len()
    }

    pub fn edge_ends(&self, e: usize) -> [u32; 2] {
        self.edge_ends[e]
    }

    pub fn square_count(&self) -> usize {
        self.square_count
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn origins(&self) -> &[CubeOrigin] {
        &self.origins
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    /// Vertex of the underlying dodecahedral complex below a cubulation
    /// vertex of dodecahedral role.
    pub fn dodecahedral_vertex(&self, v: usize) -> Option<u32> {
        self.dodecahedral_vertex.get(v).copied().filter(|&x| x != u32::MAX)
    }

    /// Number of cube edge slots on each edge.
    pub fn edge_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.edge_ends.len()];
        for c in &self.cubes {
            for &e in &c.edges {
                d[e as usize] += 1;
            }
        }
        d
    }

    /// Number of cube faces on each square.
    pub fn square_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.square_count];
        for c in &self.cubes {
            for &s in &c.squares {
                d[s as usize] += 1;
            }
        }
        d
    }

    /// Every square is a face of exactly two cube faces.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        self.square_degrees().iter().all(|&d| d == 2)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cube complex serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_are_consistent() {
        for slot in 0..12 {
            let (p, q) = Cube::edge_corners(slot);
            assert_eq!(edge_slot(slot / 4, p), slot);
            assert_eq!(edge_slot(slot / 4, q), slot);
            assert_eq!(p ^ q, 1 << (slot / 4));
        }
    }

    #[test]
    fn three_torus_counts() {
        let t = CubeComplex::three_torus();
        assert_eq!(t.f_vector().as_tuple(), (1, 3, 3, 1));
        assert_eq!(t.edge_degrees(), vec![4, 4, 4]);
        assert!(t.is_closed_pseudomanifold());
    }

    #[test]
    fn inconsistent_cubes_are_rejected() {
        let mut cube = CubeComplex::three_torus().cubes()[0];
        cube.corners[7] = 1;
        let r = CubeComplex::from_cubes(vec![VertexRole::Other; 2], vec![[0, 0]; 3], 3, vec![cube], true);
        assert!(matches!(r, Err(Error::Integrity(_))));
    }
}
