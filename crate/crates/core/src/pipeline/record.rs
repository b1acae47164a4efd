use serde::{Deserialize, Serialize};

use crate::cosets::{PermutationAction, Provenance};
use crate::cubecomplex::{cubulate, npc_report, CubeFVector};
use crate::dodecomplex::{CoverFile, DodecahedralComplex, FVector};
use crate::error::Result;
use crate::fpgroup::{builtin_presentation, Space};
use crate::homology::{cover_homology, AbelianGroup};
use crate::hypersurface::{disk_surfaces, specialness_of, DiskLabel, HyperplaneSystem, SpecialnessReport};

/// One cover with the invariants the tables are built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverRecord {
    pub space: Space,
    pub degree: usize,
    pub action: PermutationAction,
    pub homology: AbelianGroup,
    pub betti: usize,
    pub components: usize,
    pub embedded_components: usize,
    pub all_embedded: bool,
    pub any_embedded: bool,
    pub special: bool,
    pub provenance: Provenance,
}

impl CoverRecord {
    /// Table 1 style embeddedness: "no", "all" or "one" (or a count).
    pub fn embedded_label(&self) -> String {
        match self.embedded_components {
            0 => "no".into(),
            n if n == self.components => "all".into(),
            1 => "one".into(),
            n => n.to_string(),
        }
    }

    /// Recomputes everything from the action and compares.
    pub fn verify(&self) -> Result<bool> {
        let again = cover_record(self.space, &self.action, self.provenance.clone())?;
        Ok(&again == self)
    }
}

/// Validates the action and computes its record. Specialness is only
/// tested when every surface component is embedded.
pub fn cover_record(space: Space, action: &PermutationAction, provenance: Provenance) -> Result<CoverRecord> {
    let file = CoverFile::new(space, action.clone());
    file.validate()?;
    let x = file.complex();
    let homology = cover_homology(&builtin_presentation(space), &action.as_table());
    let surfaces = disk_surfaces(&x);
    let embedded_components = surfaces.embedded.iter().filter(|&&b| b).count();
    let all_embedded = surfaces.all_embedded();
    let special = all_embedded && specialness_of(&HyperplaneSystem::new(&cubulate(&x))).special;
    Ok(CoverRecord {
        space,
        degree: action.degree(),
        action: action.clone(),
        betti: homology.free_rank,
        homology,
        components: surfaces.count(),
        embedded_components,
        all_embedded,
        any_embedded: embedded_components > 0,
        special,
        provenance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NpcSummary {
    pub npc: bool,
    pub pseudomanifold: bool,
    pub min_edge_degree: usize,
    pub failing_links: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceSummary {
    pub id: usize,
    pub disks: Vec<DiskLabel>,
    pub euler_characteristic: i64,
    pub genus: i64,
    pub orientable: bool,
    pub two_sided: bool,
    pub embedded: bool,
    pub near_vertices: usize,
    pub near_incidences: usize,
}

/// Full analysis of one cover, as written by `analyze`.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub record: CoverRecord,
    pub f_vector: FVector,
    pub cube_f_vector: CubeFVector,
    pub npc: NpcSummary,
    pub surfaces: Vec<SurfaceSummary>,
    pub specialness: SpecialnessReport,
}

pub fn analyze(space: Space, action: &PermutationAction, provenance: Provenance) -> Result<CoverReport> {
    let record = cover_record(space, action, provenance)?;
    let x = DodecahedralComplex::cover(space, action);
    let c = cubulate(&x);
    let n = npc_report(&c);
    let h = HyperplaneSystem::new(&c);
    let surfaces = h
        .components()
        .iter()
        .map(|s| SurfaceSummary {
            id: s.id,
            disks: s.disks.clone(),
            euler_characteristic: s.euler_characteristic,
            genus: s.genus(),
            orientable: s.orientable,
            two_sided: s.two_sided,
            embedded: s.embedded,
            near_vertices: s.near.set.len(),
            near_incidences: s.near.incidences,
        })
        .collect();
    Ok(CoverReport {
        record,
        f_vector: x.f_vector(),
        cube_f_vector: c.f_vector(),
        npc: NpcSummary {
            npc: n.npc,
            pseudomanifold: n.pseudomanifold,
            min_edge_degree: n.min_edge_degree,
            failing_links: n.failing_links().count(),
        },
        surfaces,
        specialness: specialness_of(&h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dodecomplex::appendix::six_cover;

    #[test]
    fn six_cover_record() {
        let r = cover_record(Space::Ws, &six_cover().action, Provenance::Imported("six".into())).unwrap();
        assert_eq!(r.homology.to_string(), "Z^5 + Z2^2 + Z5^3");
        assert_eq!((r.betti, r.components, r.embedded_label()), (5, 6, "all".to_string()));
        assert!(!r.special);
        assert!(r.verify().unwrap());
    }

    #[test]
    fn base_report() {
        let r = analyze(Space::Ws, &PermutationAction::identity(1), Provenance::Enumerated).unwrap();
        assert_eq!(r.cube_f_vector.as_tuple(), (14, 54, 60, 20));
        assert!(r.npc.npc);
        assert_eq!(r.surfaces.len(), 1);
        assert_eq!(r.surfaces[0].genus, 4);
    }
}
