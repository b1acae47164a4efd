use serde::Serialize;

use crate::cosets::{action_from_table, finite_subgroup_classes, low_index_classes};
use crate::cubecomplex::{cubulate, npc_report};
use crate::dodecomplex::{base_complex, DodecahedralComplex, FVector};
use crate::error::Result;
use crate::fpgroup::{builtin_presentation, Space};
use crate::hypersurface::{disk_surfaces, extract_components};

/// The cover of the Poincare homology sphere belonging to one subgroup
/// class of SL(2,5).
#[derive(Clone, Debug, Serialize)]
pub struct PhsCover {
    pub degree: usize,
    pub subgroup_order: usize,
    pub class_size: usize,
    pub f_vector: FVector,
    pub components: usize,
    pub all_embedded: bool,
    /// Every component is a sphere made of 12 pentagonal disks.
    pub twelve_disk_spheres: bool,
    pub regular: bool,
    pub image_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhsLattice {
    pub group_order: usize,
    pub subgroups: usize,
    pub covers: Vec<PhsCover>,
}

/// Every subgroup class of the (finite) PHS group and the analysis of its
/// cover, sorted by degree.
pub fn phs_lattice() -> Result<PhsLattice> {
    let lattice = finite_subgroup_classes(&builtin_presentation(Space::Phs), 120)?;
    let mut covers = Vec::new();
    for class in &lattice.classes {
        let x = DodecahedralComplex::cover(Space::Phs, &action_from_table(&class.table));
        let fast = disk_surfaces(&x);
        let comps = extract_components(&cubulate(&x));
        covers.push(PhsCover {
            degree: class.index,
            subgroup_order: class.order,
            class_size: class.class_size,
            f_vector: x.f_vector(),
            components: fast.count(),
            all_embedded: fast.all_embedded(),
            twelve_disk_spheres: comps.iter().all(|s| s.is_sphere() && s.disks.len() == 12),
            regular: class.normal,
            image_order: class.image_order,
        });
    }
    covers.sort_by_key(|c| c.degree);
    Ok(PhsLattice { group_order: lattice.group_order, subgroups: lattice.subgroup_count, covers })
}

#[derive(Clone, Debug, Serialize)]
pub struct Rp3Report {
    /// Degrees of the connected covers, the base included.
    pub cover_degrees: Vec<usize>,
    pub base_components: usize,
    pub base_two_disk_spheres: bool,
    pub base_all_embedded: bool,
    pub double_components: usize,
    pub double_all_spheres: bool,
    pub base_min_edge_degree: usize,
    pub base_npc: bool,
}

pub fn rp3_report() -> Result<Rp3Report> {
    let p = builtin_presentation(Space::Rp3);
    let classes = low_index_classes(&p, 4)?;
    let base = extract_components(&cubulate(&base_complex(Space::Rp3)));
    let npc = npc_report(&cubulate(&base_complex(Space::Rp3)));
    let (mut double_components, mut double_all_spheres) = (0, false);
    if let Some(c) = classes.iter().find(|c| c.degree() == 2) {
        let comps = extract_components(&cubulate(&DodecahedralComplex::cover(Space::Rp3, &c.action())));
        double_components = comps.len();
        double_all_spheres = comps.iter().all(|s| s.is_sphere());
    }
    Ok(Rp3Report {
        cover_degrees: classes.iter().map(|c| c.degree()).collect(),
        base_components: base.len(),
        base_two_disk_spheres: base.iter().all(|s| s.is_sphere() && s.disks.len() == 2),
        base_all_embedded: base.iter().all(|s| s.embedded),
        double_components,
        double_all_spheres,
        base_min_edge_degree: npc.min_edge_degree,
        base_npc: npc.npc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rp3() {
        let r = rp3_report().unwrap();
        assert_eq!(r.cover_degrees, vec![1, 2]);
        assert_eq!(r.base_components, 6);
        assert!(r.base_two_disk_spheres && r.base_all_embedded);
        assert_eq!(r.double_components, 12);
        assert!(r.double_all_spheres);
        assert_eq!(r.base_min_edge_degree, 2);
        assert!(!r.base_npc);
    }
}
