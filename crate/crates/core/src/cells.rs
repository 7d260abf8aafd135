//! Cell complexes built from finitely many attachments of `Dⁿ × O` along
//! `Sⁿ⁻¹ × O`, with spheres and disks taken from the finite models.

use rand::Rng;

use crate::dspace::{find_isomorphism, product, pushout_dspace, random_equivariant_map, DSpace, EquivariantMap};
use crate::error::{Error, Result};
use crate::fincat::ObjectId;
use crate::finspace::{disk_model, sphere_model};
use crate::orbits::{class_orbits, Orbit};

/// `Sⁿ⁻¹ × O` with the sphere held constant.
pub fn cell_boundary(orbit: &Orbit, n: usize) -> Result<DSpace> {
    let shape = orbit.underlying().shape();
    let sphere = sphere_model(n as i32 - 1)?;
    product(&DSpace::constant(shape, &sphere), orbit.underlying())
}

/// `Dⁿ × O` with the disk held constant.
pub fn cell(orbit: &Orbit, n: usize) -> Result<DSpace> {
    let shape = orbit.underlying().shape();
    let disk = disk_model(n as i32)?;
    product(&DSpace::constant(shape, &disk), orbit.underlying())
}

/// The result of one attachment.
#[derive(Clone, Debug)]
pub struct Attached {
    /// Points of the old stage come first, in their old order.
    pub space: DSpace,
    pub inclusion: EquivariantMap,
    /// `Dⁿ × O → space`.
    pub characteristic: EquivariantMap,
}

/// Pushout of `Dⁿ × O ⊇ Sⁿ⁻¹ × O → X`.
pub fn attach_cell(x: &DSpace, orbit: &Orbit, n: usize, attaching: &EquivariantMap) -> Result<Attached> {
    let boundary = cell_boundary(orbit, n)?;
    if *attaching.source() != boundary {
        return Err(Error::SourceMismatch {
            stage: None,
            reason: "source is not the boundary sphere times the orbit".into(),
        });
    }
    if attaching.target() != x {
        return Err(Error::SourceMismatch {
            stage: None,
            reason: "target is not the current stage".into(),
        });
    }
    let disk = cell(orbit, n)?;
    // The sphere sits in the cone as its first points, so the inclusion is
    // the identity on indices.
    let incl_components = boundary.spaces().iter().map(|s| s.points().collect()).collect();
    let incl = EquivariantMap::new(boundary, disk.clone(), incl_components)?;
    let p = pushout_dspace(&incl, attaching)?;

    let shape = x.shape();
    let mut perms = Vec::with_capacity(shape.object_count());
    for d in shape.objects() {
        let size = p.space.space(d).len();
        let mut perm = vec![usize::MAX; size];
        for (old, &class) in p.right.component(d).iter().enumerate() {
            if perm[class] != usize::MAX {
                return Err(Error::SourceMismatch {
                    stage: None,
                    reason: "gluing identified points of the stage".into(),
                });
            }
            perm[class] = old;
        }
        let mut next = x.space(d).len();
        for slot in perm.iter_mut().filter(|v| **v == usize::MAX) {
            *slot = next;
            next += 1;
        }
        perms.push(perm);
    }
    let space = p.space.relabel(&perms);
    let inclusion = EquivariantMap::new(
        x.clone(),
        space.clone(),
        x.spaces().iter().map(|s| s.points().collect()).collect(),
    )?;
    let characteristic = EquivariantMap::new(
        disk,
        space.clone(),
        p.left
            .components()
            .iter()
            .zip(&perms)
            .map(|(c, perm)| c.iter().map(|&v| perm[v]).collect())
            .collect(),
    )?;
    Ok(Attached {
        space,
        inclusion,
        characteristic,
    })
}

/// One entry of a cell script: attach `Dⁿ × orbit` along the given
/// components of a map `Sⁿ⁻¹ × orbit → previous stage`.
#[derive(Clone, Debug)]
pub struct CellSpec {
    pub orbit: Orbit,
    pub dim: usize,
    pub attaching: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Stage {
    pub orbit: Orbit,
    pub dim: usize,
    pub attaching: EquivariantMap,
    pub space: DSpace,
    pub inclusion: EquivariantMap,
    pub characteristic: EquivariantMap,
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    pub base: DSpace,
    pub stages: Vec<Stage>,
}

impl CellComplex {
    pub fn final_space(&self) -> &DSpace {
        self.stages.last().map(|s| &s.space).unwrap_or(&self.base)
    }

    /// Dimensions never decrease along the script.
    pub fn is_cw(&self) -> bool {
        self.stages.windows(2).all(|w| w[0].dim <= w[1].dim)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.dim).collect()
    }
}

pub fn build_complex(base: &DSpace, script: &[CellSpec]) -> Result<CellComplex> {
    let mut stages: Vec<Stage> = Vec::with_capacity(script.len());
    for (i, spec) in script.iter().enumerate() {
        let current = stages.last().map(|s| s.space.clone()).unwrap_or_else(|| base.clone());
        let stage_err = |e: Error| match e {
            Error::SourceMismatch { reason, .. } => Error::SourceMismatch { stage: Some(i), reason },
            other => Error::SourceMismatch {
                stage: Some(i),
                reason: other.to_string(),
            },
        };
        if spec.orbit.underlying().shape() != base.shape() {
            return Err(stage_err(Error::ShapeMismatch("orbit lives over another category".into())));
        }
        let boundary = cell_boundary(&spec.orbit, spec.dim).map_err(stage_err)?;
        let attaching = EquivariantMap::new(boundary, current.clone(), spec.attaching.clone()).map_err(stage_err)?;
        let a = attach_cell(&current, &spec.orbit, spec.dim, &attaching).map_err(stage_err)?;
        stages.push(Stage {
            orbit: spec.orbit.clone(),
            dim: spec.dim,
            attaching,
            space: a.space,
            inclusion: a.inclusion,
            characteristic: a.characteristic,
        });
    }
    Ok(CellComplex {
        base: base.clone(),
        stages,
    })
}

/// A complex of `1..=max_cells` cells with orbits drawn from `family` and
/// dimensions at most `max_dim`, attached along random maps. A cell whose
/// boundary admits no map into the current stage is replaced by a 0-cell.
pub fn random_complex<R: Rng>(
    base: &DSpace,
    family: &[Orbit],
    max_cells: usize,
    max_dim: usize,
    rng: &mut R,
) -> Result<CellComplex> {
    if family.is_empty() || max_cells == 0 {
        return build_complex(base, &[]);
    }
    let mut script = Vec::new();
    let mut current = base.clone();
    for _ in 0..rng.gen_range(1..=max_cells) {
        let orbit = family[rng.gen_range(0..family.len())].clone();
        let mut dim = rng.gen_range(0..=max_dim);
        let attaching = loop {
            let boundary = cell_boundary(&orbit, dim)?;
            match random_equivariant_map(&boundary, &current, rng)? {
                Some(m) => break m,
                None => dim = 0,
            }
        };
        current = attach_cell(&current, &orbit, dim, &attaching)?.space;
        script.push(CellSpec {
            orbit,
            dim,
            attaching: attaching.components().to_vec(),
        });
    }
    build_complex(base, &script)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeEntry {
    pub class: usize,
    /// Some point of the class, as `(object, point)`.
    pub representative: (ObjectId, usize),
    /// Index of the first isomorphic family member.
    pub matched: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeReport {
    pub entries: Vec<TypeEntry>,
}

impl TypeReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.matched.is_some())
    }
}

/// Matches the orbit of every colimit class of the final stage against the
/// family.
pub fn verify_type(complex: &CellComplex, family: &[Orbit]) -> Result<TypeReport> {
    let x = complex.final_space();
    let mut entries = Vec::new();
    for (class, sub) in class_orbits(x)?.into_iter().enumerate() {
        let representative = x
            .shape()
            .objects()
            .find_map(|d| sub.points[d].first().map(|&p| (d, p)))
            .expect("classes are inhabited");
        let mut matched = None;
        for (i, o) in family.iter().enumerate() {
            if find_isomorphism(sub.orbit.underlying(), o.underlying())?.is_some() {
                matched = Some(i);
                break;
            }
        }
        entries.push(TypeEntry {
            class,
            representative,
            matched,
        });
    }
    Ok(TypeReport { entries })
}
