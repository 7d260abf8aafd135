//! Presheaves on an orbit category, the functors `K` and `Φ` between them
//! and diagrams, and the adjunction data relating the two.
//!
//! `K(R)` reads `R` at the free orbits: `K(R)_d = R(D(d, −))`. `Φ(X)` records
//! all fixed points: `Φ(X)(O) = X^O`. Maps `K(R) → X` and `R → Φ(X)`
//! correspond through evaluation at identities.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dspace::{
    enumerate_dspaces, enumerate_equivariant_maps, for_each_equivariant_map, hom_as_space, hom_position,
    post_compose, product, random_equivariant_map, DSpace, EquivariantMap, HomAsSpace,
};
use crate::error::{Error, Result};
use crate::fincat::{MorphismId, ObjectId};
use crate::finspace::FinSpace;
use crate::orbits::OrbitCategory;

/// A diagram over the opposite of an orbit category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafSpace {
    dspace: DSpace,
}

impl PresheafSpace {
    pub fn new(oc: &OrbitCategory, dspace: DSpace) -> Result<Self> {
        if dspace.shape() != oc.opposite() {
            return Err(Error::ShapeMismatch(
                "presheaves live over the opposite orbit category".into(),
            ));
        }
        Ok(Self { dspace })
    }

    pub fn dspace(&self) -> &DSpace {
        &self.dspace
    }

    /// `R(O_i)`.
    pub fn value(&self, i: usize) -> &FinSpace {
        self.dspace.space(i)
    }

    /// `R(σ): R(P) → R(O)` for an orbit-category morphism `σ: O → P`.
    pub fn act(&self, sigma: MorphismId, r: usize) -> usize {
        self.dspace.act(sigma, r)
    }

    /// The constant presheaf.
    pub fn constant(oc: &OrbitCategory, space: &FinSpace) -> Self {
        Self {
            dspace: DSpace::constant(oc.opposite(), space),
        }
    }

    /// `P ↦ O_F(P, O_i)`, the presheaf represented by the `i`-th orbit.
    pub fn representable(oc: &OrbitCategory, i: usize) -> Result<Self> {
        Ok(Self {
            dspace: DSpace::representable(oc.opposite(), i)?,
        })
    }

    pub fn product(&self, other: &PresheafSpace) -> Result<Self> {
        Ok(Self {
            dspace: product(&self.dspace, &other.dspace)?,
        })
    }
}

/// `K(R) = R ∘ i`, with `K(R)_f = R(D(f, −))`.
pub fn k(r: &PresheafSpace, oc: &OrbitCategory) -> Result<DSpace> {
    let shape = oc.shape();
    let spaces = shape.objects().map(|d| r.value(oc.free_index(d)).clone()).collect();
    let actions = shape.morphisms().map(|f| r.dspace.action(oc.free_map(f)).to_vec()).collect();
    DSpace::new(shape.clone(), spaces, actions)
}

/// `K(γ)`: the components of `γ` at the free orbits.
pub fn k_map(gamma: &EquivariantMap, oc: &OrbitCategory) -> Result<EquivariantMap> {
    let source = k(&PresheafSpace::new(oc, gamma.source().clone())?, oc)?;
    let target = k(&PresheafSpace::new(oc, gamma.target().clone())?, oc)?;
    let components = oc
        .shape()
        .objects()
        .map(|d| gamma.component(oc.free_index(d)).to_vec())
        .collect();
    EquivariantMap::new(source, target, components)
}

/// `Φ(X)` together with the fixed-point spaces behind its values.
#[derive(Clone, Debug)]
pub struct PhiPresheaf {
    pub presheaf: PresheafSpace,
    pub target: DSpace,
    /// `homs[i]` lists the maps `O_i → X`; point `k` of `Φ(X)(O_i)` is the
    /// `k`-th of them.
    pub homs: Vec<HomAsSpace>,
}

impl PhiPresheaf {
    pub fn dspace(&self) -> &DSpace {
        self.presheaf.dspace()
    }
}

/// `Φ(X)(O) = X^O`, acting on `σ: O → P` by precomposition.
pub fn phi(x: &DSpace, oc: &OrbitCategory) -> Result<PhiPresheaf> {
    x.check_same_shape(oc.orbit(0).underlying())?;
    let homs = oc
        .orbits()
        .iter()
        .map(|o| hom_as_space(o.underlying(), x))
        .collect::<Result<Vec<_>>>()?;
    let cat = oc.category();
    let actions = cat
        .morphisms()
        .map(|sigma| {
            let (o, p) = (cat.source(sigma), cat.target(sigma));
            let s = oc.map(sigma);
            homs[p]
                .maps
                .iter()
                .map(|beta| {
                    homs[o]
                        .index_of(&post_compose(beta.components(), s.components()))
                        .expect("precomposite is equivariant")
                })
                .collect()
        })
        .collect();
    let spaces = homs.iter().map(|h| h.space.clone()).collect();
    let dspace = DSpace::new(oc.opposite().clone(), spaces, actions)?;
    Ok(PhiPresheaf {
        presheaf: PresheafSpace { dspace },
        target: x.clone(),
        homs,
    })
}

/// `Φ(α): Φ(X) → Φ(Y)`, postcomposition with `α: X → Y`.
pub fn phi_map(alpha: &EquivariantMap, px: &PhiPresheaf, py: &PhiPresheaf) -> Result<EquivariantMap> {
    if *alpha.source() != px.target || *alpha.target() != py.target {
        return Err(Error::ShapeMismatch("Φ(α) needs Φ of its source and target".into()));
    }
    let components = px
        .homs
        .iter()
        .zip(&py.homs)
        .map(|(hx, hy)| {
            hx.maps
                .iter()
                .map(|b| {
                    hy.index_of(&post_compose(alpha.components(), b.components()))
                        .expect("composite is equivariant")
                })
                .collect()
        })
        .collect();
    EquivariantMap::new(px.dspace().clone(), py.dspace().clone(), components)
}

/// The map `D(d, −) → O` sending `id_d` to `o`, computed directly.
pub fn point_classifier(orbit: &DSpace, d: ObjectId, o: usize) -> Result<EquivariantMap> {
    let shape = orbit.shape();
    if d >= shape.object_count() {
        return Err(Error::UnknownObject(d.to_string()));
    }
    if o >= orbit.space(d).len() {
        return Err(Error::UnknownPoint {
            object: shape.object_name(d).to_string(),
            point: o,
        });
    }
    let free = DSpace::representable(shape, d)?;
    let components = shape
        .objects()
        .map(|e| shape.homs(d, e).iter().map(|&g| orbit.act(g, o)).collect())
        .collect();
    EquivariantMap::new(free, orbit.clone(), components)
}

/// `f: K(R) → X` to `g: R → Φ(X)` with `g(O)(r)_d(o) = f_d(R(o*)(r))`,
/// where `o*: D(d, −) → O` classifies `o`.
pub fn adjunct_forward(
    f: &EquivariantMap,
    r: &PresheafSpace,
    px: &PhiPresheaf,
    oc: &OrbitCategory,
) -> Result<EquivariantMap> {
    let kr = k(r, oc)?;
    if *f.source() != kr || *f.target() != px.target {
        return Err(Error::ShapeMismatch("f must map K(R) to X".into()));
    }
    let components = forward_components(f.components(), r, px, oc)?;
    EquivariantMap::new(r.dspace.clone(), px.dspace().clone(), components)
}

fn forward_components(
    f: &[Vec<usize>],
    r: &PresheafSpace,
    px: &PhiPresheaf,
    oc: &OrbitCategory,
) -> Result<Vec<Vec<usize>>> {
    let shape = oc.shape();
    (0..oc.orbits().len())
        .map(|i| {
            let orbit = oc.orbit(i).underlying();
            r.value(i)
                .points()
                .map(|rp| {
                    let g: Vec<Vec<usize>> = shape
                        .objects()
                        .map(|d| {
                            orbit
                                .space(d)
                                .points()
                                .map(|o| f[d][r.act(oc.classifier(i, d, o), rp)])
                                .collect()
                        })
                        .collect();
                    px.homs[i]
                        .index_of(&g)
                        .ok_or_else(|| Error::NotEquivariant(format!("g({})({rp}) is not equivariant", oc.names()[i])))
                })
                .collect()
        })
        .collect()
}

/// `g: R → Φ(X)` to `f: K(R) → X` with `f_d(r) = g(D(d, −))(r)_d(id_d)`.
pub fn adjunct_backward(g: &EquivariantMap, px: &PhiPresheaf, oc: &OrbitCategory) -> Result<EquivariantMap> {
    if g.target() != px.dspace() {
        return Err(Error::ShapeMismatch("g must land in Φ(X)".into()));
    }
    let r = PresheafSpace::new(oc, g.source().clone())?;
    let components = backward_components(g.components(), &r, px, oc);
    EquivariantMap::new(k(&r, oc)?, px.target.clone(), components)
}

fn backward_components(g: &[Vec<usize>], r: &PresheafSpace, px: &PhiPresheaf, oc: &OrbitCategory) -> Vec<Vec<usize>> {
    let shape = oc.shape();
    shape
        .objects()
        .map(|d| {
            let i = oc.free_index(d);
            let id = hom_position(shape, d, d, shape.identity(d));
            r.value(i)
                .points()
                .map(|rp| px.homs[i].maps[g[i][rp]].apply(d, id))
                .collect()
        })
        .collect()
}

/// `η_R = adjunct_forward(id_{K(R)})`.
pub fn unit(r: &PresheafSpace, oc: &OrbitCategory) -> Result<(EquivariantMap, PhiPresheaf)> {
    let kr = k(r, oc)?;
    let pk = phi(&kr, oc)?;
    let eta = adjunct_forward(&EquivariantMap::identity(&kr), r, &pk, oc)?;
    Ok((eta, pk))
}

/// `K(Φ(X)) → X`, evaluating a map `D(d, −) → X` at `id_d`.
pub fn kphi_iso(px: &PhiPresheaf, oc: &OrbitCategory) -> Result<EquivariantMap> {
    let kp = k(&px.presheaf, oc)?;
    let shape = oc.shape();
    let components = shape
        .objects()
        .map(|d| {
            let id = hom_position(shape, d, d, shape.identity(d));
            px.homs[oc.free_index(d)].maps.iter().map(|b| b.apply(d, id)).collect()
        })
        .collect();
    EquivariantMap::new(kp, px.target.clone(), components)
}

/// `Φ(ε_X) ∘ η_{Φ(X)}` is the identity of `Φ(X)`, with `ε = kphi_iso`.
pub fn check_triangle(x: &DSpace, oc: &OrbitCategory) -> Result<bool> {
    let px = phi(x, oc)?;
    let (eta, pkp) = unit(&px.presheaf, oc)?;
    let eps = kphi_iso(&px, oc)?;
    let phi_eps = phi_map(&eps, &pkp, &px)?;
    Ok(phi_eps.after(&eta)? == EquivariantMap::identity(px.dspace()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitCheck {
    pub orbit: String,
    pub coefficient_points: usize,
    /// `(|R(O)|, |Φ(K(R))(O)|)` per orbit.
    pub component_sizes: Vec<(usize, usize)>,
    pub is_iso: bool,
}

/// `η_R` for the free cell `R = O_F(−, O) × A` is an isomorphism.
pub fn check_unit_free_cell(i: usize, a: &FinSpace, oc: &OrbitCategory) -> Result<UnitCheck> {
    let r = PresheafSpace::representable(oc, i)?.product(&PresheafSpace::constant(oc, a))?;
    let (eta, pk) = unit(&r, oc)?;
    Ok(UnitCheck {
        orbit: oc.names()[i].clone(),
        coefficient_points: a.len(),
        component_sizes: (0..oc.orbits().len())
            .map(|j| (r.value(j).len(), pk.dspace().space(j).len()))
            .collect(),
        is_iso: eta.is_isomorphism(),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct AdjunctionBounds {
    pub max_points: usize,
    /// Naturality squares sampled per `(R, X)` pair, on each side.
    pub samples: usize,
    pub seed: u64,
    /// Largest number of `(R, X)` pairs to attempt.
    pub budget: u128,
}

impl Default for AdjunctionBounds {
    fn default() -> Self {
        Self {
            max_points: 2,
            samples: 4,
            seed: 0,
            budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub category: Vec<String>,
    pub family: Vec<String>,
    pub max_points: usize,
    pub presheaves: usize,
    pub dspaces: usize,
    pub pairs: u64,
    pub maps_checked: u64,
    pub bijection_failures: u64,
    pub forward_roundtrip_failures: u64,
    pub backward_roundtrip_failures: u64,
    pub naturality_x_checks: u64,
    pub naturality_x_failures: u64,
    pub naturality_r_checks: u64,
    pub naturality_r_failures: u64,
    pub kphi_failures: u64,
    pub triangle_failures: u64,
    pub first_failure: Option<String>,
}

impl AdjunctionReport {
    pub fn failures(&self) -> u64 {
        self.bijection_failures
            + self.forward_roundtrip_failures
            + self.backward_roundtrip_failures
            + self.naturality_x_failures
            + self.naturality_r_failures
            + self.kphi_failures
            + self.triangle_failures
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    fn absorb(&mut self, other: AdjunctionReport) {
        self.pairs += other.pairs;
        self.maps_checked += other.maps_checked;
        self.bijection_failures += other.bijection_failures;
        self.forward_roundtrip_failures += other.forward_roundtrip_failures;
        self.backward_roundtrip_failures += other.backward_roundtrip_failures;
        self.naturality_x_checks += other.naturality_x_checks;
        self.naturality_x_failures += other.naturality_x_failures;
        self.naturality_r_checks += other.naturality_r_checks;
        self.naturality_r_failures += other.naturality_r_failures;
        self.kphi_failures += other.kphi_failures;
        self.triangle_failures += other.triangle_failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    fn fail(&mut self, what: String) {
        if self.first_failure.is_none() {
            self.first_failure = Some(what);
        }
    }
}

/// Per-diagram data reused across pairs.
struct XData {
    x: DSpace,
    px: PhiPresheaf,
}

struct RData {
    r: PresheafSpace,
    kr: DSpace,
}

/// Every diagram of spaces with at most `max_points` points per object.
pub fn enumerate_test_dspaces(oc: &OrbitCategory, max_points: usize) -> Vec<DSpace> {
    enumerate_dspaces(oc.shape(), max_points, false)
}

/// Every presheaf with at most `max_points` points per orbit.
pub fn enumerate_presheaves(oc: &OrbitCategory, max_points: usize) -> Vec<PresheafSpace> {
    enumerate_dspaces(oc.opposite(), max_points, false)
        .into_iter()
        .map(|dspace| PresheafSpace { dspace })
        .collect()
}

/// Checks the adjunction on every pair `(R, X)` within bounds: equal
/// hom-set sizes, both roundtrips, naturality in `X` and in `R` on sampled
/// maps, and `K(Φ(X)) ≅ X` with the triangle identity for every `X`.
pub fn check_adjunction(oc: &OrbitCategory, bounds: AdjunctionBounds) -> Result<AdjunctionReport> {
    let xs = enumerate_test_dspaces(oc, bounds.max_points);
    let rs = enumerate_presheaves(oc, bounds.max_points);
    let estimate = xs.len() as u128 * rs.len() as u128;
    if estimate > bounds.budget {
        return Err(Error::BoundsTooLarge {
            estimate,
            budget: bounds.budget,
        });
    }
    let xdata: Vec<XData> = xs
        .into_par_iter()
        .map(|x| Ok(XData { px: phi(&x, oc)?, x }))
        .collect::<Result<Vec<_>>>()?;
    let rdata: Vec<RData> = rs
        .into_par_iter()
        .map(|r| Ok(RData { kr: k(&r, oc)?, r }))
        .collect::<Result<Vec<_>>>()?;

    let mut report = AdjunctionReport {
        category: oc.shape().object_names().to_vec(),
        family: oc.names().to_vec(),
        max_points: bounds.max_points,
        presheaves: rdata.len(),
        dspaces: xdata.len(),
        ..Default::default()
    };

    let per_x: Vec<AdjunctionReport> = xdata
        .par_iter()
        .enumerate()
        .map(|(xi, xd)| {
            let mut rep = AdjunctionReport::default();
            let eps = kphi_iso(&xd.px, oc)?;
            if !eps.is_isomorphism() {
                rep.kphi_failures += 1;
                rep.fail(format!("K(Φ(X)) → X is not an isomorphism for X #{xi}"));
            }
            if !check_triangle(&xd.x, oc)? {
                rep.triangle_failures += 1;
                rep.fail(format!("triangle identity fails for X #{xi}"));
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    for r in per_x {
        report.absorb(r);
    }

    let per_r: Vec<AdjunctionReport> = rdata
        .par_iter()
        .enumerate()
        .map(|(ri, rd)| {
            let mut rep = AdjunctionReport::default();
            for (xi, xd) in xdata.iter().enumerate() {
                let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed ^ ((ri as u64) << 32) ^ xi as u64);
                check_pair(oc, rd, ri, xd, xi, &xdata, &rdata, bounds.samples, &mut rng, &mut rep)?;
            }
            Ok(rep)
        })
        .collect::<Result<Vec<_>>>()?;
    for r in per_r {
        report.absorb(r);
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn check_pair(
    oc: &OrbitCategory,
    rd: &RData,
    ri: usize,
    xd: &XData,
    xi: usize,
    xdata: &[XData],
    rdata: &[RData],
    samples: usize,
    rng: &mut ChaCha8Rng,
    rep: &mut AdjunctionReport,
) -> Result<()> {
    rep.pairs += 1;
    let mut fs: Vec<Vec<Vec<usize>>> = Vec::new();
    for_each_equivariant_map(&rd.kr, &xd.x, |c| {
        fs.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    let mut gs: Vec<Vec<Vec<usize>>> = Vec::new();
    for_each_equivariant_map(rd.r.dspace(), xd.px.dspace(), |c| {
        gs.push(c.to_vec());
        ControlFlow::Continue(())
    })?;
    rep.maps_checked += (fs.len() + gs.len()) as u64;
    if fs.len() != gs.len() {
        rep.bijection_failures += 1;
        rep.fail(format!(
            "R #{ri}, X #{xi}: {} maps K(R) → X but {} maps R → Φ(X)",
            fs.len(),
            gs.len()
        ));
    }
    for f in &fs {
        let g = forward_components(f, &rd.r, &xd.px, oc)?;
        if backward_components(&g, &rd.r, &xd.px, oc) != *f {
            rep.forward_roundtrip_failures += 1;
            rep.fail(format!("R #{ri}, X #{xi}: backward(forward(f)) ≠ f"));
        }
    }
    for g in &gs {
        let f = backward_components(g, &rd.r, &xd.px, oc);
        if forward_components(&f, &rd.r, &xd.px, oc)? != *g {
            rep.backward_roundtrip_failures += 1;
            rep.fail(format!("R #{ri}, X #{xi}: forward(backward(g)) ≠ g"));
        }
    }
    if fs.is_empty() {
        return Ok(());
    }
    for _ in 0..samples {
        let f = fs.choose(rng).expect("nonempty");
        // Naturality in X: forward(α ∘ f) = Φ(α) ∘ forward(f).
        let yd = xdata.choose(rng).expect("nonempty");
        if let Some(alpha) = random_equivariant_map(&xd.x, &yd.x, rng)? {
            rep.naturality_x_checks += 1;
            let lhs = forward_components(&post_compose(alpha.components(), f), &rd.r, &yd.px, oc)?;
            let phi_alpha = phi_map(&alpha, &xd.px, &yd.px)?;
            let g = forward_components(f, &rd.r, &xd.px, oc)?;
            if lhs != post_compose(phi_alpha.components(), &g) {
                rep.naturality_x_failures += 1;
                rep.fail(format!("R #{ri}, X #{xi}: naturality in X fails"));
            }
        }
        // Naturality in R: forward(f ∘ K(γ)) = forward(f) ∘ γ.
        let sd = rdata.choose(rng).expect("nonempty");
        if let Some(gamma) = random_equivariant_map(sd.r.dspace(), rd.r.dspace(), rng)? {
            rep.naturality_r_checks += 1;
            let kg = k_map(&gamma, oc)?;
            let lhs = forward_components(&post_compose(f, kg.components()), &sd.r, &xd.px, oc)?;
            let g = forward_components(f, &rd.r, &xd.px, oc)?;
            if lhs != post_compose(&g, gamma.components()) {
                rep.naturality_r_failures += 1;
                rep.fail(format!("R #{ri}, X #{xi}: naturality in R fails"));
            }
        }
    }
    Ok(())
}

/// All maps `K(R) → X` paired with their adjuncts, for inspection.
pub fn adjunct_table(r: &PresheafSpace, x: &DSpace, oc: &OrbitCategory) -> Result<Vec<(EquivariantMap, EquivariantMap)>> {
    let kr = k(r, oc)?;
    let px = phi(x, oc)?;
    enumerate_equivariant_maps(&kr, x)?
        .into_iter()
        .map(|f| {
            let g = adjunct_forward(&f, r, &px, oc)?;
            Ok((f, g))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::FinCategory;
    use crate::orbits::orbit_category;

    fn bracket(n: usize) -> DSpace {
        DSpace::from_partial(
            FinCategory::walking_arrow(),
            vec![FinSpace::discrete(n), FinSpace::point()],
            [(2, vec![0; n])],
        )
        .unwrap()
    }

    fn oc() -> OrbitCategory {
        orbit_category(
            &FinCategory::walking_arrow(),
            &[("[0]".into(), bracket(0)), ("[1]".into(), bracket(1))],
        )
        .unwrap()
    }

    #[test]
    fn k_of_phi_is_identity_on_points() {
        let oc = oc();
        let x = bracket(1);
        let px = phi(&x, &oc).unwrap();
        let eps = kphi_iso(&px, &oc).unwrap();
        assert!(eps.is_isomorphism());
        assert_eq!(eps.target().sizes(), vec![1, 1]);
    }

    #[test]
    fn phi_of_one_at_zero() {
        let oc = oc();
        let px = phi(&bracket(1), &oc).unwrap();
        assert_eq!(px.presheaf.value(0).len(), 1);
    }

    #[test]
    fn unit_on_representables() {
        let oc = oc();
        for i in 0..2 {
            let c = check_unit_free_cell(i, &FinSpace::point(), &oc).unwrap();
            assert!(c.is_iso);
        }
    }

    #[test]
    fn classifier_of_identity_is_identity() {
        let j = FinCategory::walking_arrow();
        for d in 0..2 {
            let f = DSpace::representable(&j, d).unwrap();
            let id = hom_position(&j, d, d, j.identity(d));
            assert_eq!(point_classifier(&f, d, id).unwrap(), EquivariantMap::identity(&f));
        }
        assert!(matches!(
            point_classifier(&bracket(1), 1, 3),
            Err(Error::UnknownPoint { .. })
        ));
    }

    #[test]
    fn adjunction_small_bound() {
        let rep = check_adjunction(
            &oc(),
            AdjunctionBounds {
                max_points: 1,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.pairs > 0);
    }
}
