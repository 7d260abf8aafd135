//! Orbits, decomposition of discrete diagrams, orbit categories and
//! translation categories.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::dspace::{
    colim_dspace, enumerate_actions, enumerate_equivariant_maps, find_isomorphism, post_compose, DSpace,
    EquivariantMap,
};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, Morphism, MorphismId, ObjectId};
use crate::finspace::{Colimit, FinSpace};

/// Outcome of the orbit test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    Orbit,
    /// The colimit is empty.
    Empty,
    /// Two points, as `(object, point)`, that are not glued together.
    TwoClasses {
        first: (ObjectId, usize),
        second: (ObjectId, usize),
    },
}

impl OrbitVerdict {
    pub fn is_orbit(&self) -> bool {
        *self == OrbitVerdict::Orbit
    }
}

pub fn is_orbit(x: &DSpace) -> OrbitVerdict {
    let c = colim_dspace(x);
    match c.space.len() {
        0 => OrbitVerdict::Empty,
        1 => OrbitVerdict::Orbit,
        _ => {
            let find = |class: usize| {
                x.shape()
                    .objects()
                    .find_map(|d| c.legs[d].iter().position(|&k| k == class).map(|p| (d, p)))
                    .expect("legs are jointly surjective")
            };
            OrbitVerdict::TwoClasses {
                first: find(0),
                second: find(1),
            }
        }
    }
}

/// A diagram whose colimit is a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    underlying: DSpace,
    witness: Colimit,
}

impl Orbit {
    pub fn new(x: DSpace) -> Result<Self> {
        match is_orbit(&x) {
            OrbitVerdict::Orbit => Ok(Self {
                witness: colim_dspace(&x),
                underlying: x,
            }),
            OrbitVerdict::Empty => Err(Error::NotAnOrbit("the colimit is empty".into())),
            OrbitVerdict::TwoClasses { first, second } => Err(Error::NotAnOrbit(format!(
                "point {} at `{}` and point {} at `{}` are not glued",
                first.1,
                x.shape().object_name(first.0),
                second.1,
                x.shape().object_name(second.0)
            ))),
        }
    }

    pub fn underlying(&self) -> &DSpace {
        &self.underlying
    }

    pub fn witness(&self) -> &Colimit {
        &self.witness
    }
}

/// The representable `D(d, −)`.
pub fn free_orbit(shape: &FinCategory, d: ObjectId) -> Result<Orbit> {
    Orbit::new(DSpace::representable(shape, d)?)
}

/// An orbit sitting inside a larger diagram.
#[derive(Clone, Debug)]
pub struct SubOrbit {
    pub orbit: Orbit,
    /// `points[d]` lists the ambient points at `d`, in the orbit's order.
    pub points: Vec<Vec<usize>>,
    pub inclusion: EquivariantMap,
}

fn class_restriction(x: &DSpace, legs: &[Vec<usize>], class: usize) -> Result<SubOrbit> {
    let shape = x.shape();
    let points: Vec<Vec<usize>> = shape
        .objects()
        .map(|d| x.space(d).points().filter(|&p| legs[d][p] == class).collect())
        .collect();
    let mut position = vec![HashMap::new(); shape.object_count()];
    for d in shape.objects() {
        for (i, &p) in points[d].iter().enumerate() {
            position[d].insert(p, i);
        }
    }
    let spaces = shape.objects().map(|d| x.space(d).subspace(&points[d])).collect();
    let actions = shape
        .morphisms()
        .map(|m| {
            let b = shape.target(m);
            points[shape.source(m)]
                .iter()
                .map(|&p| position[b][&x.act(m, p)])
                .collect()
        })
        .collect();
    let sub = DSpace::new(shape.clone(), spaces, actions)?;
    let inclusion = EquivariantMap::new(sub.clone(), x.clone(), points.clone())?;
    Ok(SubOrbit {
        orbit: Orbit::new(sub)?,
        points,
        inclusion,
    })
}

/// The sub-diagram of all points glued to `x` at `d` in the colimit.
pub fn orbit_of_point(space: &DSpace, d: ObjectId, x: usize) -> Result<SubOrbit> {
    if d >= space.shape().object_count() {
        return Err(Error::UnknownObject(d.to_string()));
    }
    if x >= space.space(d).len() {
        return Err(Error::UnknownPoint {
            object: space.shape().object_name(d).to_string(),
            point: x,
        });
    }
    let c = colim_dspace(space);
    class_restriction(space, &c.legs, c.legs[d][x])
}

/// One sub-orbit per colimit class, in class order.
pub fn class_orbits(x: &DSpace) -> Result<Vec<SubOrbit>> {
    let c = colim_dspace(x);
    (0..c.space.len()).map(|k| class_restriction(x, &c.legs, k)).collect()
}

/// A lexicographically minimal encoding of a diagram over all per-object
/// relabelings. Two diagrams over the same category are isomorphic iff
/// their canonical forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<usize>);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join("."))
    }
}

/// Relabelings tried before giving up.
pub const CANONICAL_BUDGET: usize = 2_000_000;

fn encode(x: &DSpace, perms: &[Vec<usize>]) -> Vec<usize> {
    let y = x.relabel(perms);
    let shape = y.shape();
    let mut code = y.sizes();
    for m in shape.morphisms().filter(|&m| !shape.is_identity(m)) {
        code.extend_from_slice(y.action(m));
    }
    for s in y.spaces() {
        code.extend(s.matrix().iter().map(|&b| b as usize));
    }
    code
}

pub fn canonical_form(x: &DSpace) -> Result<CanonicalForm> {
    let sizes = x.sizes();
    let total: usize = sizes
        .iter()
        .map(|&n| (1..=n).product::<usize>())
        .try_fold(1usize, |acc, k| acc.checked_mul(k))
        .unwrap_or(usize::MAX);
    if total > CANONICAL_BUDGET {
        return Err(Error::BudgetExceeded(CANONICAL_BUDGET));
    }
    let best = sizes
        .iter()
        .map(|&n| (0..n).permutations(n).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|perms| encode(x, &perms))
        .min()
        // No objects at all: nothing to permute.
        .unwrap_or_else(|| encode(x, &[]));
    Ok(CanonicalForm(best))
}

/// Orbit parts of a discrete diagram, in order of their colimit class.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parts: Vec<SubOrbit>,
    pub labels: Vec<CanonicalForm>,
}

impl Decomposition {
    /// Canonical labels as a sorted multiset.
    pub fn label_multiset(&self) -> Vec<CanonicalForm> {
        let mut l = self.labels.clone();
        l.sort();
        l
    }
}

pub fn decompose_dset(t: &DSpace) -> Result<Decomposition> {
    if let Some(d) = t.shape().objects().find(|&d| !t.space(d).is_discrete()) {
        return Err(Error::NotDiscrete(format!(
            "value at `{}` has comparable points",
            t.shape().object_name(d)
        )));
    }
    let parts = class_orbits(t)?;
    let labels = parts
        .iter()
        .map(|p| canonical_form(p.orbit.underlying()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition { parts, labels })
}

/// Discrete orbits with at most `max_size` points in total, one per
/// isomorphism class, ordered by size and then canonical form.
pub fn enumerate_discrete_orbits(shape: &FinCategory, max_size: usize) -> Result<Vec<Orbit>> {
    let n = shape.object_count();
    let mut reps: Vec<(usize, CanonicalForm, Orbit)> = Vec::new();
    for sizes in (0..n).map(|_| 0..=max_size).multi_cartesian_product() {
        let total: usize = sizes.iter().sum();
        if total == 0 || total > max_size {
            continue;
        }
        let spaces: Vec<FinSpace> = sizes.iter().map(|&k| FinSpace::discrete(k)).collect();
        for actions in enumerate_actions(shape, &spaces) {
            let x = DSpace::new(shape.clone(), spaces.clone(), actions)?;
            if !is_orbit(&x).is_orbit() {
                continue;
            }
            let mut seen = false;
            for (_, _, r) in reps.iter().filter(|(t, _, _)| *t == total) {
                if find_isomorphism(r.underlying(), &x)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                let form = canonical_form(&x)?;
                reps.push((total, form, Orbit::new(x)?));
            }
        }
    }
    reps.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(reps.into_iter().map(|(_, _, o)| o).collect())
}

/// The full subcategory of diagrams spanned by a finite family of orbits.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    shape: FinCategory,
    names: Vec<String>,
    orbits: Vec<Orbit>,
    category: FinCategory,
    opposite: FinCategory,
    maps: Vec<EquivariantMap>,
    lookup: HashMap<(usize, usize, Vec<Vec<usize>>), MorphismId>,
    free: Vec<usize>,
    classifier: Vec<Vec<Vec<MorphismId>>>,
}

/// Builds the orbit category. The family must contain every free orbit
/// `D(d, −)` exactly as [`DSpace::representable`] builds it.
pub fn orbit_category(shape: &FinCategory, family: &[(String, DSpace)]) -> Result<OrbitCategory> {
    let mut orbits = Vec::with_capacity(family.len());
    for (name, x) in family {
        if x.shape() != shape {
            return Err(Error::ShapeMismatch(format!("`{name}` lives over another category")));
        }
        orbits.push(Orbit::new(x.clone()).map_err(|e| Error::NotAnOrbit(format!("`{name}`: {e}")))?);
    }
    let mut free = Vec::with_capacity(shape.object_count());
    for d in shape.objects() {
        let fd = DSpace::representable(shape, d)?;
        let i = family
            .iter()
            .position(|(_, x)| *x == fd)
            .ok_or_else(|| Error::MissingFreeOrbit(shape.object_name(d).to_string()))?;
        free.push(i);
    }

    let names: Vec<String> = family.iter().map(|(n, _)| n.clone()).collect();
    let mut morphisms = Vec::new();
    let mut maps = Vec::new();
    let mut lookup = HashMap::new();
    let mut identities = vec![0; family.len()];
    for (i, o) in orbits.iter().enumerate() {
        for (j, p) in orbits.iter().enumerate() {
            for (k, m) in enumerate_equivariant_maps(o.underlying(), p.underlying())?
                .into_iter()
                .enumerate()
            {
                let id = morphisms.len();
                let name = if i == j && m == EquivariantMap::identity(o.underlying()) {
                    identities[i] = id;
                    format!("id_{}", names[i])
                } else {
                    format!("{}→{}#{k}", names[i], names[j])
                };
                morphisms.push(Morphism {
                    name,
                    source: i,
                    target: j,
                });
                lookup.insert((i, j, m.components().to_vec()), id);
                maps.push(m);
            }
        }
    }
    let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
    let category = FinCategory::from_fn(names.clone(), morphisms, identities, |g, f| {
        let composite = post_compose(maps[g].components(), maps[f].components());
        lookup[&(ends[f].0, ends[g].1, composite)]
    })?;
    let opposite = category.opposite();

    let mut classifier = Vec::with_capacity(orbits.len());
    for (i, o) in orbits.iter().enumerate() {
        let mut per_object = Vec::with_capacity(shape.object_count());
        for d in shape.objects() {
            let id_pos = crate::dspace::hom_position(shape, d, d, shape.identity(d));
            let mut row = vec![usize::MAX; o.underlying().space(d).len()];
            for &m in category.homs(free[d], i) {
                row[maps[m].apply(d, id_pos)] = m;
            }
            per_object.push(row);
        }
        classifier.push(per_object);
    }

    Ok(OrbitCategory {
        shape: shape.clone(),
        names,
        orbits,
        category,
        opposite,
        maps,
        lookup,
        free,
        classifier,
    })
}

impl OrbitCategory {
    pub fn shape(&self) -> &FinCategory {
        &self.shape
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit(&self, i: usize) -> &Orbit {
        &self.orbits[i]
    }

    pub fn category(&self) -> &FinCategory {
        &self.category
    }

    pub fn opposite(&self) -> &FinCategory {
        &self.opposite
    }

    /// The equivariant map behind a morphism.
    pub fn map(&self, m: MorphismId) -> &EquivariantMap {
        &self.maps[m]
    }

    /// The morphism `O_i → O_j` with the given components.
    pub fn morphism_of(&self, i: usize, j: usize, components: &[Vec<usize>]) -> Option<MorphismId> {
        self.lookup.get(&(i, j, components.to_vec())).copied()
    }

    /// Index of the free orbit on `d`.
    pub fn free_index(&self, d: ObjectId) -> usize {
        self.free[d]
    }

    /// The morphism `D(d, −) → O_i` sending `id_d` to point `o` at `d`.
    pub fn classifier(&self, i: usize, d: ObjectId, o: usize) -> MorphismId {
        self.classifier[i][d][o]
    }

    /// The morphism `D(d', −) → D(d, −)` given by precomposition with `f: d → d'`.
    pub fn free_map(&self, f: MorphismId) -> MorphismId {
        let (d, d2) = (self.shape.source(f), self.shape.target(f));
        // Precomposition sends id_{d'} to f ∈ D(d, d').
        let pos = crate::dspace::hom_position(&self.shape, d, d2, f);
        self.classifier(self.free[d], d2, pos)
    }

    /// Hom-set cardinalities `|O_F(O_i, O_j)|`.
    pub fn hom_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.orbits.len();
        (0..n)
            .map(|i| (0..n).map(|j| self.category.homs(i, j).len()).collect())
            .collect()
    }
}

/// The category of elements of a discrete diagram.
#[derive(Clone, Debug)]
pub struct TranslationCategory {
    pub category: FinCategory,
    /// `(object, point)` behind each object, in order.
    pub elements: Vec<(ObjectId, usize)>,
    /// The underlying morphism of `D` and the source point of each morphism.
    pub labels: Vec<(MorphismId, usize)>,
}

fn require_discrete(t: &DSpace) -> Result<()> {
    if let Some(d) = t.shape().objects().find(|&d| !t.space(d).is_discrete()) {
        return Err(Error::NotDiscrete(format!(
            "value at `{}` has comparable points",
            t.shape().object_name(d)
        )));
    }
    Ok(())
}

/// Objects are pairs `(d, a)` with `a ∈ T_d`; a morphism `(d, a) → (e, b)` is
/// a morphism `f: d → e` with `T_f(a) = b`.
pub fn translation_category(t: &DSpace) -> Result<TranslationCategory> {
    require_discrete(t)?;
    let shape = t.shape();
    let elements = t.flat_points();
    let object_of: HashMap<(ObjectId, usize), usize> =
        elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let objects = elements
        .iter()
        .map(|&(d, a)| format!("{}:{a}", shape.object_name(d)))
        .collect();
    let mut morphisms = Vec::new();
    let mut labels = Vec::new();
    let mut index = HashMap::new();
    for f in shape.morphisms() {
        let (d, e) = (shape.source(f), shape.target(f));
        for a in t.space(d).points() {
            index.insert((f, a), morphisms.len());
            morphisms.push(Morphism {
                name: format!("{}@{a}", shape.morphism(f).name),
                source: object_of[&(d, a)],
                target: object_of[&(e, t.act(f, a))],
            });
            labels.push((f, a));
        }
    }
    let identities = elements.iter().map(|&(d, a)| index[&(shape.identity(d), a)]).collect();
    let category = FinCategory::from_fn(objects, morphisms, identities, |g, f| {
        let (fm, a) = labels[f];
        index[&(shape.compose(labels[g].0, fm).expect("composable"), a)]
    })?;
    Ok(TranslationCategory {
        category,
        elements,
        labels,
    })
}

/// The functor `B(T) → B(T')` induced by a map of discrete diagrams.
pub fn translation_functor(phi: &EquivariantMap) -> Result<FinFunctor> {
    let source = translation_category(phi.source())?;
    let target = translation_category(phi.target())?;
    let object_of: HashMap<(ObjectId, usize), usize> =
        target.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let morphism_of: HashMap<(MorphismId, usize), usize> =
        target.labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let shape = phi.source().shape();
    let object_map = source
        .elements
        .iter()
        .map(|&(d, a)| object_of[&(d, phi.apply(d, a))])
        .collect();
    let morphism_map = source
        .labels
        .iter()
        .map(|&(f, a)| morphism_of[&(f, phi.apply(shape.source(f), a))])
        .collect();
    Ok(FinFunctor::new(source.category, target.category, object_map, morphism_map)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j() -> FinCategory {
        FinCategory::walking_arrow()
    }

    /// `[n]` over the walking arrow: `n` points at `s`, one at `t`.
    fn bracket(n: usize) -> DSpace {
        DSpace::from_partial(
            j(),
            vec![FinSpace::discrete(n), FinSpace::point()],
            [(2, vec![0; n])],
        )
        .unwrap()
    }

    #[test]
    fn free_orbits_are_orbits() {
        assert_eq!(free_orbit(&j(), 0).unwrap().underlying(), &bracket(1));
        assert_eq!(free_orbit(&j(), 1).unwrap().underlying(), &bracket(0));
        let c2 = FinCategory::cyclic_group(2);
        assert_eq!(free_orbit(&c2, 0).unwrap().underlying().sizes(), vec![2]);
    }

    #[test]
    fn orbit_verdicts() {
        assert_eq!(is_orbit(&DSpace::empty(&j())), OrbitVerdict::Empty);
        let two = DSpace::constant(&j(), &FinSpace::discrete(2));
        assert!(matches!(is_orbit(&two), OrbitVerdict::TwoClasses { .. }));
    }

    #[test]
    fn arrow_census() {
        let found = enumerate_discrete_orbits(&j(), 3).unwrap();
        let sizes: Vec<Vec<usize>> = found.iter().map(|o| o.underlying().sizes()).collect();
        assert_eq!(sizes, vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn orbit_category_homs() {
        let fam = vec![("[0]".to_string(), bracket(0)), ("[1]".to_string(), bracket(1))];
        let oc = orbit_category(&j(), &fam).unwrap();
        assert_eq!(oc.hom_matrix(), vec![vec![1, 1], vec![0, 1]]);
        let missing = vec![("[0]".to_string(), bracket(0))];
        assert_eq!(
            orbit_category(&j(), &missing).unwrap_err(),
            Error::MissingFreeOrbit("s".into())
        );
    }

    #[test]
    fn decomposition_of_small_dset() {
        let t = DSpace::from_partial(j(), vec![FinSpace::point(), FinSpace::discrete(2)], [(2, vec![0])]).unwrap();
        let dec = decompose_dset(&t).unwrap();
        assert_eq!(dec.parts.len(), 2);
        assert_eq!(dec.parts[0].points, vec![vec![0], vec![0]]);
        assert_eq!(dec.parts[1].points, vec![vec![], vec![1]]);
        assert_eq!(dec.labels[0], canonical_form(&bracket(1)).unwrap());
        assert_eq!(dec.labels[1], canonical_form(&bracket(0)).unwrap());
    }

    #[test]
    fn translation_of_free_orbit_has_initial_identity() {
        for d in 0..2 {
            let f = DSpace::representable(&j(), d).unwrap();
            let b = translation_category(&f).unwrap();
            let start = b.elements.iter().position(|&(o, a)| o == d && a == 0).unwrap();
            assert!(b.category.is_initial(start));
        }
    }
}
