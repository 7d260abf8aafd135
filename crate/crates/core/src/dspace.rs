//! Diagrams of finite spaces over a finite category and the maps between them.
//!
//! A [`DSpace`] assigns a finite space to each object and a monotone map to
//! each morphism, functorially. Points are addressed per object; when a
//! single index is needed, objects are concatenated in order.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, MorphismId, ObjectId};
use crate::finspace::{self, check_monotone, is_order_isomorphism, Components, FinSpace, SpaceError};
use crate::orbits::OrbitCategory;

#[derive(PartialEq, Eq, Hash)]
struct DSpaceData {
    shape: FinCategory,
    spaces: Vec<FinSpace>,
    actions: Vec<Vec<usize>>,
}

/// A functor from a finite category to finite spaces.
#[derive(Clone)]
pub struct DSpace {
    data: Arc<DSpaceData>,
}

impl PartialEq for DSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for DSpace {}

impl std::hash::Hash for DSpace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state)
    }
}

impl fmt::Debug for DSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("DSpace");
        for d in self.shape().objects() {
            s.field(self.shape().object_name(d), self.space(d));
        }
        s.finish()
    }
}

impl DSpace {
    /// `actions[m]` is the assignment along morphism `m`, identities included.
    pub fn new(shape: FinCategory, spaces: Vec<FinSpace>, actions: Vec<Vec<usize>>) -> Result<Self> {
        if spaces.len() != shape.object_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} spaces for {} objects",
                spaces.len(),
                shape.object_count()
            )));
        }
        if actions.len() != shape.morphism_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} actions for {} morphisms",
                actions.len(),
                shape.morphism_count()
            )));
        }
        for m in shape.morphisms() {
            let name = || shape.morphism(m).name.clone();
            match check_monotone(&spaces[shape.source(m)], &spaces[shape.target(m)], &actions[m]) {
                Ok(()) => {}
                Err(e @ SpaceError::NotMonotone { .. }) => {
                    return Err(Error::NonMonotoneAction {
                        morphism: name(),
                        source: e,
                    })
                }
                Err(e) => return Err(Error::ShapeMismatch(format!("action of `{}`: {e}", name()))),
            }
        }
        for d in shape.objects() {
            let id = shape.identity(d);
            if actions[id].iter().enumerate().any(|(x, &y)| x != y) {
                let name = shape.morphism(id).name.clone();
                return Err(Error::NotFunctorial { g: name.clone(), f: name });
            }
        }
        for g in shape.morphisms() {
            for f in shape.morphisms() {
                let Some(gf) = shape.compose(g, f) else { continue };
                if actions[f].iter().zip(&actions[gf]).any(|(&y, &z)| actions[g][y] != z) {
                    return Err(Error::NotFunctorial {
                        g: shape.morphism(g).name.clone(),
                        f: shape.morphism(f).name.clone(),
                    });
                }
            }
        }
        Ok(Self::new_unchecked(shape, spaces, actions))
    }

    pub(crate) fn new_unchecked(shape: FinCategory, spaces: Vec<FinSpace>, actions: Vec<Vec<usize>>) -> Self {
        Self {
            data: Arc::new(DSpaceData { shape, spaces, actions }),
        }
    }

    /// Like [`DSpace::new`], with identity actions filled in. Every
    /// non-identity morphism must be given.
    pub fn from_partial(
        shape: FinCategory,
        spaces: Vec<FinSpace>,
        given: impl IntoIterator<Item = (MorphismId, Vec<usize>)>,
    ) -> Result<Self> {
        if spaces.len() != shape.object_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} spaces for {} objects",
                spaces.len(),
                shape.object_count()
            )));
        }
        let mut actions: Vec<Option<Vec<usize>>> = vec![None; shape.morphism_count()];
        for d in shape.objects() {
            actions[shape.identity(d)] = Some(spaces[d].points().collect());
        }
        for (m, a) in given {
            if m >= shape.morphism_count() {
                return Err(Error::ShapeMismatch(format!("morphism {m} out of range")));
            }
            actions[m] = Some(a);
        }
        let actions = actions
            .into_iter()
            .enumerate()
            .map(|(m, a)| a.ok_or_else(|| Error::MissingAction(shape.morphism(m).name.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, spaces, actions)
    }

    /// The representable `D(d, −)` as a discrete diagram. At `e` its points
    /// are `D(d, e)` in index order; morphisms act by postcomposition.
    pub fn representable(shape: &FinCategory, d: ObjectId) -> Result<Self> {
        if d >= shape.object_count() {
            return Err(Error::UnknownObject(d.to_string()));
        }
        let spaces = shape.objects().map(|e| FinSpace::discrete(shape.homs(d, e).len())).collect();
        let actions = shape
            .morphisms()
            .map(|m| {
                let (a, b) = (shape.source(m), shape.target(m));
                shape
                    .homs(d, a)
                    .iter()
                    .map(|&g| hom_position(shape, d, b, shape.compose(m, g).expect("composable")))
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(shape.clone(), spaces, actions))
    }

    /// Every action is the identity.
    pub fn constant(shape: &FinCategory, space: &FinSpace) -> Self {
        let spaces = vec![space.clone(); shape.object_count()];
        let actions = shape.morphisms().map(|_| space.points().collect()).collect();
        Self::new_unchecked(shape.clone(), spaces, actions)
    }

    pub fn empty(shape: &FinCategory) -> Self {
        Self::constant(shape, &FinSpace::empty())
    }

    pub fn terminal(shape: &FinCategory) -> Self {
        Self::constant(shape, &FinSpace::point())
    }

    pub fn shape(&self) -> &FinCategory {
        &self.data.shape
    }

    pub fn space(&self, d: ObjectId) -> &FinSpace {
        &self.data.spaces[d]
    }

    pub fn spaces(&self) -> &[FinSpace] {
        &self.data.spaces
    }

    pub fn action(&self, m: MorphismId) -> &[usize] {
        &self.data.actions[m]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.data.actions
    }

    pub fn act(&self, m: MorphismId, x: usize) -> usize {
        self.data.actions[m][x]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.data.spaces.iter().map(FinSpace::len).collect()
    }

    pub fn total_points(&self) -> usize {
        self.data.spaces.iter().map(FinSpace::len).sum()
    }

    /// `(object, point)` pairs with objects concatenated in order.
    pub fn flat_points(&self) -> Vec<(ObjectId, usize)> {
        self.shape()
            .objects()
            .flat_map(|d| self.space(d).points().map(move |x| (d, x)))
            .collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.data.spaces.iter().all(FinSpace::is_discrete)
    }

    /// Applies `perms[d][old] = new` at every object.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> DSpace {
        let shape = self.shape();
        let spaces = shape
            .objects()
            .map(|d| {
                let s = self.space(d);
                let n = s.len();
                let mut leq = vec![false; n * n];
                for x in s.points() {
                    for y in s.points() {
                        leq[perms[d][x] * n + perms[d][y]] = s.leq(x, y);
                    }
                }
                FinSpace::from_matrix_unchecked(n, leq)
            })
            .collect();
        let actions = shape
            .morphisms()
            .map(|m| {
                let (a, b) = (shape.source(m), shape.target(m));
                let mut act = vec![0; self.space(a).len()];
                for (x, &y) in self.action(m).iter().enumerate() {
                    act[perms[a][x]] = perms[b][y];
                }
                act
            })
            .collect();
        Self::new_unchecked(shape.clone(), spaces, actions)
    }

    /// Same shape, or a descriptive error.
    pub fn check_same_shape(&self, other: &DSpace) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch("diagrams live over different categories".into()));
        }
        Ok(())
    }
}

/// Position of `m` in `D(a, b)`.
pub fn hom_position(shape: &FinCategory, a: ObjectId, b: ObjectId, m: MorphismId) -> usize {
    shape.homs(a, b).iter().position(|&h| h == m).expect("morphism in hom-set")
}

/// A natural transformation of diagrams of spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EquivariantMap {
    source: DSpace,
    target: DSpace,
    components: Vec<Vec<usize>>,
}

impl fmt::Debug for EquivariantMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("EquivariantMap").field(&self.components).finish()
    }
}

impl EquivariantMap {
    pub fn new(source: DSpace, target: DSpace, components: Vec<Vec<usize>>) -> Result<Self> {
        source.check_same_shape(&target)?;
        let shape = source.shape();
        if components.len() != shape.object_count() {
            return Err(Error::ShapeMismatch("one component per object is required".into()));
        }
        for d in shape.objects() {
            check_monotone(source.space(d), target.space(d), &components[d]).map_err(|e| {
                Error::NotEquivariant(format!("component at `{}`: {e}", shape.object_name(d)))
            })?;
        }
        for m in shape.morphisms() {
            let (a, b) = (shape.source(m), shape.target(m));
            for x in source.space(a).points() {
                if components[b][source.act(m, x)] != target.act(m, components[a][x]) {
                    return Err(Error::NotEquivariant(format!(
                        "square at `{}` fails on point {x}",
                        shape.morphism(m).name
                    )));
                }
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub(crate) fn new_unchecked(source: DSpace, target: DSpace, components: Vec<Vec<usize>>) -> Self {
        Self {
            source,
            target,
            components,
        }
    }

    pub fn identity(x: &DSpace) -> Self {
        let components = x.spaces().iter().map(|s| s.points().collect()).collect();
        Self::new_unchecked(x.clone(), x.clone(), components)
    }

    pub fn source(&self) -> &DSpace {
        &self.source
    }

    pub fn target(&self) -> &DSpace {
        &self.target
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component(&self, d: ObjectId) -> &[usize] {
        &self.components[d]
    }

    pub fn apply(&self, d: ObjectId, x: usize) -> usize {
        self.components[d][x]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &EquivariantMap) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::ShapeMismatch("maps are not composable".into()));
        }
        let components = inner
            .components
            .iter()
            .zip(&self.components)
            .map(|(i, o)| i.iter().map(|&x| o[x]).collect())
            .collect();
        Ok(Self::new_unchecked(inner.source.clone(), self.target.clone(), components))
    }

    /// Every component is an isomorphism of finite spaces.
    pub fn is_isomorphism(&self) -> bool {
        self.source
            .shape()
            .objects()
            .all(|d| is_order_isomorphism(self.source.space(d), self.target.space(d), &self.components[d]))
    }
}

/// Applies `outer` after raw components `inner`.
pub(crate) fn post_compose(outer: &[Vec<usize>], inner: &[Vec<usize>]) -> Vec<Vec<usize>> {
    inner
        .iter()
        .zip(outer)
        .map(|(i, o)| i.iter().map(|&x| o[x]).collect())
        .collect()
}

struct MapSearch<'a> {
    x: &'a DSpace,
    y: &'a DSpace,
    iso: bool,
    points: Vec<(ObjectId, usize)>,
    outgoing: Vec<Vec<MorphismId>>,
    assign: Vec<Vec<usize>>,
    trail: Vec<(ObjectId, usize)>,
}

const UNSET: usize = usize::MAX;

impl<'a> MapSearch<'a> {
    fn new(x: &'a DSpace, y: &'a DSpace, iso: bool) -> Self {
        let shape = x.shape();
        Self {
            x,
            y,
            iso,
            points: x.flat_points(),
            outgoing: shape.objects().map(|d| shape.outgoing(d).collect()).collect(),
            assign: x.spaces().iter().map(|s| vec![UNSET; s.len()]).collect(),
            trail: Vec::new(),
        }
    }

    /// Assigns `p ↦ v` at `d` and everything it forces along morphisms.
    fn set(&mut self, d: ObjectId, p: usize, v: usize) -> bool {
        let current = self.assign[d][p];
        if current != UNSET {
            return current == v;
        }
        let (xs, ys) = (self.x.space(d), self.y.space(d));
        for (q, &w) in self.assign[d].iter().enumerate() {
            if w == UNSET {
                continue;
            }
            if self.iso {
                if w == v || xs.leq(p, q) != ys.leq(v, w) || xs.leq(q, p) != ys.leq(w, v) {
                    return false;
                }
            } else if (xs.leq(p, q) && !ys.leq(v, w)) || (xs.leq(q, p) && !ys.leq(w, v)) {
                return false;
            }
        }
        self.assign[d][p] = v;
        self.trail.push((d, p));
        for i in 0..self.outgoing[d].len() {
            let m = self.outgoing[d][i];
            let b = self.x.shape().target(m);
            if !self.set(b, self.x.act(m, p), self.y.act(m, v)) {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (d, p) = self.trail.pop().unwrap();
            self.assign[d][p] = UNSET;
        }
    }

    fn run(
        &mut self,
        k: usize,
        order: &mut dyn FnMut(usize) -> Vec<usize>,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut k = k;
        while k < self.points.len() && self.assign[self.points[k].0][self.points[k].1] != UNSET {
            k += 1;
        }
        if k == self.points.len() {
            return visit(&self.assign);
        }
        let (d, p) = self.points[k];
        for v in order(self.y.space(d).len()) {
            let mark = self.trail.len();
            if self.set(d, p, v) {
                self.run(k + 1, order, visit)?;
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }
}

fn search(
    x: &DSpace,
    y: &DSpace,
    iso: bool,
    order: &mut dyn FnMut(usize) -> Vec<usize>,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
) -> Result<()> {
    x.check_same_shape(y)?;
    if iso && x.sizes() != y.sizes() {
        return Ok(());
    }
    let mut s = MapSearch::new(x, y, iso);
    let _ = s.run(0, order, visit);
    Ok(())
}

/// Visits the component lists of every equivariant map `X → Y` in
/// lexicographic order. Choices at one point are propagated along every
/// morphism before the next free point is tried, so free orbits cost one
/// choice per generator.
pub fn for_each_equivariant_map(
    x: &DSpace,
    y: &DSpace,
    mut visit: impl FnMut(&[Vec<usize>]) -> ControlFlow<()>,
) -> Result<()> {
    search(x, y, false, &mut |n| (0..n).collect(), &mut visit)
}

pub fn enumerate_equivariant_maps(x: &DSpace, y: &DSpace) -> Result<Vec<EquivariantMap>> {
    let mut out = Vec::new();
    for_each_equivariant_map(x, y, |c| {
        out.push(EquivariantMap::new_unchecked(x.clone(), y.clone(), c.to_vec()));
        ControlFlow::Continue(())
    })?;
    out.sort_by(|a, b| a.components().cmp(b.components()));
    Ok(out)
}

pub fn count_equivariant_maps(x: &DSpace, y: &DSpace) -> Result<usize> {
    let mut n = 0;
    for_each_equivariant_map(x, y, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// A natural isomorphism `X ≅ Y`, if there is one.
pub fn find_isomorphism(x: &DSpace, y: &DSpace) -> Result<Option<EquivariantMap>> {
    let mut found = None;
    search(x, y, true, &mut |n| (0..n).collect(), &mut |c| {
        found = Some(EquivariantMap::new_unchecked(x.clone(), y.clone(), c.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Some equivariant map `X → Y` chosen by randomized search, if one exists.
pub fn random_equivariant_map<R: Rng>(x: &DSpace, y: &DSpace, rng: &mut R) -> Result<Option<EquivariantMap>> {
    let mut found = None;
    let mut order = |n: usize| {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        v
    };
    search(x, y, false, &mut order, &mut |c| {
        found = Some(EquivariantMap::new_unchecked(x.clone(), y.clone(), c.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Objectwise product; the pair `(x, y)` at `d` is point `x * |Y_d| + y`.
pub fn product(x: &DSpace, y: &DSpace) -> Result<DSpace> {
    x.check_same_shape(y)?;
    let shape = x.shape();
    let spaces = shape.objects().map(|d| x.space(d).product(y.space(d))).collect();
    let actions = shape
        .morphisms()
        .map(|m| {
            let (a, b) = (shape.source(m), shape.target(m));
            let (na, nb) = (y.space(a).len(), y.space(b).len());
            (0..x.space(a).len() * na)
                .map(|p| x.act(m, p / na) * nb + y.act(m, p % na))
                .collect()
        })
        .collect();
    Ok(DSpace::new_unchecked(shape.clone(), spaces, actions))
}

pub fn product_projections(x: &DSpace, y: &DSpace, p: &DSpace) -> (EquivariantMap, EquivariantMap) {
    let shape = x.shape();
    let first = shape
        .objects()
        .map(|d| p.space(d).points().map(|i| i / y.space(d).len()).collect())
        .collect();
    let second = shape
        .objects()
        .map(|d| p.space(d).points().map(|i| i % y.space(d).len()).collect())
        .collect();
    (
        EquivariantMap::new_unchecked(p.clone(), x.clone(), first),
        EquivariantMap::new_unchecked(p.clone(), y.clone(), second),
    )
}

/// Objectwise disjoint union, the points of `X` first.
pub fn coproduct(x: &DSpace, y: &DSpace) -> Result<DSpace> {
    x.check_same_shape(y)?;
    let shape = x.shape();
    let spaces = shape.objects().map(|d| x.space(d).coproduct(y.space(d))).collect();
    let actions = shape
        .morphisms()
        .map(|m| {
            let shift = x.space(shape.target(m)).len();
            let mut a = x.action(m).to_vec();
            a.extend(y.action(m).iter().map(|&v| v + shift));
            a
        })
        .collect();
    Ok(DSpace::new_unchecked(shape.clone(), spaces, actions))
}

pub fn coproduct_injections(x: &DSpace, y: &DSpace, c: &DSpace) -> (EquivariantMap, EquivariantMap) {
    let shape = x.shape();
    let left = x.spaces().iter().map(|s| s.points().collect()).collect();
    let right = shape
        .objects()
        .map(|d| y.space(d).points().map(|p| p + x.space(d).len()).collect())
        .collect();
    (
        EquivariantMap::new_unchecked(x.clone(), c.clone(), left),
        EquivariantMap::new_unchecked(y.clone(), c.clone(), right),
    )
}

/// A colimit or limit of diagrams with its legs.
#[derive(Clone, Debug)]
pub struct Cone {
    pub space: DSpace,
    /// For a colimit, `legs[j]` maps the `j`-th diagram in; for a limit it
    /// maps out to it.
    pub legs: Vec<EquivariantMap>,
}

fn check_diagram(index: &FinCategory, objects: &[DSpace], maps: &[EquivariantMap]) -> Result<FinCategory> {
    if objects.len() != index.object_count() || maps.len() != index.morphism_count() {
        return Err(Error::ShapeMismatch("diagram does not match its index category".into()));
    }
    let shape = objects
        .first()
        .map(|o| o.shape().clone())
        .ok_or_else(|| Error::ShapeMismatch("empty diagram".into()))?;
    for o in objects {
        if *o.shape() != shape {
            return Err(Error::ShapeMismatch("diagram objects have different shapes".into()));
        }
    }
    for j in index.morphisms() {
        if *maps[j].source() != objects[index.source(j)] || *maps[j].target() != objects[index.target(j)] {
            return Err(Error::ShapeMismatch(format!(
                "map for `{}` has the wrong endpoints",
                index.morphism(j).name
            )));
        }
    }
    Ok(shape)
}

/// Objectwise colimit of a diagram of D-spaces indexed by `index`.
/// `maps` holds one map per morphism of `index`, identities included.
pub fn colimit_diagram(index: &FinCategory, objects: &[DSpace], maps: &[EquivariantMap]) -> Result<Cone> {
    let shape = check_diagram(index, objects, maps)?;
    let mut spaces = Vec::new();
    let mut legs: Vec<Vec<Vec<usize>>> = vec![Vec::new(); objects.len()];
    for d in shape.objects() {
        let pieces: Vec<FinSpace> = objects.iter().map(|o| o.space(d).clone()).collect();
        let glue: Vec<Vec<usize>> = maps.iter().map(|m| m.component(d).to_vec()).collect();
        let c = finspace::colimit(index, &pieces, &glue);
        spaces.push(c.space);
        for (j, leg) in c.legs.into_iter().enumerate() {
            legs[j].push(leg);
        }
    }
    let actions = shape
        .morphisms()
        .map(|m| {
            let (a, b) = (shape.source(m), shape.target(m));
            let mut act = vec![UNSET; spaces[a].len()];
            for (j, o) in objects.iter().enumerate() {
                for x in o.space(a).points() {
                    act[legs[j][a][x]] = legs[j][b][o.act(m, x)];
                }
            }
            act
        })
        .collect();
    let space = DSpace::new(shape, spaces, actions)?;
    let legs = legs
        .into_iter()
        .zip(objects)
        .map(|(c, o)| EquivariantMap::new(o.clone(), space.clone(), c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cone { space, legs })
}

/// Objectwise limit; points are compatible families in lexicographic order.
pub fn limit_diagram(index: &FinCategory, objects: &[DSpace], maps: &[EquivariantMap]) -> Result<Cone> {
    let shape = check_diagram(index, objects, maps)?;
    let mut spaces = Vec::new();
    let mut families = Vec::new();
    for d in shape.objects() {
        let pieces: Vec<FinSpace> = objects.iter().map(|o| o.space(d).clone()).collect();
        let glue: Vec<Vec<usize>> = maps.iter().map(|m| m.component(d).to_vec()).collect();
        let l = finspace::limit(index, &pieces, &glue);
        spaces.push(l.space);
        families.push(l.families);
    }
    let lookup: Vec<HashMap<&Vec<usize>, usize>> = families
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let actions = shape
        .morphisms()
        .map(|m| {
            let (a, b) = (shape.source(m), shape.target(m));
            families[a]
                .iter()
                .map(|fam| {
                    let image: Vec<usize> = fam.iter().zip(objects).map(|(&x, o)| o.act(m, x)).collect();
                    lookup[b][&image]
                })
                .collect()
        })
        .collect();
    let space = DSpace::new(shape.clone(), spaces, actions)?;
    let legs = objects
        .iter()
        .enumerate()
        .map(|(j, o)| {
            let comps = shape
                .objects()
                .map(|d| families[d].iter().map(|f| f[j]).collect())
                .collect();
            EquivariantMap::new(space.clone(), o.clone(), comps)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cone { space, legs })
}

/// `Y ⊔_W Z` with its legs from `Y` and `Z`.
#[derive(Clone, Debug)]
pub struct DPushout {
    pub space: DSpace,
    pub left: EquivariantMap,
    pub right: EquivariantMap,
}

pub fn pushout_dspace(f: &EquivariantMap, g: &EquivariantMap) -> Result<DPushout> {
    if f.source() != g.source() {
        return Err(Error::ShapeMismatch("pushout legs need a shared source".into()));
    }
    let span = FinCategory::span();
    let objects = [f.source().clone(), f.target().clone(), g.target().clone()];
    let maps: Vec<EquivariantMap> = span
        .morphisms()
        .map(|j| {
            if span.is_identity(j) {
                EquivariantMap::identity(&objects[span.source(j)])
            } else if span.target(j) == 1 {
                f.clone()
            } else {
                g.clone()
            }
        })
        .collect();
    let mut c = colimit_diagram(&span, &objects, &maps)?;
    let right = c.legs.pop().unwrap();
    let left = c.legs.pop().unwrap();
    Ok(DPushout {
        space: c.space,
        left,
        right,
    })
}

/// `Y ×_W Z` with its projections to `Y` and `Z`.
#[derive(Clone, Debug)]
pub struct DPullback {
    pub space: DSpace,
    pub left: EquivariantMap,
    pub right: EquivariantMap,
}

pub fn pullback_dspace(f: &EquivariantMap, g: &EquivariantMap) -> Result<DPullback> {
    if f.target() != g.target() {
        return Err(Error::ShapeMismatch("pullback legs need a shared target".into()));
    }
    let cospan = FinCategory::cospan();
    let objects = [f.source().clone(), g.source().clone(), f.target().clone()];
    let maps: Vec<EquivariantMap> = cospan
        .morphisms()
        .map(|j| {
            if cospan.is_identity(j) {
                EquivariantMap::identity(&objects[cospan.source(j)])
            } else if cospan.source(j) == 0 {
                f.clone()
            } else {
                g.clone()
            }
        })
        .collect();
    let c = limit_diagram(&cospan, &objects, &maps)?;
    Ok(DPullback {
        space: c.space,
        left: c.legs[0].clone(),
        right: c.legs[1].clone(),
    })
}

/// The colimit of `X` as a finite space, with a leg per object.
pub fn colim_dspace(x: &DSpace) -> finspace::Colimit {
    finspace::colimit(x.shape(), x.spaces(), x.actions())
}

/// Equivariant maps with the pointwise order over all components.
#[derive(Clone, Debug)]
pub struct HomAsSpace {
    pub space: FinSpace,
    pub maps: Vec<EquivariantMap>,
}

impl HomAsSpace {
    /// Position of a map given by its components.
    pub fn index_of(&self, components: &[Vec<usize>]) -> Option<usize> {
        self.maps
            .binary_search_by(|m| m.components().cmp(components))
            .ok()
    }
}

pub fn hom_as_space(x: &DSpace, y: &DSpace) -> Result<HomAsSpace> {
    let maps = enumerate_equivariant_maps(x, y)?;
    let space = pointwise_space(y, maps.iter().map(|m| m.components()));
    Ok(HomAsSpace { space, maps })
}

fn pointwise_space<'a>(y: &DSpace, maps: impl Iterator<Item = &'a [Vec<usize>]>) -> FinSpace {
    let maps: Vec<&[Vec<usize>]> = maps.collect();
    let len = maps.len();
    let mut leq = vec![false; len * len];
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            leq[i * len + j] = a
                .iter()
                .zip(b.iter())
                .enumerate()
                .all(|(d, (u, v))| u.iter().zip(v).all(|(&p, &q)| y.space(d).leq(p, q)));
        }
    }
    FinSpace::from_matrix_unchecked(len, leq)
}

/// The enriched hom `D(Y, Z)`: at `d`, maps `Y × D(d, −) → Z`.
#[derive(Clone, Debug)]
pub struct EnrichedHom {
    pub source: DSpace,
    pub target: DSpace,
    pub dspace: DSpace,
    /// `maps[d][i]` are the components of the `i`-th point at `d`.
    pub maps: Vec<Vec<Vec<Vec<usize>>>>,
    index: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

impl EnrichedHom {
    pub fn index_of(&self, d: ObjectId, components: &[Vec<usize>]) -> Option<usize> {
        self.index[d].get(components).copied()
    }
}

pub fn enriched_hom(y: &DSpace, z: &DSpace) -> Result<EnrichedHom> {
    y.check_same_shape(z)?;
    let shape = y.shape();
    let mut spaces = Vec::new();
    let mut maps = Vec::new();
    for d in shape.objects() {
        let free = DSpace::representable(shape, d)?;
        let h = hom_as_space(&product(y, &free)?, z)?;
        spaces.push(h.space);
        maps.push(h.maps.into_iter().map(|m| m.components().to_vec()).collect::<Vec<_>>());
    }
    let index: Vec<HashMap<Vec<Vec<usize>>, usize>> = maps
        .iter()
        .map(|ms| ms.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect())
        .collect();
    // Along f: d → d', precompose with D(f, −): D(d', −) → D(d, −).
    let actions = shape
        .morphisms()
        .map(|f| {
            let (d, d2) = (shape.source(f), shape.target(f));
            maps[d]
                .iter()
                .map(|beta| {
                    let moved: Vec<Vec<usize>> = shape
                        .objects()
                        .map(|e| {
                            let (n_new, n_old) = (shape.homs(d2, e).len(), shape.homs(d, e).len());
                            (0..y.space(e).len() * n_new)
                                .map(|p| {
                                    let (yp, g) = (p / n_new, shape.homs(d2, e)[p % n_new]);
                                    let gf = shape.compose(g, f).expect("composable");
                                    beta[e][yp * n_old + hom_position(shape, d, e, gf)]
                                })
                                .collect()
                        })
                        .collect();
                    index[d2][&moved]
                })
                .collect()
        })
        .collect();
    let dspace = DSpace::new(shape.clone(), spaces, actions)?;
    Ok(EnrichedHom {
        source: y.clone(),
        target: z.clone(),
        dspace,
        maps,
        index,
    })
}

/// `α: X × Y → Z` to `β: X → D(Y, Z)` with
/// `β_d(x)` sending `(y, f: d → e)` to `α_e(X_f(x), y)`.
pub fn tensor_hom_forward(alpha: &EquivariantMap, x: &DSpace, eh: &EnrichedHom) -> Result<EquivariantMap> {
    let y = &eh.source;
    if *alpha.source() != product(x, y)? || *alpha.target() != eh.target {
        return Err(Error::ShapeMismatch("α must map X × Y to Z".into()));
    }
    let shape = x.shape();
    let components = shape
        .objects()
        .map(|d| {
            x.space(d)
                .points()
                .map(|xp| {
                    let beta: Vec<Vec<usize>> = shape
                        .objects()
                        .map(|e| {
                            let homs = shape.homs(d, e);
                            let ny = y.space(e).len();
                            (0..ny * homs.len())
                                .map(|p| {
                                    let (yp, f) = (p / homs.len(), homs[p % homs.len()]);
                                    alpha.apply(e, x.act(f, xp) * ny + yp)
                                })
                                .collect()
                        })
                        .collect();
                    eh.index_of(d, &beta)
                        .ok_or_else(|| Error::NotEquivariant("transposed map is not equivariant".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    EquivariantMap::new(x.clone(), eh.dspace.clone(), components)
}

/// `β: X → D(Y, Z)` to `α: X × Y → Z` with `α_d(x, y) = β_d(x)_d(y, id_d)`.
pub fn tensor_hom_backward(beta: &EquivariantMap, eh: &EnrichedHom) -> Result<EquivariantMap> {
    if *beta.target() != eh.dspace {
        return Err(Error::ShapeMismatch("β must land in the enriched hom".into()));
    }
    let x = beta.source();
    let y = &eh.source;
    let shape = x.shape();
    let components = shape
        .objects()
        .map(|d| {
            let ny = y.space(d).len();
            let n_dd = shape.homs(d, d).len();
            let id = hom_position(shape, d, d, shape.identity(d));
            (0..x.space(d).len() * ny)
                .map(|p| {
                    let (xp, yp) = (p / ny, p % ny);
                    eh.maps[d][beta.apply(d, xp)][d][yp * n_dd + id]
                })
                .collect()
        })
        .collect();
    EquivariantMap::new(product(x, y)?, eh.target.clone(), components)
}

/// `X^O`: equivariant maps `O → X` as a space.
pub fn fixed_points(x: &DSpace, o: &DSpace) -> Result<HomAsSpace> {
    hom_as_space(o, x)
}

fn require_orbit(o: &DSpace) -> Result<()> {
    let n = colim_dspace(o).space.len();
    if n != 1 {
        return Err(Error::NotAnOrbit(format!("colimit has {n} points")));
    }
    Ok(())
}

/// A (co)limit whose fixed points are compared.
#[derive(Clone, Debug)]
pub enum PreservationInstance {
    Coproduct(DSpace, DSpace),
    Product(DSpace, DSpace),
    /// `Y ← W → Z`.
    Pushout(EquivariantMap, EquivariantMap),
    /// `Y → W ← Z`.
    Pullback(EquivariantMap, EquivariantMap),
}

impl PreservationInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Coproduct(..) => "coproduct",
            Self::Product(..) => "product",
            Self::Pushout(..) => "pushout",
            Self::Pullback(..) => "pullback",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationResult {
    pub kind: &'static str,
    /// Size of the (co)limit of the fixed-point spaces.
    pub of_fixed_points: usize,
    /// Size of the fixed points of the (co)limit.
    pub fixed_points_of: usize,
    pub comparison_is_iso: bool,
}

fn push_forward(h: &EquivariantMap, hs: &HomAsSpace, into: &HomAsSpace) -> Vec<usize> {
    hs.maps
        .iter()
        .map(|a| {
            into.index_of(&post_compose(h.components(), a.components()))
                .expect("composite is equivariant")
        })
        .collect()
}

/// Compares `(−)^O` applied before and after each (co)limit via the
/// canonical map, and reports whether it is an isomorphism of spaces.
pub fn check_fixed_point_preservation(o: &DSpace, instances: &[PreservationInstance]) -> Result<Vec<PreservationResult>> {
    require_orbit(o)?;
    instances.iter().map(|inst| preservation(o, inst)).collect()
}

fn preservation(o: &DSpace, inst: &PreservationInstance) -> Result<PreservationResult> {
    let (glued, fixed, assignment) = match inst {
        PreservationInstance::Coproduct(y, z) => {
            let c = coproduct(y, z)?;
            let (inl, inr) = coproduct_injections(y, z, &c);
            let (fy, fz, fc) = (fixed_points(y, o)?, fixed_points(z, o)?, fixed_points(&c, o)?);
            let mut a = push_forward(&inl, &fy, &fc);
            a.extend(push_forward(&inr, &fz, &fc));
            (fy.space.coproduct(&fz.space), fc.space, a)
        }
        PreservationInstance::Product(y, z) => {
            let p = product(y, z)?;
            let (p1, p2) = product_projections(y, z, &p);
            let (fy, fz, fp) = (fixed_points(y, o)?, fixed_points(z, o)?, fixed_points(&p, o)?);
            let (a1, a2) = (push_forward(&p1, &fp, &fy), push_forward(&p2, &fp, &fz));
            let nz = fz.maps.len();
            let a: Vec<usize> = a1.iter().zip(&a2).map(|(&i, &j)| i * nz + j).collect();
            // Comparison runs from the fixed points of the product.
            return Ok(PreservationResult {
                kind: inst.kind(),
                of_fixed_points: fy.maps.len() * nz,
                fixed_points_of: fp.maps.len(),
                comparison_is_iso: is_order_isomorphism(&fp.space, &fy.space.product(&fz.space), &a),
            });
        }
        PreservationInstance::Pushout(f, g) => {
            let p = pushout_dspace(f, g)?;
            let (fw, fy, fz) = (
                fixed_points(f.source(), o)?,
                fixed_points(f.target(), o)?,
                fixed_points(g.target(), o)?,
            );
            let fp = fixed_points(&p.space, o)?;
            let fstar = finspace::MonotoneMap::new(fw.space.clone(), fy.space.clone(), push_forward(f, &fw, &fy))?;
            let gstar = finspace::MonotoneMap::new(fw.space.clone(), fz.space.clone(), push_forward(g, &fw, &fz))?;
            let q = finspace::pushout(&fstar, &gstar);
            let ly = push_forward(&p.left, &fy, &fp);
            let lz = push_forward(&p.right, &fz, &fp);
            let mut a = vec![UNSET; q.space.len()];
            for (i, &c) in q.left.iter().enumerate() {
                a[c] = ly[i];
            }
            for (i, &c) in q.right.iter().enumerate() {
                a[c] = lz[i];
            }
            (q.space, fp.space, a)
        }
        PreservationInstance::Pullback(f, g) => {
            let p = pullback_dspace(f, g)?;
            let (fy, fz, fw) = (
                fixed_points(f.source(), o)?,
                fixed_points(g.source(), o)?,
                fixed_points(f.target(), o)?,
            );
            let fp = fixed_points(&p.space, o)?;
            let cospan = FinCategory::cospan();
            let fstar = push_forward(f, &fy, &fw);
            let gstar = push_forward(g, &fz, &fw);
            let glue: Vec<Vec<usize>> = cospan
                .morphisms()
                .map(|j| {
                    if cospan.is_identity(j) {
                        let n = [fy.maps.len(), fz.maps.len(), fw.maps.len()][cospan.source(j)];
                        (0..n).collect()
                    } else if cospan.source(j) == 0 {
                        fstar.clone()
                    } else {
                        gstar.clone()
                    }
                })
                .collect();
            let l = finspace::limit(&cospan, &[fy.space.clone(), fz.space.clone(), fw.space.clone()], &glue);
            let py = push_forward(&p.left, &fp, &fy);
            let pz = push_forward(&p.right, &fp, &fz);
            let a: Vec<usize> = (0..fp.maps.len())
                .map(|i| {
                    let fam = vec![py[i], pz[i], fstar[py[i]]];
                    l.families.binary_search(&fam).expect("compatible family")
                })
                .collect();
            return Ok(PreservationResult {
                kind: inst.kind(),
                of_fixed_points: l.families.len(),
                fixed_points_of: fp.maps.len(),
                comparison_is_iso: is_order_isomorphism(&fp.space, &l.space, &a),
            });
        }
    };
    Ok(PreservationResult {
        kind: inst.kind(),
        of_fixed_points: glued.len(),
        fixed_points_of: fixed.len(),
        comparison_is_iso: is_order_isomorphism(&glued, &fixed, &assignment),
    })
}

/// Components of `X^O`.
pub fn pi0_orbit(x: &DSpace, o: &DSpace) -> Result<Components> {
    require_orbit(o)?;
    Ok(finspace::pi0(&fixed_points(x, o)?.space))
}

/// `O ↦ π₀(X^O)` over an orbit category, contravariant in `O`.
///
/// The functor is stored as a discrete diagram over the opposite of the
/// orbit category: point `i` at `O` is the `i`-th component of `X^O`.
#[derive(Clone, Debug)]
pub struct Pi0Functor {
    pub components: Vec<Components>,
    pub dspace: DSpace,
}

impl Pi0Functor {
    /// The induced map `π₀(X^P) → π₀(X^O)` of an orbit-category morphism `O → P`.
    pub fn induced(&self, sigma: MorphismId) -> &[usize] {
        self.dspace.action(sigma)
    }
}

pub fn pi0_functor(x: &DSpace, oc: &OrbitCategory) -> Result<Pi0Functor> {
    let fixed = oc
        .orbits()
        .iter()
        .map(|o| {
            require_orbit(o.underlying())?;
            fixed_points(x, o.underlying())
        })
        .collect::<Result<Vec<_>>>()?;
    let components: Vec<Components> = fixed.iter().map(|h| finspace::pi0(&h.space)).collect();
    let cat = oc.category();
    let actions = cat
        .morphisms()
        .map(|sigma| {
            // σ: O → P acts as precomposition X^P → X^O.
            let (o, p) = (cat.source(sigma), cat.target(sigma));
            let s = oc.map(sigma);
            components[p]
                .labels
                .iter()
                .map(|&rep| {
                    let pulled = post_compose(fixed[p].maps[rep].components(), s.components());
                    let i = fixed[o].index_of(&pulled).expect("precomposite is equivariant");
                    components[o].index_of(i)
                })
                .collect()
        })
        .collect();
    let spaces = components.iter().map(|c| FinSpace::discrete(c.count())).collect();
    let dspace = DSpace::new(oc.opposite().clone(), spaces, actions)?;
    Ok(Pi0Functor { components, dspace })
}

/// Every functorial choice of monotone actions on the given spaces.
pub fn enumerate_actions(shape: &FinCategory, spaces: &[FinSpace]) -> Vec<Vec<Vec<usize>>> {
    let m = shape.morphism_count();
    let mut actions: Vec<Option<Vec<usize>>> = vec![None; m];
    for d in shape.objects() {
        actions[shape.identity(d)] = Some(spaces[d].points().collect());
    }
    let order: Vec<MorphismId> = shape.morphisms().filter(|&f| !shape.is_identity(f)).collect();
    let candidates: Vec<Vec<Vec<usize>>> = order
        .iter()
        .map(|&f| finspace::monotone_maps(&spaces[shape.source(f)], &spaces[shape.target(f)]))
        .collect();
    let mut triples = vec![Vec::new(); m];
    for g in shape.morphisms() {
        for f in shape.morphisms() {
            if let Some(h) = shape.compose(g, f) {
                for x in [g, f, h] {
                    triples[x].push((g, f, h));
                }
            }
        }
    }
    let mut out = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[MorphismId],
        candidates: &[Vec<Vec<usize>>],
        triples: &[Vec<(MorphismId, MorphismId, MorphismId)>],
        actions: &mut Vec<Option<Vec<usize>>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if k == order.len() {
            out.push(actions.iter().map(|a| a.clone().expect("assigned")).collect());
            return;
        }
        let f = order[k];
        for cand in &candidates[k] {
            actions[f] = Some(cand.clone());
            let ok = triples[f].iter().all(|&(g, ff, h)| match (&actions[g], &actions[ff], &actions[h]) {
                (Some(ag), Some(af), Some(ah)) => af.iter().zip(ah).all(|(&y, &z)| ag[y] == z),
                _ => true,
            });
            if ok {
                go(k + 1, order, candidates, triples, actions, out);
            }
        }
        actions[f] = None;
    }

    go(0, &order, &candidates, &triples, &mut actions, &mut out);
    out
}

/// Every labelled diagram with at most `max_points` points per object.
/// With `discrete` set, only discrete value spaces are used.
pub fn enumerate_dspaces(shape: &FinCategory, max_points: usize, discrete: bool) -> Vec<DSpace> {
    let per_size: Vec<Vec<FinSpace>> = (0..=max_points)
        .map(|n| {
            if discrete {
                vec![FinSpace::discrete(n)]
            } else {
                finspace::all_preorders(n)
            }
        })
        .collect();
    let choices: Vec<FinSpace> = per_size.into_iter().flatten().collect();
    let n = shape.object_count();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let spaces: Vec<FinSpace> = pick.iter().map(|&i| choices[i].clone()).collect();
        for actions in enumerate_actions(shape, &spaces) {
            out.push(DSpace::new_unchecked(shape.clone(), spaces.clone(), actions));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < choices.len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn j() -> FinCategory {
        FinCategory::walking_arrow()
    }

    #[test]
    fn representable_over_the_arrow() {
        let fs = DSpace::representable(&j(), 0).unwrap();
        assert_eq!(fs.sizes(), vec![1, 1]);
        let ft = DSpace::representable(&j(), 1).unwrap();
        assert_eq!(ft.sizes(), vec![0, 1]);
        assert!(DSpace::representable(&j(), 2).is_err());
    }

    #[test]
    fn non_monotone_action_is_rejected() {
        let c = FinSpace::chain(2);
        let err = DSpace::from_partial(j(), vec![c.clone(), c], [(2, vec![1, 0])]).unwrap_err();
        assert!(matches!(err, Error::NonMonotoneAction { .. }));
    }

    #[test]
    fn missing_action_is_rejected() {
        let p = FinSpace::point();
        let err = DSpace::from_partial(j(), vec![p.clone(), p], []).unwrap_err();
        assert_eq!(err, Error::MissingAction("f".into()));
    }

    #[test]
    fn non_functorial_group_action() {
        // r2 must equal r ∘ r.
        let c3 = FinCategory::cyclic_group(3);
        let err = DSpace::from_partial(c3, vec![FinSpace::discrete(3)], [(1, vec![1, 0, 2]), (2, vec![1, 0, 2])])
            .unwrap_err();
        assert!(matches!(err, Error::NotFunctorial { .. }));
    }

    #[test]
    fn unique_map_from_zero_to_one() {
        let zero = DSpace::representable(&j(), 1).unwrap();
        let one = DSpace::representable(&j(), 0).unwrap();
        assert_eq!(count_equivariant_maps(&zero, &one).unwrap(), 1);
        assert_eq!(count_equivariant_maps(&one, &zero).unwrap(), 0);
    }

    #[test]
    fn colimit_of_free_orbit_is_a_point() {
        for d in 0..2 {
            let f = DSpace::representable(&j(), d).unwrap();
            assert_eq!(colim_dspace(&f).space.len(), 1);
        }
    }

    #[test]
    fn pi0_example_table() {
        let x = DSpace::from_partial(j(), vec![FinSpace::discrete(2), FinSpace::point()], [(2, vec![0, 0])]).unwrap();
        let zero = DSpace::representable(&j(), 1).unwrap();
        let one = DSpace::representable(&j(), 0).unwrap();
        assert_eq!(pi0_orbit(&x, &zero).unwrap().count(), 1);
        assert_eq!(pi0_orbit(&x, &one).unwrap().count(), 2);
        let two_points = DSpace::constant(&j(), &FinSpace::discrete(2));
        assert!(matches!(pi0_orbit(&x, &two_points), Err(Error::NotAnOrbit(_))));
    }

    #[test]
    fn tensor_hom_roundtrip_small() {
        let shape = j();
        let x = DSpace::representable(&shape, 0).unwrap();
        let y = DSpace::constant(&shape, &FinSpace::discrete(2));
        let z = DSpace::constant(&shape, &FinSpace::chain(2));
        let eh = enriched_hom(&y, &z).unwrap();
        let xy = product(&x, &y).unwrap();
        let alphas = enumerate_equivariant_maps(&xy, &z).unwrap();
        assert_eq!(alphas.len(), count_equivariant_maps(&x, &eh.dspace).unwrap());
        for a in &alphas {
            let b = tensor_hom_forward(a, &x, &eh).unwrap();
            assert_eq!(&tensor_hom_backward(&b, &eh).unwrap(), a);
        }
    }

    #[test]
    fn enumerated_actions_are_functorial() {
        let c2 = FinCategory::cyclic_group(2);
        let all = enumerate_dspaces(&c2, 2, true);
        // Involutions on 0, 1 and 2 points: 1 + 1 + 2.
        assert_eq!(all.len(), 4);
        for x in all {
            DSpace::new(x.shape().clone(), x.spaces().to_vec(), x.actions().to_vec()).unwrap();
        }
    }
}
