//! Finite spaces as finite preorders.
//!
//! A finite topological space is the same thing as a preorder on its points
//! (`x ≤ y` iff `x` lies in the closure of `y`, or dually), and continuous
//! maps are exactly the monotone ones. Everything here works on that model.

use std::fmt;

use thiserror::Error;

use crate::fincat::FinCategory;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("point {point} out of range for a space of {len} points")]
    PointOutOfRange { point: usize, len: usize },
    #[error("relation is not a preorder: {0}")]
    NotPreorder(String),
    #[error("assignment is not monotone: {x} ≤ {y} but images are incomparable")]
    NotMonotone { x: usize, y: usize },
    #[error("assignment has {got} entries, expected {expected}")]
    SizeMismatch { got: usize, expected: usize },
    #[error("model index {0} is out of range")]
    OutOfRange(i32),
}

type Result<T, E = SpaceError> = std::result::Result<T, E>;

/// Largest sphere/disk dimension the models are built for.
pub const MAX_MODEL_DIMENSION: i32 = 30;

/// Reflexive points are assumed; makes `leq` transitive in place.
pub fn close_transitively(n: usize, leq: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinSpace {
    len: usize,
    leq: Vec<bool>,
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSpace({}; ", self.len)?;
        f.debug_list().entries(self.strict_pairs()).finish()?;
        write!(f, ")")
    }
}

impl FinSpace {
    /// The preorder generated by `relations`.
    pub fn from_relations(len: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; len * len];
        for i in 0..len {
            leq[i * len + i] = true;
        }
        for &(x, y) in relations {
            for p in [x, y] {
                if p >= len {
                    return Err(SpaceError::PointOutOfRange { point: p, len });
                }
            }
            leq[x * len + y] = true;
        }
        close_transitively(len, &mut leq);
        Ok(Self { len, leq })
    }

    /// A full relation matrix, which must already be a preorder.
    pub fn from_matrix(len: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != len * len {
            return Err(SpaceError::SizeMismatch {
                got: leq.len(),
                expected: len * len,
            });
        }
        for x in 0..len {
            if !leq[x * len + x] {
                return Err(SpaceError::NotPreorder(format!("{x} ≰ {x}")));
            }
            for y in 0..len {
                for z in 0..len {
                    if leq[x * len + y] && leq[y * len + z] && !leq[x * len + z] {
                        return Err(SpaceError::NotPreorder(format!("{x} ≤ {y} ≤ {z} but {x} ≰ {z}")));
                    }
                }
            }
        }
        Ok(Self { len, leq })
    }

    pub(crate) fn from_matrix_unchecked(len: usize, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), len * len);
        Self { len, leq }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_relations(n, &[]).expect("discrete")
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    /// `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_relations(n, &rel).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len + y]
    }

    pub fn matrix(&self) -> &[bool] {
        &self.leq
    }

    /// Pairs `x ≤ y` with `x ≠ y`, in lexicographic order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.points() {
            for y in self.points() {
                if x != y && self.leq(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_discrete(&self) -> bool {
        self.strict_pairs().is_empty()
    }

    /// Rechecks reflexivity and transitivity from scratch.
    pub fn is_preorder(&self) -> bool {
        Self::from_matrix(self.len, self.leq.clone()).is_ok()
    }

    /// Points above every point.
    pub fn greatest_points(&self) -> Vec<usize> {
        self.points().filter(|&t| self.points().all(|x| self.leq(x, t))).collect()
    }

    /// Componentwise order; the pair `(x, y)` is point `x * |other| + y`.
    pub fn product(&self, other: &FinSpace) -> FinSpace {
        let (n, m) = (self.len, other.len);
        let len = n * m;
        let mut leq = vec![false; len * len];
        for a in 0..len {
            for b in 0..len {
                leq[a * len + b] = self.leq(a / m, b / m) && other.leq(a % m, b % m);
            }
        }
        Self::from_matrix_unchecked(len, leq)
    }

    /// Points of `self` first, then those of `other` shifted by `|self|`.
    pub fn coproduct(&self, other: &FinSpace) -> FinSpace {
        let len = self.len + other.len;
        let mut leq = vec![false; len * len];
        for x in self.points() {
            for y in self.points() {
                leq[x * len + y] = self.leq(x, y);
            }
        }
        for x in other.points() {
            for y in other.points() {
                leq[(x + self.len) * len + y + self.len] = other.leq(x, y);
            }
        }
        Self::from_matrix_unchecked(len, leq)
    }

    /// The induced order on the listed points, in the given order.
    pub fn subspace(&self, points: &[usize]) -> FinSpace {
        let len = points.len();
        let mut leq = vec![false; len * len];
        for (i, &x) in points.iter().enumerate() {
            for (j, &y) in points.iter().enumerate() {
                leq[i * len + j] = self.leq(x, y);
            }
        }
        Self::from_matrix_unchecked(len, leq)
    }

    /// Points that are reachable from `x` along comparabilities.
    pub fn component_of(&self, x: usize) -> Vec<usize> {
        let labels = pi0(self);
        let l = labels.projection[x];
        self.points().filter(|&y| labels.projection[y] == l).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    domain: FinSpace,
    codomain: FinSpace,
    assignment: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(domain: FinSpace, codomain: FinSpace, assignment: Vec<usize>) -> Result<Self> {
        check_monotone(&domain, &codomain, &assignment)?;
        Ok(Self {
            domain,
            codomain,
            assignment,
        })
    }

    pub fn identity(space: &FinSpace) -> Self {
        Self {
            domain: space.clone(),
            codomain: space.clone(),
            assignment: space.points().collect(),
        }
    }

    pub fn domain(&self) -> &FinSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FinSpace {
        &self.codomain
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MonotoneMap) -> Result<Self> {
        if inner.codomain != self.domain {
            return Err(SpaceError::SizeMismatch {
                got: inner.codomain.len(),
                expected: self.domain.len(),
            });
        }
        Ok(Self {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            assignment: inner.assignment.iter().map(|&x| self.assignment[x]).collect(),
        })
    }

    /// Bijective and order-reflecting.
    pub fn is_isomorphism(&self) -> bool {
        is_order_isomorphism(&self.domain, &self.codomain, &self.assignment)
    }
}

pub fn check_monotone(domain: &FinSpace, codomain: &FinSpace, assignment: &[usize]) -> Result<()> {
    if assignment.len() != domain.len() {
        return Err(SpaceError::SizeMismatch {
            got: assignment.len(),
            expected: domain.len(),
        });
    }
    for &y in assignment {
        if y >= codomain.len() {
            return Err(SpaceError::PointOutOfRange {
                point: y,
                len: codomain.len(),
            });
        }
    }
    for (x, y) in domain.strict_pairs() {
        if !codomain.leq(assignment[x], assignment[y]) {
            return Err(SpaceError::NotMonotone { x, y });
        }
    }
    Ok(())
}

pub fn is_order_isomorphism(domain: &FinSpace, codomain: &FinSpace, assignment: &[usize]) -> bool {
    if domain.len() != codomain.len() || assignment.len() != domain.len() {
        return false;
    }
    let mut seen = vec![false; codomain.len()];
    for &y in assignment {
        if y >= codomain.len() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    domain
        .points()
        .all(|x| domain.points().all(|y| domain.leq(x, y) == codomain.leq(assignment[x], assignment[y])))
}

/// A colimit space with one leg per object of the shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub space: FinSpace,
    pub legs: Vec<Vec<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller index as root so classes are labelled by minimum.
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Colimit of a diagram of spaces: `spaces[d]` at each object and
/// `maps[m]` (an assignment) along each morphism, identities included.
///
/// Points are glued by the equivalence generated by `x ~ maps[m][x]`;
/// classes are numbered by their smallest member in the concatenation of
/// all spaces. The order is generated by the images of the pieces' orders.
pub fn colimit(shape: &FinCategory, spaces: &[FinSpace], maps: &[Vec<usize>]) -> Colimit {
    let mut offsets = Vec::with_capacity(spaces.len());
    let mut total = 0;
    for s in spaces {
        offsets.push(total);
        total += s.len();
    }
    let mut uf = UnionFind::new(total);
    for m in shape.morphisms() {
        let (a, b) = (shape.source(m), shape.target(m));
        for (x, &y) in maps[m].iter().enumerate() {
            uf.union(offsets[a] + x, offsets[b] + y);
        }
    }
    let mut class_of_root = vec![usize::MAX; total];
    let mut count = 0;
    let mut class = vec![0; total];
    for p in 0..total {
        let r = uf.find(p);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = count;
            count += 1;
        }
        class[p] = class_of_root[r];
    }
    let mut relations = Vec::new();
    for (d, s) in spaces.iter().enumerate() {
        for (x, y) in s.strict_pairs() {
            relations.push((class[offsets[d] + x], class[offsets[d] + y]));
        }
    }
    let space = FinSpace::from_relations(count, &relations).expect("classes in range");
    let legs = spaces
        .iter()
        .enumerate()
        .map(|(d, s)| s.points().map(|x| class[offsets[d] + x]).collect())
        .collect();
    Colimit { space, legs }
}

/// Limit of a diagram of spaces: compatible families with the
/// componentwise order, in lexicographic order of families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limit {
    pub space: FinSpace,
    pub families: Vec<Vec<usize>>,
}

impl Limit {
    pub fn leg(&self, d: usize) -> Vec<usize> {
        self.families.iter().map(|f| f[d]).collect()
    }
}

pub fn limit(shape: &FinCategory, spaces: &[FinSpace], maps: &[Vec<usize>]) -> Limit {
    let n = spaces.len();
    let mut families = Vec::new();
    let mut current = Vec::with_capacity(n);

    fn go(
        shape: &FinCategory,
        spaces: &[FinSpace],
        maps: &[Vec<usize>],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let d = current.len();
        if d == spaces.len() {
            out.push(current.clone());
            return;
        }
        for x in spaces[d].points() {
            current.push(x);
            let ok = shape.morphisms().all(|m| {
                let (a, b) = (shape.source(m), shape.target(m));
                a > d || b > d || (a != d && b != d) || maps[m][current[a]] == current[b]
            });
            if ok {
                go(shape, spaces, maps, current, out);
            }
            current.pop();
        }
    }

    go(shape, spaces, maps, &mut current, &mut families);
    let len = families.len();
    let mut leq = vec![false; len * len];
    for (i, a) in families.iter().enumerate() {
        for (j, b) in families.iter().enumerate() {
            leq[i * len + j] = (0..n).all(|d| spaces[d].leq(a[d], b[d]));
        }
    }
    Limit {
        space: FinSpace::from_matrix_unchecked(len, leq),
        families,
    }
}

/// A pushout `Y ⊔_W Z` with its two legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub space: FinSpace,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn pushout(f: &MonotoneMap, g: &MonotoneMap) -> Pushout {
    assert_eq!(f.domain(), g.domain(), "pushout needs a shared domain");
    let span = FinCategory::span();
    let spaces = [f.domain().clone(), f.codomain().clone(), g.codomain().clone()];
    let maps: Vec<Vec<usize>> = span
        .morphisms()
        .map(|m| {
            if span.is_identity(m) {
                spaces[span.source(m)].points().collect()
            } else if span.target(m) == 1 {
                f.assignment().to_vec()
            } else {
                g.assignment().to_vec()
            }
        })
        .collect();
    let mut c = colimit(&span, &spaces, &maps);
    let right = c.legs.pop().unwrap();
    let left = c.legs.pop().unwrap();
    Pushout {
        space: c.space,
        left,
        right,
    }
}

/// All monotone maps `X → Y` in lexicographic order, with the pointwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub space: FinSpace,
    pub maps: Vec<Vec<usize>>,
}

pub fn monotone_maps(x: &FinSpace, y: &FinSpace) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(x.len());

    fn go(x: &FinSpace, y: &FinSpace, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let p = current.len();
        if p == x.len() {
            out.push(current.clone());
            return;
        }
        for v in y.points() {
            let ok = (0..p).all(|q| {
                (!x.leq(q, p) || y.leq(current[q], v)) && (!x.leq(p, q) || y.leq(v, current[q]))
            });
            if ok {
                current.push(v);
                go(x, y, current, out);
                current.pop();
            }
        }
    }

    go(x, y, &mut current, &mut out);
    out
}

pub fn pointwise_order(codomain: &FinSpace, maps: &[Vec<usize>]) -> FinSpace {
    let len = maps.len();
    let mut leq = vec![false; len * len];
    for (i, a) in maps.iter().enumerate() {
        for (j, b) in maps.iter().enumerate() {
            leq[i * len + j] = a.iter().zip(b).all(|(&u, &v)| codomain.leq(u, v));
        }
    }
    FinSpace::from_matrix_unchecked(len, leq)
}

pub fn hom_space(x: &FinSpace, y: &FinSpace) -> HomSpace {
    let maps = monotone_maps(x, y);
    HomSpace {
        space: pointwise_order(y, &maps),
        maps,
    }
}

/// Connected components of the comparability graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    /// Smallest point of each component, ascending.
    pub labels: Vec<usize>,
    /// The label of each point's component.
    pub projection: Vec<usize>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.labels.len()
    }

    /// Position of a point's component in `labels`.
    pub fn index_of(&self, x: usize) -> usize {
        self.labels.binary_search(&self.projection[x]).expect("label present")
    }
}

pub fn pi0(x: &FinSpace) -> Components {
    let mut uf = UnionFind::new(x.len());
    for (a, b) in x.strict_pairs() {
        uf.union(a, b);
    }
    let projection: Vec<usize> = x.points().map(|p| uf.find(p)).collect();
    let mut labels = projection.clone();
    labels.sort_unstable();
    labels.dedup();
    Components { labels, projection }
}

/// Every preorder on `{0, …, n-1}`, as labelled relations.
pub fn all_preorders(n: usize) -> Vec<FinSpace> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                leq[x * n + y] = true;
            }
        }
        if let Ok(s) = FinSpace::from_matrix(n, leq) {
            out.push(s);
        }
    }
    out
}

/// Non-Hausdorff suspension: two new incomparable points above everything.
pub fn suspension(x: &FinSpace) -> FinSpace {
    let n = x.len();
    let mut rel = x.strict_pairs();
    for p in 0..n {
        rel.push((p, n));
        rel.push((p, n + 1));
    }
    FinSpace::from_relations(n + 2, &rel).expect("suspension")
}

/// One new point above everything.
pub fn cone(x: &FinSpace) -> FinSpace {
    let n = x.len();
    let mut rel = x.strict_pairs();
    rel.extend((0..n).map(|p| (p, n)));
    FinSpace::from_relations(n + 1, &rel).expect("cone")
}

/// The finite model of `S^n`: empty for `n = -1`, then iterated suspension.
/// It has `2n + 2` points.
pub fn sphere_model(n: i32) -> Result<FinSpace> {
    if !(-1..=MAX_MODEL_DIMENSION).contains(&n) {
        return Err(SpaceError::OutOfRange(n));
    }
    let mut s = FinSpace::empty();
    for _ in -1..n {
        s = suspension(&s);
    }
    Ok(s)
}

/// The cone on `sphere_model(n - 1)`; its apex is the last point.
pub fn disk_model(n: i32) -> Result<FinSpace> {
    if !(0..=MAX_MODEL_DIMENSION).contains(&n) {
        return Err(SpaceError::OutOfRange(n));
    }
    Ok(cone(&sphere_model(n - 1)?))
}

/// An order isomorphism `X → Y`, if one exists.
pub fn find_isomorphism(x: &FinSpace, y: &FinSpace) -> Option<Vec<usize>> {
    if x.len() != y.len() {
        return None;
    }
    let degree = |s: &FinSpace, p: usize| {
        let up = s.points().filter(|&q| s.leq(p, q)).count();
        let down = s.points().filter(|&q| s.leq(q, p)).count();
        (up, down)
    };
    let dx: Vec<_> = x.points().map(|p| degree(x, p)).collect();
    let dy: Vec<_> = y.points().map(|p| degree(y, p)).collect();
    let mut assignment = Vec::with_capacity(x.len());
    let mut used = vec![false; y.len()];

    fn go(
        x: &FinSpace,
        y: &FinSpace,
        dx: &[(usize, usize)],
        dy: &[(usize, usize)],
        assignment: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let p = assignment.len();
        if p == x.len() {
            return true;
        }
        for v in y.points() {
            if used[v] || dx[p] != dy[v] {
                continue;
            }
            let ok = (0..=p).all(|q| {
                let w = if q == p { v } else { assignment[q] };
                x.leq(q, p) == y.leq(w, v) && x.leq(p, q) == y.leq(v, w)
            });
            if ok {
                used[v] = true;
                assignment.push(v);
                if go(x, y, dx, dy, assignment, used) {
                    return true;
                }
                assignment.pop();
                used[v] = false;
            }
        }
        false
    }

    go(x, y, &dx, &dy, &mut assignment, &mut used).then_some(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (0..5).map(|n| all_preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn discrete_spaces() {
        assert!(FinSpace::discrete(0).is_empty());
        let two = FinSpace::discrete(2);
        assert!(!two.leq(0, 1) && !two.leq(1, 0));
        assert_eq!(FinSpace::discrete(1), FinSpace::point());
    }

    #[test]
    fn rejects_non_preorder() {
        assert!(FinSpace::from_matrix(2, vec![true, false, false, false]).is_err());
        assert!(matches!(
            FinSpace::from_relations(2, &[(0, 3)]),
            Err(SpaceError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn product_and_coproduct_units() {
        let c = FinSpace::chain(3);
        assert!(find_isomorphism(&c.product(&FinSpace::point()), &c).is_some());
        assert_eq!(FinSpace::empty().coproduct(&c), c);
        assert_eq!(c.product(&FinSpace::discrete(2)).len(), 6);
    }

    #[test]
    fn gluing_intervals() {
        let i = FinSpace::chain(2);
        let pt = FinSpace::point();
        let f = MonotoneMap::new(pt.clone(), i.clone(), vec![1]).unwrap();
        let g = MonotoneMap::new(pt, i, vec![0]).unwrap();
        let p = pushout(&f, &g);
        assert!(find_isomorphism(&p.space, &FinSpace::chain(3)).is_some());
    }

    #[test]
    fn pushout_along_empty_is_coproduct() {
        let y = FinSpace::chain(2);
        let z = FinSpace::discrete(2);
        let e = FinSpace::empty();
        let p = pushout(
            &MonotoneMap::new(e.clone(), y.clone(), vec![]).unwrap(),
            &MonotoneMap::new(e, z.clone(), vec![]).unwrap(),
        );
        assert_eq!(p.space, y.coproduct(&z));
    }

    #[test]
    fn hom_spaces() {
        let s0 = sphere_model(0).unwrap();
        let h = hom_space(&s0, &s0);
        assert_eq!(h.maps.len(), 4);
        assert!(h.space.is_discrete());
        let c = FinSpace::chain(3);
        assert_eq!(hom_space(&FinSpace::point(), &c).space, c);
        assert_eq!(hom_space(&c, &c).maps.len(), 10);
    }

    #[test]
    fn spheres_and_disks() {
        assert!(sphere_model(-1).unwrap().is_empty());
        for n in 0..6 {
            let s = sphere_model(n).unwrap();
            assert_eq!(s.len() as i32, 2 * n + 2);
            let d = disk_model(n).unwrap();
            assert_eq!(d.greatest_points(), vec![d.len() - 1]);
            assert_eq!(pi0(&d).count(), 1);
        }
        assert_eq!(pi0(&sphere_model(0).unwrap()).count(), 2);
        assert_eq!(pi0(&sphere_model(1).unwrap()).count(), 1);
        assert_eq!(disk_model(0).unwrap(), FinSpace::point());
        assert_eq!(sphere_model(-2), Err(SpaceError::OutOfRange(-2)));
        assert_eq!(disk_model(-1), Err(SpaceError::OutOfRange(-1)));
    }

    #[test]
    fn components_are_labelled_by_minimum() {
        let x = FinSpace::from_relations(5, &[(3, 1), (4, 2)]).unwrap();
        let c = pi0(&x);
        assert_eq!(c.labels, vec![0, 1, 2]);
        assert_eq!(c.projection, vec![0, 1, 2, 1, 2]);
    }

    #[test]
    fn monotone_maps_are_checked() {
        let c = FinSpace::chain(2);
        assert!(MonotoneMap::new(c.clone(), c.clone(), vec![1, 0]).is_err());
        let m = MonotoneMap::new(c.clone(), c.clone(), vec![1, 1]).unwrap();
        assert!(!m.is_isomorphism());
        assert!(MonotoneMap::identity(&c).is_isomorphism());
    }
}
