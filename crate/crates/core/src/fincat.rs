//! Finite categories, functors between them, and natural transformations.
//!
//! Morphisms are indexed globally and hom-sets are obtained by filtering on
//! endpoints. The composition table is total over composable pairs and is
//! checked eagerly, so every [`FinCategory`] value satisfies the identity,
//! closure and associativity laws.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub type ObjectId = usize;
pub type MorphismId = usize;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CategoryError {
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("duplicate morphism `{0}`")]
    DuplicateMorphism(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("dangling endpoint: {0}")]
    DanglingEndpoint(String),
    #[error("object `{0}` has no identity morphism")]
    MissingIdentity(String),
    #[error("identity law fails: {0}")]
    IdentityLaw(String),
    #[error("composition table has no entry for `{g} ∘ {f}`")]
    IncompleteCompositionTable { g: String, f: String },
    #[error("conflicting entries for `{g} ∘ {f}`: `{first}` and `{second}`")]
    ConflictingComposite {
        g: String,
        f: String,
        first: String,
        second: String,
    },
    #[error("associativity fails for `{h}`, `{g}`, `{f}`")]
    NonAssociative { h: String, g: String, f: String },
    #[error("mismatched signature: {0}")]
    MismatchedSignature(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a natural transformation: {0}")]
    NotNatural(String),
    #[error("search budget of {0} steps exceeded")]
    SearchBudgetExceeded(usize),
}

type Result<T, E = CategoryError> = std::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// Unvalidated category description, addressed by names.
#[derive(Clone, Debug, Default)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    /// `(object, identity morphism)` pairs.
    pub identities: Vec<(String, String)>,
    /// `(g, f, g ∘ f)` entries. Entries with an identity factor may be
    /// omitted; they are filled from the identity laws.
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug)]
pub struct RawMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
}

impl RawMorphism {
    pub fn new(name: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct CategoryData {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorphismId>,
    // table[g * m + f] = g ∘ f
    table: Vec<Option<MorphismId>>,
    // homs[a * n + b]
    homs: Vec<Vec<MorphismId>>,
}

/// A small category with finitely many objects and morphisms.
///
/// Cloning is cheap; the data is shared.
#[derive(Clone)]
pub struct FinCategory {
    data: Arc<CategoryData>,
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl Eq for FinCategory {}

impl std::hash::Hash for FinCategory {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state)
    }
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.data.objects)
            .field("morphisms", &self.data.morphisms.len())
            .finish()
    }
}

/// Checks a raw description and builds the category.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut object_ids = HashMap::new();
    for (i, name) in raw.objects.iter().enumerate() {
        if object_ids.insert(name.as_str(), i).is_some() {
            return Err(CategoryError::DuplicateObject(name.clone()));
        }
    }

    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    let mut morphism_ids = HashMap::new();
    for m in &raw.morphisms {
        if morphism_ids.insert(m.name.as_str(), morphisms.len()).is_some() {
            return Err(CategoryError::DuplicateMorphism(m.name.clone()));
        }
        let endpoint = |obj: &str, role: &str| {
            object_ids.get(obj).copied().ok_or_else(|| {
                CategoryError::DanglingEndpoint(format!(
                    "morphism `{}` has unknown {role} `{obj}`",
                    m.name
                ))
            })
        };
        morphisms.push(Morphism {
            name: m.name.clone(),
            source: endpoint(&m.source, "source")?,
            target: endpoint(&m.target, "target")?,
        });
    }
    let lookup_morphism = |name: &str| {
        morphism_ids
            .get(name)
            .copied()
            .ok_or_else(|| CategoryError::UnknownMorphism(name.to_string()))
    };

    let mut identities: Vec<Option<MorphismId>> = vec![None; raw.objects.len()];
    for (obj, mor) in &raw.identities {
        let o = *object_ids
            .get(obj.as_str())
            .ok_or_else(|| CategoryError::UnknownObject(obj.clone()))?;
        let m = lookup_morphism(mor)?;
        if morphisms[m].source != o || morphisms[m].target != o {
            return Err(CategoryError::DanglingEndpoint(format!(
                "identity `{mor}` of `{obj}` is not an endomorphism of `{obj}`"
            )));
        }
        if let Some(prev) = identities[o] {
            if prev != m {
                return Err(CategoryError::IdentityLaw(format!(
                    "object `{obj}` has two identities `{}` and `{mor}`",
                    morphisms[prev].name
                )));
            }
        }
        identities[o] = Some(m);
    }
    let identities = identities
        .iter()
        .enumerate()
        .map(|(o, id)| id.ok_or_else(|| CategoryError::MissingIdentity(raw.objects[o].clone())))
        .collect::<Result<Vec<_>>>()?;

    let m = morphisms.len();
    let mut table: Vec<Option<MorphismId>> = vec![None; m * m];
    for (g_name, f_name, h_name) in &raw.compose {
        let g = lookup_morphism(g_name)?;
        let f = lookup_morphism(f_name)?;
        let h = lookup_morphism(h_name)?;
        let (mf, mg, mh) = (&morphisms[f], &morphisms[g], &morphisms[h]);
        if mf.target != mg.source {
            return Err(CategoryError::DanglingEndpoint(format!(
                "entry `{g_name} ∘ {f_name} = {h_name}`: `{f_name}` ends at `{}` but `{g_name}` starts at `{}`",
                raw.objects[mf.target], raw.objects[mg.source]
            )));
        }
        if mh.source != mf.source || mh.target != mg.target {
            return Err(CategoryError::DanglingEndpoint(format!(
                "entry `{g_name} ∘ {f_name} = {h_name}`: `{h_name}` has the wrong endpoints"
            )));
        }
        let slot = &mut table[g * m + f];
        match slot {
            Some(prev) if *prev != h => {
                return Err(CategoryError::ConflictingComposite {
                    g: g_name.clone(),
                    f: f_name.clone(),
                    first: morphisms[*prev].name.clone(),
                    second: h_name.clone(),
                })
            }
            _ => *slot = Some(h),
        }
    }

    // Entries with an identity factor are forced by the identity laws.
    for f in 0..m {
        let left = identities[morphisms[f].target];
        let right = identities[morphisms[f].source];
        for (g, ff) in [(left, f), (f, right)] {
            match table[g * m + ff] {
                None => table[g * m + ff] = Some(f),
                Some(h) if h != f => {
                    return Err(CategoryError::IdentityLaw(format!(
                        "`{} ∘ {}` is `{}`, expected `{}`",
                        morphisms[g].name, morphisms[ff].name, morphisms[h].name, morphisms[f].name
                    )))
                }
                Some(_) => {}
            }
        }
    }

    FinCategory::from_table(raw.objects.clone(), morphisms, identities, table)
}

impl FinCategory {
    /// Builds a category from a complete table `table[g * m + f] = g ∘ f`,
    /// checking every invariant.
    pub fn from_table(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        table: Vec<Option<MorphismId>>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        let name = |i: MorphismId| morphisms[i].name.clone();
        if identities.len() != n {
            let missing = objects.get(identities.len()).cloned().unwrap_or_default();
            return Err(CategoryError::MissingIdentity(missing));
        }
        if table.len() != m * m {
            return Err(CategoryError::MismatchedSignature(format!(
                "composition table has {} cells, expected {}",
                table.len(),
                m * m
            )));
        }
        for (i, mor) in morphisms.iter().enumerate() {
            if mor.source >= n || mor.target >= n {
                return Err(CategoryError::DanglingEndpoint(format!(
                    "morphism `{}` has an endpoint out of range",
                    mor.name
                )));
            }
            if morphisms[..i].iter().any(|other| other.name == mor.name) {
                return Err(CategoryError::DuplicateMorphism(mor.name.clone()));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= m || morphisms[id].source != o || morphisms[id].target != o {
                return Err(CategoryError::DanglingEndpoint(format!(
                    "identity of `{}` is not an endomorphism of it",
                    objects[o]
                )));
            }
        }
        for g in 0..m {
            for f in 0..m {
                let composable = morphisms[f].target == morphisms[g].source;
                match (composable, table[g * m + f]) {
                    (true, None) => {
                        return Err(CategoryError::IncompleteCompositionTable { g: name(g), f: name(f) })
                    }
                    (false, Some(h)) => {
                        return Err(CategoryError::DanglingEndpoint(format!(
                            "entry `{} ∘ {} = {}` composes a non-composable pair",
                            name(g),
                            name(f),
                            name(h)
                        )))
                    }
                    (true, Some(h)) => {
                        if h >= m
                            || morphisms[h].source != morphisms[f].source
                            || morphisms[h].target != morphisms[g].target
                        {
                            return Err(CategoryError::DanglingEndpoint(format!(
                                "entry `{} ∘ {}` has a result with the wrong endpoints",
                                name(g),
                                name(f)
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for f in 0..m {
            let left = identities[morphisms[f].target];
            let right = identities[morphisms[f].source];
            if table[left * m + f] != Some(f) || table[f * m + right] != Some(f) {
                return Err(CategoryError::IdentityLaw(format!(
                    "`{}` is not fixed by its identities",
                    name(f)
                )));
            }
        }
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = table[g * m + f] else { continue };
                for h in 0..m {
                    let Some(hg) = table[h * m + g] else { continue };
                    if table[h * m + gf] != table[hg * m + f] {
                        return Err(CategoryError::NonAssociative {
                            h: name(h),
                            g: name(g),
                            f: name(f),
                        });
                    }
                }
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, mor) in morphisms.iter().enumerate() {
            homs[mor.source * n + mor.target].push(i);
        }
        Ok(Self {
            data: Arc::new(CategoryData {
                objects,
                morphisms,
                identities,
                table,
                homs,
            }),
        })
    }

    /// Builds a category from a composition function. `compose` is only
    /// called on composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<MorphismId>,
        mut compose: impl FnMut(MorphismId, MorphismId) -> MorphismId,
    ) -> Result<Self> {
        let m = morphisms.len();
        let mut table = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                if morphisms[f].target == morphisms[g].source {
                    table[g * m + f] = Some(compose(g, f));
                }
            }
        }
        Self::from_table(objects, morphisms, identities, table)
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// Objects only, identities only.
    pub fn discrete(names: &[&str]) -> Self {
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Morphism {
                name: format!("id_{o}"),
                source: i,
                target: i,
            })
            .collect();
        let identities = (0..objects.len()).collect();
        Self::from_fn(objects, morphisms, identities, |g, _| g).expect("discrete category")
    }

    /// `s --f--> t`.
    pub fn walking_arrow() -> Self {
        Self::poset(&["s", "t"], &[(0, 1)], &[(0, 1, "f")])
    }

    /// The cyclic group of order `n` as a one-object category. Morphism `k`
    /// is the rotation `r^k`; morphism 0 is named `e`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs a positive order");
        let morphisms = (0..n)
            .map(|k| Morphism {
                name: match k {
                    0 => "e".to_string(),
                    1 => "r".to_string(),
                    _ => format!("r{k}"),
                },
                source: 0,
                target: 0,
            })
            .collect();
        Self::from_fn(vec!["*".into()], morphisms, vec![0], |g, f| (g + f) % n)
            .expect("cyclic group")
    }

    /// The poset on `names` generated by `relations` (pairs `a ≤ b`).
    /// `labels` optionally names specific strict relations.
    pub fn poset(names: &[&str], relations: &[(usize, usize)], labels: &[(usize, usize, &str)]) -> Self {
        let n = names.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            leq[a * n + b] = true;
        }
        crate::finspace::close_transitively(n, &mut leq);
        for a in 0..n {
            for b in 0..n {
                assert!(
                    a == b || !(leq[a * n + b] && leq[b * n + a]),
                    "poset relations must be antisymmetric"
                );
            }
        }
        let objects: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let pairs = (0..n)
            .map(|a| (a, a))
            .chain((0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|(a, b)| a != b));
        for (a, b) in pairs {
            {
                if !leq[a * n + b] {
                    continue;
                }
                let name = if a == b {
                    format!("id_{}", names[a])
                } else if let Some(&(_, _, l)) = labels.iter().find(|(x, y, _)| *x == a && *y == b) {
                    l.to_string()
                } else {
                    format!("{}≤{}", names[a], names[b])
                };
                index.insert((a, b), morphisms.len());
                morphisms.push(Morphism {
                    name,
                    source: a,
                    target: b,
                });
            }
        }
        let identities = (0..n).map(|a| index[&(a, a)]).collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
        Self::from_fn(objects, morphisms, identities, |g, f| index[&(ends[f].0, ends[g].1)])
            .expect("poset category")
    }

    /// `a → c ← b`.
    pub fn cospan() -> Self {
        Self::poset(&["a", "b", "c"], &[(0, 2), (1, 2)], &[(0, 2, "p"), (1, 2, "q")])
    }

    /// `y ← w → z`, the shape of pushout diagrams.
    pub fn span() -> Self {
        Self::poset(&["w", "y", "z"], &[(0, 1), (0, 2)], &[(0, 1, "f"), (0, 2, "g")])
    }

    /// The skeleton of finite sets `{0, …, k-1}` for `k ≤ max`, with every
    /// function as a morphism. A function is named by its image list.
    pub fn finite_sets(max: usize) -> Self {
        let objects: Vec<String> = (0..=max).map(|k| k.to_string()).collect();
        let mut morphisms = Vec::new();
        let mut images: Vec<Vec<usize>> = Vec::new();
        let mut index = HashMap::new();
        for a in 0..=max {
            for b in 0..=max {
                for func in all_functions(a, b) {
                    index.insert((a, b, func.clone()), morphisms.len());
                    morphisms.push(Morphism {
                        name: format!("{a}→{b}:{func:?}"),
                        source: a,
                        target: b,
                    });
                    images.push(func);
                }
            }
        }
        let identities = (0..=max).map(|a| index[&(a, a, (0..a).collect::<Vec<_>>())]).collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.source, m.target)).collect();
        Self::from_fn(objects, morphisms, identities, |g, f| {
            let composite: Vec<usize> = images[f].iter().map(|&x| images[g][x]).collect();
            index[&(ends[f].0, ends[g].1, composite)]
        })
        .expect("finite sets")
    }

    pub fn object_count(&self) -> usize {
        self.data.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.data.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjectId> {
        0..self.object_count()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorphismId> {
        0..self.morphism_count()
    }

    pub fn object_name(&self, o: ObjectId) -> &str {
        &self.data.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.data.objects
    }

    pub fn object_id(&self, name: &str) -> Option<ObjectId> {
        self.data.objects.iter().position(|o| o == name)
    }

    pub fn morphism(&self, m: MorphismId) -> &Morphism {
        &self.data.morphisms[m]
    }

    pub fn morphism_id(&self, name: &str) -> Option<MorphismId> {
        self.data.morphisms.iter().position(|m| m.name == name)
    }

    pub fn source(&self, m: MorphismId) -> ObjectId {
        self.data.morphisms[m].source
    }

    pub fn target(&self, m: MorphismId) -> ObjectId {
        self.data.morphisms[m].target
    }

    pub fn identity(&self, o: ObjectId) -> MorphismId {
        self.data.identities[o]
    }

    pub fn is_identity(&self, m: MorphismId) -> bool {
        self.data.identities[self.source(m)] == m
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: MorphismId, f: MorphismId) -> Option<MorphismId> {
        self.data.table[g * self.morphism_count() + f]
    }

    /// Morphisms `a → b`, in index order. Panics on out-of-range objects;
    /// see [`FinCategory::hom_set`] for the checked form.
    pub fn homs(&self, a: ObjectId, b: ObjectId) -> &[MorphismId] {
        &self.data.homs[a * self.object_count() + b]
    }

    pub fn hom_set(&self, a: ObjectId, b: ObjectId) -> Result<&[MorphismId]> {
        let n = self.object_count();
        if a >= n {
            return Err(CategoryError::UnknownObject(a.to_string()));
        }
        if b >= n {
            return Err(CategoryError::UnknownObject(b.to_string()));
        }
        Ok(self.homs(a, b))
    }

    pub fn hom_set_by_name(&self, a: &str, b: &str) -> Result<&[MorphismId]> {
        let a = self.object_id(a).ok_or_else(|| CategoryError::UnknownObject(a.to_string()))?;
        let b = self.object_id(b).ok_or_else(|| CategoryError::UnknownObject(b.to_string()))?;
        Ok(self.homs(a, b))
    }

    /// Non-identity morphisms with the given source.
    pub fn outgoing(&self, o: ObjectId) -> impl Iterator<Item = MorphismId> + '_ {
        self.morphisms()
            .filter(move |&m| self.source(m) == o && !self.is_identity(m))
    }

    pub fn inverse(&self, m: MorphismId) -> Option<MorphismId> {
        let (a, b) = (self.source(m), self.target(m));
        self.homs(b, a).iter().copied().find(|&h| {
            self.compose(h, m) == Some(self.identity(a)) && self.compose(m, h) == Some(self.identity(b))
        })
    }

    pub fn is_initial(&self, o: ObjectId) -> bool {
        self.objects().all(|b| self.homs(o, b).len() == 1)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.object_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for m in self.morphisms() {
                let (s, t) = (self.source(m), self.target(m));
                for (x, y) in [(s, t), (t, s)] {
                    if x == a && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Sources and targets swapped, composition reversed. Names are kept, so
    /// taking the opposite twice gives back equal data.
    pub fn opposite(&self) -> Self {
        let m = self.morphism_count();
        let morphisms = self
            .data
            .morphisms
            .iter()
            .map(|mor| Morphism {
                name: mor.name.clone(),
                source: mor.target,
                target: mor.source,
            })
            .collect();
        let mut table = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                table[g * m + f] = self.data.table[f * m + g];
            }
        }
        let mut homs = vec![Vec::new(); self.object_count() * self.object_count()];
        let n = self.object_count();
        for a in 0..n {
            for b in 0..n {
                homs[a * n + b] = self.data.homs[b * n + a].clone();
            }
        }
        Self {
            data: Arc::new(CategoryData {
                objects: self.data.objects.clone(),
                morphisms,
                identities: self.data.identities.clone(),
                table,
                homs,
            }),
        }
    }
}

pub(crate) fn all_functions(domain: usize, codomain: usize) -> Vec<Vec<usize>> {
    if domain == 0 {
        return vec![Vec::new()];
    }
    if codomain == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0; domain];
    loop {
        out.push(current.clone());
        let mut i = domain;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < codomain {
                break;
            }
            current[i] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinFunctor {
    domain: FinCategory,
    codomain: FinCategory,
    object_map: Vec<ObjectId>,
    morphism_map: Vec<MorphismId>,
}

impl FinFunctor {
    pub fn new(
        domain: FinCategory,
        codomain: FinCategory,
        object_map: Vec<ObjectId>,
        morphism_map: Vec<MorphismId>,
    ) -> Result<Self> {
        if object_map.len() != domain.object_count() || morphism_map.len() != domain.morphism_count() {
            return Err(CategoryError::NotAFunctor("map sizes do not match the domain".into()));
        }
        if object_map.iter().any(|&o| o >= codomain.object_count())
            || morphism_map.iter().any(|&m| m >= codomain.morphism_count())
        {
            return Err(CategoryError::NotAFunctor("image out of range".into()));
        }
        for m in domain.morphisms() {
            let fm = morphism_map[m];
            if codomain.source(fm) != object_map[domain.source(m)]
                || codomain.target(fm) != object_map[domain.target(m)]
            {
                return Err(CategoryError::NotAFunctor(format!(
                    "`{}` is sent to `{}` with the wrong endpoints",
                    domain.morphism(m).name,
                    codomain.morphism(fm).name
                )));
            }
        }
        for o in domain.objects() {
            if morphism_map[domain.identity(o)] != codomain.identity(object_map[o]) {
                return Err(CategoryError::NotAFunctor(format!(
                    "identity of `{}` is not preserved",
                    domain.object_name(o)
                )));
            }
        }
        for g in domain.morphisms() {
            for f in domain.morphisms() {
                if let Some(gf) = domain.compose(g, f) {
                    if codomain.compose(morphism_map[g], morphism_map[f]) != Some(morphism_map[gf]) {
                        return Err(CategoryError::NotAFunctor(format!(
                            "composite `{} ∘ {}` is not preserved",
                            domain.morphism(g).name,
                            domain.morphism(f).name
                        )));
                    }
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(category: &FinCategory) -> Self {
        Self {
            domain: category.clone(),
            codomain: category.clone(),
            object_map: category.objects().collect(),
            morphism_map: category.morphisms().collect(),
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &FinFunctor) -> Result<Self> {
        if inner.codomain != self.domain {
            return Err(CategoryError::MismatchedSignature(
                "functors are not composable".into(),
            ));
        }
        Ok(Self {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            object_map: inner.object_map.iter().map(|&o| self.object_map[o]).collect(),
            morphism_map: inner.morphism_map.iter().map(|&m| self.morphism_map[m]).collect(),
        })
    }

    pub fn domain(&self) -> &FinCategory {
        &self.domain
    }

    pub fn codomain(&self) -> &FinCategory {
        &self.codomain
    }

    pub fn object(&self, o: ObjectId) -> ObjectId {
        self.object_map[o]
    }

    pub fn morphism(&self, m: MorphismId) -> MorphismId {
        self.morphism_map[m]
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[MorphismId] {
        &self.morphism_map
    }

    /// Bijective on objects and on morphisms.
    pub fn is_isomorphism(&self) -> bool {
        is_permutation(&self.object_map, self.codomain.object_count())
            && is_permutation(&self.morphism_map, self.codomain.morphism_count())
    }
}

fn is_permutation(map: &[usize], len: usize) -> bool {
    if map.len() != len {
        return false;
    }
    let mut seen = vec![false; len];
    map.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTransform {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<MorphismId>,
}

impl NatTransform {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<MorphismId>) -> Result<Self> {
        check_signature(&source, &target)?;
        let (dom, cod) = (source.domain(), source.codomain());
        if components.len() != dom.object_count() {
            return Err(CategoryError::NotNatural("one component per object is required".into()));
        }
        for a in dom.objects() {
            let c = components[a];
            if c >= cod.morphism_count() || cod.source(c) != source.object(a) || cod.target(c) != target.object(a) {
                return Err(CategoryError::NotNatural(format!(
                    "component at `{}` has the wrong endpoints",
                    dom.object_name(a)
                )));
            }
        }
        for f in dom.morphisms() {
            let (a, b) = (dom.source(f), dom.target(f));
            if cod.compose(target.morphism(f), components[a]) != cod.compose(components[b], source.morphism(f)) {
                return Err(CategoryError::NotNatural(format!(
                    "square at `{}` does not commute",
                    dom.morphism(f).name
                )));
            }
        }
        Ok(Self {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn components(&self) -> &[MorphismId] {
        &self.components
    }

    pub fn is_isomorphism(&self) -> bool {
        let cod = self.source.codomain();
        self.components.iter().all(|&c| cod.inverse(c).is_some())
    }
}

fn check_signature(f: &FinFunctor, g: &FinFunctor) -> Result<()> {
    if f.domain() != g.domain() || f.codomain() != g.codomain() {
        return Err(CategoryError::MismatchedSignature(
            "functors must share domain and codomain".into(),
        ));
    }
    Ok(())
}

/// Every natural transformation `f ⇒ g`, in lexicographic order of the
/// component lists.
pub fn enumerate_nat_transforms(f: &FinFunctor, g: &FinFunctor) -> Result<Vec<NatTransform>> {
    check_signature(f, g)?;
    let dom = f.domain();
    let cod = f.codomain();
    let n = dom.object_count();
    let candidates: Vec<&[MorphismId]> = dom.objects().map(|a| cod.homs(f.object(a), g.object(a))).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(n);

    fn go(
        a: usize,
        dom: &FinCategory,
        cod: &FinCategory,
        f: &FinFunctor,
        g: &FinFunctor,
        candidates: &[&[MorphismId]],
        chosen: &mut Vec<MorphismId>,
        out: &mut Vec<Vec<MorphismId>>,
    ) {
        if a == candidates.len() {
            out.push(chosen.clone());
            return;
        }
        for &c in candidates[a] {
            chosen.push(c);
            // Squares whose endpoints are both decided.
            let ok = dom.morphisms().all(|m| {
                let (s, t) = (dom.source(m), dom.target(m));
                if s > a || t > a || (s != a && t != a) {
                    return true;
                }
                cod.compose(g.morphism(m), chosen[s]) == cod.compose(chosen[t], f.morphism(m))
            });
            if ok {
                go(a + 1, dom, cod, f, g, candidates, chosen, out);
            }
            chosen.pop();
        }
    }

    let mut raw = Vec::new();
    go(0, dom, cod, f, g, &candidates, &mut chosen, &mut raw);
    let _ = n;
    for components in raw {
        out.push(NatTransform {
            source: f.clone(),
            target: g.clone(),
            components,
        });
    }
    Ok(out)
}

/// Functors `forward: C → D`, `backward: D → C` and natural isomorphisms
/// `unit: id_C ⇒ backward ∘ forward`, `counit: forward ∘ backward ⇒ id_D`.
#[derive(Clone, Debug)]
pub struct EquivalenceWitness {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
    pub unit: NatTransform,
    pub counit: NatTransform,
}

pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

struct FunctorSearch<'a> {
    c: &'a FinCategory,
    d: &'a FinCategory,
    injective_objects: bool,
    budget: usize,
    steps: usize,
    // (g, f, g∘f) triples of C, indexed by each participant
    triples: Vec<Vec<(MorphismId, MorphismId, MorphismId)>>,
}

impl<'a> FunctorSearch<'a> {
    fn new(c: &'a FinCategory, d: &'a FinCategory, injective_objects: bool, budget: usize) -> Self {
        let mut triples = vec![Vec::new(); c.morphism_count()];
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(h) = c.compose(g, f) {
                    for x in [g, f, h] {
                        triples[x].push((g, f, h));
                    }
                }
            }
        }
        Self {
            c,
            d,
            injective_objects,
            budget,
            steps: 0,
            triples,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(CategoryError::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Fully faithful functors `C → D`, object map first. Stops as soon as
    /// `found` returns `true`.
    fn run(&mut self, found: &mut dyn FnMut(&[ObjectId], &[MorphismId]) -> bool) -> Result<bool> {
        let mut objects = Vec::new();
        self.objects(&mut objects, found)
    }

    fn objects(
        &mut self,
        objects: &mut Vec<ObjectId>,
        found: &mut dyn FnMut(&[ObjectId], &[MorphismId]) -> bool,
    ) -> Result<bool> {
        let a = objects.len();
        if a == self.c.object_count() {
            let mut morphisms = vec![usize::MAX; self.c.morphism_count()];
            for o in self.c.objects() {
                morphisms[self.c.identity(o)] = self.d.identity(objects[o]);
            }
            let order: Vec<MorphismId> = self.c.morphisms().filter(|&m| !self.c.is_identity(m)).collect();
            return self.morphisms(objects, &mut morphisms, &order, 0, found);
        }
        for b in self.d.objects() {
            self.tick()?;
            if self.injective_objects && objects.contains(&b) {
                continue;
            }
            // Hom-set cardinality profile must match against every decided object.
            let profile_ok = (0..=a).all(|x| {
                let fx = if x == a { b } else { objects[x] };
                self.c.homs(a, x).len() == self.d.homs(b, fx).len()
                    && self.c.homs(x, a).len() == self.d.homs(fx, b).len()
            });
            if !profile_ok {
                continue;
            }
            objects.push(b);
            let stop = self.objects(objects, found)?;
            objects.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn morphisms(
        &mut self,
        objects: &[ObjectId],
        map: &mut Vec<MorphismId>,
        order: &[MorphismId],
        k: usize,
        found: &mut dyn FnMut(&[ObjectId], &[MorphismId]) -> bool,
    ) -> Result<bool> {
        if k == order.len() {
            return Ok(found(objects, map));
        }
        let m = order[k];
        let (a, b) = (self.c.source(m), self.c.target(m));
        let candidates = self.d.homs(objects[a], objects[b]).to_vec();
        for cand in candidates {
            self.tick()?;
            // Faithful: no other morphism a → b already uses this image.
            if self.c.homs(a, b).iter().any(|&other| other != m && map[other] == cand) {
                continue;
            }
            map[m] = cand;
            let consistent = self.triples[m].iter().all(|&(g, f, h)| {
                if map[g] == usize::MAX || map[f] == usize::MAX || map[h] == usize::MAX {
                    return true;
                }
                self.d.compose(map[g], map[f]) == Some(map[h])
            });
            if consistent && self.morphisms(objects, map, order, k + 1, found)? {
                return Ok(true);
            }
            map[m] = usize::MAX;
        }
        Ok(false)
    }
}

/// Searches for an equivalence of categories `c ≃ d`.
///
/// Candidate functors are fully faithful by construction (object maps are
/// pruned by hom-set cardinalities, morphism maps are injective per
/// hom-set); the first essentially surjective one is completed to a full
/// witness. `Ok(None)` means the exhaustive search found nothing.
pub fn equivalence_witness(c: &FinCategory, d: &FinCategory, budget: usize) -> Result<Option<EquivalenceWitness>> {
    let mut search = FunctorSearch::new(c, d, false, budget);
    let mut witness = None;
    search.run(&mut |objects, morphisms| {
        let forward = match FinFunctor::new(c.clone(), d.clone(), objects.to_vec(), morphisms.to_vec()) {
            Ok(f) => f,
            Err(_) => return false,
        };
        witness = complete_equivalence(&forward);
        witness.is_some()
    })?;
    Ok(witness)
}

fn complete_equivalence(forward: &FinFunctor) -> Option<EquivalenceWitness> {
    let c = forward.domain();
    let d = forward.codomain();
    // For every object of D, a preimage up to a chosen iso F(c) → d.
    let mut chosen = Vec::with_capacity(d.object_count());
    for y in d.objects() {
        let hit = c.objects().find_map(|x| {
            d.homs(forward.object(x), y)
                .iter()
                .copied()
                .find(|&m| d.inverse(m).is_some())
                .map(|iso| (x, iso))
        })?;
        chosen.push(hit);
    }
    let preimage = |x: ObjectId, x2: ObjectId, target: MorphismId| {
        c.homs(x, x2).iter().copied().find(|&h| forward.morphism(h) == target)
    };
    let mut back_morphisms = Vec::with_capacity(d.morphism_count());
    for g in d.morphisms() {
        let (y, y2) = (d.source(g), d.target(g));
        let (x, phi) = chosen[y];
        let (x2, phi2) = chosen[y2];
        let target = d.compose(d.inverse(phi2)?, d.compose(g, phi)?)?;
        back_morphisms.push(preimage(x, x2, target)?);
    }
    let backward = FinFunctor::new(
        d.clone(),
        c.clone(),
        chosen.iter().map(|&(x, _)| x).collect(),
        back_morphisms,
    )
    .ok()?;
    let counit = NatTransform::new(
        forward.after(&backward).ok()?,
        FinFunctor::identity(d),
        chosen.iter().map(|&(_, phi)| phi).collect(),
    )
    .ok()?;
    let mut unit_components = Vec::with_capacity(c.object_count());
    for x in c.objects() {
        let (gx, phi) = chosen[forward.object(x)];
        unit_components.push(preimage(x, gx, d.inverse(phi)?)?);
    }
    let unit = NatTransform::new(FinFunctor::identity(c), backward.after(forward).ok()?, unit_components).ok()?;
    if !unit.is_isomorphism() || !counit.is_isomorphism() {
        return None;
    }
    Some(EquivalenceWitness {
        forward: forward.clone(),
        backward,
        unit,
        counit,
    })
}

/// Searches for an isomorphism of categories `c ≅ d`.
pub fn find_isomorphism(c: &FinCategory, d: &FinCategory, budget: usize) -> Result<Option<FinFunctor>> {
    if c.object_count() != d.object_count() || c.morphism_count() != d.morphism_count() {
        return Ok(None);
    }
    let mut search = FunctorSearch::new(c, d, true, budget);
    let mut iso = None;
    search.run(&mut |objects, morphisms| {
        iso = FinFunctor::new(c.clone(), d.clone(), objects.to_vec(), morphisms.to_vec())
            .ok()
            .filter(FinFunctor::is_isomorphism);
        iso.is_some()
    })?;
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_j() -> RawCategory {
        RawCategory {
            objects: vec!["s".into(), "t".into()],
            morphisms: vec![
                RawMorphism::new("id_s", "s", "s"),
                RawMorphism::new("id_t", "t", "t"),
                RawMorphism::new("f", "s", "t"),
            ],
            identities: vec![("s".into(), "id_s".into()), ("t".into(), "id_t".into())],
            compose: vec![],
        }
    }

    #[test]
    fn walking_arrow_validates() {
        let j = validate_category(&raw_j()).unwrap();
        assert_eq!(j.object_count(), 2);
        assert_eq!(j.morphism_count(), 3);
        assert_eq!(j, FinCategory::walking_arrow());
    }

    #[test]
    fn terminal_category() {
        let raw = RawCategory {
            objects: vec!["*".into()],
            morphisms: vec![RawMorphism::new("e", "*", "*")],
            identities: vec![("*".into(), "e".into())],
            compose: vec![],
        };
        let t = validate_category(&raw).unwrap();
        assert_eq!(t.morphism_count(), 1);
        assert!(t.is_initial(0));
    }

    #[test]
    fn rejects_non_composable_entry() {
        let mut raw = raw_j();
        raw.compose.push(("f".into(), "f".into(), "f".into()));
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::DanglingEndpoint(_))
        ));
    }

    #[test]
    fn rejects_missing_identity() {
        let mut raw = raw_j();
        raw.identities.pop();
        assert_eq!(
            validate_category(&raw).unwrap_err(),
            CategoryError::MissingIdentity("t".into())
        );
    }

    #[test]
    fn rejects_incomplete_table() {
        // Two composable non-identity endomorphisms with no composite listed.
        let raw = RawCategory {
            objects: vec!["*".into()],
            morphisms: vec![RawMorphism::new("e", "*", "*"), RawMorphism::new("r", "*", "*")],
            identities: vec![("*".into(), "e".into())],
            compose: vec![],
        };
        assert_eq!(
            validate_category(&raw).unwrap_err(),
            CategoryError::IncompleteCompositionTable { g: "r".into(), f: "r".into() }
        );
    }

    #[test]
    fn rejects_non_associative_table() {
        // (b∘b)∘b = a∘b = b but b∘(b∘b) = b∘a = a.
        let raw = RawCategory {
            objects: vec!["*".into()],
            morphisms: vec![
                RawMorphism::new("e", "*", "*"),
                RawMorphism::new("a", "*", "*"),
                RawMorphism::new("b", "*", "*"),
            ],
            identities: vec![("*".into(), "e".into())],
            compose: vec![
                ("a".into(), "a".into(), "a".into()),
                ("a".into(), "b".into(), "b".into()),
                ("b".into(), "a".into(), "a".into()),
                ("b".into(), "b".into(), "a".into()),
            ],
        };
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::NonAssociative { .. })
        ));
    }

    #[test]
    fn rejects_dangling_morphism() {
        let mut raw = raw_j();
        raw.morphisms.push(RawMorphism::new("g", "s", "u"));
        assert!(matches!(
            validate_category(&raw),
            Err(CategoryError::DanglingEndpoint(_))
        ));
    }

    #[test]
    fn hom_sets() {
        let j = FinCategory::walking_arrow();
        assert_eq!(j.hom_set_by_name("s", "t").unwrap().len(), 1);
        assert!(j.hom_set_by_name("t", "s").unwrap().is_empty());
        assert!(matches!(j.hom_set_by_name("s", "u"), Err(CategoryError::UnknownObject(_))));
        assert!(j.hom_set(0, 7).is_err());
        let c2 = FinCategory::cyclic_group(2);
        assert_eq!(c2.homs(0, 0), &[0, 1]);
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in [
            FinCategory::walking_arrow(),
            FinCategory::cyclic_group(3),
            FinCategory::cospan(),
            FinCategory::finite_sets(2),
        ] {
            let op = c.opposite();
            assert_eq!(op.opposite(), c);
        }
        let op = FinCategory::walking_arrow().opposite();
        assert_eq!(op.homs(1, 0).len(), 1);
        assert!(op.homs(0, 1).is_empty());
    }

    #[test]
    fn opposite_of_group_reverses_table() {
        let c3 = FinCategory::cyclic_group(3);
        let op = c3.opposite();
        for g in c3.morphisms() {
            for f in c3.morphisms() {
                assert_eq!(op.compose(g, f), c3.compose(f, g));
            }
        }
    }

    #[test]
    fn finite_sets_counts() {
        // 0→k: 1 each; 1→k: k; 2→k: k².
        let fs = FinCategory::finite_sets(2);
        assert_eq!(fs.morphism_count(), 3 + 3 + 5);
    }

    #[test]
    fn identity_transformation_is_enumerated() {
        let j = FinCategory::walking_arrow();
        let id = FinFunctor::identity(&j);
        let all = enumerate_nat_transforms(&id, &id).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].components(), &[j.identity(0), j.identity(1)]);
    }

    #[test]
    fn mismatched_signature() {
        let j = FinCategory::walking_arrow();
        let c2 = FinCategory::cyclic_group(2);
        let a = FinFunctor::identity(&j);
        let b = FinFunctor::identity(&c2);
        assert!(matches!(
            enumerate_nat_transforms(&a, &b),
            Err(CategoryError::MismatchedSignature(_))
        ));
    }

    #[test]
    fn equivalences() {
        let j = FinCategory::walking_arrow();
        let w = equivalence_witness(&j, &j, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert!(w.unit.is_isomorphism() && w.counit.is_isomorphism());
        let c2 = FinCategory::cyclic_group(2);
        assert!(equivalence_witness(&j, &c2, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
        assert!(equivalence_witness(&c2, &j, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
    }

    #[test]
    fn search_budget_is_enforced() {
        let fs = FinCategory::finite_sets(2);
        assert_eq!(
            equivalence_witness(&fs, &fs, 3).unwrap_err(),
            CategoryError::SearchBudgetExceeded(3)
        );
    }

    #[test]
    fn isomorphism_search() {
        let c3 = FinCategory::cyclic_group(3);
        let iso = find_isomorphism(&c3, &c3.opposite(), DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(iso.unwrap().is_isomorphism());
        let j = FinCategory::walking_arrow();
        let two = FinCategory::discrete(&["x", "y"]);
        assert!(find_isomorphism(&j, &two, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
    }

    #[test]
    fn functor_validation() {
        let j = FinCategory::walking_arrow();
        let t = FinCategory::terminal();
        assert!(FinFunctor::new(j.clone(), t.clone(), vec![0, 0], vec![0, 0, 0]).is_ok());
        // f: s → t sent to id_s while t ↦ t fails endpoints.
        assert!(FinFunctor::new(j.clone(), j.clone(), vec![0, 1], vec![0, 1, 0]).is_err());
    }
}
