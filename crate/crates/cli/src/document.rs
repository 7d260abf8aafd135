//! The workspace document: a versioned JSON file naming categories, spaces,
//! diagrams, orbit families and cell scripts.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use orbitcat::cells::CellSpec;
use orbitcat::dspace::{find_isomorphism, DSpace};
use orbitcat::fincat::{validate_category, FinCategory, MorphismId, RawCategory, RawMorphism};
use orbitcat::finspace::FinSpace;
use orbitcat::orbits::{orbit_category, Orbit, OrbitCategory};
use serde::Deserialize;

pub const VERSION: &str = "orbitcat/1";

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Parse { line: usize, column: usize, message: String },
    Validation { entity: String, message: String },
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoadError::Io(m) => write!(f, "cannot read document: {m}"),
            LoadError::Parse { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            LoadError::Validation { entity, message } => write!(f, "invalid {entity}: {message}"),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: String,
    #[serde(default)]
    categories: BTreeMap<String, RawCat>,
    #[serde(default)]
    spaces: BTreeMap<String, RawSpace>,
    #[serde(default)]
    dspaces: BTreeMap<String, RawDSpace>,
    #[serde(default)]
    families: BTreeMap<String, RawFamily>,
    #[serde(default)]
    scripts: BTreeMap<String, RawScript>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCat {
    objects: Vec<String>,
    #[serde(default)]
    morphisms: Vec<RawArrow>,
    /// Object to identity name; missing identities are named `id_<object>`.
    #[serde(default)]
    identities: BTreeMap<String, String>,
    /// `[g, f, g∘f]` triples.
    #[serde(default)]
    compose: Vec<(String, String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: String,
    source: String,
    target: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSpace {
    Named(String),
    Points {
        points: Vec<String>,
        #[serde(default)]
        leq: Vec<(String, String)>,
    },
    Size {
        size: usize,
        #[serde(default)]
        leq: Vec<(usize, usize)>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDSpace {
    category: String,
    values: BTreeMap<String, RawSpace>,
    /// Morphism to the image of each source point, by name. Identities
    /// may be omitted, and so may composites of given morphisms.
    #[serde(default)]
    actions: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    category: String,
    orbits: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScript {
    category: String,
    #[serde(default)]
    base: Option<String>,
    cells: Vec<RawCell>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCell {
    orbit: String,
    dim: usize,
    /// Per object, the stage point hit by each boundary point.
    #[serde(default)]
    attaching: BTreeMap<String, Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct NamedSpace {
    pub space: FinSpace,
    pub names: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct NamedDSpace {
    pub category: String,
    pub dspace: DSpace,
    /// Point names per object.
    pub names: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct Family {
    pub category: String,
    pub members: Vec<String>,
    pub oc: OrbitCategory,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub category: String,
    pub base: DSpace,
    pub cells: Vec<CellSpec>,
    /// Document name of each cell's orbit.
    pub orbit_names: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct EntityStatus {
    pub kind: &'static str,
    pub name: String,
    pub outcome: Result<String, String>,
}

#[derive(Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, FinCategory>,
    pub spaces: BTreeMap<String, NamedSpace>,
    pub dspaces: BTreeMap<String, NamedDSpace>,
    pub families: BTreeMap<String, Family>,
    pub scripts: BTreeMap<String, Script>,
    pub status: Vec<EntityStatus>,
}

impl Workspace {
    pub fn first_failure(&self) -> Option<&EntityStatus> {
        self.status.iter().find(|s| s.outcome.is_err())
    }
}

/// Reads and validates every entity, recording a status for each.
pub fn load_lenient(path: &Path) -> Result<Workspace, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
    parse_lenient(&text)
}

/// Like [`load_lenient`] but fails on the first invalid entity.
pub fn load(path: &Path) -> Result<Workspace, LoadError> {
    let ws = load_lenient(path)?;
    if let Some(s) = ws.first_failure() {
        return Err(LoadError::Validation {
            entity: format!("{} `{}`", s.kind, s.name),
            message: s.outcome.clone().unwrap_err(),
        });
    }
    Ok(ws)
}

pub fn parse_lenient(text: &str) -> Result<Workspace, LoadError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if raw.version != VERSION {
        let (line, column) = locate(text, "\"version\"");
        return Err(LoadError::Parse {
            line,
            column,
            message: format!("unknown version `{}`, expected `{VERSION}`", raw.version),
        });
    }
    let mut ws = Workspace::default();
    for (name, c) in &raw.categories {
        let r = build_category(c);
        record(&mut ws.status, "category", name, r.as_ref().map(|c| {
            format!("{} objects, {} morphisms", c.object_count(), c.morphism_count())
        }));
        if let Ok(c) = r {
            ws.categories.insert(name.clone(), c);
        }
    }
    for (name, s) in &raw.spaces {
        let r = build_space(s, &BTreeMap::new());
        record(&mut ws.status, "space", name, r.as_ref().map(|s| format!("{} points", s.space.len())));
        if let Ok(s) = r {
            ws.spaces.insert(name.clone(), s);
        }
    }
    for (name, d) in &raw.dspaces {
        let r = build_dspace(d, &ws);
        record(&mut ws.status, "dspace", name, r.as_ref().map(|d| format!("sizes {:?}", d.dspace.sizes())));
        if let Ok(d) = r {
            ws.dspaces.insert(name.clone(), d);
        }
    }
    for (name, f) in &raw.families {
        let r = build_family(f, &ws);
        record(&mut ws.status, "family", name, r.as_ref().map(|f| format!("{} orbits", f.members.len())));
        if let Ok(f) = r {
            ws.families.insert(name.clone(), f);
        }
    }
    for (name, s) in &raw.scripts {
        let r = build_script(s, &ws);
        record(&mut ws.status, "script", name, r.as_ref().map(|s| format!("{} cells", s.cells.len())));
        if let Ok(s) = r {
            ws.scripts.insert(name.clone(), s);
        }
    }
    Ok(ws)
}

fn record(status: &mut Vec<EntityStatus>, kind: &'static str, name: &str, outcome: Result<String, &String>) {
    status.push(EntityStatus {
        kind,
        name: name.to_string(),
        outcome: outcome.map_err(Clone::clone),
    });
}

/// 1-based position of the first occurrence of `needle`.
fn locate(text: &str, needle: &str) -> (usize, usize) {
    let offset = text.find(needle).unwrap_or(0);
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, column)
}

fn build_category(c: &RawCat) -> Result<FinCategory, String> {
    let mut morphisms: Vec<RawMorphism> = c
        .morphisms
        .iter()
        .map(|m| RawMorphism::new(m.name.clone(), m.source.clone(), m.target.clone()))
        .collect();
    let mut identities = Vec::new();
    for o in &c.objects {
        let id = c.identities.get(o).cloned().unwrap_or_else(|| format!("id_{o}"));
        if !morphisms.iter().any(|m| m.name == id) {
            morphisms.push(RawMorphism::new(id.clone(), o.clone(), o.clone()));
        }
        identities.push((o.clone(), id));
    }
    for o in c.identities.keys() {
        if !c.objects.contains(o) {
            return Err(format!("identity given for unknown object `{o}`"));
        }
    }
    let raw = RawCategory {
        objects: c.objects.clone(),
        morphisms,
        identities,
        compose: c.compose.clone(),
    };
    validate_category(&raw).map_err(|e| e.to_string())
}

fn build_space(s: &RawSpace, named: &BTreeMap<String, NamedSpace>) -> Result<NamedSpace, String> {
    match s {
        RawSpace::Named(n) => named.get(n).cloned().ok_or_else(|| format!("unknown space `{n}`")),
        RawSpace::Points { points, leq } => {
            let index = |p: &String| {
                points
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| format!("unknown point `{p}`"))
            };
            for (i, p) in points.iter().enumerate() {
                if points[..i].contains(p) {
                    return Err(format!("duplicate point `{p}`"));
                }
            }
            let rel = leq
                .iter()
                .map(|(a, b)| Ok((index(a)?, index(b)?)))
                .collect::<Result<Vec<_>, String>>()?;
            let space = FinSpace::from_relations(points.len(), &rel).map_err(|e| e.to_string())?;
            Ok(NamedSpace {
                space,
                names: points.clone(),
            })
        }
        RawSpace::Size { size, leq } => {
            let space = FinSpace::from_relations(*size, leq).map_err(|e| e.to_string())?;
            Ok(NamedSpace {
                space,
                names: (0..*size).map(|i| i.to_string()).collect(),
            })
        }
    }
}

fn build_dspace(d: &RawDSpace, ws: &Workspace) -> Result<NamedDSpace, String> {
    let shape = ws
        .categories
        .get(&d.category)
        .ok_or_else(|| format!("unknown or invalid category `{}`", d.category))?;
    let mut spaces = Vec::new();
    let mut names = Vec::new();
    for o in shape.object_names() {
        let raw = d.values.get(o).ok_or_else(|| format!("no value at object `{o}`"))?;
        let s = build_space(raw, &ws.spaces)?;
        spaces.push(s.space);
        names.push(s.names);
    }
    if let Some(o) = d.values.keys().find(|o| shape.object_id(o).is_none()) {
        return Err(format!("value given at unknown object `{o}`"));
    }
    let mut actions: Vec<Option<Vec<usize>>> = vec![None; shape.morphism_count()];
    for o in shape.objects() {
        actions[shape.identity(o)] = Some(spaces[o].points().collect());
    }
    for (m, images) in &d.actions {
        let id = shape.morphism_id(m).ok_or_else(|| format!("unknown morphism `{m}`"))?;
        let (a, b) = (shape.source(id), shape.target(id));
        if images.len() != spaces[a].len() {
            return Err(format!(
                "action of `{m}` lists {} images for {} points",
                images.len(),
                spaces[a].len()
            ));
        }
        let action = images
            .iter()
            .map(|p| {
                names[b]
                    .iter()
                    .position(|q| q == p)
                    .ok_or_else(|| format!("action of `{m}` names unknown point `{p}`"))
            })
            .collect::<Result<Vec<_>, String>>()?;
        actions[id] = Some(action);
    }
    fill_composites(shape, &mut actions);
    let actions = actions
        .into_iter()
        .enumerate()
        .map(|(m, a)| a.ok_or_else(|| format!("no action for `{}`", shape.morphism(m).name)))
        .collect::<Result<Vec<_>, String>>()?;
    let dspace = DSpace::new(shape.clone(), spaces, actions).map_err(|e| e.to_string())?;
    Ok(NamedDSpace {
        category: d.category.clone(),
        dspace,
        names,
    })
}

/// Derives missing actions from composites of known ones.
fn fill_composites(shape: &FinCategory, actions: &mut [Option<Vec<usize>>]) {
    loop {
        let mut changed = false;
        for g in shape.morphisms() {
            for f in shape.morphisms() {
                let Some(gf) = shape.compose(g, f) else { continue };
                if actions[gf].is_some() {
                    continue;
                }
                if let (Some(ag), Some(af)) = (&actions[g], &actions[f]) {
                    actions[gf] = Some(af.iter().map(|&p| ag[p]).collect());
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Family members isomorphic to a free orbit are replaced by the free
/// orbit itself, which the orbit category requires on the nose.
fn build_family(f: &RawFamily, ws: &Workspace) -> Result<Family, String> {
    let shape = ws
        .categories
        .get(&f.category)
        .ok_or_else(|| format!("unknown or invalid category `{}`", f.category))?;
    let mut members = Vec::new();
    for name in &f.orbits {
        let d = ws
            .dspaces
            .get(name)
            .ok_or_else(|| format!("unknown or invalid dspace `{name}`"))?;
        if d.category != f.category {
            return Err(format!("`{name}` lives over `{}`", d.category));
        }
        let mut x = d.dspace.clone();
        for o in shape.objects() {
            let free = DSpace::representable(shape, o).map_err(|e| e.to_string())?;
            if find_isomorphism(&x, &free).map_err(|e| e.to_string())?.is_some() {
                x = free;
                break;
            }
        }
        members.push((name.clone(), x));
    }
    let oc = orbit_category(shape, &members).map_err(|e| e.to_string())?;
    Ok(Family {
        category: f.category.clone(),
        members: f.orbits.clone(),
        oc,
    })
}

fn build_script(s: &RawScript, ws: &Workspace) -> Result<Script, String> {
    let shape = ws
        .categories
        .get(&s.category)
        .ok_or_else(|| format!("unknown or invalid category `{}`", s.category))?;
    let base = match &s.base {
        None => DSpace::empty(shape),
        Some(b) => {
            let d = ws.dspaces.get(b).ok_or_else(|| format!("unknown or invalid dspace `{b}`"))?;
            if d.category != s.category {
                return Err(format!("base `{b}` lives over `{}`", d.category));
            }
            d.dspace.clone()
        }
    };
    let mut cells = Vec::new();
    let mut orbit_names = Vec::new();
    for (i, c) in s.cells.iter().enumerate() {
        let d = ws
            .dspaces
            .get(&c.orbit)
            .ok_or_else(|| format!("cell {i}: unknown or invalid dspace `{}`", c.orbit))?;
        if d.category != s.category {
            return Err(format!("cell {i}: `{}` lives over `{}`", c.orbit, d.category));
        }
        let orbit = Orbit::new(d.dspace.clone()).map_err(|e| format!("cell {i}: {e}"))?;
        if let Some(o) = c.attaching.keys().find(|o| shape.object_id(o).is_none()) {
            return Err(format!("cell {i}: attaching map names unknown object `{o}`"));
        }
        let attaching = shape
            .object_names()
            .iter()
            .map(|o| c.attaching.get(o).cloned().unwrap_or_default())
            .collect();
        cells.push(CellSpec {
            orbit,
            dim: c.dim,
            attaching,
        });
        orbit_names.push(c.orbit.clone());
    }
    orbitcat::cells::build_complex(&base, &cells).map_err(|e| e.to_string())?;
    Ok(Script {
        category: s.category.clone(),
        base,
        cells,
        orbit_names,
    })
}

/// `name: p ↦ q, …` for a morphism's action, using point names.
pub fn describe_action(x: &NamedDSpace, m: MorphismId) -> String {
    let shape = x.dspace.shape();
    let (a, b) = (shape.source(m), shape.target(m));
    let images: Vec<String> = x
        .dspace
        .action(m)
        .iter()
        .enumerate()
        .map(|(p, &q)| format!("{}↦{}", x.names[a][p], x.names[b][q]))
        .collect();
    format!("{}: {}", shape.morphism(m).name, images.join(" "))
}

/// Names points by index for diagrams without document names.
pub fn anonymous(category: &str, dspace: DSpace) -> NamedDSpace {
    let names = dspace
        .sizes()
        .into_iter()
        .map(|n| (0..n).map(|i| i.to_string()).collect())
        .collect();
    NamedDSpace {
        category: category.to_string(),
        dspace,
        names,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn version_is_checked() {
        let err = parse_lenient("{\n  \"version\": \"orbitcat/0\"\n}").unwrap_err();
        assert!(matches!(err, LoadError::Parse { line: 2, column: 3, .. }), "{err}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_lenient("{\"version\": \"orbitcat/1\",\n  \"spaces\": [}").unwrap_err();
        assert!(matches!(err, LoadError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn composites_are_derived() {
        let ws = parse_lenient(
            r#"{"version": "orbitcat/1",
                "categories": {"C3": {"objects": ["*"], "identities": {"*": "e"},
                  "morphisms": [{"name": "r", "source": "*", "target": "*"},
                                {"name": "r2", "source": "*", "target": "*"}],
                  "compose": [["r","r","r2"],["r","r2","e"],["r2","r","e"],["r2","r2","r"]]}},
                "dspaces": {"free": {"category": "C3",
                  "values": {"*": {"points": ["a","b","c"]}},
                  "actions": {"r": ["b","c","a"]}}}}"#,
        )
        .unwrap();
        assert!(ws.first_failure().is_none(), "{:?}", ws.status);
        let x = &ws.dspaces["free"].dspace;
        assert_eq!(x.action(x.shape().morphism_id("r2").unwrap()), &[2, 0, 1]);
    }

    #[test]
    fn non_associative_table_names_the_triple() {
        let ws = parse_lenient(
            r#"{"version": "orbitcat/1",
                "categories": {"M": {"objects": ["x"],
                  "morphisms": [{"name": "a", "source": "x", "target": "x"},
                                {"name": "b", "source": "x", "target": "x"}],
                  "compose": [["a","a","a"],["a","b","b"],["b","a","a"],["b","b","a"]]}}}"#,
        )
        .unwrap();
        let err = ws.first_failure().unwrap().outcome.clone().unwrap_err();
        assert!(err.contains("associativity"), "{err}");
    }
}
