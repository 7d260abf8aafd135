use std::fmt;
use std::path::Path;

use orbitcat::cells::{build_complex, verify_type};
use orbitcat::dspace::{find_isomorphism, pi0_functor, DSpace};
use orbitcat::elmendorf::{check_adjunction, check_unit_free_cell, AdjunctionBounds};
use orbitcat::fincat::{CategoryError, FinCategory};
use orbitcat::finspace::FinSpace;
use orbitcat::orbits::{canonical_form, decompose_dset, enumerate_discrete_orbits, translation_category};
use serde_json::json;

use crate::document::{anonymous, describe_action, load, load_lenient, Family, LoadError, NamedDSpace, Workspace};
use crate::report::Report;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Validation(String),
    Check,
    Budget(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Validation(_) => 3,
            Failure::Check => 4,
            Failure::Budget(_) => 5,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Validation(m) | Failure::Budget(m) => f.write_str(m),
            Failure::Check => f.write_str("checks failed"),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io(_) => Failure::Usage(e.to_string()),
            LoadError::Parse { .. } => Failure::Parse(e.to_string()),
            LoadError::Validation { .. } => Failure::Validation(e.to_string()),
        }
    }
}

impl From<orbitcat::Error> for Failure {
    fn from(e: orbitcat::Error) -> Self {
        use orbitcat::Error;
        match e {
            Error::BoundsTooLarge { .. }
            | Error::BudgetExceeded(_)
            | Error::Category(CategoryError::SearchBudgetExceeded(_)) => Failure::Budget(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

pub type Outcome = Result<Report, (Failure, Option<Report>)>;

fn fail(f: impl Into<Failure>) -> (Failure, Option<Report>) {
    (f.into(), None)
}

fn open(file: &Path) -> Result<Workspace, (Failure, Option<Report>)> {
    load(file).map_err(fail)
}

fn category<'a>(ws: &'a Workspace, name: &str) -> Result<&'a FinCategory, (Failure, Option<Report>)> {
    ws.categories
        .get(name)
        .ok_or_else(|| fail(Failure::Usage(format!("unknown category `{name}`"))))
}

fn dspace<'a>(ws: &'a Workspace, name: &str) -> Result<&'a NamedDSpace, (Failure, Option<Report>)> {
    ws.dspaces
        .get(name)
        .ok_or_else(|| fail(Failure::Usage(format!("unknown dspace `{name}`"))))
}

fn family<'a>(ws: &'a Workspace, name: &str, over: Option<&str>) -> Result<&'a Family, (Failure, Option<Report>)> {
    let f = ws
        .families
        .get(name)
        .ok_or_else(|| fail(Failure::Usage(format!("unknown family `{name}`"))))?;
    if let Some(c) = over {
        if f.category != c {
            return Err(fail(Failure::Usage(format!(
                "family `{name}` lives over `{}`, not `{c}`",
                f.category
            ))));
        }
    }
    Ok(f)
}

fn sizes_text(shape: &FinCategory, sizes: &[usize]) -> String {
    shape
        .object_names()
        .iter()
        .zip(sizes)
        .map(|(o, n)| format!("{o}={n}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn sizes_json(shape: &FinCategory, sizes: &[usize]) -> serde_json::Value {
    shape
        .object_names()
        .iter()
        .zip(sizes)
        .map(|(o, n)| (o.clone(), json!(n)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

pub fn validate(file: &Path) -> Outcome {
    let ws = load_lenient(file).map_err(fail)?;
    let mut r = Report::new("validate");
    let mut entries = Vec::new();
    for s in &ws.status {
        let (passed, witness) = match &s.outcome {
            Ok(m) => (true, m.clone()),
            Err(m) => (false, m.clone()),
        };
        entries.push(json!({"kind": s.kind, "name": s.name, "valid": passed}));
        r.check(format!("{} {}", s.kind, s.name), "valid", passed, witness);
    }
    r.data = json!({ "entities": entries });
    match ws.first_failure() {
        Some(s) => {
            let message = format!(
                "invalid {} `{}`: {}",
                s.kind,
                s.name,
                s.outcome.clone().unwrap_err()
            );
            Err((Failure::Validation(message), Some(r)))
        }
        None => Ok(r),
    }
}

pub fn enumerate_orbits(file: &Path, cat: &str, max_size: usize) -> Outcome {
    let ws = open(file)?;
    let shape = category(&ws, cat)?;
    let orbits = enumerate_discrete_orbits(shape, max_size).map_err(fail)?;
    let mut r = Report::new("orbits enumerate");
    r.line(format!(
        "{} isomorphism classes of discrete orbits over {cat} with at most {max_size} points",
        orbits.len()
    ));
    let mut out = Vec::new();
    for (i, o) in orbits.iter().enumerate() {
        let x = anonymous(cat, o.underlying().clone());
        let form = canonical_form(o.underlying()).map_err(fail)?;
        let actions: Vec<String> = shape
            .morphisms()
            .filter(|&m| !shape.is_identity(m))
            .map(|m| describe_action(&x, m))
            .collect();
        r.line(format!("orbit {i}: {} | canonical {form}", sizes_text(shape, &x.dspace.sizes())));
        for a in &actions {
            r.line(format!("  {a}"));
        }
        out.push(json!({
            "sizes": sizes_json(shape, &x.dspace.sizes()),
            "canonical": form.to_string(),
            "actions": actions,
        }));
    }
    r.data = json!({ "category": cat, "max_size": max_size, "orbits": out });
    Ok(r)
}

/// Document diagrams isomorphic to `x`, by name.
fn matching_names(ws: &Workspace, cat: &str, x: &DSpace) -> Result<Vec<String>, (Failure, Option<Report>)> {
    let mut names = Vec::new();
    for (name, d) in &ws.dspaces {
        if d.category == cat && find_isomorphism(x, &d.dspace).map_err(fail)?.is_some() {
            names.push(name.clone());
        }
    }
    Ok(names)
}

pub fn decompose(file: &Path, dset: &str) -> Outcome {
    let ws = open(file)?;
    let t = dspace(&ws, dset)?;
    let shape = t.dspace.shape();
    let dec = decompose_dset(&t.dspace).map_err(fail)?;
    let mut r = Report::new("decompose");
    r.line(format!("{dset} splits into {} orbits", dec.parts.len()));
    let mut parts = Vec::new();
    for (i, (part, form)) in dec.parts.iter().zip(&dec.labels).enumerate() {
        let points: Vec<String> = shape
            .objects()
            .flat_map(|d| part.points[d].iter().map(move |&p| (d, p)))
            .map(|(d, p)| t.names[d][p].clone())
            .collect();
        let matches = matching_names(&ws, &t.category, part.orbit.underlying())?;
        let label = if matches.is_empty() {
            form.to_string()
        } else {
            matches.join(" ≅ ")
        };
        r.line(format!("part {i}: {{{}}} label {label}", points.join(", ")));
        let by_object: serde_json::Map<String, serde_json::Value> = shape
            .objects()
            .map(|d| {
                let names: Vec<&String> = part.points[d].iter().map(|&p| &t.names[d][p]).collect();
                (shape.object_name(d).to_string(), json!(names))
            })
            .collect();
        parts.push(json!({
            "points": by_object,
            "label": label,
            "matches": matches,
            "canonical": form.to_string(),
        }));
    }
    r.data = json!({ "dset": dset, "parts": parts });
    Ok(r)
}

pub fn orbit_cat(file: &Path, cat: &str, fam: &str) -> Outcome {
    let ws = open(file)?;
    category(&ws, cat)?;
    let f = family(&ws, fam, Some(cat))?;
    let m = f.oc.hom_matrix();
    let mut r = Report::new("orbit-cat");
    r.line(format!("orbit category of {fam} over {cat}"));
    r.line(format!("objects: {}", f.members.join(", ")));
    r.line("hom-set sizes (row = source, column = target):".to_string());
    let width = f.members.iter().map(|n| n.chars().count()).max().unwrap_or(0);
    for (name, row) in f.members.iter().zip(&m) {
        let cells: Vec<String> = row.iter().map(|n| n.to_string()).collect();
        r.line(format!("  {name:<width$} | {}", cells.join(" ")));
    }
    r.data = json!({ "category": cat, "family": fam, "objects": f.members, "hom": m });
    Ok(r)
}

pub fn translation(file: &Path, dset: &str) -> Outcome {
    let ws = open(file)?;
    let t = dspace(&ws, dset)?;
    let tc = translation_category(&t.dspace).map_err(fail)?;
    let shape = t.dspace.shape();
    let label = |i: usize| {
        let (d, p) = tc.elements[i];
        format!("{}:{}", shape.object_name(d), t.names[d][p])
    };
    let objects: Vec<String> = (0..tc.elements.len()).map(label).collect();
    let mut r = Report::new("translation");
    r.line(format!(
        "translation category of {dset}: {} objects, {} morphisms",
        tc.category.object_count(),
        tc.category.morphism_count()
    ));
    r.line(format!("objects: {}", objects.join(", ")));
    let mut morphisms = Vec::new();
    for m in tc.category.morphisms() {
        let (f, a) = tc.labels[m];
        let name = format!("{}@{}", shape.morphism(f).name, t.names[shape.source(f)][a]);
        let (s, e) = (label(tc.category.source(m)), label(tc.category.target(m)));
        if !tc.category.is_identity(m) {
            r.line(format!("  {name}: {s} → {e}"));
        }
        morphisms.push(json!({"name": name, "source": s, "target": e, "identity": tc.category.is_identity(m)}));
    }
    r.data = json!({ "dset": dset, "objects": objects, "morphisms": morphisms });
    Ok(r)
}

pub fn pi0(file: &Path, x: &str, fam: &str) -> Outcome {
    let ws = open(file)?;
    let d = dspace(&ws, x)?;
    let f = family(&ws, fam, Some(&d.category))?;
    let p = pi0_functor(&d.dspace, &f.oc).map_err(fail)?;
    let cat = f.oc.category();
    let mut r = Report::new("pi0");
    r.line(format!("π₀ of the fixed points of {x} over {fam}"));
    let mut values = serde_json::Map::new();
    for (name, c) in f.members.iter().zip(&p.components) {
        r.line(format!("  {name} ↦ {}", c.count()));
        values.insert(name.clone(), json!(c.count()));
    }
    r.line("induced maps (σ: O → P gives π₀(X^P) → π₀(X^O)):".to_string());
    let mut induced = Vec::new();
    for sigma in cat.morphisms().filter(|&m| !cat.is_identity(m)) {
        let (o, q) = (cat.source(sigma), cat.target(sigma));
        let map = p.induced(sigma);
        r.line(format!(
            "  {}: {} → {} | {:?}",
            cat.morphism(sigma).name,
            f.members[o],
            f.members[q],
            map
        ));
        induced.push(json!({
            "morphism": cat.morphism(sigma).name,
            "source": f.members[o],
            "target": f.members[q],
            "map": map,
        }));
    }
    r.data = json!({ "dspace": x, "family": fam, "values": values, "induced": induced });
    Ok(r)
}

pub fn cells_build(file: &Path, script: &str, check: Option<&str>) -> Outcome {
    let ws = open(file)?;
    let s = ws
        .scripts
        .get(script)
        .ok_or_else(|| fail(Failure::Usage(format!("unknown script `{script}`"))))?;
    let shape = category(&ws, &s.category)?;
    let complex = build_complex(&s.base, &s.cells).map_err(fail)?;
    let mut r = Report::new("cells build");
    r.line(format!("complex {script} over {}", s.category));
    r.line(format!("stage 0 (base): {}", sizes_text(shape, &complex.base.sizes())));
    let mut stages = vec![json!({"dim": null, "orbit": null, "sizes": sizes_json(shape, &complex.base.sizes())})];
    for (i, (stage, name)) in complex.stages.iter().zip(&s.orbit_names).enumerate() {
        let sizes = stage.space.sizes();
        r.line(format!(
            "stage {}: {}-cell of {name}: {}",
            i + 1,
            stage.dim,
            sizes_text(shape, &sizes)
        ));
        stages.push(json!({"dim": stage.dim, "orbit": name, "sizes": sizes_json(shape, &sizes)}));
    }
    let final_space = complex.final_space();
    let colim = orbitcat::dspace::colim_dspace(final_space);
    r.line(format!("orbit classes: {}", colim.space.len()));
    r.line(format!("cw: {}", complex.is_cw()));
    let mut type_entries = Vec::new();
    if let Some(fam) = check {
        let f = family(&ws, fam, Some(&s.category))?;
        let report = verify_type(&complex, f.oc.orbits()).map_err(fail)?;
        for e in &report.entries {
            let (d, p) = e.representative;
            let at = format!("{}:{p}", shape.object_name(d));
            let witness = match e.matched {
                Some(i) => format!("orbit of {at} ≅ {}", f.members[i]),
                None => format!("orbit of {at} matches no member of {fam}"),
            };
            r.check(format!("class {}", e.class), "type", e.matched.is_some(), witness);
            type_entries.push(json!({
                "class": e.class,
                "representative": at,
                "matched": e.matched.map(|i| f.members[i].clone()),
            }));
        }
    }
    r.data = json!({
        "script": script,
        "stages": stages,
        "orbit_classes": colim.space.len(),
        "is_cw": complex.is_cw(),
        "type": type_entries,
    });
    Ok(r)
}

pub fn elmendorf_check(file: &Path, cat: &str, fam: &str, bounds: AdjunctionBounds) -> Outcome {
    let ws = open(file)?;
    category(&ws, cat)?;
    let f = family(&ws, fam, Some(cat))?;
    let oc = &f.oc;
    let rep = check_adjunction(oc, bounds).map_err(fail)?;
    let mut r = Report::new("elmendorf check");
    r.line(format!(
        "category {cat}, family {fam} ({}), at most {} points, seed {}, {} samples",
        f.members.join(", "),
        bounds.max_points,
        bounds.seed,
        bounds.samples
    ));
    r.line(format!(
        "presheaves: {}, diagrams: {}, pairs: {}, maps: {}",
        rep.presheaves, rep.dspaces, rep.pairs, rep.maps_checked
    ));
    let entity = format!("{cat}/{fam}");
    r.check(
        &entity,
        "bijection",
        rep.bijection_failures == 0,
        format!("{} pairs, {} mismatched", rep.pairs, rep.bijection_failures),
    );
    r.check(
        &entity,
        "roundtrip backward∘forward",
        rep.forward_roundtrip_failures == 0,
        format!("{} failures", rep.forward_roundtrip_failures),
    );
    r.check(
        &entity,
        "roundtrip forward∘backward",
        rep.backward_roundtrip_failures == 0,
        format!("{} failures", rep.backward_roundtrip_failures),
    );
    r.check(
        &entity,
        "naturality in X",
        rep.naturality_x_failures == 0,
        format!("{} squares, {} failures", rep.naturality_x_checks, rep.naturality_x_failures),
    );
    r.check(
        &entity,
        "naturality in R",
        rep.naturality_r_failures == 0,
        format!("{} squares, {} failures", rep.naturality_r_checks, rep.naturality_r_failures),
    );
    r.check(
        &entity,
        "K∘Φ ≅ id",
        rep.kphi_failures == 0,
        format!("{} diagrams, {} failures", rep.dspaces, rep.kphi_failures),
    );
    r.check(
        &entity,
        "triangle identity",
        rep.triangle_failures == 0,
        format!("{} diagrams, {} failures", rep.dspaces, rep.triangle_failures),
    );
    if let Some(first) = &rep.first_failure {
        r.line(format!("first failure: {first}"));
    }
    let coefficients = [
        ("empty", FinSpace::empty()),
        ("point", FinSpace::point()),
        ("discrete2", FinSpace::discrete(2)),
        ("chain2", FinSpace::chain(2)),
    ];
    let mut units = Vec::new();
    for (i, name) in f.members.iter().enumerate() {
        for (a_name, a) in &coefficients {
            let u = check_unit_free_cell(i, a, oc).map_err(fail)?;
            let sizes: Vec<String> = u.component_sizes.iter().map(|(x, y)| format!("{x}/{y}")).collect();
            r.check(
                format!("{name} × {a_name}"),
                "unit on free cell",
                u.is_iso,
                format!("|R(P)|/|ΦK(R)(P)| = {}", sizes.join(" ")),
            );
            units.push(json!({"orbit": name, "coefficients": a_name, "check": u}));
        }
    }
    r.data = json!({ "adjunction": rep, "unit": units });
    Ok(r)
}

