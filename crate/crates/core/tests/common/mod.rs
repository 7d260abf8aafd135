#![allow(dead_code)]

use orbitcat::dspace::DSpace;
use orbitcat::fincat::FinCategory;
use orbitcat::finspace::FinSpace;
use orbitcat::orbits::{orbit_category, OrbitCategory};

pub fn j() -> FinCategory {
    FinCategory::walking_arrow()
}

pub fn c2() -> FinCategory {
    FinCategory::cyclic_group(2)
}

/// `[n]` over the walking arrow: `n` discrete points over a single point.
pub fn bracket(n: usize) -> DSpace {
    DSpace::from_partial(j(), vec![FinSpace::discrete(n), FinSpace::point()], [(2, vec![0; n])]).unwrap()
}

pub fn j_family() -> Vec<(String, DSpace)> {
    (0..3).map(|n| (format!("[{n}]"), bracket(n))).collect()
}

pub fn c2_family() -> Vec<(String, DSpace)> {
    let c = c2();
    vec![
        ("C2/e".into(), DSpace::representable(&c, 0).unwrap()),
        ("C2/C2".into(), DSpace::terminal(&c)),
    ]
}

pub fn cospan_family() -> Vec<(String, DSpace)> {
    let c = FinCategory::cospan();
    c.objects()
        .map(|d| (format!("F^{}", c.object_name(d)), DSpace::representable(&c, d).unwrap()))
        .collect()
}

pub fn j_oc() -> OrbitCategory {
    orbit_category(&j(), &j_family()).unwrap()
}

pub fn c2_oc() -> OrbitCategory {
    orbit_category(&c2(), &c2_family()).unwrap()
}

/// Every function `{0..n} → {0..m}` as an image list.
pub fn functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..m).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

pub fn is_monotone(x: &FinSpace, y: &FinSpace, f: &[usize]) -> bool {
    x.points()
        .all(|a| x.points().all(|b| !x.leq(a, b) || y.leq(f[a], f[b])))
}

pub fn monotone(x: &FinSpace, y: &FinSpace) -> Vec<Vec<usize>> {
    functions(x.len(), y.len())
        .into_iter()
        .filter(|f| is_monotone(x, y, f))
        .collect()
}

/// All equivariant maps by filtering every objectwise choice of functions.
pub fn brute_maps(x: &DSpace, y: &DSpace) -> Vec<Vec<Vec<usize>>> {
    let shape = x.shape();
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for d in shape.objects() {
        let choices = monotone(x.space(d), y.space(d));
        out = out
            .into_iter()
            .flat_map(|partial| {
                choices.iter().map(move |c| {
                    let mut p = partial.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out.retain(|comps| {
        shape.morphisms().all(|m| {
            let (a, b) = (shape.source(m), shape.target(m));
            x.space(a)
                .points()
                .all(|p| comps[b][x.act(m, p)] == y.act(m, comps[a][p]))
        })
    });
    out.sort();
    out
}

/// Compose componentwise: `(g ∘ f)_d = g_d ∘ f_d`.
pub fn compose(g: &[Vec<usize>], f: &[Vec<usize>]) -> Vec<Vec<usize>> {
    f.iter().zip(g).map(|(fd, gd)| fd.iter().map(|&p| gd[p]).collect()).collect()
}

/// Number of connected components of the symmetric closure, by search.
pub fn components(x: &FinSpace) -> usize {
    let n = x.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(a) = stack.pop() {
            for b in 0..n {
                if !seen[b] && (x.leq(a, b) || x.leq(b, a)) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    count
}
