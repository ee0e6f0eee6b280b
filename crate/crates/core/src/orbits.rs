//! Representatives of graph classes under local complementation and relabeling.
//!
//! Classes on `n` vertices are generated from the classes on `n - 1` vertices:
//! every `n`-vertex graph is, after relabeling and local complementations on
//! the old vertices, one class representative on `n - 1` vertices plus a new
//! vertex with some neighbourhood. For connected graphs the deleted vertex is
//! taken to be a non-cut vertex, so only connected representatives with a
//! nonempty neighbourhood need extending. Each unseen candidate seeds a
//! breadth-first search over local complementations, quotiented by canonical
//! form.

use std::collections::{HashSet, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};

use log::{debug, info};

use crate::canon::{canonical_graph, CanonicalForm};
use crate::error::{CwsError, Result};
use crate::graph::{read_graph6_lines, Graph};

pub const MIN_ORBIT_N: usize = 2;
pub const MAX_ORBIT_N: usize = 9;
const CACHE_VERSION: &str = "cws-orbits v1";

fn check_range(n: usize) -> Result<()> {
    if !(MIN_ORBIT_N..=MAX_ORBIT_N).contains(&n) {
        return Err(CwsError::QubitCount {
            n,
            min: MIN_ORBIT_N,
            max: MAX_ORBIT_N,
        });
    }
    Ok(())
}

/// The whole class of `start`, as canonical graphs.
pub fn lc_orbit(start: &Graph) -> Vec<(CanonicalForm, Graph)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let first = canonical_graph(start);
    seen.insert(first.0);
    let mut queue = VecDeque::from([first.1.clone()]);
    out.push(first);
    while let Some(g) = queue.pop_front() {
        for v in 0..g.num_vertices() {
            if g.degree(v) < 2 {
                continue;
            }
            let (form, cg) = canonical_graph(&g.local_complement_unchecked(v));
            if seen.insert(form) {
                queue.push_back(cg.clone());
                out.push((form, cg));
            }
        }
    }
    out
}

fn representatives_uncached(n: usize, connected_only: bool) -> Vec<Graph> {
    let mut reps = vec![Graph::empty(1).expect("one vertex")];
    for m in 2..=n {
        let mut visited: HashSet<CanonicalForm> = HashSet::new();
        let mut next: Vec<(CanonicalForm, Graph)> = Vec::new();
        let first_nbhd = if connected_only { 1u32 } else { 0 };
        for r in &reps {
            for nb in first_nbhd..(1u32 << (m - 1)) {
                let cand = r.extended(nb).expect("within size limit");
                let (form, cg) = canonical_graph(&cand);
                if visited.contains(&form) {
                    continue;
                }
                let mut best = (form, cg.clone());
                let mut seen_here = HashSet::from([form]);
                let mut queue = VecDeque::from([cg]);
                visited.insert(form);
                while let Some(g) = queue.pop_front() {
                    for v in 0..m {
                        if g.degree(v) < 2 {
                            continue;
                        }
                        let (f, h) = canonical_graph(&g.local_complement_unchecked(v));
                        if seen_here.insert(f) {
                            visited.insert(f);
                            if f < best.0 {
                                best = (f, h.clone());
                            }
                            queue.push_back(h);
                        }
                    }
                }
                next.push(best);
            }
        }
        next.sort_by_key(|(f, _)| *f);
        debug!(
            "n = {m}: {} classes over {} graphs",
            next.len(),
            visited.len()
        );
        reps = next.into_iter().map(|(_, g)| g).collect();
    }
    reps
}

/// One representative per class, each the least canonical graph of its class,
/// ordered by canonical form.
pub fn lc_orbit_representatives(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    check_range(n)?;
    Ok(representatives_uncached(n, connected_only))
}

fn cache_path(dir: &Path, n: usize, connected_only: bool) -> PathBuf {
    let scope = if connected_only { "connected" } else { "all" };
    dir.join(format!("orbits_n{n}_{scope}.g6"))
}

fn header(n: usize, connected_only: bool) -> String {
    let scope = if connected_only { "connected" } else { "all" };
    format!("# {CACHE_VERSION} n={n} scope={scope}")
}

/// Like [`lc_orbit_representatives`], reading and writing a graph6 cache in `dir`.
pub fn load_or_compute(n: usize, connected_only: bool, dir: Option<&Path>) -> Result<Vec<Graph>> {
    check_range(n)?;
    let Some(dir) = dir else {
        return lc_orbit_representatives(n, connected_only);
    };
    let path = cache_path(dir, n, connected_only);
    if let Ok(text) = fs::read_to_string(&path) {
        if text.lines().next() == Some(header(n, connected_only).as_str()) {
            info!("loaded orbit representatives from {}", path.display());
            return read_graph6_lines(&text);
        }
        info!("ignoring stale cache {}", path.display());
    }
    let reps = lc_orbit_representatives(n, connected_only)?;
    fs::create_dir_all(dir)?;
    fs::write(&path, render_cache(n, connected_only, &reps))?;
    Ok(reps)
}

pub fn render_cache(n: usize, connected_only: bool, reps: &[Graph]) -> String {
    let mut text = header(n, connected_only);
    text.push('\n');
    for g in reps {
        text.push_str(&g.to_graph6());
        text.push('\n');
    }
    text
}
