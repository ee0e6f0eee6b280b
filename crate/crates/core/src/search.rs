//! Search driver: graph representatives × axis permutations × clique search.
//!
//! Instances are evaluated in chunks. Within a chunk the classical images are
//! computed in parallel, identical images are solved once, and the clique
//! searches share a monotone incumbent used as their lower bound. Results are
//! merged in instance order, so the reported rows do not depend on thread
//! scheduling when no budget is hit.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use log::{debug, info};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::clifford::AxisPerm;
use crate::clique::{max_clique, max_clique_cayley, Budget, CliqueGraph};
use crate::code::{format_bits, CwsCode};
use crate::engine::{assemble_code, ImageKernel, InstanceImage};
use crate::error::{CwsError, Result};
use crate::error_model::{axis_perm_iterator, ErrorSet, ErrorSetKind};
use crate::graph::Graph;
use crate::orbits::{load_or_compute, MAX_ORBIT_N, MIN_ORBIT_N};
use crate::verifier::verify_detection;

/// Tolerance used when certifying emitted witnesses.
pub const WITNESS_TOL: f64 = 1e-9;

const CHUNK: usize = 1 << 16;
const CACHE_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Per-instance clique budget.
    pub budget: Budget,
    /// Require `c·u = 0` for every codeword instead of for every difference.
    pub strict_degeneracy: bool,
    pub connected_only: bool,
    /// Directory holding cached orbit representatives.
    pub orbits_cache: Option<PathBuf>,
    /// Dense-verify every emitted witness.
    pub verify_witnesses: bool,
    /// Emit a witness for every instance attaining the best dimension, not
    /// just the first one per graph.
    pub all_witnesses: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::unlimited(),
            strict_degeneracy: false,
            connected_only: false,
            orbits_cache: None,
            verify_witnesses: true,
            all_witnesses: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum InstanceStatus {
    Pending,
    Done { k: usize, witness: Vec<String> },
    BudgetExhausted { best: usize },
}

/// One (graph, perm) pair of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchInstance {
    /// Canonical form of the graph, hex encoded.
    pub graph_id: String,
    pub graph6: String,
    pub perm: AxisPerm,
    pub error_set: ErrorSetKind,
    pub status: InstanceStatus,
}

/// A best-K witness as recorded in `results.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub graph_id: String,
    pub graph6: String,
    pub perm: AxisPerm,
    pub codewords: Vec<String>,
    pub additive: bool,
    pub degenerate: bool,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultsRow {
    pub n: usize,
    pub error_set: ErrorSetKind,
    pub mode: SearchMode,
    pub strict_degeneracy: bool,
    pub connected_only: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<u64>,
    /// Largest dimension found; `None` when nothing was searched.
    pub best_k: Option<usize>,
    /// True only for a full sweep in which every instance finished exactly.
    pub exhaustive: bool,
    pub graphs: usize,
    pub instances: u64,
    pub distinct_images: u64,
    pub best_instances: u64,
    pub budget_exhausted: u64,
    pub elapsed_seconds: f64,
    pub witnesses: Vec<WitnessRef>,
    /// Budget-exhausted instances, for re-running with a larger budget.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub requeue: Vec<SearchInstance>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultsTable {
    pub rows: Vec<ResultsRow>,
}

impl ResultsTable {
    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A search result with the assembled witness codes.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub row: ResultsRow,
    pub codes: Vec<CwsCode>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct InstanceKey {
    conn: [u64; 8],
    /// Allowed codewords in strict mode, zero otherwise.
    domain: [u64; 8],
}

#[derive(Clone, Copy, Debug)]
enum KeyResult {
    Exact(usize),
    /// Finished; the maximum is below the lower bound in force.
    Below,
    Exhausted(usize),
}

fn bit(set: &[u64; 8], v: usize) -> bool {
    set[v >> 6] >> (v & 63) & 1 == 1
}

fn instance_key(img: &InstanceImage, n: usize, strict: bool) -> InstanceKey {
    let mut domain = [0u64; 8];
    if strict {
        for c in 0..1usize << n {
            if img
                .zero_image_span
                .iter()
                .all(|&u| (c as u32 & u).count_ones() & 1 == 0)
            {
                domain[c >> 6] |= 1 << (c & 63);
            }
        }
    }
    InstanceKey {
        conn: img.key.0,
        domain,
    }
}

/// Maximum clique for one key; returns (size, exact, exhausted, codewords).
fn solve_key(
    key: &InstanceKey,
    n: usize,
    lb: usize,
    budget: Budget,
    strict: bool,
) -> (usize, bool, bool, Vec<u32>) {
    if !strict {
        let conn = crate::engine::ConnectionKey(key.conn).patterns();
        let out = max_clique_cayley(&conn, n, lb, budget);
        let words = out.witness.iter().map(|&v| v as u32).collect();
        return (out.size, out.exact, out.budget_exhausted, words);
    }
    let verts: Vec<usize> = (0..1usize << n).filter(|&c| bit(&key.domain, c)).collect();
    let mut g = CliqueGraph::new(verts.len());
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            if bit(&key.conn, verts[a] ^ verts[b]) {
                g.add_edge(a, b);
            }
        }
    }
    let out = max_clique(&g, lb, budget);
    let words = out.witness.iter().map(|&k| verts[k] as u32).collect();
    (out.size, out.exact, out.budget_exhausted, words)
}

fn check_n(n: usize) -> Result<()> {
    if !(MIN_ORBIT_N..=MAX_ORBIT_N).contains(&n) {
        return Err(CwsError::QubitCount {
            n,
            min: MIN_ORBIT_N,
            max: MAX_ORBIT_N,
        });
    }
    Ok(())
}

fn canonical_members(es: &ErrorSet) -> Vec<(u32, u32)> {
    es.members()
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| (p.x_mask(), p.z_mask()))
        .collect()
}

/// Per-run evaluation state shared by the exhaustive and random drivers.
struct Evaluator<'a> {
    n: usize,
    members: Vec<(u32, u32)>,
    opts: &'a SearchOptions,
    incumbent: AtomicUsize,
    cache: HashMap<InstanceKey, KeyResult>,
    /// Codewords of solved keys at the running best size, so witnesses found
    /// under a budget need not be searched for again.
    best_words: HashMap<InstanceKey, Vec<u32>>,
    best_size: usize,
}

impl<'a> Evaluator<'a> {
    fn new(es: &ErrorSet, opts: &'a SearchOptions, lower_bound: usize) -> Self {
        Evaluator {
            n: es.num_qubits(),
            members: canonical_members(es),
            opts,
            incumbent: AtomicUsize::new(lower_bound.max(1)),
            cache: HashMap::new(),
            best_words: HashMap::new(),
            best_size: 0,
        }
    }

    /// Results for a batch of (kernel, perm) instances, in batch order.
    fn evaluate(&mut self, batch: &[(&ImageKernel, &AxisPerm)]) -> Vec<KeyResult> {
        let (n, strict) = (self.n, self.opts.strict_degeneracy);
        let keys: Vec<InstanceKey> = batch
            .par_iter()
            .map(|(kernel, perm)| instance_key(&kernel.image(&self.members, perm), n, strict))
            .collect();
        let mut fresh: Vec<InstanceKey> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for k in &keys {
            if !self.cache.contains_key(k) && seen.insert(*k) {
                fresh.push(*k);
            }
        }
        let budget = self.opts.budget;
        let incumbent = &self.incumbent;
        let solved: Vec<(InstanceKey, KeyResult, Vec<u32>)> = fresh
            .par_iter()
            .map(|key| {
                let lb = incumbent.load(Ordering::Relaxed);
                let (size, exact, exhausted, words) = solve_key(key, n, lb, budget, strict);
                let result = if exhausted {
                    KeyResult::Exhausted(size)
                } else if exact {
                    KeyResult::Exact(size)
                } else {
                    KeyResult::Below
                };
                let prev = incumbent.fetch_max(size, Ordering::Relaxed);
                let keep = !matches!(result, KeyResult::Below) && size >= prev;
                (*key, result, if keep { words } else { Vec::new() })
            })
            .collect();
        let mut local = HashMap::with_capacity(solved.len());
        for (key, result, words) in solved {
            if words.len() > self.best_size {
                self.best_size = words.len();
                self.best_words.clear();
            }
            if !words.is_empty() && words.len() == self.best_size {
                self.best_words.insert(key, words);
            }
            local.insert(key, result);
        }
        let out = keys
            .iter()
            .map(|k| {
                *self
                    .cache
                    .get(k)
                    .or_else(|| local.get(k))
                    .expect("every key solved")
            })
            .collect();
        let room = CACHE_LIMIT.saturating_sub(self.cache.len());
        self.cache.extend(local.drain().take(room));
        out
    }

    fn distinct(&self) -> u64 {
        self.cache.len() as u64
    }
}

/// Tracks the best result per graph in instance order.
#[derive(Clone, Copy)]
struct GraphBest {
    size: usize,
    perm_index: u64,
}

struct Tally {
    instances: u64,
    exhausted: u64,
    best_found: usize,
    per_graph: Vec<Option<GraphBest>>,
    requeue: Vec<(usize, u64, usize)>,
    /// Every (graph, perm) at `best_found`, when requested.
    all_best: Option<Vec<(usize, u64)>>,
}

impl Tally {
    fn new(graphs: usize, collect_all: bool) -> Self {
        Tally {
            instances: 0,
            exhausted: 0,
            best_found: 0,
            per_graph: vec![None; graphs],
            requeue: Vec::new(),
            all_best: collect_all.then(Vec::new),
        }
    }

    fn record(&mut self, graph: usize, perm_index: u64, r: KeyResult) {
        self.instances += 1;
        let size = match r {
            KeyResult::Exact(s) => s,
            KeyResult::Below => return,
            KeyResult::Exhausted(s) => {
                self.exhausted += 1;
                self.requeue.push((graph, perm_index, s));
                s
            }
        };
        if let Some(all) = &mut self.all_best {
            if size > self.best_found {
                all.clear();
            }
            if size >= self.best_found {
                all.push((graph, perm_index));
            }
        }
        self.best_found = self.best_found.max(size);
        let slot = &mut self.per_graph[graph];
        if slot.map_or(true, |b| size > b.size) {
            *slot = Some(GraphBest { size, perm_index });
        }
    }
}

fn witness_for(
    graph: &Graph,
    perm: &AxisPerm,
    es: &ErrorSet,
    k: usize,
    opts: &SearchOptions,
    known: &HashMap<InstanceKey, Vec<u32>>,
) -> Result<Option<(CwsCode, WitnessRef)>> {
    let n = es.num_qubits();
    let kernel = ImageKernel::new(graph);
    let img = kernel.image(&canonical_members(es), perm);
    let key = instance_key(&img, n, opts.strict_degeneracy);
    let words = match known.get(&key) {
        Some(words) if words.len() == k => words.clone(),
        _ => {
            let (size, _, _, words) = solve_key(&key, n, k, opts.budget, opts.strict_degeneracy);
            if size < k {
                return Ok(None);
            }
            words
        }
    };
    let code = assemble_code(graph, perm, &words, es)?;
    let mut verified = false;
    if opts.verify_witnesses {
        let report = verify_detection(&code, es, WITNESS_TOL)?;
        if !report.ok {
            return Err(CwsError::CodeDefect(format!(
                "witness on {} with perm {perm} fails detection ({} violations)",
                graph.to_graph6(),
                report.violation_count
            )));
        }
        verified = true;
    }
    let wref = WitnessRef {
        file: None,
        graph_id: canonical_form(graph).to_hex(),
        graph6: graph.to_graph6(),
        perm: perm.clone(),
        codewords: words.iter().map(|&c| format_bits(c, n)).collect(),
        additive: code.additive,
        degenerate: code.degenerate,
        verified,
    };
    Ok(Some((code, wref)))
}

/// Sweeps every graph in `graphs` against all `3^n` axis permutations.
/// One witness is assembled for each graph attaining the best dimension.
pub fn search_graphs(
    graphs: &[Graph],
    es: &ErrorSet,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let n = es.num_qubits();
    check_n(n)?;
    if let Some(g) = graphs.iter().find(|g| g.num_vertices() != n) {
        return Err(CwsError::LengthMismatch(n, g.num_vertices()));
    }
    let start = Instant::now();
    let perms: Vec<AxisPerm> = axis_perm_iterator(n).collect();
    let per_graph = perms.len() as u64;
    let mut eval = Evaluator::new(es, opts, 1);
    let mut tally = Tally::new(graphs.len(), opts.all_witnesses);
    let graphs_per_chunk = (CHUNK / perms.len()).max(1);
    for (chunk_no, chunk) in graphs.chunks(graphs_per_chunk).enumerate() {
        let base = chunk_no * graphs_per_chunk;
        let kernels: Vec<ImageKernel> = chunk.iter().map(ImageKernel::new).collect();
        let batch: Vec<(&ImageKernel, &AxisPerm)> = kernels
            .iter()
            .flat_map(|k| perms.iter().map(move |p| (k, p)))
            .collect();
        let results = eval.evaluate(&batch);
        for (i, r) in results.into_iter().enumerate() {
            let g = base + i / perms.len();
            tally.record(g, (i % perms.len()) as u64, r);
        }
        debug!(
            "graphs {}..{}: incumbent {}, {} distinct images",
            base,
            base + chunk.len(),
            tally.best_found,
            eval.distinct()
        );
    }
    assert_eq!(
        tally.instances,
        graphs.len() as u64 * per_graph,
        "sweep accounting"
    );

    let best = tally.best_found;
    let mut codes = Vec::new();
    let mut witnesses = Vec::new();
    let chosen: Vec<(usize, u64)> = match &tally.all_best {
        Some(all) if best > 0 => all.clone(),
        Some(_) => Vec::new(),
        None => tally
            .per_graph
            .iter()
            .enumerate()
            .filter_map(|(g, slot)| match slot {
                Some(b) if b.size == best && best > 0 => Some((g, b.perm_index)),
                _ => None,
            })
            .collect(),
    };
    let best_instances = chosen.len() as u64;
    for &(g, perm_index) in &chosen {
        let perm = &perms[perm_index as usize];
        if let Some((code, wref)) = witness_for(&graphs[g], perm, es, best, opts, &eval.best_words)?
        {
            codes.push(code);
            witnesses.push(wref);
        }
    }
    let requeue = tally
        .requeue
        .iter()
        .map(|&(g, p, s)| SearchInstance {
            graph_id: canonical_form(&graphs[g]).to_hex(),
            graph6: graphs[g].to_graph6(),
            perm: perms[p as usize].clone(),
            error_set: es.kind(),
            status: InstanceStatus::BudgetExhausted { best: s },
        })
        .collect();
    let row = ResultsRow {
        n,
        error_set: es.kind(),
        mode: SearchMode::Exhaustive,
        strict_degeneracy: opts.strict_degeneracy,
        connected_only: opts.connected_only,
        seed: None,
        iterations: None,
        best_k: (tally.instances > 0).then_some(best),
        exhaustive: tally.exhausted == 0 && tally.instances > 0,
        graphs: graphs.len(),
        instances: tally.instances,
        distinct_images: eval.distinct(),
        best_instances,
        budget_exhausted: tally.exhausted,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        witnesses,
        requeue,
    };
    info!(
        "n={n} {}: K={best} over {} instances ({} distinct) in {:.1}s",
        es.kind(),
        row.instances,
        row.distinct_images,
        row.elapsed_seconds
    );
    Ok(SearchOutcome { row, codes })
}

/// Exhaustive search over all local-complementation class representatives.
pub fn exhaustive_search(
    n: usize,
    kind: ErrorSetKind,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    check_n(n)?;
    let es = kind.build(n)?;
    let reps = load_or_compute(n, opts.connected_only, opts.orbits_cache.as_deref())?;
    info!("n={n}: {} graph representatives", reps.len());
    search_graphs(&reps, &es, opts)
}

fn draw(n: usize, rng: &mut ChaCha8Rng) -> Result<(Graph, AxisPerm)> {
    let g = Graph::random(n, rng)?;
    let p = AxisPerm::from_index(n, rng.gen_range(0..3u64.pow(n as u32)));
    Ok((g, p))
}

/// The first `iterations` (graph, perm) draws for `seed`.
pub fn random_instances(n: usize, seed: u64, iterations: u64) -> Result<Vec<(Graph, AxisPerm)>> {
    check_n(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..iterations).map(|_| draw(n, &mut rng)).collect()
}

/// Running result over an explicit stream of (graph, perm) pairs.
#[derive(Default)]
struct PairTally {
    seen: u64,
    best: usize,
    first_best: Option<(Graph, AxisPerm)>,
    best_instances: u64,
    exhausted: Vec<(Graph, AxisPerm, usize)>,
}

impl PairTally {
    fn absorb(&mut self, eval: &mut Evaluator, pairs: &[(Graph, AxisPerm)]) {
        let kernels: Vec<ImageKernel> = pairs.iter().map(|(g, _)| ImageKernel::new(g)).collect();
        let batch: Vec<(&ImageKernel, &AxisPerm)> =
            kernels.iter().zip(pairs.iter().map(|(_, p)| p)).collect();
        for (r, pair) in eval.evaluate(&batch).into_iter().zip(pairs) {
            self.seen += 1;
            let size = match r {
                KeyResult::Exact(s) => s,
                KeyResult::Below => continue,
                KeyResult::Exhausted(s) => {
                    self.exhausted.push((pair.0.clone(), pair.1.clone(), s));
                    s
                }
            };
            if size > self.best {
                self.best = size;
                self.best_instances = 0;
                self.first_best = Some(pair.clone());
            }
            if size == self.best {
                self.best_instances += 1;
            }
        }
    }

    fn requeue(&self, es: &ErrorSet) -> Vec<SearchInstance> {
        self.exhausted
            .iter()
            .map(|(g, p, s)| SearchInstance {
                graph_id: canonical_form(g).to_hex(),
                graph6: g.to_graph6(),
                perm: p.clone(),
                error_set: es.kind(),
                status: InstanceStatus::BudgetExhausted { best: *s },
            })
            .collect()
    }
}

/// Random graphs (edge probability 1/2) and uniform random perms. The result
/// is a lower bound; `best_k` is `None` when `iterations == 0`.
pub fn random_search(
    n: usize,
    es: &ErrorSet,
    seed: u64,
    iterations: u64,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    check_n(n)?;
    if es.num_qubits() != n {
        return Err(CwsError::LengthMismatch(n, es.num_qubits()));
    }
    let start = Instant::now();
    let mut eval = Evaluator::new(es, opts, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = PairTally::default();
    while tally.seen < iterations {
        let take = (iterations - tally.seen).min(CHUNK as u64);
        let draws: Vec<(Graph, AxisPerm)> = (0..take)
            .map(|_| draw(n, &mut rng))
            .collect::<Result<_>>()?;
        tally.absorb(&mut eval, &draws);
    }
    let mut codes = Vec::new();
    let mut witnesses = Vec::new();
    if let Some((g, p)) = &tally.first_best {
        if let Some((code, wref)) = witness_for(g, p, es, tally.best, opts, &eval.best_words)? {
            codes.push(code);
            witnesses.push(wref);
        }
    }
    let row = ResultsRow {
        n,
        error_set: es.kind(),
        mode: SearchMode::Random,
        strict_degeneracy: opts.strict_degeneracy,
        connected_only: false,
        seed: Some(seed),
        iterations: Some(iterations),
        best_k: (iterations > 0).then_some(tally.best),
        exhaustive: false,
        graphs: iterations as usize,
        instances: iterations,
        distinct_images: eval.distinct(),
        best_instances: tally.best_instances,
        budget_exhausted: tally.exhausted.len() as u64,
        elapsed_seconds: start.elapsed().as_secs_f64(),
        witnesses,
        requeue: tally.requeue(es),
    };
    info!(
        "n={n} {} seed {seed}: K={} after {iterations} draws in {:.1}s",
        es.kind(),
        tally.best,
        row.elapsed_seconds
    );
    Ok(SearchOutcome { row, codes })
}

/// Re-runs the budget-exhausted instances of `previous` under `opts` and
/// merges them into an updated row. The previous witnesses are kept unless a
/// larger code turns up.
pub fn rerun_requeued(
    previous: &ResultsRow,
    es: &ErrorSet,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    if es.kind() != previous.error_set || es.num_qubits() != previous.n {
        return Err(CwsError::InvalidParameter(format!(
            "row is for n={} {}, not n={} {}",
            previous.n,
            previous.error_set,
            es.num_qubits(),
            es.kind()
        )));
    }
    let start = Instant::now();
    let pairs = previous
        .requeue
        .iter()
        .map(|inst| Ok((Graph::from_graph6(&inst.graph6)?, inst.perm.clone())))
        .collect::<Result<Vec<_>>>()?;
    let before = previous.best_k.unwrap_or(1);
    let mut eval = Evaluator::new(es, opts, before);
    let mut tally = PairTally::default();
    for chunk in pairs.chunks(CHUNK) {
        tally.absorb(&mut eval, chunk);
    }
    let mut row = previous.clone();
    let mut codes = Vec::new();
    if tally.best > before {
        row.witnesses.clear();
        let (g, p) = tally.first_best.as_ref().expect("a best pair exists");
        if let Some((code, wref)) = witness_for(g, p, es, tally.best, opts, &eval.best_words)? {
            codes.push(code);
            row.witnesses.push(wref);
        }
        row.best_instances = tally.best_instances;
    } else if tally.best == before {
        row.best_instances += tally.best_instances;
    }
    row.best_k = Some(before.max(tally.best));
    row.budget_exhausted = tally.exhausted.len() as u64;
    row.exhaustive = previous.mode == SearchMode::Exhaustive && tally.exhausted.is_empty();
    row.requeue = tally.requeue(es);
    row.elapsed_seconds += start.elapsed().as_secs_f64();
    Ok(SearchOutcome { row, codes })
}
