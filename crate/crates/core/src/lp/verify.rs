use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{max_weight_forest, LpSolver, LpStatus};
use crate::formulations::{forest_witness, parse_arc_tag, q_arcs, LinearSystem, Node, Row, Violation};
use crate::graph::{enumerate_forests, EdgeSubset, EnumerationCaps, Graph, Subgraph, UnionFind, VertexSubset};
use crate::Rational;

/// One `PASS|FAIL <check-id> <details>` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub pass: bool,
    pub id: String,
    pub details: String,
}

impl CheckLine {
    fn new(pass: bool, id: impl Into<String>, details: impl Into<String>) -> Self {
        CheckLine {
            pass,
            id: id.into(),
            details: details.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub trials: usize,
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| !l.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# seed={} trials={}\n", self.seed, self.trials);
        for l in &self.lines {
            writeln!(out, "{} {} {}", if l.pass { "PASS" } else { "FAIL" }, l.id, l.details).unwrap();
        }
        out
    }
}

/// An objective under test, with its name in the report.
#[derive(Debug, Clone)]
pub struct Objective {
    pub id: String,
    pub weights: Vec<Rational>,
}

/// All of `{-1, 0, 1}^E` when `|E| <= 4`; otherwise zero, `±e_i`, `±1`
/// and `1 - 2e_i`.
pub fn structured_objectives(m: usize) -> Vec<Objective> {
    let unit = |i: usize, s: i64| -> Vec<Rational> {
        (0..m).map(|e| Rational::from_int(if e == i { s } else { 0 })).collect()
    };
    let mut out = Vec::new();
    if m <= 4 {
        for code in 0..3usize.pow(m as u32) {
            let mut c = code;
            let w = (0..m)
                .map(|_| {
                    let d = (c % 3) as i64 - 1;
                    c /= 3;
                    Rational::from_int(d)
                })
                .collect();
            out.push(Objective {
                id: format!("opt.battery.{code}"),
                weights: w,
            });
        }
        return out;
    }
    let mut push = |name: String, w: Vec<Rational>| out.push(Objective { id: name, weights: w });
    push("opt.battery.zero".into(), vec![Rational::zero(); m]);
    push("opt.battery.ones".into(), vec![Rational::one(); m]);
    push("opt.battery.minus-ones".into(), vec![Rational::from_int(-1); m]);
    for i in 0..m {
        push(format!("opt.battery.e{i}"), unit(i, 1));
        push(format!("opt.battery.minus-e{i}"), unit(i, -1));
        let w = (0..m).map(|e| Rational::from_int(if e == i { -1 } else { 1 })).collect();
        push(format!("opt.battery.ones-but-e{i}"), w);
    }
    out
}

/// `count` objectives with numerators in [-10, 10] and denominators in
/// {1, 2, 3}, drawn from ChaCha8 seeded with `seed`.
pub fn random_objectives(m: usize, count: usize, seed: u64) -> Vec<Objective> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| Objective {
            id: format!("opt.random.{k}"),
            weights: (0..m)
                .map(|_| Rational::new(rng.gen_range(-10..=10), rng.gen_range(1..=3)))
                .collect(),
        })
        .collect()
}

fn show(w: &[Rational]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Check `sys` against `g` from both sides: every forest (a seeded sample
/// above [`EXHAUSTIVE_FOREST_EDGES`] edges) extends to a feasible point, and LP optima over `sys` agree with the greedy forest
/// optimum on the structured battery plus `trials` random objectives.
pub fn verify_ef(g: &Graph, sys: &LinearSystem, trials: usize, seed: u64) -> VerifyReport {
    verify_ef_with(g, sys, trials, seed, EnumerationCaps::default())
}

pub fn verify_ef_with(g: &Graph, sys: &LinearSystem, trials: usize, seed: u64, caps: EnumerationCaps) -> VerifyReport {
    let mut lines = Vec::new();
    if sys.num_orig != g.m() {
        lines.push(CheckLine::new(
            false,
            "shape",
            format!("system has {} original variables, graph has {} edges", sys.num_orig, g.m()),
        ));
        return VerifyReport { seed, trials, lines };
    }
    if let Err(e) = sys.check_references() {
        lines.push(CheckLine::new(false, "shape", e.to_string()));
        return VerifyReport { seed, trials, lines };
    }
    feasibility_half(g, sys, caps, trials, seed, &mut lines);
    let mut objectives = structured_objectives(g.m());
    objectives.extend(random_objectives(g.m(), trials, seed));
    let mut solver = LpSolver::new(sys);
    for obj in &objectives {
        let greedy = max_weight_forest(g, &obj.weights);
        let lp = solver.maximize(&obj.weights);
        let line = match (lp.status, lp.value) {
            (LpStatus::Optimal, Some(v)) => CheckLine::new(
                v == greedy,
                obj.id.clone(),
                format!("w={} lp={v} greedy={greedy}", show(&obj.weights)),
            ),
            (status, _) => CheckLine::new(
                false,
                obj.id.clone(),
                format!("w={} lp={status:?} greedy={greedy}", show(&obj.weights)),
            ),
        };
        lines.push(line);
    }
    VerifyReport { seed, trials, lines }
}

/// Above this many edges the feasibility half samples forests instead of
/// enumerating them.
pub const EXHAUSTIVE_FOREST_EDGES: usize = 20;

/// `count` seeded random forests plus the empty forest: random spanning
/// forests (Kruskal over a shuffled edge order) thinned by fair coins.
pub fn sample_forests(g: &Graph, count: usize, seed: u64) -> Vec<EdgeSubset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = vec![EdgeSubset::empty(g.m())];
    seen.insert(out[0].to_hex());
    let mut order: Vec<usize> = (0..g.m()).collect();
    for _ in 0..count {
        order.shuffle(&mut rng);
        let mut uf = UnionFind::new(g.n());
        let mut f = EdgeSubset::empty(g.m());
        for &e in &order {
            let (a, b) = g.edge(e);
            if uf.union(a, b) && rng.gen_bool(0.5) {
                f.insert(e);
            }
        }
        if seen.insert(f.to_hex()) {
            out.push(f);
        }
    }
    out
}

fn feasibility_half(
    g: &Graph,
    sys: &LinearSystem,
    caps: EnumerationCaps,
    trials: usize,
    seed: u64,
    lines: &mut Vec<CheckLine>,
) {
    let sampled = g.m() > EXHAUSTIVE_FOREST_EDGES.min(caps.max_edges);
    let forests = if sampled {
        sample_forests(g, trials.max(1), seed)
    } else {
        match enumerate_forests(g, caps) {
            Ok(f) => f,
            Err(e) => {
                lines.push(CheckLine::new(false, "feasibility", format!("cannot enumerate forests: {e}")));
                return;
            }
        }
    };
    let witness = WitnessPlan::new(g, sys);
    let mode = if witness.is_some() { "witness" } else { "lp" };
    let mut failures = 0;
    for f in &forests {
        let outcome = match &witness {
            Some(plan) => plan.point(g, sys, f).map(|p| sys.first_violation(&p).map(|v| describe(&v))),
            None => Ok(lp_infeasible(sys, f)),
        };
        let msg = match outcome {
            Ok(None) => continue,
            Ok(Some(m)) | Err(m) => m,
        };
        failures += 1;
        lines.push(CheckLine::new(false, format!("feasibility.forest.{}", f.to_hex()), msg));
    }
    if failures == 0 {
        lines.push(CheckLine::new(
            true,
            "feasibility",
            format!(
                "forests={}{} rows={} mode={mode}",
                forests.len(),
                if sampled { " sampled" } else { "" },
                sys.size() + sys.equalities.len()
            ),
        ));
    }
}

fn describe(v: &Violation) -> String {
    format!("row={:?}#{} lhs={} rhs={}", v.kind, v.index, v.lhs, v.rhs)
}

/// With `x` fixed to the forest, a message if no completion is feasible.
fn lp_infeasible(sys: &LinearSystem, f: &EdgeSubset) -> Option<String> {
    let mut fixed = sys.clone();
    for e in 0..sys.num_orig {
        let v = Rational::from(usize::from(f.contains(e)));
        fixed.add_equality(Row::new([(e, Rational::one())], v));
    }
    (!LpSolver::new(&fixed).is_feasible()).then(|| "no feasible auxiliary completion".to_string())
}

/// Per arc-system block: the host it lives on and, for each of its
/// variables, the position of the arc in [`q_arcs`] of that host.
struct BlockPlan {
    sub: Subgraph,
    root: usize,
    vars: Vec<(usize, usize)>,
}

struct WitnessPlan {
    blocks: Vec<BlockPlan>,
}

impl WitnessPlan {
    /// `None` when some auxiliary variable is not an arc tag this crate
    /// writes, or the tags do not describe complete arc systems of `g`.
    fn new(g: &Graph, sys: &LinearSystem) -> Option<Self> {
        let mut groups: BTreeMap<String, Vec<(usize, crate::formulations::ArcTag)>> = BTreeMap::new();
        for (v, tag) in sys.tags.iter().enumerate().skip(sys.num_orig) {
            let t = parse_arc_tag(tag)?;
            groups.entry(t.block.clone()).or_default().push((v, t));
        }
        let mut blocks = Vec::new();
        for (_, arcs) in groups {
            let root = arcs[0].1.root;
            let mut host = VertexSubset::empty(g.n());
            for (_, t) in &arcs {
                if t.root != root {
                    return None;
                }
                if let Node::Vertex(v) = t.tail {
                    if v >= g.n() {
                        return None;
                    }
                    host.insert(v);
                }
            }
            if !host.contains(root) {
                return None;
            }
            let sub = g.induced_subgraph(&host);
            let local_root = sub.vertex_map.iter().position(|&v| v == root)?;
            let lift = |n: Node| match n {
                Node::Vertex(v) => Node::Vertex(sub.vertex_map[v]),
                Node::Apex => Node::Apex,
            };
            let index: BTreeMap<(Node, Node), usize> = q_arcs(&sub.graph)
                .into_iter()
                .enumerate()
                .map(|(i, (t, h))| ((lift(t), lift(h)), i))
                .collect();
            if index.len() != arcs.len() {
                return None;
            }
            let vars = arcs
                .iter()
                .map(|(v, t)| index.get(&(t.tail, t.head)).map(|&i| (*v, i)))
                .collect::<Option<Vec<_>>>()?;
            blocks.push(BlockPlan {
                sub,
                root: local_root,
                vars,
            });
        }
        Some(WitnessPlan { blocks })
    }

    fn point(&self, g: &Graph, sys: &LinearSystem, f: &EdgeSubset) -> Result<Vec<Rational>, String> {
        let mut p = vec![Rational::zero(); sys.num_vars()];
        for e in f.iter() {
            p[e] = Rational::one();
        }
        debug_assert_eq!(f.universe(), g.m());
        for b in &self.blocks {
            let local = b.sub.restrict_edges(f);
            let z = forest_witness(&b.sub.graph, b.root, &local).map_err(|e| e.to_string())?;
            for &(v, i) in &b.vars {
                p[v] = z[i].clone();
            }
        }
        Ok(p)
    }
}
