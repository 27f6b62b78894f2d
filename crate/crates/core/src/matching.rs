//! Matching and assignment problems on the weighted graph `G(H)`.
//!
//! Four problems live here: cardinality matching `B(G)` and its covering dual
//! `DB(G)`, and the cardinality-μ assignment `A(G,w,μ)` with its dual
//! `DA(G,w,μ)`. All values are integers; the incidence matrix is never built.
//! "Each vertex used at most once" is the matching property and the dual
//! constraint is checked edge by edge.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pattern::LaurentPattern;

/// `G(H) = (R, C, E)` with `w_{r,c} = -min{ i : (H_i)_{r,c} != 0 }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBipartiteGraph {
    nrows: usize,
    ncols: usize,
    weights: BTreeMap<(usize, usize), i64>,
}

impl WeightedBipartiteGraph {
    /// Builds a graph from explicit edges; weights must be nonpositive.
    pub fn new<I>(nrows: usize, ncols: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), i64)>,
    {
        let mut weights = BTreeMap::new();
        for ((r, c), w) in edges {
            if r >= nrows || c >= ncols {
                return Err(Error::Input(format!("edge ({r}, {c}) out of range")));
            }
            if w > 0 {
                return Err(Error::Input(format!("edge ({r}, {c}) has positive weight {w}")));
            }
            if weights.insert((r, c), w).is_some() {
                return Err(Error::Input(format!("edge ({r}, {c}) listed twice")));
            }
        }
        Ok(Self { nrows, ncols, weights })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, r: usize, c: usize) -> Option<i64> {
        self.weights.get(&(r, c)).copied()
    }

    /// Edges with weights, ordered by `(row, col)`.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.weights.iter().map(|(&e, &w)| (e, w))
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nrows];
        for &(r, c) in self.weights.keys() {
            adj[r].push(c);
        }
        adj
    }
}

pub fn build_graph(h: &LaurentPattern) -> WeightedBipartiteGraph {
    let mut weights = BTreeMap::new();
    // coefficients arrive in increasing index order, so the first hit is the minimum
    for (i, support) in h.coefficients() {
        for &e in support.nonzeros() {
            weights.entry(e).or_insert(-(i as i64));
        }
    }
    WeightedBipartiteGraph { nrows: h.nrows(), ncols: h.ncols(), weights }
}

/// The 0/1 variable `X`, stored as its set of selected edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: BTreeSet<(usize, usize)>,
}

impl Matching {
    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Self {
        Self { edges: edges.into_iter().collect() }
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.edges.contains(&(r, c))
    }

    /// `Σ X_{r,c} w_{r,c}`; panics on a non-edge, so call [`Matching::check`] first.
    pub fn weight(&self, g: &WeightedBipartiteGraph) -> i64 {
        self.edges.iter().map(|&(r, c)| g.weight(r, c).expect("matched non-edge")).sum()
    }

    /// Admissibility: every selected pair is an edge and no vertex is used twice.
    pub fn check(&self, g: &WeightedBipartiteGraph) -> Result<()> {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for &(r, c) in &self.edges {
            if g.weight(r, c).is_none() {
                return Err(Error::Certificate(format!("matched pair ({r}, {c}) is not an edge")));
            }
            if !rows.insert(r) {
                return Err(Error::Certificate(format!("row {r} matched twice")));
            }
            if !cols.insert(c) {
                return Err(Error::Certificate(format!("column {c} matched twice")));
            }
        }
        Ok(())
    }
}

/// Feasible point of `DB(G)`: `y_r + z_c >= 1` on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub y: Vec<i64>,
    pub z: Vec<i64>,
}

impl Cover {
    pub fn value(&self) -> i64 {
        self.y.iter().sum::<i64>() + self.z.iter().sum::<i64>()
    }

    pub fn check(&self, g: &WeightedBipartiteGraph) -> Result<()> {
        check_shape(&self.y, &self.z, g)?;
        for ((r, c), _) in g.edges() {
            if self.y[r] + self.z[c] < 1 {
                return Err(Error::Certificate(format!("edge ({r}, {c}) is not covered")));
            }
        }
        Ok(())
    }
}

/// Feasible point of `DA(G,w,μ)`: `y_r + z_c + λ >= w_{r,c}` on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentDual {
    pub y: Vec<i64>,
    pub z: Vec<i64>,
    pub lambda: i64,
}

impl AssignmentDual {
    /// `λμ + Σy + Σz`.
    pub fn objective(&self, mu: usize) -> i64 {
        self.lambda * mu as i64 + self.y.iter().sum::<i64>() + self.z.iter().sum::<i64>()
    }

    pub fn check(&self, g: &WeightedBipartiteGraph) -> Result<()> {
        check_shape(&self.y, &self.z, g)?;
        for ((r, c), w) in g.edges() {
            let lhs = self.y[r] + self.z[c] + self.lambda;
            if lhs < w {
                return Err(Error::Certificate(format!(
                    "edge ({r}, {c}): y + z + lambda = {lhs} < w = {w}"
                )));
            }
        }
        Ok(())
    }
}

fn check_shape(y: &[i64], z: &[i64], g: &WeightedBipartiteGraph) -> Result<()> {
    if y.len() != g.nrows || z.len() != g.ncols {
        return Err(Error::Certificate("dual vector has the wrong length".into()));
    }
    if let Some(r) = y.iter().position(|&v| v < 0) {
        return Err(Error::Certificate(format!("y[{r}] is negative")));
    }
    if let Some(c) = z.iter().position(|&v| v < 0) {
        return Err(Error::Certificate(format!("z[{c}] is negative")));
    }
    Ok(())
}

/// Maximum cardinality matching (Hopcroft-Karp) with a König vertex cover of
/// the same size.
pub fn max_matching(g: &WeightedBipartiteGraph) -> (Matching, Cover) {
    let adj = g.adjacency();
    let (n, m) = (g.nrows, g.ncols);
    let mut mate_row: Vec<Option<usize>> = vec![None; n];
    let mut mate_col: Vec<Option<usize>> = vec![None; m];
    let mut layer = vec![usize::MAX; n];

    loop {
        // BFS layers from free rows
        let mut queue = VecDeque::new();
        for r in 0..n {
            if mate_row[r].is_none() {
                layer[r] = 0;
                queue.push_back(r);
            } else {
                layer[r] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(r) = queue.pop_front() {
            for &c in &adj[r] {
                match mate_col[c] {
                    None => found = true,
                    Some(r2) if layer[r2] == usize::MAX => {
                        layer[r2] = layer[r] + 1;
                        queue.push_back(r2);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; n];
        for r in 0..n {
            if mate_row[r].is_none() {
                hk_dfs(r, &adj, &mut mate_row, &mut mate_col, &mut layer, &mut next);
            }
        }
    }

    // König: Z = vertices reachable from free rows by alternating paths.
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; m];
    let mut queue: VecDeque<usize> = (0..n).filter(|&r| mate_row[r].is_none()).collect();
    for &r in &queue {
        row_seen[r] = true;
    }
    while let Some(r) = queue.pop_front() {
        for &c in &adj[r] {
            if !col_seen[c] {
                col_seen[c] = true;
                if let Some(r2) = mate_col[c] {
                    if !row_seen[r2] {
                        row_seen[r2] = true;
                        queue.push_back(r2);
                    }
                }
            }
        }
    }
    let cover = Cover {
        y: row_seen.iter().map(|&s| i64::from(!s)).collect(),
        z: col_seen.iter().map(|&s| i64::from(s)).collect(),
    };
    let matching = Matching::from_edges(
        mate_row.iter().enumerate().filter_map(|(r, c)| c.map(|c| (r, c))),
    );
    (matching, cover)
}

fn hk_dfs(
    r: usize,
    adj: &[Vec<usize>],
    mate_row: &mut [Option<usize>],
    mate_col: &mut [Option<usize>],
    layer: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[r] < adj[r].len() {
        let c = adj[r][next[r]];
        next[r] += 1;
        let ok = match mate_col[c] {
            None => true,
            Some(r2) => {
                layer[r2] == layer[r] + 1 && hk_dfs(r2, adj, mate_row, mate_col, layer, next)
            }
        };
        if ok {
            mate_row[r] = Some(c);
            mate_col[c] = Some(r);
            return true;
        }
    }
    layer[r] = usize::MAX;
    false
}

/// Optimal primal/dual pair for one cardinality μ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurvePoint {
    pub matching: Matching,
    pub dual: AssignmentDual,
}

/// `δ(μ)` for `μ = 0..=μ̂` with a certificate pair at every point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaCurve {
    pub mu_hat: usize,
    pub delta: Vec<i64>,
    pub points: Vec<CurvePoint>,
}

impl DeltaCurve {
    /// `δ(μ) - δ(μ-1)` for `μ = 1..=μ̂`.
    pub fn slopes(&self) -> Vec<i64> {
        self.delta.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Re-checks every stored certificate and the curve's shape.
    pub fn verify(&self, g: &WeightedBipartiteGraph) -> Result<()> {
        if self.delta.len() != self.mu_hat + 1 || self.points.len() != self.mu_hat + 1 {
            return Err(Error::Certificate("curve length does not match mu_hat".into()));
        }
        if self.delta[0] != 0 {
            return Err(Error::Certificate("delta(0) != 0".into()));
        }
        let slopes = self.slopes();
        if let Some(i) = slopes.iter().position(|&s| s > 0) {
            return Err(Error::Certificate(format!("delta increases at mu = {}", i + 1)));
        }
        if let Some(i) = slopes.windows(2).position(|s| s[1] > s[0]) {
            return Err(Error::Certificate(format!("delta not concave at mu = {}", i + 1)));
        }
        for (mu, p) in self.points.iter().enumerate() {
            p.matching.check(g)?;
            p.dual.check(g)?;
            if p.matching.len() != mu {
                return Err(Error::Certificate(format!("point {mu} has cardinality {}", p.matching.len())));
            }
            let primal = p.matching.weight(g);
            if primal != self.delta[mu] || p.dual.objective(mu) != primal {
                return Err(Error::Certificate(format!(
                    "mu = {mu}: primal {primal}, dual {}, delta {}",
                    p.dual.objective(mu),
                    self.delta[mu]
                )));
            }
        }
        Ok(())
    }
}

/// Successive shortest augmenting paths on the network
/// `s -> R -> C -> t` with unit capacities and edge costs `cost_{r,c}`.
///
/// Potentials are kept for every vertex, including unreachable ones, by
/// capping each Dijkstra distance at the distance of `t`. The invariants are:
/// reduced costs are nonnegative on every residual arc, zero on matched
/// edges, free rows have potential 0 and `pot_t` equals the actual cost of
/// the last augmenting path.
struct ShortestPathAssignment {
    nrows: usize,
    ncols: usize,
    adj: Vec<Vec<(usize, i64)>>,
    mate_row: Vec<Option<(usize, i64)>>,
    mate_col: Vec<Option<usize>>,
    pot_row: Vec<i64>,
    pot_col: Vec<i64>,
    pot_t: i64,
}

struct Search {
    dist_row: Vec<Option<i64>>,
    dist_col: Vec<Option<i64>>,
    parent_col: Vec<usize>,
    /// Reduced distance to `t` and the free column that reaches it.
    sink: Option<(i64, usize)>,
}

impl ShortestPathAssignment {
    fn new(nrows: usize, ncols: usize, costs: &BTreeMap<(usize, usize), i64>) -> Self {
        let mut adj = vec![Vec::new(); nrows];
        let mut pot_col: Vec<Option<i64>> = vec![None; ncols];
        for (&(r, c), &cost) in costs {
            adj[r].push((c, cost));
            pot_col[c] = Some(pot_col[c].map_or(cost, |p| p.min(cost)));
        }
        let pot_t = pot_col.iter().flatten().copied().min().unwrap_or(0);
        Self {
            nrows,
            ncols,
            adj,
            mate_row: vec![None; nrows],
            mate_col: vec![None; ncols],
            pot_row: vec![0; nrows],
            // isolated columns are never reached; park them at pot_t
            pot_col: pot_col.into_iter().map(|p| p.unwrap_or(pot_t)).collect(),
            pot_t,
        }
    }

    fn search(&self) -> Search {
        let (n, m) = (self.nrows, self.ncols);
        let sink = n + m;
        let mut tentative = vec![i64::MAX; n + m + 1];
        let mut done = vec![false; n + m + 1];
        let mut parent_col = vec![usize::MAX; m];
        let mut sink_from = usize::MAX;
        let mut heap = BinaryHeap::new();
        for r in 0..n {
            if self.mate_row[r].is_none() {
                tentative[r] = -self.pot_row[r];
                heap.push(Reverse((tentative[r], r)));
            }
        }
        let mut result = Search {
            dist_row: vec![None; n],
            dist_col: vec![None; m],
            parent_col: Vec::new(),
            sink: None,
        };
        while let Some(Reverse((d, v))) = heap.pop() {
            if done[v] || d > tentative[v] {
                continue;
            }
            done[v] = true;
            if v == sink {
                result.sink = Some((d, sink_from));
                break;
            }
            let mut relax = |u: usize, nd: i64, heap: &mut BinaryHeap<Reverse<(i64, usize)>>| {
                debug_assert!(nd >= d, "negative reduced cost");
                if nd < tentative[u] {
                    tentative[u] = nd;
                    heap.push(Reverse((nd, u)));
                    true
                } else {
                    false
                }
            };
            if v < n {
                let r = v;
                result.dist_row[r] = Some(d);
                let own = self.mate_row[r].map(|(c, _)| c);
                for &(c, cost) in &self.adj[r] {
                    if Some(c) == own {
                        continue;
                    }
                    let nd = d + cost + self.pot_row[r] - self.pot_col[c];
                    if relax(n + c, nd, &mut heap) {
                        parent_col[c] = r;
                    }
                }
            } else {
                let c = v - n;
                result.dist_col[c] = Some(d);
                match self.mate_col[c] {
                    Some(r) => {
                        let cost = self.mate_row[r].expect("inconsistent mates").1;
                        let nd = d - cost + self.pot_col[c] - self.pot_row[r];
                        relax(r, nd, &mut heap);
                    }
                    None => {
                        let nd = d + self.pot_col[c] - self.pot_t;
                        if relax(sink, nd, &mut heap) {
                            sink_from = c;
                        }
                    }
                }
            }
        }
        result.parent_col = parent_col;
        result
    }

    /// Adds `min(dist, cap)` to every potential.
    fn shift(&mut self, s: &Search, cap: i64) {
        for (p, d) in self.pot_row.iter_mut().zip(&s.dist_row) {
            *p += d.map_or(cap, |d| d.min(cap));
        }
        for (p, d) in self.pot_col.iter_mut().zip(&s.dist_col) {
            *p += d.map_or(cap, |d| d.min(cap));
        }
        self.pot_t += cap;
    }

    fn augment(&mut self, s: &Search) {
        let (_, mut c) = s.sink.expect("no augmenting path");
        loop {
            let r = s.parent_col[c];
            let cost = self.adj[r].iter().find(|&&(c2, _)| c2 == c).unwrap().1;
            let prev = self.mate_row[r].map(|(c2, _)| c2);
            self.mate_row[r] = Some((c, cost));
            self.mate_col[c] = Some(r);
            match prev {
                Some(c2) => c = c2,
                None => break,
            }
        }
    }

    fn matching(&self) -> Matching {
        Matching::from_edges(
            self.mate_row.iter().enumerate().filter_map(|(r, m)| m.map(|(c, _)| (r, c))),
        )
    }

    /// Dual read off the potentials: `y_r = π(r)`, `z_c = π(t) - π(c)` on
    /// matched columns, `λ = -π(t)`.
    fn dual(&self) -> AssignmentDual {
        AssignmentDual {
            y: self.pot_row.clone(),
            z: (0..self.ncols)
                .map(|c| if self.mate_col[c].is_some() { self.pot_t - self.pot_col[c] } else { 0 })
                .collect(),
            lambda: -self.pot_t,
        }
    }
}

/// The whole δ-curve in one sweep of successive shortest paths on costs `-w`.
///
/// Each augmentation adds one unit of cardinality at the cheapest possible
/// weight loss, so the slopes come out nonincreasing. The dual stored at
/// point μ uses the left slope `δ(μ) - δ(μ-1)` as λ (at μ = 0, the right one).
pub fn delta_curve(g: &WeightedBipartiteGraph) -> DeltaCurve {
    let costs = g.weights.iter().map(|(&e, &w)| (e, -w)).collect();
    let mut engine = ShortestPathAssignment::new(g.nrows, g.ncols, &costs);
    let mut delta = vec![0];
    let mut points = vec![CurvePoint { matching: Matching::default(), dual: engine.dual() }];
    loop {
        let s = engine.search();
        let Some((theta, _)) = s.sink else { break };
        engine.shift(&s, theta);
        engine.augment(&s);
        delta.push(delta.last().unwrap() - engine.pot_t);
        points.push(CurvePoint { matching: engine.matching(), dual: engine.dual() });
    }
    DeltaCurve { mu_hat: delta.len() - 1, delta, points }
}

/// The lexicographically smallest optimal μ-matching (edges compared as
/// sorted `(row, col)` lists).
///
/// Greedy over edges in order: keep an edge if some optimal μ-matching
/// extends the edges kept so far with it. Only edges tight under the stored
/// optimal dual can appear in an optimal matching, so the rest are skipped.
pub fn canonical_matching(g: &WeightedBipartiteGraph, curve: &DeltaCurve, mu: usize) -> Matching {
    let dual = &curve.points[mu].dual;
    let mut chosen = Vec::new();
    let (mut row_used, mut col_used) = (vec![false; g.nrows], vec![false; g.ncols]);
    let mut weight = 0;
    for (&(r, c), &w) in &g.weights {
        if chosen.len() == mu {
            break;
        }
        if row_used[r] || col_used[c] || dual.y[r] + dual.z[c] + dual.lambda != w {
            continue;
        }
        let rest = WeightedBipartiteGraph {
            nrows: g.nrows,
            ncols: g.ncols,
            weights: g
                .weights
                .iter()
                .filter(|&(&(r2, c2), _)| !row_used[r2] && !col_used[c2] && r2 != r && c2 != c)
                .map(|(&e, &w2)| (e, w2))
                .collect(),
        };
        let need = mu - chosen.len() - 1;
        let best = delta_curve(&rest).delta.get(need).copied();
        if best == Some(curve.delta[mu] - weight - w) {
            chosen.push((r, c));
            row_used[r] = true;
            col_used[c] = true;
            weight += w;
        }
    }
    debug_assert_eq!(chosen.len(), mu);
    Matching::from_edges(chosen)
}

/// Largest μ whose left slope is at least `-k`, paired with `λ = -k`.
///
/// By concavity the right-slope condition then holds too.
pub fn select_mu_for_lambda(curve: &DeltaCurve, k: usize) -> (usize, i64) {
    let lambda = -(k as i64);
    let mu = curve.slopes().iter().take_while(|&&s| s >= lambda).count();
    (mu, lambda)
}

/// Whether `λ` lies in the subdifferential of δ at μ.
pub fn lambda_admissible(curve: &DeltaCurve, mu: usize, lambda: i64) -> bool {
    if mu > curve.mu_hat {
        return false;
    }
    let left = mu == 0 || lambda <= curve.delta[mu] - curve.delta[mu - 1];
    let right = mu == curve.mu_hat || lambda >= curve.delta[mu + 1] - curve.delta[mu];
    left && right
}

/// An optimal `DA(G,w,μ)` dual with prescribed `λ`.
///
/// Potentials of a maximum weight matching under `max(w - λ, 0)` give `(y, z)`.
/// The result is verified against `x`: feasibility on every edge and
/// `λμ + Σy + Σz = Σ_X w`.
pub fn dual_for_fixed_lambda(
    g: &WeightedBipartiteGraph,
    mu: usize,
    lambda: i64,
    x: &Matching,
) -> Result<AssignmentDual> {
    x.check(g)?;
    if x.len() != mu {
        return Err(Error::Certificate(format!("matching has {} edges, expected {mu}", x.len())));
    }
    let costs = g.weights.iter().map(|(&e, &w)| (e, -(w - lambda).max(0))).collect();
    let mut engine = ShortestPathAssignment::new(g.nrows, g.ncols, &costs);
    loop {
        let s = engine.search();
        match s.sink {
            Some((theta, _)) if theta + engine.pot_t < 0 => {
                engine.shift(&s, theta);
                engine.augment(&s);
            }
            _ => {
                // land on pot_t = 0: the dual of the shifted problem at λ' = 0
                let cap = -engine.pot_t;
                debug_assert!(cap >= 0 && s.sink.map_or(true, |(t, _)| cap <= t));
                engine.shift(&s, cap);
                break;
            }
        }
    }
    let mut dual = engine.dual();
    debug_assert_eq!(dual.lambda, 0);
    dual.lambda = lambda;
    dual.check(g)?;
    let primal = x.weight(g);
    if dual.objective(mu) != primal {
        return Err(Error::Certificate(format!(
            "dual objective {} != primal {primal} at mu = {mu}, lambda = {lambda}",
            dual.objective(mu)
        )));
    }
    Ok(dual)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ex_a() -> WeightedBipartiteGraph {
        WeightedBipartiteGraph::new(2, 2, [((0, 0), 0), ((0, 1), -1), ((1, 0), -1)]).unwrap()
    }

    fn ex_b() -> WeightedBipartiteGraph {
        WeightedBipartiteGraph::new(2, 2, [((0, 0), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 0)])
            .unwrap()
    }

    #[test]
    fn build_graph_takes_minimum_index() {
        let h = LaurentPattern::from_positions(2, 2, [(0, vec![(0, 0)]), (1, vec![(0, 1), (1, 0)])])
            .unwrap();
        assert_eq!(build_graph(&h), ex_a());
        let h = LaurentPattern::from_positions(1, 1, [(2, vec![(0, 0)]), (0, vec![(0, 0)])]).unwrap();
        assert_eq!(build_graph(&h).edges().collect::<Vec<_>>(), vec![((0, 0), 0)]);
        let zero = LaurentPattern::from_positions(2, 3, Vec::<(usize, Vec<_>)>::new()).unwrap();
        assert_eq!(build_graph(&zero).edge_count(), 0);
    }

    #[test]
    fn rejects_positive_weights() {
        assert!(WeightedBipartiteGraph::new(1, 1, [((0, 0), 1)]).is_err());
    }

    #[test]
    fn max_matching_examples() {
        let (m, cover) = max_matching(&ex_a());
        assert_eq!(m.len(), 2);
        assert_eq!(cover.value(), 2);
        cover.check(&ex_a()).unwrap();

        let empty = WeightedBipartiteGraph::new(3, 2, []).unwrap();
        let (m, cover) = max_matching(&empty);
        assert!(m.is_empty());
        assert_eq!(cover, Cover { y: vec![0; 3], z: vec![0; 2] });

        let (m, cover) = max_matching(&ex_b());
        assert_eq!(m.len(), 2);
        assert_eq!(cover.value(), 2);
    }

    #[test]
    fn delta_curve_examples() {
        let g = ex_a();
        let curve = delta_curve(&g);
        assert_eq!(curve.delta, vec![0, 0, -2]);
        assert_eq!(curve.points[1].matching, Matching::from_edges([(0, 0)]));
        assert_eq!(curve.points[2].matching, Matching::from_edges([(0, 1), (1, 0)]));
        curve.verify(&g).unwrap();

        let empty = WeightedBipartiteGraph::new(2, 2, []).unwrap();
        let curve = delta_curve(&empty);
        assert_eq!(curve.delta, vec![0]);
        curve.verify(&empty).unwrap();

        let curve = delta_curve(&ex_b());
        assert_eq!(curve.delta, vec![0, 0, 0]);
        curve.verify(&ex_b()).unwrap();
    }

    #[test]
    fn canonical_matching_prefers_small_edges() {
        // all four edges weight 0: both perfect matchings are optimal
        let g = WeightedBipartiteGraph::new(2, 2, [((0, 0), 0), ((0, 1), 0), ((1, 0), 0), ((1, 1), 0)]).unwrap();
        let curve = delta_curve(&g);
        assert_eq!(canonical_matching(&g, &curve, 1).edges().iter().copied().collect::<Vec<_>>(), [(0, 0)]);
        assert_eq!(canonical_matching(&g, &curve, 2).edges().iter().copied().collect::<Vec<_>>(), [(0, 0), (1, 1)]);
        let a = ex_a();
        let curve = delta_curve(&a);
        assert_eq!(canonical_matching(&a, &curve, 1).edges().iter().copied().collect::<Vec<_>>(), [(0, 0)]);
        assert_eq!(canonical_matching(&a, &curve, 2).edges().iter().copied().collect::<Vec<_>>(), [(0, 1), (1, 0)]);
        assert!(canonical_matching(&a, &curve, 0).is_empty());
    }

    #[test]
    fn mu_selection() {
        let curve = delta_curve(&ex_a());
        assert_eq!(select_mu_for_lambda(&curve, 2), (2, -2));
        assert_eq!(select_mu_for_lambda(&curve, 1), (1, -1));
        assert!(lambda_admissible(&curve, 2, -2));
        assert!(lambda_admissible(&curve, 1, -1));
        assert!(!lambda_admissible(&curve, 2, -1));
        let empty = delta_curve(&WeightedBipartiteGraph::new(2, 2, []).unwrap());
        assert_eq!(select_mu_for_lambda(&empty, 7), (0, -7));
    }

    #[test]
    fn fixed_lambda_duals() {
        let g = ex_a();
        let x = Matching::from_edges([(0, 1), (1, 0)]);
        let d = dual_for_fixed_lambda(&g, 2, -2, &x).unwrap();
        assert_eq!(d.lambda, -2);
        assert_eq!(d.objective(2), -2);
        assert_eq!(d.y.iter().sum::<i64>() + d.z.iter().sum::<i64>(), 2);

        let d = dual_for_fixed_lambda(&g, 0, 0, &Matching::default()).unwrap();
        assert_eq!((d.y.clone(), d.z.clone()), (vec![0, 0], vec![0, 0]));
        // λ below max w is outside the subdifferential at μ = 0
        assert!(dual_for_fixed_lambda(&g, 0, -1, &Matching::default()).is_err());

        let d = dual_for_fixed_lambda(&ex_b(), 2, -2, &Matching::from_edges([(0, 0), (1, 1)]))
            .unwrap();
        assert_eq!(d.objective(2), 0);
        assert_eq!(d.y.iter().sum::<i64>() + d.z.iter().sum::<i64>(), 4);
    }

    #[test]
    fn hand_checked_ex_a_dual_is_feasible() {
        let d = AssignmentDual { y: vec![1, 0], z: vec![1, 0], lambda: -2 };
        d.check(&ex_a()).unwrap();
        assert_eq!(d.objective(2), -2);
        let bad = AssignmentDual { y: vec![0, 0], z: vec![1, 0], lambda: -2 };
        let err = bad.check(&ex_a()).unwrap_err();
        assert!(err.to_string().contains("(0, 0)"), "{err}");
    }
}
