//! Dual-graph calculus for stable marked nodal curves and maps.
//!
//! A labeled dual graph records the combinatorial type of a nodal curve:
//! vertices carry component genera (and degrees, for maps), edges are nodes
//! (loops allowed), and flags are the totally ordered marked points.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degeneration invalid: {0}")]
    DegenerationInvalid(String),
}

/// Stability mode: plain curves, or maps where nonzero-degree components are exempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityMode {
    Curve,
    Map,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexLabel {
    pub genus: u32,
    pub degree: Option<i64>,
}

/// Combinatorial type of a nodal marked curve or map.
///
/// Edges are stored as unordered pairs `(a, b)` with `a <= b`; `flags[i]` is the
/// vertex carrying the marked point with order `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledDualGraph {
    pub vertices: Vec<VertexLabel>,
    pub edges: Vec<(usize, usize)>,
    pub flags: Vec<usize>,
}

impl LabeledDualGraph {
    pub fn new(
        vertices: Vec<VertexLabel>,
        edges: Vec<(usize, usize)>,
        flags: Vec<usize>,
    ) -> Result<Self, GraphError> {
        let n = vertices.len();
        if n == 0 {
            return Err(GraphError::InvalidInput("graph needs at least one vertex".into()));
        }
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(GraphError::InvalidInput(format!("edge ({a},{b}) out of range")));
            }
        }
        for &v in &flags {
            if v >= n {
                return Err(GraphError::InvalidInput(format!("flag vertex {v} out of range")));
            }
        }
        let g = LabeledDualGraph { vertices, edges, flags };
        if !g.is_connected() {
            return Err(GraphError::InvalidInput("graph is disconnected".into()));
        }
        Ok(g)
    }

    /// Convenience constructor for curve-mode graphs (no degrees).
    pub fn curve(
        genera: Vec<u32>,
        edges: Vec<(usize, usize)>,
        flags: Vec<usize>,
    ) -> Result<Self, GraphError> {
        LabeledDualGraph::new(
            genera.into_iter().map(|g| VertexLabel { genus: g, degree: None }).collect(),
            edges,
            flags,
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Edge-ends at `v`, counting loops twice.
    pub fn edge_ends(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    /// Marked points plus edge-ends at `v` (loops counted twice).
    pub fn special_points(&self, v: usize) -> usize {
        self.edge_ends(v) + self.flags.iter().filter(|&&f| f == v).count()
    }

    pub fn has_degrees(&self) -> bool {
        self.vertices.iter().all(|l| l.degree.is_some())
    }
}

/// Arithmetic genus: sum of vertex genera plus the first Betti number of the
/// underlying graph (`|E| - |V| + 1` for connected graphs, loops counted).
pub fn genus(graph: &LabeledDualGraph) -> Result<u64, GraphError> {
    if !graph.is_connected() {
        return Err(GraphError::InvalidInput("genus of a disconnected graph".into()));
    }
    let sum: u64 = graph.vertices.iter().map(|l| l.genus as u64).sum();
    let betti = graph.edges.len() as u64 + 1 - graph.vertices.len() as u64;
    Ok(sum + betti)
}

/// Stability: every vertex needs `2 g_v + (special points) >= 3`; in map mode,
/// vertices carrying nonzero degree are exempt.
pub fn is_stable(graph: &LabeledDualGraph, mode: StabilityMode) -> Result<bool, GraphError> {
    if mode == StabilityMode::Map && !graph.has_degrees() {
        return Err(GraphError::InvalidInput("map-mode stability needs degrees on all vertices".into()));
    }
    for (v, label) in graph.vertices.iter().enumerate() {
        if mode == StabilityMode::Map && label.degree.unwrap_or(0) != 0 {
            continue;
        }
        if 2 * label.genus as usize + graph.special_points(v) < 3 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The designated output for the unstable range `2g + k < 3`: a single point.
pub fn point_graph() -> LabeledDualGraph {
    LabeledDualGraph::curve(vec![0], vec![], vec![]).unwrap()
}

/// Collapses unstable genus-zero vertices until the graph is stable.
///
/// A sphere vertex with one edge-end (plus at most one flag) is deleted and its
/// flag, if any, moves to the attachment vertex; a sphere vertex with exactly
/// two edge-ends from distinct edges is deleted and the edges are fused. In the
/// unstable range `2g + k < 3` the designated point graph is returned.
pub fn stabilize(graph: &LabeledDualGraph) -> Result<LabeledDualGraph, GraphError> {
    let g = genus(graph)?;
    let k = graph.flag_count() as u64;
    if 2 * g + k < 3 {
        return Ok(point_graph());
    }
    let mut cur = graph.clone();
    loop {
        let unstable = (0..cur.vertex_count()).find(|&v| {
            cur.vertices[v].genus == 0 && cur.special_points(v) < 3
        });
        let Some(v) = unstable else { return Ok(cur) };
        let ends = cur.edge_ends(v);
        let incident: Vec<usize> = cur
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(i, _)| i)
            .collect();
        match ends {
            1 => {
                // leaf sphere: drop it; its flag (if any) lands on the neighbor
                let e = incident[0];
                let (a, b) = cur.edges[e];
                let neighbor = if a == v { b } else { a };
                cur.edges.remove(e);
                for f in cur.flags.iter_mut() {
                    if *f == v {
                        *f = neighbor;
                    }
                }
                remove_vertex(&mut cur, v);
            }
            2 => {
                if incident.len() == 1 {
                    // a single loop carries both ends; connectivity forces the
                    // graph to be this one vertex, which is the unstable range
                    // handled above
                    return Err(GraphError::InvalidInput(
                        "isolated loop vertex escaped the unstable-range check".into(),
                    ));
                }
                if !cur.flags.iter().all(|&f| f != v) {
                    // two ends plus a flag is three special points; unreachable
                    return Err(GraphError::InvalidInput("stabilize internal error".into()));
                }
                let (e1, e2) = (incident[0], incident[1]);
                let other = |e: usize| {
                    let (a, b) = cur.edges[e];
                    if a == v { b } else { a }
                };
                let (x, y) = (other(e1), other(e2));
                // remove higher index first
                cur.edges.remove(e2);
                cur.edges.remove(e1);
                cur.edges.push(if x <= y { (x, y) } else { (y, x) });
                remove_vertex(&mut cur, v);
            }
            _ => {
                // ends == 0 only happens for a single-vertex graph; that case
                // is the unstable range handled above
                return Err(GraphError::InvalidInput(
                    "unstable vertex with no edges escaped the unstable-range check".into(),
                ));
            }
        }
    }
}

fn remove_vertex(g: &mut LabeledDualGraph, v: usize) {
    g.vertices.remove(v);
    let fix = |x: usize| if x > v { x - 1 } else { x };
    for e in g.edges.iter_mut() {
        *e = (fix(e.0), fix(e.1));
    }
    for f in g.flags.iter_mut() {
        *f = fix(*f);
    }
}

/// Removes the marked points listed in `remove` (0-based flag positions),
/// stabilizes, and relabels the remaining flags preserving their order.
pub fn forget_points(
    graph: &LabeledDualGraph,
    remove: &BTreeSet<usize>,
) -> Result<LabeledDualGraph, GraphError> {
    if let Some(&i) = remove.iter().find(|&&i| i >= graph.flag_count()) {
        return Err(GraphError::InvalidInput(format!("flag index {i} out of range")));
    }
    let mut g = graph.clone();
    g.flags = g
        .flags
        .iter()
        .enumerate()
        .filter(|(i, _)| !remove.contains(i))
        .map(|(_, &v)| v)
        .collect();
    stabilize(&g)
}

/// A degeneration: the source graph expands each vertex of the target into a
/// connected subgraph, cutting new nodes along the listed extra edges.
#[derive(Debug, Clone)]
pub struct CuttingData {
    pub source: LabeledDualGraph,
    pub target: LabeledDualGraph,
    /// For each source vertex, the target vertex it collapses to (surjective).
    pub vertex_map: Vec<usize>,
    /// For each target edge, the source edge it comes from (injective).
    pub edge_map: Vec<usize>,
}

impl CuttingData {
    /// Source edges not in the image of `edge_map`: the cut nodes.
    pub fn cut_edges(&self) -> Vec<usize> {
        let image: BTreeSet<usize> = self.edge_map.iter().copied().collect();
        (0..self.source.edges.len()).filter(|e| !image.contains(e)).collect()
    }
}

/// Validates a cutting configuration and returns the degenerated graph.
pub fn degenerate(
    graph: &LabeledDualGraph,
    cut: &CuttingData,
) -> Result<LabeledDualGraph, GraphError> {
    if &cut.target != graph {
        return Err(GraphError::DegenerationInvalid("target of the cut is not this graph".into()));
    }
    let src = &cut.source;
    let tgt = &cut.target;
    if cut.vertex_map.len() != src.vertex_count() {
        return Err(GraphError::DegenerationInvalid("vertex map has wrong length".into()));
    }
    if cut.vertex_map.iter().any(|&v| v >= tgt.vertex_count()) {
        return Err(GraphError::DegenerationInvalid("vertex map out of range".into()));
    }
    let mut hit = vec![false; tgt.vertex_count()];
    for &v in &cut.vertex_map {
        hit[v] = true;
    }
    if !hit.iter().all(|&h| h) {
        return Err(GraphError::DegenerationInvalid("vertex map is not surjective".into()));
    }
    if cut.edge_map.len() != tgt.edges.len() {
        return Err(GraphError::DegenerationInvalid("edge map has wrong length".into()));
    }
    let mut seen = BTreeSet::new();
    for (te, &se) in cut.edge_map.iter().enumerate() {
        if se >= src.edges.len() {
            return Err(GraphError::DegenerationInvalid(format!("edge map image {se} out of range")));
        }
        if !seen.insert(se) {
            return Err(GraphError::DegenerationInvalid("edge map is not injective".into()));
        }
        let (a, b) = src.edges[se];
        let (ta, tb) = tgt.edges[te];
        let mapped = (cut.vertex_map[a].min(cut.vertex_map[b]), cut.vertex_map[a].max(cut.vertex_map[b]));
        if mapped != (ta.min(tb), ta.max(tb)) {
            return Err(GraphError::DegenerationInvalid(format!(
                "edge {te} endpoints do not match its source edge"
            )));
        }
    }
    // cut edges collapse inside a single expanded vertex
    for e in cut.cut_edges() {
        let (a, b) = src.edges[e];
        if cut.vertex_map[a] != cut.vertex_map[b] {
            return Err(GraphError::DegenerationInvalid(format!(
                "cut edge {e} joins different expanded subgraphs"
            )));
        }
    }
    // flags keep their order and stay over the same target vertex
    if src.flag_count() != tgt.flag_count() {
        return Err(GraphError::DegenerationInvalid("flag counts differ".into()));
    }
    for (i, (&sv, &tv)) in src.flags.iter().zip(&tgt.flags).enumerate() {
        if cut.vertex_map[sv] != tv {
            return Err(GraphError::DegenerationInvalid(format!(
                "flag {} sits over the wrong vertex",
                i + 1
            )));
        }
    }
    // per-vertex expansion: connected and genus-preserving
    let cut_set: BTreeSet<usize> = cut.cut_edges().into_iter().collect();
    for v in 0..tgt.vertex_count() {
        let verts: Vec<usize> =
            (0..src.vertex_count()).filter(|&w| cut.vertex_map[w] == v).collect();
        let vset: BTreeSet<usize> = verts.iter().copied().collect();
        let sub_edges: Vec<(usize, usize)> = cut_set
            .iter()
            .map(|&e| src.edges[e])
            .filter(|&(a, b)| vset.contains(&a) && vset.contains(&b))
            .collect();
        let reindex: BTreeMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let sub = LabeledDualGraph::new(
            verts.iter().map(|&w| src.vertices[w].clone()).collect(),
            sub_edges.iter().map(|&(a, b)| (reindex[&a], reindex[&b])).collect(),
            vec![],
        )
        .map_err(|_| {
            GraphError::DegenerationInvalid(format!("expanded subgraph over vertex {v} is disconnected"))
        })?;
        let sub_genus = genus(&sub).map_err(|e| GraphError::DegenerationInvalid(e.to_string()))?;
        if sub_genus != tgt.vertices[v].genus as u64 {
            return Err(GraphError::DegenerationInvalid(format!(
                "expanded subgraph over vertex {v} has genus {sub_genus}, expected {}",
                tgt.vertices[v].genus
            )));
        }
        if let Some(av) = tgt.vertices[v].degree {
            let sum: i64 = verts
                .iter()
                .map(|&w| src.vertices[w].degree.unwrap_or(0))
                .sum();
            if sum != av {
                return Err(GraphError::DegenerationInvalid(format!(
                    "degrees over vertex {v} sum to {sum}, expected {av}"
                )));
            }
        }
    }
    Ok(src.clone())
}

/// Real virtual dimension `2((n-3)(1-g) + c1A + k)` of the mapping moduli.
pub fn virtual_dim(n: i64, g: i64, k: i64, c1a: i64) -> i64 {
    2 * ((n - 3) * (1 - g) + c1a + k)
}

/// Real index `2(c1 + n(1-g))` of the linearized problem.
pub fn riemann_roch_index(n: i64, g: i64, c1: i64) -> i64 {
    2 * (c1 + n * (1 - g))
}

// ---------------------------------------------------------------------------
// isomorphism, canonical forms, automorphisms
// ---------------------------------------------------------------------------

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    heap_permute(&mut idx, n, &mut out);
    out
}

fn heap_permute(arr: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(arr.clone());
        return;
    }
    for i in 0..k {
        heap_permute(arr, k - 1, out);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

fn apply_perm(g: &LabeledDualGraph, perm: &[usize]) -> LabeledDualGraph {
    let mut edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (perm[a], perm[b]);
            if x <= y { (x, y) } else { (y, x) }
        })
        .collect();
    edges.sort();
    let mut vertices = vec![VertexLabel { genus: 0, degree: None }; g.vertices.len()];
    for (v, label) in g.vertices.iter().enumerate() {
        vertices[perm[v]] = label.clone();
    }
    LabeledDualGraph { vertices, edges, flags: g.flags.iter().map(|&f| perm[f]).collect() }
}

/// Canonical representative under vertex relabeling that preserves labels and
/// flag attachments. Exact search; instance sizes are tiny.
pub fn canonical_form(g: &LabeledDualGraph) -> LabeledDualGraph {
    let mut sorted = g.clone();
    sorted.edges.sort();
    let mut best: Option<(Vec<VertexLabel>, Vec<(usize, usize)>, Vec<usize>)> = None;
    for perm in permutations(g.vertices.len()) {
        let cand = apply_perm(&sorted, &perm);
        let key = (cand.vertices.clone(), cand.edges.clone(), cand.flags.clone());
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    let (vertices, edges, flags) = best.unwrap();
    LabeledDualGraph { vertices, edges, flags }
}

pub fn isomorphic(a: &LabeledDualGraph, b: &LabeledDualGraph) -> bool {
    canonical_form(a) == canonical_form(b)
}

/// Automorphism group of the labeled graph fixing every flag: pairs of a vertex
/// permutation and a compatible edge permutation.
#[derive(Debug, Clone)]
pub struct GraphAutomorphisms {
    /// Vertex-permutation generators (parallel-edge swaps not listed separately).
    pub vertex_generators: Vec<Vec<usize>>,
    pub order: u64,
}

pub fn aut_graph(g: &LabeledDualGraph) -> GraphAutomorphisms {
    let n = g.vertices.len();
    let mut sorted_edges = g.edges.clone();
    sorted_edges.sort();
    let mut vertex_autos = Vec::new();
    for perm in permutations(n) {
        if g.flags.iter().any(|&f| perm[f] != f) {
            continue;
        }
        if (0..n).any(|v| g.vertices[perm[v]] != g.vertices[v]) {
            continue;
        }
        let mut mapped: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                if x <= y { (x, y) } else { (y, x) }
            })
            .collect();
        mapped.sort();
        if mapped == sorted_edges {
            vertex_autos.push(perm);
        }
    }
    // each vertex automorphism extends to edge permutations independently on
    // every parallel class
    let mut mult: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for &e in &g.edges {
        *mult.entry(e).or_insert(0) += 1;
    }
    let parallel_factor: u64 = mult.values().map(|&m| factorial(m)).product();
    let order = vertex_autos.len() as u64 * parallel_factor;
    let identity: Vec<usize> = (0..n).collect();
    let vertex_generators = vertex_autos.into_iter().filter(|p| *p != identity).collect();
    GraphAutomorphisms { vertex_generators, order }
}

fn factorial(m: u64) -> u64 {
    (1..=m).product::<u64>().max(1)
}

// ---------------------------------------------------------------------------
// strata enumeration
// ---------------------------------------------------------------------------

/// All isomorphism classes of stable labeled dual graphs of the given genus and
/// flag count, with at most `max_vertices` vertices. With `degree_budget` the
/// enumeration runs in map mode and vertex degrees are non-negative integers
/// summing to the budget.
pub fn enumerate_strata(
    g: u64,
    k: usize,
    max_vertices: usize,
    degree_budget: Option<i64>,
) -> Result<Vec<LabeledDualGraph>, GraphError> {
    if degree_budget.is_none() && 2 * g + (k as u64) < 3 {
        return Err(GraphError::InvalidInput(
            "curve-mode enumeration needs 2g + k >= 3".into(),
        ));
    }
    if let Some(d) = degree_budget {
        if d < 0 {
            return Err(GraphError::InvalidInput("degree budget must be non-negative".into()));
        }
    }
    if max_vertices == 0 {
        return Err(GraphError::InvalidInput("max_vertices must be positive".into()));
    }
    let mode = if degree_budget.is_some() { StabilityMode::Map } else { StabilityMode::Curve };
    let mut seen: BTreeSet<(Vec<VertexLabel>, Vec<(usize, usize)>, Vec<usize>)> = BTreeSet::new();
    let mut out = Vec::new();
    for nv in 1..=max_vertices {
        for genera in compositions_at_most(g, nv) {
            let total: u64 = genera.iter().sum();
            let betti = g - total;
            let ne = betti as usize + nv - 1;
            for edges in edge_multisets(nv, ne) {
                for flags in flag_assignments(nv, k) {
                    let degree_lists: Vec<Option<Vec<i64>>> = match degree_budget {
                        None => vec![None],
                        Some(d) => degree_splits(d, nv).into_iter().map(Some).collect(),
                    };
                    for degs in degree_lists {
                        let vertices: Vec<VertexLabel> = (0..nv)
                            .map(|v| VertexLabel {
                                genus: genera[v] as u32,
                                degree: degs.as_ref().map(|d| d[v]),
                            })
                            .collect();
                        let Ok(cand) =
                            LabeledDualGraph::new(vertices, edges.clone(), flags.clone())
                        else {
                            continue;
                        };
                        if !is_stable(&cand, mode)? {
                            continue;
                        }
                        debug_assert_eq!(genus(&cand)?, g);
                        let canon = canonical_form(&cand);
                        let key = (canon.vertices.clone(), canon.edges.clone(), canon.flags.clone());
                        if seen.insert(key) {
                            out.push(canon);
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.vertices.len(), &a.vertices, &a.edges, &a.flags)
            .cmp(&(b.vertices.len(), &b.vertices, &b.edges, &b.flags))
    });
    Ok(out)
}

fn compositions_at_most(total: u64, parts: usize) -> Vec<Vec<u64>> {
    // all (g_1..g_parts) with every g_i >= 0 and sum <= total
    let mut out = Vec::new();
    let mut cur = vec![0u64; parts];
    fn rec(i: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

fn degree_splits(total: i64, parts: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; parts];
    fn rec(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    if parts == 0 {
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

fn edge_multisets(nv: usize, ne: usize) -> Vec<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for a in 0..nv {
        for b in a..nv {
            pairs.push((a, b));
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        pairs: &[(usize, usize)],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pairs.len() {
            cur.push(pairs[i]);
            rec(pairs, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&pairs, 0, ne, &mut cur, &mut out);
    out
}

fn flag_assignments(nv: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(i: usize, nv: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..nv {
            cur[i] = v;
            rec(i + 1, nv, cur, out);
        }
    }
    rec(0, nv, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig3_graph() -> LabeledDualGraph {
        // five components of genera (0,2,0,1,0); hub vertex 4 meets 0,1,2 and
        // vertices 0,3 are joined by a doubled edge; two marked points on
        // component 2
        LabeledDualGraph::curve(
            vec![0, 2, 0, 1, 0],
            vec![(0, 4), (1, 4), (2, 4), (0, 3), (0, 3)],
            vec![2, 2],
        )
        .unwrap()
    }

    #[test]
    fn genus_examples() {
        let g = LabeledDualGraph::curve(vec![2], vec![], vec![0, 0]).unwrap();
        assert_eq!(genus(&g).unwrap(), 2);
        assert_eq!(genus(&fig3_graph()).unwrap(), 4);
        let loopy = LabeledDualGraph::curve(vec![0], vec![(0, 0)], vec![]).unwrap();
        assert_eq!(genus(&loopy).unwrap(), 1);
    }

    #[test]
    fn stability_examples() {
        let g = LabeledDualGraph::curve(vec![0, 1], vec![(0, 1), (0, 1)], vec![]).unwrap();
        // vertex 0: genus 0 with 2 edge-ends
        assert!(!is_stable(&g, StabilityMode::Curve).unwrap());
        let e = LabeledDualGraph::curve(vec![1], vec![], vec![]).unwrap();
        assert!(!is_stable(&e, StabilityMode::Curve).unwrap());
        let m = LabeledDualGraph::new(
            vec![VertexLabel { genus: 0, degree: Some(1) }],
            vec![],
            vec![],
        )
        .unwrap();
        assert!(is_stable(&m, StabilityMode::Map).unwrap());
        assert!(is_stable(&fig3_graph(), StabilityMode::Curve).unwrap());
        assert!(is_stable(&e, StabilityMode::Map).is_err());
    }

    #[test]
    fn stabilize_moves_flag() {
        // sphere with one flag and an edge to a stable genus-2 vertex
        let g = LabeledDualGraph::curve(vec![0, 2], vec![(0, 1)], vec![0]).unwrap();
        let s = stabilize(&g).unwrap();
        let expected = LabeledDualGraph::curve(vec![2], vec![], vec![0]).unwrap();
        assert!(isomorphic(&s, &expected));
        assert_eq!(genus(&s).unwrap(), genus(&g).unwrap());
    }

    #[test]
    fn stabilize_fuses_edges() {
        // g1 - sphere - g1 chain fuses into a single edge
        let g = LabeledDualGraph::curve(vec![1, 0, 1], vec![(0, 1), (1, 2)], vec![0]).unwrap();
        let s = stabilize(&g).unwrap();
        let expected = LabeledDualGraph::curve(vec![1, 1], vec![(0, 1)], vec![0]).unwrap();
        assert!(isomorphic(&s, &expected));
    }

    #[test]
    fn stabilize_fixed_point_and_unstable_range() {
        let g = fig3_graph();
        assert_eq!(stabilize(&g).unwrap(), g);
        let sphere2 = LabeledDualGraph::curve(vec![0], vec![], vec![0, 0]).unwrap();
        assert_eq!(stabilize(&sphere2).unwrap(), point_graph());
        // sphere with a loop and nothing else: genus 1, no flags
        let loopy = LabeledDualGraph::curve(vec![0], vec![(0, 0)], vec![]).unwrap();
        assert_eq!(stabilize(&loopy).unwrap(), point_graph());
    }

    #[test]
    fn stabilize_cascades() {
        // chain g1 - s - s: outer sphere is a leaf; removing it destabilizes the middle
        let g = LabeledDualGraph::curve(vec![1, 0, 0], vec![(0, 1), (1, 2)], vec![0]).unwrap();
        let s = stabilize(&g).unwrap();
        let expected = LabeledDualGraph::curve(vec![1], vec![], vec![0]).unwrap();
        assert!(isomorphic(&s, &expected));
    }

    #[test]
    fn forget_points_cases() {
        let g = LabeledDualGraph::curve(vec![2], vec![], vec![0, 0]).unwrap();
        let all: BTreeSet<usize> = [0, 1].into_iter().collect();
        let f = forget_points(&g, &all).unwrap();
        assert_eq!(f, LabeledDualGraph::curve(vec![2], vec![], vec![]).unwrap());
        // removing one flag on a two-flag sphere tail collapses the tail and
        // moves the survivor
        let t = LabeledDualGraph::curve(vec![2, 0], vec![(0, 1)], vec![1, 1]).unwrap();
        let f = forget_points(&t, &[0].into_iter().collect()).unwrap();
        assert!(isomorphic(&f, &LabeledDualGraph::curve(vec![2], vec![], vec![0]).unwrap()));
        // empty removal is the identity on stable graphs
        let f = forget_points(&t, &BTreeSet::new()).unwrap();
        assert!(isomorphic(&f, &t));
        assert!(forget_points(&g, &[5].into_iter().collect()).is_err());
    }

    #[test]
    fn degenerate_split_vertex() {
        // split a genus-2 vertex into two genus-1 vertices joined by one edge
        let target = LabeledDualGraph::curve(vec![2], vec![], vec![]).unwrap();
        let source = LabeledDualGraph::curve(vec![1, 1], vec![(0, 1)], vec![]).unwrap();
        let cut = CuttingData {
            source: source.clone(),
            target: target.clone(),
            vertex_map: vec![0, 0],
            edge_map: vec![],
        };
        let out = degenerate(&target, &cut).unwrap();
        assert_eq!(out, source);
        assert_eq!(genus(&out).unwrap(), genus(&target).unwrap());
    }

    #[test]
    fn degenerate_loop_from_genus() {
        // cut a handle of a genus-1 vertex into a loop on a genus-0 vertex
        let target = LabeledDualGraph::curve(vec![1], vec![], vec![0]).unwrap();
        let source = LabeledDualGraph::curve(vec![0], vec![(0, 0)], vec![0]).unwrap();
        let cut = CuttingData {
            source: source.clone(),
            target: target.clone(),
            vertex_map: vec![0],
            edge_map: vec![],
        };
        assert_eq!(degenerate(&target, &cut).unwrap(), source);
    }

    #[test]
    fn degenerate_pinched_genus3() {
        // 1-nodal genus-3 curve pinched along two circles: a separating circle
        // on the genus-1 component and a non-separating one on the genus-2
        // component, giving vertices (0,1,1) with a loop
        let target = LabeledDualGraph::curve(vec![1, 2], vec![(0, 1)], vec![]).unwrap();
        let source =
            LabeledDualGraph::curve(vec![0, 1, 1], vec![(0, 1), (1, 2), (2, 2)], vec![]).unwrap();
        assert_eq!(genus(&source).unwrap(), 3);
        let cut = CuttingData {
            source: source.clone(),
            target: target.clone(),
            vertex_map: vec![0, 0, 1],
            edge_map: vec![1],
        };
        assert_eq!(degenerate(&target, &cut).unwrap(), source);
        // assigning the expansion the wrong way breaks the per-vertex genus
        let bad = CuttingData {
            source: source.clone(),
            target: target.clone(),
            vertex_map: vec![0, 1, 1],
            edge_map: vec![0],
        };
        assert!(degenerate(&target, &bad).is_err());
    }

    #[test]
    fn degenerate_degree_mismatch() {
        let target = LabeledDualGraph::new(
            vec![VertexLabel { genus: 0, degree: Some(3) }],
            vec![],
            vec![],
        )
        .unwrap();
        let mk = |d0, d1| {
            LabeledDualGraph::new(
                vec![
                    VertexLabel { genus: 0, degree: Some(d0) },
                    VertexLabel { genus: 0, degree: Some(d1) },
                ],
                vec![(0, 1)],
                vec![],
            )
            .unwrap()
        };
        let good = CuttingData {
            source: mk(1, 2),
            target: target.clone(),
            vertex_map: vec![0, 0],
            edge_map: vec![],
        };
        assert!(degenerate(&target, &good).is_ok());
        let bad = CuttingData {
            source: mk(1, 1),
            target: target.clone(),
            vertex_map: vec![0, 0],
            edge_map: vec![],
        };
        assert!(degenerate(&target, &bad).is_err());
    }

    /// Contracts one edge: a loop adds one to its vertex genus, a non-loop edge
    /// merges its endpoints adding genera.
    fn contract_edge(g: &LabeledDualGraph, e: usize) -> LabeledDualGraph {
        let mut g = g.clone();
        let (a, b) = g.edges[e];
        g.edges.remove(e);
        if a == b {
            g.vertices[a].genus += 1;
            return g;
        }
        g.vertices[a].genus += g.vertices[b].genus;
        for edge in g.edges.iter_mut() {
            let fix = |x: usize| if x == b { a } else { x };
            let (x, y) = (fix(edge.0), fix(edge.1));
            *edge = if x <= y { (x, y) } else { (y, x) };
        }
        for f in g.flags.iter_mut() {
            if *f == b {
                *f = a;
            }
        }
        remove_vertex(&mut g, b);
        g
    }

    #[test]
    fn contraction_of_cut_recovers_target() {
        let target = LabeledDualGraph::curve(vec![2, 1], vec![(0, 1)], vec![0]).unwrap();
        let source =
            LabeledDualGraph::curve(vec![1, 1, 1], vec![(0, 1), (0, 2)], vec![0]).unwrap();
        let cut = CuttingData {
            source: source.clone(),
            target: target.clone(),
            vertex_map: vec![0, 0, 1],
            edge_map: vec![1],
        };
        let out = degenerate(&target, &cut).unwrap();
        let mut contracted = out;
        // single cut edge here: source edge 0
        contracted = contract_edge(&contracted, 0);
        assert!(isomorphic(&contracted, &target));
    }

    #[test]
    fn virtual_dims() {
        assert_eq!(virtual_dim(3, 0, 0, 0), 0);
        assert_eq!(virtual_dim(2, 1, 0, 0), 0);
        assert_eq!(virtual_dim(3, 2, 0, 0), 0);
        for g in 0..=10 {
            assert_eq!(virtual_dim(3, g, 0, 0), 0);
        }
        assert_eq!(virtual_dim(1, 1, 1, 0), 2);
    }

    #[test]
    fn riemann_roch_values() {
        assert_eq!(riemann_roch_index(3, 1, 0), 0);
        assert_eq!(riemann_roch_index(4, 0, 5), 2 * (5 + 4));
        assert_eq!(riemann_roch_index(1, 2, 0), -2);
    }

    #[test]
    fn aut_examples() {
        let g = LabeledDualGraph::curve(vec![1, 1], vec![(0, 1)], vec![]).unwrap();
        assert_eq!(aut_graph(&g).order, 2);
        let g = LabeledDualGraph::curve(vec![1, 1], vec![(0, 1)], vec![0]).unwrap();
        assert_eq!(aut_graph(&g).order, 1);
        let g = LabeledDualGraph::curve(vec![0, 0], vec![(0, 1), (0, 1)], vec![0, 0, 1, 1]).unwrap();
        assert_eq!(aut_graph(&g).order, 2);
    }

    #[test]
    fn strata_small_cases() {
        let s = enumerate_strata(0, 3, 1, None).unwrap();
        assert_eq!(s.len(), 1);
        let s = enumerate_strata(1, 1, 2, None).unwrap();
        assert_eq!(s.len(), 2);
        let s = enumerate_strata(0, 4, 2, None).unwrap();
        assert_eq!(s.len(), 4);
        assert!(enumerate_strata(0, 2, 2, None).is_err());
    }
}
