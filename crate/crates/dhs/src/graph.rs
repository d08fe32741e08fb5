//! Weighted multigraphs and their diamond-related structure.
//!
//! Vertices carry non-negative exact rational costs. Parallel edges are
//! first-class citizens with distinct ids; loops are forbidden. Vertex and
//! edge ids are stable under deletion of other elements.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{invariant, Error, Result};
use crate::rat::{rat, Rat};
use num_traits::Zero;

/// Vertex identifier, stable across deletions of other vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Edge identifier, stable across deletions of other edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A vertex/edge footprint of some host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

impl Subgraph {
    pub fn union_with(&mut self, other: &Subgraph) {
        self.vertices.extend(other.vertices.iter().copied());
        self.edges.extend(other.edges.iter().copied());
    }
}

/// Weighted multigraph with stable ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    costs: BTreeMap<VertexId, Rat>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    adj: BTreeMap<VertexId, BTreeMap<VertexId, BTreeSet<EdgeId>>>,
    next_vertex: u32,
    next_edge: u32,
}

impl Default for MultiGraph {
    fn default() -> Self {
        Self::new()
    }
}

impl MultiGraph {
    pub fn new() -> Self {
        MultiGraph {
            costs: BTreeMap::new(),
            edges: BTreeMap::new(),
            adj: BTreeMap::new(),
            next_vertex: 0,
            next_edge: 0,
        }
    }

    /// Adds a vertex with the next free id.
    pub fn add_vertex(&mut self, cost: Rat) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.add_vertex_with_id(id, cost);
        id
    }

    pub fn add_vertex_with_id(&mut self, id: VertexId, cost: Rat) {
        assert!(cost >= Rat::zero(), "vertex cost must be non-negative");
        assert!(!self.costs.contains_key(&id), "duplicate vertex id {id}");
        self.costs.insert(id, cost);
        self.adj.insert(id, BTreeMap::new());
        self.next_vertex = self.next_vertex.max(id.0 + 1);
    }

    /// Adds an edge between two distinct existing vertices.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = EdgeId(self.next_edge);
        self.add_edge_with_id(id, u, v);
        id
    }

    pub fn add_edge_with_id(&mut self, id: EdgeId, u: VertexId, v: VertexId) {
        assert_ne!(u, v, "loops are forbidden");
        assert!(self.costs.contains_key(&u) && self.costs.contains_key(&v));
        assert!(!self.edges.contains_key(&id), "duplicate edge id {id}");
        self.edges.insert(id, (u.min(v), u.max(v)));
        self.adj.get_mut(&u).unwrap().entry(v).or_default().insert(id);
        self.adj.get_mut(&v).unwrap().entry(u).or_default().insert(id);
        self.next_edge = self.next_edge.max(id.0 + 1);
    }

    /// Builds an unweighted graph (all costs 1) on `n` vertices `0..n`.
    pub fn from_edges(n: u32, edge_list: &[(u32, u32)]) -> Self {
        let mut g = MultiGraph::new();
        for i in 0..n {
            g.add_vertex_with_id(VertexId(i), rat(1));
        }
        for &(u, v) in edge_list {
            g.add_edge(VertexId(u), VertexId(v));
        }
        g
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.costs.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn cost(&self, v: VertexId) -> &Rat {
        &self.costs[&v]
    }

    pub fn set_cost(&mut self, v: VertexId, cost: Rat) {
        assert!(cost >= Rat::zero());
        *self.costs.get_mut(&v).unwrap() = cost;
    }

    /// Endpoints of an edge, lower id first.
    pub fn ends(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[&e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.ends(e);
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v);
            a
        }
    }

    /// Number of vertices, |G|.
    pub fn num_vertices(&self) -> usize {
        self.costs.len()
    }

    /// Number of edges, ||G||.
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.costs.keys().copied()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[&v].keys().copied()
    }

    pub fn num_distinct_neighbors(&self, v: VertexId) -> usize {
        self.adj[&v].len()
    }

    /// Edge ids joining `u` and `v`, ascending.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj[&u].get(&v).into_iter().flatten().copied()
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.adj[&u].get(&v).map_or(0, |s| s.len())
    }

    /// Degree counting parallel edges.
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[&v].values().map(|s| s.len()).sum()
    }

    /// All edges incident to `v`, ascending by id.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.adj[&v].values().flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Maximum edge multiplicity over all vertex pairs (0 for edgeless graphs).
    pub fn max_multiplicity(&self) -> usize {
        self.vertices()
            .flat_map(|v| self.adj[&v].values().map(|s| s.len()))
            .max()
            .unwrap_or(0)
    }

    /// Induced subgraph on `keep`; ids of survivors are unchanged.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> MultiGraph {
        let mut g = MultiGraph::new();
        for (&v, c) in &self.costs {
            if keep.contains(&v) {
                g.add_vertex_with_id(v, c.clone());
            }
        }
        for (&e, &(u, v)) in &self.edges {
            if keep.contains(&u) && keep.contains(&v) {
                g.add_edge_with_id(e, u, v);
            }
        }
        g.next_vertex = self.next_vertex;
        g.next_edge = self.next_edge;
        g
    }

    /// Deletes a vertex set; the induced subgraph on the rest.
    pub fn delete_vertices(&self, s: &BTreeSet<VertexId>) -> MultiGraph {
        debug_assert!(s.iter().all(|v| self.has_vertex(*v)));
        let keep: BTreeSet<VertexId> = self.vertices().filter(|v| !s.contains(v)).collect();
        self.induced(&keep)
    }

    /// The subgraph spanned by explicit vertex and edge sets.
    pub fn subgraph(&self, sub: &Subgraph) -> MultiGraph {
        let mut g = MultiGraph::new();
        for &v in &sub.vertices {
            g.add_vertex_with_id(v, self.costs[&v].clone());
        }
        for &e in &sub.edges {
            let (u, v) = self.ends(e);
            assert!(sub.vertices.contains(&u) && sub.vertices.contains(&v));
            g.add_edge_with_id(e, u, v);
        }
        g.next_vertex = self.next_vertex;
        g.next_edge = self.next_edge;
        g
    }

    pub fn footprint(&self) -> Subgraph {
        Subgraph {
            vertices: self.vertices().collect(),
            edges: self.edge_ids().collect(),
        }
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for u in self.neighbors(v) {
                    if seen.insert(u) {
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A block of a multigraph: a maximal 2-connected subgraph, a bridge, or an
/// isolated vertex. Two parallel edges form a 2-cycle block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
    /// True iff ||B|| <= |B|, i.e. the block is K1, K2 or a cycle.
    pub is_cycle_or_edge: bool,
}

impl Block {
    /// True iff the block contains a diamond (more edges than vertices).
    pub fn has_diamond(&self) -> bool {
        !self.is_cycle_or_edge
    }
}

impl MultiGraph {
    /// Biconnected decomposition: blocks plus the set of cutvertices.
    ///
    /// Every edge lies in exactly one block; isolated vertices are their own
    /// blocks. Parallel edges count individually, so a doubled edge is a
    /// 2-cycle block rather than a bridge.
    pub fn blocks(&self) -> (Vec<Block>, BTreeSet<VertexId>) {
        let mut blocks = Vec::new();
        let mut cutvertices = BTreeSet::new();

        let mut index: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut low: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut counter = 0usize;
        let mut edge_stack: Vec<EdgeId> = Vec::new();

        // Iterative DFS; frames carry the incoming edge so only that single
        // parallel edge is skipped when scanning back edges.
        struct Frame {
            v: VertexId,
            parent_edge: Option<EdgeId>,
            edge_iter: Vec<EdgeId>,
            next: usize,
            children: usize,
        }

        for root in self.vertices() {
            if index.contains_key(&root) {
                continue;
            }
            if self.degree(root) == 0 {
                blocks.push(Block {
                    vertices: BTreeSet::from([root]),
                    edges: BTreeSet::new(),
                    is_cycle_or_edge: true,
                });
                index.insert(root, counter);
                counter += 1;
                continue;
            }

            let mut stack = vec![Frame {
                v: root,
                parent_edge: None,
                edge_iter: self.incident_edges(root),
                next: 0,
                children: 0,
            }];
            index.insert(root, counter);
            low.insert(root, counter);
            counter += 1;

            while let Some(frame) = stack.last_mut() {
                let v = frame.v;
                if frame.next < frame.edge_iter.len() {
                    let e = frame.edge_iter[frame.next];
                    frame.next += 1;
                    if Some(e) == frame.parent_edge {
                        continue;
                    }
                    let w = self.other_end(e, v);
                    if let Some(&wi) = index.get(&w) {
                        if wi < index[&v] {
                            edge_stack.push(e);
                            let lv = low.get_mut(&v).unwrap();
                            *lv = (*lv).min(wi);
                        }
                    } else {
                        edge_stack.push(e);
                        frame.children += 1;
                        index.insert(w, counter);
                        low.insert(w, counter);
                        counter += 1;
                        stack.push(Frame {
                            v: w,
                            parent_edge: Some(e),
                            edge_iter: self.incident_edges(w),
                            next: 0,
                            children: 0,
                        });
                    }
                } else {
                    let finished = stack.pop().unwrap();
                    let depth = stack.len();
                    if let Some(parent) = stack.last_mut() {
                        let u = parent.v;
                        let lw = low[&finished.v];
                        let lu = low.get_mut(&u).unwrap();
                        *lu = (*lu).min(lw);
                        if lw >= index[&u] {
                            // u separates the subtree under this child.
                            let is_root = depth == 1;
                            if !is_root || parent.children > 1 {
                                cutvertices.insert(u);
                            }
                            let pe = finished.parent_edge.unwrap();
                            let mut edges = BTreeSet::new();
                            while let Some(&top) = edge_stack.last() {
                                edge_stack.pop();
                                edges.insert(top);
                                if top == pe {
                                    break;
                                }
                            }
                            let mut vertices = BTreeSet::new();
                            for &e in &edges {
                                let (a, b) = self.ends(e);
                                vertices.insert(a);
                                vertices.insert(b);
                            }
                            let is_cycle_or_edge = edges.len() <= vertices.len();
                            blocks.push(Block {
                                vertices,
                                edges,
                                is_cycle_or_edge,
                            });
                        }
                    }
                }
            }
        }

        debug_assert_eq!(
            blocks.iter().map(|b| b.edges.len()).sum::<usize>(),
            self.num_edges()
        );
        (blocks, cutvertices)
    }

    /// True iff the graph contains no diamond: every block B has ||B|| <= |B|.
    pub fn is_forest_of_cacti(&self) -> bool {
        let (blocks, _) = self.blocks();
        blocks.iter().all(|b| b.is_cycle_or_edge)
    }
}

/// A simple path given as vertex and edge sequences. `verts.len() == edges.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSeq {
    pub verts: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl PathSeq {
    pub fn new(verts: Vec<VertexId>, edges: Vec<EdgeId>) -> Self {
        assert_eq!(verts.len(), edges.len() + 1);
        PathSeq { verts, edges }
    }

    /// Single-edge path.
    pub fn from_edge(g: &MultiGraph, e: EdgeId) -> Self {
        let (u, v) = g.ends(e);
        PathSeq {
            verts: vec![u, v],
            edges: vec![e],
        }
    }

    pub fn first(&self) -> VertexId {
        *self.verts.first().unwrap()
    }

    pub fn last(&self) -> VertexId {
        *self.verts.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Internal vertices (all but the two ends).
    pub fn internals(&self) -> &[VertexId] {
        &self.verts[1..self.verts.len() - 1]
    }

    pub fn reversed(&self) -> PathSeq {
        PathSeq {
            verts: self.verts.iter().rev().copied().collect(),
            edges: self.edges.iter().rev().copied().collect(),
        }
    }

    /// Same path, oriented from the smaller end (ties by edge list).
    pub fn canonical(&self) -> PathSeq {
        let rev = self.reversed();
        if (self.first(), &self.edges) <= (rev.first(), &rev.edges) {
            self.clone()
        } else {
            rev
        }
    }

    /// Checks the path exists in `g`: consecutive ends match, vertices distinct.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        invariant!(!self.edges.is_empty(), "path must have at least one edge");
        let distinct: BTreeSet<_> = self.verts.iter().collect();
        invariant!(distinct.len() == self.verts.len(), "path repeats a vertex");
        for (i, &e) in self.edges.iter().enumerate() {
            invariant!(g.has_edge(e), "path edge {e} not in graph");
            let (a, b) = g.ends(e);
            let (x, y) = (self.verts[i], self.verts[i + 1]);
            invariant!(
                (a, b) == (x.min(y), x.max(y)),
                "path edge {e} does not join {x} and {y}"
            );
        }
        Ok(())
    }

    /// Concatenation `self . other` where `other` starts at `self.last()`.
    pub fn join(&self, other: &PathSeq) -> PathSeq {
        assert_eq!(self.last(), other.first());
        let mut verts = self.verts.clone();
        verts.extend_from_slice(&other.verts[1..]);
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        PathSeq { verts, edges }
    }
}

/// A diamond: two branch vertices joined by three internally disjoint paths
/// (a theta subgraph).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    pub branch: (VertexId, VertexId),
    pub paths: [PathSeq; 3],
}

impl Diamond {
    /// Total edge count.
    pub fn size(&self) -> usize {
        self.paths.iter().map(PathSeq::len).sum()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.paths
            .iter()
            .flat_map(|p| p.verts.iter().copied())
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.paths
            .iter()
            .flat_map(|p| p.edges.iter().copied())
            .collect()
    }

    pub fn footprint(&self) -> Subgraph {
        Subgraph {
            vertices: self.vertex_set(),
            edges: self.edge_set(),
        }
    }

    /// Re-validates the theta structure against a host graph.
    pub fn validate(&self, g: &MultiGraph) -> Result<()> {
        let (a, b) = self.branch;
        invariant!(a != b, "branch vertices must differ");
        for p in &self.paths {
            p.validate(g)?;
            invariant!(
                (p.first(), p.last()) == (a, b) || (p.first(), p.last()) == (b, a),
                "path does not join the branch pair"
            );
        }
        // Internally disjoint, no shared edges.
        let mut seen_internal: BTreeSet<VertexId> = BTreeSet::new();
        let mut seen_edges: BTreeSet<EdgeId> = BTreeSet::new();
        for p in &self.paths {
            for &v in p.internals() {
                invariant!(seen_internal.insert(v), "paths share internal vertex {v}");
            }
            for &e in &p.edges {
                invariant!(seen_edges.insert(e), "paths share edge {e}");
            }
        }
        Ok(())
    }
}

impl MultiGraph {
    /// Finds some diamond, or `None` iff the graph is a forest of cacti.
    ///
    /// Picks a block with more edges than vertices, takes a cycle in it plus
    /// a first ear; no size guarantee.
    pub fn find_any_diamond(&self) -> Option<Diamond> {
        let (blocks, _) = self.blocks();
        let block = blocks.iter().find(|b| b.has_diamond())?;
        let sub = self.subgraph(&Subgraph {
            vertices: block.vertices.clone(),
            edges: block.edges.clone(),
        });
        let d = theta_in_diamond_block(&sub).expect("block with ||B|| > |B| contains a theta");
        debug_assert!(d.validate(self).is_ok());
        Some(d)
    }
}

/// Extracts a theta from a connected graph with more edges than vertices,
/// all of whose vertices lie in one block (callers pass a diamond block).
fn theta_in_diamond_block(b: &MultiGraph) -> Option<Diamond> {
    // Fast path: three parallel edges.
    for u in b.vertices() {
        for v in b.neighbors(u) {
            if u < v && b.multiplicity(u, v) >= 3 {
                let ids: Vec<EdgeId> = b.edges_between(u, v).take(3).collect();
                let path = |e: EdgeId| PathSeq::new(vec![u, v], vec![e]);
                return Some(Diamond {
                    branch: (u, v),
                    paths: [path(ids[0]), path(ids[1]), path(ids[2])],
                });
            }
        }
    }

    let cycle = find_cycle(b)?;
    let on_cycle: BTreeSet<VertexId> = cycle.verts.iter().copied().collect();
    let cycle_edges: BTreeSet<EdgeId> = cycle.edges.iter().copied().collect();

    // BFS for an ear: a path between two distinct cycle vertices that avoids
    // cycle edges and is internally disjoint from the cycle.
    for &a in &cycle.verts {
        let mut parent: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        let mut seen = BTreeSet::from([a]);
        let mut hit: Option<(VertexId, VertexId, EdgeId)> = None;
        'bfs: while let Some(v) = queue.pop_front() {
            if v != a && on_cycle.contains(&v) {
                continue;
            }
            for e in b.incident_edges(v) {
                if cycle_edges.contains(&e) {
                    continue;
                }
                let w = b.other_end(e, v);
                if w == a {
                    continue;
                }
                if on_cycle.contains(&w) {
                    hit = Some((w, v, e));
                    break 'bfs;
                }
                if seen.insert(w) {
                    parent.insert(w, (v, e));
                    queue.push_back(w);
                }
            }
        }
        let Some((end, mut back, last_edge)) = hit else {
            continue;
        };
        // Reconstruct the ear from a to end.
        let mut verts = vec![end];
        let mut edges = vec![last_edge];
        while back != a {
            verts.push(back);
            let (p, e) = parent[&back];
            edges.push(e);
            back = p;
        }
        verts.push(a);
        verts.reverse();
        edges.reverse();
        let ear = PathSeq::new(verts, edges);

        // Split the cycle at a and end into two arcs.
        let (arc1, arc2) = split_cycle(&cycle, a, end);
        let d = Diamond {
            branch: (a, end),
            paths: [ear, arc1, arc2],
        };
        debug_assert!(d.validate(b).is_ok());
        return Some(d);
    }
    None
}

/// Some cycle of `g` as a closed path (first vertex = last vertex omitted),
/// or `None` for forests. Handles 2-cycles from parallel edges.
pub(crate) fn find_cycle(g: &MultiGraph) -> Option<PathSeq> {
    // Parallel pair: 2-cycle.
    for u in g.vertices() {
        for v in g.neighbors(u) {
            if u < v && g.multiplicity(u, v) >= 2 {
                let ids: Vec<EdgeId> = g.edges_between(u, v).take(2).collect();
                return Some(PathSeq {
                    verts: vec![u, v, u],
                    edges: vec![ids[0], ids[1]],
                });
            }
        }
    }
    // DFS back edge on the underlying simple graph.
    let mut parent: BTreeMap<VertexId, (VertexId, EdgeId)> = BTreeMap::new();
    let mut state: BTreeMap<VertexId, u8> = BTreeMap::new();
    for root in g.vertices() {
        if state.contains_key(&root) {
            continue;
        }
        let mut stack = vec![(root, None::<EdgeId>)];
        while let Some(&(v, pe)) = stack.last() {
            if !state.contains_key(&v) {
                state.insert(v, 1);
                for e in g.incident_edges(v) {
                    if Some(e) == pe {
                        continue;
                    }
                    let w = g.other_end(e, v);
                    match state.get(&w) {
                        None => {
                            parent.insert(w, (v, e));
                            stack.push((w, Some(e)));
                        }
                        Some(1) => {
                            // Back edge v -> w: close the cycle by walking the
                            // tree path from v up to the ancestor w.
                            let mut verts = vec![w, v];
                            let mut edges = vec![e];
                            let mut cur = v;
                            while cur != w {
                                let (p, pe2) = parent[&cur];
                                edges.push(pe2);
                                verts.push(p);
                                cur = p;
                            }
                            // verts = [w, v, ..., w] is already closed.
                            debug_assert_eq!(verts.len(), edges.len() + 1);
                            return Some(PathSeq { verts, edges });
                        }
                        Some(_) => {}
                    }
                }
            } else {
                state.insert(v, 2);
                stack.pop();
            }
        }
    }
    None
}

/// Splits a closed cycle path at two distinct vertices into two arcs a->b.
fn split_cycle(cycle: &PathSeq, a: VertexId, b: VertexId) -> (PathSeq, PathSeq) {
    // cycle.verts = [v0, ..., vk = v0]; edges[i] joins verts[i], verts[i+1].
    let k = cycle.edges.len();
    let pos = |x: VertexId| cycle.verts[..k].iter().position(|&v| v == x).unwrap();
    let (pa, pb) = (pos(a), pos(b));
    let walk = |from: usize, to: usize| {
        let mut verts = vec![cycle.verts[from]];
        let mut edges = Vec::new();
        let mut i = from;
        while i != to {
            edges.push(cycle.edges[i]);
            i = (i + 1) % k;
            verts.push(cycle.verts[i]);
        }
        PathSeq { verts, edges }
    };
    let arc1 = walk(pa, pb);
    let arc2 = walk(pb, pa).reversed();
    (arc1, arc2)
}

impl MultiGraph {
    /// Exact number of cycles of length `i` (2 <= i <= 5), total and per vertex.
    ///
    /// A cycle is a connected 2-regular subgraph. Length-2 cycles are pairs of
    /// parallel edges: each vertex pair with multiplicity m contributes
    /// C(m, 2). For i >= 3, vertex cycles are enumerated and weighted by the
    /// product of edge multiplicities along the cycle.
    pub fn count_short_cycles(&self, i: u32) -> (u64, BTreeMap<VertexId, u64>) {
        assert!((2..=5).contains(&i), "cycle length must be in 2..=5");
        let mut per_vertex: BTreeMap<VertexId, u64> =
            self.vertices().map(|v| (v, 0)).collect();
        let mut total = 0u64;

        if i == 2 {
            for u in self.vertices() {
                for v in self.neighbors(u) {
                    if u < v {
                        let m = self.multiplicity(u, v) as u64;
                        let c = m * (m - 1) / 2;
                        if c > 0 {
                            total += c;
                            *per_vertex.get_mut(&u).unwrap() += c;
                            *per_vertex.get_mut(&v).unwrap() += c;
                        }
                    }
                }
            }
            return (total, per_vertex);
        }

        // Enumerate vertex cycles v0 < others, directed canonically.
        let verts: Vec<VertexId> = self.vertices().collect();
        let len = i as usize;
        let mut path: Vec<VertexId> = Vec::with_capacity(len);
        for &start in &verts {
            path.clear();
            path.push(start);
            self.cycle_dfs(start, start, len, &mut path, &mut total, &mut per_vertex);
        }
        (total, per_vertex)
    }

    fn cycle_dfs(
        &self,
        start: VertexId,
        v: VertexId,
        len: usize,
        path: &mut Vec<VertexId>,
        total: &mut u64,
        per_vertex: &mut BTreeMap<VertexId, u64>,
    ) {
        if path.len() == len {
            if self.multiplicity(v, start) > 0 && path[1] < *path.last().unwrap() {
                // Canonical orientation: second vertex smaller than last.
                let mut weight = self.multiplicity(v, start) as u64;
                for w in path.windows(2) {
                    weight *= self.multiplicity(w[0], w[1]) as u64;
                }
                *total += weight;
                for &u in path.iter() {
                    *per_vertex.get_mut(&u).unwrap() += weight;
                }
            }
            return;
        }
        for u in self.neighbors(v) {
            if u <= start || path.contains(&u) {
                continue;
            }
            // Last step may close only via a vertex > start; intermediate too.
            path.push(u);
            self.cycle_dfs(start, u, len, path, total, per_vertex);
            path.pop();
        }
    }
}

#[cfg(test)]
pub(crate) mod test_graphs {
    use super::*;

    pub fn k4() -> MultiGraph {
        MultiGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    pub fn k5() -> MultiGraph {
        let mut e = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                e.push((u, v));
            }
        }
        MultiGraph::from_edges(5, &e)
    }

    pub fn triangle() -> MultiGraph {
        MultiGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)])
    }

    /// Two vertices joined by `m` parallel edges.
    pub fn parallel(m: usize) -> MultiGraph {
        MultiGraph::from_edges(2, &vec![(0, 1); m])
    }

    /// Theta graph: vertices 0, 1 joined by three paths of lengths a, b, c.
    pub fn theta(a: usize, b: usize, c: usize) -> MultiGraph {
        let mut g = MultiGraph::new();
        let v0 = g.add_vertex(rat(1));
        let v1 = g.add_vertex(rat(1));
        for len in [a, b, c] {
            assert!(len >= 1);
            let mut prev = v0;
            for _ in 1..len {
                let nv = g.add_vertex(rat(1));
                g.add_edge(prev, nv);
                prev = nv;
            }
            g.add_edge(prev, v1);
        }
        g
    }

    pub fn petersen() -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..5u32 {
            e.push((i, (i + 1) % 5)); // outer C5
            e.push((i, i + 5)); // spokes
            e.push((i + 5, (i + 2) % 5 + 5)); // inner pentagram
        }
        MultiGraph::from_edges(10, &e)
    }

    pub fn heawood() -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..14u32 {
            e.push((i, (i + 1) % 14));
        }
        for i in (0..14u32).step_by(2) {
            e.push((i, (i + 5) % 14));
        }
        MultiGraph::from_edges(14, &e)
    }

    /// 3-cube.
    pub fn cube() -> MultiGraph {
        let mut e = Vec::new();
        for v in 0..8u32 {
            for b in 0..3 {
                let w = v ^ (1 << b);
                if v < w {
                    e.push((v, w));
                }
            }
        }
        MultiGraph::from_edges(8, &e)
    }
}

#[cfg(test)]
mod tests {
    use super::test_graphs::*;
    use super::*;

    /// Independent oracle: enumerate all simple vertex cycles (length >= 2
    /// including parallel pairs) and report whether two distinct cycles share
    /// an edge, via edge-set enumeration rather than block machinery.
    pub(crate) fn brute_has_theta(g: &MultiGraph) -> bool {
        let cycles = brute_all_cycles(g);
        for (i, a) in cycles.iter().enumerate() {
            for b in cycles.iter().skip(i + 1) {
                if a.intersection(b).next().is_some() {
                    return true;
                }
            }
        }
        false
    }

    /// All cycles as edge sets: parallel-pair 2-cycles plus simple vertex
    /// cycles expanded over parallel edge choices.
    pub(crate) fn brute_all_cycles(g: &MultiGraph) -> Vec<BTreeSet<EdgeId>> {
        let mut out: Vec<BTreeSet<EdgeId>> = Vec::new();
        let vs: Vec<VertexId> = g.vertices().collect();
        // 2-cycles.
        for &u in &vs {
            for v in g.neighbors(u) {
                if u < v {
                    let ids: Vec<EdgeId> = g.edges_between(u, v).collect();
                    for i in 0..ids.len() {
                        for j in (i + 1)..ids.len() {
                            out.push(BTreeSet::from([ids[i], ids[j]]));
                        }
                    }
                }
            }
        }
        // Vertex cycles of length >= 3 by DFS with canonical start/direction.
        fn dfs(
            g: &MultiGraph,
            start: VertexId,
            v: VertexId,
            path: &mut Vec<VertexId>,
            out: &mut Vec<BTreeSet<EdgeId>>,
        ) {
            for u in g.neighbors(v) {
                if u == start && path.len() >= 3 {
                    if path[1] < *path.last().unwrap() {
                        // Expand parallel choices along the cycle.
                        let mut closed = path.clone();
                        closed.push(start);
                        let mut choices: Vec<Vec<EdgeId>> = vec![vec![]];
                        for w in closed.windows(2) {
                            let ids: Vec<EdgeId> = g.edges_between(w[0], w[1]).collect();
                            let mut next = Vec::new();
                            for c in &choices {
                                for &id in &ids {
                                    let mut c2 = c.clone();
                                    c2.push(id);
                                    next.push(c2);
                                }
                            }
                            choices = next;
                        }
                        for c in choices {
                            out.push(c.into_iter().collect());
                        }
                    }
                    continue;
                }
                if u <= start || path.contains(&u) {
                    continue;
                }
                path.push(u);
                dfs(g, start, u, path, out);
                path.pop();
            }
        }
        for &s in &vs {
            let mut path = vec![s];
            dfs(g, s, s, &mut path, &mut out);
        }
        out
    }

    #[test]
    fn blocks_triangle_with_pendant() {
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let (blocks, cuts) = g.blocks();
        assert_eq!(blocks.len(), 2);
        assert_eq!(cuts, BTreeSet::from([VertexId(2)]));
        let sizes: BTreeSet<usize> = blocks.iter().map(|b| b.edges.len()).collect();
        assert_eq!(sizes, BTreeSet::from([1, 3]));
    }

    #[test]
    fn blocks_parallel_pair_single_block() {
        let g = parallel(2);
        let (blocks, cuts) = g.blocks();
        assert_eq!(blocks.len(), 1);
        assert!(cuts.is_empty());
        assert_eq!(blocks[0].vertices.len(), 2);
        assert_eq!(blocks[0].edges.len(), 2);
        assert!(blocks[0].is_cycle_or_edge);
    }

    #[test]
    fn blocks_k4_single_block() {
        let (blocks, cuts) = k4().blocks();
        assert_eq!(blocks.len(), 1);
        assert!(cuts.is_empty());
        assert!(blocks[0].has_diamond());
    }

    #[test]
    fn blocks_isolated_vertex() {
        let mut g = triangle();
        g.add_vertex(rat(1));
        let (blocks, _) = g.blocks();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().any(|b| b.edges.is_empty() && b.vertices.len() == 1));
    }

    #[test]
    fn blocks_edge_partition() {
        for g in [k4(), k5(), petersen(), heawood(), theta(2, 3, 4)] {
            let (blocks, _) = g.blocks();
            let total: usize = blocks.iter().map(|b| b.edges.len()).sum();
            assert_eq!(total, g.num_edges());
            let mut seen = BTreeSet::new();
            for b in &blocks {
                for &e in &b.edges {
                    assert!(seen.insert(e), "edge in two blocks");
                }
            }
        }
    }

    #[test]
    fn forest_of_cacti_examples() {
        assert!(triangle().is_forest_of_cacti());
        assert!(!k4().is_forest_of_cacti());
        // Two triangles sharing one edge.
        let g = MultiGraph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]);
        assert!(!g.is_forest_of_cacti());
        assert!(parallel(2).is_forest_of_cacti());
        assert!(!parallel(3).is_forest_of_cacti());
    }

    #[test]
    fn find_diamond_none_on_cacti() {
        let mut g = triangle();
        let v = g.add_vertex(rat(1));
        g.add_edge(VertexId(0), v);
        assert!(g.find_any_diamond().is_none());
    }

    #[test]
    fn find_diamond_theta3() {
        let g = parallel(3);
        let d = g.find_any_diamond().unwrap();
        d.validate(&g).unwrap();
        assert_eq!(d.size(), 3);
    }

    #[test]
    fn find_diamond_k4_size5() {
        let g = k4();
        let d = g.find_any_diamond().unwrap();
        d.validate(&g).unwrap();
        // Every theta in K4 has exactly 5 edges.
        assert_eq!(d.size(), 5);
    }

    #[test]
    fn theta_detection_agrees_with_brute_force() {
        let cases = [
            triangle(),
            k4(),
            k5(),
            parallel(2),
            parallel(3),
            theta(1, 2, 2),
            theta(3, 3, 3),
            cube(),
            MultiGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]),
            MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]),
        ];
        for g in cases {
            let brute = brute_has_theta(&g);
            assert_eq!(!g.is_forest_of_cacti(), brute);
            assert_eq!(g.find_any_diamond().is_some(), brute);
            if let Some(d) = g.find_any_diamond() {
                d.validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn short_cycles_k4() {
        let g = k4();
        let (c3, per) = g.count_short_cycles(3);
        assert_eq!(c3, 4);
        assert!(per.values().all(|&c| c == 3));
        let (c4, _) = g.count_short_cycles(4);
        assert_eq!(c4, 3);
    }

    #[test]
    fn short_cycles_parallel_triple() {
        let g = parallel(3);
        let (c2, per) = g.count_short_cycles(2);
        assert_eq!(c2, 3);
        assert_eq!(per[&VertexId(0)], 3);
        assert_eq!(per[&VertexId(1)], 3);
    }

    #[test]
    fn short_cycles_heawood_girth6() {
        let g = heawood();
        assert_eq!(g.num_vertices(), 14);
        assert_eq!(g.num_edges(), 21);
        for i in 2..=5 {
            let (c, _) = g.count_short_cycles(i);
            assert_eq!(c, 0, "length-{i} cycle in Heawood");
        }
    }

    #[test]
    fn short_cycles_match_exhaustive() {
        // Independent check against edge-set cycle enumeration.
        let cases = [
            k4(),
            triangle(),
            parallel(3),
            theta(1, 2, 2),
            theta(2, 2, 2),
            cube(),
            {
                let mut g = triangle();
                g.add_edge(VertexId(0), VertexId(1)); // doubled edge on a triangle
                g
            },
        ];
        for g in cases {
            let all = brute_all_cycles(&g);
            for i in 2..=5usize {
                let expected = all
                    .iter()
                    .filter(|c| c.len() == i)
                    .count() as u64;
                let (got, per) = g.count_short_cycles(i as u32);
                assert_eq!(got, expected, "total length-{i} cycles");
                for v in g.vertices() {
                    let exp_v = all
                        .iter()
                        .filter(|c| {
                            c.len() == i
                                && c.iter().any(|&e| {
                                    let (a, b) = g.ends(e);
                                    a == v || b == v
                                })
                        })
                        .count() as u64;
                    assert_eq!(per[&v], exp_v, "length-{i} cycles at {v}");
                }
            }
        }
    }

    #[test]
    fn delete_vertices_examples() {
        let g = k4();
        let h = g.delete_vertices(&BTreeSet::from([VertexId(3)]));
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.num_edges(), 3);
        assert!(h.is_forest_of_cacti());

        let same = g.delete_vertices(&BTreeSet::new());
        assert_eq!(same, g);

        let t = triangle();
        let empty = t.delete_vertices(&t.vertices().collect());
        assert!(empty.is_empty());
    }

    #[test]
    fn ids_stable_under_deletion() {
        let g = k4();
        let h = g.delete_vertices(&BTreeSet::from([VertexId(0)]));
        let vs: Vec<u32> = h.vertices().map(|v| v.0).collect();
        assert_eq!(vs, vec![1, 2, 3]);
        for e in h.edge_ids() {
            assert_eq!(h.ends(e), g.ends(e));
        }
    }
}
