//! The finite graph of a patch of tiles: vertices, edges (with side
//! subdivision), incident-angle bookkeeping, closure detection, edge
//! labellings, vertex-colouring verification and sum statistics.

use crate::error::{Error, Result};
use crate::geometry::{
    dist_point_segment, interior_angle, point_strictly_inside, polygon_centroid, signed_area,
    snap_tol, Isometry, Point2, SnapIndex, MIN_SEP,
};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Edge decoration carried on a tile side, e.g. Penrose arrows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MarkKind {
    /// Penrose single arrow.
    Single,
    /// Penrose double arrow.
    Double,
    /// Plain direction arrow (Ammann-Beenker hypotenuses, square diagonals).
    Arrow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeMark {
    pub kind: MarkKind,
    /// Arrow points from corner `i` to corner `i + 1` of the side when true.
    pub forward: bool,
}

/// A tile placed in the plane. Corners are listed in the prototile's
/// own role order; orientation is normalized during graph construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlacedTile {
    pub kind: String,
    pub corners: Vec<Point2>,
    /// One entry per side `corners[i] -> corners[i+1]`; empty means undecorated.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub decorations: Vec<Option<EdgeMark>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl PlacedTile {
    pub fn new(kind: &str, corners: Vec<Point2>) -> Self {
        PlacedTile {
            kind: kind.to_string(),
            corners,
            decorations: Vec::new(),
            meta: BTreeMap::new(),
        }
    }

    pub fn with_decorations(mut self, deco: Vec<Option<EdgeMark>>) -> Self {
        assert!(deco.len() == self.corners.len());
        self.decorations = deco;
        self
    }

    /// Counter-clockwise copy; decorations follow the reversal.
    pub fn normalized_ccw(&self) -> PlacedTile {
        if signed_area(&self.corners) >= 0.0 {
            return self.clone();
        }
        let n = self.corners.len();
        let corners: Vec<Point2> = self.corners.iter().rev().cloned().collect();
        // side i of the reversed polygon is old side n-2-i traversed backwards,
        // with old side n-1 staying the closing side
        let decorations = if self.decorations.is_empty() {
            Vec::new()
        } else {
            (0..n)
                .map(|i| {
                    let old = (2 * n - 2 - i) % n;
                    self.decorations[old].map(|m| EdgeMark {
                        kind: m.kind,
                        forward: !m.forward,
                    })
                })
                .collect()
        };
        PlacedTile {
            kind: self.kind.clone(),
            corners,
            decorations,
            meta: self.meta.clone(),
        }
    }
}

/// A supertile overlay on a patch: which template, placed how.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupertileInstance {
    pub kind: String,
    pub iso: Isometry,
    /// Indices into the patch's tile list.
    pub tiles: Vec<usize>,
}

/// An explicit per-edge weight override, in patch coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightMark {
    pub a: Point2,
    pub b: Point2,
    pub weight: u8,
}

/// Pre-graph form of a patch: placed tiles plus whatever structure the
/// labelling rules need (supertile overlay, explicit weight marks).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Patch {
    pub tiling: String,
    pub tiles: Vec<PlacedTile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub supertiles: Vec<SupertileInstance>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marks: Vec<WeightMark>,
}

impl Patch {
    pub fn new(tiling: &str, tiles: Vec<PlacedTile>) -> Self {
        Patch {
            tiling: tiling.to_string(),
            tiles,
            supertiles: Vec::new(),
            marks: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexStatus {
    /// Incident tile angles sum to a full turn; the neighbourhood is complete.
    Closed,
    /// On the rim of the finite patch; the sum is not final.
    Boundary,
}

#[derive(Debug, Clone)]
pub struct TileRecord {
    pub kind: String,
    pub corner_ids: Vec<u32>,
    pub decorations: Vec<Option<EdgeMark>>,
    pub meta: BTreeMap<String, String>,
}

/// The finite realization of the tiling graph over a patch.
#[derive(Debug, Clone)]
pub struct PatchGraph {
    pub vertices: Vec<Point2>,
    /// Sorted unordered pairs, deduplicated, in lexicographic order.
    pub edges: Vec<(u32, u32)>,
    pub tiles: Vec<TileRecord>,
    /// Per vertex: (tile index, interior angle in degrees).
    pub incident: Vec<Vec<(u32, f64)>>,
    /// Per edge: (tile index, side index) for each tile side covering it.
    pub claims: Vec<Vec<(u32, u32)>>,
    edge_index: HashMap<(u32, u32), u32>,
}

impl PatchGraph {
    pub fn edge_id(&self, a: u32, b: u32) -> Option<u32> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edge_index.get(&key).copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    pub fn edge_midpoint(&self, eid: usize) -> Point2 {
        let (a, b) = self.edges[eid];
        self.vertices[a as usize].midpoint(self.vertices[b as usize])
    }

    pub fn closed_vertices(&self) -> Vec<VertexStatus> {
        self.incident
            .iter()
            .map(|list| {
                let total: f64 = list.iter().map(|(_, a)| a).sum();
                if (total - 360.0).abs() < 1e-6 {
                    VertexStatus::Closed
                } else {
                    VertexStatus::Boundary
                }
            })
            .collect()
    }

    /// Contract every degree-2 vertex, merging its edge runs into chains.
    /// The chair's third vertex placement works on this graph.
    pub fn contract_degree2(&self) -> Result<ContractedGraph> {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let keep: Vec<bool> = adj.iter().map(|l| l.len() != 2).collect();
        let mut edges: Vec<ContractedEdge> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for start in 0..n as u32 {
            if !keep[start as usize] || adj[start as usize].is_empty() {
                continue;
            }
            for &next in &adj[start as usize] {
                let mut chain = vec![start, next];
                let (mut prev, mut cur) = (start, next);
                while !keep[cur as usize] {
                    let step = adj[cur as usize]
                        .iter()
                        .copied()
                        .find(|&w| w != prev)
                        .ok_or_else(|| Error::Invalid("dangling degree-2 chain".into()))?;
                    prev = cur;
                    cur = step;
                    chain.push(cur);
                    if chain.len() > n {
                        return Err(Error::Invalid("degree-2 cycle with no junction".into()));
                    }
                }
                let end = cur;
                let canonical = if chain.first() <= chain.last() {
                    chain.clone()
                } else {
                    chain.iter().rev().cloned().collect()
                };
                if seen.insert(canonical) {
                    let (a, b) = if start < end {
                        (start, end)
                    } else {
                        (end, start)
                    };
                    edges.push(ContractedEdge { a, b, chain });
                }
            }
        }
        edges.sort_by(|x, y| (x.a, x.b, &x.chain).cmp(&(y.a, y.b, &y.chain)));
        Ok(ContractedGraph { keep, edges })
    }

    /// Build the graph of a list of placed tiles. Every tile corner becomes a
    /// vertex; a vertex in the interior of another tile's side splits that
    /// side; edges are deduplicated across tiles.
    pub fn build(tiles: &[PlacedTile]) -> Result<PatchGraph> {
        let tiles: Vec<PlacedTile> = tiles.iter().map(|t| t.normalized_ccw()).collect();
        let mut snap = SnapIndex::new();
        let mut corner_ids: Vec<Vec<u32>> = Vec::with_capacity(tiles.len());
        for tile in &tiles {
            let ids: Result<Vec<u32>> = tile
                .corners
                .iter()
                .map(|&p| snap.snap(p).map(|i| i as u32))
                .collect();
            corner_ids.push(ids?);
        }

        let mut edge_index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let mut claims: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut incident: Vec<Vec<(u32, f64)>> = vec![Vec::new(); snap.len()];

        for (ti, tile) in tiles.iter().enumerate() {
            let ids = &corner_ids[ti];
            let m = ids.len();
            for (ci, &cid) in ids.iter().enumerate() {
                let ang = interior_angle(&tile.corners, ci)?;
                incident[cid as usize].push((ti as u32, ang));
            }
            for s in 0..m {
                let a = ids[s];
                let b = ids[(s + 1) % m];
                if a == b {
                    return Err(Error::DegeneratePolygon(s));
                }
                let pa = snap.position(a as usize);
                let pb = snap.position(b as usize);
                let len2 = pa.dist(pb).powi(2);
                let mut chain: Vec<(f64, u32)> = vec![(0.0, a), (1.0, b)];
                for vid in vertices_near_segment(&snap, pa, pb) {
                    if vid == a as usize || vid == b as usize {
                        continue;
                    }
                    let p = snap.position(vid);
                    if dist_point_segment(p, pa, pb) >= snap_tol() {
                        continue;
                    }
                    let t = (p - pa).dot(pb - pa) / len2;
                    if t > snap_tol() && t < 1.0 - snap_tol() {
                        chain.push((t, vid as u32));
                        incident[vid].push((ti as u32, 180.0));
                    }
                }
                chain.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
                for w in chain.windows(2) {
                    let (u, v) = (w[0].1, w[1].1);
                    let key = if u < v { (u, v) } else { (v, u) };
                    let eid = *edge_index.entry(key).or_insert_with(|| {
                        edges.push(key);
                        claims.push(Vec::new());
                        (edges.len() - 1) as u32
                    });
                    claims[eid as usize].push((ti as u32, s as u32));
                }
            }
        }

        for (eid, c) in claims.iter().enumerate() {
            if c.len() > 2 {
                let (a, b) = edges[eid];
                return Err(Error::NonmanifoldEdge(a as usize, b as usize));
            }
        }
        for list in &incident {
            let total: f64 = list.iter().map(|(_, a)| a).sum();
            if total > 360.0 + 1e-6 {
                let t0 = list[0].0 as usize;
                let t1 = list.get(1).map(|x| x.0 as usize).unwrap_or(t0);
                return Err(Error::OverlappingTiles(t0, t1));
            }
        }
        check_sampled_overlap(&tiles)?;

        let mut order: Vec<u32> = (0..edges.len() as u32).collect();
        order.sort_by_key(|&e| edges[e as usize]);
        let edges_sorted: Vec<(u32, u32)> = order.iter().map(|&e| edges[e as usize]).collect();
        let claims_sorted: Vec<Vec<(u32, u32)>> =
            order.iter().map(|&e| claims[e as usize].clone()).collect();
        let edge_index = edges_sorted
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i as u32))
            .collect();

        let tile_records = tiles
            .iter()
            .zip(corner_ids)
            .map(|(t, ids)| TileRecord {
                kind: t.kind.clone(),
                corner_ids: ids,
                decorations: t.decorations.clone(),
                meta: t.meta.clone(),
            })
            .collect();

        Ok(PatchGraph {
            vertices: snap.points().to_vec(),
            edges: edges_sorted,
            tiles: tile_records,
            incident,
            claims: claims_sorted,
            edge_index,
        })
    }
}

fn vertices_near_segment(snap: &SnapIndex, a: Point2, b: Point2) -> Vec<usize> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let steps = (a.dist(b) / MIN_SEP).ceil().max(1.0) as usize;
    for i in 0..=steps {
        let p = a.lerp(b, i as f64 / steps as f64);
        for vid in snap.ids_within(p, MIN_SEP) {
            if seen.insert(vid) {
                out.push(vid);
            }
        }
    }
    out
}

fn check_sampled_overlap(tiles: &[PlacedTile]) -> Result<()> {
    // bucket tiles by bounding box on a coarse grid, then sample centroids
    let cell = 4.0;
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    let bboxes: Vec<(Point2, Point2)> = tiles
        .iter()
        .map(|t| {
            let mut lo = t.corners[0];
            let mut hi = t.corners[0];
            for p in &t.corners {
                lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
            }
            (lo, hi)
        })
        .collect();
    for (i, (lo, hi)) in bboxes.iter().enumerate() {
        let (x0, y0) = ((lo.x / cell).floor() as i64, (lo.y / cell).floor() as i64);
        let (x1, y1) = ((hi.x / cell).floor() as i64, (hi.y / cell).floor() as i64);
        for x in x0..=x1 {
            for y in y0..=y1 {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }
    let mut checked = HashSet::new();
    for bucket in grid.values() {
        for (ii, &i) in bucket.iter().enumerate() {
            for &j in &bucket[ii + 1..] {
                if !checked.insert((i.min(j), i.max(j))) {
                    continue;
                }
                let (alo, ahi) = bboxes[i];
                let (blo, bhi) = bboxes[j];
                if alo.x > bhi.x || blo.x > ahi.x || alo.y > bhi.y || blo.y > ahi.y {
                    continue;
                }
                let ci = polygon_centroid(&tiles[i].corners);
                let cj = polygon_centroid(&tiles[j].corners);
                if point_strictly_inside(&tiles[j].corners, ci, snap_tol())
                    || point_strictly_inside(&tiles[i].corners, cj, snap_tol())
                {
                    return Err(Error::OverlappingTiles(i, j));
                }
            }
        }
    }
    Ok(())
}

/// A degree-2-contracted view of a patch graph. Edge endpoints refer to the
/// original vertex ids; `chain` lists the full vertex run including both ends.
#[derive(Debug, Clone)]
pub struct ContractedGraph {
    pub keep: Vec<bool>,
    pub edges: Vec<ContractedEdge>,
}

#[derive(Debug, Clone)]
pub struct ContractedEdge {
    pub a: u32,
    pub b: u32,
    pub chain: Vec<u32>,
}

/// Total map from a graph's edges to weights.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Labelling {
    pub weights: Vec<u8>,
}

impl Labelling {
    pub fn constant(n_edges: usize, w: u8) -> Self {
        Labelling {
            weights: vec![w; n_edges],
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Conflict {
    pub a: u32,
    pub b: u32,
    pub sum: i64,
    pub a_pos: Point2,
    pub b_pos: Point2,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct ConflictReport {
    pub conflicts: Vec<Conflict>,
    pub closed_vertices: usize,
    pub checked_edges: usize,
}

impl ConflictReport {
    pub fn is_clean(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// Sum of weights of edges incident to `v`.
pub fn weighted_degree(g: &PatchGraph, l: &Labelling, v: u32) -> i64 {
    g.edges
        .iter()
        .zip(&l.weights)
        .filter(|((a, b), _)| *a == v || *b == v)
        .map(|(_, &w)| w as i64)
        .sum()
}

fn sums_for(edges: &[(u32, u32)], weights: &[u8], n: usize) -> Vec<i64> {
    let mut sums = vec![0i64; n];
    for (&(a, b), &w) in edges.iter().zip(weights) {
        sums[a as usize] += w as i64;
        sums[b as usize] += w as i64;
    }
    sums
}

fn verify_generic(
    positions: &[Point2],
    closed: &[bool],
    edges: &[(u32, u32)],
    weights: &[u8],
) -> Result<ConflictReport> {
    if edges.len() != weights.len() {
        return Err(Error::Invalid(format!(
            "labelling has {} weights for {} edges",
            weights.len(),
            edges.len()
        )));
    }
    let sums = sums_for(edges, weights, positions.len());
    let mut report = ConflictReport {
        closed_vertices: closed.iter().filter(|&&c| c).count(),
        ..Default::default()
    };
    for &(a, b) in edges {
        if closed[a as usize] && closed[b as usize] {
            report.checked_edges += 1;
            if sums[a as usize] == sums[b as usize] {
                report.conflicts.push(Conflict {
                    a,
                    b,
                    sum: sums[a as usize],
                    a_pos: positions[a as usize],
                    b_pos: positions[b as usize],
                });
            }
        }
    }
    Ok(report)
}

/// Report every edge whose endpoints are both Closed and share the same
/// weighted degree. An empty report means the labelled patch is valid.
pub fn verify_colouring(g: &PatchGraph, l: &Labelling) -> Result<ConflictReport> {
    let closed: Vec<bool> = g
        .closed_vertices()
        .iter()
        .map(|s| *s == VertexStatus::Closed)
        .collect();
    verify_generic(&g.vertices, &closed, &g.edges, &l.weights)
}

/// Same check on a degree-2-contracted graph; closure status comes from the
/// underlying patch graph.
pub fn verify_colouring_contracted(
    g: &PatchGraph,
    cg: &ContractedGraph,
    l: &Labelling,
) -> Result<ConflictReport> {
    let closed: Vec<bool> = g
        .closed_vertices()
        .iter()
        .zip(&cg.keep)
        .map(|(s, &k)| k && *s == VertexStatus::Closed)
        .collect();
    let edges: Vec<(u32, u32)> = cg.edges.iter().map(|e| (e.a, e.b)).collect();
    verify_generic(&g.vertices, &closed, &edges, &l.weights)
}

/// Relative frequency of each weighted degree over Closed vertices.
pub fn sum_histogram(g: &PatchGraph, l: &Labelling) -> Result<BTreeMap<i64, f64>> {
    let closed = g.closed_vertices();
    let sums = sums_for(&g.edges, &l.weights, g.vertices.len());
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    let mut total = 0usize;
    for (v, status) in closed.iter().enumerate() {
        if *status == VertexStatus::Closed {
            *counts.entry(sums[v]).or_default() += 1;
            total += 1;
        }
    }
    if total == 0 {
        return Err(Error::NoClosedVertices);
    }
    Ok(counts
        .into_iter()
        .map(|(s, c)| (s, c as f64 / total as f64))
        .collect())
}

/// Distinct sums attained on Closed vertices of a contracted graph.
pub fn closed_sums_contracted(g: &PatchGraph, cg: &ContractedGraph, l: &Labelling) -> Vec<i64> {
    let closed = g.closed_vertices();
    let edges: Vec<(u32, u32)> = cg.edges.iter().map(|e| (e.a, e.b)).collect();
    let sums = sums_for(&edges, &l.weights, g.vertices.len());
    let mut out: Vec<i64> = closed
        .iter()
        .enumerate()
        .filter(|(v, s)| cg.keep[*v] && **s == VertexStatus::Closed)
        .map(|(v, _)| sums[v])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}
