//! Bipartite graphs from expansion sets and perfect `(1,k)`-matchings.
//!
//! Vertices carry an interior flag. Interior left vertices must be matched
//! exactly `k` times and interior right vertices exactly once; boundary
//! vertices only respect the upper bounds. With every vertex interior this
//! is the usual perfect `(1,k)`-matching.

use std::collections::{BTreeSet, HashMap};

use super::flow::{FlowNetwork, INF};
use super::ParadoxError;
use crate::folner::ExpansionSet;
use crate::space::{CellSpace, Point, Window};

#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteGraph {
    pub left: Vec<Point>,
    pub right: Vec<Point>,
    /// `adj[x]` lists `(y, label)` with increasing `y`; the label indexes the
    /// expansion set that produced the edge (first one on ties).
    pub adj: Vec<Vec<(usize, usize)>>,
    pub left_interior: Vec<bool>,
    pub right_interior: Vec<bool>,
}

impl BipartiteGraph {
    /// An abstract graph on `Index` points with every vertex interior.
    pub fn from_adjacency(n_left: usize, n_right: usize, adj: Vec<Vec<usize>>) -> Self {
        assert_eq!(adj.len(), n_left);
        let adj = adj
            .into_iter()
            .map(|ys| {
                let set: BTreeSet<usize> = ys.into_iter().inspect(|&y| assert!(y < n_right)).collect();
                set.into_iter().map(|y| (y, 0)).collect()
            })
            .collect();
        BipartiteGraph {
            left: (0..n_left as u32).map(Point::Index).collect(),
            right: (0..n_right as u32).map(Point::Index).collect(),
            adj,
            left_interior: vec![true; n_left],
            right_interior: vec![true; n_right],
        }
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    /// `𝒩_r(A)`
    pub fn right_neighbours(&self, a: &[usize]) -> BTreeSet<usize> {
        a.iter().flat_map(|&x| self.adj[x].iter().map(|&(y, _)| y)).collect()
    }

    /// `𝒩_l(B)`
    pub fn left_neighbours(&self, b: &[usize]) -> BTreeSet<usize> {
        let b: BTreeSet<usize> = b.iter().copied().collect();
        (0..self.left.len()).filter(|&x| self.adj[x].iter().any(|(y, _)| b.contains(y))).collect()
    }

    fn interior_left(&self) -> Vec<usize> {
        (0..self.left.len()).filter(|&x| self.left_interior[x]).collect()
    }

    fn interior_right(&self) -> Vec<usize> {
        (0..self.right.len()).filter(|&y| self.right_interior[y]).collect()
    }
}

/// Builds the graph with an edge `m → m ⊵ e` for every core point `m` and
/// `e ∈ E`. Right vertices are ordered by window index.
///
/// A right vertex is interior when every exact fiber over it lies in the
/// core, so all its potential partners are present.
pub fn build_graph(space: &CellSpace, e: &ExpansionSet, window: &Window) -> Result<BipartiteGraph, ParadoxError> {
    let left: Vec<Point> = window.core().to_vec();
    let mut images: Vec<Vec<(usize, usize)>> = Vec::with_capacity(left.len());
    let mut right_by_window: BTreeSet<usize> = BTreeSet::new();
    for m in &left {
        let mut row = Vec::with_capacity(e.len());
        for (label, c) in e.cosets().iter().enumerate() {
            let y = space.semi_action(m, c);
            let idx = window
                .index_of(&y)
                .ok_or_else(|| ParadoxError::Uncertified(format!("{m} ⊵ {c} = {y} leaves the halo")))?;
            right_by_window.insert(idx);
            row.push((idx, label));
        }
        images.push(row);
    }
    let order: Vec<usize> = right_by_window.into_iter().collect();
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let adj = images
        .into_iter()
        .map(|row| {
            let mut out: Vec<(usize, usize)> = Vec::with_capacity(row.len());
            for (w, label) in row {
                let y = pos[&w];
                if !out.iter().any(|&(z, _)| z == y) {
                    out.push((y, label));
                }
            }
            out.sort_unstable();
            out
        })
        .collect();
    let right: Vec<Point> = order.iter().map(|&w| window.points()[w].clone()).collect();
    let right_interior = right
        .iter()
        .map(|y| e.cosets().iter().all(|c| space.exact_fiber(y, c).iter().all(|m| window.in_core(m))))
        .collect();
    Ok(BipartiteGraph {
        left_interior: vec![true; left.len()],
        left,
        right,
        adj,
        right_interior,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matching {
    pub k: usize,
    /// Matched right vertices of each left vertex, increasing.
    pub left_matches: Vec<Vec<usize>>,
    pub right_match: Vec<Option<usize>>,
}

impl Matching {
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_matches.iter().enumerate().flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HaremOutcome {
    Matched(Matching),
    /// `|𝒩_r(A)| < k|A|` for this set of interior left vertices.
    LeftViolation { a: Vec<usize>, neighbours: usize },
    /// `k·|𝒩_l(B)| < |B|` for this set of interior right vertices.
    RightViolation { b: Vec<usize>, neighbours: usize },
    /// Infeasible, but neither one-sided Hall test isolates a witness; only
    /// possible when some vertices are boundary vertices.
    Mixed,
}

/// Checks the degree constraints of a `(1,k)`-matching against `g`.
pub fn verify_matching(g: &BipartiteGraph, m: &Matching) -> Result<(), String> {
    let mut right_count = vec![0usize; g.right.len()];
    for (x, ys) in m.left_matches.iter().enumerate() {
        let want = if g.left_interior[x] { ys.len() == m.k } else { ys.len() <= m.k };
        if !want {
            return Err(format!("left {} matched {} times", g.left[x], ys.len()));
        }
        for &y in ys {
            if !g.adj[x].iter().any(|&(z, _)| z == y) {
                return Err(format!("{} - {} is not an edge", g.left[x], g.right[y]));
            }
            right_count[y] += 1;
            if m.right_match[y] != Some(x) {
                return Err(format!("right {} disagrees about its partner", g.right[y]));
            }
        }
    }
    for (y, &c) in right_count.iter().enumerate() {
        let ok = if g.right_interior[y] { c == 1 } else { c <= 1 };
        if !ok || (c == 0 && m.right_match[y].is_some()) {
            return Err(format!("right {} matched {c} times", g.right[y]));
        }
    }
    Ok(())
}

/// Finds an interior-perfect `(1,k)`-matching by a max-flow with lower
/// bounds, or a Hall-condition violation.
pub fn harem_matching(g: &BipartiteGraph, k: usize) -> Result<HaremOutcome, ParadoxError> {
    if k == 0 {
        return Err(ParadoxError::BadK(k));
    }
    if let Some(m) = lower_bound_matching(g, k) {
        debug_assert_eq!(verify_matching(g, &m), Ok(()));
        return Ok(HaremOutcome::Matched(m));
    }
    if let Some((a, neighbours)) = left_witness(g, k) {
        return Ok(HaremOutcome::LeftViolation { a, neighbours });
    }
    if let Some((b, neighbours)) = right_witness(g, k) {
        return Ok(HaremOutcome::RightViolation { b, neighbours });
    }
    Ok(HaremOutcome::Mixed)
}

/// Circulation with lower bounds: `s → x` in `[k,k]` (interior) or `[0,k]`,
/// `x → y` in `[0,1]`, `y → t` in `[1,1]` (interior) or `[0,1]`, `t → s`
/// unbounded. Feasible iff the auxiliary flow saturates all demands.
fn lower_bound_matching(g: &BipartiteGraph, k: usize) -> Option<Matching> {
    let (nl, nr) = (g.left.len(), g.right.len());
    let (s, t, ss, tt) = (0, 1, 2 + nl + nr, 3 + nl + nr);
    let mut net = FlowNetwork::new(4 + nl + nr);
    let mut excess = vec![0i64; 4 + nl + nr];
    let k = k as i64;
    for x in 0..nl {
        let low = if g.left_interior[x] { k } else { 0 };
        if k - low > 0 {
            net.add_edge(s, 2 + x, k - low);
        }
        excess[2 + x] += low;
        excess[s] -= low;
    }
    let mut edge_ids = Vec::with_capacity(g.edge_count());
    for (x, row) in g.adj.iter().enumerate() {
        for &(y, _) in row {
            edge_ids.push((x, y, net.add_edge(2 + x, 2 + nl + y, 1)));
        }
    }
    for y in 0..nr {
        let low = if g.right_interior[y] { 1 } else { 0 };
        if 1 - low > 0 {
            net.add_edge(2 + nl + y, t, 1 - low);
        }
        excess[t] += low;
        excess[2 + nl + y] -= low;
    }
    net.add_edge(t, s, INF);
    let mut demand = 0;
    for (v, &ex) in excess.iter().enumerate() {
        if ex > 0 {
            net.add_edge(ss, v, ex);
            demand += ex;
        } else if ex < 0 {
            net.add_edge(v, tt, -ex);
        }
    }
    if net.max_flow(ss, tt) != demand {
        return None;
    }
    let mut left_matches = vec![Vec::new(); nl];
    let mut right_match = vec![None; nr];
    for (x, y, id) in edge_ids {
        if net.flow_on(id) == 1 {
            left_matches[x].push(y);
            right_match[y] = Some(x);
        }
    }
    Some(Matching { k: k as usize, left_matches, right_match })
}

/// Max-flow from interior left vertices (capacity `k`) to all right vertices
/// (capacity 1) with unbounded middle edges; a deficient flow yields
/// `A = X_int ∩ R` from the residual cut, and then `|𝒩_r(A)| < k|A|`.
fn left_witness(g: &BipartiteGraph, k: usize) -> Option<(Vec<usize>, usize)> {
    let (nl, nr) = (g.left.len(), g.right.len());
    let (s, t) = (0, 1);
    let mut net = FlowNetwork::new(2 + nl + nr);
    let xs = g.interior_left();
    for &x in &xs {
        net.add_edge(s, 2 + x, k as i64);
        for &(y, _) in &g.adj[x] {
            net.add_edge(2 + x, 2 + nl + y, INF);
        }
    }
    for y in 0..nr {
        net.add_edge(2 + nl + y, t, 1);
    }
    if net.max_flow(s, t) >= (k * xs.len()) as i64 {
        return None;
    }
    let reach = net.reachable(s);
    let a: Vec<usize> = xs.into_iter().filter(|&x| reach[2 + x]).collect();
    let n = g.right_neighbours(&a).len();
    assert!(n < k * a.len(), "min-cut witness fails the left Hall condition");
    Some((a, n))
}

/// The mirror image: interior right vertices (capacity 1) to all left
/// vertices (capacity `k`); a deficient flow yields `B` with `k|𝒩_l(B)| < |B|`.
fn right_witness(g: &BipartiteGraph, k: usize) -> Option<(Vec<usize>, usize)> {
    let (nl, nr) = (g.left.len(), g.right.len());
    let (s, t) = (0, 1);
    let mut net = FlowNetwork::new(2 + nl + nr);
    let ys = g.interior_right();
    for &y in &ys {
        net.add_edge(s, 2 + nl + y, 1);
    }
    for (x, row) in g.adj.iter().enumerate() {
        for &(y, _) in row {
            if g.right_interior[y] {
                net.add_edge(2 + nl + y, 2 + x, INF);
            }
        }
        net.add_edge(2 + x, t, k as i64);
    }
    if net.max_flow(s, t) >= ys.len() as i64 {
        return None;
    }
    let reach = net.reachable(s);
    let b: Vec<usize> = ys.into_iter().filter(|&y| reach[2 + nl + y]).collect();
    let n = g.left_neighbours(&b).len();
    assert!(k * n < b.len(), "min-cut witness fails the right Hall condition");
    Some((b, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::CellSpace;

    #[test]
    fn single_left_vertex() {
        let g = BipartiteGraph::from_adjacency(1, 2, vec![vec![0, 1]]);
        let HaremOutcome::Matched(m) = harem_matching(&g, 2).unwrap() else { panic!() };
        assert_eq!(m.pairs().collect::<Vec<_>>(), vec![(0, 0), (0, 1)]);
        assert!(harem_matching(&g, 0).is_err());
    }

    #[test]
    fn witnesses() {
        // two left vertices sharing three right vertices
        let g = BipartiteGraph::from_adjacency(2, 3, vec![vec![0, 1], vec![1, 2]]);
        let HaremOutcome::LeftViolation { a, neighbours } = harem_matching(&g, 2).unwrap() else { panic!() };
        assert!(neighbours < 2 * a.len());
        // one left vertex, three right vertices: a right vertex is left over
        let g = BipartiteGraph::from_adjacency(1, 3, vec![vec![0, 1, 2]]);
        let HaremOutcome::RightViolation { b, neighbours } = harem_matching(&g, 2).unwrap() else { panic!() };
        assert!(2 * neighbours < b.len());
    }

    #[test]
    fn free_group_graph() {
        let f2 = CellSpace::free(2).unwrap();
        let e = ExpansionSet::new(&f2, f2.coset_ball(1));
        let w = f2.ball_window(2, 3).unwrap();
        let g = build_graph(&f2, &e, &w).unwrap();
        assert!(g.adj.iter().all(|row| row.len() == 5));
        assert_eq!(g.right.len(), 53);
        assert_eq!(g.right_interior.iter().filter(|&&b| b).count(), 5);
        let HaremOutcome::Matched(m) = harem_matching(&g, 2).unwrap() else { panic!() };
        verify_matching(&g, &m).unwrap();
    }

    #[test]
    fn identity_expansion_gives_identity_graph() {
        let s = crate::catalog::space("affine:3").unwrap();
        let w = s.whole_window().unwrap();
        let g = build_graph(&s, &ExpansionSet::new(&s, [s.identity_coset()]), &w).unwrap();
        for (x, row) in g.adj.iter().enumerate() {
            assert_eq!(row.len(), 1);
            assert_eq!(g.right[row[0].0], g.left[x]);
        }
        let full = build_graph(&s, &ExpansionSet::new(&s, s.all_cosets().unwrap()), &w).unwrap();
        assert_eq!(full.edge_count(), 9);
    }

    #[test]
    fn lattice_box_violates_left_condition() {
        let z2 = CellSpace::lattice(2);
        let e = ExpansionSet::new(&z2, z2.coset_ball(1));
        let w = z2.box_window(6, 1).unwrap();
        let g = build_graph(&z2, &e, &w).unwrap();
        let HaremOutcome::LeftViolation { a, neighbours } = harem_matching(&g, 2).unwrap() else { panic!() };
        assert!(neighbours < 2 * a.len());
        assert_eq!(g.right_neighbours(&a).len(), neighbours);
    }

    #[test]
    fn uncertified_halo_is_refused() {
        let f2 = CellSpace::free(2).unwrap();
        let e = ExpansionSet::new(&f2, f2.coset_ball(1));
        assert!(build_graph(&f2, &e, &f2.ball_window(2, 2).unwrap()).is_err());
    }
}
