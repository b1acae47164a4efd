use serde::Serialize;

/// Components as nodes, with an edge for each pair that crosses inside some
/// cube.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingGraph {
    pub nodes: usize,
    /// Sorted pairs (s, t) with s < t.
    pub edges: Vec<(u32, u32)>,
}

impl CrossingGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes];
        for &(s, t) in &self.edges {
            adj[s as usize].push(t as usize);
            adj[t as usize].push(s as usize);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(s, t)| s as usize == v || t as usize == v).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: usize,
    /// False when the count is only a greedy upper bound.
    pub exact: bool,
    pub assignment: Vec<u32>,
}

/// Largest graph colored by exhaustive search.
pub const EXACT_COLORING_LIMIT: usize = 20;

/// Proper coloring with the fewest colors: exhaustive up to
/// [`EXACT_COLORING_LIMIT`] nodes, a DSATUR upper bound beyond.
pub fn chromatic_number(g: &CrossingGraph) -> Coloring {
    let adj = g.adjacency();
    let greedy = dsatur(&adj);
    if g.nodes > EXACT_COLORING_LIMIT {
        let colors = greedy.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        return Coloring { colors, exact: false, assignment: greedy };
    }
    let upper = greedy.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut best = (upper, greedy);
    for k in 1..upper {
        let mut col = vec![u32::MAX; g.nodes];
        if color_with(&adj, k as u32, 0, &mut col) {
            best = (k, col);
            break;
        }
    }
    Coloring { colors: best.0, exact: true, assignment: best.1 }
}

fn color_with(adj: &[Vec<usize>], k: u32, v: usize, col: &mut [u32]) -> bool {
    if v == adj.len() {
        return true;
    }
    // only open one new color at a time to skip permuted colorings
    let used = col[..v].iter().copied().max().map_or(0, |m| m + 1);
    for c in 0..k.min(used + 1) {
        if adj[v].iter().all(|&w| col[w] != c) {
            col[v] = c;
            if color_with(adj, k, v + 1, col) {
                return true;
            }
        }
    }
    col[v] = u32::MAX;
    false
}

fn dsatur(adj: &[Vec<usize>]) -> Vec<u32> {
    let n = adj.len();
    let mut col = vec![u32::MAX; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| col[v] == u32::MAX)
            .max_by_key(|&v| {
                let mut seen: Vec<u32> = adj[v].iter().map(|&w| col[w]).filter(|&c| c != u32::MAX).collect();
                seen.sort_unstable();
                seen.dedup();
                (seen.len(), adj[v].len(), std::cmp::Reverse(v))
            })
            .expect("an uncolored node remains");
        col[v] = (0..).find(|c| adj[v].iter().all(|&w| col[w] != *c)).unwrap();
    }
    col
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> CrossingGraph {
        let edges = (0..n).map(|i| (i.min((i + 1) % n) as u32, i.max((i + 1) % n) as u32)).collect();
        CrossingGraph { nodes: n, edges }
    }

    #[test]
    fn odd_cycles_need_three() {
        assert_eq!(chromatic_number(&cycle(5)).colors, 3);
        assert_eq!(chromatic_number(&cycle(6)).colors, 2);
        let empty = CrossingGraph { nodes: 4, edges: Vec::new() };
        assert_eq!(chromatic_number(&empty).colors, 1);
    }

    #[test]
    fn complete_graph() {
        let edges = (0..5u32).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let c = chromatic_number(&CrossingGraph { nodes: 5, edges });
        assert_eq!((c.colors, c.exact), (5, true));
    }
}
