use std::collections::VecDeque;

use rayon::prelude::*;

use super::graph::UndirectedGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLength {
    pub mean: f64,
    /// No pair of distinct nodes is connected; `mean` is then 0.
    pub degenerate: bool,
}

fn bfs_from(g: &UndirectedGraph, src: usize, dist: &mut [usize]) -> (u64, u64) {
    dist.fill(usize::MAX);
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    let (mut sum, mut count) = (0u64, 0u64);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                sum += dist[v] as u64;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    (sum, count)
}

/// Mean unweighted shortest-path length over ordered pairs of distinct,
/// mutually reachable nodes. Unreachable pairs are left out.
pub fn avg_path_length(g: &UndirectedGraph) -> PathLength {
    let n = g.node_count();
    let (sum, count) = (0..n)
        .into_par_iter()
        .map_init(
            || vec![usize::MAX; n],
            |dist, src| bfs_from(g, src, dist),
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if count == 0 {
        PathLength {
            mean: 0.0,
            degenerate: true,
        }
    } else {
        PathLength {
            mean: sum as f64 / count as f64,
            degenerate: false,
        }
    }
}
