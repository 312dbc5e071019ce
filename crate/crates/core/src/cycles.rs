//! Strongly connected components and odd directed cycle detection.

use crate::digraph::Digraph;
use crate::vertex_set::VertexId;

/// Strongly connected components (iterative Tarjan).
///
/// Returns `comp[v]`, numbered in reverse topological order of the
/// condensation, and the component count.
pub fn strongly_connected_components(g: &Digraph) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack: Vec<VertexId> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    let adj: Vec<Vec<VertexId>> = (0..n).map(|v| g.out(v).to_vec()).collect();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut call: Vec<(VertexId, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (comp, count)
}

/// Whether `g` contains a directed cycle of odd length.
///
/// A strongly connected digraph has an odd directed cycle exactly when its
/// underlying undirected graph is not bipartite, so each component is
/// 2-colored on its internal arcs.
pub fn has_odd_directed_cycle(g: &Digraph) -> bool {
    let n = g.n();
    let (comp, _) = strongly_connected_components(g);
    let mut color: Vec<Option<bool>> = vec![None; n];
    let mut queue = Vec::new();
    for start in 0..n {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push(start);
        while let Some(v) = queue.pop() {
            let cv = color[v].unwrap();
            for w in g.out(v).iter().chain(g.inn(v).iter()) {
                if comp[w] != comp[v] {
                    continue;
                }
                match color[w] {
                    None => {
                        color[w] = Some(!cv);
                        queue.push(w);
                    }
                    Some(cw) if cw == cv => return true,
                    Some(_) => {}
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn fixtures() {
        assert!(has_odd_directed_cycle(&c3()));
        assert!(!has_odd_directed_cycle(&c4()));
        assert!(!has_odd_directed_cycle(&c2()));
        assert!(has_odd_directed_cycle(&domc3()));
        assert!(!has_odd_directed_cycle(&Digraph::empty(0)));
    }

    #[test]
    fn components_of_a_chain_of_cycles() {
        // 0 <-> 1 -> 2 <-> 3
        let g = Digraph::build(4, [(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
        let (comp, count) = strongly_connected_components(&g);
        assert_eq!(count, 2);
        assert_eq!(comp[0], comp[1]);
        assert_eq!(comp[2], comp[3]);
        assert_ne!(comp[0], comp[2]);
        // sink component is numbered first
        assert!(comp[2] < comp[0]);
    }

    #[test]
    fn odd_cycle_split_across_components_does_not_count() {
        // triangle in the underlying graph, but no directed cycle at all
        let g = Digraph::build(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!has_odd_directed_cycle(&g));
    }
}
