//! Canonical labeling of small graphs.
//!
//! Vertices are split into cells by degree and then by neighbour counts into
//! each cell until stable; ties are broken by individualizing each vertex of
//! the first non-singleton cell in turn. The canonical code is the smallest
//! graph6-ordered adjacency code over all leaves. Two vertices of a cell with
//! identical neighbourhoods (apart from each other) are interchangeable, so only
//! one of them is branched on.

use crate::graph::Graph;

/// Canonical code of a graph: vertex count plus the upper-triangle adjacency
/// bits (graph6 column order, first bit most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    code: u128,
}

impl CanonicalForm {
    pub fn num_vertices(&self) -> usize {
        self.n as usize
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.n];
        out.extend_from_slice(&self.code.to_be_bytes());
        out
    }

    pub fn to_hex(&self) -> String {
        self.to_bytes().iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn code_of(g: &Graph, order: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..order.len() {
        let row = g.neighbors(order[j]);
        for &vi in &order[..j] {
            code = code << 1 | (row >> vi & 1) as u128;
        }
    }
    code
}

struct Canonizer<'a> {
    g: &'a Graph,
    best: Option<(u128, Vec<usize>)>,
}

impl Canonizer<'_> {
    fn refine(&self, cells: &mut Vec<u32>) {
        let adj = self.g.adjacency();
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut split_any = false;
            let mut next: Vec<u32> = Vec::with_capacity(cells.len() + 2);
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                // group by neighbour count into the splitter, ascending
                let mut groups: [u32; 17] = [0; 17];
                let mut rest = cell;
                while rest != 0 {
                    let v = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    groups[(adj[v] & splitter).count_ones() as usize] |= 1 << v;
                }
                let before = next.len();
                next.extend(groups.iter().copied().filter(|&m| m != 0));
                if next.len() - before > 1 {
                    split_any = true;
                }
            }
            *cells = next;
            s = if split_any { 0 } else { s + 1 };
        }
    }

    fn search(&mut self, mut cells: Vec<u32>) {
        self.refine(&mut cells);
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            let code = code_of(self.g, &order);
            if self.best.as_ref().map_or(true, |(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let adj = self.g.adjacency();
        let cell = cells[t];
        let mut tried = 0u32;
        let mut rest = cell;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut others = tried;
            let mut twin = false;
            while others != 0 {
                let u = others.trailing_zeros() as usize;
                others &= others - 1;
                if adj[u] & !(1 << v) == adj[v] & !(1 << u) {
                    twin = true;
                    break;
                }
            }
            if twin {
                continue;
            }
            tried |= 1 << v;
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(1 << v);
            next.push(cell & !(1 << v));
            next.extend_from_slice(&cells[t + 1..]);
            self.search(next);
        }
    }
}

/// Canonical form together with the labeling: position `k` holds old vertex `order[k]`.
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.num_vertices();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut c = Canonizer { g, best: None };
    c.search(vec![all]);
    let (code, order) = c.best.expect("at least one leaf");
    (CanonicalForm { n: n as u8, code }, order)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// The isomorphic copy of `g` whose labeling realizes its canonical form.
pub fn canonical_graph(g: &Graph) -> (CanonicalForm, Graph) {
    let (form, order) = canonical_labeling(g);
    (form, g.relabeled(&order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn relabeled_paths_agree() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&tri));
    }

    #[test]
    fn eleven_graphs_on_four_vertices() {
        let forms: HashSet<_> = Graph::all_labeled(4)
            .unwrap()
            .map(|g| canonical_form(&g))
            .collect();
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn canonical_graph_reproduces_form() {
        let g = Graph::from_edges(5, &[(0, 3), (3, 4), (1, 4), (2, 4)]).unwrap();
        let (form, cg) = canonical_graph(&g);
        assert_eq!(canonical_form(&cg), form);
        assert_eq!(cg.edge_count(), g.edge_count());
    }
}
