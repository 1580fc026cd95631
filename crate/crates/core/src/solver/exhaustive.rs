//! Brute-force minimum over every correspondence.
//!
//! Walks all `2^(na*nb)` subsets of the product with an include/exclude DFS,
//! carrying the distortion incrementally. Nothing is pruned; this is the
//! reference the branch-and-bound search is checked against.

use super::kernel::Kernel;

pub(crate) struct Outcome {
    pub distortion: i64,
    /// Cells `a * nb + b` of the lexicographically smallest optimum.
    pub cells: Vec<usize>,
    pub nodes: u64,
}

struct Walk<'a> {
    k: &'a Kernel,
    chosen: Vec<usize>,
    row_deg: Vec<u32>,
    col_deg: Vec<u32>,
    best: Option<(i64, Vec<usize>)>,
    nodes: u64,
}

pub(crate) fn solve(k: &Kernel) -> Outcome {
    let mut walk = Walk {
        k,
        chosen: Vec::with_capacity(k.na * k.nb),
        row_deg: vec![0; k.na],
        col_deg: vec![0; k.nb],
        best: None,
        nodes: 0,
    };
    walk.visit(0, 0);
    let (distortion, cells) = walk.best.expect("the full product is always a correspondence");
    Outcome { distortion, cells, nodes: walk.nodes }
}

impl Walk<'_> {
    fn visit(&mut self, cell: usize, dis: i64) {
        self.nodes += 1;
        let nb = self.k.nb;
        if cell == self.k.na * nb {
            let surjective = self.row_deg.iter().all(|&d| d > 0) && self.col_deg.iter().all(|&d| d > 0);
            if !surjective {
                return;
            }
            let better = match &self.best {
                None => true,
                Some((d, cells)) => dis < *d || (dis == *d && self.chosen < *cells),
            };
            if better {
                self.best = Some((dis, self.chosen.clone()));
            }
            return;
        }
        let (a, b) = (cell / nb, cell % nb);
        let added = self
            .chosen
            .iter()
            .map(|&c| self.k.cost(a, b, c / nb, c % nb))
            .max()
            .unwrap_or(0);
        self.chosen.push(cell);
        self.row_deg[a] += 1;
        self.col_deg[b] += 1;
        self.visit(cell + 1, dis.max(added));
        self.chosen.pop();
        self.row_deg[a] -= 1;
        self.col_deg[b] -= 1;
        self.visit(cell + 1, dis);
    }
}
