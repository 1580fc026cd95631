//! Lexicographically smallest correspondence under a distortion bound.
//!
//! Sets are compared as sorted cell sequences, with a proper prefix counting
//! as smaller. A DFS over cells in order returns the first hit when it checks
//! "current set is already a correspondence" before trying to include the
//! next cell, and tries including before excluding.

use super::kernel::Kernel;

pub(crate) struct Outcome {
    pub cells: Option<Vec<usize>>,
    pub nodes: u64,
    pub aborted: bool,
}

struct Walk<'a> {
    k: &'a Kernel,
    bound: i64,
    budget: Option<u64>,
    chosen: Vec<usize>,
    row_deg: Vec<u32>,
    col_deg: Vec<u32>,
    /// Number of chosen cells each cell conflicts with.
    blocked: Vec<u32>,
    nodes: u64,
    aborted: bool,
}

pub(crate) fn lex_smallest(k: &Kernel, bound: i64, budget: Option<u64>) -> Outcome {
    let (ecc_a, ecc_b) = (k.ecc_a(), k.ecc_b());
    let blocked = (0..k.na * k.nb)
        .map(|c| u32::from((ecc_a[c / k.nb] - ecc_b[c % k.nb]).abs() > bound))
        .collect();
    let mut walk = Walk {
        k,
        bound,
        budget,
        chosen: Vec::new(),
        row_deg: vec![0; k.na],
        col_deg: vec![0; k.nb],
        blocked,
        nodes: 0,
        aborted: false,
    };
    let found = walk.visit(0);
    Outcome { cells: found.then(|| walk.chosen.clone()), nodes: walk.nodes, aborted: walk.aborted }
}

impl Walk<'_> {
    fn visit(&mut self, cell: usize) -> bool {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
            return false;
        }
        let (na, nb) = (self.k.na, self.k.nb);
        if self.row_deg.iter().all(|&d| d > 0) && self.col_deg.iter().all(|&d| d > 0) {
            return true;
        }
        if cell == na * nb || !self.completable(cell) {
            return false;
        }
        if self.blocked[cell] == 0 {
            let (a, b) = (cell / nb, cell % nb);
            let conflicts: Vec<usize> = (cell + 1..na * nb)
                .filter(|&c| self.k.cost(a, b, c / nb, c % nb) > self.bound)
                .collect();
            for &c in &conflicts {
                self.blocked[c] += 1;
            }
            self.chosen.push(cell);
            self.row_deg[a] += 1;
            self.col_deg[b] += 1;
            if self.visit(cell + 1) {
                return true;
            }
            self.chosen.pop();
            self.row_deg[a] -= 1;
            self.col_deg[b] -= 1;
            for &c in &conflicts {
                self.blocked[c] -= 1;
            }
        }
        !self.aborted && self.visit(cell + 1)
    }

    /// Every uncovered row and column still has an open cell at or after `from`.
    fn completable(&self, from: usize) -> bool {
        let nb = self.k.nb;
        let open = |c: usize| c >= from && self.blocked[c] == 0;
        let rows_ok = (0..self.k.na)
            .filter(|&a| self.row_deg[a] == 0)
            .all(|a| (a * nb..(a + 1) * nb).any(open));
        rows_ok
            && (0..nb)
                .filter(|&b| self.col_deg[b] == 0)
                .all(|b| (0..self.k.na).map(|a| a * nb + b).any(open))
    }
}
