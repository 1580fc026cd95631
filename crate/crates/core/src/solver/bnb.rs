//! Branch-and-bound over correspondences.
//!
//! Rows of the product are assigned one at a time, in order of decreasing
//! eccentricity. Each row picks a non-empty set of columns. Only minimal
//! correspondences are generated: a row that takes two or more columns must
//! be the sole owner of each of them. Every correspondence contains a minimal
//! one of no larger distortion, so the minimum is unchanged.
//!
//! Each unassigned row keeps a domain of columns still compatible with every
//! assigned pair under the incumbent. A branch dies when a domain empties or
//! an uncovered column is left in no domain.

use std::sync::atomic::{AtomicBool, AtomicI64, AtomicU64, Ordering};

use rayon::prelude::*;

use super::kernel::Kernel;

pub(crate) struct Outcome {
    /// Best distortion found; optimal when `complete`.
    pub distortion: i64,
    pub nodes: u64,
    pub complete: bool,
}

#[derive(Clone)]
struct State {
    depth: usize,
    assigned: Vec<(usize, usize)>,
    covered: u64,
    domains: Vec<u64>,
    distortion: i64,
}

struct Search<'a> {
    k: &'a Kernel,
    order: Vec<usize>,
    full: u64,
    floor: i64,
    budget: Option<u64>,
    incumbent: AtomicI64,
    nodes: AtomicU64,
    aborted: AtomicBool,
    done: AtomicBool,
}

/// Minimises distortion over correspondences of `k`, starting from the
/// incumbent `upper` and stopping early once `floor` is reached.
///
/// Requires `k.nb <= 64`.
pub(crate) fn solve(k: &Kernel, upper: i64, floor: i64, budget: Option<u64>, parallel: bool) -> Outcome {
    assert!(k.nb <= 64, "branch-and-bound supports at most 64 columns");
    let ecc_a = k.ecc_a();
    let ecc_b = k.ecc_b();
    let mut order: Vec<usize> = (0..k.na).collect();
    order.sort_by_key(|&r| (std::cmp::Reverse(ecc_a[r]), r));
    let full = if k.nb == 64 { u64::MAX } else { (1u64 << k.nb) - 1 };

    let search = Search {
        k,
        order,
        full,
        floor,
        budget,
        incumbent: AtomicI64::new(upper),
        nodes: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        done: AtomicBool::new(upper <= floor),
    };

    // A pair whose eccentricities differ by at least the incumbent can never
    // appear in an improving correspondence.
    let domains = (0..k.na)
        .map(|r| (0..k.nb).filter(|&c| (ecc_a[r] - ecc_b[c]).abs() < upper).fold(0u64, |m, c| m | (1 << c)))
        .collect();
    let root = State { depth: 0, assigned: Vec::new(), covered: 0, domains, distortion: 0 };

    if !search.done.load(Ordering::Relaxed) {
        if parallel {
            search.count_node();
            let mut children = Vec::new();
            search.for_each_child(&root, |child| children.push(child));
            children.par_iter().for_each(|child| search.visit(child));
        } else {
            search.visit(&root);
        }
    }

    Outcome {
        distortion: search.incumbent.load(Ordering::SeqCst),
        nodes: search.nodes.load(Ordering::SeqCst),
        complete: !search.aborted.load(Ordering::SeqCst),
    }
}

impl Search<'_> {
    fn stopped(&self) -> bool {
        self.done.load(Ordering::Relaxed) || self.aborted.load(Ordering::Relaxed)
    }

    fn count_node(&self) {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.budget.is_some_and(|b| n > b) {
            self.aborted.store(true, Ordering::Relaxed);
        }
    }

    fn visit(&self, st: &State) {
        if self.stopped() {
            return;
        }
        self.count_node();
        if st.depth == self.k.na {
            let previous = self.incumbent.fetch_min(st.distortion, Ordering::SeqCst);
            if st.distortion.min(previous) <= self.floor {
                self.done.store(true, Ordering::Relaxed);
            }
            return;
        }
        self.for_each_child(st, |child| self.visit(&child));
    }

    fn for_each_child(&self, st: &State, mut f: impl FnMut(State)) {
        let k = self.k;
        let row = self.order[st.depth];
        let cands = st.domains[row];

        let mut col_cost = [0i64; 64];
        for c in bits(cands) {
            col_cost[c] = st.assigned.iter().map(|&(a, b)| k.cost(a, b, row, c)).max().unwrap_or(0);
        }

        let mut singletons: Vec<u64> = bits(cands).map(|c| 1u64 << c).collect();
        singletons.sort_by_key(|&m| (col_cost[m.trailing_zeros() as usize], m));
        let free = cands & !st.covered;
        let mut multi: Vec<u64> = submasks(free).filter(|m| m.count_ones() >= 2).collect();
        multi.sort_by_key(|&m| (m.count_ones(), m));

        for mask in singletons.into_iter().chain(multi) {
            if self.stopped() {
                return;
            }
            let inc = self.incumbent.load(Ordering::Relaxed);
            if st.distortion >= inc {
                return;
            }
            let mut dis = st.distortion;
            for c in bits(mask) {
                dis = dis.max(col_cost[c]);
                for c2 in bits(mask) {
                    dis = dis.max(k.db(c, c2));
                }
            }
            if dis >= inc {
                continue;
            }
            let exclusive = if mask.count_ones() >= 2 { mask } else { 0 };
            let covered = st.covered | mask;
            let mut domains = st.domains.clone();
            let mut reachable = covered;
            let mut feasible = true;
            for &r in &self.order[st.depth + 1..] {
                let mut d = domains[r] & !exclusive;
                for c in bits(mask) {
                    d = bits(d).filter(|&c2| k.cost(row, c, r, c2) < inc).fold(0, |m, c2| m | (1 << c2));
                }
                if d == 0 {
                    feasible = false;
                    break;
                }
                domains[r] = d;
                reachable |= d;
            }
            if !feasible || reachable != self.full {
                continue;
            }
            let mut assigned = st.assigned.clone();
            assigned.extend(bits(mask).map(|c| (row, c)));
            f(State { depth: st.depth + 1, assigned, covered, domains, distortion: dis });
        }
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(c)
    })
}

/// Non-empty submasks of `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next.filter(|&m| m != 0)?;
        next = Some((current - 1) & mask);
        Some(current)
    })
}
