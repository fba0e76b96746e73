//! Branch and bound for the largest item set that avoids every forbidden
//! hyperedge and takes at most one item from each line.
//!
//! Lines come in partitions (one per axis): every item lies on exactly one
//! line of each partition, so `selected + open lines of any partition` bounds
//! the optimum. Without partitions the bound subtracts a greedy packing of
//! disjoint hyperedges from the available items.

#[derive(Clone, Debug)]
pub struct Outcome {
    pub best: Vec<usize>,
    pub exhaustive: bool,
    pub nodes: u64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Free,
    Selected,
    Excluded,
}

pub struct Engine {
    items: usize,
    lines: Vec<Vec<usize>>,
    partition_of_line: Vec<usize>,
    partitions: usize,
    edges: Vec<Vec<usize>>,
    item_lines: Vec<Vec<usize>>,
    item_edges: Vec<Vec<usize>>,
    // Search state.
    state: Vec<State>,
    line_free: Vec<usize>,
    line_used: Vec<bool>,
    edge_selected: Vec<usize>,
    selected: Vec<usize>,
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Engine {
    /// `partitions[p]` lists the lines of partition `p`; every item must lie on
    /// exactly one line of each partition.
    pub fn new(items: usize, partitions: Vec<Vec<Vec<usize>>>, edges: Vec<Vec<usize>>) -> Self {
        let mut lines = Vec::new();
        let mut partition_of_line = Vec::new();
        let n_partitions = partitions.len();
        for (p, part) in partitions.into_iter().enumerate() {
            for line in part {
                partition_of_line.push(p);
                lines.push(line);
            }
        }
        let mut item_lines = vec![Vec::new(); items];
        for (l, line) in lines.iter().enumerate() {
            for &i in line {
                item_lines[i].push(l);
            }
        }
        debug_assert!(item_lines.iter().all(|ls| ls.len() == n_partitions));
        let mut edges: Vec<Vec<usize>> = edges
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        edges.sort();
        edges.dedup();
        let mut item_edges = vec![Vec::new(); items];
        for (e, edge) in edges.iter().enumerate() {
            for &i in edge {
                item_edges[i].push(e);
            }
        }
        Engine {
            items,
            line_free: lines.iter().map(Vec::len).collect(),
            line_used: vec![false; lines.len()],
            edge_selected: vec![0; edges.len()],
            lines,
            partition_of_line,
            partitions: n_partitions,
            edges,
            item_lines,
            item_edges,
            state: vec![State::Free; items],
            selected: Vec::new(),
            best: Vec::new(),
            nodes: 0,
            budget: u64::MAX,
            aborted: false,
        }
    }

    pub fn solve(mut self, budget: u64) -> Outcome {
        self.budget = budget;
        // Singleton edges forbid an item outright.
        let mut trail = Vec::new();
        for e in 0..self.edges.len() {
            if self.edges[e].len() == 1 {
                let i = self.edges[e][0];
                if self.state[i] == State::Free {
                    self.exclude(i, &mut trail);
                }
            }
        }
        self.dfs();
        Outcome {
            best: self.best,
            exhaustive: !self.aborted,
            nodes: self.nodes,
        }
    }

    fn exclude(&mut self, i: usize, trail: &mut Vec<usize>) {
        debug_assert!(self.state[i] == State::Free);
        self.state[i] = State::Excluded;
        for &l in &self.item_lines[i] {
            self.line_free[l] -= 1;
        }
        trail.push(i);
    }

    fn restore(&mut self, trail: &mut Vec<usize>) {
        while let Some(i) = trail.pop() {
            self.state[i] = State::Free;
            for &l in &self.item_lines[i] {
                self.line_free[l] += 1;
            }
        }
    }

    /// Selects `i` and excludes everything that can no longer join.
    fn select(&mut self, i: usize, trail: &mut Vec<usize>) {
        self.state[i] = State::Selected;
        for &l in &self.item_lines[i] {
            self.line_free[l] -= 1;
            self.line_used[l] = true;
        }
        self.selected.push(i);
        for li in 0..self.item_lines[i].len() {
            let l = self.item_lines[i][li];
            for j in 0..self.lines[l].len() {
                let other = self.lines[l][j];
                if self.state[other] == State::Free {
                    self.exclude(other, trail);
                }
            }
        }
        for ei in 0..self.item_edges[i].len() {
            let e = self.item_edges[i][ei];
            self.edge_selected[e] += 1;
            if self.edge_selected[e] + 1 == self.edges[e].len() {
                let last = self.edges[e]
                    .iter()
                    .copied()
                    .find(|&j| self.state[j] != State::Selected)
                    .expect("one member unselected");
                if self.state[last] == State::Free {
                    self.exclude(last, trail);
                }
            }
        }
    }

    fn unselect(&mut self, i: usize, trail: &mut Vec<usize>) {
        self.restore(trail);
        for &e in &self.item_edges[i] {
            self.edge_selected[e] -= 1;
        }
        for &l in &self.item_lines[i] {
            self.line_free[l] += 1;
            self.line_used[l] = false;
        }
        self.state[i] = State::Free;
        self.selected.pop();
    }

    fn bound(&self) -> usize {
        if self.partitions > 0 {
            let mut open = vec![0usize; self.partitions];
            for l in 0..self.lines.len() {
                if !self.line_used[l] && self.line_free[l] > 0 {
                    open[self.partition_of_line[l]] += 1;
                }
            }
            return self.selected.len() + open.into_iter().min().unwrap_or(0);
        }
        let free: Vec<bool> = self.state.iter().map(|&s| s == State::Free).collect();
        let mut touched = vec![false; self.items];
        let mut packing = 0;
        for edge in &self.edges {
            if edge.iter().any(|&j| self.state[j] == State::Excluded) {
                continue;
            }
            let live: Vec<usize> = edge.iter().copied().filter(|&j| free[j]).collect();
            if !live.is_empty() && live.iter().all(|&j| !touched[j]) {
                for j in live {
                    touched[j] = true;
                }
                packing += 1;
            }
        }
        self.selected.len() + free.iter().filter(|&&f| f).count() - packing
    }

    fn dfs(&mut self) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if self.selected.len() > self.best.len() {
            self.best = self.selected.clone();
        }
        if self.bound() <= self.best.len() {
            return;
        }
        let branch: Vec<usize> = if self.partitions > 0 {
            // The open line with the fewest free items.
            let line = (0..self.lines.len())
                .filter(|&l| !self.line_used[l] && self.line_free[l] > 0)
                .min_by_key(|&l| self.line_free[l]);
            match line {
                Some(l) => self.lines[l].iter().copied().filter(|&i| self.state[i] == State::Free).collect(),
                None => return,
            }
        } else {
            // The free item in the most live edges.
            let item = (0..self.items)
                .filter(|&i| self.state[i] == State::Free)
                .max_by_key(|&i| self.item_edges[i].len());
            match item {
                Some(i) => vec![i],
                None => return,
            }
        };
        // Try each candidate, then drop it for the remaining branches.
        let mut dropped = Vec::new();
        for &i in &branch {
            let mut trail = Vec::new();
            self.select(i, &mut trail);
            self.dfs();
            self.unselect(i, &mut trail);
            if self.aborted {
                break;
            }
            self.exclude(i, &mut dropped);
        }
        if !self.aborted {
            self.dfs();
        }
        self.restore(&mut dropped);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive subset oracle.
    fn brute(items: usize, lines: &[Vec<usize>], edges: &[Vec<usize>]) -> usize {
        (0u32..1 << items)
            .filter(|&mask| {
                let inside = |i: &usize| mask >> i & 1 == 1;
                lines.iter().all(|l| l.iter().filter(|i| inside(i)).count() <= 1)
                    && edges.iter().all(|e| !e.iter().all(inside))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_brute_force_without_partitions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let items = rng.gen_range(1..=10);
            let edges: Vec<Vec<usize>> = (0..rng.gen_range(0..15))
                .map(|_| (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..items)).collect())
                .collect();
            let out = Engine::new(items, vec![], edges.clone()).solve(u64::MAX);
            assert!(out.exhaustive);
            assert_eq!(out.best.len(), brute(items, &[], &edges));
        }
    }

    #[test]
    fn matches_brute_force_on_grids() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..40 {
            // A 3 x 4 grid: rows and columns are the two partitions.
            let (r, c) = (3, 4);
            let rows: Vec<Vec<usize>> = (0..r).map(|i| (0..c).map(|j| i * c + j).collect()).collect();
            let cols: Vec<Vec<usize>> = (0..c).map(|j| (0..r).map(|i| i * c + j).collect()).collect();
            let edges: Vec<Vec<usize>> = (0..rng.gen_range(0..10))
                .map(|_| (0..2).map(|_| rng.gen_range(0..r * c)).collect())
                .collect();
            let mut all = rows.clone();
            all.extend(cols.clone());
            let out = Engine::new(r * c, vec![rows, cols], edges.clone()).solve(u64::MAX);
            assert_eq!(out.best.len(), brute(r * c, &all, &edges));
        }
    }

    #[test]
    fn budget_is_reported() {
        let edges = vec![vec![0, 1], vec![1, 2], vec![2, 3]];
        let out = Engine::new(6, vec![], edges).solve(1);
        assert!(!out.exhaustive);
    }
}
