//! Depth-first search for a bijection satisfying P1 and P2.
//!
//! Points are assigned in index order, candidate lines tried in index
//! order, so the first solution found is the lexicographically least map.
//! Every unassigned point keeps a domain of lines still compatible with all
//! assignments made so far (unused, not through the point, P2-consistent
//! with every assigned point); an empty domain prunes the branch.
//!
//! For parallel runs the tree is cut at a fixed depth into subtrees that
//! are ordered like their prefixes. Workers take subtrees in order; a
//! solution in subtree `i` is only returned once every subtree before `i`
//! has been refuted, so the answer does not depend on the worker count.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use super::{PointLineBijection, PointLineError};
use crate::plane::Plane;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of assignments tried, across all workers.
    pub budget: Option<u64>,
    /// Worker threads; `0` is treated as `1`.
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A certified bijection and the number of nodes visited.
    Found {
        bijection: PointLineBijection,
        nodes: u64,
    },
    /// The whole tree was refuted.
    Exhausted { nodes: u64 },
}

const SPLIT_DEPTH: usize = 2;

struct Problem<'a> {
    plane: &'a Plane,
    n: usize,
    words: usize,
}

impl Problem<'_> {
    /// Whether `x2 ↦ l2` is compatible with `x1 ↦ l1` under P2. Pairs
    /// without a unique join or meet are treated as incompatible.
    fn compatible(&self, x1: usize, l1: usize, x2: usize, l2: usize) -> bool {
        if l1 == l2 {
            return false;
        }
        match (self.plane.meet(l1, l2), self.plane.line_through(x1, x2)) {
            (Ok(z), Ok(j)) => !self.plane.is_incident(z, j),
            _ => false,
        }
    }

    fn initial_domains(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n * self.words];
        for x in 0..self.n {
            for l in 0..self.n {
                if !self.plane.is_incident(x, l) {
                    d[x * self.words + l / 64] |= 1 << (l % 64);
                }
            }
        }
        d
    }

    fn candidates(&self, domains: &[u64], x: usize) -> impl Iterator<Item = usize> + '_ {
        let row = domains[x * self.words..(x + 1) * self.words].to_vec();
        row.into_iter().enumerate().flat_map(|(w, bits)| {
            (0..64)
                .filter(move |b| bits >> b & 1 == 1)
                .map(move |b| w * 64 + b)
        })
    }

    /// Domains after assigning `x ↦ l`, or `None` if some later point is
    /// left without candidates.
    fn assign(&self, domains: &[u64], x: usize, l: usize) -> Option<Vec<u64>> {
        let mut next = domains.to_vec();
        for y in x + 1..self.n {
            let row = &mut next[y * self.words..(y + 1) * self.words];
            for (w, word) in row.iter_mut().enumerate() {
                let mut bits = *word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if !self.compatible(x, l, y, w * 64 + b) {
                        *word &= !(1 << b);
                    }
                }
            }
            if row.iter().all(|&w| w == 0) {
                return None;
            }
        }
        Some(next)
    }
}

struct Shared {
    budget: Option<u64>,
    nodes: AtomicU64,
    budget_hit: AtomicBool,
    /// Least subtree index known to contain a solution.
    best: AtomicUsize,
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

struct Worker<'a> {
    problem: &'a Problem<'a>,
    shared: &'a Shared,
    subtree: usize,
    assignment: Vec<usize>,
}

impl Worker<'_> {
    fn tick(&self) -> bool {
        let n = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.shared.budget.is_some_and(|b| n > b) {
            self.shared.budget_hit.store(true, Ordering::Relaxed);
            return false;
        }
        self.shared.best.load(Ordering::Relaxed) >= self.subtree
    }

    fn dfs(&mut self, domains: &[u64]) -> Step {
        let x = self.assignment.len();
        if x == self.problem.n {
            return Step::Found;
        }
        for l in self.problem.candidates(domains, x) {
            if !self.tick() {
                return Step::Aborted;
            }
            let Some(next) = self.problem.assign(domains, x, l) else {
                continue;
            };
            self.assignment.push(l);
            match self.dfs(&next) {
                Step::Exhausted => {
                    self.assignment.pop();
                }
                other => return other,
            }
        }
        Step::Exhausted
    }
}

/// Consistent assignments of the first `depth` points, in lexicographic
/// order, with their domains.
fn prefixes(problem: &Problem, depth: usize, shared: &Shared) -> Vec<(Vec<usize>, Vec<u64>)> {
    let mut frontier = vec![(Vec::new(), problem.initial_domains())];
    for x in 0..depth.min(problem.n) {
        let mut next = Vec::new();
        for (prefix, domains) in &frontier {
            for l in problem.candidates(domains, x) {
                let n = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
                if shared.budget.is_some_and(|b| n > b) {
                    shared.budget_hit.store(true, Ordering::Relaxed);
                    return Vec::new();
                }
                if let Some(d) = problem.assign(domains, x, l) {
                    let mut p = prefix.clone();
                    p.push(l);
                    next.push((p, d));
                }
            }
        }
        frontier = next;
    }
    frontier
}

enum SubResult {
    Found(Vec<usize>),
    Exhausted,
    Aborted,
}

/// Finds the lexicographically least bijection satisfying P1 and P2.
pub fn search_bijection(
    plane: &Plane,
    config: SearchConfig,
) -> Result<SearchOutcome, PointLineError> {
    let n = plane.num_points();
    if n != plane.num_lines() || n == 0 {
        return Ok(SearchOutcome::Exhausted { nodes: 0 });
    }
    let problem = Problem {
        plane,
        n,
        words: n.div_ceil(64),
    };
    let shared = Shared {
        budget: config.budget,
        nodes: AtomicU64::new(0),
        budget_hit: AtomicBool::new(false),
        best: AtomicUsize::new(usize::MAX),
    };
    let subtrees = prefixes(&problem, SPLIT_DEPTH, &shared);
    if shared.budget_hit.load(Ordering::Relaxed) {
        let nodes = shared.nodes.load(Ordering::Relaxed);
        return Err(PointLineError::BudgetExceeded { nodes });
    }
    let results: Mutex<Vec<Option<SubResult>>> =
        Mutex::new((0..subtrees.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);

    let run = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= subtrees.len() {
            break;
        }
        let (prefix, domains) = &subtrees[i];
        let result = if shared.best.load(Ordering::Relaxed) < i
            || shared.budget_hit.load(Ordering::Relaxed)
        {
            SubResult::Aborted
        } else {
            let mut worker = Worker {
                problem: &problem,
                shared: &shared,
                subtree: i,
                assignment: prefix.clone(),
            };
            match worker.dfs(domains) {
                Step::Found => {
                    shared.best.fetch_min(i, Ordering::Relaxed);
                    SubResult::Found(worker.assignment)
                }
                Step::Exhausted => SubResult::Exhausted,
                Step::Aborted => SubResult::Aborted,
            }
        };
        results.lock().unwrap()[i] = Some(result);
    };

    let jobs = config.jobs.max(1);
    if jobs == 1 {
        run();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(run);
            }
        });
    }

    let nodes = shared.nodes.load(Ordering::Relaxed);
    for result in results.into_inner().unwrap() {
        match result {
            Some(SubResult::Exhausted) => continue,
            Some(SubResult::Found(map)) => {
                let mut bijection = PointLineBijection::new(plane, map)?;
                bijection.certify(plane)?;
                return Ok(SearchOutcome::Found { bijection, nodes });
            }
            Some(SubResult::Aborted) | None => {
                return Err(PointLineError::BudgetExceeded { nodes });
            }
        }
    }
    if shared.budget_hit.load(Ordering::Relaxed) {
        return Err(PointLineError::BudgetExceeded { nodes });
    }
    Ok(SearchOutcome::Exhausted { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::tower_for_order;
    use crate::plane::build_pg2;
    use crate::pointline::verify_properties;
    use crate::pointline::Certification;

    fn found(outcome: SearchOutcome) -> PointLineBijection {
        match outcome {
            SearchOutcome::Found { bijection, .. } => bijection,
            other => panic!("expected a solution, got {other:?}"),
        }
    }

    /// Plain backtracking with no forward checking, as a reference.
    fn naive_first(plane: &Plane) -> Option<Vec<usize>> {
        fn go(plane: &Plane, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let x = map.len();
            if x == plane.num_points() {
                return true;
            }
            for l in 0..plane.num_lines() {
                if used[l] || plane.is_incident(x, l) {
                    continue;
                }
                let ok = (0..x).all(|y| {
                    let z = plane.meet(map[y], l).unwrap();
                    let j = plane.line_through(y, x).unwrap();
                    !plane.is_incident(z, j)
                });
                if ok {
                    map.push(l);
                    used[l] = true;
                    if go(plane, map, used) {
                        return true;
                    }
                    used[l] = false;
                    map.pop();
                }
            }
            false
        }
        let mut map = Vec::new();
        let mut used = vec![false; plane.num_lines()];
        go(plane, &mut map, &mut used).then_some(map)
    }

    #[test]
    fn finds_lexicographically_first_on_small_planes() {
        for q in [2, 3] {
            let plane = build_pg2(&tower_for_order(q).unwrap());
            let bij = found(search_bijection(&plane, SearchConfig::default()).unwrap());
            assert!(bij.is_certified());
            assert_eq!(
                verify_properties(&plane, bij.map()).unwrap(),
                Certification::Pass
            );
            assert_eq!(Some(bij.map().to_vec()), naive_first(&plane), "q={q}");
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let plane = build_pg2(&tower_for_order(3).unwrap());
        let one = found(
            search_bijection(
                &plane,
                SearchConfig {
                    budget: None,
                    jobs: 1,
                },
            )
            .unwrap(),
        );
        for jobs in [2, 4, 8] {
            let many =
                found(search_bijection(&plane, SearchConfig { budget: None, jobs }).unwrap());
            assert_eq!(one.map(), many.map());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let plane = build_pg2(&tower_for_order(3).unwrap());
        let err = search_bijection(
            &plane,
            SearchConfig {
                budget: Some(3),
                jobs: 1,
            },
        )
        .unwrap_err();
        assert_eq!(err, PointLineError::BudgetExceeded { nodes: 4 });
    }

    #[test]
    fn broken_plane_yields_no_certified_result() {
        let good = build_pg2(&tower_for_order(2).unwrap());
        let victim = good.points_on(0)[0];
        let plane = good.without_incidence(victim, 0).unwrap();
        match search_bijection(&plane, SearchConfig::default()).unwrap() {
            SearchOutcome::Exhausted { nodes } => assert!(nodes > 0),
            SearchOutcome::Found { bijection, .. } => assert!(!bijection.is_certified()),
        }
    }
}
