//! Comparison planners sharing the oracle, index and outcome types.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::geometry::{dist, ConnectOracle, LocationId, Point, ProblemInstance, TieKey};
use crate::neighbor_index::NeighborIndex;
use crate::search::{
    path_cost, Budget, FailureReason, Lacas, SearchConfig, SearchOutcome, SearchReport, SortedLists,
};

/// Which candidates a best-first baseline considers when expanding a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuccessorMode {
    All,
    KNearest(usize),
    Radius(f64),
}

impl SuccessorMode {
    pub const DEFAULT_K: usize = 10;
    pub const DEFAULT_R: f64 = 0.1;

    fn is_restricted(&self) -> bool {
        !matches!(self, SuccessorMode::All)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Priority {
    AStar,
    Greedy,
}

#[derive(Debug, Clone, Copy)]
struct QueueEntry {
    key: f64,
    g: f64,
    loc: LocationId,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QueueEntry {}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueEntry {
    // Reversed for a min-heap on key; deeper (larger g) first on ties, then lower id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .total_cmp(&self.key)
            .then(self.g.total_cmp(&other.g))
            .then(other.loc.cmp(&self.loc))
    }
}

fn candidates(
    instance: &ProblemInstance,
    index: &NeighborIndex<'_>,
    mode: SuccessorMode,
    u: LocationId,
) -> Vec<LocationId> {
    match mode {
        SuccessorMode::All => instance.ids().filter(|&v| v != u).collect(),
        SuccessorMode::KNearest(k) => index.nearest_beyond(u, k, TieKey::MIN),
        SuccessorMode::Radius(r) => index
            .within_radius(u, r)
            .into_iter()
            .map(|k| k.id)
            .collect(),
    }
}

fn best_first(
    oracle: &ConnectOracle<'_>,
    index: &NeighborIndex<'_>,
    mode: SuccessorMode,
    budget: Budget,
    priority: Priority,
) -> SearchReport {
    let instance = oracle.instance();
    let started = Instant::now();
    let n = instance.len();
    let mut g = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<LocationId>> = vec![None; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    let start = instance.start();
    let goal = instance.goal();
    let key = |g: f64, v: LocationId| match priority {
        Priority::AStar => g + instance.dist_to_goal(v),
        Priority::Greedy => instance.dist_to_goal(v),
    };
    g[start.index()] = 0.0;
    open.push(QueueEntry {
        key: key(0.0, start),
        g: 0.0,
        loc: start,
    });
    let mut iterations = 0u64;
    let finish = |outcome, iterations, improvements| SearchReport {
        outcome,
        improvements,
        iterations,
        connect_calls: oracle.calls(),
        elapsed: started.elapsed(),
    };

    while let Some(entry) = open.pop() {
        let u = entry.loc;
        if closed[u.index()] || entry.g > g[u.index()] {
            continue;
        }
        if let Some(reason) = budget.exceeded(started, iterations) {
            return finish(SearchOutcome::Failure(reason), iterations, Vec::new());
        }
        iterations += 1;
        if u == goal {
            let path = backtrack(&parent, goal);
            let cost = path_cost(instance, &path);
            let improvement = crate::search::Improvement {
                elapsed: started.elapsed(),
                iteration: iterations,
                cost,
                connect_calls: oracle.calls(),
            };
            return finish(
                SearchOutcome::Solution {
                    path,
                    cost,
                    proven_optimal: priority == Priority::AStar && !mode.is_restricted(),
                },
                iterations,
                vec![improvement],
            );
        }
        closed[u.index()] = true;
        // Successors are materialised in full: every candidate goes through the oracle.
        let successors: Vec<LocationId> = candidates(instance, index, mode, u)
            .into_iter()
            .filter(|&v| oracle.connect(u, v))
            .collect();
        for v in successors {
            if closed[v.index()] {
                continue;
            }
            let g_new = g[u.index()] + instance.dist(u, v);
            let improves = match priority {
                Priority::AStar => g_new < g[v.index()],
                // greedy keeps the first parent it finds
                Priority::Greedy => g[v.index()].is_infinite(),
            };
            if !improves {
                continue;
            }
            g[v.index()] = g_new;
            parent[v.index()] = Some(u);
            open.push(QueueEntry {
                key: key(g_new, v),
                g: g_new,
                loc: v,
            });
        }
    }
    let outcome = if mode.is_restricted() {
        SearchOutcome::Failure(FailureReason::Exhausted)
    } else {
        SearchOutcome::NoSolution
    };
    finish(outcome, iterations, Vec::new())
}

fn backtrack(parent: &[Option<LocationId>], goal: LocationId) -> Vec<LocationId> {
    let mut path = vec![goal];
    let mut cur = goal;
    while let Some(p) = parent[cur.index()] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

/// A* on `f = g + dist(., goal)`. With [`SuccessorMode::All`] it is complete and optimal.
pub fn astar_search(
    oracle: &ConnectOracle<'_>,
    index: &NeighborIndex<'_>,
    mode: SuccessorMode,
    budget: Budget,
) -> SearchReport {
    best_first(oracle, index, mode, budget, Priority::AStar)
}

/// Greedy best-first on `h = dist(., goal)` alone.
pub fn gbfs_search(
    oracle: &ConnectOracle<'_>,
    index: &NeighborIndex<'_>,
    mode: SuccessorMode,
    budget: Budget,
) -> SearchReport {
    best_first(oracle, index, mode, budget, Priority::Greedy)
}

/// Depth-first search visiting successors in ascending distance to the goal.
///
/// That order does not depend on the expanded location, so one global sorted
/// list plus a cursor per stack frame replaces per-node candidate lists.
pub fn dfs_search(oracle: &ConnectOracle<'_>, budget: Budget) -> SearchReport {
    let instance = oracle.instance();
    let started = Instant::now();
    let goal = instance.goal();
    let mut order: Vec<LocationId> = instance.ids().collect();
    order.sort_by(|&a, &b| {
        instance
            .dist_to_goal(a)
            .total_cmp(&instance.dist_to_goal(b))
            .then(a.cmp(&b))
    });
    let mut visited = vec![false; instance.len()];
    visited[instance.start().index()] = true;
    // (location, cursor into `order`)
    let mut stack: Vec<(LocationId, usize)> = vec![(instance.start(), 0)];
    let mut iterations = 0u64;
    let report = |outcome, iterations, improvements| SearchReport {
        outcome,
        improvements,
        iterations,
        connect_calls: oracle.calls(),
        elapsed: started.elapsed(),
    };

    while let Some(&mut (u, ref mut cursor)) = stack.last_mut() {
        if let Some(reason) = budget.exceeded(started, iterations) {
            return report(SearchOutcome::Failure(reason), iterations, Vec::new());
        }
        iterations += 1;
        let mut next = None;
        while *cursor < order.len() {
            let v = order[*cursor];
            *cursor += 1;
            if !visited[v.index()] && oracle.connect(u, v) {
                next = Some(v);
                break;
            }
        }
        match next {
            Some(v) => {
                visited[v.index()] = true;
                stack.push((v, 0));
                if v == goal {
                    let path: Vec<LocationId> = stack.iter().map(|&(l, _)| l).collect();
                    let cost = path_cost(instance, &path);
                    let imp = crate::search::Improvement {
                        elapsed: started.elapsed(),
                        iteration: iterations,
                        cost,
                        connect_calls: oracle.calls(),
                    };
                    return report(
                        SearchOutcome::Solution {
                            path,
                            cost,
                            proven_optimal: false,
                        },
                        iterations,
                        vec![imp],
                    );
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    report(SearchOutcome::NoSolution, iterations, Vec::new())
}

/// The lazy search fed by full per-node sorts instead of the k-d tree.
pub fn pe_search(oracle: &ConnectOracle<'_>, config: SearchConfig) -> SearchReport {
    let lists = SortedLists::new(oracle.instance());
    Lacas::new(oracle, lists, config).run()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RrtParams {
    /// Maximum extension length (goal connections are exempt).
    pub step: f64,
    /// Try a straight connection to the goal after every insertion.
    pub goal_connect: bool,
    pub seed: u64,
}

impl Default for RrtParams {
    fn default() -> Self {
        RrtParams {
            step: 0.1,
            goal_connect: true,
            seed: 0,
        }
    }
}

/// Tree of sampled points; parent indices point into `points`.
#[derive(Debug, Clone, Default)]
pub struct RrtTree {
    pub points: Vec<Point>,
    pub parents: Vec<Option<usize>>,
}

impl RrtTree {
    fn rooted(p: Point) -> Self {
        RrtTree {
            points: vec![p],
            parents: vec![None],
        }
    }

    fn nearest(&self, q: Point) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, p) in self.points.iter().enumerate() {
            let dx = p.x - q.x;
            let dy = p.y - q.y;
            let d = dx * dx + dy * dy;
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }

    fn push(&mut self, p: Point, parent: usize) -> usize {
        self.points.push(p);
        self.parents.push(Some(parent));
        self.points.len() - 1
    }

    /// Points from the root to `i`.
    pub fn branch(&self, mut i: usize) -> Vec<Point> {
        let mut out = vec![self.points[i]];
        while let Some(p) = self.parents[i] {
            out.push(self.points[p]);
            i = p;
        }
        out.reverse();
        out
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.parents
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (self.points[p], self.points[i])))
    }
}

fn steer(from: Point, toward: Point, step: f64) -> Point {
    let d = dist(from, toward);
    if d <= step {
        toward
    } else {
        let t = step / d;
        Point::new(
            from.x + t * (toward.x - from.x),
            from.y + t * (toward.y - from.y),
        )
    }
}

fn sample(rng: &mut ChaCha8Rng) -> Point {
    Point::new(rng.gen::<f64>(), rng.gen::<f64>())
}

pub fn waypoint_cost(path: &[Point]) -> f64 {
    path.windows(2).map(|w| dist(w[0], w[1])).sum()
}

/// Every hop of `path` is obstacle-free and the ends match the instance.
pub fn validate_waypoints(instance: &ProblemInstance, path: &[Point]) -> bool {
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return false;
    };
    first == instance.point(instance.start())
        && last == instance.point(instance.goal())
        && path.windows(2).all(|w| {
            w[0] != w[1]
                && crate::geometry::segment_is_free(
                    instance.obstacles(),
                    &crate::geometry::Segment { a: w[0], b: w[1] },
                )
        })
}

fn sbmp_report(
    oracle: &ConnectOracle<'_>,
    started: Instant,
    iterations: u64,
    path: Option<Vec<Point>>,
    failure: FailureReason,
) -> SearchReport<Point> {
    let (outcome, improvements) = match path {
        Some(path) => {
            let cost = waypoint_cost(&path);
            let imp = crate::search::Improvement {
                elapsed: started.elapsed(),
                iteration: iterations,
                cost,
                connect_calls: oracle.calls(),
            };
            (
                SearchOutcome::Solution {
                    path,
                    cost,
                    proven_optimal: false,
                },
                vec![imp],
            )
        }
        None => (SearchOutcome::Failure(failure), Vec::new()),
    };
    SearchReport {
        outcome,
        improvements,
        iterations,
        connect_calls: oracle.calls(),
        elapsed: started.elapsed(),
    }
}

/// Single-tree RRT over freshly sampled points. Ignores the instance's locations
/// except the start and goal. An unbounded budget loops until success.
pub fn rrt_search(
    oracle: &ConnectOracle<'_>,
    params: RrtParams,
    budget: Budget,
) -> SearchReport<Point> {
    rrt_search_with_tree(oracle, params, budget).0
}

pub fn rrt_search_with_tree(
    oracle: &ConnectOracle<'_>,
    params: RrtParams,
    budget: Budget,
) -> (SearchReport<Point>, RrtTree) {
    let instance = oracle.instance();
    let started = Instant::now();
    let start = instance.point(instance.start());
    let goal = instance.point(instance.goal());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut tree = RrtTree::rooted(start);
    if params.goal_connect && oracle.segment_free(start, goal) {
        let path = vec![start, goal];
        return (
            sbmp_report(oracle, started, 0, Some(path), FailureReason::Timeout),
            tree,
        );
    }
    let mut iterations = 0u64;
    loop {
        if let Some(reason) = budget.exceeded(started, iterations) {
            return (sbmp_report(oracle, started, iterations, None, reason), tree);
        }
        iterations += 1;
        let q = sample(&mut rng);
        let near = tree.nearest(q);
        let p = steer(tree.points[near], q, params.step);
        if p == tree.points[near] || !oracle.segment_free(tree.points[near], p) {
            continue;
        }
        let added = tree.push(p, near);
        let reached = if p == goal {
            Some(added)
        } else if params.goal_connect && oracle.segment_free(p, goal) {
            Some(tree.push(goal, added))
        } else {
            None
        };
        if let Some(g) = reached {
            let path = tree.branch(g);
            return (
                sbmp_report(
                    oracle,
                    started,
                    iterations,
                    Some(path),
                    FailureReason::Timeout,
                ),
                tree,
            );
        }
    }
}

enum Extend {
    Reached(usize),
    Advanced(usize),
    Trapped,
}

fn extend(tree: &mut RrtTree, q: Point, step: f64, oracle: &ConnectOracle<'_>) -> Extend {
    let near = tree.nearest(q);
    let from = tree.points[near];
    let p = steer(from, q, step);
    if p == from || !oracle.segment_free(from, p) {
        return Extend::Trapped;
    }
    let added = tree.push(p, near);
    if p == q {
        Extend::Reached(added)
    } else {
        Extend::Advanced(added)
    }
}

/// Bidirectional RRT-Connect: one tree extends toward a sample, the other
/// greedily connects toward the new point, then the roles swap.
pub fn rrt_connect_search(
    oracle: &ConnectOracle<'_>,
    params: RrtParams,
    budget: Budget,
) -> SearchReport<Point> {
    rrt_connect_search_with_trees(oracle, params, budget).0
}

pub fn rrt_connect_search_with_trees(
    oracle: &ConnectOracle<'_>,
    params: RrtParams,
    budget: Budget,
) -> (SearchReport<Point>, [RrtTree; 2]) {
    let instance = oracle.instance();
    let started = Instant::now();
    let start = instance.point(instance.start());
    let goal = instance.point(instance.goal());
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut a = RrtTree::rooted(start);
    let mut b = RrtTree::rooted(goal);
    // `a_is_start` tracks which tree grows from the start after swaps.
    let mut a_is_start = true;
    let mut iterations = 0u64;
    loop {
        if let Some(reason) = budget.exceeded(started, iterations) {
            let trees = if a_is_start { [a, b] } else { [b, a] };
            return (
                sbmp_report(oracle, started, iterations, None, reason),
                trees,
            );
        }
        iterations += 1;
        let q = sample(&mut rng);
        let new = match extend(&mut a, q, params.step, oracle) {
            Extend::Trapped => None,
            Extend::Reached(i) | Extend::Advanced(i) => Some(i),
        };
        if let Some(i) = new {
            let target = a.points[i];
            let joined = loop {
                match extend(&mut b, target, params.step, oracle) {
                    Extend::Advanced(_) => continue,
                    Extend::Reached(j) => break Some(j),
                    Extend::Trapped => break None,
                }
            };
            if let Some(j) = joined {
                let mut from_a = a.branch(i);
                let mut from_b = b.branch(j);
                from_b.pop(); // the joint point appears in both branches
                from_b.reverse();
                from_a.extend(from_b);
                if !a_is_start {
                    from_a.reverse();
                }
                let trees = if a_is_start { [a, b] } else { [b, a] };
                return (
                    sbmp_report(
                        oracle,
                        started,
                        iterations,
                        Some(from_a),
                        FailureReason::Timeout,
                    ),
                    trees,
                );
            }
        }
        std::mem::swap(&mut a, &mut b);
        a_is_start = !a_is_start;
    }
}
