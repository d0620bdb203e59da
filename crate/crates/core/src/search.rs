//! Lazy constraints addition search.
//!
//! A depth-first style search over the implicit complete graph whose nodes
//! request successors in small batches from a [`SuccessorSource`]. Each node
//! keeps a threshold; every invocation asks for the next `b` locations beyond
//! it, so a node is discarded only after every other location has been offered.
//!
//! With `anytime` enabled the search records discovered arcs, repairs
//! cost-to-come labels with a Dijkstra-style pass whenever a known location is
//! re-encountered, prunes by f-value once a goal node exists and keeps going
//! until the open deque drains (a proof of optimality) or the budget runs out.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use web_time::Instant;

use crate::geometry::{tie_key, ConnectOracle, LocationId, ProblemInstance, TieKey};
use crate::neighbor_index::NeighborIndex;

/// Index into the node arena.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
pub struct SearchNode {
    pub loc: LocationId,
    pub parent: Option<NodeId>,
    pub threshold: TieKey,
    /// Cost-to-come along the parent chain.
    pub g: f64,
    /// Discovered outgoing connections (only tracked when anytime is on).
    pub neighbors: Vec<NodeId>,
}

/// Processing order of locations within one batch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BatchOrder {
    /// As returned by the successor source: nearest first, so the farthest ends on top.
    Nearest,
    /// Seeded shuffle.
    Random { seed: u64 },
    /// Descending distance to the goal, so the candidate nearest the goal is popped next.
    GoalSorted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub time: Option<Duration>,
    pub iterations: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            time: Some(limit),
            iterations: None,
        }
    }

    pub fn iterations(limit: u64) -> Self {
        Budget {
            time: None,
            iterations: Some(limit),
        }
    }

    /// Returns the reason to stop, if any.
    pub fn exceeded(&self, started: Instant, iterations: u64) -> Option<FailureReason> {
        if let Some(cap) = self.iterations {
            if iterations >= cap {
                return Some(FailureReason::IterationCap);
            }
        }
        if let Some(limit) = self.time {
            if started.elapsed() >= limit {
                return Some(FailureReason::Timeout);
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub batch_size: usize,
    pub batch_order: BatchOrder,
    /// Move a re-encountered node to the top of the deque.
    pub reinsert: bool,
    /// Move an invoked node to the bottom once it produced a non-empty batch.
    pub rolling: bool,
    /// Attach new nodes to the grandparent when directly connectable.
    pub grandparent: bool,
    /// Rewiring, f-pruning and refinement after the first solution.
    pub anytime: bool,
    pub budget: Budget,
    /// Keep a log of every batch (for equivalence checks and visualisation).
    pub record_batches: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig::lacas_star()
    }
}

impl SearchConfig {
    /// The bare algorithm: nearest-first batches, no extra techniques.
    pub fn minimal() -> Self {
        SearchConfig {
            batch_size: 10,
            batch_order: BatchOrder::Nearest,
            reinsert: false,
            rolling: false,
            grandparent: false,
            anytime: true,
            budget: Budget::unlimited(),
            record_batches: false,
        }
    }

    /// Sorted batches, reinsert and rolling; stops at the first solution.
    pub fn lacas() -> Self {
        SearchConfig {
            batch_order: BatchOrder::GoalSorted,
            reinsert: true,
            rolling: true,
            anytime: false,
            ..Self::minimal()
        }
    }

    /// [`lacas`](Self::lacas) with refinement.
    pub fn lacas_star() -> Self {
        SearchConfig {
            anytime: true,
            ..Self::lacas()
        }
    }

    pub fn lacat() -> Self {
        SearchConfig {
            grandparent: true,
            ..Self::lacas()
        }
    }

    pub fn lacat_star() -> Self {
        SearchConfig {
            grandparent: true,
            ..Self::lacas_star()
        }
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_batch_size(mut self, b: usize) -> Self {
        self.batch_size = b;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    Timeout,
    IterationCap,
    /// A restricted-successor search ran out of candidates; proves nothing.
    Exhausted,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::Timeout => "timeout",
            FailureReason::IterationCap => "iteration-cap",
            FailureReason::Exhausted => "exhausted",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome<P = LocationId> {
    Solution {
        path: Vec<P>,
        cost: f64,
        proven_optimal: bool,
    },
    NoSolution,
    Failure(FailureReason),
}

impl<P> SearchOutcome<P> {
    pub fn cost(&self) -> Option<f64> {
        match self {
            SearchOutcome::Solution { cost, .. } => Some(*cost),
            _ => None,
        }
    }

    pub fn path(&self) -> Option<&[P]> {
        match self {
            SearchOutcome::Solution { path, .. } => Some(path),
            _ => None,
        }
    }

    pub fn is_solution(&self) -> bool {
        matches!(self, SearchOutcome::Solution { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SearchOutcome::Solution {
                proven_optimal: true,
                ..
            } => "optimal",
            SearchOutcome::Solution { .. } => "solution",
            SearchOutcome::NoSolution => "no-solution",
            SearchOutcome::Failure(FailureReason::Timeout) => "timeout",
            SearchOutcome::Failure(FailureReason::IterationCap) => "iteration-cap",
            SearchOutcome::Failure(FailureReason::Exhausted) => "exhausted",
        }
    }
}

/// One entry of the improvement stream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Improvement {
    pub elapsed: Duration,
    pub iteration: u64,
    pub cost: f64,
    pub connect_calls: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport<P = LocationId> {
    pub outcome: SearchOutcome<P>,
    pub improvements: Vec<Improvement>,
    pub iterations: u64,
    pub connect_calls: u64,
    pub elapsed: Duration,
}

impl<P> SearchReport<P> {
    pub fn first_solution(&self) -> Option<&Improvement> {
        self.improvements.first()
    }
}

/// Supplies batches of candidate successors beyond a node's threshold.
pub trait SuccessorSource {
    /// Up to `b` keys strictly above `threshold`, ascending.
    fn next_batch(&mut self, source: LocationId, b: usize, threshold: TieKey) -> Vec<TieKey>;

    /// The node at `source` will not be asked again.
    fn release(&mut self, _source: LocationId) {}
}

impl SuccessorSource for &NeighborIndex<'_> {
    fn next_batch(&mut self, source: LocationId, b: usize, threshold: TieKey) -> Vec<TieKey> {
        self.nearest_beyond_keys(source, b, threshold)
    }
}

/// Sorts every other location once per node and serves slices of that list.
#[derive(Debug)]
pub struct SortedLists<'a> {
    instance: &'a ProblemInstance,
    lists: HashMap<LocationId, Vec<LocationId>>,
}

impl<'a> SortedLists<'a> {
    pub fn new(instance: &'a ProblemInstance) -> Self {
        SortedLists {
            instance,
            lists: HashMap::new(),
        }
    }
}

impl SuccessorSource for SortedLists<'_> {
    fn next_batch(&mut self, source: LocationId, b: usize, threshold: TieKey) -> Vec<TieKey> {
        let instance = self.instance;
        let list = self.lists.entry(source).or_insert_with(|| {
            let mut keys: Vec<TieKey> = instance
                .ids()
                .filter(|&v| v != source)
                .map(|v| tie_key(instance, source, v))
                .collect();
            keys.sort_unstable();
            keys.into_iter().map(|k| k.id).collect()
        });
        let start = list.partition_point(|&v| tie_key(instance, source, v) <= threshold);
        list[start..]
            .iter()
            .take(b)
            .map(|&v| tie_key(instance, source, v))
            .collect()
    }

    fn release(&mut self, source: LocationId) {
        self.lists.remove(&source);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchRecord {
    pub loc: LocationId,
    pub batch: Vec<LocationId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStatus {
    /// The iteration ran; more work may remain.
    Running,
    /// The open deque is empty.
    Exhausted,
    /// Non-anytime mode hit the goal.
    GoalReached,
}

/// Search state; drive it with [`step`](Self::step) or [`run`](Self::run).
pub struct Lacas<'a, S> {
    instance: &'a ProblemInstance,
    oracle: &'a ConnectOracle<'a>,
    source: S,
    config: SearchConfig,
    nodes: Vec<SearchNode>,
    explored: Vec<Option<NodeId>>,
    open: VecDeque<NodeId>,
    goal_node: Option<NodeId>,
    iterations: u64,
    rng: Option<ChaCha8Rng>,
    best_cost: f64,
    improvements: Vec<Improvement>,
    batch_log: Vec<BatchRecord>,
    started: Instant,
    rewire_queue: VecDeque<NodeId>,
}

impl<'a> Lacas<'a, &'a NeighborIndex<'a>> {
    pub fn with_index(
        oracle: &'a ConnectOracle<'a>,
        index: &'a NeighborIndex<'a>,
        config: SearchConfig,
    ) -> Self {
        Lacas::new(oracle, index, config)
    }
}

impl<'a, S: SuccessorSource> Lacas<'a, S> {
    pub fn new(oracle: &'a ConnectOracle<'a>, source: S, config: SearchConfig) -> Self {
        assert!(config.batch_size >= 1, "batch size must be positive");
        let instance = oracle.instance();
        let rng = match config.batch_order {
            BatchOrder::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let mut search = Lacas {
            instance,
            oracle,
            source,
            config,
            nodes: Vec::new(),
            explored: vec![None; instance.len()],
            open: VecDeque::new(),
            goal_node: None,
            iterations: 0,
            rng,
            best_cost: f64::INFINITY,
            improvements: Vec::new(),
            batch_log: Vec::new(),
            started: Instant::now(),
            rewire_queue: VecDeque::new(),
        };
        let root = search.create_node(instance.start(), None, 0.0);
        search.open.push_back(root);
        search
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn nodes(&self) -> &[SearchNode] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &SearchNode {
        &self.nodes[id.index()]
    }

    pub fn node_at(&self, loc: LocationId) -> Option<NodeId> {
        self.explored[loc.index()]
    }

    pub fn goal_node(&self) -> Option<NodeId> {
        self.goal_node
    }

    pub fn open(&self) -> &VecDeque<NodeId> {
        &self.open
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn batch_log(&self) -> &[BatchRecord] {
        &self.batch_log
    }

    pub fn improvements(&self) -> &[Improvement] {
        &self.improvements
    }

    /// Arcs `(from, to)` of the discovered graph (node neighbor lists).
    pub fn discovered_arcs(&self) -> Vec<(LocationId, LocationId)> {
        self.nodes
            .iter()
            .flat_map(|n| {
                n.neighbors
                    .iter()
                    .map(move |&m| (n.loc, self.nodes[m.index()].loc))
            })
            .collect()
    }

    /// Parent-pointer arcs `(parent, child)` of the current search tree.
    pub fn tree_arcs(&self) -> Vec<(LocationId, LocationId)> {
        self.nodes
            .iter()
            .filter_map(|n| n.parent.map(|p| (self.nodes[p.index()].loc, n.loc)))
            .collect()
    }

    /// Location path from the start to `node` along parent pointers.
    pub fn backtrack(&self, node: NodeId) -> Vec<LocationId> {
        let mut path = Vec::new();
        let mut cur = Some(node);
        while let Some(id) = cur {
            assert!(path.len() <= self.nodes.len(), "cycle in parent chain");
            let n = &self.nodes[id.index()];
            path.push(n.loc);
            cur = n.parent;
        }
        path.reverse();
        path
    }

    #[inline]
    fn f_value(&self, id: NodeId) -> f64 {
        let n = &self.nodes[id.index()];
        n.g + self.instance.dist_to_goal(n.loc)
    }

    fn create_node(&mut self, loc: LocationId, parent: Option<NodeId>, g: f64) -> NodeId {
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(SearchNode {
            loc,
            parent,
            threshold: TieKey::MIN,
            g,
            neighbors: Vec::new(),
        });
        self.explored[loc.index()] = Some(id);
        id
    }

    fn add_neighbor(&mut self, from: NodeId, to: NodeId) {
        let list = &mut self.nodes[from.index()].neighbors;
        if !list.contains(&to) {
            list.push(to);
        }
    }

    fn record_improvement(&mut self) {
        let Some(goal) = self.goal_node else { return };
        let g = self.nodes[goal.index()].g;
        if g < self.best_cost {
            let cost = path_cost(self.instance, &self.backtrack(goal));
            self.best_cost = g;
            self.improvements.push(Improvement {
                elapsed: self.started.elapsed(),
                iteration: self.iterations,
                cost,
                connect_calls: self.oracle.calls(),
            });
        }
    }

    /// Label-correcting repair from `seeds` over the discovered arcs.
    fn rewire(&mut self, seeds: &[NodeId]) {
        self.rewire_queue.clear();
        self.rewire_queue.extend(seeds.iter().copied());
        while let Some(from) = self.rewire_queue.pop_front() {
            let from_loc = self.nodes[from.index()].loc;
            let from_g = self.nodes[from.index()].g;
            let count = self.nodes[from.index()].neighbors.len();
            for k in 0..count {
                let to = self.nodes[from.index()].neighbors[k];
                let g = from_g + self.instance.dist(from_loc, self.nodes[to.index()].loc);
                if g < self.nodes[to.index()].g {
                    let node = &mut self.nodes[to.index()];
                    node.g = g;
                    node.parent = Some(from);
                    self.rewire_queue.push_back(to);
                    if let Some(goal) = self.goal_node {
                        if self.f_value(to) < self.f_value(goal) {
                            self.open.push_back(to);
                        }
                    }
                }
            }
        }
    }

    /// One iteration on the top of the deque.
    pub fn step(&mut self) -> StepStatus {
        let Some(&top) = self.open.back() else {
            return StepStatus::Exhausted;
        };
        self.iterations += 1;
        let loc = self.nodes[top.index()].loc;

        if loc == self.instance.goal() {
            self.goal_node = Some(top);
            self.record_improvement();
            if !self.config.anytime {
                return StepStatus::GoalReached;
            }
        }

        if self.config.anytime {
            if let Some(goal) = self.goal_node {
                if self.f_value(top) >= self.f_value(goal) {
                    self.open.pop_back();
                    return self.status();
                }
            }
        }

        let threshold = self.nodes[top.index()].threshold;
        let mut batch = self
            .source
            .next_batch(loc, self.config.batch_size, threshold);
        if self.config.record_batches {
            self.batch_log.push(BatchRecord {
                loc,
                batch: batch.iter().map(|k| k.id).collect(),
            });
        }
        let Some(&last) = batch.last() else {
            self.open.pop_back();
            self.source.release(loc);
            return self.status();
        };
        self.nodes[top.index()].threshold = last;

        if self.config.rolling {
            self.open.pop_back();
            self.open.push_front(top);
        }

        match self.config.batch_order {
            BatchOrder::Nearest => {}
            BatchOrder::Random { .. } => {
                if let Some(rng) = self.rng.as_mut() {
                    batch.shuffle(rng);
                }
            }
            BatchOrder::GoalSorted => {
                let inst = self.instance;
                batch.sort_by(|a, b| {
                    inst.dist_to_goal(b.id)
                        .total_cmp(&inst.dist_to_goal(a.id))
                        .then(b.id.cmp(&a.id))
                });
            }
        }

        for key in batch {
            self.process_candidate(top, key.id);
        }

        if self.config.anytime {
            self.record_improvement();
        }
        self.status()
    }

    fn status(&self) -> StepStatus {
        if self.open.is_empty() {
            StepStatus::Exhausted
        } else {
            StepStatus::Running
        }
    }

    fn process_candidate(&mut self, from: NodeId, v: LocationId) {
        let from_loc = self.nodes[from.index()].loc;
        if !self.oracle.connect(from_loc, v) {
            return;
        }
        let anytime = self.config.anytime;
        let existing = self.explored[v.index()];
        // Known locations only matter for the anytime machinery and reinsert.
        if let (Some(known), false) = (existing, anytime) {
            if self.config.reinsert {
                self.open.push_back(known);
            }
            return;
        }
        let grandparent = if self.config.grandparent {
            self.nodes[from.index()].parent.filter(|&p| {
                let p_loc = self.nodes[p.index()].loc;
                p_loc != v && self.oracle.connect(p_loc, v)
            })
        } else {
            None
        };

        match existing {
            None => {
                let parent = grandparent.unwrap_or(from);
                let p = &self.nodes[parent.index()];
                let g = p.g + self.instance.dist(p.loc, v);
                let new = self.create_node(v, Some(parent), g);
                self.open.push_back(new);
                if anytime {
                    self.add_neighbor(from, new);
                    if let Some(gp) = grandparent {
                        self.add_neighbor(gp, new);
                    }
                }
            }
            Some(node) => {
                self.add_neighbor(from, node);
                match grandparent {
                    Some(gp) => {
                        self.add_neighbor(gp, node);
                        self.rewire(&[from, gp]);
                    }
                    None => self.rewire(&[from]),
                }
                if self.config.reinsert {
                    self.open.push_back(node);
                }
            }
        }
    }

    /// Runs until the deque drains, the goal is reached (non-anytime) or the budget is spent.
    pub fn run(&mut self) -> SearchReport {
        self.run_with(|_, _, _| {})
    }

    /// Like [`run`](Self::run), calling `on_improve(path, cost, elapsed)` on each improvement.
    pub fn run_with(
        &mut self,
        mut on_improve: impl FnMut(&[LocationId], f64, Duration),
    ) -> SearchReport {
        let mut reported = 0;
        let mut interrupted = None;
        loop {
            if self.open.is_empty() {
                break;
            }
            if let Some(reason) = self.config.budget.exceeded(self.started, self.iterations) {
                interrupted = Some(reason);
                break;
            }
            let status = self.step();
            if self.improvements.len() > reported {
                reported = self.improvements.len();
                if let Some(goal) = self.goal_node {
                    let path = self.backtrack(goal);
                    let imp = self.improvements[reported - 1];
                    on_improve(&path, imp.cost, imp.elapsed);
                }
            }
            if status == StepStatus::GoalReached {
                break;
            }
        }
        self.report(interrupted)
    }

    fn report(&self, interrupted: Option<FailureReason>) -> SearchReport {
        let outcome = match (self.goal_node, interrupted) {
            (Some(goal), reason) => {
                let path = self.backtrack(goal);
                let cost = path_cost(self.instance, &path);
                SearchOutcome::Solution {
                    path,
                    cost,
                    proven_optimal: self.config.anytime && reason.is_none() && self.open.is_empty(),
                }
            }
            (None, None) => SearchOutcome::NoSolution,
            (None, Some(reason)) => SearchOutcome::Failure(reason),
        };
        SearchReport {
            outcome,
            improvements: self.improvements.clone(),
            iterations: self.iterations,
            connect_calls: self.oracle.calls(),
            elapsed: self.started.elapsed(),
        }
    }
}

/// Runs the search with the k-d tree successor source.
pub fn lacas_search(
    oracle: &ConnectOracle<'_>,
    index: &NeighborIndex<'_>,
    config: SearchConfig,
) -> SearchReport {
    Lacas::new(oracle, index, config).run()
}

/// Sum of consecutive Euclidean distances; zero for a single location.
pub fn path_cost(instance: &ProblemInstance, path: &[LocationId]) -> f64 {
    path.windows(2).map(|w| instance.dist(w[0], w[1])).sum()
}

/// Checks the path starts at the start, ends at the goal and every hop connects.
pub fn validate_path(
    instance: &ProblemInstance,
    path: &[LocationId],
    oracle: &ConnectOracle<'_>,
) -> bool {
    let (Some(&first), Some(&last)) = (path.first(), path.last()) else {
        return false;
    };
    if first != instance.start() || last != instance.goal() {
        return false;
    }
    if path.iter().any(|v| v.index() >= instance.len()) {
        return false;
    }
    path.windows(2)
        .all(|w| w[0] != w[1] && oracle.connect(w[0], w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, Segment};

    fn inst(
        points: &[(f64, f64)],
        start: u32,
        goal: u32,
        obstacles: &[(f64, f64, f64, f64)],
    ) -> ProblemInstance {
        ProblemInstance::new(
            points.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            LocationId(start),
            LocationId(goal),
            obstacles
                .iter()
                .map(|&(a, b, c, d)| Segment::new(Point::new(a, b), Point::new(c, d)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn three_collinear_points_optimal() {
        let instance = inst(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0)], 0, 2, &[]);
        let oracle = ConnectOracle::new(&instance);
        let index = NeighborIndex::build(&instance);
        let report = lacas_search(&oracle, &index, SearchConfig::minimal());
        match report.outcome {
            SearchOutcome::Solution {
                cost,
                proven_optimal,
                ref path,
            } => {
                assert!((cost - 1.0).abs() < 1e-12);
                assert!(proven_optimal);
                assert!(validate_path(&instance, path, &oracle));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn boxed_goal_has_no_solution() {
        let instance = inst(
            &[(0.1, 0.1), (0.5, 0.5), (0.3, 0.8), (0.9, 0.2)],
            0,
            1,
            &[
                (0.4, 0.4, 0.6, 0.4),
                (0.6, 0.4, 0.6, 0.6),
                (0.6, 0.6, 0.4, 0.6),
                (0.4, 0.6, 0.4, 0.4),
            ],
        );
        let oracle = ConnectOracle::new(&instance);
        let index = NeighborIndex::build(&instance);
        for config in [
            SearchConfig::minimal(),
            SearchConfig::lacas(),
            SearchConfig::lacat_star(),
        ] {
            let report = lacas_search(&oracle, &index, config);
            assert_eq!(report.outcome, SearchOutcome::NoSolution);
        }
    }

    #[test]
    fn budget_exhaustion_is_failure() {
        let instance = inst(
            &[(0.0, 0.0), (0.5, 0.1), (1.0, 0.0)],
            0,
            2,
            &[(0.7, -0.1, 0.7, 1.1)],
        );
        let oracle = ConnectOracle::new(&instance);
        let index = NeighborIndex::build(&instance);
        let config = SearchConfig::minimal().with_budget(Budget::iterations(1));
        let report = lacas_search(&oracle, &index, config);
        assert_eq!(
            report.outcome,
            SearchOutcome::Failure(FailureReason::IterationCap)
        );
        assert_eq!(report.iterations, 1);
    }

    /// s=(0,0), a=(0.5,0.4), t=(1,0). With b=1 from s the nearest is a,
    /// so t is first reached through a; s later offers t directly.
    #[test]
    fn rewire_triangle() {
        let instance = inst(&[(0.0, 0.0), (0.5, 0.4), (1.0, 0.0)], 0, 2, &[]);
        let oracle = ConnectOracle::new(&instance);
        let index = NeighborIndex::build(&instance);
        let config = SearchConfig {
            batch_size: 1,
            ..SearchConfig::minimal()
        };
        let mut search = Lacas::with_index(&oracle, &index, config);
        let s = search.node_at(LocationId(0)).unwrap();
        // iteration 1: s offers a; iteration 2: a offers t (nearest to a is... s, then t)
        while search.node_at(LocationId(2)).is_none() {
            search.step();
        }
        let t = search.node_at(LocationId(2)).unwrap();
        let a = search.node_at(LocationId(1)).unwrap();
        assert_eq!(search.node(t).parent, Some(a));
        let via_a = instance.dist(LocationId(0), LocationId(1))
            + instance.dist(LocationId(1), LocationId(2));
        assert!((search.node(t).g - via_a).abs() < 1e-12);
        let report = search.run();
        assert_eq!(search.node(t).parent, Some(s));
        assert!((search.node(t).g - 1.0).abs() < 1e-12);
        assert_eq!(search.backtrack(t), vec![LocationId(0), LocationId(2)]);
        assert!(matches!(
            report.outcome,
            SearchOutcome::Solution {
                proven_optimal: true,
                ..
            }
        ));
    }

    #[test]
    fn backtrack_root_is_start() {
        let instance = inst(&[(0.0, 0.0), (1.0, 0.0)], 0, 1, &[]);
        let oracle = ConnectOracle::new(&instance);
        let index = NeighborIndex::build(&instance);
        let search = Lacas::with_index(&oracle, &index, SearchConfig::minimal());
        assert_eq!(search.backtrack(NodeId(0)), vec![LocationId(0)]);
    }

    #[test]
    fn path_cost_examples() {
        let instance = inst(&[(0.0, 0.0), (0.5, 0.0), (1.0, 0.0), (0.6, 0.8)], 0, 2, &[]);
        assert_eq!(path_cost(&instance, &[LocationId(0)]), 0.0);
        assert_eq!(path_cost(&instance, &[LocationId(0), LocationId(3)]), 1.0);
        assert_eq!(
            path_cost(&instance, &[LocationId(0), LocationId(1), LocationId(2)]),
            1.0
        );
    }

    #[test]
    fn validate_path_examples() {
        let instance = inst(
            &[(0.0, 0.0), (0.5, 0.6), (1.0, 0.0)],
            0,
            2,
            &[(0.5, -0.1, 0.5, 0.5)],
        );
        let oracle = ConnectOracle::new(&instance);
        let ok = [LocationId(0), LocationId(1), LocationId(2)];
        assert!(validate_path(&instance, &ok, &oracle));
        assert!(!validate_path(
            &instance,
            &[LocationId(0), LocationId(2)],
            &oracle
        ));
        assert!(!validate_path(
            &instance,
            &[LocationId(1), LocationId(2)],
            &oracle
        ));
        assert!(!validate_path(&instance, &[], &oracle));
    }

    #[test]
    fn non_anytime_stops_at_first_hit() {
        let instance = inst(&[(0.0, 0.0), (0.5, 0.4), (1.0, 0.0), (0.2, 0.9)], 0, 2, &[]);
        let oracle = ConnectOracle::new(&instance);
        let index = NeighborIndex::build(&instance);
        let report = lacas_search(&oracle, &index, SearchConfig::lacas());
        match &report.outcome {
            SearchOutcome::Solution {
                path,
                proven_optimal,
                ..
            } => {
                assert!(!proven_optimal);
                assert!(validate_path(&instance, path, &oracle));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(report.improvements.len(), 1);
    }
}
