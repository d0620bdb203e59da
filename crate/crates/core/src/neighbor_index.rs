//! Lazy successor generation: a balanced 2-d tree answering
//! "the `b` nearest locations strictly beyond a tie-broken threshold".
//!
//! Repeatedly querying with the threshold raised to the largest key of the
//! previous answer walks through every other location exactly once, nearest
//! first. Carrying the destination id inside the threshold keeps that walk
//! exhaustive on lattices where many distances coincide.

use std::collections::BinaryHeap;

use crate::geometry::{dist, tie_key, LocationId, Point, ProblemInstance, TieKey};

/// Ranges at or below this size are scanned linearly.
const LEAF_SIZE: usize = 8;

/// Slack on bounding-box prunes; distances here are O(1) so rounding is ~1e-16.
const PRUNE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct NeighborIndex<'a> {
    instance: &'a ProblemInstance,
    /// Location ids in tree order: the node for range `[lo, hi)` sits at the midpoint.
    ids: Vec<LocationId>,
    /// Bounding box `[xmin, ymin, xmax, ymax]` of each range, stored at its midpoint.
    bounds: Vec<[f64; 4]>,
}

impl<'a> NeighborIndex<'a> {
    /// Builds the tree with axis-alternating median splits (ties by id).
    pub fn build(instance: &'a ProblemInstance) -> Self {
        let n = instance.len();
        let mut index = NeighborIndex {
            instance,
            ids: instance.ids().collect(),
            bounds: vec![[0.0; 4]; n],
        };
        index.build_range(0, n, 0);
        index
    }

    pub fn instance(&self) -> &'a ProblemInstance {
        self.instance
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    fn build_range(&mut self, lo: usize, hi: usize, depth: usize) {
        if lo >= hi {
            return;
        }
        let mid = (lo + hi) / 2;
        let locs = self.instance.locations();
        let mut bb = [
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        ];
        for id in &self.ids[lo..hi] {
            let p = locs[id.index()];
            bb[0] = bb[0].min(p.x);
            bb[1] = bb[1].min(p.y);
            bb[2] = bb[2].max(p.x);
            bb[3] = bb[3].max(p.y);
        }
        self.bounds[mid] = bb;
        if hi - lo <= LEAF_SIZE {
            return;
        }
        let axis = depth % 2;
        let coord = |id: &LocationId| {
            let p = locs[id.index()];
            if axis == 0 {
                p.x
            } else {
                p.y
            }
        };
        self.ids[lo..hi].select_nth_unstable_by(mid - lo, |a, b| {
            coord(a).total_cmp(&coord(b)).then(a.cmp(b))
        });
        self.build_range(lo, mid, depth + 1);
        self.build_range(mid + 1, hi, depth + 1);
    }

    /// Up to `b` locations whose key from `source` is strictly above `threshold`,
    /// ascending. Empty when nothing lies beyond the threshold.
    pub fn nearest_beyond(
        &self,
        source: LocationId,
        b: usize,
        threshold: TieKey,
    ) -> Vec<LocationId> {
        self.nearest_beyond_keys(source, b, threshold)
            .into_iter()
            .map(|k| k.id)
            .collect()
    }

    /// Same as [`nearest_beyond`](Self::nearest_beyond) but keeps the keys.
    pub fn nearest_beyond_keys(
        &self,
        source: LocationId,
        b: usize,
        threshold: TieKey,
    ) -> Vec<TieKey> {
        assert!(b >= 1, "batch size must be positive");
        if self.ids.is_empty() {
            return Vec::new();
        }
        let mut query = BeyondQuery {
            index: self,
            source,
            origin: self.instance.point(source),
            b,
            threshold,
            best: BinaryHeap::with_capacity(b + 1),
        };
        query.visit(0, self.ids.len(), 0);
        query.best.into_sorted_vec()
    }

    /// All locations other than `source` within distance `r` (inclusive), ascending.
    pub fn within_radius(&self, source: LocationId, r: f64) -> Vec<TieKey> {
        let origin = self.instance.point(source);
        let mut out = Vec::new();
        let mut stack = vec![(0usize, self.ids.len(), 0usize)];
        while let Some((lo, hi, depth)) = stack.pop() {
            if lo >= hi {
                continue;
            }
            let mid = (lo + hi) / 2;
            if min_dist(origin, &self.bounds[mid]) > r + PRUNE_SLACK {
                continue;
            }
            if hi - lo <= LEAF_SIZE {
                for &id in &self.ids[lo..hi] {
                    self.push_if_within(source, origin, id, r, &mut out);
                }
                continue;
            }
            self.push_if_within(source, origin, self.ids[mid], r, &mut out);
            stack.push((lo, mid, depth + 1));
            stack.push((mid + 1, hi, depth + 1));
        }
        out.sort_unstable();
        out
    }

    fn push_if_within(
        &self,
        source: LocationId,
        origin: Point,
        id: LocationId,
        r: f64,
        out: &mut Vec<TieKey>,
    ) {
        if id != source {
            let d = dist(origin, self.instance.point(id));
            if d <= r {
                out.push(TieKey { d, id });
            }
        }
    }
}

struct BeyondQuery<'q, 'a> {
    index: &'q NeighborIndex<'a>,
    source: LocationId,
    origin: Point,
    b: usize,
    threshold: TieKey,
    /// Max-heap of the best candidates so far.
    best: BinaryHeap<TieKey>,
}

impl BeyondQuery<'_, '_> {
    fn visit(&mut self, lo: usize, hi: usize, depth: usize) {
        if lo >= hi {
            return;
        }
        let mid = (lo + hi) / 2;
        let bb = &self.index.bounds[mid];
        if self.best.len() == self.b {
            let worst = self.best.peek().map_or(f64::INFINITY, |k| k.d);
            if min_dist(self.origin, bb) > worst + PRUNE_SLACK {
                return;
            }
        }
        if !self.threshold.is_min() && max_dist(self.origin, bb) < self.threshold.d - PRUNE_SLACK {
            return;
        }
        if hi - lo <= LEAF_SIZE {
            for i in lo..hi {
                self.consider(self.index.ids[i]);
            }
            return;
        }
        let split = self.index.ids[mid];
        self.consider(split);
        let sp = self.index.instance.point(split);
        let go_left_first = if depth.is_multiple_of(2) {
            self.origin.x < sp.x
        } else {
            self.origin.y < sp.y
        };
        if go_left_first {
            self.visit(lo, mid, depth + 1);
            self.visit(mid + 1, hi, depth + 1);
        } else {
            self.visit(mid + 1, hi, depth + 1);
            self.visit(lo, mid, depth + 1);
        }
    }

    #[inline]
    fn consider(&mut self, id: LocationId) {
        if id == self.source {
            return;
        }
        let key = TieKey {
            d: dist(self.origin, self.index.instance.point(id)),
            id,
        };
        if key <= self.threshold {
            return;
        }
        if self.best.len() < self.b {
            self.best.push(key);
        } else if let Some(mut top) = self.best.peek_mut() {
            if key < *top {
                *top = key;
            }
        }
    }
}

fn min_dist(p: Point, bb: &[f64; 4]) -> f64 {
    let dx = (bb[0] - p.x).max(0.0).max(p.x - bb[2]);
    let dy = (bb[1] - p.y).max(0.0).max(p.y - bb[3]);
    (dx * dx + dy * dy).sqrt()
}

fn max_dist(p: Point, bb: &[f64; 4]) -> f64 {
    let dx = (p.x - bb[0]).abs().max((bb[2] - p.x).abs());
    let dy = (p.y - bb[1]).abs().max((bb[3] - p.y).abs());
    (dx * dx + dy * dy).sqrt()
}

/// Full-sort reference with the same contract as [`NeighborIndex::nearest_beyond`].
pub fn brute_force_neighbors(
    instance: &ProblemInstance,
    source: LocationId,
    b: usize,
    threshold: TieKey,
) -> Vec<LocationId> {
    assert!(b >= 1, "batch size must be positive");
    let mut keys: Vec<TieKey> = instance
        .ids()
        .filter(|&v| v != source)
        .map(|v| tie_key(instance, source, v))
        .filter(|k| *k > threshold)
        .collect();
    keys.sort_unstable();
    keys.into_iter().take(b).map(|k| k.id).collect()
}
