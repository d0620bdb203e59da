//! Planar primitives, problem instances and the instrumented `connect` oracle.
//!
//! Everything lives in the unit workspace `[0, 1]^2`. Obstacles are closed line
//! segments; a straight move between two locations is traversable when it
//! touches no obstacle, endpoints included.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use thiserror::Error;

/// Absolute tolerance for the collinearity branch of the orientation test.
pub const COLLINEAR_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn in_workspace(self) -> bool {
        (0.0..=1.0).contains(&self.x) && (0.0..=1.0).contains(&self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        dist(self, other)
    }
}

/// Euclidean distance. Exactly symmetric in floating point.
#[inline]
pub fn dist(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// Index of a location inside a [`ProblemInstance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LocationId(pub u32);

impl LocationId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for LocationId {
    fn from(i: usize) -> Self {
        LocationId(u32::try_from(i).expect("location index exceeds u32"))
    }
}

impl fmt::Display for LocationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Tie-broken distance from a fixed source to a destination.
///
/// Ordered lexicographically by `(d, id)`, so distinct destinations seen from
/// one source never compare equal even on lattices full of equal distances.
#[derive(Debug, Clone, Copy)]
pub struct TieKey {
    pub d: f64,
    pub id: LocationId,
}

impl TieKey {
    /// Sorts below every key produced by [`tie_key`]; the initial threshold.
    pub const MIN: TieKey = TieKey {
        d: f64::NEG_INFINITY,
        id: LocationId(0),
    };

    pub fn is_min(&self) -> bool {
        self.d == f64::NEG_INFINITY
    }
}

impl PartialEq for TieKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for TieKey {}

impl PartialOrd for TieKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TieKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.d.total_cmp(&other.d).then(self.id.cmp(&other.id))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Builds a segment, rejecting coincident endpoints.
    pub fn new(a: Point, b: Point) -> Result<Self, InstanceError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(InstanceError::NonFinite);
        }
        if a == b {
            return Err(InstanceError::DegenerateSegment(a.x, a.y));
        }
        Ok(Segment { a, b })
    }

    pub fn length(&self) -> f64 {
        dist(self.a, self.b)
    }

    fn bbox(&self) -> [f64; 4] {
        [
            self.a.x.min(self.b.x),
            self.a.y.min(self.b.y),
            self.a.x.max(self.b.x),
            self.a.y.max(self.b.y),
        ]
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("start and goal must be distinct (both {0})")]
    StartIsGoal(LocationId),
    #[error("location id {id} out of range (n = {n})")]
    IdOutOfRange { id: u64, n: usize },
    #[error("locations {0} and {1} share identical coordinates")]
    DuplicateLocation(LocationId, LocationId),
    #[error("location {0} lies outside the unit workspace")]
    OutsideWorkspace(LocationId),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("degenerate obstacle segment at ({0}, {1})")]
    DegenerateSegment(f64, f64),
    #[error("instance has no locations")]
    Empty,
}

/// Locations `V`, a start, a goal and the obstacle set.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    locations: Vec<Point>,
    start: LocationId,
    goal: LocationId,
    obstacles: Vec<Segment>,
}

impl ProblemInstance {
    pub fn new(
        locations: Vec<Point>,
        start: LocationId,
        goal: LocationId,
        obstacles: Vec<Segment>,
    ) -> Result<Self, InstanceError> {
        let n = locations.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        for id in [start, goal] {
            if id.index() >= n {
                return Err(InstanceError::IdOutOfRange { id: id.0 as u64, n });
            }
        }
        if start == goal {
            return Err(InstanceError::StartIsGoal(start));
        }
        let mut seen = std::collections::HashMap::with_capacity(n);
        for (i, p) in locations.iter().enumerate() {
            if !p.is_finite() {
                return Err(InstanceError::NonFinite);
            }
            if !p.in_workspace() {
                return Err(InstanceError::OutsideWorkspace(i.into()));
            }
            // +0.0 and -0.0 compare equal, so normalise before hashing bits
            let key = ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
            if let Some(prev) = seen.insert(key, i) {
                return Err(InstanceError::DuplicateLocation(prev.into(), i.into()));
            }
        }
        for s in &obstacles {
            Segment::new(s.a, s.b)?;
        }
        Ok(ProblemInstance {
            locations,
            start,
            goal,
            obstacles,
        })
    }

    pub fn locations(&self) -> &[Point] {
        &self.locations
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    pub fn start(&self) -> LocationId {
        self.start
    }

    pub fn goal(&self) -> LocationId {
        self.goal
    }

    pub fn obstacles(&self) -> &[Segment] {
        &self.obstacles
    }

    #[inline]
    pub fn point(&self, id: LocationId) -> Point {
        self.locations[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = LocationId> + '_ {
        (0..self.locations.len()).map(LocationId::from)
    }

    #[inline]
    pub fn dist(&self, u: LocationId, v: LocationId) -> f64 {
        dist(self.point(u), self.point(v))
    }

    /// Straight-line distance to the goal, the heuristic used throughout.
    #[inline]
    pub fn dist_to_goal(&self, u: LocationId) -> f64 {
        self.dist(u, self.goal)
    }

    /// Returns true when every location has a distinct set of coordinates.
    pub fn has_unique_locations(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.len());
        self.locations
            .iter()
            .all(|p| seen.insert(((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits())))
    }
}

/// The tie-broken distance used for every distance comparison in the search.
///
/// Panics when `from == to`.
#[inline]
pub fn tie_key(instance: &ProblemInstance, from: LocationId, to: LocationId) -> TieKey {
    assert_ne!(from, to, "tie_key requires distinct locations");
    TieKey {
        d: instance.dist(from, to),
        id: to,
    }
}

#[inline]
fn orient(p: Point, q: Point, r: Point) -> f64 {
    (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
}

#[inline]
fn orient_sign(p: Point, q: Point, r: Point) -> i8 {
    let o = orient(p, q, r);
    if o > COLLINEAR_EPS {
        1
    } else if o < -COLLINEAR_EPS {
        -1
    } else {
        0
    }
}

/// `r` is known to be collinear with `p`-`q`; check it lies within their box.
#[inline]
fn within_box(p: Point, q: Point, r: Point) -> bool {
    r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let (a, b, c, d) = (s1.a, s1.b, s2.a, s2.b);
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within_box(a, b, c))
        || (o2 == 0 && within_box(a, b, d))
        || (o3 == 0 && within_box(c, d, a))
        || (o4 == 0 && within_box(c, d, b))
}

#[inline]
fn boxes_overlap(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a[0] <= b[2] && b[0] <= a[2] && a[1] <= b[3] && b[1] <= a[3]
}

/// Counts oracle invocations (the `#connect` metric).
#[derive(Debug, Default)]
pub struct CallCounter(AtomicU64);

impl CallCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn increment(&self) {
        self.0.fetch_add(1, AtomicOrdering::Relaxed);
    }

    pub fn get(&self) -> u64 {
        self.0.load(AtomicOrdering::Relaxed)
    }
}

/// Linear scan over all obstacles; true when the segment touches none.
pub fn segment_is_free(obstacles: &[Segment], seg: &Segment) -> bool {
    let bb = seg.bbox();
    obstacles
        .iter()
        .all(|o| !(boxes_overlap(&bb, &o.bbox()) && segments_intersect(seg, o)))
}

/// Reference oracle: obstacle scan without acceleration. Counts one call.
pub fn connect(
    instance: &ProblemInstance,
    u: LocationId,
    v: LocationId,
    counter: &CallCounter,
) -> bool {
    assert_ne!(u, v, "connect requires distinct locations");
    counter.increment();
    let seg = Segment {
        a: instance.point(u),
        b: instance.point(v),
    };
    segment_is_free(instance.obstacles(), &seg)
}

/// Uniform bucket grid over the obstacle set.
///
/// Each obstacle is registered in every cell its segment may pass through
/// (rows are rasterised with a small outward slack), and a query visits the
/// cells of its own segment the same way, so no true contact can be missed.
#[derive(Debug, Clone)]
pub struct ObstacleGrid {
    obstacles: Vec<Segment>,
    boxes: Vec<[f64; 4]>,
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    offsets: Vec<u32>,
    items: Vec<u32>,
}

const RASTER_SLACK: f64 = 1e-9;

impl ObstacleGrid {
    pub fn new(obstacles: &[Segment]) -> Self {
        let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
        for o in obstacles {
            let b = o.bbox();
            x0 = x0.min(b[0]);
            y0 = y0.min(b[1]);
            x1 = x1.max(b[2]);
            y1 = y1.max(b[3]);
        }
        let side = (x1 - x0).max(y1 - y0) + 2.0 * RASTER_SLACK;
        let per_axis = ((obstacles.len() as f64).sqrt() * 2.0)
            .ceil()
            .clamp(1.0, 64.0) as usize;
        let cell = side / per_axis as f64;
        let origin = Point::new(x0 - RASTER_SLACK, y0 - RASTER_SLACK);
        let mut grid = ObstacleGrid {
            obstacles: obstacles.to_vec(),
            boxes: obstacles.iter().map(Segment::bbox).collect(),
            origin,
            cell,
            cols: per_axis,
            rows: per_axis,
            offsets: Vec::new(),
            items: Vec::new(),
        };
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); per_axis * per_axis];
        for (i, o) in obstacles.iter().enumerate() {
            grid.for_each_cell(o, |c| {
                if buckets[c].last() != Some(&(i as u32)) {
                    buckets[c].push(i as u32);
                }
                true
            });
        }
        let mut offsets = Vec::with_capacity(buckets.len() + 1);
        let mut items = Vec::new();
        offsets.push(0u32);
        for b in &buckets {
            items.extend_from_slice(b);
            offsets.push(items.len() as u32);
        }
        grid.offsets = offsets;
        grid.items = items;
        grid
    }

    pub fn obstacles(&self) -> &[Segment] {
        &self.obstacles
    }

    fn clamp_index(&self, v: f64, n: usize) -> usize {
        if v <= 0.0 {
            0
        } else {
            (v as usize).min(n - 1)
        }
    }

    /// Visits each cell the segment may touch; stops early when `f` returns false.
    fn for_each_cell(&self, seg: &Segment, mut f: impl FnMut(usize) -> bool) -> bool {
        let (a, b) = (seg.a, seg.b);
        let ymin = a.y.min(b.y);
        let ymax = a.y.max(b.y);
        let r0 = self.clamp_index((ymin - RASTER_SLACK - self.origin.y) / self.cell, self.rows);
        let r1 = self.clamp_index((ymax + RASTER_SLACK - self.origin.y) / self.cell, self.rows);
        let dy = b.y - a.y;
        for r in r0..=r1 {
            let band_lo = (self.origin.y + r as f64 * self.cell).max(ymin);
            let band_hi = (self.origin.y + (r + 1) as f64 * self.cell).min(ymax);
            let (xa, xb) = if dy.abs() < 1e-15 {
                (a.x, b.x)
            } else {
                let t0 = ((band_lo - a.y) / dy).clamp(0.0, 1.0);
                let t1 = ((band_hi - a.y) / dy).clamp(0.0, 1.0);
                (a.x + t0 * (b.x - a.x), a.x + t1 * (b.x - a.x))
            };
            let xlo = xa.min(xb) - RASTER_SLACK;
            let xhi = xa.max(xb) + RASTER_SLACK;
            let c0 = self.clamp_index((xlo - self.origin.x) / self.cell, self.cols);
            let c1 = self.clamp_index((xhi - self.origin.x) / self.cell, self.cols);
            for c in c0..=c1 {
                if !f(r * self.cols + c) {
                    return false;
                }
            }
        }
        true
    }

    /// True when the segment touches no obstacle.
    pub fn is_free(&self, seg: &Segment) -> bool {
        if self.obstacles.is_empty() {
            return true;
        }
        let bb = seg.bbox();
        self.for_each_cell(seg, |c| {
            let (lo, hi) = (self.offsets[c] as usize, self.offsets[c + 1] as usize);
            self.items[lo..hi].iter().all(|&i| {
                let i = i as usize;
                !(boxes_overlap(&bb, &self.boxes[i]) && segments_intersect(seg, &self.obstacles[i]))
            })
        })
    }
}

/// The `connect` oracle bound to one instance, with its own call counter.
#[derive(Debug)]
pub struct ConnectOracle<'a> {
    instance: &'a ProblemInstance,
    grid: ObstacleGrid,
    counter: CallCounter,
}

impl<'a> ConnectOracle<'a> {
    pub fn new(instance: &'a ProblemInstance) -> Self {
        ConnectOracle {
            instance,
            grid: ObstacleGrid::new(instance.obstacles()),
            counter: CallCounter::new(),
        }
    }

    pub fn instance(&self) -> &'a ProblemInstance {
        self.instance
    }

    /// True iff the straight move `u -> v` touches no obstacle.
    ///
    /// Panics when `u == v`.
    pub fn connect(&self, u: LocationId, v: LocationId) -> bool {
        assert_ne!(u, v, "connect requires distinct locations");
        self.counter.increment();
        self.grid.is_free(&Segment {
            a: self.instance.point(u),
            b: self.instance.point(v),
        })
    }

    /// Free-space test for arbitrary points (sampling planners). Counts one call.
    pub fn segment_free(&self, a: Point, b: Point) -> bool {
        self.counter.increment();
        self.grid.is_free(&Segment { a, b })
    }

    pub fn calls(&self) -> u64 {
        self.counter.get()
    }
}
