#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use lacas::geometry::segment_is_free;
use lacas::{LocationId, Point, ProblemInstance, Segment};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_segment(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Segment {
    let c = Point::new(rng.gen(), rng.gen());
    let len = rng.gen_range(lo..hi);
    let a = rng.gen_range(0.0..std::f64::consts::PI);
    let (dx, dy) = (0.5 * len * a.cos(), 0.5 * len * a.sin());
    Segment::new(
        Point::new(c.x - dx, c.y - dy),
        Point::new(c.x + dx, c.y + dy),
    )
    .unwrap()
}

/// `n` uniform locations, start id 0 and goal id 1, `obstacles` random segments.
pub fn random_instance(seed: u64, n: usize, obstacles: usize) -> ProblemInstance {
    let mut r = rng(seed);
    let locations: Vec<Point> = (0..n).map(|_| Point::new(r.gen(), r.gen())).collect();
    let segs = (0..obstacles)
        .map(|_| random_segment(&mut r, 0.05, 0.3))
        .collect();
    ProblemInstance::new(locations, LocationId(0), LocationId(1), segs).unwrap()
}

/// Goal inside a square box; when `sealed` is false one side has a gap.
pub fn boxed_goal_instance(seed: u64, n: usize, sealed: bool) -> ProblemInstance {
    let mut r = rng(seed);
    let h = r.gen_range(0.08..0.15);
    let c = Point::new(r.gen_range(0.3..0.7), r.gen_range(0.3..0.7));
    let (x0, x1, y0, y1) = (c.x - h, c.x + h, c.y - h, c.y + h);
    let mut locations = vec![Point::new(0.05, 0.05), c];
    while locations.len() < n {
        locations.push(Point::new(r.gen(), r.gen()));
    }
    let seg = |a: (f64, f64), b: (f64, f64)| {
        Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1)).unwrap()
    };
    let mut walls = vec![
        seg((x0, y0), (x1, y0)),
        seg((x1, y0), (x1, y1)),
        seg((x0, y1), (x0, y0)),
    ];
    if sealed {
        walls.push(seg((x1, y1), (x0, y1)));
    } else {
        let g = 0.3 * h;
        walls.push(seg((x1, y1), (c.x + g, y1)));
        walls.push(seg((c.x - g, y1), (x0, y1)));
    }
    for _ in 0..5 {
        walls.push(random_segment(&mut r, 0.05, 0.2));
    }
    ProblemInstance::new(locations, LocationId(0), LocationId(1), walls).unwrap()
}

/// Points on a `k`×`k` lattice with spacing 1/(k-1): many equal distances.
pub fn grid_instance(k: usize) -> ProblemInstance {
    let mut locations = Vec::new();
    for i in 0..k {
        for j in 0..k {
            locations.push(Point::new(
                i as f64 / (k - 1) as f64,
                j as f64 / (k - 1) as f64,
            ));
        }
    }
    let goal = LocationId((locations.len() - 1) as u32);
    ProblemInstance::new(locations, LocationId(0), goal, vec![]).unwrap()
}

fn free(instance: &ProblemInstance, u: usize, v: usize) -> bool {
    let pts = instance.locations();
    segment_is_free(
        instance.obstacles(),
        &Segment {
            a: pts[u],
            b: pts[v],
        },
    )
}

/// Dense O(n²) Dijkstra over the fully materialised graph, obstacle checks by linear scan.
pub fn dense_dijkstra(instance: &ProblemInstance) -> Option<f64> {
    let n = instance.len();
    let pts = instance.locations();
    let s = instance.start().index();
    let t = instance.goal().index();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[s] = 0.0;
    for _ in 0..n {
        let u = (0..n)
            .filter(|&i| !done[i])
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]))?;
        if dist[u].is_infinite() {
            return None;
        }
        if u == t {
            return Some(dist[t]);
        }
        done[u] = true;
        for v in 0..n {
            if !done[v] && v != u {
                let nd = dist[u] + pts[u].dist(pts[v]);
                if nd < dist[v] && free(instance, u, v) {
                    dist[v] = nd;
                }
            }
        }
    }
    None
}

/// Breadth-first reachability of the goal in the materialised graph.
pub fn goal_reachable(instance: &ProblemInstance) -> bool {
    let n = instance.len();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([instance.start().index()]);
    seen[instance.start().index()] = true;
    while let Some(u) = queue.pop_front() {
        if u == instance.goal().index() {
            return true;
        }
        for (v, seen_v) in seen.iter_mut().enumerate() {
            if !*seen_v && free(instance, u, v) {
                *seen_v = true;
                queue.push_back(v);
            }
        }
    }
    false
}

#[derive(PartialEq)]
struct Ordered(f64);
impl Eq for Ordered {}
impl PartialOrd for Ordered {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Ordered {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Shortest distances from `source` over an explicit arc list.
pub fn arc_dijkstra(
    instance: &ProblemInstance,
    arcs: &[(LocationId, LocationId)],
    source: LocationId,
) -> HashMap<LocationId, f64> {
    let mut adj: HashMap<LocationId, Vec<LocationId>> = HashMap::new();
    for &(u, v) in arcs {
        adj.entry(u).or_default().push(v);
    }
    let mut dist = HashMap::from([(source, 0.0)]);
    let mut heap = BinaryHeap::from([Reverse((Ordered(0.0), source))]);
    while let Some(Reverse((Ordered(d), u))) = heap.pop() {
        if d > dist[&u] {
            continue;
        }
        for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            let nd = d + instance.dist(u, v);
            if dist.get(&v).is_none_or(|&old| nd < old) {
                dist.insert(v, nd);
                heap.push(Reverse((Ordered(nd), v)));
            }
        }
    }
    dist
}
