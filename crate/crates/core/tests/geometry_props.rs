mod common;

use lacas::geometry::{segment_is_free, segments_intersect, tie_key, ObstacleGrid};
use lacas::{LocationId, Point, Segment, TieKey};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::Rng;

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).unwrap()
}

fn exact_orient(p: Point, q: Point, r: Point) -> BigRational {
    let (px, py, qx, qy, rx, ry) = (
        exact(p.x),
        exact(p.y),
        exact(q.x),
        exact(q.y),
        exact(r.x),
        exact(r.y),
    );
    (qx - &px) * (ry - &py) - (qy - py) * (rx - px)
}

fn sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn exact_on_segment(p: Point, q: Point, r: Point) -> bool {
    let (px, qx, rx) = (exact(p.x), exact(q.x), exact(r.x));
    let (py, qy, ry) = (exact(p.y), exact(q.y), exact(r.y));
    rx >= px.clone().min(qx.clone())
        && rx <= px.max(qx)
        && ry >= py.clone().min(qy.clone())
        && ry <= py.max(qy)
}

fn exact_intersect(s1: &Segment, s2: &Segment) -> bool {
    let (a, b, c, d) = (s1.a, s1.b, s2.a, s2.b);
    let o1 = sign(&exact_orient(a, b, c));
    let o2 = sign(&exact_orient(a, b, d));
    let o3 = sign(&exact_orient(c, d, a));
    let o4 = sign(&exact_orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && exact_on_segment(a, b, c))
        || (o2 == 0 && exact_on_segment(a, b, d))
        || (o3 == 0 && exact_on_segment(c, d, a))
        || (o4 == 0 && exact_on_segment(c, d, b))
}

fn min_abs_orient(s1: &Segment, s2: &Segment) -> BigRational {
    [
        exact_orient(s1.a, s1.b, s2.a),
        exact_orient(s1.a, s1.b, s2.b),
        exact_orient(s2.a, s2.b, s1.a),
        exact_orient(s2.a, s2.b, s1.b),
    ]
    .into_iter()
    .map(|o| o.abs())
    .min()
    .unwrap()
}

fn seg(a: (f64, f64), b: (f64, f64)) -> Option<Segment> {
    Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1)).ok()
}

#[test]
fn intersection_agrees_with_exact_arithmetic_on_random_pairs() {
    let mut r = common::rng(11);
    let tolerance = BigRational::new(BigInt::from(1), BigInt::from(1_000_000_000i64));
    let mut checked = 0;
    let mut hits = 0;
    while checked < 10_000 {
        let mut p = || (r.gen::<f64>(), r.gen::<f64>());
        let (Some(s1), Some(s2)) = (seg(p(), p()), seg(p(), p())) else {
            continue;
        };
        if min_abs_orient(&s1, &s2) < tolerance {
            continue;
        }
        let expected = exact_intersect(&s1, &s2);
        assert_eq!(segments_intersect(&s1, &s2), expected, "{s1:?} {s2:?}");
        hits += usize::from(expected);
        checked += 1;
    }
    assert!(
        hits > 1000,
        "too few intersecting pairs to be meaningful: {hits}"
    );
}

#[test]
fn intersection_agrees_with_exact_arithmetic_on_dyadic_grid() {
    // Coordinates k/16 make every orientation exact in f64, so collinear,
    // overlapping and shared-endpoint configurations show up constantly.
    let mut r = common::rng(12);
    let mut touching = 0;
    for _ in 0..10_000 {
        let mut p = || {
            (
                r.gen_range(0..=16) as f64 / 16.0,
                r.gen_range(0..=16) as f64 / 16.0,
            )
        };
        let (Some(s1), Some(s2)) = (seg(p(), p()), seg(p(), p())) else {
            continue;
        };
        let expected = exact_intersect(&s1, &s2);
        assert_eq!(segments_intersect(&s1, &s2), expected, "{s1:?} {s2:?}");
        assert_eq!(segments_intersect(&s2, &s1), expected);
        if s1.a == s2.a || s1.a == s2.b || s1.b == s2.a || s1.b == s2.b {
            assert!(expected);
            touching += 1;
        }
    }
    assert!(touching > 0);
}

#[test]
fn obstacle_grid_matches_linear_scan() {
    let mut r = common::rng(13);
    for round in 0..20 {
        let count = 1 + round * 10;
        let obstacles: Vec<Segment> = (0..count)
            .filter_map(|_| {
                seg(
                    (r.gen_range(-0.1..1.1), r.gen_range(-0.1..1.1)),
                    (r.gen_range(-0.1..1.1), r.gen_range(-0.1..1.1)),
                )
            })
            .collect();
        let grid = ObstacleGrid::new(&obstacles);
        for _ in 0..500 {
            let Some(q) = seg((r.gen(), r.gen()), (r.gen(), r.gen())) else {
                continue;
            };
            assert_eq!(grid.is_free(&q), segment_is_free(&obstacles, &q), "{q:?}");
        }
        // Queries that end exactly on obstacle endpoints.
        for o in &obstacles {
            if let Some(q) = seg((o.a.x, o.a.y), (r.gen(), r.gen())) {
                assert!(!grid.is_free(&q));
            }
        }
    }
}

#[test]
fn tie_key_order_matches_brute_force_sort() {
    let inst = common::random_instance(14, 100, 0);
    let source = LocationId(7);
    let mut keys: Vec<TieKey> = inst
        .ids()
        .filter(|&v| v != source)
        .map(|v| tie_key(&inst, source, v))
        .collect();
    keys.sort();
    let mut brute: Vec<(f64, u32)> = inst
        .ids()
        .filter(|&v| v != source)
        .map(|v| (inst.point(source).dist(inst.point(v)), v.0))
        .collect();
    brute.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let ids: Vec<u32> = keys.iter().map(|k| k.id.0).collect();
    assert_eq!(ids, brute.iter().map(|b| b.1).collect::<Vec<_>>());
    assert!(keys.iter().all(|k| TieKey::MIN < *k));
}

proptest! {
    #[test]
    fn intersection_is_symmetric(
        ax in 0.0f64..1.0, ay in 0.0f64..1.0, bx in 0.0f64..1.0, by in 0.0f64..1.0,
        cx in 0.0f64..1.0, cy in 0.0f64..1.0, dx in 0.0f64..1.0, dy in 0.0f64..1.0,
    ) {
        if let (Some(s1), Some(s2)) = (seg((ax, ay), (bx, by)), seg((cx, cy), (dx, dy))) {
            let reversed = seg((bx, by), (ax, ay)).unwrap();
            prop_assert_eq!(segments_intersect(&s1, &s2), segments_intersect(&s2, &s1));
            prop_assert_eq!(segments_intersect(&s1, &s2), segments_intersect(&reversed, &s2));
        }
    }

    #[test]
    fn distance_is_a_metric(
        ax in 0.0f64..1.0, ay in 0.0f64..1.0, bx in 0.0f64..1.0, by in 0.0f64..1.0, cx in 0.0f64..1.0, cy in 0.0f64..1.0,
    ) {
        let (a, b, c) = (Point::new(ax, ay), Point::new(bx, by), Point::new(cx, cy));
        prop_assert_eq!(a.dist(b), b.dist(a));
        prop_assert!(a.dist(c) <= a.dist(b) + b.dist(c) + 1e-12);
        prop_assert_eq!(a.dist(a), 0.0);
    }
}
