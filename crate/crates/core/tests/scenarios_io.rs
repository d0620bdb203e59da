mod common;

use lacas::geometry::segment_is_free;
use lacas::scenarios::{
    generate_instance, parse_instance, serialize_instance, Family, ParseError, ScenarioConfig,
    ScenarioSpec,
};
use lacas::Segment;

#[test]
fn parse_inverts_serialize_on_100_instances() {
    for seed in 0..100u64 {
        let family = Family::ALL[(seed % 8) as usize];
        let n = 20 + (seed as usize * 7) % 200;
        let spec = ScenarioSpec::new(family, seed).with_locations(n);
        let inst = generate_instance(&spec);
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst, "{family} {seed}");
        assert_eq!(serialize_instance(&back), text);
    }
}

#[test]
fn generated_geometry_stays_in_bounds() {
    for family in Family::ALL {
        let spec = ScenarioSpec::new(family, 3);
        let inst = generate_instance(&spec);
        assert!(inst
            .locations()
            .iter()
            .all(|p| (0.0..=1.0).contains(&p.x) && (0.0..=1.0).contains(&p.y)));
        for s in inst.obstacles() {
            for p in [s.a, s.b] {
                assert!(
                    (-0.1..=1.1).contains(&p.x) && (-0.1..=1.1).contains(&p.y),
                    "{family}"
                );
            }
        }
    }
}

#[test]
fn family_sizes_follow_defaults() {
    let n = |f| generate_instance(&ScenarioSpec::new(f, 1)).len();
    assert_eq!(n(Family::Scatter1k), 1000);
    assert_eq!(n(Family::Scatter10k), 10_000);
    assert_eq!(n(Family::Grid10k), 101 * 101);
    assert_eq!(n(Family::Plus2k), 2000);
    for f in [
        Family::Trap,
        Family::Zigzag,
        Family::Gateways,
        Family::Split,
    ] {
        assert_eq!(n(f), 1000);
    }
}

#[test]
fn grid_coordinates_are_multiples_of_a_hundredth() {
    let inst = generate_instance(&ScenarioSpec::new(Family::Grid10k, 9));
    for p in inst.locations() {
        for c in [p.x, p.y] {
            let k = (c * 100.0).round();
            assert!((c - k / 100.0).abs() < 1e-12);
        }
    }
}

#[test]
fn split_zones_connect_only_through_the_gaps() {
    let cfg = ScenarioConfig::builtin().split;
    let mid = 0.5 * (cfg.left_zone_max_x + cfg.right_zone_min_x);
    for seed in 1..=3 {
        let inst = generate_instance(&ScenarioSpec::new(Family::Split, seed).with_locations(150));
        let pts = inst.locations();
        let left = |i: usize| pts[i].x <= cfg.left_zone_max_x;
        let mut crossings = 0;
        for u in 0..pts.len() {
            for v in u + 1..pts.len() {
                if left(u) == left(v) {
                    continue;
                }
                if segment_is_free(
                    inst.obstacles(),
                    &Segment {
                        a: pts[u],
                        b: pts[v],
                    },
                ) {
                    crossings += 1;
                    let t = (mid - pts[u].x) / (pts[v].x - pts[u].x);
                    let y = pts[u].y + t * (pts[v].y - pts[u].y);
                    assert!((y - cfg.gap_center).abs() <= cfg.gap / 2.0);
                }
            }
        }
        assert!(crossings > 0, "seed {seed} has no crossing");
        assert!(left(inst.start().index()) && !left(inst.goal().index()));
        assert!(common::goal_reachable(&inst));
        // Without crossing edges the start side never reaches the goal side.
        let mut sealed = inst.obstacles().to_vec();
        sealed
            .push(Segment::new(lacas::Point::new(mid, -0.1), lacas::Point::new(mid, 1.1)).unwrap());
        let cut =
            lacas::ProblemInstance::new(pts.to_vec(), inst.start(), inst.goal(), sealed).unwrap();
        assert!(!common::goal_reachable(&cut));
    }
}

#[test]
fn parse_errors_point_at_the_problem() {
    let inst = generate_instance(&ScenarioSpec::new(Family::Trap, 1).with_locations(10));
    let text = serialize_instance(&inst);
    let no_goal: String = text
        .lines()
        .filter(|l| !l.starts_with("goal"))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(parse_instance(&no_goal), Err(ParseError::Missing("goal")));
    let bad_start = text.replace("start 0", "start 10");
    let err = parse_instance(&bad_start).unwrap_err();
    assert!(matches!(err, ParseError::Invalid { .. }), "{err}");
    assert!(err.to_string().starts_with("line "));
}
