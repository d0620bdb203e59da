//! Seeded benchmark families and the plain-text instance format.
//!
//! Randomness comes from ChaCha8 seeded with the instance seed, using the
//! family as the stream id; floats are drawn as `(next_u64 >> 11) * 2^-53`.
//! Both are fully specified, so corpora can be regenerated on any platform.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::geometry::{InstanceError, LocationId, Point, ProblemInstance, Segment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Scatter1k,
    Scatter10k,
    Grid10k,
    Plus2k,
    Trap,
    Zigzag,
    Gateways,
    Split,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Scatter1k,
        Family::Scatter10k,
        Family::Grid10k,
        Family::Plus2k,
        Family::Trap,
        Family::Zigzag,
        Family::Gateways,
        Family::Split,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Scatter1k => "scatter-1k",
            Family::Scatter10k => "scatter-10k",
            Family::Grid10k => "grid-10k",
            Family::Plus2k => "plus-2k",
            Family::Trap => "trap",
            Family::Zigzag => "zigzag",
            Family::Gateways => "gateways",
            Family::Split => "split",
        }
    }

    fn stream(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).unwrap() as u64
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown scenario family `{0}`")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub locations: Option<usize>,
    pub obstacle_count: Option<usize>,
    pub obstacle_length: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSpec {
    pub family: Family,
    pub seed: u64,
    pub overrides: Overrides,
}

impl ScenarioSpec {
    pub fn new(family: Family, seed: u64) -> Self {
        ScenarioSpec {
            family,
            seed,
            overrides: Overrides::default(),
        }
    }

    pub fn with_locations(mut self, n: usize) -> Self {
        self.overrides.locations = Some(n);
        self
    }
}

type Xy = [f64; 2];

#[derive(Debug, Clone, Deserialize)]
pub struct RandomLines {
    pub count: usize,
    pub min_length: f64,
    pub max_length: f64,
    pub start: Xy,
    pub goal: Xy,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PlusLayout {
    pub locations: usize,
    pub count: usize,
    pub min_arm: f64,
    pub max_arm: f64,
    pub start: Xy,
    pub goal: Xy,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TrapLayout {
    pub locations: usize,
    pub corner: Xy,
    pub arm: f64,
    pub lip: f64,
    pub start: Xy,
    pub goal: Xy,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ZigzagLayout {
    pub locations: usize,
    pub walls: usize,
    pub opening: f64,
    pub start: Xy,
    pub goal: Xy,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GatewaysLayout {
    pub locations: usize,
    pub walls: usize,
    pub gap: f64,
    pub low: f64,
    pub high: f64,
    pub start: Xy,
    pub goal: Xy,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SplitLayout {
    pub locations: usize,
    pub left_zone_max_x: f64,
    pub right_zone_min_x: f64,
    pub walls: usize,
    pub gap_center: f64,
    pub gap: f64,
    pub start: Xy,
    pub goal: Xy,
}

/// Generator defaults, versioned alongside the code.
#[derive(Debug, Clone, Deserialize)]
pub struct ScenarioConfig {
    pub version: u32,
    pub random_lines: RandomLines,
    pub plus: PlusLayout,
    pub trap: TrapLayout,
    pub zigzag: ZigzagLayout,
    pub gateways: GatewaysLayout,
    pub split: SplitLayout,
}

const BUILTIN_CONFIG: &str = include_str!("../config/scenarios.toml");

impl ScenarioConfig {
    pub fn builtin() -> Self {
        toml::from_str(BUILTIN_CONFIG).expect("bundled scenario config is valid")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

/// Walls may poke this far past the unit square to seal it.
const WALL_OVERHANG: f64 = 0.05;

struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    fn new(family: Family, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(family.stream());
        Sampler { rng }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

struct Builder {
    locations: Vec<Point>,
    seen: HashSet<(u64, u64)>,
    obstacles: Vec<Segment>,
}

impl Builder {
    fn new(start: Xy, goal: Xy) -> Self {
        let mut b = Builder {
            locations: Vec::new(),
            seen: HashSet::new(),
            obstacles: Vec::new(),
        };
        assert!(b.add(Point::new(start[0], start[1])));
        assert!(b.add(Point::new(goal[0], goal[1])));
        b
    }

    fn add(&mut self, p: Point) -> bool {
        self.seen
            .insert(((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits()))
            && {
                self.locations.push(p);
                true
            }
    }

    /// Fills up to `n` locations with rejection sampling from `accept`.
    fn scatter(&mut self, n: usize, s: &mut Sampler, accept: impl Fn(Point) -> bool) {
        while self.locations.len() < n {
            let p = Point::new(s.unit(), s.unit());
            if accept(p) {
                self.add(p);
            }
        }
    }

    fn wall(&mut self, a: Xy, b: Xy) {
        self.obstacles.push(
            Segment::new(Point::new(a[0], a[1]), Point::new(b[0], b[1]))
                .expect("wall is non-degenerate"),
        );
    }

    fn finish(self) -> ProblemInstance {
        ProblemInstance::new(self.locations, LocationId(0), LocationId(1), self.obstacles)
            .expect("generated instance is valid")
    }
}

fn random_segment(s: &mut Sampler, min_len: f64, max_len: f64) -> (Xy, Xy) {
    let c = [s.unit(), s.unit()];
    let angle = s.range(0.0, std::f64::consts::PI);
    let half = 0.5 * s.range(min_len, max_len);
    let (dx, dy) = (half * angle.cos(), half * angle.sin());
    ([c[0] - dx, c[1] - dy], [c[0] + dx, c[1] + dy])
}

pub fn generate_instance(spec: &ScenarioSpec) -> ProblemInstance {
    generate_with(spec, &ScenarioConfig::builtin())
}

pub fn generate_with(spec: &ScenarioSpec, config: &ScenarioConfig) -> ProblemInstance {
    let mut s = Sampler::new(spec.family, spec.seed);
    let ov = &spec.overrides;
    match spec.family {
        Family::Scatter1k | Family::Scatter10k | Family::Grid10k => {
            let lines = &config.random_lines;
            let mut b = Builder::new(lines.start, lines.goal);
            match spec.family {
                Family::Grid10k => {
                    let steps = ov
                        .locations
                        .map_or(100, |n| ((n as f64).sqrt().round() as usize).max(2) - 1);
                    for i in 0..=steps {
                        for j in 0..=steps {
                            b.add(Point::new(i as f64 / steps as f64, j as f64 / steps as f64));
                        }
                    }
                }
                Family::Scatter1k => b.scatter(ov.locations.unwrap_or(1000), &mut s, |_| true),
                _ => b.scatter(ov.locations.unwrap_or(10_000), &mut s, |_| true),
            }
            let (lo, hi) = ov
                .obstacle_length
                .unwrap_or((lines.min_length, lines.max_length));
            for _ in 0..ov.obstacle_count.unwrap_or(lines.count) {
                let (p, q) = random_segment(&mut s, lo, hi);
                b.wall(p, q);
            }
            b.finish()
        }
        Family::Plus2k => {
            let c = &config.plus;
            let mut b = Builder::new(c.start, c.goal);
            b.scatter(ov.locations.unwrap_or(c.locations), &mut s, |_| true);
            for _ in 0..ov.obstacle_count.unwrap_or(c.count) {
                let centre = [s.unit(), s.unit()];
                let arm = s.range(c.min_arm, c.max_arm);
                b.wall([centre[0] - arm, centre[1]], [centre[0] + arm, centre[1]]);
                b.wall([centre[0], centre[1] - arm], [centre[0], centre[1] + arm]);
            }
            b.finish()
        }
        Family::Trap => {
            let c = &config.trap;
            let mut b = Builder::new(c.start, c.goal);
            b.scatter(ov.locations.unwrap_or(c.locations), &mut s, |_| true);
            let [cx, cy] = c.corner;
            b.wall([cx - c.arm, cy], [cx, cy]);
            b.wall([cx, cy], [cx, cy - c.arm]);
            b.wall([cx - c.arm, cy], [cx - c.arm, cy - c.lip]);
            b.wall([cx, cy - c.arm], [cx - c.lip, cy - c.arm]);
            b.finish()
        }
        Family::Zigzag => {
            let c = &config.zigzag;
            let mut b = Builder::new(c.start, c.goal);
            b.scatter(ov.locations.unwrap_or(c.locations), &mut s, |_| true);
            for k in 0..c.walls {
                let y = (k + 1) as f64 / (c.walls + 1) as f64;
                if k % 2 == 0 {
                    b.wall([-WALL_OVERHANG, y], [1.0 - c.opening, y]);
                } else {
                    b.wall([c.opening, y], [1.0 + WALL_OVERHANG, y]);
                }
            }
            b.finish()
        }
        Family::Gateways => {
            let c = &config.gateways;
            let mut b = Builder::new(c.start, c.goal);
            b.scatter(ov.locations.unwrap_or(c.locations), &mut s, |_| true);
            for k in 0..c.walls {
                let x = (k + 1) as f64 / (c.walls + 1) as f64;
                let centre = if k % 2 == 0 { c.low } else { c.high };
                b.wall([x, -WALL_OVERHANG], [x, centre - c.gap / 2.0]);
                b.wall([x, centre + c.gap / 2.0], [x, 1.0 + WALL_OVERHANG]);
            }
            b.finish()
        }
        Family::Split => {
            let c = &config.split;
            let mut b = Builder::new(c.start, c.goal);
            let (l, r) = (c.left_zone_max_x, c.right_zone_min_x);
            b.scatter(ov.locations.unwrap_or(c.locations), &mut s, |p| {
                p.x <= l || p.x >= r
            });
            for k in 0..c.walls {
                let x = l + (r - l) * (k + 1) as f64 / (c.walls + 1) as f64;
                b.wall([x, -WALL_OVERHANG], [x, c.gap_center - c.gap / 2.0]);
                b.wall([x, c.gap_center + c.gap / 2.0], [x, 1.0 + WALL_OVERHANG]);
            }
            b.finish()
        }
    }
}

/// Writes the line-based instance format.
pub fn serialize_instance(instance: &ProblemInstance) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", instance.len()).unwrap();
    for p in instance.locations() {
        writeln!(out, "loc {} {}", p.x, p.y).unwrap();
    }
    writeln!(out, "start {}", instance.start()).unwrap();
    writeln!(out, "goal {}", instance.goal()).unwrap();
    for o in instance.obstacles() {
        writeln!(out, "obst {} {} {} {}", o.a.x, o.a.y, o.b.x, o.b.y).unwrap();
    }
    out
}

#[derive(Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("line {line}: {source}")]
    Invalid {
        line: usize,
        #[source]
        source: InstanceError,
    },
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_fields<T: FromStr>(
    line: usize,
    fields: &[&str],
    want: usize,
    keyword: &str,
) -> Result<Vec<T>, ParseError> {
    if fields.len() != want {
        return Err(malformed(
            line,
            format!(
                "`{keyword}` expects {want} value(s), found {}",
                fields.len()
            ),
        ));
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<T>()
                .map_err(|_| malformed(line, format!("cannot parse `{f}`")))
        })
        .collect()
}

pub fn parse_instance(text: &str) -> Result<ProblemInstance, ParseError> {
    let mut declared: Option<usize> = None;
    let mut locations = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut start: Option<(usize, u64)> = None;
    let mut goal: Option<(usize, u64)> = None;
    let mut obstacles = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut parts = content.split_whitespace();
        let keyword = parts.next().unwrap();
        let fields: Vec<&str> = parts.collect();
        match keyword {
            "n" => {
                if declared.is_some() {
                    return Err(malformed(line, "duplicate `n` line"));
                }
                declared = Some(parse_fields::<usize>(line, &fields, 1, "n")?[0]);
            }
            "loc" => {
                let n = declared.ok_or_else(|| malformed(line, "`loc` before `n`"))?;
                let v = parse_fields::<f64>(line, &fields, 2, "loc")?;
                let p = Point::new(v[0], v[1]);
                let id = LocationId::from(locations.len());
                if locations.len() >= n {
                    return Err(malformed(line, format!("more than {n} `loc` lines")));
                }
                if !p.is_finite() {
                    return Err(ParseError::Invalid {
                        line,
                        source: InstanceError::NonFinite,
                    });
                }
                if !p.in_workspace() {
                    return Err(ParseError::Invalid {
                        line,
                        source: InstanceError::OutsideWorkspace(id),
                    });
                }
                if let Some(prev) = seen.insert(((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits()), id)
                {
                    return Err(ParseError::Invalid {
                        line,
                        source: InstanceError::DuplicateLocation(prev, id),
                    });
                }
                locations.push(p);
            }
            "start" => start = Some((line, parse_fields::<u64>(line, &fields, 1, "start")?[0])),
            "goal" => goal = Some((line, parse_fields::<u64>(line, &fields, 1, "goal")?[0])),
            "obst" => {
                let v = parse_fields::<f64>(line, &fields, 4, "obst")?;
                let seg = Segment::new(Point::new(v[0], v[1]), Point::new(v[2], v[3]))
                    .map_err(|source| ParseError::Invalid { line, source })?;
                obstacles.push(seg);
            }
            other => return Err(malformed(line, format!("unknown record `{other}`"))),
        }
    }

    let n = declared.ok_or(ParseError::Missing("n"))?;
    if locations.len() != n {
        return Err(malformed(
            text.lines().count(),
            format!("expected {n} locations, found {}", locations.len()),
        ));
    }
    let (start_line, start) = start.ok_or(ParseError::Missing("start"))?;
    let (goal_line, goal) = goal.ok_or(ParseError::Missing("goal"))?;
    for (line, id) in [(start_line, start), (goal_line, goal)] {
        if id >= n as u64 {
            return Err(ParseError::Invalid {
                line,
                source: InstanceError::IdOutOfRange { id, n },
            });
        }
    }
    ProblemInstance::new(
        locations,
        LocationId(start as u32),
        LocationId(goal as u32),
        obstacles,
    )
    .map_err(|source| ParseError::Invalid {
        line: goal_line,
        source,
    })
}

/// One corpus entry: `family seed path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub family: String,
    pub seed: u64,
    pub path: PathBuf,
}

pub fn write_manifest(entries: &[ManifestEntry]) -> String {
    entries
        .iter()
        .map(|e| format!("{} {} {}\n", e.family, e.seed, e.path.display()))
        .collect()
}

/// Parses a manifest; relative paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        let [family, seed, path] = parts[..] else {
            return Err(malformed(i + 1, "expected `family seed path`"));
        };
        let seed = seed
            .parse()
            .map_err(|_| malformed(i + 1, format!("cannot parse seed `{seed}`")))?;
        let path = PathBuf::from(path);
        let path = if path.is_relative() {
            base.join(path)
        } else {
            path
        };
        out.push(ManifestEntry {
            family: family.to_string(),
            seed,
            path,
        });
    }
    Ok(out)
}
