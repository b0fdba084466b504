//! Exact geometric primitives and the bichromatic instance model.
//!
//! Coordinates enter as exact rationals. On validation they are scaled by the
//! least common denominator onto an integer lattice, which preserves every
//! orientation sign; all predicates afterwards run on `i128` products.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = Ratio<i64>;
pub type PointId = usize;

/// Largest absolute lattice coordinate accepted after denominator scaling.
pub const LATTICE_BOUND: i64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("instance has no points")]
    Empty,
    #[error("point at index {index} carries id {found}; ids must be 0..n in order")]
    BadId { index: usize, found: PointId },
    #[error("points {0} and {1} share an abscissa")]
    DuplicateAbscissa(PointId, PointId),
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(PointId, PointId, PointId),
    #[error("color imbalance: r={r}, b={b}; need b >= r with b - r even")]
    ColorImbalance { r: usize, b: usize },
    #[error("coordinates of point {0} do not fit the exact lattice")]
    CoordinateRange(PointId),
    #[error("points {0} and {1} have the same color")]
    SameColorPair(PointId, PointId),
    #[error("unknown point id {0}")]
    UnknownPoint(PointId),
    #[error("coordinate bound {bound} is too small for {n} points")]
    BoundTooSmall { bound: i64, n: usize },
    #[error("rejection sampling gave up after {0} attempts")]
    GenerationFailed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    /// +1 for blue, -1 for red.
    pub fn weight(self) -> i64 {
        match self {
            Color::Blue => 1,
            Color::Red => -1,
        }
    }

    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Color::Red => "R",
            Color::Blue => "B",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

pub fn weight(color: Color) -> i64 {
    color.weight()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoint {
    pub id: PointId,
    pub x: Rational,
    pub y: Rational,
    pub color: Color,
}

impl LabeledPoint {
    pub fn new(id: PointId, x: Rational, y: Rational, color: Color) -> Self {
        LabeledPoint { id, x, y, color }
    }

    pub fn int(id: PointId, x: i64, y: i64, color: Color) -> Self {
        LabeledPoint::new(id, Rational::from_integer(x), Rational::from_integer(y), color)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    fn from_sign(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Greater => Orientation::Left,
            Ordering::Less => Orientation::Right,
            Ordering::Equal => Orientation::Collinear,
        }
    }
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Side of `s` relative to the directed line from `p` to `q`.
pub fn orientation(p: &LabeledPoint, q: &LabeledPoint, s: &LabeledPoint) -> Orientation {
    let (px, py) = (big(&p.x), big(&p.y));
    let det = (big(&q.x) - &px) * (big(&s.y) - &py) - (big(&q.y) - &py) * (big(&s.x) - &px);
    if det.is_zero() {
        Orientation::Collinear
    } else if det.is_positive() {
        Orientation::Left
    } else {
        Orientation::Right
    }
}

/// Which side of a directed line a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    On,
    Right,
}

impl Side {
    fn from_sign(v: i128) -> Self {
        match v.cmp(&0) {
            Ordering::Greater => Side::Left,
            Ordering::Less => Side::Right,
            Ordering::Equal => Side::On,
        }
    }

    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::On => Side::On,
        }
    }
}

#[inline]
fn cross(ax: i128, ay: i128, bx: i128, by: i128) -> i128 {
    ax * by - ay * bx
}

/// A direction in the plane, identified up to positive scaling.
///
/// Components are reduced by their gcd so equal directions compare equal
/// structurally. Cyclic comparisons are always relative to a base
/// direction and use only cross/dot signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Direction {
    pub dx: i64,
    pub dy: i64,
}

impl Direction {
    /// Downward vertical: the directed line then has the leftmost points on its right.
    pub const VERTICAL: Direction = Direction { dx: 0, dy: -1 };

    pub fn new(dx: i64, dy: i64) -> Option<Direction> {
        Self::reduce(dx as i128, dy as i128)
    }

    fn reduce(dx: i128, dy: i128) -> Option<Direction> {
        if dx == 0 && dy == 0 {
            return None;
        }
        let g = dx.gcd(&dy);
        let (dx, dy) = (dx / g, dy / g);
        let fit = |v: i128| i64::try_from(v).expect("direction component exceeds i64");
        Some(Direction { dx: fit(dx), dy: fit(dy) })
    }

    pub fn antipode(self) -> Direction {
        Direction { dx: -self.dx, dy: -self.dy }
    }

    /// Rotated a quarter turn counterclockwise.
    pub fn perp(self) -> Direction {
        Direction { dx: -self.dy, dy: self.dx }
    }

    pub fn cross(self, other: Direction) -> i128 {
        cross(self.dx as i128, self.dy as i128, other.dx as i128, other.dy as i128)
    }

    pub fn dot(self, other: Direction) -> i128 {
        self.dx as i128 * other.dx as i128 + self.dy as i128 * other.dy as i128
    }

    pub fn is_parallel(self, other: Direction) -> bool {
        self.cross(other) == 0
    }

    /// 0 when the counterclockwise angle from `base` lies in [0, pi), 1 for [pi, 2pi).
    fn half(self, base: Direction) -> u8 {
        let c = base.cross(self);
        if c > 0 || (c == 0 && base.dot(self) > 0) {
            0
        } else {
            1
        }
    }

    /// Compare the counterclockwise angles from `base` to `a` and to `b`, in [0, 2pi).
    pub fn cmp_from(base: Direction, a: Direction, b: Direction) -> Ordering {
        let (ha, hb) = (a.half(base), b.half(base));
        ha.cmp(&hb).then_with(|| 0.cmp(&a.cross(b)))
    }

    /// A direction strictly inside the counterclockwise arc from `self` to `to`.
    /// Equal endpoints denote the full turn and yield the antipode.
    pub fn interior(self, to: Direction) -> Direction {
        if self == to {
            return self.antipode();
        }
        let c = self.cross(to);
        let (ax, ay, bx, by) = (self.dx as i128, self.dy as i128, to.dx as i128, to.dy as i128);
        if c > 0 {
            Self::reduce(ax + bx, ay + by).unwrap()
        } else if c == 0 {
            self.perp()
        } else {
            Self::reduce(-(ax + bx), -(ay + by)).unwrap()
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

/// Angular positions on one counterclockwise turn starting at `base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame {
    pub base: Direction,
}

impl Frame {
    pub fn new(base: Direction) -> Self {
        Frame { base }
    }

    pub fn cmp(&self, a: Direction, b: Direction) -> Ordering {
        Direction::cmp_from(self.base, a, b)
    }

    /// True when `d` lies in the closed half turn [base, base + pi].
    pub fn in_first_half(&self, d: Direction) -> bool {
        self.cmp(d, self.base.antipode()) != Ordering::Greater
    }

    pub fn sort(&self, dirs: &mut Vec<Direction>) {
        dirs.sort_by(|a, b| self.cmp(*a, *b));
        dirs.dedup();
    }
}

/// A directed line through instance points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DirectedLine {
    /// Through both points, directed from the first to the second.
    SpannedBy(PointId, PointId),
    /// Through the pivot with the given direction.
    PivotDirection(PointId, Direction),
}

impl DirectedLine {
    pub fn anchor(&self) -> PointId {
        match *self {
            DirectedLine::SpannedBy(a, _) | DirectedLine::PivotDirection(a, _) => a,
        }
    }

    pub fn direction(&self, inst: &Instance) -> Direction {
        match *self {
            DirectedLine::SpannedBy(a, b) => inst.direction(a, b),
            DirectedLine::PivotDirection(_, d) => d,
        }
    }

    pub fn reversed(&self) -> DirectedLine {
        match *self {
            DirectedLine::SpannedBy(a, b) => DirectedLine::SpannedBy(b, a),
            DirectedLine::PivotDirection(p, d) => DirectedLine::PivotDirection(p, d.antipode()),
        }
    }

    pub fn side(&self, inst: &Instance, id: PointId) -> Side {
        let d = self.direction(inst);
        inst.side_of(self.anchor(), d, id)
    }

    /// Signed distance proxy along the left normal; larger is further left.
    pub fn offset(&self, inst: &Instance) -> i128 {
        inst.offset(self.direction(inst), self.anchor())
    }

    /// Instance points lying on the line.
    pub fn points_on(&self, inst: &Instance) -> Vec<PointId> {
        (0..inst.len()).filter(|&i| self.side(inst, i) == Side::On).collect()
    }

    /// Both lines carry the same point set and the same orientation.
    pub fn same_as(&self, other: &DirectedLine, inst: &Instance) -> bool {
        let (d, e) = (self.direction(inst), other.direction(inst));
        d == e && inst.offset(d, self.anchor()) == inst.offset(d, other.anchor())
    }
}

/// An immutable, validated bichromatic point set in general position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    points: Vec<LabeledPoint>,
    lattice: Vec<(i64, i64)>,
    reds: Vec<PointId>,
    blues: Vec<PointId>,
    delta: i64,
}

impl Instance {
    /// Check every instance invariant and derive r, b and delta.
    ///
    /// Checks run in order: ids, lattice fit, distinct abscissae,
    /// no collinear triple, then the color balance.
    pub fn validate(points: Vec<LabeledPoint>) -> Result<Instance, GeomError> {
        if points.is_empty() {
            return Err(GeomError::Empty);
        }
        for (index, p) in points.iter().enumerate() {
            if p.id != index {
                return Err(GeomError::BadId { index, found: p.id });
            }
        }
        let lattice = to_lattice(&points)?;

        let mut by_x: Vec<PointId> = (0..points.len()).collect();
        by_x.sort_by_key(|&i| lattice[i].0);
        for w in by_x.windows(2) {
            if lattice[w[0]].0 == lattice[w[1]].0 {
                let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(GeomError::DuplicateAbscissa(a, b));
            }
        }

        if let Some((a, b, c)) = find_collinear(&lattice) {
            return Err(GeomError::CollinearTriple(a, b, c));
        }

        let reds: Vec<PointId> = points.iter().filter(|p| p.color == Color::Red).map(|p| p.id).collect();
        let blues: Vec<PointId> = points.iter().filter(|p| p.color == Color::Blue).map(|p| p.id).collect();
        let (r, b) = (reds.len(), blues.len());
        if b < r || (b - r) % 2 != 0 {
            return Err(GeomError::ColorImbalance { r, b });
        }
        Ok(Instance { points, lattice, reds, blues, delta: ((b - r) / 2) as i64 })
    }

    /// Build from `(x, y, color)` triples, assigning ids in order.
    pub fn from_coords<I>(coords: I) -> Result<Instance, GeomError>
    where
        I: IntoIterator<Item = (i64, i64, Color)>,
    {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(i, (x, y, c))| LabeledPoint::int(i, x, y, c))
            .collect();
        Instance::validate(points)
    }

    pub fn points(&self) -> &[LabeledPoint] {
        &self.points
    }

    pub fn point(&self, id: PointId) -> &LabeledPoint {
        &self.points[id]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn r(&self) -> usize {
        self.reds.len()
    }

    pub fn b(&self) -> usize {
        self.blues.len()
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn color(&self, id: PointId) -> Color {
        self.points[id].color
    }

    pub fn weight(&self, id: PointId) -> i64 {
        self.points[id].color.weight()
    }

    pub fn ids_of(&self, color: Color) -> &[PointId] {
        match color {
            Color::Red => &self.reds,
            Color::Blue => &self.blues,
        }
    }

    pub fn ids(&self) -> std::ops::Range<PointId> {
        0..self.points.len()
    }

    /// Integer lattice coordinates used by all predicates.
    pub fn lattice(&self, id: PointId) -> (i64, i64) {
        self.lattice[id]
    }

    /// Direction of the vector from `a` to `b`.
    pub fn direction(&self, a: PointId, b: PointId) -> Direction {
        let (ax, ay) = self.lattice[a];
        let (bx, by) = self.lattice[b];
        Direction::new(bx - ax, by - ay).expect("distinct points")
    }

    /// Orientation of `c` relative to the directed line `a -> b`.
    pub fn orient(&self, a: PointId, b: PointId, c: PointId) -> Orientation {
        let (ax, ay) = self.lattice[a];
        let (bx, by) = self.lattice[b];
        let (cx, cy) = self.lattice[c];
        Orientation::from_sign(cross(
            (bx - ax) as i128,
            (by - ay) as i128,
            (cx - ax) as i128,
            (cy - ay) as i128,
        ))
    }

    /// Offset of `id` along the left normal of `d`.
    pub fn offset(&self, d: Direction, id: PointId) -> i128 {
        let (x, y) = self.lattice[id];
        cross(d.dx as i128, d.dy as i128, x as i128, y as i128)
    }

    /// Side of `id` with respect to the line through `anchor` with direction `d`.
    pub fn side_of(&self, anchor: PointId, d: Direction, id: PointId) -> Side {
        Side::from_sign(self.offset(d, id) - self.offset(d, anchor))
    }

    /// Open-halfplane weight on the given side of `line`.
    pub fn halfplane_weight(&self, line: &DirectedLine, side: Side) -> i64 {
        let d = line.direction(self);
        let base = self.offset(d, line.anchor());
        self.ids()
            .filter(|&i| Side::from_sign(self.offset(d, i) - base) == side)
            .map(|i| self.weight(i))
            .sum()
    }

    /// Right weight of the line through `anchor` with direction `d`.
    pub fn right_weight(&self, anchor: PointId, d: Direction) -> i64 {
        self.halfplane_weight(&DirectedLine::PivotDirection(anchor, d), Side::Right)
    }

    /// True when `d` is parallel to no segment between two instance points.
    pub fn is_generic(&self, d: Direction) -> bool {
        let mut offsets: Vec<i128> = self.ids().map(|i| self.offset(d, i)).collect();
        offsets.sort_unstable();
        offsets.windows(2).all(|w| w[0] != w[1])
    }

    /// All directions between ordered pairs of points.
    pub fn pair_directions(&self) -> Vec<Direction> {
        let mut out = Vec::with_capacity(self.len() * self.len());
        for a in self.ids() {
            for b in self.ids() {
                if a != b {
                    out.push(self.direction(a, b));
                }
            }
        }
        out
    }

    /// The same points with every color flipped, for callers normalizing b < r.
    pub fn swap_colors(points: &[LabeledPoint]) -> Vec<LabeledPoint> {
        points
            .iter()
            .map(|p| LabeledPoint { color: p.color.other(), ..p.clone() })
            .collect()
    }
}

fn to_lattice(points: &[LabeledPoint]) -> Result<Vec<(i64, i64)>, GeomError> {
    let mut scale: i64 = 1;
    for p in points {
        for v in [&p.x, &p.y] {
            let l = scale.lcm(v.denom());
            if l > LATTICE_BOUND {
                return Err(GeomError::CoordinateRange(p.id));
            }
            scale = l;
        }
    }
    let lift = |v: &Rational, id: PointId| -> Result<i64, GeomError> {
        let factor = scale / v.denom();
        v.numer()
            .checked_mul(factor)
            .filter(|c| c.abs() <= LATTICE_BOUND)
            .ok_or(GeomError::CoordinateRange(id))
    };
    points.iter().map(|p| Ok((lift(&p.x, p.id)?, lift(&p.y, p.id)?))).collect()
}

/// Some collinear triple, found by sorting the reduced directions around each point.
fn find_collinear(lattice: &[(i64, i64)]) -> Option<(PointId, PointId, PointId)> {
    let n = lattice.len();
    for a in 0..n {
        let mut dirs: Vec<((i64, i64), PointId)> = (0..n)
            .filter(|&b| b != a)
            .map(|b| {
                let (dx, dy) = (lattice[b].0 - lattice[a].0, lattice[b].1 - lattice[a].1);
                let g = dx.gcd(&dy);
                let (mut dx, mut dy) = (dx / g, dy / g);
                if dx < 0 || (dx == 0 && dy < 0) {
                    dx = -dx;
                    dy = -dy;
                }
                ((dx, dy), b)
            })
            .collect();
        dirs.sort_unstable();
        for w in dirs.windows(2) {
            if w[0].0 == w[1].0 {
                let mut t = [a, w[0].1, w[1].1];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
    }
    None
}

/// Whether the line through a red and a blue point is balanced.
pub fn is_balanced(a: PointId, b: PointId, inst: &Instance) -> Result<bool, GeomError> {
    for id in [a, b] {
        if id >= inst.len() {
            return Err(GeomError::UnknownPoint(id));
        }
    }
    if inst.color(a) == inst.color(b) {
        return Err(GeomError::SameColorPair(a, b));
    }
    let line = DirectedLine::SpannedBy(a, b);
    Ok(inst.halfplane_weight(&line, Side::Right) == inst.delta()
        && inst.halfplane_weight(&line, Side::Left) == inst.delta())
}

pub fn halfplane_weight(line: &DirectedLine, inst: &Instance, side: Side) -> i64 {
    inst.halfplane_weight(line, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(id: usize, x: i64, y: i64, c: Color) -> LabeledPoint {
        LabeledPoint::int(id, x, y, c)
    }

    #[test]
    fn orientation_signs() {
        let o = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| {
            orientation(&lp(0, a.0, a.1, Color::Red), &lp(1, b.0, b.1, Color::Red), &lp(2, c.0, c.1, Color::Red))
        };
        assert_eq!(o((0, 0), (1, 0), (0, 1)), Orientation::Left);
        assert_eq!(o((0, 0), (1, 0), (2, 0)), Orientation::Collinear);
        assert_eq!(o((0, 0), (1, 0), (1, -1)), Orientation::Right);
    }

    #[test]
    fn orientation_on_rationals() {
        let p = LabeledPoint::new(0, Rational::new(1, 3), Rational::new(0, 1), Color::Red);
        let q = LabeledPoint::new(1, Rational::new(2, 3), Rational::new(1, 7), Color::Red);
        let s = LabeledPoint::new(2, Rational::new(1, 1), Rational::new(2, 7), Color::Blue);
        assert_eq!(orientation(&p, &q, &s), Orientation::Collinear);
    }

    #[test]
    fn validate_minimal_pair() {
        let inst = Instance::validate(vec![lp(0, 0, 0, Color::Red), lp(1, 1, 1, Color::Blue)]).unwrap();
        assert_eq!((inst.r(), inst.b(), inst.delta()), (1, 1, 0));
    }

    #[test]
    fn validate_rejects_collinear_before_color_check() {
        let err = Instance::validate(vec![
            lp(0, 0, 0, Color::Red),
            lp(1, 1, 0, Color::Red),
            lp(2, 2, 0, Color::Blue),
        ])
        .unwrap_err();
        assert_eq!(err, GeomError::CollinearTriple(0, 1, 2));
    }

    #[test]
    fn validate_diagonal_triple() {
        let pts = |y2| {
            vec![
                lp(0, 0, 0, Color::Red),
                lp(1, 1, 1, Color::Blue),
                lp(2, 2, y2, Color::Blue),
                lp(3, 3, 0, Color::Blue),
            ]
        };
        assert_eq!(Instance::validate(pts(2)).unwrap_err(), GeomError::CollinearTriple(0, 1, 2));
        let inst = Instance::validate(pts(3)).unwrap();
        assert_eq!((inst.r(), inst.b(), inst.delta()), (1, 3, 1));
    }

    #[test]
    fn validate_errors() {
        assert_eq!(Instance::validate(vec![]).unwrap_err(), GeomError::Empty);
        let dup = vec![lp(0, 0, 0, Color::Red), lp(1, 0, 5, Color::Blue)];
        assert_eq!(Instance::validate(dup).unwrap_err(), GeomError::DuplicateAbscissa(0, 1));
        let odd = vec![lp(0, 0, 0, Color::Red), lp(1, 1, 5, Color::Blue), lp(2, 2, 3, Color::Blue)];
        assert_eq!(Instance::validate(odd).unwrap_err(), GeomError::ColorImbalance { r: 1, b: 2 });
        let more_red = vec![lp(0, 0, 0, Color::Red), lp(1, 1, 5, Color::Red)];
        assert_eq!(Instance::validate(more_red).unwrap_err(), GeomError::ColorImbalance { r: 2, b: 0 });
        let ids = vec![lp(1, 0, 0, Color::Red)];
        assert_eq!(Instance::validate(ids).unwrap_err(), GeomError::BadId { index: 0, found: 1 });
    }

    #[test]
    fn swap_colors_normalizes_red_surplus() {
        let pts = vec![lp(0, 0, 0, Color::Red), lp(1, 1, 5, Color::Red), lp(2, 2, 1, Color::Red), lp(3, 3, 7, Color::Blue)];
        assert!(Instance::validate(pts.clone()).is_err());
        let inst = Instance::validate(Instance::swap_colors(&pts)).unwrap();
        assert_eq!((inst.r(), inst.b(), inst.delta()), (1, 3, 1));
    }

    #[test]
    fn rational_coordinates_scale_to_lattice() {
        let pts = vec![
            LabeledPoint::new(0, Rational::new(1, 2), Rational::new(1, 3), Color::Red),
            LabeledPoint::new(1, Rational::new(-5, 4), Rational::new(7, 1), Color::Blue),
        ];
        let inst = Instance::validate(pts).unwrap();
        assert_eq!(inst.lattice(0), (6, 4));
        assert_eq!(inst.lattice(1), (-15, 84));
    }

    #[test]
    fn halfplane_weights() {
        let inst = Instance::from_coords([(0, 0, Color::Red), (1, 3, Color::Blue), (2, -1, Color::Blue), (3, 2, Color::Blue)]).unwrap();
        let up = Direction::new(0, 1).unwrap();
        let line = DirectedLine::PivotDirection(0, up);
        // Point 0 is on the line; the rest are to its right.
        assert_eq!(inst.halfplane_weight(&line, Side::Right), 3);
        assert_eq!(inst.halfplane_weight(&line, Side::Left), 0);

        let pair = Instance::from_coords([(0, 0, Color::Red), (1, 1, Color::Blue)]).unwrap();
        let l = DirectedLine::SpannedBy(0, 1);
        assert_eq!(pair.halfplane_weight(&l, Side::Right), 0);
        assert!(is_balanced(0, 1, &pair).unwrap());
    }

    #[test]
    fn same_color_pair_rejected() {
        let inst = Instance::from_coords([(0, 0, Color::Red), (1, 3, Color::Blue), (2, -1, Color::Blue), (3, 2, Color::Blue)]).unwrap();
        assert_eq!(is_balanced(1, 2, &inst).unwrap_err(), GeomError::SameColorPair(1, 2));
    }

    #[test]
    fn direction_cyclic_order() {
        let base = Direction::new(0, -1).unwrap();
        let east = Direction::new(1, 0).unwrap();
        let north = Direction::new(0, 1).unwrap();
        let west = Direction::new(-1, 0).unwrap();
        let f = Frame::new(base);
        assert_eq!(f.cmp(base, east), Ordering::Less);
        assert_eq!(f.cmp(east, north), Ordering::Less);
        assert_eq!(f.cmp(north, west), Ordering::Less);
        assert_eq!(f.cmp(west, base), Ordering::Greater);
        assert!(f.in_first_half(north));
        assert!(!f.in_first_half(west));
        // the antipode sits exactly half a turn away
        assert_eq!(f.cmp(base.antipode(), north), Ordering::Equal);
    }

    #[test]
    fn interior_lies_strictly_between() {
        let dirs = [(1, 0), (1, 1), (0, 1), (-3, 1), (-1, 0), (-2, -5), (0, -1), (4, -1)];
        for &(ax, ay) in &dirs {
            for &(bx, by) in &dirs {
                let a = Direction::new(ax, ay).unwrap();
                let b = Direction::new(bx, by).unwrap();
                let m = a.interior(b);
                let f = Frame::new(a);
                assert_eq!(f.cmp(a, m), Ordering::Less, "{a} {b} {m}");
                if a != b {
                    assert_eq!(f.cmp(m, b), Ordering::Less, "{a} {b} {m}");
                }
            }
        }
    }
}
