//! Sliding rotations: closed, angularly monotone curves in the space of
//! directed lines built from rotations about points of one color and
//! parallel displacements between such points.
//!
//! A sliding rotation is stored as a cyclic list of pieces starting at a
//! fixed direction. All predicates (orientation, delta preservation, waist)
//! evaluate the curve on the combinatorial intervals between its critical
//! directions, where every count is constant.

mod certificate;
mod gamma;

pub use certificate::{
    certify_with_gamma, decompose_fhg, lemma_fh_lines, lemma_g_transitions, recharge, verify_lower_bound, Certificate, CertifiedLine,
    FhgSplit, GTransition, GammaRecord, Provenance, Recharge, RechargeRecord, Route, SplitSide,
};
pub use gamma::{find_gamma, find_gamma_with, plain_candidates, Gamma, Origin};

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Color, DirectedLine, Direction, Frame, Instance, PointId, Side};
use crate::rotation::{EventKind, RotationTrace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlidingError {
    #[error("sliding rotation is malformed: {0}")]
    Malformed(String),
    #[error("sliding rotation is not positively oriented")]
    NotPositivelyOriented,
    #[error("sliding rotation is not delta-preserving")]
    NotDeltaPreserving,
    #[error("lemma check failed: {0}")]
    LemmaViolation(String),
    #[error("transition crossing point {0} fits no accounting case")]
    UnclassifiableTransition(PointId),
    #[error("certificate failure: {0}")]
    CertificateFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Piece {
    /// Rotation about `pivot` from direction `from` counterclockwise to `to`.
    /// `from == to` only for a single arc spanning the whole turn.
    Arc { pivot: PointId, from: Direction, to: Direction },
    /// Parallel displacement at a fixed direction between the lines through two points.
    Slide { direction: Direction, from: PointId, to: PointId },
}

/// Position on the turn: a direction measured from the start, or the closing full turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    full: bool,
    dir: Direction,
}

#[derive(Debug, Clone, Copy)]
struct ArcSpan {
    start: Pos,
    end: Pos,
    pivot: PointId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlidingRotation {
    color: Color,
    start: Direction,
    pieces: Vec<Piece>,
}

/// Minimum number of subset points strictly inside the strip between antipodal lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Waist {
    pub value: usize,
    /// A direction parallel to no instance segment inside the first minimizing interval.
    pub achieved_at: Direction,
    pub lines: (DirectedLine, DirectedLine),
    pub witnesses: Vec<PointId>,
}

impl SlidingRotation {
    /// Validate continuity, angular monotonicity, pivot colors and closure.
    pub fn new(color: Color, start: Direction, pieces: Vec<Piece>, inst: &Instance) -> Result<Self, SlidingError> {
        let bad = |m: String| Err(SlidingError::Malformed(m));
        let frame = Frame::new(start);
        let Some(&Piece::Arc { pivot: first, from, .. }) = pieces.first() else {
            return bad("must begin with an arc".into());
        };
        if from != start {
            return bad("first arc must leave from the start direction".into());
        }
        let first_offset = inst.offset(start, first);
        if inst.ids_of(color).iter().any(|&q| q != first && inst.offset(start, q) == first_offset) {
            return bad("initial line holds two subset points".into());
        }
        let mut pos = Pos { full: false, dir: start };
        let mut anchor = first;
        for (i, piece) in pieces.iter().enumerate() {
            match *piece {
                Piece::Arc { pivot, from, to } => {
                    if inst.color(pivot) != color {
                        return bad(format!("arc {i} pivots on a point of the wrong color"));
                    }
                    if pos.full || from != pos.dir {
                        return bad(format!("arc {i} does not continue from the previous direction"));
                    }
                    if inst.offset(from, pivot) != inst.offset(from, anchor) {
                        return bad(format!("arc {i} is not continuous with the previous line"));
                    }
                    let end = if to == start { Pos { full: true, dir: to } } else { Pos { full: false, dir: to } };
                    if cmp_pos(&frame, end, pos) != Ordering::Greater {
                        return bad(format!("arc {i} does not advance counterclockwise"));
                    }
                    pos = end;
                    anchor = pivot;
                }
                Piece::Slide { direction, from, to } => {
                    if direction != pos.dir {
                        return bad(format!("slide {i} is not at the current direction"));
                    }
                    if inst.color(from) != color || inst.color(to) != color {
                        return bad(format!("slide {i} ends at a point of the wrong color"));
                    }
                    if inst.offset(direction, from) != inst.offset(direction, anchor) {
                        return bad(format!("slide {i} does not start on the current line"));
                    }
                    if inst.offset(direction, from) == inst.offset(direction, to) {
                        return bad(format!("slide {i} has zero length"));
                    }
                    anchor = to;
                }
            }
        }
        if !pos.full || inst.offset(start, anchor) != first_offset {
            return bad("curve does not close after one full turn".into());
        }
        Ok(SlidingRotation { color, start, pieces })
    }

    /// The rotation itself, seen as a sliding rotation without slides.
    pub fn from_trace(trace: &RotationTrace, inst: &Instance) -> Self {
        let start = trace.start();
        let mut pieces = Vec::new();
        let (mut pivot, mut from) = (trace.initial_pivot, start);
        for e in &trace.events {
            if let EventKind::PivotChange { new, .. } = e.kind {
                pieces.push(Piece::Arc { pivot, from, to: e.at });
                pivot = new;
                from = e.at;
            }
        }
        pieces.push(Piece::Arc { pivot, from, to: start });
        SlidingRotation::new(trace.color, start, pieces, inst).expect("a plain rotation is a valid sliding rotation")
    }

    /// Build from a pivot per combinatorial interval.
    ///
    /// `crit` must be sorted counterclockwise from its first entry, which is
    /// the start direction; `pivots[i]` is the pivot on the open interval
    /// after `crit[i]`. Pivot changes whose lines coincide become plain
    /// handovers, the others become slides.
    pub fn from_schedule(
        color: Color,
        crit: &[Direction],
        pivots: &[PointId],
        inst: &Instance,
    ) -> Result<Self, SlidingError> {
        assert_eq!(crit.len(), pivots.len());
        let start = crit[0];
        let mut pieces = Vec::new();
        let (mut cur, mut from) = (pivots[0], start);
        for (&c, &next) in crit.iter().zip(pivots).skip(1) {
            if next == cur {
                continue;
            }
            pieces.push(Piece::Arc { pivot: cur, from, to: c });
            if inst.offset(c, cur) != inst.offset(c, next) {
                pieces.push(Piece::Slide { direction: c, from: cur, to: next });
            }
            cur = next;
            from = c;
        }
        pieces.push(Piece::Arc { pivot: cur, from, to: start });
        if inst.offset(start, cur) != inst.offset(start, pivots[0]) {
            pieces.push(Piece::Slide { direction: start, from: cur, to: pivots[0] });
        }
        SlidingRotation::new(color, start, pieces, inst)
    }

    pub fn color(&self) -> Color {
        self.color
    }

    pub fn start(&self) -> Direction {
        self.start
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn frame(&self) -> Frame {
        Frame::new(self.start)
    }

    pub fn slide_count(&self) -> usize {
        self.pieces.iter().filter(|p| matches!(p, Piece::Slide { .. })).count()
    }

    fn arc_spans(&self) -> Vec<ArcSpan> {
        let mut pos = Pos { full: false, dir: self.start };
        let mut out = Vec::new();
        for p in &self.pieces {
            if let Piece::Arc { pivot, to, .. } = *p {
                let end = Pos { full: to == self.start, dir: to };
                out.push(ArcSpan { start: pos, end, pivot });
                pos = end;
            }
        }
        out
    }

    /// Pivot of the arc covering `t`, which must not be a piece boundary.
    pub fn pivot_inside(&self, t: Direction) -> PointId {
        let frame = self.frame();
        let spans = self.arc_spans();
        let at = Pos { full: false, dir: t };
        let i = spans.partition_point(|s| cmp_pos(&frame, s.end, at) == Ordering::Less);
        spans[i.min(spans.len() - 1)].pivot
    }

    /// Anchors of every line of the curve at direction `t`, and the slides there.
    fn lines_at(&self, t: Direction) -> (Vec<PointId>, Vec<(PointId, PointId)>) {
        let frame = self.frame();
        let at = Pos { full: false, dir: t };
        let closing = t == self.start;
        let mut anchors = Vec::new();
        for s in self.arc_spans() {
            let covers = cmp_pos(&frame, s.start, at) != Ordering::Greater && cmp_pos(&frame, at, s.end) != Ordering::Greater;
            if covers || (closing && s.end.full) {
                anchors.push(s.pivot);
            }
        }
        let slides: Vec<(PointId, PointId)> = self
            .pieces
            .iter()
            .filter_map(|p| match *p {
                Piece::Slide { direction, from, to } if direction == t => Some((from, to)),
                _ => None,
            })
            .collect();
        anchors.extend(slides.iter().flat_map(|&(a, b)| [a, b]));
        (anchors, slides)
    }

    /// The line at direction `t`; the leftmost one when a slide happens at `t`.
    pub fn evaluate_at(&self, t: Direction, inst: &Instance) -> DirectedLine {
        let (anchors, _) = self.lines_at(t);
        let best = anchors.into_iter().max_by_key(|&a| inst.offset(t, a)).expect("curve covers every direction");
        DirectedLine::PivotDirection(best, t)
    }

    /// Piece boundaries, every direction where an arc's line meets a point, and their antipodes,
    /// sorted from the start.
    pub fn critical_directions(&self, inst: &Instance) -> Vec<Direction> {
        let frame = self.frame();
        let mut dirs = vec![self.start];
        for s in self.arc_spans() {
            dirs.push(s.start.dir);
            dirs.push(s.end.dir);
            for q in inst.ids().filter(|&q| q != s.pivot) {
                let d = inst.direction(s.pivot, q);
                for e in [d, d.antipode()] {
                    let p = Pos { full: false, dir: e };
                    if cmp_pos(&frame, s.start, p) == Ordering::Less && cmp_pos(&frame, p, s.end) == Ordering::Less {
                        dirs.push(e);
                    }
                }
            }
        }
        for p in &self.pieces {
            if let Piece::Slide { direction, .. } = *p {
                dirs.push(direction);
            }
        }
        let anti: Vec<Direction> = dirs.iter().map(|d| d.antipode()).collect();
        dirs.extend(anti);
        frame.sort(&mut dirs);
        dirs
    }

    /// Consecutive critical directions `(from, to)` around the full turn.
    fn intervals(&self, inst: &Instance) -> Vec<(Direction, Direction)> {
        let crit = self.critical_directions(inst);
        (0..crit.len()).map(|i| (crit[i], crit[(i + 1) % crit.len()])).collect()
    }

    /// Whether the line at `t + pi` lies strictly left of the line at `t`, for every `t`.
    pub fn is_positively_oriented(&self, inst: &Instance) -> bool {
        let frame = self.frame();
        let left_of = |t: Direction, a: PointId, b: PointId| inst.offset(t, b) > inst.offset(t, a);
        for (from, to) in self.intervals(inst) {
            if !frame.in_first_half(from) || from == self.start.antipode() {
                continue;
            }
            let t = from.interior(to);
            if !left_of(t, self.pivot_inside(t), self.pivot_inside(t.antipode())) {
                return false;
            }
            let a = self.evaluate_at(from, inst).anchor();
            let b = self.evaluate_at(from.antipode(), inst).anchor();
            if !left_of(from, a, b) {
                return false;
            }
        }
        true
    }

    /// Smallest and largest right weight over the lines of the curve through no instance point,
    /// including the gaps crossed by slides.
    pub fn weight_range(&self, inst: &Instance) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        let mut see = |w: i64| {
            lo = lo.min(w);
            hi = hi.max(w);
        };
        for (from, to) in self.intervals(inst) {
            let t = from.interior(to);
            see(inst.right_weight(self.pivot_inside(t), t));
            for (a, b) in self.lines_at(from).1 {
                let (x, y) = (inst.offset(from, a), inst.offset(from, b));
                let (lo_off, hi_off) = (x.min(y), x.max(y));
                let mut offs: Vec<(i128, i64)> = inst.ids().map(|i| (inst.offset(from, i), inst.weight(i))).collect();
                offs.sort_unstable();
                // a line strictly between offsets o and the next has every point up to o on its right
                let mut upto = 0i64;
                for (i, &(c, w)) in offs.iter().enumerate() {
                    upto += w;
                    let last_here = offs.get(i + 1).is_none_or(|n| n.0 != c);
                    if last_here && c >= lo_off && c < hi_off {
                        see(upto);
                    }
                }
            }
        }
        (lo, hi)
    }

    /// Red: never above delta. Blue: never below delta.
    pub fn is_delta_preserving(&self, inst: &Instance) -> bool {
        let (lo, hi) = self.weight_range(inst);
        match self.color {
            Color::Red => hi <= inst.delta(),
            Color::Blue => lo >= inst.delta(),
        }
    }

    /// Subset points strictly left of both lines through the given anchors at `t` and `t + pi`.
    pub fn strip_members(&self, inst: &Instance, t: Direction, a: PointId, b: PointId) -> Vec<PointId> {
        let la = DirectedLine::PivotDirection(a, t);
        let lb = DirectedLine::PivotDirection(b, t.antipode());
        inst.ids_of(self.color)
            .iter()
            .copied()
            .filter(|&q| la.side(inst, q) == Side::Left && lb.side(inst, q) == Side::Left)
            .collect()
    }

    /// Walk the intervals of the first half turn and keep the smallest strip.
    pub fn waist(&self, inst: &Instance) -> Result<Waist, SlidingError> {
        if !self.is_positively_oriented(inst) {
            return Err(SlidingError::NotPositivelyOriented);
        }
        let frame = self.frame();
        let mut best: Option<(usize, Direction, Direction)> = None;
        for (from, to) in self.intervals(inst) {
            if !frame.in_first_half(from) || from == self.start.antipode() {
                continue;
            }
            let t = from.interior(to);
            let a = self.pivot_inside(t);
            let b = self.pivot_inside(t.antipode());
            let count = self.strip_members(inst, t, a, b).len();
            if best.is_none_or(|(v, _, _)| count < v) {
                best = Some((count, from, to));
            }
        }
        let (value, from, to) = best.expect("a closed curve has intervals");
        let t = generic_between(inst, from, to);
        let (a, b) = (self.pivot_inside(t), self.pivot_inside(t.antipode()));
        let witnesses = self.strip_members(inst, t, a, b);
        debug_assert_eq!(witnesses.len(), value);
        Ok(Waist {
            value,
            achieved_at: t,
            lines: (DirectedLine::PivotDirection(a, t), DirectedLine::PivotDirection(b, t.antipode())),
            witnesses,
        })
    }

    /// Whether `line`, directed at `t`, lies between the curve's lines at `t` and `t + pi` (boundary included).
    pub fn in_central_region(&self, line: &DirectedLine, inst: &Instance) -> bool {
        let t = line.direction(inst);
        let right = self.evaluate_at(t, inst).anchor();
        let left = self.evaluate_at(t.antipode(), inst).anchor();
        let off = line.offset(inst);
        inst.offset(t, right) <= off && off <= inst.offset(t, left)
    }
}

fn cmp_pos(frame: &Frame, a: Pos, b: Pos) -> Ordering {
    match (a.full, b.full) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => frame.cmp(a.dir, b.dir),
    }
}

/// A direction strictly inside the arc `(from, to)` that is parallel to no instance segment.
pub fn generic_between(inst: &Instance, from: Direction, to: Direction) -> Direction {
    let frame = Frame::new(from);
    let first = inst
        .pair_directions()
        .into_iter()
        .filter(|&d| d != from)
        .min_by(|a, b| frame.cmp(*a, *b))
        .filter(|&d| to == from || frame.cmp(d, to) == Ordering::Less)
        .unwrap_or(to);
    from.interior(first)
}

/// Every pair direction plus the given extras, sorted from `base` (which comes first).
pub(crate) fn arrangement_directions(inst: &Instance, base: Direction, extra: &[Direction]) -> Vec<Direction> {
    let mut dirs = inst.pair_directions();
    dirs.push(base);
    dirs.push(base.antipode());
    dirs.extend_from_slice(extra);
    Frame::new(base).sort(&mut dirs);
    debug_assert_eq!(dirs[0], base);
    dirs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_random, gen_separated_convex};
    use crate::rotation::{run_rotation, RotationSpec, Subset};

    fn lift(inst: &Instance, subset: Subset, k: usize) -> SlidingRotation {
        SlidingRotation::from_trace(&run_rotation(&RotationSpec::new(subset, k), inst).unwrap(), inst)
    }

    #[test]
    fn plain_rotation_evaluates_to_its_line() {
        let inst = gen_random(3, 7, 7, 1000).unwrap();
        let trace = run_rotation(&RotationSpec::new(Subset::AllRed, 1), &inst).unwrap();
        let sr = SlidingRotation::from_trace(&trace, &inst);
        assert_eq!(sr.slide_count(), 0);
        for (from, to, pivot, _) in trace.intervals() {
            let t = from.interior(to);
            assert_eq!(sr.evaluate_at(t, &inst), DirectedLine::PivotDirection(pivot, t));
        }
    }

    #[test]
    fn orientation_of_plain_rotations() {
        let inst = gen_random(3, 7, 7, 1000).unwrap();
        assert!(lift(&inst, Subset::AllRed, 1).is_positively_oriented(&inst));
        // the halving level meets its own reversal
        assert!(!lift(&inst, Subset::AllRed, 3).is_positively_oriented(&inst));
        assert_eq!(lift(&inst, Subset::AllRed, 3).waist(&inst).unwrap_err(), SlidingError::NotPositivelyOriented);
    }

    #[test]
    fn waist_of_separated_outer_level() {
        let inst = gen_separated_convex(5, 5).unwrap();
        let w = lift(&inst, Subset::AllRed, 0).waist(&inst).unwrap();
        assert!(w.value <= 3);
        assert!(w.witnesses.iter().all(|&q| inst.color(q) == Color::Red));
    }

    #[test]
    fn slide_evaluates_leftmost() {
        let inst = gen_random(21, 4, 4, 1000).unwrap();
        let reds = inst.ids_of(Color::Red).to_vec();
        let start = Direction::VERTICAL;
        // one full arc around the rightmost-offset red, then a slide back and forth is not closed;
        // instead: arc around a for half a turn, slide to b, arc around b, slide back to a at the close.
        let (a, b) = (reds[0], reds[1]);
        let half = start.antipode();
        let pieces = vec![
            Piece::Arc { pivot: a, from: start, to: half },
            Piece::Slide { direction: half, from: a, to: b },
            Piece::Arc { pivot: b, from: half, to: start },
            Piece::Slide { direction: start, from: b, to: a },
        ];
        let sr = SlidingRotation::new(Color::Red, start, pieces, &inst).unwrap();
        assert_eq!(sr.slide_count(), 2);
        let at = sr.evaluate_at(half, &inst).anchor();
        let other = if at == a { b } else { a };
        assert!(inst.offset(half, at) > inst.offset(half, other));
    }

    #[test]
    fn malformed_curves_rejected() {
        let inst = gen_random(21, 4, 4, 1000).unwrap();
        let reds = inst.ids_of(Color::Red).to_vec();
        let blue = inst.ids_of(Color::Blue)[0];
        let start = Direction::VERTICAL;
        let half = start.antipode();
        let open = vec![
            Piece::Arc { pivot: reds[0], from: start, to: half },
            Piece::Slide { direction: half, from: reds[0], to: reds[1] },
            Piece::Arc { pivot: reds[1], from: half, to: start },
        ];
        assert!(SlidingRotation::new(Color::Red, start, open, &inst).is_err());
        let wrong_color = vec![Piece::Arc { pivot: blue, from: start, to: start }];
        assert!(SlidingRotation::new(Color::Red, start, wrong_color, &inst).is_err());
        let jump = vec![
            Piece::Arc { pivot: reds[0], from: start, to: half },
            Piece::Arc { pivot: reds[1], from: half, to: start },
        ];
        assert!(SlidingRotation::new(Color::Red, start, jump, &inst).is_err());
        let full = vec![Piece::Arc { pivot: reds[0], from: start, to: start }];
        assert!(SlidingRotation::new(Color::Red, start, full, &inst).is_ok());
    }
}
