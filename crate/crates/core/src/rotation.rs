//! Discrete-event simulation of k-level rotations.
//!
//! A rotation of level `k` over a monochromatic subset `P` is a directed line
//! turning counterclockwise through one full turn while always passing
//! through a point of `P` (the pivot) and keeping exactly `k` points of `P`
//! strictly to its right. The combinatorial state only changes at directions
//! parallel to a segment from the pivot to another point, so the simulation
//! jumps from one such critical direction to the next.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Color, DirectedLine, Direction, Frame, Instance, PointId, Side};
use crate::oracle::BalancedLine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error("rotation subset is empty")]
    EmptySubset,
    #[error("level {k} out of range for a subset of {size} points")]
    LevelOutOfRange { k: usize, size: usize },
    #[error("subset mixes red and blue points")]
    MixedColorSubset,
    #[error("unknown point id {0}")]
    UnknownPoint(usize),
    #[error("start direction {0} is parallel to a segment between instance points")]
    DegenerateStart(Direction),
    #[error("predicate needs the full red or full blue subset")]
    WrongSubset,
    #[error("r is even; no balanced halving line is guaranteed")]
    EvenR,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subset {
    AllRed,
    AllBlue,
    Ids(Vec<PointId>),
}

impl Subset {
    pub fn of(color: Color) -> Subset {
        match color {
            Color::Red => Subset::AllRed,
            Color::Blue => Subset::AllBlue,
        }
    }

    /// Sorted member ids and their common color.
    pub fn resolve(&self, inst: &Instance) -> Result<(Vec<PointId>, Color), RotationError> {
        let (ids, color) = match self {
            Subset::AllRed => (inst.ids_of(Color::Red).to_vec(), Color::Red),
            Subset::AllBlue => (inst.ids_of(Color::Blue).to_vec(), Color::Blue),
            Subset::Ids(ids) => {
                let mut ids = ids.clone();
                ids.sort_unstable();
                ids.dedup();
                if let Some(&bad) = ids.iter().find(|&&i| i >= inst.len()) {
                    return Err(RotationError::UnknownPoint(bad));
                }
                let color = match ids.first() {
                    Some(&i) => inst.color(i),
                    None => return Err(RotationError::EmptySubset),
                };
                if ids.iter().any(|&i| inst.color(i) != color) {
                    return Err(RotationError::MixedColorSubset);
                }
                (ids, color)
            }
        };
        if ids.is_empty() {
            return Err(RotationError::EmptySubset);
        }
        Ok((ids, color))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSpec {
    pub subset: Subset,
    pub k: usize,
    pub start: Direction,
}

impl RotationSpec {
    pub fn new(subset: Subset, k: usize) -> Self {
        RotationSpec { subset, k, start: Direction::VERTICAL }
    }

    pub fn starting_at(mut self, start: Direction) -> Self {
        self.start = start;
        self
    }
}

/// Which end of the directed line meets the point: ahead of the pivot or behind it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    Head,
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventKind {
    PivotChange { old: PointId, new: PointId },
    WeightChange { crossed: PointId, old_w: i64, new_w: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationEvent {
    pub at: Direction,
    pub kind: EventKind,
    /// The point met by the line, on the given end.
    pub hit: PointId,
    pub end: End,
    /// The line at the event, spanned by the pivot and the hit point.
    pub line: DirectedLine,
    /// Pivot after the event.
    pub pivot: PointId,
    /// Right weight after the event.
    pub omega: i64,
}

impl RotationEvent {
    /// Open right weight of the event line itself.
    pub fn line_omega(&self, inst: &Instance) -> i64 {
        match (self.kind, self.end) {
            (EventKind::WeightChange { old_w, .. }, End::Head) => old_w,
            (EventKind::WeightChange { new_w, .. }, End::Tail) => new_w,
            (EventKind::PivotChange { .. }, End::Head) => self.omega,
            (EventKind::PivotChange { old, .. }, End::Tail) => self.omega - inst.weight(old),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationTrace {
    pub spec: RotationSpec,
    pub members: Vec<PointId>,
    pub color: Color,
    pub initial_pivot: PointId,
    pub initial_omega: i64,
    pub events: Vec<RotationEvent>,
}

/// A step of the right weight between two adjacent levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub at: Direction,
    pub from_w: i64,
    pub to_w: i64,
    pub line: DirectedLine,
    pub is_balanced: bool,
    pub crossed: PointId,
    pub pivot: PointId,
    pub end: End,
    /// Index of the event in its trace.
    pub event: usize,
}

impl Transition {
    pub fn is_up(&self) -> bool {
        self.to_w > self.from_w
    }

    pub fn balanced_line(&self, inst: &Instance) -> Option<BalancedLine> {
        self.is_balanced.then(|| BalancedLine::from_pair(inst, self.pivot, self.crossed))
    }
}

type Candidate = (Direction, End, PointId);

/// Critical directions around `p`, sorted counterclockwise from the frame base.
fn events_around(inst: &Instance, frame: &Frame, p: PointId) -> Vec<Candidate> {
    let mut v: Vec<Candidate> = Vec::with_capacity(2 * inst.len());
    for s in inst.ids().filter(|&s| s != p) {
        let d = inst.direction(p, s);
        v.push((d, End::Head, s));
        v.push((d.antipode(), End::Tail, s));
    }
    v.sort_by(|a, b| frame.cmp(a.0, b.0));
    v
}

pub fn run_rotation(spec: &RotationSpec, inst: &Instance) -> Result<RotationTrace, RotationError> {
    let (members, color) = spec.subset.resolve(inst)?;
    if spec.k >= members.len() {
        return Err(RotationError::LevelOutOfRange { k: spec.k, size: members.len() });
    }
    let start = spec.start;
    if !inst.is_generic(start) {
        return Err(RotationError::DegenerateStart(start));
    }
    let frame = Frame::new(start);
    let mut in_p = vec![false; inst.len()];
    for &m in &members {
        in_p[m] = true;
    }

    // k members strictly right means the (k+1)-th smallest offset.
    let mut by_offset = members.clone();
    by_offset.sort_by_key(|&m| inst.offset(start, m));
    let initial_pivot = by_offset[spec.k];
    let initial_omega = inst.right_weight(initial_pivot, start);

    let mut around: Vec<Option<Vec<Candidate>>> = vec![None; inst.len()];
    let mut pivot = initial_pivot;
    let mut omega = initial_omega;
    let mut current: Option<Direction> = None;
    let mut events = Vec::new();

    loop {
        let list = around[pivot].get_or_insert_with(|| events_around(inst, &frame, pivot));
        let next = match current {
            None => 0,
            Some(cur) => list.partition_point(|c| frame.cmp(c.0, cur) != Ordering::Greater),
        };
        let Some(&(at, end, hit)) = list.get(next) else { break };
        let line = match end {
            End::Head => DirectedLine::SpannedBy(pivot, hit),
            End::Tail => DirectedLine::SpannedBy(hit, pivot),
        };
        let kind = if in_p[hit] {
            let old = pivot;
            if end == End::Tail {
                // the old pivot passes to the right while `hit` leaves it
                omega += inst.weight(old) - inst.weight(hit);
            }
            pivot = hit;
            EventKind::PivotChange { old, new: hit }
        } else {
            let old_w = omega;
            omega += match end {
                End::Head => inst.weight(hit),
                End::Tail => -inst.weight(hit),
            };
            EventKind::WeightChange { crossed: hit, old_w, new_w: omega }
        };
        events.push(RotationEvent { at, kind, hit, end, line, pivot, omega });
        current = Some(at);
    }

    assert_eq!(pivot, initial_pivot, "rotation did not close");
    assert_eq!(omega, initial_omega, "rotation weight did not close");
    Ok(RotationTrace { spec: spec.clone(), members, color, initial_pivot, initial_omega, events })
}

impl RotationTrace {
    pub fn frame(&self) -> Frame {
        Frame::new(self.spec.start)
    }

    pub fn start(&self) -> Direction {
        self.spec.start
    }

    /// Right weight on each inter-event interval, starting with the one after the start direction.
    pub fn weight_profile(&self) -> Vec<i64> {
        std::iter::once(self.initial_omega).chain(self.events.iter().map(|e| e.omega)).collect()
    }

    pub fn min_omega(&self) -> i64 {
        self.weight_profile().into_iter().min().unwrap()
    }

    pub fn max_omega(&self) -> i64 {
        self.weight_profile().into_iter().max().unwrap()
    }

    /// Number of events at directions strictly before `t`, and whether `t` is itself an event.
    fn locate(&self, t: Direction) -> (usize, Option<usize>) {
        let frame = self.frame();
        let before = self.events.partition_point(|e| frame.cmp(e.at, t) == Ordering::Less);
        let at = self.events.get(before).filter(|e| e.at == t).map(|_| before);
        (before, at)
    }

    pub fn pivot_at(&self, t: Direction) -> PointId {
        let (before, _) = self.locate(t);
        if before == 0 {
            self.initial_pivot
        } else {
            self.events[before - 1].pivot
        }
    }

    /// Right weight on the interval containing `t` (or just before it when `t` is an event).
    pub fn omega_at(&self, t: Direction) -> i64 {
        let (before, _) = self.locate(t);
        if before == 0 {
            self.initial_omega
        } else {
            self.events[before - 1].omega
        }
    }

    /// The rotating line at direction `t`.
    pub fn line_at(&self, t: Direction) -> DirectedLine {
        match self.locate(t) {
            (_, Some(i)) => self.events[i].line,
            _ => DirectedLine::PivotDirection(self.pivot_at(t), t),
        }
    }

    pub fn event_at(&self, t: Direction) -> Option<&RotationEvent> {
        self.locate(t).1.map(|i| &self.events[i])
    }

    /// `(from, to, pivot, omega)` for every inter-event interval.
    pub fn intervals(&self) -> Vec<(Direction, Direction, PointId, i64)> {
        let mut out = Vec::with_capacity(self.events.len() + 1);
        let (mut from, mut pivot, mut omega) = (self.spec.start, self.initial_pivot, self.initial_omega);
        for e in &self.events {
            out.push((from, e.at, pivot, omega));
            from = e.at;
            pivot = e.pivot;
            omega = e.omega;
        }
        out.push((from, self.spec.start, pivot, omega));
        out
    }

    pub fn pivot_changes(&self) -> usize {
        self.events.iter().filter(|e| matches!(e.kind, EventKind::PivotChange { .. })).count()
    }

    /// One JSON object per event: `{dir:{dx,dy}, kind, pivot, omega, hit, end}`.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            let kind = match e.kind {
                EventKind::PivotChange { .. } => "pivot",
                EventKind::WeightChange { .. } => "weight",
            };
            let rec = serde_json::json!({
                "dir": { "dx": e.at.dx, "dy": e.at.dy },
                "kind": kind,
                "pivot": e.pivot,
                "omega": e.omega,
                "hit": e.hit,
                "end": e.end,
            });
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out
    }
}

/// Every weight step between `low` and `low + 1`, in either direction.
pub fn transitions_at(trace: &RotationTrace, inst: &Instance, low: i64) -> Vec<Transition> {
    let delta = inst.delta();
    let mut prev_pivot = trace.initial_pivot;
    let mut out = Vec::new();
    for (i, e) in trace.events.iter().enumerate() {
        if let EventKind::WeightChange { crossed, old_w, new_w } = e.kind {
            if old_w.min(new_w) == low && old_w.max(new_w) == low + 1 {
                let right = e.line_omega(inst);
                let left = 2 * delta - right - inst.weight(prev_pivot) - inst.weight(crossed);
                let is_balanced = inst.color(prev_pivot) != inst.color(crossed) && right == delta && left == delta;
                out.push(Transition {
                    at: e.at,
                    from_w: old_w,
                    to_w: new_w,
                    line: e.line,
                    is_balanced,
                    crossed,
                    pivot: prev_pivot,
                    end: e.end,
                    event: i,
                });
            }
        }
        prev_pivot = e.pivot;
    }
    out
}

/// Red: stays at most delta or stays above it. Blue: stays at least delta or stays below it.
pub fn is_delta_preserving(trace: &RotationTrace, inst: &Instance) -> Result<bool, RotationError> {
    let full = inst.ids_of(trace.color);
    if trace.members.as_slice() != full {
        return Err(RotationError::WrongSubset);
    }
    let (lo, hi, d) = (trace.min_omega(), trace.max_omega(), inst.delta());
    Ok(match trace.color {
        Color::Red => hi <= d || lo > d,
        Color::Blue => lo >= d || hi < d,
    })
}

/// The level of the delta boundary crossed by balanced lines in a full-color rotation.
pub fn balanced_low(inst: &Instance, color: Color) -> i64 {
    match color {
        Color::Red => inst.delta(),
        Color::Blue => inst.delta() - 1,
    }
}

/// True when every boundary step of the full-color rotation is a balanced line.
pub fn transitions_all_balanced(trace: &RotationTrace, inst: &Instance) -> bool {
    transitions_at(trace, inst, balanced_low(inst, trace.color)).iter().all(|t| t.is_balanced)
}

/// A balanced line with (r + b - 2) / 2 points in each open halfplane; needs r odd.
pub fn find_balanced_halving(inst: &Instance) -> Result<BalancedLine, RotationError> {
    let r = inst.r();
    if r.is_multiple_of(2) {
        return Err(RotationError::EvenR);
    }
    let trace = run_rotation(&RotationSpec::new(Subset::AllRed, r / 2), inst)?;
    let up = transitions_at(&trace, inst, inst.delta())
        .into_iter()
        .find(|t| t.is_up() && t.is_balanced)
        .expect("the halving level rotation always crosses delta");
    Ok(BalancedLine::from_pair(inst, up.pivot, up.crossed))
}

/// Both implications coupling the red level `j` with the blue level `j + delta`.
pub fn check_lemma_br(inst: &Instance, j: usize) -> Result<bool, RotationError> {
    let (r, b, d) = (inst.r(), inst.b(), inst.delta());
    let bj = j + d as usize;
    if r == 0 || j > r / 2 || bj >= b {
        return Err(RotationError::LevelOutOfRange { k: j, size: r });
    }
    let red = run_rotation(&RotationSpec::new(Subset::AllRed, j), inst)?;
    let blue = run_rotation(&RotationSpec::new(Subset::AllBlue, bj), inst)?;
    let red_above = red.min_omega() > d;
    let red_at_most = red.max_omega() <= d;
    let blue_at_least = blue.min_omega() >= d;
    let blue_below = blue.max_omega() < d;
    Ok((!red_above || blue_at_least) && (!blue_below || red_at_most))
}

/// Count of subset members strictly right of `line`.
pub fn members_right(inst: &Instance, members: &[PointId], line: &DirectedLine) -> usize {
    members.iter().filter(|&&m| line.side(inst, m) == Side::Right).count()
}
