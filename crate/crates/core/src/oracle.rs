//! Ground-truth enumeration of balanced lines.
//!
//! Two independent routes: a cubic scan that classifies every point against
//! every bichromatic pair, and an angular sweep around each red anchor.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::exec::Exec;
use crate::geom::{Color, DirectedLine, Direction, Frame, Instance, Orientation, PointId, Side};

/// A balanced line keyed by its red and blue endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BalancedLine {
    pub red: PointId,
    pub blue: PointId,
}

impl BalancedLine {
    /// Key a bichromatic pair in either order.
    pub fn from_pair(inst: &Instance, a: PointId, b: PointId) -> BalancedLine {
        debug_assert_ne!(inst.color(a), inst.color(b));
        if inst.color(a) == Color::Red {
            BalancedLine { red: a, blue: b }
        } else {
            BalancedLine { red: b, blue: a }
        }
    }

    pub fn line(&self) -> DirectedLine {
        DirectedLine::SpannedBy(self.red, self.blue)
    }

    /// The two open-halfplane weights (right, left) of the red-to-blue line.
    pub fn weight_certificate(&self, inst: &Instance) -> (i64, i64) {
        let l = self.line();
        (inst.halfplane_weight(&l, Side::Right), inst.halfplane_weight(&l, Side::Left))
    }

    /// Point counts in the (right, left) open halfplanes.
    pub fn side_counts(&self, inst: &Instance) -> (usize, usize) {
        let l = self.line();
        let right = inst.ids().filter(|&i| l.side(inst, i) == Side::Right).count();
        (right, inst.len() - 2 - right)
    }
}

/// O(n^3): classify every other point for each of the r*b bichromatic pairs.
pub fn enumerate_naive(inst: &Instance) -> Vec<BalancedLine> {
    let delta = inst.delta();
    let mut out = Vec::new();
    for &red in inst.ids_of(Color::Red) {
        for &blue in inst.ids_of(Color::Blue) {
            let (mut right, mut left) = (0i64, 0i64);
            for s in inst.ids() {
                match inst.orient(red, blue, s) {
                    Orientation::Right => right += inst.weight(s),
                    Orientation::Left => left += inst.weight(s),
                    Orientation::Collinear => {}
                }
            }
            if right == delta && left == delta {
                out.push(BalancedLine { red, blue });
            }
        }
    }
    out.sort_unstable();
    out
}

/// O(n^2 log n): rotate a directed line once around each red anchor.
pub fn enumerate_sweep(inst: &Instance) -> Vec<BalancedLine> {
    enumerate_sweep_with(inst, Exec::default())
}

pub fn enumerate_sweep_with(inst: &Instance, exec: Exec) -> Vec<BalancedLine> {
    let start = generic_start(inst);
    let mut out: Vec<BalancedLine> = exec
        .map(inst.ids_of(Color::Red), |&red| sweep_anchor(inst, red, start))
        .into_iter()
        .flatten()
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Balanced lines through `anchor`, found by one counterclockwise turn.
///
/// The line starts at a direction parallel to no pair. At the direction of
/// `s - anchor` the point `s` passes from left to right (head crossing); at
/// `anchor - s` it passes from right to left (tail crossing). With the
/// anchor red and `s` blue, the line through both is balanced iff its open
/// right weight at that moment is delta, since the left weight is then
/// `2 delta - right`.
fn sweep_anchor(inst: &Instance, anchor: PointId, start: Direction) -> Vec<BalancedLine> {
    let frame = Frame::new(start);
    let mut events: Vec<(Direction, bool, PointId)> = Vec::with_capacity(2 * inst.len());
    for s in inst.ids().filter(|&s| s != anchor) {
        let d = inst.direction(anchor, s);
        events.push((d, true, s));
        events.push((d.antipode(), false, s));
    }
    events.sort_by(|a, b| frame.cmp(a.0, b.0));

    let mut right = inst.right_weight(anchor, start);
    let delta = inst.delta();
    let mut found = Vec::new();
    for (_, head, s) in events {
        let w = inst.weight(s);
        if head {
            // the open right weight at the event is the value before s enters
            if inst.color(s) == Color::Blue && right == delta {
                found.push(BalancedLine { red: anchor, blue: s });
            }
            right += w;
        } else {
            right -= w;
            if inst.color(s) == Color::Blue && right == delta {
                found.push(BalancedLine { red: anchor, blue: s });
            }
        }
    }
    found
}

/// A direction parallel to no segment of the instance, close to vertical.
pub(crate) fn generic_start(inst: &Instance) -> Direction {
    let down = Direction::VERTICAL;
    if inst.is_generic(down) {
        return down;
    }
    let mut dirs = inst.pair_directions();
    let frame = Frame::new(down);
    frame.sort(&mut dirs);
    let next = dirs.iter().copied().find(|d| frame.cmp(down, *d) == Ordering::Less).unwrap_or(down);
    down.interior(next)
}

/// Number of balanced lines; at least r for every valid instance.
pub fn count_balanced(inst: &Instance) -> usize {
    let n = enumerate_sweep(inst).len();
    debug_assert!(n >= inst.r(), "lower bound violated: {n} < r = {}", inst.r());
    n
}
