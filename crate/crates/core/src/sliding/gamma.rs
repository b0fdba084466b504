//! Search for the minimum-waist sliding rotation over a finite family.
//!
//! The family starts from every delta-preserving plain rotation (both
//! colors, all levels). While some level of the inner subset fails to cross
//! the delta boundary twice inside the central region, the two surgeries of
//! the lower-bound argument are tried on the offending rotation: splicing it
//! with the current curve between their first and last coincidences, and
//! shifting it to the nearest point of the other color on its right.
//! Accepted surgeries strictly decrease the waist, so the loop terminates.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::certificate::{decompose_fhg, g_level_transitions};
use super::{arrangement_directions, SlidingRotation, Waist};
use crate::exec::Exec;
use crate::geom::{Color, Direction, Frame, Instance, PointId};
use crate::rotation::{run_rotation, RotationSpec, RotationTrace, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Plain { color: Color, k: usize },
    Splice { level: usize },
    Shift { level: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gamma {
    pub rotation: SlidingRotation,
    pub waist: Waist,
    pub origin: Origin,
}

impl Gamma {
    pub fn color(&self) -> Color {
        self.rotation.color()
    }

    fn key(&self) -> (usize, u8, usize) {
        let color = match self.color() {
            Color::Red => 0,
            Color::Blue => 1,
        };
        let k = match self.origin {
            Origin::Plain { k, .. } => k,
            Origin::Splice { level } | Origin::Shift { level } => level,
        };
        (self.waist.value, color, k)
    }
}

/// Order by waist, then Red before Blue, then level, then the earliest achieving direction.
fn better(a: &Gamma, b: &Gamma) -> Ordering {
    let frame = Frame::new(Direction::VERTICAL);
    a.key().cmp(&b.key()).then_with(|| frame.cmp(a.waist.achieved_at, b.waist.achieved_at))
}

fn plain_preserving(trace: &RotationTrace, inst: &Instance) -> bool {
    match trace.color {
        Color::Red => trace.max_omega() <= inst.delta(),
        Color::Blue => trace.min_omega() >= inst.delta(),
    }
}

/// Every delta-preserving, positively oriented plain rotation, lifted and measured.
pub fn plain_candidates(inst: &Instance, exec: Exec) -> Vec<Gamma> {
    let mut jobs = Vec::new();
    for color in [Color::Red, Color::Blue] {
        for k in 0..inst.ids_of(color).len() {
            jobs.push((color, k));
        }
    }
    exec.map(&jobs, |&(color, k)| {
        let trace = run_rotation(&RotationSpec::new(Subset::of(color), k), inst).ok()?;
        if !plain_preserving(&trace, inst) {
            return None;
        }
        let rotation = SlidingRotation::from_trace(&trace, inst);
        let waist = rotation.waist(inst).ok()?;
        Some(Gamma { rotation, waist, origin: Origin::Plain { color, k } })
    })
    .into_iter()
    .flatten()
    .collect()
}

/// The minimum-waist candidate, improved until every inner level behaves; `None` for an empty family.
pub fn find_gamma(inst: &Instance) -> Option<Gamma> {
    find_gamma_with(inst, Exec::default())
}

pub fn find_gamma_with(inst: &Instance, exec: Exec) -> Option<Gamma> {
    let mut gamma = plain_candidates(inst, exec).into_iter().min_by(better)?;
    while let Some(next) = improve(inst, &gamma) {
        debug_assert!(next.waist.value < gamma.waist.value);
        gamma = next;
    }
    Some(gamma)
}

/// A strictly smaller-waist surgery on the first inner level that lacks two central transitions.
fn improve(inst: &Instance, gamma: &Gamma) -> Option<Gamma> {
    let split = decompose_fhg(inst, gamma).ok()?;
    let g = split.g.clone();
    for k in 0..g.len().div_ceil(2) {
        let (trace, central) = g_level_transitions(inst, gamma, &g, k);
        if central.len() >= 2 {
            continue;
        }
        let mut found: Vec<Gamma> = [splice(inst, gamma, &trace, k), shift(inst, gamma, &trace, k)]
            .into_iter()
            .flatten()
            .filter(|c| c.waist.value < gamma.waist.value)
            .collect();
        found.sort_by(better);
        if let Some(best) = found.into_iter().next() {
            return Some(best);
        }
    }
    None
}

struct Schedule {
    crit: Vec<Direction>,
    reps: Vec<Direction>,
}

impl Schedule {
    fn new(inst: &Instance, gamma: &Gamma) -> Schedule {
        let base = gamma.waist.achieved_at;
        let mut extra = gamma.rotation.critical_directions(inst);
        extra.push(base);
        let crit = arrangement_directions(inst, base, &extra);
        let reps = (0..crit.len()).map(|i| crit[i].interior(crit[(i + 1) % crit.len()])).collect();
        Schedule { crit, reps }
    }

    fn build(&self, inst: &Instance, color: Color, pivots: &[PointId], origin: Origin) -> Option<Gamma> {
        let rotation = SlidingRotation::from_schedule(color, &self.crit, pivots, inst).ok()?;
        if !rotation.is_delta_preserving(inst) {
            return None;
        }
        let waist = rotation.waist(inst).ok()?;
        Some(Gamma { rotation, waist, origin })
    }
}

/// The inner rotation outside its first and last coincidence with the curve, the curve in between.
fn splice(inst: &Instance, gamma: &Gamma, trace: &RotationTrace, level: usize) -> Option<Gamma> {
    let sched = Schedule::new(inst, gamma);
    let n = sched.crit.len();
    let inner: Vec<PointId> = sched.reps.iter().map(|&t| trace.pivot_at(t)).collect();
    let outer: Vec<PointId> = sched.reps.iter().map(|&t| gamma.rotation.pivot_inside(t)).collect();
    let meets = |i: usize| {
        let c = sched.crit[i];
        let off = inst.offset(c, inner[i]);
        let before = outer[(i + n - 1) % n];
        off == inst.offset(c, outer[i]) || off == inst.offset(c, before)
    };
    let hits: Vec<usize> = (0..n).filter(|&i| meets(i)).collect();
    let pivots: Vec<PointId> = match (hits.first(), hits.last()) {
        (Some(&a), Some(&b)) => (0..n).map(|i| if i >= a && i < b { outer[i] } else { inner[i] }).collect(),
        _ => inner,
    };
    sched.build(inst, gamma.color(), &pivots, Origin::Splice { level })
}

/// Parallels to the inner rotation through the nearest other-color point on its right.
fn shift(inst: &Instance, gamma: &Gamma, trace: &RotationTrace, level: usize) -> Option<Gamma> {
    let sched = Schedule::new(inst, gamma);
    let other = gamma.color().other();
    let pivots: Option<Vec<PointId>> = sched
        .reps
        .iter()
        .map(|&t| {
            let bound = inst.offset(t, trace.pivot_at(t));
            inst.ids_of(other)
                .iter()
                .copied()
                .filter(|&q| inst.offset(t, q) < bound)
                .max_by_key(|&q| inst.offset(t, q))
        })
        .collect();
    sched.build(inst, other, &pivots?, Origin::Shift { level })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_random, gen_separated_convex};

    #[test]
    fn gamma_is_no_worse_than_any_plain_candidate() {
        for seed in 0..20 {
            let inst = gen_random(seed, 5, 9, 1000).unwrap();
            let plain = plain_candidates(&inst, Exec::Sequential);
            match find_gamma(&inst) {
                None => assert!(plain.is_empty()),
                Some(g) => {
                    assert!(plain.iter().all(|c| g.waist.value <= c.waist.value));
                    assert!(g.rotation.is_delta_preserving(&inst));
                    assert!(g.rotation.is_positively_oriented(&inst));
                }
            }
        }
    }

    #[test]
    fn separated_outer_levels_are_candidates() {
        let inst = gen_separated_convex(4, 4).unwrap();
        let plain = plain_candidates(&inst, Exec::Sequential);
        assert!(plain.iter().all(|c| c.rotation.is_delta_preserving(&inst)));
    }

    #[test]
    fn both_strategies_find_the_same_gamma() {
        let inst = gen_random(5, 6, 8, 1000).unwrap();
        assert_eq!(find_gamma_with(&inst, Exec::Sequential), find_gamma_with(&inst, Exec::Parallel));
    }
}
