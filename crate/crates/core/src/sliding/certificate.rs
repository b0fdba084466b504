//! The F/H/G accounting and the lower-bound certificate.
//!
//! All weights are read in the color of the sliding rotation: for a red
//! curve a transition "up" is delta to delta+1, for a blue curve it is delta
//! to delta-1, which is the same step after swapping colors.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::gamma::{find_gamma, Gamma, Origin};
use super::{Piece, SlidingError};
use crate::geom::{Color, DirectedLine, Direction, Frame, Instance, PointId, Side};
use crate::oracle::{enumerate_naive, BalancedLine};
use crate::rotation::{
    balanced_low, is_delta_preserving, members_right, run_rotation, transitions_at, EventKind, RotationSpec,
    RotationTrace, Subset, Transition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitSide {
    F,
    H,
}

/// Partition of the curve's color class by the two waist lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FhgSplit {
    pub color: Color,
    /// The waist direction; F-rotations start here, H-rotations at its antipode.
    pub base: Direction,
    pub f: Vec<PointId>,
    pub h: Vec<PointId>,
    pub g: Vec<PointId>,
}

impl FhgSplit {
    pub fn side(&self, s: SplitSide) -> &[PointId] {
        match s {
            SplitSide::F => &self.f,
            SplitSide::H => &self.h,
        }
    }

    pub fn side_of(&self, q: PointId) -> Option<SplitSide> {
        if self.f.contains(&q) {
            Some(SplitSide::F)
        } else if self.h.contains(&q) {
            Some(SplitSide::H)
        } else {
            None
        }
    }

    fn start(&self, s: SplitSide) -> Direction {
        match s {
            SplitSide::F => self.base,
            SplitSide::H => self.base.antipode(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTransition {
    pub level: usize,
    pub transition: Transition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RechargeRecord {
    pub side: SplitSide,
    pub level: usize,
    /// Pivot of the inner rotation at the transition.
    pub g: PointId,
    /// The F or H point it met.
    pub point: PointId,
    /// Direction of the matching downward step in the side rotation.
    pub down_at: Direction,
    /// Upward balanced steps of the side rotation inside the central region, nearest after `down_at` first.
    pub induced: Vec<BalancedLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Recharge {
    Balanced(BalancedLine),
    Recharged(RechargeRecord),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    Transition { color: Color, k: usize },
    FRotation { k: usize },
    HRotation { k: usize },
    GRotationDirect { k: usize },
    RechargedFrom { g_level: usize, side: SplitSide, level: usize, g: PointId, point: PointId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedLine {
    pub red: PointId,
    pub blue: PointId,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaRecord {
    pub color: Color,
    pub origin: Origin,
    pub waist: usize,
    pub achieved_at: Direction,
    pub lines: (DirectedLine, DirectedLine),
    pub pieces: Vec<Piece>,
}

impl GammaRecord {
    fn of(g: &Gamma) -> Self {
        GammaRecord {
            color: g.color(),
            origin: g.origin,
            waist: g.waist.value,
            achieved_at: g.waist.achieved_at,
            lines: g.waist.lines,
            pieces: g.rotation.pieces().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// No red points: nothing to certify.
    Empty,
    /// No red rotation below the halving level is delta-preserving.
    RedTransitions,
    /// No blue rotation from level delta up is delta-preserving.
    BlueTransitions,
    Gamma,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub route: Route,
    pub gamma: Option<GammaRecord>,
    #[serde(rename = "F")]
    pub f: Vec<PointId>,
    #[serde(rename = "H")]
    pub h: Vec<PointId>,
    #[serde(rename = "G")]
    pub g: Vec<PointId>,
    pub lines: Vec<CertifiedLine>,
    pub total: usize,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn balanced_lines(&self) -> Vec<BalancedLine> {
        self.lines.iter().map(|l| BalancedLine { red: l.red, blue: l.blue }).collect()
    }
}

/// Lower end of the boundary step, in the curve's color.
fn low(inst: &Instance, color: Color) -> i64 {
    balanced_low(inst, color)
}

fn normalized_up(t: &Transition, color: Color) -> bool {
    t.is_up() == (color == Color::Red)
}

pub fn decompose_fhg(inst: &Instance, gamma: &Gamma) -> Result<FhgSplit, SlidingError> {
    let sr = &gamma.rotation;
    if !sr.is_delta_preserving(inst) {
        return Err(SlidingError::NotDeltaPreserving);
    }
    let base = gamma.waist.achieved_at;
    let zero = sr.evaluate_at(base, inst);
    let pi = sr.evaluate_at(base.antipode(), inst);
    let (mut f, mut h, mut g) = (Vec::new(), Vec::new(), Vec::new());
    for &q in inst.ids_of(sr.color()) {
        let in_f = zero.side(inst, q) != Side::Left;
        let in_h = pi.side(inst, q) != Side::Left;
        assert!(!(in_f && in_h), "waist lines of a positively oriented curve share point {q}");
        if in_f {
            f.push(q);
        } else if in_h {
            h.push(q);
        } else {
            g.push(q);
        }
    }
    Ok(FhgSplit { color: sr.color(), base, f, h, g })
}

/// The inner rotation at level `k` and its boundary steps inside the closed central region.
pub(crate) fn g_level_transitions(
    inst: &Instance,
    gamma: &Gamma,
    g: &[PointId],
    k: usize,
) -> (RotationTrace, Vec<Transition>) {
    let spec = RotationSpec::new(Subset::Ids(g.to_vec()), k).starting_at(gamma.waist.achieved_at);
    let trace = run_rotation(&spec, inst).expect("inner level is legal");
    let central = transitions_at(&trace, inst, low(inst, gamma.color()))
        .into_iter()
        .filter(|t| gamma.rotation.in_central_region(&t.line, inst))
        .collect();
    (trace, central)
}

/// Cached side rotations and their upward balanced central steps.
struct Sides<'a> {
    inst: &'a Instance,
    gamma: &'a Gamma,
    split: &'a FhgSplit,
    cache: HashMap<(SplitSide, usize), (RotationTrace, Vec<Transition>)>,
}

impl<'a> Sides<'a> {
    fn new(inst: &'a Instance, gamma: &'a Gamma, split: &'a FhgSplit) -> Self {
        Sides { inst, gamma, split, cache: HashMap::new() }
    }

    fn get(&mut self, side: SplitSide, j: usize) -> &(RotationTrace, Vec<Transition>) {
        let (inst, gamma, split) = (self.inst, self.gamma, self.split);
        self.cache.entry((side, j)).or_insert_with(|| {
            let spec = RotationSpec::new(Subset::Ids(split.side(side).to_vec()), j).starting_at(split.start(side));
            let trace = run_rotation(&spec, inst).expect("side level is legal");
            let ups = transitions_at(&trace, inst, low(inst, split.color))
                .into_iter()
                .filter(|t| t.is_balanced && normalized_up(t, split.color))
                .filter(|t| gamma.rotation.in_central_region(&t.line, inst))
                .collect();
            (trace, ups)
        })
    }

    /// Upward balanced steps of the side rotation in its first half turn.
    fn first_half(&mut self, side: SplitSide, j: usize) -> Vec<BalancedLine> {
        let inst = self.inst;
        let frame = Frame::new(self.split.start(side));
        let (_, ups) = self.get(side, j);
        ups.iter().filter(|t| frame.in_first_half(t.at)).filter_map(|t| t.balanced_line(inst)).collect()
    }

    fn recharge(&mut self, gt: &GTransition) -> Result<Recharge, SlidingError> {
        let (inst, split) = (self.inst, self.split);
        let t = &gt.transition;
        if inst.color(t.crossed) != split.color {
            return t
                .balanced_line(inst)
                .map(Recharge::Balanced)
                .ok_or(SlidingError::UnclassifiableTransition(t.crossed));
        }
        let side = split.side_of(t.crossed).ok_or(SlidingError::UnclassifiableTransition(t.crossed))?;
        let lo = low(inst, split.color);
        for (dir, line) in [(t.at, t.line), (t.at.antipode(), t.line.reversed())] {
            let j = members_right(inst, split.side(side), &line);
            let (trace, ups) = self.get(side, j);
            let Some(e) = trace.event_at(dir) else { continue };
            let EventKind::WeightChange { crossed, old_w, new_w } = e.kind else { continue };
            let down = (new_w < old_w) == (split.color == Color::Red);
            if crossed != t.pivot || old_w.min(new_w) != lo || !down {
                continue;
            }
            let frame = Frame::new(dir);
            let mut after: Vec<&Transition> = ups.iter().collect();
            after.sort_by(|a, b| frame.cmp(a.at, b.at));
            let induced = after.into_iter().filter_map(|u| u.balanced_line(inst)).collect();
            return Ok(Recharge::Recharged(RechargeRecord {
                side,
                level: j,
                g: t.pivot,
                point: t.crossed,
                down_at: dir,
                induced,
            }));
        }
        Err(SlidingError::UnclassifiableTransition(t.crossed))
    }
}

/// One balanced line per level of F and of H, each from the first half turn of its rotation.
pub fn lemma_fh_lines(
    inst: &Instance,
    gamma: &Gamma,
    split: &FhgSplit,
) -> Result<Vec<(SplitSide, usize, BalancedLine)>, SlidingError> {
    let mut sides = Sides::new(inst, gamma, split);
    let mut out = Vec::new();
    for side in [SplitSide::F, SplitSide::H] {
        for j in 0..split.side(side).len() {
            let line = *sides.first_half(side, j).first().ok_or_else(|| {
                SlidingError::LemmaViolation(format!("{side:?} level {j} has no central balanced step"))
            })?;
            out.push((side, j, line));
        }
    }
    Ok(out)
}

/// At least two central boundary steps for every inner level below the middle.
pub fn lemma_g_transitions(inst: &Instance, gamma: &Gamma, split: &FhgSplit) -> Result<Vec<GTransition>, SlidingError> {
    let mut out = Vec::new();
    for k in 0..split.g.len().div_ceil(2) {
        let (_, central) = g_level_transitions(inst, gamma, &split.g, k);
        if central.len() < 2 {
            return Err(SlidingError::LemmaViolation(format!(
                "inner level {k} has {} central transitions",
                central.len()
            )));
        }
        out.extend(central.into_iter().map(|transition| GTransition { level: k, transition }));
    }
    Ok(out)
}

/// A balanced line, or the side rotation whose downward step it matches.
pub fn recharge(inst: &Instance, gamma: &Gamma, split: &FhgSplit, gt: &GTransition) -> Result<Recharge, SlidingError> {
    Sides::new(inst, gamma, split).recharge(gt)
}

fn undirected(l: &BalancedLine) -> (PointId, PointId) {
    (l.red, l.blue)
}

struct Collector {
    lines: Vec<CertifiedLine>,
    seen: BTreeSet<(PointId, PointId)>,
}

impl Collector {
    fn new() -> Self {
        Collector { lines: Vec::new(), seen: BTreeSet::new() }
    }

    fn push(&mut self, l: BalancedLine, provenance: Provenance) -> bool {
        if !self.seen.insert(undirected(&l)) {
            return false;
        }
        self.lines.push(CertifiedLine { red: l.red, blue: l.blue, provenance });
        true
    }

    fn has(&self, l: &BalancedLine) -> bool {
        self.seen.contains(&undirected(l))
    }
}

/// Full-color levels, paired with their reversals, that each contribute one or two lines.
fn remark_levels(inst: &Instance, color: Color) -> std::ops::Range<usize> {
    let half = inst.r().div_ceil(2);
    match color {
        Color::Red => 0..half,
        Color::Blue => {
            let d = inst.delta() as usize;
            d..d + half
        }
    }
}

fn full_traces(inst: &Instance, color: Color) -> Vec<(usize, RotationTrace)> {
    remark_levels(inst, color)
        .map(|k| (k, run_rotation(&RotationSpec::new(Subset::of(color), k), inst).expect("legal level")))
        .collect()
}

fn transition_route(inst: &Instance, color: Color, traces: &[(usize, RotationTrace)]) -> Result<Collector, SlidingError> {
    let size = inst.ids_of(color).len();
    let mut out = Collector::new();
    for (k, trace) in traces {
        let steps = transitions_at(trace, inst, low(inst, color));
        let mut here = BTreeSet::new();
        for t in &steps {
            let line = t.balanced_line(inst).ok_or_else(|| {
                SlidingError::LemmaViolation(format!("{color:?} level {k}: boundary step crossing {} is not balanced", t.crossed))
            })?;
            here.insert(undirected(&line));
            out.push(line, Provenance::Transition { color, k: *k });
        }
        let need = if 2 * k + 1 == size { 1 } else { 2 };
        if here.len() < need {
            return Err(SlidingError::LemmaViolation(format!(
                "{color:?} level {k} yields {} balanced lines",
                here.len()
            )));
        }
    }
    Ok(out)
}

/// Assemble and audit at least r distinct balanced lines with their provenance.
pub fn verify_lower_bound(inst: &Instance) -> Result<Certificate, SlidingError> {
    let empty = |route, lines: Collector| Certificate {
        route,
        gamma: None,
        f: vec![],
        h: vec![],
        g: vec![],
        total: lines.lines.len(),
        lines: lines.lines,
    };
    let cert = if inst.r() == 0 {
        empty(Route::Empty, Collector::new())
    } else {
        let red = full_traces(inst, Color::Red);
        let blue = full_traces(inst, Color::Blue);
        let preserving = |ts: &[(usize, RotationTrace)]| ts.iter().any(|(_, t)| is_delta_preserving(t, inst).unwrap());
        if !preserving(&red) {
            empty(Route::RedTransitions, transition_route(inst, Color::Red, &red)?)
        } else if !preserving(&blue) {
            empty(Route::BlueTransitions, transition_route(inst, Color::Blue, &blue)?)
        } else {
            let gamma = find_gamma(inst)
                .ok_or_else(|| SlidingError::CertificateFailure("no delta-preserving candidate curve".into()))?;
            certify_with_gamma(inst, &gamma)?
        }
    };
    audit(inst, &cert)?;
    Ok(cert)
}

/// The F/H/G accounting for a given curve, without the audit against the oracle.
pub fn certify_with_gamma(inst: &Instance, gamma: &Gamma) -> Result<Certificate, SlidingError> {
    let split = decompose_fhg(inst, gamma)?;
    let mut sides = Sides::new(inst, gamma, &split);
    let mut out = Collector::new();

    for side in [SplitSide::F, SplitSide::H] {
        for j in 0..split.side(side).len() {
            let pool = sides.first_half(side, j);
            let line = pool.into_iter().find(|l| !out.has(l)).ok_or_else(|| {
                SlidingError::LemmaViolation(format!("{side:?} level {j} has no unused central balanced step"))
            })?;
            let provenance = match side {
                SplitSide::F => Provenance::FRotation { k: j },
                SplitSide::H => Provenance::HRotation { k: j },
            };
            out.push(line, provenance);
        }
    }

    // every central step must classify; the accounting then needs |G| new lines over all inner levels
    let steps = lemma_g_transitions(inst, gamma, &split)?;
    let resolved = steps.iter().map(|gt| sides.recharge(gt)).collect::<Result<Vec<_>, _>>()?;
    let quota = split.g.len();
    let mut got = 0;
    for (gt, res) in steps.iter().zip(resolved) {
        if got == quota {
            break;
        }
        let k = gt.level;
        let accepted = match res {
            Recharge::Balanced(l) => out.push(l, Provenance::GRotationDirect { k }),
            Recharge::Recharged(rec) => match rec.induced.iter().find(|l| !out.has(l)) {
                Some(&l) => out.push(
                    l,
                    Provenance::RechargedFrom { g_level: k, side: rec.side, level: rec.level, g: rec.g, point: rec.point },
                ),
                None => false,
            },
        };
        got += accepted as usize;
    }
    if got < quota {
        return Err(SlidingError::LemmaViolation(format!("inner levels yield {got} of {quota} new lines")));
    }

    Ok(Certificate {
        route: Route::Gamma,
        gamma: Some(GammaRecord::of(gamma)),
        f: split.f,
        h: split.h,
        g: split.g,
        total: out.lines.len(),
        lines: out.lines,
    })
}

fn audit(inst: &Instance, cert: &Certificate) -> Result<(), SlidingError> {
    let oracle: BTreeSet<BalancedLine> = enumerate_naive(inst).into_iter().collect();
    let mut seen = BTreeSet::new();
    for l in cert.balanced_lines() {
        if !oracle.contains(&l) {
            return Err(SlidingError::CertificateFailure(format!("({}, {}) is not balanced", l.red, l.blue)));
        }
        if !seen.insert(l) {
            return Err(SlidingError::CertificateFailure(format!("({}, {}) certified twice", l.red, l.blue)));
        }
    }
    if cert.total != cert.lines.len() || cert.total < inst.r() {
        return Err(SlidingError::CertificateFailure(format!("total {} below r = {}", cert.total, inst.r())));
    }
    Ok(())
}
