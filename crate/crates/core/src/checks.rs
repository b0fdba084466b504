//! Independent pass/fail checks of every lemma on one instance.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::geom::{Color, Instance};
use crate::oracle::{enumerate_naive, BalancedLine};
use crate::rotation::{
    balanced_low, check_lemma_br, find_balanced_halving, run_rotation, transitions_at, RotationSpec, Subset,
};
use crate::sliding::{
    decompose_fhg, find_gamma, lemma_fh_lines, lemma_g_transitions, recharge, Recharge, SlidingError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LemmaReport {
    /// Every boundary step of every full-color rotation is an oracle line.
    pub transitions: bool,
    /// `None` for even r.
    pub halving: Option<bool>,
    pub coupling: bool,
    /// The three curve lemmas; `None` when no candidate curve exists.
    pub fh: Option<bool>,
    pub sign_change: Option<bool>,
    pub recharge: Option<bool>,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.transitions
            && self.coupling
            && [self.halving, self.fh, self.sign_change, self.recharge].iter().all(|f| f.unwrap_or(true))
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let named = [
            ("transitions", Some(self.transitions)),
            ("halving", self.halving),
            ("coupling", Some(self.coupling)),
            ("fh", self.fh),
            ("sign_change", self.sign_change),
            ("recharge", self.recharge),
        ];
        for (name, flag) in named {
            if flag == Some(false) {
                out.push(name);
            }
        }
        out
    }
}

pub fn check_transitions(inst: &Instance, oracle: &BTreeSet<BalancedLine>) -> bool {
    [Color::Red, Color::Blue].into_iter().all(|color| {
        (0..inst.ids_of(color).len()).all(|k| {
            let trace = run_rotation(&RotationSpec::new(Subset::of(color), k), inst).expect("legal level");
            transitions_at(&trace, inst, balanced_low(inst, color))
                .iter()
                .all(|t| t.balanced_line(inst).is_some_and(|l| oracle.contains(&l)))
        })
    })
}

/// Exactly (r + b - 2) / 2 points on each open side, and an oracle line.
pub fn check_halving(inst: &Instance, oracle: &BTreeSet<BalancedLine>) -> Option<bool> {
    if inst.r().is_multiple_of(2) {
        return None;
    }
    let line = find_balanced_halving(inst).ok()?;
    let half = (inst.len() - 2) / 2;
    Some(line.side_counts(inst) == (half, half) && oracle.contains(&line))
}

pub fn check_coupling(inst: &Instance) -> bool {
    let d = inst.delta() as usize;
    (0..=inst.r() / 2)
        .filter(|&j| inst.r() > 0 && j + d < inst.b())
        .all(|j| check_lemma_br(inst, j).unwrap_or(false))
}

/// (fh, sign_change, recharge) for the curve found by the search, if any.
pub fn check_curve_lemmas(inst: &Instance, oracle: &BTreeSet<BalancedLine>) -> Option<(bool, bool, bool)> {
    let gamma = find_gamma(inst)?;
    let Ok(split) = decompose_fhg(inst, &gamma) else {
        return Some((false, false, false));
    };
    let fh = lemma_fh_lines(inst, &gamma, &split).is_ok_and(|lines| {
        let distinct: BTreeSet<_> = lines.iter().map(|(s, j, _)| (*s, *j)).collect();
        distinct.len() == lines.len() && lines.iter().all(|(_, _, l)| oracle.contains(l))
    });
    let steps = lemma_g_transitions(inst, &gamma, &split);
    let sign_change = steps.is_ok();
    let recharged = steps.unwrap_or_default().iter().all(|gt| match recharge(inst, &gamma, &split, gt) {
        Ok(Recharge::Balanced(l)) => oracle.contains(&l),
        Ok(Recharge::Recharged(rec)) => rec.induced.iter().all(|l| oracle.contains(l)),
        Err(SlidingError::UnclassifiableTransition(_)) | Err(_) => false,
    });
    Some((fh, sign_change, sign_change && recharged))
}

pub fn check_lemmas(inst: &Instance) -> LemmaReport {
    let oracle: BTreeSet<BalancedLine> = enumerate_naive(inst).into_iter().collect();
    let curve = check_curve_lemmas(inst, &oracle);
    LemmaReport {
        transitions: check_transitions(inst, &oracle),
        halving: check_halving(inst, &oracle),
        coupling: check_coupling(inst),
        fh: curve.map(|c| c.0),
        sign_change: curve.map(|c| c.1),
        recharge: curve.map(|c| c.2),
    }
}
