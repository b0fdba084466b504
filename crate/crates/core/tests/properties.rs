use std::collections::BTreeSet;

use balanced_lines::rotation::members_right;
use balanced_lines::{
    batch_params, enumerate_naive, enumerate_sweep, gen_random, is_delta_preserving, orientation, run_rotation,
    transitions_at, BalancedLine, Color, Direction, Instance, LabeledPoint, Orientation, RotationSpec, Side, Subset,
};
use proptest::prelude::*;

// Balanced pairs computed straight from integer coordinates.
fn brute(inst: &Instance) -> BTreeSet<BalancedLine> {
    let d = inst.delta();
    let mut out = BTreeSet::new();
    for &a in inst.ids_of(Color::Red) {
        for &b in inst.ids_of(Color::Blue) {
            let (ax, ay) = inst.lattice(a);
            let (bx, by) = inst.lattice(b);
            let (mut left, mut right) = (0i64, 0i64);
            for s in inst.ids().filter(|&s| s != a && s != b) {
                let (sx, sy) = inst.lattice(s);
                let c = (bx - ax) as i128 * (sy - ay) as i128 - (by - ay) as i128 * (sx - ax) as i128;
                let w = if inst.color(s) == Color::Blue { 1 } else { -1 };
                if c > 0 {
                    left += w;
                } else {
                    right += w;
                }
            }
            if left == d && right == d {
                out.insert(BalancedLine { red: a, blue: b });
            }
        }
    }
    out
}

fn instance() -> impl Strategy<Value = Instance> {
    (any::<u64>(), 2usize..=24).prop_filter_map("params", |(seed, max_n)| {
        let (r, b) = batch_params(seed, max_n)?;
        gen_random(seed, r, b, 500).ok()
    })
}

fn balanced_instance() -> impl Strategy<Value = Instance> {
    (any::<u64>(), 1usize..=8).prop_map(|(seed, r)| gen_random(seed, r, r, 300).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sweep_matches_naive_and_brute(inst in instance()) {
        let naive = enumerate_naive(&inst);
        prop_assert_eq!(&naive, &enumerate_sweep(&inst));
        prop_assert_eq!(naive.into_iter().collect::<BTreeSet<_>>(), brute(&inst));
    }

    #[test]
    fn at_least_r_balanced_lines(inst in instance()) {
        prop_assert!(enumerate_naive(&inst).len() >= inst.r());
    }

    #[test]
    fn balanced_lines_have_weight_delta_on_both_sides(inst in instance()) {
        for l in enumerate_naive(&inst) {
            prop_assert_eq!(l.weight_certificate(&inst), (inst.delta(), inst.delta()));
        }
    }

    #[test]
    fn total_weight_is_twice_delta(inst in instance()) {
        let total: i64 = inst.ids().map(|i| inst.weight(i)).sum();
        prop_assert_eq!(total, 2 * inst.delta());
        prop_assert_eq!(inst.b() as i64 - inst.r() as i64, 2 * inst.delta());
    }

    #[test]
    fn color_swap_preserves_balanced_set_when_delta_is_zero(inst in balanced_instance()) {
        let swapped = Instance::validate(Instance::swap_colors(inst.points())).unwrap();
        let a: BTreeSet<(usize, usize)> = enumerate_naive(&inst).iter().map(|l| (l.red, l.blue)).collect();
        let b: BTreeSet<(usize, usize)> = enumerate_naive(&swapped).iter().map(|l| (l.blue, l.red)).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn orientation_is_antisymmetric(
        p in (-50i64..50, -50i64..50),
        q in (-50i64..50, -50i64..50),
        s in (-50i64..50, -50i64..50),
    ) {
        let pt = |(x, y): (i64, i64), id| LabeledPoint::int(id, x, y, Color::Red);
        let (p, q, s) = (pt(p, 0), pt(q, 1), pt(s, 2));
        let flip = |o| match o {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        };
        prop_assert_eq!(orientation(&p, &q, &s), flip(orientation(&q, &p, &s)));
        prop_assert_eq!(orientation(&p, &q, &s), orientation(&q, &s, &p));
    }

    #[test]
    fn reversing_a_line_swaps_sides(inst in instance()) {
        let l = balanced_lines::DirectedLine::SpannedBy(0, 1);
        let rev = l.reversed();
        for i in inst.ids() {
            prop_assert_eq!(l.side(&inst, i), rev.side(&inst, i).flipped());
        }
        prop_assert_eq!(inst.halfplane_weight(&l, Side::Left), inst.halfplane_weight(&rev, Side::Right));
    }

    #[test]
    fn rotation_keeps_k_members_right(inst in instance(), level in 0usize..16) {
        for color in [Color::Red, Color::Blue] {
            let m = inst.ids_of(color).len();
            if m == 0 {
                continue;
            }
            let k = level % m;
            let trace = run_rotation(&RotationSpec::new(Subset::of(color), k), &inst).unwrap();
            for (from, to, pivot, omega) in trace.intervals() {
                let t = from.interior(to);
                let line = balanced_lines::DirectedLine::PivotDirection(pivot, t);
                prop_assert_eq!(inst.color(pivot), color);
                prop_assert_eq!(members_right(&inst, &trace.members, &line), k);
                prop_assert_eq!(inst.halfplane_weight(&line, Side::Right), omega);
            }
        }
    }

    #[test]
    fn transitions_match_delta_preservation(inst in instance(), level in 0usize..16) {
        for color in [Color::Red, Color::Blue] {
            let m = inst.ids_of(color).len();
            if m == 0 {
                continue;
            }
            let trace = run_rotation(&RotationSpec::new(Subset::of(color), level % m), &inst).unwrap();
            let low = balanced_lines::rotation::balanced_low(&inst, color);
            let steps = transitions_at(&trace, &inst, low);
            // A closed walk crosses each boundary an even number of times.
            prop_assert_eq!(steps.iter().filter(|t| t.is_up()).count(), steps.iter().filter(|t| !t.is_up()).count());
            if is_delta_preserving(&trace, &inst).unwrap() {
                prop_assert!(steps.is_empty());
            }
        }
    }

    #[test]
    fn frame_sort_is_a_cyclic_order(dirs in prop::collection::vec((-20i64..20, -20i64..20), 1..20)) {
        let mut v: Vec<Direction> = dirs.into_iter().filter_map(|(x, y)| Direction::new(x, y)).collect();
        if v.is_empty() {
            return Ok(());
        }
        let base = v[0];
        let frame = balanced_lines::Frame::new(base);
        frame.sort(&mut v);
        prop_assert_eq!(v[0], base);
        for w in v.windows(2) {
            prop_assert_eq!(frame.cmp(w[0], w[1]), std::cmp::Ordering::Less);
        }
    }
}
