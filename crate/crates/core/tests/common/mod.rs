use balanced_lines::{Frame, Instance, SlidingRotation};

/// Smallest strip count over representatives of every gap between instance and curve critical directions.
pub fn brute_waist(sr: &SlidingRotation, inst: &Instance) -> usize {
    let mut dirs = vec![sr.start(), sr.start().antipode()];
    for d in inst.pair_directions().into_iter().chain(sr.critical_directions(inst)) {
        dirs.push(d);
        dirs.push(d.antipode());
    }
    let frame = Frame::new(sr.start());
    frame.sort(&mut dirs);
    let half = dirs.iter().position(|&d| d == sr.start().antipode()).unwrap();
    (0..half)
        .map(|i| {
            let t = dirs[i].interior(dirs[i + 1]);
            let a = sr.evaluate_at(t, inst).anchor();
            let b = sr.evaluate_at(t.antipode(), inst).anchor();
            inst.ids_of(sr.color())
                .iter()
                .filter(|&&q| {
                    inst.offset(t, q) > inst.offset(t, a) && inst.offset(t.antipode(), q) > inst.offset(t.antipode(), b)
                })
                .count()
        })
        .min()
        .unwrap()
}

/// The level-`lo` rotation for the first half turn and the level-`hi` rotation for the second,
/// joined by slides.
pub fn two_level(inst: &Instance, color: balanced_lines::Color, lo: usize, hi: usize) -> Option<SlidingRotation> {
    use balanced_lines::{run_rotation, RotationSpec, Subset};
    let a = run_rotation(&RotationSpec::new(Subset::of(color), lo), inst).ok()?;
    let b = run_rotation(&RotationSpec::new(Subset::of(color), hi), inst).ok()?;
    let start = a.start();
    let frame = Frame::new(start);
    let mut crit = vec![start, start.antipode()];
    for d in inst.pair_directions() {
        crit.push(d);
        crit.push(d.antipode());
    }
    frame.sort(&mut crit);
    let pivots: Vec<usize> = (0..crit.len())
        .map(|i| {
            let t = crit[i].interior(crit[(i + 1) % crit.len()]);
            if frame.in_first_half(t) { a.pivot_at(t) } else { b.pivot_at(t) }
        })
        .collect();
    SlidingRotation::from_schedule(color, &crit, &pivots, inst).ok()
}
