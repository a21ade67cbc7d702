use std::collections::BTreeSet;

use aodebound_core::corpus::{in_lattice, lattice_scan, planted_quasilinear};
use aodebound_core::text::parse_ratfunc;
use aodebound_core::{find_rational_solutions, rat, verify_solution, DiffPoly, Field, RatFunc};

fn df(s: &str) -> DiffPoly {
    DiffPoly::parse(s).unwrap()
}

fn rf(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

/// Solver output restricted to the lattice, constants included.
fn solver_on_lattice(f: &DiffPoly, cap: usize) -> (BTreeSet<RatFunc>, bool) {
    let s = find_rational_solutions(f, cap).unwrap();
    let mut all: BTreeSet<RatFunc> = s.solutions.iter().cloned().collect();
    all.extend(s.constants.iter().map(|c| RatFunc::constant(c.clone())));
    for r in &all {
        assert!(verify_solution(f, r));
    }
    (
        all.into_iter().filter(|r| in_lattice(r, 5, 2)).collect(),
        s.complete_up_to_cap,
    )
}

#[test]
fn planted_instances_agree_with_lattice_scan() {
    for seed in 0..6 {
        let pl = planted_quasilinear(seed);
        let (got, complete) = solver_on_lattice(&pl.f, 4);
        assert!(complete, "seed {seed}");
        let want = lattice_scan(&pl.f, 5, 2);
        assert_eq!(got, want, "seed {seed}: {}", pl.f);
        if in_lattice(&pl.solution, 5, 2) {
            assert!(want.contains(&pl.solution));
        }
        let s = find_rational_solutions(&pl.f, 4).unwrap();
        assert!(s.solutions.contains(&pl.solution), "seed {seed}");
    }
}

#[test]
fn cubic_example_has_two_nonconstant_solutions() {
    let f = df("2*y' + t*y^3 + y^2");
    let s = find_rational_solutions(&f, 2).unwrap();
    assert_eq!(s.solutions, vec![rf("-2/t"), rf("1/t")]);
    assert_eq!(s.constants, vec![rat(0)]);
    assert!(s.complete_up_to_cap);
    let want = lattice_scan(&f, 5, 2);
    let expected: BTreeSet<RatFunc> = [rf("-2/t"), rf("1/t"), rf("0")].into_iter().collect();
    assert_eq!(want, expected);
}

#[test]
fn autonomous_cubic_only_zero() {
    let f = df("y' - y^3");
    for cap in 0..=3 {
        let s = find_rational_solutions(&f, cap).unwrap();
        assert!(s.solutions.is_empty());
        assert_eq!(s.constants, vec![rat(0)]);
    }
    assert_eq!(lattice_scan(&f, 5, 2), [rf("0")].into_iter().collect());
}

#[test]
fn euler_equation_family() {
    let f = df("t*y' - 2*y");
    let s = find_rational_solutions(&f, 2).unwrap();
    assert_eq!(s.families.len(), 1);
    assert!(s.families[0].contains(&rf("7/3*t^2")));
    assert!(s.solutions.is_empty());
    for r in lattice_scan(&f, 5, 2) {
        assert!(r.is_zero() || s.families[0].contains(&r), "{r}");
    }
}
