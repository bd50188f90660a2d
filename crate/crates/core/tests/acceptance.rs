//! Acceptance suite: one test per criterion, each printing a pass line.
//! Everything here is exact; there are no tolerances to tune.

use num_bigint::BigInt;
use std::time::Instant;

use rackhom::complex::{cocycle_basis, homology_table, DEFAULT_BASIS_CAP};
use rackhom::dgbial::tuples;
use rackhom::exactlin::HomologyGroup;
use rackhom::products::{
    coboundary, cup, induced_coproduct, witness, Cochain, WitnessKind,
};
use rackhom::shelf::{
    builtin, validate_xset, CoefficientSystem, Family, FiniteShelf, XSetAction,
};
use rackhom::split::{group_sum, groups_match, split_homology, verify_splitting, SplitPart};
use rackhom::verify::{run_suites, Status, Suite};

fn test_shelves() -> Vec<(&'static str, FiniteShelf)> {
    vec![
        ("dihedral(3)", builtin(Family::Dihedral(3)).unwrap()),
        ("dihedral(4)", builtin(Family::Dihedral(4)).unwrap()),
        ("trivial(2)", builtin(Family::Trivial(2)).unwrap()),
        (
            "permutation([1,0])",
            builtin(Family::Permutation(vec![1, 0])).unwrap(),
        ),
        ("singleton", builtin(Family::Trivial(1)).unwrap()),
    ]
}

/// The custom X-set for the complex suite: the shelf acting on itself,
/// extended by one fixed point.
fn custom_xset(shelf: &FiniteShelf) -> XSetAction {
    let mut action = shelf.table.clone();
    action.push(vec![shelf.size; shelf.size]);
    validate_xset(shelf, action).expect("disjoint union of X-sets is an X-set")
}

fn assert_all_passed(name: &str, report: &rackhom::verify::SuiteReport) {
    for c in &report.checks {
        assert_ne!(
            c.status,
            Status::Fail,
            "{name}: {} failed: {:?}",
            c.identity,
            c.instance
        );
    }
}

fn pseudo_random_cochain(shelf: &FiniteShelf, degree: usize, salt: u64) -> Cochain {
    let mut f = Cochain::zero(degree, 1, shelf.size, None);
    let mut state = salt.wrapping_mul(0x9e3779b97f4a7c15) | 1;
    for v in f.values.iter_mut() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        *v = BigInt::from((state % 23) as i64 - 11);
    }
    f
}

#[test]
fn criterion_1_complex_suite() {
    let start = Instant::now();
    for (name, shelf) in test_shelves() {
        let systems = vec![
            CoefficientSystem::Trivial,
            CoefficientSystem::SelfAction,
            CoefficientSystem::XSet(custom_xset(&shelf)),
        ];
        for coeff in systems {
            let report = run_suites(
                &shelf,
                &coeff,
                &[Suite::Complex],
                5,
                None,
                DEFAULT_BASIS_CAP,
            )
            .unwrap();
            assert_all_passed(name, &report);
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "complex suite took {elapsed:?}, target is < 60 s"
    );
    println!("ACCEPTANCE 1 (complex suite, degrees <= 5, all coefficient systems): PASS in {elapsed:?}");
}

#[test]
fn criterion_2_dgb_suite() {
    for (name, shelf) in test_shelves() {
        let report = run_suites(
            &shelf,
            &CoefficientSystem::Trivial,
            &[Suite::Dgb],
            4,
            None,
            DEFAULT_BASIS_CAP,
        )
        .unwrap();
        assert_all_passed(name, &report);
        // every builtin test shelf is a rack, so the two coproduct routes
        // must have been compared, not skipped
        assert!(report
            .checks
            .iter()
            .any(|c| c.identity.contains("unshuffle") && c.status == Status::Pass));
    }
    println!("ACCEPTANCE 2 (d.g. bialgebra suite, degrees <= 4): PASS");
}

#[test]
fn criterion_3_homotopy_suite() {
    for (name, shelf) in test_shelves() {
        let report = run_suites(
            &shelf,
            &CoefficientSystem::Trivial,
            &[Suite::Homotopy],
            4,
            None,
            DEFAULT_BASIS_CAP,
        )
        .unwrap();
        assert_all_passed(name, &report);
    }
    println!("ACCEPTANCE 3 (commutativity homotopy suite, degrees <= 4): PASS");
}

#[test]
fn criterion_4_codendriform_zinbiel_suite() {
    for (name, shelf) in test_shelves() {
        let report = run_suites(
            &shelf,
            &CoefficientSystem::Trivial,
            &[Suite::Dendriform, Suite::Zinbiel],
            4,
            None,
            DEFAULT_BASIS_CAP,
        )
        .unwrap();
        assert_all_passed(name, &report);
    }
    // dual statements over F_2 and F_3 on dihedral(3)
    let d3 = builtin(Family::Dihedral(3)).unwrap();
    for p in [2u64, 3] {
        let report = run_suites(
            &d3,
            &CoefficientSystem::Trivial,
            &[Suite::Dendriform, Suite::Zinbiel],
            4,
            Some(p),
            DEFAULT_BASIS_CAP,
        )
        .unwrap();
        assert_all_passed("dihedral(3) mod p", &report);
    }
    println!("ACCEPTANCE 4 (codendriform/Zinbiel suite, one global sign, F2/F3 duals): PASS");
}

#[test]
fn criterion_5_cup_suite() {
    let d3 = builtin(Family::Dihedral(3)).unwrap();
    let trivial = CoefficientSystem::Trivial;

    // associativity for every degree triple summing to <= 5
    for p in 0..=5usize {
        for q in 0..=(5 - p) {
            for r in 0..=(5 - p - q) {
                let f = pseudo_random_cochain(&d3, p, 1000 + p as u64);
                let g = pseudo_random_cochain(&d3, q, 2000 + q as u64);
                let k = pseudo_random_cochain(&d3, r, 3000 + r as u64);
                let lhs = cup(&d3, &cup(&d3, &f, &g).unwrap(), &k).unwrap();
                let rhs = cup(&d3, &f, &cup(&d3, &g, &k).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "associativity at ({p},{q},{r})");
            }
        }
    }

    // degree-(1,1) worked formula
    let f = pseudo_random_cochain(&d3, 1, 11);
    let g = pseudo_random_cochain(&d3, 1, 13);
    let fg = cup(&d3, &f, &g).unwrap();
    for x in 0..3 {
        for y in 0..3 {
            let expect = -f.eval_tuple(&[x]) * g.eval_tuple(&[y])
                + f.eval_tuple(&[y]) * g.eval_tuple(&[d3.act(x, y)]);
            assert_eq!(fg.eval_tuple(&[x, y]), expect);
        }
    }

    // degree-(2,2) six-term worked formula on all 81 inputs
    let act2 = |a: usize, b: usize, c: usize| d3.act(d3.act(a, b), c);
    let f = pseudo_random_cochain(&d3, 2, 17);
    let g = pseudo_random_cochain(&d3, 2, 19);
    let fg = cup(&d3, &f, &g).unwrap();
    for t in tuples(3, 4) {
        let (x, y, z, w) = (t[0], t[1], t[2], t[3]);
        let expect = f.eval_tuple(&[x, y]) * g.eval_tuple(&[z, w])
            + f.eval_tuple(&[z, w]) * g.eval_tuple(&[act2(x, z, w), act2(y, z, w)])
            - f.eval_tuple(&[x, z]) * g.eval_tuple(&[d3.act(y, z), w])
            + f.eval_tuple(&[x, w]) * g.eval_tuple(&[d3.act(y, w), d3.act(z, w)])
            + f.eval_tuple(&[y, z]) * g.eval_tuple(&[act2(x, y, z), w])
            - f.eval_tuple(&[y, w]) * g.eval_tuple(&[act2(x, y, w), d3.act(z, w)]);
        assert_eq!(fg.eval_tuple(&t), expect, "{t:?}");
    }

    // commutativity defect = ε_c d*(witness) with one sign across both test
    // shelves and all cocycle pairs of total degree <= 4
    let mut global_sign: Option<i8> = None;
    for shelf in [&d3, &builtin(Family::Trivial(2)).unwrap()] {
        for p in 1..4usize {
            for q in 1..=(4 - p) {
                let fs = cocycle_basis(shelf, &trivial, p, None, DEFAULT_BASIS_CAP).unwrap();
                let gs = cocycle_basis(shelf, &trivial, q, None, DEFAULT_BASIS_CAP).unwrap();
                for f in &fs {
                    for g in &gs {
                        let fg = cup(shelf, f, g).unwrap();
                        let gf = cup(shelf, g, f).unwrap();
                        let defect = if (p * q) % 2 == 0 {
                            fg.sub(&gf)
                        } else {
                            fg.add(&gf)
                        };
                        let w = witness(shelf, f, g, WitnessKind::Commutativity).unwrap();
                        let dw = coboundary(shelf, &trivial, &w).unwrap();
                        if defect.is_zero() && dw.is_zero() {
                            continue;
                        }
                        let sign = if defect == dw {
                            1
                        } else if defect == dw.scale(&BigInt::from(-1)) {
                            -1
                        } else {
                            panic!("defect is not ±d*(witness) at ({p},{q})");
                        };
                        match global_sign {
                            None => global_sign = Some(sign),
                            Some(s) => assert_eq!(s, sign, "ε_c flips at ({p},{q})"),
                        }
                    }
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 5 (cup suite: associativity <= 5, worked formulas, ε_c = {}): PASS",
        global_sign.unwrap_or(1)
    );
}

#[test]
fn criterion_6_action_suite() {
    for shelf in [
        builtin(Family::Dihedral(3)).unwrap(),
        builtin(Family::Trivial(2)).unwrap(),
    ] {
        let report = run_suites(
            &shelf,
            &CoefficientSystem::Trivial,
            &[Suite::Action],
            3,
            None,
            DEFAULT_BASIS_CAP,
        )
        .unwrap();
        assert_all_passed("action", &report);
    }
    println!("ACCEPTANCE 6 (translation action trivial on cohomology, degrees <= 3): PASS");
}

#[test]
fn criterion_7_splitting_suite() {
    for shelf in [
        builtin(Family::Dihedral(3)).unwrap(),
        builtin(Family::Trivial(2)).unwrap(),
    ] {
        for modulus in [None, Some(2), Some(3)] {
            let report = run_suites(
                &shelf,
                &CoefficientSystem::Trivial,
                &[Suite::Splitting],
                4,
                modulus,
                DEFAULT_BASIS_CAP,
            )
            .unwrap();
            assert_all_passed("splitting", &report);
            let checks = verify_splitting(&shelf, 3, modulus, DEFAULT_BASIS_CAP).unwrap();
            for c in &checks {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
        // the same equalities hold for cohomology (transposed complexes)
        for n in 0..=4usize {
            let rack = split_homology(&shelf, SplitPart::Rack, 4, true, None, DEFAULT_BASIS_CAP).unwrap();
            let quandle = split_homology(&shelf, SplitPart::Quandle, 4, true, None, DEFAULT_BASIS_CAP).unwrap();
            let degenerate = split_homology(&shelf, SplitPart::Degenerate, 4, true, None, DEFAULT_BASIS_CAP).unwrap();
            let late = split_homology(&shelf, SplitPart::Late, 4, true, None, DEFAULT_BASIS_CAP).unwrap();
            assert!(groups_match(
                &rack[n],
                &group_sum(&quandle[n], &degenerate[n])
            ));
            if n >= 2 {
                assert!(groups_match(
                    &degenerate[n],
                    &group_sum(&late[n], &quandle[n - 1])
                ));
            }
        }
    }
    println!("ACCEPTANCE 7 (splittings: closures, invariant-factor equalities, cup/Zinbiel structure): PASS");
}

#[test]
fn criterion_8_field_coefficient_coproduct() {
    let d3 = builtin(Family::Dihedral(3)).unwrap();
    for p in [2u64, 3] {
        let a = induced_coproduct(&d3, p, 3, 0xfeed, DEFAULT_BASIS_CAP).unwrap();
        let b = induced_coproduct(&d3, p, 3, 0xc0ffee, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(
            a, b,
            "structure constants depend on the complement choice (p={p})"
        );
        assert!(a.counit_laws_hold(), "counit law fails (p={p})");
        assert!(a.coassociative(), "coassociativity fails (p={p})");
    }
    println!("ACCEPTANCE 8 (induced coproduct on H(F_p): well defined and coassociative): PASS");
}

#[test]
fn criterion_9_oracle_regression() {
    let d3 = builtin(Family::Dihedral(3)).unwrap();
    let trivial = CoefficientSystem::Trivial;

    // frozen once from the Smith-normal-form oracle; any change is a failure
    let expected_rack = vec![
        HomologyGroup::free(1),
        HomologyGroup::free(1),
        HomologyGroup::free(1),
        HomologyGroup {
            free_rank: 1,
            torsion: vec!["3".into()],
        },
    ];
    let rack = homology_table(&d3, &trivial, 3, false, None, DEFAULT_BASIS_CAP).unwrap();
    assert_eq!(rack, expected_rack, "H_n(dihedral(3)) regression");

    let expected_quandle = vec![
        HomologyGroup::free(1),
        HomologyGroup::free(1),
        HomologyGroup::free(0),
        HomologyGroup {
            free_rank: 0,
            torsion: vec!["3".into()],
        },
    ];
    let quandle = split_homology(&d3, SplitPart::Quandle, 3, false, None, DEFAULT_BASIS_CAP).unwrap();
    assert_eq!(quandle, expected_quandle, "H^Q_n(dihedral(3)) regression");
    println!("ACCEPTANCE 9 (pinned homology fixtures for dihedral(3)): PASS");
}
