//! Negative controls for the relation checks and whole-suite integration runs.

use num_complex::Complex64;
use spinfold_core::chain::ChainSpec;
use spinfold_core::double_row::{self, Combo};
use spinfold_core::fold::{fold, FoldingConstants};
use spinfold_core::ino::{self, InoParams};
use spinfold_core::scalar::{Exact, Scalar};
use spinfold_core::suite::{run_suite, Boundary, Field, Model, SuiteConfig};
use spinfold_core::verify::{
    check_diagonal, check_symmetry, check_twisted_minus, check_twisted_plus, check_yangian,
    ResidualStatus, SlTriple, TOL_EDGE, TOL_IDENTITY,
};
use spinfold_core::xxx::{self, Level1Variant, XxxParams};
use spinfold_core::Gen;

fn cf(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn params(mu: (i64, i64)) -> XxxParams<Exact> {
    XxxParams::new(Exact::from_int(1), Exact::ratio(mu.0, mu.1)).unwrap()
}

fn e0_triple(chain: ChainSpec) -> SlTriple<Exact> {
    SlTriple {
        plus: xxx::e0(chain, Gen::Plus).unwrap(),
        minus: xxx::e0(chain, Gen::Minus).unwrap(),
        z: xxx::e0(chain, Gen::Z).unwrap(),
    }
}

#[test]
fn yangian_cubic_fails_with_unscaled_level1() {
    // Doubling lambda in the relation without rescaling E1 breaks the cubic.
    let chain = ChainSpec::full(3);
    let p = params((0, 1));
    let e1 = SlTriple {
        plus: xxx::e1(chain, &p, Gen::Plus, Level1Variant::Full).unwrap(),
        minus: xxx::e1(chain, &p, Gen::Minus, Level1Variant::Full).unwrap(),
        z: xxx::e1(chain, &p, Gen::Z, Level1Variant::Full).unwrap(),
    };
    let bad = check_yangian(&e0_triple(chain), &e1, &Exact::from_int(2), 1, 0.0).unwrap();
    let cubic = bad.iter().find(|r| r.relation == "y2:cubic").unwrap();
    assert_eq!(cubic.report.status, ResidualStatus::Fail);
    // The literal appendix reading of J(h) is reported and fails.
    let literal = bad.iter().find(|r| r.relation.contains("literal")).unwrap();
    assert!(literal.informational);
    assert_eq!(literal.report.status, ResidualStatus::Fail);
}

#[test]
fn yangian_relations_exact_at_every_size_up_to_five() {
    let p = params((0, 1));
    for l in 2u32..=5 {
        let chain = ChainSpec::full(l);
        let e1 = SlTriple {
            plus: xxx::e1(chain, &p, Gen::Plus, Level1Variant::Full).unwrap(),
            minus: xxx::e1(chain, &p, Gen::Minus, Level1Variant::Full).unwrap(),
            z: xxx::e1(chain, &p, Gen::Z, Level1Variant::Full).unwrap(),
        };
        for r in check_yangian(&e0_triple(chain), &e1, &p.lambda, 2, 0.0).unwrap() {
            if !r.informational {
                assert_eq!(
                    r.report.status,
                    ResidualStatus::ExactZero,
                    "L={l} {}",
                    r.relation
                );
            }
        }
    }
}

#[test]
fn twisted_plus_quartic_fails_with_wrong_shift() {
    let l = 4u32;
    let p = params((3, 2));
    let half = ChainSpec::half(l);
    let k = xxx::e0::<Exact>(half, Gen::Z).unwrap();
    let bp = xxx::x(half, &p, Gen::Plus, Level1Variant::Full).unwrap();
    let bm = xxx::x(half, &p, Gen::Minus, Level1Variant::Full).unwrap();
    // c = 0 leaves an O(1) interior residual in the quartic relations.
    let rel = check_twisted_plus(&k, &bp, &bm, &p.lambda, &Exact::zero(), 2, 0.0).unwrap();
    let quartic_plus = rel.iter().find(|r| r.relation == "y2+:quartic+").unwrap();
    assert_eq!(quartic_plus.report.status, ResidualStatus::Fail);
    assert!(quartic_plus.report.max_interior > 0.1);
    // The correct shift c = -lambda/2mu is exact.
    let c = p.lambda.div(&p.mu).mul(&Exact::ratio(-1, 2));
    for r in check_twisted_plus(&k, &bp, &bm, &p.lambda, &c, 2, 0.0).unwrap() {
        assert_eq!(r.report.status, ResidualStatus::ExactZero, "{}", r.relation);
    }
}

#[test]
fn twisted_minus_cubic_fails_with_untilded_charge() {
    // Folding the uncorrected level-2 charge does not give the boundary
    // charge: the cubic relation detects it.
    let l = 4u32;
    let p = params((0, 1));
    let full = ChainSpec::full(l);
    let half = ChainSpec::half(l);
    let table = FoldingConstants::<Exact>::all_ones();
    let fake = |a: Gen| {
        fold(&xxx::e2(full, &p, a).unwrap(), &table)
            .unwrap()
            .scale(&Exact::ratio(3, 8))
    };
    let g = SlTriple {
        plus: fake(Gen::Plus),
        minus: fake(Gen::Minus),
        z: fake(Gen::Z),
    };
    let rel = check_twisted_minus(&e0_triple(half), &g, &p.lambda, 1, 0.0).unwrap();
    assert!(rel.iter().any(|r| r.report.status == ResidualStatus::Fail));
}

#[test]
fn diagonal_relations_fail_without_correction_terms() {
    // Y stripped to its bilocal part (no lambda corrections) breaks Y-delta.
    let l = 3u32;
    let p = params((0, 1));
    let half2 = ChainSpec::half_two_row(l);
    let a0 = SlTriple {
        plus: double_row::ab_xxx(half2, &p, Gen::Plus, 0, Combo::A).unwrap(),
        minus: double_row::ab_xxx(half2, &p, Gen::Minus, 0, Combo::A).unwrap(),
        z: double_row::ab_xxx(half2, &p, Gen::Z, 0, Combo::A).unwrap(),
    };
    let stripped = |a: Gen| double_row::ab_xxx(half2, &p, a, 1, Combo::B).unwrap();
    let y = SlTriple {
        plus: stripped(Gen::Plus),
        minus: stripped(Gen::Minus),
        z: stripped(Gen::Z),
    };
    let rel = check_diagonal(&a0, &y, &p.lambda, 1, 0.0).unwrap();
    assert!(rel.iter().any(|r| r.report.status == ResidualStatus::Fail));
}

#[test]
fn naive_truncated_charge_fails_with_interior_witness() {
    let l = 5u32;
    let p = params((1, 1));
    let half = ChainSpec::half(l);
    let hmu = xxx::h_magnetic(half, &p).unwrap();
    let naive = xxx::e1(half, &p, Gen::Plus, Level1Variant::Full).unwrap();
    let r = check_symmetry(&hmu, &naive, 2, 0.0).unwrap();
    assert_eq!(r.status, ResidualStatus::Fail);
    let witness = r.witness.unwrap();
    assert!(
        witness.contains("_{0}") || witness.contains("_{-1}"),
        "witness far from boundary: {witness}"
    );
}

#[test]
fn long_range_bulk_commutator_obeys_exponential_envelope() {
    // [Hk, Ek1a] interior residual decays like e^(-2 kappa w) in the window
    // depth w; at kappa=2 the window-4 interior of an L=6 line is below 1e-5.
    let l = 6u32;
    let p = InoParams::new(1.0, 2.0, 0.0).unwrap();
    let chain = ChainSpec::full(l);
    let h = ino::h_kappa(chain, &p).unwrap();
    for a in Gen::ALL {
        let q = ino::e1_kappa(chain, &p, a, Level1Variant::Full).unwrap();
        let residual = h.commutator(&q).unwrap();
        for w in [2u32, 3, 4] {
            let (_, interior) = residual.edge_partition(w);
            let bound = 10.0 * (-2.0 * p.kappa * w as f64).exp();
            assert!(
                interior.max_abs_non_identity() <= bound,
                "a={a:?} w={w}: {} > {bound}",
                interior.max_abs_non_identity()
            );
        }
        let (_, interior) = residual.edge_partition(4);
        assert!(interior.max_abs_non_identity() <= 1e-5);
    }
}

#[test]
fn ino_twisted_plus_holds_at_integrable_point() {
    let l = 4u32;
    let p = InoParams::new(1.0, 1.0, 1.0).unwrap();
    let half = ChainSpec::half(l);
    let k = xxx::e0::<Complex64>(half, Gen::Z).unwrap();
    let bp = ino::x_kappa(half, &p, Gen::Plus).unwrap();
    let bm = ino::x_kappa(half, &p, Gen::Minus).unwrap();
    let c = cf(-p.lambda / (2.0 * p.mu));
    for r in check_twisted_plus(&k, &bp, &bm, &cf(p.lambda), &c, 2, 1e-9).unwrap() {
        assert!(r.report.passes(), "{}: {:?}", r.relation, r.report.status);
    }
    // Wrong shift: O(1) residual.
    let rel = check_twisted_plus(&k, &bp, &bm, &cf(p.lambda), &cf(0.0), 2, 1e-9).unwrap();
    assert!(rel.iter().any(|r| r.report.status == ResidualStatus::Fail));
}

// ---------------------------------------------------------------------------
// Whole-suite integration runs
// ---------------------------------------------------------------------------

fn cfg(model: Model, boundary: Boundary, l: u32, mu: &str, kappa: Option<f64>) -> SuiteConfig {
    SuiteConfig {
        model,
        boundary,
        l,
        lambda: "1".into(),
        mu: mu.into(),
        kappa,
        field: if kappa.is_some() {
            Field::Float
        } else {
            Field::Exact
        },
        edge_window: 2,
        tol_identity: TOL_IDENTITY,
        tol_edge: TOL_EDGE,
        seed: 0,
    }
}

fn assert_suite_passes(c: &SuiteConfig) {
    let report = run_suite(c, None, 2).unwrap();
    for chk in &report.checks {
        assert!(
            chk.pass,
            "{:?}/{:?}: check {} -> {} (witness {:?})",
            c.model, c.boundary, chk.check, chk.status, chk.witness
        );
    }
}

#[test]
fn suite_xxx_bulk() {
    assert_suite_passes(&cfg(Model::Xxx, Boundary::Bulk, 4, "0", None));
}

#[test]
fn suite_xxx_open() {
    assert_suite_passes(&cfg(Model::Xxx, Boundary::Open, 4, "0", None));
}

#[test]
fn suite_double_xxx_diagonal() {
    assert_suite_passes(&cfg(Model::DoubleXxx, Boundary::Diagonal, 3, "0", None));
}

#[test]
fn suite_ino_bulk() {
    assert_suite_passes(&cfg(Model::Ino, Boundary::Bulk, 4, "0", Some(1.0)));
}

#[test]
fn suite_ino_magnetic_integrable() {
    assert_suite_passes(&cfg(Model::Ino, Boundary::Magnetic, 6, "1", Some(2.0)));
    assert_suite_passes(&cfg(Model::Ino, Boundary::Magnetic, 6, "-1", Some(2.0)));
}

#[test]
fn suite_ino_magnetic_negative_control() {
    // mu = 0.6 lambda: the X-symmetry checks are encoded expected-fail, so
    // the suite as a whole still passes.
    let c = cfg(Model::Ino, Boundary::Magnetic, 7, "0.6", Some(2.0));
    let report = run_suite(&c, None, 2).unwrap();
    let xchecks: Vec<_> = report
        .checks
        .iter()
        .filter(|chk| chk.check.starts_with("sym:[Hmuk,Xk"))
        .collect();
    assert_eq!(xchecks.len(), 2);
    for chk in xchecks {
        assert!(
            chk.expected_fail && chk.pass && chk.status == "Fail",
            "{chk:?}"
        );
    }
    assert!(report.all_pass());
}

#[test]
fn suite_ino_open() {
    assert_suite_passes(&cfg(Model::Ino, Boundary::Open, 4, "0", Some(2.0)));
}

#[test]
fn suite_double_ino_diagonal() {
    assert_suite_passes(&cfg(
        Model::DoubleIno,
        Boundary::Diagonal,
        3,
        "0",
        Some(2.0),
    ));
}

#[test]
fn reports_are_deterministic_and_ordered() {
    let c = cfg(Model::Xxx, Boundary::Magnetic, 3, "1", None);
    let r1 = run_suite(&c, None, 4).unwrap();
    let r2 = run_suite(&c, None, 1).unwrap();
    let strip = |r: &spinfold_core::suite::SuiteReport| -> Vec<serde_json::Value> {
        r.checks
            .iter()
            .map(|c| {
                let mut v = serde_json::to_value(c).unwrap();
                v.as_object_mut().unwrap().remove("elapsed_ms");
                v
            })
            .collect()
    };
    assert_eq!(strip(&r1), strip(&r2));
    let ids: Vec<_> = r1.checks.iter().map(|c| c.check.clone()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn primed_level1_charges_are_bulk_symmetries_at_window_one() {
    let l = 4u32;
    let p = params((0, 1));
    let chain = ChainSpec::full(l);
    let h = xxx::h_xxx(chain, &p).unwrap();
    for a in Gen::ALL {
        for v in [Level1Variant::Prime, Level1Variant::DoublePrime] {
            let q = xxx::e1(chain, &p, a, v).unwrap();
            let r = check_symmetry(&h, &q, 1, 0.0).unwrap();
            assert_eq!(r.status, ResidualStatus::EdgeLocalized);
            assert_eq!(r.max_interior, 0.0);
        }
    }
}

#[test]
fn long_range_twisted_minus_relations_are_exact() {
    // The boundary-charge algebra closes exactly at finite kappa; only the
    // Hamiltonian commutators carry truncation tails.
    let l = 5u32;
    let p = InoParams::new(1.0, 2.0, 0.0).unwrap();
    let half = ChainSpec::half(l);
    let x = SlTriple {
        plus: xxx::e0::<Complex64>(half, Gen::Plus).unwrap(),
        minus: xxx::e0::<Complex64>(half, Gen::Minus).unwrap(),
        z: xxx::e0::<Complex64>(half, Gen::Z).unwrap(),
    };
    let g = SlTriple {
        plus: ino::g_kappa(half, &p, Gen::Plus).unwrap(),
        minus: ino::g_kappa(half, &p, Gen::Minus).unwrap(),
        z: ino::g_kappa(half, &p, Gen::Z).unwrap(),
    };
    for r in check_twisted_minus(&x, &g, &cf(p.lambda), 1, 1e-5).unwrap() {
        assert!(r.report.passes(), "{}: {:?}", r.relation, r.report.status);
        assert!(r.report.max_interior <= 1e-5);
    }
}

#[test]
fn both_g_kappa_routes_give_identical_residual_reports() {
    let l = 5u32;
    let p = InoParams::new(1.0, 2.0, 0.0).unwrap();
    let half = ChainSpec::half(l);
    let full = ChainSpec::full(l);
    let h0 = ino::h_open_kappa(half, &p).unwrap();
    let table = FoldingConstants::<Complex64>::all_ones();
    for a in Gen::ALL {
        let direct = ino::g_kappa(half, &p, a).unwrap();
        let via_fold = fold(&ino::e2_tilde_kappa(full, &p, a).unwrap(), &table)
            .unwrap()
            .scale(&cf(3.0 / 8.0));
        let r1 = check_symmetry(&h0, &direct, 1, TOL_EDGE).unwrap();
        let r2 = check_symmetry(&h0, &via_fold, 1, TOL_EDGE).unwrap();
        assert_eq!(r1.status, r2.status);
        assert!((r1.max_interior - r2.max_interior).abs() <= 1e-9);
    }
}
