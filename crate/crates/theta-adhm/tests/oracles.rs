//! Hand-computed values for individual operations.

mod common;

use theta_adhm::adhm::{self, Mode, MonadConfig};
use theta_adhm::geom::{self, Geometry};
use theta_adhm::matrix;
use theta_adhm::parse::{ParseContext, Value};
use theta_adhm::reduce::{self, IdealSpec};
use theta_adhm::scalar::{Rat, Scalar};
use theta_adhm::twistalg::{Element, ZBalance};

fn c4() -> ParseContext {
    ParseContext::named_algebra("C4", false).unwrap()
}

fn el(s: &str) -> Element {
    c4().parse_element(s).unwrap()
}

fn shown(s: &str) -> String {
    c4().parse(s).unwrap().to_string()
}

#[test]
fn products_pick_up_the_eta_phase() {
    assert_eq!(shown("z3 z1"), "mu z1 z3");
    assert_eq!(shown("z1 z3"), "z1 z3");
    assert_eq!(shown("z4 z1 - z1 z4"), "(-1 + mu^-1) z1 z4");
    assert_eq!(el("z1 z1'"), el("z1' z1"));
    let a = el("3/2 z2 - i z4'");
    assert_eq!(&Element::one(a.spec()) * &a, a);
}

#[test]
fn four_sphere_generators_quasi_commute() {
    assert!(el("alpha beta - lambda beta alpha").is_zero());
    assert!(!el("alpha beta - beta alpha").is_zero());
    assert!(el("x alpha - alpha x").is_zero());
    assert_eq!(el("alpha"), el("2 z1 z3' + 2 z2' z4"));
    assert_eq!(el("beta"), el("2 z2 z3' - 2 z1' z4"));
}

#[test]
fn star_conjugates_and_reverses() {
    assert_eq!(shown("star(z1 z2)"), "z1' z2'");
    assert_eq!(shown("star(i mu z1)"), "-i mu^-1 z1'");
    assert_eq!(el("star(x)"), el("x"));
}

#[test]
fn classical_specialisation() {
    let a = el("mu z1 z3");
    assert_eq!(a.specialize_classical(), el("z1 z3").specialize_classical());
    let tz = ParseContext::named_algebra("C4", true).unwrap();
    assert!(tz.parse_element("alpha beta - beta alpha").unwrap().is_zero());
    assert!(tz.parse_element("z3 z1 - z1 z3").unwrap().is_zero());
}

#[test]
fn z_balance() {
    assert_eq!(el("z1 z2'").z_balance(), ZBalance::Homogeneous(0));
    assert_eq!(el("z1").z_balance(), ZBalance::Homogeneous(1));
    assert_eq!(el("z1 + z1 z2'").z_balance(), ZBalance::Mixed);
}

#[test]
fn sphere_reduction() {
    let g = common::geometry();
    let nf = reduce::normal_form(&el("z4' z4"), &g.s7.ideal);
    assert_eq!(nf, el("1 - z1' z1 - z2' z2 - z3' z3"));
    assert!(reduce::normal_form(&el("r2 - 1"), &g.s7.ideal).is_zero());
    assert!(reduce::normal_form(&el("alpha' alpha + beta' beta + x^2 - 1"), &g.s7.ideal).is_zero());
    assert!(reduce::normal_form(&el("t1 + t2 + t3 + t4 - 1"), &g.s7.ideal).is_zero());
}

#[test]
fn bounded_membership_oracles() {
    let spec = common::geometry().c4().clone();
    let sphere = IdealSpec::new(&spec, vec![el("r2 - 1")]).unwrap().with_max_degree(4);
    assert!(reduce::member_bounded(&el("z1 - z1"), &sphere).unwrap());
    assert!(!reduce::member_bounded(&el("z1"), &sphere).unwrap());
    assert!(reduce::member_bounded(&el("z2 r2 z3' - z2 z3'"), &sphere).unwrap());
}

#[test]
fn linear_completion() {
    let spec = common::geometry().c4().clone();
    let ideal = reduce::groebner(&IdealSpec::new(&spec, vec![el("z1 - z2"), el("z2 - z3")]).unwrap()).unwrap();
    assert!(reduce::normal_form(&el("z1 - z3"), &ideal).is_zero());
    assert!(reduce::groebner(&IdealSpec::new(&spec, vec![]).unwrap()).unwrap().relations.is_empty());
}

#[test]
fn differentials() {
    let c = c4();
    assert_eq!(c.parse("d(z1)").unwrap().to_string(), "d(z1)");
    assert_eq!(c.parse("d(z1 z2)").unwrap(), c.parse("z2 d(z1) + z1 d(z2)").unwrap());
    let Value::Form(f) = c.parse("d(z1) d(z3) + mu^-1 d(z3) d(z1)").unwrap() else { panic!() };
    assert!(f.is_zero());
    let Value::Form(f) = c.parse("d(z1) d(z1)").unwrap() else { panic!() };
    assert!(f.is_zero());
    assert_eq!(c.parse("z1 d(z2) d(z3)").unwrap(), c.parse("(z1 d(z2)) d(z3)").unwrap());
    let Value::Form(f) = c.parse("d(z1) d(z2) + d(z1) d(z3')").unwrap() else { panic!() };
    let parts = f.bidegree_split();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![(1, 1), (2, 0)]);
}

#[test]
fn sphere_relation_is_closed() {
    let g = common::geometry();
    let dr = g.s7_calc.d_elem(&geom::r2(g.c4()));
    assert!(g.s7_calc.apply_syzygies(&dr).reduce_coeffs(&g.s7.ideal).is_zero());
}

#[test]
fn quaternionic_structure() {
    let j = geom::apply_j;
    assert_eq!(j(&el("z1")), el("-z2'"));
    assert_eq!(j(&j(&el("z3"))), el("-z3"));
    assert_eq!(j(&el("x2")), el("mu y2'"));
    assert_eq!(j(&el("x1")), el("-x1"));
    assert_eq!(j(&el("2 (t1 + t2 - 1)")), el("2 (t1 + t2 - 1)"));
}

#[test]
fn corrected_twistor_table() {
    // J is an antilinear algebra map, so J(z1 z4') = (-z2')(z3) = -mu^-1 z3 z2'
    let j = geom::apply_j;
    for (g, image) in [
        ("x3", "-mu^-1 y3'"),
        ("x3'", "-mu y3"),
        ("y2", "mu x2'"),
        ("y3", "-mu^-1 x3'"),
        ("y2'", "mu^-1 x2"),
        ("y3'", "-mu x3"),
        ("x2'", "mu^-1 y2"),
        ("y1", "-y1"),
    ] {
        assert_eq!(j(&el(g)), el(image), "J({g})");
    }
}

#[test]
fn su2_invariants() {
    let su2 = geom::Su2::new(false);
    let g = Geometry::new(false);
    assert!(su2.invariant(&g.el("alpha")));
    assert!(su2.invariant(&g.el("x")));
    assert!(!su2.invariant(&el("z1")));
}

#[test]
fn tautological_monad() {
    let md = adhm::build_monad(&MonadConfig::new(1, Mode::Tautological)).unwrap();
    let c = ParseContext::plain("m", &md.spec);
    let z = |s: &str| c.parse_element(s).unwrap();
    assert_eq!(md.sigma, vec![vec![z("z1")], vec![z("z2")], vec![z("z3")], vec![z("z4")]]);
    assert_eq!(md.tau, vec![vec![z("-z2"), z("z1"), z("-z4"), z("z3")]]);
    assert!(matrix::mul(&md.tau, &md.sigma)[0][0].is_zero());
    assert_eq!(md.rho2[0][0], geom::r2(&md.spec));
}

#[test]
fn symbolic_monad_sizes() {
    let md = adhm::build_monad(&MonadConfig::new(2, Mode::Symbolic)).unwrap();
    assert_eq!(md.parameter_generators(), 48);
    assert_eq!(adhm::parameter_count(1), 5);
    assert_eq!(adhm::parameter_count(2), 13);
    assert_eq!(adhm::parameter_count(10), 77);
}

#[test]
fn gauge_oracles() {
    let md = adhm::build_monad(&MonadConfig::new(1, Mode::Tautological)).unwrap();
    let pr = adhm::adhm_projector(&md).unwrap();
    let two = vec![vec![Rat::int(2)]];
    assert!(adhm::gauge_b(&md, &pr, &two, "2").unwrap().iter().all(|c| c.passed()));
    let id = adhm::quaternionic_permutation(&[0, 1], &[0, 0]);
    assert!(adhm::gauge_a(&md, &pr, &id, "1").unwrap().iter().all(|c| c.passed()));
    let swap = adhm::quaternionic_permutation(&[1, 0], &[0, 0]);
    assert!(adhm::gauge_a(&md, &pr, &swap, "swap").unwrap().iter().all(|c| c.passed()));
}

#[test]
fn charge_one_phases() {
    assert_eq!(adhm::moduli_phase(0, 2, 0, 2), 0);
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(adhm::moduli_phase(a, b, a, b), 0);
        }
    }
    let qg = theta_adhm::qsym::QuantumGroup::new(false);
    let m1: Vec<String> = qg.a.iter().map(|r| r[0].to_string()).collect();
    assert_eq!(m1, ["a1", "a2", "c1", "c2"]);
}

#[test]
fn scalar_rules() {
    let s = Scalar::mu().add(&Scalar::int(1).neg());
    assert_eq!(s.conj().conj(), s);
    assert_eq!(Scalar::mu().mul(&Scalar::mu_pow(-1)), Scalar::one());
    assert_eq!(s.specialize(), Scalar::zero());
}
