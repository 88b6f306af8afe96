//! Seeded random elements and the property battery shared by the
//! property tests and the acceptance run.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use theta_adhm::dga::{Calculus, Form};
use theta_adhm::geom::Geometry;
use theta_adhm::reduce::{self, IdealSpec};
use theta_adhm::scalar::{GaussRat, Rat, Scalar};
use theta_adhm::twistalg::{AlgebraSpec, Element};

pub fn geometry() -> &'static Geometry {
    static G: OnceLock<Geometry> = OnceLock::new();
    G.get_or_init(|| Geometry::new(false))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(r: &mut ChaCha8Rng) -> Scalar {
    let mut n = r.gen_range(-3i64..=3);
    if n == 0 {
        n = 1;
    }
    let c = match r.gen_range(0..4) {
        0 => GaussRat::int(n),
        1 => GaussRat::real(Rat::new(n, r.gen_range(2..=5))),
        2 => GaussRat::new(Rat::int(n), Rat::int(r.gen_range(-2..=2))),
        _ => GaussRat::int(n),
    };
    Scalar::term(r.gen_range(-2..=2), c)
}

/// Up to `terms` monomials of degree at most `deg`.
pub fn element(r: &mut ChaCha8Rng, spec: &Arc<AlgebraSpec>, terms: usize, deg: u32) -> Element {
    let mut out = Element::zero(spec);
    for _ in 0..r.gen_range(1..=terms) {
        let mut t = Element::constant(spec, scalar(r));
        for _ in 0..r.gen_range(0..=deg) {
            t = &t * &Element::generator(spec, r.gen_range(0..spec.len()));
        }
        out = &out + &t;
    }
    out
}

/// Sum of `a d(b)` and, at degree two, `a d(b) d(c)`.
pub fn form(r: &mut ChaCha8Rng, calc: &Calculus, degree: usize) -> Form {
    let spec = calc.spec().clone();
    let mut f = Form::zero(calc.space());
    for _ in 0..r.gen_range(1..=2) {
        let mut t = calc.form(&element(r, &spec, 2, 1));
        for _ in 0..degree {
            t = t.wedge(&calc.d_elem(&element(r, &spec, 2, 2)));
        }
        f = f.add(&t);
    }
    f
}

pub fn c4_calc() -> Calculus {
    Calculus::standard(geometry().c4())
}

pub fn associativity(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let spec = geometry().c4();
    let (a, b, c) = (element(&mut r, spec, 3, 2), element(&mut r, spec, 3, 2), element(&mut r, spec, 3, 2));
    let l = &(&a * &b) * &c;
    let rr = &a * &(&b * &c);
    (l == rr).then_some(()).ok_or_else(|| format!("(ab)c != a(bc) for a = {a}, b = {b}, c = {c}"))
}

pub fn star_anti_multiplicative(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let spec = geometry().c4();
    let (a, b) = (element(&mut r, spec, 3, 3), element(&mut r, spec, 3, 3));
    if (&a * &b).star() != &b.star() * &a.star() {
        return Err(format!("(ab)* != b* a* for a = {a}, b = {b}"));
    }
    (a.star().star() == a).then_some(()).ok_or_else(|| format!("a** != a for {a}"))
}

pub fn d_squared(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let calc = c4_calc();
    let p = r.gen_range(0..=1);
    let f = form(&mut r, &calc, p);
    let dd = calc.d(&calc.d(&f));
    dd.is_zero().then_some(()).ok_or_else(|| format!("d d({f}) = {dd}"))
}

pub fn graded_leibniz(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let calc = c4_calc();
    let (p, q) = (r.gen_range(0..=1), r.gen_range(0..=1));
    let (w, e) = (form(&mut r, &calc, p), form(&mut r, &calc, q));
    let lhs = calc.d(&w.wedge(&e));
    let second = w.wedge(&calc.d(&e));
    let rhs = calc.d(&w).wedge(&e).add(&if p % 2 == 0 { second } else { second.neg() });
    (lhs == rhs).then_some(()).ok_or_else(|| format!("Leibniz fails for {w} and {e}"))
}

pub fn reduction_idempotent(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let g = geometry();
    let ideal = if seed % 2 == 0 { &g.s7.ideal } else { &g.s4.ideal };
    let a = element(&mut r, &ideal.algebra, 4, 4);
    let once = reduce::normal_form(&a, ideal);
    let twice = reduce::normal_form(&once, ideal);
    if once != twice {
        return Err(format!("NF(NF(a)) != NF(a) for {a}"));
    }
    let res = reduce::reduce(&a, ideal);
    res.replay(&a, &ideal.relations).then_some(()).ok_or_else(|| format!("certificate does not replay for {a}"))
}

fn s4_generators() -> &'static IdealSpec {
    static I: OnceLock<IdealSpec> = OnceLock::new();
    I.get_or_init(|| {
        let g = geometry();
        let spec = &g.s4.spec;
        let v = |n: &str| Element::var(spec, n);
        let rel = &(&(&(&v("alpha'") * &v("alpha")) + &(&v("beta'") * &v("beta"))) + &(&v("x") * &v("x"))) - &Element::one(spec);
        IdealSpec::new(spec, vec![rel]).expect("S4 relation").with_max_degree(4)
    })
}

/// Bounded membership over the raw generator and the completed basis agree.
pub fn membership_agreement(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let g = geometry();
    let raw = s4_generators();
    let spec = &g.s4.spec;
    let mut a = &(&element(&mut r, spec, 2, 1) * &raw.relations[0]) * &element(&mut r, spec, 2, 1);
    if seed % 2 == 1 {
        a = &a + &element(&mut r, spec, 2, 2);
    }
    let bounded = reduce::member_bounded(&a, raw).map_err(|e| e.to_string())?;
    let nf = reduce::normal_form(&a, &g.s4.ideal).is_zero();
    (bounded == nf).then_some(()).ok_or_else(|| format!("bounded membership {bounded} but normal form zero {nf} for {a}"))
}

pub type Property = fn(u64) -> Result<(), String>;

pub const PROPERTIES: [(&str, Property); 6] = [
    ("associativity", associativity),
    ("star anti-multiplicativity", star_anti_multiplicative),
    ("d^2 = 0", d_squared),
    ("graded Leibniz", graded_leibniz),
    ("reduction idempotence", reduction_idempotent),
    ("bounded membership agrees with Groebner reduction", membership_agreement),
];
