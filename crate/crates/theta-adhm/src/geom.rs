//! The coordinate algebras of C⁴, S⁷, S⁴ and CP³ in their deformed form,
//! the quaternionic map J, and the basic instanton.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{curvature, d_matrix, fmat_adjoint, fmat_mul, to_forms, Calculus, Form, FormMatrix, Syzygy};
use crate::matrix::{self, Mat};
use crate::reduce::{groebner, normal_form, IdealSpec, MonomialOrder};
use crate::report::{brief, timed, Check};
use crate::scalar::Scalar;
use crate::twistalg::{sum, AlgebraBuilder, AlgebraSpec, Element};

/// `eta_jl = mu^ETA[j][l]` on the coordinates z₁..z₄.
pub const ETA: [[i32; 4]; 4] = [[0, 0, -1, 1], [0, 0, 1, -1], [1, -1, 0, 0], [-1, 1, 0, 0]];

pub const Z: [&str; 4] = ["z1", "z2", "z3", "z4"];
pub const ZS: [&str; 4] = ["z1'", "z2'", "z3'", "z4'"];

/// Adds z₁..z₄, z₁*..z₄* with the standard phases; returns both blocks.
pub fn add_c4(b: &mut AlgebraBuilder) -> (Vec<usize>, Vec<usize>) {
    let (z, zs) = b.complex_block(&Z, 1, 1);
    for j in 0..4 {
        for l in 0..4 {
            if j < l {
                b.phase(z[j], z[l], ETA[j][l]);
            }
            if j != l {
                b.phase(z[j], zs[l], ETA[l][j]);
            }
        }
    }
    (z, zs)
}

pub fn c4_spec() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("C4");
    add_c4(&mut b);
    b.build().expect("standard presentation is consistent")
}

fn maybe_classical(spec: AlgebraSpec, theta_zero: bool) -> Arc<AlgebraSpec> {
    let a = Arc::new(spec);
    if theta_zero {
        a.classical_twin()
    } else {
        a
    }
}

pub fn z(spec: &Arc<AlgebraSpec>, j: usize) -> Element {
    Element::var(spec, Z[j - 1])
}

pub fn zs(spec: &Arc<AlgebraSpec>, j: usize) -> Element {
    Element::var(spec, ZS[j - 1])
}

/// `r² = Σ z_j* z_j`.
pub fn r2(spec: &Arc<AlgebraSpec>) -> Element {
    let t: Vec<Element> = (1..=4).map(|j| &zs(spec, j) * &z(spec, j)).collect();
    sum(spec, t.iter())
}

/// The distinguished generators of S⁴ and CP³, expanded in the z's.
pub fn distinguished(spec: &Arc<AlgebraSpec>) -> BTreeMap<String, Element> {
    let q = |j: usize, l: usize| &z(spec, j) * &zs(spec, l);
    let two = Scalar::int(2);
    let mut m = BTreeMap::new();
    let alpha = (&q(1, 3) + &(&zs(spec, 2) * &z(spec, 4))).scale(&two);
    let beta = (&q(2, 3) - &(&zs(spec, 1) * &z(spec, 4))).scale(&two);
    let x = &(&q(1, 1) + &q(2, 2)) - &(&q(3, 3) + &q(4, 4));
    m.insert("alpha".into(), alpha);
    m.insert("beta".into(), beta);
    m.insert("x".into(), x);
    m.insert("r2".into(), r2(spec));
    for j in 1..=4 {
        m.insert(format!("t{j}"), q(j, j));
    }
    m.insert("x1".into(), q(1, 2));
    m.insert("x2".into(), q(1, 3));
    m.insert("x3".into(), q(1, 4));
    m.insert("y1".into(), q(3, 4));
    m.insert("y2".into(), q(2, 4));
    m.insert("y3".into(), q(2, 3));
    let extra: Vec<(String, Element)> = m
        .iter()
        .filter(|(k, _)| !["x", "r2", "t1", "t2", "t3", "t4"].contains(&k.as_str()))
        .map(|(k, v)| (format!("{k}'"), v.star()))
        .collect();
    m.extend(extra);
    for j in 1..=4 {
        for l in 1..=4 {
            m.insert(format!("Q{j}{l}"), q(j, l));
        }
    }
    m
}

/// Presentation of S⁴ on α, β, α*, β*, x with its own phases.
pub fn s4_spec() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("S4");
    let (ab, abs) = b.complex_block(&["alpha", "beta"], 0, 1);
    b.real("x", 0, 1);
    b.phase(ab[0], ab[1], 2).phase(ab[0], abs[1], -2);
    b.build().expect("S4 presentation is consistent")
}

/// Quotient algebra with its completed ideal and named elements.
#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    pub name: String,
    pub spec: Arc<AlgebraSpec>,
    pub ideal: IdealSpec,
    pub elements: BTreeMap<String, Element>,
}

pub fn sphere_order(spec: &AlgebraSpec) -> MonomialOrder {
    let top: Vec<usize> = ["z4'", "z4"].iter().filter_map(|n| spec.lookup(n)).collect();
    MonomialOrder::with_priority(spec, &top)
}

/// All standard algebras plus the localised C⁴ carrying `R = r⁻²`.
#[derive(Clone, Debug)]
pub struct Geometry {
    pub theta_zero: bool,
    pub c4: NamedAlgebra,
    pub s7: NamedAlgebra,
    pub s4: NamedAlgebra,
    pub cp3: NamedAlgebra,
    /// Calculus on C⁴ with `d(r²) = 0` imposed as a syzygy.
    pub s7_calc: Calculus,
    pub c4r: NamedAlgebra,
    pub c4r_calc: Calculus,
}

impl Geometry {
    pub fn new(theta_zero: bool) -> Geometry {
        let c4 = maybe_classical(c4_spec(), theta_zero);
        let els = distinguished(&c4);
        let empty = IdealSpec::new(&c4, vec![]).expect("empty ideal");
        let s7_ideal = groebner(
            &IdealSpec::new(&c4, vec![&r2(&c4) - &Element::one(&c4)])
                .expect("sphere relation")
                .with_order(sphere_order(&c4)),
        )
        .expect("sphere ideal completes");
        let c4n = NamedAlgebra { name: "C4".into(), spec: c4.clone(), ideal: empty, elements: els.clone() };
        let s7 = NamedAlgebra { name: "S7".into(), spec: c4.clone(), ideal: s7_ideal.clone(), elements: els.clone() };
        let cp3_els: BTreeMap<String, Element> = els
            .iter()
            .filter(|(k, _)| k.starts_with('t') || k.starts_with('x') || k.starts_with('y') || k.starts_with('Q'))
            .filter(|(k, _)| k.as_str() != "x")
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        let cp3 = NamedAlgebra { name: "CP3".into(), spec: c4.clone(), ideal: s7_ideal, elements: cp3_els };

        let s4s = maybe_classical(s4_spec(), theta_zero);
        let v = |n: &str| Element::var(&s4s, n);
        let s4rel = &(&(&(&v("alpha'") * &v("alpha")) + &(&v("beta'") * &v("beta"))) + &(&v("x") * &v("x")))
            - &Element::one(&s4s);
        let s4_ideal = groebner(&IdealSpec::new(&s4s, vec![s4rel]).expect("S4 relation")).expect("S4 ideal completes");
        let s4_els = ["alpha", "beta", "alpha'", "beta'", "x"].iter().map(|n| (n.to_string(), v(n))).collect();
        let s4 = NamedAlgebra { name: "S4".into(), spec: s4s, ideal: s4_ideal, elements: s4_els };

        let mut s7_calc = Calculus::standard(&c4);
        let dr2 = s7_calc.d_elem(&r2(&c4));
        let z4s = c4.lookup("z4'").expect("z4'");
        let dz4 = s7_calc.space().diff_of(c4.lookup("z4").expect("z4")).expect("dz4");
        let lhs = Form::differential(s7_calc.space(), dz4).lmul(&zs(&c4, 4));
        s7_calc.add_syzygy(Syzygy { coeff_gen: z4s, diff: dz4, replacement: lhs.sub(&dr2) });

        let mut b = AlgebraBuilder::new("C4[R]");
        add_c4(&mut b);
        b.real("R", 0, 0);
        let c4r = maybe_classical(b.build().expect("C4[R] presentation"), theta_zero);
        let rr = Element::var(&c4r, "R");
        let c4r_ideal = groebner(
            &IdealSpec::new(&c4r, vec![&(&rr * &r2(&c4r)) - &Element::one(&c4r)])
                .expect("inverse relation")
                .with_order(sphere_order(&c4r)),
        )
        .expect("localisation completes");
        let mut c4r_calc = Calculus::standard(&c4r);
        let d_r2 = c4r_calc.d_elem(&r2(&c4r));
        c4r_calc.set_derived(c4r.lookup("R").expect("R"), d_r2.lmul(&(&rr * &rr)).neg());
        let mut c4r_els = distinguished(&c4r);
        c4r_els.insert("R".into(), rr);
        let c4r_n = NamedAlgebra { name: "C4[R]".into(), spec: c4r, ideal: c4r_ideal, elements: c4r_els };

        Geometry { theta_zero, c4: c4n, s7, s4, cp3, s7_calc, c4r: c4r_n, c4r_calc }
    }

    pub fn c4(&self) -> &Arc<AlgebraSpec> {
        &self.c4.spec
    }

    pub fn el(&self, name: &str) -> Element {
        self.s7.elements[name].clone()
    }

    /// Named algebras keyed by their CLI names.
    pub fn standard_algebras(&self) -> BTreeMap<String, NamedAlgebra> {
        [&self.c4, &self.s7, &self.s4, &self.cp3]
            .into_iter()
            .map(|a| (a.name.clone(), a.clone()))
            .collect()
    }
}

/// Images of z₁..z₄ under J.
fn j_image(spec: &Arc<AlgebraSpec>, j: usize) -> Element {
    match j {
        1 => zs(spec, 2).neg(),
        2 => zs(spec, 1),
        3 => zs(spec, 4).neg(),
        _ => zs(spec, 3),
    }
}

/// J as the linear *-algebra map with J(z₁,z₂,z₃,z₄) = (−z₂*, z₁*, −z₄*, z₃*)
/// acting on the coordinate factor; every other generator is fixed.
pub fn apply_j(a: &Element) -> Element {
    let spec = a.spec();
    let mut images: Vec<Element> = (0..spec.len()).map(|g| Element::generator(spec, g)).collect();
    for j in 1..=4 {
        if let (Some(g), Some(gs)) = (spec.lookup(Z[j - 1]), spec.lookup(ZS[j - 1])) {
            let im = j_image(spec, j);
            images[gs] = im.star();
            images[g] = im;
        }
    }
    a.substitute(spec, &images)
}

/// Ψ = (ψ₁ Jψ₁) as a 4×2 matrix.
pub fn psi(spec: &Arc<AlgebraSpec>) -> Mat {
    (1..=4).map(|j| vec![z(spec, j), j_image(spec, j)]).collect()
}

pub struct InstantonData {
    pub psi: Mat,
    pub q: Mat,
    pub omega: FormMatrix,
}

/// Ψ, q = ΨΨ* and ω = ½(Ψ* dΨ − dΨ* Ψ).
pub fn basic_instanton(g: &Geometry) -> InstantonData {
    let spec = g.c4();
    let p = psi(spec);
    let ps = matrix::adjoint(&p);
    let q = matrix::mul(&p, &ps);
    let calc = &g.s7_calc;
    let sp = calc.space();
    let a = fmat_mul(&to_forms(sp, &ps), &d_matrix(calc, &p));
    let b = fmat_mul(&d_matrix(calc, &ps), &to_forms(sp, &p));
    let half = Scalar::rat(1, 2);
    let omega = (0..2)
        .map(|i| (0..2).map(|j| a[i][j].sub(&b[i][j]).scale(&half)).collect())
        .collect();
    InstantonData { psi: p, q, omega }
}

/// The displayed projector ½[[1+x,0,α,−μ̄β*],[0,1+x,β,μα*],[α*,β*,1−x,0],[−μβ,μ̄α,0,1−x]]
/// with `1` replaced by `one` (r² for the normalised version).
pub fn q_display(spec: &Arc<AlgebraSpec>, one: &Element) -> Mat {
    let d = distinguished(spec);
    let (a, b, x) = (&d["alpha"], &d["beta"], &d["x"]);
    let zero = Element::zero(spec);
    let mu = Scalar::mu();
    let mub = Scalar::mu_pow(-1);
    let p = one + x;
    let m = one - x;
    let rows = vec![
        vec![p.clone(), zero.clone(), a.clone(), b.star().scale(&mub).neg()],
        vec![zero.clone(), p, b.clone(), a.star().scale(&mu)],
        vec![a.star(), b.star(), m.clone(), zero.clone()],
        vec![b.scale(&mu).neg(), a.scale(&mub), zero, m],
    ];
    matrix::scale(&rows, &Scalar::rat(1, 2))
}

fn mat_zero_check(name: &str, m: &Mat, ideal: &IdealSpec) -> Check {
    timed(name, || {
        let r = matrix::reduce(m, ideal);
        match matrix::first_nonzero(&r) {
            None => (true, "zero remainder".into()),
            Some((i, j, e)) => (false, format!("entry ({},{}) remainder {}", i + 1, j + 1, brief(e))),
        }
    })
}

fn elem_zero_check(name: &str, e: &Element, ideal: &IdealSpec) -> Check {
    timed(name, || {
        let r = normal_form(e, ideal);
        if r.is_zero() {
            (true, "zero remainder".into())
        } else {
            (false, format!("remainder {}", brief(&r)))
        }
    })
}

fn form_zero(f: &Form) -> (bool, String) {
    if f.is_zero() {
        (true, "zero".into())
    } else {
        (false, format!("nonzero: {}", brief(f)))
    }
}

/// Projector, trace, isometry and one-form identities of the basic
/// instanton, modulo the S⁷ ideal.
pub fn basic_checks(g: &Geometry) -> Vec<Check> {
    let spec = g.c4();
    let ideal = &g.s7.ideal;
    let bound = ideal.max_degree.unwrap_or(0);
    let data = basic_instanton(g);
    let mut out = Vec::new();
    let ps = matrix::adjoint(&data.psi);
    out.push(mat_zero_check(
        "Psi* Psi = I2",
        &matrix::sub(&matrix::mul(&ps, &data.psi), &matrix::identity(spec, 2)),
        ideal,
    ));
    let q = &data.q;
    out.push(mat_zero_check("q^2 = q", &matrix::sub(&matrix::mul(q, q), q), ideal));
    out.push(timed("q* = q", || {
        let d = matrix::sub(&matrix::adjoint(q), q);
        (matrix::is_zero(&d), "exact in the ambient algebra".into())
    }));
    out.push(elem_zero_check("Tr q = 2", &(&matrix::trace(q) - &Element::int(spec, 2)), ideal));
    out.push(mat_zero_check("q matches displayed matrix", &matrix::sub(q, &q_display(spec, &Element::one(spec))), ideal));
    let calc = &g.s7_calc;
    let om = &data.omega;
    out.push(timed("omega anti-hermitian", || {
        let adj = fmat_adjoint(om);
        for i in 0..2 {
            for j in 0..2 {
                let s = calc.apply_syzygies(&om[i][j].add(&adj[i][j]).reduce_coeffs(ideal));
                if !s.is_zero() {
                    return (false, format!("entry ({},{}): {}", i + 1, j + 1, brief(&s)));
                }
            }
        }
        (true, "omega + omega* = 0".into())
    }));
    out.push(timed("omega traceless", || {
        form_zero(&calc.apply_syzygies(&om[0][0].add(&om[1][1]).reduce_coeffs(ideal)))
    }));
    out.push(timed("q = Q + J(Q)", || {
        let p1 = matrix::column(&data.psi, 0);
        let qq = matrix::mul(&p1, &matrix::adjoint(&p1));
        let jq = matrix::map(&qq, apply_j);
        let d = matrix::sub(q, &matrix::add(&qq, &jq));
        match matrix::first_nonzero(&d) {
            None => (true, "exact".into()),
            Some((i, j, e)) => (false, format!("entry ({},{}) = {}", i + 1, j + 1, brief(e))),
        }
    }));
    out.push(timed("d(r^2) = 0 over S7", || {
        form_zero(&calc.apply_syzygies(&calc.d_elem(&r2(spec)).reduce_coeffs(ideal)))
    }));
    for c in out.iter_mut() {
        c.degree_bound = Some(bound);
    }
    out
}

/// An entry of the J-table: generator name, its image as printed, and the
/// image computed from the z-expansion.
pub struct JEntry {
    pub name: &'static str,
    pub printed: Element,
    pub computed: Element,
}

pub fn j_table(g: &Geometry) -> Vec<JEntry> {
    let spec = g.c4();
    let e = |n: &str| g.el(n);
    let mu = Scalar::mu();
    let mub = Scalar::mu_pow(-1);
    let printed: Vec<(&'static str, Element)> = vec![
        ("t1", e("t2")),
        ("t2", e("t1")),
        ("t3", e("t4")),
        ("t4", e("t3")),
        ("x1", e("x1").neg()),
        ("y1", e("y1").neg()),
        ("x1'", e("x1'").neg()),
        ("y1'", e("y1'").neg()),
        ("x2", e("y2'").scale(&mu)),
        ("x3", e("y3'").neg()),
        ("x2'", e("y2").scale(&mub)),
        ("x3'", e("y3").neg()),
        ("y2", e("x2'").scale(&mub)),
        ("y3", e("x3'").neg()),
        ("y2'", e("x2").scale(&mu)),
        ("y3'", e("x3").neg()),
    ];
    let _ = spec;
    printed
        .into_iter()
        .map(|(name, p)| JEntry { name, computed: apply_j(&e(name)), printed: p })
        .collect()
}

/// Images of x, α, β as printed and in corrected form.
pub fn twistor_images(g: &Geometry) -> [(&'static str, Element, Element, Element); 3] {
    let e = |n: &str| g.el(n);
    let spec = g.c4();
    let two = Scalar::int(2);
    let one = Element::one(spec);
    let t12 = &e("t1") + &e("t2");
    let x_printed = (&t12 - &one).scale(&two);
    let x_fixed = &t12.scale(&two) - &one;
    let a_img = (&e("x2") + &e("y2'").scale(&Scalar::mu())).scale(&two);
    let b_printed = (&e("y3") - &e("x3'")).scale(&two);
    let b_fixed = (&e("y3") - &e("x3'").scale(&Scalar::mu_pow(-1))).scale(&two);
    [
        ("x", e("x"), x_printed, x_fixed),
        ("alpha", e("alpha"), a_img.clone(), a_img),
        ("beta", e("beta"), b_printed, b_fixed),
    ]
}

fn s4_relation(alpha: &Element, beta: &Element, x: &Element) -> Element {
    let spec = alpha.spec().clone();
    &(&(&(&alpha.star() * alpha) + &(&beta.star() * beta)) + &(x * x)) - &Element::one(&spec)
}

/// Generator-level consistency of J with the C⁴ phases.
pub fn j_respects_relations(spec: &Arc<AlgebraSpec>) -> Result<(), String> {
    let n = spec.len();
    for g in 0..n {
        for h in 0..n {
            let (a, b) = (apply_j(&Element::generator(spec, g)), apply_j(&Element::generator(spec, h)));
            let lhs = &a * &b;
            let rhs = (&b * &a).scale(&Scalar::mu_pow(spec.exp(g, h)));
            if lhs != rhs {
                return Err(format!("{} {}", spec.gen_name(g), spec.gen_name(h)));
            }
        }
    }
    Ok(())
}

pub fn twistor_checks(g: &Geometry) -> Vec<Check> {
    let spec = g.c4().clone();
    let ideal = &g.s7.ideal;
    let mut out = Vec::new();
    out.push(timed("J respects the C4 relations", || match j_respects_relations(&spec) {
        Ok(()) => (true, "all generator pairs".into()),
        Err(p) => (false, format!("fails on {p}")),
    }));
    for ent in j_table(g) {
        let ok = ent.printed == ent.computed;
        let detail = if ok {
            format!("J({}) = {}", ent.name, brief(&ent.printed))
        } else {
            format!("printed {} but J({}) = {}", brief(&ent.printed), ent.name, brief(&ent.computed))
        };
        out.push(Check::new(format!("J-table {}", ent.name), ok, detail));
    }
    out.push(timed("J^2 = -1 on C4 generators", || {
        for gidx in 0..spec.len() {
            let e = Element::generator(&spec, gidx);
            if apply_j(&apply_j(&e)) != e.neg() {
                return (false, format!("fails on {}", spec.gen_name(gidx)));
            }
        }
        (true, "8 generators".into())
    }));
    out.push(timed("J(x1) = -x1 so x1 is not J-fixed", || {
        let x1 = g.el("x1");
        (apply_j(&x1) == x1.neg(), "x1 is J-odd".into())
    }));
    for (name, target, printed, fixed) in twistor_images(g) {
        out.push(elem_zero_check(&format!("image of {name} as printed"), &(&printed - &target), ideal));
        if printed != fixed {
            out.push(elem_zero_check(&format!("image of {name} corrected"), &(&fixed - &target), ideal));
        }
        out.push(timed(&format!("image of {name} as printed is J-fixed"), || {
            (apply_j(&printed) == printed, brief(&(&apply_j(&printed) - &printed)))
        }));
        if printed != fixed {
            out.push(timed(&format!("image of {name} corrected is J-fixed"), || {
                (apply_j(&fixed) == fixed, brief(&(&apply_j(&fixed) - &fixed)))
            }));
        }
    }
    let imgs = twistor_images(g);
    let e = |n: &str| g.el(n);
    out.push(elem_zero_check("S4 relation in S7", &s4_relation(&e("alpha"), &e("beta"), &e("x")), ideal));
    out.push(elem_zero_check(
        "S4 relation on printed CP3 images",
        &s4_relation(&imgs[1].2, &imgs[2].2, &imgs[0].2),
        ideal,
    ));
    out.push(elem_zero_check(
        "S4 relation on corrected CP3 images",
        &s4_relation(&imgs[1].3, &imgs[2].3, &imgs[0].3),
        ideal,
    ));
    out.push(timed("alpha beta = lambda beta alpha", || {
        let d = &(&e("alpha") * &e("beta")) - &(&e("beta") * &e("alpha")).scale(&Scalar::lambda());
        (d.is_zero(), "ambient identity".into())
    }));
    out.push(timed("CP3 generators are U(1)-invariant", || {
        for (k, v) in &g.cp3.elements {
            if v.z_balance() != crate::twistalg::ZBalance::Homogeneous(0) {
                return (false, format!("{k} has z-balance {:?}", v.z_balance()));
            }
        }
        (true, format!("{} elements", g.cp3.elements.len()))
    }));
    out.push(timed("Tr Q = 1 in S7", || {
        let t = &(&(&(&e("t1") + &e("t2")) + &e("t3")) + &e("t4")) - &Element::one(&spec);
        let r = normal_form(&t, ideal);
        (r.is_zero(), brief(&r))
    }));
    let su2 = Su2::new(g.theta_zero);
    for n in ["alpha", "beta", "x"] {
        out.push(timed(&format!("SU(2)-invariance of {n}"), || (su2.invariant(&e(n)), String::new())));
    }
    out.push(timed("z1 is not SU(2)-invariant", || (!su2.invariant(&z(&spec, 1)), String::new())));
    out
}

/// Right SU(2)-action by central parameters w₁, w₂ with w₁w₁* + w₂w₂* = 1.
pub struct Su2 {
    spec: Arc<AlgebraSpec>,
    ideal: IdealSpec,
    images: Vec<Element>,
}

impl Su2 {
    pub fn new(theta_zero: bool) -> Su2 {
        let mut b = AlgebraBuilder::new("C4 x SU(2)");
        add_c4(&mut b);
        b.complex_block(&["w1", "w2"], 0, 1);
        let spec = maybe_classical(b.build().expect("C4 x SU(2) presentation"), theta_zero);
        let v = |n: &str| Element::var(&spec, n);
        let unit = &(&(&v("w1") * &v("w1'")) + &(&v("w2") * &v("w2'"))) - &Element::one(&spec);
        let ideal = groebner(&IdealSpec::new(&spec, vec![unit]).expect("unitarity")).expect("unitarity completes");
        let mut images: Vec<Element> = (0..spec.len()).map(|g| Element::generator(&spec, g)).collect();
        // (z1, z2*) and (z3, z4*) transform as row vectors under w
        for (a, bs) in [("z1", "z2'"), ("z3", "z4'")] {
            let ia = &(&v(a) * &v("w1")) + &(&v(bs) * &v("w2"));
            let ib = &(&v(bs) * &v("w1'")) - &(&v(a) * &v("w2'"));
            let ga = spec.lookup(a).expect("generator");
            let gb = spec.lookup(bs).expect("generator");
            images[spec.star_of(ga)] = ia.star();
            images[spec.star_of(gb)] = ib.star();
            images[ga] = ia;
            images[gb] = ib;
        }
        Su2 { spec, ideal, images }
    }

    /// True iff the transformed element equals the original modulo unitarity.
    pub fn invariant(&self, a: &Element) -> bool {
        let e = a.embed(&self.spec).expect("coordinates embed");
        let t = e.substitute(&self.spec, &self.images);
        normal_form(&(&t - &e), &self.ideal).is_zero()
    }
}

/// Bidegree test of `P (dP)²` for P = 1 − q_N and the negative control for
/// q_N itself, with q_N = r⁻² ΨΨ* over C⁴ with `R = r⁻²` adjoined.
pub fn asd_checks(g: &Geometry) -> Vec<Check> {
    let spec = g.c4r.spec.clone();
    let ideal = &g.c4r.ideal;
    let calc = &g.c4r_calc;
    let rr = g.c4r.elements["R"].clone();
    let p = psi(&spec);
    let qn = matrix::lmul(&rr, &matrix::mul(&p, &matrix::adjoint(&p)));
    let pn = matrix::sub(&matrix::identity(&spec, 4), &qn);
    let bound = ideal.max_degree.unwrap_or(0);
    let mut out = Vec::new();
    let mixed = |f: &FormMatrix| -> Vec<String> {
        let mut bad = Vec::new();
        for (i, row) in f.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                for ((pd, qd), part) in e.bidegree_split() {
                    if pd != qd && !part.is_zero() {
                        bad.push(format!("({},{}) has ({},{}) part with {} terms", i + 1, j + 1, pd, qd, part.len()));
                    }
                }
            }
        }
        bad
    };
    out.push(timed("curvature of 1 - q is of type (1,1)", || match curvature(calc, &pn, ideal) {
        Ok(f) => {
            let bad = mixed(&f);
            let nonzero = f.iter().flatten().filter(|e| !e.is_zero()).count();
            if bad.is_empty() {
                (nonzero > 0, format!("{nonzero} nonzero entries, all of type (1,1)"))
            } else {
                (false, bad.join("; "))
            }
        }
        Err(e) => (false, e.to_string()),
    }));
    out.push(timed("curvature of q has a (2,0) or (0,2) part", || match curvature(calc, &qn, ideal) {
        Ok(f) => {
            let bad = mixed(&f);
            (!bad.is_empty(), bad.first().cloned().unwrap_or_else(|| "pure (1,1)".into()))
        }
        Err(e) => (false, e.to_string()),
    }));
    out.push(timed("curvature of the identity vanishes", || match curvature(calc, &matrix::identity(&spec, 4), ideal) {
        Ok(f) => (f.iter().flatten().all(Form::is_zero), "d(1) = 0".into()),
        Err(e) => (false, e.to_string()),
    }));
    out.push(timed("curvature rejects a non-projector", || {
        let twice = matrix::scale(&qn, &Scalar::int(2));
        (curvature(calc, &twice, ideal).is_err(), "2q is not idempotent".into())
    }));
    for c in out.iter_mut() {
        c.degree_bound = Some(bound);
    }
    out
}
