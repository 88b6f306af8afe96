//! The quantum groups SL_θ(2,ℍ) and Sp_θ(2) at the level of relations, their
//! coaction on C⁴_θ, the coacted projector and the coacted charge-one family.

use std::sync::Arc;

use crate::adhm::{self, certify, exact_check, mat_equal, moduli_phase, moduli_relations, Member, MemberMat, Mode, MonadConfig, Sandwich};
use crate::dga::{d_matrix, fmat_adjoint, fmat_mul, to_forms, Calculus, FormMatrix};
use crate::geom::{self, add_c4, r2, ETA};
use crate::matrix::{self, Mat};
use crate::reduce::{CertTerm, IdealSpec};
use crate::report::{brief, timed, Check};
use crate::scalar::Scalar;
use crate::twistalg::{AlgebraBuilder, AlgebraError, AlgebraSpec, Element};

pub const BLOCK_NAMES: [&str; 8] = ["a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"];

/// Entry `(i, m)` of the defining matrix as (sign, generator, starred).
pub const DEFINING_MATRIX: [[(i8, usize, bool); 4]; 4] = [
    [(1, 0, false), (-1, 1, true), (1, 2, false), (-1, 3, true)],
    [(1, 1, false), (1, 0, true), (1, 3, false), (1, 2, true)],
    [(1, 4, false), (-1, 5, true), (1, 6, false), (-1, 7, true)],
    [(1, 5, false), (1, 4, true), (1, 7, false), (1, 6, true)],
];

fn gen_name(base: usize, starred: bool, suffix: &str) -> String {
    format!("{}{suffix}{}", BLOCK_NAMES[base], if starred { "'" } else { "" })
}

/// Adds one copy of the eight quaternionic-block generators with the phases
/// `A_im A_jl = η_ij η_lm A_jl A_im`.
pub fn add_quantum_group(b: &mut AlgebraBuilder, suffix: &str) -> Result<(), AlgebraError> {
    let names: Vec<String> = BLOCK_NAMES.iter().map(|n| format!("{n}{suffix}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let (g, gs) = b.complex_block(&refs, 0, 1);
    let idx = |(_, base, st): (i8, usize, bool)| if st { gs[base] } else { g[base] };
    for i in 0..4 {
        for m in 0..4 {
            for j in 0..4 {
                for l in 0..4 {
                    let (p, q) = (idx(DEFINING_MATRIX[i][m]), idx(DEFINING_MATRIX[j][l]));
                    let e = ETA[i][j] + ETA[l][m];
                    if p == q {
                        if e != 0 {
                            return Err(AlgebraError::Malformed(format!("{} must commute with itself", b_name(&names, p, &g, &gs))));
                        }
                    } else {
                        b.phase(p, q, e);
                    }
                }
            }
        }
    }
    Ok(())
}

fn b_name(names: &[String], p: usize, g: &[usize], gs: &[usize]) -> String {
    match g.iter().position(|&x| x == p) {
        Some(i) => names[i].clone(),
        None => format!("{}'", names[gs.iter().position(|&x| x == p).unwrap_or(0)]),
    }
}

pub fn quantum_group_spec() -> AlgebraSpec {
    let mut b = AlgebraBuilder::new("SL2H");
    add_quantum_group(&mut b, "").expect("quantum group phases are consistent");
    b.build().expect("quantum group phases are consistent")
}

/// The defining 4×4 matrix A over any algebra containing the block generators.
pub fn matrix_a(spec: &Arc<AlgebraSpec>, suffix: &str) -> Mat {
    DEFINING_MATRIX
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(s, base, st)| Element::var(spec, &gen_name(base, st, suffix)).scale(&Scalar::int(s as i64)))
                .collect()
        })
        .collect()
}

/// Entries of A*A − 1 followed by those of AA* − 1, row by row.
pub fn unitarity(a: &Mat) -> Vec<Element> {
    let spec = a[0][0].spec();
    let one = matrix::identity(spec, 4);
    let aa = matrix::adjoint(a);
    let m1 = matrix::sub(&matrix::mul(&aa, a), &one);
    let m2 = matrix::sub(&matrix::mul(a, &aa), &one);
    m1.into_iter().flatten().chain(m2.into_iter().flatten()).collect()
}

/// The Sp_θ(2) quotient as an ideal of the quantum-group algebra.
pub fn sp_ideal(spec: &Arc<AlgebraSpec>) -> IdealSpec {
    let mut rels: Vec<Element> = Vec::new();
    for r in unitarity(&matrix_a(spec, "")) {
        if !r.is_zero() && !rels.contains(&r) {
            rels.push(r);
        }
    }
    IdealSpec::new(spec, rels).expect("unitarity relations are nonzero").star_closure()
}

/// A(QG) ⊗ A(C⁴_θ) with a central self-adjoint `Rt` standing for Δ_L(r⁻²).
pub struct QuantumGroup {
    pub theta_zero: bool,
    pub qg: Arc<AlgebraSpec>,
    pub tensor: Arc<AlgebraSpec>,
    pub a: Mat,
    pub unitarity: Vec<Element>,
    images: Vec<Element>,
}

impl QuantumGroup {
    pub fn new(theta_zero: bool) -> QuantumGroup {
        let twin = |s: AlgebraSpec| {
            let s = Arc::new(s);
            if theta_zero {
                s.classical_twin()
            } else {
                s
            }
        };
        let qg = twin(quantum_group_spec());
        let mut b = AlgebraBuilder::new("SL2H(x)C4");
        add_quantum_group(&mut b, "").expect("quantum group phases are consistent");
        add_c4(&mut b);
        b.real("Rt", 0, 0);
        let tensor = twin(b.build().expect("tensor presentation is consistent"));
        let a = matrix_a(&tensor, "");
        let unitarity = unitarity(&a);
        let mut images: Vec<Element> = (0..tensor.len()).map(|g| Element::generator(&tensor, g)).collect();
        for i in 0..4 {
            let im = (0..4).fold(Element::zero(&tensor), |acc, j| &acc + &(&a[i][j] * &geom::z(&tensor, j + 1)));
            images[tensor.lookup(geom::ZS[i]).expect("z'")] = im.star();
            images[tensor.lookup(geom::Z[i]).expect("z")] = im;
        }
        QuantumGroup { theta_zero, qg, tensor, a, unitarity, images }
    }

    /// Δ_L on the coordinate factor; block generators and `Rt` are fixed.
    pub fn coact(&self, e: &Element) -> Element {
        e.substitute(&self.tensor, &self.images)
    }

    pub fn lift(&self, e: &Element) -> Element {
        e.embed(&self.tensor).expect("coordinate names exist in the tensor algebra")
    }

    fn unitarity_members(&self) -> MemberMat {
        (0..4).map(|i| (0..4).map(|j| Member::relation(&self.unitarity, 4 * i + j)).collect()).collect()
    }

    fn column_z(&self) -> Mat {
        (1..=4).map(|j| vec![geom::z(&self.tensor, j)]).collect()
    }
}

/// Every C⁴_θ relation `g h − μ^e h g` pushed through an algebra map.
fn relation_images(spec: &Arc<AlgebraSpec>, image: impl Fn(usize) -> Element) -> Result<usize, String> {
    let mut n = 0;
    for g in 0..spec.len() {
        for h in g + 1..spec.len() {
            let (x, y) = (image(g), image(h));
            let v = &(&x * &y) - &(&y * &x).scale(&Scalar::mu_pow(spec.exp(g, h)));
            if !v.is_zero() {
                return Err(format!("relation {} {} leaves {}", spec.gen_name(g), spec.gen_name(h), brief(&v)));
            }
            n += 1;
        }
    }
    Ok(n)
}

/// The coordinate algebra of the same deformation as `qg`.
fn c4_for(qg: &QuantumGroup) -> Arc<AlgebraSpec> {
    let c = Arc::new(geom::c4_spec());
    if qg.theta_zero {
        c.classical_twin()
    } else {
        c
    }
}

fn c4_images(qg: &QuantumGroup, c4: &Arc<AlgebraSpec>) -> Vec<Element> {
    (0..c4.len()).map(|g| qg.coact(&Element::var(&qg.tensor, c4.gen_name(g)))).collect()
}

/// Spec for A(QG)^{⊗n}: copies `_1`..`_n` commuting with each other.
fn copies(n: usize, theta_zero: bool) -> Arc<AlgebraSpec> {
    let mut b = AlgebraBuilder::new("SL2H^n");
    for c in 1..=n {
        add_quantum_group(&mut b, &format!("_{c}")).expect("quantum group phases are consistent");
    }
    let s = Arc::new(b.build().expect("copies are consistent"));
    if theta_zero {
        s.classical_twin()
    } else {
        s
    }
}

/// Bialgebra structure of SL_θ(2,ℍ): Δ respects the quaternionic form and the
/// relations, is coassociative and has counit ε(A) = 1.
pub fn check_bialgebra(qg: &QuantumGroup) -> Vec<Check> {
    let mut out = Vec::new();
    let qs = &qg.qg;
    out.push(timed("block generators commute within a block", || {
        for (k, blk) in BLOCK_NAMES.chunks(2).enumerate() {
            let mut gens = Vec::new();
            for n in blk {
                gens.push(qs.lookup(n).expect("block name"));
                gens.push(qs.lookup(&format!("{n}'")).expect("block name"));
            }
            for &g in &gens {
                for &h in &gens {
                    if qs.exp(g, h) != 0 {
                        return (false, format!("block {k}: {} and {}", qs.gen_name(g), qs.gen_name(h)));
                    }
                }
            }
        }
        (true, "all four blocks commutative".into())
    }));
    out.push(timed("phase table is antisymmetric and star-consistent", || {
        for g in 0..qs.len() {
            for h in 0..qs.len() {
                let (gs, hs) = (qs.star_of(g), qs.star_of(h));
                if qs.exp(g, h) != -qs.exp(h, g) || qs.exp(g, h) != qs.exp(gs, hs) {
                    return (false, format!("{} {}", qs.gen_name(g), qs.gen_name(h)));
                }
            }
        }
        (true, format!("{} generators", qs.len()))
    }));
    out.push(exact_check("A_im A_jl = eta_ij eta_lm A_jl A_im", || {
        let a = matrix_a(qs, "");
        quasi_commutation(&a, &a)
    }));
    let s2 = copies(2, qg.theta_zero);
    let s3 = copies(3, qg.theta_zero);
    let (x1, x2) = (matrix_a(&s2, "_1"), matrix_a(&s2, "_2"));
    let delta = matrix::mul(&x1, &x2);
    out.push(exact_check("coproduct respects the quaternionic form", || {
        for i in 0..4 {
            for m in 0..4 {
                let (s, base, st) = DEFINING_MATRIX[i][m];
                let (bi, bm) = home(base);
                let mut want = delta[bi][bm].clone();
                if st {
                    want = want.star();
                }
                if delta[i][m] != want.scale(&Scalar::int(s as i64)) {
                    return Err(format!("entry ({},{})", i + 1, m + 1));
                }
            }
        }
        Ok(())
    }));
    out.push(exact_check("coproduct is an algebra map", || quasi_commutation(&delta, &delta)));
    out.push(exact_check("coassociativity", || {
        let (y1, y2, y3) = (matrix_a(&s3, "_1"), matrix_a(&s3, "_2"), matrix_a(&s3, "_3"));
        mat_equal(&matrix::mul(&matrix::mul(&y1, &y2), &y3), &matrix::mul(&y1, &matrix::mul(&y2, &y3)))
    }));
    out.push(exact_check("counit", || {
        let images: Vec<Element> = (0..s2.len())
            .map(|g| {
                let n = s2.gen_name(g);
                if n.contains("_1") {
                    counit_value(&s2, n)
                } else {
                    Element::generator(&s2, g)
                }
            })
            .collect();
        let left = matrix::map(&delta, |e| e.substitute(&s2, &images));
        mat_equal(&left, &x2)
    }));
    out
}

/// Position of the unstarred, positively signed occurrence of a generator.
fn home(base: usize) -> (usize, usize) {
    for i in 0..4 {
        for m in 0..4 {
            if DEFINING_MATRIX[i][m] == (1, base, false) {
                return (i, m);
            }
        }
    }
    unreachable!("every generator occurs unstarred")
}

/// ε(a₁) = ε(d₁) = 1, all other block generators vanish.
fn counit_value(spec: &Arc<AlgebraSpec>, name: &str) -> Element {
    if name.starts_with("a1") || name.starts_with("d1") {
        Element::one(spec)
    } else {
        Element::zero(spec)
    }
}

fn quasi_commutation(x: &Mat, y: &Mat) -> Result<(), String> {
    for i in 0..4 {
        for m in 0..4 {
            for j in 0..4 {
                for l in 0..4 {
                    let ph = Scalar::mu_pow(ETA[i][j] + ETA[l][m]);
                    if &x[i][m] * &y[j][l] != (&y[j][l] * &x[i][m]).scale(&ph) {
                        return Err(format!("fails at (i,m,j,l) = ({},{},{},{})", i + 1, m + 1, j + 1, l + 1));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Δ_L makes A(C⁴_θ) a comodule algebra exactly because of the phases of A.
pub fn check_comodule_algebra(qg: &QuantumGroup) -> Vec<Check> {
    let t = &qg.tensor;
    let c4 = c4_for(qg);
    let images = c4_images(qg, &c4);
    let mut out = vec![timed("coaction respects every relation of C4", || match relation_images(&c4, |g| images[g].clone()) {
        Ok(n) => (true, format!("{n} relations map to 0")),
        Err(e) => (false, e),
    })];
    out.push(exact_check("coaction on Psi is A Psi", || {
        let psi = geom::psi(t);
        mat_equal(&matrix::map(&psi, |e| qg.coact(e)), &matrix::mul(&qg.a, &psi))
    }));
    out.push(exact_check("coaction commutes with J", || {
        for j in 1..=4 {
            let z = geom::z(t, j);
            let lhs = qg.coact(&geom::apply_j(&z));
            let rhs = geom::apply_j(&qg.coact(&z));
            if lhs != rhs {
                return Err(format!("z{j}"));
            }
        }
        Ok(())
    }));
    out.push(exact_check("counit point gives 1 (x) z", || {
        let cs: Vec<Element> = (0..t.len())
            .map(|g| {
                let n = t.gen_name(g);
                if t.grading(g) == 0 && n != "Rt" {
                    counit_value(t, n)
                } else {
                    Element::generator(t, g)
                }
            })
            .collect();
        for g in 0..c4.len() {
            let z = Element::var(t, c4.gen_name(g));
            if qg.coact(&z).substitute(t, &cs) != z {
                return Err(c4.gen_name(g).to_string());
            }
        }
        Ok(())
    }));
    if !qg.theta_zero {
        out.push(timed("untwisted parameters break the comodule property", || {
            let mut b = AlgebraBuilder::new("untwisted");
            b.complex_block(&BLOCK_NAMES, 0, 1);
            add_c4(&mut b);
            let u = Arc::new(b.build().expect("untwisted presentation"));
            let a = matrix_a(&u, "");
            let im: Vec<Element> = (0..c4.len())
                .map(|g| {
                    let n = c4.gen_name(g);
                    let i = geom::Z.iter().chain(geom::ZS.iter()).position(|z| *z == n).expect("coordinate") % 4;
                    let e = (0..4).fold(Element::zero(&u), |acc, j| &acc + &(&a[i][j] * &geom::z(&u, j + 1)));
                    if n.ends_with('\'') {
                        e.star()
                    } else {
                        e
                    }
                })
                .collect();
            match relation_images(&c4, |g| im[g].clone()) {
                Ok(_) => (false, "commuting parameters unexpectedly suffice".into()),
                Err(e) => (true, format!("with commuting A: {e}")),
            }
        }));
    }
    out.push(timed("S7 embeds in Sp(2) through the first column", || {
        let q = &qg.qg;
        let a = matrix_a(q, "");
        let im: Vec<Element> = (0..c4.len())
            .map(|g| {
                let n = c4.gen_name(g);
                let i = geom::Z.iter().position(|z| *z == n);
                match i {
                    Some(i) => a[i][0].clone(),
                    None => a[geom::ZS.iter().position(|z| *z == n).expect("coordinate")][0].star(),
                }
            })
            .collect();
        match relation_images(&c4, |g| im[g].clone()) {
            Err(e) => (false, e),
            Ok(n) => {
                let rr = r2(&c4).substitute(q, &im);
                let u11 = &unitarity(&a)[0] + &Element::one(q);
                (rr == u11, format!("{n} relations preserved; r^2 maps to (A*A)_11"))
            }
        }
    }));
    out
}

/// Δ_L(r²) = ρ² and the sphere relations: preserved by Sp_θ(2), inflated by
/// SL_θ(2,ℍ).
pub fn check_sp_invariance(qg: &QuantumGroup, bound: u32) -> Vec<Check> {
    let t = &qg.tensor;
    let rels = &qg.unitarity;
    let r = r2(t);
    let rho2 = qg.coact(&r);
    let zc = qg.column_z();
    let zr = matrix::adjoint(&zc);
    let u = qg.unitarity_members();
    let mut out = Vec::new();
    out.push(timed("SL coaction inflates r^2", || {
        let d = &rho2 - &r;
        (!d.is_zero(), format!("Delta(r^2) - r^2 has {} terms without unitarity", d.len()))
    }));
    out.push(
        certify("Delta(r^2) = 1 (x) r^2 modulo Sp(2)", &vec![vec![&rho2 - &r]], &[Sandwich { left: Some(&zr), mid: &u, right: Some(&zc) }], rels, bound).0,
    );
    let d = geom::distinguished(t);
    let s4 = &(&(&(&d["alpha"].star() * &d["alpha"]) + &(&d["beta"].star() * &d["beta"])) + &(&d["x"] * &d["x"]));
    out.push(exact_check("alpha* alpha + beta* beta + x^2 = r^4", || {
        mat_equal(&vec![vec![s4.clone()]], &vec![vec![&r * &r]])
    }));
    out.push(exact_check("Delta(alpha* alpha + beta* beta + x^2) = rho^4", || {
        mat_equal(&vec![vec![qg.coact(s4)]], &vec![vec![&rho2 * &rho2]])
    }));
    let zc_rho = matrix::map(&zc, |e| e * &rho2);
    let zr_r = matrix::map(&zr, |e| &r * e);
    let one = Element::one(t);
    let s4rel = s4 - &one;
    out.push(
        certify(
            "S4 relation preserved modulo Sp(2)",
            &vec![vec![&qg.coact(&s4rel) - &s4rel]],
            &[Sandwich { left: Some(&zr), mid: &u, right: Some(&zc_rho) }, Sandwich { left: Some(&zr_r), mid: &u, right: Some(&zc) }],
            rels,
            bound,
        )
        .0,
    );
    // ω = ½(Ψ* dΨ − dΨ* Ψ) with d acting on the coordinate factor only
    out.push(timed("Delta(omega) = 1 (x) omega modulo Sp(2)", || {
        let calc = Calculus::standard(t);
        let sp = calc.space();
        let psi = geom::psi(t);
        let psis = matrix::adjoint(&psi);
        let omega = |p: &Mat, ps: &Mat| -> FormMatrix {
            let x = fmat_mul(&to_forms(sp, ps), &d_matrix(&calc, p));
            let y = fmat_mul(&d_matrix(&calc, ps), &to_forms(sp, p));
            (0..2).map(|i| (0..2).map(|j| x[i][j].sub(&y[i][j]).scale(&Scalar::rat(1, 2))).collect()).collect()
        };
        let dpsi = matrix::map(&psi, |e| qg.coact(e));
        let lhs = omega(&dpsi, &matrix::adjoint(&dpsi));
        let base = omega(&psi, &psis);
        let um: Mat = (0..4).map(|i| (0..4).map(|j| rels[4 * i + j].clone()).collect()).collect();
        let x = fmat_mul(&to_forms(sp, &matrix::mul(&psis, &um)), &d_matrix(&calc, &psi));
        let y = fmat_mul(&fmat_mul(&fmat_adjoint(&d_matrix(&calc, &psi)), &to_forms(sp, &um)), &to_forms(sp, &psi));
        for i in 0..2 {
            for j in 0..2 {
                let diff = lhs[i][j].sub(&base[i][j]);
                let cert = x[i][j].sub(&y[i][j]).scale(&Scalar::rat(1, 2));
                if !diff.sub(&cert).is_zero() {
                    return (false, format!("entry ({},{}) is not a combination of unitarity relations", i + 1, j + 1));
                }
            }
        }
        (true, "difference is (Psi* U dPsi - dPsi* U Psi)/2 with U = A*A - 1".into())
    }));
    out
}

/// q̃ = Δ_L(q) for the normalised projector, certified over the localisation
/// `Rt Δ_L(r²) = 1`.
pub fn coacted_projector(qg: &QuantumGroup, bound: u32) -> Vec<Check> {
    let t = &qg.tensor;
    let rt = Element::var(t, "Rt");
    let rho2 = qg.coact(&r2(t));
    let f = &(&rt * &rho2) - &Element::one(t);
    let rels = vec![f.clone()];
    let psi = geom::psi(t);
    let pt = matrix::map(&psi, |e| qg.coact(e));
    let pts = matrix::adjoint(&pt);
    let raw = matrix::mul(&pt, &pts);
    let q = matrix::lmul(&rt, &raw);
    let mut out = Vec::new();
    out.push(exact_check("rho^2 is central in the coacted algebra", || {
        for x in pt.iter().flatten().chain(pts.iter().flatten()) {
            if &rho2 * x != x * &rho2 {
                return Err(brief(x));
            }
        }
        Ok(())
    }));
    out.push(exact_check("Psi~* Psi~ = rho^2", || mat_equal(&matrix::mul(&pts, &pt), &matrix::lmul(&rho2, &matrix::identity(t, 2)))));
    let fm = |i: usize, j: usize| if i == j { Member::relation(&rels, 0) } else { Member::zero(t) };
    let fblock: MemberMat = (0..2).map(|i| (0..2).map(|j| fm(i, j)).collect()).collect();
    let left = matrix::lmul(&rt, &pt);
    out.push(certify("q~^2 = q~", &matrix::sub(&matrix::mul(&q, &q), &q), &[Sandwich { left: Some(&left), mid: &fblock, right: Some(&pts) }], &rels, bound).0);
    out.push(exact_check("q~ = q~*", || mat_equal(&matrix::adjoint(&q), &q)));
    let two_f = Member {
        value: f.scale(&Scalar::int(2)),
        scale: Scalar::one(),
        cert: vec![CertTerm { left: Element::int(t, 2), relation: 0, right: Element::one(t) }],
    };
    out.push(certify("Tr q~ = 2", &vec![vec![&matrix::trace(&q) - &Element::int(t, 2)]], &[Sandwich { left: None, mid: &vec![vec![two_f]], right: None }], &rels, bound).0);
    let display = |x_center: Option<&Element>| -> Mat {
        let c4d = geom::q_display(t, &r2(t));
        let mut m = matrix::map(&c4d, |e| qg.coact(e));
        if let Some(x) = x_center {
            let half = Scalar::rat(1, 2);
            m[1][1] = (&rho2 + x).scale(&half);
            m[2][2] = (&rho2 - x).scale(&half);
        }
        matrix::lmul(&rt, &m)
    };
    let x = geom::distinguished(t)["x"].clone();
    out.push(exact_check("q~ matches displayed matrix as printed", || mat_equal(&q, &display(Some(&x)))));
    out.push(exact_check("q~ matches displayed matrix corrected", || mat_equal(&q, &display(None))));
    out.push(exact_check("q~ entry (1,3) = rho^-2 alpha~ / 2", || {
        let at = qg.coact(&geom::distinguished(t)["alpha"]);
        mat_equal(&vec![vec![q[0][2].clone()]], &vec![vec![(&rt * &at).scale(&Scalar::rat(1, 2))]])
    }));
    out.push(exact_check("counit point recovers q", || {
        let g = geom::Geometry::new(qg.theta_zero);
        let c4r = &g.c4r.spec;
        let images: Vec<Element> = (0..t.len())
            .map(|gi| {
                let n = t.gen_name(gi);
                if n == "Rt" {
                    Element::var(c4r, "R")
                } else if t.grading(gi) == 0 {
                    counit_value(c4r, n)
                } else {
                    Element::var(c4r, n)
                }
            })
            .collect();
        let back = matrix::map(&q, |e| e.substitute(c4r, &images));
        let p = geom::psi(c4r);
        let want = matrix::lmul(&Element::var(c4r, "R"), &matrix::mul(&p, &matrix::adjoint(&p)));
        mat_equal(&back, &want)
    }));
    out
}

/// M̂^α: the α-th column of A.
pub fn coacted_columns(a: &Mat) -> Vec<Mat> {
    (0..4).map(|al| (0..4).map(|j| vec![a[j][al].clone()]).collect()).collect()
}

/// m̂_{αβ} = Σ_l M̂_l^α* M̂_l^β.
pub fn coacted_moduli(cols: &[Mat]) -> Vec<Vec<Element>> {
    let spec = cols[0][0][0].spec();
    (0..4)
        .map(|a| {
            (0..4)
                .map(|b| (0..4).fold(Element::zero(spec), |acc, l| &acc + &(&cols[a][l][0].star() * &cols[b][l][0])))
                .collect()
        })
        .collect()
}

/// Exponent `e` with `x y = μ^e y x`, searched in a window; `None` when the
/// product vanishes and the phase is undetermined.
fn observed_phase(x: &Element, y: &Element) -> Option<i32> {
    let xy = x * y;
    if xy.is_zero() {
        return None;
    }
    let yx = y * x;
    let w = if x.spec().is_classical() { 0 } else { 8 };
    (-w..=w).find(|&e| xy == yx.scale(&Scalar::mu_pow(e)))
}

fn phase_table(m: &[Vec<Element>]) -> Vec<Option<i32>> {
    let mut t = Vec::with_capacity(256);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    t.push(observed_phase(&m[a][b], &m[c][d]));
                }
            }
        }
    }
    t
}

/// The charge-one family from the coacted tautological monad and its
/// agreement with the ADHM charge-one moduli.
pub fn charge_one_family(qg: &QuantumGroup) -> Vec<Check> {
    let t = &qg.tensor;
    let q = &qg.qg;
    let mut out = Vec::new();
    let a = matrix_a(q, "");
    let cols = coacted_columns(&a);
    out.push(exact_check("coacted sigma = sum of M^ z", || {
        let sigma: Mat = (1..=4).map(|j| vec![qg.coact(&geom::z(t, j))]).collect();
        let at = matrix_a(t, "");
        let want = (0..4).fold(matrix::zeros(t, 4, 1), |acc, al| {
            let c: Mat = (0..4).map(|j| vec![&at[j][al] * &geom::z(t, al + 1)]).collect();
            matrix::add(&acc, &c)
        });
        mat_equal(&sigma, &want)
    }));
    out.push(exact_check("M^1 = (a1, a2, c1, c2)^t", || {
        let want: Mat = ["a1", "a2", "c1", "c2"].iter().map(|n| vec![Element::var(q, n)]).collect();
        mat_equal(&cols[0], &want)
    }));
    out.push(timed("M^ relations", || {
        let mut n = 0;
        for al in 0..4 {
            for be in 0..4 {
                for j in 0..4 {
                    for l in 0..4 {
                        let (x, y) = (&cols[al][j][0], &cols[be][l][0]);
                        let ph = Scalar::mu_pow(ETA[j][l] + ETA[be][al]);
                        if x * y != (y * x).scale(&ph) {
                            return (false, format!("fails at alpha={} beta={} j={} l={}", al + 1, be + 1, j + 1, l + 1));
                        }
                        n += 1;
                    }
                }
            }
        }
        (true, format!("{n} relations"))
    }));
    let mh = coacted_moduli(&cols);
    out.push(timed("m^ relations", || match moduli_relations(&mh) {
        Ok(n) => (true, format!("{n} relations")),
        Err(e) => (false, e),
    }));
    let md = adhm::build_monad(&MonadConfig { theta_zero: qg.theta_zero, ..MonadConfig::new(1, Mode::Symbolic) })
        .expect("charge-one monad builds");
    let m = adhm::moduli_generators(&md);
    out.push(timed("ADHM m relations", || match moduli_relations(&m) {
        Ok(n) => (true, format!("{n} relations")),
        Err(e) => (false, e),
    }));
    out.push(timed("coacted and ADHM moduli relations agree", || {
        let (th, ta) = (phase_table(&mh), phase_table(&m));
        let mut idx = 0;
        let mut degenerate = 0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let want = if qg.theta_zero { 0 } else { moduli_phase(a, b, c, d) };
                        let bad = |p: Option<i32>| p.is_some_and(|e| e != want);
                        if bad(th[idx]) || bad(ta[idx]) || ta[idx].is_none() {
                            return (false, format!("tuple ({},{},{},{}): {:?} vs {:?}", a + 1, b + 1, c + 1, d + 1, th[idx], ta[idx]));
                        }
                        degenerate += th[idx].is_none() as usize;
                        idx += 1;
                    }
                }
            }
        }
        (true, format!("same phase on all 256 index tuples ({degenerate} vanish on the coacted side)"))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_group_has_sixteen_generators() {
        assert_eq!(quantum_group_spec().len(), 16);
    }

    #[test]
    fn self_pair_commutes() {
        // η₃₁η₃₃η₁₁η₁₃ = 1
        assert_eq!(moduli_phase(0, 2, 0, 2), 0);
    }

    #[test]
    fn counit_fixes_coordinates() {
        let qg = QuantumGroup::new(false);
        assert!(check_comodule_algebra(&qg).iter().all(Check::passed));
    }
}
