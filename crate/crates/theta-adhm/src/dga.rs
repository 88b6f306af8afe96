//! Differential calculi over quasi-commutative algebras: forms in
//! coefficient-left normal form, wedge products, the exterior derivative,
//! star and the holomorphic bidegree.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::matrix::Mat;
use crate::reduce::{normal_form, IdealSpec};
use crate::scalar::Scalar;
use crate::twistalg::{same_spec, AlgebraSpec, Element, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("not a projector: {0}")]
    NotProjector(String),
    #[error("generator {0} has no differential")]
    NoDifferential(String),
}

/// Strictly increasing list of differential indices.
pub type Word = SmallVec<[u8; 4]>;

/// The algebra together with the generators that carry a differential.
#[derive(Debug)]
pub struct DiffSpace {
    spec: Arc<AlgebraSpec>,
    diff_gen: Vec<usize>,
    gen_diff: Vec<Option<u8>>,
    diff_star: Vec<u8>,
}

impl DiffSpace {
    pub fn new(spec: &Arc<AlgebraSpec>, gens: &[usize]) -> Result<DiffSpace, DgaError> {
        let mut gen_diff = vec![None; spec.len()];
        for (k, &g) in gens.iter().enumerate() {
            gen_diff[g] = Some(k as u8);
        }
        let mut diff_star = Vec::with_capacity(gens.len());
        for &g in gens {
            let s = spec.star_of(g);
            match gen_diff[s] {
                Some(k) => diff_star.push(k),
                None => return Err(DgaError::NoDifferential(spec.gen_name(s).to_string())),
            }
        }
        Ok(DiffSpace { spec: spec.clone(), diff_gen: gens.to_vec(), gen_diff, diff_star })
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn diff_of(&self, g: usize) -> Option<u8> {
        self.gen_diff[g]
    }

    pub fn generator_of(&self, k: u8) -> usize {
        self.diff_gen[k as usize]
    }

    /// Phase exponent from moving every algebra factor of `m` left past the
    /// differentials of `w`.
    fn word_mono_phase(&self, w: &Word, m: &Monomial) -> i32 {
        let spec = &self.spec;
        if spec.is_classical() {
            return 0;
        }
        let mut ph = 0;
        for &k in w {
            let g = self.diff_gen[k as usize];
            for (h, e) in m.gens() {
                ph += spec.exp(g, h) * e as i32;
            }
        }
        ph
    }

    /// Normal-orders the concatenation `a b` of two words: `None` when a
    /// differential repeats, else the merged word, sign flag and phase.
    fn word_mul(&self, a: &Word, b: &Word) -> Option<(Word, bool, i32)> {
        let spec = &self.spec;
        let mut neg = false;
        let mut ph = 0;
        for &x in a {
            for &y in b {
                if x == y {
                    return None;
                }
                if x > y {
                    neg = !neg;
                    if !spec.is_classical() {
                        ph += spec.exp(self.diff_gen[x as usize], self.diff_gen[y as usize]);
                    }
                }
            }
        }
        let mut w: Word = a.iter().chain(b.iter()).copied().collect();
        w.sort_unstable();
        Some((w, neg, ph))
    }
}

/// Finite sum of `monomial · word` terms with scalar coefficients.
#[derive(Clone)]
pub struct Form {
    space: Arc<DiffSpace>,
    terms: Vec<((Monomial, Word), Scalar)>,
}

impl PartialEq for Form {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.space, &o.space) || same_spec(&self.space.spec, &o.space.spec))
            && self.terms == o.terms
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form({})", self)
    }
}

type Acc = FxHashMap<(Monomial, Word), Scalar>;

fn acc_add(acc: &mut Acc, k: (Monomial, Word), s: Scalar) {
    if s.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match acc.entry(k) {
        Entry::Occupied(mut e) => {
            let v = e.get().add(&s);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        Entry::Vacant(e) => {
            e.insert(s);
        }
    }
}

impl Form {
    pub fn zero(space: &Arc<DiffSpace>) -> Form {
        Form { space: space.clone(), terms: Vec::new() }
    }

    fn from_acc(space: &Arc<DiffSpace>, acc: Acc) -> Form {
        let classical = space.spec.is_classical();
        let mut terms: Vec<((Monomial, Word), Scalar)> = acc
            .into_iter()
            .map(|(k, s)| (k, if classical { s.specialize() } else { s }))
            .filter(|(_, s)| !s.is_zero())
            .collect();
        terms.sort_unstable_by(|a, b| (a.0 .1.len(), &a.0).cmp(&(b.0 .1.len(), &b.0)));
        Form { space: space.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((Monomial, Word), Scalar)>>(space: &Arc<DiffSpace>, it: I) -> Form {
        let mut acc = Acc::default();
        for (k, s) in it {
            acc_add(&mut acc, k, s);
        }
        Form::from_acc(space, acc)
    }

    pub fn from_element(space: &Arc<DiffSpace>, e: &Element) -> Form {
        assert!(same_spec(&space.spec, e.spec()), "algebra mismatch");
        Form {
            space: space.clone(),
            terms: e.terms().iter().map(|(m, s)| ((m.clone(), Word::new()), s.clone())).collect(),
        }
    }

    /// The basic differential with index `k`.
    pub fn differential(space: &Arc<DiffSpace>, k: u8) -> Form {
        let mut w = Word::new();
        w.push(k);
        Form { space: space.clone(), terms: vec![((Monomial::one(), w), Scalar::one())] }
    }

    pub fn space(&self) -> &Arc<DiffSpace> {
        &self.space
    }

    pub fn terms(&self) -> &[((Monomial, Word), Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Form) -> Form {
        let mut acc = Acc::default();
        for (k, s) in self.terms.iter().chain(o.terms.iter()) {
            acc_add(&mut acc, k.clone(), s.clone());
        }
        Form::from_acc(&self.space, acc)
    }

    pub fn neg(&self) -> Form {
        Form {
            space: self.space.clone(),
            terms: self.terms.iter().map(|(k, s)| (k.clone(), s.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Form) -> Form {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        Form::from_terms(&self.space, self.terms.iter().map(|(k, s)| (k.clone(), s.mul(c))))
    }

    /// Graded product in normal form.
    pub fn wedge(&self, o: &Form) -> Form {
        let sp = &self.space;
        let spec = &sp.spec;
        let mut acc = Acc::default();
        for ((m1, w1), s1) in &self.terms {
            for ((m2, w2), s2) in &o.terms {
                let Some((w, neg, phw)) = sp.word_mul(w1, w2) else { continue };
                let ph = phw + sp.word_mono_phase(w1, m2) + spec.mono_phase(m1, m2);
                let mut c = s1.mul(s2).shift(ph);
                if neg {
                    c = c.neg();
                }
                acc_add(&mut acc, (m1.mul(m2), w), c);
            }
        }
        Form::from_acc(sp, acc)
    }

    /// Left multiplication by an algebra element.
    pub fn lmul(&self, e: &Element) -> Form {
        Form::from_element(&self.space, e).wedge(self)
    }

    pub fn rmul(&self, e: &Element) -> Form {
        self.wedge(&Form::from_element(&self.space, e))
    }

    /// Form degree of a homogeneous form (largest word length otherwise).
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|((_, w), _)| w.len()).max().unwrap_or(0)
    }

    pub fn bidegree_of(&self, w: &Word) -> (u32, u32) {
        let mut p = 0;
        let mut q = 0;
        for &k in w {
            if self.space.spec.grading(self.space.generator_of(k)) >= 0 {
                p += 1;
            } else {
                q += 1;
            }
        }
        (p, q)
    }

    /// Partition by `(p, q)`: `p` counts unstarred and `q` starred
    /// differentials.
    pub fn bidegree_split(&self) -> BTreeMap<(u32, u32), Form> {
        let mut parts: BTreeMap<(u32, u32), Vec<((Monomial, Word), Scalar)>> = BTreeMap::new();
        for t in &self.terms {
            parts.entry(self.bidegree_of(&t.0 .1)).or_default().push(t.clone());
        }
        parts
            .into_iter()
            .map(|(k, v)| (k, Form { space: self.space.clone(), terms: v }))
            .collect()
    }

    /// Graded involution: `(m w)* = w* m*` with
    /// `(d1 … dp)* = (−1)^{p(p−1)/2} dp* … d1*`.
    pub fn star(&self) -> Form {
        let sp = &self.space;
        let mut out = Form::zero(sp);
        for ((m, w), s) in &self.terms {
            let mut wf = Form::from_element(sp, &Element::one(&sp.spec));
            for &k in w.iter().rev() {
                wf = wf.wedge(&Form::differential(sp, sp.diff_star[k as usize]));
            }
            let p = w.len();
            if (p * p.saturating_sub(1) / 2) % 2 == 1 {
                wf = wf.neg();
            }
            let ms = Element::monomial(&sp.spec, m.clone(), s.clone()).star();
            out = out.add(&wf.rmul(&ms));
        }
        out
    }

    /// Applies `f` to the coefficient element of each wedge word.
    pub fn coefficient_map(&self, f: impl Fn(&Element) -> Element) -> Form {
        let mut groups: BTreeMap<Word, Vec<(Monomial, Scalar)>> = BTreeMap::new();
        for ((m, w), s) in &self.terms {
            groups.entry(w.clone()).or_default().push((m.clone(), s.clone()));
        }
        let mut acc = Acc::default();
        for (w, terms) in groups {
            let e = Element::from_terms(&self.space.spec, terms);
            for (m, s) in f(&e).terms() {
                acc_add(&mut acc, (m.clone(), w.clone()), s.clone());
            }
        }
        Form::from_acc(&self.space, acc)
    }

    /// Reduces the coefficient of every wedge word modulo the ideal.
    pub fn reduce_coeffs(&self, ideal: &IdealSpec) -> Form {
        self.coefficient_map(|e| normal_form(e, ideal))
    }

    /// Coefficient element of a given word.
    pub fn coefficient(&self, w: &Word) -> Element {
        Element::from_terms(
            &self.space.spec,
            self.terms.iter().filter(|((_, x), _)| x == w).map(|((m, _), s)| (m.clone(), s.clone())),
        )
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let spec = &self.space.spec;
        for (i, ((m, w), s)) in self.terms.iter().enumerate() {
            let mut parts: Vec<String> = Vec::new();
            if !m.is_one() {
                parts.push(m.render(spec));
            }
            for &k in w {
                parts.push(format!("d({})", spec.gen_name(self.space.generator_of(k))));
            }
            let body = parts.join(" ");
            let text = if body.is_empty() {
                s.to_string()
            } else if s.is_one() {
                body
            } else if s.neg().is_one() {
                format!("-{}", body)
            } else {
                format!("{} {}", s.factor_text(), body)
            };
            if i == 0 {
                write!(f, "{}", text)?;
            } else if let Some(rest) = text.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", text)?;
            }
        }
        Ok(())
    }
}

/// Differential of a generator.
#[derive(Clone, Debug)]
pub enum DiffRule {
    Basic(u8),
    Constant,
    Derived(Form),
}

/// Rewrites `a · d(b)` as a given one-form wherever both factors occur in a
/// term; used to impose `d(r²) = 0` over a sphere.
#[derive(Clone, Debug)]
pub struct Syzygy {
    pub coeff_gen: usize,
    pub diff: u8,
    pub replacement: Form,
}

/// Exterior derivative on a [`DiffSpace`].
#[derive(Clone, Debug)]
pub struct Calculus {
    space: Arc<DiffSpace>,
    rules: Vec<DiffRule>,
    syzygies: Vec<Syzygy>,
}

impl Calculus {
    /// Generators with nonzero grading get basic differentials; all others
    /// are constants.
    pub fn standard(spec: &Arc<AlgebraSpec>) -> Calculus {
        let gens: Vec<usize> = (0..spec.len()).filter(|&g| spec.grading(g) != 0).collect();
        let space = Arc::new(DiffSpace::new(spec, &gens).expect("grading is star-symmetric"));
        let rules = (0..spec.len())
            .map(|g| match space.diff_of(g) {
                Some(k) => DiffRule::Basic(k),
                None => DiffRule::Constant,
            })
            .collect();
        Calculus { space, rules, syzygies: Vec::new() }
    }

    /// Every generator gets a basic differential.
    pub fn full(spec: &Arc<AlgebraSpec>) -> Calculus {
        let gens: Vec<usize> = (0..spec.len()).collect();
        let space = Arc::new(DiffSpace::new(spec, &gens).expect("all generators"));
        let rules = (0..spec.len()).map(|g| DiffRule::Basic(space.diff_of(g).expect("every generator"))).collect();
        Calculus { space, rules, syzygies: Vec::new() }
    }

    pub fn space(&self) -> &Arc<DiffSpace> {
        &self.space
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.space.spec
    }

    pub fn set_derived(&mut self, g: usize, f: Form) {
        self.rules[g] = DiffRule::Derived(f);
    }

    pub fn add_syzygy(&mut self, s: Syzygy) {
        self.syzygies.push(s);
    }

    pub fn dz(&self, g: usize) -> Form {
        match &self.rules[g] {
            DiffRule::Basic(k) => Form::differential(&self.space, *k),
            DiffRule::Constant => Form::zero(&self.space),
            DiffRule::Derived(f) => f.clone(),
        }
    }

    pub fn form(&self, e: &Element) -> Form {
        Form::from_element(&self.space, e)
    }

    fn d_monomial(&self, m: &Monomial) -> Form {
        let sp = &self.space;
        let spec = &sp.spec;
        let factors: Vec<usize> = m.gens().flat_map(|(g, e)| std::iter::repeat_n(g, e as usize)).collect();
        let mut out = Form::zero(sp);
        for i in 0..factors.len() {
            let dg = self.dz(factors[i]);
            if dg.is_zero() {
                continue;
            }
            let mut pre = Element::one(spec);
            for &g in &factors[..i] {
                pre = &pre * &Element::generator(spec, g);
            }
            let mut post = Element::one(spec);
            for &g in &factors[i + 1..] {
                post = &post * &Element::generator(spec, g);
            }
            out = out.add(&dg.lmul(&pre).rmul(&post));
        }
        out
    }

    /// `d(m w) = d(m) w` on normal-form terms.
    pub fn d(&self, f: &Form) -> Form {
        let sp = &self.space;
        let mut cache: FxHashMap<Monomial, Form> = FxHashMap::default();
        let mut out = Form::zero(sp);
        for ((m, w), s) in &f.terms {
            let dm = cache.entry(m.clone()).or_insert_with(|| self.d_monomial(m)).clone();
            if dm.is_zero() {
                continue;
            }
            let wf = Form { space: sp.clone(), terms: vec![((Monomial::one(), w.clone()), Scalar::one())] };
            out = out.add(&dm.wedge(&wf).scale(s));
        }
        out
    }

    pub fn d_elem(&self, e: &Element) -> Form {
        self.d(&self.form(e))
    }

    /// Applies the syzygy rewrites until no term contains a pattern.
    pub fn apply_syzygies(&self, f: &Form) -> Form {
        if self.syzygies.is_empty() {
            return f.clone();
        }
        let sp = &self.space;
        let spec = &sp.spec;
        let mut todo = f.clone();
        let mut done = Form::zero(sp);
        let mut guard = 0usize;
        while !todo.is_zero() {
            guard += 1;
            assert!(guard < 10_000, "syzygy rewriting does not terminate");
            let mut next = Form::zero(sp);
            let mut keep = Vec::new();
            for ((m, w), s) in &todo.terms {
                let hit = self
                    .syzygies
                    .iter()
                    .find(|z| m.exponent(z.coeff_gen) > 0 && w.contains(&z.diff));
                let Some(z) = hit else {
                    keep.push(((m.clone(), w.clone()), s.clone()));
                    continue;
                };
                let mrest = m.div(&Monomial::gen(z.coeff_gen));
                let wrest: Word = w.iter().copied().filter(|&k| k != z.diff).collect();
                let pre = Form::from_element(sp, &Element::monomial(spec, mrest, Scalar::one()));
                let a = Form::from_element(sp, &Element::generator(spec, z.coeff_gen));
                let post = Form { space: sp.clone(), terms: vec![((Monomial::one(), wrest), Scalar::one())] };
                let dz = Form::differential(sp, z.diff);
                // pre · a · dz · post equals c · (m w) for a unit c
                let probe = pre.wedge(&a).wedge(&dz).wedge(&post);
                let c = probe.terms[0].1.clone();
                let k = s.mul(&c.unit_inverse().expect("unit phase"));
                next = next.add(&pre.wedge(&z.replacement).wedge(&post).scale(&k));
            }
            done = done.add(&Form::from_terms(sp, keep));
            todo = next;
        }
        done
    }
}

pub type FormMatrix = Vec<Vec<Form>>;

pub fn to_forms(space: &Arc<DiffSpace>, a: &Mat) -> FormMatrix {
    a.iter().map(|r| r.iter().map(|e| Form::from_element(space, e)).collect()).collect()
}

pub fn fmat_mul(a: &FormMatrix, b: &FormMatrix) -> FormMatrix {
    let space = a[0][0].space().clone();
    let inner = b.len();
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Form::zero(&space);
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc.add(&row[k].wedge(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn fmat_map(a: &FormMatrix, f: impl Fn(&Form) -> Form) -> FormMatrix {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

pub fn d_matrix(calc: &Calculus, a: &Mat) -> FormMatrix {
    a.iter().map(|r| r.iter().map(|e| calc.d_elem(e)).collect()).collect()
}

/// Conjugate transpose of a form matrix.
pub fn fmat_adjoint(a: &FormMatrix) -> FormMatrix {
    let (r, c) = (a.len(), a[0].len());
    (0..c).map(|j| (0..r).map(|i| a[i][j].star()).collect()).collect()
}

/// `P (dP)(dP)` with coefficients reduced modulo the ideal, after checking
/// `P² = P = P*` there.
pub fn curvature(calc: &Calculus, p: &Mat, ideal: &IdealSpec) -> Result<FormMatrix, DgaError> {
    let sq = crate::matrix::sub(&crate::matrix::mul(p, p), p);
    if let Some((i, j, e)) = crate::matrix::first_nonzero(&crate::matrix::reduce(&sq, ideal)) {
        return Err(DgaError::NotProjector(format!("(P^2 - P)[{},{}] = {}", i + 1, j + 1, e)));
    }
    let st = crate::matrix::sub(&crate::matrix::adjoint(p), p);
    if let Some((i, j, e)) = crate::matrix::first_nonzero(&crate::matrix::reduce(&st, ideal)) {
        return Err(DgaError::NotProjector(format!("(P* - P)[{},{}] = {}", i + 1, j + 1, e)));
    }
    let dp = d_matrix(calc, p);
    let pf = to_forms(calc.space(), p);
    let f = fmat_mul(&pf, &fmat_mul(&dp, &dp));
    Ok(fmat_map(&f, |x| calc.apply_syzygies(&x.reduce_coeffs(ideal))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twistalg::AlgebraBuilder;

    fn plane() -> Calculus {
        let mut b = AlgebraBuilder::new("plane");
        let (x, _) = b.complex("x", "x'", 1, 1);
        let (y, _) = b.complex("y", "y'", 1, 1);
        b.phase(x, y, -1);
        Calculus::standard(&Arc::new(b.build().unwrap()))
    }

    #[test]
    fn leibniz_on_product() {
        let c = plane();
        let s = c.spec().clone();
        let x = Element::var(&s, "x");
        let y = Element::var(&s, "y");
        let lhs = c.d_elem(&(&x * &y));
        let rhs = c.d_elem(&x).rmul(&y).add(&c.d_elem(&y).lmul(&x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dd_vanishes_and_star_commutes() {
        let c = plane();
        let s = c.spec().clone();
        let a = &(&Element::var(&s, "x") * &Element::var(&s, "y'")) + &Element::var(&s, "y").scale(&Scalar::i());
        let da = c.d_elem(&a);
        assert!(c.d(&da).is_zero());
        assert_eq!(c.d_elem(&a.star()), da.star());
        let w = da.wedge(&c.d_elem(&Element::var(&s, "x'")));
        assert_eq!(w.star().star(), w);
    }

    #[test]
    fn repeated_differential_vanishes() {
        let c = plane();
        let dx = c.dz(0);
        assert!(dx.wedge(&dx).is_zero());
    }
}
