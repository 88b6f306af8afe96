//! Phase-twisted *-algebras: presentations, monomials and normal-form
//! elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("algebra mismatch")]
    Mismatch,
    #[error("exponent matrix is not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("star pairing is not an involution at {0}")]
    StarNotInvolutive(String),
    #[error("exponent matrix is not star-consistent at ({0}, {1})")]
    StarInconsistent(String, String),
    #[error("duplicate generator name {0}")]
    DuplicateName(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// Presentation of a quasi-commutative *-algebra: `g h = mu^E[g][h] h g`.
#[derive(Debug)]
pub struct AlgebraSpec {
    name: String,
    names: Vec<String>,
    star: Vec<usize>,
    exp: Vec<Vec<i32>>,
    grading: Vec<i32>,
    weight: Vec<u32>,
    classical: bool,
    index: FxHashMap<String, usize>,
    twin: OnceLock<Arc<AlgebraSpec>>,
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
            && self.names == o.names
            && self.star == o.star
            && self.exp == o.exp
            && self.grading == o.grading
            && self.weight == o.weight
            && self.classical == o.classical
    }
}

impl Eq for AlgebraSpec {}

impl AlgebraSpec {
    /// Validating constructor from raw parts. Every generator gets degree
    /// weight 1 unless its grading is 0 and `weight` says otherwise.
    pub fn from_parts(
        name: &str,
        names: Vec<String>,
        star: Vec<usize>,
        exp: Vec<Vec<i32>>,
        grading: Vec<i32>,
        weight: Vec<u32>,
    ) -> Result<AlgebraSpec, AlgebraError> {
        let n = names.len();
        if star.len() != n || exp.len() != n || grading.len() != n || weight.len() != n {
            return Err(AlgebraError::Malformed("dimension mismatch".into()));
        }
        if exp.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Malformed("exponent matrix is not square".into()));
        }
        let mut index = FxHashMap::default();
        for (i, nm) in names.iter().enumerate() {
            if index.insert(nm.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateName(nm.clone()));
            }
        }
        for g in 0..n {
            if star[g] >= n || star[star[g]] != g {
                return Err(AlgebraError::StarNotInvolutive(names[g].clone()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                if exp[g][h] != -exp[h][g] {
                    return Err(AlgebraError::NotAntisymmetric(names[g].clone(), names[h].clone()));
                }
                if exp[star[g]][star[h]] != exp[g][h] {
                    return Err(AlgebraError::StarInconsistent(names[g].clone(), names[h].clone()));
                }
            }
        }
        Ok(AlgebraSpec {
            name: name.to_string(),
            names,
            star,
            exp,
            grading,
            weight,
            classical: false,
            index,
            twin: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn star_of(&self, g: usize) -> usize {
        self.star[g]
    }

    pub fn exp(&self, g: usize, h: usize) -> i32 {
        self.exp[g][h]
    }

    pub fn grading(&self, g: usize) -> i32 {
        self.grading[g]
    }

    pub fn weight(&self, g: usize) -> u32 {
        self.weight[g]
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The same presentation with every phase trivialised (`mu = 1`).
    pub fn classical_twin(self: &Arc<Self>) -> Arc<AlgebraSpec> {
        if self.classical {
            return self.clone();
        }
        self.twin
            .get_or_init(|| {
                let n = self.len();
                Arc::new(AlgebraSpec {
                    name: format!("{}[mu=1]", self.name),
                    names: self.names.clone(),
                    star: self.star.clone(),
                    exp: vec![vec![0; n]; n],
                    grading: self.grading.clone(),
                    weight: self.weight.clone(),
                    classical: true,
                    index: self.index.clone(),
                    twin: OnceLock::new(),
                })
            })
            .clone()
    }

    /// Phase exponent accrued by normal-ordering the product `a b`.
    pub fn mono_phase(&self, a: &Monomial, b: &Monomial) -> i32 {
        if self.classical {
            return 0;
        }
        let mut ph = 0i32;
        for &(g, ea) in &a.0 {
            let row = &self.exp[g as usize];
            for &(h, eb) in &b.0 {
                if h >= g {
                    break;
                }
                ph += ea as i32 * eb as i32 * row[h as usize];
            }
        }
        ph
    }

    /// Star of a monomial: the reversed product of starred generators,
    /// returned in normal order together with its phase exponent.
    pub fn mono_star(&self, m: &Monomial) -> (Monomial, i32) {
        let mut res = Monomial::one();
        let mut ph = 0;
        for &(g, e) in m.0.iter().rev() {
            let f = Monomial::gen_pow(self.star[g as usize], e as u32);
            ph += self.mono_phase(&res, &f);
            res = res.mul(&f);
        }
        (res, ph)
    }

    pub fn mono_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().map(|&(g, e)| self.weight[g as usize] * e as u32).sum()
    }

    pub fn mono_grading(&self, m: &Monomial) -> i32 {
        m.0.iter().map(|&(g, e)| self.grading[g as usize] * e as i32).sum()
    }
}

/// Incremental construction of an [`AlgebraSpec`]; phases are entered once
/// per unordered pair and extended by antisymmetry and star-consistency.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    name: String,
    names: Vec<String>,
    star: Vec<usize>,
    grading: Vec<i32>,
    weight: Vec<u32>,
    pairs: Vec<(usize, usize, i32)>,
}

impl AlgebraBuilder {
    pub fn new(name: &str) -> AlgebraBuilder {
        AlgebraBuilder {
            name: name.into(),
            names: Vec::new(),
            star: Vec::new(),
            grading: Vec::new(),
            weight: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Adds `g` and its adjoint `g'`; returns both indices.
    pub fn complex(&mut self, name: &str, star_name: &str, grading: i32, weight: u32) -> (usize, usize) {
        let a = self.names.len();
        self.names.push(name.into());
        self.names.push(star_name.into());
        self.star.extend([a + 1, a]);
        self.grading.extend([grading, -grading]);
        self.weight.extend([weight, weight]);
        (a, a + 1)
    }

    /// Adds `names` followed by their adjoints `name'`, so that all
    /// unstarred generators precede the starred ones.
    pub fn complex_block(&mut self, names: &[&str], grading: i32, weight: u32) -> (Vec<usize>, Vec<usize>) {
        let a = self.names.len();
        let n = names.len();
        for nm in names {
            self.names.push((*nm).into());
        }
        for nm in names {
            self.names.push(format!("{nm}'"));
        }
        for i in 0..n {
            self.star.push(a + n + i);
        }
        for i in 0..n {
            self.star.push(a + i);
        }
        self.grading.extend(std::iter::repeat(grading).take(n));
        self.grading.extend(std::iter::repeat(-grading).take(n));
        self.weight.extend(std::iter::repeat(weight).take(2 * n));
        ((a..a + n).collect(), (a + n..a + 2 * n).collect())
    }

    /// Adds a self-adjoint generator.
    pub fn real(&mut self, name: &str, grading: i32, weight: u32) -> usize {
        let a = self.names.len();
        self.names.push(name.into());
        self.star.push(a);
        self.grading.push(grading);
        self.weight.push(weight);
        a
    }

    /// Declares `g h = mu^e h g`.
    pub fn phase(&mut self, g: usize, h: usize, e: i32) -> &mut Self {
        self.pairs.push((g, h, e));
        self
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn star_of(&self, g: usize) -> usize {
        self.star[g]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn build(&self) -> Result<AlgebraSpec, AlgebraError> {
        let n = self.names.len();
        let mut exp = vec![vec![0i32; n]; n];
        let mut set = vec![vec![false; n]; n];
        let mut put = |g: usize, h: usize, e: i32| -> Result<(), AlgebraError> {
            if set[g][h] && exp[g][h] != e {
                return Err(AlgebraError::StarInconsistent(self.names[g].clone(), self.names[h].clone()));
            }
            set[g][h] = true;
            exp[g][h] = e;
            Ok(())
        };
        for &(g, h, e) in &self.pairs {
            if g >= n || h >= n {
                return Err(AlgebraError::Malformed("generator index out of range".into()));
            }
            let (gs, hs) = (self.star[g], self.star[h]);
            put(g, h, e)?;
            put(h, g, -e)?;
            put(gs, hs, e)?;
            put(hs, gs, -e)?;
        }
        AlgebraSpec::from_parts(
            &self.name,
            self.names.clone(),
            self.star.clone(),
            exp,
            self.grading.clone(),
            self.weight.clone(),
        )
    }
}

/// Sparse exponent vector: sorted `(generator, exponent)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub SmallVec<[(u16, u16); 6]>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(SmallVec::new())
    }

    pub fn gen(g: usize) -> Monomial {
        Monomial::gen_pow(g, 1)
    }

    pub fn gen_pow(g: usize, e: u32) -> Monomial {
        let mut v = SmallVec::new();
        if e > 0 {
            v.push((g as u16, e as u16));
        }
        Monomial(v)
    }

    pub fn from_exponents(exps: &[(usize, u32)]) -> Monomial {
        let mut m = Monomial::one();
        for &(g, e) in exps {
            m = m.mul(&Monomial::gen_pow(g, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, g: usize) -> u32 {
        self.0
            .iter()
            .find(|&&(h, _)| h as usize == g)
            .map_or(0, |&(_, e)| e as u32)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e as u32).sum()
    }

    /// Exponent-wise sum (the commutative shadow of the product).
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &o.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().all(|&(g, e)| o.exponent(g as usize) >= e as u32)
    }

    /// Exponent-wise difference; caller guarantees divisibility.
    pub fn div(&self, d: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(g, e) in &self.0 {
            let f = d.exponent(g as usize) as u16;
            if e > f {
                out.push((g, e - f));
            }
        }
        Monomial(out)
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let mut out: SmallVec<[(u16, u16); 6]> = SmallVec::new();
        let (a, b) = (&self.0, &o.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1.max(b[j].1)));
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().all(|&(g, _)| o.exponent(g as usize) == 0)
    }

    pub fn gens(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(g, e)| (g as usize, e as u32))
    }

    pub fn render(&self, spec: &AlgebraSpec) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| {
                let n = spec.gen_name(g as usize);
                if e == 1 {
                    n.to_string()
                } else {
                    format!("{}^{}", n, e)
                }
            })
            .collect();
        parts.join(" ")
    }
}

/// Common grading degree of an element, if it has one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZBalance {
    Homogeneous(i32),
    Mixed,
}

/// Normal-form element: sorted map from monomials to nonzero scalars.
#[derive(Clone)]
pub struct Element {
    spec: Arc<AlgebraSpec>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Element {
    fn eq(&self, o: &Self) -> bool {
        same_spec(&self.spec, &o.spec) && self.terms == o.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({})", self.spec.name(), self)
    }
}

pub fn same_spec(a: &Arc<AlgebraSpec>, b: &Arc<AlgebraSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

type Acc = FxHashMap<Monomial, Scalar>;

fn acc_add(acc: &mut Acc, m: Monomial, s: Scalar) {
    if s.is_zero() {
        return;
    }
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            let v = e.get().add(&s);
            if v.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = v;
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(s);
        }
    }
}

impl Element {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Element {
        Element { spec: spec.clone(), terms: Vec::new() }
    }

    pub fn one(spec: &Arc<AlgebraSpec>) -> Element {
        Element::constant(spec, Scalar::one())
    }

    pub fn constant(spec: &Arc<AlgebraSpec>, s: Scalar) -> Element {
        Element::monomial(spec, Monomial::one(), s)
    }

    pub fn int(spec: &Arc<AlgebraSpec>, n: i64) -> Element {
        Element::constant(spec, Scalar::int(n))
    }

    pub fn generator(spec: &Arc<AlgebraSpec>, g: usize) -> Element {
        Element::monomial(spec, Monomial::gen(g), Scalar::one())
    }

    /// Generator by name; panics on an unknown name (for fixed presentations).
    pub fn var(spec: &Arc<AlgebraSpec>, name: &str) -> Element {
        let g = spec
            .lookup(name)
            .unwrap_or_else(|| panic!("unknown generator {name} in {}", spec.name()));
        Element::generator(spec, g)
    }

    pub fn monomial(spec: &Arc<AlgebraSpec>, m: Monomial, s: Scalar) -> Element {
        let s = if spec.is_classical() { s.specialize() } else { s };
        let terms = if s.is_zero() { Vec::new() } else { vec![(m, s)] };
        Element { spec: spec.clone(), terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(spec: &Arc<AlgebraSpec>, it: I) -> Element {
        let mut acc = Acc::default();
        for (m, s) in it {
            acc_add(&mut acc, m, s);
        }
        Element::from_acc(spec, acc)
    }

    fn from_acc(spec: &Arc<AlgebraSpec>, acc: Acc) -> Element {
        let mut terms: Vec<(Monomial, Scalar)> = if spec.is_classical() {
            acc.into_iter()
                .map(|(m, s)| (m, s.specialize()))
                .filter(|(_, s)| !s.is_zero())
                .collect()
        } else {
            acc.into_iter().collect()
        };
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Element { spec: spec.clone(), terms }
    }

    pub fn spec(&self) -> &Arc<AlgebraSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Constant term as a scalar when the element has no other terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, s)] if m.is_one() => Some(s.clone()),
            _ => None,
        }
    }

    pub fn try_add(&self, o: &Element) -> Result<Element, AlgebraError> {
        if !same_spec(&self.spec, &o.spec) {
            return Err(AlgebraError::Mismatch);
        }
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let c = a[i].1.add(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Element { spec: self.spec.clone(), terms: out })
    }

    pub fn try_sub(&self, o: &Element) -> Result<Element, AlgebraError> {
        self.try_add(&o.neg())
    }

    pub fn try_mul(&self, o: &Element) -> Result<Element, AlgebraError> {
        if !same_spec(&self.spec, &o.spec) {
            return Err(AlgebraError::Mismatch);
        }
        if self.is_zero() || o.is_zero() {
            return Ok(Element::zero(&self.spec));
        }
        let spec = &self.spec;
        let mut acc = Acc::default();
        acc.reserve(self.terms.len() * o.terms.len());
        for (ma, sa) in &self.terms {
            for (mb, sb) in &o.terms {
                let ph = spec.mono_phase(ma, mb);
                acc_add(&mut acc, ma.mul(mb), sa.mul(sb).shift(ph));
            }
        }
        Ok(Element::from_acc(spec, acc))
    }

    pub fn neg(&self) -> Element {
        Element {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, s)| (m.clone(), s.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let c = if self.spec.is_classical() { c.specialize() } else { c.clone() };
        if c.is_zero() {
            return Element::zero(&self.spec);
        }
        Element {
            spec: self.spec.clone(),
            terms: self.terms.iter().map(|(m, s)| (m.clone(), s.mul(&c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut r = Element::one(&self.spec);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Anti-linear anti-automorphism extending the star pairing.
    pub fn star(&self) -> Element {
        let spec = &self.spec;
        let mut acc = Acc::default();
        for (m, s) in &self.terms {
            let (ms, ph) = spec.mono_star(m);
            acc_add(&mut acc, ms, s.conj().shift(ph));
        }
        Element::from_acc(spec, acc)
    }

    /// Substitutes `mu = 1` and moves to the commutative twin presentation.
    pub fn specialize_classical(&self) -> Element {
        let twin = self.spec.classical_twin();
        Element::from_terms(&twin, self.terms.iter().map(|(m, s)| (m.clone(), s.specialize())))
    }

    pub fn z_balance(&self) -> ZBalance {
        let mut it = self.terms.iter().map(|(m, _)| self.spec.mono_grading(m));
        let first = match it.next() {
            Some(d) => d,
            None => return ZBalance::Homogeneous(0),
        };
        if it.all(|d| d == first) {
            ZBalance::Homogeneous(first)
        } else {
            ZBalance::Mixed
        }
    }

    /// Largest weighted degree of a term (0 for the zero element).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| self.spec.mono_degree(m)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| self.spec.mono_degree(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Applies the algebra map sending generator `g` to `images[g]`; each
    /// normal-ordered monomial becomes the ordered product of images.
    pub fn substitute(&self, target: &Arc<AlgebraSpec>, images: &[Element]) -> Element {
        assert_eq!(images.len(), self.spec.len(), "one image per generator");
        let mut cache: FxHashMap<(u16, u16), Element> = FxHashMap::default();
        let mut out = Element::zero(target);
        for (m, s) in &self.terms {
            let mut prod = Element::constant(target, s.clone());
            for &(g, e) in &m.0 {
                let p = cache
                    .entry((g, e))
                    .or_insert_with(|| images[g as usize].pow(e as u32))
                    .clone();
                prod = &prod * &p;
            }
            out = &out + &prod;
        }
        out
    }

    /// Maps every generator to the same-named generator of `target`.
    pub fn embed(&self, target: &Arc<AlgebraSpec>) -> Result<Element, AlgebraError> {
        let mut images = Vec::with_capacity(self.spec.len());
        for n in self.spec.names() {
            let g = target.lookup(n).ok_or_else(|| AlgebraError::UnknownGenerator(n.clone()))?;
            images.push(Element::generator(target, g));
        }
        Ok(self.substitute(target, &images))
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        Element::from_terms(&self.spec, self.terms.iter().map(|(m, s)| (m.clone(), f(s))))
    }

    /// Keeps only the terms with the given weighted degree.
    pub fn degree_part(&self, d: u32) -> Element {
        Element {
            spec: self.spec.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.spec.mono_degree(m) == d)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, s)) in self.terms.iter().enumerate() {
            let body = if m.is_one() {
                let t = s.to_string();
                if s.terms().len() > 1 {
                    format!("({})", t)
                } else {
                    t
                }
            } else if s.is_one() {
                m.render(&self.spec)
            } else if s.neg().is_one() {
                format!("-{}", m.render(&self.spec))
            } else {
                format!("{} {}", s.factor_text(), m.render(&self.spec))
            };
            if k == 0 {
                write!(f, "{}", body)?;
            } else if let Some(rest) = body.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", body)?;
            }
        }
        Ok(())
    }
}

macro_rules! elem_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &Element {
            type Output = Element;
            fn $m(self, o: &Element) -> Element {
                self.$try(o).expect("algebra mismatch")
            }
        }
        impl $tr for Element {
            type Output = Element;
            fn $m(self, o: Element) -> Element {
                (&self).$try(&o).expect("algebra mismatch")
            }
        }
    };
}

elem_op!(Add, add, try_add);
elem_op!(Sub, sub, try_sub);
elem_op!(Mul, mul, try_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}

/// Sum of a sequence of elements over `spec`.
pub fn sum<'a, I: IntoIterator<Item = &'a Element>>(spec: &Arc<AlgebraSpec>, it: I) -> Element {
    let mut acc = Acc::default();
    for e in it {
        assert!(same_spec(spec, &e.spec), "algebra mismatch");
        for (m, s) in &e.terms {
            acc_add(&mut acc, m.clone(), s.clone());
        }
    }
    Element::from_acc(spec, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_gen() -> Arc<AlgebraSpec> {
        let mut b = AlgebraBuilder::new("T");
        let (x, xs) = b.complex("x", "x'", 1, 1);
        let (y, _) = b.complex("y", "y'", 1, 1);
        b.phase(y, x, 1).phase(x, y + 1, -1);
        let _ = xs;
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn reorder_phase() {
        let s = two_gen();
        let x = Element::var(&s, "x");
        let y = Element::var(&s, "y");
        let yx = &y * &x;
        let xy = &x * &y;
        assert_eq!(yx, xy.scale(&Scalar::mu()));
    }

    #[test]
    fn star_is_antimultiplicative() {
        let s = two_gen();
        let x = Element::var(&s, "x");
        let y = Element::var(&s, "y'");
        let a = &(&x * &y) + &Element::constant(&s, Scalar::i());
        let b = &y + &x.scale(&Scalar::mu());
        assert_eq!((&a * &b).star(), &b.star() * &a.star());
        assert_eq!(a.star().star(), a);
    }

    #[test]
    fn builder_rejects_conflicting_phases() {
        let mut b = AlgebraBuilder::new("bad");
        let (x, _) = b.complex("x", "x'", 1, 1);
        let (y, _) = b.complex("y", "y'", 1, 1);
        b.phase(x, y, 1).phase(y, x, 1);
        assert!(b.build().is_err());
    }

    #[test]
    fn from_parts_rejects_star_inconsistency() {
        let names = vec!["x".into(), "x'".into(), "y".into()];
        let exp = vec![vec![0, 0, 1], vec![0, 0, 0], vec![-1, 0, 0]];
        let err = AlgebraSpec::from_parts("bad", names, vec![1, 0, 2], exp, vec![1, -1, 0], vec![1, 1, 1]);
        assert!(matches!(err, Err(AlgebraError::StarInconsistent(_, _))));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = two_gen();
        let b = Arc::new(AlgebraBuilder::new("other").build().unwrap());
        assert_eq!(Element::one(&a).try_mul(&Element::one(&b)), Err(AlgebraError::Mismatch));
    }
}
