//! Reduction modulo two-sided ideals of quasi-commutative algebras:
//! degree-truncated twisted Buchberger completion, certified reduction and
//! bounded ideal membership by exact linear algebra.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use rustc_hash::{FxHashMap, FxHashSet};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::twistalg::{same_spec, AlgebraError, AlgebraSpec, Element, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("degree budget exhausted: {0}")]
    DegreeBudget(String),
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Degree-lexicographic order; ties are broken by comparing exponents of
/// generators from the highest priority down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    rank: Vec<u16>,
    by_rank: Vec<u16>,
}

/// Sort key realising a [`MonomialOrder`] through derived lexicographic
/// comparison.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdKey {
    deg: u32,
    key: SmallVec<[(u16, u16); 6]>,
}

impl MonomialOrder {
    /// Later generators in the presentation rank higher.
    pub fn deglex(spec: &AlgebraSpec) -> MonomialOrder {
        let n = spec.len();
        MonomialOrder { rank: (0..n as u16).collect(), by_rank: (0..n as u16).collect() }
    }

    /// Generators in `top` rank above all others, the first one highest.
    pub fn with_priority(spec: &AlgebraSpec, top: &[usize]) -> MonomialOrder {
        let n = spec.len();
        let mut seq: Vec<usize> = (0..n).filter(|g| !top.contains(g)).collect();
        seq.extend(top.iter().rev());
        let mut rank = vec![0u16; n];
        for (r, &g) in seq.iter().enumerate() {
            rank[g] = r as u16;
        }
        MonomialOrder { rank, by_rank: seq.iter().map(|&g| g as u16).collect() }
    }

    pub fn key(&self, spec: &AlgebraSpec, m: &Monomial) -> OrdKey {
        let mut key: SmallVec<[(u16, u16); 6]> =
            m.0.iter().map(|&(g, e)| (self.rank[g as usize], e)).collect();
        key.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        OrdKey { deg: spec.mono_degree(m), key }
    }

    pub fn monomial(&self, k: &OrdKey) -> Monomial {
        let mut v: SmallVec<[(u16, u16); 6]> =
            k.key.iter().map(|&(r, e)| (self.by_rank[r as usize], e)).collect();
        v.sort_unstable_by_key(|p| p.0);
        Monomial(v)
    }

    pub fn cmp(&self, spec: &AlgebraSpec, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(spec, a).cmp(&self.key(spec, b))
    }

    /// Leading monomial and coefficient of a nonzero element.
    pub fn leading(&self, a: &Element) -> Option<(Monomial, Scalar)> {
        let spec = a.spec();
        a.terms()
            .iter()
            .max_by(|x, y| self.cmp(spec, &x.0, &y.0))
            .map(|(m, s)| (m.clone(), s.clone()))
    }
}

/// A two-sided ideal presented by generating relations (each `= 0`).
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub algebra: Arc<AlgebraSpec>,
    pub relations: Vec<Element>,
    pub order: MonomialOrder,
    /// Degree bound for completion and membership; `None` selects the
    /// default of input degree plus four.
    pub max_degree: Option<u32>,
    pub star_closed: bool,
    /// Cap on the spanning set built by bounded membership.
    pub size_cap: usize,
    /// Set by [`groebner`] when every pair up to the bound was resolved.
    pub completed: bool,
}

pub const DEFAULT_SIZE_CAP: usize = 200_000;

impl IdealSpec {
    pub fn new(algebra: &Arc<AlgebraSpec>, relations: Vec<Element>) -> Result<IdealSpec, ReduceError> {
        for (i, r) in relations.iter().enumerate() {
            if !same_spec(algebra, r.spec()) {
                return Err(AlgebraError::Mismatch.into());
            }
            if r.is_zero() {
                return Err(ReduceError::ZeroRelation(i));
            }
        }
        Ok(IdealSpec {
            algebra: algebra.clone(),
            relations,
            order: MonomialOrder::deglex(algebra),
            max_degree: None,
            star_closed: false,
            size_cap: DEFAULT_SIZE_CAP,
            completed: false,
        })
    }

    pub fn with_order(mut self, order: MonomialOrder) -> IdealSpec {
        self.order = order;
        self
    }

    pub fn with_max_degree(mut self, d: u32) -> IdealSpec {
        self.max_degree = Some(d);
        self
    }

    /// Adds the star of every relation that is not already listed.
    pub fn star_closure(mut self) -> IdealSpec {
        let extra: Vec<Element> = self
            .relations
            .iter()
            .map(Element::star)
            .filter(|s| !self.relations.contains(s) && !self.relations.contains(&s.neg()))
            .collect();
        for e in extra {
            if !self.relations.contains(&e) {
                self.relations.push(e);
            }
        }
        self.star_closed = true;
        self
    }

    /// The ideal of the `mu = 1` specialisation.
    pub fn specialize_classical(&self) -> IdealSpec {
        let twin = self.algebra.classical_twin();
        IdealSpec {
            algebra: twin,
            relations: self
                .relations
                .iter()
                .map(Element::specialize_classical)
                .filter(|r| !r.is_zero())
                .collect(),
            order: self.order.clone(),
            max_degree: self.max_degree,
            star_closed: self.star_closed,
            size_cap: self.size_cap,
            completed: false,
        }
    }
}

/// One summand `left · g_relation · right` of a reduction certificate.
#[derive(Clone, Debug)]
pub struct CertTerm {
    pub left: Element,
    pub relation: usize,
    pub right: Element,
}

/// `scale · input = remainder + Σ left · g · right`.
#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub remainder: Element,
    pub scale: Scalar,
    pub certificate: Vec<CertTerm>,
}

impl ReductionResult {
    /// Recomputes the certificate from scratch and checks it exactly.
    pub fn replay(&self, input: &Element, relations: &[Element]) -> bool {
        let mut rhs = self.remainder.clone();
        for t in &self.certificate {
            rhs = &rhs + &(&(&t.left * &relations[t.relation]) * &t.right);
        }
        input.scale(&self.scale) == rhs
    }
}

type Poly = BTreeMap<OrdKey, Scalar>;

fn to_poly(order: &MonomialOrder, a: &Element) -> Poly {
    let spec = a.spec();
    a.terms().iter().map(|(m, s)| (order.key(spec, m), s.clone())).collect()
}

fn poly_axpy(p: &mut Poly, c: &Scalar, q: &Poly) {
    for (k, s) in q {
        let v = s.mul(c);
        match p.get_mut(k) {
            Some(x) => {
                let y = x.add(&v);
                if y.is_zero() {
                    p.remove(k);
                } else {
                    *x = y;
                }
            }
            None => {
                if !v.is_zero() {
                    p.insert(k.clone(), v);
                }
            }
        }
    }
}

fn poly_scale(p: &mut Poly, c: &Scalar) {
    for v in p.values_mut() {
        *v = v.mul(c);
    }
}

struct BasisEntry {
    elem: Element,
    lead: Monomial,
    unit: bool,
}

impl BasisEntry {
    fn new(order: &MonomialOrder, elem: Element) -> BasisEntry {
        let (lead, lc) = order.leading(&elem).expect("nonzero relation");
        BasisEntry { elem, lead, unit: lc.is_unit() }
    }
}

fn left_mul(u: &Monomial, g: &Element) -> Element {
    &Element::monomial(g.spec(), u.clone(), Scalar::one()) * g
}

/// Content of an element: monic gcd of all coefficients.
pub fn content(a: &Element) -> Scalar {
    let mut g = Scalar::zero();
    for (_, s) in a.terms() {
        g = g.gcd(s);
        if g.is_unit() {
            return Scalar::one();
        }
    }
    g
}

/// Divides out the content and makes a unit leading coefficient equal to one.
fn normalize(order: &MonomialOrder, a: &Element) -> Element {
    let c = content(a);
    let a = if c.is_one() {
        a.clone()
    } else {
        a.map_coeffs(|s| s.div_exact(&c).expect("content divides"))
    };
    match order.leading(&a) {
        Some((_, lc)) => match lc.unit_inverse() {
            Some(inv) => a.scale(&inv),
            None => a,
        },
        None => a,
    }
}

fn reduce_with(
    order: &MonomialOrder,
    basis: &[BasisEntry],
    input: &Element,
    track: bool,
) -> (Element, Scalar, Vec<Option<Element>>) {
    let spec = input.spec().clone();
    let mut p = to_poly(order, input);
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    let mut scale = Scalar::one();
    let mut lefts: Vec<Option<Element>> = vec![None; if track { basis.len() } else { 0 }];
    while let Some((lk, lc)) = p.last_key_value().map(|(k, v)| (k.clone(), v.clone())) {
        let m = order.monomial(&lk);
        let hit = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.lead.divides(&m))
            .min_by_key(|(_, b)| !b.unit);
        let Some((i, b)) = hit else {
            p.pop_last();
            rem.push((m, lc));
            continue;
        };
        let u = m.div(&b.lead);
        let ug = left_mul(&u, &b.elem);
        let cug = ug.coeff(&m);
        let ugp = to_poly(order, &ug);
        match cug.unit_inverse() {
            Some(inv) => {
                let q = lc.mul(&inv);
                poly_axpy(&mut p, &q.neg(), &ugp);
                if track {
                    let add = Element::monomial(&spec, u, q);
                    lefts[i] = Some(match lefts[i].take() {
                        Some(l) => &l + &add,
                        None => add,
                    });
                }
            }
            None => {
                poly_scale(&mut p, &cug);
                poly_axpy(&mut p, &lc.neg(), &ugp);
                for r in rem.iter_mut() {
                    r.1 = r.1.mul(&cug);
                }
                scale = scale.mul(&cug);
                if track {
                    for l in lefts.iter_mut().flatten() {
                        *l = l.scale(&cug);
                    }
                    let add = Element::monomial(&spec, u, lc);
                    lefts[i] = Some(match lefts[i].take() {
                        Some(l) => &l + &add,
                        None => add,
                    });
                }
            }
        }
    }
    (Element::from_terms(&spec, rem), scale, lefts)
}

fn entries(ideal: &IdealSpec) -> Vec<BasisEntry> {
    ideal
        .relations
        .iter()
        .map(|r| BasisEntry::new(&ideal.order, r.clone()))
        .collect()
}

/// Reduces `a` modulo the relations of `ideal`, recording a certificate
/// in terms of `ideal.relations`.
pub fn reduce(a: &Element, ideal: &IdealSpec) -> ReductionResult {
    let basis = entries(ideal);
    let (remainder, scale, lefts) = reduce_with(&ideal.order, &basis, a, true);
    let one = Element::one(a.spec());
    let certificate = lefts
        .into_iter()
        .enumerate()
        .filter_map(|(i, l)| l.filter(|l| !l.is_zero()).map(|left| CertTerm { left, relation: i, right: one.clone() }))
        .collect();
    ReductionResult { remainder, scale, certificate }
}

/// Remainder only, without certificate bookkeeping.
pub fn normal_form(a: &Element, ideal: &IdealSpec) -> Element {
    let basis = entries(ideal);
    reduce_with(&ideal.order, &basis, a, false).0
}

/// Degree-truncated completion of the two-sided ideal: a left basis closed
/// under right multiplication by generators, with all pairs of leading
/// monomials up to the bound resolved.
pub fn groebner(ideal: &IdealSpec) -> Result<IdealSpec, ReduceError> {
    let order = &ideal.order;
    let spec = &ideal.algebra;
    let bound = ideal
        .max_degree
        .unwrap_or_else(|| ideal.relations.iter().map(Element::degree).max().unwrap_or(0) + 4);
    let mut basis: Vec<BasisEntry> = Vec::new();
    let mut queue: Vec<Element> = ideal.relations.iter().rev().cloned().collect();
    let mut seen: FxHashSet<(usize, usize)> = FxHashSet::default();
    while let Some(cand) = queue.pop() {
        let (r, _, _) = reduce_with(order, &basis, &cand, false);
        if r.is_zero() {
            continue;
        }
        let r = normalize(order, &r);
        if r.degree() > bound {
            continue;
        }
        if basis.len() >= ideal.size_cap {
            return Err(ReduceError::DegreeBudget(format!("completion exceeded {} relations", ideal.size_cap)));
        }
        let j = basis.len();
        basis.push(BasisEntry::new(order, r));
        // right closure
        for g in 0..spec.len() {
            if spec.weight(g) + basis[j].elem.degree() <= bound || spec.weight(g) == 0 {
                let gx = &basis[j].elem * &Element::generator(spec, g);
                if gx.degree() <= bound {
                    queue.push(gx);
                }
            }
        }
        for i in 0..j {
            if !seen.insert((i, j)) {
                continue;
            }
            let l = basis[i].lead.lcm(&basis[j].lead);
            if spec.mono_degree(&l) > bound {
                continue;
            }
            let ui = l.div(&basis[i].lead);
            let uj = l.div(&basis[j].lead);
            let a = left_mul(&ui, &basis[i].elem);
            let b = left_mul(&uj, &basis[j].elem);
            let ca = a.coeff(&l);
            let cb = b.coeff(&l);
            let s = match cb.unit_inverse() {
                Some(inv) => &a - &b.scale(&ca.mul(&inv)),
                None => &a.scale(&cb) - &b.scale(&ca),
            };
            if !s.is_zero() {
                queue.push(s);
            }
        }
    }
    let mut out = ideal.clone();
    out.relations = basis.into_iter().map(|b| b.elem).collect();
    out.max_degree = Some(bound);
    out.completed = true;
    Ok(out)
}

/// Sparse row over the scalar ring, sorted by column.
type Row = Vec<(u32, Scalar)>;

fn row_axpy(a: &Scalar, x: &Row, b: &Scalar, y: &Row) -> Row {
    // a·x − b·y
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            let v = x[i].1.mul(a);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            let v = y[j].1.mul(b).neg();
            if !v.is_zero() {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = x[i].1.mul(a).sub(&y[j].1.mul(b));
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_scale(x: &Row, c: &Scalar) -> Row {
    x.iter().map(|(i, s)| (*i, s.mul(c))).collect()
}

struct Pivot {
    row: Row,
    combo: Row,
}

/// Incremental fraction-free echelon form over `Q(i)[mu, 1/mu]`, optionally
/// tracking each row as a combination of the inserted vectors.
#[derive(Default)]
pub struct Echelon {
    pivots: FxHashMap<u32, Pivot>,
    inserted: u32,
    track: bool,
}

impl Echelon {
    pub fn new(track: bool) -> Echelon {
        Echelon { pivots: FxHashMap::default(), inserted: 0, track }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading entries against the pivots; returns the residue,
    /// the accumulated scale and (when tracking) the combination with
    /// `scale · v = residue + Σ combo_i · inserted_i`.
    fn eliminate(&self, mut v: Row, mut combo: Row) -> (Row, Scalar, Row) {
        let mut scale = Scalar::one();
        while let Some((c, lead)) = v.first().cloned() {
            let Some(p) = self.pivots.get(&c) else { break };
            let pl = &p.row[0].1;
            if pl.is_one() {
                v = row_axpy(&Scalar::one(), &v, &lead, &p.row);
                if self.track {
                    combo = row_axpy(&Scalar::one(), &combo, &lead, &p.combo);
                }
            } else {
                v = row_axpy(pl, &v, &lead, &p.row);
                scale = scale.mul(pl);
                if self.track {
                    combo = row_axpy(pl, &combo, &lead, &p.combo);
                }
            }
        }
        (v, scale, combo)
    }

    /// Inserts a vector; returns true when it increased the rank.
    pub fn insert(&mut self, v: Row) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let combo = if self.track { vec![(idx, Scalar::one())] } else { Vec::new() };
        let (v, _, combo) = self.eliminate(v, combo);
        if v.is_empty() {
            return false;
        }
        let mut row = v;
        let mut combo = combo;
        let lead = row[0].1.clone();
        if let Some(inv) = lead.unit_inverse() {
            row = row_scale(&row, &inv);
            combo = row_scale(&combo, &inv);
        } else {
            let mut g = Scalar::zero();
            for (_, s) in row.iter().chain(combo.iter()) {
                g = g.gcd(s);
            }
            if !g.is_one() && !g.is_zero() {
                row = row.iter().map(|(i, s)| (*i, s.div_exact(&g).expect("gcd divides"))).collect();
                combo = combo.iter().map(|(i, s)| (*i, s.div_exact(&g).expect("gcd divides"))).collect();
            }
        }
        let c = row[0].0;
        self.pivots.insert(c, Pivot { row, combo });
        true
    }

    /// `Some((scale, combo))` with `scale · v = Σ combo_i · inserted_i` when
    /// `v` lies in the span.
    pub fn solve(&self, v: Row) -> Option<(Scalar, Row)> {
        let (r, scale, combo) = self.eliminate(v, Vec::new());
        if r.is_empty() {
            Some((scale, combo.into_iter().map(|(i, s)| (i, s.neg())).collect()))
        } else {
            None
        }
    }

    pub fn contains(&self, v: Row) -> bool {
        self.eliminate(v, Vec::new()).0.is_empty()
    }
}

/// Assigns stable column indices to monomials.
#[derive(Default)]
pub struct Columns {
    map: FxHashMap<Monomial, u32>,
}

impl Columns {
    pub fn row(&mut self, a: &Element) -> Row {
        let mut r: Row = a
            .terms()
            .iter()
            .map(|(m, s)| {
                let n = self.map.len() as u32;
                (*self.map.entry(m.clone()).or_insert(n), s.clone())
            })
            .collect();
        r.sort_unstable_by_key(|e| e.0);
        r
    }

    /// Row for `a` if every monomial already has a column.
    pub fn row_existing(&self, a: &Element) -> Option<Row> {
        let mut r = Vec::with_capacity(a.len());
        for (m, s) in a.terms() {
            r.push((*self.map.get(m)?, s.clone()));
        }
        r.sort_unstable_by_key(|e| e.0);
        Some(r)
    }
}

/// Solves `scale · target = Σ c_i · vectors_i` exactly; `None` when the
/// target is outside the span.
pub fn linear_combination(target: &Element, vectors: &[Element]) -> Option<(Scalar, Vec<Scalar>)> {
    let mut cols = Columns::default();
    let mut ech = Echelon::new(true);
    for v in vectors {
        let r = cols.row(v);
        ech.insert(r);
    }
    let t = cols.row_existing(target)?;
    let (scale, combo) = ech.solve(t)?;
    let mut out = vec![Scalar::zero(); vectors.len()];
    for (i, s) in combo {
        out[i as usize] = s;
    }
    Some((scale, out))
}

fn monomials_upto(spec: &AlgebraSpec, max: u32) -> Vec<Vec<Monomial>> {
    // by_deg[d] lists monomials of unweighted total degree d
    let n = spec.len();
    let mut by_deg: Vec<Vec<Monomial>> = vec![vec![Monomial::one()]];
    for d in 1..=max as usize {
        let mut next = Vec::new();
        for m in &by_deg[d - 1] {
            let top = m.0.last().map_or(0, |&(g, _)| g as usize);
            for g in top..n {
                next.push(m.mul(&Monomial::gen(g)));
            }
        }
        by_deg.push(next);
    }
    by_deg
}

fn tdeg_range(a: &Element) -> (u32, u32) {
    let mut lo = u32::MAX;
    let mut hi = 0;
    for (m, _) in a.terms() {
        let d = m.total_degree();
        lo = lo.min(d);
        hi = hi.max(d);
    }
    (lo, hi)
}

/// Splits of `u` as ordered pairs `(m, m')` with `m m' = u` commutatively.
fn splits(u: &Monomial) -> Vec<(Monomial, Monomial)> {
    let mut out = vec![(Monomial::one(), Monomial::one())];
    for (g, e) in u.gens() {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for (l, r) in &out {
            for k in 0..=e {
                next.push((l.mul(&Monomial::gen_pow(g, k)), r.mul(&Monomial::gen_pow(g, e - k))));
            }
        }
        out = next;
    }
    out
}

/// Exact membership of `a` in the two-sided ideal truncated at the degree
/// bound, by elimination over the span of all `m · g · m'`. Degrees here
/// are unweighted total degrees.
pub fn member_bounded(a: &Element, ideal: &IdealSpec) -> Result<bool, ReduceError> {
    if !same_spec(a.spec(), &ideal.algebra) {
        return Err(AlgebraError::Mismatch.into());
    }
    if a.is_zero() {
        return Ok(true);
    }
    let spec = &ideal.algebra;
    let (_, ahi) = tdeg_range(a);
    let bound = ideal.max_degree.unwrap_or(ahi + 4).max(ahi);
    let graded = ideal.relations.iter().all(|r| {
        let (lo, hi) = tdeg_range(r);
        lo == hi
    });
    let targets: Vec<u32> = {
        let mut t: Vec<u32> = a.terms().iter().map(|(m, _)| m.total_degree()).collect();
        t.sort_unstable();
        t.dedup();
        t
    };
    let max_mult = ideal
        .relations
        .iter()
        .map(|r| bound.saturating_sub(tdeg_range(r).0))
        .max()
        .unwrap_or(0);
    let monos = monomials_upto(spec, max_mult);
    let mut cols = Columns::default();
    let mut ech = Echelon::new(false);
    let mut count = 0usize;
    for g in &ideal.relations {
        let (glo, ghi) = tdeg_range(g);
        if glo > bound {
            continue;
        }
        let degs: Vec<u32> = if graded {
            targets.iter().filter(|&&t| t >= glo).map(|t| t - glo).collect()
        } else {
            (0..=bound.saturating_sub(ghi)).collect()
        };
        for d in degs {
            for u in &monos[d as usize] {
                for (l, r) in splits(u) {
                    count += 1;
                    if count > ideal.size_cap {
                        return Err(ReduceError::DegreeBudget(format!(
                            "spanning set exceeds {} vectors at degree {}",
                            ideal.size_cap, bound
                        )));
                    }
                    let lm = Element::monomial(spec, l, Scalar::one());
                    let rm = Element::monomial(spec, r, Scalar::one());
                    let v = &(&lm * g) * &rm;
                    let row = cols.row(&v);
                    ech.insert(row);
                }
            }
        }
    }
    match cols.row_existing(a) {
        Some(r) => Ok(ech.contains(r)),
        None => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twistalg::AlgebraBuilder;

    fn three_commuting() -> Arc<AlgebraSpec> {
        let mut b = AlgebraBuilder::new("P3");
        for n in ["z1", "z2", "z3"] {
            b.real(n, 1, 1);
        }
        Arc::new(b.build().unwrap())
    }

    #[test]
    fn two_step_completion() {
        let s = three_commuting();
        let v = |n| Element::var(&s, n);
        let ideal = IdealSpec::new(&s, vec![&v("z1") - &v("z2"), &v("z2") - &v("z3")]).unwrap();
        let gb = groebner(&ideal).unwrap();
        let r = reduce(&(&v("z1") - &v("z3")), &gb);
        assert!(r.remainder.is_zero());
        assert!(r.replay(&(&v("z1") - &v("z3")), &gb.relations));
    }

    #[test]
    fn empty_ideal_stays_empty() {
        let s = three_commuting();
        let gb = groebner(&IdealSpec::new(&s, vec![]).unwrap()).unwrap();
        assert!(gb.relations.is_empty());
    }

    #[test]
    fn zero_relation_rejected() {
        let s = three_commuting();
        assert_eq!(
            IdealSpec::new(&s, vec![Element::zero(&s)]).unwrap_err(),
            ReduceError::ZeroRelation(0)
        );
    }

    #[test]
    fn nonunit_pseudo_division() {
        let s = three_commuting();
        let v = |n| Element::var(&s, n);
        let c = Scalar::one().sub(&Scalar::mu());
        let ideal = IdealSpec::new(&s, vec![&v("z3").scale(&c) - &v("z1")]).unwrap();
        let input = &v("z3") * &v("z2");
        let r = reduce(&input, &ideal);
        assert_eq!(r.scale, c);
        assert!(r.replay(&input, &ideal.relations));
        assert_eq!(r.remainder, &v("z1") * &v("z2"));
    }

    #[test]
    fn linear_combination_solves() {
        let s = three_commuting();
        let v = |n| Element::var(&s, n);
        let a = &v("z1") + &v("z2");
        let b = &v("z2") - &v("z3");
        let t = &a.scale(&Scalar::rat(1, 2)) + &b.scale(&Scalar::mu());
        let (scale, c) = linear_combination(&t, &[a.clone(), b.clone()]).unwrap();
        assert_eq!(t.scale(&scale), &a.scale(&c[0]) + &b.scale(&c[1]));
        assert!(linear_combination(&v("z3"), &[a, b]).is_none());
    }
}
