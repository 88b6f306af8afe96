//! Monads over C⁴, the ADHM projector built from them, its charge
//! decomposition and gauge behaviour.
//!
//! Identities that hold only modulo the monad ideal are certified in two
//! layers: an exact ambient equality `target = Σ Lᵢ Xᵢ Rᵢ` where every entry
//! of each block `Xᵢ` carries its own replayable certificate
//! `scale · x = Σ l · g · r` over the relation list.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::geom::{self, add_c4, apply_j, r2, ETA};
use crate::matrix::{self, Mat};
use crate::reduce::{linear_combination, CertTerm, Columns, Echelon, IdealSpec, ReductionResult};
use crate::report::{brief, timed, Check};
use crate::scalar::{GaussRat, Rat, Scalar};
use crate::twistalg::{sum, AlgebraBuilder, AlgebraSpec, Element, Monomial, ZBalance};

pub const DEFAULT_TERM_CAP: usize = 1_000_000;
pub const DEFAULT_MAX_DEGREE: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdhmError {
    #[error("k unsupported at current degree budget: {0}")]
    Budget(String),
    #[error("charge must be positive")]
    ZeroCharge,
    #[error("tautological mode exists only for k = 1")]
    TautologicalCharge,
    #[error("A not symplectic-unitary: {0}")]
    NotSymplectic(String),
    #[error("B singular")]
    Singular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Tautological,
    Symbolic,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Mode, String> {
        match s {
            "tautological" => Ok(Mode::Tautological),
            "symbolic" => Ok(Mode::Symbolic),
            _ => Err(format!("unknown mode {s}")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Tautological => "tautological",
            Mode::Symbolic => "symbolic",
        })
    }
}

#[derive(Clone, Debug)]
pub struct MonadConfig {
    pub k: usize,
    pub mode: Mode,
    pub theta_zero: bool,
    pub max_degree: Option<u32>,
    pub term_cap: usize,
}

impl MonadConfig {
    pub fn new(k: usize, mode: Mode) -> MonadConfig {
        MonadConfig { k, mode, theta_zero: false, max_degree: None, term_cap: DEFAULT_TERM_CAP }
    }
}

/// An ideal element with its certificate `scale · value = Σ l · g · r`.
#[derive(Clone, Debug)]
pub struct Member {
    pub value: Element,
    pub scale: Scalar,
    pub cert: Vec<CertTerm>,
}

impl Member {
    pub fn zero(spec: &Arc<AlgebraSpec>) -> Member {
        Member { value: Element::zero(spec), scale: Scalar::one(), cert: Vec::new() }
    }

    pub fn relation(rels: &[Element], i: usize) -> Member {
        let spec = rels[i].spec();
        Member {
            value: rels[i].clone(),
            scale: Scalar::one(),
            cert: vec![CertTerm { left: Element::one(spec), relation: i, right: Element::one(spec) }],
        }
    }

    pub fn replay(&self, rels: &[Element]) -> bool {
        let r = ReductionResult {
            remainder: Element::zero(self.value.spec()),
            scale: self.scale.clone(),
            certificate: self.cert.clone(),
        };
        r.replay(&self.value, rels)
    }

    /// Largest weighted degree among the certificate summands.
    pub fn degree(&self, rels: &[Element]) -> u32 {
        self.cert
            .iter()
            .map(|t| t.left.degree() + rels[t.relation].degree() + t.right.degree())
            .max()
            .unwrap_or(0)
    }

    /// `(l g r)* = r* g* l*`, with `star_rel[i]` the index of `g_i*`.
    fn star(&self, star_rel: &BTreeMap<usize, usize>) -> Member {
        Member {
            value: self.value.star(),
            scale: self.scale.conj(),
            cert: self
                .cert
                .iter()
                .map(|t| CertTerm { left: t.right.star(), relation: star_rel[&t.relation], right: t.left.star() })
                .collect(),
        }
    }
}

pub type MemberMat = Vec<Vec<Member>>;

pub fn values(m: &MemberMat) -> Mat {
    m.iter().map(|r| r.iter().map(|x| x.value.clone()).collect()).collect()
}

/// Replays every entry of the blocks; returns the maximal certificate degree.
fn replay_blocks(blocks: &[&MemberMat], rels: &[Element]) -> Result<u32, String> {
    let mut deg = 0;
    for (bi, b) in blocks.iter().enumerate() {
        for (i, row) in b.iter().enumerate() {
            for (j, m) in row.iter().enumerate() {
                if !m.replay(rels) {
                    return Err(format!("certificate of block {bi} entry ({},{}) does not replay", i + 1, j + 1));
                }
                deg = deg.max(m.degree(rels));
            }
        }
    }
    Ok(deg)
}

/// One summand `L X R` of an outer identity; `None` stands for the identity.
pub struct Sandwich<'a> {
    pub left: Option<&'a Mat>,
    pub mid: &'a MemberMat,
    pub right: Option<&'a Mat>,
}

fn mat_degree(m: Option<&Mat>) -> u32 {
    m.map(|m| m.iter().flatten().map(Element::degree).max().unwrap_or(0)).unwrap_or(0)
}

/// Certifies `target ∈ ideal` entrywise through `target = Σ L X R`.
pub(crate) fn certify(name: &str, target: &Mat, parts: &[Sandwich<'_>], rels: &[Element], bound: u32) -> (Check, bool) {
    let mut budget = false;
    let c = timed(name, || {
        let spec = target[0][0].spec().clone();
        let mut total = matrix::zeros(&spec, target.len(), target[0].len());
        let mut deg = 0;
        for p in parts {
            let mut v = values(p.mid);
            if let Some(l) = p.left {
                v = matrix::mul(l, &v);
            }
            if let Some(r) = p.right {
                v = matrix::mul(&v, r);
            }
            total = matrix::add(&total, &v);
            let inner = match replay_blocks(&[p.mid], rels) {
                Ok(d) => d,
                Err(e) => return (false, e),
            };
            deg = deg.max(mat_degree(p.left) + inner + mat_degree(p.right));
        }
        let diff = matrix::sub(target, &total);
        if let Some((i, j, e)) = matrix::first_nonzero(&diff) {
            return (false, format!("outer identity fails at ({},{}): {}", i + 1, j + 1, brief(e)));
        }
        if deg > bound {
            budget = true;
            return (false, format!("identity not certified at degree bound {bound} (certificate degree {deg})"));
        }
        (true, format!("certificate degree {deg}"))
    });
    (c.with_bound(bound), budget)
}

pub(crate) fn exact_check(name: &str, f: impl FnOnce() -> Result<(), String>) -> Check {
    timed(name, || match f() {
        Ok(()) => (true, "exact in the ambient algebra".into()),
        Err(e) => (false, e),
    })
}

pub(crate) fn mat_equal(a: &Mat, b: &Mat) -> Result<(), String> {
    match matrix::first_nonzero(&matrix::sub(a, b)) {
        None => Ok(()),
        Some((i, j, e)) => Err(format!("entry ({},{}) differs by {}", i + 1, j + 1, brief(e))),
    }
}

/// Largest number of raw terms any entry of `a b` expands to.
fn product_estimate(a: &Mat, b: &Mat) -> usize {
    let mut worst = 0usize;
    for row in a {
        for j in 0..b[0].len() {
            let n = row.iter().enumerate().fold(0usize, |n, (p, x)| n.saturating_add(x.len().saturating_mul(b[p][j].len())));
            worst = worst.max(n);
        }
    }
    worst
}

pub struct MonadData {
    pub k: usize,
    pub mode: Mode,
    pub spec: Arc<AlgebraSpec>,
    /// M¹..M⁴, each (2k+2)×k.
    pub m: Vec<Mat>,
    /// N¹..N⁴ after self-duality elimination, each k×(2k+2).
    pub n: Vec<Mat>,
    pub sigma: Mat,
    pub sigma_j: Mat,
    pub tau: Mat,
    pub rho2: Mat,
    /// The central formal inverse ρ⁻² and its square root ρ⁻¹.
    pub rinv: Mat,
    pub rhalf: Mat,
    pub relations: Vec<Element>,
    pub labels: Vec<String>,
    /// `orth[b][d][(α, β)]`: relation index of the z_α z_β coefficient.
    pub orth: Vec<Vec<BTreeMap<(usize, usize), usize>>>,
    star_rel: BTreeMap<usize, usize>,
    inv_left: Vec<Vec<usize>>,
    inv_right: Vec<Vec<usize>>,
    root: Vec<Vec<usize>>,
    root_comm: Vec<Vec<usize>>,
    pub sphere: usize,
    pub bound: u32,
    pub term_cap: usize,
}

pub fn m_name(alpha: usize, a: usize, b: usize) -> String {
    format!("M[{alpha},{a},{b}]")
}

fn add_inverse_block(b: &mut AlgebraBuilder, sym: &str, k: usize) {
    for i in 1..=k {
        for j in i..=k {
            if i == j {
                b.real(&format!("{sym}[{i},{i}]"), 0, 0);
            } else {
                b.complex(&format!("{sym}[{i},{j}]"), &format!("{sym}[{j},{i}]"), 0, 0);
            }
        }
    }
}

fn block(spec: &Arc<AlgebraSpec>, sym: &str, k: usize) -> Mat {
    (1..=k).map(|i| (1..=k).map(|j| Element::var(spec, &format!("{sym}[{i},{j}]"))).collect()).collect()
}

/// Monad algebra: C⁴, the M generators (symbolic mode) and ρ⁻², ρ⁻¹.
pub fn monad_spec(k: usize, mode: Mode) -> AlgebraSpec {
    let mut b = AlgebraBuilder::new(&format!("monad({k})"));
    let _ = add_c4(&mut b);
    if mode == Mode::Symbolic {
        let mut gens: Vec<Vec<usize>> = vec![Vec::new(); 4];
        for (alpha, g) in gens.iter_mut().enumerate() {
            for a in 1..=2 * k + 2 {
                for col in 1..=k {
                    let n = m_name(alpha + 1, a, col);
                    let (x, _) = b.complex(&n, &format!("{n}'"), 0, 1);
                    g.push(x);
                }
            }
        }
        for al in 0..4 {
            for be in 0..4 {
                if al == be {
                    continue;
                }
                for &x in &gens[al] {
                    for &y in &gens[be] {
                        if al < be {
                            b.phase(x, y, ETA[be][al]);
                        }
                        let ys = b.star_of(y);
                        b.phase(x, ys, ETA[al][be]);
                    }
                }
            }
        }
    }
    add_inverse_block(&mut b, "R", k);
    add_inverse_block(&mut b, "S", k);
    b.build().expect("monad presentation is consistent")
}

fn adjoint_block(m: &Mat) -> Mat {
    matrix::adjoint(m)
}

/// Splits an element by its coordinate part: z-monomial ↦ coefficient.
fn split_coordinates(e: &Element) -> BTreeMap<Monomial, Element> {
    let spec = e.spec();
    let mut parts: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, s) in e.terms() {
        let (zs, rest): (Vec<_>, Vec<_>) = m.gens().partition(|&(g, _)| spec.grading(g) != 0);
        let zm = Monomial::from_exponents(&zs);
        let rm = Monomial::from_exponents(&rest);
        parts.entry(zm).or_default().push((rm, s.clone()));
    }
    parts.into_iter().map(|(z, t)| (z, Element::from_terms(spec, t))).collect()
}

pub fn build_monad(cfg: &MonadConfig) -> Result<MonadData, AdhmError> {
    let k = cfg.k;
    if k == 0 {
        return Err(AdhmError::ZeroCharge);
    }
    if cfg.mode == Mode::Tautological && k != 1 {
        return Err(AdhmError::TautologicalCharge);
    }
    let base = Arc::new(monad_spec(k, cfg.mode));
    let spec = if cfg.theta_zero { base.classical_twin() } else { base };
    let rows = 2 * k + 2;
    let m: Vec<Mat> = (1..=4)
        .map(|alpha| match cfg.mode {
            Mode::Tautological => {
                let mut c = matrix::zeros(&spec, 4, 1);
                c[alpha - 1][0] = Element::one(&spec);
                c
            }
            Mode::Symbolic => (1..=rows)
                .map(|a| (1..=k).map(|b| Element::var(&spec, &m_name(alpha, a, b))).collect())
                .collect(),
        })
        .collect();
    // N¹ = M²†, N² = −M¹†, N³ = M⁴†, N⁴ = −M³†
    let n: Vec<Mat> = vec![
        adjoint_block(&m[1]),
        matrix::scale(&adjoint_block(&m[0]), &Scalar::int(-1)),
        adjoint_block(&m[3]),
        matrix::scale(&adjoint_block(&m[2]), &Scalar::int(-1)),
    ];
    let zero = matrix::zeros(&spec, rows, k);
    let sigma = (0..4).fold(zero, |acc, a| {
        let z = geom::z(&spec, a + 1);
        matrix::add(&acc, &matrix::map(&m[a], |e| e * &z))
    });
    let sigma_j = matrix::map(&sigma, apply_j);
    let tau = matrix::adjoint(&sigma_j);
    let rho2 = matrix::mul(&matrix::adjoint(&sigma), &sigma);
    let rinv = block(&spec, "R", k);
    let rhalf = block(&spec, "S", k);

    let mut relations: Vec<Element> = Vec::new();
    let push = |e: Element, rels: &mut Vec<Element>| -> Option<usize> {
        if e.is_zero() {
            None
        } else {
            rels.push(e);
            Some(rels.len() - 1)
        }
    };
    // composition relations Σ_r (N^α M^β + η_βα N^β M^α) for α ≤ β
    let mut orth = vec![vec![BTreeMap::new(); k]; k];
    for al in 0..4 {
        for be in al..4 {
            let nm_ab = matrix::mul(&n[al], &m[be]);
            let nm_ba = matrix::mul(&n[be], &m[al]);
            let eta = Scalar::mu_pow(ETA[be][al]);
            for b in 0..k {
                for d in 0..k {
                    let g = &nm_ab[b][d] + &nm_ba[b][d].scale(&eta);
                    let g = if spec.is_classical() { g.specialize_classical() } else { g };
                    if let Some(i) = push(g, &mut relations) {
                        orth[b][d].insert((al, be), i);
                    }
                }
            }
        }
    }
    let mut star_rel = BTreeMap::new();
    let originals: Vec<usize> = orth.iter().flatten().flat_map(|m| m.values().copied()).collect();
    for i in originals {
        let s = relations[i].star();
        let j = push(s, &mut relations).expect("star of nonzero");
        star_rel.insert(i, j);
        star_rel.insert(j, i);
    }
    let one = Element::one(&spec);
    let ident = matrix::identity(&spec, k);
    let f = matrix::sub(&matrix::mul(&rinv, &rho2), &ident);
    let fr = matrix::sub(&matrix::mul(&rho2, &rinv), &ident);
    let l = matrix::sub(&matrix::mul(&rhalf, &rhalf), &rinv);
    let kc = matrix::sub(&matrix::mul(&rho2, &rhalf), &matrix::mul(&rhalf, &rho2));
    // usize::MAX marks an entry that is identically zero
    let idx = |mat: &Mat, rels: &mut Vec<Element>| -> Vec<Vec<usize>> {
        mat.iter()
            .map(|r| r.iter().map(|e| push(e.clone(), rels).unwrap_or(usize::MAX)).collect())
            .collect()
    };
    let inv_left = idx(&f, &mut relations);
    let inv_right = idx(&fr, &mut relations);
    let root = idx(&l, &mut relations);
    let root_comm = idx(&kc, &mut relations);
    relations.push(&r2(&spec) - &one);
    let sphere = relations.len() - 1;
    let labels = relation_labels(&relations, &orth, sphere);
    let bound = cfg.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    Ok(MonadData {
        k,
        mode: cfg.mode,
        spec,
        m,
        n,
        sigma,
        sigma_j,
        tau,
        rho2,
        rinv,
        rhalf,
        relations,
        labels,
        orth,
        star_rel,
        inv_left,
        inv_right,
        root,
        root_comm,
        sphere,
        bound,
        term_cap: cfg.term_cap,
    })
}

fn relation_labels(rels: &[Element], orth: &[Vec<BTreeMap<(usize, usize), usize>>], sphere: usize) -> Vec<String> {
    let mut l: Vec<String> = (0..rels.len()).map(|i| format!("g{i}")).collect();
    for (b, row) in orth.iter().enumerate() {
        for (d, m) in row.iter().enumerate() {
            for (&(al, be), &i) in m {
                l[i] = format!("orth[{},{};{},{}]", b + 1, d + 1, al + 1, be + 1);
            }
        }
    }
    l[sphere] = "sphere".into();
    l
}

impl MonadData {
    pub fn ideal(&self) -> IdealSpec {
        let rels: Vec<Element> = self.relations[..self.sphere].to_vec();
        IdealSpec::new(&self.spec, rels).expect("relations are nonzero").with_max_degree(self.bound)
    }

    /// Number of M generators (unstarred).
    pub fn parameter_generators(&self) -> usize {
        self.spec.names().iter().filter(|n| n.starts_with("M[") && !n.ends_with('\'')).count()
    }

    fn relation_block(&self, idx: &[Vec<usize>]) -> MemberMat {
        idx.iter()
            .map(|r| {
                r.iter()
                    .map(|&i| if i == usize::MAX { Member::zero(&self.spec) } else { Member::relation(&self.relations, i) })
                    .collect()
            })
            .collect()
    }

    /// σ_{J(z)}^⋆σ_z = τ_zσ_z as ideal members via the composition relations.
    fn orthogonality_block(&self) -> MemberMat {
        let spec = &self.spec;
        let sj_s = matrix::mul(&matrix::adjoint(&self.sigma_j), &self.sigma);
        (0..self.k)
            .map(|b| {
                (0..self.k)
                    .map(|d| {
                        let mut cert = Vec::new();
                        for (&(al, be), &i) in &self.orth[b][d] {
                            let zz = &geom::z(spec, al + 1) * &geom::z(spec, be + 1);
                            let c = if al == be { Scalar::rat(1, 2) } else { Scalar::one() };
                            cert.push(CertTerm { left: Element::constant(spec, c), relation: i, right: zz });
                        }
                        Member { value: sj_s[b][d].clone(), scale: Scalar::one(), cert }
                    })
                    .collect()
            })
            .collect()
    }

    /// σ_{J(z)}^⋆σ_{J(z)} − σ_z^⋆σ_z as ideal members, each coordinate
    /// coefficient solved as a linear combination of composition relations.
    fn norm_block(&self) -> Result<MemberMat, String> {
        let spec = &self.spec;
        let diff = matrix::sub(&matrix::mul(&matrix::adjoint(&self.sigma_j), &self.sigma_j), &self.rho2);
        let pool: Vec<usize> = {
            let mut v: Vec<usize> = self.star_rel.keys().copied().collect();
            v.sort_unstable();
            v
        };
        let vectors: Vec<Element> = pool.iter().map(|&i| self.relations[i].clone()).collect();
        let mut out = Vec::new();
        for (b, row) in diff.iter().enumerate() {
            let mut orow = Vec::new();
            for (d, e) in row.iter().enumerate() {
                let mut scales = Vec::new();
                for (zm, coeff) in split_coordinates(e) {
                    let (s, combo) = linear_combination(&coeff, &vectors)
                        .ok_or_else(|| format!("entry ({},{}) coefficient of {} outside the span", b + 1, d + 1, zm.render(spec)))?;
                    scales.push((zm, s, combo));
                }
                let mut total = Scalar::one();
                for (_, s, _) in &scales {
                    if s.unit_inverse().is_none() && total.div_exact(s).is_none() {
                        total = total.mul(s);
                    }
                }
                let mut cert = Vec::new();
                for (zm, s, combo) in scales {
                    let factor = total.div_exact(&s).expect("scale divides the product");
                    let right = Element::monomial(spec, zm, Scalar::one());
                    for (i, c) in combo.into_iter().enumerate() {
                        if !c.is_zero() {
                            cert.push(CertTerm {
                                left: Element::constant(spec, c.mul(&factor)),
                                relation: pool[i],
                                right: right.clone(),
                            });
                        }
                    }
                }
                orow.push(Member { value: e.clone(), scale: total, cert });
            }
            out.push(orow);
        }
        Ok(out)
    }

    fn guard(&self, a: &Mat, b: &Mat, what: &str) -> Result<(), AdhmError> {
        let est = product_estimate(a, b);
        if est > self.term_cap {
            Err(AdhmError::Budget(format!("{what} needs about {est} terms, cap {}", self.term_cap)))
        } else {
            Ok(())
        }
    }
}

fn identity_or_err(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn parameter_law_checks(md: &MonadData) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(exact_check("sigma entries commute with their adjoints", || {
        let sa = matrix::adjoint(&md.sigma);
        for x in md.sigma.iter().flatten() {
            for y in sa.iter().flatten() {
                identity_or_err((x * y) == (y * x), || format!("{} and {}", brief(x), brief(y)))?;
            }
        }
        Ok(())
    }));
    out.push(exact_check("eliminated N satisfy the N relations", || {
        for al in 0..4 {
            for be in 0..4 {
                let eta = Scalar::mu_pow(ETA[be][al]);
                for x in md.n[al].iter().flatten() {
                    for y in md.n[be].iter().flatten() {
                        identity_or_err((x * y) == (y * x).scale(&eta), || format!("N{} N{}", al + 1, be + 1))?;
                    }
                }
            }
        }
        Ok(())
    }));
    out
}

/// Monad conditions: orthogonality, norm equality and the commutation laws.
pub fn check_monad_conditions(md: &MonadData) -> Vec<Check> {
    let spec = &md.spec;
    let k = md.k;
    let mut out = Vec::new();
    match md.mode {
        Mode::Symbolic => {
            let n = md.parameter_generators();
            let want = 4 * k * (2 * k + 2);
            out.push(Check::new("parameter generators", n == want, format!("{n} M-generators, expected {want}")));
        }
        Mode::Tautological => {
            out.push(exact_check("sigma = (z1, z2, z3, z4)^t", || {
                let want: Mat = (1..=4).map(|j| vec![geom::z(spec, j)]).collect();
                mat_equal(&md.sigma, &want)
            }));
            out.push(exact_check("tau = (-z2, z1, -z4, z3)", || {
                let z = |j| geom::z(spec, j);
                let want = vec![vec![z(2).neg(), z(1), z(4).neg(), z(3)]];
                mat_equal(&md.tau, &want)
            }));
            out.push(exact_check("tau sigma = 0", || mat_equal(&matrix::mul(&md.tau, &md.sigma), &matrix::zeros(spec, 1, 1))));
            out.push(exact_check("rho^2 = r^2", || mat_equal(&md.rho2, &vec![vec![r2(spec)]])));
        }
    }
    let orth = md.orthogonality_block();
    out.push(timed("sigma_J* sigma lies in the monad ideal", || match replay_blocks(&[&orth], &md.relations) {
        Ok(d) => (true, format!("{} composition relations, certificate degree {d}", md.orth.iter().flatten().map(BTreeMap::len).sum::<usize>())),
        Err(e) => (false, e),
    }).with_bound(md.bound));
    out.push(timed("z-coefficients per orthogonality condition", || {
        let counts: Vec<usize> = md.orth.iter().flatten().map(BTreeMap::len).collect();
        (counts.iter().all(|&c| c == 10 || k == 1 && c == 0), format!("coefficient counts {counts:?}"))
    }));
    out.push(timed("independent constraints from distinct column pairs = 5k(k-1)", || {
        let mut cols = Columns::default();
        let mut ech = Echelon::new(false);
        for b in 0..k {
            for d in b + 1..k {
                for i in md.orth[b][d].values() {
                    ech.insert(cols.row(&md.relations[*i]));
                }
            }
        }
        let want = 5 * k * (k - 1);
        (ech.rank() == want, format!("rank {} against {want}", ech.rank()))
    }));
    out.push(timed("sigma_J* sigma_J = sigma* sigma modulo the ideal", || match md.norm_block() {
        Ok(b) => match replay_blocks(&[&b], &md.relations) {
            Ok(d) => (true, format!("certificate degree {d}")),
            Err(e) => (false, e),
        },
        Err(e) => (false, e),
    }).with_bound(md.bound));
    out.push(exact_check("rho^2 entries commute with sigma entries", || {
        for (i, r) in md.rho2.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                for y in md.sigma.iter().flatten() {
                    identity_or_err((x * y) == (y * x), || format!("rho^2[{},{}] fails", i + 1, j + 1))?;
                }
            }
        }
        Ok(())
    }));
    out.push(exact_check("rho^2 is self-adjoint", || mat_equal(&matrix::adjoint(&md.rho2), &md.rho2)));
    // parameter-generator laws; the tautological M are constants
    if md.mode == Mode::Symbolic {
        out.extend(parameter_law_checks(md));
    }
    out.push(exact_check("tau = sigma_J^*", || {
        let tz = (0..4).fold(matrix::zeros(spec, k, 2 * k + 2), |acc, a| {
            let z = geom::z(spec, a + 1);
            matrix::add(&acc, &matrix::map(&md.n[a], |e| e * &z))
        });
        mat_equal(&tz, &md.tau)
    }));
    out
}

pub struct ProjectorReport {
    pub q: Mat,
    pub qz: Mat,
    pub qj: Mat,
    pub p: Mat,
    pub v: Mat,
    pub checks: Vec<Check>,
    pub budget_exhausted: bool,
}

/// The displayed k=1 matrix, with `1` in place of `r²` entries scaled by R.
pub fn printed_taut_display(spec: &Arc<AlgebraSpec>) -> Mat {
    let d = geom::distinguished(spec);
    let (a, b, x) = (&d["alpha"], &d["beta"], &d["x"]);
    let r = r2(spec);
    let zero = Element::zero(spec);
    let mu = Scalar::mu();
    let mub = Scalar::mu_pow(-1);
    let p = &r + x;
    let m = &r - x;
    let rows = vec![
        vec![p.clone(), zero.clone(), a.clone(), b.clone()],
        vec![zero.clone(), p, b.star().scale(&mu).neg(), a.star().scale(&mub)],
        vec![a.star(), b.scale(&mub).neg(), m.clone(), zero.clone()],
        vec![b.star(), a.scale(&mu), zero, m],
    ];
    matrix::scale(&rows, &Scalar::rat(1, 2))
}

pub fn adhm_projector(md: &MonadData) -> Result<ProjectorReport, AdhmError> {
    let spec = &md.spec;
    let k = md.k;
    let rels = &md.relations;
    let bound = md.bound;
    let v = matrix::hcat(&md.sigma, &md.sigma_j);
    let vs = matrix::adjoint(&v);
    let rhat = matrix::block_diag(&md.rinv, &md.rinv);
    let w = matrix::mul(&v, &rhat);
    md.guard(&w, &vs, "Q")?;
    let q = matrix::mul(&w, &vs);
    let qz = matrix::mul(&matrix::mul(&md.sigma, &md.rinv), &matrix::adjoint(&md.sigma));
    let qj = matrix::mul(&matrix::mul(&md.sigma_j, &md.rinv), &matrix::adjoint(&md.sigma_j));
    md.guard(&q, &q, "Q^2")?;
    let p = matrix::sub(&matrix::identity(spec, 2 * k + 2), &q);
    let mut checks = Vec::new();
    let mut budget = false;
    let mut note = |(c, b): (Check, bool), checks: &mut Vec<Check>| {
        budget |= b;
        checks.push(c);
    };

    let orth = md.orthogonality_block();
    let norm = match md.norm_block() {
        Ok(b) => b,
        Err(e) => {
            checks.push(Check::new("V*V = rho^2 (+) rho^2", false, e));
            return Ok(ProjectorReport { q, qz, qj, p, v, checks, budget_exhausted: false });
        }
    };
    let zero_k = vec![vec![Member::zero(spec); k]; k];
    let orth_star: MemberMat =
        (0..k).map(|i| (0..k).map(|j| orth[j][i].star(&md.star_rel)).collect()).collect();
    // E = V*V − ρ² ⊕ ρ² in blocks
    let mut e: MemberMat = Vec::new();
    for i in 0..2 * k {
        let mut row = Vec::new();
        for j in 0..2 * k {
            let m = match (i < k, j < k) {
                (true, true) => zero_k[i][j].clone(),
                (true, false) => orth_star[i][j - k].clone(),
                (false, true) => orth[i - k][j].clone(),
                (false, false) => norm[i - k][j - k].clone(),
            };
            row.push(m);
        }
        e.push(row);
    }
    let dhat = matrix::block_diag(&md.rho2, &md.rho2);
    let f = md.relation_block(&md.inv_left);
    let fr = md.relation_block(&md.inv_right);
    let fr_hat = block_diag_members(&fr, &fr, spec);

    note(certify("V*V = rho^2 (+) rho^2", &matrix::sub(&matrix::mul(&vs, &v), &dhat), &[Sandwich { left: None, mid: &e, right: None }], rels, bound), &mut checks);
    checks.push(exact_check("Q = Q*", || mat_equal(&matrix::adjoint(&q), &q)));
    checks.push(exact_check("Q = Q_z + Q_J", || mat_equal(&q, &matrix::add(&qz, &qj))));
    let ws = matrix::adjoint(&w);
    note(
        certify(
            "Q^2 = Q",
            &matrix::sub(&matrix::mul(&q, &q), &q),
            &[Sandwich { left: Some(&w), mid: &e, right: Some(&ws) }, Sandwich { left: Some(&w), mid: &fr_hat, right: Some(&vs) }],
            rels,
            bound,
        ),
        &mut checks,
    );
    let sr = matrix::mul(&md.sigma, &md.rinv);
    let sjr = matrix::mul(&md.sigma_j, &md.rinv);
    let sa = matrix::adjoint(&md.sigma);
    let sja = matrix::adjoint(&md.sigma_j);
    let rsa = matrix::mul(&md.rinv, &sa);
    let rsja = matrix::mul(&md.rinv, &sja);
    note(
        certify("Q_z^2 = Q_z", &matrix::sub(&matrix::mul(&qz, &qz), &qz), &[Sandwich { left: Some(&sr), mid: &fr, right: Some(&sa) }], rels, bound),
        &mut checks,
    );
    note(
        certify(
            "Q_J^2 = Q_J",
            &matrix::sub(&matrix::mul(&qj, &qj), &qj),
            &[Sandwich { left: Some(&sjr), mid: &fr, right: Some(&sja) }, Sandwich { left: Some(&sjr), mid: &norm, right: Some(&rsja) }],
            rels,
            bound,
        ),
        &mut checks,
    );
    note(
        certify("Q_J Q_z = 0", &matrix::mul(&qj, &qz), &[Sandwich { left: Some(&sjr), mid: &orth, right: Some(&rsa) }], rels, bound),
        &mut checks,
    );
    let kk = Element::int(spec, k as i64);
    let trace_target = |m: &Mat, shift: &Element| vec![vec![&matrix::trace(m) - shift]];
    let diag_f: MemberMat = vec![vec![sum_members(spec, (0..k).map(|b| &f[b][b]))]];
    note(certify("Tr Q_z = k", &trace_target(&qz, &kk), &[Sandwich { left: None, mid: &diag_f, right: None }], rels, bound), &mut checks);
    // Tr(R E') = Σ R_bd E'_db as a 1×k by k×1 sandwich per column
    let r_rows: Vec<Mat> = (0..k).map(|d| vec![(0..k).map(|b| md.rinv[b][d].clone()).collect()]).collect();
    let norm_cols: Vec<MemberMat> = (0..k).map(|d| (0..k).map(|b| vec![norm[d][b].clone()]).collect()).collect();
    let mut parts = vec![Sandwich { left: None, mid: &diag_f, right: None }];
    for d in 0..k {
        // Σ_b R_bd · norm[d][b]
        parts.push(Sandwich { left: Some(&r_rows[d]), mid: &norm_cols[d], right: None });
    }
    note(certify("Tr Q_J = k", &trace_target(&qj, &kk), &parts, rels, bound), &mut checks);
    let mut parts2 = vec![
        Sandwich { left: None, mid: &diag_f, right: None },
        Sandwich { left: None, mid: &diag_f, right: None },
    ];
    for d in 0..k {
        parts2.push(Sandwich { left: Some(&r_rows[d]), mid: &norm_cols[d], right: None });
    }
    note(certify("Tr Q = 2k", &trace_target(&q, &Element::int(spec, 2 * k as i64)), &parts2, rels, bound), &mut checks);
    let neg_parts: Vec<MemberMat> = vec![negate_members(&diag_f), negate_members(&diag_f)];
    let neg_norm: Vec<MemberMat> = norm_cols.iter().map(negate_members).collect();
    let mut parts3 = vec![
        Sandwich { left: None, mid: &neg_parts[0], right: None },
        Sandwich { left: None, mid: &neg_parts[1], right: None },
    ];
    for d in 0..k {
        parts3.push(Sandwich { left: Some(&r_rows[d]), mid: &neg_norm[d], right: None });
    }
    note(certify("Tr P = 2", &trace_target(&p, &Element::int(spec, 2)), &parts3, rels, bound), &mut checks);
    checks.push(timed("entries of Q are U(1)-invariant", || {
        for (i, r) in q.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if x.z_balance() != ZBalance::Homogeneous(0) {
                    return (false, format!("entry ({},{}) has balance {:?}", i + 1, j + 1, x.z_balance()));
                }
            }
        }
        (true, "z-balance 0".into())
    }));
    checks.push(exact_check("entries of Q are J-invariant", || mat_equal(&matrix::map(&q, apply_j), &q)));
    if md.mode == Mode::Tautological {
        let r = &md.rinv[0][0];
        checks.push(exact_check("Q matches displayed matrix as printed", || {
            mat_equal(&q, &matrix::lmul(r, &printed_taut_display(spec)))
        }));
        checks.push(exact_check("Q matches displayed matrix corrected", || {
            mat_equal(&q, &matrix::lmul(r, &geom::q_display(spec, &r2(spec))))
        }));
    }
    Ok(ProjectorReport { q, qz, qj, p, v, checks, budget_exhausted: budget })
}

fn sum_members<'a>(spec: &Arc<AlgebraSpec>, it: impl Iterator<Item = &'a Member>) -> Member {
    let mut out = Member::zero(spec);
    for m in it {
        assert!(m.scale.is_one(), "sums need unit scales");
        out.value = &out.value + &m.value;
        out.cert.extend(m.cert.iter().cloned());
    }
    out
}

fn negate_members(m: &MemberMat) -> MemberMat {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| Member {
                    value: x.value.neg(),
                    scale: x.scale.clone(),
                    cert: x.cert.iter().map(|t| CertTerm { left: t.left.neg(), relation: t.relation, right: t.right.clone() }).collect(),
                })
                .collect()
        })
        .collect()
}

fn block_diag_members(a: &MemberMat, b: &MemberMat, spec: &Arc<AlgebraSpec>) -> MemberMat {
    let (n, m) = (a.len(), b.len());
    (0..n + m)
        .map(|i| {
            (0..n + m)
                .map(|j| {
                    if i < n && j < n {
                        a[i][j].clone()
                    } else if i >= n && j >= n {
                        b[i - n][j - n].clone()
                    } else {
                        Member::zero(spec)
                    }
                })
                .collect()
        })
        .collect()
}

/// Ψ̃_l: columns l of σ_z ρ⁻¹ and σ_{J(z)} ρ⁻¹.
pub fn normalised_columns(md: &MonadData, l: usize) -> Mat {
    let a = matrix::mul(&md.sigma, &md.rhalf);
    let b = matrix::mul(&md.sigma_j, &md.rhalf);
    a.iter().zip(&b).map(|(x, y)| vec![x[l].clone(), y[l].clone()]).collect()
}

/// Decomposition Q = Q₁ + ⋯ + Q_k into rank-two projections, each
/// Murray–von Neumann equivalent to 1⊗q.
pub fn charge_decomposition(md: &MonadData, pr: &ProjectorReport) -> Vec<Check> {
    let spec = &md.spec;
    let k = md.k;
    let rels = &md.relations;
    let bound = md.bound;
    let mut out = Vec::new();
    let v = &pr.v;
    let vs = matrix::adjoint(v);
    let shat = matrix::block_diag(&md.rhalf, &md.rhalf);
    let dhat = matrix::block_diag(&md.rho2, &md.rho2);
    let orth = md.orthogonality_block();
    let norm = match md.norm_block() {
        Ok(b) => b,
        Err(e) => return vec![Check::new("normalised columns are orthonormal", false, e)],
    };
    let zero_k = vec![vec![Member::zero(spec); k]; k];
    let orth_star: MemberMat = (0..k).map(|i| (0..k).map(|j| orth[j][i].star(&md.star_rel)).collect()).collect();
    let e: MemberMat = (0..2 * k)
        .map(|i| {
            (0..2 * k)
                .map(|j| match (i < k, j < k) {
                    (true, true) => zero_k[i][j].clone(),
                    (true, false) => orth_star[i][j - k].clone(),
                    (false, true) => orth[i - k][j].clone(),
                    (false, false) => norm[i - k][j - k].clone(),
                })
                .collect()
        })
        .collect();
    let f = md.relation_block(&md.inv_left);
    let l = md.relation_block(&md.root);
    let kc = md.relation_block(&md.root_comm);
    let fh = block_diag_members(&f, &f, spec);
    let lh = block_diag_members(&l, &l, spec);
    let kh = block_diag_members(&kc, &kc, spec);
    // X = Ŝ V*V Ŝ − I = Ŝ E Ŝ + Ŝ K + L D̂ + F
    let vsh = matrix::mul(v, &shat);
    let x = matrix::sub(&matrix::mul(&matrix::adjoint(&vsh), &vsh), &matrix::identity(spec, 2 * k));
    let (c, _) = certify(
        "normalised columns are orthonormal",
        &x,
        &[
            Sandwich { left: Some(&shat), mid: &e, right: Some(&shat) },
            Sandwich { left: Some(&shat), mid: &kh, right: None },
            Sandwich { left: None, mid: &lh, right: Some(&dhat) },
            Sandwich { left: None, mid: &fh, right: None },
        ],
        rels,
        bound,
    );
    let ortho_ok = c.passed();
    out.push(c);
    let q_sum = (0..k).fold(matrix::zeros(spec, 2 * k + 2, 2 * k + 2), |acc, li| {
        let p = normalised_columns(md, li);
        matrix::add(&acc, &matrix::mul(&p, &matrix::adjoint(&p)))
    });
    out.push(
        certify("Q_1 + ... + Q_k = Q", &matrix::sub(&q_sum, &pr.q), &[Sandwich { left: Some(v), mid: &lh, right: Some(&vs) }], rels, bound).0,
    );
    let psi = geom::psi(spec);
    let psia = matrix::adjoint(&psi);
    let q_basic = matrix::mul(&psi, &psia);
    let sph: MemberMat = (0..2)
        .map(|i| (0..2).map(|j| if i == j { Member::relation(rels, md.sphere) } else { Member::zero(spec) }).collect())
        .collect();
    let mut all = ortho_ok;
    for li in 0..k {
        let pt = normalised_columns(md, li);
        let pta = matrix::adjoint(&pt);
        let xl = matrix::sub(&matrix::mul(&pta, &pt), &matrix::identity(spec, 2));
        let idx = [li, k + li];
        let sub_ok = idx.iter().all(|&i| idx.iter().all(|&j| x[i][j] == xl[idx.iter().position(|&t| t == i).unwrap()][idx.iter().position(|&t| t == j).unwrap()]));
        let c1 = Check::new(
            format!("Psi~_{}* Psi~_{} = I2", li + 1, li + 1),
            ortho_ok && sub_ok,
            "sub-block of the orthonormality certificate",
        )
        .with_bound(bound);
        let vl = matrix::mul(&pt, &psia);
        let vla = matrix::adjoint(&vl);
        let ql = matrix::mul(&pt, &pta);
        let c2 = certify(
            &format!("V_{0} V_{0}* = Q_{0}", li + 1),
            &matrix::sub(&matrix::mul(&vl, &vla), &ql),
            &[Sandwich { left: Some(&pt), mid: &sph, right: Some(&pta) }],
            rels,
            bound,
        )
        .0;
        // V_l* V_l − q = Ψ X_l Ψ*, with X_l certified above
        let c3 = exact_check(&format!("V_{0}* V_{0} = 1 (x) q", li + 1), || {
            let lhs = matrix::sub(&matrix::mul(&vla, &vl), &q_basic);
            mat_equal(&lhs, &matrix::mul(&matrix::mul(&psi, &xl), &psia))?;
            identity_or_err(ortho_ok && sub_ok, || "X_l not certified".into())
        });
        all &= c1.passed() && c2.passed() && c3.passed();
        out.extend([c1, c2, c3]);
    }
    out.push(Check::new(
        "topological charge of P",
        all,
        format!("Q splits into {k} projections equivalent to 1 (x) q, so P has charge {}", -(k as i64)),
    ));
    out
}

/// Standard quaternionic structure on C^{2n}: blocks [[0, −1], [1, 0]].
fn j0(n: usize) -> Vec<Vec<GaussRat>> {
    let mut m = vec![vec![GaussRat::int(0); 2 * n]; 2 * n];
    for p in 0..n {
        m[2 * p][2 * p + 1] = GaussRat::int(-1);
        m[2 * p + 1][2 * p] = GaussRat::int(1);
    }
    m
}

fn cmul(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = b[0].len();
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).fold(GaussRat::int(0), |s, (x, row)| s.add(&x.mul(&row[j])))).collect())
        .collect()
}

fn cadj(a: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].conj()).collect()).collect()
}

fn cmat(spec: &Arc<AlgebraSpec>, a: &[Vec<GaussRat>]) -> Mat {
    a.iter().map(|r| r.iter().map(|x| Element::constant(spec, Scalar::from_gauss(x.clone()))).collect()).collect()
}

/// Checks `A*A = I` and `A J₀ = J₀ Ā`.
pub fn check_symplectic(a: &[Vec<GaussRat>]) -> Result<(), AdhmError> {
    let n = a.len();
    if n % 2 == 1 || a.iter().any(|r| r.len() != n) {
        return Err(AdhmError::NotSymplectic("not an even square matrix".into()));
    }
    let aa = cmul(&cadj(a), a);
    for (i, r) in aa.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            let want = if i == j { GaussRat::int(1) } else { GaussRat::int(0) };
            if *x != want {
                return Err(AdhmError::NotSymplectic("A*A is not the identity".into()));
            }
        }
    }
    let j = j0(n / 2);
    let abar: Vec<Vec<GaussRat>> = a.iter().map(|r| r.iter().map(GaussRat::conj).collect()).collect();
    if cmul(a, &j) != cmul(&j, &abar) {
        return Err(AdhmError::NotSymplectic("A does not commute with J".into()));
    }
    Ok(())
}

/// Inverse of a rational matrix by Gauss–Jordan elimination.
pub fn rat_inverse(b: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>, AdhmError> {
    let n = b.len();
    let mut m: Vec<Vec<Rat>> = b
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| Rat::int((i == j) as i64)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(AdhmError::Singular)?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn rmat(spec: &Arc<AlgebraSpec>, b: &[Vec<Rat>]) -> Mat {
    b.iter().map(|r| r.iter().map(|x| Element::constant(spec, Scalar::from_gauss(GaussRat::real(x.clone())))).collect()).collect()
}

/// Invariance of P under σ_z ↦ σ_z B.
pub fn gauge_b(md: &MonadData, pr: &ProjectorReport, b: &[Vec<Rat>], label: &str) -> Result<Vec<Check>, AdhmError> {
    let spec = &md.spec;
    let binv = rat_inverse(b)?;
    let bm = rmat(spec, b);
    let bi = rmat(spec, &binv);
    let bt = matrix::transpose(&bm);
    let bit = matrix::transpose(&bi);
    let sigma2 = matrix::mul(&md.sigma, &bm);
    let mut out = Vec::new();
    out.push(exact_check(&format!("{label}: sigma_J transforms as sigma_J B"), || {
        mat_equal(&matrix::map(&sigma2, apply_j), &matrix::mul(&md.sigma_j, &bm))
    }));
    let rho2b = matrix::mul(&matrix::adjoint(&sigma2), &sigma2);
    out.push(exact_check(&format!("{label}: rho^2 -> B^t rho^2 B"), || {
        mat_equal(&rho2b, &matrix::mul(&matrix::mul(&bt, &md.rho2), &bm))
    }));
    // ρ'⁻² := B⁻¹ ρ⁻² B⁻ᵗ inverts ρ'² because B⁻¹ (ρ⁻²ρ² − 1) B does
    let rb = matrix::mul(&matrix::mul(&bi, &md.rinv), &bit);
    let f = md.relation_block(&md.inv_left);
    out.push(
        certify(
            &format!("{label}: B^-1 rho^-2 B^-t inverts the new rho^2"),
            &matrix::sub(&matrix::mul(&rb, &rho2b), &matrix::identity(spec, md.k)),
            &[Sandwich { left: Some(&bi), mid: &f, right: Some(&bm) }],
            &md.relations,
            md.bound,
        )
        .0,
    );
    let sj2 = matrix::map(&sigma2, apply_j);
    let q2 = matrix::add(
        &matrix::mul(&matrix::mul(&sigma2, &rb), &matrix::adjoint(&sigma2)),
        &matrix::mul(&matrix::mul(&sj2, &rb), &matrix::adjoint(&sj2)),
    );
    let p2 = matrix::sub(&matrix::identity(spec, 2 * md.k + 2), &q2);
    out.push(exact_check(&format!("{label}: P unchanged"), || mat_equal(&p2, &pr.p)));
    Ok(out)
}

/// Covariance P ↦ A P A* under σ_z ↦ A σ_z.
pub fn gauge_a(md: &MonadData, pr: &ProjectorReport, a: &[Vec<GaussRat>], label: &str) -> Result<Vec<Check>, AdhmError> {
    check_symplectic(a)?;
    let spec = &md.spec;
    let am = cmat(spec, a);
    let aa = matrix::adjoint(&am);
    let sigma2 = matrix::mul(&am, &md.sigma);
    let sj2 = matrix::map(&sigma2, apply_j);
    let mut out = vec![Check::new(format!("{label}: A symplectic-unitary"), true, "A*A = 1 and A J = J conj(A)")];
    out.push(exact_check(&format!("{label}: sigma_J transforms as A sigma_J"), || mat_equal(&sj2, &matrix::mul(&am, &md.sigma_j))));
    out.push(exact_check(&format!("{label}: rho^2 invariant"), || {
        mat_equal(&matrix::mul(&matrix::adjoint(&sigma2), &sigma2), &md.rho2)
    }));
    out.push(exact_check(&format!("{label}: orthogonality preserved"), || {
        mat_equal(
            &matrix::mul(&matrix::adjoint(&sj2), &sigma2),
            &matrix::mul(&matrix::adjoint(&md.sigma_j), &md.sigma),
        )
    }));
    let q2 = matrix::add(
        &matrix::mul(&matrix::mul(&sigma2, &md.rinv), &matrix::adjoint(&sigma2)),
        &matrix::mul(&matrix::mul(&sj2, &md.rinv), &matrix::adjoint(&sj2)),
    );
    let p2 = matrix::sub(&matrix::identity(spec, 2 * md.k + 2), &q2);
    out.push(exact_check(&format!("{label}: P -> A P A*"), || mat_equal(&p2, &matrix::mul(&matrix::mul(&am, &pr.p), &aa))));
    Ok(out)
}

/// Signed permutation of quaternionic pairs: pair `p` goes to `perm[p]`,
/// multiplied by the unit quaternion `units[p]` (0 = 1, 1 = −1, 2 = j).
pub fn quaternionic_permutation(perm: &[usize], units: &[u8]) -> Vec<Vec<GaussRat>> {
    let n = perm.len();
    let mut a = vec![vec![GaussRat::int(0); 2 * n]; 2 * n];
    for (p, &t) in perm.iter().enumerate() {
        let blk = match units[p] {
            0 => [[1, 0], [0, 1]],
            1 => [[-1, 0], [0, -1]],
            _ => [[0, -1], [1, 0]],
        };
        for i in 0..2 {
            for j in 0..2 {
                a[2 * t + i][2 * p + j] = GaussRat::int(blk[i][j]);
            }
        }
    }
    a
}

/// Generators minus constraints: 4k(2k+2) − 5k(k−1) − ((k+1)(2(k+1)+1) + k²).
pub fn parameter_count(k: u64) -> i64 {
    let k = k as i64;
    let n = 4 * k * (2 * k + 2) - 5 * k * (k - 1) - ((k + 1) * (2 * (k + 1) + 1) + k * k);
    assert_eq!(n, 8 * k - 3, "count identity");
    n
}

/// Exponent of the phase in m_{αβ} m_{μν} = η_{βμ}η_{νβ}η_{μα}η_{αν} m_{μν} m_{αβ}.
pub fn moduli_phase(a: usize, b: usize, m: usize, n: usize) -> i32 {
    ETA[b][m] + ETA[n][b] + ETA[m][a] + ETA[a][n]
}

/// Checks all 256 phase relations of a 4×4 family of moduli generators.
pub fn moduli_relations(gens: &[Vec<Element>]) -> Result<usize, String> {
    let mut n = 0;
    for a in 0..4 {
        for b in 0..4 {
            for m in 0..4 {
                for nn in 0..4 {
                    let lhs = &gens[a][b] * &gens[m][nn];
                    let rhs = (&gens[m][nn] * &gens[a][b]).scale(&Scalar::mu_pow(moduli_phase(a, b, m, nn)));
                    if lhs != rhs {
                        return Err(format!("fails at ({},{},{},{})", a + 1, b + 1, m + 1, nn + 1));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// m_{αβ} = Σ_l M^α_l* M^β_l for the k = 1 monad.
pub fn moduli_generators(md: &MonadData) -> Vec<Vec<Element>> {
    let spec = &md.spec;
    (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let t: Vec<Element> = (0..md.m[a].len()).map(|l| &md.m[a][l][0].star() * &md.m[b][l][0]).collect();
                    sum(spec, t.iter())
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_follow_eight_k_minus_three() {
        assert_eq!(parameter_count(1), 5);
        assert_eq!(parameter_count(2), 13);
        assert_eq!(parameter_count(10), 77);
    }

    #[test]
    fn gauss_jordan_inverts() {
        let b = vec![vec![Rat::int(2), Rat::int(1)], vec![Rat::int(1), Rat::int(1)]];
        let bi = rat_inverse(&b).unwrap();
        assert_eq!(bi[0][0], Rat::int(1));
        assert_eq!(bi[0][1], Rat::int(-1));
        assert_eq!(bi[1][1], Rat::int(2));
        assert_eq!(rat_inverse(&[vec![Rat::int(1), Rat::int(2)], vec![Rat::int(2), Rat::int(4)]]), Err(AdhmError::Singular));
    }

    #[test]
    fn quaternionic_permutations_are_symplectic() {
        assert!(check_symplectic(&quaternionic_permutation(&[1, 0], &[0, 0])).is_ok());
        assert!(check_symplectic(&quaternionic_permutation(&[0, 2, 1], &[2, 1, 0])).is_ok());
        let mut bad = quaternionic_permutation(&[0, 1], &[0, 0]);
        bad[0][0] = GaussRat::i();
        assert!(check_symplectic(&bad).is_err());
    }

    #[test]
    fn tautological_needs_charge_one() {
        assert_eq!(build_monad(&MonadConfig::new(2, Mode::Tautological)).err(), Some(AdhmError::TautologicalCharge));
        assert_eq!(build_monad(&MonadConfig::new(0, Mode::Symbolic)).err(), Some(AdhmError::ZeroCharge));
    }
}
