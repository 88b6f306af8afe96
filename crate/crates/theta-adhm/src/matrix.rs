//! Dense matrices of algebra elements.

use std::sync::Arc;

use crate::reduce::{normal_form, IdealSpec};
use crate::scalar::Scalar;
use crate::twistalg::{sum, AlgebraSpec, Element};

pub type Mat = Vec<Vec<Element>>;

pub fn zeros(spec: &Arc<AlgebraSpec>, r: usize, c: usize) -> Mat {
    vec![vec![Element::zero(spec); c]; r]
}

pub fn identity(spec: &Arc<AlgebraSpec>, n: usize) -> Mat {
    let mut m = zeros(spec, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Element::one(spec);
    }
    m
}

pub fn from_ints(spec: &Arc<AlgebraSpec>, rows: &[Vec<i64>]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&v| Element::int(spec, v)).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let spec = a[0][0].spec().clone();
    let inner = b.len();
    assert!(a.iter().all(|r| r.len() == inner), "dimension mismatch");
    let cols = b[0].len();
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let prods: Vec<Element> = (0..inner)
                        .filter(|&k| !row[k].is_zero() && !b[k][j].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .collect();
                    sum(&spec, prods.iter())
                })
                .collect()
        })
        .collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

pub fn sub(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

pub fn scale(a: &Mat, c: &Scalar) -> Mat {
    map(a, |e| e.scale(c))
}

/// Entrywise left multiplication by an element.
pub fn lmul(e: &Element, a: &Mat) -> Mat {
    map(a, |x| e * x)
}

pub fn map(a: &Mat, f: impl Fn(&Element) -> Element) -> Mat {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

/// Conjugate transpose.
pub fn adjoint(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a[0].len());
    (0..c).map(|j| (0..r).map(|i| a[i][j].star()).collect()).collect()
}

pub fn transpose(a: &Mat) -> Mat {
    let (r, c) = (a.len(), a[0].len());
    (0..c).map(|j| (0..r).map(|i| a[i][j].clone()).collect()).collect()
}

pub fn trace(a: &Mat) -> Element {
    let spec = a[0][0].spec().clone();
    sum(&spec, (0..a.len()).map(|i| &a[i][i]))
}

pub fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(Element::is_zero))
}

pub fn reduce(a: &Mat, ideal: &IdealSpec) -> Mat {
    map(a, |e| normal_form(e, ideal))
}

pub fn column(a: &Mat, j: usize) -> Mat {
    a.iter().map(|r| vec![r[j].clone()]).collect()
}

/// Horizontal concatenation.
pub fn hcat(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect()
}

pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let spec = a[0][0].spec().clone();
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = zeros(&spec, ra + rb, ca + cb);
    for i in 0..ra {
        for j in 0..ca {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..rb {
        for j in 0..cb {
            out[ra + i][ca + j] = b[i][j].clone();
        }
    }
    out
}

/// First nonzero entry, for failure details.
pub fn first_nonzero(a: &Mat) -> Option<(usize, usize, &Element)> {
    for (i, r) in a.iter().enumerate() {
        for (j, e) in r.iter().enumerate() {
            if !e.is_zero() {
                return Some((i, j, e));
            }
        }
    }
    None
}
