//! Small dense linear algebra over exact fields.

use num_traits::{One, Zero};

use crate::algebra::{poly_gcd, MultiPoly, RatFunc, Q};
use crate::error::{Error, Result};

/// Minimal field interface shared by `Q` and `Q(x)`.
pub trait Field: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
}

impl Field for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Field for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Incremental detector of linear dependencies among vectors.
///
/// Vectors are offered one at a time; independent ones are accepted, and the
/// first dependent one is reported together with its coefficients in terms of
/// the previously accepted vectors.
pub struct DependencyFinder<F: Field> {
    zero: F,
    rows: Vec<EchelonRow<F>>,
    accepted: usize,
}

struct EchelonRow<F> {
    pivot: usize,
    entries: Vec<F>,
    // expresses this row as a combination of accepted vectors
    combo: Vec<F>,
}

pub enum Offer<F> {
    /// Vector was independent and got this index.
    Independent(usize),
    /// `v = sum_k coeffs[k] * accepted_k`.
    Dependent(Vec<F>),
}

impl<F: Field> DependencyFinder<F> {
    pub fn new(zero: F) -> Self {
        DependencyFinder {
            zero,
            rows: Vec::new(),
            accepted: 0,
        }
    }

    pub fn accepted(&self) -> usize {
        self.accepted
    }

    pub fn offer(&mut self, v: &[F]) -> Offer<F> {
        let mut entries = v.to_vec();
        // combo[k] for accepted k; index `accepted` is the new vector itself
        let mut combo = vec![self.zero.clone(); self.accepted + 1];
        combo[self.accepted] = self.zero.one_like();
        for row in &self.rows {
            let f = entries[row.pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (e, r) in entries.iter_mut().zip(&row.entries) {
                if !r.is_zero() {
                    *e = e.sub(&f.mul(r));
                }
            }
            for (c, r) in combo.iter_mut().zip(&row.combo) {
                if !r.is_zero() {
                    *c = c.sub(&f.mul(r));
                }
            }
        }
        match entries.iter().position(|e| !e.is_zero()) {
            None => {
                // 0 = v + sum combo[k] a_k  =>  v = -sum combo[k] a_k
                let coeffs = combo[..self.accepted]
                    .iter()
                    .map(|c| self.zero.sub(c))
                    .collect();
                Offer::Dependent(coeffs)
            }
            Some(pivot) => {
                let p = entries[pivot].clone();
                let entries = entries.iter().map(|e| e.div(&p)).collect();
                let combo = combo.iter().map(|c| c.div(&p)).collect();
                self.rows.push(EchelonRow {
                    pivot,
                    entries,
                    combo,
                });
                let idx = self.accepted;
                self.accepted += 1;
                for row in &mut self.rows {
                    row.combo.resize(self.accepted, self.zero.clone());
                }
                Offer::Independent(idx)
            }
        }
    }
}

/// Dependency detection over `Q(x)` without rational function arithmetic.
///
/// Each offered vector is scaled to polynomial entries and eliminated
/// fraction-free: the update `(p_i e - f r_i) / p_{i-1}` divides exactly.
/// Same contract as [`DependencyFinder`].
pub struct PolyDependencyFinder {
    nvars: usize,
    rows: Vec<EchelonRow<MultiPoly>>,
    // denominator cleared from each accepted vector
    scales: Vec<MultiPoly>,
}

impl PolyDependencyFinder {
    pub fn new(nvars: usize) -> Self {
        PolyDependencyFinder {
            nvars,
            rows: Vec::new(),
            scales: Vec::new(),
        }
    }

    pub fn accepted(&self) -> usize {
        self.scales.len()
    }

    pub fn offer(&mut self, v: &[RatFunc]) -> Result<Offer<RatFunc>> {
        let n = self.nvars;
        let k = self.scales.len();
        let mut scale = MultiPoly::one(n);
        for c in v {
            if c.is_zero() || c.den() == &scale || c.den().is_one() {
                continue;
            }
            let g = poly_gcd(&scale, c.den())?;
            scale = &scale * &exact(c.den(), &g)?;
        }
        let mut entries = v
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Ok(MultiPoly::zero(n))
                } else {
                    Ok(c.num() * &exact(&scale, c.den())?)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut combo = vec![MultiPoly::zero(n); k + 1];
        combo[k] = MultiPoly::one(n);
        let mut prev = MultiPoly::one(n);
        for row in &self.rows {
            let p = &row.entries[row.pivot];
            let f = entries[row.pivot].clone();
            for (e, r) in entries.iter_mut().zip(&row.entries) {
                *e = exact(&(&(p * e) - &(&f * r)), &prev)?;
            }
            for (c, r) in combo.iter_mut().zip(row.combo.iter().chain(std::iter::repeat(&MultiPoly::zero(n)))) {
                *c = exact(&(&(p * c) - &(&f * r)), &prev)?;
            }
            prev = p.clone();
        }
        match entries.iter().position(|e| !e.is_zero()) {
            None => {
                // 0 = combo[k] * scale * v + sum combo[j] * scales[j] * a_j
                let mut content = combo[k].clone();
                for c in &combo[..k] {
                    if content.is_constant() {
                        break;
                    }
                    if !c.is_zero() {
                        content = poly_gcd(&content, c)?;
                    }
                }
                let lambda = exact(&combo[k], &content)?;
                let coeffs = combo[..k]
                    .iter()
                    .zip(&self.scales)
                    .map(|(c, s)| {
                        let c = exact(c, &content)?;
                        Ok(&RatFunc::new(-&c, lambda.clone())? * &RatFunc::new(s.clone(), scale.clone())?)
                    })
                    .collect::<Result<_>>()?;
                Ok(Offer::Dependent(coeffs))
            }
            Some(pivot) => {
                self.rows.push(EchelonRow { pivot, entries, combo });
                self.scales.push(scale);
                Ok(Offer::Independent(k))
            }
        }
    }
}

fn exact(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if b.is_one() {
        return Ok(a.clone());
    }
    a.exact_div(b)
        .ok_or_else(|| Error::Invariant("inexact division in fraction-free elimination".into()))
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !Zero::is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for e in m[r].iter_mut() {
            *e *= &inv;
        }
        for i in 0..rows {
            if i != r && !Zero::is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of the right kernel, one vector per free column (free entry 1).
pub fn nullspace(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Q::zero(); cols];
        v[free] = Q::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Determinant by fraction-field Gaussian elimination.
pub fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !Zero::is_zero(&a[i][c])) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for i in c + 1..n {
            if Zero::is_zero(&a[i][c]) {
                continue;
            }
            let f = &a[i][c] / &pivot;
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}
