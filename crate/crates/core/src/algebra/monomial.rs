use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

/// Exponent vector in N^n, shared by x-monomials, d-terms and y-monomials.
///
/// Ordered by the graded lexicographic order in which the last variable is
/// the most significant one: first by total degree, then by comparing the
/// exponents of index n-1, n-2, ..., 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(exps: Vec<u32>) -> Self {
        Exponent(exps)
    }

    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// True if `self` divides `other` componentwise.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn with(&self, i: usize, value: u32) -> Exponent {
        let mut e = self.0.clone();
        e[i] = value;
        Exponent(e)
    }

    pub fn increment(&self, i: usize) -> Exponent {
        let mut e = self.0.clone();
        e[i] += 1;
        Exponent(e)
    }

    /// Index of a variable with positive exponent, preferring the last one.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&e| e > 0)
    }

    /// Pure power of a single variable: returns its index.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// u! = u_1! ... u_n!
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// All exponents of total degree exactly `d`, ascending.
    pub fn of_degree(n: usize, d: u32) -> Vec<Exponent> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fill_degree(&mut cur, 0, d, &mut out);
        out.sort();
        out
    }

    /// All exponents with total degree at most `m`, ascending (the set N^n_m).
    pub fn up_to_degree(n: usize, m: u32) -> Vec<Exponent> {
        (0..=m).flat_map(|d| Exponent::of_degree(n, d)).collect()
    }
}

fn fill_degree(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Exponent>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Exponent(Vec::new()));
        }
        return;
    }
    if i == n - 1 {
        cur[i] = left;
        out.push(Exponent(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill_degree(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(v: Vec<u32>) -> Self {
        Exponent(v)
    }
}

impl<const N: usize> From<[u32; N]> for Exponent {
    fn from(v: [u32; N]) -> Self {
        Exponent(v.to_vec())
    }
}
