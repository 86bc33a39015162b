use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::gcd::poly_gcd;
use super::poly::{MultiPoly, Q};
use crate::error::{check_nvars, Error, Result};

/// Reduced rational function `num / den` in `x1..xn`.
///
/// The denominator has integer coefficients with gcd 1 and a positive leading
/// coefficient, and shares no factor with the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        check_nvars(num.nvars(), den.nvars())?;
        if den.is_zero() {
            return Err(Error::Structural("zero denominator".into()));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc::zero(n);
        }
        if den.is_constant() {
            return RatFunc {
                num: num.scale(&den.constant_term().recip()),
                den: MultiPoly::one(n),
            };
        }
        let g = poly_gcd(&num, &den).expect("denominator is nonzero");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        let c = den.rational_content();
        let inv = c.recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: MultiPoly::zero(nvars),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc::from_poly(MultiPoly::one(nvars))
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        RatFunc::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::Structural("inverse of zero".into()));
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Q) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        if self.den.is_one() || p.is_constant() {
            return RatFunc {
                num: &self.num * p,
                den: self.den.clone(),
            };
        }
        Self::reduce(&self.num * p, self.den.clone())
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn derivative(&self, i: usize) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative(i));
        }
        let dn = self.num.derivative(i);
        let dd = self.den.derivative(i);
        if dd.is_zero() {
            return RatFunc {
                num: dn,
                den: self.den.clone(),
            };
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::reduce(num, &self.den * &self.den)
    }

    /// Exact value at a point; fails when the denominator vanishes there.
    pub fn eval(&self, point: &[Q]) -> Result<Q> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::Expansion(self.den.to_string()));
        }
        Ok(self.num.eval(point)? / d)
    }

    pub fn shift(&self, alpha: &[Q]) -> Result<RatFunc> {
        let num = self.num.shift(alpha)?;
        let den = self.den.shift(alpha)?;
        Ok(Self::reduce(num, den))
    }

    /// Sign of the leading numerator coefficient (1 for zero).
    pub fn leading_sign_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc> {
        check_nvars(self.nvars(), other.nvars())?;
        Ok(self + other)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc {
                    num,
                    den: self.den.clone(),
                };
            }
            return RatFunc::reduce(num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RatFunc::reduce(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::reduce(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let g = poly_gcd(&self.den, &rhs.den).expect("nonzero denominators");
        let a = rhs.den.exact_div(&g).expect("gcd divides");
        let b = self.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &a) + &(&rhs.num * &b);
        RatFunc::reduce(num, &self.den * &a)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if self.is_constant() {
            return rhs.scale(&self.num.constant_term());
        }
        if rhs.is_constant() {
            return self.scale(&rhs.num.constant_term());
        }
        // cross-cancel before multiplying to keep the final gcd small
        let g1 = poly_gcd(&self.num, &rhs.den).expect("nonzero");
        let g2 = poly_gcd(&rhs.num, &self.den).expect("nonzero");
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let c = den.rational_content().recip();
        RatFunc {
            num: num.scale(&c),
            den: den.scale(&c),
        }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}
