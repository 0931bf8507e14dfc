//! Reduced quotients of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Poly, Var};
use super::rat::Rat;
use crate::error::{Error, Result};

/// `num/den` with gcd(num, den) = 1 and den monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        let var = if den.is_constant() { num.var() } else { den.var() };
        if num.is_zero() {
            return RatFun { num: Poly::zero(var), den: Poly::one(var) };
        }
        let g = Poly::gcd(&num, &den);
        let (mut n, mut d) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        let lead = d.leading().unwrap().recip();
        n = n.scale(&lead);
        d = d.scale(&lead);
        RatFun { num: n.with_var(var), den: d.with_var(var) }
    }

    pub fn from_poly(p: Poly) -> Self {
        let var = p.var();
        RatFun { num: p, den: Poly::one(var) }
    }

    pub fn constant(var: Var, c: Rat) -> Self {
        Self::from_poly(Poly::constant(var, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if the denominator is trivial.
    pub fn into_poly(self) -> Result<Poly> {
        if !self.is_polynomial() {
            return Err(Error::Inconsistent(format!("{self} is not a polynomial")));
        }
        Ok(self.num)
    }

    pub fn eval(&self, at: &Rat) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::PoleInDenominator(format!("{self} at {at}")));
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.num.eval_f64(at) / self.den.eval_f64(at)
    }

    pub fn inv(&self) -> Result<RatFun> {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        RatFun::reduce(self.num.scale(c), self.den.clone())
    }

    /// `f(alpha·v + beta)`
    pub fn compose_affine(&self, alpha: &Rat, beta: &Rat) -> Result<RatFun> {
        RatFun::new(self.num.compose_affine(alpha, beta), self.den.compose_affine(alpha, beta))
    }

    pub fn reflect(&self) -> Result<RatFun> {
        self.compose_affine(&-Rat::one(), &Rat::one())
    }

    pub fn is_identically(&self, other: &RatFun) -> bool {
        (self - other).is_zero()
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::reduce(&self.num + &o.num, self.den.clone());
        }
        // combine over lcm of the denominators to keep sizes down
        let g = Poly::gcd(&self.den, &o.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = o.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&o.num * &a);
        RatFun::reduce(num, &a * &o.den)
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        RatFun::reduce(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div<&RatFun> for &RatFun {
    type Output = Result<RatFun>;
    fn div(self, o: &RatFun) -> Result<RatFun> {
        if o.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(RatFun::reduce(&self.num * &o.den, &self.den * &o.num))
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul<&Poly> for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &Poly) -> RatFun {
        RatFun::reduce(&self.num * o, self.den.clone())
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.coeff(0) == Rat::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl RatFun {
    pub fn zero(var: Var) -> RatFun {
        RatFun { num: Poly::zero(var), den: Poly::one(var) }
    }

    pub fn numerator_degree(&self) -> usize {
        self.num.degree().unwrap_or(0)
    }

    pub fn denominator_degree(&self) -> usize {
        self.den.degree().unwrap_or(0)
    }

    pub fn leading_ratio(&self) -> Rat {
        match self.num.leading() {
            None => Rat::zero(),
            Some(l) => l / self.den.leading().unwrap(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::int;

    #[test]
    fn reduces_common_factors() {
        let s = Poly::identity(Var::S);
        let a = Poly::linear(Var::S, int(1), int(1));
        let f = RatFun::new(&s * &a, (&a * &a).scale(&int(3))).unwrap();
        assert_eq!(f.num(), &s.scale(&Rat::new(1.into(), 3.into())));
        assert_eq!(f.den(), &a);
    }

    #[test]
    fn field_ops() {
        let s = Poly::identity(Var::S);
        let one = Poly::one(Var::S);
        let f = RatFun::new(one.clone(), s.clone()).unwrap();
        let g = RatFun::new(one.clone(), &s + &one).unwrap();
        let sum = &f + &g;
        // 1/s + 1/(s+1) = (2s+1)/(s^2+s)
        assert_eq!(sum.num(), &Poly::linear(Var::S, int(1), int(2)));
        assert_eq!(sum.den(), &Poly::new(Var::S, vec![int(0), int(1), int(1)]));
        let back = &sum - &g;
        assert!(back.is_identically(&f));
        assert_eq!((&f * &f.inv().unwrap()), RatFun::constant(Var::S, int(1)));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::new(Poly::one(Var::S), Poly::zero(Var::S)).is_err());
    }
}
