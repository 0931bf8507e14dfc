//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{fmt_rat, parse_rat, to_f64, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "s")]
    S,
    #[serde(rename = "t")]
    T,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "lambda")]
    Lambda,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::T => "t",
            Var::X => "x",
            Var::Lambda => "λ",
        }
    }
}

/// Coefficients are ascending and never end in a zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    var: Var,
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(var: Var, mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Poly::constant(var, Rat::one())
    }

    pub fn constant(var: Var, c: Rat) -> Self {
        Poly::new(var, vec![c])
    }

    /// `c0 + c1·v`
    pub fn linear(var: Var, c0: Rat, c1: Rat) -> Self {
        Poly::new(var, vec![c0, c1])
    }

    pub fn identity(var: Var) -> Self {
        Poly::linear(var, Rat::zero(), Rat::one())
    }

    pub fn monomial(var: Var, c: Rat, k: usize) -> Self {
        let mut v = vec![Rat::zero(); k + 1];
        v[k] = c;
        Poly::new(var, v)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * at + to_f64(c))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.var);
        }
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from_integer(k.into()))
            .collect();
        Poly::new(self.var, coeffs)
    }

    /// `p(v + a)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, a: &Rat) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Poly::new(self.var, c)
    }

    /// `p(alpha·v + beta)`
    pub fn compose_affine(&self, alpha: &Rat, beta: &Rat) -> Poly {
        if alpha.is_zero() {
            return Poly::constant(self.var, self.eval(beta));
        }
        // p(alpha v + beta) = q(v + beta/alpha) with q(v) = p(alpha v)
        let mut scaled = Vec::with_capacity(self.coeffs.len());
        let mut pw = Rat::one();
        for c in &self.coeffs {
            scaled.push(c * &pw);
            pw *= alpha;
        }
        Poly::new(self.var, scaled).shift(&(beta / alpha))
    }

    /// `p(v) -> p(1 - v)`
    pub fn reflect(&self) -> Poly {
        self.compose_affine(&-Rat::one(), &Rat::one())
    }

    /// `p(q(v))`, result carries the variable of `q`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let mut acc = Poly::zero(q.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Poly::constant(q.var, c.clone());
        }
        acc
    }

    /// `p(-v)`
    pub fn negate_var(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        Poly::new(self.var, coeffs)
    }

    /// Coefficients of even powers only, re-indexed: `sum c_{2j} v^j`.
    pub fn even_part_in_square(&self) -> Poly {
        Poly::new(self.var, self.coeffs.iter().step_by(2).cloned().collect())
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quo[k] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        let var = pick_var(self, d);
        Ok((Poly::new(var, quo), Poly::new(var, rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.monic(), b.monic());
        while !y.is_zero() {
            let r = x.div_rem(&y).expect("nonzero divisor").1;
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::one(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Sum of absolute values of coefficients; used as a residual norm.
    pub fn l1_norm(&self) -> Rat {
        self.coeffs.iter().map(|c| c.abs()).fold(Rat::zero(), |a, c| a + c)
    }
}

fn pick_var(a: &Poly, b: &Poly) -> Var {
    if a.is_constant() {
        b.var
    } else {
        debug_assert!(b.is_constant() || a.var == b.var, "mixing variables {:?} and {:?}", a.var, b.var);
        a.var
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let var = pick_var(self, o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect();
        Poly::new(var, coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let var = pick_var(self, o);
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - o.coeff(k)).collect();
        Poly::new(var, coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let var = pick_var(self, o);
        if self.is_zero() || o.is_zero() {
            return Poly::zero(var);
        }
        let mut c = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(var, c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { var: self.var, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let v = self.var.symbol();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_c = k == 0 || !mag.is_one();
            if show_c {
                write!(f, "{mag}")?;
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{v}")?,
                _ => write!(f, "{v}^{k}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    variable: Var,
    coeffs: Vec<String>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire { variable: self.var, coeffs: self.coeffs.iter().map(fmt_rat).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = PolyWire::deserialize(d)?;
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| parse_rat(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(Poly::new(w.variable, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{int, rat};

    fn s(c: &[Rat]) -> Poly {
        Poly::new(Var::S, c.to_vec())
    }

    #[test]
    fn shift_examples() {
        let p = Poly::identity(Var::S);
        assert_eq!(p.shift(&int(1)), s(&[int(1), int(1)]));
        let sq = Poly::monomial(Var::S, int(1), 2);
        assert_eq!(sq.shift(&int(-1)), s(&[int(1), int(-2), int(1)]));
        let p2 = s(&[rat(-3, 4), rat(3, 2)]);
        assert_eq!(p2.shift(&int(1)), s(&[rat(3, 4), rat(3, 2)]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = s(&[int(1), int(0), int(0)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::new(Var::S, vec![int(0)]).degree(), None);
    }

    #[test]
    fn reflect_and_affine() {
        // 15s^2 - 15s + 63/4 is symmetric under s -> 1 - s
        let p4 = s(&[rat(63, 4), int(-15), int(15)]);
        assert_eq!(p4.reflect(), p4);
        let p = s(&[int(1), int(2), int(3)]);
        let q = p.compose_affine(&int(2), &int(3));
        for x in [-3i64, 0, 1, 5] {
            assert_eq!(q.eval(&int(x)), p.eval(&int(2 * x + 3)));
        }
    }

    #[test]
    fn division_and_gcd() {
        let a = s(&[int(-1), int(0), int(1)]); // s^2 - 1
        let b = s(&[int(1), int(1)]); // s + 1
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, s(&[int(-1), int(1)]));
        assert!(r.is_zero());
        let c = s(&[int(-2), int(1)]);
        let g = Poly::gcd(&(&a * &c), &(&b * &c));
        assert_eq!(g, (&b * &c).monic());
    }

    #[test]
    fn json_shape() {
        let p = s(&[rat(-3, 4), rat(3, 2)]);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"variable":"s","coeffs":["-3/4","3/2"]}"#);
        let back: Poly = serde_json::from_str(&j).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display() {
        let p = s(&[rat(63, 4), int(-15), int(15)]);
        assert_eq!(p.to_string(), "15*s^2 - 15*s + 63/4");
    }

    fn small_poly() -> impl proptest::strategy::Strategy<Value = Poly> {
        use proptest::prelude::*;
        prop::collection::vec((-9i64..=9, 1i64..=4), 0..5)
            .prop_map(|v| Poly::new(Var::S, v.into_iter().map(|(n, d)| rat(n, d)).collect()))
    }

    proptest::proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            proptest::prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            proptest::prop_assert_eq!(&a * &b, &b * &a);
            proptest::prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn shift_roundtrip_and_division(a in small_poly(), b in small_poly(), k in -5i64..=5) {
            proptest::prop_assert_eq!(a.shift(&int(k)).shift(&int(-k)), a.clone());
            if !b.is_zero() {
                let (q, r) = a.div_rem(&b).unwrap();
                proptest::prop_assert_eq!(&(&q * &b) + &r, a.clone());
                proptest::prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()) || b.is_constant() && r.is_zero());
            }
        }
    }
}
