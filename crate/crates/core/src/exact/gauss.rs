//! Gaussian rationals and the substitution s = 1/2 + it.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Poly, Var};
use super::rat::{half, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat { re, im: Rat::zero() }
    }

    pub fn zero() -> Self {
        GaussRat::real(Rat::zero())
    }

    pub fn one() -> Self {
        GaussRat::real(Rat::one())
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(GaussRat { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        GaussRat { re: &self.re * c, im: &self.im * c }
    }

    /// Horner evaluation of a rational polynomial at this point.
    pub fn eval_poly(&self, p: &Poly) -> Self {
        let mut acc = GaussRat::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * self) + &GaussRat::real(c.clone());
        }
        acc
    }
}

impl Add<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Real,
    Imaginary,
}

/// Writes `p(1/2 + it)` as `v(t)` (parity real) or `i·v(t)` (parity imaginary).
///
/// Returns `None` when p(1/2 + it) has both real and imaginary parts, which
/// means `p` lacks the reflection symmetry p(s) = ±p(1 - s).
pub fn substitute_critical(p: &Poly) -> Option<(Poly, Parity)> {
    // Coefficients of p(1/2 + it) as a polynomial in t with Gaussian-rational coefficients.
    let lin = [GaussRat::real(half()), GaussRat::new(Rat::zero(), Rat::one())];
    let mut acc: Vec<GaussRat> = Vec::new();
    for c in p.coeffs().iter().rev() {
        let mut next = vec![GaussRat::zero(); acc.len() + 1];
        for (k, a) in acc.iter().enumerate() {
            next[k] = &next[k] + &(a * &lin[0]);
            next[k + 1] = &next[k + 1] + &(a * &lin[1]);
        }
        next[0] = &next[0] + &GaussRat::real(c.clone());
        acc = next;
    }
    let all_real = acc.iter().all(|g| g.im.is_zero());
    let all_imag = acc.iter().all(|g| g.re.is_zero());
    if all_real {
        Some((Poly::new(Var::T, acc.into_iter().map(|g| g.re).collect()), Parity::Real))
    } else if all_imag {
        Some((Poly::new(Var::T, acc.into_iter().map(|g| g.im).collect()), Parity::Imaginary))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let p2 = Poly::new(Var::S, vec![rat(-3, 4), rat(3, 2)]);
        let (v, par) = substitute_critical(&p2).unwrap();
        assert_eq!(par, Parity::Imaginary);
        assert_eq!(v, Poly::new(Var::T, vec![int(0), rat(3, 2)]));

        let p4 = Poly::new(Var::S, vec![rat(63, 4), int(-15), int(15)]);
        let (v, par) = substitute_critical(&p4).unwrap();
        assert_eq!(par, Parity::Real);
        assert_eq!(v, Poly::new(Var::T, vec![int(12), int(0), int(-15)]));

        let (v, par) = substitute_critical(&Poly::one(Var::S)).unwrap();
        assert_eq!((v, par), (Poly::one(Var::T), Parity::Real));
    }

    #[test]
    fn asymmetric_polynomial_rejected() {
        let p = Poly::identity(Var::S);
        assert!(substitute_critical(&p).is_none());
    }

    #[test]
    fn field_axioms_spot() {
        let a = GaussRat::new(rat(1, 2), rat(-3, 5));
        let b = GaussRat::new(int(2), rat(7, 3));
        assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
        assert_eq!(a.conj().conj(), a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        // Symmetrize a random polynomial, then compare the substituted form with direct evaluation.
        #[test]
        fn matches_scalar_evaluation(cs in prop::collection::vec(small_rat(), 1..7), t in small_rat(), odd in any::<bool>()) {
            let base = Poly::new(Var::S, cs);
            let refl = base.reflect();
            let p = if odd { &base - &refl } else { &base + &refl };
            let (v, par) = substitute_critical(&p).unwrap();
            let z = GaussRat::new(half(), t.clone());
            let direct = z.eval_poly(&p);
            let val = v.eval(&t);
            let expect = match par {
                Parity::Real => GaussRat::real(val),
                Parity::Imaginary => GaussRat::new(Rat::zero(), val),
            };
            prop_assert_eq!(direct, expect);
        }
    }
}
