//! Rising factorials and generalized binomials over rationals or polynomials.

use num_traits::{One, Zero};

use super::poly::{Poly, Var};
use super::rat::{factorial_rat, Rat};

/// Scalar-like values that rising factorials can be formed from.
pub trait Shiftable: Clone {
    fn unit_like(&self) -> Self;
    fn shifted(&self, by: &Rat) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rat) -> Self;
}

impl Shiftable for Rat {
    fn unit_like(&self) -> Self {
        Rat::one()
    }
    fn shifted(&self, by: &Rat) -> Self {
        self + by
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rat) -> Self {
        self * c
    }
}

impl Shiftable for Poly {
    fn unit_like(&self) -> Self {
        Poly::one(self.var())
    }
    fn shifted(&self, by: &Rat) -> Self {
        self + &Poly::constant(self.var(), by.clone())
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

/// `(a)_k = a (a+1) ... (a+k-1)`
pub fn pochhammer<T: Shiftable>(a: &T, k: usize) -> T {
    let mut acc = a.unit_like();
    for j in 0..k {
        acc = acc.times(&a.shifted(&Rat::from_integer(j.into())));
    }
    acc
}

/// `C(a, k) = (a-k+1)_k / k!`; zero for negative `k`.
pub fn gen_binom<T: Shiftable>(a: &T, k: i64) -> T {
    if k < 0 {
        return a.unit_like().scaled(&Rat::zero());
    }
    let k = k as usize;
    let start = a.shifted(&Rat::from_integer((1 - k as i64).into()));
    pochhammer(&start, k).scaled(&factorial_rat(k as u64).recip())
}

pub fn binom_rat(a: &Rat, k: i64) -> Rat {
    gen_binom(a, k)
}

/// Linear polynomial `c0 + c1·s` in the variable s.
pub fn lin_s(c0: Rat, c1: Rat) -> Poly {
    Poly::linear(Var::S, c0, c1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(2), 3), int(24));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn binom_examples() {
        let s = Poly::identity(Var::S);
        assert_eq!(gen_binom(&s, 0), Poly::one(Var::S));
        assert_eq!(gen_binom(&rat(5, 2), 2), rat(15, 8));
        assert_eq!(gen_binom(&s, 1), s);
        assert_eq!(gen_binom(&int(4), -1), int(0));
        assert_eq!(gen_binom(&int(6), 2), int(15));
        // C(n, k) = 0 for integer 0 <= n < k
        assert_eq!(gen_binom(&int(2), 5), int(0));
    }

    proptest! {
        #[test]
        fn binom_times_factorial_is_pochhammer(
            c0 in (-9i64..=9, 1i64..=4), c1 in (-3i64..=3, 1i64..=3), k in 0usize..=8
        ) {
            let a = lin_s(rat(c0.0, c0.1), rat(c1.0, c1.1));
            let lhs = gen_binom(&a, k as i64).scale(&factorial_rat(k as u64));
            let rhs = pochhammer(&a.shifted(&int(1 - k as i64)), k);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
