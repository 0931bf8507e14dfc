//! The normalized rational functions q_n^λ(s) and the bare binomial sums behind them.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{binz, canonical, sign, two_pow};
use crate::error::{Error, Result};
use crate::exact::rat::{factorial_rat, int, rat, Rat};
use crate::exact::special::{gen_binom, lin_s, pochhammer};
use crate::exact::{Poly, RatFun, Var};
use crate::orthopoly::check_lambda;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedRational {
    pub n: usize,
    #[serde(with = "crate::exact::rat::serde_rat")]
    pub lambda: Rat,
    pub fun: RatFun,
}

/// Shift inside the s-dependent denominator binomial: -3/4 (even) or -1/4 (odd).
fn den_shift(n: usize) -> Rat {
    if n % 2 == 0 {
        rat(-3, 4)
    } else {
        rat(-1, 4)
    }
}

/// Coefficient of the r-th term with the s-dependent factors removed.
fn bare_coeff(n: usize, lambda: &Rat, r: usize) -> Rat {
    let m = n / 2;
    if n % 2 == 0 {
        sign(m - r) * two_pow(2 * r as i64 - 1) * gen_binom(&(int((m + r) as i64 - 1) + lambda), r as i64)
            * binz(m + r, 2 * r)
            / binz(m + r, r)
    } else {
        sign(m - r) * two_pow(2 * r as i64) * gen_binom(&(int((m + r) as i64) + lambda), r as i64)
            * binz(m + r + 1, 2 * r + 1)
            / binz(m + r + 1, r)
    }
}

/// Upper s-binomial C((s-2+ε)/2 + r, r).
fn upper(n: usize, r: usize) -> Poly {
    let c0 = rat(2 * r as i64 - 2 + (n % 2) as i64, 2);
    gen_binom(&lin_s(c0, rat(1, 2)), r as i64)
}

/// Lower s-binomial C((s+λ)/2 + shift + r, r).
fn lower(n: usize, lambda: &Rat, r: usize) -> Poly {
    gen_binom(&lin_s(lambda / int(2) + den_shift(n) + int(r as i64), rat(1, 2)), r as i64)
}

/// The bare S:3/2 sum as a rational function of s (full index n).
pub fn s32_bare_sum_fun(n: usize, lambda: &Rat) -> RatFun {
    let mut acc = RatFun::zero(Var::S);
    for r in 0..=n / 2 {
        let c = bare_coeff(n, lambda, r);
        if c.is_zero() {
            continue;
        }
        let t = RatFun::new(upper(n, r).scale(&c), lower(n, lambda, r)).expect("lower binomial is a nonzero polynomial");
        acc = &acc + &t;
    }
    acc
}

/// The bare S:3/2 sum at a rational point, term by term.
pub fn s32_bare_sum(n: usize, lambda: &Rat, s: &Rat) -> Result<Rat> {
    let mut acc = Rat::zero();
    for r in 0..=n / 2 {
        let d = lower(n, lambda, r).eval(s);
        if d.is_zero() {
            return Err(Error::PoleInDenominator(format!("lower binomial of term r={r} vanishes at s={s}")));
        }
        acc += bare_coeff(n, lambda, r) * upper(n, r).eval(s) / d;
    }
    Ok(acc)
}

/// Closed forms of the bare sums: at s = 1 for even n, at s = 2 for odd n.
pub fn s32_bare_sum_closed(n: usize, lambda: &Rat) -> Result<Rat> {
    let m = n / 2;
    let mi = m as i64;
    let l2 = lambda * int(2);
    let c = |shift: Rat| gen_binom(&(int(mi) + (&l2 + shift) / int(4)), mi);
    let (num, den) = if n % 2 == 0 {
        (c(int(-3)) * rat(1, 2), c(int(-1)))
    } else {
        (c(int(-3)) * int(mi + 1), c(int(3)))
    };
    if den.is_zero() {
        return Err(Error::PoleInDenominator(format!("closed form at n={n} lambda={lambda}")));
    }
    Ok(num / den)
}

/// s → ∞ limit of the even bare sum (half index m).
pub fn gould_sum_even(m: usize, lambda: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for r in 0..=m {
        acc += sign(m - r) * two_pow(2 * r as i64 - 1) * gen_binom(&(int((m + r) as i64 - 1) + lambda), r as i64)
            * binz(m + r, 2 * r)
            / binz(m + r, r);
    }
    acc
}

/// (1/2) C(2m+2λ-1, 2m-1) / C(m+λ-1, m-1), for m ≥ 1.
pub fn gould_closure_even(m: usize, lambda: &Rat) -> Result<Rat> {
    if m == 0 {
        return Err(Error::UndefinedIndex("even closure needs m >= 1".into()));
    }
    let mi = m as i64;
    let num = gen_binom(&(int(2 * mi - 1) + lambda * int(2)), 2 * mi - 1);
    let den = gen_binom(&(int(mi - 1) + lambda), mi - 1);
    if den.is_zero() {
        return Err(Error::PoleInDenominator(format!("C(m+lambda-1, m-1) at m={m} lambda={lambda}")));
    }
    Ok(num / den / int(2))
}

pub fn gould_sum_odd(m: usize, lambda: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for r in 0..=m {
        acc += sign(m - r) * two_pow(2 * r as i64) * gen_binom(&(int((m + r) as i64) + lambda), r as i64)
            * binz(m + r + 1, 2 * r + 1)
            / binz(m + r + 1, r);
    }
    acc
}

/// (m+1)/(2m+1) · C(2m+2λ, 2m) / C(m+λ, m)
pub fn gould_closure_odd(m: usize, lambda: &Rat) -> Result<Rat> {
    let mi = m as i64;
    let num = gen_binom(&(int(2 * mi) + lambda * int(2)), 2 * mi);
    let den = gen_binom(&(int(mi) + lambda), mi);
    if den.is_zero() {
        return Err(Error::PoleInDenominator(format!("C(m+lambda, m) at m={m} lambda={lambda}")));
    }
    Ok(rat(mi + 1, 2 * mi + 1) * num / den)
}

/// The three printed expressions for q_n^λ: (product, factorial/binomial, prefactor × bare sum).
pub fn q_thm_forms(n: usize, lambda: &Rat) -> Result<[RatFun; 3]> {
    check_lambda(lambda)?;
    if n == 0 {
        return Err(Error::UndefinedIndex("q_0 contains (n-1)! at n = 0".into()));
    }
    let p = canonical(n, lambda)?;
    let m = n / 2;
    let mi = m as i64;
    let l2 = lambda * int(2);
    let odd = n % 2;
    // 2s + 2λ + 4j - 3 (even) or - 1 (odd)
    let lin_off = if odd == 0 { int(-3) } else { int(-1) };
    let mut prod = Poly::one(Var::S);
    for j in 1..=mi {
        prod = &prod * &lin_s(&l2 + int(4 * j) + &lin_off, int(2));
    }
    let product = RatFun::new(p.scale(&two_pow(2 * mi + 1)), prod.scale(&pochhammer(&l2, n)))?;

    let top_binom = gen_binom(&lin_s(lambda / int(2) + den_shift(n) + int(mi), rat(1, 2)), mi);
    let (fact_den, fact_num_scale, pre) = if odd == 0 {
        let big = gen_binom(&(int(2 * mi - 1) + &l2), 2 * mi - 1);
        let c = lambda * factorial_rat(m as u64 - 1) * factorial_rat(2 * m as u64) * &big;
        let pre = int(2 * mi) * gen_binom(&(int(mi - 1) + lambda), mi) / (lambda * &big);
        (top_binom.scale(&c), int(2), pre)
    } else {
        let big = gen_binom(&(int(2 * mi) + &l2), 2 * mi);
        let c = lambda * factorial_rat(m as u64) * factorial_rat(2 * m as u64) * &big;
        let pre = int(2 * mi + 1) * gen_binom(&(int(mi) + lambda), mi + 1) / (lambda * &big);
        (top_binom.scale(&c), int(1), pre)
    };
    let factorial = RatFun::new(p.scale(&fact_num_scale), fact_den)?;
    let thm = s32_bare_sum_fun(n, lambda).scale(&pre);
    Ok([product, factorial, thm])
}

/// q_n^λ(s), built from its three expressions which must coincide.
pub fn q_rational(n: usize, lambda: &Rat) -> Result<NormalizedRational> {
    let [a, b, c] = q_thm_forms(n, lambda)?;
    if !a.is_identically(&b) || !a.is_identically(&c) {
        return Err(Error::Inconsistent(format!("q forms disagree at n={n} lambda={lambda}: {a} | {b} | {c}")));
    }
    Ok(NormalizedRational { n, lambda: lambda.clone(), fun: a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_examples() {
        let q = q_rational(2, &int(1)).unwrap().fun;
        let expect = RatFun::new(lin_s(int(-1), int(2)), lin_s(int(3), int(2))).unwrap();
        assert!(q.is_identically(&expect));
        assert_eq!(q.eval(&int(1)).unwrap(), rat(1, 5));
        let q1 = q_rational(1, &rat(7, 3)).unwrap().fun;
        assert!(q1.is_identically(&RatFun::constant(Var::S, int(1))));
        assert!(matches!(q_rational(0, &int(1)), Err(Error::UndefinedIndex(_))));
    }

    #[test]
    fn q_degrees() {
        for lam in [int(1), rat(1, 2), rat(-1, 4), rat(7, 3)] {
            for n in 1..=14 {
                let q = q_rational(n, &lam).unwrap().fun;
                assert_eq!(q.numerator_degree(), n / 2);
                assert_eq!(q.denominator_degree(), n / 2, "n={n} lambda={lam}");
            }
        }
    }

    #[test]
    fn bare_sum_examples() {
        assert_eq!(s32_bare_sum(2, &int(1), &int(1)).unwrap(), rat(3, 10));
        assert_eq!(s32_bare_sum_closed(2, &int(1)).unwrap(), rat(3, 10));
        assert_eq!(s32_bare_sum(0, &rat(2, 5), &rat(9, 7)).unwrap(), rat(1, 2));
        assert_eq!(s32_bare_sum(1, &int(1), &int(2)).unwrap(), int(1));
        // with the prefactor the same point gives q_2^1(1) = 1/5
        assert_ne!(s32_bare_sum(2, &int(1), &int(1)).unwrap(), q_rational(2, &int(1)).unwrap().fun.eval(&int(1)).unwrap());
    }

    #[test]
    fn bare_sums_match_closed_forms() {
        for lam in [int(1), rat(1, 2), rat(3, 2), int(2), rat(7, 3), rat(-1, 4)] {
            for n in 0..=20 {
                let s = if n % 2 == 0 { int(1) } else { int(2) };
                assert_eq!(s32_bare_sum(n, &lam, &s).unwrap(), s32_bare_sum_closed(n, &lam).unwrap(), "n={n} {lam}");
                let f = s32_bare_sum_fun(n, &lam).eval(&s).unwrap();
                assert_eq!(f, s32_bare_sum(n, &lam, &s).unwrap());
            }
        }
    }

    #[test]
    fn gould_examples() {
        assert_eq!(gould_sum_even(1, &int(1)), rat(3, 2));
        assert_eq!(gould_closure_even(1, &int(1)).unwrap(), rat(3, 2));
        assert_eq!(gould_sum_odd(0, &rat(2, 9)), int(1));
        assert_eq!(gould_closure_odd(0, &rat(2, 9)).unwrap(), int(1));
        assert!(gould_sum_even(0, &int(1)) == rat(1, 2) && gould_closure_even(0, &int(1)).is_err());
    }
}
