//! Gegenbauer, Chebyshev and Legendre polynomials, and identities between them.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::rat::{factorial_rat, int, rat, to_f64, Rat};
use crate::exact::special::{gen_binom, pochhammer};
use crate::exact::{Poly, Var};
use crate::report::{ClaimResult, SuiteReport};

fn x() -> Poly {
    Poly::identity(Var::X)
}

pub fn check_lambda(lambda: &Rat) -> Result<()> {
    if lambda <= &rat(-1, 2) || lambda.is_zero() {
        return Err(Error::InvalidLambda(lambda.to_string()));
    }
    Ok(())
}

/// C_n^λ from the explicit binomial sum, for λ > -1/2, λ ≠ 0.
pub fn gegenbauer(n: usize, lambda: &Rat) -> Result<Poly> {
    check_lambda(lambda)?;
    Ok(gegenbauer_any(n, lambda))
}

/// The same sum without the parameter check; it is a polynomial identity in λ.
pub(crate) fn gegenbauer_any(n: usize, lambda: &Rat) -> Poly {
    let mut coeffs = vec![Rat::zero(); n + 1];
    for r in 0..=n / 2 {
        let m = (n - r) as i64;
        let sign = if r % 2 == 0 { Rat::one() } else { -Rat::one() };
        let c = sign
            * gen_binom(&int(m), r as i64)
            * gen_binom(&(int(m - 1) + lambda), m)
            * num_traits::pow(int(2), n - 2 * r);
        coeffs[n - 2 * r] = c;
    }
    Poly::new(Var::X, coeffs)
}

/// C_n^λ with coefficients that are polynomials in λ, indexed by the power of x.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPoly {
    pub coeffs: Vec<Poly>,
}

impl LambdaPoly {
    pub fn eval_lambda(&self, lambda: &Rat) -> Poly {
        Poly::new(Var::X, self.coeffs.iter().map(|c| c.eval(lambda)).collect())
    }

    /// Value at x = 1 as a polynomial in λ.
    pub fn at_x_one(&self) -> Poly {
        self.coeffs.iter().fold(Poly::zero(Var::Lambda), |a, c| &a + c)
    }

    /// lim_{λ→0} C_n^λ(x) / C_n^λ(1), obtained by cancelling the common power of λ.
    pub fn normalized_limit_at_zero(&self) -> Result<Poly> {
        let den = self.at_x_one();
        let v = lowest_order(&den).ok_or(Error::ZeroPolynomial)?;
        let d0 = den.coeff(v);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if (0..v).any(|k| !c.coeff(k).is_zero()) {
                    Err(Error::Inconsistent("numerator vanishes to lower order than denominator".into()))
                } else {
                    Ok(c.coeff(v) / &d0)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(Var::X, coeffs))
    }
}

fn lowest_order(p: &Poly) -> Option<usize> {
    p.coeffs().iter().position(|c| !c.is_zero())
}

pub fn gegenbauer_lambda_poly(n: usize) -> LambdaPoly {
    let lam = Poly::identity(Var::Lambda);
    let mut coeffs = vec![Poly::zero(Var::Lambda); n + 1];
    for r in 0..=n / 2 {
        let m = (n - r) as i64;
        let sign = if r % 2 == 0 { Rat::one() } else { -Rat::one() };
        let c = gen_binom(&int(m), r as i64) * num_traits::pow(int(2), n - 2 * r) * sign;
        let b = gen_binom(&(&lam + &Poly::constant(Var::Lambda, int(m - 1))), m);
        coeffs[n - 2 * r] = b.scale(&c);
    }
    LambdaPoly { coeffs }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebyshevKind {
    T,
    U,
}

pub fn chebyshev(kind: ChebyshevKind, n: usize) -> Poly {
    let mut prev = Poly::one(Var::X);
    if n == 0 {
        return prev;
    }
    let mut cur = match kind {
        ChebyshevKind::T => x(),
        ChebyshevKind::U => x().scale(&int(2)),
    };
    let two_x = x().scale(&int(2));
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn chebyshev_t(n: usize) -> Poly {
    chebyshev(ChebyshevKind::T, n)
}

pub fn chebyshev_u(n: usize) -> Poly {
    chebyshev(ChebyshevKind::U, n)
}

/// U_k for any integer k, with U_{-1} = 0 and U_{-n} = -U_{n-2}.
pub fn chebyshev_u_signed(k: i64) -> Poly {
    if k >= 0 {
        chebyshev_u(k as usize)
    } else if k == -1 {
        Poly::zero(Var::X)
    } else {
        -chebyshev_u((-k - 2) as usize)
    }
}

pub fn legendre(n: usize) -> Poly {
    let mut prev = Poly::one(Var::X);
    if n == 0 {
        return prev;
    }
    let mut cur = x();
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let kk = k as i64;
        let next = (&(&x() * &cur).scale(&int(2 * kk + 1)) - &prev.scale(&int(kk))).scale(&rat(1, kk + 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// B_k(x) = U_{2k}(sqrt(x+4)/2): keep the even part of U_{2k} and substitute y^2 = (x+4)/4.
pub fn b_polynomial_from_chebyshev(k: usize) -> Poly {
    let u = chebyshev_u(2 * k);
    u.even_part_in_square().compose(&Poly::linear(Var::X, int(1), rat(1, 4)))
}

/// Sampled (λ1, λ2) pairs for the Gegenbauer addition identity.
pub const ADDITION_SAMPLES: [(i64, i64, i64, i64); 5] = [(1, 2, 1, 3), (1, 1, 3, 2), (-1, 4, 2, 1), (7, 3, -1, 3), (5, 2, 5, 2)];

pub fn identity_suite(nmax: usize) -> SuiteReport {
    let mut c1 = ClaimResult::new("composition U_{mn-1} = U_{m-1}(T_n) U_{n-1}");
    let mut c2 = ClaimResult::new("product 2 T_n U_{m-1} = U_{m+n-1} + U_{m-n-1}");
    let mut c3 = ClaimResult::new("power x^m U_n = 2^-m sum C(m,r) U_{m+n-2r}");
    let mut c4 = ClaimResult::new("U_m = sum P_k P_{m-k}");
    let mut c5 = ClaimResult::new("sum U_k U_{m-k} = U'_{m+1}/2 = [(m+1)x U_{m+1} - (m+2) U_m] / (2(x^2-1))");
    let mut c6 = ClaimResult::new("addition C_m^{l1+l2} = sum C_k^{l1} C_{m-k}^{l2}");
    let mut c7 = ClaimResult::new("C_n^2 = [(n+1)x U_{n+1} - (n+2) U_n] / (2(x^2-1))");
    let mut c8 = ClaimResult::new("B_k(x) = U_{2k}(sqrt(x+4)/2)");
    let mut c9 = ClaimResult::new("large-lambda limit |C_n^l(x)/C_n^l(1) - x^n| <= 10/l at l = 10^6")
        .with_note("asymptotic statement, checked on the grid x = j/20 with the 10/lambda envelope");
    let mut c10 = ClaimResult::new("lambda -> 0 limit of C_n^l(x)/C_n^l(1) is T_n");
    let mut c11 = ClaimResult::new("basic properties: C_n^l(1) = (2l)_n/n!, C_n^1 = U_n, parity, three-term recurrence");

    let x2m1 = Poly::new(Var::X, vec![int(-2), int(0), int(2)]); // 2(x^2 - 1)
    for m in 1..=nmax {
        for n in 1..=nmax {
            if m * n - 1 <= nmax {
                let lhs = chebyshev_u(m * n - 1);
                let rhs = &chebyshev_u(m - 1).compose(&chebyshev_t(n)) * &chebyshev_u(n - 1);
                let alt = &chebyshev_u(n - 1).compose(&chebyshev_t(m)) * &chebyshev_u(m - 1);
                c1.exact(lhs == rhs && lhs == alt, || format!("m={m} n={n}"));
            }
        }
    }
    for m in 1..=nmax as i64 {
        for n in 0..=nmax as i64 {
            if m + n - 1 <= nmax as i64 {
                let lhs = (&chebyshev_t(n as usize) * &chebyshev_u((m - 1) as usize)).scale(&int(2));
                let rhs = &chebyshev_u_signed(m + n - 1) + &chebyshev_u_signed(m - n - 1);
                c2.exact(lhs == rhs, || format!("m={m} n={n}"));
            }
        }
    }
    for m in 0..=nmax {
        for n in 0..=nmax - m {
            let lhs = &Poly::monomial(Var::X, int(1), m) * &chebyshev_u(n);
            let mut rhs = Poly::zero(Var::X);
            for r in 0..=m {
                let c = gen_binom(&int(m as i64), r as i64);
                rhs = &rhs + &chebyshev_u_signed(m as i64 + n as i64 - 2 * r as i64).scale(&c);
            }
            rhs = rhs.scale(&crate::exact::rat::pow_rat(&int(2), -(m as i64)));
            c3.exact(lhs == rhs, || format!("m={m} n={n}"));
        }
    }
    for m in 0..=nmax {
        let sum = (0..=m).fold(Poly::zero(Var::X), |a, k| &a + &(&legendre(k) * &legendre(m - k)));
        c4.exact(sum == chebyshev_u(m), || format!("m={m}"));
    }
    for m in 0..nmax {
        let sum = (0..=m).fold(Poly::zero(Var::X), |a, k| &a + &(&chebyshev_u(k) * &chebyshev_u(m - k)));
        let mi = m as i64;
        let rhs = &(&x() * &chebyshev_u(m + 1)).scale(&int(mi + 1)) - &chebyshev_u(m).scale(&int(mi + 2));
        let deriv = chebyshev_u(m + 1).derivative().scale(&rat(1, 2));
        c5.exact(&x2m1 * &sum == rhs && deriv == sum, || format!("m={m}"));
    }
    for &(a, b, c, d) in ADDITION_SAMPLES.iter() {
        let (l1, l2) = (rat(a, b), rat(c, d));
        let l12 = &l1 + &l2;
        for m in 0..=nmax {
            let lhs = gegenbauer_any(m, &l12);
            let rhs = (0..=m).fold(Poly::zero(Var::X), |acc, k| {
                &acc + &(&gegenbauer_any(k, &l1) * &gegenbauer_any(m - k, &l2))
            });
            c6.exact(lhs == rhs, || format!("m={m} l1={l1} l2={l2}"));
        }
    }
    for n in 0..nmax {
        let ni = n as i64;
        let lhs = &x2m1 * &gegenbauer_any(n, &int(2));
        let rhs = &(&x() * &chebyshev_u(n + 1)).scale(&int(ni + 1)) - &chebyshev_u(n).scale(&int(ni + 2));
        c7.exact(lhs == rhs, || format!("n={n}"));
    }
    for k in 0..=nmax {
        let from_u = b_polynomial_from_chebyshev(k);
        let direct = crate::arith::b_polynomial(k);
        c8.exact(from_u == direct, || format!("k={k}: {from_u} vs {direct}"));
    }
    let big = int(1_000_000);
    for n in 0..=nmax {
        let (ok, worst) = large_lambda_limit(n, &big);
        c9.record(ok, worst, || format!("n={n}: max deviation {worst:e}"));
    }
    for n in 0..=nmax {
        let lim = gegenbauer_lambda_poly(n).normalized_limit_at_zero();
        c10.exact(lim.as_ref().is_ok_and(|p| *p == chebyshev_t(n)), || format!("n={n}: {lim:?}"));
    }
    let lambdas = [rat(1, 2), int(1), rat(3, 2), int(2), rat(7, 3), rat(-1, 4)];
    for lam in &lambdas {
        for n in 0..=nmax {
            c11.exact(basic_properties_hold(n, lam), || format!("n={n} lambda={lam}"));
        }
    }
    SuiteReport::new("orthopoly", vec![c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11])
}

/// Exact ratio on the grid, compared in floating point to 10/λ.
pub fn large_lambda_limit(n: usize, lambda: &Rat) -> (bool, f64) {
    let c = gegenbauer_any(n, lambda);
    let at1 = pochhammer(&(lambda * int(2)), n) / factorial_rat(n as u64);
    let bound = 10.0 / to_f64(lambda);
    let mut worst: f64 = 0.0;
    for j in -20..=20i64 {
        let xv = rat(j, 20);
        let dev = (c.eval(&xv) / &at1 - num_traits::pow(xv.clone(), n)).abs();
        worst = worst.max(to_f64(&dev));
    }
    (worst <= bound, worst)
}

pub fn basic_properties_hold(n: usize, lambda: &Rat) -> bool {
    let c = gegenbauer_any(n, lambda);
    let at_one = pochhammer(&(lambda * int(2)), n) / factorial_rat(n as u64);
    let parity = if n % 2 == 0 { c.clone() } else { -&c };
    let mut ok = c.eval(&Rat::one()) == at_one && c.negate_var() == parity && c.degree() == Some(n);
    if lambda.is_one() {
        ok &= c == chebyshev_u(n);
    }
    if n >= 2 {
        // n C_n = 2(λ+n-1) x C_{n-1} - (2λ+n-2) C_{n-2}
        let ni = int(n as i64);
        let lhs = c.scale(&ni);
        let rhs = &(&x() * &gegenbauer_any(n - 1, lambda)).scale(&((lambda + &ni - int(1)) * int(2)))
            - &gegenbauer_any(n - 2, lambda).scale(&(lambda * int(2) + &ni - int(2)));
        ok &= lhs == rhs;
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gegenbauer_examples() {
        let l = rat(5, 3);
        assert_eq!(gegenbauer(0, &l).unwrap(), Poly::one(Var::X));
        assert_eq!(gegenbauer(1, &l).unwrap(), x().scale(&(&l * int(2))));
        let expect = &Poly::monomial(Var::X, &l * (&l + int(1)) * int(2), 2) - &Poly::constant(Var::X, l.clone());
        assert_eq!(gegenbauer(2, &l).unwrap(), expect);
        assert!(gegenbauer(2, &int(0)).is_err());
        assert!(gegenbauer(2, &rat(-1, 2)).is_err());
    }

    #[test]
    fn classical_examples() {
        assert_eq!(chebyshev_t(2), Poly::new(Var::X, vec![int(-1), int(0), int(2)]));
        assert_eq!(chebyshev_u(2), Poly::new(Var::X, vec![int(-1), int(0), int(4)]));
        assert_eq!(legendre(2), Poly::new(Var::X, vec![rat(-1, 2), int(0), rat(3, 2)]));
        assert_eq!(chebyshev_u_signed(-2), -chebyshev_u(0));
    }

    #[test]
    fn lambda_zero_limit_examples() {
        assert_eq!(gegenbauer_lambda_poly(0).normalized_limit_at_zero().unwrap(), Poly::one(Var::X));
        assert_eq!(gegenbauer_lambda_poly(2).normalized_limit_at_zero().unwrap(), chebyshev_t(2));
        assert_eq!(gegenbauer_lambda_poly(3).normalized_limit_at_zero().unwrap(), chebyshev_t(3));
        let lp = gegenbauer_lambda_poly(5);
        assert_eq!(lp.eval_lambda(&rat(3, 2)), gegenbauer(5, &rat(3, 2)).unwrap());
    }

    #[test]
    fn identity_examples() {
        // U_2 = 2 P_0 P_2 + P_1^2
        let sum = &(&legendre(0) * &legendre(2)).scale(&int(2)) + &(&legendre(1) * &legendre(1));
        assert_eq!(sum, chebyshev_u(2));
        assert_eq!(b_polynomial_from_chebyshev(2), Poly::new(Var::X, vec![int(5), int(5), int(1)]));
    }

    #[test]
    fn invariants_to_thirty() {
        for lam in [int(1), rat(1, 2), rat(3, 2), int(2), rat(5, 2), rat(-1, 4), rat(7, 3)] {
            for n in 0..=30 {
                assert!(basic_properties_hold(n, &lam), "n={n} lambda={lam}");
            }
        }
    }

    #[test]
    fn suite_passes_at_six() {
        let r = identity_suite(6);
        assert!(r.passed, "{:?}", r.first_failure());
        assert_eq!(r.claims.len(), 11);
    }
}
