//! Critical polynomials p_n^λ(s), p_n(s;β) and their normalized and Mellin forms.
//!
//! Canonical normalization is the S-form one (p_0 = 1/2, p_2 = 3s/2 - 3/4).
//! The hypergeometric construction is exactly twice that and carries its own tag.

mod mellin;
mod normalized;

pub use mellin::{
    gamma_ratio, mellin_closed, mellin_closed_f64, mellin_t_closed, mellin_t_factor, mellin_t_factor_product,
    t_kind_zeros, GammaTerm, MellinClosedForm, MellinKind, Transcendental,
};
pub use normalized::{
    gould_closure_even, gould_closure_odd, gould_sum_even, gould_sum_odd, q_rational, q_thm_forms, s32_bare_sum,
    s32_bare_sum_closed, s32_bare_sum_fun, NormalizedRational,
};

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::rat::{binom_int, factorial_rat, fmt_rat, int, pow_rat, rat, Rat};
use crate::exact::special::{gen_binom, lin_s, pochhammer};
use crate::exact::{Poly, RatFun, Var};
use crate::hyp3f2::poly_from_3f2;
use crate::orthopoly::check_lambda;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "family")]
pub enum Family {
    Gegenbauer {
        #[serde(with = "crate::exact::rat::serde_rat")]
        lambda: Rat,
    },
    Beta {
        #[serde(with = "crate::exact::rat::serde_rat")]
        beta: Rat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    S41,
    S32,
    S21,
    #[serde(rename = "HYP")]
    Hyp,
    #[serde(rename = "RECUR")]
    Recur,
}

impl Form {
    pub fn parse(s: &str) -> Option<Form> {
        match s.to_ascii_lowercase().as_str() {
            "s41" => Some(Form::S41),
            "s32" => Some(Form::S32),
            "s21" => Some(Form::S21),
            "hyp" => Some(Form::Hyp),
            "recur" => Some(Form::Recur),
            _ => None,
        }
    }
}

/// Which constant multiple of the critical polynomial a construction returns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// p_0 = 1/2, p_1 = λ: the binomial-sum normalization.
    #[serde(rename = "paper_S")]
    Canonical,
    /// Twice canonical: the polynomial left by the Mellin Γ-ratio with constant Γ(λ/2+1/4)/(2·n!).
    #[serde(rename = "thm4_hat")]
    Hat,
    /// The ₃F₂ normalization of the one-parameter family, p_n(s;β) with leading ₃F₂ term 1.
    #[serde(rename = "beta_3F2")]
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPolynomial {
    pub n: usize,
    pub family: Family,
    pub form: Form,
    pub normalization: Normalization,
    pub poly: Poly,
}

impl CriticalPolynomial {
    pub fn lambda(&self) -> Option<&Rat> {
        match &self.family {
            Family::Gegenbauer { lambda } => Some(lambda),
            Family::Beta { .. } => None,
        }
    }

    /// p(s) - (-1)^{⌊n/2⌋} p(1-s)
    pub fn reflection_residual(&self) -> Poly {
        reflection_residual(&self.poly, self.n)
    }

    pub fn label(&self) -> String {
        match &self.family {
            Family::Gegenbauer { lambda } => format!("n={} lambda={} form={:?}", self.n, lambda, self.form),
            Family::Beta { beta } => format!("n={} beta={}", self.n, beta),
        }
    }
}

impl Serialize for CriticalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("n", &self.n)?;
        match &self.family {
            Family::Gegenbauer { lambda } => m.serialize_entry("lambda", &fmt_rat(lambda))?,
            Family::Beta { beta } => m.serialize_entry("beta", &fmt_rat(beta))?,
        }
        m.serialize_entry("form", &self.form)?;
        m.serialize_entry("normalization", &self.normalization)?;
        m.serialize_entry("variable", &self.poly.var())?;
        m.serialize_entry("coeffs", &self.poly.coeffs().iter().map(fmt_rat).collect::<Vec<_>>())?;
        m.end()
    }
}

#[derive(Deserialize)]
struct CriticalWire {
    n: usize,
    lambda: Option<String>,
    beta: Option<String>,
    form: Form,
    normalization: Normalization,
    variable: Var,
    coeffs: Vec<String>,
}

impl<'de> Deserialize<'de> for CriticalPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use crate::exact::rat::parse_rat;
        use serde::de::Error as _;
        let w = CriticalWire::deserialize(d)?;
        let family = match (w.lambda, w.beta) {
            (Some(l), None) => Family::Gegenbauer { lambda: parse_rat(&l).map_err(D::Error::custom)? },
            (None, Some(b)) => Family::Beta { beta: parse_rat(&b).map_err(D::Error::custom)? },
            _ => return Err(D::Error::custom("exactly one of lambda or beta is required")),
        };
        let coeffs = w.coeffs.iter().map(|c| parse_rat(c)).collect::<Result<Vec<_>>>().map_err(D::Error::custom)?;
        Ok(CriticalPolynomial {
            n: w.n,
            family,
            form: w.form,
            normalization: w.normalization,
            poly: Poly::new(w.variable, coeffs),
        })
    }
}

pub fn reflection_residual(p: &Poly, n: usize) -> Poly {
    let r = p.reflect();
    if (n / 2) % 2 == 0 {
        p - &r
    } else {
        p + &r
    }
}

fn sign(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn two_pow(e: i64) -> Rat {
    pow_rat(&int(2), e)
}

fn binz(n: usize, k: usize) -> Rat {
    Rat::from_integer(binom_int(n as u64, k as u64))
}

fn gegenbauer_poly(n: usize, lambda: &Rat, form: Form, normalization: Normalization, poly: Poly) -> CriticalPolynomial {
    CriticalPolynomial { n, family: Family::Gegenbauer { lambda: lambda.clone() }, form, normalization, poly }
}

/// `(s + lambda)/2 + shift` as a polynomial in s.
fn half_s_plus(lambda: &Rat, shift: Rat) -> Poly {
    lin_s(lambda / int(2) + shift, rat(1, 2))
}

/// Binomial sum with the S:4/1 shape (no denominator depending on s).
pub fn p_s41(n: usize, lambda: &Rat) -> Result<CriticalPolynomial> {
    check_lambda(lambda)?;
    let m = n / 2;
    let mut acc = Poly::zero(Var::S);
    let pre;
    if n % 2 == 0 {
        pre = factorial_rat(m as u64) * factorial_rat(2 * m as u64);
        let top = half_s_plus(lambda, rat(-3, 4) + int(m as i64));
        for r in 0..=m {
            let c = sign(m - r)
                * two_pow(2 * r as i64 - 1)
                * gen_binom(&(int((m + r) as i64 - 1) + lambda), (m + r) as i64)
                * binz(m + r, 2 * r)
                / binz(m, r);
            let term = &gen_binom(&lin_s(int(r as i64 - 1), rat(1, 2)), r as i64) * &gen_binom(&top, (m - r) as i64);
            acc = &acc + &term.scale(&c);
        }
    } else {
        pre = factorial_rat(m as u64) * factorial_rat(2 * m as u64 + 1);
        let top = half_s_plus(lambda, rat(-1, 4) + int(m as i64));
        for r in 0..=m {
            let c = sign(m - r)
                * two_pow(2 * r as i64)
                * gen_binom(&(int((m + r) as i64) + lambda), (m + r + 1) as i64)
                * binz(m + r + 1, 2 * r + 1)
                / binz(m, r);
            let term =
                &gen_binom(&lin_s(rat(2 * r as i64 - 1, 2), rat(1, 2)), r as i64) * &gen_binom(&top, (m - r) as i64);
            acc = &acc + &term.scale(&c);
        }
    }
    Ok(gegenbauer_poly(n, lambda, Form::S41, Normalization::Canonical, acc.scale(&pre)))
}

/// Prefactor polynomial times a sum with s-dependent binomials in the denominator,
/// assembled as a rational function whose denominator must cancel.
pub fn p_s32(n: usize, lambda: &Rat) -> Result<CriticalPolynomial> {
    check_lambda(lambda)?;
    let m = n / 2;
    let (pre, sum) = if n % 2 == 0 {
        let pre = gen_binom(&half_s_plus(lambda, rat(-3, 4) + int(m as i64)), m as i64).scale(
            &(factorial_rat(m as u64)
                * factorial_rat(2 * m as u64)
                * gen_binom(&(int(m as i64 - 1) + lambda), m as i64)),
        );
        (pre, normalized::s32_bare_sum_fun(n, lambda))
    } else {
        let pre = gen_binom(&half_s_plus(lambda, rat(-1, 4) + int(m as i64)), m as i64).scale(
            &(factorial_rat(m as u64)
                * factorial_rat(2 * m as u64 + 1)
                * gen_binom(&(int(m as i64) + lambda), m as i64 + 1)),
        );
        (pre, normalized::s32_bare_sum_fun(n, lambda))
    };
    let p = (&sum * &pre).into_poly().map_err(|_| Error::Inconsistent(format!("S:3/2 form at n={n} is not a polynomial")))?;
    Ok(gegenbauer_poly(n, lambda, Form::S32, Normalization::Canonical, p))
}

/// The λ = 1 sum with the Gegenbauer binomials cancelled.
pub fn p_s21_chebyshev(n: usize) -> CriticalPolynomial {
    let m = n / 2;
    let mut sum = RatFun::zero(Var::S);
    let (pre, shift) = if n % 2 == 0 {
        (factorial_rat(m as u64) * factorial_rat(2 * m as u64), rat(-1, 4))
    } else {
        (factorial_rat(m as u64) * factorial_rat(2 * m as u64 + 1), rat(1, 4))
    };
    for r in 0..=m {
        let (c, top) = if n % 2 == 0 {
            (
                sign(m - r) * two_pow(2 * r as i64 - 1) * binz(m + r, 2 * r),
                gen_binom(&lin_s(int(r as i64 - 1), rat(1, 2)), r as i64),
            )
        } else {
            (
                sign(m - r) * two_pow(2 * r as i64) * binz(m + r + 1, 2 * r + 1),
                gen_binom(&lin_s(rat(2 * r as i64 - 1, 2), rat(1, 2)), r as i64),
            )
        };
        let den = gen_binom(&lin_s(&shift + int(r as i64), rat(1, 2)), r as i64);
        let term = RatFun::new(top.scale(&c), den).expect("nonzero binomial");
        sum = &sum + &term;
    }
    let prefactor = gen_binom(&lin_s(&shift + int(m as i64), rat(1, 2)), m as i64).scale(&pre);
    let p = (&sum * &prefactor).into_poly().expect("S:2/1 form is a polynomial");
    gegenbauer_poly(n, &Rat::one(), Form::S21, Normalization::Canonical, p)
}

/// n!(2λ)_n Σ_k (-1)^k (λ/2+1/4)_k / (4^k k! (λ+1/2)_k (n-2k)!) · ((s+ε)/2)_{⌊n/2⌋-k}
pub fn p_hyp(n: usize, lambda: &Rat) -> Result<CriticalPolynomial> {
    check_lambda(lambda)?;
    let a = lambda / int(2) + rat(1, 4);
    let b = lambda + rat(1, 2);
    let pre = factorial_rat(n as u64) * pochhammer(&(lambda * int(2)), n);
    let p = poly_from_3f2(n, |k| {
        &pre * sign(k) * pochhammer(&a, k)
            / (two_pow(2 * k as i64) * factorial_rat(k as u64) * pochhammer(&b, k) * factorial_rat((n - 2 * k) as u64))
    });
    Ok(gegenbauer_poly(n, lambda, Form::Hyp, Normalization::Hat, p))
}

/// Three-term recursion in n with shifts in s, seeded 1/2 and 1. The iteration runs on
/// p_n/n!, which is what the mixed recursion produces with these seeds.
pub fn p_chebyshev_recursive(n: usize) -> CriticalPolynomial {
    let s = Poly::identity(Var::S);
    let mut prev2 = Poly::constant(Var::S, rat(1, 2));
    let mut prev1 = Poly::one(Var::S);
    let out = match n {
        0 => prev2,
        1 => prev1,
        _ => {
            for k in 2..=n {
                let shifted = prev1.shift(&Rat::one());
                let lead = if k % 2 == 0 { &s * &shifted } else { shifted.scale(&int(2)) };
                let tail = (&lin_s(int(k as i64) - rat(1, 2), int(1)) * &prev2).scale(&rat(1, 2));
                let next = &lead - &tail;
                prev2 = prev1;
                prev1 = next;
            }
            prev1
        }
    };
    gegenbauer_poly(n, &Rat::one(), Form::Recur, Normalization::Canonical, out.scale(&factorial_rat(n as u64)))
}

pub fn check_beta(beta: &Rat) -> Result<()> {
    if beta >= &Rat::one() {
        return Err(Error::InvalidBeta(beta.to_string()));
    }
    Ok(())
}

/// Σ_k (1-β)_k ((1-n)/2)_k (-n/2)_k (-1)^k / ((2(1-β))_k k!) · ((s+ε)/2)_{⌊n/2⌋-k}
pub fn p_beta(n: usize, beta: &Rat) -> Result<CriticalPolynomial> {
    check_beta(beta)?;
    let a = Rat::one() - beta;
    let two_a = &a * int(2);
    let u1 = rat(1 - n as i64, 2);
    let u2 = rat(-(n as i64), 2);
    let p = poly_from_3f2(n, |k| {
        sign(k) * pochhammer(&a, k) * pochhammer(&u1, k) * pochhammer(&u2, k)
            / (pochhammer(&two_a, k) * factorial_rat(k as u64))
    });
    Ok(CriticalPolynomial { n, family: Family::Beta { beta: beta.clone() }, form: Form::Hyp, normalization: Normalization::Beta, poly: p })
}

/// Exact constant c with p_beta(n, 3/4 - λ/2) = c · p_hyp(n, λ); `None` if not proportional.
pub fn beta_hat_ratio(n: usize, lambda: &Rat) -> Result<Option<Rat>> {
    let pb = p_beta(n, &(rat(3, 4) - lambda / int(2)))?.poly;
    let ph = p_hyp(n, lambda)?.poly;
    let Some(lead) = ph.leading() else { return Ok(None) };
    let c = pb.leading().cloned().unwrap_or_else(Rat::zero) / lead;
    Ok((ph.scale(&c) == pb).then_some(c))
}

/// Build by form. Chebyshev-only forms require λ = 1.
pub fn construct(n: usize, lambda: &Rat, form: Form) -> Result<CriticalPolynomial> {
    match form {
        Form::S41 => p_s41(n, lambda),
        Form::S32 => p_s32(n, lambda),
        Form::Hyp => p_hyp(n, lambda),
        Form::S21 | Form::Recur if !lambda.is_one() => {
            Err(Error::InvalidParameters(format!("form {form:?} exists only for lambda = 1, got {lambda}")))
        }
        Form::S21 => Ok(p_s21_chebyshev(n)),
        Form::Recur => Ok(p_chebyshev_recursive(n)),
    }
}

/// Canonical p_n^λ used by the downstream checks.
pub fn canonical(n: usize, lambda: &Rat) -> Result<Poly> {
    Ok(p_s41(n, lambda)?.poly)
}

/// p̂_n^λ, the Mellin-normalized polynomial.
pub fn hat(n: usize, lambda: &Rat) -> Result<Poly> {
    Ok(p_hyp(n, lambda)?.poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(c: &[Rat]) -> Poly {
        Poly::new(Var::S, c.to_vec())
    }

    fn golden(n: usize) -> Poly {
        match n {
            0 => s(&[rat(1, 2)]),
            1 => s(&[int(1)]),
            2 => s(&[rat(-3, 4), rat(3, 2)]),
            3 => s(&[int(-3), int(6)]),
            4 => s(&[rat(63, 4), int(-15), int(15)]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn printed_list_from_every_path() {
        let one = Rat::one();
        for n in 0..=4 {
            let g = golden(n);
            assert_eq!(p_s41(n, &one).unwrap().poly, g, "S41 n={n}");
            assert_eq!(p_s32(n, &one).unwrap().poly, g, "S32 n={n}");
            assert_eq!(p_s21_chebyshev(n).poly, g, "S21 n={n}");
            assert_eq!(p_chebyshev_recursive(n).poly, g, "RECUR n={n}");
            assert_eq!(p_hyp(n, &one).unwrap().poly, g.scale(&int(2)), "HYP n={n}");
        }
    }

    #[test]
    fn generic_lambda_examples() {
        let l = rat(5, 3);
        assert_eq!(p_s32(1, &l).unwrap().poly, s(&[l.clone()]));
        assert_eq!(p_s32(0, &l).unwrap().poly, s(&[rat(1, 2)]));
        assert_eq!(p_hyp(0, &l).unwrap().poly, s(&[int(1)]));
        assert_eq!(p_hyp(1, &l).unwrap().poly, s(&[&l * int(2)]));
        assert!(matches!(p_s41(2, &rat(-1, 2)), Err(Error::InvalidLambda(_))));
        assert!(matches!(p_hyp(2, &int(0)), Err(Error::InvalidLambda(_))));
    }

    #[test]
    fn forms_agree_and_reflect() {
        for lam in [int(1), rat(1, 2), rat(3, 2), int(2), rat(5, 2), rat(-1, 4)] {
            for n in 0..=12 {
                let a = p_s41(n, &lam).unwrap();
                let b = p_s32(n, &lam).unwrap();
                let h = p_hyp(n, &lam).unwrap();
                assert_eq!(a.poly, b.poly, "n={n} lambda={lam}");
                assert_eq!(h.poly, a.poly.scale(&int(2)));
                assert!(a.reflection_residual().is_zero());
                assert_eq!(a.poly.degree(), Some(n / 2));
            }
        }
    }

    #[test]
    fn beta_family() {
        assert_eq!(p_beta(0, &rat(-2, 3)).unwrap().poly, s(&[int(1)]));
        let p = p_beta(2, &rat(1, 2)).unwrap().poly;
        assert_eq!(p, s(&[rat(-1, 4), rat(1, 2)]));
        assert!(matches!(p_beta(3, &int(1)), Err(Error::InvalidBeta(_))));
        for lam in [int(1), rat(3, 2), rat(-1, 4)] {
            for n in 0..=10 {
                let c = beta_hat_ratio(n, &lam).unwrap().expect("proportional");
                assert_eq!(c, pochhammer(&(&lam * int(2)), n).recip());
            }
        }
    }

    #[test]
    fn json_shape() {
        let p = p_s32(2, &rat(3, 2)).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["lambda"], "3/2");
        assert_eq!(v["form"], "S32");
        assert_eq!(v["normalization"], "paper_S");
        let back: CriticalPolynomial = serde_json::from_value(v).unwrap();
        assert_eq!(back, p);
        let b = p_beta(3, &int(-1)).unwrap();
        let back: CriticalPolynomial = serde_json::from_str(&serde_json::to_string(&b).unwrap()).unwrap();
        assert_eq!(back, b);
    }
}
