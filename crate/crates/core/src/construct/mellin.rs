//! Closed forms of the Mellin transforms: constant × polynomial × Γ-ratio.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hat;
use crate::error::{Error, Result};
use crate::exact::rat::{factorial_rat, int, is_integer, nonpositive_integer, pow_rat, rat, to_f64, Rat};
use crate::exact::special::{lin_s, pochhammer};
use crate::exact::{Poly, Var};
use crate::orthopoly::check_lambda;
use crate::quad::gamma::{gamma, gamma_ratio_f64, ln_gamma_signed};

/// The transcendental constant shared by every transform with the same parameter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transcendental {
    /// Γ(λ/2 + 1/4)
    GammaAt(#[serde(with = "crate::exact::rat::serde_rat")] Rat),
    /// √π
    SqrtPi,
}

impl Transcendental {
    pub fn value(&self) -> f64 {
        match self {
            Transcendental::GammaAt(a) => gamma(to_f64(a)),
            Transcendental::SqrtPi => std::f64::consts::PI.sqrt(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum MellinKind {
    Gegenbauer {
        #[serde(with = "crate::exact::rat::serde_rat")]
        lambda: Rat,
    },
    ChebyshevT,
}

/// `transcendental · constant · factor(s) · Γ(s/2 + num_shift) / Γ(s/2 + den_shift)`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MellinClosedForm {
    pub n: usize,
    pub kind: MellinKind,
    pub eps: u8,
    pub factor: Poly,
    #[serde(with = "crate::exact::rat::serde_rat")]
    pub constant: Rat,
    pub transcendental: Transcendental,
    #[serde(with = "crate::exact::rat::serde_rat")]
    pub num_shift: Rat,
    #[serde(with = "crate::exact::rat::serde_rat")]
    pub den_shift: Rat,
}

impl MellinClosedForm {
    /// The value at s as a rational multiple of a Γ-ratio, transcendental factor omitted.
    pub fn gamma_term_at(&self, s: &Rat) -> GammaTerm {
        let half = s / int(2);
        GammaTerm {
            coeff: &self.constant * self.factor.eval(s),
            num: &half + &self.num_shift,
            den: &half + &self.den_shift,
        }
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        let c = to_f64(&self.constant) * self.factor.eval_f64(s);
        let r = gamma_ratio_f64(s / 2.0 + to_f64(&self.num_shift), s / 2.0 + to_f64(&self.den_shift));
        self.transcendental.value() * c * r
    }
}

/// `coeff · Γ(num) / Γ(den)`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTerm {
    pub coeff: Rat,
    pub num: Rat,
    pub den: Rat,
}

impl GammaTerm {
    pub fn new(coeff: Rat, num: Rat, den: Rat) -> Self {
        GammaTerm { coeff, num, den }
    }

    pub fn scale(mut self, c: &Rat) -> Self {
        self.coeff *= c;
        self
    }

    /// Coefficient c with self = c · Γ(num)/Γ(den); the arguments must differ by integers.
    pub fn rebase(&self, num: &Rat, den: &Rat) -> Result<Rat> {
        if self.coeff.is_zero() {
            return Ok(Rat::zero());
        }
        Ok(&self.coeff * gamma_ratio(&self.num, num)? * gamma_ratio(den, &self.den)?)
    }

    /// Σ terms expressed as a multiple of the first term's Γ-ratio.
    pub fn sum_rebased(terms: &[GammaTerm]) -> Result<Rat> {
        let Some(first) = terms.first() else { return Ok(Rat::zero()) };
        let (num, den) = (first.num.clone(), first.den.clone());
        terms.iter().try_fold(Rat::zero(), |acc, t| Ok(acc + t.rebase(&num, &den)?))
    }
}

/// Γ(a)/Γ(b) for a - b an integer, as an exact Pochhammer quotient.
pub fn gamma_ratio(a: &Rat, b: &Rat) -> Result<Rat> {
    for x in [a, b] {
        if nonpositive_integer(x).is_some() {
            return Err(Error::GammaPole(x.to_string()));
        }
    }
    let d = a - b;
    if !is_integer(&d) {
        return Err(Error::Inconsistent(format!("Γ({a})/Γ({b}) has a non-integer shift")));
    }
    let k: i64 = d.to_integer().try_into().map_err(|_| Error::Inconsistent("shift too large".into()))?;
    Ok(if k >= 0 { pochhammer(b, k as usize) } else { pochhammer(a, (-k) as usize).recip() })
}

/// M_n^λ(s) = Γ(λ/2+1/4) / (2·n!) · p̂_n^λ(s) · Γ((s+ε)/2) / Γ((s+n+λ)/2 + 1/4)
pub fn mellin_closed(n: usize, lambda: &Rat) -> Result<MellinClosedForm> {
    check_lambda(lambda)?;
    let eps = (n % 2) as u8;
    Ok(MellinClosedForm {
        n,
        kind: MellinKind::Gegenbauer { lambda: lambda.clone() },
        eps,
        factor: hat(n, lambda)?,
        constant: (factorial_rat(n as u64) * int(2)).recip(),
        transcendental: Transcendental::GammaAt(lambda / int(2) + rat(1, 4)),
        num_shift: rat(eps as i64, 2),
        den_shift: (int(n as i64) + lambda) / int(2) + rat(1, 4),
    })
}

/// The same closed form with a floating-point λ, summed term by term in log-gamma.
pub fn mellin_closed_f64(n: usize, lambda: f64, s: f64) -> f64 {
    let a = lambda / 2.0 + 0.25;
    let den = (s + n as f64 + lambda) / 2.0 + 0.25;
    let mut acc = 0.0;
    let mut poch2l = 1.0;
    for j in 0..n {
        poch2l *= 2.0 * lambda + j as f64;
    }
    for k in 0..=n / 2 {
        let mut c = poch2l;
        // (a)_k / (4^k k! (λ+1/2)_k (n-2k)!)
        for j in 0..k {
            c *= (a + j as f64) / (4.0 * (j + 1) as f64 * (lambda + 0.5 + j as f64));
        }
        for j in 1..=(n - 2 * k) {
            c /= j as f64;
        }
        if k % 2 == 1 {
            c = -c;
        }
        acc += c * gamma_ratio_f64((s + n as f64) / 2.0 - k as f64, den);
    }
    let (lga, _) = ln_gamma_signed(a).expect("a > 0");
    0.5 * lga.exp() * acc
}

/// Zeros of the first-kind factor: odd (n even) or even (n odd) integers up to n - 3, then n² - 1.
pub fn t_kind_zeros(n: usize) -> Vec<i64> {
    if n < 2 {
        return Vec::new();
    }
    let ni = n as i64;
    let start = if n % 2 == 0 { 1 } else { 2 };
    let mut z: Vec<i64> = (start..=ni - 3).step_by(2).collect();
    z.push(ni * ni - 1);
    z
}

/// Polynomial factor of the first-kind transform from the three-term recursion in n.
pub fn mellin_t_factor(n: usize) -> Poly {
    let s = Poly::identity(Var::S);
    let mut f2 = Poly::one(Var::S);
    let mut f1 = Poly::one(Var::S);
    if n < 2 {
        return f1;
    }
    for k in 2..=n {
        let shifted = f1.shift(&Rat::one());
        let lead = if k % 2 == 0 { &s * &shifted } else { shifted.scale(&int(2)) };
        let tail = &lin_s(rat(k as i64 + 1, 2), rat(1, 2)) * &f2;
        let next = &lead - &tail;
        f2 = f1;
        f1 = next;
    }
    f1
}

/// 2^{-⌊n/2⌋} Π (s - z) over the claimed zero set; `None` for n < 2 where the product form is empty.
pub fn mellin_t_factor_product(n: usize) -> Option<Poly> {
    if n < 2 {
        return None;
    }
    let p = t_kind_zeros(n)
        .into_iter()
        .fold(Poly::one(Var::S), |acc, z| &acc * &lin_s(int(-z), int(1)));
    Some(p.scale(&pow_rat(&int(2), -((n / 2) as i64))))
}

/// M_n^T(s) = √π/4 · f_n(s) · Γ((s+ε)/2) / Γ((s+n+3)/2)
pub fn mellin_t_closed(n: usize) -> MellinClosedForm {
    let eps = (n % 2) as u8;
    MellinClosedForm {
        n,
        kind: MellinKind::ChebyshevT,
        eps,
        factor: mellin_t_factor(n),
        constant: rat(1, 4),
        transcendental: Transcendental::SqrtPi,
        num_shift: rat(eps as i64, 2),
        den_shift: rat(n as i64 + 3, 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_kind_examples() {
        let f3 = mellin_t_factor(3);
        assert_eq!(f3, lin_s(int(-4), rat(1, 2)));
        assert_eq!(mellin_t_factor(2), lin_s(rat(-3, 2), rat(1, 2)));
        assert_eq!(t_kind_zeros(3), vec![8]);
        assert_eq!(t_kind_zeros(6), vec![1, 3, 35]);
        let m3 = mellin_t_closed(3);
        assert_eq!(m3.num_shift, rat(1, 2));
        assert_eq!(m3.den_shift, int(3));
        for n in 2..=14 {
            assert_eq!(Some(mellin_t_factor(n)), mellin_t_factor_product(n), "n={n}");
        }
    }

    #[test]
    fn gegenbauer_seed() {
        let lam = rat(3, 2);
        let m0 = mellin_closed(0, &lam).unwrap();
        assert_eq!(m0.factor, Poly::one(Var::S));
        assert_eq!(m0.constant, rat(1, 2));
        assert_eq!(m0.transcendental, Transcendental::GammaAt(rat(1, 1)));
        assert_eq!(m0.den_shift, rat(1, 1));
    }

    #[test]
    fn anchors() {
        let m1 = mellin_closed(1, &int(1)).unwrap();
        assert!((m1.eval_f64(1.0) - 4.0 / 3.0).abs() < 1e-14);
        let m0 = mellin_closed(0, &int(1)).unwrap();
        assert!((m0.eval_f64(2.0) - 2.0 / 3.0).abs() < 1e-14);
        // Γ(3/4) cancels at these points: rebasing onto Γ(1)/Γ(3/4) leaves the rational value
        let c = m1.gamma_term_at(&int(1)).rebase(&int(1), &rat(3, 4)).unwrap();
        assert_eq!(c, rat(4, 3));
    }

    #[test]
    fn float_lambda_matches_exact_closed_form() {
        for n in 0..=10 {
            for (lam, lf) in [(rat(1, 2), 0.5), (int(1), 1.0), (rat(5, 2), 2.5)] {
                let m = mellin_closed(n, &lam).unwrap();
                for s in [0.7, 2.0, 3.7] {
                    let a = m.eval_f64(s);
                    let b = mellin_closed_f64(n, lf, s);
                    assert!((a - b).abs() <= 1e-12 * a.abs().max(1e-3), "n={n} s={s}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn gamma_ratio_rules() {
        assert_eq!(gamma_ratio(&rat(7, 2), &rat(3, 2)).unwrap(), rat(15, 4));
        assert_eq!(gamma_ratio(&rat(3, 2), &rat(7, 2)).unwrap(), rat(4, 15));
        assert!(matches!(gamma_ratio(&int(-1), &int(2)), Err(Error::GammaPole(_))));
        assert!(matches!(gamma_ratio(&rat(1, 3), &int(2)), Err(Error::Inconsistent(_))));
    }
}
