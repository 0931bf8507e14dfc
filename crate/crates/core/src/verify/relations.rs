//! Relations between Mellin transforms at shifted (n, s), reduced to exact rationals.
//!
//! Every M_n^λ(s) at rational s is Γ(λ/2+1/4) · c · Γ(u)/Γ(v) with u, v fixed up to
//! integer shifts, so each relation becomes a rational identity after rebasing.

use num_traits::{One, Zero};

use crate::construct::{mellin_closed, GammaTerm, MellinClosedForm};
use crate::error::{Error, Result};
use crate::exact::rat::{binom_int, int, pow_rat, rat, Rat};
use crate::exact::special::gen_binom;
use crate::hyp3f2::eval_3f2;
use crate::report::ClaimResult;

pub const RELATION_CLAIMS: [&str; 9] = [
    "mixed recurrence n M_n = 2(l+n-1) M_{n-1}(s+1) - (2l+n-2) M_{n-2}(s)",
    "recurrence in s linking M_n(s-2), M_n(s), M_n(s+2)",
    "seeds M_0 and M_1 = 2 l M_0(s+1)",
    "Chebyshev mixed recursion M_n = 2 M_{n-1}(s+1) - M_{n-2}",
    "Chebyshev 3F2 forms for M_{2k}, M_{2k+1} with lower parameter -2k, -1-2k",
    "Chebyshev 3F2 forms with (3/4, (1-n)/2, -n/2; 3/2, 1-(n+s)/2)",
    "Chebyshev 3F2 forms with ((1-n)/2, -n/2, 1/4-(n+s)/2; -n, 1-(n+s)/2)",
    "S:4/2, S:3/1 and 3F2 forms times M_0",
    "general-n 3F2 form with the (2l)_n factor",
];

pub const INTEGER_S_CLAIM: &str = "integer-s S:4/3 sums for M_{2n}(2s) and M_{2n+1}(2s+1)";

/// Rational sample points that avoid all Γ poles and denominator poles used here.
pub const S_SAMPLES: [(i64, i64); 6] = [(1, 3), (5, 7), (3, 2), (5, 2), (7, 3), (13, 4)];

pub fn s_samples() -> Vec<Rat> {
    S_SAMPLES.iter().map(|&(p, q)| rat(p, q)).collect()
}

struct Closed {
    lambda: Rat,
    forms: Vec<MellinClosedForm>,
}

impl Closed {
    fn new(nmax: usize, lambda: &Rat) -> Result<Self> {
        let forms = (0..=nmax).map(|n| mellin_closed(n, lambda)).collect::<Result<Vec<_>>>()?;
        Ok(Closed { lambda: lambda.clone(), forms })
    }

    fn at(&self, n: usize, s: &Rat) -> GammaTerm {
        self.forms[n].gamma_term_at(s)
    }

    /// M_0^λ(s) = Γ(a) Γ(s/2) / (2 Γ((s+λ)/2 + 1/4)), transcendental dropped.
    fn m0(&self, s: &Rat) -> GammaTerm {
        GammaTerm::new(rat(1, 2), s / int(2), (s + &self.lambda) / int(2) + rat(1, 4))
    }
}

fn residual_zero(terms: &[GammaTerm]) -> Result<(bool, Rat)> {
    let r = GammaTerm::sum_rebased(terms)?;
    Ok((r.is_zero(), r))
}

fn neg(t: GammaTerm) -> GammaTerm {
    t.scale(&-Rat::one())
}

fn sign(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

fn binz(n: usize, k: usize) -> Rat {
    Rat::from_integer(binom_int(n as u64, k as u64))
}

/// Thm-3-type sums for even index 2m: (S:4/2, S:3/1, ₃F₂) as multiples of M_0(s).
fn even_forms(m: usize, lambda: &Rat, s: &Rat) -> Result<[Rat; 3]> {
    let c = (s + lambda) / int(2) - rat(3, 4);
    let mi = m as i64;
    let top = &c + int(mi);
    let top_m = gen_binom(&top, mi);
    let (mut f1, mut f2) = (Rat::zero(), Rat::zero());
    for r in 0..=m {
        let ri = r as i64;
        let common = sign(m - r)
            * pow_rat(&int(2), 2 * ri)
            * gen_binom(&(int(mi + ri - 1) + lambda), mi + ri)
            * binz(m + r, 2 * r)
            * gen_binom(&((s - int(2)) / int(2) + int(ri)), ri);
        f1 += &common * gen_binom(&top, mi - ri) / (binz(m, r) * &top_m);
        let d = gen_binom(&(&c + int(ri)), ri);
        if d.is_zero() {
            return Err(Error::PoleInDenominator(format!("C(c+r, r) at s={s}")));
        }
        f2 += common / d;
    }
    let f3 = sign(m)
        * gen_binom(&(lambda + int(mi - 1)), mi)
        * eval_3f2(&int(-mi), &(lambda + int(mi)), &(s / int(2)), &rat(1, 2), &(lambda / int(2) + s / int(2) + rat(1, 4)))?;
    Ok([f1, f2, f3])
}

/// The odd-index analogues as multiples of M_0(s+1).
fn odd_forms(m: usize, lambda: &Rat, s: &Rat) -> Result<[Rat; 3]> {
    let c = (s + lambda) / int(2) - rat(1, 4);
    let mi = m as i64;
    let top = &c + int(mi);
    let top_m = gen_binom(&top, mi);
    let (mut g1, mut g2) = (Rat::zero(), Rat::zero());
    for r in 0..=m {
        let ri = r as i64;
        let common = sign(m - r)
            * pow_rat(&int(2), 2 * ri + 1)
            * gen_binom(&(int(mi + ri) + lambda), mi + ri + 1)
            * binz(m + r + 1, 2 * r + 1)
            * gen_binom(&((s - int(1)) / int(2) + int(ri)), ri);
        g1 += &common * gen_binom(&top, mi - ri) / (binz(m, r) * &top_m);
        let d = gen_binom(&(&c + int(ri)), ri);
        if d.is_zero() {
            return Err(Error::PoleInDenominator(format!("C(c+r, r) at s={s}")));
        }
        g2 += common / d;
    }
    let g3 = sign(m)
        * int(2 * (mi + 1))
        * gen_binom(&(lambda + int(mi)), mi + 1)
        * eval_3f2(
            &int(-mi),
            &(lambda + int(mi + 1)),
            &(s / int(2) + rat(1, 2)),
            &rat(3, 2),
            &((lambda + s) / int(2) + rat(3, 4)),
        )?;
    Ok([g1, g2, g3])
}

/// One claim list for a single (n, λ) over the sampled s.
pub fn check_m_recurrences(n: usize, lambda: &Rat, samples: &[Rat]) -> Vec<ClaimResult> {
    let mut claims: Vec<ClaimResult> = RELATION_CLAIMS.iter().map(|c| ClaimResult::new(*c)).collect();
    let closed = match Closed::new(n, lambda) {
        Ok(c) => c,
        Err(e) => {
            claims[0].error(e.to_string());
            return claims;
        }
    };
    let l = lambda;
    let ni = n as i64;
    let chebyshev = l.is_one();
    for s in samples {
        let tag = |what: &str| format!("n={n} lambda={l} s={s}: {what}");
        let mut record = |idx: usize, out: Result<(bool, Rat)>| match out {
            Ok((ok, r)) => claims[idx].exact(ok, || tag(&format!("residual {r}"))),
            Err(e) => claims[idx].error(tag(&e.to_string())),
        };
        let s1 = s + int(1);
        if n >= 2 {
            record(
                0,
                residual_zero(&[
                    closed.at(n, s).scale(&int(ni)),
                    neg(closed.at(n - 1, &s1).scale(&((l + int(ni - 1)) * int(2)))),
                    closed.at(n - 2, s).scale(&(l * int(2) + int(ni - 2))),
                ]),
            );
        }
        {
            let a = int(6) - int(4) * (l + l * int(2 * ni) + int(ni * ni)) - int(16) * s + int(8) * s * &s1;
            let sp2 = s + int(2);
            let b = int(-9) + int(4) * (l + int(ni)) * (l + int(ni)) + int(16) * &sp2 - int(4) * &sp2 * (s + int(3));
            let c = int(-4) * (s - int(1)) * (s - int(2));
            record(
                1,
                residual_zero(&[closed.at(n, s).scale(&a), closed.at(n, &sp2).scale(&b), closed.at(n, &(s - int(2))).scale(&c)]),
            );
        }
        if n == 0 {
            record(2, residual_zero(&[closed.at(0, s), neg(closed.m0(s))]));
        } else if n == 1 {
            record(2, residual_zero(&[closed.at(1, s), neg(closed.m0(&s1).scale(&(l * int(2))))]));
        }
        if chebyshev {
            if n >= 2 {
                record(
                    3,
                    residual_zero(&[closed.at(n, s), neg(closed.at(n - 1, &s1).scale(&int(2))), closed.at(n - 2, s)]),
                );
            }
            record(4, chebyshev_lower_forms(n, s).map(|t| residual_zero(&[closed.at(n, s), neg(t)])).and_then(|x| x));
            let half = (int(ni) + s) / int(2);
            let den = &half + rat(3, 4);
            let fa = eval_3f2(&rat(3, 4), &rat(1 - ni, 2), &rat(-ni, 2), &rat(3, 2), &(int(1) - &half));
            record(
                5,
                fa.and_then(|f| {
                    residual_zero(&[closed.at(n, s), neg(GammaTerm::new(int(ni + 1) / int(2) * f, half.clone(), den.clone()))])
                }),
            );
            let fb = eval_3f2(&rat(1 - ni, 2), &rat(-ni, 2), &(rat(1, 4) - &half), &int(-ni), &(int(1) - &half));
            record(
                6,
                fb.and_then(|f| {
                    residual_zero(&[closed.at(n, s), neg(GammaTerm::new(pow_rat(&int(2), ni - 1) * f, half.clone(), den.clone()))])
                }),
            );
        }
        let m = n / 2;
        let forms = if n % 2 == 0 { even_forms(m, l, s) } else { odd_forms(m, l, s) };
        let base = if n % 2 == 0 { closed.m0(s) } else { closed.m0(&s1) };
        record(
            7,
            forms.and_then(|fs| {
                let mut ok = true;
                let mut worst = Rat::zero();
                for f in fs {
                    let (z, r) = residual_zero(&[closed.at(n, s), neg(base.clone().scale(&f))])?;
                    ok &= z;
                    if !z {
                        worst = r;
                    }
                }
                Ok((ok, worst))
            }),
        );
        let a = l / int(2) + rat(1, 4);
        let half = (s + int(ni)) / int(2);
        let general = eval_3f2(&a, &rat(1 - ni, 2), &rat(-ni, 2), &(l + rat(1, 2)), &(int(1) - &half)).map(|f| {
            let coeff = crate::exact::special::pochhammer(&(l * int(2)), n)
                / (crate::exact::rat::factorial_rat(n as u64) * int(2))
                * f;
            GammaTerm::new(coeff, half.clone(), &half + l / int(2) + rat(1, 4))
        });
        record(8, general.and_then(|g| residual_zero(&[closed.at(n, s), neg(g)])));
    }
    claims
}

/// Lower-parameter -2k and -1-2k forms at λ = 1.
fn chebyshev_lower_forms(n: usize, s: &Rat) -> Result<GammaTerm> {
    let k = (n / 2) as i64;
    let four_k = pow_rat(&int(4), k);
    if n % 2 == 0 {
        let f = eval_3f2(
            &(rat(1, 2) - int(k)),
            &(-int(k) - s / int(2) + rat(1, 4)),
            &int(-k),
            &(int(1) - s / int(2) - int(k)),
            &int(-2 * k),
        )?;
        Ok(GammaTerm::new(four_k * f / int(2), int(k) + s / int(2), int(k) + (s * int(2) + int(3)) / int(4)))
    } else {
        let f = eval_3f2(
            &(rat(-1, 2) - int(k)),
            &(-int(k) - s / int(2) - rat(1, 4)),
            &int(-k),
            &((int(1) - s) / int(2) - int(k)),
            &int(-1 - 2 * k),
        )?;
        Ok(GammaTerm::new(four_k * f, int(k) + (s + int(1)) / int(2), int(k) + (s * int(2) + int(5)) / int(4)))
    }
}

/// The integer-s sums against the closed form. Both sides are rational once Γ(λ/2+1/4) is divided out.
pub fn check_integer_s_forms(n: usize, lambda: &Rat, s_max: u64) -> ClaimResult {
    let mut claim = ClaimResult::new(INTEGER_S_CLAIM);
    let closed = match mellin_closed(n, lambda) {
        Ok(c) => c,
        Err(e) => {
            claim.error(e.to_string());
            return claim;
        }
    };
    let l = lambda;
    let a = l / int(2) + rat(1, 4);
    let m = n / 2;
    let mi = m as i64;
    for s1 in 1..=s_max as i64 {
        let (s, value) = if n % 2 == 0 {
            let c = int(s1) + l / int(2) - rat(3, 4);
            let top = &c + int(mi);
            let mut acc = Rat::zero();
            for r in 0..=m {
                let ri = r as i64;
                acc += sign(m - r)
                    * pow_rat(&int(2), 2 * ri)
                    * gen_binom(&(int(mi + ri - 1) + l), mi + ri)
                    * binz(m + r, 2 * r)
                    * gen_binom(&int(s1 - 1 + ri), ri)
                    * gen_binom(&top, mi - ri)
                    / (binz(m, m - r) * gen_binom(&c, s1) * gen_binom(&top, mi));
            }
            (int(2 * s1), acc / int(2 * s1))
        } else {
            let c = int(s1) + l / int(2) + rat(1, 4);
            let top = &c + int(mi);
            let mut acc = Rat::zero();
            for r in 0..=m {
                let ri = r as i64;
                acc += sign(m - r)
                    * pow_rat(&int(2), 2 * ri + 1)
                    * gen_binom(&(int(mi + ri) + l), mi + ri + 1)
                    * binz(m + r + 1, 2 * r + 1)
                    * gen_binom(&int(s1 + ri), ri)
                    * gen_binom(&top, mi - ri)
                    / (binz(m, r) * gen_binom(&c, s1 + 1) * gen_binom(&top, mi));
            }
            (int(2 * s1 + 1), acc / int(2 * (s1 + 1)))
        };
        match closed.gamma_term_at(&s).rebase(&int(1), &a) {
            Ok(v) => claim.exact(v == value, || format!("n={n} lambda={l} s={s}: closed {v} vs sum {value}")),
            Err(e) => claim.error(format!("n={n} lambda={l} s={s}: {e}")),
        }
    }
    claim
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(claims: &[ClaimResult]) {
        for c in claims {
            assert_eq!(c.failed, 0, "{}: {:?}", c.claim, c.first_failure);
        }
    }

    #[test]
    fn examples() {
        all_pass(&check_m_recurrences(2, &int(1), &[int(3)]));
        all_pass(&check_m_recurrences(3, &rat(1, 2), &[rat(5, 2)]));
        all_pass(&check_m_recurrences(1, &int(1), &s_samples()));
    }

    #[test]
    fn all_relations_small() {
        for lam in [int(1), rat(1, 2), rat(-1, 4), rat(7, 3)] {
            for n in 0..=7 {
                all_pass(&check_m_recurrences(n, &lam, &s_samples()));
                let c = check_integer_s_forms(n, &lam, 12);
                assert!(c.passed(), "{:?}", c.first_failure);
            }
        }
    }
}
