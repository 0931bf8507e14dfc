//! Terminating hypergeometric series at unit argument.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rat::{int, nonpositive_integer, rat, Rat};
use crate::exact::special::pochhammer;
use crate::exact::{Poly, Var};
use crate::report::{ClaimResult, SuiteReport};

/// Least k with some numerator parameter equal to -k.
pub fn termination_index(numerators: &[Rat]) -> Option<u64> {
    numerators.iter().filter_map(nonpositive_integer).min()
}

/// Exact sum of a terminating pFq(1).
pub fn eval_terminating(numerators: &[Rat], denominators: &[Rat]) -> Result<Rat> {
    let n = termination_index(numerators).ok_or(Error::NonTerminating)?;
    for b in denominators {
        if let Some(m) = nonpositive_integer(b) {
            if m < n {
                return Err(Error::DenominatorPole(b.to_string()));
            }
        }
    }
    let mut term = Rat::one();
    let mut sum = Rat::one();
    for k in 0..n {
        // stop at the termination index; the next factor may hit a zero denominator
        let kr = int(k as i64);
        let mut num = Rat::one();
        for a in numerators {
            num *= a + &kr;
        }
        let mut den = int(k as i64 + 1);
        for b in denominators {
            den *= b + &kr;
        }
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

pub fn eval_3f2(a1: &Rat, a2: &Rat, a3: &Rat, b1: &Rat, b2: &Rat) -> Result<Rat> {
    eval_terminating(&[a1.clone(), a2.clone(), a3.clone()], &[b1.clone(), b2.clone()])
}

/// `sum_{k=0}^{⌊n/2⌋} c_k · ((s+ε)/2)_{⌊n/2⌋-k}`: the polynomial left once the
/// Γ((s+n)/2)/Γ((s+ε)/2) prefactor of a ₃F₂ with denominator 1-(n+s)/2 is absorbed.
pub fn poly_from_3f2(n: usize, coeff_rule: impl Fn(usize) -> Rat) -> Poly {
    let eps = (n % 2) as i64;
    let big_n = n / 2;
    let base = Poly::linear(Var::S, rat(eps, 2), rat(1, 2));
    let mut acc = Poly::zero(Var::S);
    for k in 0..=big_n {
        let c = coeff_rule(k);
        if c.is_zero() {
            continue;
        }
        acc = &acc + &pochhammer(&base, big_n - k).scale(&c);
    }
    acc
}

#[derive(Clone, Debug)]
pub struct Params {
    pub n: u64,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

type Side = (Rat, Vec<Rat>, Vec<Rat>);

fn poch(a: &Rat, n: u64) -> Rat {
    pochhammer(a, n as usize)
}

fn sign_n(n: u64) -> Rat {
    if n % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// Right-hand sides of the seven transformations of ₃F₂(-n, a, b; c, d; 1):
/// (prefactor numerator/denominator folded into one rational, upper, lower).
fn transform_side(id: usize, p: &Params) -> Result<Side> {
    let Params { n, a, b, c, d } = p;
    let n = *n;
    let nr = int(n as i64);
    let one = Rat::one();
    let m = -&nr;
    let cd = poch(c, n) * poch(d, n);
    let ratio = |num: Rat, den: Rat| -> Result<Rat> {
        if den.is_zero() {
            Err(Error::DenominatorPole("prefactor".into()))
        } else {
            Ok(num / den)
        }
    };
    let e = a + b - c - d - &nr + &one;
    Ok(match id {
        1 => (
            ratio(poch(&(c - a), n) * poch(&(d - a), n), cd)?,
            vec![m, a.clone(), e],
            vec![a - c - &nr + &one, a - d - &nr + &one],
        ),
        2 => (
            ratio(poch(a, n) * poch(&(c + d - a - b), n), cd)?,
            vec![m, c - a, d - a],
            vec![&one - a - &nr, c + d - a - b],
        ),
        3 => (
            ratio(poch(&(c + d - a - b), n), poch(c, n))?,
            vec![m, d - a, d - b],
            vec![d.clone(), c + d - a - b],
        ),
        4 => (
            ratio(sign_n(n) * poch(a, n) * poch(b, n), cd)?,
            vec![m, &one - c - &nr, &one - d - &nr],
            vec![&one - a - &nr, &one - b - &nr],
        ),
        5 => (
            ratio(sign_n(n) * poch(&(d - a), n) * poch(&(d - b), n), cd)?,
            vec![m, &one - d - &nr, e],
            vec![a - d - &nr + &one, b - d - &nr + &one],
        ),
        6 => (
            ratio(poch(&(c - a), n), poch(c, n))?,
            vec![m, a.clone(), d - b],
            vec![d.clone(), a - c - &nr + &one],
        ),
        7 => (
            ratio(poch(&(c - a), n) * poch(b, n), cd)?,
            vec![m, d - b, &one - c - &nr],
            vec![&one - b - &nr, a - c - &nr + &one],
        ),
        _ => return Err(Error::InvalidParameters(format!("no transformation {id}"))),
    })
}

/// A lower parameter in {0, -1, ..., -(n-1)} makes the value depend on how the
/// limit is taken, so such samples are rejected rather than evaluated.
fn lowers_admissible(lower: &[Rat], n: u64) -> bool {
    lower.iter().all(|b| nonpositive_integer(b).map_or(true, |m| m >= n))
}

pub fn transform_lhs(p: &Params) -> Result<Rat> {
    eval_3f2(&-int(p.n as i64), &p.a, &p.b, &p.c, &p.d)
}

/// `Ok(None)` when the sample is inadmissible for transformation `id`.
pub fn check_transform(id: usize, p: &Params) -> Result<Option<(Rat, Rat)>> {
    if !lowers_admissible(&[p.c.clone(), p.d.clone()], p.n) {
        return Ok(None);
    }
    let Ok((pre, up, low)) = transform_side(id, p) else { return Ok(None) };
    if !lowers_admissible(&low, p.n) {
        return Ok(None);
    }
    let lhs = transform_lhs(p)?;
    let rhs = pre * eval_terminating(&up, &low)?;
    Ok(Some((lhs, rhs)))
}

/// Thomae's relation specialised so both sides terminate:
/// ₃F₂(a, -n, c; a-m, e; 1) = Γ-ratio · ₃F₂(-m, e-a, W; W-n, e+n-m; 1), W = e+n-m-c.
pub fn check_thomae(n: u64, m: u64, a: &Rat, c: &Rat, e: &Rat) -> Result<Option<(Rat, Rat)>> {
    let nr = int(n as i64);
    let mr = int(m as i64);
    let w = e + &nr - &mr - c;
    let args = [a - &mr, e.clone(), w.clone(), a.clone(), &w - &nr, e + &nr - &mr];
    if args.iter().any(|g| nonpositive_integer(g).is_some()) {
        return Ok(None);
    }
    let lhs = eval_3f2(a, &-nr.clone(), c, &(a - &mr), e)?;
    // Γ(a-m)/Γ(a) = 1/(a-m)_m ; Γ(W)/Γ(W-n) = (W-n)_n ; Γ(e)/Γ(e+n-m)
    let g1 = poch(&(a - &mr), m).recip();
    let g2 = poch(&(&w - &nr), n);
    let g3 = if n >= m { poch(e, n - m).recip() } else { poch(&(e + &nr - &mr), m - n) };
    let rhs = g1 * g2 * g3 * eval_3f2(&-mr.clone(), &(e - a), &w, &(&w - &nr), &(e + &nr - &mr))?;
    Ok(Some((lhs, rhs)))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IdentityStats {
    pub identity: String,
    pub passes: usize,
    pub failures: usize,
    pub rejected: usize,
    pub failure_exemplars: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TransformSuiteReport {
    pub trials: usize,
    pub nmax: u64,
    pub seed: u64,
    pub identities: Vec<IdentityStats>,
}

impl TransformSuiteReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|i| i.failures == 0 && i.passes >= self.trials)
    }

    pub fn to_suite(&self) -> SuiteReport {
        let claims = self
            .identities
            .iter()
            .map(|i| {
                let mut c = ClaimResult::new(i.identity.clone())
                    .with_note(format!("{} inadmissible samples redrawn", i.rejected));
                c.checked = i.passes + i.failures;
                c.failed = i.failures;
                c.max_residual = if i.failures > 0 { 1.0 } else { 0.0 };
                c.first_failure = i.failure_exemplars.first().cloned();
                if i.passes < self.trials && c.failed == 0 {
                    c.failed = 1;
                    c.first_failure = Some(format!("only {} admissible trials of {}", i.passes, self.trials));
                }
                c
            })
            .collect();
        SuiteReport::new("hyp3f2", claims)
    }
}

fn sample_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-8..=8), rng.gen_range(1..=4))
}

/// Each identity gets `trials` admissible samples; inadmissible draws are redrawn and counted.
pub fn appendix_transform_suite(trials: usize, nmax: u64, seed: u64) -> TransformSuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identities = Vec::new();
    let max_draws = trials * 200;
    for id in 1..=8usize {
        let name = if id <= 7 { format!("transformation {id}") } else { "terminating Thomae".to_string() };
        let mut st = IdentityStats { identity: name, passes: 0, failures: 0, rejected: 0, failure_exemplars: Vec::new() };
        let mut draws = 0;
        while st.passes + st.failures < trials && draws < max_draws {
            draws += 1;
            let n = rng.gen_range(0..=nmax);
            let p = Params { n, a: sample_rat(&mut rng), b: sample_rat(&mut rng), c: sample_rat(&mut rng), d: sample_rat(&mut rng) };
            let outcome = if id <= 7 {
                check_transform(id, &p)
            } else {
                let m = rng.gen_range(0..=nmax);
                check_thomae(n, m, &p.a, &p.c, &p.d)
            };
            match outcome {
                Ok(None) => st.rejected += 1,
                Ok(Some((l, r))) if l == r => st.passes += 1,
                Ok(Some((l, r))) => {
                    st.failures += 1;
                    if st.failure_exemplars.len() < 5 {
                        st.failure_exemplars.push(format!("{p:?}: lhs={l} rhs={r}"));
                    }
                }
                Err(e) => {
                    st.failures += 1;
                    if st.failure_exemplars.len() < 5 {
                        st.failure_exemplars.push(format!("{p:?}: {e}"));
                    }
                }
            }
        }
        identities.push(st);
    }
    TransformSuiteReport { trials, nmax, seed, identities }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        let (a, b, c, d) = (rat(3, 7), rat(-5, 2), rat(9, 4), rat(1, 3));
        assert_eq!(eval_3f2(&int(0), &a, &b, &c, &d).unwrap(), int(1));
        assert_eq!(eval_3f2(&int(-1), &int(2), &int(3), &int(5), &int(7)).unwrap(), rat(29, 35));
        // 1 - 2·1·1/(2·2) + [(-2)(-1)·1·2·1·2]/[2·3·2·3·2] = 1 - 1/2 + 1/9
        assert_eq!(eval_3f2(&int(-2), &int(1), &int(1), &int(2), &int(2)).unwrap(), rat(11, 18));
    }

    #[test]
    fn eval_errors() {
        assert_eq!(eval_3f2(&rat(1, 2), &int(1), &int(1), &int(2), &int(2)), Err(Error::NonTerminating));
        assert!(matches!(eval_3f2(&int(-3), &int(1), &int(1), &int(-1), &int(2)), Err(Error::DenominatorPole(_))));
        // denominator -2 with termination at 2 is fine: (−2)_k only vanishes from k = 3 on
        assert!(eval_3f2(&int(-2), &int(1), &int(1), &int(-2), &int(2)).is_ok());
    }

    #[test]
    fn eval_stops_at_termination() {
        // with a lower parameter at 0 and n = 0 the series is exactly 1
        assert_eq!(eval_3f2(&int(0), &int(1), &int(1), &int(0), &int(2)).unwrap(), int(1));
    }

    #[test]
    fn poly_from_3f2_examples() {
        assert_eq!(poly_from_3f2(0, |_| rat(7, 3)), Poly::constant(Var::S, rat(7, 3)));
        // Chebyshev coefficients: c_0 = (2)_2 = 6, c_1 = -3/2
        let p = poly_from_3f2(2, |k| if k == 0 { int(6) } else { rat(-3, 2) });
        assert_eq!(p, Poly::linear(Var::S, rat(-3, 2), int(3)));
    }

    #[test]
    fn transform_four_at_zero_and_three_degenerate() {
        let p = Params { n: 0, a: rat(1, 3), b: rat(2, 5), c: rat(7, 2), d: rat(-1, 4) };
        assert_eq!(check_transform(4, &p).unwrap().unwrap(), (int(1), int(1)));
        let q = Params { n: 4, a: rat(3, 2), b: rat(3, 2), c: rat(5, 3), d: rat(-7, 4) };
        let (l, r) = check_transform(3, &q).unwrap().unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn suite_small() {
        let r = appendix_transform_suite(50, 6, 1);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.identities.len(), 8);
    }

    fn naive(a: &[Rat], b: &[Rat]) -> Rat {
        // no early exit: sums until a numerator Pochhammer has vanished for good
        let n = termination_index(a).unwrap();
        let mut s = Rat::zero();
        for k in 0..=n as usize {
            let num: Rat = a.iter().map(|x| pochhammer(x, k)).product();
            let den: Rat = b.iter().map(|x| pochhammer(x, k)).product::<Rat>() * crate::exact::rat::factorial_rat(k as u64);
            s += num / den;
        }
        s
    }

    proptest! {
        #[test]
        fn matches_naive_summation(n in 0i64..=7, a in (-8i64..=8, 1i64..=4), b in (-8i64..=8, 1i64..=4),
                                   c in (-8i64..=8, 1i64..=4), d in (-8i64..=8, 1i64..=4)) {
            let up = [int(-n), rat(a.0, a.1), rat(b.0, b.1)];
            let low = [rat(c.0, c.1), rat(d.0, d.1)];
            match eval_terminating(&up, &low) {
                Ok(v) => prop_assert_eq!(v, naive(&up, &low)),
                Err(Error::DenominatorPole(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
