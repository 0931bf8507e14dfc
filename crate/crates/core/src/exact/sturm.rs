//! Sturm chains over the rationals: distinct real root counting and isolation.

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rat::{sign_of, to_f64, Rat};

/// `p / gcd(p, p')`, made monic. Constant for constant input.
pub fn squarefree_part(p: &Poly) -> Poly {
    if p.is_constant() {
        return p.monic();
    }
    let g = Poly::gcd(p, &p.derivative());
    p.div_exact(&g).expect("gcd divides").monic()
}

#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    /// Chain of the squarefree part of `p`, so counts are of distinct roots.
    pub fn new(p: &Poly) -> Self {
        let p0 = squarefree_part(p);
        let mut chain = vec![p0.clone()];
        if p0.is_constant() {
            return SturmChain { chain };
        }
        let mut prev = p0.clone();
        let mut cur = p0.derivative();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let r = prev.div_rem(&cur).expect("nonzero").1;
            prev = cur;
            // positive rescaling keeps signs and stops coefficient growth
            cur = match r.leading() {
                None => r,
                Some(l) => r.scale(&(-l.abs().recip())),
            };
        }
        SturmChain { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rat) -> usize {
        Self::variations(self.chain.iter().map(|p| sign_of(&p.eval(x))))
    }

    fn variations_at_inf(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let l = p.leading().map(sign_of).unwrap_or(0);
            let d = p.degree().unwrap_or(0);
            if positive || d % 2 == 0 {
                l
            } else {
                -l
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_inf(false) - self.variations_at_inf(true)
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Number of distinct real roots of `v`. The zero polynomial is reported as 0.
pub fn sturm_real_root_count(v: &Poly) -> usize {
    if v.is_zero() {
        return 0;
    }
    SturmChain::new(v).count_all()
}

/// Cauchy bound: every real root lies in (-B, B).
pub fn root_bound(p: &Poly) -> Rat {
    let Some(l) = p.leading() else { return Rat::one() };
    let lead = l.abs();
    let m = p.coeffs().iter().map(|c| c.abs() / &lead).fold(Rat::zero(), |a, c| if c > a { c } else { a });
    m + Rat::one()
}

/// Disjoint intervals (a, b], each holding exactly one distinct real root, in increasing order.
pub fn isolate_real_roots(p: &Poly) -> Vec<(Rat, Rat)> {
    if p.is_constant() {
        return Vec::new();
    }
    let chain = SturmChain::new(p);
    let b = root_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rat::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Approximate each distinct real root by rational bisection to width `2^-bits`.
pub fn real_roots_f64(p: &Poly, bits: u32) -> Vec<f64> {
    let sq = squarefree_part(p);
    let two = Rat::from_integer(2.into());
    let width = Rat::new(1.into(), num_bigint::BigInt::from(2).pow(bits));
    isolate_real_roots(&sq)
        .into_iter()
        .map(|(mut lo, mut hi)| {
            if sq.eval(&hi).is_zero() {
                return to_f64(&hi);
            }
            let s_hi = sign_of(&sq.eval(&hi));
            while &hi - &lo > width {
                let mid = (&lo + &hi) / &two;
                let sm = sign_of(&sq.eval(&mid));
                if sm == 0 {
                    return to_f64(&mid);
                }
                if sm == s_hi {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            to_f64(&((lo + hi) / &two))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::Var;
    use crate::exact::rat::int;
    use proptest::prelude::*;

    fn t(c: &[i64]) -> Poly {
        Poly::new(Var::T, c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn examples() {
        assert_eq!(sturm_real_root_count(&t(&[1, 0, 1])), 0);
        assert_eq!(sturm_real_root_count(&t(&[12, 0, -15])), 2);
        assert_eq!(sturm_real_root_count(&t(&[0, -1, 0, 1])), 3);
        assert_eq!(sturm_real_root_count(&t(&[5])), 0);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (t-1)^2 (t+2)
        let p = &(&t(&[-1, 1]) * &t(&[-1, 1])) * &t(&[2, 1]);
        assert_eq!(sturm_real_root_count(&p), 2);
        assert_eq!(squarefree_part(&p).degree(), Some(2));
    }

    #[test]
    fn float_roots() {
        let r = real_roots_f64(&t(&[12, 0, -15]), 60);
        let x = (4.0f64 / 5.0).sqrt();
        assert_eq!(r.len(), 2);
        assert!((r[0] + x).abs() < 1e-15 && (r[1] - x).abs() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn agrees_with_known_integer_roots(
            roots in prop::collection::vec(-6i64..=6, 1..=4),
            quad in prop::collection::vec((0i64..=4, 1i64..=5), 0..=1),
            lead in prop::sample::select(vec![-3i64, -1, 1, 2]),
        ) {
            let mut p = t(&[lead]);
            for r in &roots {
                p = &p * &t(&[-r, 1]);
            }
            // irreducible quadratic factors (t-a)^2 + b contribute no real roots
            for (a, b) in &quad {
                p = &p * &t(&[a * a + b, -2 * a, 1]);
            }
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            prop_assert!(p.degree().unwrap() <= 6);
            prop_assert_eq!(sturm_real_root_count(&p), distinct.len());
            let iso = isolate_real_roots(&p);
            prop_assert_eq!(iso.len(), distinct.len());
            for ((lo, hi), r) in iso.iter().zip(distinct.iter()) {
                prop_assert!(lo < &int(*r) && &int(*r) <= hi);
            }
        }
    }
}
