//! Integer properties: Catalan normalizations, 2-adic valuations and the a/b number triangles.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::canonical;
use crate::exact::rat::{binom_int, factorial, int, rat, valuation2, Rat};
use crate::exact::{Poly, Var};
use crate::orthopoly::gegenbauer;
use crate::report::{ClaimResult, SuiteReport};

pub fn catalan(n: u64) -> BigInt {
    binom_int(2 * n, n) / BigInt::from(n + 1)
}

/// Prime factorization by trial division up to `limit`; the last entry may be an
/// unfactored cofactor, flagged by the returned boolean being false.
pub fn factorize(n: &BigInt, limit: u64) -> (Vec<(BigInt, u32)>, bool) {
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    if m.is_zero() || m.is_one() {
        return (out, true);
    }
    let mut p = 2u64;
    while p <= limit {
        if let Some(small) = m.to_u64() {
            return factor_u64(small, p, limit, out);
        }
        let mut e = 0;
        while (&m % p).is_zero() {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let complete = BigUint::from(limit).pow(2) >= m;
    out.push((BigInt::from(m), 1));
    (out, complete)
}

fn factor_u64(mut m: u64, mut p: u64, limit: u64, mut out: Vec<(BigInt, u32)>) -> (Vec<(BigInt, u32)>, bool) {
    while p <= limit && (p as u128) * (p as u128) <= m as u128 {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigInt::from(p), e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m == 1 {
        return (out, true);
    }
    let complete = (limit as u128) * (limit as u128) >= m as u128;
    out.push((BigInt::from(m), 1));
    (out, complete)
}

pub fn format_factorization(f: &[(BigInt, u32)], complete: bool) -> String {
    if f.is_empty() {
        return "1".into();
    }
    let mut s = f
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join("*");
    if !complete {
        s.push_str(" (last factor not fully factored)");
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerCheck {
    #[serde(with = "crate::exact::rat::serde_rat")]
    pub value: Rat,
    pub is_integer: bool,
    pub is_odd: bool,
    pub valuation_2: Option<u64>,
    pub factorization: String,
}

impl IntegerCheck {
    pub fn of(value: Rat) -> Self {
        let is_integer = value.is_integer();
        let (valuation_2, factorization) = if is_integer {
            let v = value.to_integer();
            let (f, complete) = factorize(&v, 1_000_000);
            (valuation2(&v), format_factorization(&f, complete))
        } else {
            (None, String::new())
        };
        IntegerCheck { is_odd: is_integer && valuation_2 == Some(0), value, is_integer, valuation_2, factorization }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddFactorReport {
    pub n: u64,
    pub s: u64,
    /// 4 C_{n-1} p_{2n}(s); absent at n = 0.
    pub even: Option<IntegerCheck>,
    /// C_n p_{2n+1}(s)
    pub odd: IntegerCheck,
}

impl OddFactorReport {
    pub fn passed(&self) -> bool {
        self.odd.is_odd && self.even.as_ref().map_or(true, |e| e.is_odd)
    }
}

fn p_at(n: usize, s: u64) -> Rat {
    canonical(n, &Rat::one()).expect("lambda = 1 is valid").eval(&int(s as i64))
}

pub fn odd_factor_check(n: u64, s: u64) -> OddFactorReport {
    let even = (n >= 1).then(|| {
        IntegerCheck::of(Rat::from_integer(catalan(n - 1) * 4) * p_at(2 * n as usize, s))
    });
    let odd = IntegerCheck::of(Rat::from_integer(catalan(n)) * p_at(2 * n as usize + 1, s));
    OddFactorReport { n, s, even, odd }
}

/// Largest odd divisor.
pub fn odd_part(n: u64) -> u64 {
    if n == 0 {
        0
    } else {
        n >> n.trailing_zeros()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedOddReport {
    pub n: u64,
    pub s: u64,
    /// 2^{2n+1} / (2n)! · p_{2n}(s)
    pub even: IntegerCheck,
    /// 2^{2n+1} T_{n+1} / (2n+2)! · p_{2n+1}(s), T_{n+1} the odd part of n+1
    pub odd: IntegerCheck,
    pub catalan_normalized: OddFactorReport,
}

impl ReducedOddReport {
    pub fn passed(&self) -> bool {
        self.even.is_odd && self.odd.is_odd
    }
}

pub fn reduced_odd_forms(n: u64, s: u64) -> ReducedOddReport {
    let pow = Rat::from_integer(BigInt::one() << (2 * n + 1));
    let even = IntegerCheck::of(&pow / Rat::from_integer(factorial(2 * n)) * p_at(2 * n as usize, s));
    let odd = IntegerCheck::of(
        pow * int(odd_part(n + 1) as i64) / Rat::from_integer(factorial(2 * n + 2)) * p_at(2 * n as usize + 1, s),
    );
    ReducedOddReport { n, s, even, odd, catalan_normalized: odd_factor_check(n, s) }
}

/// ν₂(C_n) = s₂(n+1) - 1, with s₂ the binary digit sum.
pub fn catalan_valuation_holds(n: u64) -> bool {
    valuation2(&catalan(n)) == Some((n + 1).count_ones() as u64 - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleRow {
    pub kind: TriangleKind,
    pub k: u64,
    #[serde(serialize_with = "ser_bigints", deserialize_with = "de_bigints")]
    pub entries: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn de_bigints<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
    let v: Vec<String> = Deserialize::deserialize(d)?;
    v.iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect()
}

/// a(k,j) = (2k-1)(2k+1)/(2j+3) C(k+j, 2j+1), 0 <= j < k
pub fn a_entry(k: u64, j: u64) -> BigInt {
    let num = BigInt::from((2 * k - 1) * (2 * k + 1)) * binom_int(k + j, 2 * j + 1);
    let (q, r) = num.div_rem(&BigInt::from(2 * j + 3));
    debug_assert!(r.is_zero());
    q
}

/// b(k,j) = (2k+1)/(2j+1) C(k+j, 2j), 0 <= j <= k
pub fn b_entry(k: u64, j: u64) -> BigInt {
    let num = BigInt::from(2 * k + 1) * binom_int(k + j, 2 * j);
    let (q, r) = num.div_rem(&BigInt::from(2 * j + 1));
    debug_assert!(r.is_zero());
    q
}

/// Row k; the a-triangle starts at k = 1.
pub fn triangle(kind: TriangleKind, k: u64) -> TriangleRow {
    let entries = match kind {
        TriangleKind::A => (0..k).map(|j| a_entry(k, j)).collect(),
        TriangleKind::B => (0..=k).map(|j| b_entry(k, j)).collect(),
    };
    TriangleRow { kind, k, entries }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn exceptions(row: &TriangleRow, d: u64) -> usize {
    let bd = BigInt::from(d);
    row.entries.iter().filter(|e| !(*e % &bd).is_zero()).count()
}

/// Row k is "divisible with exactly one exception" by 2k+1 (and, for the a-triangle, by 2k-1).
pub fn divisibility_predicate(kind: TriangleKind, k: u64) -> bool {
    let row = triangle(kind, k);
    match kind {
        TriangleKind::B => exceptions(&row, 2 * k + 1) == 1,
        TriangleKind::A => exceptions(&row, 2 * k - 1) == 1 && exceptions(&row, 2 * k + 1) == 1,
    }
}

pub fn primality_predicate(kind: TriangleKind, k: u64) -> bool {
    match kind {
        TriangleKind::B => is_prime(2 * k + 1),
        TriangleKind::A => is_prime(2 * k - 1) && is_prime(2 * k + 1),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterizationReport {
    pub kind: TriangleKind,
    pub kmax: u64,
    pub checked: u64,
    pub positives: u64,
    pub mismatches: Vec<u64>,
}

impl CharacterizationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.checked > 0
    }
}

pub fn divisibility_characterization(kind: TriangleKind, kmax: u64) -> CharacterizationReport {
    let start = match kind {
        TriangleKind::A => 1,
        TriangleKind::B => 0,
    };
    let mut rep = CharacterizationReport { kind, kmax, checked: 0, positives: 0, mismatches: Vec::new() };
    for k in start..=kmax {
        let d = divisibility_predicate(kind, k);
        rep.checked += 1;
        rep.positives += d as u64;
        if d != primality_predicate(kind, k) {
            rep.mismatches.push(k);
        }
    }
    rep
}

/// B_k(x) = Σ_j b(k,j) x^j
pub fn b_polynomial(k: usize) -> Poly {
    let row = triangle(TriangleKind::B, k as u64);
    Poly::new(Var::X, row.entries.into_iter().map(Rat::from_integer).collect())
}

/// A_k(x) = Σ_j a(k,j) x^j; A_0 = 0.
pub fn a_polynomial(k: usize) -> Poly {
    if k == 0 {
        return Poly::zero(Var::X);
    }
    let row = triangle(TriangleKind::A, k as u64);
    Poly::new(Var::X, row.entries.into_iter().map(Rat::from_integer).collect())
}

/// A_{k+4} - [(2x+4)(A_{k+3}+A_{k+1}) - ((x+2)²+2)A_{k+2} - A_k].
/// The characteristic polynomial is (z² - (x+2)z + 1)²; the middle coefficient is
/// x²+4x+6, not 4x²+4x+6 (see [`a_recurrence_residual_with`]).
pub fn a_recurrence_residual(k: usize) -> Poly {
    a_recurrence_residual_with(k, &int(1))
}

/// The same residual with middle coefficient `c2`·x² + 4x + 6.
pub fn a_recurrence_residual_with(k: usize, c2: &Rat) -> Poly {
    let lin = Poly::new(Var::X, vec![int(4), int(2)]);
    let quad = Poly::new(Var::X, vec![int(6), int(4), c2.clone()]);
    let rhs = &(&(&lin * &(&a_polynomial(k + 3) + &a_polynomial(k + 1))) - &(&quad * &a_polynomial(k + 2)))
        - &a_polynomial(k);
    &a_polynomial(k + 4) - &rhs
}

/// C²_{k-1}(y) + (x+6) C²_{k-2}(y) + C²_{k-3}(y) at y = (x+2)/2, negative indices dropped.
pub fn a_from_gegenbauer(k: usize) -> Poly {
    let y = Poly::linear(Var::X, int(1), rat(1, 2));
    let c = |i: i64| -> Poly {
        if i < 0 {
            Poly::zero(Var::X)
        } else {
            gegenbauer(i as usize, &int(2)).expect("lambda = 2").compose(&y)
        }
    };
    let k = k as i64;
    &(&c(k - 1) + &(&Poly::linear(Var::X, int(6), int(1)) * &c(k - 2))) + &c(k - 3)
}

/// One CSV-ready row per (n, s).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropsRow {
    pub n: u64,
    pub s: u64,
    pub which: String,
    pub value: String,
    pub valuation_2: String,
    pub factorization: String,
}

pub fn props_rows(nmax: u64, smax: u64) -> Vec<PropsRow> {
    let mut rows = Vec::new();
    for n in 0..=nmax {
        for s in 1..=smax {
            let r = odd_factor_check(n, s);
            let mut push = |which: &str, c: &IntegerCheck| {
                rows.push(PropsRow {
                    n,
                    s,
                    which: which.to_string(),
                    value: c.value.to_string(),
                    valuation_2: c.valuation_2.map(|v| v.to_string()).unwrap_or_default(),
                    factorization: c.factorization.clone(),
                });
            };
            if let Some(e) = &r.even {
                push("4C_{n-1}p_{2n}", e);
            }
            push("C_n p_{2n+1}", &r.odd);
        }
    }
    rows
}

pub fn props_suite(nmax: u64, smax: u64) -> SuiteReport {
    let mut odd = ClaimResult::new("4C_{n-1} p_{2n}(s) and C_n p_{2n+1}(s) are odd integers");
    let mut reduced = ClaimResult::new("reduced normalizations are odd integers");
    let mut val = ClaimResult::new("2-adic valuation of C_n is popcount(n+1) - 1");
    let mut anchor = ClaimResult::new("4 C_1 p_4(3) = 423 = 3^2 * 47");
    let mut a_rec = ClaimResult::new("A_k four-term recurrence with middle coefficient x^2+4x+6")
        .with_note("the coefficient 4x^2+4x+6 fails from k = 0; (z^2-(x+2)z+1)^2 is the characteristic polynomial");
    let mut a_geg = ClaimResult::new("A_k from C^2 Gegenbauer polynomials at (x+2)/2");
    let grid: Vec<(u64, u64)> = (0..=nmax).flat_map(|n| (1..=smax).map(move |s| (n, s))).collect();
    let reports: Vec<ReducedOddReport> = grid.par_iter().map(|&(n, s)| reduced_odd_forms(n, s)).collect();
    for q in &reports {
        let (n, s, r) = (q.n, q.s, &q.catalan_normalized);
        odd.exact(r.passed(), || format!("n={n} s={s}: {r:?}"));
        reduced.exact(q.passed(), || format!("n={n} s={s}: even {} odd {}", q.even.value, q.odd.value));
    }
    for n in 0..=nmax.max(20) {
        val.exact(catalan_valuation_holds(n), || format!("n={n}"));
    }
    let a = odd_factor_check(2, 3);
    let ok = a.even.as_ref().is_some_and(|e| e.value == int(423) && e.factorization == "3^2*47");
    anchor.exact(ok, || format!("{a:?}"));
    for k in 0..=16 {
        let r = a_recurrence_residual(k);
        a_rec.exact(r.is_zero(), || format!("k={k}: residual {r}"));
    }
    for k in 1..=20 {
        let (d, g) = (a_polynomial(k), a_from_gegenbauer(k));
        a_geg.exact(d == g, || format!("k={k}: {d} vs {g}"));
    }
    SuiteReport::new("props", vec![odd, reduced, val, anchor, a_rec, a_geg])
}

/// Characterizations for 2k+1 <= `odd_max`, plus the anchor rows.
pub fn triangle_suite(odd_max: u64) -> SuiteReport {
    let kmax = odd_max.saturating_sub(1) / 2;
    let mut b = ClaimResult::new("b-row divisible by 2k+1 with one exception iff 2k+1 prime");
    let mut a = ClaimResult::new("a-row divisible by 2k-1 and 2k+1 with one exception each iff twin primes");
    let mut rows = ClaimResult::new("anchor rows b(2,.) = [5,5,1], a(2,.) = [10,3]");
    let mut pos = ClaimResult::new("all triangle entries are positive integers");
    for (kind, claim) in [(TriangleKind::B, &mut b), (TriangleKind::A, &mut a)] {
        let rep = divisibility_characterization(kind, kmax);
        claim.checked = rep.checked as usize;
        claim.failed = rep.mismatches.len();
        if !rep.mismatches.is_empty() {
            claim.max_residual = 1.0;
            claim.first_failure = Some(format!("mismatch at k = {:?}", rep.mismatches));
        }
        claim.note = Some(format!("{} rows satisfy the divisibility pattern", rep.positives));
    }
    let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
    rows.exact(triangle(TriangleKind::B, 2).entries == big(&[5, 5, 1]), || "b row 2".into());
    rows.exact(triangle(TriangleKind::A, 2).entries == big(&[10, 3]), || "a row 2".into());
    for k in 0..=kmax {
        let rb = triangle(TriangleKind::B, k);
        pos.exact(rb.entries.len() == k as usize + 1 && rb.entries.iter().all(|e| e > &BigInt::zero()), || {
            format!("b row {k}")
        });
        if k >= 1 {
            let ra = triangle(TriangleKind::A, k);
            pos.exact(ra.entries.len() == k as usize && ra.entries.iter().all(|e| e > &BigInt::zero()), || {
                format!("a row {k}")
            });
        }
    }
    SuiteReport::new("triangles", vec![b, a, rows, pos])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_examples() {
        assert_eq!(catalan(0), BigInt::from(1));
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(10), BigInt::from(16796));
    }

    #[test]
    fn odd_factor_examples() {
        let r = odd_factor_check(1, 3);
        assert_eq!(r.even.as_ref().unwrap().value, int(15));
        assert_eq!(r.odd.value, int(15));
        assert!(r.passed());
        let r = odd_factor_check(2, 3);
        assert_eq!(r.even.as_ref().unwrap().value, int(423));
        assert_eq!(r.even.as_ref().unwrap().factorization, "3^2*47");
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(reduced_odd_forms(1, 3).even.value, int(15));
        assert_eq!(reduced_odd_forms(0, 1).even.value, int(1));
        assert_eq!(reduced_odd_forms(0, 1).odd.value, int(1));
        for n in 0..=20 {
            assert!(catalan_valuation_holds(n));
        }
    }

    #[test]
    fn triangle_examples() {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(triangle(TriangleKind::B, 2).entries, big(&[5, 5, 1]));
        assert_eq!(triangle(TriangleKind::A, 2).entries, big(&[10, 3]));
        assert!(divisibility_predicate(TriangleKind::B, 2));
        assert!(divisibility_predicate(TriangleKind::A, 2));
        assert!(!divisibility_predicate(TriangleKind::B, 4));
        assert!(divisibility_characterization(TriangleKind::B, 60).passed());
        assert!(divisibility_characterization(TriangleKind::A, 60).passed());
    }

    #[test]
    fn a_polynomials() {
        for k in 0..=10 {
            assert!(a_recurrence_residual(k).is_zero(), "k={k}");
        }
        for k in 1..=10 {
            assert_eq!(a_polynomial(k), a_from_gegenbauer(k), "k={k}");
        }
        // with 4x^2 in the middle coefficient the recurrence already fails at k = 0
        assert!(!a_recurrence_residual_with(0, &int(4)).is_zero());
    }

    #[test]
    fn factorization() {
        let (f, ok) = factorize(&BigInt::from(423), 1000);
        assert!(ok);
        assert_eq!(format_factorization(&f, ok), "3^2*47");
        let (f, ok) = factorize(&BigInt::from(1_000_003u64 * 1_000_033u64), 1000);
        assert!(!ok && f.len() == 1);
    }
}
