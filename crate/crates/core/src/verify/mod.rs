//! Certification of critical-line zeros and exact checks of the functional,
//! difference and recurrence equations.

pub mod relations;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use relations::{check_integer_s_forms, check_m_recurrences, s_samples, INTEGER_S_CLAIM, RELATION_CLAIMS};

use crate::construct::{
    construct, gould_closure_even, gould_closure_odd, gould_sum_even, gould_sum_odd, hat, p_beta, p_chebyshev_recursive,
    p_s21_chebyshev, q_rational, reflection_residual, s32_bare_sum, s32_bare_sum_closed, CriticalPolynomial, Family, Form,
};
use crate::error::{Error, Result};
use crate::exact::rat::{factorial_rat, int, rat, to_f64, Rat};
use crate::exact::sturm::{real_roots_f64, squarefree_part};
use crate::exact::{substitute_critical, Parity, Poly, RatFun, Var};
use crate::quad::gamma::{gamma_ratio_f64, ln_gamma_signed};
use crate::report::{merge_claims, ClaimResult, SuiteReport};

/// λ sample set shared by the exact suites.
pub const LAMBDAS: [(i64, i64); 7] = [(-1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (5, 2), (7, 3)];
pub const BETAS: [(i64, i64); 5] = [(0, 1), (1, 2), (-1, 1), (-2, 1), (-3, 1)];

pub fn lambdas() -> Vec<Rat> {
    LAMBDAS.iter().map(|&(p, q)| rat(p, q)).collect()
}

pub fn betas() -> Vec<Rat> {
    BETAS.iter().map(|&(p, q)| rat(p, q)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub n: usize,
    #[serde(flatten)]
    pub family: Family,
    pub form: Form,
    pub degree: usize,
    /// Degree of v(t), where p(1/2 + it) = v(t) or i·v(t).
    pub v_degree: usize,
    pub parity: Parity,
    pub distinct_real_roots: usize,
    pub squarefree_degree: usize,
    pub squarefree: bool,
    /// v(-t) = ±v(t), so nonreal roots of p pair as 1/2 ± it.
    pub conjugate_pairing: bool,
    pub pass: bool,
}

/// Exact certificate that every zero of p lies on Re s = 1/2.
///
/// With v the real polynomial on the critical line, deg v = deg p, and every root of v
/// real (Sturm count of distinct roots equal to the degree of the squarefree part),
/// all deg p zeros of p are 1/2 + it with t real.
pub fn certify_critical_line(p: &CriticalPolynomial) -> Result<Certificate> {
    if p.poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (v, parity) = substitute_critical(&p.poly)
        .ok_or_else(|| Error::Inconsistent(format!("{}: mixed real and imaginary coefficients on the critical line", p.label())))?;
    let degree = p.poly.degree().unwrap_or(0);
    let v_degree = v.degree().unwrap_or(0);
    let sq = squarefree_part(&v);
    let squarefree_degree = sq.degree().unwrap_or(0);
    let distinct_real_roots = crate::exact::sturm_real_root_count(&v);
    let neg = v.negate_var();
    let conjugate_pairing = neg == v || neg == v.scale(&-Rat::one());
    let pass = v_degree == degree && distinct_real_roots == squarefree_degree && conjugate_pairing;
    Ok(Certificate {
        n: p.n,
        family: p.family.clone(),
        form: p.form,
        degree,
        v_degree,
        parity,
        distinct_real_roots,
        squarefree_degree,
        squarefree: squarefree_degree == v_degree,
        conjugate_pairing,
        pass,
    })
}

/// Float approximations of the t with p(1/2 + it) = 0, for display.
pub fn critical_roots_f64(p: &Poly) -> Vec<f64> {
    match substitute_critical(p) {
        Some((v, _)) if !v.is_constant() => real_roots_f64(&squarefree_part(&v), 60),
        _ => Vec::new(),
    }
}

/// Difference-equation residual for half index m (so p has full index 2m or 2m+1).
pub fn difference_residual(p: &Poly, m: usize, odd: bool, lambda: &Rat) -> Poly {
    let s = Poly::identity(Var::S);
    let c = |c0: Rat, c1: i64| Poly::linear(Var::S, c0, int(c1));
    let l = lambda;
    let mi = int(m as i64);
    let p4 = p.shift(&int(4));
    let p2 = p.shift(&int(2));
    let s2 = &s * &s;
    if !odd {
        let a = &c(int(2), 1) * &c(l * int(2) + &mi * int(4) - int(5), -2);
        let b = &Poly::constant(Var::S, l * &mi * int(8) + l * int(2) + &mi * &mi * int(8) - int(11)) - &(&s2.scale(&int(4)) + &s.scale(&int(12)));
        let d = &c(int(1), 1) * &c(l * int(2) + &mi * int(4) + int(1), 2);
        &(&(&a * &p4) - &(&b * &p2)) - &(&d * p)
    } else {
        let a = &c(int(3), 1) * &c(l * int(2) + &mi * int(4) - int(3), -2);
        let b = &Poly::constant(Var::S, l * &mi * int(8) + l * int(6) + &mi * &mi * int(8) + &mi * int(8) - int(9))
            - &(&s2.scale(&int(4)) + &s.scale(&int(12)));
        let d = &s * &c(l * int(2) + &mi * int(4) + int(3), 2);
        &(&(&a * &p4) - &(&b * &p2)) - &(&d * p)
    }
}

/// The even- or odd-case difference equation for p at half index n.
pub fn check_difference_equation(p: &Poly, n: usize, odd: bool, lambda: &Rat) -> bool {
    difference_residual(p, n, odd, lambda).is_zero()
}

/// Three-shift equation in s satisfied by p̂ (full index n).
pub fn hat_shift_residual(n: usize, lambda: &Rat) -> Result<Poly> {
    let p = hat(n, lambda)?;
    let s = Poly::identity(Var::S);
    let l = lambda;
    let ni = int(n as i64);
    let eps = int((n % 2) as i64);
    let g = Poly::linear(Var::S, &eps / int(2), rat(1, 2));
    let h = Poly::linear(Var::S, (&ni + l) / int(2) + rat(1, 4), rat(1, 2));
    let one = Poly::one(Var::S);
    let gm = &g - &one;
    let hm = &h - &one;
    let s2 = &s * &s;
    let a = &(&Poly::constant(Var::S, int(6) - int(4) * (l + l * &ni * int(2) + &ni * &ni)) - &s.scale(&int(16)))
        + &(&s2 + &s).scale(&int(8));
    let lam_n = (l + &ni) * (l + &ni);
    let b = &Poly::constant(Var::S, int(-9) + int(4) * lam_n) - &(&Poly::linear(Var::S, int(-1), int(1)) * &Poly::linear(Var::S, int(2), int(1))).scale(&int(4));
    let c = &(&Poly::linear(Var::S, int(-1), int(1)) * &Poly::linear(Var::S, int(-2), int(1))) * &(&h * &hm);
    let t1 = &(&a * &(&h * &gm)) * &p;
    let t2 = &(&b * &(&g * &gm)) * &p.shift(&int(2));
    let t3 = &c.scale(&int(4)) * &p.shift(&int(-2));
    Ok(&(&t1 + &t2) - &t3)
}

/// The printed recursion in the normalization P_n = p_n / n!.
pub fn chebyshev_recursion_residual(n: usize) -> Poly {
    assert!(n >= 2);
    let norm = |k: usize| p_s21_chebyshev(k).poly.scale(&factorial_rat(k as u64).recip());
    let s = Poly::identity(Var::S);
    let lead = if n % 2 == 0 { &s * &norm(n - 1).shift(&Rat::one()) } else { norm(n - 1).shift(&Rat::one()).scale(&int(2)) };
    let tail = &Poly::linear(Var::S, int(n as i64) - rat(1, 2), int(1)) * &norm(n - 2).scale(&rat(1, 2));
    &(&norm(n) - &lead) + &tail
}

/// q_n(s) - (-1)^N C(N+(1-s+λ+ε)/2-3/4, N)/C(N+(s+λ+ε)/2-3/4, N) q_n(1-s), N = ⌊n/2⌋.
pub fn fq1_residual(n: usize, lambda: &Rat) -> Result<RatFun> {
    let q = q_rational(n, lambda)?.fun;
    let big_n = (n / 2) as i64;
    let eps = int((n % 2) as i64);
    let base = (lambda + &eps) / int(2) - rat(3, 4) + int(big_n);
    // C(x, N) with x linear in s
    let num = crate::exact::special::gen_binom(&Poly::linear(Var::S, &base + rat(1, 2), rat(-1, 2)), big_n);
    let den = crate::exact::special::gen_binom(&Poly::linear(Var::S, base, rat(1, 2)), big_n);
    let sign = if big_n % 2 == 0 { Rat::one() } else { -Rat::one() };
    let ratio = RatFun::new(num.scale(&sign), den)?;
    Ok(&q - &(&ratio * &q.reflect()?))
}

/// Every construction path at (n, λ): all forms for λ = 1, the general ones otherwise.
pub fn constructions(n: usize, lambda: &Rat) -> Result<Vec<CriticalPolynomial>> {
    let mut forms = vec![Form::S41, Form::S32, Form::Hyp];
    if lambda.is_one() {
        forms.extend([Form::S21, Form::Recur]);
    }
    forms.into_iter().map(|f| construct(n, lambda, f)).collect()
}

fn all_polynomials(nmax: usize) -> Vec<Result<CriticalPolynomial>> {
    let mut items: Vec<(usize, Option<Rat>, Option<Rat>)> = Vec::new();
    for n in 0..=nmax {
        for l in lambdas() {
            items.push((n, Some(l), None));
        }
        for b in betas() {
            items.push((n, None, Some(b)));
        }
    }
    items
        .par_iter()
        .flat_map_iter(|(n, l, b)| match (l, b) {
            (Some(l), _) => match constructions(*n, l) {
                Ok(v) => v.into_iter().map(Ok).collect::<Vec<_>>(),
                Err(e) => vec![Err(e)],
            },
            (None, Some(b)) => vec![p_beta(*n, b)],
            _ => unreachable!(),
        })
        .collect()
}

pub const CERTIFY_CLAIMS: [&str; 3] = [
    "every zero lies on Re s = 1/2 (Sturm)",
    "distinct critical-line zeros = floor(n/2)",
    "roots pair as 1/2 +- it (v has parity)",
];

pub fn certify_suite(nmax: usize) -> SuiteReport {
    let mut claims: Vec<ClaimResult> = CERTIFY_CLAIMS.iter().map(|c| ClaimResult::new(*c)).collect();
    for p in all_polynomials(nmax) {
        match p.and_then(|p| certify_critical_line(&p).map(|c| (p, c))) {
            Ok((p, c)) => {
                claims[0].exact(c.pass, || format!("{}: {c:?}", p.label()));
                claims[1].exact(c.distinct_real_roots == p.n / 2, || format!("{}: {} distinct roots", p.label(), c.distinct_real_roots));
                claims[2].exact(c.conjugate_pairing, || p.label());
            }
            Err(e) => claims[0].error(e.to_string()),
        }
    }
    SuiteReport::new("certify", claims)
}

pub const FORMS_CLAIMS: [&str; 5] = [
    "golden values p_0..p_4 at lambda = 1 from every path",
    "S41, S32, S21, RECUR and HYP/2 agree",
    "degree is floor(n/2)",
    "p(s; 3/4 - lambda/2) is a constant multiple of the hat polynomial",
    "leading coefficient of hat polynomial",
];

fn golden() -> Vec<Poly> {
    let p = |c: Vec<Rat>| Poly::new(Var::S, c);
    vec![
        p(vec![rat(1, 2)]),
        p(vec![int(1)]),
        p(vec![rat(-3, 4), rat(3, 2)]),
        p(vec![int(-3), int(6)]),
        p(vec![rat(63, 4), int(-15), int(15)]),
    ]
}

/// Golden list from a given construction, with the HYP path halved.
pub fn golden_claim() -> ClaimResult {
    let mut claim = ClaimResult::new(FORMS_CLAIMS[0]);
    for (n, g) in golden().into_iter().enumerate() {
        for f in [Form::S41, Form::S32, Form::S21, Form::Recur, Form::Hyp] {
            match construct(n, &int(1), f) {
                Ok(p) => {
                    let got = if f == Form::Hyp { p.poly.scale(&rat(1, 2)) } else { p.poly };
                    claim.exact(got == g, || format!("n={n} {f:?}: {got} expected {g}"));
                }
                Err(e) => claim.error(format!("n={n} {f:?}: {e}")),
            }
        }
    }
    claim
}

fn forms_item(n: usize, lambda: &Rat) -> Vec<ClaimResult> {
    let mut agree = ClaimResult::new(FORMS_CLAIMS[1]);
    let mut degree = ClaimResult::new(FORMS_CLAIMS[2]);
    let mut beta = ClaimResult::new(FORMS_CLAIMS[3]);
    let mut lead = ClaimResult::new(FORMS_CLAIMS[4]);
    let tag = format!("n={n} lambda={lambda}");
    match constructions(n, lambda) {
        Ok(ps) => {
            let base = ps[0].poly.clone();
            for p in &ps {
                let got = if p.form == Form::Hyp { p.poly.scale(&rat(1, 2)) } else { p.poly.clone() };
                agree.exact(got == base, || format!("{tag} {:?}: {got} vs {base}", p.form));
                degree.exact(p.poly.degree() == Some(n / 2), || format!("{tag} {:?}", p.form));
            }
            let hat = ps.iter().find(|p| p.form == Form::Hyp).map(|p| p.poly.clone()).unwrap_or_else(|| Poly::zero(Var::S));
            match p_beta(n, &(rat(3, 4) - lambda / int(2))) {
                Ok(b) => {
                    // hat = c · b with c independent of s
                    let c = match (hat.leading(), b.poly.leading()) {
                        (Some(x), Some(y)) => x / y,
                        _ => Rat::zero(),
                    };
                    beta.exact(!c.is_zero() && b.poly.scale(&c) == hat, || format!("{tag}: ratio not constant"));
                }
                Err(e) => beta.error(format!("{tag}: {e}")),
            }
            // only k = 0 reaches the top power: n!(2λ)_n / n! · 2^{-⌊n/2⌋}
            let expect = crate::exact::special::pochhammer(&(lambda * int(2)), n)
                / crate::exact::rat::pow_rat(&int(2), (n / 2) as i64);
            lead.exact(hat.leading() == Some(&expect), || format!("{tag}: leading {:?} expected {expect}", hat.leading()));
        }
        Err(e) => agree.error(format!("{tag}: {e}")),
    }
    vec![agree, degree, beta, lead]
}

fn grid(nmax: usize) -> Vec<(usize, Rat)> {
    (0..=nmax).flat_map(|n| lambdas().into_iter().map(move |l| (n, l))).collect()
}

pub fn forms_suite(nmax: usize) -> SuiteReport {
    let parts: Vec<Vec<ClaimResult>> = grid(nmax).par_iter().map(|(n, l)| forms_item(*n, l)).collect();
    let mut claims = vec![golden_claim()];
    claims.extend(merge_claims(&FORMS_CLAIMS[1..], parts));
    SuiteReport::new("forms", claims)
}

pub const FUNCEQ_CLAIMS: [&str; 2] =
    ["p(s) = (-1)^floor(n/2) p(1-s) for every construction", "q_n(s) reflection with binomial ratio (zero rational residual)"];

pub fn funceq_suite(nmax: usize) -> SuiteReport {
    funceq_suite_with(nmax, nmax)
}

/// Reflection of every construction for n ≤ `poly_nmax`, the q_n identity for n ≤ `q_nmax`.
pub fn funceq_suite_with(poly_nmax: usize, q_nmax: usize) -> SuiteReport {
    let mut refl = ClaimResult::new(FUNCEQ_CLAIMS[0]);
    for p in all_polynomials(poly_nmax) {
        match p {
            Ok(p) => {
                let r = reflection_residual(&p.poly, p.n);
                refl.exact(r.is_zero(), || format!("{}: residual {r}", p.label()));
            }
            Err(e) => refl.error(e.to_string()),
        }
    }
    let items: Vec<(usize, Rat)> = grid(q_nmax).into_iter().filter(|(n, _)| *n >= 1).collect();
    let res: Vec<_> = items.par_iter().map(|(n, l)| fq1_residual(*n, l)).collect();
    let mut fq = ClaimResult::new(FUNCEQ_CLAIMS[1]);
    for ((n, l), r) in items.iter().zip(res) {
        match r {
            Ok(r) => fq.exact(r.is_zero(), || format!("n={n} lambda={l}: residual {r}")),
            Err(e) => fq.error(format!("n={n} lambda={l}: {e}")),
        }
    }
    SuiteReport::new("funceq", vec![refl, fq])
}

pub const DIFFEQ_CLAIMS: [&str; 3] = [
    "even and odd difference equations in s+4, s+2, s (zero polynomial)",
    "three-shift equation for the hat polynomial",
    "Chebyshev recursions for p_n/n! (n even and n odd)",
];

pub fn diffeq_suite(nmax: usize) -> SuiteReport {
    let parts: Vec<Vec<ClaimResult>> = grid(nmax)
        .par_iter()
        .map(|(n, l)| {
            let mut d = ClaimResult::new(DIFFEQ_CLAIMS[0]);
            let mut h = ClaimResult::new(DIFFEQ_CLAIMS[1]);
            match crate::construct::canonical(*n, l) {
                Ok(p) => {
                    let r = difference_residual(&p, n / 2, n % 2 == 1, l);
                    d.exact(r.is_zero(), || format!("n={n} lambda={l}: residual {r}"));
                }
                Err(e) => d.error(e.to_string()),
            }
            match hat_shift_residual(*n, l) {
                Ok(r) => h.exact(r.is_zero(), || format!("n={n} lambda={l}: residual {r}")),
                Err(e) => h.error(e.to_string()),
            }
            vec![d, h]
        })
        .collect();
    let mut claims = merge_claims(&DIFFEQ_CLAIMS[..2], parts);
    let mut rec = ClaimResult::new(DIFFEQ_CLAIMS[2]).with_note("the printed seeds 1/2, 1 generate p_n/n!");
    for n in 2..=nmax.max(2) {
        let r = chebyshev_recursion_residual(n);
        rec.exact(r.is_zero(), || format!("n={n}: residual {r}"));
        let direct = p_chebyshev_recursive(n).poly;
        rec.exact(direct == p_s21_chebyshev(n).poly, || format!("n={n}: recursive path differs"));
    }
    claims.push(rec);
    SuiteReport::new("diffeq", claims)
}

pub fn recur_suite(nmax: usize) -> SuiteReport {
    let samples = s_samples();
    let items = grid(nmax);
    let parts: Vec<Vec<ClaimResult>> = items
        .par_iter()
        .map(|(n, l)| {
            let mut c = check_m_recurrences(*n, l, &samples);
            c.push(check_integer_s_forms(*n, l, 12));
            c
        })
        .collect();
    let mut template: Vec<&str> = RELATION_CLAIMS.to_vec();
    template.push(INTEGER_S_CLAIM);
    let claims = merge_claims(&template, parts)
        .into_iter()
        .map(|c| {
            if c.claim == RELATION_CLAIMS[8] {
                c.with_note("includes the (2 lambda)_n factor")
            } else if c.claim == INTEGER_S_CLAIM {
                c.with_note("odd case prefactor 1/(2(s+1))")
            } else {
                c
            }
        })
        .collect();
    SuiteReport::new("recur", claims)
}

pub const GOULD_CLAIMS: [&str; 4] = [
    "even alternating sum = (1/2) C(2n+2l-1, 2n-1) / C(n+l-1, n-1)",
    "odd alternating sum = (n+1)/(2n+1) C(2n+2l, 2n) / C(n+l, n)",
    "lim q_n(s) = 1 (leading coefficients)",
    "bare S:3/2 sums at s = 1 (even) and s = 2 (odd) equal their closed forms",
];

pub fn check_gould_closures(nmax: usize, lambdas: &[Rat]) -> Vec<ClaimResult> {
    let mut claims: Vec<ClaimResult> = GOULD_CLAIMS.iter().map(|c| ClaimResult::new(*c)).collect();
    for l in lambdas {
        for m in 0..=nmax {
            if m >= 1 {
                match gould_closure_even(m, l) {
                    Ok(c) => claims[0].exact(c == gould_sum_even(m, l), || format!("m={m} lambda={l}")),
                    Err(e) => claims[0].error(format!("m={m} lambda={l}: {e}")),
                }
            }
            match gould_closure_odd(m, l) {
                Ok(c) => claims[1].exact(c == gould_sum_odd(m, l), || format!("m={m} lambda={l}")),
                Err(e) => claims[1].error(format!("m={m} lambda={l}: {e}")),
            }
        }
        for n in 1..=nmax {
            match q_rational(n, l) {
                Ok(q) => claims[2].exact(q.fun.leading_ratio().is_one(), || format!("n={n} lambda={l}: {}", q.fun.leading_ratio())),
                Err(e) => claims[2].error(format!("n={n} lambda={l}: {e}")),
            }
        }
    }
    claims[3] = bare_sum_claim(nmax, lambdas);
    claims
}

/// Bare S:3/2 sums at s = 1 (even n) and s = 2 (odd n) against their closed forms, full index n ≤ nmax.
pub fn bare_sum_claim(nmax: usize, lambdas: &[Rat]) -> ClaimResult {
    let mut claim = ClaimResult::new(GOULD_CLAIMS[3]);
    for l in lambdas {
        for n in 0..=nmax {
            let s = if n % 2 == 0 { int(1) } else { int(2) };
            match (s32_bare_sum(n, l, &s), s32_bare_sum_closed(n, l)) {
                (Ok(a), Ok(b)) => claim.exact(a == b, || format!("n={n} lambda={l}: {a} vs {b}")),
                (Err(e), _) | (_, Err(e)) => claim.error(format!("n={n} lambda={l}: {e}")),
            }
        }
    }
    claim
}

pub fn gould_suite(nmax: usize) -> SuiteReport {
    SuiteReport::new("gould", check_gould_closures(nmax, &lambdas()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QRangeReport {
    pub n: usize,
    #[serde(with = "crate::exact::rat::serde_rat")]
    pub lambda: Rat,
    pub constant: bool,
    pub points: usize,
    pub in_unit_interval: bool,
    pub limit_close: Option<bool>,
    pub first_failure: Option<String>,
}

/// 0 < q < 1 on a grid in (1, ∞), and q within 1e-3 of 1 at the largest point when it is ≥ 10⁶ n.
pub fn check_q_range(n: usize, lambda: &Rat, grid: &[Rat]) -> Result<QRangeReport> {
    if grid.iter().any(|s| *s <= Rat::one()) {
        return Err(Error::InvalidParameters("grid points must exceed 1".into()));
    }
    let q = q_rational(n, lambda)?.fun;
    let constant = q.numerator_degree() == 0 && q.denominator_degree() == 0;
    let mut first_failure = None;
    let mut in_unit_interval = true;
    if !constant {
        for s in grid {
            let v = q.eval(s)?;
            if !(v > Rat::zero() && v < Rat::one()) {
                in_unit_interval = false;
                first_failure.get_or_insert_with(|| format!("q({s}) = {v}"));
            }
        }
    }
    let limit_close = grid.iter().max().filter(|top| **top >= int(1_000_000 * n as i64)).map(|top| {
        let v = q.eval(top).map(|v| to_f64(&v)).unwrap_or(f64::NAN);
        (v - 1.0).abs() <= 1e-3
    });
    if limit_close == Some(false) {
        first_failure.get_or_insert_with(|| "largest grid point not within 1e-3 of 1".into());
    }
    Ok(QRangeReport { n, lambda: lambda.clone(), constant, points: grid.len(), in_unit_interval, limit_close, first_failure })
}

pub fn q_grid(n: usize) -> Vec<Rat> {
    let mut g: Vec<Rat> = [(11, 10), (3, 2), (2, 1), (3, 1), (5, 1), (10, 1), (50, 1), (1000, 1)].iter().map(|&(p, q)| rat(p, q)).collect();
    g.push(int(1_000_000 * n.max(1) as i64));
    g
}

pub fn q_suite(nmax: usize) -> SuiteReport {
    let items: Vec<(usize, Rat)> = grid(nmax).into_iter().filter(|(n, _)| *n >= 1).collect();
    let res: Vec<_> = items.par_iter().map(|(n, l)| check_q_range(*n, l, &q_grid(*n))).collect();
    let mut range = ClaimResult::new("0 < q_n(s) < 1 on the grid (grid evidence; q_1 = 1 excluded)");
    let mut limit = ClaimResult::new("q_n within 1e-3 of 1 at s = 10^6 n");
    for ((n, l), r) in items.iter().zip(res) {
        match r {
            Ok(r) => {
                if !r.constant {
                    range.exact(r.in_unit_interval, || {
                        format!("n={n} lambda={l}: {:?}", r.first_failure)
                    });
                }
                if let Some(c) = r.limit_close {
                    limit.exact(c, || format!("n={n} lambda={l}"));
                }
            }
            Err(e) => range.error(format!("n={n} lambda={l}: {e}")),
        }
    }
    SuiteReport::new("q", vec![range, limit])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corollary2Check {
    pub n: usize,
    pub s: f64,
    pub exact: f64,
    pub series_form: f64,
    pub gamma_form: f64,
    pub rel_err: f64,
    pub pass: bool,
}

/// Terminating 2F1(a, b; c; 1) in floating point.
fn f21_terminating(a: f64, b: f64, c: f64) -> f64 {
    let (mut term, mut sum) = (1.0, 1.0);
    for j in 0..10_000 {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0));
        if term == 0.0 {
            break;
        }
        sum += term;
    }
    sum
}

/// Γ(x1)Γ(x2)/(Γ(y1)Γ(y2)) via signed log-gamma; poles in the denominator give 0.
fn gamma_quotient(num: [f64; 2], den: [f64; 2]) -> Result<f64> {
    let mut log = 0.0;
    let mut sign = 1.0;
    for x in num {
        let (l, s) = ln_gamma_signed(x).ok_or_else(|| Error::GammaPole(x.to_string()))?;
        log += l;
        sign *= s;
    }
    for x in den {
        match ln_gamma_signed(x) {
            Some((l, s)) => {
                log -= l;
                sign *= s;
            }
            None => return Ok(0.0),
        }
    }
    Ok(sign * log.exp())
}

/// Both printed expressions for p_n(s; 0) against the exact polynomial.
pub fn check_corollary2(n: usize, s: f64) -> Result<Corollary2Check> {
    let nf = n as f64;
    let eps = (n % 2) as f64;
    let c = -(nf + s) / 2.0;
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::GammaPole(c.to_string()));
    }
    let pre = 2.0 * (nf + s) / ((nf + 1.0) * (nf + 2.0)) * gamma_ratio_f64((nf + s) / 2.0, (s + eps) / 2.0);
    let series_form = pre * (1.0 - f21_terminating(-(nf + 1.0) / 2.0, -nf / 2.0 - 1.0, c));
    let g = gamma_quotient([c, (nf + 3.0 - s) / 2.0], [(1.0 - s) / 2.0, 1.0 - s / 2.0])?;
    let gamma_form = pre * (1.0 - g);
    let exact = p_beta(n, &Rat::zero())?.poly.eval_f64(s);
    let scale = exact.abs().max(1.0);
    let rel_err = ((series_form - exact).abs()).max((gamma_form - exact).abs()) / scale;
    Ok(Corollary2Check { n, s, exact, series_form, gamma_form, rel_err, pass: rel_err <= 1e-10 })
}

pub const COR2_S: [f64; 6] = [0.3, 0.75, 1.7, 2.5, 3.3, 5.9];

pub fn corollary2_suite(nmax: usize) -> SuiteReport {
    let mut claim = ClaimResult::new("Gamma and 2F1 forms of p_n(s;0) match the exact polynomial to 1e-10")
        .with_note("relative to max(1, |p_n(s;0)|)");
    for n in 0..=nmax {
        for s in COR2_S {
            match check_corollary2(n, s) {
                Ok(c) => claim.record(c.pass, c.rel_err, || format!("{c:?}")),
                Err(e) => claim.error(format!("n={n} s={s}: {e}")),
            }
        }
    }
    let mut neg = ClaimResult::new("p_n(s; -m) certified and reflected for m = 1..3");
    for m in 1..=3 {
        for n in 0..=nmax {
            match p_beta(n, &int(-m)).and_then(|p| certify_critical_line(&p).map(|c| (p, c))) {
                Ok((p, c)) => neg.exact(c.pass && reflection_residual(&p.poly, n).is_zero(), || p.label()),
                Err(e) => neg.error(e.to_string()),
            }
        }
    }
    SuiteReport::new("corollary2", vec![claim, neg])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{canonical, p_s41};

    #[test]
    fn certificate_examples() {
        let c = certify_critical_line(&p_s41(4, &int(1)).unwrap()).unwrap();
        assert_eq!((c.degree, c.distinct_real_roots, c.pass), (2, 2, true));
        let (v, _) = substitute_critical(&canonical(4, &int(1)).unwrap()).unwrap();
        // 15(1/2+it)² - 15(1/2+it) + 63/4 = 12 - 15t²
        assert_eq!(v, Poly::new(Var::T, vec![int(12), int(0), int(-15)]));
        let c = certify_critical_line(&p_s41(1, &rat(7, 3)).unwrap()).unwrap();
        assert_eq!((c.degree, c.distinct_real_roots, c.pass), (0, 0, true));
        let c = certify_critical_line(&p_s41(12, &rat(1, 2)).unwrap()).unwrap();
        assert_eq!((c.distinct_real_roots, c.pass), (6, true));
        let roots = critical_roots_f64(&canonical(4, &int(1)).unwrap());
        assert_eq!(roots.len(), 2);
        assert!((roots[1] - 2.0 / 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn off_line_polynomial_fails() {
        // (s - 2)(s + 1) satisfies p(s) = p(1 - s) but has real zeros off the line
        let p = CriticalPolynomial {
            n: 4,
            family: Family::Gegenbauer { lambda: int(1) },
            form: Form::S41,
            normalization: crate::construct::Normalization::Canonical,
            poly: Poly::new(Var::S, vec![int(-2), int(-1), int(1)]),
        };
        assert!(reflection_residual(&p.poly, 4).is_zero());
        let c = certify_critical_line(&p).unwrap();
        assert!(!c.pass && c.distinct_real_roots == 0);
        let mixed = CriticalPolynomial { poly: Poly::new(Var::S, vec![int(0), int(1)]), ..p };
        assert!(certify_critical_line(&mixed).is_err());
    }

    #[test]
    fn difference_equation_examples() {
        assert!(check_difference_equation(&canonical(2, &int(1)).unwrap(), 1, false, &int(1)));
        assert!(check_difference_equation(&canonical(0, &rat(2, 3)).unwrap(), 0, false, &rat(2, 3)));
        assert!(check_difference_equation(&canonical(5, &rat(3, 2)).unwrap(), 2, true, &rat(3, 2)));
        // the wrong parity branch does not hold
        assert!(!check_difference_equation(&canonical(5, &rat(3, 2)).unwrap(), 2, false, &rat(3, 2)));
        for n in 0..=10 {
            assert!(hat_shift_residual(n, &rat(5, 2)).unwrap().is_zero());
        }
    }

    #[test]
    fn gould_and_q_examples() {
        let c = check_gould_closures(3, &[int(1)]);
        assert!(c.iter().all(|c| c.passed()), "{c:?}");
        let r = check_q_range(2, &int(1), &[int(2), int(10), int(1_000_000)]).unwrap();
        // 10⁶ < 10⁶·n, so the limit condition does not apply
        assert!(r.in_unit_interval && r.limit_close.is_none());
        let r = check_q_range(2, &int(1), &[int(2), int(2_000_000)]).unwrap();
        assert!(r.in_unit_interval && r.limit_close == Some(true));
        let q = q_rational(2, &int(1)).unwrap().fun;
        assert_eq!(q.eval(&int(2)).unwrap(), rat(3, 7));
        assert_eq!(q.eval(&int(10)).unwrap(), rat(19, 23));
        assert!(check_q_range(1, &int(1), &[int(2)]).unwrap().constant);
        assert!(check_q_range(3, &int(1), &[int(2)]).unwrap().in_unit_interval);
        assert!(check_q_range(3, &int(1), &[int(1)]).is_err());
    }

    #[test]
    fn fq1_small() {
        for n in 1..=10 {
            assert!(fq1_residual(n, &rat(7, 3)).unwrap().is_zero(), "n={n}");
        }
    }

    #[test]
    fn corollary2_examples() {
        for (n, s) in [(2, 2.5), (0, 1.7), (5, 0.3), (12, 3.3)] {
            let c = check_corollary2(n, s).unwrap();
            assert!(c.pass, "{c:?}");
        }
        assert!((check_corollary2(0, 0.75).unwrap().exact - 1.0).abs() < 1e-15);
    }

    #[test]
    fn suites_small() {
        for r in [
            forms_suite(6),
            funceq_suite(6),
            diffeq_suite(6),
            certify_suite(6),
            recur_suite(4),
            gould_suite(6),
            q_suite(6),
            corollary2_suite(6),
        ] {
            assert!(r.passed, "{}: {:?}", r.suite, r.first_failure());
        }
    }

    #[test]
    fn certificate_json_shape() {
        let c = certify_critical_line(&p_beta(3, &rat(1, 2)).unwrap()).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["family"], "beta");
        assert_eq!(v["beta"], "1/2");
        let back: Certificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
    }
}
