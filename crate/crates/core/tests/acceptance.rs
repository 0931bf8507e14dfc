//! One PASS/FAIL line per acceptance criterion, with wall time against its budget.

use std::time::{Duration, Instant};

use critpoly::arith::{props_suite, triangle_suite};
use critpoly::construct::s32_bare_sum;
use critpoly::exact::rat::{int, rat};
use critpoly::hyp3f2::appendix_transform_suite;
use critpoly::quad::genfun::genfun_suite;
use critpoly::quad::mellin::{anchor_claim, gegenbauer_quadrature_claim, t_zero_quadrature_claims, t_zero_set_claim};
use critpoly::report::ClaimResult;
use critpoly::verify::{
    bare_sum_claim, certify_suite, diffeq_suite, funceq_suite_with, golden_claim, lambdas, recur_suite,
};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_claims(claims: &[ClaimResult]) -> Outcome {
    let checks: usize = claims.iter().map(|c| c.checked).sum();
    match claims.iter().find(|c| !c.passed()) {
        None => Outcome { ok: true, detail: format!("{checks} checks") },
        Some(c) => Outcome {
            ok: false,
            detail: format!("{}: {}", c.claim, c.first_failure.clone().unwrap_or_else(|| "no checks run".into())),
        },
    }
}

fn criterion(id: usize, name: &str, budget_s: u64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= Duration::from_secs(budget_s);
    let ok = out.ok && in_time;
    let timing = format!("{:.2} s of {budget_s} s", took.as_secs_f64());
    let why = if out.ok && !in_time { " [over time budget]".to_string() } else { String::new() };
    println!("{} {:>2} {name} ({}; {timing}){why}", if ok { "PASS" } else { "FAIL" }, id, out.detail);
    ok
}

fn main() {
    let mut all = true;

    all &= criterion(1, "golden values p_0..p_4 at lambda = 1 from every construction path", 1, || {
        from_claims(&[golden_claim()])
    });

    all &= criterion(2, "Sturm certificates, n <= 30, all lambda and beta samples, floor(n/2) distinct zeros", 30, || {
        from_claims(&certify_suite(30).claims)
    });

    all &= criterion(3, "reflection p(s) = (-1)^floor(n/2) p(1-s) for n <= 30 and q_n reflection for n <= 20", 10, || {
        from_claims(&funceq_suite_with(30, 20).claims)
    });

    all &= criterion(4, "difference equations and Chebyshev recursions, n <= 20", 10, || from_claims(&diffeq_suite(20).claims));

    all &= criterion(5, "M-relations at 6 rational s per (n <= 10, lambda)", 10, || from_claims(&recur_suite(10).claims));

    all &= criterion(6, "Gegenbauer quadrature vs closed form within 1e-10, plus anchors 4/3 and 2/3", 60, || {
        let mut o = from_claims(&[gegenbauer_quadrature_claim(10), anchor_claim()]);
        o.detail.push_str("; where the closed form is exactly 0 (s = 1/2, floor(n/2) odd) |quad| <= 1e-10 * integral of |integrand|");
        o
    });

    all &= criterion(7, "first-kind zero set exact for n <= 12, quadrature |M_n^T(n^2-1)| <= 1e-11 for n <= 8", 20, || {
        let (at_zero, sign) = t_zero_quadrature_claims(8);
        from_claims(&[t_zero_set_claim(12), at_zero, sign])
    });

    all &= criterion(8, "4C_{n-1}p_{2n}(s), C_n p_{2n+1}(s) odd integers for n <= 12, s <= 40; 423 = 3^2*47", 10, || {
        let r = props_suite(12, 40);
        from_claims(&r.claims[..4])
    });

    all &= criterion(9, "triangle divisibility iff (twin) primality for 2k+1 <= 400; anchor rows", 5, || {
        from_claims(&triangle_suite(400).claims)
    });

    all &= criterion(10, "seven 3F2(1) transformations and terminating Thomae, 200 exact trials each", 20, || {
        let r = appendix_transform_suite(200, 10, 1);
        let mut o = from_claims(&r.to_suite().claims);
        o.ok &= r.passed();
        o
    });

    all &= criterion(11, "bare S:3/2 sums at s = 1 and s = 2 equal closed forms, n <= 15; anchor 3/10", 5, || {
        // half index ≤ 15, i.e. full index ≤ 31
        let mut o = from_claims(&[bare_sum_claim(31, &lambdas())]);
        let anchor = s32_bare_sum(2, &int(1), &int(1)).ok();
        if anchor != Some(rat(3, 10)) {
            o = Outcome { ok: false, detail: format!("anchor gave {anchor:?}") };
        }
        o
    });

    all &= criterion(12, "generating functions and the t^2k expansion within 1e-9, t in {0.05, 0.1}, s in {1, 2, 3}, K = 40", 30, || {
        let mut ls = vec![int(1)];
        ls.extend(lambdas().into_iter().filter(|l| *l > int(0) && *l != int(1)));
        from_claims(&genfun_suite(&ls).claims)
    });

    if !all {
        std::process::exit(1);
    }
}
