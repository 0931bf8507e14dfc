//! Named verification suites, shared by the command line and the acceptance run.

use crate::error::{Error, Result};
use crate::exact::rat::int;
use crate::report::SuiteReport;
use crate::{arith, hyp3f2, orthopoly, quad, verify};

pub const SUITES: [&str; 15] = [
    "forms", "funceq", "diffeq", "certify", "recur", "gould", "q", "hyp3f2", "corollary2", "genfun", "quad", "props",
    "triangles", "orthopoly", "all",
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub nmax: usize,
    pub seed: u64,
    pub trials: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { nmax: 10, seed: 1, trials: 200 }
    }
}

/// Runs one named suite. `nmax` bounds the index n; for `triangles` it bounds the row k,
/// for `hyp3f2` the terminating index.
pub fn run_suite(name: &str, o: SuiteOptions) -> Result<SuiteReport> {
    let n = o.nmax;
    Ok(match name {
        "forms" => verify::forms_suite(n),
        "funceq" => verify::funceq_suite(n),
        "diffeq" => verify::diffeq_suite(n),
        "certify" => verify::certify_suite(n),
        "recur" => verify::recur_suite(n),
        "gould" => verify::gould_suite(n),
        "q" => verify::q_suite(n),
        "hyp3f2" => hyp3f2::appendix_transform_suite(o.trials, n as u64, o.seed).to_suite(),
        "corollary2" => verify::corollary2_suite(n),
        "genfun" => {
            let mut ls = vec![int(1)];
            ls.extend(verify::lambdas().into_iter().filter(|l| *l > int(0) && *l != int(1)));
            quad::genfun_suite(&ls)
        }
        "quad" => quad::quad_suite(n),
        "props" => arith::props_suite(n as u64, 40),
        "triangles" => arith::triangle_suite(2 * n as u64 + 1),
        "orthopoly" => orthopoly::identity_suite(n),
        "all" => {
            let parts = SUITES[..SUITES.len() - 1].iter().map(|s| run_suite(s, o)).collect::<Result<Vec<_>>>()?;
            SuiteReport::combine("all", parts)
        }
        other => return Err(Error::InvalidParameters(format!("unknown suite {other:?}; expected one of {SUITES:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", SuiteOptions::default()), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn cheap_suites() {
        for s in ["forms", "gould", "triangles", "props"] {
            let r = run_suite(s, SuiteOptions { nmax: 4, ..Default::default() }).unwrap();
            assert!(r.passed, "{s}: {:?}", r.first_failure());
        }
    }
}
