//! Exact scalar and polynomial arithmetic.

pub mod gauss;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod special;
pub mod sturm;

pub use gauss::{substitute_critical, GaussRat, Parity};
pub use poly::{Poly, Var};
pub use rat::{int, parse_rat, rat, Rat};
pub use ratfun::RatFun;
pub use special::{gen_binom, pochhammer};
pub use sturm::{sturm_real_root_count, SturmChain};

/// `p(s + a)`
pub fn poly_shift(p: &Poly, a: &Rat) -> Poly {
    p.shift(a)
}
