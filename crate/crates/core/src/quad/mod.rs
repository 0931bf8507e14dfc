//! Floating-point oracle: quadrature of the defining integrals and series checks.

pub mod gamma;
pub mod genfun;
pub mod mellin;
pub mod tanh_sinh;

pub use genfun::{genfun_check, genfun_suite, GenfunComparison};
pub use mellin::{
    closed_value, mellin_rows, mellin_t_rows, quad_mellin_gegenbauer, quad_mellin_t, quad_suite, transform_level_lemma1_check,
    MellinRow,
};
pub use tanh_sinh::{tanh_sinh, QuadResult};
