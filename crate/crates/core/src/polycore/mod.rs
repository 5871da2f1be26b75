//! Exact polynomials, negative-index polylogarithms, `f_q`, `S_q` and `T_q`.

mod fq;
mod identities;
mod poly;
mod polylog;

pub use fq::{
    classify_ratio, compute_sq, compute_tq, eval_fq, f_q_exact, f_q_mod, ProjResidue, ResidueSet,
};
pub(crate) use fq::{eval_fq_with, sq_from, tq_from};
pub use identities::{
    jl_sum_check, lerch_check, pair_weights_match_closed_form, verify_distinguished_members,
    verify_fq_fermat, verify_fq_li_congruence, verify_fq_symmetry, verify_sq_zero_set,
};
pub use poly::{binomial, PolyExact, PolyQ2};
pub use polylog::{
    eval_polylog_neg, f_s_poly, li_at_minus_x_over_one_minus_x, polylog_neg, verify_fli_identity,
    verify_li_reciprocal, RatFunc,
};
