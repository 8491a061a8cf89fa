//! Seeded random inputs.

use germlab::germ::{ExpPoly, PlGerm, RatExpr};
use germlab::Germ;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type R = ChaCha8Rng;

/// `c*j^d + e` with `c >= 1`: strictly increasing and positive from 1.
pub fn poly_code(rng: &mut R, max_deg: u32) -> ExpPoly {
    let d = rng.gen_range(1..=max_deg);
    let c = rng.gen_range(1..=4i64);
    let e = rng.gen_range(0..=6i64);
    let mut coeffs = vec![0i64; d as usize + 1];
    coeffs[0] = e;
    coeffs[d as usize] = c;
    if d >= 2 && rng.gen_bool(0.5) {
        coeffs[1] = rng.gen_range(0..=3);
    }
    ExpPoly::poly(&coeffs)
}

/// `c*b^j + e*j`.
pub fn exp_code(rng: &mut R) -> ExpPoly {
    let b = rng.gen_range(2..=3u64);
    let c = rng.gen_range(1..=3i64);
    let e = rng.gen_range(0..=3i64);
    ExpPoly::exp(b).scale(&c.into()).add(&ExpPoly::poly(&[0, e]))
}

pub fn certified_code(rng: &mut R) -> ExpPoly {
    if rng.gen_bool(0.75) {
        poly_code(rng, 3)
    } else {
        exp_code(rng)
    }
}

pub fn pl(p: ExpPoly) -> PlGerm {
    PlGerm::closed(p)
}

pub fn germ(p: ExpPoly) -> Germ {
    Germ::Pl(pl(p))
}

/// Random integer-generator expression in the index.
pub fn rat_expr(rng: &mut R, depth: u32) -> RatExpr {
    let b = Box::new;
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => RatExpr::Index,
            _ => RatExpr::Int(rng.gen_range(0..50u32).into()),
        };
    }
    match rng.gen_range(0..7) {
        0 => RatExpr::Neg(b(rat_expr(rng, depth - 1))),
        1 => RatExpr::Add(b(rat_expr(rng, depth - 1)), b(rat_expr(rng, depth - 1))),
        2 => RatExpr::Sub(b(rat_expr(rng, depth - 1)), b(rat_expr(rng, depth - 1))),
        3 => RatExpr::Mul(b(rat_expr(rng, depth - 1)), b(rat_expr(rng, depth - 1))),
        4 => RatExpr::Div(b(rat_expr(rng, depth - 1)), b(rat_expr(rng, depth - 1))),
        5 => RatExpr::Pow(b(rat_expr(rng, depth - 1)), germlab::germ::Exponent::Int(rng.gen_range(0..5))),
        _ => RatExpr::Pow(b(rat_expr(rng, depth - 1)), germlab::germ::Exponent::Index),
    }
}
