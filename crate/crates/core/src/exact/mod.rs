//! Exact integer and rational linear algebra.

mod hnf;
mod matrix;
mod solve;

pub use hnf::{hermite_normal_form, left_kernel_basis, rank};
pub use matrix::{int_vec, rat, rat_vec, IntMatrix, Matrix, RatMatrix, RatVector, Rational};
pub use solve::{rational_rank, rref, solve_affine, AffineSolution};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Divides an integer vector by the gcd of its entries. Orientation is kept.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive_from_rational(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    primitive(&ints)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
