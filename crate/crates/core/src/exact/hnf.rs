use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U·M = H`. Nonzero rows of `H`
/// come first, each pivot is positive, entries below a pivot are zero and
/// entries above a pivot lie in `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let (ag, bg) = (&a / &g, &b / &g);
            combine_rows(&mut h, r, i, &x, &y, &bg, &ag);
            combine_rows(&mut u, r, i, &x, &y, &bg, &ag);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                sub_row(&mut h, i, r, &q);
                sub_row(&mut u, i, r, &q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// `row_r <- x·row_r + y·row_i`, `row_i <- -bg·row_r + ag·row_i` (determinant one).
fn combine_rows(
    m: &mut IntMatrix,
    r: usize,
    i: usize,
    x: &BigInt,
    y: &BigInt,
    bg: &BigInt,
    ag: &BigInt,
) {
    for j in 0..m.cols() {
        let vr = m[(r, j)].clone();
        let vi = m[(i, j)].clone();
        m[(r, j)] = x * &vr + y * &vi;
        m[(i, j)] = ag * &vi - bg * &vr;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for x in m.row_mut(r) {
        *x = -x.clone();
    }
}

fn sub_row(m: &mut IntMatrix, target: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let s = &m[(src, j)] * q;
        m[(target, j)] -= s;
    }
}

/// Number of nonzero rows of the Hermite form, i.e. the rank over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Integer basis of the left kernel `{x : x·M = 0}` as the rows of the result.
///
/// The basis is put in Hermite normal form so the output is canonical for
/// the kernel lattice.
pub fn left_kernel_basis(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let r = (0..h.rows()).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let kernel = u.row_block(r..m.rows());
    let (kh, _) = hermite_normal_form(&kernel);
    kh
}
