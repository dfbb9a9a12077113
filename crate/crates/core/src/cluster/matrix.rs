use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Rational};

/// An `(n+m)×n` exchange matrix: a skew-symmetrizable `n×n` principal part
/// followed by `m` frozen rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExchangeMatrix {
    n: usize,
    m: usize,
    mat: IntMatrix,
}

impl ExchangeMatrix {
    /// Validates shape and skew-symmetrizability of the top block.
    pub fn new(mat: IntMatrix) -> Result<Self> {
        let n = mat.cols();
        if n == 0 {
            return Err(Error::InvalidInput("exchange matrix needs at least one column".into()));
        }
        if mat.rows() < n {
            return Err(Error::DimensionMismatch(format!(
                "{} rows is fewer than the {n} columns",
                mat.rows()
            )));
        }
        let m = mat.rows() - n;
        let top = mat.row_block(0..n);
        if is_skew_symmetrizable(&top).is_none() {
            return Err(Error::NotSkewSymmetrizable);
        }
        Ok(ExchangeMatrix { n, m, mat })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    /// Mutable directions.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Frozen rows.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn principal_part(&self) -> IntMatrix {
        self.mat.row_block(0..self.n)
    }

    pub fn frozen_rows(&self) -> IntMatrix {
        self.mat.row_block(self.n..self.n + self.m)
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.mat[(row, col)]
    }

    /// True when the frozen block is the `n×n` identity.
    pub fn is_principal(&self) -> bool {
        self.m == self.n && self.frozen_rows() == IntMatrix::identity(self.n)
    }
}

/// Minimal positive integer skew-symmetrizer `D` (as its diagonal), if one exists.
///
/// Ratios `d_j/d_i = -B_ij/B_ji` are propagated along the graph of nonzero
/// entries; each connected component is then scaled to coprime positive integers.
pub fn is_skew_symmetrizable(b: &IntMatrix) -> Option<Vec<BigInt>> {
    let n = b.rows();
    if b.cols() != n {
        return None;
    }
    for i in 0..n {
        if !b[(i, i)].is_zero() {
            return None;
        }
        for j in 0..n {
            let (x, y) = (&b[(i, j)], &b[(j, i)]);
            if x.is_zero() != y.is_zero() || (!x.is_zero() && x.signum() == y.signum()) {
                return None;
            }
        }
    }
    let mut d: Vec<Option<Rational>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Rational::one());
        component[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("visited");
            for j in 0..n {
                if b[(i, j)].is_zero() {
                    continue;
                }
                // d_i·B_ij = -d_j·B_ji
                let dj = -(&di * Rational::from_integer(b[(i, j)].clone()))
                    / Rational::from_integer(b[(j, i)].clone());
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        component[j] = root;
                        queue.push_back(j);
                    }
                    Some(existing) if *existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(|x| x.expect("all visited")).collect();
    let mut out = vec![BigInt::zero(); n];
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&i| component[i] == root).collect();
        if members.is_empty() {
            continue;
        }
        let lcm = members.iter().fold(BigInt::one(), |l, &i| l.lcm(d[i].denom()));
        let ints: Vec<BigInt> = members
            .iter()
            .map(|&i| (&d[i] * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        for (&i, x) in members.iter().zip(ints) {
            out[i] = x / &g;
        }
    }
    Some(out)
}

fn pos(x: &BigInt) -> BigInt {
    if x.is_positive() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

fn neg(x: &BigInt) -> BigInt {
    if x.is_negative() {
        x.clone()
    } else {
        BigInt::zero()
    }
}

/// Matrix mutation in direction `k` (0-based).
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix> {
    if k >= b.n {
        return Err(Error::IndexOutOfRange { index: k, n: b.n });
    }
    let rows = b.n + b.m;
    let mut out = b.mat.clone();
    for j in 0..rows {
        for l in 0..b.n {
            out[(j, l)] = if j == k || l == k {
                -b.mat[(j, l)].clone()
            } else {
                let (jk, kl) = (&b.mat[(j, k)], &b.mat[(k, l)]);
                &b.mat[(j, l)] + pos(jk) * pos(kl) - neg(jk) * neg(kl)
            };
        }
    }
    Ok(ExchangeMatrix { n: b.n, m: b.m, mat: out })
}

/// `B` with an identity block appended below it.
pub fn principal_extension(b: &IntMatrix) -> Result<ExchangeMatrix> {
    if b.rows() != b.cols() {
        return Err(Error::DimensionMismatch("principal part must be square".into()));
    }
    ExchangeMatrix::new(b.vstack(&IntMatrix::identity(b.rows()))?)
}
