use std::sync::Arc;

use num_traits::{Signed, ToPrimitive};

use super::matrix::{mutate_matrix, ExchangeMatrix};
use crate::error::{Error, Result};
use crate::laurent::{variables, LaurentPoly};

/// An exchange matrix together with its extended cluster, written as Laurent
/// polynomials in the initial variables `x1..xn, y1..ym`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub matrix: ExchangeMatrix,
    pub variables: Vec<LaurentPoly>,
}

/// Names `x1..xn` for mutable and `y1..ym` for frozen initial variables.
pub fn initial_names(n: usize, m: usize) -> Arc<[String]> {
    let names: Vec<String> =
        (1..=n).map(|i| format!("x{i}")).chain((1..=m).map(|i| format!("y{i}"))).collect();
    variables(&names)
}

impl Seed {
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let vars = initial_names(matrix.n(), matrix.m());
        let variables = (0..vars.len()).map(|i| LaurentPoly::var(vars.clone(), i)).collect();
        Seed { matrix, variables }
    }

    /// The `n` mutable variables.
    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.variables[..self.matrix.n()]
    }
}

/// Seed mutation in direction `k` (0-based) using the exchange relation.
pub fn mutate_seed(seed: &Seed, k: usize) -> Result<Seed> {
    let b = &seed.matrix;
    if k >= b.n() {
        return Err(Error::IndexOutOfRange { index: k, n: b.n() });
    }
    let vars = seed.variables[0].vars().clone();
    let mut positive = LaurentPoly::one(vars.clone());
    let mut negative = LaurentPoly::one(vars);
    for (l, z) in seed.variables.iter().enumerate() {
        let e = b.entry(l, k);
        let power = e
            .abs()
            .to_u32()
            .ok_or_else(|| Error::InvalidInput(format!("exchange exponent {e} too large")))?;
        if e.is_positive() {
            positive = &positive * &z.pow(power);
        } else if e.is_negative() {
            negative = &negative * &z.pow(power);
        }
    }
    let numerator = &positive + &negative;
    let replaced = numerator.div_exact(&seed.variables[k]).ok_or_else(|| {
        Error::Invariant(format!("exchange binomial not divisible by {}", seed.variables[k]))
    })?;
    let mut variables = seed.variables.clone();
    variables[k] = replaced;
    Ok(Seed { matrix: mutate_matrix(b, k)?, variables })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::principal_extension;
    use crate::exact::IntMatrix;

    #[test]
    fn a1_single_mutation() {
        let seed = Seed::initial(principal_extension(&IntMatrix::from_i64(&[&[0]])).unwrap());
        let s1 = mutate_seed(&seed, 0).unwrap();
        assert_eq!(s1.variables[0].to_string(), "x1^-1*y1 + x1^-1");
        assert_eq!(s1.variables[1], seed.variables[1]);
        assert_eq!(mutate_seed(&s1, 0).unwrap(), seed);
    }

    #[test]
    fn frozen_variables_never_change() {
        let b = principal_extension(&IntMatrix::from_i64(&[&[0, 1], &[-1, 0]])).unwrap();
        let mut s = Seed::initial(b);
        let frozen = s.variables[2..].to_vec();
        for k in [0, 1, 0, 1, 1, 0] {
            s = mutate_seed(&s, k).unwrap();
            assert_eq!(&s.variables[2..], &frozen[..]);
        }
    }
}
