use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::GeneratorError;
use crate::bits::BitString;
use crate::dataset::{Dataset, Record, Value};

/// Binary digits of `omega` under the doubling map, with exact partial sums.
///
/// `d_1 = 0` iff `omega <= 1/2`, and `T(omega)` is `2·omega` or `2·omega - 1`
/// accordingly. The `<=` makes dyadic rationals take their non-terminating
/// expansion, which is what keeps every partial sum strictly below `omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct DyadicExpansion {
    pub omega: BigRational,
    pub digits: Vec<bool>,
    /// `partial_sums[n - 1] = Σ_{i <= n} d_i / 2^i`.
    pub partial_sums: Vec<BigRational>,
}

impl DyadicExpansion {
    pub fn digit_string(&self, n: usize) -> BitString {
        self.digits[..n].iter().copied().collect()
    }
}

pub fn dyadic_digits(omega: &BigRational, n: usize) -> Result<DyadicExpansion, GeneratorError> {
    let one = BigRational::one();
    if omega <= &BigRational::zero() || omega > &one {
        return Err(GeneratorError::OmegaOutOfRange(format!("{}/{}", omega.numer(), omega.denom())));
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let two = BigRational::from_integer(BigInt::from(2));
    let mut t = omega.clone();
    let mut weight = half.clone();
    let mut sum = BigRational::zero();
    let mut digits = Vec::with_capacity(n);
    let mut partial_sums = Vec::with_capacity(n);
    for _ in 0..n {
        let digit = t > half;
        t = &t * &two;
        if digit {
            t -= &one;
            sum += &weight;
        }
        digits.push(digit);
        partial_sums.push(sum.clone());
        weight = &weight / &two;
    }
    Ok(DyadicExpansion {
        omega: omega.clone(),
        digits,
        partial_sums,
    })
}

/// Records `x_m` = first `m` digits, `y_m` = the `m`-term partial sum.
pub fn dyadic_dataset(omega: &BigRational, n: usize) -> Result<Dataset, GeneratorError> {
    build(omega, n, |exp, m| Value::Rational(exp.partial_sums[m - 1].clone()))
}

/// Records `x_m` = first `m` digits, `y_m = omega`: the task of
/// approximating `omega` from its truncated expansions.
pub fn dyadic_target_dataset(omega: &BigRational, n: usize) -> Result<Dataset, GeneratorError> {
    build(omega, n, |exp, _| Value::Rational(exp.omega.clone()))
}

fn build(
    omega: &BigRational,
    n: usize,
    target: impl Fn(&DyadicExpansion, usize) -> Value,
) -> Result<Dataset, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::EmptyCount);
    }
    let exp = dyadic_digits(omega, n)?;
    let records = (1..=n).map(|m| Record::new(Value::Bits(exp.digit_string(m)), target(&exp, m))).collect();
    Ok(Dataset::new(records, 1)?.with_generator("dyadic", None))
}
