use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

pub fn factorial(k: u32) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `m!!` for odd `m >= -1`, with `(-1)!! = 1`.
pub fn double_factorial_odd(m: i64) -> Result<BigInt> {
    if m < -1 || m % 2 == 0 {
        return Err(Error::DoubleFactorialDomain(m));
    }
    let mut acc = BigInt::one();
    let mut i = m;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(6), BigInt::from(720));
        // iterated multiplication oracle
        let mut oracle: u64 = 1;
        for i in 1..=20u64 {
            oracle *= i;
        }
        assert_eq!(oracle, 2432902008176640000);
        assert_eq!(factorial(20), BigInt::from(oracle));
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial_odd(-1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_odd(1).unwrap(), BigInt::from(1));
        assert_eq!(double_factorial_odd(5).unwrap(), BigInt::from(15));
        let oracle: i64 = [9, 7, 5, 3, 1].iter().product();
        assert_eq!(oracle, 945);
        assert_eq!(double_factorial_odd(9).unwrap(), BigInt::from(oracle));
    }

    #[test]
    fn double_factorial_rejects_even_and_small() {
        assert_eq!(double_factorial_odd(4), Err(Error::DoubleFactorialDomain(4)));
        assert_eq!(double_factorial_odd(-3), Err(Error::DoubleFactorialDomain(-3)));
        assert!(double_factorial_odd(0).is_err());
    }

    #[test]
    fn odd_factorial_splitting() {
        for k in 0..=30u32 {
            let lhs = factorial(2 * k + 1);
            let rhs = BigInt::from(2).pow(k) * factorial(k) * double_factorial_odd(2 * k as i64 + 1).unwrap();
            assert_eq!(lhs, rhs, "k = {k}");
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(6, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(40, 20), BigInt::from(137846528820u64));
    }
}
