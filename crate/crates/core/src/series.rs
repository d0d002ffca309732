//! Truncated formal power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, WittError};

/// Selects between the two sign conventions `(1 - z^N)^{+e}` / `(1 - z^N)^{-e}`,
/// and likewise `c_+` / `c_-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `c_0 + c_1 z + .. + c_K z^K  (mod z^{K+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "TruncSeries[{}]", terms.join(", "))
    }
}

impl TruncSeries {
    /// Series of order `order`; `coeffs` is zero-padded or truncated to fit.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints<T: Into<BigInt> + Clone>(coeffs: &[T], order: usize) -> Self {
        Self::new(
            coeffs
                .iter()
                .cloned()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
            order,
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigRational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    /// Coefficients as integers, or `None` if any is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn neg(&self) -> Self {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_orders(self, other)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }
}

fn check_orders(a: &TruncSeries, b: &TruncSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(WittError::DimensionMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(())
}

/// Cauchy product truncated at the common order.
pub fn series_mul(a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries> {
    check_orders(a, b)?;
    let k = a.order();
    let mut out = vec![BigRational::zero(); k + 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=k - i].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    Ok(TruncSeries { coeffs: out })
}

/// Multiplicative inverse; requires a nonzero constant term.
pub fn series_inverse(a: &TruncSeries) -> Result<TruncSeries> {
    let c0 = &a.coeffs[0];
    if c0.is_zero() {
        return Err(WittError::Precondition(
            "series inverse needs a nonzero constant term".into(),
        ));
    }
    let k = a.order();
    let mut out: Vec<BigRational> = Vec::with_capacity(k + 1);
    out.push(c0.recip());
    for n in 1..=k {
        let s: BigRational = (1..=n).map(|i| &a.coeffs[i] * &out[n - i]).sum();
        out.push(-s / c0);
    }
    Ok(TruncSeries { coeffs: out })
}

/// `log a` for `a_0 = 1`, via `n·b_n = n·a_n - Σ_{k<n} k·b_k·a_{n-k}`.
pub fn series_log(a: &TruncSeries) -> Result<TruncSeries> {
    if !a.coeffs[0].is_one() {
        return Err(WittError::Precondition("series log needs constant term 1".into()));
    }
    let k = a.order();
    let mut b = vec![BigRational::zero(); k + 1];
    for n in 1..=k {
        let mut s = BigRational::from_integer(BigInt::from(n)) * &a.coeffs[n];
        for (j, bj) in b.iter().enumerate().take(n).skip(1) {
            s -= BigRational::from_integer(BigInt::from(j)) * bj * &a.coeffs[n - j];
        }
        b[n] = s / BigRational::from_integer(BigInt::from(n));
    }
    Ok(TruncSeries { coeffs: b })
}

/// `exp a` for `a_0 = 0`, via `n·f_n = Σ_{k=1..n} k·a_k·f_{n-k}`.
pub fn series_exp(a: &TruncSeries) -> Result<TruncSeries> {
    if !a.coeffs[0].is_zero() {
        return Err(WittError::Precondition("series exp needs constant term 0".into()));
    }
    let k = a.order();
    let mut f: Vec<BigRational> = Vec::with_capacity(k + 1);
    f.push(BigRational::one());
    for n in 1..=k {
        let s: BigRational = (1..=n)
            .map(|j| BigRational::from_integer(BigInt::from(j)) * &a.coeffs[j] * &f[n - j])
            .sum();
        f.push(s / BigRational::from_integer(BigInt::from(n)));
    }
    Ok(TruncSeries { coeffs: f })
}

/// `(1 - z^step)^e` truncated at `order`, for any integer `e`.
fn binomial_power(step: usize, e: &BigInt, order: usize) -> TruncSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    let mut b = BigInt::one();
    coeffs[0] = BigRational::one();
    let mut k = 1usize;
    while k * step <= order {
        // b_k = (-1)^k C(e, k) = -b_{k-1} (e - k + 1) / k, exact in Z.
        b = -(b * (e - BigInt::from(k - 1))) / BigInt::from(k);
        if b.is_zero() {
            break;
        }
        coeffs[k * step] = BigRational::from_integer(b.clone());
        k += 1;
    }
    TruncSeries { coeffs }
}

/// `Π_{N=1..K} (1 - z^N)^{±e_N}` truncated at `K = exponents.len()`.
pub fn product_power(exponents: &[BigInt], sign: Sign) -> Result<TruncSeries> {
    let k = exponents.len();
    if k == 0 {
        return Err(WittError::ZeroArgument("product_power order"));
    }
    let mut acc = TruncSeries::one(k);
    for (i, e) in exponents.iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let e = match sign {
            Sign::Plus => e.clone(),
            Sign::Minus => -e,
        };
        acc = series_mul(&acc, &binomial_power(i + 1, &e, k))?;
    }
    Ok(acc)
}

/// `g(z) = Σ_{N=1..K} (Tr T^N / N) z^N`.
pub fn trace_gen_function(traces: &[BigInt], order: usize) -> Result<TruncSeries> {
    if traces.len() < order {
        return Err(WittError::Insufficient {
            needed: order,
            got: traces.len(),
        });
    }
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for n in 1..=order {
        coeffs[n] = BigRational::new(traces[n - 1].clone(), BigInt::from(n));
    }
    Ok(TruncSeries { coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[i64], k: usize) -> TruncSeries {
        TruncSeries::from_ints(v, k)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn multiplication() {
        assert_eq!(series_mul(&s(&[1, 1], 4), &s(&[1, -1], 4)).unwrap(), s(&[1, 0, -1], 4));
        let f = s(&[3, 0, 5, -2], 4);
        assert_eq!(series_mul(&TruncSeries::one(4), &f).unwrap(), f);
        assert_eq!(
            series_mul(&s(&[1, 1, 1], 5), &s(&[1, 1, 1], 5)).unwrap(),
            s(&[1, 2, 3, 2, 1], 5)
        );
        assert!(series_mul(&s(&[1], 2), &s(&[1], 3)).is_err());
    }

    #[test]
    fn inverse() {
        assert_eq!(series_inverse(&s(&[1, -1], 6)).unwrap(), s(&[1; 7], 6));
        let two = series_inverse(&s(&[2], 3)).unwrap();
        assert_eq!(two.coeff(0), &q(1, 2));
        assert!(two.coeffs()[1..].iter().all(Zero::is_zero));
        assert!(series_inverse(&s(&[0, 1], 3)).is_err());
    }

    #[test]
    fn g2_zeta_coefficients() {
        let z = series_inverse(&s(&[1, 0, -6, 0, 9, 0, -4], 6)).unwrap();
        assert_eq!(
            z.to_integers().unwrap(),
            [1, 0, 6, 0, 27, 0, 112].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn log_and_exp_basics() {
        let l = series_log(&s(&[1, -1], 5)).unwrap();
        for k in 1..=5 {
            assert_eq!(l.coeff(k), &q(-1, k as i64));
        }
        assert_eq!(series_exp(&TruncSeries::zero(5)).unwrap(), TruncSeries::one(5));
        let det = s(&[1, -4, 2, 4, -3], 10);
        assert_eq!(series_exp(&series_log(&det).unwrap()).unwrap(), det);
        assert!(series_log(&s(&[2], 2)).is_err());
        assert!(series_exp(&s(&[1], 2)).is_err());
    }

    #[test]
    fn witt_identity_for_two_letters() {
        // M(N; 2) for N = 1..8, counted by hand from binary necklaces.
        let m: Vec<BigInt> = [2, 1, 2, 3, 6, 9, 18, 30].map(BigInt::from).to_vec();
        assert_eq!(product_power(&m, Sign::Plus).unwrap(), s(&[1, -2], 8));
        let inv = product_power(&m, Sign::Minus).unwrap();
        assert_eq!(
            inv.to_integers().unwrap(),
            (0..=8).map(|k| BigInt::from(1u64 << k)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn trace_generating_function() {
        let g = trace_gen_function(&[4, 12, 28].map(BigInt::from), 3).unwrap();
        assert_eq!(g.coeffs(), &[q(0, 1), q(4, 1), q(6, 1), q(28, 3)]);
        assert_eq!(
            trace_gen_function(&vec![BigInt::zero(); 4], 4).unwrap(),
            TruncSeries::zero(4)
        );
        assert!(trace_gen_function(&[BigInt::one()], 3).is_err());
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn exp_log_round_trip(tail in proptest::collection::vec(arb_rational(), 16)) {
            let mut c = vec![BigRational::zero()];
            c.extend(tail);
            let a = TruncSeries::new(c, 16);
            let e = series_exp(&a).unwrap();
            prop_assert_eq!(&series_log(&e).unwrap(), &a);
        }

        #[test]
        fn plus_and_minus_products_cancel(e in proptest::collection::vec(-20i64..20, 1..13)) {
            let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
            let k = e.len();
            let p = product_power(&e, Sign::Plus).unwrap();
            let m = product_power(&e, Sign::Minus).unwrap();
            prop_assert_eq!(series_mul(&p, &m).unwrap(), TruncSeries::one(k));
        }

        #[test]
        fn inverse_is_two_sided(tail in proptest::collection::vec(arb_rational(), 10)) {
            let mut c = vec![q(1, 1)];
            c.extend(tail);
            let a = TruncSeries::new(c, 10);
            let inv = series_inverse(&a).unwrap();
            prop_assert_eq!(series_mul(&a, &inv).unwrap(), TruncSeries::one(10));
        }
    }
}
