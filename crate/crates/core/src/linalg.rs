//! Dense arbitrary-precision integer matrices.
//!
//! Two independent routes compute `det(1 - zT)`:
//! [`det_poly_from_traces`] runs the Newton recursion on `Tr T^k`, while
//! [`det_poly_direct`] evaluates `det(I - xT)` at `x = 0..=dim` with
//! fraction-free (Bareiss) elimination and interpolates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, WittError};

/// Largest Kronecker product dimension accepted by [`kronecker`].
pub const DEFAULT_KRONECKER_CAP: usize = 64;

/// Square matrix with exact integer entries, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(WittError::ZeroArgument("matrix dimension"));
        }
        Ok(IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.entries[i * dim + i] = BigInt::one();
        }
        Ok(m)
    }

    /// The `dim × dim` matrix with every entry equal to one.
    pub fn all_ones(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        m.entries.iter_mut().for_each(|e| *e = BigInt::one());
        Ok(m)
    }

    /// Builds a matrix from rows; every row must have as many entries as there are rows.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(WittError::ZeroArgument("matrix dimension"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(WittError::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

/// Exact matrix product.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.dim != b.dim {
        return Err(WittError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    let n = a.dim;
    let mut out = vec![BigInt::zero(); n * n];
    for i in 0..n {
        let out_row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a.get(i, k);
            if aik.is_zero() {
                continue;
            }
            for (j, slot) in out_row.iter_mut().enumerate() {
                let bkj = b.get(k, j);
                if !bkj.is_zero() {
                    *slot += aik * bkj;
                }
            }
        }
    }
    Ok(IntMatrix { dim: n, entries: out })
}

/// `t^e` by successive multiplication; `t^0` is the identity.
pub fn mat_pow(t: &IntMatrix, e: u32) -> Result<IntMatrix> {
    let mut acc = IntMatrix::identity(t.dim)?;
    for _ in 0..e {
        acc = mat_mul(&acc, t)?;
    }
    Ok(acc)
}

/// `[Tr t^1, .., Tr t^k_max]`, keeping each power to build the next.
pub fn trace_powers(t: &IntMatrix, k_max: usize) -> Result<Vec<BigInt>> {
    if k_max == 0 {
        return Err(WittError::ZeroArgument("k_max"));
    }
    let mut out = Vec::with_capacity(k_max);
    let mut power = t.clone();
    out.push(power.trace());
    for _ in 1..k_max {
        power = mat_mul(&power, t)?;
        out.push(power.trace());
    }
    Ok(out)
}

/// Kronecker product, rejecting results wider than [`DEFAULT_KRONECKER_CAP`].
pub fn kronecker(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    kronecker_capped(a, b, DEFAULT_KRONECKER_CAP)
}

pub fn kronecker_capped(a: &IntMatrix, b: &IntMatrix, max_dim: usize) -> Result<IntMatrix> {
    let n = a.dim * b.dim;
    if n > max_dim {
        return Err(WittError::CapExceeded {
            what: "kronecker dimension",
            value: n,
            limit: max_dim,
        });
    }
    let mut out = IntMatrix::zeros(n)?;
    for ar in 0..a.dim {
        for ac in 0..a.dim {
            let x = a.get(ar, ac);
            if x.is_zero() {
                continue;
            }
            for br in 0..b.dim {
                for bc in 0..b.dim {
                    let y = b.get(br, bc);
                    if !y.is_zero() {
                        out.set(ar * b.dim + br, ac * b.dim + bc, x * y);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Coefficients `a_0..a_d` of `det(1 - zT) = Σ a_i z^i`, trailing zeros trimmed
/// (so `a_0 = 1` is always present).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetPolynomial {
    coeffs: Vec<BigInt>,
}

impl DetPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.first() != Some(&BigInt::one()) {
            return Err(WittError::Precondition(
                "determinant polynomial must have constant term 1".into(),
            ));
        }
        Ok(DetPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `c_+(i) = -a_i` for `i = 1..=order`.
    pub fn c_plus(&self, order: usize) -> Vec<BigInt> {
        (1..=order).map(|i| -self.coeff(i)).collect()
    }

    /// Coefficients padded or cut to `a_0..=a_order`.
    pub fn padded(&self, order: usize) -> Vec<BigInt> {
        (0..=order).map(|i| self.coeff(i)).collect()
    }
}

/// Newton recursion `i·a_i = -Σ_{k=1..i} Tr(T^k)·a_{i-k}`.
pub fn det_poly_from_traces(traces: &[BigInt], dim: usize) -> Result<DetPolynomial> {
    if traces.len() < dim {
        return Err(WittError::Insufficient {
            needed: dim,
            got: traces.len(),
        });
    }
    let mut a: Vec<BigInt> = Vec::with_capacity(dim + 1);
    a.push(BigInt::one());
    for i in 1..=dim {
        let s: BigInt = (1..=i).map(|k| &traces[k - 1] * &a[i - k]).sum();
        let (q, r) = (-s).div_rem(&BigInt::from(i));
        if !r.is_zero() {
            return Err(WittError::NonExactDivision(format!(
                "Newton recursion at degree {i} is not integral"
            )));
        }
        a.push(q);
    }
    DetPolynomial::new(a)
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det(m: &IntMatrix) -> BigInt {
    let n = m.dim;
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `det(1 - zT)` by evaluating `det(I - xT)` at `x = 0..=dim` and
/// interpolating through Newton forward differences.
pub fn det_poly_direct(t: &IntMatrix) -> Result<DetPolynomial> {
    let n = t.dim;
    let values: Vec<BigInt> = (0..=n)
        .map(|x| {
            let mut m = IntMatrix::identity(n).expect("dim > 0");
            for r in 0..n {
                for c in 0..n {
                    let v = m.get(r, c) - BigInt::from(x) * t.get(r, c);
                    m.set(r, c, v);
                }
            }
            bareiss_det(&m)
        })
        .collect();

    // Forward differences Δ^k v(0).
    let mut diffs = Vec::with_capacity(n + 1);
    let mut row = values;
    while !row.is_empty() {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }

    // p(x) = Σ_k Δ^k v(0) · x(x-1)..(x-k+1) / k!
    let mut poly = vec![BigRational::zero(); n + 1];
    let mut falling = vec![BigInt::one()];
    let mut k_fact = BigInt::one();
    for (k, d) in diffs.iter().enumerate() {
        if k > 0 {
            k_fact *= k;
            let shift = BigInt::from(k - 1);
            let mut next = vec![BigInt::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
        }
        for (i, c) in falling.iter().enumerate() {
            poly[i] += BigRational::new(d * c, k_fact.clone());
        }
    }
    let coeffs = poly
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(WittError::NonExactDivision(format!(
                    "interpolated coefficient {i} is {c}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    DetPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn g1_r2() -> IntMatrix {
        IntMatrix::from_rows(&[vec![1, 1, 0, 1], vec![1, 1, 1, 0], vec![0, 1, 1, 1], vec![1, 0, 1, 1]]).unwrap()
    }

    fn g2() -> IntMatrix {
        IntMatrix::from_rows(&[
            vec![0, 0, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 0, 1],
            vec![0, 0, 0, 1, 1, 0],
            vec![0, 1, 1, 0, 0, 0],
            vec![1, 0, 1, 0, 0, 0],
            vec![1, 1, 0, 0, 0, 0],
        ])
        .unwrap()
    }

    // Cofactor expansion along the first row.
    fn cofactor_det(rows: &[Vec<BigInt>]) -> BigInt {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = BigInt::zero();
        for c in 0..n {
            if rows[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(j, _)| *j != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &rows[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn identity_times_m() {
        let m = g2();
        assert_eq!(mat_mul(&IntMatrix::identity(6).unwrap(), &m).unwrap(), m);
        let a = IntMatrix::from_rows(&[vec![3]]).unwrap();
        let b = IntMatrix::from_rows(&[vec![4]]).unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap(), IntMatrix::from_rows(&[vec![12]]).unwrap());
        assert!(mat_mul(&a, &m).is_err());
    }

    #[test]
    fn g2_square_trace() {
        let t = g2();
        assert_eq!(mat_mul(&t, &t).unwrap().trace(), BigInt::from(12));
    }

    #[test]
    fn trace_power_values() {
        assert_eq!(trace_powers(&g1_r2(), 3).unwrap(), ints(&[4, 12, 28]));
        assert_eq!(trace_powers(&g2(), 4).unwrap(), ints(&[0, 12, 0, 36]));
        assert!(trace_powers(&g2(), 0).is_err());
    }

    #[test]
    fn kronecker_basics() {
        let one = IntMatrix::from_rows(&[vec![1]]).unwrap();
        assert_eq!(kronecker(&g2(), &one).unwrap(), g2());
        let two = IntMatrix::from_rows(&[vec![2]]).unwrap();
        let three = IntMatrix::from_rows(&[vec![3]]).unwrap();
        assert_eq!(
            kronecker(&two, &three).unwrap(),
            IntMatrix::from_rows(&[vec![6]]).unwrap()
        );
        let big = IntMatrix::zeros(9).unwrap();
        assert!(matches!(
            kronecker(&big, &big),
            Err(WittError::CapExceeded { value: 81, .. })
        ));
    }

    #[test]
    fn det_from_traces_reference_graphs() {
        let tr = trace_powers(&g1_r2(), 4).unwrap();
        assert_eq!(
            det_poly_from_traces(&tr, 4).unwrap().coeffs(),
            ints(&[1, -4, 2, 4, -3]).as_slice()
        );
        let tr = trace_powers(&g2(), 6).unwrap();
        assert_eq!(
            det_poly_from_traces(&tr, 6).unwrap().coeffs(),
            ints(&[1, 0, -6, 0, 9, 0, -4]).as_slice()
        );
        let z = IntMatrix::zeros(3).unwrap();
        let tr = trace_powers(&z, 3).unwrap();
        assert_eq!(det_poly_from_traces(&tr, 3).unwrap().coeffs(), ints(&[1]).as_slice());
    }

    #[test]
    fn det_from_traces_rejects_inconsistent_input() {
        assert!(matches!(
            det_poly_from_traces(&ints(&[1, 0]), 2),
            Err(WittError::NonExactDivision(_))
        ));
        assert!(det_poly_from_traces(&ints(&[1]), 2).is_err());
    }

    #[test]
    fn det_direct_small_cases() {
        assert_eq!(
            det_poly_direct(&g1_r2()).unwrap().coeffs(),
            ints(&[1, -4, 2, 4, -3]).as_slice()
        );
        let c = IntMatrix::from_rows(&[vec![7]]).unwrap();
        assert_eq!(det_poly_direct(&c).unwrap().coeffs(), ints(&[1, -7]).as_slice());
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m =
            IntMatrix::from_rows(&[vec![0, 2, -1, 3], vec![4, 0, 0, 1], vec![-2, 5, 1, 0], vec![1, 1, 1, 1]]).unwrap();
        let rows: Vec<Vec<BigInt>> = (0..4).map(|r| m.row(r).to_vec()).collect();
        assert_eq!(bareiss_det(&m), cofactor_det(&rows));
    }

    #[test]
    fn mat_pow_additive_in_exponent() {
        let t = g2();
        for (m, n) in [(0, 3), (2, 2), (3, 4), (1, 5)] {
            let lhs = mat_pow(&t, m + n).unwrap();
            let rhs = mat_mul(&mat_pow(&t, m).unwrap(), &mat_pow(&t, n).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    fn arb_01_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_dim).prop_flat_map(|d| {
            proptest::collection::vec(0i64..=1, d * d).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(d).map(|c| c.to_vec()).collect();
                IntMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    // 0/1 matrix of even dimension with the paired-inverse entries forced to zero.
    fn arb_paired_matrix(max_half: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max_half).prop_flat_map(|h| {
            let d = 2 * h;
            proptest::collection::vec(0i64..=1, d * d).prop_map(move |v| {
                let mut rows: Vec<Vec<i64>> = v.chunks(d).map(|c| c.to_vec()).collect();
                for (i, row) in rows.iter_mut().enumerate() {
                    row[(i + h) % d] = 0;
                }
                IntMatrix::from_rows(&rows).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn kronecker_trace_multiplicative(a in arb_01_matrix(3), b in arb_01_matrix(3)) {
            let k = kronecker(&a, &b).unwrap();
            let ta = trace_powers(&a, 6).unwrap();
            let tb = trace_powers(&b, 6).unwrap();
            let tk = trace_powers(&k, 6).unwrap();
            for n in 0..6 {
                prop_assert_eq!(&tk[n], &(&ta[n] * &tb[n]));
            }
        }

        #[test]
        fn determinant_routes_agree(t in arb_paired_matrix(4)) {
            let d = t.dim();
            let direct = det_poly_direct(&t).unwrap();
            let newton = det_poly_from_traces(&trace_powers(&t, d).unwrap(), d).unwrap();
            prop_assert_eq!(&direct, &newton);
            prop_assert!(direct.degree() <= d);
        }

        #[test]
        fn bareiss_agrees_with_cofactor(t in arb_01_matrix(5)) {
            let rows: Vec<Vec<BigInt>> = (0..t.dim()).map(|r| t.row(r).to_vec()).collect();
            prop_assert_eq!(bareiss_det(&t), cofactor_det(&rows));
        }
    }
}
