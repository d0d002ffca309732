//! Cycle-class counts, the identity family and the Lie dimension formulas.
//!
//! Trace sequences are 1-indexed in meaning and 0-indexed in storage:
//! `traces[k - 1] = Tr T^k`. The same holds for coefficient sequences
//! (`c[i - 1] = c(i)`) and t-sequences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, enumerate_exponent_multisets, factorial, mobius, pairs_with_lcm, tuples_with_lcm};
use crate::error::{Result, WittError};
use crate::linalg::{kronecker, mat_pow, trace_powers, IntMatrix};
use crate::series::Sign;

fn need(traces: &[BigInt], n: u64) -> Result<()> {
    if (traces.len() as u64) < n {
        return Err(WittError::Insufficient {
            needed: n as usize,
            got: traces.len(),
        });
    }
    Ok(())
}

fn trace(traces: &[BigInt], k: u64) -> &BigInt {
    &traces[(k - 1) as usize]
}

fn ratio_to_int(r: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(WittError::NonExactDivision(format!("{} = {r}", what())))
    }
}

/// `S(s, T) = Σ_{g|s} μ(g) Tr T^{s/g}`.
pub fn s_value(s: u64, traces: &[BigInt]) -> Result<BigInt> {
    need(traces, s)?;
    let mut acc = BigInt::zero();
    for g in divisors(s)? {
        match mobius(g)? {
            0 => {}
            1 => acc += trace(traces, s / g),
            _ => acc -= trace(traces, s / g),
        }
    }
    Ok(acc)
}

/// Number of rotation classes of non-periodic cycles of length `n`:
/// `(1/n) Σ_{g|n} μ(g) Tr T^{n/g}`.
pub fn omega(n: u64, traces: &[BigInt]) -> Result<BigInt> {
    let s = s_value(n, traces)?;
    let (q, r) = s.div_rem(&BigInt::from(n));
    if !r.is_zero() {
        return Err(WittError::NonExactDivision(format!(
            "Möbius sum {s} at N = {n} is not divisible by {n}"
        )));
    }
    Ok(q)
}

/// One row of an [`OmegaTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaRow {
    pub n: u64,
    pub trace: BigInt,
    pub omega: BigInt,
    pub dim_envelope: Option<BigInt>,
}

/// `Tr T^N` and `Ω(N, T)` for `N = 1..=K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    rows: Vec<OmegaRow>,
}

impl OmegaTable {
    /// Builds the table from the Möbius formula.
    pub fn from_traces(traces: &[BigInt], k: u64) -> Result<Self> {
        need(traces, k)?;
        let rows = (1..=k)
            .map(|n| {
                Ok(OmegaRow {
                    n,
                    trace: trace(traces, n).clone(),
                    omega: omega(n, traces)?,
                    dim_envelope: None,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OmegaTable { rows })
    }

    pub fn rows(&self) -> &[OmegaRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn traces(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.trace.clone()).collect()
    }

    pub fn omegas(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.omega.clone()).collect()
    }

    /// Fills `dim_envelope` from `dims[N - 1]`.
    pub fn with_envelope_dims(mut self, dims: &[BigInt]) -> Self {
        for (row, d) in self.rows.iter_mut().zip(dims) {
            row.dim_envelope = Some(d.clone());
        }
        self
    }

    /// Checks `Ω ≥ 0` and `Tr T^N = Σ_{g|N} g·Ω(g)` on every row.
    pub fn check_invariants(&self) -> Result<()> {
        for row in &self.rows {
            if row.omega.is_negative() {
                return Err(WittError::Precondition(format!("Ω({}) = {} < 0", row.n, row.omega)));
            }
            let rebuilt: BigInt = divisors(row.n)?
                .into_iter()
                .map(|g| &self.rows[(g - 1) as usize].omega * g)
                .sum();
            if rebuilt != row.trace {
                return Err(WittError::Precondition(format!(
                    "Σ g·Ω(g) = {rebuilt} differs from Tr T^{} = {}",
                    row.n, row.trace
                )));
            }
        }
        Ok(())
    }
}

/// `Ω(N)` for `N = 1..=k` from `N·Ω(N) = Tr T^N - Σ_{g|N, g<N} g·Ω(g)`.
pub fn omega_recurrence(k: u64, traces: &[BigInt]) -> Result<OmegaTable> {
    need(traces, k)?;
    let mut rows: Vec<OmegaRow> = Vec::with_capacity(k as usize);
    for n in 1..=k {
        let mut rest = trace(traces, n).clone();
        for g in divisors(n)?.into_iter().filter(|&g| g != n) {
            rest -= &rows[(g - 1) as usize].omega * g;
        }
        let (q, r) = rest.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(WittError::NonExactDivision(format!("recurrence at N = {n}")));
        }
        rows.push(OmegaRow {
            n,
            trace: trace(traces, n).clone(),
            omega: q,
            dim_envelope: None,
        });
    }
    Ok(OmegaTable { rows })
}

/// Necklace polynomial `M(N; R) = (1/N) Σ_{g|N} μ(g) R^{N/g}`.
pub fn classical_witt(n: u64, r: i64) -> Result<BigInt> {
    let r = BigInt::from(r);
    let traces: Vec<BigInt> = (1..=n).map(|k| num_traits::pow(r.clone(), k as usize)).collect();
    omega(n, &traces)
}

/// `M(N; R)` through the all-ones `R × R` matrix `Q`, using `Tr Q^k`.
pub fn classical_witt_via_matrix(n: u64, r: usize) -> Result<BigInt> {
    let q = IntMatrix::all_ones(r)?;
    omega(n, &trace_powers(&q, n as usize)?)
}

/// Which identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    /// `Σ_{[s,t]=N} S(s,T1) S(t,T2) = S(N, T1⊗T2)`
    Id7,
    /// `S(N, T^l) = Σ_{[l,t]=Nl} S(t, T)`
    Id8,
    /// `Σ_{[s_1..s_l]=N} Π S(s_i, T_i) = S(N, T_1⊗..⊗T_l)`
    Id9,
    /// `S(N, T1^s ⊗ T2^r) = Σ_{[rp,sq]=Nrs} S(p,T1) S(q,T2)`, `gcd(r,s) = 1`
    Id13,
    /// `Σ_{[s,t]=N} (s,t) Ω(s,T1) Ω(t,T2) = Ω(N, T1⊗T2)`
    Id14,
    /// `Ω(N, T^l) = Σ_{[l,t]=Nl} (t/N) Ω(t, T)`
    Id15,
    /// `(r,s) Ω(N, T1^{s/(r,s)} ⊗ T2^{r/(r,s)}) = Σ (rp,sq) Ω(p,T1) Ω(q,T2)`
    Id16,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::Id7,
        IdentityId::Id8,
        IdentityId::Id9,
        IdentityId::Id13,
        IdentityId::Id14,
        IdentityId::Id15,
        IdentityId::Id16,
    ];
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdentityId::Id7 => "ID7",
            IdentityId::Id8 => "ID8",
            IdentityId::Id9 => "ID9",
            IdentityId::Id13 => "ID13",
            IdentityId::Id14 => "ID14",
            IdentityId::Id15 => "ID15",
            IdentityId::Id16 => "ID16",
        };
        f.write_str(s)
    }
}

impl FromStr for IdentityId {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches("ID").trim_start_matches("id");
        match digits {
            "7" => Ok(IdentityId::Id7),
            "8" => Ok(IdentityId::Id8),
            "9" => Ok(IdentityId::Id9),
            "13" => Ok(IdentityId::Id13),
            "14" => Ok(IdentityId::Id14),
            "15" => Ok(IdentityId::Id15),
            "16" => Ok(IdentityId::Id16),
            _ => Err(WittError::Precondition(format!("unknown identity `{s}`"))),
        }
    }
}

/// Both sides of a checked identity plus the index set that was summed over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub n: u64,
    pub params: String,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub index_set: Vec<Vec<u64>>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Trace-level form of [`IdentityId::Id7`]; `tr12` are the traces of `T1 ⊗ T2`.
pub fn check_id7(n: u64, tr1: &[BigInt], tr2: &[BigInt], tr12: &[BigInt]) -> Result<IdentityReport> {
    let pairs = pairs_with_lcm(n)?;
    let mut lhs = BigInt::zero();
    for &(s, t) in &pairs {
        lhs += s_value(s, tr1)? * s_value(t, tr2)?;
    }
    Ok(IdentityReport {
        id: IdentityId::Id7,
        n,
        params: String::new(),
        lhs: int(lhs),
        rhs: int(s_value(n, tr12)?),
        index_set: pairs.into_iter().map(|(s, t)| vec![s, t]).collect(),
    })
}

/// `t` ranging over divisors of `n·l` with `lcm(l, t) = n·l`.
fn lcm_partners(n: u64, l: u64) -> Result<Vec<u64>> {
    Ok(divisors(n * l)?.into_iter().filter(|t| l.lcm(t) == n * l).collect())
}

/// Trace-level form of [`IdentityId::Id8`]; `tr_pow` are the traces of `T^l`.
pub fn check_id8(n: u64, l: u64, tr: &[BigInt], tr_pow: &[BigInt]) -> Result<IdentityReport> {
    let ts = lcm_partners(n, l)?;
    let mut rhs = BigInt::zero();
    for &t in &ts {
        rhs += s_value(t, tr)?;
    }
    Ok(IdentityReport {
        id: IdentityId::Id8,
        n,
        params: format!("l={l}"),
        lhs: int(s_value(n, tr_pow)?),
        rhs: int(rhs),
        index_set: ts.into_iter().map(|t| vec![t]).collect(),
    })
}

/// Trace-level form of [`IdentityId::Id9`]; `tr_all` are the traces of the
/// full Kronecker product of the factors whose traces are in `trs`.
pub fn check_id9(n: u64, trs: &[&[BigInt]], tr_all: &[BigInt]) -> Result<IdentityReport> {
    let tuples = tuples_with_lcm(n, trs.len())?;
    let mut lhs = BigInt::zero();
    for tuple in &tuples {
        let mut term = BigInt::one();
        for (&s, tr) in tuple.iter().zip(trs) {
            term *= s_value(s, tr)?;
        }
        lhs += term;
    }
    Ok(IdentityReport {
        id: IdentityId::Id9,
        n,
        params: format!("l={}", trs.len()),
        lhs: int(lhs),
        rhs: int(s_value(n, tr_all)?),
        index_set: tuples,
    })
}

/// Trace-level form of [`IdentityId::Id13`]; `tr_kron` are the traces of
/// `T1^s ⊗ T2^r`.
pub fn check_id13(
    n: u64,
    r: u64,
    s: u64,
    tr1: &[BigInt],
    tr2: &[BigInt],
    tr_kron: &[BigInt],
) -> Result<IdentityReport> {
    if r == 0 || s == 0 {
        return Err(WittError::ZeroArgument("r, s"));
    }
    if r.gcd(&s) != 1 {
        return Err(WittError::Precondition(format!("r = {r} and s = {s} are not coprime")));
    }
    let target = n * r * s;
    let mut index_set = Vec::new();
    let mut rhs = BigInt::zero();
    for p in divisors(n * s)? {
        for q in divisors(n * r)? {
            if (r * p).lcm(&(s * q)) == target {
                rhs += s_value(p, tr1)? * s_value(q, tr2)?;
                index_set.push(vec![p, q]);
            }
        }
    }
    Ok(IdentityReport {
        id: IdentityId::Id13,
        n,
        params: format!("r={r},s={s}"),
        lhs: int(s_value(n, tr_kron)?),
        rhs: int(rhs),
        index_set,
    })
}

/// Trace-level form of [`IdentityId::Id14`].
pub fn check_id14(n: u64, tr1: &[BigInt], tr2: &[BigInt], tr12: &[BigInt]) -> Result<IdentityReport> {
    let pairs = pairs_with_lcm(n)?;
    let mut lhs = BigInt::zero();
    for &(s, t) in &pairs {
        lhs += omega(s, tr1)? * omega(t, tr2)? * s.gcd(&t);
    }
    Ok(IdentityReport {
        id: IdentityId::Id14,
        n,
        params: String::new(),
        lhs: int(lhs),
        rhs: int(omega(n, tr12)?),
        index_set: pairs.into_iter().map(|(s, t)| vec![s, t]).collect(),
    })
}

/// Trace-level form of [`IdentityId::Id15`]; `tr_pow` are the traces of `T^l`.
pub fn check_id15(n: u64, l: u64, tr: &[BigInt], tr_pow: &[BigInt]) -> Result<IdentityReport> {
    let ts = lcm_partners(n, l)?;
    let mut rhs = BigRational::zero();
    for &t in &ts {
        rhs += BigRational::new(omega(t, tr)? * t, BigInt::from(n));
    }
    Ok(IdentityReport {
        id: IdentityId::Id15,
        n,
        params: format!("l={l}"),
        lhs: int(omega(n, tr_pow)?),
        rhs,
        index_set: ts.into_iter().map(|t| vec![t]).collect(),
    })
}

/// Trace-level form of [`IdentityId::Id16`]; `tr_kron` are the traces of
/// `T1^{s/(r,s)} ⊗ T2^{r/(r,s)}`.
pub fn check_id16(
    n: u64,
    r: u64,
    s: u64,
    tr1: &[BigInt],
    tr2: &[BigInt],
    tr_kron: &[BigInt],
) -> Result<IdentityReport> {
    if r == 0 || s == 0 {
        return Err(WittError::ZeroArgument("r, s"));
    }
    let d = r.gcd(&s);
    // p q / (rp, sq) = N / (r, s), written without division.
    let bound = n * r.max(s);
    let mut index_set = Vec::new();
    let mut rhs = BigInt::zero();
    for p in 1..=bound {
        for q in 1..=bound {
            let g = (r * p).gcd(&(s * q));
            if p * q * d == n * g {
                rhs += omega(p, tr1)? * omega(q, tr2)? * g;
                index_set.push(vec![p, q]);
            }
        }
    }
    Ok(IdentityReport {
        id: IdentityId::Id16,
        n,
        params: format!("r={r},s={s}"),
        lhs: int(omega(n, tr_kron)? * d),
        rhs: int(rhs),
        index_set,
    })
}

/// Matrix-level parameters for [`verify_identity`].
#[derive(Debug, Clone, Copy)]
pub enum IdentityCase<'a> {
    Id7 {
        n: u64,
        t1: &'a IntMatrix,
        t2: &'a IntMatrix,
    },
    Id8 {
        n: u64,
        l: u32,
        t: &'a IntMatrix,
    },
    Id9 {
        n: u64,
        factors: &'a [&'a IntMatrix],
    },
    Id13 {
        n: u64,
        r: u32,
        s: u32,
        t1: &'a IntMatrix,
        t2: &'a IntMatrix,
    },
    Id14 {
        n: u64,
        t1: &'a IntMatrix,
        t2: &'a IntMatrix,
    },
    Id15 {
        n: u64,
        l: u32,
        t: &'a IntMatrix,
    },
    Id16 {
        n: u64,
        r: u32,
        s: u32,
        t1: &'a IntMatrix,
        t2: &'a IntMatrix,
    },
}

impl IdentityCase<'_> {
    pub fn id(&self) -> IdentityId {
        match self {
            IdentityCase::Id7 { .. } => IdentityId::Id7,
            IdentityCase::Id8 { .. } => IdentityId::Id8,
            IdentityCase::Id9 { .. } => IdentityId::Id9,
            IdentityCase::Id13 { .. } => IdentityId::Id13,
            IdentityCase::Id14 { .. } => IdentityId::Id14,
            IdentityCase::Id15 { .. } => IdentityId::Id15,
            IdentityCase::Id16 { .. } => IdentityId::Id16,
        }
    }
}

fn traces(t: &IntMatrix, k: u64) -> Result<Vec<BigInt>> {
    trace_powers(t, k as usize)
}

/// Evaluates both sides of an identity from the given matrices. Kronecker
/// products are formed explicitly, so the right-hand sides never reuse the
/// factor traces.
pub fn verify_identity(case: IdentityCase<'_>) -> Result<IdentityReport> {
    match case {
        IdentityCase::Id7 { n, t1, t2 } | IdentityCase::Id14 { n, t1, t2 } => {
            let k = kronecker(t1, t2)?;
            let (a, b, c) = (traces(t1, n)?, traces(t2, n)?, traces(&k, n)?);
            if case.id() == IdentityId::Id7 {
                check_id7(n, &a, &b, &c)
            } else {
                check_id14(n, &a, &b, &c)
            }
        }
        IdentityCase::Id8 { n, l, t } | IdentityCase::Id15 { n, l, t } => {
            if l == 0 {
                return Err(WittError::ZeroArgument("l"));
            }
            let tl = mat_pow(t, l)?;
            let (a, b) = (traces(t, n * l as u64)?, traces(&tl, n)?);
            if case.id() == IdentityId::Id8 {
                check_id8(n, l as u64, &a, &b)
            } else {
                check_id15(n, l as u64, &a, &b)
            }
        }
        IdentityCase::Id9 { n, factors } => {
            let (first, rest) = factors.split_first().ok_or(WittError::ZeroArgument("factor count"))?;
            let mut full = (*first).clone();
            for f in rest {
                full = kronecker(&full, f)?;
            }
            let trs = factors.iter().map(|f| traces(f, n)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&[BigInt]> = trs.iter().map(Vec::as_slice).collect();
            check_id9(n, &refs, &traces(&full, n)?)
        }
        IdentityCase::Id13 { n, r, s, t1, t2 } => {
            if r == 0 || s == 0 {
                return Err(WittError::ZeroArgument("r, s"));
            }
            if (r as u64).gcd(&(s as u64)) != 1 {
                return Err(WittError::Precondition(format!("r = {r} and s = {s} are not coprime")));
            }
            let k = kronecker(&mat_pow(t1, s)?, &mat_pow(t2, r)?)?;
            let a = traces(t1, n * s as u64)?;
            let b = traces(t2, n * r as u64)?;
            check_id13(n, r as u64, s as u64, &a, &b, &traces(&k, n)?)
        }
        IdentityCase::Id16 { n, r, s, t1, t2 } => {
            if r == 0 || s == 0 {
                return Err(WittError::ZeroArgument("r, s"));
            }
            let d = r.gcd(&s);
            let k = kronecker(&mat_pow(t1, s / d)?, &mat_pow(t2, r / d)?)?;
            let bound = n * r.max(s) as u64;
            let a = traces(t1, bound)?;
            let b = traces(t2, bound)?;
            check_id16(n, r as u64, s as u64, &a, &b, &traces(&k, n)?)
        }
    }
}

/// `c_±(i)` for `i = 1..=order` by the partition sum
/// `Σ_m λ_±(m) Σ_{Σ k a_k = i, Σ a_k = m} Π (Tr T^k)^{a_k} / (a_k! k^{a_k})`,
/// with `λ_+(m) = (-1)^{m+1}` and `λ_-(m) = 1`.
pub fn coefficients_from_traces(traces: &[BigInt], sign: Sign, order: u64) -> Result<Vec<BigInt>> {
    need(traces, order)?;
    let mut out = Vec::with_capacity(order as usize);
    for i in 1..=order {
        let mut acc = BigRational::zero();
        for a in enumerate_exponent_multisets(i, i)? {
            let m = a.size();
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for &(k, ak) in a.pairs() {
                num *= num_traits::pow(trace(traces, k).clone(), ak as usize);
                den *= factorial(ak) * num_traits::pow(BigInt::from(k), ak as usize);
            }
            let term = BigRational::new(num, den);
            if sign == Sign::Plus && m % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(ratio_to_int(acc, || format!("c({i})"))?);
    }
    Ok(out)
}

/// `Tr T^N` for `N = 1..=k_max` from `c_±` by
/// `N Σ_{Σ i s_i = N} (±1)^{|s|+1} ((|s|-1)!/s!) Π c(i)^{s_i}`.
/// Entries of `c` beyond its length are zero.
pub fn traces_from_coefficients(c: &[BigInt], sign: Sign, k_max: u64) -> Result<Vec<BigInt>> {
    let support = c.len() as u64;
    let mut out = Vec::with_capacity(k_max as usize);
    for n in 1..=k_max {
        if support == 0 {
            out.push(BigInt::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for s in enumerate_exponent_multisets(n, n.min(support))? {
            let size = s.size();
            let mut num = factorial(size - 1);
            for &(i, si) in s.pairs() {
                num *= num_traits::pow(c[(i - 1) as usize].clone(), si as usize);
            }
            let term = BigRational::new(num, s.factorial());
            if sign == Sign::Minus && size % 2 == 0 {
                acc -= term;
            } else {
                acc += term;
            }
        }
        out.push(ratio_to_int(acc * BigInt::from(n), || format!("Tr T^{n}"))?);
    }
    Ok(out)
}

/// Superdimensions `t(1), t(2), ..` of graded generators, finitely supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TSequence {
    t: Vec<BigInt>,
}

impl TSequence {
    /// `values[i - 1] = t(i)`; trailing zeros are dropped.
    pub fn new(mut values: Vec<BigInt>) -> Self {
        while values.last().is_some_and(Zero::is_zero) {
            values.pop();
        }
        TSequence { t: values }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Largest `i` with `t(i) ≠ 0` (0 for the zero sequence).
    pub fn support(&self) -> u64 {
        self.t.len() as u64
    }

    pub fn get(&self, i: u64) -> BigInt {
        self.t.get((i - 1) as usize).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.t
    }
}

/// Witt partition function `W(N) = Σ_{Σ i s_i = N} ((|s|-1)!/s!) Π t(i)^{s_i}`.
pub fn witt_partition(t: &TSequence, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(WittError::ZeroArgument("N"));
    }
    if t.support() == 0 {
        return Ok(BigRational::zero());
    }
    let mut acc = BigRational::zero();
    for s in enumerate_exponent_multisets(n, n.min(t.support()))? {
        let mut num = factorial(s.size() - 1);
        for &(i, si) in s.pairs() {
            num *= num_traits::pow(t.get(i), si as usize);
        }
        acc += BigRational::new(num, s.factorial());
    }
    Ok(acc)
}

/// `Dim L_N = Σ_{g|N} (μ(g)/g) W(N/g)`; errors unless the result is integral.
pub fn generalized_witt_dim(t: &TSequence, n: u64) -> Result<BigInt> {
    let mut acc = BigRational::zero();
    for g in divisors(n)? {
        let mu = mobius(g)?;
        if mu == 0 {
            continue;
        }
        acc += witt_partition(t, n / g)? * BigRational::new(BigInt::from(mu), BigInt::from(g));
    }
    ratio_to_int(acc, || format!("Dim L_{n}"))
}

/// Coefficients of `z^1..z^order` in `(1 - Σ t(i) z^i)^{-1}`.
pub fn envelope_dims(t: &TSequence, order: u64) -> Result<Vec<BigInt>> {
    if order == 0 {
        return Err(WittError::ZeroArgument("order"));
    }
    let mut b: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=order {
        let upper = n.min(t.support());
        let v: BigInt = (1..=upper).map(|i| t.get(i) * &b[(n - i) as usize]).sum();
        b.push(v);
    }
    b.remove(0);
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{build_edge_matrix, symmetrize};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn edge_matrix(g: &crate::graph::OrientedGraph) -> IntMatrix {
        build_edge_matrix(&symmetrize(g)).into_matrix()
    }

    fn g1_traces(r: i64, k: u32) -> Vec<BigInt> {
        (1..=k)
            .map(|n| {
                let sign = if n % 2 == 0 { 1 } else { -1 };
                BigInt::from(1 + (r - 1) * (1 + sign)) + num_traits::pow(BigInt::from(2 * r - 1), n as usize)
            })
            .collect()
    }

    fn g2_traces(k: u32) -> Vec<BigInt> {
        (1..=k)
            .map(|n| {
                if n % 2 == 1 {
                    BigInt::zero()
                } else {
                    BigInt::from(4) + (BigInt::from(2) << n as usize)
                }
            })
            .collect()
    }

    #[test]
    fn omega_reference_values() {
        assert_eq!(omega(3, &g1_traces(3, 3)).unwrap(), BigInt::from(40));
        let tr = g2_traces(12);
        assert_eq!(omega(2, &tr).unwrap(), BigInt::from(6));
        assert_eq!(omega(4, &tr).unwrap(), BigInt::from(6));
        for n in (1..=11).step_by(2) {
            assert!(omega(n, &tr).unwrap().is_zero());
        }
        assert_eq!(omega(1, &ints(&[17])).unwrap(), BigInt::from(17));
    }

    #[test]
    fn omega_rejects_corrupted_traces() {
        assert!(matches!(omega(2, &ints(&[4, 13])), Err(WittError::NonExactDivision(_))));
        assert!(matches!(omega(3, &ints(&[4])), Err(WittError::Insufficient { .. })));
    }

    #[test]
    fn recurrence_matches_formula() {
        let t = omega_recurrence(3, &ints(&[4, 12, 28])).unwrap();
        assert_eq!(t.omegas(), ints(&[4, 4, 8]));
        assert_eq!(
            omega_recurrence(4, &g2_traces(4)).unwrap().omegas(),
            ints(&[0, 6, 0, 6])
        );
        assert_eq!(omega_recurrence(1, &ints(&[9])).unwrap().omegas(), ints(&[9]));
        for (_, g) in corpus::all() {
            let tr = trace_powers(&edge_matrix(&g), 24).unwrap();
            let a = omega_recurrence(24, &tr).unwrap();
            let b = OmegaTable::from_traces(&tr, 24).unwrap();
            assert_eq!(a, b);
            b.check_invariants().unwrap();
        }
    }

    #[test]
    fn classical_values() {
        assert_eq!(classical_witt(1, 7).unwrap(), BigInt::from(7));
        assert_eq!(classical_witt(6, 2).unwrap(), BigInt::from(9));
        assert_eq!(classical_witt(2, 2).unwrap(), BigInt::from(1));
        for r in 1..=4 {
            for n in 1..=12 {
                assert_eq!(
                    classical_witt(n, r as i64).unwrap(),
                    classical_witt_via_matrix(n, r).unwrap()
                );
            }
        }
    }

    #[test]
    fn s_values() {
        let tr = g1_traces(3, 3);
        assert_eq!(s_value(1, &tr).unwrap(), tr[0]);
        assert_eq!(s_value(3, &tr).unwrap(), BigInt::from(120));
        let ones = vec![BigInt::one(); 10];
        for n in 2..=10 {
            assert!(s_value(n, &ones).unwrap().is_zero());
        }
    }

    #[test]
    fn identity_ids_parse() {
        for id in IdentityId::ALL {
            assert_eq!(id.to_string().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!("13".parse::<IdentityId>().unwrap(), IdentityId::Id13);
        assert!("ID10".parse::<IdentityId>().is_err());
    }

    #[test]
    fn id7_trivial_cases() {
        let one = IntMatrix::from_rows(&[vec![1]]).unwrap();
        for n in 1..=6 {
            let rep = verify_identity(IdentityCase::Id7 { n, t1: &one, t2: &one }).unwrap();
            assert!(rep.holds());
            let expected = if n == 1 { 1 } else { 0 };
            assert_eq!(rep.lhs, int(BigInt::from(expected)));
        }
        let g2 = edge_matrix(&corpus::g2());
        for n in 1..=8 {
            let rep = verify_identity(IdentityCase::Id7 { n, t1: &g2, t2: &one }).unwrap();
            assert!(rep.holds());
            assert_eq!(rep.rhs, int(s_value(n, &g2_traces(n as u32)).unwrap()));
        }
    }

    #[test]
    fn id14_and_id15_on_reference_graphs() {
        let g1 = edge_matrix(&corpus::g1(2));
        let g2 = edge_matrix(&corpus::g2());
        for n in 1..=8 {
            let rep = verify_identity(IdentityCase::Id14 { n, t1: &g1, t2: &g2 }).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
        for n in 1..=6 {
            let rep = verify_identity(IdentityCase::Id15 { n, l: 2, t: &g1 }).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
    }

    #[test]
    fn id13_requires_coprime() {
        let g1 = edge_matrix(&corpus::g1(2));
        let err = verify_identity(IdentityCase::Id13 {
            n: 2,
            r: 2,
            s: 4,
            t1: &g1,
            t2: &g1,
        });
        assert!(matches!(err, Err(WittError::Precondition(_))));
    }

    #[test]
    fn id16_with_common_factor() {
        let g1 = edge_matrix(&corpus::g1(2));
        let q2 = IntMatrix::all_ones(2).unwrap();
        for n in 1..=4 {
            let rep = verify_identity(IdentityCase::Id16 {
                n,
                r: 2,
                s: 4,
                t1: &g1,
                t2: &q2,
            })
            .unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
    }

    #[test]
    fn id7_detects_perturbed_trace() {
        let a = g1_traces(2, 6);
        let b = g2_traces(6);
        let ab: Vec<BigInt> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        assert!(check_id7(6, &a, &b, &ab).unwrap().holds());
        let mut bad = a.clone();
        bad[1] += 1;
        assert!(!check_id7(6, &bad, &b, &ab).unwrap().holds());
    }

    #[test]
    fn coefficient_formulas() {
        let c = coefficients_from_traces(&g1_traces(2, 8), Sign::Plus, 8).unwrap();
        assert_eq!(c, ints(&[4, -2, -4, 3, 0, 0, 0, 0]));
        let c = coefficients_from_traces(&g2_traces(6), Sign::Plus, 6).unwrap();
        assert_eq!(c, ints(&[0, 6, 0, -9, 0, 4]));
        let c = coefficients_from_traces(&g2_traces(2), Sign::Minus, 2).unwrap();
        assert_eq!(c[1], BigInt::from(6));
    }

    #[test]
    fn trace_recovery() {
        let tr = traces_from_coefficients(&ints(&[4, -2, -4, 3]), Sign::Plus, 2).unwrap();
        assert_eq!(tr, ints(&[4, 12]));
        let tr = traces_from_coefficients(&ints(&[0, 6, 0, -9, 0, 4]), Sign::Plus, 3).unwrap();
        assert!(tr[2].is_zero());
        let tr = traces_from_coefficients(&ints(&[5]), Sign::Plus, 6).unwrap();
        assert_eq!(
            tr,
            (1..=6).map(|n| num_traits::pow(BigInt::from(5), n)).collect::<Vec<_>>()
        );
        assert_eq!(traces_from_coefficients(&[], Sign::Minus, 3).unwrap(), ints(&[0, 0, 0]));
    }

    #[test]
    fn witt_partition_values() {
        let t = TSequence::from_ints(&[4, -2, -4, 3]);
        assert_eq!(witt_partition(&t, 1).unwrap(), int(BigInt::from(4)));
        assert_eq!(witt_partition(&t, 2).unwrap(), int(BigInt::from(6)));
        assert_eq!(generalized_witt_dim(&t, 2).unwrap(), BigInt::from(4));
        let r3 = TSequence::from_ints(&[3]);
        for n in 1..=6u64 {
            assert_eq!(
                witt_partition(&r3, n).unwrap(),
                BigRational::new(num_traits::pow(BigInt::from(3), n as usize), BigInt::from(n))
            );
        }
        let zero = TSequence::from_ints(&[0, 0]);
        assert!(witt_partition(&zero, 4).unwrap().is_zero());
        assert!(witt_partition(&zero, 0).is_err());
    }

    #[test]
    fn generalized_dims() {
        let t = TSequence::from_ints(&[4, -2, -4, 3]);
        let tr = g1_traces(2, 8);
        for n in 1..=8 {
            assert_eq!(generalized_witt_dim(&t, n).unwrap(), omega(n, &tr).unwrap());
        }
        let two = TSequence::from_ints(&[2]);
        for n in 1..=8 {
            assert_eq!(generalized_witt_dim(&two, n).unwrap(), classical_witt(n, 2).unwrap());
        }
        let g2 = TSequence::from_ints(&[0, 6, 0, -9, 0, 4]);
        assert!(generalized_witt_dim(&g2, 3).unwrap().is_zero());
    }

    #[test]
    fn envelope_values() {
        let t = TSequence::from_ints(&[4, -2, -4, 3]);
        assert_eq!(envelope_dims(&t, 3).unwrap(), ints(&[4, 14, 44]));
        let g2 = TSequence::from_ints(&[0, 6, 0, -9, 0, 4]);
        let dims = envelope_dims(&g2, 12).unwrap();
        for n in 1..=6i64 {
            let closed = (num_traits::pow(BigInt::from(2), (2 * n + 5) as usize) - 6 * n - 14) / 18;
            assert_eq!(dims[(2 * n - 1) as usize], closed);
            assert!(dims[(2 * n - 2) as usize].is_zero());
        }
        assert_eq!(envelope_dims(&TSequence::from_ints(&[1]), 5).unwrap(), ints(&[1; 5]));
    }
}
