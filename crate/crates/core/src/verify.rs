//! Verification suite: series identities per graph and the Kronecker/power
//! identity family over a parameter grid.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::graph::{build_edge_matrix, symmetrize, OrientedGraph};
use crate::linalg::{det_poly_direct, det_poly_from_traces, kronecker_capped, mat_pow, trace_powers, IntMatrix};
use crate::series::{product_power, series_exp, series_inverse, trace_gen_function, Sign, TruncSeries};
use crate::witt::{
    check_id13, check_id14, check_id15, check_id16, check_id7, check_id8, check_id9, coefficients_from_traces,
    envelope_dims, generalized_witt_dim, omega_recurrence, traces_from_coefficients, IdentityId, IdentityReport,
    OmegaTable, TSequence,
};

/// Parameter ranges for the identity family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityGrid {
    pub n_max: u64,
    pub l_max: u32,
    pub rs_pairs: Vec<(u32, u32)>,
    pub id9_arity: usize,
    pub kron_cap: usize,
}

impl Default for IdentityGrid {
    fn default() -> Self {
        IdentityGrid {
            n_max: 8,
            l_max: 3,
            rs_pairs: vec![(1, 2), (2, 3), (3, 4)],
            id9_arity: 3,
            kron_cap: 64,
        }
    }
}

/// Adds `delta` to `Tr T^n` of input graph `graph` before any check runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Perturbation {
    pub graph: usize,
    pub n: u64,
    pub delta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub order: u64,
    pub identities: Vec<IdentityId>,
    pub series_checks: bool,
    /// Adds `[[1]]` and the all-ones 2×2 matrix to the identity operands.
    pub auxiliary_matrices: bool,
    pub grid: IdentityGrid,
    pub perturb: Option<Perturbation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            order: 12,
            identities: IdentityId::ALL.to_vec(),
            series_checks: true,
            auxiliary_matrices: true,
            grid: IdentityGrid::default(),
            perturb: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub subject: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub params: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Operand {
    name: String,
    matrix: IntMatrix,
    traces: Vec<BigInt>,
}

fn joined(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn series_ints(s: &TruncSeries) -> Result<Vec<BigInt>> {
    s.to_integers()
        .ok_or_else(|| WittError::NonExactDivision(format!("non-integral series {s:?}")))
}

fn equal_check(check: &str, subject: &str, lhs: &[BigInt], rhs: &[BigInt]) -> CheckResult {
    CheckResult {
        check: check.to_string(),
        subject: subject.to_string(),
        n: None,
        params: String::new(),
        passed: lhs == rhs,
        lhs: Some(joined(lhs)),
        rhs: Some(joined(rhs)),
        detail: None,
    }
}

fn error_check(check: &str, subject: &str, n: Option<u64>, params: String, err: &WittError) -> CheckResult {
    CheckResult {
        check: check.to_string(),
        subject: subject.to_string(),
        n,
        params,
        passed: false,
        lhs: None,
        rhs: None,
        detail: Some(err.to_string()),
    }
}

fn identity_check(subject: &str, rep: Result<IdentityReport>, n: u64, id: IdentityId, params: String) -> CheckResult {
    match rep {
        Ok(rep) => {
            let params = if rep.params.is_empty() {
                params
            } else if params.is_empty() {
                rep.params.clone()
            } else {
                format!("{},{}", rep.params, params)
            };
            CheckResult {
                check: id.to_string(),
                subject: subject.to_string(),
                n: Some(n),
                params,
                passed: rep.holds(),
                lhs: Some(rep.lhs.to_string()),
                rhs: Some(rep.rhs.to_string()),
                detail: None,
            }
        }
        Err(e) => error_check(&id.to_string(), subject, Some(n), params, &e),
    }
}

/// Series-level checks for one graph, using `traces` (possibly perturbed) and
/// the determinant computed directly from `t`.
fn series_checks(name: &str, t: &IntMatrix, traces: &[BigInt], order: u64) -> Vec<CheckResult> {
    let k = order as usize;
    let dim = t.dim();
    let mut out = Vec::new();
    let mut push = |check: &str, r: Result<CheckResult>| {
        out.push(r.unwrap_or_else(|e| error_check(check, name, None, String::new(), &e)));
    };

    let det = match det_poly_direct(t) {
        Ok(d) => d,
        Err(e) => {
            push("det_routes", Err(e));
            return out;
        }
    };
    let det_k = det.padded(k);
    let zeta = series_inverse(&TruncSeries::from_ints(det.coeffs(), k)).and_then(|z| series_ints(&z));

    push(
        "det_routes",
        det_poly_from_traces(traces, dim).map(|d| equal_check("det_routes", name, det.coeffs(), d.coeffs())),
    );
    push(
        "omega_table",
        (|| {
            let table = OmegaTable::from_traces(traces, order)?;
            table.check_invariants()?;
            let rec = omega_recurrence(order, traces)?;
            Ok(equal_check("omega_table", name, &table.omegas(), &rec.omegas()))
        })(),
    );
    let omegas = OmegaTable::from_traces(traces, order).map(|t| t.omegas());
    push(
        "witt_identity",
        omegas
            .clone()
            .and_then(|om| series_ints(&product_power(&om, Sign::Plus)?))
            .map(|p| equal_check("witt_identity", name, &p, &det_k)),
    );
    push(
        "zeta_product",
        (|| {
            let p = series_ints(&product_power(&omegas.clone()?, Sign::Minus)?)?;
            Ok(equal_check(
                "zeta_product",
                name,
                &p,
                zeta.as_ref().map_err(Clone::clone)?,
            ))
        })(),
    );
    push(
        "exp_trace_series",
        (|| {
            let g = trace_gen_function(traces, k)?;
            let minus = series_ints(&series_exp(&g.neg())?)?;
            let plus = series_ints(&series_exp(&g)?)?;
            let zeta = zeta.as_ref().map_err(Clone::clone)?;
            let mut c = equal_check(
                "exp_trace_series",
                name,
                &[minus, plus].concat(),
                &[det_k.clone(), zeta.clone()].concat(),
            );
            c.params = "exp(-g)=det, exp(g)=zeta".into();
            Ok(c)
        })(),
    );
    push(
        "zeta_coefficients",
        (|| {
            let zeta = zeta.as_ref().map_err(Clone::clone)?;
            let c_minus = coefficients_from_traces(traces, Sign::Minus, order)?;
            let mut c = equal_check("zeta_coefficients", name, &c_minus, &zeta[1..]);
            if c_minus.iter().any(Signed::is_negative) {
                c.passed = false;
                c.detail = Some("negative c_- coefficient".into());
            }
            Ok(c)
        })(),
    );
    push(
        "det_coefficients",
        coefficients_from_traces(traces, Sign::Plus, order)
            .map(|c| equal_check("det_coefficients", name, &c, &det.c_plus(k))),
    );
    for sign in [Sign::Plus, Sign::Minus] {
        let label = if sign == Sign::Plus {
            "trace_roundtrip_plus"
        } else {
            "trace_roundtrip_minus"
        };
        push(
            label,
            (|| {
                let c = coefficients_from_traces(traces, sign, order)?;
                let back = traces_from_coefficients(&c, sign, order)?;
                Ok(equal_check(label, name, &back, &traces[..k]))
            })(),
        );
    }
    let t_seq = TSequence::new(det.c_plus(dim));
    push(
        "generalized_witt",
        (|| {
            let dims = (1..=order)
                .map(|n| generalized_witt_dim(&t_seq, n))
                .collect::<Result<Vec<_>>>()?;
            Ok(equal_check("generalized_witt", name, &dims, &omegas.clone()?))
        })(),
    );
    push(
        "envelope_dims",
        (|| {
            let dims = envelope_dims(&t_seq, order)?;
            Ok(equal_check(
                "envelope_dims",
                name,
                &dims,
                &zeta.as_ref().map_err(Clone::clone)?[1..],
            ))
        })(),
    );
    out
}

/// Runs the suite over `graphs` (name, graph).
pub fn run_verification(graphs: &[(String, OrientedGraph)], opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.order == 0 {
        return Err(WittError::ZeroArgument("order"));
    }
    let grid = &opts.grid;
    let max_factor = grid
        .rs_pairs
        .iter()
        .flat_map(|&(r, s)| [r, s])
        .chain([grid.l_max, 1])
        .max()
        .unwrap_or(1) as u64;
    let base_len = (grid.n_max * max_factor).max(opts.order) as usize;

    let mut operands = Vec::new();
    for (i, (name, g)) in graphs.iter().enumerate() {
        let matrix = build_edge_matrix(&symmetrize(g)).into_matrix();
        let mut traces = trace_powers(&matrix, base_len.max(matrix.dim()))?;
        if let Some(p) = opts.perturb.filter(|p| p.graph == i) {
            if p.n == 0 || p.n as usize > traces.len() {
                return Err(WittError::Precondition(format!(
                    "perturbation index {} out of range",
                    p.n
                )));
            }
            traces[(p.n - 1) as usize] += p.delta;
        }
        operands.push(Operand {
            name: name.clone(),
            matrix,
            traces,
        });
    }

    let mut checks = Vec::new();
    if opts.series_checks {
        for op in &operands {
            checks.extend(series_checks(&op.name, &op.matrix, &op.traces, opts.order));
        }
    }

    if opts.auxiliary_matrices {
        for (name, m) in [("unit", IntMatrix::identity(1)?), ("Q2", IntMatrix::all_ones(2)?)] {
            let traces = trace_powers(&m, base_len)?;
            operands.push(Operand {
                name: name.to_string(),
                matrix: m,
                traces,
            });
        }
    }

    let mut kron_traces: HashMap<(usize, u32, usize, u32), Option<Vec<BigInt>>> = HashMap::new();
    let mut product_traces = |a: usize, pa: u32, b: usize, pb: u32| -> Result<Option<Vec<BigInt>>> {
        if let Some(v) = kron_traces.get(&(a, pa, b, pb)) {
            return Ok(v.clone());
        }
        let dim = operands[a].matrix.dim() * operands[b].matrix.dim();
        let v = if dim > grid.kron_cap {
            None
        } else {
            let ma = mat_pow(&operands[a].matrix, pa)?;
            let mb = mat_pow(&operands[b].matrix, pb)?;
            let k = kronecker_capped(&ma, &mb, grid.kron_cap)?;
            Some(trace_powers(&k, grid.n_max as usize)?)
        };
        kron_traces.insert((a, pa, b, pb), v.clone());
        Ok(v)
    };

    let ns = 1..=grid.n_max;
    let count = operands.len();
    for &id in &opts.identities {
        match id {
            IdentityId::Id7 | IdentityId::Id14 => {
                for a in 0..count {
                    for b in 0..count {
                        let Some(tk) = product_traces(a, 1, b, 1)? else {
                            continue;
                        };
                        let subject = format!("{} x {}", operands[a].name, operands[b].name);
                        for n in ns.clone() {
                            let (ta, tb) = (&operands[a].traces, &operands[b].traces);
                            let rep = if id == IdentityId::Id7 {
                                check_id7(n, ta, tb, &tk)
                            } else {
                                check_id14(n, ta, tb, &tk)
                            };
                            checks.push(identity_check(&subject, rep, n, id, String::new()));
                        }
                    }
                }
            }
            IdentityId::Id8 | IdentityId::Id15 => {
                for op in operands.iter() {
                    for l in 1..=grid.l_max {
                        let tl = trace_powers(&mat_pow(&op.matrix, l)?, grid.n_max as usize)?;
                        for n in ns.clone() {
                            let rep = if id == IdentityId::Id8 {
                                check_id8(n, l as u64, &op.traces, &tl)
                            } else {
                                check_id15(n, l as u64, &op.traces, &tl)
                            };
                            checks.push(identity_check(&op.name, rep, n, id, String::new()));
                        }
                    }
                }
            }
            IdentityId::Id9 => {
                let arity = grid.id9_arity.max(1);
                let mut idx = vec![0usize; arity];
                'tuples: loop {
                    let dim: usize = idx.iter().map(|&i| operands[i].matrix.dim()).product();
                    if dim <= grid.kron_cap {
                        let mut full = operands[idx[0]].matrix.clone();
                        for &i in &idx[1..] {
                            full = kronecker_capped(&full, &operands[i].matrix, grid.kron_cap)?;
                        }
                        let tf = trace_powers(&full, grid.n_max as usize)?;
                        let trs: Vec<&[BigInt]> = idx.iter().map(|&i| operands[i].traces.as_slice()).collect();
                        let subject = idx
                            .iter()
                            .map(|&i| operands[i].name.as_str())
                            .collect::<Vec<_>>()
                            .join(" x ");
                        for n in ns.clone() {
                            checks.push(identity_check(&subject, check_id9(n, &trs, &tf), n, id, String::new()));
                        }
                    }
                    // Odometer over ordered tuples.
                    for pos in (0..arity).rev() {
                        idx[pos] += 1;
                        if idx[pos] < count {
                            continue 'tuples;
                        }
                        idx[pos] = 0;
                    }
                    break;
                }
            }
            IdentityId::Id13 | IdentityId::Id16 => {
                for a in 0..count {
                    for b in 0..count {
                        let subject = format!("{} x {}", operands[a].name, operands[b].name);
                        for &(r, s) in &grid.rs_pairs {
                            let d = num_integer::gcd(r, s);
                            if id == IdentityId::Id13 && d != 1 {
                                continue;
                            }
                            let Some(tk) = product_traces(a, s / d, b, r / d)? else {
                                continue;
                            };
                            for n in ns.clone() {
                                let (ta, tb) = (&operands[a].traces, &operands[b].traces);
                                let rep = if id == IdentityId::Id13 {
                                    check_id13(n, r as u64, s as u64, ta, tb, &tk)
                                } else {
                                    check_id16(n, r as u64, s as u64, ta, tb, &tk)
                                };
                                checks.push(identity_check(&subject, rep, n, id, String::new()));
                            }
                        }
                    }
                }
            }
        }
    }

    let passed = checks.iter().filter(|c| c.passed).count();
    let failed = checks.len() - passed;
    Ok(VerifyReport {
        passed,
        failed,
        all_passed: failed == 0,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn reference_pair() -> Vec<(String, OrientedGraph)> {
        vec![("g1_r2".into(), corpus::g1(2)), ("g2".into(), corpus::g2())]
    }

    #[test]
    fn default_suite_passes() {
        let rep = run_verification(&reference_pair(), &VerifyOptions::default()).unwrap();
        let failures: Vec<_> = rep.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        for id in IdentityId::ALL {
            assert!(rep.checks.iter().any(|c| c.check == id.to_string()), "{id} never ran");
        }
    }

    #[test]
    fn corrupted_trace_fails_with_witness() {
        let opts = VerifyOptions {
            identities: vec![IdentityId::Id7],
            perturb: Some(Perturbation {
                graph: 0,
                n: 2,
                delta: 1,
            }),
            ..VerifyOptions::default()
        };
        let rep = run_verification(&reference_pair(), &opts).unwrap();
        assert!(!rep.all_passed);
        let id7_fail = rep.failures().find(|c| c.check == "ID7").expect("ID7 should fail");
        assert!(id7_fail.lhs.is_some() && id7_fail.rhs.is_some());
        assert_ne!(id7_fail.lhs, id7_fail.rhs);
    }

    #[test]
    fn bad_perturbation_index() {
        let opts = VerifyOptions {
            perturb: Some(Perturbation {
                graph: 0,
                n: 999,
                delta: 1,
            }),
            ..VerifyOptions::default()
        };
        assert!(run_verification(&reference_pair(), &opts).is_err());
    }
}
