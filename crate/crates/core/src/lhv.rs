//! Noncontextual value assignments as linear systems over `Z_d`.
//!
//! Each (party, base) pair that occurs in a table gets one unknown `v ∈ Z_d`,
//! standing for the value `ω^v`. A row with entries `B_j^{e_j}` then demands
//! `Σ_j e_j · v(j, B_j) ≡ μ_r (mod d)`, where `ω^{μ_r}` is the row's value.
//! Because the unknown is per (party, base), `v(X^3) = 3·v(X)` holds by
//! construction.
//!
//! [`solve_or_refute`] diagonalizes the coefficient matrix with unimodular
//! row and column operations over `Z_d` (valid for composite `d`), and either
//! returns an assignment or a row combination whose left side vanishes
//! identically while its right side does not.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{row_eigenvalues, snap_phase, OracleConfig, StateVector};
use crate::paradox::{Base, ParadoxTable};
use crate::weyl::Dimension;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentSystem {
    pub d: Dimension,
    /// `(party, base)` for each unknown, in party-major order.
    pub variables: Vec<(usize, Base)>,
    /// `equations[r][v]`: coefficient of unknown `v` in row `r`, reduced mod `d`.
    pub equations: Vec<Vec<u32>>,
    /// Unreduced integer coefficients, kept for rendering proofs.
    pub raw: Vec<Vec<u64>>,
    pub targets: Vec<u32>,
}

impl AssignmentSystem {
    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn equation_count(&self) -> usize {
        self.equations.len()
    }

    pub fn is_satisfied_by(&self, values: &[u32]) -> bool {
        let d = self.d.get() as u64;
        self.equations.iter().zip(&self.targets).all(|(row, &mu)| {
            let lhs = row
                .iter()
                .zip(values)
                .map(|(&a, &v)| a as u64 * v as u64)
                .sum::<u64>();
            lhs % d == mu as u64
        })
    }

    /// Restriction to the equations' terms on the given parties only, with
    /// the same targets.
    pub fn restricted_to(&self, parties: &[usize]) -> AssignmentSystem {
        let keep: Vec<usize> = (0..self.variables.len())
            .filter(|&i| parties.contains(&self.variables[i].0))
            .collect();
        AssignmentSystem {
            d: self.d,
            variables: keep.iter().map(|&i| self.variables[i]).collect(),
            equations: self
                .equations
                .iter()
                .map(|r| keep.iter().map(|&i| r[i]).collect())
                .collect(),
            raw: self
                .raw
                .iter()
                .map(|r| keep.iter().map(|&i| r[i]).collect())
                .collect(),
            targets: self.targets.clone(),
        }
    }
}

/// One unknown per (party, base) occurring in `t`; one equation per row.
///
/// Meant for tables whose columns pass the classical-forced check, though the
/// system is well defined for any table.
pub fn build_system(t: &ParadoxTable, targets: &[u32]) -> Result<AssignmentSystem> {
    if targets.len() != t.len() {
        return Err(Error::MalformedTable(format!(
            "{} targets for {} rows",
            targets.len(),
            t.len()
        )));
    }
    let d = t.dim();
    let mut variables = Vec::new();
    for j in 0..t.parties() {
        for base in Base::NON_IDENTITY {
            if t.column(j).any(|w| w.base == base) {
                variables.push((j, base));
            }
        }
    }
    let raw: Vec<Vec<u64>> = t
        .rows()
        .iter()
        .map(|row| {
            variables
                .iter()
                .map(|&(j, base)| if row[j].base == base { row[j].exp as u64 } else { 0 })
                .collect()
        })
        .collect();
    let equations = raw
        .iter()
        .map(|r| r.iter().map(|&c| (c % d.get() as u64) as u32).collect())
        .collect();
    Ok(AssignmentSystem {
        d,
        variables,
        equations,
        raw,
        targets: targets.iter().map(|&m| m % d.get()).collect(),
    })
}

/// Row weights `w` with `Σ_r w_r · row_r ≡ 0` but `Σ_r w_r · μ_r ≢ 0 (mod d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub weights: Vec<u32>,
    /// Unreduced combined coefficient of every unknown.
    pub combined: Vec<u64>,
    /// Combined target, reduced mod `d`.
    pub rhs: u32,
}

impl Certificate {
    pub fn uses_all_rows_once(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Checks the certificate against `sys`.
    pub fn is_valid_for(&self, sys: &AssignmentSystem) -> bool {
        let d = sys.d.get() as u64;
        if self.weights.len() != sys.equations.len() {
            return false;
        }
        let lhs_zero = (0..sys.variables.len()).all(|v| {
            sys.equations
                .iter()
                .zip(&self.weights)
                .map(|(r, &w)| r[v] as u64 * w as u64)
                .sum::<u64>()
                % d
                == 0
        });
        let rhs = sys
            .targets
            .iter()
            .zip(&self.weights)
            .map(|(&m, &w)| m as u64 * w as u64)
            .sum::<u64>()
            % d;
        lhs_zero && rhs != 0 && rhs == self.rhs as u64
    }

    /// Multiplicative rendering, e.g. `v(X_1)^4 v(Y_1)^4 … = ω^2 = -1`.
    pub fn render(&self, sys: &AssignmentSystem) -> String {
        let d = sys.d.get();
        let mut lhs = Vec::new();
        for (i, &(party, base)) in sys.variables.iter().enumerate() {
            let c = self.combined[i];
            if c != 0 {
                lhs.push(format!("v({}_{})^{}", base, party + 1, c));
            }
        }
        let lhs = if lhs.is_empty() { "1".to_string() } else { lhs.join(" ") };
        let rhs = if 2 * self.rhs == d {
            "-1".to_string()
        } else {
            format!("ω^{}", self.rhs)
        };
        let weights = if self.uses_all_rows_once() {
            "product of all rows".to_string()
        } else {
            format!("rows weighted {:?}", self.weights)
        };
        format!(
            "{weights}: {lhs} = {rhs}, but every exponent is a multiple of {d} so the left side is 1"
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum Outcome {
    Solution { values: Vec<u32> },
    Infeasible { certificate: Certificate },
}

impl Outcome {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Outcome::Infeasible { .. })
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Solution { values } => write!(f, "solvable, e.g. {values:?}"),
            Outcome::Infeasible { certificate } => {
                write!(f, "infeasible (row weights {:?}, rhs {})", certificate.weights, certificate.rhs)
            }
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (g, s, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| s.rem_euclid(m))
}

/// A unit `u` of `Z_d` with `a ≡ u · gcd(a, d)`.
fn unit_part(a: i64, d: i64) -> i64 {
    let g = gcd(a, d);
    let m = d / g;
    let u0 = (a / g).rem_euclid(m);
    (0..g)
        .map(|j| u0 + j * m)
        .find(|&u| gcd(u, d) == 1)
        .expect("every element of Z_d is a unit times its gcd with d")
}

struct Diagonalization {
    /// `u · a · v = diag`, all mod d.
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
    diag: Vec<i64>,
}

fn diagonalize(a: &[Vec<u32>], cols: usize, d: i64) -> Diagonalization {
    let rows = a.len();
    let mut m: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    let mut u: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..rows).map(|j| (i == j) as i64).collect())
        .collect();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i64).collect())
        .collect();

    let row_op = |m: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, i: usize, k: usize, c: [i64; 4]| {
        // (row_i, row_k) <- (c0·row_i + c1·row_k, c2·row_i + c3·row_k)
        for mat in [m, u] {
            for col in 0..mat[i].len() {
                let (x, y) = (mat[i][col], mat[k][col]);
                mat[i][col] = (c[0] * x + c[1] * y).rem_euclid(d);
                mat[k][col] = (c[2] * x + c[3] * y).rem_euclid(d);
            }
        }
    };
    let col_op = |m: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, i: usize, k: usize, c: [i64; 4]| {
        for mat in [m, v] {
            for row in mat.iter_mut() {
                let (x, y) = (row[i], row[k]);
                row[i] = (c[0] * x + c[1] * y).rem_euclid(d);
                row[k] = (c[2] * x + c[3] * y).rem_euclid(d);
            }
        }
    };

    let mut diag = Vec::new();
    let steps = rows.min(cols);
    for t in 0..steps {
        // pivot: entry with the smallest gcd against d
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = gcd(x, d);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        if pi != t {
            row_op(&mut m, &mut u, t, pi, [0, 1, 1, 0]);
        }
        if pj != t {
            col_op(&mut m, &mut v, t, pj, [0, 1, 1, 0]);
        }

        loop {
            let unit = unit_part(m[t][t], d);
            let uinv = inv_mod(unit, d).expect("unit part is invertible");
            if uinv != 1 {
                for mat in [&mut m, &mut u] {
                    for x in mat[t].iter_mut() {
                        *x = (*x * uinv).rem_euclid(d);
                    }
                }
            }
            let g = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let e = m[i][t];
                if e == 0 {
                    continue;
                }
                if e % g == 0 {
                    row_op(&mut m, &mut u, t, i, [1, 0, -(e / g), 1]);
                } else {
                    let (h, s, tt) = ext_gcd(g, e);
                    row_op(&mut m, &mut u, t, i, [s, tt, -(e / h), g / h]);
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                let e = m[t][j];
                if e == 0 {
                    continue;
                }
                if e % g == 0 {
                    col_op(&mut m, &mut v, t, j, [1, 0, -(e / g), 1]);
                } else {
                    let (h, s, tt) = ext_gcd(g, e);
                    col_op(&mut m, &mut v, t, j, [s, tt, -(e / h), g / h]);
                    clean = false;
                    break;
                }
            }
            if clean {
                break;
            }
        }
        diag.push(m[t][t]);
    }
    Diagonalization { u, v, diag }
}

fn dot_mod(a: &[i64], b: &[i64], d: i64) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>().rem_euclid(d)
}

/// Solves the system or produces an infeasibility certificate.
///
/// If the plain sum of all rows already refutes the system it is returned as
/// the certificate, since that is the familiar form of the argument.
pub fn solve_or_refute(sys: &AssignmentSystem) -> Outcome {
    let d = sys.d.get() as i64;
    let rows = sys.equations.len();
    let cols = sys.variables.len();

    let all_ones = certificate_from_weights(sys, &vec![1; rows]);
    if let Some(cert) = all_ones {
        return Outcome::Infeasible { certificate: cert };
    }

    let dz = diagonalize(&sys.equations, cols, d);
    let mu: Vec<i64> = sys.targets.iter().map(|&m| m as i64).collect();
    let c: Vec<i64> = dz.u.iter().map(|ur| dot_mod(ur, &mu, d)).collect();

    let mut y = vec![0i64; cols];
    for i in 0..rows {
        let gi = dz.diag.get(i).copied().unwrap_or(0);
        let g = gcd(gi, d);
        if c[i] % g != 0 {
            let scale = d / g;
            let weights: Vec<u32> = dz.u[i].iter().map(|&x| ((x * scale).rem_euclid(d)) as u32).collect();
            let cert = certificate_from_weights(sys, &weights)
                .expect("diagonal obstruction yields a valid certificate");
            return Outcome::Infeasible { certificate: cert };
        }
        if gi != 0 {
            let m = d / g;
            let inv = if m == 1 { 0 } else { inv_mod(gi / g, m).expect("coprime after division") };
            y[i] = ((c[i] / g) * inv).rem_euclid(m.max(1));
        }
    }
    let values: Vec<u32> = (0..cols)
        .map(|r| dot_mod(&dz.v[r], &y, d) as u32)
        .collect();
    debug_assert!(sys.is_satisfied_by(&values));
    Outcome::Solution { values }
}

fn certificate_from_weights(sys: &AssignmentSystem, weights: &[u32]) -> Option<Certificate> {
    let d = sys.d.get() as u64;
    let combined: Vec<u64> = (0..sys.variables.len())
        .map(|v| {
            sys.raw
                .iter()
                .zip(weights)
                .map(|(r, &w)| r[v] * w as u64)
                .sum()
        })
        .collect();
    let rhs = (sys
        .targets
        .iter()
        .zip(weights)
        .map(|(&m, &w)| m as u64 * w as u64)
        .sum::<u64>()
        % d) as u32;
    let cert = Certificate {
        weights: weights.to_vec(),
        combined,
        rhs,
    };
    cert.is_valid_for(sys).then_some(cert)
}

/// Largest search space [`brute_force`] accepts.
pub const BRUTE_FORCE_LIMIT: u128 = 100_000_000;

/// Number of assignments in `Z_d^{#unknowns}` that satisfy every equation.
pub fn brute_force(sys: &AssignmentSystem) -> Result<u64> {
    let d = sys.d.get() as u64;
    let n = sys.variables.len();
    let total = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > BRUTE_FORCE_LIMIT {
        return Err(Error::Capacity {
            what: "brute-force assignments",
            needed: total,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let total = total as u64;
    // Split on the last unknown's prefix; each chunk walks an odometer.
    let chunk = d.pow((n.min(6)) as u32);
    let chunks = total / chunk;
    let count = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut values = vec![0u32; n];
            let mut idx = c * chunk;
            for v in values.iter_mut().rev() {
                *v = (idx % d) as u32;
                idx /= d;
            }
            let lo = n.min(6);
            let mut hits = 0u64;
            for _ in 0..chunk {
                if sys.is_satisfied_by(&values) {
                    hits += 1;
                }
                // odometer over the last `lo` unknowns
                for v in values[n - lo..].iter_mut().rev() {
                    *v += 1;
                    if (*v as u64) < d {
                        break;
                    }
                    *v = 0;
                }
            }
            hits
        })
        .sum();
    Ok(count)
}

/// Row eigenvalue exponents `μ_r` (in units of `2π/d`) on a joint eigenstate.
pub fn eigen_targets(t: &ParadoxTable, psi: &StateVector, cfg: &OracleConfig) -> Result<Vec<u32>> {
    let vals = row_eigenvalues(t, psi, cfg)?;
    vals.into_iter()
        .enumerate()
        .map(|(r, lambda)| {
            snap_phase(lambda, t.dim(), cfg.tol_eigen)
                .and_then(|p| p.as_dth_root())
                .ok_or(Error::OffLattice { row: r })
        })
        .collect()
}

/// The state-independent refutation: for a classical-forced table whose row
/// product is `ω^k · 1` with `k ≠ 0`, the sum of all rows refutes every target
/// vector whose entries sum to `k`, which covers every joint eigenstate.
pub fn state_independent_certificate(t: &ParadoxTable) -> Option<Certificate> {
    let verdict = crate::paradox::verify(t);
    if !(verdict.commuting && verdict.classical_forced) {
        return None;
    }
    let k = verdict.quantum_phase?.as_dth_root()?;
    if k == 0 {
        return None;
    }
    let mut targets = vec![0; t.len()];
    targets[0] = k;
    let sys = build_system(t, &targets).ok()?;
    certificate_from_weights(&sys, &vec![1; t.len()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paradox::ParadoxTable;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn single_row_is_solvable() {
        let t = ParadoxTable::parse(dim(2), &["X X"], "").unwrap();
        let sys = build_system(&t, &[0]).unwrap();
        assert_eq!(sys.variable_count(), 2);
        match solve_or_refute(&sys) {
            Outcome::Solution { values } => assert!(sys.is_satisfied_by(&values)),
            other => panic!("{other}"),
        }
        assert_eq!(brute_force(&sys).unwrap(), 2);
    }

    #[test]
    fn target_count_must_match() {
        let t = ParadoxTable::parse(dim(2), &["X X", "Y Y"], "").unwrap();
        assert!(build_system(&t, &[0]).is_err());
    }

    #[test]
    fn mermin_is_refuted_by_all_rows() {
        let t = ParadoxTable::parse(dim(2), &["X X X", "X Y Y", "Y X Y", "Y Y X"], "").unwrap();
        let sys = build_system(&t, &[0, 1, 1, 1]).unwrap();
        assert_eq!(sys.variable_count(), 6);
        assert_eq!(sys.equation_count(), 4);
        let out = solve_or_refute(&sys);
        let Outcome::Infeasible { certificate } = out else {
            panic!("expected infeasible")
        };
        assert!(certificate.uses_all_rows_once());
        assert_eq!(certificate.rhs, 1);
        assert_eq!(brute_force(&sys).unwrap(), 0);
    }

    #[test]
    fn composite_modulus_needs_non_unit_pivots() {
        // 2v ≡ 1 (mod 4) has no solution; 2v ≡ 2 has two.
        let t = ParadoxTable::parse(dim(4), &["X^2"], "").unwrap();
        let sys = build_system(&t, &[1]).unwrap();
        let out = solve_or_refute(&sys);
        let Outcome::Infeasible { certificate } = out else {
            panic!("expected infeasible")
        };
        assert_eq!(certificate.weights, vec![2]);
        assert_eq!(brute_force(&sys).unwrap(), 0);

        let sys = build_system(&t, &[2]).unwrap();
        assert!(!solve_or_refute(&sys).is_infeasible());
        assert_eq!(brute_force(&sys).unwrap(), 2);
    }

    #[test]
    fn mixed_gcds_at_d6() {
        // 2a + 3b ≡ 1 (mod 6) is solvable although neither pivot is a unit.
        let t = ParadoxTable::parse(dim(6), &["X^2 Y^3"], "").unwrap();
        let sys = build_system(&t, &[1]).unwrap();
        match solve_or_refute(&sys) {
            Outcome::Solution { values } => assert!(sys.is_satisfied_by(&values)),
            other => panic!("{other}"),
        }
        assert_eq!(brute_force(&sys).unwrap(), 6);
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (g, s, t) = ext_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(s * a + t * b, g);
            }
        }
    }

    #[test]
    fn unit_parts() {
        for d in 2..30i64 {
            for a in 1..d {
                let u = unit_part(a, d);
                assert_eq!(gcd(u, d), 1);
                assert_eq!((u * gcd(a, d)).rem_euclid(d), a);
            }
        }
    }

    #[test]
    fn brute_force_bound() {
        let t = ParadoxTable::parse(dim(10), &["X Y Z X Y Z X Y Z"], "").unwrap();
        let sys = build_system(&t, &[0]).unwrap();
        assert!(matches!(brute_force(&sys), Err(Error::Capacity { .. })));
    }
}
