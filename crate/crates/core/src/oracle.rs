//! Dense complex-matrix ground truth.
//!
//! Single-party operators are built straight from their matrix definitions
//! (shift, clock, and the phased shift-clock product for `Y`), never from the
//! symbolic encoding, so agreement with [`crate::weyl`] is a real check.
//! Multi-party operators use the Kronecker product with party 0 as the most
//! significant factor.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paradox::{Base, EntryWord, FailureWitness, ParadoxTable, Verdict};
use crate::weyl::{Dimension, Monomial, PhaseExp};

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Size limits and tolerances of the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub max_local_dim: u32,
    /// Largest total dimension `d^M` for which full matrices are built.
    pub capacity: usize,
    pub tol_algebra: f64,
    pub tol_eigen: f64,
    pub tol_basis: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_local_dim: 16,
            capacity: 4096,
            tol_algebra: 1e-10,
            tol_eigen: 1e-9,
            tol_basis: 1e-8,
        }
    }
}

impl OracleConfig {
    /// Default configuration with `capacity` taken from `GHZ_ORACLE_CAPACITY`
    /// when set.
    pub fn from_env() -> Self {
        let mut cfg = Self::default();
        if let Some(cap) = std::env::var("GHZ_ORACLE_CAPACITY")
            .ok()
            .and_then(|v| v.parse().ok())
        {
            cfg.capacity = cap;
        }
        cfg
    }

    fn check_local(&self, d: Dimension) -> Result<()> {
        if d.get() > self.max_local_dim {
            return Err(Error::Capacity {
                what: "local dimension",
                needed: d.get() as u128,
                limit: self.max_local_dim as u128,
            });
        }
        Ok(())
    }

    fn check_total(&self, d: Dimension, parties: usize) -> Result<usize> {
        self.check_local(d)?;
        let needed = (d.get() as u128).checked_pow(parties as u32).unwrap_or(u128::MAX);
        if needed > self.capacity as u128 {
            return Err(Error::Capacity {
                what: "total dimension",
                needed,
                limit: self.capacity as u128,
            });
        }
        Ok(needed as usize)
    }
}

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator(pub DMatrix<C64>);

impl DenseOperator {
    pub fn identity(n: usize) -> Self {
        DenseOperator(DMatrix::identity(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    /// `self · rhs`, skipping structural zeros of `rhs`. The operators here
    /// are mostly phased permutations, so this is `O(N²)` for them.
    pub fn mul(&self, rhs: &DenseOperator) -> DenseOperator {
        let n = self.dim();
        let mut out = DMatrix::<C64>::zeros(n, rhs.0.ncols());
        for j in 0..rhs.0.ncols() {
            for k in 0..n {
                let b = rhs.0[(k, j)];
                if b == ZERO {
                    continue;
                }
                let src = self.0.column(k);
                let mut dst = out.column_mut(j);
                for (o, a) in dst.iter_mut().zip(src.iter()) {
                    *o += a * b;
                }
            }
        }
        DenseOperator(out)
    }

    pub fn pow(&self, k: u32) -> DenseOperator {
        (0..k).fold(Self::identity(self.dim()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: C64) -> DenseOperator {
        DenseOperator(&self.0 * c)
    }

    pub fn adjoint(&self) -> DenseOperator {
        DenseOperator(self.0.adjoint())
    }

    pub fn kron(&self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(self.0.kronecker(&rhs.0))
    }

    pub fn apply(&self, psi: &StateVector) -> StateVector {
        StateVector(&self.0 * &psi.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius norm of `AB - BA`.
    pub fn commutator_norm(&self, other: &DenseOperator) -> f64 {
        let ab = self.mul(other);
        let ba = other.mul(self);
        DenseOperator(ab.0 - ba.0).frobenius()
    }

    /// `‖U†U - 1‖` entrywise maximum.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint().mul(self).max_abs_diff(&Self::identity(self.dim()))
    }

    /// `Some(c)` when `self = c · 1` within `tol` entrywise.
    pub fn as_scalar(&self, tol: f64) -> Option<C64> {
        let n = self.dim();
        let c = self.0.trace() / n as f64;
        (self.max_abs_diff(&Self::identity(n).scale(c)) < tol).then_some(c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(pub DVector<C64>);

impl StateVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0.dotc(&other.0)
    }

    pub fn basis(n: usize, k: usize) -> Self {
        let mut v = DVector::zeros(n);
        v[k] = ONE;
        StateVector(v)
    }

    /// Normalizes and rotates the global phase so that the first amplitude
    /// with modulus above `1e-9` is positive real.
    pub fn normalized(mut self) -> Self {
        let norm = self.0.norm();
        if norm > 0.0 {
            self.0 /= C64::new(norm, 0.0);
        }
        if let Some(first) = self.0.iter().find(|c| c.norm() > 1e-9).copied() {
            let rot = first.conj() / first.norm();
            self.0 *= rot;
        }
        self
    }

    pub fn kron(&self, other: &StateVector) -> StateVector {
        StateVector(self.0.kronecker(&other.0))
    }
}

pub fn build_x(d: Dimension) -> DenseOperator {
    let n = d.get() as usize;
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        m[((k + 1) % n, k)] = ONE;
    }
    DenseOperator(m)
}

pub fn build_z(d: Dimension) -> DenseOperator {
    let n = d.get() as usize;
    DenseOperator(DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        (0..n).map(|k| omega(k as f64, d)),
    )))
}

/// `exp(iπp/d) Σ_k ω^k |k-1⟩⟨k|` with `p = 1` for even `d`, `p = 0` for odd.
pub fn build_y(d: Dimension) -> DenseOperator {
    let n = d.get() as usize;
    let prefactor = C64::from_polar(1.0, std::f64::consts::PI * d.parity() as f64 / n as f64);
    let mut m = DMatrix::zeros(n, n);
    for k in 0..n {
        m[((k + n - 1) % n, k)] = prefactor * omega(k as f64, d);
    }
    DenseOperator(m)
}

fn omega(k: f64, d: Dimension) -> C64 {
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k / d.get() as f64)
}

pub fn phase_value(s: i64, d: Dimension) -> C64 {
    C64::from_polar(1.0, std::f64::consts::PI * s as f64 / d.get() as f64)
}

pub fn build_base(base: Base, d: Dimension) -> DenseOperator {
    match base {
        Base::I => DenseOperator::identity(d.get() as usize),
        Base::X => build_x(d),
        Base::Y => build_y(d),
        Base::Z => build_z(d),
    }
}

pub fn build_word(w: EntryWord, d: Dimension) -> DenseOperator {
    build_base(w.base, d).pow(w.exp)
}

/// `phase · X^x · Z^z` as a `d × d` matrix.
pub fn build_monomial(m: Monomial, d: Dimension) -> DenseOperator {
    build_x(d)
        .pow(m.x)
        .mul(&build_z(d).pow(m.z))
        .scale(m.phase.to_complex(d))
}

pub fn build_single(w: EntryWord, d: Dimension, cfg: &OracleConfig) -> Result<DenseOperator> {
    cfg.check_local(d)?;
    Ok(build_word(w, d))
}

/// Ordered Kronecker product of the row's entries.
pub fn build_row(row: &[EntryWord], d: Dimension, cfg: &OracleConfig) -> Result<DenseOperator> {
    cfg.check_total(d, row.len())?;
    Ok(kron_all(row.iter().map(|w| build_word(*w, d))))
}

pub fn kron_all(ops: impl IntoIterator<Item = DenseOperator>) -> DenseOperator {
    ops.into_iter()
        .reduce(|acc, op| acc.kron(&op))
        .unwrap_or_else(|| DenseOperator::identity(1))
}

/// Applies `⊗_j A_j` to `psi` one party at a time, without forming the full
/// matrix. Party 0 is the most significant index.
pub fn apply_factored(ops: &[DenseOperator], psi: &StateVector) -> StateVector {
    let dims: Vec<usize> = ops.iter().map(DenseOperator::dim).collect();
    let total: usize = dims.iter().product();
    assert_eq!(total, psi.dim(), "state dimension does not match operator");
    let mut cur = psi.0.clone();
    let mut next = DVector::zeros(total);
    let mut stride_after = total;
    for (op, &dj) in ops.iter().zip(&dims) {
        stride_after /= dj;
        let inner = stride_after;
        let outer = total / (dj * inner);
        next.fill(ZERO);
        for o in 0..outer {
            for i in 0..inner {
                let base = o * dj * inner + i;
                for col in 0..dj {
                    let v = cur[base + col * inner];
                    if v == ZERO {
                        continue;
                    }
                    for row in 0..dj {
                        let a = op.0[(row, col)];
                        if a != ZERO {
                            next[base + row * inner] += a * v;
                        }
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    StateVector(cur)
}

/// Applies one table row to `psi` party by party.
pub fn apply_row(row: &[EntryWord], d: Dimension, psi: &StateVector) -> StateVector {
    let ops: Vec<_> = row.iter().map(|w| build_word(*w, d)).collect();
    apply_factored(&ops, psi)
}

/// `(1/√d) Σ_k exp(iπ·profile(k)/d) |k…k⟩`.
pub fn ghz_state(
    d: Dimension,
    parties: usize,
    profile: impl Fn(u32) -> i64,
    cfg: &OracleConfig,
) -> Result<StateVector> {
    let n = cfg.check_total(d, parties)?;
    let dd = d.get() as usize;
    // index of |k…k⟩ is k·(1 + d + d² + …)
    let repunit: usize = (0..parties).map(|j| dd.pow(j as u32)).sum();
    let mut v = DVector::zeros(n);
    let amp = 1.0 / (dd as f64).sqrt();
    for k in 0..dd {
        v[k * repunit] = phase_value(profile(k as u32), d) * amp;
    }
    Ok(StateVector(v))
}

pub fn flat_ghz_state(d: Dimension, parties: usize, cfg: &OracleConfig) -> Result<StateVector> {
    ghz_state(d, parties, |_| 0, cfg)
}

/// `Some(λ)` with `λ = ⟨ψ|Aψ⟩` when `‖Aψ − λψ‖ < tol`.
pub fn eigenvalue_of(a_psi: &StateVector, psi: &StateVector, tol: f64) -> Option<C64> {
    let lambda = psi.inner(a_psi) / psi.inner(psi).re;
    let resid = (&a_psi.0 - &psi.0 * lambda).norm();
    (resid < tol).then_some(lambda)
}

pub fn eigenvalue_on(op: &DenseOperator, psi: &StateVector, cfg: &OracleConfig) -> Result<Option<C64>> {
    if op.dim() != psi.dim() {
        return Err(Error::Capacity {
            what: "state dimension",
            needed: psi.dim() as u128,
            limit: op.dim() as u128,
        });
    }
    Ok(eigenvalue_of(&op.apply(psi), psi, cfg.tol_eigen))
}

/// Eigenvalues of every row of `t` on `psi`, computed party by party.
pub fn row_eigenvalues(t: &ParadoxTable, psi: &StateVector, cfg: &OracleConfig) -> Result<Vec<C64>> {
    let n = cfg.check_total(t.dim(), t.parties())?;
    if n != psi.dim() {
        return Err(Error::DimensionMismatch {
            left: n as u32,
            right: psi.dim() as u32,
        });
    }
    t.rows()
        .iter()
        .enumerate()
        .map(|(r, row)| {
            eigenvalue_of(&apply_row(row, t.dim(), psi), psi, cfg.tol_eigen)
                .ok_or(Error::NotEigen { row: r })
        })
        .collect()
}

/// Nearest `2d`-th root of unity to `c`, if `c` lies within `tol` of it.
pub fn snap_phase(c: C64, d: Dimension, tol: f64) -> Option<PhaseExp> {
    let s = (c.arg() * d.get() as f64 / std::f64::consts::PI).round() as i64;
    let snapped = PhaseExp::new(s, d);
    ((c - snapped.to_complex(d)).norm() < tol).then_some(snapped)
}

/// A joint eigenvector of all rows and the row eigenvalues on it.
#[derive(Debug, Clone)]
pub struct JointEigenvector {
    pub state: StateVector,
    pub eigenvalues: Vec<C64>,
}

/// Simultaneous eigenbasis of all rows.
///
/// Rows are monomial matrices, so the orbits of basis states under their
/// permutation parts span invariant subspaces; each orbit is handled on its
/// own. Inside an orbit a fixed generic Hermitian combination of all rows is
/// diagonalized first, then every eigenspace is refined row by row. Vectors
/// are ordered by orbit (smallest basis index first) and then by eigenvalue.
pub fn joint_eigenbasis(t: &ParadoxTable, cfg: &OracleConfig) -> Result<Vec<JointEigenvector>> {
    if let Err(FailureWitness::NonCommuting { rows, .. }) = crate::paradox::check_commuting(t) {
        return Err(Error::NonCommuting(rows.0, rows.1));
    }
    let n = cfg.check_total(t.dim(), t.parties())?;
    let ops: Vec<DenseOperator> = t
        .rows()
        .iter()
        .map(|r| build_row(r, t.dim(), cfg))
        .collect::<Result<_>>()?;

    let orbits = monomial_orbits(&ops, cfg.tol_algebra).unwrap_or_else(|| vec![(0..n).collect()]);
    let per_orbit: Vec<Vec<JointEigenvector>> = orbits
        .par_iter()
        .map(|orbit| {
            let local: Vec<DMatrix<C64>> = ops
                .iter()
                .map(|op| DMatrix::from_fn(orbit.len(), orbit.len(), |a, b| op.0[(orbit[a], orbit[b])]))
                .collect();
            let mut combo = DMatrix::<C64>::zeros(orbit.len(), orbit.len());
            for (k, m) in local.iter().enumerate() {
                combo += m * C64::new(1.0 / (k as f64 + MIX + 1.0), 0.0);
            }
            let mut blocks = split_block(&combo, DMatrix::identity(orbit.len(), orbit.len()), cfg.tol_basis);
            for m in &local {
                blocks = blocks
                    .into_iter()
                    .flat_map(|q| split_block(m, q, cfg.tol_basis))
                    .collect();
            }
            blocks
                .iter()
                .flat_map(|q| q.column_iter())
                .map(|col| {
                    let mut v = DVector::<C64>::zeros(n);
                    for (a, &i) in orbit.iter().enumerate() {
                        v[i] = col[a];
                    }
                    let state = StateVector(v).normalized();
                    let col = col.into_owned();
                    let eigenvalues = local.iter().map(|m| col.dotc(&(m * &col)) / col.norm_squared()).collect();
                    JointEigenvector { state, eigenvalues }
                })
                .collect()
        })
        .collect();
    Ok(per_orbit.into_iter().flatten().collect())
}

// Mixing weight for the anti-Hermitian part; its arctangent is not a rational
// multiple of π, so distinct roots of unity never collide.
const MIX: f64 = 0.618_033_988_749_894_8;

/// Orbits of basis indices under the permutation parts of monomial matrices,
/// each sorted, ordered by least element. `None` if some matrix is not
/// monomial.
fn monomial_orbits(ops: &[DenseOperator], tol: f64) -> Option<Vec<Vec<usize>>> {
    let n = ops.first()?.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for op in ops {
        for j in 0..n {
            let column = op.0.column(j);
            let mut hits = column.iter().enumerate().filter(|(_, c)| c.norm() > tol);
            let (i, _) = hits.next()?;
            if hits.next().is_some() {
                return None;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(i);
    }
    Some(orbits)
}

/// Splits the span of `q`'s orthonormal columns into eigenspaces of the
/// compression of `op`, using the Hermitian form `Re + MIX·Im`.
fn split_block(op: &DMatrix<C64>, q: DMatrix<C64>, tol: f64) -> Vec<DMatrix<C64>> {
    let k = q.ncols();
    if k == 1 {
        return vec![q];
    }
    let compressed = q.adjoint() * op * &q;
    let herm = {
        let adj = compressed.adjoint();
        let re_part = (&compressed + &adj) * C64::new(0.5, 0.0);
        let im_part = (&compressed - &adj) * C64::new(0.0, -0.5);
        let h = re_part + im_part * C64::new(MIX, 0.0);
        // symmetrize away rounding so the solver sees an exactly Hermitian input
        let h_adj = h.adjoint();
        (&h + h_adj) * C64::new(0.5, 0.0)
    };
    let eig = nalgebra::linalg::SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let cluster_tol = tol.max(1e-7);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for idx in order {
        let v = eig.eigenvalues[idx];
        if groups.is_empty() || v - last > cluster_tol {
            groups.push(Vec::new());
        }
        groups.last_mut().unwrap().push(idx);
        last = v;
    }
    groups
        .into_iter()
        .map(|g| {
            let local = DMatrix::from_columns(
                &g.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>(),
            );
            &q * local
        })
        .collect()
}

/// Numerical re-derivation of [`crate::paradox::verify`] from full matrices.
pub fn oracle_verify(t: &ParadoxTable, cfg: &OracleConfig) -> Result<Verdict> {
    let d = t.dim();
    let ops: Vec<DenseOperator> = t
        .rows()
        .iter()
        .map(|r| build_row(r, d, cfg))
        .collect::<Result<_>>()?;

    let mut commuting = None;
    'outer: for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            let norm = ops[i].commutator_norm(&ops[j]);
            if norm >= cfg.tol_algebra {
                // recover the exponent from ⟨AB, BA⟩ for the witness
                let ab = ops[i].mul(&ops[j]);
                let ba = ops[j].mul(&ops[i]);
                let ratio = ba.0.iter().zip(ab.0.iter()).fold(ZERO, |acc, (x, y)| acc + x.conj() * y)
                    / ba.frobenius().powi(2);
                let exponent = snap_phase(ratio, d, 1e-6)
                    .and_then(|p| p.as_dth_root())
                    .unwrap_or(0);
                commuting = Some(FailureWitness::NonCommuting {
                    rows: (i, j),
                    exponent,
                });
                break 'outer;
            }
        }
    }

    let n = ops.first().map(DenseOperator::dim).unwrap_or(1);
    let product = ops
        .iter()
        .fold(DenseOperator::identity(n), |acc, op| acc.mul(op));
    let phase = product
        .as_scalar(cfg.tol_algebra)
        .and_then(|c| snap_phase(c, d, cfg.tol_algebra));

    // Classical side: give each (party, base) the generator value ω and
    // multiply the row values out; the product must be 1 for every column/base.
    let mut classical = None;
    'cols: for j in 0..t.parties() {
        for base in Base::NON_IDENTITY {
            let value: C64 = t
                .column(j)
                .filter(|w| w.base == base)
                .map(|w| omega(w.exp as f64, d))
                .product();
            if (value - ONE).norm() >= cfg.tol_algebra {
                let sum = (snap_phase(value, d, 1e-6).and_then(|p| p.as_dth_root())).unwrap_or(0);
                classical = Some(FailureWitness::ClassicalUnforced { column: j, base, sum });
                break 'cols;
            }
        }
    }

    Ok(Verdict::assemble(commuting, phase, classical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paradox::ParadoxTable;

    fn dim(d: u32) -> Dimension {
        Dimension::new(d).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn qubit_operators_are_paulis() {
        let d = dim(2);
        let sx = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let sy = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]);
        let sz = DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]);
        assert!(build_x(d).max_abs_diff(&DenseOperator(sx)) < 1e-15);
        assert!(build_y(d).max_abs_diff(&DenseOperator(sy)) < 1e-15);
        assert!(build_z(d).max_abs_diff(&DenseOperator(sz)) < 1e-15);
    }

    #[test]
    fn identity_word_builds_identity() {
        let cfg = OracleConfig::default();
        for d in 2..6 {
            let d = dim(d);
            let id = build_single(EntryWord::IDENTITY, d, &cfg).unwrap();
            assert_eq!(id, DenseOperator::identity(d.get() as usize));
        }
    }

    #[test]
    fn y_has_order_d() {
        for d in 2..=8 {
            let d = dim(d);
            let y4 = build_y(d).pow(d.get());
            assert!(y4.max_abs_diff(&DenseOperator::identity(d.get() as usize)) < 1e-12);
        }
    }

    #[test]
    fn single_party_bound() {
        let cfg = OracleConfig::default();
        assert!(matches!(
            build_single(EntryWord::x(1), dim(17), &cfg),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn y_encoding_matches_matrix() {
        for d in 2..=8 {
            let d = dim(d);
            let sym = build_monomial(Monomial::y(d), d);
            assert!(sym.max_abs_diff(&build_y(d)) < 1e-12, "d={d}");
        }
    }

    #[test]
    fn y_squared_phase_at_d4() {
        // Freeze Y^2 at d = 4 from the matrix: it must be e^{iπs/4} X^2 Z^2
        // for exactly one s.
        let d = dim(4);
        let y2 = build_y(d).pow(2);
        let base = build_x(d).pow(2).mul(&build_z(d).pow(2));
        let hits: Vec<i64> = (0..8)
            .filter(|&s| base.scale(phase_value(s, d)).max_abs_diff(&y2) < 1e-12)
            .collect();
        assert_eq!(hits, vec![0]);
        let sym = crate::weyl::monomial_pow(Monomial::y(d), 2, d).unwrap();
        assert_eq!(sym, Monomial::new(0, 2, 2, d));
    }

    #[test]
    fn kron_of_x_and_y() {
        let cfg = OracleConfig::default();
        let d = dim(2);
        let row = build_row(&[EntryWord::x(1), EntryWord::y(1)], d, &cfg).unwrap();
        assert_eq!(row, build_x(d).kron(&build_y(d)));
    }

    #[test]
    fn capacity_is_enforced() {
        let cfg = OracleConfig {
            capacity: 64,
            ..OracleConfig::default()
        };
        let err = build_row(&[EntryWord::x(1); 7], dim(2), &cfg).unwrap_err();
        assert!(matches!(err, Error::Capacity { needed: 128, limit: 64, .. }));
    }

    #[test]
    fn factored_application_matches_full() {
        let cfg = OracleConfig::default();
        let d = dim(3);
        let row = [EntryWord::x(2), EntryWord::y(1), EntryWord::z(2)];
        let full = build_row(&row, d, &cfg).unwrap();
        let psi = StateVector(DVector::from_iterator(
            27,
            (0..27).map(|k| c((k as f64).sin(), (k as f64 * 0.3).cos())),
        ));
        let a = full.apply(&psi);
        let b = apply_row(&row, d, &psi);
        assert!((&a.0 - &b.0).norm() < 1e-12);
    }

    #[test]
    fn sigma_x_on_zero_is_not_eigen() {
        let cfg = OracleConfig::default();
        let d = dim(2);
        let psi = StateVector::basis(2, 0);
        assert_eq!(eigenvalue_on(&build_x(d), &psi, &cfg).unwrap(), None);
        let z = eigenvalue_on(&build_z(d), &psi, &cfg).unwrap().unwrap();
        assert!((z - ONE).norm() < 1e-12);
    }

    #[test]
    fn ghz_state_is_normalized() {
        let cfg = OracleConfig::default();
        let psi = flat_ghz_state(dim(2), 5, &cfg).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        let amp = 1.0 / 2f64.sqrt();
        assert!((psi.0[0] - c(amp, 0.)).norm() < 1e-12);
        assert!((psi.0[31] - c(amp, 0.)).norm() < 1e-12);
        assert_eq!(psi.0.iter().filter(|a| a.norm() > 0.0).count(), 2);
    }

    #[test]
    fn mermin_eigenbasis() {
        let cfg = OracleConfig::default();
        let t = ParadoxTable::parse(dim(2), &["X X X", "X Y Y", "Y X Y", "Y Y X"], "m").unwrap();
        let basis = joint_eigenbasis(&t, &cfg).unwrap();
        assert_eq!(basis.len(), 8);
        for v in &basis {
            let prod: C64 = v.eigenvalues.iter().product();
            assert!((prod + ONE).norm() < 1e-8);
            let vals = row_eigenvalues(&t, &v.state, &cfg).unwrap();
            for (a, b) in vals.iter().zip(&v.eigenvalues) {
                assert!((a - b).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn eigenbasis_rejects_noncommuting() {
        let cfg = OracleConfig::default();
        let t = ParadoxTable::parse(dim(3), &["X", "Z"], "xz").unwrap();
        assert!(matches!(joint_eigenbasis(&t, &cfg), Err(Error::NonCommuting(0, 1))));
    }

    #[test]
    fn identity_table_is_not_a_paradox() {
        let cfg = OracleConfig::default();
        let t = ParadoxTable::parse(dim(3), &["I I", "I I"], "id").unwrap();
        let v = oracle_verify(&t, &cfg).unwrap();
        assert!(!v.is_paradox);
        assert_eq!(v.quantum_phase, Some(PhaseExp::ONE));
    }

    #[test]
    fn oracle_witnesses_match_symbolic() {
        let cfg = OracleConfig::default();
        for (rows, d) in [(&["X", "Y"][..], 4), (&["X X", "X Y"][..], 2), (&["X X", "Y Y"][..], 2)] {
            let t = ParadoxTable::parse(dim(d), rows, "").unwrap();
            assert_eq!(oracle_verify(&t, &cfg).unwrap(), crate::paradox::verify(&t));
        }
    }
}
