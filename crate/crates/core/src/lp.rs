//! Exact rational linear feasibility with verifiable certificates.
//!
//! Phase-1 simplex with Bland's rule over `BigRational`, so termination is
//! guaranteed and every answer is a machine-checkable artifact: a feasible
//! point that satisfies each row exactly, or a Farkas certificate whose
//! nonnegative combination of rows is contradictory. A float twin of the
//! same solver serves as presolve for large sweeps; float rays are always
//! re-proved exactly before they are trusted.
//!
//! Tall systems are decided on the Farkas side: for `{Ax <= b}` the
//! alternative system `{y >= 0, A'y = 0, b'y = -1}` has only `n+1` equations,
//! and its own infeasibility certificate rearranges into a feasible point of
//! the original system, so both outcomes stay exact.

use crate::num::{rat_to_f64, rat_to_string, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

impl Rel {
    /// Orientation applied when a row enters a nonnegative combination:
    /// `Ge` rows participate as `-a.x <= -b`.
    fn orient(self) -> i32 {
        match self {
            Rel::Ge => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
    pub tag: String,
}

/// Dense system of rational linear constraints.
///
/// Rows are reference-counted so large shared banks (e.g. an entropy cone
/// reused across thousands of case systems) are cheap to assemble.
#[derive(Clone, Debug, Default)]
pub struct ConstraintSystem {
    pub n_vars: usize,
    pub rows: Vec<Arc<Row>>,
}

impl ConstraintSystem {
    pub fn new(n_vars: usize) -> Self {
        Self { n_vars, rows: Vec::new() }
    }

    pub fn push(&mut self, coeffs: Vec<Rat>, rel: Rel, rhs: Rat, tag: impl Into<String>) {
        assert_eq!(coeffs.len(), self.n_vars);
        self.rows.push(Arc::new(Row { coeffs, rel, rhs, tag: tag.into() }));
    }

    pub fn push_shared(&mut self, row: Arc<Row>) {
        assert_eq!(row.coeffs.len(), self.n_vars);
        self.rows.push(row);
    }

    /// Index of a row that is trivially unsatisfiable (all-zero coefficients
    /// with an impossible right-hand side), if any. Such rows are legal but
    /// normally indicate a construction bug upstream.
    pub fn trivially_unsat_row(&self) -> Option<usize> {
        self.rows.iter().position(|r| {
            r.coeffs.iter().all(|c| c.is_zero())
                && match r.rel {
                    Rel::Le => r.rhs.is_negative(),
                    Rel::Ge => r.rhs.is_positive(),
                    Rel::Eq => !r.rhs.is_zero(),
                }
        })
    }
}

/// Farkas certificate: one multiplier per row.
///
/// Multipliers of inequality rows are nonnegative and apply to the row in
/// `<=` orientation (`Ge` rows are first negated); equality rows may carry
/// either sign. Validity means the combined coefficients vanish while the
/// combined right-hand side is strictly negative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub multipliers: Vec<String>,
}

impl Certificate {
    pub fn from_rats(m: &[Rat]) -> Self {
        Self { multipliers: m.iter().map(rat_to_string).collect() }
    }

    pub fn to_rats(&self) -> Result<Vec<Rat>, crate::num::ParseRatError> {
        self.multipliers.iter().map(|s| crate::num::parse_rat(s)).collect()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Feasible(Vec<Rat>),
    Infeasible(Certificate),
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Verdict::Feasible(_))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LpError {
    #[error("phase-1 simplex reported an unbounded direction; system is malformed")]
    Unbounded,
    #[error("certificate error: {0}")]
    BadCertificate(String),
}

// ---------------------------------------------------------------------------
// scalar abstraction shared by the exact solver and the float presolve
// ---------------------------------------------------------------------------

trait Field: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg_of(&self) -> Self;
    fn lt(&self, o: &Self) -> bool;
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_of(&self) -> Self {
        -self.clone()
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

const F64_TOL: f64 = 1e-9;

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        self.abs() <= F64_TOL
    }
    fn is_neg(&self) -> bool {
        *self < -F64_TOL
    }
    fn is_pos(&self) -> bool {
        *self > F64_TOL
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_of(&self) -> Self {
        -self
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

// ---------------------------------------------------------------------------
// phase-1 simplex on standard form  { Cx = d, x >= 0 }
// ---------------------------------------------------------------------------

enum Phase1<T> {
    Feasible(Vec<T>),
    /// Multipliers pi with pi.C <= 0 componentwise and pi.d > 0.
    Infeasible(Vec<T>),
    IterationCap,
}

/// Dense phase-1 with explicit artificial columns and Bland's rule.
/// `cap = 0` means no iteration cap (exact arithmetic terminates by Bland).
fn phase1<T: Field>(cols: &[Vec<T>], d: &[T], cap: usize) -> Phase1<T> {
    let m = d.len();
    let n = cols.len();
    debug_assert!(cols.iter().all(|c| c.len() == m));
    // tableau rows: [structural columns | artificial identity | rhs]
    let width = n + m + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut flip = vec![false; m];
    for i in 0..m {
        let mut row: Vec<T> = Vec::with_capacity(width);
        let f = d[i].is_neg();
        flip[i] = f;
        for col in cols {
            row.push(if f { col[i].neg_of() } else { col[i].clone() });
        }
        for k in 0..m {
            row.push(if k == i { T::one() } else { T::zero() });
        }
        row.push(if f { d[i].neg_of() } else { d[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // phase-1 reduced costs: c_j - sum of rows (basis = artificials)
    let mut obj: Vec<T> = vec![T::zero(); width];
    for j in 0..width {
        let mut s = T::zero();
        for row in t.iter() {
            s = s.add(&row[j]);
        }
        let c_j = if (n..n + m).contains(&j) { T::one() } else { T::zero() };
        obj[j] = c_j.sub(&s);
    }
    // obj[width-1] currently holds -(sum b) = -w
    let mut iters = 0usize;
    loop {
        if cap > 0 && iters > cap {
            return Phase1::IterationCap;
        }
        iters += 1;
        // Bland: first column with negative reduced cost
        let mut enter = None;
        for (j, o) in obj.iter().enumerate().take(n + m) {
            if o.is_neg() {
                enter = Some(j);
                break;
            }
        }
        let Some(enter) = enter else {
            let w = obj[width - 1].neg_of();
            if w.is_pos() {
                // pi_i = 1 - reduced cost of artificial i
                let pi: Vec<T> = (0..m)
                    .map(|i| {
                        let v = T::one().sub(&obj[n + i]);
                        if flip[i] {
                            v.neg_of()
                        } else {
                            v
                        }
                    })
                    .collect();
                return Phase1::Infeasible(pi);
            }
            let mut x = vec![T::zero(); n];
            for (i, &b) in basis.iter().enumerate() {
                if b < n {
                    x[b] = t[i][width - 1].clone();
                }
            }
            return Phase1::Feasible(x);
        };
        // ratio test, ties by smallest basis index (Bland)
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_pos() {
                continue;
            }
            match leave {
                None => leave = Some(i),
                Some(l) => {
                    // compare rhs_i / a_i vs rhs_l / a_l  without division:
                    // rhs_i * a_l  vs  rhs_l * a_i  (both pivots positive)
                    let lhs = t[i][width - 1].mul(&t[l][enter]);
                    let rhs = t[l][width - 1].mul(&t[i][enter]);
                    if lhs.lt(&rhs) || (!rhs.lt(&lhs) && basis[i] < basis[l]) {
                        leave = Some(i);
                    }
                }
            }
        }
        let Some(leave) = leave else {
            // phase-1 objective is bounded below; reaching here means a
            // numerically broken tableau (float path only)
            return Phase1::IterationCap;
        };
        // pivot
        let piv = t[leave][enter].clone();
        for v in t[leave].iter_mut() {
            *v = v.div(&piv);
        }
        for i in 0..m {
            if i == leave || t[i][enter].is_zero() {
                continue;
            }
            let f = t[i][enter].clone();
            let (pivot_row, row) = if i < leave {
                let (a, b) = t.split_at_mut(leave);
                (&b[0], &mut a[i])
            } else {
                let (a, b) = t.split_at_mut(i);
                (&a[leave], &mut b[0])
            };
            for (v, p) in row.iter_mut().zip(pivot_row.iter()) {
                *v = v.sub(&f.mul(p));
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (v, p) in obj.iter_mut().zip(t[leave].iter()) {
                *v = v.sub(&f.mul(p));
            }
        }
        basis[leave] = enter;
    }
}

// ---------------------------------------------------------------------------
// `<=`-normalized view and the Farkas-side system
// ---------------------------------------------------------------------------

/// Indices into the normalized row list: (original row, orientation).
fn normalized(sys: &ConstraintSystem) -> Vec<(usize, i32)> {
    let mut v = Vec::new();
    for (k, r) in sys.rows.iter().enumerate() {
        match r.rel {
            Rel::Le => v.push((k, 1)),
            Rel::Ge => v.push((k, -1)),
            Rel::Eq => {
                v.push((k, 1));
                v.push((k, -1));
            }
        }
    }
    v
}

enum SolveSide {
    Primal,
    Dual,
}

fn pick_side(sys: &ConstraintSystem) -> SolveSide {
    if sys.rows.len() > sys.n_vars + 1 {
        SolveSide::Dual
    } else {
        SolveSide::Primal
    }
}

/// Exact feasibility with point or certificate.
pub fn feasible(sys: &ConstraintSystem) -> Result<Verdict, LpError> {
    match pick_side(sys) {
        SolveSide::Primal => feasible_primal(sys),
        SolveSide::Dual => feasible_dual(sys),
    }
}

fn feasible_primal(sys: &ConstraintSystem) -> Result<Verdict, LpError> {
    let n = sys.n_vars;
    let m = sys.rows.len();
    if m == 0 {
        return Ok(Verdict::Feasible(vec![Rat::zero(); n]));
    }
    // columns: x+ (n), x- (n), one slack per inequality row
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for j in 0..n {
        cols.push(sys.rows.iter().map(|r| r.coeffs[j].clone()).collect());
    }
    for j in 0..n {
        cols.push(sys.rows.iter().map(|r| -r.coeffs[j].clone()).collect());
    }
    let mut slack_of_row = vec![None; m];
    for (k, r) in sys.rows.iter().enumerate() {
        let s = match r.rel {
            Rel::Le => Rat::one(),
            Rel::Ge => -Rat::one(),
            Rel::Eq => continue,
        };
        let mut col = vec![Rat::zero(); m];
        col[k] = s;
        slack_of_row[k] = Some(cols.len());
        cols.push(col);
    }
    let d: Vec<Rat> = sys.rows.iter().map(|r| r.rhs.clone()).collect();
    match phase1(&cols, &d, 0) {
        Phase1::Feasible(x) => {
            let point: Vec<Rat> = (0..n).map(|j| &x[j] - &x[n + j]).collect();
            Ok(Verdict::Feasible(point))
        }
        Phase1::Infeasible(pi) => {
            // pi.A = 0 on x+/x- columns; multiplier in <=-orientation is -pi
            let mult: Vec<Rat> = (0..m)
                .map(|k| {
                    let v = -pi[k].clone();
                    match sys.rows[k].rel {
                        Rel::Ge => -v, // stored against the negated row
                        _ => v,
                    }
                })
                .collect();
            Ok(Verdict::Infeasible(Certificate::from_rats(&mult)))
        }
        Phase1::IterationCap => Err(LpError::Unbounded),
    }
}

fn feasible_dual(sys: &ConstraintSystem) -> Result<Verdict, LpError> {
    let n = sys.n_vars;
    let norm = normalized(sys);
    // F: variables y_t >= 0 over normalized rows,
    //    sum_t y_t * a'_t = 0  (n equations),  sum_t y_t * (-b'_t) = 1
    let mut cols: Vec<Vec<Rat>> = Vec::with_capacity(norm.len());
    for &(k, o) in &norm {
        let r = &sys.rows[k];
        let mut col: Vec<Rat> = Vec::with_capacity(n + 1);
        for j in 0..n {
            let c = &r.coeffs[j];
            col.push(if o < 0 { -c.clone() } else { c.clone() });
        }
        let b = if o < 0 { -r.rhs.clone() } else { r.rhs.clone() };
        col.push(-b);
        cols.push(col);
    }
    let mut d = vec![Rat::zero(); n + 1];
    d[n] = Rat::one();
    match phase1(&cols, &d, 0) {
        Phase1::Feasible(y) => {
            // original system infeasible; fold y back onto original rows
            let mut mult = vec![Rat::zero(); sys.rows.len()];
            for (t, &(k, o)) in norm.iter().enumerate() {
                match sys.rows[k].rel {
                    Rel::Eq => {
                        if o > 0 {
                            mult[k] += &y[t];
                        } else {
                            mult[k] -= &y[t];
                        }
                    }
                    _ => mult[k] += &y[t],
                }
            }
            Ok(Verdict::Infeasible(Certificate::from_rats(&mult)))
        }
        Phase1::Infeasible(pi) => {
            // F infeasible => original feasible with x = pi[0..n] / pi[n]
            let tau = pi[n].clone();
            if !tau.is_positive() {
                return Err(LpError::Unbounded);
            }
            let point: Vec<Rat> = (0..n).map(|j| &pi[j] / &tau).collect();
            Ok(Verdict::Feasible(point))
        }
        Phase1::IterationCap => Err(LpError::Unbounded),
    }
}

// ---------------------------------------------------------------------------
// verification
// ---------------------------------------------------------------------------

/// Re-derive the verdict from first principles; `Err` explains the defect.
pub fn verify(sys: &ConstraintSystem, verdict: &Verdict) -> Result<(), LpError> {
    match verdict {
        Verdict::Feasible(x) => {
            if x.len() != sys.n_vars {
                return Err(LpError::BadCertificate("point dimension mismatch".into()));
            }
            for (k, r) in sys.rows.iter().enumerate() {
                let lhs: Rat = r.coeffs.iter().zip(x).map(|(c, v)| c * v).sum();
                let ok = match r.rel {
                    Rel::Le => lhs <= r.rhs,
                    Rel::Eq => lhs == r.rhs,
                    Rel::Ge => lhs >= r.rhs,
                };
                if !ok {
                    return Err(LpError::BadCertificate(format!(
                        "row {k} ({}) violated by claimed point",
                        r.tag
                    )));
                }
            }
            Ok(())
        }
        Verdict::Infeasible(cert) => {
            let mult = cert
                .to_rats()
                .map_err(|e| LpError::BadCertificate(e.to_string()))?;
            if mult.len() != sys.rows.len() {
                return Err(LpError::BadCertificate("multiplier count mismatch".into()));
            }
            let mut combined = vec![Rat::zero(); sys.n_vars];
            let mut rhs = Rat::zero();
            for (k, (r, lam)) in sys.rows.iter().zip(&mult).enumerate() {
                if r.rel != Rel::Eq && lam.is_negative() {
                    return Err(LpError::BadCertificate(format!(
                        "row {k}: negative multiplier on an inequality"
                    )));
                }
                let o = Rat::from_integer(r.rel.orient().into());
                let w = lam * &o;
                for (c, acc) in r.coeffs.iter().zip(combined.iter_mut()) {
                    *acc += c * &w;
                }
                rhs += &r.rhs * &w;
            }
            if combined.iter().any(|c| !c.is_zero()) {
                return Err(LpError::BadCertificate(
                    "combined coefficients do not vanish".into(),
                ));
            }
            if !rhs.is_negative() {
                return Err(LpError::BadCertificate(
                    "combined right-hand side is not negative".into(),
                ));
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// float presolve + exact confirmation of float rays
// ---------------------------------------------------------------------------

/// Float mirror of a constraint row, for presolving large sweeps.
#[derive(Clone, Debug)]
pub struct FloatRow {
    pub coeffs: Vec<f64>,
    pub rel: Rel,
    pub rhs: f64,
}

impl FloatRow {
    pub fn from_row(r: &Row) -> Self {
        Self {
            coeffs: r.coeffs.iter().map(rat_to_f64).collect(),
            rel: r.rel,
            rhs: rat_to_f64(&r.rhs),
        }
    }
}

#[derive(Clone, Debug)]
pub enum FloatVerdict {
    /// Looks feasible within tolerance.
    Feasible(Vec<f64>),
    /// Looks infeasible; carries an approximate Farkas ray per row
    /// (same sign convention as [`Certificate`]).
    InfeasibleRay(Vec<f64>),
    /// Pivot cap reached or tableau degraded; fall back to the exact path.
    Unreliable,
}

/// Dual-side phase-1 in f64. Cheap screening only: every outcome that
/// matters must be confirmed exactly.
pub fn presolve(rows: &[&FloatRow], n_vars: usize) -> FloatVerdict {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    let mut origin: Vec<(usize, i32)> = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let orients: &[i32] = match r.rel {
            Rel::Le => &[1],
            Rel::Ge => &[-1],
            Rel::Eq => &[1, -1],
        };
        for &o in orients {
            let s = o as f64;
            let mut col: Vec<f64> = r.coeffs.iter().map(|c| c * s).collect();
            col.push(-(r.rhs * s));
            cols.push(col);
            origin.push((k, o));
        }
    }
    let mut d = vec![0.0; n_vars + 1];
    d[n_vars] = 1.0;
    let cap = 40 * (n_vars + 1 + cols.len());
    match phase1(&cols, &d, cap) {
        Phase1::Feasible(y) => {
            let mut mult = vec![0.0; rows.len()];
            for (t, &(k, o)) in origin.iter().enumerate() {
                match rows[k].rel {
                    Rel::Eq => mult[k] += o as f64 * y[t],
                    _ => mult[k] += y[t],
                }
            }
            FloatVerdict::InfeasibleRay(mult)
        }
        Phase1::Infeasible(pi) => {
            let tau = pi[n_vars];
            if tau <= F64_TOL {
                return FloatVerdict::Unreliable;
            }
            FloatVerdict::Feasible((0..n_vars).map(|j| pi[j] / tau).collect())
        }
        Phase1::IterationCap => FloatVerdict::Unreliable,
    }
}

/// Turn an approximate Farkas ray into an exact certificate by solving the
/// alternative system restricted to the ray's support, in rationals.
/// Returns `None` when the support does not carry an exact certificate
/// (caller should fall back to [`feasible`]).
pub fn certify_from_ray(sys: &ConstraintSystem, ray: &[f64]) -> Option<Certificate> {
    if ray.len() != sys.rows.len() {
        return None;
    }
    let maxmag = ray.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if maxmag <= 0.0 {
        return None;
    }
    // candidate support, largest magnitudes first
    let mut idx: Vec<usize> = (0..ray.len()).collect();
    idx.sort_by(|&a, &b| ray[b].abs().partial_cmp(&ray[a].abs()).unwrap());
    let support: Vec<usize> = idx
        .into_iter()
        .filter(|&k| ray[k].abs() > 1e-9 * maxmag)
        .collect();
    if support.is_empty() {
        return None;
    }
    let n = sys.n_vars;
    // unknown lambda_k (signed, in <=-orientation) on the support:
    //   sum_k lambda_k * orient_k * a_k = 0,  sum_k lambda_k * orient_k * b_k = -1
    let rows_eq = n + 1;
    let cols = support.len();
    let mut m: Vec<Vec<Rat>> = vec![vec![Rat::zero(); cols + 1]; rows_eq];
    for (c, &k) in support.iter().enumerate() {
        let r = &sys.rows[k];
        let o = Rat::from_integer(r.rel.orient().into());
        for j in 0..n {
            m[j][c] = &r.coeffs[j] * &o;
        }
        m[n][c] = &r.rhs * &o;
    }
    m[n][cols] = -Rat::one();
    let sol = solve_rational(&mut m, rows_eq, cols)?;
    // sign check: inequalities need nonnegative multipliers
    for (c, &k) in support.iter().enumerate() {
        if sys.rows[k].rel != Rel::Eq && sol[c].is_negative() {
            return None;
        }
    }
    let mut mult = vec![Rat::zero(); sys.rows.len()];
    for (c, &k) in support.iter().enumerate() {
        mult[k] = sol[c].clone();
    }
    let cert = Certificate::from_rats(&mult);
    match verify(sys, &Verdict::Infeasible(cert.clone())) {
        Ok(()) => Some(cert),
        Err(_) => None,
    }
}

/// Gaussian elimination on the augmented matrix `m` (rows x (cols+1)).
/// Returns a particular solution with free unknowns at zero, or `None`
/// if inconsistent.
fn solve_rational(m: &mut [Vec<Rat>], rows: usize, cols: usize) -> Option<Vec<Rat>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0usize;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let piv = (row..rows).find(|&i| !m[i][col].is_zero());
        let Some(piv) = piv else { continue };
        m.swap(row, piv);
        let p = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = &*v / &p;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let (pr, tr) = if i < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&a[row], &mut b[0])
                };
                for (v, p) in tr.iter_mut().zip(pr.iter()) {
                    *v = &*v - &(&f * p);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
    }
    // inconsistency: zero row with nonzero rhs
    for r in m.iter().take(rows) {
        if r[..cols].iter().all(|v| v.is_zero()) && !r[cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Rat::zero(); cols];
    for (col, piv) in pivot_of_col.iter().enumerate() {
        if let Some(r) = piv {
            sol[col] = m[*r][cols].clone();
        }
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, rat_i};

    fn sys(rows: Vec<(Vec<i64>, Rel, i64)>, n: usize) -> ConstraintSystem {
        let mut s = ConstraintSystem::new(n);
        for (c, rel, b) in rows {
            s.push(c.into_iter().map(rat_i).collect(), rel, rat_i(b), "t");
        }
        s
    }

    #[test]
    fn tiny_infeasible() {
        // x >= 1, x <= 0
        let s = sys(vec![(vec![1], Rel::Ge, 1), (vec![1], Rel::Le, 0)], 1);
        let v = feasible(&s).unwrap();
        match &v {
            Verdict::Infeasible(c) => {
                let m = c.to_rats().unwrap();
                // classic multipliers (1,1) up to scale
                assert!(m[0].is_positive() && m[1].is_positive());
                assert_eq!(m[0], m[1]);
            }
            _ => panic!("expected infeasible"),
        }
        verify(&s, &v).unwrap();
    }

    #[test]
    fn tiny_feasible() {
        // x + y = 1, x >= 0, y >= 0
        let s = sys(
            vec![
                (vec![1, 1], Rel::Eq, 1),
                (vec![1, 0], Rel::Ge, 0),
                (vec![0, 1], Rel::Ge, 0),
            ],
            2,
        );
        let v = feasible(&s).unwrap();
        assert!(v.is_feasible());
        verify(&s, &v).unwrap();
    }

    #[test]
    fn dual_side_matches_primal() {
        // force the dual path by making the system tall
        let mut s = ConstraintSystem::new(2);
        for k in 0..8 {
            s.push(vec![rat_i(1), rat_i(k)], Rel::Ge, rat_i(k + 1), "lb");
        }
        s.push(vec![rat_i(1), rat_i(0)], Rel::Le, rat_i(0), "cap");
        assert!(matches!(pick_side(&s), SolveSide::Dual));
        let v = feasible(&s).unwrap();
        // x <= 0 but x + 0*y >= 1 forces infeasibility
        assert!(!v.is_feasible());
        verify(&s, &v).unwrap();
    }

    #[test]
    fn tampered_certificate_rejected() {
        let s = sys(vec![(vec![1], Rel::Ge, 1), (vec![1], Rel::Le, 0)], 1);
        let v = feasible(&s).unwrap();
        let Verdict::Infeasible(c) = v else { panic!() };
        let mut bad = c.clone();
        bad.multipliers[0] = "-1".into();
        assert!(verify(&s, &Verdict::Infeasible(bad)).is_err());
        let mut wrong = c;
        wrong.multipliers[1] = "7/3".into();
        assert!(verify(&s, &Verdict::Infeasible(wrong)).is_err());
    }

    #[test]
    fn zero_row_trivia() {
        let mut s = ConstraintSystem::new(1);
        s.push(vec![rat_i(0)], Rel::Le, rat(-1, 1), "zero");
        assert_eq!(s.trivially_unsat_row(), Some(0));
        let v = feasible(&s).unwrap();
        assert!(!v.is_feasible());
        verify(&s, &v).unwrap();
    }

    #[test]
    fn presolve_agrees_and_ray_certifies() {
        let s = sys(
            vec![
                (vec![1, 1], Rel::Le, 2),
                (vec![1, 0], Rel::Ge, 3),
                (vec![0, 1], Rel::Ge, 0),
            ],
            2,
        );
        let frows: Vec<FloatRow> = s.rows.iter().map(|r| FloatRow::from_row(r)).collect();
        let refs: Vec<&FloatRow> = frows.iter().collect();
        match presolve(&refs, 2) {
            FloatVerdict::InfeasibleRay(ray) => {
                let cert = certify_from_ray(&s, &ray).expect("support certificate");
                verify(&s, &Verdict::Infeasible(cert)).unwrap();
            }
            other => panic!("expected infeasible ray, got {other:?}"),
        }
        let exact = feasible(&s).unwrap();
        assert!(!exact.is_feasible());
    }
}
