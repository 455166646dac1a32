//! Matrix models of TL_n actions over exact rationals: the standard modules
//! V_{n,p} on link-state bases, word and diagram evaluation, the bilinear
//! form on link states, and exact verification of the defining relations.

use num::{One, Zero};

use crate::diagram::{Diagram, MonoidTable, Word};
use crate::error::{Result, TlError};
use crate::link_state::{
    act_standard, defects_pair_up, enumerate_states, LinkState, PointedState,
};
use crate::matrix::{QMatrix, Q};

/// Generator-indexed matrices for a TL_n action on a finite-dimensional
/// space; vectors are columns and matrices act on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    n: usize,
    dim: usize,
    gens: Vec<QMatrix>,
    labels: Option<Vec<String>>,
}

impl MatrixRep {
    pub fn new(n: usize, gens: Vec<QMatrix>, labels: Option<Vec<String>>) -> Result<MatrixRep> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        if gens.len() != n - 1 {
            return Err(TlError::DimensionMismatch(format!(
                "expected {} generator matrices, got {}",
                n - 1,
                gens.len()
            )));
        }
        let dim = gens.first().map_or(0, QMatrix::rows);
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(TlError::DimensionMismatch(
                    "generator matrices must be square of equal size".into(),
                ));
            }
        }
        if let Some(l) = &labels {
            if l.len() != dim {
                return Err(TlError::DimensionMismatch("label count != dim".into()));
            }
        }
        Ok(MatrixRep { n, dim, gens, labels })
    }

    /// The zero-dimensional representation.
    pub fn zero(n: usize) -> Result<MatrixRep> {
        MatrixRep::new(n, vec![QMatrix::zeros(0, 0); n - 1], None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Matrix of u_i, 1-based.
    pub fn generator(&self, i: usize) -> Result<&QMatrix> {
        if i < 1 || i > self.n - 1 {
            return Err(TlError::BadGenerator { index: i, max: self.n - 1 });
        }
        Ok(&self.gens[i - 1])
    }

    pub fn generators(&self) -> &[QMatrix] {
        &self.gens
    }

    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.n != other.n {
            return Err(TlError::StrandMismatch(self.n, other.n));
        }
        let dim = self.dim + other.dim;
        let gens = (1..self.n)
            .map(|i| {
                let a = &self.gens[i - 1];
                let b = &other.gens[i - 1];
                QMatrix::from_fn(dim, dim, |r, c| {
                    if r < self.dim && c < self.dim {
                        a[(r, c)].clone()
                    } else if r >= self.dim && c >= self.dim {
                        b[(r - self.dim, c - self.dim)].clone()
                    } else {
                        Q::zero()
                    }
                })
            })
            .collect();
        let labels = match (&self.labels, &other.labels) {
            (Some(a), Some(b)) => {
                let mut l = a.clone();
                l.extend(b.iter().cloned());
                Some(l)
            }
            _ => None,
        };
        MatrixRep::new(self.n, gens, labels)
    }

    /// Conjugate by an invertible basis change: u_i -> P u_i P^{-1}.
    pub fn conjugate(&self, p: &QMatrix) -> Result<MatrixRep> {
        if p.rows() != self.dim || p.cols() != self.dim {
            return Err(TlError::DimensionMismatch("basis change shape".into()));
        }
        let pinv = p
            .inverse()
            .ok_or_else(|| TlError::Other("basis change is singular".into()))?;
        let gens = self
            .gens
            .iter()
            .map(|g| p.mul(g).mul(&pinv))
            .collect();
        MatrixRep::new(self.n, gens, None)
    }
}

/// The standard module V_{n,p} on the canonical (n,p) link-state basis;
/// actions that raise the cup count contribute zero columns.
pub fn standard_rep(n: usize, p: usize) -> Result<MatrixRep> {
    if p < 1 || 2 * p > n {
        return Err(TlError::BadCupCount { n, p });
    }
    let states = enumerate_states(n, p)?;
    let index = |s: &LinkState| states.binary_search(s).expect("basis state");
    let dim = states.len();
    let mut gens = Vec::with_capacity(n - 1);
    for i in 1..n {
        let g = Diagram::generator(n, i)?;
        let mut m = QMatrix::zeros(dim, dim);
        for (j, v) in states.iter().enumerate() {
            match act_standard(&g, &PointedState::State(v.clone()), p)? {
                PointedState::Zero => {}
                PointedState::State(w) => m[(index(&w), j)] = Q::one(),
            }
        }
        gens.push(m);
    }
    let labels = states.iter().map(|s| s.pattern()).collect();
    MatrixRep::new(n, gens, Some(labels))
}

/// Ordered product of generator matrices; the empty word gives the identity.
pub fn rep_of_word(rep: &MatrixRep, w: &Word) -> Result<QMatrix> {
    if w.n() != rep.n {
        return Err(TlError::StrandMismatch(w.n(), rep.n));
    }
    let mut acc = QMatrix::identity(rep.dim);
    for &i in w.letters() {
        acc = acc.mul(rep.generator(i)?);
    }
    Ok(acc)
}

/// Matrix of an arbitrary diagram, through any word that evaluates to it.
/// Well defined on representations that satisfy the defining relations.
pub fn rep_of_diagram(rep: &MatrixRep, d: &Diagram, table: &MonoidTable) -> Result<QMatrix> {
    if d.n() != rep.n || table.n != rep.n {
        return Err(TlError::StrandMismatch(d.n(), rep.n));
    }
    let w = table
        .word_for(d)
        .ok_or_else(|| TlError::Other("diagram not in monoid table".into()))?;
    rep_of_word(rep, w)
}

/// One violated identity of the presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationViolation {
    Idempotent { i: usize },
    Neighbor { i: usize, j: usize },
    LongDistance { i: usize, j: usize },
}

impl std::fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RelationViolation::Idempotent { i } => write!(f, "u_{i}^2 != u_{i}"),
            RelationViolation::Neighbor { i, j } => write!(f, "u_{i} u_{j} u_{i} != u_{i}"),
            RelationViolation::LongDistance { i, j } => write!(f, "u_{i} u_{j} != u_{j} u_{i}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RelationReport {
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.is_ok() {
            "all relations hold".into()
        } else {
            self.violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}

/// Exact check of the idempotent, neighbor and long-distance families.
pub fn verify_relations(rep: &MatrixRep) -> RelationReport {
    let mut report = RelationReport::default();
    let n = rep.n;
    for i in 1..n {
        let m = &rep.gens[i - 1];
        if &m.mul(m) != m {
            report.violations.push(RelationViolation::Idempotent { i });
        }
    }
    for i in 1..n {
        for j in [i.wrapping_sub(1), i + 1] {
            if j < 1 || j > n - 1 {
                continue;
            }
            let mi = &rep.gens[i - 1];
            let mj = &rep.gens[j - 1];
            if &mi.mul(mj).mul(mi) != mi {
                report.violations.push(RelationViolation::Neighbor { i, j });
            }
        }
    }
    for i in 1..n {
        for j in i + 2..n {
            let mi = &rep.gens[i - 1];
            let mj = &rep.gens[j - 1];
            if mi.mul(mj) != mj.mul(mi) {
                report.violations.push(RelationViolation::LongDistance { i, j });
            }
        }
    }
    report
}

/// The Gram matrix of the link-state bilinear form on V_{n,p} at loop
/// weight 1: entries are 0 or 1, the diagonal is all ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub n: usize,
    pub p: usize,
    pub entries: QMatrix,
}

pub fn gram_matrix(n: usize, p: usize) -> Result<GramMatrix> {
    if p < 1 || 2 * p > n {
        return Err(TlError::BadCupCount { n, p });
    }
    let states = enumerate_states(n, p)?;
    let dim = states.len();
    let mut entries = QMatrix::zeros(dim, dim);
    for (i, v) in states.iter().enumerate() {
        for (j, w) in states.iter().enumerate() {
            if defects_pair_up(v, w)? {
                entries[(i, j)] = Q::one();
            }
        }
    }
    Ok(GramMatrix { n, p, entries })
}
