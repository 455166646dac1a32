//! Recovering standard-module multiplicities from a matrix representation
//! that is (assumed to be) a direct sum of standards: exact ranks of the
//! partial cup idempotents E_p = u_1 u_3 ... u_{2p-1} feed a triangular
//! system whose coefficients are the d(n-2p, q-p). Also the cyclic span of a
//! vector and quotients in the split Grothendieck group.

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::comb::d;
use crate::error::{Result, TlError};
use crate::matrix::{QMatrix, SpanBasis, Q};
use crate::rep::{verify_relations, MatrixRep};

/// Multiplicities s_p of V_{n,p} for p = 1..floor(n/2). `consistent` records
/// the audit: all entries non-negative and total dimension matching; a
/// failing audit signals the input was not a direct sum of standards.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    pub mult: Vec<i64>,
    pub consistent: bool,
}

impl Decomposition {
    /// Total dimension the multiplicity vector accounts for.
    pub fn dimension(&self) -> i64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(idx, &m)| m * d(self.n as i64, idx as i64 + 1))
            .sum()
    }
}

/// Ranks of rho(E_p) for p = 1..floor(n/2).
pub fn cup_idempotent_ranks(rep: &MatrixRep) -> Result<Vec<usize>> {
    let pmax = rep.n() / 2;
    let mut ranks = Vec::with_capacity(pmax);
    let mut acc = QMatrix::identity(rep.dim());
    for p in 1..=pmax {
        acc = acc.mul(rep.generator(2 * p - 1)?);
        ranks.push(acc.rank());
    }
    Ok(ranks)
}

/// Solve the triangular rank system descending in p. The input must satisfy
/// the Temperley-Lieb relations exactly; a violation is a hard error.
pub fn decompose(rep: &MatrixRep) -> Result<Decomposition> {
    let report = verify_relations(rep);
    if !report.is_ok() {
        return Err(TlError::RelationsViolated(report.summary()));
    }
    let n = rep.n() as i64;
    let pmax = rep.n() / 2;
    let ranks = cup_idempotent_ranks(rep)?;
    let mut mult = vec![0i64; pmax];
    for p in (1..=pmax).rev() {
        let mut s = ranks[p - 1] as i64;
        for q in p + 1..=pmax {
            s -= mult[q - 1] * d(n - 2 * p as i64, (q - p) as i64);
        }
        mult[p - 1] = s; // the diagonal coefficient d(n-2p, 0) is 1
    }
    let dec = Decomposition { n: rep.n(), mult, consistent: false };
    let consistent = dec.mult.iter().all(|&m| m >= 0) && dec.dimension() == rep.dim() as i64;
    Ok(Decomposition { consistent, ..dec })
}

#[derive(Clone, Debug)]
pub struct CyclicSpan {
    pub dim: usize,
    pub decomposition: Decomposition,
}

/// Span of the monoid orbit of a vector, together with the decomposition of
/// the restricted action. The span is computed by closing under the
/// generator matrices, which generates the same subspace as running over all
/// diagrams.
pub fn cyclic_span(rep: &MatrixRep, v: &[Q]) -> Result<CyclicSpan> {
    let report = verify_relations(rep);
    if !report.is_ok() {
        return Err(TlError::RelationsViolated(report.summary()));
    }
    if v.len() != rep.dim() {
        return Err(TlError::DimensionMismatch(format!(
            "vector length {} != dim {}",
            v.len(),
            rep.dim()
        )));
    }
    let mut span = SpanBasis::new(rep.dim());
    if v.iter().any(|x| !x.is_zero()) {
        span.insert(v);
    }
    let mut frontier = 0;
    while frontier < span.len() {
        let b = span.originals()[frontier].clone();
        for g in rep.generators() {
            let w = g.apply(&b);
            if w.iter().any(|x| !x.is_zero()) {
                span.insert(&w);
            }
        }
        frontier += 1;
    }
    let dim = span.len();
    if dim == 0 {
        return Ok(CyclicSpan {
            dim,
            decomposition: decompose(&MatrixRep::zero(rep.n())?)?,
        });
    }
    let basis = span.basis_matrix();
    let mut restricted = Vec::with_capacity(rep.n() - 1);
    for g in rep.generators() {
        let image = g.mul(&basis);
        let x = basis
            .solve(&image)
            .ok_or_else(|| TlError::Other("span not invariant".into()))?;
        restricted.push(x);
    }
    let sub = MatrixRep::new(rep.n(), restricted, None)?;
    Ok(CyclicSpan { dim, decomposition: decompose(&sub)? })
}

/// Delete the named summand classes (1-based p indices) from a decomposition.
pub fn grothendieck_quotient(dec: &Decomposition, kill: &[usize]) -> Result<Decomposition> {
    let mut out = dec.clone();
    for &p in kill {
        if p < 1 || p > out.mult.len() {
            return Err(TlError::IndexOutOfRange(p));
        }
        out.mult[p - 1] = 0;
    }
    Ok(out)
}
