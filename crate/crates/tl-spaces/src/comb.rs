//! Compositions of integers, the link-state dimension numbers d_{n,p}, the
//! coefficients d^r_lambda built from them, and the two multiplicity
//! calculators (closed form and descending recursion) that translate a
//! filtration profile into standard-module multiplicities.

use serde::{Deserialize, Serialize};

use crate::error::{Result, TlError};

/// An ordered way to sum up to a positive integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(TlError::Other(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Composition { parts })
    }

    /// The empty composition of 0; a convenience for prefix identities.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn row(&self) -> usize {
        self.parts.len()
    }

    /// (t, mu): prefix a part to the front.
    pub fn prefixed(&self, t: usize) -> Composition {
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.push(t);
        parts.extend_from_slice(&self.parts);
        Composition { parts }
    }
}

impl std::fmt::Display for Composition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

const MAX_COMPOSITION_TOTAL: usize = 20;

/// All 2^(m-1) compositions of m. The order recurses on the last part, which
/// reproduces the listing (1,1,1), (2,1), (1,2), (3) for m = 3.
pub fn compositions(m: usize) -> Result<Vec<Composition>> {
    if m == 0 {
        return Err(TlError::Other("compositions of 0 are not defined".into()));
    }
    if m > MAX_COMPOSITION_TOTAL {
        return Err(TlError::ResourceLimit {
            n: m,
            cap: MAX_COMPOSITION_TOTAL,
        });
    }
    fn go(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for last in 1..=m {
            for mut head in go(m - last) {
                head.push(last);
                out.push(head);
            }
        }
        out
    }
    Ok(go(m)
        .into_iter()
        .map(|parts| Composition { parts })
        .collect())
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// dim V_{n,p} = C(n,p) - C(n,p-1), extended to a total function: d(n,0) = 1
/// for n >= 0, and 0 whenever p < 0 or 2p > n.
pub fn d(n: i64, p: i64) -> i64 {
    if p < 0 || n < 0 || 2 * p > n {
        return 0;
    }
    binomial(n, p) - binomial(n, p - 1)
}

/// d^r_lambda = prod_c d(r - 2*(sum of parts before c), part_c).
pub fn d_lambda(r: i64, lam: &Composition) -> i64 {
    let mut acc: i64 = 1;
    let mut used: i64 = 0;
    for &part in lam.parts() {
        acc *= d(r - 2 * used, part as i64);
        if acc == 0 {
            return 0;
        }
        used += part as i64;
    }
    acc
}

/// d^r_{(t,mu)} = d(r,t) * d^{r-2t}_mu. The exponent r-2t is the one forced
/// by the definition of d^r_lambda; see `d_lambda`.
pub fn check_hddr(r: i64, t: usize, mu: &Composition) -> bool {
    d_lambda(r, &mu.prefixed(t)) == d(r, t as i64) * d_lambda(r - 2 * t as i64, mu)
}

/// Betti numbers of the filtration R_1 ⊇ R_2 ⊇ ... in one homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationProfile {
    pub n: usize,
    pub k: usize,
    /// betti[p-1] = dim H_k(R_p), for p = 1..floor(n/2).
    pub betti: Vec<i64>,
}

impl FiltrationProfile {
    pub fn new(n: usize, k: usize, betti: Vec<i64>) -> Result<Self> {
        if betti.len() != n / 2 {
            return Err(TlError::BadProfile {
                got: betti.len(),
                expected: n / 2,
            });
        }
        Ok(FiltrationProfile { n, k, betti })
    }
}

/// Multiplicities of the standard modules V_{n,p} for p = 1..floor(n/2).
/// Negative entries are reported with `realizable: false` instead of erroring:
/// such a profile is not realizable by any surjective action with Q = {*}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicities {
    pub n: usize,
    pub mult: Vec<i64>,
    pub realizable: bool,
}

impl Multiplicities {
    fn new(n: usize, mult: Vec<i64>) -> Self {
        let realizable = mult.iter().all(|&m| m >= 0);
        Multiplicities { n, mult, realizable }
    }
}

/// Closed form: s_p = betti_p + sum over q > p and lambda in Comp(q-p) of
/// (-1)^row(lambda) * d^{n-2p}_lambda * betti_q.
pub fn multiplicity_closed(profile: &FiltrationProfile) -> Result<Multiplicities> {
    let pmax = profile.n / 2;
    if profile.betti.len() != pmax {
        return Err(TlError::BadProfile {
            got: profile.betti.len(),
            expected: pmax,
        });
    }
    let n = profile.n as i64;
    let mut mult = Vec::with_capacity(pmax);
    for p in 1..=pmax {
        let r_p = n - 2 * p as i64;
        let mut s = profile.betti[p - 1];
        for q in p + 1..=pmax {
            let b_q = profile.betti[q - 1];
            if b_q == 0 {
                continue;
            }
            for lam in compositions(q - p)? {
                let sign = if lam.row() % 2 == 0 { 1 } else { -1 };
                s += sign * d_lambda(r_p, &lam) * b_q;
            }
        }
        mult.push(s);
    }
    Ok(Multiplicities::new(profile.n, mult))
}

/// The recursion from which the closed form is derived:
/// s_pmax = betti_pmax, then s_p = betti_p - sum_{q>p} d(n-2p, q-p) * s_q.
pub fn multiplicity_recursive(profile: &FiltrationProfile) -> Result<Multiplicities> {
    let pmax = profile.n / 2;
    if profile.betti.len() != pmax {
        return Err(TlError::BadProfile {
            got: profile.betti.len(),
            expected: pmax,
        });
    }
    let n = profile.n as i64;
    let mut mult = vec![0i64; pmax];
    for p in (1..=pmax).rev() {
        let mut s = profile.betti[p - 1];
        for q in p + 1..=pmax {
            s -= d(n - 2 * p as i64, (q - p) as i64) * mult[q - 1];
        }
        mult[p - 1] = s;
    }
    Ok(Multiplicities::new(profile.n, mult))
}

/// Betti numbers of the wedge model with `spec[q-1]` copies of the space built
/// on (n,q) link states: betti_p = sum_q spec_q * d(n-2p, q-p). Useful for
/// synthesizing realizable profiles.
pub fn profile_of_multiplicities(n: usize, k: usize, mult: &[i64]) -> Result<FiltrationProfile> {
    let pmax = n / 2;
    if mult.len() != pmax {
        return Err(TlError::BadProfile {
            got: mult.len(),
            expected: pmax,
        });
    }
    let betti = (1..=pmax)
        .map(|p| {
            (p..=pmax)
                .map(|q| mult[q - 1] * d(n as i64 - 2 * p as i64, (q - p) as i64))
                .sum()
        })
        .collect();
    FiltrationProfile::new(n, k, betti)
}
