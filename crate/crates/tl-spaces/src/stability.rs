//! Chains of TL_n modules connected by strand-appending inclusions, the
//! three-part stable-module criterion, rank-one (cyclicity) checking for
//! standard chains, filtration stability of space families, and the
//! end-to-end check that a filtration-stable chain has constant surviving
//! multiplicities after quotienting low summands away.

use std::collections::{BTreeMap, HashMap};

use crate::comb::FiltrationProfile;
use crate::decomp::{decompose, grothendieck_quotient};
use crate::diagram::{enumerate_diagrams, max_catalan_n, Diagram};
use crate::error::{Result, TlError};
use crate::link_state::{act, all_link_states, enumerate_states, include, LinkState};
use crate::matrix::{q_int, QMatrix, SpanBasis};
use crate::rep::{standard_rep, MatrixRep};
use crate::space::{filtration, homology_rep, pad_pattern, TlSpace, WedgeSpace};

/// A finite truncation of an LS-module: one module per strand count in
/// `n_min..=n_max` and one inclusion matrix per pair m < n.
#[derive(Clone, Debug)]
pub struct LsChain {
    n_min: usize,
    n_max: usize,
    modules: Vec<MatrixRep>,
    inclusions: BTreeMap<(usize, usize), QMatrix>,
}

impl LsChain {
    pub fn new(
        n_min: usize,
        n_max: usize,
        modules: Vec<MatrixRep>,
        inclusions: BTreeMap<(usize, usize), QMatrix>,
    ) -> Result<LsChain> {
        if n_min == 0 || n_max < n_min {
            return Err(TlError::BadChain("empty strand range".into()));
        }
        if modules.len() != n_max - n_min + 1 {
            return Err(TlError::BadChain(format!(
                "expected {} modules, got {}",
                n_max - n_min + 1,
                modules.len()
            )));
        }
        for (i, m) in modules.iter().enumerate() {
            if m.n() != n_min + i {
                return Err(TlError::BadChain(format!(
                    "module at position {i} has n = {}, expected {}",
                    m.n(),
                    n_min + i
                )));
            }
        }
        for m in n_min..=n_max {
            for n in m + 1..=n_max {
                let Some(mat) = inclusions.get(&(m, n)) else {
                    return Err(TlError::BadChain(format!("missing inclusion ({m},{n})")));
                };
                let (dm, dn) = (modules[m - n_min].dim(), modules[n - n_min].dim());
                if mat.rows() != dn || mat.cols() != dm {
                    return Err(TlError::BadChain(format!(
                        "inclusion ({m},{n}) has shape {}x{}, expected {}x{}",
                        mat.rows(),
                        mat.cols(),
                        dn,
                        dm
                    )));
                }
            }
        }
        Ok(LsChain { n_min, n_max, modules, inclusions })
    }

    pub fn n_min(&self) -> usize {
        self.n_min
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn module(&self, n: usize) -> &MatrixRep {
        &self.modules[n - self.n_min]
    }

    pub fn inclusion(&self, m: usize, n: usize) -> &QMatrix {
        &self.inclusions[&(m, n)]
    }

    pub fn inclusions(&self) -> &BTreeMap<(usize, usize), QMatrix> {
        &self.inclusions
    }

    /// Replace one inclusion matrix; the mutation harness uses this.
    pub fn with_inclusion(mut self, m: usize, n: usize, mat: QMatrix) -> LsChain {
        self.inclusions.insert((m, n), mat);
        self
    }

    /// Replace one module; the mutation harness uses this.
    pub fn with_module(mut self, n: usize, module: MatrixRep) -> LsChain {
        self.modules[n - self.n_min] = module;
        self
    }
}

/// The chain of standard modules V_{n,p} with the link-state inclusions.
pub fn standard_chain(p: usize, n_min: usize, n_max: usize) -> Result<LsChain> {
    if 2 * p > n_min {
        return Err(TlError::BadCupCount { n: n_min, p });
    }
    let modules: Vec<MatrixRep> = (n_min..=n_max)
        .map(|n| standard_rep(n, p))
        .collect::<Result<_>>()?;
    let mut inclusions = BTreeMap::new();
    for m in n_min..=n_max {
        let source = enumerate_states(m, p)?;
        for n in m + 1..=n_max {
            let target = enumerate_states(n, p)?;
            let mut mat = QMatrix::zeros(target.len(), source.len());
            for (j, v) in source.iter().enumerate() {
                let w = include(v, n)?;
                let i = target.binary_search(&w).expect("included state is a basis state");
                mat[(i, j)] = q_int(1);
            }
            inclusions.insert((m, n), mat);
        }
    }
    LsChain::new(n_min, n_max, modules, inclusions)
}

#[derive(Clone, Debug)]
pub struct StabilityReport {
    pub compat_ok: bool,
    pub equivariance_ok: bool,
    pub criterion3_ok: bool,
    /// (k, m, n) with inclusion(m,n) . inclusion(k,m) != inclusion(k,n).
    pub compat_witness: Option<(usize, usize, usize)>,
    /// (m, n, a) with rho_n(a) . inclusion != inclusion . rho_m(a).
    pub equivariance_witness: Option<(usize, usize, Diagram)>,
    /// (m, n, a, b) acting equally on included states but not on the module.
    pub criterion3_witness: Option<(usize, usize, Diagram, Diagram)>,
}

impl StabilityReport {
    pub fn pass(&self) -> bool {
        self.compat_ok && self.equivariance_ok && self.criterion3_ok
    }
}

/// Matrices of every TL_m diagram under a representation with n >= m (the
/// diagram is padded with through strands, which leaves generator indices
/// unchanged). Breadth-first closure, one matrix product per monoid edge.
fn diagram_matrices(rep: &MatrixRep, m: usize) -> Result<HashMap<Vec<usize>, QMatrix>> {
    let cap = max_catalan_n();
    if m > cap {
        return Err(TlError::ResourceLimit { n: m, cap });
    }
    let gens: Vec<Diagram> = (1..m)
        .map(|i| Diagram::generator(m, i))
        .collect::<Result<_>>()?;
    let id = Diagram::identity(m)?;
    let mut table: HashMap<Vec<usize>, QMatrix> = HashMap::new();
    table.insert(id.pairing().to_vec(), QMatrix::identity(rep.dim()));
    let mut queue = vec![id];
    while let Some(d) = queue.pop() {
        let mat = table[d.pairing()].clone();
        for (gi, g) in gens.iter().enumerate() {
            let next = d.compose(g)?.without_loops();
            if !table.contains_key(next.pairing()) {
                table.insert(next.pairing().to_vec(), mat.mul(rep.generator(gi + 1)?));
                queue.push(next.clone());
            }
        }
    }
    Ok(table)
}

/// The three-part criterion: inclusions compose, inclusions intertwine the
/// padded action, and elements that agree on included link states agree on
/// the included module. First witness per criterion is reported.
pub fn check_ls_module(chain: &LsChain) -> Result<StabilityReport> {
    let mut report = StabilityReport {
        compat_ok: true,
        equivariance_ok: true,
        criterion3_ok: true,
        compat_witness: None,
        equivariance_witness: None,
        criterion3_witness: None,
    };

    // (1) Compatibility of inclusions.
    'compat: for k in chain.n_min..=chain.n_max {
        for m in k + 1..=chain.n_max {
            for n in m + 1..=chain.n_max {
                let composite = chain.inclusion(m, n).mul(chain.inclusion(k, m));
                if &composite != chain.inclusion(k, n) {
                    report.compat_ok = false;
                    report.compat_witness = Some((k, m, n));
                    break 'compat;
                }
            }
        }
    }

    // (2) Equivariance of the inclusions under the padded TL_m action.
    'equiv: for m in chain.n_min..=chain.n_max {
        let lower = diagram_matrices(chain.module(m), m)?;
        for n in m + 1..=chain.n_max {
            let upper = diagram_matrices(chain.module(n), m)?;
            let inc = chain.inclusion(m, n);
            for a in enumerate_diagrams(m)? {
                let lhs = upper[a.pairing()].mul(inc);
                let rhs = inc.mul(&lower[a.pairing()]);
                if lhs != rhs {
                    report.equivariance_ok = false;
                    report.equivariance_witness = Some((m, n, a));
                    break 'equiv;
                }
            }
        }
    }

    // (3) The stable-module criterion: group TL_n diagrams by their set
    // action on the included link states of M_m and compare matrices within
    // groups.
    'crit3: for n in chain.n_min + 1..=chain.n_max {
        let matrices = diagram_matrices(chain.module(n), n)?;
        let diagrams = enumerate_diagrams(n)?;
        for m in chain.n_min..n {
            let included: Vec<LinkState> = all_link_states(m)?
                .iter()
                .map(|v| include(v, n))
                .collect::<Result<_>>()?;
            let inc = chain.inclusion(m, n);
            let mut groups: BTreeMap<Vec<LinkState>, (usize, QMatrix)> = BTreeMap::new();
            for (idx, a) in diagrams.iter().enumerate() {
                let signature: Vec<LinkState> = included
                    .iter()
                    .map(|v| act(a, v))
                    .collect::<Result<_>>()?;
                let composite = matrices[a.pairing()].mul(inc);
                match groups.get(&signature) {
                    None => {
                        groups.insert(signature, (idx, composite));
                    }
                    Some((first_idx, first_mat)) => {
                        if first_mat != &composite {
                            report.criterion3_ok = false;
                            report.criterion3_witness = Some((
                                m,
                                n,
                                diagrams[*first_idx].clone(),
                                a.clone(),
                            ));
                            break 'crit3;
                        }
                    }
                }
            }
        }
    }

    Ok(report)
}

/// Whether the orbit of the first basis vector of the lowest module, closed
/// under the generator actions and all inclusions, spans every module in the
/// chain. For standard chains this is the rank-one property; a chain of
/// zero modules passes vacuously.
pub fn check_rank_one(chain: &LsChain) -> Result<bool> {
    let levels = chain.n_max - chain.n_min + 1;
    let mut spans: Vec<SpanBasis> =
        (0..levels).map(|i| SpanBasis::new(chain.modules[i].dim())).collect();
    if let Some(first) = (0..levels).find(|&i| chain.modules[i].dim() > 0) {
        let mut seed = vec![q_int(0); chain.modules[first].dim()];
        seed[0] = q_int(1);
        spans[first].insert(&seed);
    } else {
        return Ok(true);
    }
    loop {
        let mut grew = false;
        for i in 0..levels {
            // Close under the generator matrices.
            let mut frontier = 0;
            while frontier < spans[i].len() {
                let v = spans[i].originals()[frontier].clone();
                for g in chain.modules[i].generators() {
                    let w = g.apply(&v);
                    if spans[i].insert(&w) {
                        grew = true;
                    }
                }
                frontier += 1;
            }
            // Push through the inclusions.
            for j in i + 1..levels {
                let inc = chain.inclusion(chain.n_min + i, chain.n_min + j);
                let images: Vec<Vec<crate::matrix::Q>> = spans[i]
                    .originals()
                    .iter()
                    .map(|v| inc.apply(v))
                    .collect();
                for w in images {
                    if spans[j].insert(&w) {
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    Ok((0..levels).all(|i| spans[i].len() == chain.modules[i].dim()))
}

/// Profiles are p-filtration stable when the entries at positions q >= p
/// agree across the whole family (absent positions count as zero).
pub fn check_filtration_stability(profiles: &[FiltrationProfile], p: usize) -> Result<bool> {
    if p < 1 {
        return Err(TlError::IndexOutOfRange(p));
    }
    if profiles.len() <= 1 {
        return Ok(true);
    }
    let k = profiles[0].k;
    if profiles.iter().any(|pr| pr.k != k) {
        return Err(TlError::Other("profiles disagree on the homological degree".into()));
    }
    let longest = profiles.iter().map(|pr| pr.betti.len()).max().unwrap_or(0);
    let entry = |pr: &FiltrationProfile, q: usize| pr.betti.get(q - 1).copied().unwrap_or(0);
    for q in p..=longest {
        let first = entry(&profiles[0], q);
        if profiles.iter().any(|pr| entry(pr, q) != first) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cell-level filtration stability for wedge models: the label sets of R_q
/// must agree after padding the state patterns up to the largest n.
pub fn check_filtration_stability_spaces(spaces: &[WedgeSpace], p: usize) -> Result<bool> {
    if p < 1 {
        return Err(TlError::IndexOutOfRange(p));
    }
    if spaces.len() <= 1 {
        return Ok(true);
    }
    let n_top = spaces.iter().map(WedgeSpace::n).max().unwrap();
    let q_top = n_top / 2;
    for q in p..=q_top {
        let mut sets: Vec<std::collections::BTreeSet<String>> = Vec::new();
        for w in spaces {
            let letters: Vec<usize> = (1..=q).map(|c| 2 * c - 1).collect();
            let letters: Vec<usize> = letters.into_iter().filter(|&l| l < w.n()).collect();
            if letters.len() < q {
                // R_q is below the range of this space: just the basepoint.
                sets.push(Default::default());
                continue;
            }
            let mut cells: std::collections::BTreeSet<String> = Default::default();
            for c in 0..w.cells().len() {
                let img = letters
                    .iter()
                    .try_fold(c, |cell, &l| w.maps()[l - 1][cell]);
                if let Some(img) = img {
                    cells.insert(pad_pattern(&w.cells()[img], n_top - w.n()));
                }
            }
            sets.push(cells);
        }
        if sets.iter().any(|s| s != &sets[0]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsirsEntry {
    pub n: usize,
    /// Full multiplicity vector of H_k.
    pub mult: Vec<i64>,
    /// Multiplicities surviving the Grothendieck quotient by V_{n,q}, q < p.
    pub surviving: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct FsirsReport {
    pub p: usize,
    pub k: usize,
    pub entries: Vec<FsirsEntry>,
    pub filtration_stable: bool,
    /// Whether the surviving multiplicity vector is the same for every space.
    pub stable: bool,
}

/// Decompose homology for each space, quotient away the summands below p in
/// the Grothendieck group, and check the surviving multiplicities agree
/// across the family. Filtration stability of the profiles is reported too.
pub fn verify_fsirs(spaces: &[TlSpace], p: usize, k: usize) -> Result<FsirsReport> {
    if p < 1 {
        return Err(TlError::IndexOutOfRange(p));
    }
    let mut entries = Vec::with_capacity(spaces.len());
    let mut profiles = Vec::with_capacity(spaces.len());
    for space in spaces {
        profiles.push(filtration(space, k)?);
        let dec = decompose(&homology_rep(space, k)?)?;
        let kill: Vec<usize> = (1..p.min(dec.mult.len() + 1)).collect();
        let quotiented = grothendieck_quotient(&dec, &kill)?;
        let surviving = if p <= quotiented.mult.len() {
            quotiented.mult[p - 1..].to_vec()
        } else {
            Vec::new()
        };
        entries.push(FsirsEntry { n: space.n(), mult: dec.mult, surviving });
    }
    let filtration_stable = check_filtration_stability(&profiles, p)?;
    let longest = entries.iter().map(|e| e.surviving.len()).max().unwrap_or(0);
    let padded = |e: &FsirsEntry| {
        let mut v = e.surviving.clone();
        v.resize(longest, 0);
        v
    };
    let stable = entries.windows(2).all(|w| padded(&w[0]) == padded(&w[1]));
    Ok(FsirsReport { p, k, entries, filtration_stable, stable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Point::{Bottom, Top};
    use crate::link_state::PointedState;
    use crate::space::build_wedge;

    #[test]
    fn standard_chains_pass_all_criteria() {
        let chain = standard_chain(1, 2, 5).unwrap();
        let report = check_ls_module(&chain).unwrap();
        assert!(report.pass(), "{report:?}");

        let chain = standard_chain(2, 4, 6).unwrap();
        let report = check_ls_module(&chain).unwrap();
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn standard_chain_inclusions_have_one_entry_per_column() {
        use num::Zero;
        let chain = standard_chain(2, 4, 7).unwrap();
        for ((_, _), inc) in chain.inclusions() {
            for j in 0..inc.cols() {
                let ones = (0..inc.rows()).filter(|&i| !inc[(i, j)].is_zero()).count();
                assert_eq!(ones, 1);
            }
        }
        assert!(standard_chain(2, 3, 5).is_err());
    }

    #[test]
    fn standard_chains_have_rank_one() {
        assert!(check_rank_one(&standard_chain(1, 2, 5).unwrap()).unwrap());
        assert!(check_rank_one(&standard_chain(2, 4, 6).unwrap()).unwrap());
    }

    #[test]
    fn doubled_chain_needs_two_generators() {
        let single = standard_chain(1, 2, 4).unwrap();
        let modules: Vec<MatrixRep> = (2..=4)
            .map(|n| {
                let m = standard_rep(n, 1).unwrap();
                m.direct_sum(&m).unwrap()
            })
            .collect();
        let mut inclusions = BTreeMap::new();
        for (&(m, n), inc) in single.inclusions() {
            let dm = inc.cols();
            let dn = inc.rows();
            let mut doubled = QMatrix::zeros(2 * dn, 2 * dm);
            for i in 0..dn {
                for j in 0..dm {
                    doubled[(i, j)] = inc[(i, j)].clone();
                    doubled[(dn + i, dm + j)] = inc[(i, j)].clone();
                }
            }
            inclusions.insert((m, n), doubled);
        }
        let chain = LsChain::new(2, 4, modules, inclusions).unwrap();
        assert!(check_ls_module(&chain).unwrap().pass());
        assert!(!check_rank_one(&chain).unwrap());
    }

    #[test]
    fn zero_chain_is_vacuously_rank_one() {
        let modules: Vec<MatrixRep> = (2..=4).map(|n| MatrixRep::zero(n).unwrap()).collect();
        let mut inclusions = BTreeMap::new();
        for m in 2..=4usize {
            for n in m + 1..=4 {
                inclusions.insert((m, n), QMatrix::zeros(0, 0));
            }
        }
        let chain = LsChain::new(2, 4, modules, inclusions).unwrap();
        assert!(check_rank_one(&chain).unwrap());
        assert!(check_ls_module(&chain).unwrap().pass());
    }

    #[test]
    fn corrupted_compat_is_detected() {
        let chain = standard_chain(1, 2, 4).unwrap();
        let dim24 = (chain.inclusion(2, 4).rows(), chain.inclusion(2, 4).cols());
        let wrong = QMatrix::zeros(dim24.0, dim24.1);
        let chain = chain.with_inclusion(2, 4, wrong);
        let report = check_ls_module(&chain).unwrap();
        assert!(!report.compat_ok);
        assert_eq!(report.compat_witness, Some((2, 3, 4)));
        assert!(!report.pass());
    }

    #[test]
    fn corrupted_equivariance_is_detected() {
        // Swap two rows of the inclusion V_{2,1} -> V_{3,1}: the included
        // vector becomes the wrong basis state.
        let chain = standard_chain(1, 2, 3).unwrap();
        let inc = chain.inclusion(2, 3);
        let mut swapped = QMatrix::zeros(inc.rows(), inc.cols());
        for j in 0..inc.cols() {
            for i in 0..inc.rows() {
                swapped[(inc.rows() - 1 - i, j)] = inc[(i, j)].clone();
            }
        }
        let chain = chain.with_inclusion(2, 3, swapped);
        let report = check_ls_module(&chain).unwrap();
        assert!(!report.equivariance_ok);
        let (m, n, a) = report.equivariance_witness.clone().unwrap();
        assert_eq!((m, n), (2, 3));
        assert_eq!(a.n(), 2);
        assert!(!report.pass());
    }

    #[test]
    fn criterion3_failure_has_witness() {
        // The identity of TL_3 and u_1 agree on the included state of M_2,
        // so criterion 3 forces their matrices to agree on the inclusion's
        // image. One-dimensional modules where every generator acts as zero
        // break exactly that: the inclusion is equivariant and inclusions
        // trivially compose, but rho(id) and rho(u_1) differ on the image.
        let lower = MatrixRep::new(2, vec![QMatrix::zeros(1, 1)], None).unwrap();
        let upper =
            MatrixRep::new(3, vec![QMatrix::zeros(1, 1), QMatrix::zeros(1, 1)], None).unwrap();
        let mut inclusions = BTreeMap::new();
        inclusions.insert((2, 3), QMatrix::identity(1));
        let chain = LsChain::new(2, 3, vec![lower, upper], inclusions).unwrap();
        let report = check_ls_module(&chain).unwrap();
        assert!(report.compat_ok);
        assert!(report.equivariance_ok);
        assert!(!report.criterion3_ok);
        let (m, n, a, b) = report.criterion3_witness.clone().unwrap();
        assert_eq!((m, n), (2, 3));
        assert_ne!(a, b);
    }

    #[test]
    fn warning_pair_agrees_on_included_states_and_matrices() {
        // Two TL_6 diagrams that differ but act identically on i_{3,6}(M_3).
        let a = Diagram::from_pairs(
            6,
            &[
                (Top(1), Bottom(1)),
                (Top(2), Bottom(2)),
                (Top(3), Bottom(3)),
                (Top(5), Top(6)),
                (Bottom(4), Bottom(5)),
                (Top(4), Bottom(6)),
            ],
        )
        .unwrap();
        let b = Diagram::from_pairs(
            6,
            &[
                (Top(1), Bottom(1)),
                (Top(2), Bottom(2)),
                (Top(3), Bottom(3)),
                (Top(4), Bottom(4)),
                (Top(5), Top(6)),
                (Bottom(5), Bottom(6)),
            ],
        )
        .unwrap();
        assert_ne!(a, b);
        for v in all_link_states(3).unwrap() {
            let w = include(&v, 6).unwrap();
            assert_eq!(act(&a, &w).unwrap(), act(&b, &w).unwrap());
            // Both raise the cup count on these states.
            assert!(act(&a, &w).unwrap().cups() > v.cups());
        }
        // The standard chain's matrices satisfy the induced identity.
        let chain = standard_chain(1, 2, 6).unwrap();
        let matrices = diagram_matrices(chain.module(6), 6).unwrap();
        let inc = chain.inclusion(3, 6);
        assert_eq!(
            matrices[a.pairing()].mul(inc),
            matrices[b.pairing()].mul(inc)
        );
        // And the exhaustive criterion-3 sweep accepts the whole chain (the
        // pair lands in one group there).
        assert!(check_ls_module(&chain).unwrap().criterion3_ok);
    }

    #[test]
    fn diagram_matrices_agree_with_standard_action() {
        let rep = standard_rep(4, 1).unwrap();
        let table = diagram_matrices(&rep, 4).unwrap();
        let states = enumerate_states(4, 1).unwrap();
        for d in enumerate_diagrams(4).unwrap() {
            let m = &table[d.pairing()];
            for (j, v) in states.iter().enumerate() {
                let col = m.column(j);
                match crate::link_state::act_standard(&d, &PointedState::State(v.clone()), 1)
                    .unwrap()
                {
                    PointedState::Zero => assert!(col.iter().all(num::Zero::is_zero)),
                    PointedState::State(w) => {
                        let idx = states.binary_search(&w).unwrap();
                        assert_eq!(col[idx], q_int(1));
                    }
                }
            }
        }
    }

    #[test]
    fn filtration_stability_of_wedge_chain() {
        let profiles: Vec<FiltrationProfile> = (4..=7)
            .map(|n| {
                filtration(&TlSpace::Wedge(build_wedge(n, &[(2, 1)], 2).unwrap()), 2).unwrap()
            })
            .collect();
        assert!(check_filtration_stability(&profiles, 2).unwrap());
        // Position 1 varies: d(n-2, 1) grows with n.
        assert!(!check_filtration_stability(&profiles, 1).unwrap());
        // A single profile is vacuously stable.
        assert!(check_filtration_stability(&profiles[..1], 1).unwrap());
        // Varying top entry breaks stability at the top.
        let bad: Vec<FiltrationProfile> = (4..=6)
            .map(|n| {
                let mut betti = vec![0i64; n / 2];
                betti[n / 2 - 1] = n as i64;
                FiltrationProfile::new(n, 2, betti).unwrap()
            })
            .collect();
        assert!(!check_filtration_stability(&bad, bad[0].betti.len()).unwrap());
    }

    #[test]
    fn cell_level_filtration_stability() {
        let spaces: Vec<WedgeSpace> =
            (4..=7).map(|n| build_wedge(n, &[(2, 1)], 2).unwrap()).collect();
        assert!(check_filtration_stability_spaces(&spaces, 2).unwrap());
        assert!(!check_filtration_stability_spaces(&spaces, 1).unwrap());
    }

    #[test]
    fn fsirs_on_sphere_wedges() {
        let spaces: Vec<TlSpace> = (4..=7)
            .map(|n| TlSpace::Wedge(build_wedge(n, &[(2, 1)], 2).unwrap()))
            .collect();
        let report = verify_fsirs(&spaces, 2, 2).unwrap();
        assert!(report.filtration_stable);
        assert!(report.stable, "{report:?}");
        for e in &report.entries {
            assert_eq!(e.surviving[0], 1);
            assert!(e.surviving[1..].iter().all(|&s| s == 0));
            assert_eq!(e.mult[1], 1);
        }
    }

    #[test]
    fn fsirs_on_growing_torus_family() {
        use crate::space::{build_example2_space, example2_min_factors};
        let spaces: Vec<TlSpace> = (4..=6)
            .map(|n| {
                let c = example2_min_factors(n) as usize + n; // strictly growing extras
                TlSpace::Wedge(build_example2_space(n, c).unwrap())
            })
            .collect();
        let report = verify_fsirs(&spaces, 2, 1).unwrap();
        assert!(report.stable, "{report:?}");
        // The unquotiented multiplicity of V_{n,1} varies along the chain.
        let lows: Vec<i64> = report.entries.iter().map(|e| e.mult[0]).collect();
        assert!(lows.windows(2).any(|w| w[0] != w[1]));
        for e in &report.entries {
            assert_eq!(e.surviving[0], 1);
        }
    }

    #[test]
    fn fsirs_constant_chain_is_stable() {
        let s = TlSpace::Wedge(build_wedge(5, &[(1, 2), (2, 1)], 2).unwrap());
        let spaces = vec![s.clone(), s.clone(), s];
        let report = verify_fsirs(&spaces, 1, 2).unwrap();
        assert!(report.stable);
        assert!(report.filtration_stable);
        assert_eq!(report.entries[0].surviving, vec![2, 1]);
    }
}
