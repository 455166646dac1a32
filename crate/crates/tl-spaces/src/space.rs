//! Finite combinatorial models of TL_n-spaces and the structure theory that
//! the homology-decomposition machinery rests on: relation and surjectivity
//! verification, the full intersection Q, neighbor/long-distance intersection
//! checks, the filtration of retracts, quotients by Q, induced homology
//! representations, and builders for the wedge and torus model families.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::comb::{d, FiltrationProfile};
use crate::error::{Result, TlError};
use crate::link_state::{act, enumerate_states, LinkState};
use crate::matrix::{q_int, QMatrix};
use crate::rep::MatrixRep;
use crate::simplicial::{IntegralHomology, SimplicialTlSpace};

/// A pointed wedge of labeled k-spheres: one cell per sphere, plus an
/// implicit basepoint. Each generator sends a cell to a cell or collapses it
/// to the basepoint (`None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeSpace {
    n: usize,
    k: usize,
    cells: Vec<String>,
    maps: Vec<Vec<Option<usize>>>,
}

impl WedgeSpace {
    pub fn new(
        n: usize,
        k: usize,
        cells: Vec<String>,
        maps: Vec<Vec<Option<usize>>>,
    ) -> Result<WedgeSpace> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        {
            let mut seen = std::collections::HashSet::new();
            for c in &cells {
                if c == "*" || !seen.insert(c) {
                    return Err(TlError::MalformedSpace(format!("bad cell label {c:?}")));
                }
            }
        }
        if maps.len() != n - 1 {
            return Err(TlError::MalformedSpace(format!(
                "expected {} cell maps, got {}",
                n - 1,
                maps.len()
            )));
        }
        for m in &maps {
            if m.len() != cells.len() {
                return Err(TlError::MalformedSpace("cell map has wrong length".into()));
            }
            if m.iter().flatten().any(|&c| c >= cells.len()) {
                return Err(TlError::MalformedSpace("cell map image out of range".into()));
            }
        }
        Ok(WedgeSpace { n, k, cells, maps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cells(&self) -> &[String] {
        &self.cells
    }

    pub fn maps(&self) -> &[Vec<Option<usize>>] {
        &self.maps
    }
}

/// Either backend of a combinatorial TL_n-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TlSpace {
    Wedge(WedgeSpace),
    Simplicial(SimplicialTlSpace),
}

impl From<WedgeSpace> for TlSpace {
    fn from(w: WedgeSpace) -> Self {
        TlSpace::Wedge(w)
    }
}

impl From<SimplicialTlSpace> for TlSpace {
    fn from(s: SimplicialTlSpace) -> Self {
        TlSpace::Simplicial(s)
    }
}

impl TlSpace {
    pub fn n(&self) -> usize {
        match self {
            TlSpace::Wedge(w) => w.n(),
            TlSpace::Simplicial(s) => s.n(),
        }
    }
}

/// Both backends reduce to total self-maps of a finite pointed cell set; the
/// structural checks all run on this view. For a wedge the cells are the
/// spheres plus the basepoint; for a simplicial space they are the simplices.
struct CellModel {
    labels: Vec<String>,
    maps: Vec<Vec<usize>>,
    basepoint: Option<usize>,
}

impl CellModel {
    fn count(&self) -> usize {
        self.labels.len()
    }

    fn image(&self, gen: usize) -> BTreeSet<usize> {
        self.maps[gen].iter().copied().collect()
    }

    fn fixed(&self) -> BTreeSet<usize> {
        (0..self.count())
            .filter(|&c| self.maps.iter().all(|m| m[c] == c))
            .collect()
    }

    fn apply_word(&self, letters: &[usize], cell: usize) -> usize {
        letters.iter().fold(cell, |c, &l| self.maps[l - 1][c])
    }
}

fn cell_model(space: &TlSpace) -> Result<CellModel> {
    match space {
        TlSpace::Wedge(w) => {
            let bp = w.cells.len();
            let mut labels = w.cells.clone();
            labels.push("*".into());
            let maps = w
                .maps
                .iter()
                .map(|m| {
                    let mut total: Vec<usize> = m.iter().map(|img| img.unwrap_or(bp)).collect();
                    total.push(bp);
                    total
                })
                .collect();
            Ok(CellModel { labels, maps, basepoint: Some(bp) })
        }
        TlSpace::Simplicial(s) => {
            if let Some(bp) = s.basepoint() {
                for (gi, map) in s.vertex_maps().iter().enumerate() {
                    if map[bp] != bp {
                        return Err(TlError::MalformedSpace(format!(
                            "u_{} moves the basepoint",
                            gi + 1
                        )));
                    }
                }
            }
            let maps = s.simplex_maps()?;
            let labels = (0..s.simplices().len()).map(|i| s.simplex_label(i)).collect();
            let basepoint = s.basepoint().and_then(|bp| s.simplex_index(&[bp]));
            Ok(CellModel { labels, maps, basepoint })
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub relations_ok: bool,
    pub violated: Vec<String>,
    pub surjective: bool,
    pub q_cells: Vec<String>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.relations_ok && self.surjective
    }
}

/// Check the three relation families as exact cell-map equalities, check that
/// the generator images cover the space, and record the common fixed cells.
pub fn verify_space(space: &TlSpace) -> Result<VerifyReport> {
    let model = cell_model(space)?;
    let n = space.n();
    let mut violated = Vec::new();
    let eq = |a: &[usize], b: &[usize]| a == b;
    let compose = |outer: &[usize], inner: &[usize]| -> Vec<usize> {
        inner.iter().map(|&c| outer[c]).collect()
    };
    for i in 1..n {
        let m = &model.maps[i - 1];
        if !eq(&compose(m, m), m) {
            violated.push(format!("u_{i} u_{i} != u_{i}"));
        }
    }
    for i in 1..n {
        for j in [i.wrapping_sub(1), i + 1] {
            if j < 1 || j > n - 1 {
                continue;
            }
            let mi = &model.maps[i - 1];
            let mj = &model.maps[j - 1];
            if !eq(&compose(mi, &compose(mj, mi)), mi) {
                violated.push(format!("u_{i} u_{j} u_{i} != u_{i}"));
            }
        }
    }
    for i in 1..n {
        for j in i + 2..n {
            let mi = &model.maps[i - 1];
            let mj = &model.maps[j - 1];
            if !eq(&compose(mi, mj), &compose(mj, mi)) {
                violated.push(format!("u_{i} u_{j} != u_{j} u_{i}"));
            }
        }
    }
    let mut covered: BTreeSet<usize> = BTreeSet::new();
    for g in 0..n - 1 {
        covered.extend(model.image(g));
    }
    let surjective = if n == 1 {
        true
    } else {
        covered.len() == model.count()
    };
    let q_cells = model.fixed().iter().map(|&c| model.labels[c].clone()).collect();
    Ok(VerifyReport {
        relations_ok: violated.is_empty(),
        violated,
        surjective,
        q_cells,
    })
}

/// The full intersection Q: cells fixed by every generator map, which for a
/// verified space equals the intersection of all the retract images A_i.
pub fn full_intersection(space: &TlSpace) -> Result<Vec<String>> {
    let model = cell_model(space)?;
    Ok(model.fixed().iter().map(|&c| model.labels[c].clone()).collect())
}

fn require_relations(space: &TlSpace) -> Result<CellModel> {
    let report = verify_space(space)?;
    if !report.relations_ok {
        return Err(TlError::SpaceNotVerified(report.violated.join("; ")));
    }
    cell_model(space)
}

fn long_distance_subsets(n_gens: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, remaining: usize, n_gens: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(acc.clone());
            return;
        }
        let highest = n_gens.saturating_sub(2 * (remaining - 1));
        for i in start..=highest {
            acc.push(i);
            rec(i + 2, remaining - 1, n_gens, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if 2 * p <= n_gens + 1 {
        rec(1, p, n_gens, &mut Vec::new(), &mut out);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureChecks {
    pub nifi_ok: bool,
    pub isch_ok: bool,
    pub q_retract_obstruction: bool,
}

/// Structural consequences of the relations on a verified space: neighbor
/// intersections land in Q, long-distance p-fold intersections of equal size
/// are matched bijectively by the explicit composite of neighbor steps, and
/// a disconnected Q inside a connected space obstructs Q being a retract.
pub fn check_structure(space: &TlSpace) -> Result<StructureChecks> {
    let model = require_relations(space)?;
    let n = space.n();
    let q = model.fixed();

    let images: Vec<BTreeSet<usize>> = (0..n - 1).map(|g| model.image(g)).collect();
    let mut nifi_ok = true;
    for i in 0..n.saturating_sub(2) {
        let inter: BTreeSet<usize> = images[i].intersection(&images[i + 1]).copied().collect();
        if !inter.is_subset(&q) {
            nifi_ok = false;
        }
    }

    let n_gens = n - 1;
    let mut isch_ok = true;
    let pmax = n_gens.div_ceil(2);
    for p in 1..=pmax {
        let subsets = long_distance_subsets(n_gens, p);
        if subsets.is_empty() {
            continue;
        }
        let base: Vec<usize> = (1..=p).map(|c| 2 * c - 1).collect();
        let r_p: BTreeSet<usize> = base
            .iter()
            .map(|&i| images[i - 1].clone())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .unwrap_or_default();
        for subset in &subsets {
            let inter: BTreeSet<usize> = subset
                .iter()
                .map(|&i| images[i - 1].clone())
                .reduce(|a, b| a.intersection(&b).copied().collect())
                .unwrap_or_default();
            if inter.len() != r_p.len() {
                isch_ok = false;
                continue;
            }
            let mut letters = Vec::new();
            for c in (1..=p).rev() {
                letters.extend(2 * c - 1..=subset[c - 1]);
            }
            let mut seen = BTreeSet::new();
            for &cell in &r_p {
                let img = model.apply_word(&letters, cell);
                if !inter.contains(&img) || !seen.insert(img) {
                    isch_ok = false;
                    break;
                }
            }
            if seen.len() != inter.len() {
                isch_ok = false;
            }
        }
    }

    let q_retract_obstruction = match space {
        TlSpace::Wedge(_) => false,
        TlSpace::Simplicial(s) => {
            let fixed_simplices: Vec<&Vec<usize>> =
                q.iter().map(|&c| &s.simplices()[c]).collect();
            let q_vertices: BTreeSet<usize> = fixed_simplices
                .iter()
                .filter(|sx| sx.len() == 1)
                .map(|sx| sx[0])
                .collect();
            let q_edges: Vec<(usize, usize)> = fixed_simplices
                .iter()
                .filter(|sx| sx.len() == 2)
                .map(|sx| (sx[0], sx[1]))
                .collect();
            let space_edges: Vec<(usize, usize)> = s
                .simplices()
                .iter()
                .filter(|sx| sx.len() == 2)
                .map(|sx| (sx[0], sx[1]))
                .collect();
            let all: BTreeSet<usize> = (0..s.vertices().len()).collect();
            let space_connected = component_count(&all, &space_edges) <= 1;
            let q_disconnected = component_count(&q_vertices, &q_edges) > 1;
            space_connected && q_disconnected
        }
    };

    Ok(StructureChecks { nifi_ok, isch_ok, q_retract_obstruction })
}

fn component_count(vertices: &BTreeSet<usize>, edges: &[(usize, usize)]) -> usize {
    let mut parent: HashMap<usize, usize> = vertices.iter().map(|&v| (v, v)).collect();
    fn find(parent: &mut HashMap<usize, usize>, v: usize) -> usize {
        let p = parent[&v];
        if p == v {
            return v;
        }
        let root = find(parent, p);
        parent.insert(v, root);
        root
    }
    for &(a, b) in edges {
        if parent.contains_key(&a) && parent.contains_key(&b) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent.insert(ra, rb);
        }
    }
    let roots: BTreeSet<usize> = vertices.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len()
}

/// All six checks in one report, as the CLI presents them. Structure fields
/// are only meaningful when `relations_ok` holds.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpaceReport {
    pub relations_ok: bool,
    pub surjective: bool,
    pub q_cells: Vec<String>,
    pub nifi_ok: bool,
    pub isch_ok: bool,
    pub q_retract_obstruction: bool,
}

pub fn space_report(space: &TlSpace) -> Result<SpaceReport> {
    let verify = verify_space(space)?;
    let structure = if verify.relations_ok {
        check_structure(space)?
    } else {
        StructureChecks { nifi_ok: false, isch_ok: false, q_retract_obstruction: false }
    };
    Ok(SpaceReport {
        relations_ok: verify.relations_ok,
        surjective: verify.surjective,
        q_cells: verify.q_cells,
        nifi_ok: structure.nifi_ok,
        isch_ok: structure.isch_ok,
        q_retract_obstruction: structure.q_retract_obstruction,
    })
}

fn require_pointed_q(space: &TlSpace, model: &CellModel) -> Result<()> {
    let q = model.fixed();
    match model.basepoint {
        Some(bp) => {
            if q.len() != 1 || !q.contains(&bp) {
                return Err(TlError::NontrivialQ);
            }
            let _ = space;
            Ok(())
        }
        None => Err(TlError::NoBasepoint(
            "filtration and homology need a pointed space".into(),
        )),
    }
}

/// The filtration of retracts in one homological degree: R_p is the image of
/// u_1 u_3 ... u_{2p-1} and betti[p-1] = dim of reduced H_k(R_p).
pub fn filtration(space: &TlSpace, k: usize) -> Result<FiltrationProfile> {
    let model = require_relations(space)?;
    require_pointed_q(space, &model)?;
    let n = space.n();
    let mut betti = Vec::with_capacity(n / 2);
    for p in 1..=n / 2 {
        let letters: Vec<usize> = (1..=p).map(|c| 2 * c - 1).collect();
        let image: BTreeSet<usize> =
            (0..model.count()).map(|c| model.apply_word(&letters, c)).collect();
        let b = match space {
            TlSpace::Wedge(w) => {
                if w.k == k {
                    image.iter().filter(|&&c| Some(c) != model.basepoint).count()
                } else {
                    0
                }
            }
            TlSpace::Simplicial(s) => s.betti_reduced(k, Some(&image)),
        };
        betti.push(b as i64);
    }
    FiltrationProfile::new(n, k, betti)
}

/// Collapse the full intersection Q to the basepoint; the generator maps
/// descend since they fix Q pointwise. Simplicial spaces are barycentrically
/// subdivided as needed to keep the quotient an honest simplicial complex.
pub fn quotient_by_q(space: &TlSpace) -> Result<TlSpace> {
    let model = require_relations(space)?;
    match space {
        TlSpace::Wedge(w) => {
            let fixed = model.fixed();
            let keep: Vec<usize> = (0..w.cells.len()).filter(|c| !fixed.contains(c)).collect();
            let reindex: HashMap<usize, usize> =
                keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
            let cells = keep.iter().map(|&c| w.cells[c].clone()).collect();
            let maps = w
                .maps
                .iter()
                .map(|m| {
                    keep.iter()
                        .map(|&c| m[c].and_then(|img| reindex.get(&img).copied()))
                        .collect()
                })
                .collect();
            Ok(TlSpace::Wedge(WedgeSpace::new(w.n, w.k, cells, maps)?))
        }
        TlSpace::Simplicial(s) => {
            let mut current = s.clone();
            for _ in 0..3 {
                let q_vertices = fixed_vertices(&current);
                if q_vertices.is_empty() {
                    return Err(TlError::NoBasepoint(
                        "the action fixes no vertex, so there is nothing to collapse to".into(),
                    ));
                }
                if q_vertices.len() == 1 {
                    let bp = *q_vertices.iter().next().unwrap();
                    let mut out = current.clone();
                    out = SimplicialTlSpace::new(
                        out.n(),
                        out.vertices().to_vec(),
                        Some(bp),
                        out.simplices().to_vec(),
                        out.vertex_maps().to_vec(),
                    )?;
                    return Ok(TlSpace::Simplicial(out));
                }
                match collapse_vertices(&current, &q_vertices)? {
                    Some(quotient) => return Ok(TlSpace::Simplicial(quotient)),
                    None => current = barycentric_subdivision(&current)?,
                }
            }
            Err(TlError::MalformedSpace(
                "quotient did not become simplicial after repeated subdivision".into(),
            ))
        }
    }
}

fn fixed_vertices(s: &SimplicialTlSpace) -> BTreeSet<usize> {
    (0..s.vertices().len())
        .filter(|&v| s.vertex_maps().iter().all(|m| m[v] == v))
        .collect()
}

/// Identify all of `q` to a fresh basepoint vertex if the identification is
/// regular (no surviving simplex touches q twice, no two simplices merge);
/// otherwise None to request a subdivision first.
fn collapse_vertices(
    s: &SimplicialTlSpace,
    q: &BTreeSet<usize>,
) -> Result<Option<SimplicialTlSpace>> {
    let vc = s.vertices().len();
    let mut vmap = vec![0usize; vc];
    let mut vertices: Vec<String> = vec!["*".to_string()];
    for v in 0..vc {
        if q.contains(&v) {
            vmap[v] = 0;
        } else {
            vmap[v] = vertices.len();
            let label = s.vertices()[v].clone();
            vertices.push(if label == "*" { format!("v{v}") } else { label });
        }
    }
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut survivors = 0usize;
    for simplex in s.simplices() {
        let in_q = simplex.iter().filter(|v| q.contains(v)).count();
        if in_q == simplex.len() {
            continue; // collapses into the basepoint
        }
        if in_q >= 2 {
            return Ok(None);
        }
        let mut image: Vec<usize> = simplex.iter().map(|&v| vmap[v]).collect();
        image.sort_unstable();
        survivors += 1;
        images.insert(image);
    }
    if images.len() != survivors {
        return Ok(None); // two distinct simplices would merge
    }
    let maps = s
        .vertex_maps()
        .iter()
        .map(|m| {
            let mut out = vec![0usize; vertices.len()];
            for v in 0..vc {
                out[vmap[v]] = vmap[m[v]];
            }
            out[0] = 0;
            out
        })
        .collect();
    let quotient = SimplicialTlSpace::new(
        s.n(),
        vertices,
        Some(0),
        images.into_iter().collect(),
        maps,
    )?;
    Ok(Some(quotient))
}

/// Full barycentric subdivision with the functorially induced vertex maps:
/// the barycenter of a simplex goes to the barycenter of its image's support.
pub fn barycentric_subdivision(s: &SimplicialTlSpace) -> Result<SimplicialTlSpace> {
    let old = s.simplices();
    let vertex_of: HashMap<Vec<usize>, usize> =
        old.iter().enumerate().map(|(i, sx)| (sx.clone(), i)).collect();
    let vertices: Vec<String> = (0..old.len()).map(|i| s.simplex_label(i)).collect();
    // Maximal simplices carry all flags; face closure restores the rest.
    let maximal: Vec<&Vec<usize>> = old
        .iter()
        .filter(|sx| {
            !old.iter().any(|other| {
                other.len() > sx.len() && sx.iter().all(|v| other.contains(v))
            })
        })
        .collect();
    let mut flags: Vec<Vec<usize>> = Vec::new();
    for top in maximal {
        let m = top.len();
        let mut order: Vec<usize> = (0..m).collect();
        // All orderings of the vertices give all maximal flags through `top`.
        permutations(&mut order, 0, &mut |perm| {
            let mut chain = Vec::with_capacity(m);
            let mut face: Vec<usize> = Vec::with_capacity(m);
            for &idx in perm {
                face.push(top[idx]);
                face.sort_unstable();
                chain.push(vertex_of[&face]);
            }
            flags.push(chain);
        });
    }
    let maps = s
        .vertex_maps()
        .iter()
        .map(|m| {
            old.iter()
                .map(|sx| {
                    let mut image: Vec<usize> = sx.iter().map(|&v| m[v]).collect();
                    image.sort_unstable();
                    image.dedup();
                    vertex_of[&image]
                })
                .collect()
        })
        .collect();
    let basepoint = s.basepoint().map(|bp| vertex_of[&vec![bp]]);
    SimplicialTlSpace::new(s.n(), vertices, basepoint, flags, maps)
}

fn permutations(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Induced action on reduced homology in degree k of a verified pointed
/// space with Q = {*}.
pub fn homology_rep(space: &TlSpace, k: usize) -> Result<MatrixRep> {
    let model = require_relations(space)?;
    require_pointed_q(space, &model)?;
    match space {
        TlSpace::Wedge(w) => {
            if w.k != k {
                return MatrixRep::zero(w.n);
            }
            let dim = w.cells.len();
            let gens = w
                .maps
                .iter()
                .map(|m| {
                    let mut mat = QMatrix::zeros(dim, dim);
                    for (j, img) in m.iter().enumerate() {
                        if let Some(i) = img {
                            mat[(*i, j)] = q_int(1);
                        }
                    }
                    mat
                })
                .collect();
            MatrixRep::new(w.n, gens, Some(w.cells.clone()))
        }
        TlSpace::Simplicial(s) => {
            let (dim, gens) = s.homology_generator_matrices(k)?;
            let labels = (0..dim).map(|i| format!("h{i}")).collect();
            MatrixRep::new(s.n(), gens, Some(labels))
        }
    }
}

/// Free rank and torsion of reduced integral homology in degree k. Wedge
/// models are free on their cells; simplicial spaces go through integer
/// normal-form reduction.
pub fn integral_homology(space: &TlSpace, k: usize) -> Result<IntegralHomology> {
    match space {
        TlSpace::Wedge(w) => Ok(IntegralHomology {
            free_rank: if w.k == k { w.cells.len() } else { 0 },
            torsion: vec![],
        }),
        TlSpace::Simplicial(s) => Ok(s.integral_homology(k)),
    }
}

/// The wedge model on link states: one k-sphere per (n,p) link state per
/// copy; u_i moves a sphere to the sphere of the moved state when the cup
/// count survives and collapses it to the basepoint otherwise.
pub fn build_wedge(n: usize, spec: &[(usize, usize)], k: usize) -> Result<WedgeSpace> {
    if n == 0 {
        return Err(TlError::ZeroStrands);
    }
    let mut groups: Vec<(usize, usize, Vec<LinkState>)> = Vec::new();
    for &(p, copies) in spec {
        if p < 1 || 2 * p > n {
            return Err(TlError::BadCupCount { n, p });
        }
        groups.push((p, copies, enumerate_states(n, p)?));
    }
    let mut cells = Vec::new();
    let mut cell_index: HashMap<(String, usize, usize), usize> = HashMap::new();
    for (gi, (_, copies, states)) in groups.iter().enumerate() {
        for copy in 0..*copies {
            for state in states {
                let label = if groups.len() > 1 || *copies > 1 {
                    format!("{}#{}.{}", state.pattern(), gi, copy)
                } else {
                    state.pattern()
                };
                cell_index.insert((state.pattern(), gi, copy), cells.len());
                cells.push(label);
            }
        }
    }
    let mut maps = Vec::with_capacity(n - 1);
    for i in 1..n {
        let g = crate::diagram::Diagram::generator(n, i)?;
        let mut m = Vec::with_capacity(cells.len());
        for (gi, (p, copies, states)) in groups.iter().enumerate() {
            for copy in 0..*copies {
                for state in states {
                    let moved = act(&g, state)?;
                    m.push(if moved.cups() == *p {
                        Some(cell_index[&(moved.pattern(), gi, copy)])
                    } else {
                        None
                    });
                }
            }
        }
        maps.push(m);
    }
    WedgeSpace::new(n, k, cells, maps)
}

/// The circle-factor action on first homology of the c-torus: coordinate i
/// of r_i(x) is x_{i-1} + x_i + x_{i+1} with out-of-range terms dropped and
/// the x_{i+1} term only present while i+1 <= n-1; all other coordinates die.
pub fn build_torus_rep(n: usize, c: usize) -> Result<MatrixRep> {
    if n < 2 {
        return Err(TlError::ZeroStrands);
    }
    if c < n - 1 {
        return Err(TlError::TorusTooSmall { need: n - 1, got: c });
    }
    let mut gens = Vec::with_capacity(n - 1);
    for i in 1..n {
        let mut m = QMatrix::zeros(c, c);
        let row = i - 1;
        if i >= 2 {
            m[(row, i - 2)] = q_int(1);
        }
        m[(row, i - 1)] = q_int(1);
        if i + 1 <= n - 1 {
            m[(row, i)] = q_int(1);
        }
        gens.push(m);
    }
    MatrixRep::new(n, gens, None)
}

/// Number of circle factors below which the glued-torus model cannot carry
/// the action.
pub fn example2_min_factors(n: usize) -> i64 {
    d(n as i64, 2).max(n as i64 - 1)
}

/// The wedge model of the glued-torus family: one circle-wedge on (n,2)
/// states and c - d(n,2) copies of the circle-wedge on (n,1) states.
pub fn build_example2_space(n: usize, c: usize) -> Result<WedgeSpace> {
    if n < 4 {
        return Err(TlError::BadCupCount { n, p: 2 });
    }
    if (c as i64) < example2_min_factors(n) {
        return Err(TlError::TorusTooSmall {
            need: example2_min_factors(n) as usize,
            got: c,
        });
    }
    let extra = c - d(n as i64, 2) as usize;
    build_wedge(n, &[(2, 1), (1, extra)], 1)
}

/// Two spheres of the given dimension (1 or 2) glued along a pair of points,
/// with each generator the identity on its own sphere and the label-matching
/// isomorphism on the other. Q is the glued point pair: nonempty but
/// disconnected, so it cannot be a retract.
pub fn glued_spheres_space(sphere_dim: usize) -> Result<SimplicialTlSpace> {
    match sphere_dim {
        1 => {
            // Two hexagons sharing the opposite vertices x and y.
            let vertices: Vec<String> = vec![
                "x".into(),
                "y".into(),
                "a1".into(),
                "a2".into(),
                "a3".into(),
                "a4".into(),
                "b1".into(),
                "b2".into(),
                "b3".into(),
                "b4".into(),
            ];
            let ring = |v: [usize; 4]| {
                vec![
                    vec![0, v[0]],
                    vec![v[0], v[1]],
                    vec![v[1], 1],
                    vec![1, v[2]],
                    vec![v[2], v[3]],
                    vec![v[3], 0],
                ]
            };
            let mut simplices = ring([2, 3, 4, 5]);
            simplices.extend(ring([6, 7, 8, 9]));
            // u_1 folds ring b onto ring a, u_2 the reverse.
            let u1 = vec![0, 1, 2, 3, 4, 5, 2, 3, 4, 5];
            let u2 = vec![0, 1, 6, 7, 8, 9, 6, 7, 8, 9];
            SimplicialTlSpace::new(3, vertices, Some(0), simplices, vec![u1, u2])
        }
        2 => {
            // Two octahedra sharing the antipodal pair x, y.
            let mut vertices: Vec<String> = vec!["x".into(), "y".into()];
            vertices.extend((1..=4).map(|i| format!("a{i}")));
            vertices.extend((1..=4).map(|i| format!("b{i}")));
            let faces = |e: [usize; 4]| {
                vec![
                    vec![0, e[0], e[1]],
                    vec![0, e[1], e[2]],
                    vec![0, e[2], e[3]],
                    vec![0, e[3], e[0]],
                    vec![1, e[0], e[1]],
                    vec![1, e[1], e[2]],
                    vec![1, e[2], e[3]],
                    vec![1, e[3], e[0]],
                ]
            };
            let mut simplices = faces([2, 3, 4, 5]);
            simplices.extend(faces([6, 7, 8, 9]));
            let u1 = vec![0, 1, 2, 3, 4, 5, 2, 3, 4, 5];
            let u2 = vec![0, 1, 6, 7, 8, 9, 6, 7, 8, 9];
            SimplicialTlSpace::new(3, vertices, Some(0), simplices, vec![u1, u2])
        }
        _ => Err(TlError::Other("sphere dimension must be 1 or 2".into())),
    }
}

/// Four petal circles and a core circle sharing one point, with TL_5 acting
/// by neighbor isomorphisms and long-distance collapses: each A_i is the core
/// wedge one petal, and Q is the whole core circle.
pub fn flower_space() -> Result<SimplicialTlSpace> {
    let mut vertices: Vec<String> = vec!["w".into(), "q1".into(), "q2".into()];
    for i in 1..=4 {
        vertices.push(format!("a{i}"));
        vertices.push(format!("b{i}"));
    }
    // Indices: w=0, q1=1, q2=2, a_i = 2i+1, b_i = 2i+2.
    let a = |i: usize| 2 * i + 1;
    let b = |i: usize| 2 * i + 2;
    let mut simplices = vec![vec![0, 1], vec![1, 2], vec![0, 2]];
    for i in 1..=4 {
        simplices.push(vec![0, a(i)]);
        simplices.push(vec![a(i), b(i)]);
        simplices.push(vec![0, b(i)]);
    }
    let identity: Vec<usize> = (0..vertices.len()).collect();
    let mut maps = Vec::new();
    for i in 1..=4usize {
        let mut m = identity.clone();
        for j in 1..=4usize {
            if j == i {
                continue;
            }
            if j.abs_diff(i) == 1 {
                m[a(j)] = a(i);
                m[b(j)] = b(i);
            } else {
                // Long-distance petals: u_1 and u_3 wrap them around the
                // core circle, u_2 and u_4 crush them to the wedge point.
                if i % 2 == 1 {
                    m[a(j)] = 1;
                    m[b(j)] = 2;
                } else {
                    m[a(j)] = 0;
                    m[b(j)] = 0;
                }
            }
        }
        maps.push(m);
    }
    SimplicialTlSpace::new(5, vertices, Some(0), simplices, maps)
}

/// A straight triangulated cylinder with TL_3 projecting onto its two
/// boundary circles: a legal action that is not surjective (and fixes no
/// point, so the space carries no basepoint).
pub fn open_cylinder_space() -> Result<SimplicialTlSpace> {
    let mut vertices = Vec::new();
    for ring in 0..2 {
        for j in 0..6 {
            vertices.push(format!("r{ring}v{j}"));
        }
    }
    let idx = |ring: usize, j: usize| ring * 6 + (j % 6);
    let mut simplices = Vec::new();
    for j in 0..6 {
        simplices.push(vec![idx(0, j), idx(1, j), idx(1, j + 1)]);
        simplices.push(vec![idx(0, j), idx(0, j + 1), idx(1, j + 1)]);
    }
    let u1: Vec<usize> = (0..12).map(|v| v % 6).collect();
    let u2: Vec<usize> = (0..12).map(|v| v % 6 + 6).collect();
    SimplicialTlSpace::new(3, vertices, None, simplices, vec![u1, u2])
}

/// Betti numbers a wedge spec produces, for cross-checking `filtration`.
pub fn wedge_spec_multiplicities(n: usize, spec: &[(usize, usize)]) -> Vec<i64> {
    let mut mult = vec![0i64; n / 2];
    for &(p, copies) in spec {
        mult[p - 1] += copies as i64;
    }
    mult
}

/// Group a flat multiplicity vector back into a builder spec.
pub fn spec_of_multiplicities(mult: &[i64]) -> Vec<(usize, usize)> {
    mult.iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(idx, &m)| (idx + 1, m as usize))
        .collect()
}

/// Deterministic map from cells of one wedge to another, used by tests and
/// the stability checker when comparing filtrations cell-by-cell: a state
/// pattern padded with defects on the right.
pub fn pad_pattern(label: &str, extra: usize) -> String {
    match label.split_once('#') {
        Some((pattern, suffix)) => {
            format!("{}{}#{}", pattern, ".".repeat(extra), suffix)
        }
        None => format!("{}{}", label, ".".repeat(extra)),
    }
}
