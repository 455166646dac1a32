//! Finite simplicial complexes carrying a Temperley-Lieb action through
//! vertex maps, with reduced homology over exact rationals and integer
//! normal-form torsion. This is the general desk-scale backend; the wedge
//! models in `space` cover the common case more cheaply.

use std::collections::{BTreeSet, HashMap};

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Result, TlError};
use crate::matrix::{QMatrix, SpanBasis, ZMatrix, Q};

/// A finite simplicial complex with one self-map per generator, given on
/// vertices. The basepoint is optional: a space whose action has no fixed
/// vertex (necessarily non-surjective) can still be verified, but homology
/// and filtration operations require one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialTlSpace {
    n: usize,
    vertices: Vec<String>,
    basepoint: Option<usize>,
    /// Face-closed, each simplex a sorted vertex-index list; globally sorted
    /// by dimension then lexicographically.
    simplices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// maps[i-1][v] is the image vertex of v under u_i.
    maps: Vec<Vec<usize>>,
}

fn close_under_faces(simplices: &[Vec<usize>], vertex_count: usize) -> Vec<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for v in 0..vertex_count {
        set.insert(vec![v]);
    }
    for s in simplices {
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let m = sorted.len();
        for mask in 1u32..(1 << m) {
            let face: Vec<usize> = (0..m)
                .filter(|&b| mask & (1 << b) != 0)
                .map(|b| sorted[b])
                .collect();
            set.insert(face);
        }
    }
    let mut all: Vec<Vec<usize>> = set.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

impl SimplicialTlSpace {
    pub fn new(
        n: usize,
        vertices: Vec<String>,
        basepoint: Option<usize>,
        simplices: Vec<Vec<usize>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<SimplicialTlSpace> {
        if n == 0 {
            return Err(TlError::ZeroStrands);
        }
        let vc = vertices.len();
        if vc == 0 {
            return Err(TlError::MalformedSpace("no vertices".into()));
        }
        {
            let mut seen = std::collections::HashSet::new();
            for v in &vertices {
                if !seen.insert(v) {
                    return Err(TlError::MalformedSpace(format!(
                        "duplicate vertex label {v:?}"
                    )));
                }
            }
        }
        if let Some(b) = basepoint {
            if b >= vc {
                return Err(TlError::MalformedSpace("basepoint out of range".into()));
            }
        }
        for s in &simplices {
            for &v in s {
                if v >= vc {
                    return Err(TlError::MalformedSpace(format!(
                        "simplex {s:?} uses unknown vertex"
                    )));
                }
            }
        }
        if maps.len() != n - 1 {
            return Err(TlError::MalformedSpace(format!(
                "expected {} vertex maps, got {}",
                n - 1,
                maps.len()
            )));
        }
        for m in &maps {
            if m.len() != vc || m.iter().any(|&v| v >= vc) {
                return Err(TlError::MalformedSpace("vertex map has wrong shape".into()));
            }
        }
        let simplices = close_under_faces(&simplices, vc);
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(SimplicialTlSpace { n, vertices, basepoint, simplices, index, maps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn basepoint(&self) -> Option<usize> {
        self.basepoint
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn vertex_maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn vertex_map(&self, i: usize) -> Result<&[usize]> {
        if i < 1 || i > self.n - 1 {
            return Err(TlError::BadGenerator { index: i, max: self.n - 1 });
        }
        Ok(&self.maps[i - 1])
    }

    pub fn simplex_index(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn simplex_label(&self, idx: usize) -> String {
        let names: Vec<&str> = self.simplices[idx]
            .iter()
            .map(|&v| self.vertices[v].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Image vertex set of a simplex under a vertex map, with the sign of the
    /// sorting permutation; None when the image is degenerate.
    pub fn map_simplex(map: &[usize], s: &[usize]) -> Option<(Vec<usize>, i64)> {
        let image: Vec<usize> = s.iter().map(|&v| map[v]).collect();
        let mut sorted = image.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        let mut inversions = 0;
        for i in 0..image.len() {
            for j in i + 1..image.len() {
                if image[i] > image[j] {
                    inversions += 1;
                }
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sorted, sign))
    }

    /// The total map each generator induces on the simplex set (a degenerate
    /// image lands on its support simplex). Errors if some image fails to be
    /// a simplex of the complex.
    pub fn simplex_maps(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = Vec::with_capacity(self.maps.len());
        for (gi, map) in self.maps.iter().enumerate() {
            let mut table = Vec::with_capacity(self.simplices.len());
            for s in &self.simplices {
                let mut image: Vec<usize> = s.iter().map(|&v| map[v]).collect();
                image.sort_unstable();
                image.dedup();
                let Some(&idx) = self.index.get(&image) else {
                    return Err(TlError::MalformedSpace(format!(
                        "u_{} sends simplex {:?} outside the complex",
                        gi + 1,
                        s
                    )));
                };
                table.push(idx);
            }
            out.push(table);
        }
        Ok(out)
    }

    fn complex(&self, subset: Option<&BTreeSet<usize>>) -> Complex {
        let chosen: Vec<Vec<usize>> = match subset {
            None => self.simplices.clone(),
            Some(set) => set.iter().map(|&i| self.simplices[i].clone()).collect(),
        };
        Complex::new(chosen)
    }

    /// Reduced Betti number over the rationals of the full complex or a
    /// face-closed subset of it.
    pub fn betti_reduced(&self, k: usize, subset: Option<&BTreeSet<usize>>) -> usize {
        self.complex(subset).betti_reduced(k)
    }

    /// Reduced homology in degree k together with the matrices induced by
    /// each generator map.
    pub fn homology_generator_matrices(&self, k: usize) -> Result<(usize, Vec<QMatrix>)> {
        let complex = self.complex(None);
        let basis = complex.homology_basis(k);
        let mut out = Vec::with_capacity(self.maps.len());
        for map in &self.maps {
            let chain = complex.chain_map(k, |s| Self::map_simplex(map, s));
            let mut m = QMatrix::zeros(basis.rank(), basis.rank());
            for j in 0..basis.rank() {
                let image = chain.apply(&basis.representative(j));
                let coords = basis.coords(&image).ok_or_else(|| {
                    TlError::MalformedSpace("induced chain map does not preserve cycles".into())
                })?;
                m.set_column(j, &coords);
            }
            out.push(m);
        }
        Ok((basis.rank(), out))
    }

    /// Free rank and torsion coefficients of reduced integral homology, via
    /// integer normal-form reduction of the boundary operators.
    pub fn integral_homology(&self, k: usize) -> IntegralHomology {
        let complex = self.complex(None);
        let dk = complex.boundary(k);
        let dk1 = complex.boundary(k + 1);
        let cycles = dk.cols() - dk.rank();
        let factors = dk1.invariant_factors();
        let free_rank = cycles - factors.len();
        let torsion: Vec<i64> = factors
            .iter()
            .filter(|f| f.abs() > BigInt::one())
            .map(|f| i64::try_from(f.clone()).expect("desk-scale torsion"))
            .collect();
        IntegralHomology { free_rank, torsion }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralHomology {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl std::fmt::Display for IntegralHomology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A chain complex assembled from an explicit face-closed simplex list.
pub(crate) struct Complex {
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl Complex {
    pub(crate) fn new(simplices: Vec<Vec<usize>>) -> Complex {
        let max_dim = simplices.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max_dim];
        for s in simplices {
            by_dim[s.len() - 1].push(s);
        }
        for level in &mut by_dim {
            level.sort();
        }
        Complex { by_dim }
    }

    fn simplices_of(&self, k: usize) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        self.by_dim.get(k).map_or(&EMPTY[..], |v| &v[..])
    }

    /// Boundary operator C_k -> C_{k-1} over the integers; for k = 0 this is
    /// the augmentation row (reduced homology).
    pub(crate) fn boundary(&self, k: usize) -> ZMatrix {
        let cols = self.simplices_of(k);
        if k == 0 {
            let mut m = ZMatrix::zeros(1, cols.len());
            for j in 0..cols.len() {
                m[(0, j)] = BigInt::one();
            }
            return m;
        }
        let rows = self.simplices_of(k - 1);
        let row_index: HashMap<&[usize], usize> = rows
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut m = ZMatrix::zeros(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for drop in 0..s.len() {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &v)| (t != drop).then_some(v))
                    .collect();
                let i = row_index[face.as_slice()];
                m[(i, j)] = if drop % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
        }
        m
    }

    pub(crate) fn betti_reduced(&self, k: usize) -> usize {
        let dk = self.boundary(k);
        let cycles = dk.cols() - dk.rank();
        let boundaries = self.boundary(k + 1).rank();
        cycles - boundaries
    }

    pub(crate) fn homology_basis(&self, k: usize) -> HomologyBasis {
        let dk = self.boundary(k).to_rational();
        let dk1 = self.boundary(k + 1).to_rational();
        let cycles = dk.nullspace();
        let dim_c = dk.cols();
        let mut span = SpanBasis::new(dim_c);
        for j in 0..dk1.cols() {
            span.insert(&dk1.column(j));
        }
        let boundary_cols = span.len();
        let mut reps: Vec<Vec<Q>> = Vec::new();
        for j in 0..cycles.cols() {
            let col = cycles.column(j);
            if span.insert(&col) {
                reps.push(col);
            }
        }
        let mut solver_cols: Vec<Vec<Q>> = span.originals()[..boundary_cols].to_vec();
        solver_cols.extend(reps.iter().cloned());
        let solver = QMatrix::from_columns(dim_c, &solver_cols);
        HomologyBasis { dim_c, boundary_cols, reps, solver }
    }

    /// Chain map in degree k from per-simplex images with signs.
    pub(crate) fn chain_map(
        &self,
        k: usize,
        f: impl Fn(&[usize]) -> Option<(Vec<usize>, i64)>,
    ) -> ChainMap {
        let cols = self.simplices_of(k);
        let index: HashMap<&[usize], usize> = cols
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut images = Vec::with_capacity(cols.len());
        for s in cols {
            images.push(f(s).map(|(image, sign)| (index[image.as_slice()], sign)));
        }
        ChainMap { dim: cols.len(), images }
    }
}

pub(crate) struct ChainMap {
    dim: usize,
    images: Vec<Option<(usize, i64)>>,
}

impl ChainMap {
    pub(crate) fn apply(&self, chain: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (j, c) in chain.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some((i, sign)) = self.images[j] {
                let term = if sign >= 0 { c.clone() } else { -c.clone() };
                out[i] = &out[i] + term;
            }
        }
        out
    }
}

pub(crate) struct HomologyBasis {
    dim_c: usize,
    boundary_cols: usize,
    reps: Vec<Vec<Q>>,
    solver: QMatrix,
}

impl HomologyBasis {
    pub(crate) fn rank(&self) -> usize {
        self.reps.len()
    }

    pub(crate) fn representative(&self, j: usize) -> Vec<Q> {
        self.reps[j].clone()
    }

    /// Coordinates of a cycle in the homology basis (boundaries quotiented
    /// away); None if the vector is not in the span of cycles.
    pub(crate) fn coords(&self, cycle: &[Q]) -> Option<Vec<Q>> {
        if self.reps.is_empty() && self.boundary_cols == 0 {
            return cycle.iter().all(Zero::is_zero).then(Vec::new);
        }
        let rhs = QMatrix::from_columns(self.dim_c, &[cycle.to_vec()]);
        let x = self.solver.solve(&rhs)?;
        Some(
            (self.boundary_cols..self.boundary_cols + self.reps.len())
                .map(|i| x[(i, 0)].clone())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trivial_space(vertices: usize, simplices: Vec<Vec<usize>>) -> SimplicialTlSpace {
        // n = 2 with u_1 the identity: homology fixtures with a legal action.
        let names = (0..vertices).map(|i| format!("v{i}")).collect();
        let map = (0..vertices).collect();
        SimplicialTlSpace::new(2, names, Some(0), simplices, vec![map]).unwrap()
    }

    fn hollow_triangle() -> SimplicialTlSpace {
        trivial_space(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]])
    }

    fn tetrahedron_boundary() -> SimplicialTlSpace {
        trivial_space(
            4,
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
    }

    fn octahedron() -> Vec<Vec<usize>> {
        // Vertices 0..6 with antipodal pairs (0,5), (1,3), (2,4).
        vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 1],
            vec![5, 1, 2],
            vec![5, 2, 3],
            vec![5, 3, 4],
            vec![5, 4, 1],
        ]
    }

    fn projective_plane() -> SimplicialTlSpace {
        // The 6-vertex triangulation; every edge lies in two of the ten faces.
        trivial_space(
            6,
            vec![
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 4],
                vec![0, 3, 5],
                vec![0, 4, 5],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 4, 5],
                vec![2, 3, 4],
                vec![2, 3, 5],
            ],
        )
    }

    fn seven_vertex_torus() -> SimplicialTlSpace {
        let faces = (0..7)
            .flat_map(|i| {
                vec![
                    vec![i, (i + 1) % 7, (i + 3) % 7],
                    vec![i, (i + 2) % 7, (i + 3) % 7],
                ]
            })
            .collect();
        trivial_space(7, faces)
    }

    #[test]
    fn face_closure_and_indexing() {
        let s = hollow_triangle();
        // 3 vertices + 3 edges.
        assert_eq!(s.simplices().len(), 6);
        assert!(s.simplex_index(&[0, 1]).is_some());
        assert!(s.simplex_index(&[0, 1, 2]).is_none());
    }

    #[test]
    fn circle_homology() {
        let s = hollow_triangle();
        assert_eq!(s.betti_reduced(0, None), 0);
        assert_eq!(s.betti_reduced(1, None), 1);
        assert_eq!(s.betti_reduced(2, None), 0);
        let h = s.integral_homology(1);
        assert_eq!(h, IntegralHomology { free_rank: 1, torsion: vec![] });
        // Trivial action induces the identity on homology.
        let (dim, mats) = s.homology_generator_matrices(1).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(mats[0], QMatrix::identity(1));
    }

    #[test]
    fn sphere_homology() {
        let s = tetrahedron_boundary();
        assert_eq!(s.betti_reduced(1, None), 0);
        assert_eq!(s.betti_reduced(2, None), 1);
        assert_eq!(s.integral_homology(2), IntegralHomology { free_rank: 1, torsion: vec![] });
        assert_eq!(s.integral_homology(1), IntegralHomology { free_rank: 0, torsion: vec![] });

        let oct = trivial_space(6, octahedron());
        assert_eq!(oct.betti_reduced(2, None), 1);
        assert_eq!(oct.betti_reduced(1, None), 0);
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        let s = projective_plane();
        // 6 vertices, 15 edges, 10 faces: chi = 1.
        assert_eq!(s.simplices().len(), 6 + 15 + 10);
        assert_eq!(s.betti_reduced(1, None), 0);
        assert_eq!(s.betti_reduced(2, None), 0);
        assert_eq!(s.integral_homology(1), IntegralHomology { free_rank: 0, torsion: vec![2] });
        assert_eq!(s.integral_homology(2), IntegralHomology { free_rank: 0, torsion: vec![] });
    }

    #[test]
    fn torus_homology() {
        let s = seven_vertex_torus();
        assert_eq!(s.betti_reduced(1, None), 2);
        assert_eq!(s.betti_reduced(2, None), 1);
        assert_eq!(s.integral_homology(1), IntegralHomology { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn disjoint_circle_and_point() {
        let s = trivial_space(4, vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![3]]);
        assert_eq!(s.integral_homology(1), IntegralHomology { free_rank: 1, torsion: vec![] });
        assert_eq!(s.integral_homology(0), IntegralHomology { free_rank: 1, torsion: vec![] });
        assert_eq!(s.betti_reduced(0, None), 1);
    }

    #[test]
    fn subset_homology() {
        let s = hollow_triangle();
        // The subcomplex of all vertices plus the single edge {0,1}.
        let mut subset = BTreeSet::new();
        for (i, simplex) in s.simplices().iter().enumerate() {
            if simplex.len() == 1 || simplex.as_slice() == [0, 1] {
                subset.insert(i);
            }
        }
        assert_eq!(s.betti_reduced(1, Some(&subset)), 0);
        assert_eq!(s.betti_reduced(0, Some(&subset)), 1);
    }

    #[test]
    fn chain_map_signs() {
        // Swapping two vertices of the hollow triangle reverses the
        // fundamental class of the circle.
        let names = vec!["a".into(), "b".into(), "c".into()];
        let map = vec![1usize, 0, 2];
        let s = SimplicialTlSpace::new(
            2,
            names,
            Some(2),
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![map],
        )
        .unwrap();
        let (dim, mats) = s.homology_generator_matrices(1).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(mats[0], QMatrix::from_int_rows(&[vec![-1]]));
    }

    #[test]
    fn malformed_spaces_are_rejected() {
        assert!(SimplicialTlSpace::new(2, vec![], Some(0), vec![], vec![vec![]]).is_err());
        assert!(SimplicialTlSpace::new(
            2,
            vec!["a".into(), "a".into()],
            Some(0),
            vec![],
            vec![vec![0, 1]]
        )
        .is_err());
        assert!(SimplicialTlSpace::new(
            2,
            vec!["a".into(), "b".into()],
            Some(5),
            vec![],
            vec![vec![0, 1]]
        )
        .is_err());
        // A vertex map that tears an edge apart is caught by simplex_maps.
        let s = SimplicialTlSpace::new(
            2,
            vec!["a".into(), "b".into(), "c".into()],
            Some(0),
            vec![vec![0, 1]],
            vec![vec![0, 2, 2]],
        )
        .unwrap();
        assert!(s.simplex_maps().is_err());
    }
}
