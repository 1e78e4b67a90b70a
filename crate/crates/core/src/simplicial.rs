//! Simplicial complexes on a vertex set [n]: f-vectors, f/h-triangles,
//! Alexander duality, Stanley-Reisner translations into both rings, skeleta,
//! links, reduced homology over F_q, the Reisner criterion and socle
//! dimensions of the exterior face ring.
//!
//! Faces are bitmasks. A complex is stored by its facets (pairwise
//! incomparable); the void complex (no faces at all) has an empty facet set
//! and is distinct from the complex whose only face is the empty set.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::exterior::{subsets_of_size, ExtGradedIdeal, ExtMonomial, ExtTermOrder};
use crate::field::{binomial, Fp};
use crate::matrix::DenseMatrix;
use crate::symmetric::{SymIdeal, SymMonomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: BTreeSet<u32>,
}

/// f-vector (f_{-1}, f_0, ..., f_{dim}); empty for the void complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<usize>);

/// Triangular array t[i][r], 0 <= r <= i <= d, where d-1 is the dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FTriangle(pub Vec<Vec<i64>>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTriangle(pub Vec<Vec<i64>>);

impl SimplicialComplex {
    /// Builds a complex from (possibly redundant) generating faces, keeping
    /// the inclusion-maximal ones. An empty list gives the void complex.
    pub fn from_facets(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        assert!(n >= 1 && n <= 16, "vertex count out of range: {n}");
        let mut masks: Vec<u32> = Vec::new();
        for f in faces {
            let mut mask = 0u32;
            for &v in f {
                if v < 1 || v > n {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} outside [1, {n}]"
                    )));
                }
                mask |= 1 << (v - 1);
            }
            masks.push(mask);
        }
        let mut facets = BTreeSet::new();
        for &m in &masks {
            if !masks.iter().any(|&o| o != m && o & m == m) {
                facets.insert(m);
            }
        }
        Ok(SimplicialComplex { n, facets })
    }

    pub fn from_facet_masks(n: usize, masks: impl IntoIterator<Item = u32>) -> Self {
        let masks: Vec<u32> = masks.into_iter().collect();
        let mut facets = BTreeSet::new();
        for &m in &masks {
            if !masks.iter().any(|&o| o != m && o & m == m) {
                facets.insert(m);
            }
        }
        SimplicialComplex { n, facets }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: BTreeSet::new(),
        }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: [((1u32 << n) - 1)].into_iter().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facets(&self) -> &BTreeSet<u32> {
        &self.facets
    }

    pub fn facet_lists(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| ExtMonomial(m).indices()).collect()
    }

    /// Dimension, or `None` for the void complex. The complex `{∅}` has
    /// dimension -1.
    pub fn dim(&self) -> Option<isize> {
        self.facets
            .iter()
            .map(|m| m.count_ones() as isize - 1)
            .max()
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|m| m.count_ones());
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    pub fn contains_face(&self, mask: u32) -> bool {
        self.facets.iter().any(|&f| mask & f == mask)
    }

    /// All faces (downward closure of the facets).
    pub fn faces(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for &f in &self.facets {
            // enumerate all submasks of f, including 0
            let mut sub = f;
            loop {
                out.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        out
    }

    pub fn faces_of_size(&self, r: usize) -> Vec<u32> {
        self.faces()
            .into_iter()
            .filter(|m| m.count_ones() as usize == r)
            .collect()
    }

    /// Is `other` a subcomplex, i.e. every face of `other` a face of self?
    pub fn contains_subcomplex(&self, other: &SimplicialComplex) -> bool {
        other.facets.iter().all(|&f| self.contains_face(f))
    }

    pub fn f_vector(&self) -> FVector {
        match self.dim() {
            None => FVector(Vec::new()),
            Some(d) => {
                let faces = self.faces();
                let mut counts = vec![0usize; (d + 2) as usize];
                for m in faces {
                    counts[m.count_ones() as usize] += 1;
                }
                FVector(counts)
            }
        }
    }

    /// Reduced Euler characteristic, the alternating sum over the f-vector.
    pub fn reduced_euler(&self) -> i64 {
        let FVector(f) = self.f_vector();
        let mut acc = 0i64;
        for (r, &count) in f.iter().enumerate() {
            // r = |F|, contributing (-1)^{dim F} = (-1)^{r-1}
            if r % 2 == 1 {
                acc += count as i64;
            } else {
                acc -= count as i64;
            }
        }
        acc
    }

    /// Inclusion-minimal non-faces.
    pub fn minimal_nonfaces(&self) -> Vec<u32> {
        let faces = self.faces();
        let mut out = Vec::new();
        for m in 0u32..1 << self.n {
            if faces.contains(&m) {
                continue;
            }
            // minimal iff every proper maximal subset is a face
            let mut minimal = true;
            let mut rest = m;
            while rest != 0 {
                let b = rest.trailing_zeros();
                if !faces.contains(&(m & !(1 << b))) {
                    minimal = false;
                    break;
                }
                rest &= rest - 1;
            }
            if minimal {
                out.push(m);
            }
        }
        out
    }

    /// Alexander dual: faces are complements of non-faces; an involution.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let full = (1u32 << self.n) - 1;
        let facet_masks: Vec<u32> = self
            .minimal_nonfaces()
            .into_iter()
            .map(|m| full & !m)
            .collect();
        SimplicialComplex::from_facet_masks(self.n, facet_masks)
    }

    /// Exterior Stanley-Reisner ideal: generated by the minimal non-faces.
    pub fn sr_ideal_exterior(&self, fp: Fp, order: ExtTermOrder) -> ExtGradedIdeal {
        let gens: Vec<ExtMonomial> = self.minimal_nonfaces().into_iter().map(ExtMonomial).collect();
        ExtGradedIdeal::from_monomial_generators(fp, order, self.n, &gens)
    }

    /// Stanley-Reisner ideal in the polynomial ring.
    pub fn sr_ideal_symmetric(&self) -> SymIdeal {
        let gens = self.minimal_nonfaces().into_iter().map(|m| {
            let mut exps = vec![0u32; self.n];
            for i in ExtMonomial(m).indices() {
                exps[i - 1] = 1;
            }
            SymMonomial(exps)
        });
        SymIdeal::new(self.n, gens)
    }

    /// Exchange property toward larger indices on every face.
    pub fn is_shifted(&self) -> bool {
        let faces = self.faces();
        for &m in &faces {
            for i in ExtMonomial(m).indices() {
                for j in i + 1..=self.n {
                    if m >> (j - 1) & 1 == 0 {
                        let swapped = m & !(1 << (i - 1)) | 1 << (j - 1);
                        if !faces.contains(&swapped) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Degree of a face: the largest cardinality of a face containing it.
    pub fn face_degree(&self, mask: u32) -> usize {
        self.facets
            .iter()
            .filter(|&&f| mask & f == mask)
            .map(|f| f.count_ones() as usize)
            .max()
            .expect("not a face")
    }

    pub fn f_triangle(&self) -> FTriangle {
        let d = match self.dim() {
            None => return FTriangle(Vec::new()),
            Some(d) => (d + 1) as usize,
        };
        let mut t = vec![vec![0i64; d + 1]; d + 1];
        for m in self.faces() {
            let i = self.face_degree(m);
            let r = m.count_ones() as usize;
            t[i][r] += 1;
        }
        let mut out: Vec<Vec<i64>> = Vec::with_capacity(d + 1);
        for (i, row) in t.into_iter().enumerate() {
            out.push(row.into_iter().take(i + 1).collect());
        }
        FTriangle(out)
    }

    pub fn h_triangle(&self) -> HTriangle {
        h_from_f(&self.f_triangle())
    }

    /// Pure i-skeleton: the complex generated by the faces of dimension i.
    pub fn skeleton_pure(&self, i: isize) -> SimplicialComplex {
        assert!(i >= -1);
        let r = (i + 1) as usize;
        SimplicialComplex::from_facet_masks(self.n, self.faces_of_size(r))
    }

    /// Link of a face.
    pub fn link(&self, mask: u32) -> SimplicialComplex {
        let facet_masks: Vec<u32> = self
            .facets
            .iter()
            .filter(|&&f| mask & f == mask)
            .map(|&f| f & !mask)
            .collect();
        SimplicialComplex::from_facet_masks(self.n, facet_masks)
    }

    /// Signed boundary matrix from faces of dimension `d` to dimension `d-1`.
    pub fn boundary_matrix(&self, fp: Fp, d: isize) -> DenseMatrix {
        let from = self.faces_of_size((d + 1) as usize);
        let to = self.faces_of_size(d as usize);
        let to_index: HashMap<u32, usize> = to.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut mat = DenseMatrix::zeros(fp, to.len(), from.len());
        for (c, &f) in from.iter().enumerate() {
            let verts = ExtMonomial(f).indices();
            for (pos, &v) in verts.iter().enumerate() {
                let face = f & !(1 << (v - 1));
                let r = to_index[&face];
                let val = if pos % 2 == 0 { 1 } else { fp.neg(1) };
                mat.set(r, c, val);
            }
        }
        mat
    }

    /// Reduced simplicial homology dimensions over F_q, indexed from -1:
    /// entry k is dim H~_{k-1}. Empty for the void complex.
    pub fn reduced_homology_dims(&self, fp: Fp) -> Vec<usize> {
        let d = match self.dim() {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = Vec::new();
        for i in -1..=d {
            let out_matrix = self.boundary_matrix(fp, i); // C_i -> C_{i-1}
            let in_matrix = self.boundary_matrix(fp, i + 1); // C_{i+1} -> C_i
            let dim_ci = out_matrix.cols();
            let h = (dim_ci - out_matrix.rank()) - in_matrix.rank();
            out.push(h);
        }
        out
    }

    /// Reisner criterion over F_q: every link has vanishing reduced homology
    /// below its top dimension.
    pub fn is_cm_reisner(&self, fp: Fp) -> bool {
        for face in self.faces() {
            let link = self.link(face);
            let Some(ld) = link.dim() else { continue };
            let h = link.reduced_homology_dims(fp);
            for i in -1..ld {
                if h[(i + 1) as usize] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Per-degree socle dimensions of the exterior face ring, computed as the
    /// simultaneous kernel of left multiplication by every variable. These
    /// must equal the facet counts by cardinality.
    pub fn socle_dims(&self, fp: Fp) -> Vec<usize> {
        let mut out = vec![0usize; self.n + 1];
        let faces = self.faces();
        let by_size: Vec<Vec<u32>> = (0..=self.n + 1)
            .map(|r| {
                if r <= self.n {
                    self.faces_of_size(r)
                } else {
                    Vec::new()
                }
            })
            .collect();
        for d in 0..=self.n {
            let basis = &by_size[d];
            if basis.is_empty() {
                continue;
            }
            let above = &by_size[d + 1];
            let above_index: HashMap<u32, usize> =
                above.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            // stack multiplication by e_1..e_n vertically
            let mut stacked = DenseMatrix::zeros(fp, self.n * above.len().max(1), basis.len());
            for (c, &f) in basis.iter().enumerate() {
                for k in 1..=self.n {
                    if f >> (k - 1) & 1 == 1 {
                        continue;
                    }
                    let w = f | 1 << (k - 1);
                    if !faces.contains(&w) {
                        continue;
                    }
                    let (sign, _) = ExtMonomial(1 << (k - 1)).wedge(&ExtMonomial(f)).unwrap();
                    let r = (k - 1) * above.len() + above_index[&w];
                    stacked.set(r, c, if sign < 0 { fp.neg(1) } else { 1 });
                }
            }
            out[d] = basis.len() - stacked.rank();
        }
        out
    }

    /// Facet counts by cardinality; entry r counts facets with r vertices.
    pub fn facet_counts_by_size(&self) -> Vec<usize> {
        let mut out = vec![0usize; self.n + 1];
        for f in &self.facets {
            out[f.count_ones() as usize] += 1;
        }
        out
    }
}

/// h-triangle from the f-triangle by rowwise alternating binomial sums.
pub fn h_from_f(f: &FTriangle) -> HTriangle {
    let mut out = Vec::with_capacity(f.0.len());
    for (i, row) in f.0.iter().enumerate() {
        let mut hrow = vec![0i64; i + 1];
        for r in 0..=i {
            let mut acc = 0i64;
            for (s, &val) in row.iter().enumerate().take(r + 1) {
                let c = binomial((i - s) as i64, (r - s) as i64) as i64;
                let term = c * val;
                if (r - s) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            hrow[r] = acc;
        }
        out.push(hrow);
    }
    HTriangle(out)
}

/// Inverse transform of [`h_from_f`].
pub fn f_from_h(h: &HTriangle) -> FTriangle {
    let mut out = Vec::with_capacity(h.0.len());
    for (i, row) in h.0.iter().enumerate() {
        let mut frow = vec![0i64; i + 1];
        for r in 0..=i {
            let mut acc = 0i64;
            for (s, &val) in row.iter().enumerate().take(r + 1) {
                acc += binomial((i - s) as i64, (r - s) as i64) as i64 * val;
            }
            frow[r] = acc;
        }
        out.push(frow);
    }
    FTriangle(out)
}

/// Complex whose faces are the monomials outside a squarefree monomial ideal
/// of the exterior algebra.
pub fn complex_of_ext_ideal(j: &ExtGradedIdeal) -> Result<SimplicialComplex> {
    let n = j.n();
    let mut faces: Vec<u32> = Vec::new();
    for d in 0..=n {
        let comp = j.monomials(d)?;
        for m in subsets_of_size(n, d) {
            if !comp.contains(&ExtMonomial(m)) {
                faces.push(m);
            }
        }
    }
    Ok(SimplicialComplex::from_facet_masks(n, faces))
}

/// Complex of a squarefree monomial ideal of the polynomial ring.
pub fn complex_of_sym_ideal(i: &SymIdeal) -> Result<SimplicialComplex> {
    let n = i.n();
    for g in i.generators() {
        if !g.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
    }
    let gen_masks: Vec<u32> = i
        .minimal_generators()
        .iter()
        .map(|g| {
            let mut mask = 0u32;
            for (k, &e) in g.0.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << k;
                }
            }
            mask
        })
        .collect();
    let faces: Vec<u32> = (0u32..1 << n)
        .filter(|&f| !gen_masks.iter().any(|&g| g & f == g))
        .collect();
    Ok(SimplicialComplex::from_facet_masks(n, faces))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fp {
        Fp::default()
    }

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap()
    }

    fn disjoint_edges() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[vec![1, 2], vec![3, 4]]).unwrap()
    }

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]).unwrap()
    }

    #[test]
    fn f_vector_examples() {
        assert_eq!(hollow_triangle().f_vector(), FVector(vec![1, 3, 3]));
        assert_eq!(
            SimplicialComplex::from_facets(1, &[vec![1]]).unwrap().f_vector(),
            FVector(vec![1, 1])
        );
        assert_eq!(disjoint_edges().f_vector(), FVector(vec![1, 4, 2]));
        assert_eq!(SimplicialComplex::void(3).f_vector(), FVector(vec![]));
    }

    #[test]
    fn facets_are_pruned() {
        let c = SimplicialComplex::from_facets(3, &[vec![1], vec![1, 2], vec![1, 2]]).unwrap();
        assert_eq!(c.facet_lists(), vec![vec![1, 2]]);
    }

    #[test]
    fn alexander_dual_examples() {
        // two disjoint edges <-> four-cycle
        assert_eq!(disjoint_edges().alexander_dual(), four_cycle());
        assert_eq!(four_cycle().alexander_dual(), disjoint_edges());
        // full simplex has no non-faces: dual is void
        let full = SimplicialComplex::simplex(3);
        assert!(full.alexander_dual().is_void());
        assert_eq!(SimplicialComplex::void(3).alexander_dual(), SimplicialComplex::simplex(3));
        // involution on samples
        for c in [hollow_triangle(), SimplicialComplex::from_facets(3, &[vec![1, 2], vec![3]]).unwrap()] {
            assert_eq!(c.alexander_dual().alexander_dual(), c);
        }
    }

    #[test]
    fn sr_ideal_examples() {
        let f = fp();
        let j = hollow_triangle().sr_ideal_exterior(f, ExtTermOrder::DegRevLex);
        assert_eq!(
            j.minimal_generators().unwrap(),
            [ExtMonomial::from_indices(&[1, 2, 3])].into_iter().collect()
        );
        let j = disjoint_edges().sr_ideal_exterior(f, ExtTermOrder::DegRevLex);
        let gens: Vec<Vec<usize>> = j
            .minimal_generators()
            .unwrap()
            .iter()
            .map(|m| m.indices())
            .collect();
        assert_eq!(gens, vec![vec![1, 3], vec![2, 3], vec![1, 4], vec![2, 4]]);
        // zero ideal -> full simplex
        let zero = ExtGradedIdeal::zero(f, ExtTermOrder::DegRevLex, 3);
        assert_eq!(complex_of_ext_ideal(&zero).unwrap(), SimplicialComplex::simplex(3));
        // round trips
        for c in [hollow_triangle(), disjoint_edges(), four_cycle()] {
            let j = c.sr_ideal_exterior(f, ExtTermOrder::DegRevLex);
            assert_eq!(complex_of_ext_ideal(&j).unwrap(), c);
            let i = c.sr_ideal_symmetric();
            assert_eq!(complex_of_sym_ideal(&i).unwrap(), c);
        }
    }

    #[test]
    fn nonsquarefree_ideal_is_rejected() {
        let i = SymIdeal::new(2, [SymMonomial(vec![2, 0])]);
        assert!(matches!(complex_of_sym_ideal(&i), Err(Error::NotSquarefree)));
    }

    #[test]
    fn is_shifted_examples() {
        assert!(hollow_triangle().is_shifted());
        assert!(!disjoint_edges().is_shifted());
        let c = SimplicialComplex::from_facets(4, &[vec![2, 4], vec![3, 4], vec![1]]).unwrap();
        assert!(c.is_shifted());
        // shifted iff the exterior Stanley-Reisner ideal is stable
        let f = fp();
        for c in [hollow_triangle(), disjoint_edges(), four_cycle()] {
            assert_eq!(
                c.is_shifted(),
                c.sr_ideal_exterior(f, ExtTermOrder::DegRevLex)
                    .is_squarefree_strongly_stable()
                    .unwrap()
            );
        }
    }

    #[test]
    fn triangle_examples() {
        let h = hollow_triangle().h_triangle();
        assert_eq!(h.0[2], vec![1, 1, 1]);
        assert_eq!(h.0[0], vec![0]);
        assert_eq!(h.0[1], vec![0, 0]);

        let h = disjoint_edges().h_triangle();
        assert_eq!(h.0[2], vec![1, 2, -1]);

        let v = SimplicialComplex::from_facets(1, &[vec![1]]).unwrap();
        let h = v.h_triangle();
        assert_eq!(h.0[1], vec![1, 0]);

        // row sums of the f-triangle reproduce the f-vector
        for c in [hollow_triangle(), disjoint_edges(), four_cycle()] {
            let FTriangle(t) = c.f_triangle();
            let FVector(f) = c.f_vector();
            for (r, &fv) in f.iter().enumerate() {
                let total: i64 = t.iter().map(|row| row.get(r).copied().unwrap_or(0)).sum();
                assert_eq!(total, fv as i64);
            }
            // round trip h <-> f
            assert_eq!(f_from_h(&c.h_triangle()), c.f_triangle());
        }
    }

    #[test]
    fn skeleton_examples() {
        let c = disjoint_edges();
        let sk0 = c.skeleton_pure(0);
        assert_eq!(sk0.f_vector(), FVector(vec![1, 4]));
        let hollow = hollow_triangle();
        assert_eq!(hollow.skeleton_pure(1), hollow);
        assert_eq!(hollow.skeleton_pure(0).f_vector(), FVector(vec![1, 3]));
    }

    #[test]
    fn homology_examples() {
        let f = fp();
        // hollow triangle: one 1-cycle
        assert_eq!(hollow_triangle().reduced_homology_dims(f), vec![0, 0, 1]);
        // solid triangle: cone, no homology
        let solid = SimplicialComplex::from_facets(3, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(solid.reduced_homology_dims(f), vec![0, 0, 0, 0]);
        // two components: H~_0 = 1
        assert_eq!(disjoint_edges().reduced_homology_dims(f), vec![0, 1, 0]);
        // {∅}: H~_{-1} = 1
        let empty = SimplicialComplex::from_facets(2, &[vec![]]).unwrap();
        assert_eq!(empty.reduced_homology_dims(f), vec![1]);
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let f = fp();
        for c in [
            hollow_triangle(),
            disjoint_edges(),
            four_cycle(),
            SimplicialComplex::from_facets(3, &[vec![1, 2, 3]]).unwrap(),
        ] {
            let h = c.reduced_homology_dims(f);
            let mut chi = 0i64;
            for (k, &dim) in h.iter().enumerate() {
                // index k corresponds to homological degree k-1
                if (k as i64 - 1).rem_euclid(2) == 0 {
                    chi += dim as i64;
                } else {
                    chi -= dim as i64;
                }
            }
            assert_eq!(chi, c.reduced_euler(), "complex {:?}", c.facet_lists());
        }
    }

    #[test]
    fn reisner_examples() {
        let f = fp();
        assert!(hollow_triangle().is_cm_reisner(f));
        assert!(!disjoint_edges().is_cm_reisner(f));
        assert!(four_cycle().is_cm_reisner(f));
    }

    #[test]
    fn socle_examples() {
        let f = fp();
        assert_eq!(disjoint_edges().socle_dims(f), vec![0, 0, 2, 0, 0]);
        assert_eq!(SimplicialComplex::simplex(3).socle_dims(f), vec![0, 0, 0, 1]);
        assert_eq!(hollow_triangle().socle_dims(f), vec![0, 0, 3, 0]);
        // socle dimensions equal facet counts by size
        for c in [hollow_triangle(), disjoint_edges(), four_cycle()] {
            assert_eq!(c.socle_dims(f), c.facet_counts_by_size());
        }
    }
}
