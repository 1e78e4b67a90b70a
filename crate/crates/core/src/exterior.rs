//! Exterior algebra E = K<e_1,...,e_n>: squarefree monomials with wedge
//! signs, degree-refining term orders, graded ideals given degreewise, the
//! m-statistics of monomial sets, squarefree strong stability, lexsegment
//! ideals and generic change of coordinates.
//!
//! A monomial e_F is a subset of [n], stored as a bitmask (bit i-1 for vertex
//! i). Graded ideal components are either explicit monomial sets or reduced
//! coordinate subspaces over the monomial basis ordered descending by the
//! active term order; keeping subspaces in reduced echelon form makes
//! structural equality semantic equality.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::{binomial, Fp};
use crate::matrix::DenseMatrix;

/// A squarefree exterior monomial e_F, F a subset of [n].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtMonomial(pub u32);

impl ExtMonomial {
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!(i >= 1 && i <= 32, "vertex index out of range: {i}");
            mask |= 1 << (i - 1);
        }
        ExtMonomial(mask)
    }

    /// 1-based sorted support.
    pub fn indices(&self) -> Vec<usize> {
        (0..32).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Largest index in the support, or 0 for the empty monomial.
    pub fn max_index(&self) -> usize {
        (32 - self.0.leading_zeros()) as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn divides(&self, other: &ExtMonomial) -> bool {
        self.0 & other.0 == self.0
    }

    /// Wedge product with sign; `None` when the supports intersect.
    ///
    /// The sign counts the inversions needed to sort the concatenation of the
    /// two sorted supports.
    pub fn wedge(&self, other: &ExtMonomial) -> Option<(i8, ExtMonomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            inversions += (self.0 >> (b + 1)).count_ones();
            rest &= rest - 1;
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, ExtMonomial(self.0 | other.0)))
    }
}

/// Term orders on E refining degree, with e_1 > e_2 > ... > e_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum ExtTermOrder {
    /// Degree reverse lexicographic: within a degree, a > b iff the largest
    /// element of the symmetric difference lies in b.
    DegRevLex,
    /// Degree lexicographic: within a degree, a > b iff the smallest element
    /// of the symmetric difference lies in a.
    DegLex,
}

impl ExtTermOrder {
    pub fn cmp(&self, a: &ExtMonomial, b: &ExtMonomial) -> Ordering {
        match a.degree().cmp(&b.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let sym = a.0 ^ b.0;
        if sym == 0 {
            return Ordering::Equal;
        }
        match self {
            ExtTermOrder::DegRevLex => {
                let top = 31 - sym.leading_zeros();
                if b.0 >> top & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            ExtTermOrder::DegLex => {
                let low = sym.trailing_zeros();
                if a.0 >> low & 1 == 1 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// All degree-d monomials on [n], sorted descending.
    pub fn monomials_desc(&self, n: usize, d: usize) -> Vec<ExtMonomial> {
        let mut out: Vec<ExtMonomial> = subsets_of_size(n, d).map(ExtMonomial).collect();
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }
}

/// Iterator over all bitmasks on [n] with exactly d bits set.
pub fn subsets_of_size(n: usize, d: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == d)
}

/// m-statistics of a set of monomials: counts by largest support index and by
/// (largest index, degree).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MStatistics {
    by_max: HashMap<usize, usize>,
    by_max_deg: HashMap<(usize, usize), usize>,
    total: usize,
}

impl MStatistics {
    pub fn of<'a, I: IntoIterator<Item = &'a ExtMonomial>>(gens: I) -> Self {
        let mut s = MStatistics::default();
        for g in gens {
            *s.by_max.entry(g.max_index()).or_insert(0) += 1;
            *s.by_max_deg.entry((g.max_index(), g.degree())).or_insert(0) += 1;
            s.total += 1;
        }
        s
    }

    /// Number of monomials with largest index exactly i.
    pub fn m_i(&self, i: usize) -> usize {
        self.by_max.get(&i).copied().unwrap_or(0)
    }

    /// Number of monomials with largest index at most i.
    pub fn m_le(&self, i: usize) -> usize {
        self.by_max
            .iter()
            .filter(|(&k, _)| k <= i)
            .map(|(_, &v)| v)
            .sum()
    }

    /// Number of monomials with largest index i and degree j.
    pub fn m_ij(&self, i: usize, j: usize) -> usize {
        self.by_max_deg.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.total
    }
}

/// One graded component of an ideal.
#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Monomials(BTreeSet<ExtMonomial>),
    /// Reduced row-echelon basis over the monomial basis of E_d, columns
    /// descending in the ideal's term order.
    Subspace(DenseMatrix),
}

impl Component {
    pub fn dim(&self) -> usize {
        match self {
            Component::Monomials(s) => s.len(),
            Component::Subspace(m) => m.rows(),
        }
    }
}

/// A graded ideal of E presented degreewise, closed under multiplication.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtGradedIdeal {
    n: usize,
    fp: Fp,
    order: ExtTermOrder,
    comps: Vec<Component>, // degrees 0..=n
}

impl ExtGradedIdeal {
    pub fn zero(fp: Fp, order: ExtTermOrder, n: usize) -> Self {
        assert!(n >= 1 && n <= 16, "ambient size out of range: {n}");
        ExtGradedIdeal {
            n,
            fp,
            order,
            comps: (0..=n).map(|_| Component::Monomials(BTreeSet::new())).collect(),
        }
    }

    /// Ideal generated by the given monomials: each component holds every
    /// degree-d monomial divisible by a generator.
    pub fn from_monomial_generators(
        fp: Fp,
        order: ExtTermOrder,
        n: usize,
        gens: &[ExtMonomial],
    ) -> Self {
        let mut ideal = Self::zero(fp, order, n);
        for d in 0..=n {
            let mut comp = BTreeSet::new();
            for m in subsets_of_size(n, d).map(ExtMonomial) {
                if gens.iter().any(|g| g.divides(&m)) {
                    comp.insert(m);
                }
            }
            ideal.comps[d] = Component::Monomials(comp);
        }
        ideal
    }

    /// Ideal generated by arbitrary homogeneous elements given as coordinate
    /// vectors over the degree-d monomial basis (descending in `order`).
    /// Components are closed under wedging with the variables.
    pub fn from_graded_generators(
        fp: Fp,
        order: ExtTermOrder,
        n: usize,
        gens: &[(usize, Vec<u64>)],
    ) -> Self {
        let mut spans: Vec<Vec<Vec<u64>>> = vec![Vec::new(); n + 1];
        for (d, v) in gens {
            assert!(*d <= n);
            assert_eq!(v.len(), binomial(n as i64, *d as i64) as usize);
            spans[*d].push(v.clone());
        }
        let mut ideal = Self::zero(fp, order, n);
        let basis: Vec<Vec<ExtMonomial>> = (0..=n).map(|d| order.monomials_desc(n, d)).collect();
        let index: Vec<HashMap<u32, usize>> = basis
            .iter()
            .map(|ms| ms.iter().enumerate().map(|(i, m)| (m.0, i)).collect())
            .collect();
        for d in 0..=n {
            // close the previous component upward
            if d >= 1 {
                if let Component::Subspace(prev) = &ideal.comps[d - 1] {
                    for r in 0..prev.rows() {
                        for k in 1..=n {
                            let ek = ExtMonomial::from_indices(&[k]);
                            let mut img = vec![0u64; basis[d].len()];
                            let mut nonzero = false;
                            for (c, m) in basis[d - 1].iter().enumerate() {
                                let coeff = prev.get(r, c);
                                if coeff == 0 {
                                    continue;
                                }
                                if let Some((sign, w)) = m.wedge(&ek) {
                                    let idx = index[d][&w.0];
                                    let val = if sign < 0 { fp.neg(coeff) } else { coeff };
                                    img[idx] = fp.add(img[idx], val);
                                    nonzero = true;
                                }
                            }
                            if nonzero {
                                spans[d].push(img);
                            }
                        }
                    }
                }
            }
            if spans[d].is_empty() {
                continue;
            }
            let m = DenseMatrix::from_rows(fp, basis[d].len(), &spans[d]);
            ideal.comps[d] = Component::Subspace(m.rref().basis);
        }
        ideal
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn order(&self) -> ExtTermOrder {
        self.order
    }

    pub fn component(&self, d: usize) -> &Component {
        &self.comps[d]
    }

    pub(crate) fn set_component(&mut self, d: usize, c: Component) {
        self.comps[d] = c;
    }

    pub fn dim(&self, d: usize) -> usize {
        if d > self.n {
            0
        } else {
            self.comps[d].dim()
        }
    }

    pub fn hilbert(&self) -> Vec<usize> {
        (0..=self.n).map(|d| self.dim(d)).collect()
    }

    pub fn is_monomial(&self) -> bool {
        self.comps.iter().all(|c| matches!(c, Component::Monomials(_)))
    }

    pub fn monomials(&self, d: usize) -> Result<&BTreeSet<ExtMonomial>> {
        match &self.comps[d] {
            Component::Monomials(s) => Ok(s),
            Component::Subspace(_) => Err(Error::NotMonomial(d)),
        }
    }

    pub fn contains_monomial(&self, m: &ExtMonomial) -> Result<bool> {
        Ok(self.monomials(m.degree())?.contains(m))
    }

    /// Coordinate matrix of the degree-d component (rows = basis vectors) in
    /// the monomial basis descending by the ideal's order.
    pub fn component_matrix(&self, d: usize) -> DenseMatrix {
        let basis = self.order.monomials_desc(self.n, d);
        match &self.comps[d] {
            Component::Subspace(m) => m.clone(),
            Component::Monomials(set) => {
                let rows: Vec<Vec<u64>> = set
                    .iter()
                    .map(|mono| {
                        let mut v = vec![0u64; basis.len()];
                        let idx = basis.iter().position(|b| b == mono).unwrap();
                        v[idx] = 1;
                        v
                    })
                    .collect();
                DenseMatrix::from_rows(self.fp, basis.len(), &rows).rref().basis
            }
        }
    }

    /// Unique minimal monomial generators: members no proper divisor of which
    /// lies in the ideal.
    pub fn minimal_generators(&self) -> Result<BTreeSet<ExtMonomial>> {
        let mut gens = BTreeSet::new();
        for d in 0..=self.n {
            let comp = self.monomials(d)?;
            if d == 0 {
                gens.extend(comp.iter().copied());
                continue;
            }
            let below = self.monomials(d - 1)?;
            for m in comp {
                let mut minimal = true;
                let mut rest = m.0;
                while rest != 0 {
                    let b = rest.trailing_zeros();
                    if below.contains(&ExtMonomial(m.0 & !(1 << b))) {
                        minimal = false;
                        break;
                    }
                    rest &= rest - 1;
                }
                if minimal {
                    gens.insert(*m);
                }
            }
        }
        Ok(gens)
    }

    /// Squarefree strong stability: for every monomial of the ideal, every
    /// exchange of a support index for a smaller unused one stays inside.
    /// Checked on full components, not just generators.
    pub fn is_squarefree_strongly_stable(&self) -> Result<bool> {
        for d in 0..=self.n {
            let comp = self.monomials(d)?;
            for m in comp {
                for i in m.indices() {
                    for j in 1..i {
                        if !m.contains(j) {
                            let swapped = ExtMonomial(m.0 & !(1 << (i - 1)) | 1 << (j - 1));
                            if !comp.contains(&swapped) {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// Ideal generated by the degree-t component.
    pub fn component_ideal(&self, t: usize) -> ExtGradedIdeal {
        let mut out = Self::zero(self.fp, self.order, self.n);
        if t > self.n {
            return out;
        }
        match &self.comps[t] {
            Component::Monomials(set) => {
                let gens: Vec<ExtMonomial> = set.iter().copied().collect();
                let full = Self::from_monomial_generators(self.fp, self.order, self.n, &gens);
                for d in t..=self.n {
                    out.comps[d] = full.comps[d].clone();
                }
            }
            Component::Subspace(m) => {
                let gens: Vec<(usize, Vec<u64>)> =
                    (0..m.rows()).map(|r| (t, m.row(r).to_vec())).collect();
                let full = Self::from_graded_generators(self.fp, self.order, self.n, &gens);
                for d in t..=self.n {
                    out.comps[d] = full.comps[d].clone();
                }
            }
        }
        out
    }

    /// Image of the ideal under the algebra map e_i -> sum_k g[k][i] e_k.
    /// The image of a monomial expands through minors of g; per-degree
    /// dimensions are preserved because the wedge powers of an invertible map
    /// are invertible.
    pub fn substitute(&self, g: &DenseMatrix) -> Result<ExtGradedIdeal> {
        if g.rows() != self.n || g.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "substitution matrix is {}x{}, ambient is {}",
                g.rows(),
                g.cols(),
                self.n
            )));
        }
        if g.rank() != self.n {
            return Err(Error::SingularMatrix);
        }
        let fp = self.fp;
        let mut out = Self::zero(fp, self.order, self.n);
        for d in 0..=self.n {
            if self.dim(d) == 0 {
                continue;
            }
            let basis = self.order.monomials_desc(self.n, d);
            let index: HashMap<u32, usize> =
                basis.iter().enumerate().map(|(i, m)| (m.0, i)).collect();
            // image of each needed basis monomial of E_d, as a coordinate row
            let mut image_of: HashMap<ExtMonomial, Vec<u64>> = HashMap::new();
            let mut need: Vec<ExtMonomial> = Vec::new();
            match &self.comps[d] {
                Component::Monomials(set) => need.extend(set.iter().copied()),
                Component::Subspace(_) => need.extend(basis.iter().copied()),
            }
            for mono in need {
                let cols: Vec<usize> = mono.indices().iter().map(|i| i - 1).collect();
                let mut img = vec![0u64; basis.len()];
                for target in basis.iter() {
                    let rows: Vec<usize> = target.indices().iter().map(|i| i - 1).collect();
                    let det = g.minor(&rows, &cols);
                    if det != 0 {
                        img[index[&target.0]] = det;
                    }
                }
                image_of.insert(mono, img);
            }
            let rows: Vec<Vec<u64>> = match &self.comps[d] {
                Component::Monomials(set) => set.iter().map(|m| image_of[m].clone()).collect(),
                Component::Subspace(mat) => (0..mat.rows())
                    .map(|r| {
                        let mut acc = vec![0u64; basis.len()];
                        for (c, bm) in basis.iter().enumerate() {
                            let coeff = mat.get(r, c);
                            if coeff == 0 {
                                continue;
                            }
                            for (k, &v) in image_of[bm].iter().enumerate() {
                                if v != 0 {
                                    acc[k] = fp.add(acc[k], fp.mul(coeff, v));
                                }
                            }
                        }
                        acc
                    })
                    .collect(),
            };
            let reduced = DenseMatrix::from_rows(fp, basis.len(), &rows).rref();
            assert_eq!(reduced.rank, self.dim(d), "wedge power lost rank");
            out.comps[d] = Component::Subspace(reduced.basis);
        }
        Ok(out)
    }
}

/// The squarefree lexsegment ideal with the prescribed Hilbert function: in
/// each degree the first `hilbert[d]` monomials in the (squarefree) lex
/// order. Fails with `NotRealizable` when the segments do not form an ideal,
/// i.e. when no graded ideal has this Hilbert function.
pub fn lexsegment_ideal(fp: Fp, n: usize, hilbert: &[usize]) -> Result<ExtGradedIdeal> {
    let lex = ExtTermOrder::DegLex;
    let mut ideal = ExtGradedIdeal::zero(fp, lex, n);
    for d in 0..=n {
        let h = hilbert.get(d).copied().unwrap_or(0);
        let all = lex.monomials_desc(n, d);
        if h > all.len() {
            return Err(Error::InvalidInput(format!(
                "hilbert[{d}] = {h} exceeds dim E_{d} = {}",
                all.len()
            )));
        }
        let comp: BTreeSet<ExtMonomial> = all.into_iter().take(h).collect();
        ideal.comps[d] = Component::Monomials(comp);
    }
    // segments must be closed under multiplication by the variables
    for d in 0..n {
        let here: Vec<ExtMonomial> = ideal.monomials(d)?.iter().copied().collect();
        let above = ideal.monomials(d + 1)?;
        for m in here {
            for k in 1..=n {
                if !m.contains(k) && !above.contains(&ExtMonomial(m.0 | 1 << (k - 1))) {
                    return Err(Error::NotRealizable(d + 1));
                }
            }
        }
    }
    Ok(ideal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp() -> Fp {
        Fp::default()
    }

    fn mono(ix: &[usize]) -> ExtMonomial {
        ExtMonomial::from_indices(ix)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(mono(&[1]).wedge(&mono(&[1])), None);
        let (s, m) = mono(&[2]).wedge(&mono(&[1])).unwrap();
        assert_eq!((s, m), (-1, mono(&[1, 2])));
        let (s, m) = mono(&[1, 3]).wedge(&mono(&[2])).unwrap();
        assert_eq!((s, m), (-1, mono(&[1, 2, 3])));
        let (s, m) = mono(&[1]).wedge(&mono(&[2])).unwrap();
        assert_eq!((s, m), (1, mono(&[1, 2])));
    }

    #[test]
    fn order_examples() {
        let rev = ExtTermOrder::DegRevLex;
        let lex = ExtTermOrder::DegLex;
        assert_eq!(rev.cmp(&mono(&[1, 2]), &mono(&[1, 3])), Ordering::Greater);
        assert_eq!(lex.cmp(&mono(&[1, 3]), &mono(&[2, 3])), Ordering::Greater);
        assert_eq!(rev.cmp(&mono(&[1, 3]), &mono(&[1, 3])), Ordering::Equal);
        // singleton chain e_1 > e_2 > ... under both orders
        for ord in [rev, lex] {
            for i in 1..4 {
                assert_eq!(ord.cmp(&mono(&[i]), &mono(&[i + 1])), Ordering::Greater);
            }
        }
        // degree refines both orders
        assert_eq!(rev.cmp(&mono(&[3]), &mono(&[1, 2])), Ordering::Less);
        // revlex and lex differ on {1,4} vs {2,3}
        assert_eq!(rev.cmp(&mono(&[1, 4]), &mono(&[2, 3])), Ordering::Less);
        assert_eq!(lex.cmp(&mono(&[1, 4]), &mono(&[2, 3])), Ordering::Greater);
    }

    #[test]
    fn minimal_generators_examples() {
        let f = fp();
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            ExtTermOrder::DegRevLex,
            3,
            &[mono(&[1, 2]), mono(&[1, 2, 3])],
        );
        assert_eq!(
            j.minimal_generators().unwrap(),
            [mono(&[1, 2])].into_iter().collect()
        );
        let zero = ExtGradedIdeal::zero(f, ExtTermOrder::DegRevLex, 3);
        assert!(zero.minimal_generators().unwrap().is_empty());
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            ExtTermOrder::DegRevLex,
            4,
            &[mono(&[1, 2]), mono(&[1, 3]), mono(&[2, 3, 4])],
        );
        assert_eq!(
            j.minimal_generators().unwrap(),
            [mono(&[1, 2]), mono(&[1, 3]), mono(&[2, 3, 4])]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn m_stats_examples() {
        let s = MStatistics::of(&[mono(&[1, 2]), mono(&[1, 3])]);
        assert_eq!(s.m_i(2), 1);
        assert_eq!(s.m_i(3), 1);
        assert_eq!(s.m_le(2), 1);
        assert_eq!(s.m_le(3), 2);
        assert_eq!(s.m_ij(2, 2), 1);
        assert_eq!(s.m_ij(3, 2), 1);
        let empty = MStatistics::of(&[]);
        assert_eq!(empty.m_le(5), 0);
        let s = MStatistics::of(&[mono(&[1, 2, 3])]);
        assert_eq!(s.m_i(3), 1);
        assert_eq!(s.m_ij(3, 3), 1);
    }

    #[test]
    fn stability_examples() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 2])]);
        assert!(j.is_squarefree_strongly_stable().unwrap());
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 3])]);
        assert!(!j.is_squarefree_strongly_stable().unwrap());
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            rev,
            4,
            &[mono(&[1, 2]), mono(&[1, 3]), mono(&[1, 4]), mono(&[2, 3])],
        );
        assert!(j.is_squarefree_strongly_stable().unwrap());
    }

    #[test]
    fn lexsegment_examples() {
        let f = fp();
        let j = lexsegment_ideal(f, 3, &[0, 0, 1, 1]).unwrap();
        let expect = ExtGradedIdeal::from_monomial_generators(
            f,
            ExtTermOrder::DegLex,
            3,
            &[mono(&[1, 2])],
        );
        assert_eq!(j, expect);

        let j = lexsegment_ideal(f, 4, &[0, 0, 2, 3, 1]).unwrap();
        assert_eq!(
            j.monomials(2).unwrap(),
            &[mono(&[1, 2]), mono(&[1, 3])].into_iter().collect()
        );

        // full E in degrees >= 1
        let full: Vec<usize> = (0..=3)
            .map(|d| if d == 0 { 0 } else { binomial(3, d as i64) as usize })
            .collect();
        let j = lexsegment_ideal(f, 3, &full).unwrap();
        assert_eq!(
            j.minimal_generators().unwrap(),
            [mono(&[1]), mono(&[2]), mono(&[3])].into_iter().collect()
        );

        // a degree-2 piece with nothing above it cannot be an ideal
        assert_eq!(
            lexsegment_ideal(f, 3, &[0, 0, 1, 0]),
            Err(Error::NotRealizable(3))
        );
    }

    #[test]
    fn lexsegment_output_is_stable_with_input_hilbert() {
        let f = fp();
        let j = lexsegment_ideal(f, 4, &[0, 0, 2, 3, 1]).unwrap();
        assert_eq!(j.hilbert(), vec![0, 0, 2, 3, 1]);
        assert!(j.is_squarefree_strongly_stable().unwrap());
    }

    #[test]
    fn substitute_identity_and_swap() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 2])]);
        let id = DenseMatrix::identity(f, 3);
        let jid = j.substitute(&id).unwrap();
        assert_eq!(jid.hilbert(), j.hilbert());
        assert_eq!(jid.component_matrix(2), j.component_matrix(2));

        // swap e1 <-> e2: the span of e_{12} is preserved (sign absorbed)
        let mut swap = DenseMatrix::zeros(f, 3, 3);
        swap.set(0, 1, 1);
        swap.set(1, 0, 1);
        swap.set(2, 2, 1);
        let js = j.substitute(&swap).unwrap();
        assert_eq!(js.component_matrix(2), j.component_matrix(2));
    }

    #[test]
    fn substitute_random_preserves_dims() {
        use rand::SeedableRng;
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 2])]);
        for _ in 0..5 {
            let g = DenseMatrix::random_invertible(f, 3, &mut rng);
            let jg = j.substitute(&g).unwrap();
            assert_eq!(jg.hilbert(), j.hilbert());
            assert_eq!(jg.dim(2), 1);
        }
        let singular = DenseMatrix::zeros(f, 3, 3);
        assert_eq!(j.substitute(&singular), Err(Error::SingularMatrix));
    }

    #[test]
    fn component_ideal_examples() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            rev,
            4,
            &[mono(&[1, 2]), mono(&[3, 4])],
        );
        // generated in degree 2 already
        let j2 = j.component_ideal(2);
        assert_eq!(j2.hilbert(), j.hilbert());
        // above the top nonzero degree: only that component and its multiples
        let j4 = j.component_ideal(4);
        assert_eq!(j4.dim(2), 0);
        assert_eq!(j4.dim(4), 1);

        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1]), mono(&[2, 3])]);
        let jt = j.component_ideal(2);
        assert_eq!(jt.dim(1), 0);
        assert_eq!(jt.dim(2), 3); // e12, e13 from e1, plus e23
        assert_eq!(jt.dim(3), 1);
    }

    #[test]
    fn component_ideals_of_stable_are_stable() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            rev,
            4,
            &[mono(&[1]), mono(&[2, 3]), mono(&[2, 4])],
        );
        assert!(j.is_squarefree_strongly_stable().unwrap());
        for t in 1..=4 {
            let jt = j.component_ideal(t);
            assert!(jt.is_squarefree_strongly_stable().unwrap());
        }
    }

    #[test]
    fn graded_generator_span_closes_upward() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        // span of e12 + e13 in degree 2
        let basis = rev.monomials_desc(3, 2);
        let mut v = vec![0u64; 3];
        v[basis.iter().position(|m| *m == mono(&[1, 2])).unwrap()] = 1;
        v[basis.iter().position(|m| *m == mono(&[1, 3])).unwrap()] = 1;
        let j = ExtGradedIdeal::from_graded_generators(f, rev, 3, &[(2, v)]);
        assert_eq!(j.dim(2), 1);
        assert_eq!(j.dim(3), 1); // (e12+e13) wedge e_k spans only e123
    }

    proptest! {
        #[test]
        fn wedge_anticommutes(a in 0u32..64, b in 0u32..64) {
            let (ma, mb) = (ExtMonomial(a), ExtMonomial(b));
            match (ma.wedge(&mb), mb.wedge(&ma)) {
                (None, None) => {}
                (Some((s1, m1)), Some((s2, m2))) => {
                    prop_assert_eq!(m1, m2);
                    let flip = (ma.degree() * mb.degree()) % 2 == 1;
                    prop_assert_eq!(s1 == s2, !flip);
                }
                _ => prop_assert!(false, "wedge vanishing must be symmetric"),
            }
        }

        #[test]
        fn wedge_associates(a in 0u32..64, b in 0u32..64, c in 0u32..64) {
            let (ma, mb, mc) = (ExtMonomial(a), ExtMonomial(b), ExtMonomial(c));
            let left = ma.wedge(&mb).and_then(|(s, m)| m.wedge(&mc).map(|(t, w)| (s * t, w)));
            let right = mb.wedge(&mc).and_then(|(t, m)| ma.wedge(&m).map(|(s, w)| (s * t, w)));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn orders_are_total_and_degree_refining(a in 0u32..256, b in 0u32..256) {
            let (ma, mb) = (ExtMonomial(a), ExtMonomial(b));
            for ord in [ExtTermOrder::DegRevLex, ExtTermOrder::DegLex] {
                let c = ord.cmp(&ma, &mb);
                prop_assert_eq!(c.reverse(), ord.cmp(&mb, &ma));
                prop_assert_eq!(c == Ordering::Equal, a == b);
                if ma.degree() > mb.degree() {
                    prop_assert_eq!(c, Ordering::Greater);
                }
            }
        }
    }
}
