//! Minimal polynomial-ring support for symmetric shifting: monomials with
//! exponent vectors, degree reverse lexicographic order, monomial ideals
//! given by generators, the sigma stretch operator, and generic change of
//! coordinates computed degreewise.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::DenseMatrix;

/// A monomial of S = K[x_1,...,x_n] as an exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymMonomial(pub Vec<u32>);

impl SymMonomial {
    pub fn one(n: usize) -> Self {
        SymMonomial(vec![0; n])
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        SymMonomial(e.to_vec())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &SymMonomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul_var(&self, k: usize) -> SymMonomial {
        let mut e = self.0.clone();
        e[k - 1] += 1;
        SymMonomial(e)
    }

    pub fn div_var(&self, k: usize) -> Option<SymMonomial> {
        if self.0[k - 1] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[k - 1] -= 1;
        Some(SymMonomial(e))
    }

    /// Support as sorted 1-based indices with multiplicity, i.e. the factor
    /// list x_{i_1} <= ... <= x_{i_t}.
    pub fn factor_indices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            for _ in 0..e {
                out.push(i + 1);
            }
        }
        out
    }

    /// The stretch x_{i_1} x_{i_2+1} ... x_{i_t+t-1}, always squarefree,
    /// returned as sorted 1-based indices (possibly beyond n).
    pub fn sigma_stretch(&self) -> Vec<usize> {
        self.factor_indices()
            .into_iter()
            .enumerate()
            .map(|(k, i)| i + k)
            .collect()
    }
}

/// Degree reverse lexicographic comparison with x_1 > ... > x_n: higher
/// degree wins; within a degree the monomial with the smaller exponent at the
/// last differing index is larger.
pub fn cmp_degrevlex(a: &SymMonomial, b: &SymMonomial) -> Ordering {
    debug_assert_eq!(a.n(), b.n());
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.n()).rev() {
        if a.0[i] != b.0[i] {
            return if a.0[i] < b.0[i] {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
    }
    Ordering::Equal
}

/// All degree-d monomials on n variables, descending in degrevlex.
pub fn sym_monomials_desc(n: usize, d: usize) -> Vec<SymMonomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n];
    gen_exponents(n, d, 0, &mut current, &mut out);
    out.sort_by(|a, b| cmp_degrevlex(b, a));
    out
}

fn gen_exponents(n: usize, left: usize, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<SymMonomial>) {
    if pos == n - 1 {
        cur[pos] = left as u32;
        out.push(SymMonomial(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=left {
        cur[pos] = e as u32;
        gen_exponents(n, left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// A monomial ideal of S presented by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymIdeal {
    n: usize,
    gens: BTreeSet<SymMonomial>,
}

impl SymIdeal {
    pub fn new(n: usize, gens: impl IntoIterator<Item = SymMonomial>) -> Self {
        let gens: BTreeSet<SymMonomial> = gens
            .into_iter()
            .inspect(|g| assert_eq!(g.n(), n))
            .collect();
        SymIdeal { n, gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &BTreeSet<SymMonomial> {
        &self.gens
    }

    /// The unique minimal generating set.
    pub fn minimal_generators(&self) -> BTreeSet<SymMonomial> {
        self.gens
            .iter()
            .filter(|g| !self.gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect()
    }

    pub fn contains(&self, m: &SymMonomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// All degree-d members.
    pub fn component(&self, d: usize) -> Vec<SymMonomial> {
        sym_monomials_desc(self.n, d)
            .into_iter()
            .filter(|m| self.contains(m))
            .collect()
    }

    pub fn component_dim(&self, d: usize) -> usize {
        self.component(d).len()
    }

    pub fn max_generator_degree(&self) -> usize {
        self.minimal_generators()
            .iter()
            .map(|g| g.degree())
            .max()
            .unwrap_or(0)
    }

    /// Strong stability (Borel): for every member m of every component up to
    /// `d_max`, replacing a variable by a smaller one stays inside.
    pub fn is_strongly_stable(&self, d_max: usize) -> bool {
        for d in 1..=d_max {
            for m in self.component(d) {
                for i in 1..=self.n {
                    if m.0[i - 1] == 0 {
                        continue;
                    }
                    for j in 1..i {
                        let swapped = m.div_var(i).unwrap().mul_var(j);
                        if !self.contains(&swapped) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Applies the sigma stretch to the minimal generators. The result generates
/// a squarefree ideal; each stretched generator must fit inside the ambient
/// variable set [n].
pub fn sigma_ideal(ideal: &SymIdeal, ambient: usize) -> Result<BTreeSet<SymMonomial>> {
    let mut out = BTreeSet::new();
    for g in ideal.minimal_generators() {
        let stretched = g.sigma_stretch();
        if let Some(&max) = stretched.last() {
            if max > ambient {
                return Err(Error::AmbientTooSmall {
                    needed: max,
                    ambient,
                });
            }
        }
        let mut exps = vec![0u32; ambient];
        for i in stretched {
            exps[i - 1] += 1;
        }
        out.insert(SymMonomial(exps));
    }
    Ok(out)
}

/// Degreewise coordinate subspaces of an ideal after a change of coordinates,
/// over the monomial bases of S_d in descending degrevlex.
#[derive(Debug, Clone)]
pub struct SymSubspaces {
    pub n: usize,
    pub fp: Fp,
    /// Reduced bases for degrees 0..=d_max.
    pub comps: Vec<DenseMatrix>,
}

/// Image of the ideal under x_i -> sum_k g[k][i] x_k, computed degree by
/// degree up to `d_max`. Per-degree dimensions are preserved.
pub fn sym_substitute(ideal: &SymIdeal, g: &DenseMatrix, d_max: usize) -> Result<SymSubspaces> {
    let n = ideal.n();
    let fp = g.field();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "substitution matrix is {}x{}, ambient is {n}",
            g.rows(),
            g.cols()
        )));
    }
    if g.rank() != n {
        return Err(Error::SingularMatrix);
    }
    let bases: Vec<Vec<SymMonomial>> = (0..=d_max).map(|d| sym_monomials_desc(n, d)).collect();
    let index: Vec<HashMap<SymMonomial, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect())
        .collect();
    let mut comps = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        let members = ideal.component(d);
        if members.is_empty() {
            comps.push(DenseMatrix::zeros(fp, 0, bases[d].len()));
            continue;
        }
        let rows: Vec<Vec<u64>> = members
            .iter()
            .map(|m| {
                // multiply out the images of the factors one variable at a time
                let mut vec = vec![0u64; 1];
                vec[0] = 1; // the constant 1 in degree 0
                let mut deg = 0usize;
                for i in m.factor_indices() {
                    let mut next = vec![0u64; bases[deg + 1].len()];
                    for (c, coeff) in vec.iter().enumerate() {
                        if *coeff == 0 {
                            continue;
                        }
                        let base_mono = &bases[deg][c];
                        for k in 1..=n {
                            let gk = g.get(k - 1, i - 1);
                            if gk == 0 {
                                continue;
                            }
                            let idx = index[deg + 1][&base_mono.mul_var(k)];
                            next[idx] = fp.add(next[idx], fp.mul(*coeff, gk));
                        }
                    }
                    vec = next;
                    deg += 1;
                }
                vec
            })
            .collect();
        let reduced = DenseMatrix::from_rows(fp, bases[d].len(), &rows).rref();
        assert_eq!(reduced.rank, members.len(), "substitution lost rank");
        comps.push(reduced.basis);
    }
    Ok(SymSubspaces { n, fp, comps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> SymMonomial {
        SymMonomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_examples() {
        // x1^2 > x1 x2
        assert_eq!(cmp_degrevlex(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // x2^2 > x1 x3
        assert_eq!(cmp_degrevlex(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(cmp_degrevlex(&m(&[1, 1, 0]), &m(&[1, 1, 0])), Ordering::Equal);
        // x1 > x2 > x3
        assert_eq!(cmp_degrevlex(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(cmp_degrevlex(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // degree first
        assert_eq!(cmp_degrevlex(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn monomial_enumeration_is_complete_and_sorted() {
        let ms = sym_monomials_desc(3, 2);
        assert_eq!(ms.len(), 6); // C(4,2)
        for w in ms.windows(2) {
            assert_eq!(cmp_degrevlex(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(ms[0], m(&[2, 0, 0]));
    }

    #[test]
    fn sigma_stretch_examples() {
        // x1^3 -> x1 x2 x3
        assert_eq!(m(&[3]).sigma_stretch(), vec![1, 2, 3]);
        // x2 fixed in degree 1
        assert_eq!(m(&[0, 1]).sigma_stretch(), vec![2]);
        // x1 x2^2 -> x1 x3 x4
        assert_eq!(m(&[1, 2]).sigma_stretch(), vec![1, 3, 4]);
        // x1 x2 x3 -> x1 x3 x5
        assert_eq!(m(&[1, 1, 1]).sigma_stretch(), vec![1, 3, 5]);
    }

    #[test]
    fn sigma_stretch_is_squarefree_and_injective() {
        use std::collections::HashSet;
        let mut seen = HashSet::new();
        for d in 0..=4 {
            for mono in sym_monomials_desc(3, d) {
                let s = mono.sigma_stretch();
                assert_eq!(s.len(), mono.degree());
                for w in s.windows(2) {
                    assert!(w[0] < w[1], "stretch must be strictly increasing");
                }
                assert!(seen.insert(s), "stretch must be injective");
            }
        }
    }

    #[test]
    fn sigma_ideal_examples() {
        // (x1 x2 x3) on ambient 5 -> (x1 x3 x5)
        let i = SymIdeal::new(3, [m(&[1, 1, 1])]);
        let s = sigma_ideal(&i, 5).unwrap();
        assert_eq!(s, [m(&[1, 0, 1, 0, 1])].into_iter().collect());
        // (x1^3) on ambient 3 -> (x1 x2 x3)
        let i = SymIdeal::new(3, [m(&[3, 0, 0])]);
        let s = sigma_ideal(&i, 3).unwrap();
        assert_eq!(s, [m(&[1, 1, 1])].into_iter().collect());
        // (x1) fixed
        let i = SymIdeal::new(1, [m(&[1])]);
        assert_eq!(sigma_ideal(&i, 1).unwrap(), [m(&[1])].into_iter().collect());
        // ambient too small
        let i = SymIdeal::new(2, [m(&[0, 3])]);
        assert_eq!(
            sigma_ideal(&i, 3),
            Err(Error::AmbientTooSmall { needed: 4, ambient: 3 })
        );
    }

    #[test]
    fn ideal_membership_and_minimal_generators() {
        let i = SymIdeal::new(3, [m(&[1, 1, 0]), m(&[1, 1, 1]), m(&[0, 0, 2])]);
        assert_eq!(
            i.minimal_generators(),
            [m(&[1, 1, 0]), m(&[0, 0, 2])].into_iter().collect()
        );
        assert!(i.contains(&m(&[2, 1, 0])));
        assert!(!i.contains(&m(&[1, 0, 1])));
        assert_eq!(i.component_dim(2), 2); // x1x2 and x3^2
    }

    #[test]
    fn strong_stability_check() {
        let stable = SymIdeal::new(3, [m(&[2, 0, 0]), m(&[1, 1, 0])]);
        assert!(stable.is_strongly_stable(4));
        let unstable = SymIdeal::new(3, [m(&[0, 1, 1])]);
        assert!(!unstable.is_strongly_stable(3));
    }

    #[test]
    fn substitution_preserves_dimensions() {
        use rand::SeedableRng;
        let fp = Fp::default();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let i = SymIdeal::new(3, [m(&[1, 1, 1])]);
        let id = DenseMatrix::identity(fp, 3);
        let sub = sym_substitute(&i, &id, 4).unwrap();
        for d in 0..=4 {
            assert_eq!(sub.comps[d].rows(), i.component_dim(d));
        }
        for _ in 0..3 {
            let g = DenseMatrix::random_invertible(fp, 3, &mut rng);
            let sub = sym_substitute(&i, &g, 4).unwrap();
            for d in 0..=4 {
                assert_eq!(sub.comps[d].rows(), i.component_dim(d));
            }
        }
        assert_eq!(
            sym_substitute(&i, &DenseMatrix::zeros(fp, 3, 3), 3).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn swap_fixes_symmetric_monomial() {
        let fp = Fp::default();
        let i = SymIdeal::new(2, [m(&[1, 1])]);
        let mut swap = DenseMatrix::zeros(fp, 2, 2);
        swap.set(0, 1, 1);
        swap.set(1, 0, 1);
        let sub = sym_substitute(&i, &swap, 2).unwrap();
        let direct = sym_substitute(&i, &DenseMatrix::identity(fp, 2), 2).unwrap();
        assert_eq!(sub.comps[2], direct.comps[2]);
    }
}
