//! Degreewise initial ideals and randomized generic initial ideals in the
//! exterior and the polynomial ring, with genericity certification.
//!
//! Genericity is non-constructive, so it is certified statistically: several
//! independent random changes of coordinates must produce identical monomial
//! ideals. A disagreement triggers one full resampling round before giving
//! up. Over F_q with q near 2^31 the per-trial failure probability is
//! negligible at these sizes.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::{Component, ExtGradedIdeal, ExtMonomial, ExtTermOrder};
use crate::field::Fp;
use crate::matrix::DenseMatrix;
use crate::symmetric::{sym_monomials_desc, sym_substitute, SymIdeal, SymMonomial, SymSubspaces};

/// A certified generic initial ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct GinResult<T> {
    pub ideal: T,
    pub trials_used: usize,
    /// All trials agreed (always true on success; kept for report plumbing).
    pub certified: bool,
}

/// Degreewise initial ideal: in each degree the pivot monomials of the
/// component in the monomial basis sorted descending by `order`.
pub fn initial_ideal_exterior(j: &ExtGradedIdeal, order: ExtTermOrder) -> ExtGradedIdeal {
    let n = j.n();
    let mut out = ExtGradedIdeal::zero(j.field(), order, n);
    for d in 0..=n {
        if j.dim(d) == 0 {
            continue;
        }
        let target = order.monomials_desc(n, d);
        let leading: BTreeSet<ExtMonomial> = match j.component(d) {
            Component::Monomials(set) => set.clone(),
            Component::Subspace(mat) => {
                // permute columns from the ideal's own order into `order`
                let own = j.order().monomials_desc(n, d);
                let mut perm = DenseMatrix::zeros(j.field(), mat.rows(), target.len());
                for (src_col, mono) in own.iter().enumerate() {
                    let dst_col = target.iter().position(|m| m == mono).unwrap();
                    for r in 0..mat.rows() {
                        perm.set(r, dst_col, mat.get(r, src_col));
                    }
                }
                let rref = perm.rref();
                rref.pivots.iter().map(|&c| target[c]).collect()
            }
        };
        debug_assert_eq!(leading.len(), j.dim(d));
        out.set_component(d, Component::Monomials(leading));
    }
    debug_assert!(ideal_components_closed(&out));
    out
}

fn ideal_components_closed(j: &ExtGradedIdeal) -> bool {
    let n = j.n();
    for d in 0..n {
        let Ok(here) = j.monomials(d) else { return false };
        let Ok(above) = j.monomials(d + 1) else { return false };
        for m in here {
            for k in 1..=n {
                if !m.contains(k) && !above.contains(&ExtMonomial(m.0 | 1 << (k - 1))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Generic initial ideal in E with respect to `order`, certified across
/// `trials` independent random coordinate changes.
pub fn gin_exterior(
    j: &ExtGradedIdeal,
    order: ExtTermOrder,
    trials: usize,
    seed: u64,
) -> Result<GinResult<ExtGradedIdeal>> {
    if trials < 2 {
        return Err(Error::InvalidInput(format!(
            "gin certification needs at least 2 trials, got {trials}"
        )));
    }
    // squarefree strongly stable ideals are fixed points of every gin
    if j.is_monomial() && j.is_squarefree_strongly_stable()? {
        return Ok(GinResult {
            ideal: reorder_monomial_ideal(j, order),
            trials_used: 0,
            certified: true,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials_used = 0;
    for _round in 0..2 {
        let mut results: Vec<ExtGradedIdeal> = Vec::with_capacity(trials);
        for _ in 0..trials {
            let g = DenseMatrix::random_invertible(j.field(), j.n(), &mut rng);
            results.push(initial_ideal_exterior(&j.substitute(&g)?, order));
            trials_used += 1;
        }
        if results.windows(2).all(|w| w[0] == w[1]) {
            let ideal = results.pop().unwrap();
            if !ideal.is_squarefree_strongly_stable()? {
                return Err(Error::StabilityFailure);
            }
            return Ok(GinResult {
                ideal,
                trials_used,
                certified: true,
            });
        }
    }
    Err(Error::GenericityFailure)
}

fn reorder_monomial_ideal(j: &ExtGradedIdeal, order: ExtTermOrder) -> ExtGradedIdeal {
    let mut out = ExtGradedIdeal::zero(j.field(), order, j.n());
    for d in 0..=j.n() {
        out.set_component(d, j.component(d).clone());
    }
    out
}

/// Generic initial ideal in S with respect to degrevlex. Components are
/// computed through degree n+1; the extra degree guards the reconstruction
/// from pivot monomials.
pub fn gin_symmetric(
    ideal: &SymIdeal,
    fp: Fp,
    trials: usize,
    seed: u64,
) -> Result<GinResult<SymIdeal>> {
    if trials < 2 {
        return Err(Error::InvalidInput(format!(
            "gin certification needs at least 2 trials, got {trials}"
        )));
    }
    let n = ideal.n();
    let d_max = n + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trials_used = 0;
    for _round in 0..2 {
        let mut results: Vec<SymIdeal> = Vec::with_capacity(trials);
        let mut ok = true;
        for _ in 0..trials {
            let g = DenseMatrix::random_invertible(fp, n, &mut rng);
            let sub = sym_substitute(ideal, &g, d_max)?;
            trials_used += 1;
            match gin_from_subspaces(&sub, ideal, d_max) {
                Ok(g) => results.push(g),
                Err(Error::GenericityFailure) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if ok && results.windows(2).all(|w| w[0] == w[1]) {
            let gin = results.pop().unwrap();
            if !gin.is_strongly_stable(gin.max_generator_degree()) {
                return Err(Error::StabilityFailure);
            }
            return Ok(GinResult {
                ideal: gin,
                trials_used,
                certified: true,
            });
        }
    }
    Err(Error::GenericityFailure)
}

/// Leading monomials per degree of already-substituted components.
pub fn initial_monomials_symmetric(sub: &SymSubspaces, d: usize) -> Vec<SymMonomial> {
    let basis = sym_monomials_desc(sub.n, d);
    sub.comps[d]
        .rref()
        .pivots
        .iter()
        .map(|&c| basis[c].clone())
        .collect()
}

fn gin_from_subspaces(sub: &SymSubspaces, input: &SymIdeal, d_max: usize) -> Result<SymIdeal> {
    let n = sub.n;
    let mut pivot_sets: Vec<BTreeSet<SymMonomial>> = Vec::with_capacity(d_max + 1);
    for d in 0..=d_max {
        pivot_sets.push(initial_monomials_symmetric(sub, d).into_iter().collect());
    }
    // minimal generators: pivots with no divisor among lower pivots
    let mut gens: Vec<SymMonomial> = Vec::new();
    for d in 1..=d_max.min(n) {
        for m in &pivot_sets[d] {
            let minimal = (1..=n).all(|k| match m.div_var(k) {
                None => true,
                Some(q) => !pivot_sets[d - 1].contains(&q),
            });
            if minimal {
                gens.push(m.clone());
            }
        }
    }
    let gin = SymIdeal::new(n, gens);
    // the generated ideal must reproduce every pivot set (through n+1, which
    // also catches would-be generators above degree n)
    for d in 0..=d_max {
        let comp: BTreeSet<SymMonomial> = gin.component(d).into_iter().collect();
        if comp != pivot_sets[d] {
            return Err(Error::GenericityFailure);
        }
        debug_assert_eq!(comp.len(), input.component_dim(d));
    }
    Ok(gin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    fn fp() -> Fp {
        Fp::default()
    }

    fn mono(ix: &[usize]) -> ExtMonomial {
        ExtMonomial::from_indices(ix)
    }

    #[test]
    fn initial_of_monomial_ideal_is_itself() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 2])]);
        let ini = initial_ideal_exterior(&j, rev);
        assert_eq!(ini.hilbert(), j.hilbert());
        assert_eq!(ini.monomials(2).unwrap(), j.monomials(2).unwrap());
    }

    #[test]
    fn initial_picks_the_larger_monomial() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        // span of e12 + e13
        let basis = rev.monomials_desc(3, 2);
        let mut v = vec![0u64; 3];
        v[basis.iter().position(|m| *m == mono(&[1, 2])).unwrap()] = 1;
        v[basis.iter().position(|m| *m == mono(&[1, 3])).unwrap()] = 1;
        let j = ExtGradedIdeal::from_graded_generators(f, rev, 3, &[(2, v)]);
        let ini = initial_ideal_exterior(&j, rev);
        assert!(ini.monomials(2).unwrap().contains(&mono(&[1, 2])));
        assert_eq!(ini.dim(2), 1);
    }

    #[test]
    fn gin_fixes_stable_ideals() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 2])]);
        let gin = gin_exterior(&j, rev, 3, 42).unwrap();
        assert!(gin.certified);
        assert_eq!(gin.ideal.monomials(2).unwrap(), j.monomials(2).unwrap());
    }

    #[test]
    fn gin_of_e13_is_e12() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 3, &[mono(&[1, 3])]);
        let gin = gin_exterior(&j, rev, 3, 42).unwrap();
        assert_eq!(
            gin.ideal.minimal_generators().unwrap(),
            [mono(&[1, 2])].into_iter().collect()
        );
        assert!(gin.trials_used >= 3);
    }

    #[test]
    fn gin_of_disjoint_edges_sr_ideal() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let c = SimplicialComplex::from_facets(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let j = c.sr_ideal_exterior(f, rev);
        let gin = gin_exterior(&j, rev, 3, 7).unwrap();
        let gens: BTreeSet<ExtMonomial> = gin.ideal.minimal_generators().unwrap();
        let expect: BTreeSet<ExtMonomial> =
            [mono(&[1, 2]), mono(&[1, 3]), mono(&[1, 4]), mono(&[2, 3])]
                .into_iter()
                .collect();
        assert_eq!(gens, expect);
        // Hilbert preservation
        assert_eq!(gin.ideal.hilbert(), j.hilbert());
    }

    #[test]
    fn gin_is_idempotent_and_reproducible() {
        let f = fp();
        let rev = ExtTermOrder::DegRevLex;
        let j = ExtGradedIdeal::from_monomial_generators(f, rev, 4, &[mono(&[1, 2]), mono(&[3, 4])]);
        let g1 = gin_exterior(&j, rev, 3, 11).unwrap();
        let g2 = gin_exterior(&j, rev, 3, 11).unwrap();
        assert_eq!(g1, g2);
        let again = gin_exterior(&g1.ideal, rev, 3, 99).unwrap();
        assert_eq!(again.ideal.hilbert(), g1.ideal.hilbert());
        for d in 0..=4 {
            assert_eq!(again.ideal.monomials(d).unwrap(), g1.ideal.monomials(d).unwrap());
        }
    }

    #[test]
    fn gin_deglex_can_differ_from_revlex() {
        let f = fp();
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            ExtTermOrder::DegRevLex,
            4,
            &[mono(&[1, 2]), mono(&[3, 4])],
        );
        let rev = gin_exterior(&j, ExtTermOrder::DegRevLex, 3, 5).unwrap();
        let lex = gin_exterior(&j, ExtTermOrder::DegLex, 3, 5).unwrap();
        assert_eq!(rev.ideal.hilbert(), lex.ideal.hilbert());
        assert!(lex.ideal.is_squarefree_strongly_stable().unwrap());
    }

    #[test]
    fn sym_gin_of_product_of_variables() {
        let f = fp();
        // (x1 x2 x3) -> (x1^3)
        let i = SymIdeal::new(3, [SymMonomial(vec![1, 1, 1])]);
        let gin = gin_symmetric(&i, f, 3, 42).unwrap();
        assert_eq!(
            gin.ideal.minimal_generators(),
            [SymMonomial(vec![3, 0, 0])].into_iter().collect()
        );
    }

    #[test]
    fn sym_gin_fixes_linear_ideal() {
        let f = fp();
        let i = SymIdeal::new(2, [SymMonomial(vec![1, 0])]);
        let gin = gin_symmetric(&i, f, 2, 3).unwrap();
        assert_eq!(
            gin.ideal.minimal_generators(),
            [SymMonomial(vec![1, 0])].into_iter().collect()
        );
    }

    #[test]
    fn sym_gin_of_four_cycle_is_stable_with_same_hilbert() {
        let f = fp();
        let c = SimplicialComplex::from_facets(4, &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]])
            .unwrap();
        let i = c.sr_ideal_symmetric();
        let gin = gin_symmetric(&i, f, 3, 9).unwrap();
        assert!(gin.ideal.is_strongly_stable(4));
        for d in 0..=5 {
            assert_eq!(gin.ideal.component_dim(d), i.component_dim(d), "degree {d}");
        }
    }

    #[test]
    fn trials_below_two_are_rejected() {
        let f = fp();
        let j = ExtGradedIdeal::from_monomial_generators(
            f,
            ExtTermOrder::DegRevLex,
            3,
            &[mono(&[1, 3])],
        );
        assert!(matches!(
            gin_exterior(&j, ExtTermOrder::DegRevLex, 1, 0),
            Err(Error::InvalidInput(_))
        ));
    }
}
