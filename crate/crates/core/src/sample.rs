//! Seeded random instance generators and exhaustive enumerations for small
//! vertex counts. Everything is a pure function of the supplied RNG, so runs
//! replay exactly from the seed.

use rand::Rng;

use crate::exterior::{subsets_of_size, Component, ExtGradedIdeal, ExtMonomial, ExtTermOrder};
use crate::field::{binomial, Fp};
use crate::simplicial::SimplicialComplex;

/// Random complex on [n]: a handful of random faces, pruned to facets.
/// Density 0 gives a single facet; larger densities add more and larger
/// candidate faces.
pub fn random_complex<R: Rng>(n: usize, density: f64, rng: &mut R) -> SimplicialComplex {
    let facet_budget = if density <= 0.0 {
        1
    } else {
        1 + rng.gen_range(0..=(1.0 + density * 1.5 * n as f64) as usize)
    };
    let mut masks = Vec::with_capacity(facet_budget);
    for _ in 0..facet_budget {
        let size = rng.gen_range(1..=n.max(1));
        masks.push(random_subset(n, size, rng));
    }
    SimplicialComplex::from_facet_masks(n, masks)
}

fn random_subset<R: Rng>(n: usize, size: usize, rng: &mut R) -> u32 {
    let mut mask = 0u32;
    while (mask.count_ones() as usize) < size {
        mask |= 1 << rng.gen_range(0..n);
    }
    mask
}

/// Random squarefree strongly stable ideal: the stable closure of a few
/// random monomials (the smallest stable ideal containing them).
pub fn random_stable_ideal<R: Rng>(
    n: usize,
    fp: Fp,
    order: ExtTermOrder,
    rng: &mut R,
) -> ExtGradedIdeal {
    let count = rng.gen_range(1..=2);
    let mut gens: Vec<ExtMonomial> = (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=(n - 1).max(1));
            ExtMonomial(random_subset(n, d, rng))
        })
        .collect();
    loop {
        let ideal = ExtGradedIdeal::from_monomial_generators(fp, order, n, &gens);
        match stable_violation(&ideal) {
            None => return ideal,
            Some(missing) => gens.push(missing),
        }
    }
}

/// First monomial required by the exchange property but missing, if any.
fn stable_violation(j: &ExtGradedIdeal) -> Option<ExtMonomial> {
    for d in 0..=j.n() {
        let comp = j.monomials(d).expect("monomial ideal");
        for m in comp {
            for i in m.indices() {
                for k in 1..i {
                    if !m.contains(k) {
                        let swapped = ExtMonomial(m.0 & !(1 << (i - 1)) | 1 << (k - 1));
                        if !comp.contains(&swapped) {
                            return Some(swapped);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Random graded ideal from a few random homogeneous generators. Generator
/// degrees are kept low (mostly quadrics) so high-degree quotients stay
/// small; that is where the Cartan chain spaces blow up.
pub fn random_graded_ideal<R: Rng>(
    n: usize,
    fp: Fp,
    order: ExtTermOrder,
    rng: &mut R,
) -> ExtGradedIdeal {
    let quadrics = if n >= 5 { 2 + rng.gen_range(0..=1) } else { 1 + rng.gen_range(0..=1) };
    let cubics = rng.gen_range(0..=1);
    let mut gens: Vec<(usize, Vec<u64>)> = Vec::new();
    for _ in 0..quadrics {
        gens.push((2, random_vector(n, 2, fp, rng)));
    }
    for _ in 0..cubics {
        if n >= 3 {
            gens.push((3, random_vector(n, 3, fp, rng)));
        }
    }
    ExtGradedIdeal::from_graded_generators(fp, order, n, &gens)
}

fn random_vector<R: Rng>(n: usize, d: usize, fp: Fp, rng: &mut R) -> Vec<u64> {
    let len = binomial(n as i64, d as i64) as usize;
    loop {
        let v: Vec<u64> = (0..len).map(|_| fp.rand_scalar(rng)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

/// Random subcomplex: generated by a random subset of the facets, possibly
/// shrinking one facet.
pub fn random_subcomplex<R: Rng>(c: &SimplicialComplex, rng: &mut R) -> SimplicialComplex {
    let facets: Vec<u32> = c.facets().iter().copied().collect();
    if facets.is_empty() {
        return c.clone();
    }
    let mut chosen: Vec<u32> = facets
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.7))
        .collect();
    if chosen.is_empty() {
        chosen.push(facets[rng.gen_range(0..facets.len())]);
    }
    // occasionally drop a vertex from one facet
    if rng.gen_bool(0.4) {
        let k = rng.gen_range(0..chosen.len());
        let f = chosen[k];
        if f != 0 {
            let bits: Vec<u32> = (0..32).filter(|b| f >> b & 1 == 1).collect();
            chosen[k] = f & !(1 << bits[rng.gen_range(0..bits.len())]);
        }
    }
    SimplicialComplex::from_facet_masks(c.n(), chosen)
}

/// Every shifted complex on [n] that contains the empty face, plus the void
/// complex. Brute force over all face families; meant for n <= 4.
pub fn all_shifted_complexes(n: usize) -> Vec<SimplicialComplex> {
    assert!(n <= 4, "exhaustive enumeration is exponential in 2^n");
    let face_count = 1usize << n;
    let mut out = vec![SimplicialComplex::void(n)];
    for family in 0u64..(1 << face_count) {
        if family & 1 == 0 {
            // must contain the empty face to be a nonvoid complex
            continue;
        }
        let member = |m: u32| family >> m & 1 == 1;
        let mut ok = true;
        'check: for m in 0..face_count as u32 {
            if !member(m) {
                continue;
            }
            // downward closed
            let mut rest = m;
            while rest != 0 {
                let b = rest.trailing_zeros();
                if !member(m & !(1 << b)) {
                    ok = false;
                    break 'check;
                }
                rest &= rest - 1;
            }
            // shifted: exchanges toward larger indices stay inside
            for i in 1..=n {
                if m >> (i - 1) & 1 == 0 {
                    continue;
                }
                for jj in i + 1..=n {
                    if m >> (jj - 1) & 1 == 0 {
                        let swapped = m & !(1 << (i - 1)) | 1 << (jj - 1);
                        if !member(swapped) {
                            ok = false;
                            break 'check;
                        }
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let faces: Vec<u32> = (0..face_count as u32).filter(|&m| member(m)).collect();
        out.push(SimplicialComplex::from_facet_masks(n, faces));
    }
    out
}

/// Every squarefree strongly stable proper ideal on [n] (n <= 4), via the
/// complement bijection with shifted complexes.
pub fn all_stable_ideals(n: usize, fp: Fp, order: ExtTermOrder) -> Vec<ExtGradedIdeal> {
    all_shifted_complexes(n)
        .into_iter()
        .filter(|c| !c.is_void())
        .map(|c| {
            let faces = c.faces();
            let mut j = ExtGradedIdeal::zero(fp, order, n);
            for d in 0..=n {
                let comp: std::collections::BTreeSet<ExtMonomial> = subsets_of_size(n, d)
                    .filter(|m| !faces.contains(m))
                    .map(ExtMonomial)
                    .collect();
                j.set_component(d, Component::Monomials(comp));
            }
            j
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_reproducible() {
        let fp = Fp::default();
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            assert_eq!(
                random_complex(4, 0.8, &mut a),
                random_complex(4, 0.8, &mut b)
            );
        }
        let ja = random_graded_ideal(4, fp, ExtTermOrder::DegRevLex, &mut a);
        let jb = random_graded_ideal(4, fp, ExtTermOrder::DegRevLex, &mut b);
        assert_eq!(ja, jb);
    }

    #[test]
    fn zero_density_gives_single_facet() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let c = random_complex(5, 0.0, &mut rng);
            assert_eq!(c.facets().len(), 1);
        }
    }

    #[test]
    fn stable_closure_is_stable() {
        let fp = Fp::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let j = random_stable_ideal(4, fp, ExtTermOrder::DegRevLex, &mut rng);
            assert!(j.is_squarefree_strongly_stable().unwrap());
        }
    }

    #[test]
    fn stable_closure_of_e24() {
        // closure of { e_{2,4} } on n = 4 must contain e_{1,4} and e_{2,3}
        let fp = Fp::default();
        let gens = [ExtMonomial::from_indices(&[2, 4])];
        let mut list = gens.to_vec();
        loop {
            let ideal =
                ExtGradedIdeal::from_monomial_generators(fp, ExtTermOrder::DegRevLex, 4, &list);
            match stable_violation(&ideal) {
                None => {
                    assert!(ideal
                        .contains_monomial(&ExtMonomial::from_indices(&[1, 4]))
                        .unwrap());
                    assert!(ideal
                        .contains_monomial(&ExtMonomial::from_indices(&[2, 3]))
                        .unwrap());
                    assert!(ideal.is_squarefree_strongly_stable().unwrap());
                    break;
                }
                Some(m) => list.push(m),
            }
        }
    }

    #[test]
    fn random_graded_ideals_are_ideals() {
        let fp = Fp::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let j = random_graded_ideal(4, fp, ExtTermOrder::DegRevLex, &mut rng);
            // closure under multiplication is what from_graded_generators
            // guarantees; sanity-check the Hilbert function is monotone-ish
            let h = j.hilbert();
            assert!(h[2] >= 1);
            assert_eq!(h[0], 0);
        }
    }

    #[test]
    fn exhaustive_shifted_counts() {
        // n = 2: void, {∅}, {∅,2}, {∅,1,2}, full simplex
        assert_eq!(all_shifted_complexes(2).len(), 5);
        for c in all_shifted_complexes(3) {
            assert!(c.is_shifted());
        }
        let stables = all_stable_ideals(3, Fp::default(), ExtTermOrder::DegRevLex);
        for j in &stables {
            assert!(j.is_squarefree_strongly_stable().unwrap());
            assert_eq!(j.dim(0), 0, "proper ideals only");
        }
        // complements bijection: one stable ideal per nonvoid shifted complex
        assert_eq!(
            stables.len(),
            all_shifted_complexes(3).len() - 1
        );
    }

    #[test]
    fn subcomplexes_are_subcomplexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let c = random_complex(5, 1.0, &mut rng);
            let sub = random_subcomplex(&c, &mut rng);
            assert!(c.contains_subcomplex(&sub));
        }
    }
}
