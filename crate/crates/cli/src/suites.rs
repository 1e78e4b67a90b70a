//! The theorem-verification suites V1..V12. Each suite draws seeded random
//! instances (plus pinned fixtures), evaluates the statements it is named
//! for, and reports failures with replayable witnesses. Heavy intermediate
//! results (direct Betti tables, gins) are cached per run and shared between
//! suites, which never changes any outcome.

use std::collections::BTreeMap;
use std::sync::Mutex;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use shiftalg::cartan::{
    cartan_betti_closed_table, cartan_betti_direct, is_proper_sequence, CartanBettiTable,
};
use shiftalg::exterior::{lexsegment_ideal, ExtGradedIdeal, ExtMonomial, ExtTermOrder, MStatistics};
use shiftalg::gin::gin_exterior;
use shiftalg::sample::{
    all_stable_ideals, random_complex, random_graded_ideal, random_stable_ideal,
};
use shiftalg::shifting::{
    adeg, adeg_i, apply_shift, deg, degree_report, generator_counts, is_componentwise_linear,
    is_cm, is_gotzmann, is_sequentially_cm, iterated_betti, shift_exterior, shift_symmetric,
    verify_axioms, IteratedBettiTriangle, ShiftOperator,
};
use shiftalg::simplicial::SimplicialComplex;
use shiftalg::{Error, Fp, Result};

use crate::config::RunConfig;
use crate::report::{SuiteReport, VerifyReport};

pub const SUITE_NAMES: [&str; 12] = [
    "V1", "V2", "V3", "V4", "V5", "V6", "V7", "V8", "V9", "V10", "V11", "V12",
];

/// Index used for the pinned fixture ideal in the sample caches.
const FIXTURE_IDX: usize = usize::MAX;

/// Cross-suite cache of sampled ideals and their tables.
#[derive(Default)]
pub struct SampleCache {
    ideals: Mutex<BTreeMap<(usize, usize), ExtGradedIdeal>>,
    gins: Mutex<BTreeMap<(usize, usize, u8), ExtGradedIdeal>>,
    tables: Mutex<BTreeMap<(usize, usize, u8), CartanBettiTable>>,
}

fn order_tag(order: ExtTermOrder) -> u8 {
    match order {
        ExtTermOrder::DegRevLex => 1,
        ExtTermOrder::DegLex => 2,
    }
}

impl SampleCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The sampled random graded ideal for (n, idx); `FIXTURE_IDX` is the
    /// pinned two-generator ideal (e_{1,2}, e_{3,4}) on four vertices.
    fn ideal(&self, cfg: &RunConfig, fp: Fp, n: usize, idx: usize) -> ExtGradedIdeal {
        if let Some(j) = self.ideals.lock().unwrap().get(&(n, idx)) {
            return j.clone();
        }
        let j = if idx == FIXTURE_IDX {
            ExtGradedIdeal::from_monomial_generators(
                fp,
                ExtTermOrder::DegRevLex,
                4,
                &[
                    ExtMonomial::from_indices(&[1, 2]),
                    ExtMonomial::from_indices(&[3, 4]),
                ],
            )
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.derived_seed(1, n, idx));
            random_graded_ideal(n, fp, ExtTermOrder::DegRevLex, &mut rng)
        };
        self.ideals.lock().unwrap().insert((n, idx), j.clone());
        j
    }

    fn table_j(&self, cfg: &RunConfig, fp: Fp, n: usize, idx: usize) -> Result<CartanBettiTable> {
        let key = (n, idx, 0u8);
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let j = self.ideal(cfg, fp, n, idx);
        let real_n = j.n();
        let t = cartan_betti_direct(
            &j,
            cfg.i_max_for(real_n),
            cfg.derived_seed(2, n, idx),
            cfg.trials,
        )?;
        self.tables.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    fn gin(
        &self,
        cfg: &RunConfig,
        fp: Fp,
        n: usize,
        idx: usize,
        order: ExtTermOrder,
    ) -> Result<ExtGradedIdeal> {
        let key = (n, idx, order_tag(order));
        if let Some(g) = self.gins.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let j = self.ideal(cfg, fp, n, idx);
        let g = gin_exterior(&j, order, cfg.trials, cfg.derived_seed(3 + order_tag(order) as u64, n, idx))?;
        self.gins.lock().unwrap().insert(key, g.ideal.clone());
        Ok(g.ideal)
    }

    fn table_gin(
        &self,
        cfg: &RunConfig,
        fp: Fp,
        n: usize,
        idx: usize,
        order: ExtTermOrder,
    ) -> Result<CartanBettiTable> {
        let key = (n, idx, 10 + order_tag(order));
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let g = self.gin(cfg, fp, n, idx, order)?;
        let t = cartan_betti_closed_table(&g, cfg.i_max_for(g.n()))?;
        self.tables.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    fn table_lex(&self, cfg: &RunConfig, fp: Fp, n: usize, idx: usize) -> Result<CartanBettiTable> {
        let key = (n, idx, 20u8);
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let j = self.ideal(cfg, fp, n, idx);
        let lex = lexsegment_ideal(fp, j.n(), &j.hilbert())?;
        let t = cartan_betti_closed_table(&lex, cfg.i_max_for(j.n()))?;
        self.tables.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }
}

fn replay(cfg: &RunConfig, suite: &str) -> String {
    format!(
        "shiftalg verify --suite {suite} --seed {} --samples {} --n-max {} --trials {} --prime {}",
        cfg.seed, cfg.samples, cfg.n_max, cfg.trials, cfg.prime
    )
}

/// ns covered by the random-graded-ideal suites.
fn ideal_ns(cfg: &RunConfig) -> Vec<usize> {
    (3..=cfg.n_max.min(5)).collect()
}

fn sampled_complex(cfg: &RunConfig, salt: u64, idx: usize, n_cap: usize) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.derived_seed(salt, 0, idx));
    let n = rng.gen_range(2..=n_cap.max(2));
    random_complex(n, 0.9, &mut rng)
}

fn describe_ideal(j: &ExtGradedIdeal, n: usize, idx: usize) -> String {
    if idx == FIXTURE_IDX {
        "fixture ideal (e_{1,2}, e_{3,4}) on n=4".to_string()
    } else {
        format!("random graded ideal #{idx} at n={n}, hilbert {:?}", j.hilbert())
    }
}

fn describe_complex(c: &SimplicialComplex, idx: usize) -> String {
    format!("complex #{idx} on n={}: {:?}", c.n(), c.facet_lists())
}

/// Runs one error-prone step, converting genericity failures into report
/// entries instead of aborting the suite.
fn guard<T>(
    report: &mut SuiteReport,
    witness: &str,
    replay: &str,
    f: impl FnOnce() -> Result<T>,
) -> Option<T> {
    match f() {
        Ok(v) => Some(v),
        Err(Error::GenericityFailure) => {
            report.genericity_failure(witness.to_string(), replay);
            None
        }
        Err(e) => {
            report.check(false, &format!("unexpected error: {e}"), || witness.to_string(), replay);
            None
        }
    }
}

// -------------------------------------------------------------------------
// table slice comparisons

fn zero_rows_equal(a: &CartanBettiTable, b: &CartanBettiTable, n: usize) -> bool {
    for p in 1..=n {
        for jd in 0..=n {
            if a.get(0, jd, p) != b.get(0, jd, p) {
                return false;
            }
        }
    }
    true
}

fn beta1_row_equal(a: &CartanBettiTable, b: &CartanBettiTable, n: usize) -> bool {
    (0..=n + 1).all(|jd| a.get(1, jd, n) == b.get(1, jd, n))
}

// -------------------------------------------------------------------------
// suites

fn v1(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V1");
    let rep = replay(cfg, "V1");
    let mut instances: Vec<(String, ExtGradedIdeal)> = Vec::new();
    for n in 2..=cfg.n_max.min(4) {
        for (k, j) in all_stable_ideals(n, fp, ExtTermOrder::DegRevLex)
            .into_iter()
            .enumerate()
        {
            instances.push((format!("stable ideal {k} of the exhaustive n={n} set"), j));
        }
    }
    for n in 5..=cfg.n_max {
        for idx in 0..cfg.samples {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.derived_seed(11, n, idx));
            let j = random_stable_ideal(n, fp, ExtTermOrder::DegRevLex, &mut rng);
            instances.push((format!("random stable ideal #{idx} at n={n}"), j));
        }
    }
    report.samples = instances.len();
    for (desc, j) in instances {
        let n = j.n();
        let i_max = cfg.i_max_for(n);
        let direct = cartan_betti_direct(&j, i_max, 0, cfg.trials)?;
        let closed = cartan_betti_closed_table(&j, i_max)?;
        let diff = direct.diff(&closed);
        report.check(
            diff.is_empty(),
            "closed-form equals direct Cartan homology",
            || format!("{desc}; first differing cells {:?}", &diff[..diff.len().min(5)]),
            &rep,
        );
    }
    Ok(report)
}

fn v2(cfg: &RunConfig, cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V2");
    let rep = replay(cfg, "V2");
    for n in ideal_ns(cfg) {
        for idx in 0..cfg.samples {
            report.samples += 1;
            let j = cache.ideal(cfg, fp, n, idx);
            let witness = describe_ideal(&j, n, idx);
            let Some(t0) =
                guard(&mut report, &witness, &rep, || {
                    cartan_betti_direct(&j, 0, cfg.derived_seed(12, n, idx), cfg.trials)
                })
            else {
                continue;
            };
            let Some(gin) = guard(&mut report, &witness, &rep, || {
                cache.gin(cfg, fp, n, idx, ExtTermOrder::DegRevLex)
            }) else {
                continue;
            };
            let g0 = cartan_betti_closed_table(&gin, 0)?;
            report.check(
                zero_rows_equal(&t0, &g0, n),
                "beta_0 agrees between the ideal and its gin",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v3(cfg: &RunConfig, cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V3");
    let rep = replay(cfg, "V3");
    // exhaustive stable ideals: the gin is the ideal itself; the content is
    // the lexsegment comparison
    for n in 2..=cfg.n_max.min(4) {
        for (k, j) in all_stable_ideals(n, fp, ExtTermOrder::DegRevLex)
            .into_iter()
            .enumerate()
        {
            report.samples += 1;
            let i_max = cfg.i_max_for(n);
            let t_j = cartan_betti_closed_table(&j, i_max)?;
            let lex = lexsegment_ideal(fp, n, &j.hilbert())?;
            let t_lex = cartan_betti_closed_table(&lex, i_max)?;
            report.check(
                t_j.le_entrywise(&t_lex),
                "stable ideal table <= lexsegment table",
                || format!("stable ideal {k} of the exhaustive n={n} set"),
                &rep,
            );
        }
    }
    for n in ideal_ns(cfg) {
        for idx in 0..cfg.samples {
            report.samples += 1;
            let j = cache.ideal(cfg, fp, n, idx);
            let witness = describe_ideal(&j, n, idx);
            let Some(t_j) = guard(&mut report, &witness, &rep, || cache.table_j(cfg, fp, n, idx))
            else {
                continue;
            };
            let Some(t_grev) = guard(&mut report, &witness, &rep, || {
                cache.table_gin(cfg, fp, n, idx, ExtTermOrder::DegRevLex)
            }) else {
                continue;
            };
            let Some(t_glex) = guard(&mut report, &witness, &rep, || {
                cache.table_gin(cfg, fp, n, idx, ExtTermOrder::DegLex)
            }) else {
                continue;
            };
            let Some(t_lex) = guard(&mut report, &witness, &rep, || {
                cache.table_lex(cfg, fp, n, idx)
            }) else {
                continue;
            };
            report.check(
                t_j.le_entrywise(&t_grev),
                "table(E/J) <= table(E/gin_revlex)",
                || witness.clone(),
                &rep,
            );
            report.check(
                t_j.le_entrywise(&t_glex),
                "table(E/J) <= table(E/gin_deglex)",
                || witness.clone(),
                &rep,
            );
            report.check(
                t_grev.le_entrywise(&t_lex),
                "table(E/gin_revlex) <= table(E/lex)",
                || witness.clone(),
                &rep,
            );
            report.check(
                t_glex.le_entrywise(&t_lex),
                "table(E/gin_deglex) <= table(E/lex)",
                || witness.clone(),
                &rep,
            );
            report.check(
                zero_rows_equal(&t_j, &t_grev, n),
                "beta_0 agrees between the ideal and its gin",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v4(cfg: &RunConfig, cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V4");
    let rep = replay(cfg, "V4");
    for n in ideal_ns(cfg) {
        for idx in 0..cfg.samples {
            report.samples += 1;
            let j = cache.ideal(cfg, fp, n, idx);
            let witness = describe_ideal(&j, n, idx);
            let Some(t_grev) = guard(&mut report, &witness, &rep, || {
                cache.table_gin(cfg, fp, n, idx, ExtTermOrder::DegRevLex)
            }) else {
                continue;
            };
            let Some(t_glex) = guard(&mut report, &witness, &rep, || {
                cache.table_gin(cfg, fp, n, idx, ExtTermOrder::DegLex)
            }) else {
                continue;
            };
            report.check(
                t_grev.le_entrywise(&t_glex),
                "revlex gin table <= deglex gin table",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v5(cfg: &RunConfig, cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V5");
    let rep = replay(cfg, "V5");
    let mut instances: Vec<(usize, usize)> = vec![(4, FIXTURE_IDX)];
    for n in ideal_ns(cfg) {
        for idx in 0..cfg.samples {
            instances.push((n, idx));
        }
    }
    for (n, idx) in instances {
        report.samples += 1;
        let j = cache.ideal(cfg, fp, n, idx);
        let witness = describe_ideal(&j, n, idx);
        let Some(t_j) = guard(&mut report, &witness, &rep, || cache.table_j(cfg, fp, n, idx))
        else {
            continue;
        };
        let Some(t_gin) = guard(&mut report, &witness, &rep, || {
            cache.table_gin(cfg, fp, n, idx, ExtTermOrder::DegRevLex)
        }) else {
            continue;
        };
        let eq_tables = t_j.diff(&t_gin).is_empty();
        let Some(cwl) = guard(&mut report, &witness, &rep, || {
            is_componentwise_linear(&j, cfg.trials, cfg.derived_seed(13, n, idx))
        }) else {
            continue;
        };
        let Some((proper, proper_witness)) = guard(&mut report, &witness, &rep, || {
            is_proper_sequence(&j, cfg.i_max_for(j.n()), cfg.derived_seed(14, n, idx))
        }) else {
            continue;
        };
        report.check(
            eq_tables == cwl,
            "table equality with gin iff componentwise linear",
            || format!("{witness}; eq_tables={eq_tables} cwl={cwl}"),
            &rep,
        );
        report.check(
            cwl == proper,
            "componentwise linear iff generic sequence is proper",
            || format!("{witness}; cwl={cwl} proper={proper} witness={proper_witness:?}"),
            &rep,
        );
        if idx == FIXTURE_IDX {
            report.check(
                !cwl && !proper && !eq_tables,
                "fixture (e12, e34) is not componentwise linear",
                || witness.clone(),
                &rep,
            );
            report.check(
                !t_j.diff(&t_gin).is_empty(),
                "fixture shows a strict table increase under gin",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v6(cfg: &RunConfig, cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V6");
    let rep = replay(cfg, "V6");
    let mut instances: Vec<(usize, usize)> = vec![(4, FIXTURE_IDX)];
    for n in ideal_ns(cfg) {
        for idx in 0..cfg.samples {
            instances.push((n, idx));
        }
    }
    for (n, idx) in instances {
        report.samples += 1;
        let j = cache.ideal(cfg, fp, n, idx);
        let real_n = j.n();
        let witness = describe_ideal(&j, n, idx);
        let Some(t_j) = guard(&mut report, &witness, &rep, || cache.table_j(cfg, fp, n, idx))
        else {
            continue;
        };
        let Some(t_lex) = guard(&mut report, &witness, &rep, || {
            cache.table_lex(cfg, fp, n, idx)
        }) else {
            continue;
        };
        let a = t_j.diff(&t_lex).is_empty();
        let b = beta1_row_equal(&t_j, &t_lex, real_n);
        let Some(c) = guard(&mut report, &witness, &rep, || is_gotzmann(&j)) else {
            continue;
        };
        let Some(cwl) = guard(&mut report, &witness, &rep, || {
            is_componentwise_linear(&j, cfg.trials, cfg.derived_seed(15, n, idx))
        }) else {
            continue;
        };
        let d = zero_rows_equal(&t_j, &t_lex, real_n) && cwl;
        report.check(
            a == b && b == c && c == d,
            "Gotzmann four-way equivalence",
            || format!("{witness}; all-eq={a} beta1-eq={b} gotzmann={c} beta0-eq-and-cwl={d}"),
            &rep,
        );
        if idx == FIXTURE_IDX {
            report.check(
                !c && !a,
                "fixture (e12, e34) is not Gotzmann",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v7(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V7");
    let rep = replay(cfg, "V7");
    let mut complexes: Vec<(usize, SimplicialComplex)> = vec![(
        FIXTURE_IDX,
        SimplicialComplex::from_facets(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
    )];
    for idx in 0..cfg.samples {
        complexes.push((idx, sampled_complex(cfg, 21, idx, cfg.n_max)));
    }
    report.samples = complexes.len();
    for (idx, c) in complexes {
        let witness = describe_complex(&c, idx);
        let seed = cfg.derived_seed(22, c.n(), idx.min(1 << 20));
        let shifts = [
            ShiftOperator::Exterior(ExtTermOrder::DegRevLex),
            ShiftOperator::Exterior(ExtTermOrder::DegLex),
            ShiftOperator::Symmetric,
        ];
        let mut shifted = Vec::new();
        for (k, op) in shifts.iter().enumerate() {
            match guard(&mut report, &witness, &rep, || {
                apply_shift(*op, &c, fp, cfg.trials, seed ^ (k as u64))
            }) {
                Some(s) => shifted.push(s),
                None => continue,
            }
        }
        if shifted.len() != 3 {
            continue;
        }
        let base = adeg_i(&c);
        for (s, op) in shifted.iter().zip(shifts.iter()) {
            let after = adeg_i(s);
            report.check(
                base.iter().zip(after.iter()).all(|(a, b)| a <= b),
                "adeg_i does not decrease under shifting",
                || format!("{witness}; op={} before={base:?} after={after:?}", op.name()),
                &rep,
            );
        }
        let e_rev = adeg_i(&shifted[0]);
        let e_lex = adeg_i(&shifted[1]);
        report.check(
            e_rev.iter().zip(e_lex.iter()).all(|(a, b)| a <= b),
            "adeg_i of revlex shift <= deglex shift",
            || format!("{witness}; revlex={e_rev:?} deglex={e_lex:?}"),
            &rep,
        );
        // facet-count preservation exactly characterizes sequentially CM
        let Some(seqcm) = guard(&mut report, &witness, &rep, || {
            is_sequentially_cm(&c, fp, cfg.trials, seed ^ 7)
        }) else {
            continue;
        };
        report.check(
            (adeg(&c) == adeg(&shifted[0])) == seqcm,
            "adeg preserved under exterior shift iff sequentially CM",
            || format!("{witness}; adeg {} -> {}", adeg(&c), adeg(&shifted[0])),
            &rep,
        );
        if idx == FIXTURE_IDX {
            report.check(
                adeg(&c) == 2 && adeg(&shifted[0]) == 3,
                "disjoint edges: adeg grows 2 -> 3",
                || witness.clone(),
                &rep,
            );
        }
        // socle route for adeg_i
        report.check(
            c.socle_dims(fp) == c.facet_counts_by_size(),
            "socle dimensions equal facet counts by size",
            || witness.clone(),
            &rep,
        );
        // adeg_i equals the count of dual-ideal generators of degree n - i
        let dual_gens = generator_counts(&c.alexander_dual().sr_ideal_exterior(fp, ExtTermOrder::DegRevLex));
        let n = c.n();
        let ok = (0..=n).all(|i| adeg_i(&c)[i] == dual_gens[n - i]);
        report.check(
            ok,
            "adeg_i equals dual minimal generator count in degree n-i",
            || format!("{witness}; adeg_i={:?} dual_gens={dual_gens:?}", adeg_i(&c)),
            &rep,
        );
    }
    Ok(report)
}

fn v8(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V8");
    let rep = replay(cfg, "V8");
    for idx in 0..cfg.samples {
        report.samples += 1;
        let c = sampled_complex(cfg, 31, idx, cfg.n_max);
        let witness = describe_complex(&c, idx);
        report.check(
            c.alexander_dual().alexander_dual() == c,
            "Alexander duality is an involution",
            || witness.clone(),
            &rep,
        );
        for ord in [ExtTermOrder::DegRevLex, ExtTermOrder::DegLex] {
            let seed = cfg.derived_seed(32, c.n(), idx);
            let lhs = guard(&mut report, &witness, &rep, || {
                shift_exterior(&c.alexander_dual(), ord, fp, cfg.trials, seed)
            });
            let rhs = guard(&mut report, &witness, &rep, || {
                shift_exterior(&c, ord, fp, cfg.trials, seed ^ 1)
            });
            if let (Some(lhs), Some(rhs)) = (lhs, rhs) {
                report.check(
                    lhs == rhs.alexander_dual(),
                    "duality commutes with exterior shifting",
                    || format!("{witness}; order {ord:?}"),
                    &rep,
                );
            }
        }
        // Euler characteristic from the f-vector matches homology
        let h = c.reduced_homology_dims(fp);
        let mut chi = 0i64;
        for (k, &dim) in h.iter().enumerate() {
            if (k as i64 - 1).rem_euclid(2) == 0 {
                chi += dim as i64;
            } else {
                chi -= dim as i64;
            }
        }
        report.check(
            chi == c.reduced_euler(),
            "Euler characteristic agrees with homology",
            || witness.clone(),
            &rep,
        );
    }
    Ok(report)
}

fn v9(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V9");
    let rep = replay(cfg, "V9");
    let mut complexes: Vec<(usize, SimplicialComplex)> = vec![
        (
            FIXTURE_IDX,
            SimplicialComplex::from_facets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
        ),
        (
            FIXTURE_IDX - 1,
            SimplicialComplex::from_facets(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
        ),
        (FIXTURE_IDX - 2, SimplicialComplex::simplex(3)),
    ];
    for idx in 0..cfg.samples {
        complexes.push((idx, sampled_complex(cfg, 41, idx, cfg.n_max.min(6))));
    }
    report.samples = complexes.len();
    for (idx, c) in complexes {
        let witness = describe_complex(&c, idx);
        let seed = cfg.derived_seed(42, c.n(), idx.min(1 << 20));
        let Some(drep) = guard(&mut report, &witness, &rep, || {
            degree_report(&c, fp, cfg.trials, seed)
        }) else {
            continue;
        };
        report.check(
            drep.deg <= drep.adeg && drep.adeg <= drep.sdeg,
            "deg <= adeg <= sdeg",
            || format!("{witness}; {drep:?}"),
            &rep,
        );
        let Some(shifted) = guard(&mut report, &witness, &rep, || {
            shift_symmetric(&c, fp, cfg.trials, seed)
        }) else {
            continue;
        };
        report.check(
            drep.sdeg == adeg(&shifted),
            "sdeg equals facet count of the symmetric shift",
            || witness.clone(),
            &rep,
        );
        // idempotence-backed consistency of the sdeg pipeline
        let Some(twice) = guard(&mut report, &witness, &rep, || {
            shift_symmetric(&shifted, fp, cfg.trials, seed ^ 5)
        }) else {
            continue;
        };
        report.check(
            adeg(&twice) == drep.sdeg,
            "sdeg is stable under repeating the symmetric shift",
            || witness.clone(),
            &rep,
        );
        let Some(cm) = guard(&mut report, &witness, &rep, || {
            is_cm(&c, fp, cfg.trials, seed ^ 9)
        }) else {
            continue;
        };
        report.check(
            cm == shifted.is_pure(),
            "CM iff the symmetric shift is pure",
            || format!("{witness}; cm={cm}"),
            &rep,
        );
        report.check(
            cm == (drep.sdeg == drep.deg),
            "CM iff sdeg equals deg",
            || format!("{witness}; {drep:?}"),
            &rep,
        );
        let Some(seqcm) = guard(&mut report, &witness, &rep, || {
            is_sequentially_cm(&c, fp, cfg.trials, seed ^ 11)
        }) else {
            continue;
        };
        if seqcm {
            report.check(
                drep.adeg == drep.sdeg,
                "sequentially CM implies adeg = sdeg",
                || format!("{witness}; {drep:?}"),
                &rep,
            );
        }
        if idx == FIXTURE_IDX {
            report.check(
                drep.deg == 3 && drep.adeg == 3 && drep.sdeg == 3,
                "hollow triangle has deg = adeg = sdeg = 3",
                || witness.clone(),
                &rep,
            );
        }
        if idx == FIXTURE_IDX - 1 {
            report.check(
                drep.deg == 2 && drep.adeg == 2 && drep.sdeg == 3,
                "disjoint edges report (2, 2, 3)",
                || witness.clone(),
                &rep,
            );
        }
        if idx == FIXTURE_IDX - 2 {
            report.check(
                drep.deg == 1 && drep.adeg == 1 && drep.sdeg == 1,
                "full simplex reports all ones",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v10(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V10");
    let rep = replay(cfg, "V10");
    let mut complexes: Vec<(usize, SimplicialComplex)> = vec![
        (
            FIXTURE_IDX,
            SimplicialComplex::from_facets(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
        ),
        (
            FIXTURE_IDX - 1,
            SimplicialComplex::from_facets(4, &[vec![1, 2], vec![3, 4]]).unwrap(),
        ),
    ];
    for idx in 0..cfg.samples {
        complexes.push((idx, sampled_complex(cfg, 51, idx, cfg.n_max.min(6))));
    }
    report.samples = complexes.len();
    for (idx, c) in complexes {
        let witness = describe_complex(&c, idx);
        let seed = cfg.derived_seed(52, c.n(), idx.min(1 << 20));
        // both routes must agree inside iterated_betti; a RouteMismatch error
        // would surface here
        let Some(b_e) = guard(&mut report, &witness, &rep, || {
            iterated_betti(&c, ShiftOperator::Exterior(ExtTermOrder::DegRevLex), fp, cfg.trials, seed)
        }) else {
            continue;
        };
        let Some(b_s) = guard(&mut report, &witness, &rep, || {
            iterated_betti(&c, ShiftOperator::Symmetric, fp, cfg.trials, seed ^ 1)
        }) else {
            continue;
        };
        let h = IteratedBettiTriangle(c.h_triangle().0);
        let Some(seqcm) = guard(&mut report, &witness, &rep, || {
            is_sequentially_cm(&c, fp, cfg.trials, seed ^ 2)
        }) else {
            continue;
        };
        report.check(
            seqcm == (b_e == h),
            "sequentially CM iff iterated Betti equals the h-triangle",
            || format!("{witness}; b={:?} h={:?}", b_e.0, h.0),
            &rep,
        );
        if seqcm {
            report.check(
                b_e == b_s,
                "sequentially CM: exterior and symmetric iterated Betti agree",
                || format!("{witness}; e={:?} s={:?}", b_e.0, b_s.0),
                &rep,
            );
        }
        // degree sums
        let Some(shifted) = guard(&mut report, &witness, &rep, || {
            shift_exterior(&c, ExtTermOrder::DegRevLex, fp, cfg.trials, seed)
        }) else {
            continue;
        };
        report.check(
            b_e.top_row_sum() == deg(&shifted) as i64,
            "top-row sum equals deg of the shifted complex",
            || format!("{witness}; b={:?}", b_e.0),
            &rep,
        );
        report.check(
            b_e.total() == adeg(&shifted) as i64,
            "total sum equals adeg of the shifted complex",
            || format!("{witness}; b={:?}", b_e.0),
            &rep,
        );
        if idx == FIXTURE_IDX {
            report.check(
                b_e.get(2, 0) == 1 && b_e.get(2, 1) == 1 && b_e.get(2, 2) == 1,
                "hollow triangle has iterated Betti (1,1,1)",
                || witness.clone(),
                &rep,
            );
        }
        if idx == FIXTURE_IDX - 1 {
            report.check(
                b_e.get(1, 1) == 1 && b_e.get(2, 0) == 1 && b_e.get(2, 1) == 1 && b_e.get(2, 2) == 0,
                "disjoint edges iterated Betti fixture",
                || witness.clone(),
                &rep,
            );
            report.check(
                h.get(2, 2) == -1 && !seqcm,
                "disjoint edges: h_{2,2} = -1 flags non-sequentially-CM",
                || witness.clone(),
                &rep,
            );
        }
    }
    Ok(report)
}

fn v11(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V11");
    let rep = replay(cfg, "V11");
    for (k, op) in [
        ShiftOperator::Exterior(ExtTermOrder::DegRevLex),
        ShiftOperator::Exterior(ExtTermOrder::DegLex),
        ShiftOperator::Symmetric,
    ]
    .into_iter()
    .enumerate()
    {
        let n_cap = match op {
            ShiftOperator::Symmetric => cfg.n_max.min(6),
            _ => cfg.n_max,
        };
        let axioms = verify_axioms(
            op,
            n_cap,
            cfg.samples,
            fp,
            cfg.trials,
            cfg.derived_seed(61 + k as u64, n_cap, 0),
        )?;
        report.samples += axioms.samples;
        report.check(
            axioms.passed(),
            &format!("axioms S1-S4 hold for {}", op.name()),
            || format!("violations: {:?}", axioms.failures),
            &rep,
        );
    }
    Ok(report)
}

fn v12(cfg: &RunConfig, _cache: &SampleCache) -> Result<SuiteReport> {
    let fp = cfg.field()?;
    let mut report = SuiteReport::new("V12");
    let rep = replay(cfg, "V12");
    let mut instances: Vec<(String, ExtGradedIdeal)> = Vec::new();
    for n in 2..=cfg.n_max.min(4) {
        for (k, j) in all_stable_ideals(n, fp, ExtTermOrder::DegRevLex)
            .into_iter()
            .enumerate()
        {
            instances.push((format!("stable ideal {k} of the exhaustive n={n} set"), j));
        }
    }
    if cfg.n_max >= 5 {
        for idx in 0..cfg.samples {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.derived_seed(71, 5, idx));
            instances.push((
                format!("random stable ideal #{idx} at n=5"),
                random_stable_ideal(5, fp, ExtTermOrder::DegRevLex, &mut rng),
            ));
        }
    }
    report.samples = instances.len();
    // lexsegment comparison per instance
    for (desc, j) in &instances {
        let n = j.n();
        let lex = lexsegment_ideal(fp, n, &j.hilbert())?;
        let mut dominated = true;
        for d in 0..=n {
            let sj = MStatistics::of(j.monomials(d)?.iter());
            let sl = MStatistics::of(lex.monomials(d)?.iter());
            for i in 1..=n {
                if sl.m_le(i) > sj.m_le(i) {
                    dominated = false;
                }
            }
        }
        report.check(
            dominated,
            "lexsegment m-statistics are dominated by the ideal's",
            || desc.clone(),
            &rep,
        );
        // with dominance established the rigidity package applies to (J, lex)
        let i_max = cfg.i_max_for(n);
        let t_j = cartan_betti_closed_table(j, i_max)?;
        let t_lex = cartan_betti_closed_table(&lex, i_max)?;
        report.check(
            t_j.le_entrywise(&t_lex),
            "dominated m-statistics give entrywise larger tables",
            || desc.clone(),
            &rep,
        );
        check_rigidity(&mut report, &rep, desc, fp, &lex, j, i_max)?;
    }
    // rigidity on same-Hilbert stable pairs from the exhaustive sets
    let mut by_hilbert: BTreeMap<Vec<usize>, Vec<&ExtGradedIdeal>> = BTreeMap::new();
    for (_, j) in instances.iter().filter(|(_, j)| j.n() <= 4) {
        by_hilbert.entry(j.hilbert()).or_default().push(j);
    }
    for group in by_hilbert.values() {
        for a in group {
            for b in group {
                let n = a.n();
                // orientation: a dominated by b
                let mut dominated = true;
                'outer: for d in 0..=n {
                    let sa = MStatistics::of(a.monomials(d)?.iter());
                    let sb = MStatistics::of(b.monomials(d)?.iter());
                    for i in 1..=n {
                        if sa.m_le(i) > sb.m_le(i) {
                            dominated = false;
                            break 'outer;
                        }
                    }
                }
                if !dominated {
                    continue;
                }
                let i_max = cfg.i_max_for(n);
                let t_a = cartan_betti_closed_table(a, i_max)?;
                let t_b = cartan_betti_closed_table(b, i_max)?;
                report.check(
                    t_b.le_entrywise(&t_a),
                    "pairwise rigidity inequality",
                    || format!("pair with hilbert {:?}", a.hilbert()),
                    &rep,
                );
                check_rigidity(
                    &mut report,
                    &rep,
                    &format!("pair with hilbert {:?}", a.hilbert()),
                    fp,
                    a,
                    b,
                    i_max,
                )?;
            }
        }
    }
    Ok(report)
}

/// The rigidity equivalences for a dominated pair (low, high): low has
/// m-statistics dominated by high's, hence entrywise larger tables; all the
/// listed equality statements must then agree.
fn check_rigidity(
    report: &mut SuiteReport,
    rep: &str,
    desc: &str,
    _fp: Fp,
    low: &ExtGradedIdeal,
    high: &ExtGradedIdeal,
    i_max: usize,
) -> Result<()> {
    let n = high.n();
    let t_low = cartan_betti_closed_table(low, i_max)?;
    let t_high = cartan_betti_closed_table(high, i_max)?;
    let e_all = t_low.diff(&t_high).is_empty();
    let e_graded = {
        let mut ok = true;
        for i in 0..=i_max {
            for jd in 0..=(n + i) {
                if t_low.get(i, jd, n) != t_high.get(i, jd, n) {
                    ok = false;
                }
            }
        }
        ok
    };
    let e_beta1_row = beta1_row_equal(&t_low, &t_high, n);
    let e_beta1_total = {
        let a: u64 = (0..=n + 1).map(|jd| t_low.get(1, jd, n)).sum();
        let b: u64 = (0..=n + 1).map(|jd| t_high.get(1, jd, n)).sum();
        a == b
    };
    let mut e_m_le = true;
    let mut e_m_i = true;
    for d in 0..=n {
        let sa = MStatistics::of(high.monomials(d)?.iter());
        let sb = MStatistics::of(low.monomials(d)?.iter());
        for i in 1..=n {
            if sa.m_le(i) != sb.m_le(i) {
                e_m_le = false;
            }
            if sa.m_i(i) != sb.m_i(i) {
                e_m_i = false;
            }
        }
    }
    let all_equal = [e_graded, e_beta1_row, e_beta1_total, e_m_le, e_m_i]
        .iter()
        .all(|&b| b == e_all);
    report.check(
        all_equal,
        "rigidity equivalences agree",
        || {
            format!(
                "{desc}; all={e_all} graded={e_graded} beta1row={e_beta1_row} beta1={e_beta1_total} m_le={e_m_le} m_i={e_m_i}"
            )
        },
        rep,
    );
    Ok(())
}

// -------------------------------------------------------------------------

pub fn run_suite(name: &str, cfg: &RunConfig, cache: &SampleCache) -> Result<SuiteReport> {
    match name {
        "V1" => v1(cfg, cache),
        "V2" => v2(cfg, cache),
        "V3" => v3(cfg, cache),
        "V4" => v4(cfg, cache),
        "V5" => v5(cfg, cache),
        "V6" => v6(cfg, cache),
        "V7" => v7(cfg, cache),
        "V8" => v8(cfg, cache),
        "V9" => v9(cfg, cache),
        "V10" => v10(cfg, cache),
        "V11" => v11(cfg, cache),
        "V12" => v12(cfg, cache),
        other => Err(Error::InvalidInput(format!("unknown suite {other:?}"))),
    }
}

/// Runs the selected suites in their fixed order and assembles the report.
pub fn run_suites(selection: &str, cfg: &RunConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let names: Vec<&str> = if selection == "all" {
        SUITE_NAMES.to_vec()
    } else {
        let name = SUITE_NAMES
            .iter()
            .find(|n| **n == selection)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {selection:?}")))?;
        vec![*name]
    };
    let cache = SampleCache::new();
    let mut suites = Vec::with_capacity(names.len());
    for name in names {
        suites.push(run_suite(name, cfg, &cache)?);
    }
    Ok(VerifyReport::new(cfg.clone(), suites))
}
