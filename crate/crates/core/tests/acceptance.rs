//! Acceptance suite.
//!
//! Every criterion is an exact integer identity (tolerance zero) checked
//! over the standard instance family; each test prints one pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use springer_strata::doubly::enumerate_doubly_flags;
use springer_strata::enumerate::enumerate_subspaces;
use springer_strata::field::FieldSpec;
use springer_strata::qpoly::gaussian_binomial;
use springer_strata::strata::{enumerate_alpha, stratum_invariants, StratumInvariants};
use springer_strata::subspace::Subspace;
use springer_strata::verify::{
    brute_force_stratify, check_fixed_locus_topology, check_resolution, default_suite, flag_count,
    run_instance, single_column_targets, CheckLevel, Instance, DEFAULT_BUDGET,
};

const PER_INSTANCE_LIMIT: Duration = Duration::from_secs(60);
const SUITE_LIMIT: Duration = Duration::from_secs(600);

fn conclude(criterion: &str, ok: bool) {
    println!(
        "[acceptance] {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion failed: {criterion}");
}

fn strata_of(instance: &Instance) -> Vec<StratumInvariants> {
    let op = instance.operator().unwrap();
    enumerate_alpha(&instance.dims, op.l_dims())
        .iter()
        .map(|a| stratum_invariants(&op, a).unwrap())
        .collect()
}

#[test]
fn criterion_1_stratification_identity() {
    // For every suite instance: bucket totals sum to |A_x|, each stratum's
    // fixed count is poincare(q), and its total is q^fiber_dim times that.
    // Timing: every instance under 60 s, the whole suite under 10 min.
    let suite_start = Instant::now();
    let mut ok = true;
    for instance in default_suite() {
        let start = Instant::now();
        let report = run_instance(&instance, DEFAULT_BUDGET, CheckLevel::Core).unwrap();
        let checks = report.checks.unwrap();
        let strata_ok = report.strata.iter().all(|s| {
            let fixed = s.count_fixed.unwrap() as i128;
            let total = s.count_total.unwrap() as i128;
            fixed == s.poincare.eval(instance.q as i64)
                && total == (instance.q as i128).pow(s.fiber_dim as u32) * fixed
        });
        let totals = report.totals.unwrap();
        let sum: u64 = report.strata.iter().map(|s| s.count_total.unwrap()).sum();
        ok &= checks.partition
            && checks.counts
            && strata_ok
            && sum == totals.brute
            && totals.predicted == totals.brute
            && start.elapsed() < PER_INSTANCE_LIMIT;
    }
    ok &= suite_start.elapsed() < SUITE_LIMIT;
    conclude("1 stratification identity across the suite", ok);
}

#[test]
fn criterion_2_pinned_instance() {
    // jordan (2,1), dims (1,2), q 2: exactly two strata with
    // (total, fixed, fiber) = (3,3,0) and (2,1,1), grand total 5
    let report = run_instance(
        &Instance::new(vec![2, 1], vec![1, 2], 2),
        DEFAULT_BUDGET,
        CheckLevel::Core,
    )
    .unwrap();
    let mut triples: Vec<(u64, u64, usize)> = report
        .strata
        .iter()
        .map(|s| (s.count_total.unwrap(), s.count_fixed.unwrap(), s.fiber_dim))
        .collect();
    triples.sort();
    let ok = triples == vec![(2, 1, 1), (3, 3, 0)] && report.totals.unwrap().brute == 5;
    conclude("2 pinned instance (2,1)/(1,2)/q=2", ok);
}

#[test]
fn criterion_3_nonemptiness() {
    // the admissible-alpha list equals the brute-force signature set,
    // both inclusions, for every suite instance
    let mut ok = true;
    for instance in default_suite() {
        let op = instance.operator().unwrap();
        let admissible = enumerate_alpha(&instance.dims, op.l_dims());
        let bf = brute_force_stratify(&op, &instance.dims, DEFAULT_BUDGET).unwrap();
        let realized: Vec<_> = bf.buckets.keys().cloned().collect();
        ok &= realized == admissible;
    }
    conclude("3 nonemptiness: admissible = realized", ok);
}

#[test]
fn criterion_4_phi_psi_roundtrips_over_f2() {
    // phi∘psi = id on every doubly indexed flag and psi∘phi = id on every
    // fixed point, every stratum, every q = 2 suite instance
    let mut ok = true;
    for instance in default_suite().into_iter().filter(|i| i.q == 2) {
        let report = run_instance(&instance, DEFAULT_BUDGET, CheckLevel::Core).unwrap();
        ok &= report.checks.unwrap().phi_psi;
    }
    conclude("4 phi/psi mutually inverse over F_2", ok);
}

#[test]
fn criterion_5_iterated_bundle_point_counts() {
    // |F_kappa(A_.)(F_q)| equals the product of Gaussian binomials at q,
    // and deg(poincare) = sum(delta*epsilon), for all suite strata
    let mut ok = true;
    for instance in default_suite() {
        let op = instance.operator().unwrap();
        for inv in strata_of(&instance) {
            let count = enumerate_doubly_flags(&op, &inv.kappa).unwrap().len() as i128;
            ok &= count == inv.poincare.eval(instance.q as i64);
            let cell_sum: usize = inv
                .delta
                .iter()
                .zip(&inv.epsilon)
                .flat_map(|(dr, er)| dr.iter().zip(er).map(|(d, e)| d * e))
                .sum();
            ok &= inv.poincare.degree().unwrap_or(0) == cell_sum && inv.dimension == cell_sum;
        }
    }
    conclude("5 iterated-bundle point counts and degrees", ok);
}

#[test]
fn criterion_6_homogenization_bundle_shadow() {
    // homogenize is idempotent, signature- and stability-preserving, with
    // constant fiber cardinality q^fiber_dim over every fixed point;
    // exhaustive at q = 2, and at q = 3 when the instance stays under 1e6
    // flags. The fixed locus is partitioned exactly by signature.
    let mut ok = true;
    for instance in default_suite() {
        if instance.q == 3 {
            let d: usize = instance.jordan.iter().sum();
            if flag_count(d, &instance.dims, 3) > 1_000_000 {
                continue;
            }
        }
        let report = run_instance(&instance, DEFAULT_BUDGET, CheckLevel::Core).unwrap();
        let checks = report.checks.unwrap();
        ok &= checks.homogenize && checks.fibers;

        let op = instance.operator().unwrap();
        let bf = brute_force_stratify(&op, &instance.dims, DEFAULT_BUDGET).unwrap();
        ok &= check_fixed_locus_topology(&op, &bf, &strata_of(&instance));
    }
    conclude("6 homogenization is the bundle projection", ok);
}

#[test]
fn criterion_7_schubert_resolution() {
    // for jordan (2,2) and (3,1), every single-column target over F_2:
    // projection image = rank-condition set, singleton fibers on the
    // equality locus
    let mut ok = true;
    for parts in [vec![2usize, 2], vec![3, 1]] {
        let op = springer_strata::nilpotent::nilpotent_from_parts(&parts, 2).unwrap();
        for target in single_column_targets(&op) {
            ok &= check_resolution(&op, &target).unwrap();
        }
    }
    conclude("7 Schubert resolution on single-column targets", ok);
}

#[test]
fn criterion_8_fiber_dimension_is_q_robust() {
    // empirical fiber dimensions (count ratios) match the algebraic
    // fiber_dimension for q in {2,3,5} on the complete-flag instances of
    // jordan (2,1) and (2,2)
    let mut ok = true;
    for parts in [vec![2usize, 1], vec![2, 2]] {
        let d: usize = parts.iter().sum();
        let complete: Vec<usize> = (1..=d).collect();
        for q in [2u64, 3, 5] {
            let instance = Instance::new(parts.clone(), complete.clone(), q);
            let op = instance.operator().unwrap();
            let bf = brute_force_stratify(&op, &complete, DEFAULT_BUDGET).unwrap();
            for inv in strata_of(&instance) {
                let bucket = &bf.buckets[&inv.alpha];
                let (total, fixed) = (bucket.flags.len() as u128, bucket.fixed.len() as u128);
                // the ratio must be exactly q^fiber_dim
                ok &= fixed > 0 && total == (q as u128).pow(inv.fiber_dim as u32) * fixed;
            }
        }
    }
    conclude("8 fiber dimensions are q-robust (q = 2, 3, 5)", ok);
}

#[test]
fn criterion_9_gaussian_binomial_layer() {
    // symmetry [n k] = [n n-k] for n ≤ 8; evaluation at q in {2,3}
    // matches exhaustive subspace counts for d ≤ 5
    let mut ok = true;
    for n in 0..=8usize {
        for k in 0..=n {
            ok &= gaussian_binomial(n, k) == gaussian_binomial(n, n - k);
        }
    }
    for q in [2u64, 3] {
        let f = FieldSpec::new(q).unwrap();
        for d in 0..=5usize {
            let ambient = Subspace::full(f, d);
            for k in 0..=d {
                let counted = enumerate_subspaces(&ambient, k).unwrap().count() as i128;
                ok &= counted == gaussian_binomial(d, k).eval(q as i64);
            }
        }
    }
    conclude("9 Gaussian binomial symmetry and evaluations", ok);
}
