//! Brute-force verification harness.
//!
//! Everything checked here is exact: flags over F_q are enumerated
//! exhaustively, bucketed by orbit signature, and the integer counts are
//! compared with the algebraic predictions. There are no tolerances — a
//! single off-by-one anywhere is a failure.
//!
//! Local triviality and smoothness are not directly observable at this
//! level; what the harness certifies are their counting consequences
//! (multiplicative point counts, constant fiber cardinalities, exact
//! partitions).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::doubly::{enumerate_doubly_flags, phi, projection_fibers, psi, schubert_membership};
use crate::error::{Error, Result};
use crate::flags::{
    enumerate_partial_flags, homogenize, is_homogeneous, is_stable_member, is_x_stable,
    orbit_signature, visit_flags_filtered, PartialFlag,
};
use crate::nilpotent::{nilpotent_from_parts, NilpotentOperator};
use crate::qpoly::{gaussian_binomial, QPolynomial};
use crate::strata::{
    enumerate_alpha, AlphaMatrix, DiffGrid, GrassSymbol, KappaMatrix, StratumInvariants,
};

/// Default cap on the estimated number of flags an instance may enumerate.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// One problem instance: a Jordan type, a dimension vector, and a prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub jordan: Vec<usize>,
    pub dims: Vec<usize>,
    pub q: u64,
}

impl Instance {
    pub fn new(jordan: Vec<usize>, dims: Vec<usize>, q: u64) -> Self {
        Instance { jordan, dims, q }
    }

    /// Builds the operator after validating the whole instance.
    pub fn operator(&self) -> Result<NilpotentOperator> {
        let op = nilpotent_from_parts(&self.jordan, self.q)?;
        let d = op.dim();
        let increasing = self.dims.windows(2).all(|w| w[0] <= w[1]);
        if !increasing || self.dims.iter().any(|&k| k > d) {
            return Err(Error::InvalidDimensionVector {
                dims: self.dims.clone(),
                max: d,
            });
        }
        Ok(op)
    }
}

/// Exact number of flags with the given dimension vector in F_q^d:
/// the product of the Gaussian binomials along the chain.
pub fn flag_count(d: usize, dims: &[usize], q: u64) -> u128 {
    let mut total: u128 = 1;
    let mut upper = d;
    for &k in dims.iter().rev() {
        total *= gaussian_binomial(upper, k).eval(q as i64) as u128;
        upper = k;
    }
    total
}

/// All stable flags of one orbit, with the homogeneous ones kept aside.
#[derive(Debug, Clone, Default)]
pub struct Bucket {
    pub flags: Vec<PartialFlag>,
    pub fixed: Vec<PartialFlag>,
}

/// The raw result of exhaustive enumeration: stable flags bucketed by
/// orbit signature, plus independent totals counted during the walk.
#[derive(Debug, Clone)]
pub struct BruteForce {
    pub buckets: BTreeMap<AlphaMatrix, Bucket>,
    pub stable_total: u64,
    pub fixed_total: u64,
}

/// Enumerates every x-stable flag with the given dimension vector,
/// bucketing by orbit signature and splitting off the homogeneous ones.
///
/// Stability holds memberwise, so the walk prunes a prefix as soon as one
/// member fails; the budget is checked against the unpruned flag count.
pub fn brute_force_stratify(
    op: &NilpotentOperator,
    dims: &[usize],
    budget: u64,
) -> Result<BruteForce> {
    let estimate = flag_count(op.dim(), dims, op.field().modulus());
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let ambient = op.ambient();
    let mut buckets: BTreeMap<AlphaMatrix, Bucket> = BTreeMap::new();
    let mut stable_total = 0u64;
    let mut fixed_total = 0u64;
    visit_flags_filtered(&ambient, dims, &|s| is_stable_member(s, op), &mut |f| {
        stable_total += 1;
        let alpha = orbit_signature(f, op);
        let fixed = is_homogeneous(f, op);
        if fixed {
            fixed_total += 1;
        }
        let bucket = buckets.entry(alpha).or_default();
        bucket.flags.push(f.clone());
        if fixed {
            bucket.fixed.push(f.clone());
        }
    })?;
    Ok(BruteForce {
        buckets,
        stable_total,
        fixed_total,
    })
}

/// Bucket totals must sum to the independently counted |A_x|, and the
/// fixed sub-buckets to the homogeneous total, so every stable flag lies
/// in exactly one orbit bucket.
pub fn check_partition(bf: &BruteForce) -> bool {
    let total: u64 = bf.buckets.values().map(|b| b.flags.len() as u64).sum();
    let fixed: u64 = bf.buckets.values().map(|b| b.fixed.len() as u64).sum();
    total == bf.stable_total && fixed == bf.fixed_total
}

/// Per stratum: the fixed-point count equals the Poincaré polynomial at q,
/// and the full count is q^fiber_dim times that.
pub fn check_counts(bf: &BruteForce, strata: &[StratumInvariants], q: u64) -> bool {
    strata.iter().all(|inv| {
        let (total, fixed) = match bf.buckets.get(&inv.alpha) {
            Some(b) => (b.flags.len() as u128, b.fixed.len() as u128),
            None => (0, 0),
        };
        let predicted_fixed = inv.poincare.eval(q as i64) as u128;
        let predicted_total = (q as u128).pow(inv.fiber_dim as u32) * predicted_fixed;
        fixed == predicted_fixed && total == predicted_total
    })
}

/// The set of signatures realized by brute force equals the admissible
/// list exactly — both inclusions.
pub fn check_nonemptiness(bf: &BruteForce, admissible: &[AlphaMatrix]) -> bool {
    let realized: Vec<&AlphaMatrix> = bf.buckets.keys().collect();
    realized.len() == admissible.len() && realized.iter().zip(admissible).all(|(a, b)| **a == *b)
}

/// Homogenization must map each stratum into itself and have exactly
/// q^fiber_dim preimages over every homogeneous flag of the stratum.
pub fn check_fibers_over_fixed_points(
    op: &NilpotentOperator,
    bf: &BruteForce,
    strata: &[StratumInvariants],
    q: u64,
) -> bool {
    strata.iter().all(|inv| {
        let Some(bucket) = bf.buckets.get(&inv.alpha) else {
            return false;
        };
        let expected = (q as u128).pow(inv.fiber_dim as u32);
        let mut preimages: HashMap<&PartialFlag, u128> = HashMap::new();
        let mut hom_images = Vec::with_capacity(bucket.flags.len());
        for f in &bucket.flags {
            let h = homogenize(f, op);
            if orbit_signature(&h, op) != inv.alpha {
                return false; // left the stratum
            }
            hom_images.push(h);
        }
        for h in &hom_images {
            match bucket.fixed.iter().find(|g| *g == h) {
                Some(key) => *preimages.entry(key).or_insert(0) += 1,
                None => return false, // image is not a fixed point of the stratum
            }
        }
        bucket
            .fixed
            .iter()
            .all(|h| preimages.get(h).copied().unwrap_or(0) == expected)
    })
}

/// phi and psi are mutually inverse: psi maps every doubly indexed flag to
/// a stable homogeneous flag of the right orbit with phi returning it, and
/// phi . psi is the identity on the fixed points found by brute force.
pub fn check_phi_psi(
    op: &NilpotentOperator,
    bf: &BruteForce,
    strata: &[StratumInvariants],
) -> bool {
    strata.iter().all(|inv| {
        let Ok(points) = enumerate_doubly_flags(op, &inv.kappa) else {
            return false;
        };
        for f in &points {
            let Ok(w) = psi(op, f) else { return false };
            if !is_x_stable(&w, op)
                || !is_homogeneous(&w, op)
                || orbit_signature(&w, op) != inv.alpha
            {
                return false;
            }
            match phi(op, &w) {
                Ok(back) if back == *f => {}
                _ => return false,
            }
        }
        let fixed = bf
            .buckets
            .get(&inv.alpha)
            .map_or(&[][..], |b| b.fixed.as_slice());
        for w in fixed {
            let Ok(f) = phi(op, w) else { return false };
            match psi(op, &f) {
                Ok(back) if back == *w => {}
                _ => return false,
            }
        }
        true
    })
}

/// Homogenization is idempotent, preserves the orbit signature and the
/// dimension vector, and keeps stable flags stable.
pub fn check_homogenize(op: &NilpotentOperator, bf: &BruteForce) -> bool {
    bf.buckets.iter().all(|(alpha, bucket)| {
        bucket.flags.iter().all(|f| {
            let h = homogenize(f, op);
            h.dims() == f.dims()
                && is_homogeneous(&h, op)
                && is_x_stable(&h, op)
                && orbit_signature(&h, op) == *alpha
                && homogenize(&h, op) == h
        })
    })
}

/// The homogeneous stable flags are partitioned exactly by signature, and
/// the signature is constant (equal to alpha) on each psi image.
pub fn check_fixed_locus_topology(
    op: &NilpotentOperator,
    bf: &BruteForce,
    strata: &[StratumInvariants],
) -> bool {
    let bucketed: u64 = bf.buckets.values().map(|b| b.fixed.len() as u64).sum();
    if bucketed != bf.fixed_total {
        return false;
    }
    strata.iter().all(|inv| {
        let Ok(points) = enumerate_doubly_flags(op, &inv.kappa) else {
            return false;
        };
        points
            .iter()
            .all(|f| psi(op, f).is_ok_and(|w| orbit_signature(&w, op) == inv.alpha))
    })
}

/// Every valid single-column target: weakly increasing columns bounded by
/// the base flag dimensions. These are the Schubert varieties inside the
/// Grassmannians of A_m that the doubly indexed flags resolve.
pub fn single_column_targets(op: &NilpotentOperator) -> Vec<KappaMatrix> {
    let d = op.d_dims();
    let m = d.len();
    let mut out = Vec::new();
    let mut column = vec![0usize; m];
    fn fill(i: usize, d: &[usize], column: &mut Vec<usize>, out: &mut Vec<KappaMatrix>) {
        if i == d.len() {
            out.push(KappaMatrix::new(column.iter().map(|&v| vec![v]).collect()));
            return;
        }
        let lo = if i == 0 { 0 } else { column[i - 1] };
        for v in lo..=d[i] {
            column[i] = v;
            fill(i + 1, d, column, out);
        }
        column[i] = 0;
    }
    if m > 0 {
        fill(0, d, &mut column, &mut out);
    }
    out
}

/// The last-row projection of the doubly indexed flags lands exactly on
/// the rank-condition Schubert set inside A_m, and has singleton fibers
/// over the locus where every rank condition is an equality.
///
/// This identity is specific to single-column targets: with several
/// columns the rank conditions can miss constraints that the nesting
/// propagates through the middle rows, leaving members with empty fibers.
pub fn check_resolution(op: &NilpotentOperator, kappa: &KappaMatrix) -> Result<bool> {
    let m = kappa.rows();
    if m == 0 {
        return Ok(true);
    }
    let fibers = projection_fibers(op, kappa)?;
    let a_m = op.a_flag().spaces[m - 1].clone();
    let target_dims: Vec<usize> = (0..kappa.cols()).map(|j| kappa.entry(m - 1, j)).collect();
    for flag in enumerate_partial_flags(&a_m, &target_dims)? {
        let preimages = fibers.get(&flag).copied().unwrap_or(0);
        let member = schubert_membership(op, &flag, kappa)?;
        if member != (preimages > 0) {
            return Ok(false);
        }
        let on_equality_locus = (0..m).all(|i| {
            flag.spaces().iter().enumerate().all(|(j, v)| {
                op.a_flag().spaces[i]
                    .intersect(v)
                    .map(|w| w.dim() == kappa.entry(i, j))
                    .unwrap_or(false)
            })
        });
        if on_equality_locus && preimages != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which groups of computations an instance run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckLevel {
    /// Invariants only; no finite-field enumeration.
    StrataOnly,
    /// Brute-force enumeration plus the six core checks.
    Core,
    /// Core checks plus the per-stratum resolution check.
    All,
}

/// One stratum in a report. Counts are present only when the instance was
/// actually enumerated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub alpha: AlphaMatrix,
    pub kappa: KappaMatrix,
    pub delta: DiffGrid,
    pub epsilon: DiffGrid,
    pub base: Vec<GrassSymbol>,
    pub dim: usize,
    pub poincare: QPolynomial,
    pub fiber_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_fixed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count_total: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub brute: u64,
    pub predicted: u64,
}

/// Outcome of every check; `resolution` is null when it was not requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub partition: bool,
    pub counts: bool,
    pub nonemptiness: bool,
    pub fibers: bool,
    pub phi_psi: bool,
    pub homogenize: bool,
    pub resolution: Option<bool>,
}

impl Checks {
    pub fn all_pass(&self) -> bool {
        self.partition
            && self.counts
            && self.nonemptiness
            && self.fibers
            && self.phi_psi
            && self.homogenize
            && self.resolution.unwrap_or(true)
    }
}

/// The structured result for one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratificationReport {
    pub instance: Instance,
    pub strata: Vec<StratumRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totals: Option<Totals>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Checks>,
}

impl StratificationReport {
    pub fn passed(&self) -> bool {
        self.checks.is_none_or(|c| c.all_pass())
    }
}

/// Runs one instance end to end and assembles its report.
///
/// Input-contract violations (bad partition, bad dimension vector, budget)
/// come back as errors; mathematical mismatches are reported in `checks`.
pub fn run_instance(
    instance: &Instance,
    budget: u64,
    level: CheckLevel,
) -> Result<StratificationReport> {
    let op = instance.operator()?;
    let admissible = enumerate_alpha(&instance.dims, op.l_dims());
    let strata: Vec<StratumInvariants> = admissible
        .iter()
        .map(|a| crate::strata::stratum_invariants(&op, a))
        .collect::<Result<_>>()?;

    let mut records: Vec<StratumRecord> = strata
        .iter()
        .map(|inv| StratumRecord {
            alpha: inv.alpha.clone(),
            kappa: inv.kappa.clone(),
            delta: inv.delta.clone(),
            epsilon: inv.epsilon.clone(),
            base: inv.base.clone(),
            dim: inv.dimension,
            poincare: inv.poincare.clone(),
            fiber_dim: inv.fiber_dim,
            count_fixed: None,
            count_total: None,
        })
        .collect();

    if level == CheckLevel::StrataOnly {
        return Ok(StratificationReport {
            instance: instance.clone(),
            strata: records,
            totals: None,
            checks: None,
        });
    }

    let q = instance.q;
    let bf = brute_force_stratify(&op, &instance.dims, budget)?;
    for record in records.iter_mut() {
        let (total, fixed) = match bf.buckets.get(&record.alpha) {
            Some(b) => (b.flags.len() as u64, b.fixed.len() as u64),
            None => (0, 0),
        };
        record.count_total = Some(total);
        record.count_fixed = Some(fixed);
    }
    let predicted: u128 = strata
        .iter()
        .map(|inv| (q as u128).pow(inv.fiber_dim as u32) * inv.poincare.eval(q as i64) as u128)
        .sum();

    let resolution = if level == CheckLevel::All {
        let mut all = true;
        for target in single_column_targets(&op) {
            all = all && check_resolution(&op, &target)?;
        }
        Some(all)
    } else {
        None
    };

    let checks = Checks {
        partition: check_partition(&bf),
        counts: check_counts(&bf, &strata, q),
        nonemptiness: check_nonemptiness(&bf, &admissible),
        fibers: check_fibers_over_fixed_points(&op, &bf, &strata, q),
        phi_psi: check_phi_psi(&op, &bf, &strata),
        homogenize: check_homogenize(&op, &bf),
        resolution,
    };

    Ok(StratificationReport {
        instance: instance.clone(),
        strata: records,
        totals: Some(Totals {
            brute: bf.stable_total,
            predicted: predicted.try_into().expect("within budget"),
        }),
        checks: Some(checks),
    })
}

/// The standard verification suite: a family of small Jordan types, each
/// paired with its complete flags, every single-step dimension vector, and
/// one two-step vector, over q = 2 and q = 3.
pub fn default_suite() -> Vec<Instance> {
    let jordans: [&[usize]; 9] = [
        &[1],
        &[2],
        &[1, 1],
        &[3],
        &[2, 1],
        &[2, 2],
        &[3, 1],
        &[2, 1, 1],
        &[3, 2],
    ];
    let mut out = Vec::new();
    for parts in jordans {
        let d: usize = parts.iter().sum();
        let mut dim_vectors: Vec<Vec<usize>> = Vec::new();
        dim_vectors.push((1..=d).collect()); // complete flags
        for k in 0..=d {
            dim_vectors.push(vec![k]); // every single-step vector
        }
        // one two-step vector per Jordan type
        if d >= 2 {
            dim_vectors.push(vec![1, d - 1]);
        } else {
            dim_vectors.push(vec![0, 1]);
        }
        for dims in dim_vectors {
            for q in [2u64, 3] {
                out.push(Instance::new(parts.to_vec(), dims.clone(), q));
            }
        }
    }
    out
}
