//! Seeded acceptance suites.
//!
//! Each criterion function runs a fixed, reproducible batch of randomized
//! trials and returns a pass/fail outcome with a one-line summary. The
//! `acceptance` integration test asserts every outcome; the CLI `selftest`
//! subcommand prints them and sets the exit code. Generators live here too so
//! both entry points (and the property tests) share one source of instances.

use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bijection::{build_bijection, check_pair_bounds, BuildConfig};
use crate::distortion::{dis_map, gh_pair, one_sided_map, one_sided_pair};
use crate::error::Error;
use crate::map::Mapping;
use crate::search::{gh_class, gh_exact, gh_pair_inf, ClassTag, GhWitness, SearchConfig};
use crate::space::{MetricSpace, Subset};
use crate::surjective::{
    extract_witness, measure_surjectivity, pipeline_to_bijection, quasi_inverse, retract_onto,
    retraction_displacement,
};

const TOL: f64 = 1e-9;
const TOL_EXACT: f64 = 1e-12;

/// Result of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} — {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Runs every criterion in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        oracle_equivalence(),
        bijection_identities(),
        class_chains(),
        bijection_construction(),
        surjective_bounds(),
        pipeline_guarantee(),
        witness_extraction(),
        engineering_targets(),
    ]
}

// ---------------------------------------------------------------------------
// Instance generators
// ---------------------------------------------------------------------------

/// A random metric: symmetric entries in `[0.5, 2)` closed under shortest
/// paths, which enforces the triangle inequality while keeping off-diagonal
/// distances positive.
#[allow(clippy::needless_range_loop)]
pub fn random_metric_space(n: usize, rng: &mut ChaCha8Rng) -> MetricSpace<f64> {
    let mut d = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.gen_range(0.5..2.0);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                    d[j][i] = via;
                }
            }
        }
    }
    MetricSpace::from_rows(d).expect("matrix is square and nonempty")
}

/// Unit-step path: points 0, 1, ..., n-1 on the line.
pub fn grid_1d(n: usize) -> MetricSpace<f64> {
    let coords: Vec<f64> = (0..n).map(|i| i as f64).collect();
    MetricSpace::line(&coords)
}

/// Unit-step k×k grid in the plane with the Euclidean metric.
pub fn grid_2d(k: usize) -> MetricSpace<f64> {
    let points: Vec<Vec<f64>> = (0..k * k)
        .map(|i| vec![(i / k) as f64, (i % k) as f64])
        .collect();
    MetricSpace::from_points(&points, crate::space::Norm::L2).expect("nonempty")
}

/// Index adjacency of the 1-D path.
pub fn grid_1d_neighbors(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| {
            let mut v = Vec::new();
            if i > 0 {
                v.push(i - 1);
            }
            if i + 1 < n {
                v.push(i + 1);
            }
            v
        })
        .collect()
}

/// Index adjacency of the k×k grid (4-neighborhood).
pub fn grid_2d_neighbors(k: usize) -> Vec<Vec<usize>> {
    (0..k * k)
        .map(|i| {
            let (r, c) = (i / k, i % k);
            let mut v = Vec::new();
            if r > 0 {
                v.push(i - k);
            }
            if c > 0 {
                v.push(i - 1);
            }
            if c + 1 < k {
                v.push(i + 1);
            }
            if r + 1 < k {
                v.push(i + k);
            }
            v
        })
        .collect()
}

/// Identity perturbed by transpositions with grid neighbors: a bijection
/// whose distortion stays within two grid steps.
pub fn neighbor_transpositions(
    neighbors: &[Vec<usize>],
    swaps: usize,
    rng: &mut ChaCha8Rng,
) -> Mapping {
    let n = neighbors.len();
    let mut image: Vec<usize> = (0..n).collect();
    for _ in 0..swaps {
        let i = rng.gen_range(0..n);
        let j = neighbors[i][rng.gen_range(0..neighbors[i].len())];
        image.swap(i, j);
    }
    Mapping::new(n, n, image).expect("transpositions preserve bijectivity")
}

/// Identity with some points collapsed onto a grid neighbor: stays a
/// near-isometry but loses surjectivity wherever a point is vacated.
pub fn neighbor_collapses(neighbors: &[Vec<usize>], moves: usize, rng: &mut ChaCha8Rng) -> Mapping {
    let n = neighbors.len();
    let mut image: Vec<usize> = (0..n).collect();
    for _ in 0..moves {
        let i = rng.gen_range(0..n);
        image[i] = neighbors[i][rng.gen_range(0..neighbors[i].len())];
    }
    Mapping::new(n, n, image).expect("targets are in range")
}

/// A uniformly random total mapping.
pub fn random_mapping(domain: usize, codomain: usize, rng: &mut ChaCha8Rng) -> Mapping {
    let image = (0..domain).map(|_| rng.gen_range(0..codomain)).collect();
    Mapping::new(domain, codomain, image).expect("targets are in range")
}

/// A uniformly random bijection.
pub fn random_bijection(n: usize, rng: &mut ChaCha8Rng) -> Mapping {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    Mapping::new(n, n, image).expect("shuffled identity is a bijection")
}

// ---------------------------------------------------------------------------
// Criterion 1: pair form equals correspondence form
// ---------------------------------------------------------------------------

pub fn oracle_equivalence() -> CriterionOutcome {
    let start = Instant::now();
    let config = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA1);
    let mut worst: f64 = 0.0;
    let mut failures = 0usize;
    let mut run = |x: &MetricSpace<f64>, y: &MetricSpace<f64>| {
        let exact = gh_exact(x, y, &config).expect("within caps");
        let pairs = gh_pair_inf(x, y, &config).expect("within budget");
        let gap = (exact.value - pairs.value).abs();
        worst = worst.max(gap);
        if gap > TOL {
            failures += 1;
        }
    };
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(m, &mut rng);
        run(&x, &y);
    }
    for _ in 0..20 {
        let x = random_metric_space(4, &mut rng);
        let y = random_metric_space(4, &mut rng);
        run(&x, &y);
    }
    CriterionOutcome::new(
        "oracle-equivalence",
        failures == 0,
        format!(
            "220 space pairs, max |exact - pair form| = {:.2e}, {} over tolerance, {:.1}s",
            worst,
            failures,
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 2: bijection identities and family collapse on equal sizes
// ---------------------------------------------------------------------------

pub fn bijection_identities() -> CriterionOutcome {
    let config = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB2);
    let mut worst_identity: f64 = 0.0;
    let mut failures = 0usize;

    for _ in 0..100 {
        let n = rng.gen_range(1..=6);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(n, &mut rng);
        let f = random_bijection(n, &mut rng);
        let f_inv = f.inverse().expect("bijection");
        let os_f = one_sided_map(&f, &x, &y).expect("sizes match");
        let os_inv = one_sided_map(&f_inv, &y, &x).expect("sizes match");
        let os_pair = one_sided_pair(&f, &f_inv, &x, &y).expect("sizes match");
        for (a, b) in [
            (os_inv.plus, os_f.minus),
            (os_inv.minus, os_f.plus),
            (os_pair.plus, os_f.plus),
            (os_pair.minus, os_f.minus),
        ] {
            let gap = (a - b).abs();
            worst_identity = worst_identity.max(gap);
            if gap > TOL_EXACT {
                failures += 1;
            }
        }
    }

    let mut worst_family: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(n, &mut rng);
        let bi = gh_class(&x, &y, ClassTag::Bijective, false, &config).expect("within caps");
        let bi_mod = gh_class(&x, &y, ClassTag::Bijective, true, &config).expect("within caps");
        let ip = gh_class(&x, &y, ClassTag::InversePair, false, &config).expect("within caps");
        for gap in [(bi.value - ip.value).abs(), (bi.value - bi_mod.value).abs()] {
            worst_family = worst_family.max(gap);
            if gap > TOL {
                failures += 1;
            }
        }
    }

    CriterionOutcome::new(
        "bijection-identities",
        failures == 0,
        format!(
            "100 bijections (max identity gap {worst_identity:.2e}), \
             50 equal-size pairs (max family gap {worst_family:.2e}), {failures} failures"
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 3: class chains and the bijective-unrestricted gap
// ---------------------------------------------------------------------------

pub fn class_chains() -> CriterionOutcome {
    let config = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    let mut failures = 0usize;
    let mut max_gap: f64 = 0.0;
    let mut sum_gap = 0.0;

    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(n, &mut rng);
        let mgh = gh_class(&x, &y, ClassTag::Any, true, &config)
            .expect("within budget")
            .value;
        let gh = gh_exact(&x, &y, &config).expect("within caps").value;
        let inj = gh_class(&x, &y, ClassTag::Injective, false, &config)
            .expect("feasible")
            .value;
        let sur = gh_class(&x, &y, ClassTag::Surjective, false, &config)
            .expect("feasible")
            .value;
        let bi = gh_class(&x, &y, ClassTag::Bijective, false, &config)
            .expect("feasible")
            .value;
        let bi_mod = gh_class(&x, &y, ClassTag::Bijective, true, &config)
            .expect("feasible")
            .value;

        let chain = [
            mgh <= gh + TOL,
            gh <= inj + TOL,
            inj <= bi + TOL,
            gh <= sur + TOL,
            sur <= bi + TOL,
            bi_mod <= bi + TOL,
        ];
        if chain.iter().any(|ok| !ok) {
            failures += 1;
        }
        let gap = bi - gh;
        max_gap = max_gap.max(gap);
        sum_gap += gap;
    }

    CriterionOutcome::new(
        "class-chains",
        failures == 0,
        format!(
            "100 equal-size pairs, {failures} chain violations; \
             bijective-vs-unrestricted gap mean {:.3e}, max {:.3e} (no equality asserted)",
            sum_gap / 100.0,
            max_gap
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 4: bijection construction and per-pair bounds on grids
// ---------------------------------------------------------------------------

pub fn bijection_construction() -> CriterionOutcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD4);
    let mut successes = 0usize;
    let mut exhausted = 0usize;
    let mut failures = 0usize;

    for trial in 0..100 {
        let (space, neighbors) = if trial % 2 == 0 {
            let n = rng.gen_range(16..=64);
            (grid_1d(n), grid_1d_neighbors(n))
        } else {
            let k = rng.gen_range(4..=8);
            (grid_2d(k), grid_2d_neighbors(k))
        };
        let swaps = rng.gen_range(1..=4);
        let f = neighbor_transpositions(&neighbors, swaps, &mut rng);
        let g = neighbor_transpositions(&neighbors, swaps, &mut rng);
        let eps = 1.0 + 2.0 * rng.gen::<f64>(); // radius within 1-3 grid steps
        let cover_x = space.ball_cover(eps).expect("eps > 0");
        let cover_y = space.ball_cover(eps).expect("eps > 0");
        let seed = rng.gen::<u64>();
        let cfg = BuildConfig {
            seed: Some(seed),
            ..BuildConfig::default()
        };
        match build_bijection(&space, &space, &cover_x, &cover_y, &f, &g, &cfg) {
            Err(Error::Exhausted { .. }) => exhausted += 1,
            Err(_) => failures += 1,
            Ok(cert) => {
                successes += 1;
                if !cert.check_invariants(&cover_x, &cover_y) {
                    failures += 1;
                }
                let report = check_pair_bounds(&cert, &space, &space, TOL).expect("sizes match");
                if !report.is_empty() {
                    failures += 1;
                }
                let lhs = 0.5 * dis_map(&cert.f_tilde, &space, &space).expect("sizes match");
                let rhs = gh_pair(&f, &g, &space, &space).expect("sizes match").gh
                    + cert.eps_x.max(cert.eps_y);
                if lhs > rhs + TOL {
                    failures += 1;
                }
            }
        }
    }

    CriterionOutcome::new(
        "bijection-construction",
        failures == 0,
        format!(
            "100 grid trials: {successes} built, {exhausted} exhausted (legitimate), \
             {failures} bound/invariant failures, {:.1}s",
            start.elapsed().as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 5: surjectivity bounds
// ---------------------------------------------------------------------------

pub fn surjective_bounds() -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE5);
    let mut failures = 0usize;

    // co-distortion dominates the surjectivity defect
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(1..=7);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(m, &mut rng);
        let f = random_mapping(n, m, &mut rng);
        let g = random_mapping(m, n, &mut rng);
        let defect = measure_surjectivity(&f, &x, &y, None)
            .expect("total")
            .delta_eff;
        let bound = one_sided_pair(&f, &g, &x, &y).expect("total").plus;
        if defect > bound + TOL {
            failures += 1;
        }
    }

    // the four quasi-inverse bounds, and identity on the image
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(1..=7);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(m, &mut rng);
        let f = random_mapping(n, m, &mut rng);
        let g = quasi_inverse(&f, &x, &y).expect("total");
        let delta = measure_surjectivity(&f, &x, &y, None)
            .expect("total")
            .delta_eff;
        let os_f = one_sided_map(&f, &x, &y).expect("total");
        let os_g = one_sided_map(&g, &y, &x).expect("total");
        let os_fg = one_sided_pair(&f, &g, &x, &y).expect("total");
        let score = gh_pair(&f, &g, &x, &y).expect("total");
        let bounds_hold = os_g.plus <= os_f.minus + 2.0 * delta + TOL
            && os_g.minus <= os_f.plus + 2.0 * delta + TOL
            && os_fg.plus <= os_f.plus + delta + TOL
            && os_fg.minus <= os_f.minus + delta + TOL
            && score.gh <= 0.5 * os_f.magnitude() + delta + TOL;
        let identity_on_image = f.image().iter().all(|&yj| f.apply(g.apply(yj)) == yj);
        if !bounds_hold || !identity_on_image {
            failures += 1;
        }
    }

    // the retraction bound family
    for _ in 0..100 {
        let n = rng.gen_range(1..=7);
        let m = rng.gen_range(2..=7);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(m, &mut rng);
        let f = random_mapping(n, m, &mut rng);
        let size = rng.gen_range(1..=m);
        let mut members: Vec<usize> = (0..m).collect();
        members.shuffle(&mut rng);
        members.truncate(size);
        let l = Subset::new(m, members).expect("indices in range");
        let f_hat = retract_onto(&f, &x, &y, &l).expect("nonempty target");
        let rho = retraction_displacement(&f, &f_hat, &y);
        let delta = y.hausdorff(&f.image_subset(), &l).expect("nonempty");
        let image_defect = y.hausdorff(&f_hat.image_subset(), &l).expect("nonempty");
        let os_f = one_sided_map(&f, &x, &y).expect("total");
        let os_hat = one_sided_map(&f_hat, &x, &y).expect("total");
        let ok = image_defect <= 2.0 * delta + TOL
            && os_hat.plus <= os_f.plus + 2.0 * rho + TOL
            && os_hat.minus <= os_f.minus + 2.0 * rho + TOL
            && rho <= delta + TOL;
        if !ok {
            failures += 1;
        }

        // enlarging the target never increases the displacement
        let mut larger: Vec<usize> = l.members().to_vec();
        for extra in 0..m {
            if !larger.contains(&extra) && rng.gen::<bool>() {
                larger.push(extra);
            }
        }
        let l2 = Subset::new(m, larger).expect("indices in range");
        let f_hat2 = retract_onto(&f, &x, &y, &l2).expect("nonempty target");
        if retraction_displacement(&f, &f_hat2, &y) > rho + TOL {
            failures += 1;
        }
    }

    CriterionOutcome::new(
        "surjective-bounds",
        failures == 0,
        format!("3 x 100 trials (codistortion, quasi-inverse, retraction), {failures} violations"),
    )
}

// ---------------------------------------------------------------------------
// Criterion 6: end-to-end pipeline guarantee
// ---------------------------------------------------------------------------

pub fn pipeline_guarantee() -> CriterionOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF6);
    let mut successes = 0usize;
    let mut exhausted = 0usize;
    let mut failures = 0usize;

    // near-surjective near-isometries of a grid onto itself
    for trial in 0..50 {
        let (space, neighbors) = if trial % 2 == 0 {
            let n = rng.gen_range(16..=36);
            (grid_1d(n), grid_1d_neighbors(n))
        } else {
            let k = rng.gen_range(4..=6);
            (grid_2d(k), grid_2d_neighbors(k))
        };
        let moves = rng.gen_range(1..=3);
        let f = neighbor_collapses(&neighbors, moves, &mut rng);
        let eps = 1.0 + 1.5 * rng.gen::<f64>();
        match pipeline_to_bijection(&f, &space, &space, eps, None, &BuildConfig::default()) {
            Err(Error::Exhausted { .. }) => exhausted += 1,
            Err(_) => failures += 1,
            Ok(result) => {
                successes += 1;
                if !result.satisfies_guarantee(TOL) {
                    failures += 1;
                }
                let delta = result.rho.max(result.delta_eff);
                if delta > 0.0 && result.satisfies_fixed_delta_bound(delta, TOL) == Some(false) {
                    failures += 1;
                }
            }
        }
    }

    // targeted: a short path mapped near a window of a longer path
    for _ in 0..50 {
        let n = rng.gen_range(8..=16);
        let m = n + rng.gen_range(2..=6);
        let x = grid_1d(n);
        let y = grid_1d(m);
        let offset = rng.gen_range(0..=(m - n));
        let l = Subset::new(m, (offset..offset + n).collect()).expect("in range");
        let image: Vec<usize> = (0..n)
            .map(|i| {
                let base = offset + i;
                if rng.gen_ratio(1, 4) {
                    (base + 1).min(m - 1)
                } else {
                    base
                }
            })
            .collect();
        let f = Mapping::new(n, m, image).expect("in range");
        let eps = 1.0 + 1.5 * rng.gen::<f64>();
        match pipeline_to_bijection(&f, &x, &y, eps, Some(&l), &BuildConfig::default()) {
            Err(Error::Exhausted { .. }) => exhausted += 1,
            Err(_) => failures += 1,
            Ok(result) => {
                successes += 1;
                if !result.satisfies_guarantee(TOL) {
                    failures += 1;
                }
            }
        }
    }

    CriterionOutcome::new(
        "pipeline-guarantee",
        failures == 0,
        format!(
            "100 trials (50 plain + 50 targeted): {successes} built, {exhausted} exhausted, \
             {failures} guarantee violations"
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 7: witness extraction from a known distance
// ---------------------------------------------------------------------------

pub fn witness_extraction() -> CriterionOutcome {
    let config = SearchConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x17);
    let mut failures = 0usize;

    for _ in 0..30 {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(2..=5);
        let x = random_metric_space(n, &mut rng);
        let y = random_metric_space(m, &mut rng);
        let exact = gh_exact(&x, &y, &config).expect("within caps");
        let d = 1.05 * exact.value + 0.01;
        let f = match extract_witness(&x, &y, d, &config) {
            Ok(f) => f,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let GhWitness::Correspondence(r) = &exact.witness else {
            unreachable!()
        };
        let (f_check, g) = r.to_mapping_pair();
        let defect = measure_surjectivity(&f, &x, &y, None)
            .expect("total")
            .delta_eff;
        let partner_bound = one_sided_pair(&f, &g, &x, &y).expect("total").plus;
        let ok = f == f_check
            && dis_map(&f, &x, &y).expect("total") <= 2.0 * d + TOL
            && defect <= partner_bound + TOL;
        if !ok {
            failures += 1;
        }
    }

    CriterionOutcome::new(
        "witness-extraction",
        failures == 0,
        format!("30 pairs at d = 1.05*v + 0.01, {failures} failures"),
    )
}

// ---------------------------------------------------------------------------
// Criterion 8: engineering targets
// ---------------------------------------------------------------------------

pub fn engineering_targets() -> CriterionOutcome {
    let config = SearchConfig::default();
    let parallel = SearchConfig {
        parallel: true,
        ..SearchConfig::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x28);
    let mut failures = Vec::new();

    let x6 = random_metric_space(6, &mut rng);
    let y6 = random_metric_space(6, &mut rng);
    let t = Instant::now();
    let exact_a = gh_exact(&x6, &y6, &config).expect("within caps");
    let exact_secs = t.elapsed().as_secs_f64();
    if exact_secs >= 60.0 {
        failures.push(format!("gh_exact n=6 took {exact_secs:.1}s"));
    }

    let x10 = random_metric_space(10, &mut rng);
    let y10 = random_metric_space(10, &mut rng);
    let t = Instant::now();
    let perm_a = gh_class(&x10, &y10, ClassTag::InversePair, false, &config).expect("within cap");
    let perm_secs = t.elapsed().as_secs_f64();
    if perm_secs >= 10.0 {
        failures.push(format!("inversePair n=10 took {perm_secs:.1}s"));
    }

    // determinism: repeated runs and 1-thread vs multi-thread agree on the
    // value, the witness, and the node count
    let exact_b = gh_exact(&x6, &y6, &config).expect("within caps");
    let exact_par = gh_exact(&x6, &y6, &parallel).expect("within caps");
    if exact_a != exact_b || exact_a != exact_par {
        failures.push("gh_exact not deterministic across runs/threads".into());
    }
    let perm_b = gh_class(&x10, &y10, ClassTag::InversePair, false, &config).expect("within cap");
    let perm_par =
        gh_class(&x10, &y10, ClassTag::InversePair, false, &parallel).expect("within cap");
    if perm_a != perm_b || perm_a != perm_par {
        failures.push("inversePair search not deterministic across runs/threads".into());
    }

    CriterionOutcome::new(
        "engineering-targets",
        failures.is_empty(),
        if failures.is_empty() {
            format!(
                "gh_exact n=6 in {exact_secs:.2}s, inversePair n=10 in {perm_secs:.2}s, \
                 deterministic across reruns and thread counts"
            )
        } else {
            failures.join("; ")
        },
    )
}
