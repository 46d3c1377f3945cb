//! Constructs a bijection approximating a pair of mappings.
//!
//! Given `f: X -> Y`, `g: Y -> X` and covers of both spaces, the builder
//! processes the points of X and Y alternately, maintaining a pair of partial
//! injections that are mutually inverse wherever both are defined. A point
//! whose partner is not yet forced picks the least eligible element from the
//! cover member selected for its mapped image; a point whose partner is
//! already pinned down by the other side takes that partner. The result, when
//! the choices never run dry, is a bijection `f̃` such that every `x` either
//! has `f̃(x)` in a common cover member with `f(x)` (class I) or has
//! `g(f̃(x))` in a common cover member with `x` (class II).
//!
//! On finite spaces a choice set can be empty (the infinite-cardinality
//! premise that guarantees eligibility has no finite counterpart), so the
//! builder backtracks over earlier choices within a node budget and reports
//! `Exhausted` when the budget is spent or every alternative fails.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cover::Cover;
use crate::distortion::{dis_map, gh_pair, one_sided_map, one_sided_pair};
use crate::error::{Error, Result, Side};
use crate::map::Mapping;
use crate::scalar::Scalar;
use crate::space::MetricSpace;

/// One executed construction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    /// Position in the alternating schedule (0-based, length `2n`).
    pub step: usize,
    /// Whether the step assigned a target for an X point or a preimage for a
    /// Y point.
    pub side: Side,
    /// The point handled.
    pub point: usize,
    /// True when the partner was forced by the other side's earlier choice.
    pub forced: bool,
    /// The partner assigned.
    pub partner: usize,
}

/// A bijection produced by the construction, with everything needed to check
/// the per-pair distortion bounds afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct BijectionCertificate<T> {
    pub f_tilde: Mapping,
    pub g_tilde: Mapping,
    /// Per point of X: `f̃(x)` and `f(x)` share a cover member of Y.
    pub class_i: Vec<bool>,
    /// Per point of X: `g(f̃(x))` and `x` share a cover member of X.
    pub class_ii: Vec<bool>,
    pub eps_x: T,
    pub eps_y: T,
    pub source_f: Mapping,
    pub source_g: Mapping,
    pub trace: Vec<TraceStep>,
}

impl<T: Scalar> BijectionCertificate<T> {
    /// Re-derives every certificate invariant from scratch: mutual inverses,
    /// class coverage, and both class-flag definitions against the covers.
    pub fn check_invariants(&self, cover_x: &Cover<T>, cover_y: &Cover<T>) -> bool {
        let n = self.f_tilde.domain_size();
        let inverse_ok = (0..n).all(|x| self.g_tilde.apply(self.f_tilde.apply(x)) == x)
            && (0..n).all(|y| self.f_tilde.apply(self.g_tilde.apply(y)) == y);
        let coverage_ok = (0..n).all(|x| self.class_i[x] || self.class_ii[x]);
        let flags_ok = (0..n).all(|x| {
            let i_holds = cover_y.share_member(self.f_tilde.apply(x), self.source_f.apply(x));
            let ii_holds = cover_x.share_member(self.source_g.apply(self.f_tilde.apply(x)), x);
            self.class_i[x] == i_holds && self.class_ii[x] == ii_holds
        });
        inverse_ok && coverage_ok && flags_ok
    }
}

/// Construction limits and the enumeration order.
#[derive(Debug, Clone)]
pub struct BuildConfig {
    /// Backtracking budget: total candidate assignments tried.
    pub node_budget: u64,
    /// `None` enumerates points in index order; a seed shuffles both
    /// enumerations reproducibly.
    pub seed: Option<u64>,
}

impl Default for BuildConfig {
    fn default() -> Self {
        Self {
            node_budget: 100_000,
            seed: None,
        }
    }
}

struct Builder<'a, T> {
    cover_x: &'a Cover<T>,
    cover_y: &'a Cover<T>,
    f: &'a Mapping,
    g: &'a Mapping,
    order_x: Vec<usize>,
    order_y: Vec<usize>,
    f_val: Vec<Option<usize>>,
    g_val: Vec<Option<usize>>,
    f_pre: Vec<Option<usize>>,
    g_pre: Vec<Option<usize>>,
    trace: Vec<TraceStep>,
    nodes: u64,
    budget: u64,
    budget_hit: bool,
    deepest_failure: (usize, Side),
}

impl<'a, T: Scalar> Builder<'a, T> {
    fn side_of(step: usize) -> Side {
        if step.is_multiple_of(2) {
            Side::Domain
        } else {
            Side::Codomain
        }
    }

    fn candidates(&self, step: usize) -> (usize, bool, Vec<usize>) {
        let turn = step / 2;
        if Self::side_of(step) == Side::Domain {
            let x = self.order_x[turn];
            if let Some(y) = self.g_pre[x] {
                return (x, true, vec![y]);
            }
            let member = self.cover_y.selected(self.f.apply(x));
            let eligible = member
                .members()
                .iter()
                .copied()
                .filter(|&y| self.g_val[y].is_none() && self.f_pre[y].is_none())
                .collect();
            (x, false, eligible)
        } else {
            let y = self.order_y[turn];
            if let Some(x) = self.f_pre[y] {
                return (y, true, vec![x]);
            }
            let member = self.cover_x.selected(self.g.apply(y));
            let eligible = member
                .members()
                .iter()
                .copied()
                .filter(|&x| self.f_val[x].is_none() && self.g_pre[x].is_none())
                .collect();
            (y, false, eligible)
        }
    }

    fn apply(&mut self, step: usize, point: usize, partner: usize, forced: bool) {
        let side = Self::side_of(step);
        match side {
            Side::Domain => {
                debug_assert!(self.f_val[point].is_none() && self.f_pre[partner].is_none());
                self.f_val[point] = Some(partner);
                self.f_pre[partner] = Some(point);
            }
            Side::Codomain => {
                debug_assert!(self.g_val[point].is_none() && self.g_pre[partner].is_none());
                self.g_val[point] = Some(partner);
                self.g_pre[partner] = Some(point);
            }
        }
        self.trace.push(TraceStep {
            step,
            side,
            point,
            forced,
            partner,
        });
    }

    fn undo(&mut self, step: usize, point: usize, partner: usize) {
        match Self::side_of(step) {
            Side::Domain => {
                self.f_val[point] = None;
                self.f_pre[partner] = None;
            }
            Side::Codomain => {
                self.g_val[point] = None;
                self.g_pre[partner] = None;
            }
        }
        self.trace.pop();
    }

    fn note_failure(&mut self, step: usize) {
        if step >= self.deepest_failure.0 {
            self.deepest_failure = (step, Self::side_of(step));
        }
    }

    fn run(&mut self, step: usize) -> bool {
        if step == self.order_x.len() * 2 {
            return true;
        }
        let (point, forced, candidates) = self.candidates(step);
        if candidates.is_empty() {
            self.note_failure(step);
            return false;
        }
        for partner in candidates {
            if self.nodes >= self.budget {
                self.budget_hit = true;
                return false;
            }
            self.nodes += 1;
            self.apply(step, point, partner, forced);
            if self.run(step + 1) {
                return true;
            }
            self.undo(step, point, partner);
            if self.budget_hit {
                return false;
            }
        }
        self.note_failure(step);
        false
    }
}

fn check_total<T: Scalar>(f: &Mapping, dom: &MetricSpace<T>, cod: &MetricSpace<T>) -> Result<()> {
    if f.domain_size() != dom.size() {
        return Err(Error::SizeMismatch {
            left: f.domain_size(),
            right: dom.size(),
        });
    }
    if f.codomain_size() != cod.size() {
        return Err(Error::SizeMismatch {
            left: f.codomain_size(),
            right: cod.size(),
        });
    }
    Ok(())
}

/// Runs the construction. Requires `|X| = |Y|`, valid covers of each space,
/// and total `f: X -> Y`, `g: Y -> X`.
pub fn build_bijection<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    cover_x: &Cover<T>,
    cover_y: &Cover<T>,
    f: &Mapping,
    g: &Mapping,
    config: &BuildConfig,
) -> Result<BijectionCertificate<T>> {
    let n = x.size();
    if n != y.size() {
        return Err(Error::SizeMismatch {
            left: n,
            right: y.size(),
        });
    }
    check_total(f, x, y)?;
    check_total(g, y, x)?;
    if cover_x.space_size() != n {
        return Err(Error::SizeMismatch {
            left: cover_x.space_size(),
            right: n,
        });
    }
    if cover_y.space_size() != n {
        return Err(Error::SizeMismatch {
            left: cover_y.space_size(),
            right: n,
        });
    }

    let mut order_x: Vec<usize> = (0..n).collect();
    let mut order_y: Vec<usize> = (0..n).collect();
    if let Some(seed) = config.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order_x.shuffle(&mut rng);
        order_y.shuffle(&mut rng);
    }

    let mut builder = Builder {
        cover_x,
        cover_y,
        f,
        g,
        order_x,
        order_y,
        f_val: vec![None; n],
        g_val: vec![None; n],
        f_pre: vec![None; n],
        g_pre: vec![None; n],
        trace: Vec::with_capacity(2 * n),
        nodes: 0,
        budget: config.node_budget,
        budget_hit: false,
        deepest_failure: (0, Side::Domain),
    };
    if !builder.run(0) {
        let (step, side) = builder.deepest_failure;
        return Err(Error::Exhausted {
            step,
            side,
            nodes: builder.nodes,
        });
    }

    let f_tilde = Mapping::new(n, n, builder.f_val.iter().map(|v| v.unwrap()).collect())?;
    let g_tilde = Mapping::new(n, n, builder.g_val.iter().map(|v| v.unwrap()).collect())?;
    debug_assert!((0..n).all(|p| g_tilde.apply(f_tilde.apply(p)) == p));

    let class_i: Vec<bool> = (0..n)
        .map(|p| cover_y.share_member(f_tilde.apply(p), f.apply(p)))
        .collect();
    let class_ii: Vec<bool> = (0..n)
        .map(|p| cover_x.share_member(g.apply(f_tilde.apply(p)), p))
        .collect();
    assert!(
        (0..n).all(|p| class_i[p] || class_ii[p]),
        "every point must satisfy one of the two cover conditions"
    );

    Ok(BijectionCertificate {
        f_tilde,
        g_tilde,
        class_i,
        class_ii,
        eps_x: cover_x.max_diam(),
        eps_y: cover_y.max_diam(),
        source_f: f.clone(),
        source_g: g.clone(),
        trace: builder.trace,
    })
}

/// Which classification a point was given for the case analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    I,
    II,
}

/// A violated inequality found by [`check_pair_bounds`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundViolation<T> {
    /// A per-pair case inequality: `delta = |f̃(x)f̃(x')| - |xx'|` left the
    /// admissible interval for the classes of `x` and `x'`.
    PairCase {
        classes: (PointClass, PointClass),
        x: usize,
        x2: usize,
        delta: T,
        lower: T,
        upper: T,
    },
    /// Per-point displacement `|f(x) f̃(x)|` above its class bound.
    Displacement {
        class: PointClass,
        x: usize,
        observed: T,
        allowed: T,
    },
    /// The aggregate bound `½ dis f̃ <= d_GH(f, g) + max(eps_x, eps_y)`.
    Summary { observed: T, allowed: T },
}

/// Outcome of the bound check; empty iff every inequality holds.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub violations: Vec<BoundViolation<T>>,
}

impl<T> BoundReport<T> {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verifies, within `tol`, every case inequality, displacement bound, and the
/// aggregate distortion bound for a certificate. Points with both flags set
/// are classified as class I.
pub fn check_pair_bounds<T: Scalar>(
    cert: &BijectionCertificate<T>,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    tol: T,
) -> Result<BoundReport<T>> {
    let n = x.size();
    check_total(&cert.f_tilde, x, y)?;
    check_total(&cert.source_f, x, y)?;
    check_total(&cert.source_g, y, x)?;

    let f = &cert.source_f;
    let g = &cert.source_g;
    let os_f = one_sided_map(f, x, y)?;
    let os_g = one_sided_map(g, y, x)?;
    let os_fg = one_sided_pair(f, g, x, y)?;
    let (eps_x, eps_y) = (cert.eps_x, cert.eps_y);
    let two = T::from_f64(2.0).unwrap();
    let half = T::from_f64(0.5).unwrap();

    let class = |p: usize| {
        if cert.class_i[p] {
            PointClass::I
        } else {
            PointClass::II
        }
    };

    let mut violations = Vec::new();
    for i in 0..n {
        for i2 in (i + 1)..n {
            let delta = y.dist(cert.f_tilde.apply(i), cert.f_tilde.apply(i2)) - x.dist(i, i2);
            let (lo, hi, classes) = match (class(i), class(i2)) {
                (PointClass::I, PointClass::I) => (
                    -(os_f.minus + two * eps_y),
                    os_f.plus + two * eps_y,
                    (PointClass::I, PointClass::I),
                ),
                (PointClass::II, PointClass::II) => (
                    -(os_g.plus + two * eps_x),
                    os_g.minus + two * eps_x,
                    (PointClass::II, PointClass::II),
                ),
                _ => (
                    -(os_fg.minus + eps_x + eps_y),
                    os_fg.plus + eps_x + eps_y,
                    (PointClass::I, PointClass::II),
                ),
            };
            if delta < lo - tol || delta > hi + tol {
                violations.push(BoundViolation::PairCase {
                    classes,
                    x: i,
                    x2: i2,
                    delta,
                    lower: lo,
                    upper: hi,
                });
            }
        }
    }

    for i in 0..n {
        let observed = y.dist(f.apply(i), cert.f_tilde.apply(i));
        let (allowed, cls) = match class(i) {
            PointClass::I => (eps_y, PointClass::I),
            PointClass::II => (os_fg.plus + eps_x, PointClass::II),
        };
        if observed > allowed + tol {
            violations.push(BoundViolation::Displacement {
                class: cls,
                x: i,
                observed,
                allowed,
            });
        }
    }

    let observed = half * dis_map(&cert.f_tilde, x, y)?;
    let allowed = gh_pair(f, g, x, y)?.gh + eps_x.max(eps_y);
    if observed > allowed + tol {
        violations.push(BoundViolation::Summary { observed, allowed });
    }

    Ok(BoundReport { violations })
}
