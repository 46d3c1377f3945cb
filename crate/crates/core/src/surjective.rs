//! Approximation pipeline for nearly-surjective maps: measure how far a map
//! is from covering its target, build a quasi-inverse, retract onto a subset,
//! and run the end-to-end construction that turns a near-surjective
//! near-isometry into a bijection with a quantified distortion bound.
//!
//! The strict `< δ` conditions of the source inequalities are replaced
//! throughout by the attained quantities (finite minima are attained): the
//! surjectivity defect `delta_eff = d_H(f(X), target)` and the retraction
//! displacement `rho = max |f(x) f̂(x)|`. Every bound is asserted in this
//! attained form, which is tighter than any admissible `δ`.

use crate::bijection::{build_bijection, BijectionCertificate, BuildConfig};
use crate::distortion::{dis_map, gh_pair, one_sided_pair};
use crate::error::{Error, Result};
use crate::map::Mapping;
use crate::scalar::Scalar;
use crate::search::{gh_exact, GhWitness, SearchConfig};
use crate::space::{MetricSpace, Subset};

/// How δ-surjective a map is, in attained form.
#[derive(Debug, Clone, PartialEq)]
pub struct SurjectivityReport<T> {
    /// `d_H(f(X), target)`: zero iff the map covers the target, and the map
    /// is δ-surjective onto the target exactly for every `δ > delta_eff`.
    pub delta_eff: T,
    /// Whether a proper target subset was supplied (as opposed to the whole
    /// codomain).
    pub target_is_subset: bool,
    /// The image of the map as a subset of the codomain.
    pub image: Subset,
}

/// Measures the surjectivity defect of `f` toward `target` (the whole
/// codomain when `None`).
pub fn measure_surjectivity<T: Scalar>(
    f: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    target: Option<&Subset>,
) -> Result<SurjectivityReport<T>> {
    check_total(f, x, y)?;
    if let Some(t) = target {
        if t.is_empty() {
            return Err(Error::EmptySubset);
        }
    }
    let image = f.image_subset();
    let full = Subset::full(y.size());
    let t = target.unwrap_or(&full);
    Ok(SurjectivityReport {
        delta_eff: y.hausdorff(&image, t)?,
        target_is_subset: target.is_some(),
        image,
    })
}

/// Builds the quasi-inverse of `f`: on the image, the least-index preimage;
/// off the image, the value at the nearest image point (ties to the least
/// index). Its composition with `f` is the identity on the image, and its
/// one-sided distortions are controlled by those of `f` plus the
/// surjectivity defect.
pub fn quasi_inverse<T: Scalar>(
    f: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<Mapping> {
    check_total(f, x, y)?;
    let mut least_preimage: Vec<Option<usize>> = vec![None; y.size()];
    for (i, &j) in f.image().iter().enumerate() {
        if least_preimage[j].is_none() {
            least_preimage[j] = Some(i);
        }
    }
    let image = f.image_subset();
    let g_image: Vec<usize> = (0..y.size())
        .map(|j| match least_preimage[j] {
            Some(i) => Ok(i),
            None => {
                let nearest = y.nearest_in_subset(j, &image)?;
                Ok(least_preimage[nearest].expect("nearest point is in the image"))
            }
        })
        .collect::<Result<_>>()?;
    Mapping::new(y.size(), x.size(), g_image)
}

/// Returns `d_(f,g)^+`, which dominates `d_H(f(X), Y)`: any map with a
/// partner of small positive co-distortion is nearly surjective.
pub fn surjectivity_from_codistortion<T: Scalar>(
    f: &Mapping,
    g: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<T> {
    let os = one_sided_pair(f, g, x, y)?;
    debug_assert!({
        let defect = measure_surjectivity(f, x, y, None)?.delta_eff;
        defect <= os.plus + T::default_tolerance()
    });
    Ok(os.plus)
}

/// Extracts a `d`-surjective `(2d)`-isometry from any pair of spaces with
/// `d_GH(X, Y) < d`, by converting the optimal correspondence to a mapping
/// pair by least-index selection and returning its forward map.
pub fn extract_witness<T: Scalar>(
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    d: T,
    config: &SearchConfig,
) -> Result<Mapping> {
    let result = gh_exact(x, y, config)?;
    if result.value >= d || d.is_nan() {
        return Err(Error::WitnessNotFound);
    }
    let GhWitness::Correspondence(r) = &result.witness else {
        unreachable!("gh_exact returns a correspondence witness");
    };
    let (f, g) = r.to_mapping_pair();
    debug_assert!(gh_pair(&f, &g, x, y)?.gh <= result.value + T::default_tolerance());
    Ok(f)
}

/// Retraction onto a subset: `f̂(x)` is the nearest point of `L` to `f(x)`
/// (ties to the least index). The displacement `max |f(x) f̂(x)|` is exactly
/// `max dist(f(x), L)`, which never exceeds `d_H(f(X), L)`.
pub fn retract_onto<T: Scalar>(
    f: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    l: &Subset,
) -> Result<Mapping> {
    check_total(f, x, y)?;
    if l.is_empty() {
        return Err(Error::EmptySubset);
    }
    let image: Vec<usize> = f
        .image()
        .iter()
        .map(|&j| y.nearest_in_subset(j, l))
        .collect::<Result<_>>()?;
    Mapping::new(x.size(), y.size(), image)
}

/// Largest displacement between a map and its retraction.
pub fn retraction_displacement<T: Scalar>(f: &Mapping, f_hat: &Mapping, y: &MetricSpace<T>) -> T {
    f.image()
        .iter()
        .zip(f_hat.image())
        .fold(T::zero(), |acc, (&a, &b)| acc.max(y.dist(a, b)))
}

/// Outcome of [`pipeline_to_bijection`].
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineResult<T> {
    /// The constructed bijection with its classification. With a target, it
    /// maps `X` onto the subspace induced on the target, indexed by position
    /// within the target's member list.
    pub certificate: BijectionCertificate<T>,
    /// Distortion of the input map in the original codomain.
    pub dis_f: T,
    /// Surjectivity defect of the map handed to the bijection builder,
    /// toward its (possibly retracted) codomain.
    pub delta_eff: T,
    /// Retraction displacement; zero when no target was given.
    pub rho: T,
    /// Largest cover member diameter actually used, the slack the
    /// construction adds on top of the map quality.
    pub eps: T,
    /// Distortion of the constructed bijection.
    pub dis_tilde: T,
    /// `dis_f + 2·rho + 2·delta_eff + 2·eps`.
    pub guarantee_bound: T,
    pub target: Option<Subset>,
}

impl<T: Scalar> PipelineResult<T> {
    pub fn satisfies_guarantee(&self, tol: T) -> bool {
        self.dis_tilde <= self.guarantee_bound + tol
    }

    /// The looser fixed-δ form of the guarantee: `dis_f + 2δ + 2·eps`
    /// without a target and `dis_f + 6δ + 2·eps` with one. Valid only for a
    /// `δ` dominating both attained slacks; returns `None` for smaller `δ`.
    pub fn satisfies_fixed_delta_bound(&self, delta: T, tol: T) -> Option<bool> {
        if delta < self.rho.max(self.delta_eff) {
            return None;
        }
        let factor = if self.target.is_some() { 6.0 } else { 2.0 };
        let two = T::from_f64(2.0).unwrap();
        let bound = self.dis_f + T::from_f64(factor).unwrap() * delta + two * self.eps;
        Some(self.dis_tilde <= bound + tol)
    }
}

/// End-to-end construction: quasi-inverse, ball covers at radius `eps`, and
/// the bijection builder. With a target `L`, the map is first retracted onto
/// `L` and the construction runs into the induced subspace, adding the
/// retraction displacement to the guarantee.
pub fn pipeline_to_bijection<T: Scalar>(
    f: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
    eps: T,
    target: Option<&Subset>,
    build: &BuildConfig,
) -> Result<PipelineResult<T>> {
    check_total(f, x, y)?;
    if eps <= T::zero() || eps.is_nan() {
        return Err(Error::NonPositiveEps);
    }
    let dis_f = dis_map(f, x, y)?;

    let (work_f, work_y, rho, target_owned) = match target {
        None => {
            if x.size() != y.size() {
                return Err(Error::SizeMismatch {
                    left: x.size(),
                    right: y.size(),
                });
            }
            (f.clone(), y.clone(), T::zero(), None)
        }
        Some(l) => {
            if l.is_empty() {
                return Err(Error::EmptySubset);
            }
            if x.size() != l.len() {
                return Err(Error::SizeMismatch {
                    left: x.size(),
                    right: l.len(),
                });
            }
            let f_hat = retract_onto(f, x, y, l)?;
            let rho = retraction_displacement(f, &f_hat, y);
            // reindex into the induced subspace on L
            let position: std::collections::HashMap<usize, usize> = l
                .members()
                .iter()
                .copied()
                .enumerate()
                .map(|(p, j)| (j, p))
                .collect();
            let image = f_hat.image().iter().map(|j| position[j]).collect();
            let f_l = Mapping::new(x.size(), l.len(), image)?;
            (f_l, y.induced(l)?, rho, Some(l.clone()))
        }
    };

    let delta_eff = measure_surjectivity(&work_f, x, &work_y, None)?.delta_eff;
    let g = quasi_inverse(&work_f, x, &work_y)?;
    let cover_x = x.ball_cover(eps)?;
    let cover_y = work_y.ball_cover(eps)?;
    let certificate = build_bijection(x, &work_y, &cover_x, &cover_y, &work_f, &g, build)?;
    let dis_tilde = dis_map(&certificate.f_tilde, x, &work_y)?;
    let eps_used = certificate.eps_x.max(certificate.eps_y);
    let two = T::from_f64(2.0).unwrap();
    let guarantee_bound = dis_f + two * rho + two * delta_eff + two * eps_used;
    Ok(PipelineResult {
        certificate,
        dis_f,
        delta_eff,
        rho,
        eps: eps_used,
        dis_tilde,
        guarantee_bound,
        target: target_owned,
    })
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distortion::one_sided_map;

    #[test]
    fn surjectivity_of_a_surjective_map_is_zero() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let f = Mapping::identity(2);
        let report = measure_surjectivity(&f, &x, &x, None).unwrap();
        assert_eq!(report.delta_eff, 0.0);
        assert!(!report.target_is_subset);
    }

    #[test]
    fn surjectivity_defect_of_a_constant_map() {
        let x = MetricSpace::line(&[0.0, 3.0]);
        let f = Mapping::constant(2, 2, 0).unwrap();
        let report = measure_surjectivity(&f, &x, &x, None).unwrap();
        assert_eq!(report.delta_eff, 3.0);
    }

    #[test]
    fn surjectivity_defect_skipping_the_middle_point() {
        // image {0, 2} inside the 3-point line 0, 1, 2
        let x = MetricSpace::line(&[0.0, 2.0]);
        let y = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let f = Mapping::new(2, 3, vec![0, 2]).unwrap();
        let report = measure_surjectivity(&f, &x, &y, None).unwrap();
        assert_eq!(report.delta_eff, 1.0);
    }

    #[test]
    fn quasi_inverse_of_a_bijection_is_the_inverse() {
        let x = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let f = Mapping::new(3, 3, vec![2, 0, 1]).unwrap();
        let g = quasi_inverse(&f, &x, &x).unwrap();
        assert_eq!(g, f.inverse().unwrap());
    }

    #[test]
    fn quasi_inverse_of_the_middle_gap_inclusion() {
        // f includes {0, 2} into the line 0, 1, 2; the uncovered middle point
        // is equidistant from both image points and resolves to index 0.
        let x = MetricSpace::line(&[0.0, 2.0]);
        let y = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let f = Mapping::new(2, 3, vec![0, 2]).unwrap();
        let g = quasi_inverse(&f, &x, &y).unwrap();
        assert_eq!(g.image(), &[0, 0, 1]);

        // the four quasi-inverse bounds with delta_eff = 1, by hand
        let os_f = one_sided_map(&f, &x, &y).unwrap();
        let os_g = one_sided_map(&g, &y, &x).unwrap();
        let os_fg = one_sided_pair(&f, &g, &x, &y).unwrap();
        let delta = measure_surjectivity(&f, &x, &y, None).unwrap().delta_eff;
        assert_eq!(delta, 1.0);
        assert!(os_g.plus <= os_f.minus + 2.0 * delta);
        assert!(os_g.minus <= os_f.plus + 2.0 * delta);
        assert!(os_fg.plus <= os_f.plus + delta);
        assert!(os_fg.minus <= os_f.minus + delta);
        assert_eq!((os_g.plus, os_g.minus), (1.0, 1.0));
        assert_eq!((os_fg.plus, os_fg.minus), (1.0, 1.0));
    }

    #[test]
    fn codistortion_bounds_the_surjectivity_defect() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let y = MetricSpace::line(&[0.0, 3.0]);
        let f = Mapping::identity(2);
        let g = Mapping::identity(2);
        let bound = surjectivity_from_codistortion(&f, &g, &x, &y).unwrap();
        assert_eq!(bound, 2.0);
        assert!(measure_surjectivity(&f, &x, &y, None).unwrap().delta_eff <= bound);
    }

    #[test]
    fn extract_witness_on_identical_spaces_is_the_identity() {
        let x = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let f = extract_witness(&x, &x, 0.1, &SearchConfig::default()).unwrap();
        assert_eq!(f, Mapping::identity(3));
    }

    #[test]
    fn extract_witness_from_stretched_two_point_spaces() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let y = MetricSpace::line(&[0.0, 3.0]);
        let f = extract_witness(&x, &y, 1.1, &SearchConfig::default()).unwrap();
        assert_eq!(dis_map(&f, &x, &y).unwrap(), 2.0);
        let defect = measure_surjectivity(&f, &x, &y, None).unwrap().delta_eff;
        assert_eq!(defect, 0.0);
    }

    #[test]
    fn extract_witness_refuses_an_insufficient_budget() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let y = MetricSpace::line(&[0.0, 3.0]);
        // d_GH = 1 here, so a budget of 1 is not strictly above it
        let err = extract_witness(&x, &y, 1.0, &SearchConfig::default()).unwrap_err();
        assert_eq!(err, Error::WitnessNotFound);
    }

    #[test]
    fn retraction_is_identity_when_image_is_inside() {
        let y = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let x = MetricSpace::line(&[0.0, 2.0]);
        let l = Subset::new(3, vec![0, 2]).unwrap();
        let f = Mapping::new(2, 3, vec![0, 2]).unwrap();
        let f_hat = retract_onto(&f, &x, &y, &l).unwrap();
        assert_eq!(f_hat, f);
        assert_eq!(retraction_displacement(&f, &f_hat, &y), 0.0);
    }

    #[test]
    fn retraction_resolves_ties_to_least_index() {
        let y = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let x = MetricSpace::line(&[0.0]);
        let l = Subset::new(3, vec![0, 2]).unwrap();
        let f = Mapping::new(1, 3, vec![1]).unwrap();
        let f_hat = retract_onto(&f, &x, &y, &l).unwrap();
        assert_eq!(f_hat.image(), &[0]);
        assert_eq!(retraction_displacement(&f, &f_hat, &y), 1.0);
    }

    #[test]
    fn pipeline_on_a_bijective_isometry_has_zero_distortion() {
        // f sends the points at 0, 1, 3 to the points at 3, 2, 0: distances
        // 1, 3, 2 are carried to 1, 3, 2, so f is a bijective isometry.
        let x = MetricSpace::line(&[0.0, 1.0, 3.0]);
        let f = Mapping::new(3, 3, vec![2, 0, 1]).unwrap();
        let x_shuffled = MetricSpace::line(&[2.0, 0.0, 3.0]);
        let result =
            pipeline_to_bijection(&f, &x, &x_shuffled, 0.25, None, &BuildConfig::default())
                .unwrap();
        assert_eq!(result.dis_f, 0.0);
        assert_eq!(result.dis_tilde, 0.0);
        assert!(result.satisfies_guarantee(1e-9));
    }

    #[test]
    fn pipeline_rejects_size_mismatch_without_target() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let y = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let f = Mapping::new(2, 3, vec![0, 1]).unwrap();
        let err =
            pipeline_to_bijection(&f, &x, &y, 0.5, None, &BuildConfig::default()).unwrap_err();
        assert!(matches!(err, Error::SizeMismatch { .. }));
    }

    #[test]
    fn targeted_pipeline_builds_into_the_subspace() {
        let x = MetricSpace::line(&[0.0, 1.0]);
        let y = MetricSpace::line(&[0.0, 1.0, 10.0]);
        let l = Subset::new(3, vec![0, 1]).unwrap();
        let f = Mapping::new(2, 3, vec![0, 1]).unwrap();
        let result =
            pipeline_to_bijection(&f, &x, &y, 0.5, Some(&l), &BuildConfig::default()).unwrap();
        assert_eq!(result.rho, 0.0);
        assert_eq!(result.dis_tilde, 0.0);
        assert!(result.satisfies_guarantee(1e-9));
        assert_eq!(result.certificate.f_tilde.image(), &[0, 1]);
    }
}
