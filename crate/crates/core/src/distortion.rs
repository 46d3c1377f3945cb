//! Distortion and co-distortion functionals.
//!
//! Everything here is an exact maximum over finite index sets; no tolerance
//! enters the computation. For a relation `R` the distortion is
//! `max ||xx'| - |yy'||` over pairs of related pairs; for two relations the
//! co-distortion takes one pair from each. One-sided variants split the
//! absolute value into the positive and negative deviations and are reported
//! as raw maxima over all ordered pairs (the diagonal contributes 0, so the
//! map-based variants are always nonnegative).

use crate::error::{Error, Result};
use crate::map::{Correspondence, Mapping};
use crate::scalar::Scalar;
use crate::space::MetricSpace;

/// The two one-sided deviation maxima of a map or a pair of maps.
///
/// For `f`: `minus = max(|xx'| - |f(x)f(x')|)`, `plus = max(|f(x)f(x')| - |xx'|)`.
/// For a pair `(f, g)`: `minus = max(|x g(y)| - |f(x) y|)` and symmetrically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSided<T> {
    pub minus: T,
    pub plus: T,
}

impl<T: Scalar> OneSided<T> {
    pub fn magnitude(&self) -> T {
        self.minus.max(self.plus)
    }
}

/// All pair functionals of one mapping pair `(f, g)`.
///
/// `gh = ½·max(dis f, codis(f,g), dis g)` and `mgh = ½·max(dis f, dis g)`,
/// so `mgh <= gh` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore<T> {
    pub dis_f: T,
    pub dis_g: T,
    pub codis: T,
    pub gh: T,
    pub mgh: T,
}

fn check_map<T: Scalar>(f: &Mapping, dom: &MetricSpace<T>, cod: &MetricSpace<T>) -> Result<()> {
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

fn check_pairs<T: Scalar>(
    pairs: &[(usize, usize)],
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::EmptyRelation);
    }
    for &(i, j) in pairs {
        if i >= x.size() {
            return Err(Error::IndexOutOfRange {
                index: i,
                size: x.size(),
            });
        }
        if j >= y.size() {
            return Err(Error::IndexOutOfRange {
                index: j,
                size: y.size(),
            });
        }
    }
    Ok(())
}

/// Distortion of a nonempty pair list `r ⊆ X × Y`.
pub fn dis_pairs<T: Scalar>(
    pairs: &[(usize, usize)],
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<T> {
    check_pairs(pairs, x, y)?;
    let mut best = T::zero();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for &(i2, j2) in &pairs[a..] {
            best = best.max((x.dist(i, i2) - y.dist(j, j2)).abs());
        }
    }
    Ok(best)
}

/// Distortion of a correspondence.
pub fn dis_rel<T: Scalar>(r: &Correspondence, x: &MetricSpace<T>, y: &MetricSpace<T>) -> Result<T> {
    dis_pairs(r.pairs(), x, y)
}

/// Distortion of a total map, `dis f = dis(gr f)`.
pub fn dis_map<T: Scalar>(f: &Mapping, x: &MetricSpace<T>, y: &MetricSpace<T>) -> Result<T> {
    check_map(f, x, y)?;
    let mut best = T::zero();
    for i in 0..x.size() {
        for i2 in (i + 1)..x.size() {
            best = best.max((x.dist(i, i2) - y.dist(f.apply(i), f.apply(i2))).abs());
        }
    }
    Ok(best)
}

/// Co-distortion of two nonempty pair lists: one pair from each.
pub fn codis_pairs<T: Scalar>(
    r: &[(usize, usize)],
    r2: &[(usize, usize)],
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<T> {
    check_pairs(r, x, y)?;
    check_pairs(r2, x, y)?;
    let mut best = T::zero();
    let mut first = true;
    for &(i, j) in r {
        for &(i2, j2) in r2 {
            let v = (x.dist(i, i2) - y.dist(j, j2)).abs();
            best = if first { v } else { best.max(v) };
            first = false;
        }
    }
    Ok(best)
}

/// Co-distortion of two relations given as correspondences or raw pair lists.
pub fn codis_rels<T: Scalar>(
    r: &Correspondence,
    r2: &Correspondence,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<T> {
    codis_pairs(r.pairs(), r2.pairs(), x, y)
}

/// One-sided distortions of a map over all ordered point pairs.
pub fn one_sided_map<T: Scalar>(
    f: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<OneSided<T>> {
    check_map(f, x, y)?;
    let mut minus = T::zero();
    let mut plus = T::zero();
    for i in 0..x.size() {
        for i2 in 0..x.size() {
            let diff = x.dist(i, i2) - y.dist(f.apply(i), f.apply(i2));
            minus = minus.max(diff);
            plus = plus.max(-diff);
        }
    }
    Ok(OneSided { minus, plus })
}

/// One-sided co-distortions of a pair `f: X -> Y`, `g: Y -> X` over `X × Y`.
pub fn one_sided_pair<T: Scalar>(
    f: &Mapping,
    g: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<OneSided<T>> {
    check_map(f, x, y)?;
    check_map(g, y, x)?;
    let mut minus = T::neg_infinity();
    let mut plus = T::neg_infinity();
    for i in 0..x.size() {
        for j in 0..y.size() {
            let diff = x.dist(i, g.apply(j)) - y.dist(f.apply(i), j);
            minus = minus.max(diff);
            plus = plus.max(-diff);
        }
    }
    Ok(OneSided { minus, plus })
}

/// Co-distortion of a mapping pair, `codis(f, g) = codis(gr f, gr⁻¹ g)`.
pub fn codis_maps<T: Scalar>(
    f: &Mapping,
    g: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<T> {
    Ok(one_sided_pair(f, g, x, y)?.magnitude())
}

/// All pair functionals of `(f, g)` at once.
pub fn gh_pair<T: Scalar>(
    f: &Mapping,
    g: &Mapping,
    x: &MetricSpace<T>,
    y: &MetricSpace<T>,
) -> Result<PairScore<T>> {
    let dis_f = dis_map(f, x, y)?;
    let dis_g = dis_map(g, y, x)?;
    let codis = codis_maps(f, g, x, y)?;
    let half = T::from_f64(0.5).unwrap();
    Ok(PairScore {
        dis_f,
        dis_g,
        codis,
        gh: half * dis_f.max(codis).max(dis_g),
        mgh: half * dis_f.max(dis_g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point(d: f64) -> MetricSpace<f64> {
        MetricSpace::line(&[0.0, d])
    }

    // The expanding 2-point bijection (distance 1 stretched to 3) and its
    // inverse; one-sided values evaluated by hand over all ordered pairs.
    fn expanding() -> (MetricSpace<f64>, MetricSpace<f64>, Mapping, Mapping) {
        (
            two_point(1.0),
            two_point(3.0),
            Mapping::identity(2),
            Mapping::identity(2),
        )
    }

    #[test]
    fn dis_of_identity_graph_is_zero() {
        let x = two_point(1.0);
        let id = Correspondence::identity(2);
        assert_eq!(dis_rel(&id, &x, &x).unwrap(), 0.0);
        assert_eq!(dis_map(&Mapping::identity(2), &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn dis_of_full_relation_on_stretched_pair() {
        let (x, y, _, _) = expanding();
        let full = Correspondence::new(2, 2, vec![(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        // attained at (a,c),(a,d): |0 - 3| = 3
        assert_eq!(dis_rel(&full, &x, &y).unwrap(), 3.0);
    }

    #[test]
    fn dis_of_matching_on_stretched_pair() {
        let (x, y, f, _) = expanding();
        let matching = Correspondence::new(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(dis_rel(&matching, &x, &y).unwrap(), 2.0);
        assert_eq!(dis_map(&f, &x, &y).unwrap(), 2.0);
    }

    #[test]
    fn dis_of_constant_map_is_the_diameter() {
        let x = two_point(1.0);
        let y = two_point(5.0);
        let c = Mapping::constant(2, 2, 0).unwrap();
        assert_eq!(dis_map(&c, &x, &y).unwrap(), 1.0);
    }

    #[test]
    fn dis_rel_rejects_empty() {
        let x = two_point(1.0);
        assert_eq!(
            dis_pairs::<f64>(&[], &x, &x).unwrap_err(),
            Error::EmptyRelation
        );
    }

    #[test]
    fn one_sided_of_identity_is_zero() {
        let x = two_point(1.0);
        let os = one_sided_map(&Mapping::identity(2), &x, &x).unwrap();
        assert_eq!((os.minus, os.plus), (0.0, 0.0));
    }

    #[test]
    fn one_sided_of_expanding_and_contracting() {
        let (x, y, f, _) = expanding();
        let os = one_sided_map(&f, &x, &y).unwrap();
        assert_eq!((os.minus, os.plus), (0.0, 2.0));
        let os = one_sided_map(&f, &y, &x).unwrap();
        assert_eq!((os.minus, os.plus), (2.0, 0.0));
    }

    #[test]
    fn one_sided_pair_matches_prop_4_2_on_a_bijection() {
        let (x, y, f, g) = expanding();
        let os_pair = one_sided_pair(&f, &g, &x, &y).unwrap();
        let os_f = one_sided_map(&f, &x, &y).unwrap();
        assert_eq!(os_pair.plus, os_f.plus);
        assert_eq!(os_pair.minus, os_f.minus);
        assert_eq!((os_pair.minus, os_pair.plus), (0.0, 2.0));
    }

    #[test]
    fn one_sided_pair_of_identities_is_zero() {
        let x = two_point(1.0);
        let id = Mapping::identity(2);
        let os = one_sided_pair(&id, &id, &x, &x).unwrap();
        assert_eq!((os.minus, os.plus), (0.0, 0.0));
    }

    #[test]
    fn codis_matches_relation_form() {
        let (x, y, f, g) = expanding();
        assert_eq!(codis_maps(&f, &g, &x, &y).unwrap(), 2.0);
        let gr_f = Correspondence::new(2, 2, f.graph()).unwrap();
        let gr_inv_g = Correspondence::new(2, 2, g.converse_graph()).unwrap();
        assert_eq!(codis_rels(&gr_f, &gr_inv_g, &x, &y).unwrap(), 2.0);
    }

    #[test]
    fn gh_pair_on_expanding_pair() {
        let (x, y, f, g) = expanding();
        let score = gh_pair(&f, &g, &x, &y).unwrap();
        assert_eq!(score.dis_f, 2.0);
        assert_eq!(score.dis_g, 2.0);
        assert_eq!(score.codis, 2.0);
        assert_eq!(score.gh, 1.0);
        assert_eq!(score.mgh, 1.0);
    }

    #[test]
    fn gh_pair_of_identities_is_zero() {
        let x = two_point(1.0);
        let id = Mapping::identity(2);
        let score = gh_pair(&id, &id, &x, &x).unwrap();
        assert_eq!((score.gh, score.mgh), (0.0, 0.0));
    }

    #[test]
    fn gh_pair_union_formula() {
        let (x, y, f, g) = expanding();
        let union = Correspondence::from_mappings(&f, &g).unwrap();
        let score = gh_pair(&f, &g, &x, &y).unwrap();
        assert_eq!(2.0 * score.gh, dis_rel(&union, &x, &y).unwrap());
    }
}
