//! Finite metric spaces, index subsets, and the Hausdorff/diameter primitives.
//!
//! A space is a full symmetric distance matrix over `size` points; subsets,
//! covers, mappings and correspondences all refer to points by index. All
//! suprema/infima in the definitions are attained as max/min over the finite
//! index sets, and are computed exactly here.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Norm used to induce a metric from point coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    pub fn dist<T: Scalar>(self, a: &[T], b: &[T]) -> T {
        match self {
            Norm::L1 => a
                .iter()
                .zip(b)
                .fold(T::zero(), |acc, (&p, &q)| acc + (p - q).abs()),
            Norm::L2 => a
                .iter()
                .zip(b)
                .fold(T::zero(), |acc, (&p, &q)| acc + (p - q) * (p - q))
                .sqrt(),
            Norm::Linf => a
                .iter()
                .zip(b)
                .fold(T::zero(), |acc, (&p, &q)| acc.max((p - q).abs())),
        }
    }
}

/// A finite metric space: `size` points and the full distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSpace<T> {
    size: usize,
    dist: Vec<T>, // row-major size x size
}

/// A single violated metric axiom, with the indices that witness it.
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation<T> {
    NonFinite {
        i: usize,
        j: usize,
    },
    Negative {
        i: usize,
        j: usize,
        value: T,
    },
    NonzeroDiagonal {
        i: usize,
        value: T,
    },
    Asymmetric {
        i: usize,
        j: usize,
        forward: T,
        backward: T,
    },
    Triangle {
        i: usize,
        j: usize,
        k: usize,
        direct: T,
        via: T,
    },
}

impl<T: Scalar> std::fmt::Display for MetricViolation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MetricViolation::NonFinite { i, j } => write!(f, "non-finite entry at ({i}, {j})"),
            MetricViolation::Negative { i, j, value } => {
                write!(f, "negative entry {value} at ({i}, {j})")
            }
            MetricViolation::NonzeroDiagonal { i, value } => {
                write!(f, "nonzero diagonal {value} at ({i}, {i})")
            }
            MetricViolation::Asymmetric {
                i,
                j,
                forward,
                backward,
            } => {
                write!(f, "asymmetry at ({i}, {j}): {forward} vs {backward}")
            }
            MetricViolation::Triangle {
                i,
                j,
                k,
                direct,
                via,
            } => {
                write!(f, "triangle violation at ({i}, {j}, {k}): {direct} > {via}")
            }
        }
    }
}

/// Result of [`MetricSpace::validate`]: empty iff all four axioms hold.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport<T> {
    pub violations: Vec<MetricViolation<T>>,
}

impl<T> ValidationReport<T> {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<T: Scalar> MetricSpace<T> {
    /// Builds a space from matrix rows. Fails only on a non-square layout;
    /// metric axioms are checked separately by [`validate`](Self::validate).
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::EmptySpace);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::NotSquare {
                    rows: size,
                    row: i,
                    cols: row.len(),
                });
            }
        }
        Ok(Self {
            size,
            dist: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a space from a row-major flat matrix.
    pub fn from_flat(size: usize, dist: Vec<T>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptySpace);
        }
        if dist.len() != size * size {
            return Err(Error::NotSquare {
                rows: size,
                row: 0,
                cols: dist.len(),
            });
        }
        Ok(Self { size, dist })
    }

    /// Induces a space from points under the given norm. All coordinate rows
    /// must share one dimension.
    pub fn from_points(points: &[Vec<T>], norm: Norm) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySpace);
        }
        let dim = points.first().map_or(0, Vec::len);
        for p in points {
            if p.len() != dim {
                return Err(Error::SizeMismatch {
                    left: dim,
                    right: p.len(),
                });
            }
        }
        let size = points.len();
        let mut dist = vec![T::zero(); size * size];
        for i in 0..size {
            for j in (i + 1)..size {
                let d = norm.dist(&points[i], &points[j]);
                dist[i * size + j] = d;
                dist[j * size + i] = d;
            }
        }
        Ok(Self { size, dist })
    }

    /// Points on the real line at the given coordinates.
    pub fn line(coords: &[T]) -> Self {
        let points: Vec<Vec<T>> = coords.iter().map(|&c| vec![c]).collect();
        Self::from_points(&points, Norm::L2).expect("1-d rows are uniform")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Distance between points `i` and `j`. Panics on out-of-range indices.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> T {
        self.dist[i * self.size + j]
    }

    /// Checks the four metric axioms with absolute tolerance `tol` and
    /// reports every violation with its witness indices.
    pub fn validate(&self, tol: T) -> ValidationReport<T> {
        let mut violations = Vec::new();
        let n = self.size;
        for i in 0..n {
            for j in 0..n {
                let d = self.dist(i, j);
                if !d.is_finite() {
                    violations.push(MetricViolation::NonFinite { i, j });
                } else if d < -tol {
                    violations.push(MetricViolation::Negative { i, j, value: d });
                }
            }
        }
        // Remaining axioms compare entries; skip them when any entry is unusable.
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for i in 0..n {
            let d = self.dist(i, i);
            if d.abs() > tol {
                violations.push(MetricViolation::NonzeroDiagonal { i, value: d });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let forward = self.dist(i, j);
                let backward = self.dist(j, i);
                if (forward - backward).abs() > tol {
                    violations.push(MetricViolation::Asymmetric {
                        i,
                        j,
                        forward,
                        backward,
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let direct = self.dist(i, k);
                    let via = self.dist(i, j) + self.dist(j, k);
                    if direct > via + tol {
                        violations.push(MetricViolation::Triangle {
                            i,
                            j,
                            k,
                            direct,
                            via,
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Diameter of the whole space (0 for a single point).
    pub fn diameter(&self) -> T {
        let mut best = T::zero();
        for i in 0..self.size {
            for j in (i + 1)..self.size {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Max row distance of a point; used to order branch-and-bound rows.
    pub fn eccentricity(&self, i: usize) -> T {
        (0..self.size).fold(T::zero(), |acc, j| acc.max(self.dist(i, j)))
    }

    fn check_subset(&self, s: &Subset) -> Result<()> {
        if s.space_size() != self.size {
            return Err(Error::ParentMismatch {
                subset_size: s.space_size(),
                space_size: self.size,
            });
        }
        Ok(())
    }

    /// Diameter of a nonempty subset: max over its pairs, 0 for singletons.
    pub fn diam(&self, s: &Subset) -> Result<T> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let m = s.members();
        let mut best = T::zero();
        for (a, &i) in m.iter().enumerate() {
            for &j in &m[a + 1..] {
                best = best.max(self.dist(i, j));
            }
        }
        Ok(best)
    }

    /// Distance from point `p` to a nonempty subset.
    pub fn dist_to_subset(&self, p: usize, s: &Subset) -> Result<T> {
        self.check_subset(s)?;
        if p >= self.size {
            return Err(Error::IndexOutOfRange {
                index: p,
                size: self.size,
            });
        }
        s.members()
            .iter()
            .map(|&q| self.dist(p, q))
            .fold(None, |acc: Option<T>, d| Some(acc.map_or(d, |a| a.min(d))))
            .ok_or(Error::EmptySubset)
    }

    /// Nearest member of `s` to point `p`, ties broken to the least index.
    /// Members are stored sorted, so the first strict improvement wins.
    pub fn nearest_in_subset(&self, p: usize, s: &Subset) -> Result<usize> {
        self.check_subset(s)?;
        if p >= self.size {
            return Err(Error::IndexOutOfRange {
                index: p,
                size: self.size,
            });
        }
        let mut best: Option<(T, usize)> = None;
        for &q in s.members() {
            let d = self.dist(p, q);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, q));
            }
        }
        best.map(|(_, q)| q).ok_or(Error::EmptySubset)
    }

    /// Hausdorff distance between two nonempty subsets of this space.
    ///
    /// The infimum over neighborhood radii is attained on finite sets as
    /// `max(max_{a} min_{b} d, max_{b} min_{a} d)`.
    pub fn hausdorff(&self, a: &Subset, b: &Subset) -> Result<T> {
        self.check_subset(a)?;
        self.check_subset(b)?;
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut best = T::zero();
        for &p in a.members() {
            best = best.max(self.dist_to_subset(p, b)?);
        }
        for &q in b.members() {
            best = best.max(self.dist_to_subset(q, a)?);
        }
        Ok(best)
    }

    /// The subspace induced on a nonempty subset (restriction of the matrix).
    pub fn induced(&self, s: &Subset) -> Result<MetricSpace<T>> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        let m = s.members();
        let k = m.len();
        let mut dist = vec![T::zero(); k * k];
        for (a, &i) in m.iter().enumerate() {
            for (b, &j) in m.iter().enumerate() {
                dist[a * k + b] = self.dist(i, j);
            }
        }
        Ok(MetricSpace { size: k, dist })
    }
}

/// A set of point indices of one space, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    space_size: usize,
    members: Vec<usize>,
}

impl Subset {
    /// Canonicalizes (sorts, dedups) and range-checks the index list.
    pub fn new(space_size: usize, mut members: Vec<usize>) -> Result<Self> {
        for &i in &members {
            if i >= space_size {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: space_size,
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            space_size,
            members,
        })
    }

    /// All points of a space of the given size.
    pub fn full(space_size: usize) -> Self {
        Self {
            space_size,
            members: (0..space_size).collect(),
        }
    }

    pub fn space_size(&self) -> usize {
        self.space_size
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.space_size
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    /// True when every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.members.iter().all(|&i| other.contains(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(coords: &[f64]) -> MetricSpace<f64> {
        MetricSpace::line(coords)
    }

    #[test]
    fn validate_accepts_a_metric() {
        let m = MetricSpace::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(m.validate(1e-9).is_valid());
    }

    #[test]
    fn validate_reports_asymmetry_with_witness() {
        let m = MetricSpace::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        let report = m.validate(1e-9);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, MetricViolation::Asymmetric { i: 0, j: 1, .. })));
    }

    #[test]
    fn validate_reports_triangle_violation() {
        let m = MetricSpace::from_rows(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap();
        let report = m.validate(1e-9);
        assert!(report.violations.iter().any(|v| matches!(
            v,
            MetricViolation::Triangle {
                i: 0,
                j: 1,
                k: 2,
                ..
            }
        )));
    }

    #[test]
    fn validate_rejects_non_square() {
        let err = MetricSpace::from_rows(vec![vec![0.0, 1.0], vec![1.0]]).unwrap_err();
        assert!(matches!(
            err,
            Error::NotSquare {
                row: 1,
                cols: 1,
                ..
            }
        ));
    }

    #[test]
    fn diam_of_singleton_is_zero() {
        let m = line(&[0.0, 3.0]);
        let s = Subset::new(2, vec![0]).unwrap();
        assert_eq!(m.diam(&s).unwrap(), 0.0);
        assert_eq!(m.diam(&Subset::full(2)).unwrap(), 3.0);
    }

    #[test]
    fn diam_on_three_line_points() {
        let m = line(&[0.0, 1.0, 5.0]);
        assert_eq!(m.diam(&Subset::full(3)).unwrap(), 5.0);
    }

    #[test]
    fn diam_of_empty_subset_errors() {
        let m = line(&[0.0]);
        let s = Subset::new(1, vec![]).unwrap();
        assert_eq!(m.diam(&s).unwrap_err(), Error::EmptySubset);
    }

    #[test]
    fn hausdorff_zero_on_equal_sets() {
        let m = line(&[0.0, 1.0, 5.0]);
        let s = Subset::new(3, vec![0, 2]).unwrap();
        assert_eq!(m.hausdorff(&s, &s).unwrap(), 0.0);
    }

    #[test]
    fn hausdorff_point_versus_pair() {
        let m = line(&[0.0, 1.0]);
        let a = Subset::new(2, vec![0]).unwrap();
        let b = Subset::full(2);
        assert_eq!(m.hausdorff(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn hausdorff_interleaved_pairs() {
        // a = {0, 10}, b = {1, 9}: every point is within 1 of the other set.
        let m = line(&[0.0, 10.0, 1.0, 9.0]);
        let a = Subset::new(4, vec![0, 1]).unwrap();
        let b = Subset::new(4, vec![2, 3]).unwrap();
        assert_eq!(m.hausdorff(&a, &b).unwrap(), 1.0);
    }

    #[test]
    fn hausdorff_rejects_mismatched_parents() {
        let m = line(&[0.0, 1.0]);
        let a = Subset::full(2);
        let b = Subset::full(3);
        assert!(matches!(
            m.hausdorff(&a, &b),
            Err(Error::ParentMismatch { .. })
        ));
    }

    #[test]
    fn induced_subspace_restricts_the_matrix() {
        let m = line(&[0.0, 1.0, 5.0]);
        let s = Subset::new(3, vec![0, 2]).unwrap();
        let sub = m.induced(&s).unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(sub.dist(0, 1), 5.0);
    }

    #[test]
    fn norms_disagree_where_expected() {
        let a = vec![0.0, 0.0];
        let b = vec![3.0, 4.0];
        assert_eq!(Norm::L1.dist::<f64>(&a, &b), 7.0);
        assert_eq!(Norm::L2.dist::<f64>(&a, &b), 5.0);
        assert_eq!(Norm::Linf.dist::<f64>(&a, &b), 4.0);
    }
}
