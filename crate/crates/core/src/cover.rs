//! Covers of a space: a family of subsets whose union is the whole point set,
//! with a selector giving each point a member that contains it.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::space::{MetricSpace, Subset};

/// A cover of a metric space together with its selector and the exact
/// maximum member diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct Cover<T> {
    space_size: usize,
    members: Vec<Subset>,
    selector: Vec<usize>,
    max_diam: T,
}

impl<T: Scalar> Cover<T> {
    /// Validates the cover invariants against `space` and computes `max_diam`.
    pub fn new(space: &MetricSpace<T>, members: Vec<Subset>, selector: Vec<usize>) -> Result<Self> {
        let n = space.size();
        if selector.len() != n {
            return Err(Error::SizeMismatch {
                left: selector.len(),
                right: n,
            });
        }
        let mut covered = vec![false; n];
        for (k, m) in members.iter().enumerate() {
            if m.space_size() != n {
                return Err(Error::InvalidCoverMember {
                    member: k,
                    reason: format!("built for a space of size {}", m.space_size()),
                });
            }
            if m.is_empty() {
                return Err(Error::InvalidCoverMember {
                    member: k,
                    reason: "empty".into(),
                });
            }
            for &p in m.members() {
                covered[p] = true;
            }
        }
        if let Some(p) = covered.iter().position(|&c| !c) {
            return Err(Error::CoverMissesPoint { index: p });
        }
        for (p, &k) in selector.iter().enumerate() {
            if k >= members.len() {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    size: members.len(),
                });
            }
            if !members[k].contains(p) {
                return Err(Error::SelectorMismatch {
                    index: p,
                    member: k,
                });
            }
        }
        let mut max_diam = T::zero();
        for m in &members {
            max_diam = max_diam.max(space.diam(m)?);
        }
        Ok(Self {
            space_size: n,
            members,
            selector,
            max_diam,
        })
    }

    pub fn space_size(&self) -> usize {
        self.space_size
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// The member assigned to point `p` by the selector.
    pub fn selected(&self, p: usize) -> &Subset {
        &self.members[self.selector[p]]
    }

    pub fn selector(&self) -> &[usize] {
        &self.selector
    }

    /// Exact maximum member diameter (the cover's epsilon in distortion bounds).
    pub fn max_diam(&self) -> T {
        self.max_diam
    }

    /// True when some member contains both `p` and `q`.
    pub fn share_member(&self, p: usize, q: usize) -> bool {
        self.members.iter().any(|m| m.contains(p) && m.contains(q))
    }
}

impl<T: Scalar> MetricSpace<T> {
    /// Cover by open balls: one member per point `p`, holding every `q` with
    /// `dist(p, q) < eps` (strict, matching the open ball), selector sending
    /// each point to its own ball.
    pub fn ball_cover(&self, eps: T) -> Result<Cover<T>> {
        if eps <= T::zero() || eps.is_nan() {
            return Err(Error::NonPositiveEps);
        }
        let n = self.size();
        let members = (0..n)
            .map(|p| {
                let ball: Vec<usize> = (0..n).filter(|&q| self.dist(p, q) < eps).collect();
                Subset::new(n, ball).expect("ball indices are in range")
            })
            .collect();
        Cover::new(self, members, (0..n).collect())
    }

    /// Cover by singletons; its max diameter is zero.
    pub fn singleton_cover(&self) -> Cover<T> {
        let n = self.size();
        let members = (0..n)
            .map(|p| Subset::new(n, vec![p]).expect("index in range"))
            .collect();
        Cover::new(self, members, (0..n).collect()).expect("singletons cover the space")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_cover_with_large_eps_is_all_points() {
        let m = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let c = m.ball_cover(10.0).unwrap();
        assert!(c.members().iter().all(Subset::is_full));
        assert_eq!(c.max_diam(), m.diameter());
    }

    #[test]
    fn ball_cover_with_tiny_eps_is_singletons() {
        let m = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let c = m.ball_cover(0.5).unwrap();
        assert!(c.members().iter().all(|s| s.len() == 1));
        assert_eq!(c.max_diam(), 0.0);
    }

    #[test]
    fn ball_cover_three_line_points_middle_ball() {
        let m = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let c = m.ball_cover(1.5).unwrap();
        assert_eq!(c.members()[0].members(), &[0, 1]);
        assert_eq!(c.members()[1].members(), &[0, 1, 2]);
        assert_eq!(c.members()[2].members(), &[1, 2]);
        assert_eq!(c.max_diam(), 2.0);
    }

    #[test]
    fn ball_cover_uses_strict_inequality() {
        let m = MetricSpace::line(&[0.0, 1.0]);
        let c = m.ball_cover(1.0).unwrap();
        assert_eq!(c.members()[0].members(), &[0]);
    }

    #[test]
    fn ball_cover_rejects_nonpositive_eps() {
        let m = MetricSpace::line(&[0.0, 1.0]);
        assert_eq!(m.ball_cover(0.0).unwrap_err(), Error::NonPositiveEps);
    }

    #[test]
    fn cover_rejects_a_gap() {
        let m = MetricSpace::line(&[0.0, 1.0, 2.0]);
        let members = vec![Subset::new(3, vec![0, 1]).unwrap()];
        let err = Cover::new(&m, members, vec![0, 0, 0]).unwrap_err();
        assert_eq!(err, Error::CoverMissesPoint { index: 2 });
    }

    #[test]
    fn cover_rejects_selector_mismatch() {
        let m = MetricSpace::line(&[0.0, 1.0]);
        let members = vec![
            Subset::new(2, vec![0]).unwrap(),
            Subset::new(2, vec![1]).unwrap(),
        ];
        let err = Cover::new(&m, members, vec![0, 0]).unwrap_err();
        assert_eq!(
            err,
            Error::SelectorMismatch {
                index: 1,
                member: 0
            }
        );
    }
}
