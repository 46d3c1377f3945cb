//! Total mappings between point sets and correspondences (relations with
//! both projections surjective).

use crate::error::{Error, Result, Side};
use crate::space::Subset;

/// A total function between index sets, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mapping {
    domain_size: usize,
    codomain_size: usize,
    image: Vec<usize>,
}

impl Mapping {
    pub fn new(domain_size: usize, codomain_size: usize, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain_size {
            return Err(Error::NotTotal {
                got: image.len(),
                expected: domain_size,
            });
        }
        for &v in &image {
            if v >= codomain_size {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    size: codomain_size,
                });
            }
        }
        Ok(Self {
            domain_size,
            codomain_size,
            image,
        })
    }

    pub fn identity(size: usize) -> Self {
        Self {
            domain_size: size,
            codomain_size: size,
            image: (0..size).collect(),
        }
    }

    /// The constant map sending everything to `target`.
    pub fn constant(domain_size: usize, codomain_size: usize, target: usize) -> Result<Self> {
        Self::new(domain_size, codomain_size, vec![target; domain_size])
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// Image as a subset of the codomain.
    pub fn image_subset(&self) -> Subset {
        Subset::new(self.codomain_size, self.image.clone()).expect("image values are in range")
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain_size];
        self.image
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain_size];
        for &y in &self.image {
            seen[y] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain_size == self.codomain_size && self.is_injective()
    }

    /// Inverse of a bijection; `None` when the map is not bijective.
    pub fn inverse(&self) -> Option<Mapping> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.domain_size];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(Mapping {
            domain_size: self.codomain_size,
            codomain_size: self.domain_size,
            image: inv,
        })
    }

    /// `other` after `self` (first `self`, then `other`).
    pub fn then(&self, other: &Mapping) -> Result<Mapping> {
        if self.codomain_size != other.domain_size {
            return Err(Error::SizeMismatch {
                left: self.codomain_size,
                right: other.domain_size,
            });
        }
        Ok(Mapping {
            domain_size: self.domain_size,
            codomain_size: other.codomain_size,
            image: self.image.iter().map(|&y| other.apply(y)).collect(),
        })
    }

    /// The graph `{(x, f(x))}` as a sorted pair list.
    pub fn graph(&self) -> Vec<(usize, usize)> {
        self.image.iter().copied().enumerate().collect()
    }

    /// The converse graph `{(f(x), x)}` as a sorted pair list.
    pub fn converse_graph(&self) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = self
            .image
            .iter()
            .copied()
            .enumerate()
            .map(|(x, y)| (y, x))
            .collect();
        pairs.sort_unstable();
        pairs
    }
}

/// A relation between two index sets whose projections are both surjective,
/// stored as a deduplicated, lexicographically sorted pair list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Correspondence {
    left_size: usize,
    right_size: usize,
    pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    pub fn new(
        left_size: usize,
        right_size: usize,
        mut pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        pairs.sort_unstable();
        pairs.dedup();
        let mut left = vec![false; left_size];
        let mut right = vec![false; right_size];
        for &(i, j) in &pairs {
            if i >= left_size {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: left_size,
                });
            }
            if j >= right_size {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    size: right_size,
                });
            }
            left[i] = true;
            right[j] = true;
        }
        if let Some(i) = left.iter().position(|&c| !c) {
            return Err(Error::NotACorrespondence {
                side: Side::Domain,
                index: i,
            });
        }
        if let Some(j) = right.iter().position(|&c| !c) {
            return Err(Error::NotACorrespondence {
                side: Side::Codomain,
                index: j,
            });
        }
        Ok(Self {
            left_size,
            right_size,
            pairs,
        })
    }

    /// `gr f ∪ gr⁻¹ g`, which is a correspondence for any total `f`, `g`.
    pub fn from_mappings(f: &Mapping, g: &Mapping) -> Result<Self> {
        if f.domain_size() != g.codomain_size() || f.codomain_size() != g.domain_size() {
            return Err(Error::SizeMismatch {
                left: f.domain_size(),
                right: g.codomain_size(),
            });
        }
        let mut pairs = f.graph();
        pairs.extend(g.image().iter().copied().enumerate().map(|(y, x)| (x, y)));
        Self::new(f.domain_size(), f.codomain_size(), pairs)
    }

    /// Identity matching on a set of the given size.
    pub fn identity(size: usize) -> Self {
        Self {
            left_size: size,
            right_size: size,
            pairs: (0..size).map(|i| (i, i)).collect(),
        }
    }

    pub fn left_size(&self) -> usize {
        self.left_size
    }

    pub fn right_size(&self) -> usize {
        self.right_size
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Extracts a mapping pair by least-index selection: `f(x)` is the least
    /// `y` related to `x` and `g(y)` the least `x` related to `y`, so
    /// `gr f ∪ gr⁻¹ g ⊆ self`.
    pub fn to_mapping_pair(&self) -> (Mapping, Mapping) {
        let mut f = vec![usize::MAX; self.left_size];
        let mut g = vec![usize::MAX; self.right_size];
        for &(i, j) in &self.pairs {
            if f[i] == usize::MAX {
                f[i] = j;
            }
            if g[j] == usize::MAX {
                g[j] = i;
            }
        }
        (
            Mapping::new(self.left_size, self.right_size, f).expect("projection is surjective"),
            Mapping::new(self.right_size, self.left_size, g).expect("projection is surjective"),
        )
    }
}
