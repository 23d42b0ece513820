//! Partial functions over a finite base and the concrete operations.
//!
//! Points of a base of size `k` are the indices `0..k`. A partial function
//! is stored densely as one optional image per point. The empty base is
//! allowed; on it every operation yields the empty function.

use std::fmt;

use thiserror::Error;

/// A partial self-map of the base `{0, …, k-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PartialFunction {
    img: Vec<Option<usize>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PfnError {
    #[error("point {0} out of base of size {1}")]
    PointOutOfBase(usize, usize),
    #[error("expected `{expected}` at byte {at} of `{src}`")]
    Text {
        expected: &'static str,
        at: usize,
        src: String,
    },
}

impl PartialFunction {
    pub fn empty(base: usize) -> PartialFunction {
        PartialFunction {
            img: vec![None; base],
        }
    }

    pub fn identity(base: usize) -> PartialFunction {
        PartialFunction {
            img: (0..base).map(Some).collect(),
        }
    }

    pub fn from_pairs(
        base: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<PartialFunction, PfnError> {
        let mut f = PartialFunction::empty(base);
        for (x, y) in pairs {
            if x >= base {
                return Err(PfnError::PointOutOfBase(x, base));
            }
            if y >= base {
                return Err(PfnError::PointOutOfBase(y, base));
            }
            f.img[x] = Some(y);
        }
        Ok(f)
    }

    pub fn from_images(img: Vec<Option<usize>>) -> Result<PartialFunction, PfnError> {
        let base = img.len();
        for y in img.iter().flatten() {
            if *y >= base {
                return Err(PfnError::PointOutOfBase(*y, base));
            }
        }
        Ok(PartialFunction { img })
    }

    pub fn base(&self) -> usize {
        self.img.len()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        self.img.get(x).copied().flatten()
    }

    pub fn is_empty(&self) -> bool {
        self.img.iter().all(|v| v.is_none())
    }

    pub fn defined_points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.base()).filter(|&x| self.img[x].is_some())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.base()).filter_map(|x| self.img[x].map(|y| (x, y)))
    }

    /// True if the graph is a restriction of the identity.
    pub fn is_subidentity(&self) -> bool {
        self.pairs().all(|(x, y)| x == y)
    }

    fn check(self) -> PartialFunction {
        debug_assert!(self.img.iter().flatten().all(|&y| y < self.img.len()));
        self
    }

    /// `(f;g)(x) = g(f(x))`, defined where both steps are.
    ///
    /// Panics if the bases differ.
    pub fn compose(&self, g: &PartialFunction) -> PartialFunction {
        assert_eq!(self.base(), g.base(), "compose: base mismatch");
        PartialFunction {
            img: self.img.iter().map(|v| v.and_then(|y| g.img[y])).collect(),
        }
        .check()
    }

    /// Intersection of graphs: defined at `x` iff `f(x) = g(x)`.
    ///
    /// Panics if the bases differ.
    pub fn meet(&self, g: &PartialFunction) -> PartialFunction {
        assert_eq!(self.base(), g.base(), "meet: base mismatch");
        PartialFunction {
            img: self
                .img
                .iter()
                .zip(&g.img)
                .map(|(a, b)| match (a, b) {
                    (Some(x), Some(y)) if x == y => Some(*x),
                    _ => None,
                })
                .collect(),
        }
        .check()
    }

    /// `f` where `f` is defined, else `g`.
    ///
    /// Panics if the bases differ.
    pub fn prefunion(&self, g: &PartialFunction) -> PartialFunction {
        assert_eq!(self.base(), g.base(), "prefunion: base mismatch");
        PartialFunction {
            img: self.img.iter().zip(&g.img).map(|(a, b)| a.or(*b)).collect(),
        }
        .check()
    }

    /// Identity restricted to the domain.
    pub fn dom(&self) -> PartialFunction {
        PartialFunction {
            img: (0..self.base()).map(|x| self.img[x].map(|_| x)).collect(),
        }
    }

    /// Identity restricted to the range.
    pub fn range(&self) -> PartialFunction {
        let mut img = vec![None; self.base()];
        for v in self.img.iter().flatten() {
            img[*v] = Some(*v);
        }
        PartialFunction { img }
    }

    /// Identity on the complement of the domain within the base.
    pub fn antidom(&self) -> PartialFunction {
        PartialFunction {
            img: (0..self.base())
                .map(|x| if self.img[x].is_none() { Some(x) } else { None })
                .collect(),
        }
    }

    /// Identity restricted to the fixed points.
    pub fn fixset(&self) -> PartialFunction {
        PartialFunction {
            img: (0..self.base())
                .map(|x| {
                    if self.img[x] == Some(x) {
                        Some(x)
                    } else {
                        None
                    }
                })
                .collect(),
        }
    }

    /// Iterate from each point until leaving the domain; undefined on points
    /// whose orbit never leaves it. A walk of base-size many steps already
    /// revisits a point, so the iteration is cut off there.
    pub fn maxiter(&self) -> PartialFunction {
        let k = self.base();
        let img = (0..k)
            .map(|start| {
                let mut y = start;
                for _ in 0..=k {
                    match self.img[y] {
                        None => return Some(y),
                        Some(z) => y = z,
                    }
                }
                None
            })
            .collect();
        PartialFunction { img }.check()
    }

    /// Uniformly random partial function on the given base.
    pub fn random(rng: &mut crate::rng::SplitMix64, base: usize) -> PartialFunction {
        let img = (0..base)
            .map(|_| {
                let v = rng.below(base as u64 + 1) as usize;
                if v == base {
                    None
                } else {
                    Some(v)
                }
            })
            .collect();
        PartialFunction { img }
    }

    /// The graph intersected with `keep × keep`, reindexed along `old_to_new`.
    pub(crate) fn restrict_reindex(
        &self,
        old_to_new: &[Option<usize>],
        new_base: usize,
    ) -> PartialFunction {
        let mut img = vec![None; new_base];
        for (x, y) in self.pairs() {
            if let (Some(nx), Some(ny)) = (old_to_new[x], old_to_new[y]) {
                img[nx] = Some(ny);
            }
        }
        PartialFunction { img }.check()
    }

    /// Text form `{0->1, 2->2}` with points in increasing order, `{}` when
    /// empty. The base size is carried alongside, never inferred.
    pub fn to_text(&self) -> String {
        let mut s = String::from("{");
        let mut first = true;
        for (x, y) in self.pairs() {
            if !first {
                s.push_str(", ");
            }
            first = false;
            s.push_str(&format!("{}->{}", x, y));
        }
        s.push('}');
        s
    }

    /// Parse the text form against an explicitly supplied base size.
    pub fn parse_text(src: &str, base: usize) -> Result<PartialFunction, PfnError> {
        let s = src.trim();
        let fail = |expected: &'static str, at: usize| PfnError::Text {
            expected,
            at,
            src: src.to_string(),
        };
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| fail("braced map like {0->1}", 0))?;
        let mut pairs = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (l, r) = part.split_once("->").ok_or_else(|| fail("`->`", 0))?;
            let x: usize = l.trim().parse().map_err(|_| fail("a point number", 0))?;
            let y: usize = r.trim().parse().map_err(|_| fail("a point number", 0))?;
            pairs.push((x, y));
        }
        PartialFunction::from_pairs(base, pairs)
    }
}

impl fmt::Display for PartialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
