use std::fmt;
use std::sync::Arc;

use super::{AlgElem, Tower};
use crate::error::{Error, Result};
use crate::funcfield::RatFunc;

/// A `K`-automorphism of a tower, given by the images of the generators.
///
/// Invariant: the image of `y_l` is a root of `f_l` with coefficients
/// mapped by the automorphism restricted to the lower levels.
#[derive(Clone, PartialEq)]
pub struct GaloisMap {
    tower: Arc<Tower>,
    images: Vec<AlgElem>,
}

impl fmt::Debug for GaloisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.tower.labels();
        let parts: Vec<String> = labels.iter().zip(&self.images).map(|(l, i)| format!("{l} -> {i}")).collect();
        write!(f, "GaloisMap[{}]", parts.join(", "))
    }
}

impl GaloisMap {
    pub fn new(tower: &Arc<Tower>, images: Vec<AlgElem>) -> Result<Self> {
        if images.len() != tower.num_levels() {
            return Err(Error::InvalidAutomorphism(format!(
                "expected {} generator images, got {}",
                tower.num_levels(),
                images.len()
            )));
        }
        let map = GaloisMap { tower: tower.clone(), images };
        for l in 0..tower.num_levels() {
            let lev = &tower.levels[l];
            let img = &map.images[l];
            let mut acc = AlgElem::one(tower);
            for a in lev.coeffs.iter().rev() {
                acc = acc.mul(img).add(&map.apply_level(l, a));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidAutomorphism(format!(
                    "image {img} of {} is not a root of its conjugated defining polynomial",
                    lev.label
                )));
            }
        }
        Ok(map)
    }

    pub fn identity(tower: &Arc<Tower>) -> Self {
        let images = (0..tower.num_levels()).map(|l| AlgElem::gen(tower, l)).collect();
        GaloisMap { tower: tower.clone(), images }
    }

    /// From `(label, image text)` pairs covering every level.
    pub fn from_text(tower: &Arc<Tower>, images: &[(&str, &str)]) -> Result<Self> {
        let mut v = Vec::new();
        for label in tower.labels() {
            let (_, text) = images
                .iter()
                .find(|(l, _)| *l == label)
                .ok_or_else(|| Error::InvalidAutomorphism(format!("no image given for {label}")))?;
            v.push(AlgElem::parse(tower, text)?);
        }
        if images.len() != v.len() {
            return Err(Error::InvalidAutomorphism("image for an unknown level".into()));
        }
        Self::new(tower, v)
    }

    pub fn images(&self) -> &[AlgElem] {
        &self.images
    }

    /// Applies the map to coordinates of a level-`nlev` element.
    fn apply_level(&self, nlev: usize, v: &[RatFunc]) -> AlgElem {
        let t = &self.tower;
        if nlev == 0 {
            return AlgElem::from_k(t, v[0].clone());
        }
        let c = t.dims[nlev - 1];
        let n = t.levels[nlev - 1].degree;
        let img = &self.images[nlev - 1];
        let mut acc = self.apply_level(nlev - 1, &v[(n - 1) * c..n * c]);
        for i in (0..n - 1).rev() {
            acc = acc.mul(img).add(&self.apply_level(nlev - 1, &v[i * c..(i + 1) * c]));
        }
        acc
    }

    pub fn apply(&self, a: &AlgElem) -> AlgElem {
        self.apply_level(self.tower.num_levels(), &a.c)
    }

    /// `self o other`.
    pub fn compose(&self, other: &GaloisMap) -> GaloisMap {
        let images = other.images.iter().map(|i| self.apply(i)).collect();
        GaloisMap { tower: self.tower.clone(), images }
    }

    pub fn is_identity(&self) -> bool {
        *self == GaloisMap::identity(&self.tower)
    }
}

/// `t` followed by its images under a list of automorphisms.
///
/// Invariant: entries are pairwise distinct and index `k > 0` is the image
/// under map `k - 1`, so sets built from the same maps are aligned.
#[derive(Clone, Debug, PartialEq)]
pub struct ConjugateSet {
    elems: Vec<AlgElem>,
}

impl ConjugateSet {
    pub fn elems(&self) -> &[AlgElem] {
        &self.elems
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// `prod_{i<j} (t_i - t_j)^2`.
    pub fn squared_difference_product(&self) -> AlgElem {
        let t = self.elems[0].tower();
        let mut acc = AlgElem::one(t);
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let d = self.elems[i].sub(&self.elems[j]);
                acc = acc.mul(&d).mul(&d);
            }
        }
        acc
    }
}

/// All `[K(t):K]` conjugates of `t`, given the non-identity maps that
/// produce them.
pub fn conjugates(t: &AlgElem, maps: &[GaloisMap]) -> Result<ConjugateSet> {
    let d = t.degree();
    let mut elems = vec![t.clone()];
    for m in maps {
        let c = m.apply(t);
        if elems.contains(&c) {
            return Err(Error::InvalidAutomorphism(format!("repeated conjugate {c}")));
        }
        elems.push(c);
    }
    if elems.len() != d {
        return Err(Error::InvalidAutomorphism(format!("{} conjugates for an element of degree {d}", elems.len())));
    }
    Ok(ConjugateSet { elems })
}

/// `(t_i - t_j) / (s_i - s_j)`.
pub fn conjugate_difference_unit(s: &ConjugateSet, t: &ConjugateSet, i: usize, j: usize) -> Result<AlgElem> {
    if s.len() != t.len() || i >= s.len() || j >= s.len() || i == j {
        return Err(Error::Invalid("conjugate index out of range".into()));
    }
    t.elems[i].sub(&t.elems[j]).div(&s.elems[i].sub(&s.elems[j]))
}
