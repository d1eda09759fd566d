//! `k`-fold subdivision `S(X, k)`, the standard projection `ρ_k`, the partial
//! projection `ρ^c_k: S(X, k) -> S(X, k-1)`, and the canonical cover of an inclusion.
//!
//! Every point `x` of `X` is replaced by the cubical block
//! `{ k·x + r : 0 <= r_i <= k-1 }`, and `ρ_k` is coordinate-wise floor division by `k`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::digital::{compose, DigitalImage, DigitalMap, LatticePoint};
use crate::error::{Error, Result};

fn check_factor(k: i64, min: i64) -> Result<()> {
    if k < min {
        return Err(Error::InvalidArgument(format!(
            "subdivision factor must be at least {min}, got {k}"
        )));
    }
    Ok(())
}

/// `ρ_k(y) = (⌊y_1/k⌋, ..., ⌊y_n/k⌋)`.
pub fn project_point(y: &LatticePoint, k: i64) -> LatticePoint {
    y.map_coords(|_, c| c.div_euclid(k))
}

/// The block `S(x, k)` in lexicographic order.
pub fn block(x: &LatticePoint, k: i64) -> Vec<LatticePoint> {
    let dim = x.dim();
    let mut out = Vec::with_capacity((k as usize).pow(dim as u32));
    let mut r = vec![0i64; dim];
    loop {
        out.push(x.map_coords(|i, c| k * c + r[i]));
        let mut axis = dim;
        loop {
            if axis == 0 {
                return out;
            }
            axis -= 1;
            if r[axis] + 1 < k {
                r[axis] += 1;
                break;
            }
            r[axis] = 0;
        }
    }
}

/// The point set of `S(X, k)`.
pub fn subdivided_image(x: &DigitalImage, k: i64) -> Result<DigitalImage> {
    check_factor(k, 1)?;
    if k == 1 {
        return Ok(x.clone());
    }
    let points = x.points().iter().flat_map(|p| block(p, k)).collect();
    Ok(DigitalImage::from_distinct(x.dim(), points))
}

/// The centre `(2k+1)·y + (k, ..., k)` of the block `S(y, 2k+1)`.
pub fn centre(y: &LatticePoint, k: i64) -> LatticePoint {
    y.map_coords(|_, c| (2 * k + 1) * c + k)
}

/// A subdivided image together with its source and standard projection.
pub struct SubdivisionBundle {
    source: DigitalImage,
    factor: i64,
    subdivided: DigitalImage,
    projection: DigitalMap,
    fibers: OnceLock<HashMap<LatticePoint, DigitalImage>>,
}

impl SubdivisionBundle {
    pub fn source(&self) -> &DigitalImage {
        &self.source
    }

    pub fn factor(&self) -> i64 {
        self.factor
    }

    pub fn subdivided(&self) -> &DigitalImage {
        &self.subdivided
    }

    /// `ρ_k: S(X, k) -> X`.
    pub fn projection(&self) -> &DigitalMap {
        &self.projection
    }

    /// `S(x, k)`, the preimage of `x` under the projection.
    pub fn fiber(&self, x: &LatticePoint) -> Result<&DigitalImage> {
        if !self.source.contains(x) {
            return Err(Error::NotInImage(x.clone()));
        }
        let fibers = self.fibers.get_or_init(|| {
            let k = self.factor;
            self.source
                .points()
                .iter()
                .map(|p| (p.clone(), DigitalImage::from_distinct(p.dim(), block(p, k))))
                .collect()
        });
        Ok(&fibers[x])
    }
}

impl std::fmt::Debug for SubdivisionBundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubdivisionBundle")
            .field("factor", &self.factor)
            .field("source", &self.source)
            .field("subdivided", &self.subdivided)
            .finish()
    }
}

pub fn subdivide(x: &DigitalImage, k: i64) -> Result<SubdivisionBundle> {
    let subdivided = subdivided_image(x, k)?;
    let projection = DigitalMap::from_fn(&subdivided, x, |y| project_point(y, k))
        .expect("blocks project onto the source");
    Ok(SubdivisionBundle {
        source: x.clone(),
        factor: k,
        subdivided,
        projection,
        fibers: OnceLock::new(),
    })
}

/// `ρ_k: S(X, k) -> X` on its own.
pub fn standard_projection(x: &DigitalImage, k: i64) -> Result<DigitalMap> {
    Ok(subdivide(x, k)?.projection)
}

/// Offset within a block of side `k` after removing one layer at `⌊k/2⌋`.
fn squeeze(j: i64, k: i64) -> i64 {
    if j < k / 2 {
        j
    } else {
        j - 1
    }
}

/// `ρ^c_k` on a single point: `k·x + j ↦ (k-1)·x + s` in each coordinate.
pub fn partial_projection_point(y: &LatticePoint, k: i64) -> LatticePoint {
    y.map_coords(|_, c| {
        let x = c.div_euclid(k);
        (k - 1) * x + squeeze(c.rem_euclid(k), k)
    })
}

/// The partial projection `ρ^c_k: S(X, k) -> S(X, k-1)`, defined for `k >= 3`.
pub fn partial_projection(x: &DigitalImage, k: i64) -> Result<DigitalMap> {
    check_factor(k, 3)?;
    let domain = subdivided_image(x, k)?;
    let codomain = subdivided_image(x, k - 1)?;
    Ok(
        DigitalMap::from_fn(&domain, &codomain, |y| partial_projection_point(y, k))
            .expect("partial projection stays in its fibre"),
    )
}

/// `S(j, k): S(A, k) -> S(X, k)`, `k·a + t ↦ k·a + t`, for an inclusion `A ⊆ X`.
pub fn cover_inclusion(sub: &DigitalImage, whole: &DigitalImage, k: i64) -> Result<DigitalMap> {
    check_factor(k, 1)?;
    if !sub.is_subset_of(whole) {
        return Err(Error::ImageMismatch(
            "first image is not contained in the second".into(),
        ));
    }
    let inclusion = DigitalMap::inclusion(sub, whole)?;
    naive_subdivision_map(&inclusion, k)
}

/// The block-wise formula `k·a + t ↦ k·f(a) + t`.
///
/// This covers inclusions; for general maps it is usually discontinuous and is kept for
/// comparison against the canonical constructions.
pub fn naive_subdivision_map(f: &DigitalMap, k: i64) -> Result<DigitalMap> {
    check_factor(k, 1)?;
    if f.domain().dim() != f.codomain().dim() {
        return Err(Error::DimensionMismatch {
            expected: f.domain().dim(),
            found: f.codomain().dim(),
        });
    }
    let domain = subdivided_image(f.domain(), k)?;
    let codomain = subdivided_image(f.codomain(), k)?;
    DigitalMap::from_fn(&domain, &codomain, |y| {
        let a = project_point(y, k);
        let fa = f.apply(&a).expect("block of a domain point");
        y.map_coords(|i, c| k * fa.coord(i) + c.rem_euclid(k))
    })
}

/// The isomorphism `S(S(X, k), l) ≅ S(X, kl)`.
///
/// The point of `S(S(X, k), l)` in sub-block `t` of block `r` over `x` is
/// `l·(k·x + r) + t = kl·x + (l·r + t)`, which is the same lattice point of `S(X, kl)`.
pub fn iterate_iso(x: &DigitalImage, k: i64, l: i64) -> Result<DigitalMap> {
    check_factor(k, 1)?;
    check_factor(l, 1)?;
    let nested = subdivided_image(&subdivided_image(x, k)?, l)?;
    let direct = subdivided_image(x, k * l)?;
    DigitalMap::from_fn(&nested, &direct, |y| {
        let outer = project_point(y, l);
        let t = y.map_coords(|i, c| c - l * outer.coord(i));
        let base = project_point(&outer, k);
        let r = outer.map_coords(|i, c| c - k * base.coord(i));
        base.map_coords(|i, c| k * l * c + (l * r.coord(i) + t.coord(i)))
    })
}

/// The isomorphism `S(X x Y, k) ≅ S(X, k) x S(Y, k)`, a reshuffle of coordinates that is
/// the identity on concatenated coordinates.
pub fn product_iso(x: &DigitalImage, y: &DigitalImage, k: i64) -> Result<DigitalMap> {
    let of_product = subdivided_image(&x.product(y), k)?;
    let product_of = subdivided_image(x, k)?.product(&subdivided_image(y, k)?);
    let split = x.dim();
    let total = of_product.dim();
    DigitalMap::from_fn(&of_product, &product_of, |p| {
        p.slice(0..split).concat(&p.slice(split..total))
    })
}

/// Turns a family of odd-factor covers into a cover `S(X, k+1) -> S(Y, k)` for any `k >= 2`.
///
/// `odd_cover(h)` must return a cover `S(X, 2h+1) -> S(Y, 2h+1)` of `f`. For even `k` the
/// result is `ρ^c_{k+1} ∘ odd_cover(k/2)`; for odd `k` it is `odd_cover((k-1)/2) ∘ ρ^c_{k+1}`.
pub fn cover_via_partial_projection(
    f: &DigitalMap,
    k: i64,
    odd_cover: impl FnOnce(i64) -> Result<DigitalMap>,
) -> Result<DigitalMap> {
    check_factor(k, 2)?;
    if k % 2 == 0 {
        let lift = odd_cover(k / 2)?;
        let squeeze = partial_projection(f.codomain(), k + 1)?;
        compose(&squeeze, &lift)
    } else {
        let lift = odd_cover((k - 1) / 2)?;
        let squeeze = partial_projection(f.domain(), k + 1)?;
        compose(&lift, &squeeze)
    }
}
